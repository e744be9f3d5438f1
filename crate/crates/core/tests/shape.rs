mod common;

use common::{mi, shape_ansatz};
use wittcat::centralizer::make_x;

#[test]
fn exact_shape_reached_for_mixed_indices() {
    for (m, j) in [(vec![2, 1], 0), (vec![1, 2], 0), (vec![2, 0], 1), (vec![1, 1], 1)] {
        let x = make_x(&mi(&m), j).unwrap();
        assert!(x.shape.is_exact(), "{:?} {}", m, j);
        let ans = shape_ansatz(&mi(&m), j);
        for (r, deg) in &x.shape.g_degrees {
            let r = ans.unknowns.iter().find(|u| u.0.to_string() == *r).unwrap().0.clone();
            assert_eq!(ans.max_degree(&r), Some(*deg as i32));
        }
    }
}

#[test]
fn pure_cube_degree_cannot_be_raised() {
    let m = mi(&[3, 0]);
    let x = make_x(&m, 0).unwrap();
    assert_eq!(x.shape.deficient, vec!["(0,1)".to_string(), "(1,1)".to_string()]);
    let ans = shape_ansatz(&m, 0);
    assert!(ans.max_degree(&mi(&[0, 1])).unwrap_or(0) < 2);
    assert!(ans.max_degree(&mi(&[1, 1])).unwrap_or(0) < 1);
    assert_eq!(ans.max_degree(&mi(&[2, 0])), Some(1));
}

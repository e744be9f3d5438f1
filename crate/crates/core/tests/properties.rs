use proptest::prelude::*;

use wittcat::cli::{parse_expr, CheckResult, Report};
use wittcat::glrep::{exterior_power, highest_weight_module, GlRep};
use wittcat::kernel::{MIndex, Scalar};
use wittcat::pbw::{self, ShowU, UElem};
use wittcat::shenlarsson::{phi, phi::commutator as phi_commutator, phi::mul as phi_mul, pi_map, TenVec, TensorModule};
use wittcat::weylmod::{DModule, DVec, WeylOp};
use wittcat::witt::{self, WittElem, WittTerm};

const N: usize = 2;

fn term() -> impl Strategy<Value = WittTerm> {
    (prop::collection::vec(0..=3i32, N), 0..N).prop_map(|(m, j)| WittTerm::new(MIndex::from_slice(&m), j).unwrap())
}

fn small_term() -> impl Strategy<Value = WittTerm> {
    (prop::collection::vec(0..=1i32, N), 0..N).prop_map(|(m, j)| WittTerm::new(MIndex::from_slice(&m), j).unwrap())
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

/// Rational functions `(a1 + p) / (a2 + q)` plus a constant.
fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), -3i64..=3, -3i64..=3, any::<bool>()).prop_map(|(c, p, q, frac)| {
        if !frac {
            return c;
        }
        let num = &Scalar::param(0) + &Scalar::int(p);
        let den = &Scalar::param(1) + &Scalar::int(q);
        &num.checked_div(&den).unwrap() + &c
    })
}

fn field() -> impl Strategy<Value = WittElem> {
    prop::collection::vec((term(), rational()), 1..=3).prop_map(|ts| {
        let mut x = WittElem::zero();
        for (t, c) in ts {
            x.add_term(t, c);
        }
        x
    })
}

fn lift(x: &WittElem) -> UElem {
    let mut out = UElem::zero();
    for (t, c) in x.iter() {
        out.add_scaled(&pbw::gen(t), c);
    }
    out
}

fn small_elem() -> impl Strategy<Value = UElem> {
    prop::collection::vec((prop::collection::vec(small_term(), 1..=2), rational()), 1..=2).prop_map(|ts| {
        let mut out = UElem::zero();
        for (word, c) in ts {
            let x = word.iter().fold(pbw::one(N), |acc, t| pbw::mul(&acc, &pbw::gen(t)));
            out.add_scaled(&x, &c);
        }
        out
    })
}

fn laurent() -> DModule {
    DModule::laurent(vec![Scalar::param(0), Scalar::param(1)])
}

fn offset() -> impl Strategy<Value = MIndex> {
    prop::collection::vec(-2..=2i32, N).prop_map(|v| MIndex::from_slice(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn bracket_antisymmetric(x in field(), y in field()) {
        let xy = witt::bracket(&x, &y).unwrap();
        let yx = witt::bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn bracket_jacobi(x in field(), y in field(), z in field()) {
        let br = |a: &WittElem, b: &WittElem| witt::bracket(a, b).unwrap();
        let j = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn enveloping_commutator_is_bracket(x in field(), y in field()) {
        let lhs = pbw::commutator(&lift(&x), &lift(&y));
        prop_assert_eq!(lhs, lift(&witt::bracket(&x, &y).unwrap()));
    }

    #[test]
    fn phi_multiplicative(x in small_elem(), y in small_elem()) {
        let px = phi(&x, N).unwrap();
        let py = phi(&y, N).unwrap();
        prop_assert_eq!(phi(&pbw::mul(&x, &y), N).unwrap(), phi_mul(&px, &py));
        prop_assert_eq!(phi(&pbw::commutator(&x, &y), N).unwrap(), phi_commutator(&px, &py));
    }

    #[test]
    fn tensor_action_respects_brackets(x in term(), y in term(), m in offset(), b in 0..N) {
        let tm = TensorModule::new(laurent(), exterior_power(N, 1).unwrap()).unwrap();
        let w = TenVec::basis((m, b));
        let xy = tm.apply_gen(&x, &tm.apply_gen(&y, &w).unwrap()).unwrap();
        let yx = tm.apply_gen(&y, &tm.apply_gen(&x, &w).unwrap()).unwrap();
        let br = witt::bracket(&x.elem(), &y.elem()).unwrap();
        prop_assert_eq!(xy.sub(&yx), tm.apply(&lift(&br), &w).unwrap());
    }

    #[test]
    fn pi_is_a_differential_and_equivariant(x in term(), m in offset()) {
        let p = laurent();
        let w = TenVec::basis((m, 0));
        prop_assert!(pi_map(&p, 1, &pi_map(&p, 0, &w).unwrap()).unwrap().is_zero());
        let src = TensorModule::new(p.clone(), exterior_power(N, 0).unwrap()).unwrap();
        let dst = TensorModule::new(p.clone(), exterior_power(N, 1).unwrap()).unwrap();
        let lhs = pi_map(&p, 0, &src.apply_gen(&x, &w).unwrap()).unwrap();
        let rhs = dst.apply_gen(&x, &pi_map(&p, 0, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_relations(m in offset(), i in 0..N, j in 0..N) {
        let p = laurent();
        let v = DVec::basis(m);
        let dt = p.apply_word(&[WeylOp::D(i), WeylOp::T(j)], &v).unwrap();
        let td = p.apply_word(&[WeylOp::T(j), WeylOp::D(i)], &v).unwrap();
        let expected = if i == j { v.clone() } else { DVec::zero() };
        prop_assert_eq!(dt.sub(&td), expected);
        let back = p.apply_word(&[WeylOp::D(i), WeylOp::DInv(i)], &v).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn printer_round_trip(x in small_elem(), s in -3i32..=0) {
        let x = pbw::mul(&x, &pbw::d_pow(MIndex::from_slice(&[s, 0])));
        let text = ShowU(&x).to_string();
        prop_assert_eq!(parse_expr(&text, Some(N)).unwrap().elem, x);
    }

    #[test]
    fn glrep_json_round_trip(a in 0i64..=2, b in 0i64..=2) {
        let v = highest_weight_module(&[Scalar::int(a + b), Scalar::int(b)]).unwrap();
        let text = serde_json::to_string(&v.to_json()).unwrap();
        let back = GlRep::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn report_json_round_trip(name in "[a-z ]{1,12}", witness in proptest::option::of("[ -~]{0,20}"), k in 0u32..100) {
        let check = match &witness {
            Some(w) => CheckResult::fail(name.clone(), w.clone()),
            None => CheckResult::pass(name.clone()),
        };
        let r = Report::new("prop").input("k", k).results(serde_json::json!({ "k": k })).check(check);
        prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}

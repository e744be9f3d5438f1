//! One function per subcommand. Each returns a [`Report`]; the binary only
//! parses arguments and prints.

use serde_json::json;

use crate::centralizer::{fmt_xmono, h_monomial_basis, make_x, make_z, ZKind};
use crate::cuspidal::{cuspidality_check, induce_g1, make_hrep, roundtrip, separation_check, w_module};
use crate::error::{Error, Result};
use crate::glrep::{exterior_power, highest_weight_module, GlRep, GlRepJson};
use crate::kernel::parse::parse_scalar_list;
use crate::kernel::{MIndex, Scalar};
use crate::pbw::decompose::{decompose_BH, recombine, ShowBH};
use crate::pbw::{self, ShowU};
use crate::shenlarsson::phi::ShowPhi;
use crate::shenlarsson::q1::q1_whittaker_dimensions;
use crate::shenlarsson::tensor::{pure, ShowTen};
use crate::shenlarsson::{phi, theta_of, whittaker_space, TensorModule, WhSource};
use crate::weylmod::{DModule, ShowDVec};
use crate::witt::{self, ShowWitt};

use super::config::Config;
use super::expr::{parse_dvec, parse_expr, parse_weyl, parse_witt};
use super::report::{CheckResult, Report};
use super::suite;

fn show(v: &[Scalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn bracket(x: &str, y: &str, n: Option<usize>) -> Result<Report> {
    let n = common_n(&[x, y], n)?;
    let (_, a) = parse_witt(x, Some(n))?;
    let (_, b) = parse_witt(y, Some(n))?;
    let r = witt::bracket(&a, &b)?;
    Ok(Report::new("bracket")
        .input("x", x)
        .input("y", y)
        .input("n", n)
        .results(json!({ "bracket": ShowWitt(&r).to_string() })))
}

fn common_n(srcs: &[&str], n: Option<usize>) -> Result<usize> {
    if let Some(n) = n {
        return Ok(n);
    }
    let mut best = 1;
    for s in srcs {
        best = best.max(parse_expr(s, None)?.n);
    }
    Ok(best)
}

pub fn normal_form(x: &str, n: Option<usize>) -> Result<Report> {
    let e = parse_expr(x, n)?;
    Ok(Report::new("normal-form")
        .input("x", x)
        .input("n", e.n)
        .results(json!({ "normal_form": ShowU(&e.elem).to_string(), "terms": e.elem.len() })))
}

pub fn commutator(x: &str, y: &str, n: Option<usize>) -> Result<Report> {
    let n = common_n(&[x, y], n)?;
    let a = parse_expr(x, Some(n))?.elem;
    let b = parse_expr(y, Some(n))?.elem;
    let c = pbw::commutator(&a, &b);
    Ok(Report::new("commutator")
        .input("x", x)
        .input("y", y)
        .input("n", n)
        .results(json!({ "commutator": ShowU(&c).to_string() })))
}

pub fn decompose(x: &str, n: Option<usize>, bound: u32) -> Result<Report> {
    let e = parse_expr(x, n)?;
    let dec = decompose_BH(&e.elem, bound)?;
    let back = recombine(&dec)?;
    let terms: Vec<String> = dec.iter().map(|(k, c)| format!("{} * {}", c, k)).collect();
    Ok(Report::new("decompose")
        .input("x", x)
        .input("n", e.n)
        .input("bound", bound)
        .results(json!({ "decomposition": ShowBH(&dec).to_string(), "terms": terms }))
        .check(CheckResult::from_witness(
            "recombines",
            (back != e.elem).then(|| format!("recombined to {}", ShowU(&back))),
        )))
}

/// `z_{i,j}`, `z_{i,l,j}` or `z_i` from one-based indices.
pub fn make_z_cmd(n: usize, indices: &[usize]) -> Result<Report> {
    if indices.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::pre(format!("indices must lie in 1..{}", n)));
    }
    let ix: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    let kind = match ix.as_slice() {
        [i] => ZKind::Cubic { i: *i },
        [i, j] => ZKind::Pair { i: *i, j: *j },
        [i, l, j] => ZKind::Triple {
            i: (*i).min(*l),
            l: (*i).max(*l),
            j: *j,
        },
        _ => return Err(Error::pre("give one, two or three indices")),
    };
    let z = make_z(n, kind)?;
    let cent = pbw::centralizes(&z.elem, n).err().map(|w| format!("against {}", w.against));
    Ok(Report::new("make-z")
        .input("n", n)
        .input("kind", kind)
        .results(json!({ "z": ShowU(&z.elem).to_string(), "terms": z.elem.len() }))
        .check(CheckResult::from_witness("centralizes", cent)))
}

pub fn make_x_cmd(m: &str, j: usize) -> Result<Report> {
    let entries = parse_scalar_list(m, Some(0))?
        .iter()
        .map(|x| x.as_i64().map(|v| v as i32).ok_or_else(|| Error::pre("m must be integral")))
        .collect::<Result<Vec<_>>>()?;
    let m = MIndex::from_slice(&entries);
    let n = m.n();
    if j == 0 || j > n {
        return Err(Error::pre(format!("j must lie in 1..{}", n)));
    }
    let x = make_x(&m, j - 1)?;
    let cent = pbw::centralizes(&x.elem, n).err().map(|w| format!("against {}", w.against));
    let corrections: Vec<String> = x
        .corrections
        .iter()
        .map(|(mono, c)| format!("{} * {}", c, fmt_xmono(mono)))
        .collect();
    let exact = CheckResult::from_witness(
        "shape_exact_degrees",
        (!x.shape.is_exact()).then(|| format!("deg g_r < |m| - |r| for r in {}", x.shape.deficient.join(", "))),
    );
    Ok(Report::new("make-x")
        .input("m", &m)
        .input("j", j)
        .results(json!({
            "x": ShowU(&x.elem).to_string(),
            "terms": x.elem.len(),
            "trace": x.trace,
            "corrections": corrections,
            "shape": x.shape,
        }))
        .check(CheckResult::from_witness("centralizes", cent))
        .check(exact))
}

pub fn h_basis(n: usize, degree: u32) -> Result<Report> {
    let b = h_monomial_basis(n, degree)?;
    let counts: Vec<serde_json::Value> = b
        .count_by_degree()
        .iter()
        .map(|(d, c)| json!({ "degree": d, "count": c }))
        .collect();
    let monomials: Vec<String> = b.monomials.iter().map(|m| fmt_xmono(m)).collect();
    Ok(Report::new("h-basis")
        .input("n", n)
        .input("degree", degree)
        .results(json!({ "counts": counts, "rank": b.rank, "monomials": monomials }))
        .check(CheckResult::from_witness(
            "independent",
            (b.rank != b.monomials.len()).then(|| format!("rank {} < {}", b.rank, b.monomials.len())),
        )))
}

pub fn phi_cmd(x: &str, n: Option<usize>) -> Result<Report> {
    let e = parse_expr(x, n)?;
    let img = phi::phi(&e.elem, e.n)?;
    Ok(Report::new("phi")
        .input("x", x)
        .input("n", e.n)
        .results(json!({ "phi": ShowPhi(&img).to_string() })))
}

/// `wedge:k` or a highest weight such as `2,0`.
pub fn parse_module(text: &str, n: usize) -> Result<GlRep> {
    match text.trim() {
        "trivial" => exterior_power(n, 0),
        "natural" => exterior_power(n, 1),
        s => match s.strip_prefix("wedge:") {
            Some(k) => exterior_power(n, k.trim().parse().map_err(|_| Error::pre("wedge:<k>"))?),
            None => {
                let lam = parse_scalar_list(s, Some(0))?;
                if lam.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: lam.len(),
                    });
                }
                highest_weight_module(&lam)
            }
        },
    }
}

/// `laurent` uses `P(mu)`, otherwise `A^a`, with the vectors from `cfg`.
pub fn d_module(laurent: bool, cfg: &Config, n: usize) -> Result<DModule> {
    let v = if laurent { &cfg.mu } else { &cfg.a };
    if v.len() != n {
        return Err(Error::Config(format!("the config vectors have length {}, expected {}", v.len(), n)));
    }
    Ok(if laurent {
        DModule::laurent(v.clone())
    } else {
        DModule::twisted(v.clone())
    })
}

pub fn tensor_apply(x: &str, module: &str, poly: &str, basis: usize, laurent: bool, cfg: &Config) -> Result<Report> {
    let n = cfg.n;
    let e = parse_expr(x, Some(n))?;
    let v = parse_module(module, n)?;
    if basis == 0 || basis > v.dim() {
        return Err(Error::pre(format!("basis index must lie in 1..{}", v.dim())));
    }
    let p = d_module(laurent, cfg, n)?;
    let tm = TensorModule::new(p, v)?;
    let w = pure(&parse_dvec(poly, n)?, basis - 1);
    let out = tm.apply(&e.elem, &w)?;
    Ok(Report::new("tensor-apply")
        .input("x", x)
        .input("module", module)
        .input("vector", format!("({}) (x) v{}", poly, basis))
        .input("p", if laurent { format!("P({})", show(&cfg.mu)) } else { format!("A^({})", show(&cfg.a)) })
        .results(json!({ "result": ShowTen(&out).to_string() })))
}

pub fn dmod_apply(op: &str, vec: &str, laurent: bool, cfg: &Config) -> Result<Report> {
    let n = cfg.n;
    let p = d_module(laurent, cfg, n)?;
    let x = parse_weyl(op, n)?;
    let v = parse_dvec(vec, n)?;
    let out = p.apply_expr(&x, &v)?;
    Ok(Report::new("dmod-apply")
        .input("op", op)
        .input("vector", vec)
        .input("p", if laurent { format!("P({})", show(&cfg.mu)) } else { format!("A^({})", show(&cfg.a)) })
        .results(json!({ "result": ShowDVec(&p, &out).to_string() })))
}

pub fn complex_check(cfg: &Config) -> Result<Report> {
    let c = suite::complex_checks(cfg.n, cfg.degree, &cfg.mu, cfg.seed);
    let mut r = suite::config_inputs(cfg, Report::new("complex-check"));
    for k in c.checks {
        r = r.check(k);
    }
    Ok(r)
}

pub fn whittaker(source: &str, cfg: &Config) -> Result<Report> {
    let n = cfg.n;
    let src = if let Some(k) = source.strip_prefix("image:") {
        WhSource::ImagePi(k.parse().map_err(|_| Error::pre("image:<k>"))?)
    } else if let Some(k) = source.strip_prefix("kernel:") {
        WhSource::KernelPi(k.parse().map_err(|_| Error::pre("kernel:<k>"))?)
    } else {
        WhSource::Tensor(parse_module(source, n)?)
    };
    let wh = whittaker_space(n, &src, cfg.degree)?;
    let stable = if wh.stable() {
        CheckResult::pass("stable")
    } else {
        CheckResult::unstable(
            "stable",
            format!("dimension {} at bound {} vs {:?} one below", wh.dim(), wh.bound, wh.previous_dim),
        )
    };
    Ok(Report::new("whittaker")
        .input("source", source)
        .input("n", n)
        .input("bound", cfg.degree)
        .results(wh.summary())
        .check(stable))
}

pub fn q1(n: usize, degree: u32) -> Result<Report> {
    let slices = q1_whittaker_dimensions(n, degree)?;
    let mut r = Report::new("q1").input("n", n).input("degree", degree).results(&slices);
    for s in &slices {
        r = r.check(CheckResult::from_witness(
            format!("degree {} spanned by Y-monomials", s.degree),
            (s.kernel_dim != s.y_monomials || !s.spanned_by_y)
                .then(|| format!("{} Whittaker vectors, {} Y-monomials", s.kernel_dim, s.y_monomials)),
        ));
    }
    let theta = ZKind::all(n)
        .into_iter()
        .find_map(|k| match make_z(n, k).and_then(|z| theta_of(&z.elem, n)) {
            Ok(_) => None,
            Err(e) => Some(format!("{}: {}", k, e)),
        });
    Ok(r.check(CheckResult::from_witness("theta(z) v_1 is Whittaker", theta)))
}

pub fn glrep(module: &str, n: usize) -> Result<Report> {
    let v = parse_module(module, n)?;
    let j = v.to_json();
    let text = serde_json::to_string(&j).map_err(|e| Error::Io(e.to_string()))?;
    let back: GlRepJson = serde_json::from_str(&text).map_err(|e| Error::Io(e.to_string()))?;
    let same = GlRep::from_json(&back)? == v;
    Ok(Report::new("glrep")
        .input("module", module)
        .input("n", n)
        .results(&j)
        .check(CheckResult::from_witness("json_round_trip", (!same).then(|| "re-parsed module differs".into()))))
}

pub fn cuspidal_check(cfg: &Config) -> Result<Report> {
    let rho = make_hrep(highest_weight_module(&cfg.lambda)?)?;
    let win = induce_g1(&rho, cfg.alpha.clone(), cfg.radius)?;
    let rep = cuspidality_check(&win)?;
    let w = rep
        .vanishing
        .first()
        .map(|d| format!("{} on slice {}: det = 0", d.op, d.slice));
    Ok(suite::config_inputs(cfg, Report::new("cuspidal-check"))
        .results(json!({
            "excluded": rep.excluded,
            "vanishing": rep.vanishing,
            "determinants": rep.determinants.len(),
            "cuspidal_on_window": rep.cuspidal_on_window,
        }))
        .check(CheckResult::from_witness("injective on every slice", w)))
}

pub fn separation(gamma: &[Scalar], lambda: &[Scalar]) -> Result<Report> {
    if gamma.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: gamma.len(),
            found: lambda.len(),
        });
    }
    let r = separation_check(gamma, lambda);
    Ok(Report::new("separation")
        .input("gamma", show(gamma))
        .input("lambda", show(lambda))
        .results(&r))
}

pub fn roundtrip_cmd(cfg: &Config) -> Result<Report> {
    let rho = w_module(&cfg.lambda)?;
    let rep = roundtrip(&rho, &cfg.alpha, cfg.radius, cfg.degree)?;
    let mut r = suite::config_inputs(cfg, Report::new("roundtrip")).results(json!({ "hrep": rho.to_json() }));
    for c in rep.checks {
        r = r.check(CheckResult::from_witness(c.name, c.witness));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_report() {
        let r = bracket("d1", "t1*d1", None).unwrap();
        assert_eq!(r.results["bracket"], "d1");
    }

    #[test]
    fn make_x_reports_shape() {
        let r = make_x_cmd("2,1", 1).unwrap();
        assert!(r.ok());
        let r = make_x_cmd("3,0", 1).unwrap();
        assert!(!r.ok());
    }

    #[test]
    fn glrep_round_trip() {
        assert!(glrep("2,0", 2).unwrap().ok());
        assert!(glrep("wedge:2", 3).unwrap().ok());
    }

    #[test]
    fn negative_control_config() {
        let cfg = Config::from_toml("alpha = [\"2\", \"a2\"]").unwrap();
        let r = cuspidal_check(&cfg).unwrap();
        assert!(!r.ok());
        assert!(cuspidal_check(&Config::default()).unwrap().ok());
    }

    #[test]
    fn dmod_example() {
        let cfg = Config::from_toml("n = 1\na = [1]").unwrap();
        let r = dmod_apply("d1", "t1", false, &cfg).unwrap();
        assert_eq!(r.results["result"], "t1 + 1");
    }
}

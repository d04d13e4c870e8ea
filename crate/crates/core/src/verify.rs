//! Named suites of desk-checkable claims, each a list of independent checks.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cas_cat;
use crate::combinat::{count_injections, partitions, Partition};
use crate::equivariant::{build_p, build_q, filtration_p};
use crate::error::{Error, Result};
use crate::fi_layer::{verify_phi_p, verify_phi_t};
use crate::groth::{self, KClassRep, KGenClass, Tag};
use crate::homcalc::{ext_stable, ext_truncated, stable_hom_pq, tor_periodic, HomSource};
use crate::linalg::{Rational, SparseMatrix};
use crate::report::timed;

pub const SUITES: &[&str] = &[
    "qqmaps",
    "qpmaps",
    "filtration",
    "phi",
    "tor",
    "ext_self",
    "ext_vanish",
    "torsion_vanish",
    "kgroup",
    "rank",
    "tensor",
    "cas",
];

type Body = Box<dyn Fn() -> Result<(Value, Value)> + Send + Sync>;

pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub parameters: Value,
    /// The `N` parameter; stable checks also touch `N+1`.
    pub level: usize,
    body: Body,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub suite: String,
    pub name: String,
    pub parameters: Value,
    pub expected: Value,
    pub got: Value,
    pub passed: bool,
    pub runtime_ms: u64,
}

impl Check {
    fn new(
        suite: &'static str,
        name: String,
        parameters: Value,
        level: usize,
        body: impl Fn() -> Result<(Value, Value)> + Send + Sync + 'static,
    ) -> Self {
        Self {
            suite,
            name,
            parameters,
            level,
            body: Box::new(body),
        }
    }

    pub fn run(&self) -> Outcome {
        let (res, ms) = timed(|| (self.body)());
        let (expected, got, passed) = match res {
            Ok((e, g)) => {
                let p = e == g;
                (e, g, p)
            }
            Err(e) => (Value::Null, json!({ "error": e.to_string() }), false),
        };
        Outcome {
            suite: self.suite.to_string(),
            name: self.name.clone(),
            parameters: self.parameters.clone(),
            expected,
            got,
            passed,
            runtime_ms: ms,
        }
    }
}

fn stable_dim(src: HomSource, dst: HomSource, n_vars: usize) -> Result<usize> {
    Ok(stable_hom_pq(&src, &dst, n_vars)?.dim_stable)
}

fn falling(m: usize, n: usize) -> usize {
    if n > m {
        0
    } else {
        count_injections(n, m).unwrap_or(0)
    }
}

fn qqmaps() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for n in 0..=3 {
            for m in 0..=3 {
                let nv = n.max(m) + 2;
                out.push(Check::new(
                    "qqmaps",
                    format!("stable Hom(Q_{{{s},{n}}}, Q_{{{s},{m}}})"),
                    json!({"s": s, "n": n, "m": m, "N": nv}),
                    nv,
                    move || {
                        let got = stable_dim(HomSource::Q { r: s, n }, HomSource::Q { r: s, n: m }, nv)?;
                        Ok((json!(falling(m, n)), json!(got)))
                    },
                ));
            }
        }
    }
    out
}

fn qpmaps() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for n in 0..=3 {
            for m in 0..=3 {
                let nv = n.max(m) + 2;
                out.push(Check::new(
                    "qpmaps",
                    format!("stable Hom(Q_{{{s},{m}}}, P_{{{s},{n}}}) = Hom(Q_{{{s},{m}}}, Q_{{{s},{n}}})"),
                    json!({"s": s, "n": n, "m": m, "N": nv}),
                    nv,
                    move || {
                        let src = HomSource::Q { r: s, n: m };
                        let qq = stable_dim(src, HomSource::Q { r: s, n }, nv)?;
                        let qp = stable_dim(src, HomSource::P { r: s, n }, nv)?;
                        Ok((json!(qq), json!(qp)))
                    },
                ));
            }
        }
    }
    out
}

fn filtration() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 0..=2 {
        for n in 0..=2 {
            for nv in n.max(1)..=4 {
                out.push(Check::new(
                    "filtration",
                    format!("filtration of P_{{{s},{n}}}"),
                    json!({"s": s, "n": n, "N": nv}),
                    nv,
                    move || {
                        let f = filtration_p(s, n, nv)?;
                        let q = build_q(s, n, nv)?.character();
                        let matching = f.pieces.iter().filter(|p| p.quotient.character() == q).count();
                        let pieces = (s + 1).pow(n as u32);
                        Ok((
                            json!({"pieces": pieces, "matching_q": pieces}),
                            json!({"pieces": f.pieces.len(), "matching_q": matching}),
                        ))
                    },
                ));
            }
        }
    }
    out
}

fn phi() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for n in 0..=2 {
            for nv in n.max(1)..=4 {
                out.push(Check::new(
                    "phi",
                    format!("Φ_{s}(P_{n}) = Q_{{{s},{n}}}, Φ_{s}(T_{n}) = Q_{{{},{n}}}", s - 1),
                    json!({"s": s, "n": n, "N": nv}),
                    nv,
                    move || {
                        let p = verify_phi_p(s, n, nv)?;
                        let t = verify_phi_t(s, n, nv)?;
                        Ok((
                            json!({"phi_p": true, "phi_t": true}),
                            json!({"phi_p": p.holds, "phi_t": t.holds}),
                        ))
                    },
                ));
            }
        }
    }
    out
}

fn tor() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for nv in 2..=3 {
            out.push(Check::new(
                "tor",
                format!("Tor_r(Q_{{{s},1}}, Q_{{{s},1}}) = Q_{{{s},1}}, r = 1..4"),
                json!({"s": s, "N": nv, "r_max": 4}),
                nv,
                move || {
                    let q = build_q(s, 1, nv)?.character();
                    let got: Vec<bool> = tor_periodic(s, 4, nv)?.iter().map(|c| *c == q).collect();
                    Ok((json!([true, true, true, true]), json!(got)))
                },
            ));
        }
    }
    out
}

fn ext_self() -> Vec<Check> {
    (1..=2)
        .map(|s| {
            let nv = 3;
            Check::new(
                "ext_self",
                format!("stable Ext^i(Q_{{{s},1}}, Q_{{{s},1}}), i = 0..3"),
                json!({"s": s, "N": nv}),
                nv,
                move || {
                    let got = ext_stable(HomSource::Q { r: s, n: 1 }, s, 1, nv, 4)?;
                    Ok((json!([1, 1, 1, 1]), json!(got)))
                },
            )
        })
        .collect()
}

fn ext_vanish() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 0..=2 {
        for n in 0..=2 {
            for d in 0..=2 {
                for nv in n.max(d).max(1)..=3 {
                    out.push(Check::new(
                        "ext_vanish",
                        format!("Ext^{{1,2}}(Q_{{{s},{n}}}, P_{{{s},{d}}}) at N={nv}"),
                        json!({"s": s, "n": n, "d": d, "N": nv}),
                        nv,
                        move || {
                            let e = ext_truncated(&build_q(s, n, nv)?, &build_p(s, d, nv)?, 2)?;
                            Ok((json!([0, 0]), json!(e[1..].to_vec())))
                        },
                    ));
                }
            }
        }
    }
    out
}

fn torsion_vanish() -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for m in 0..=2 {
            for n in 0..=2 {
                let nv = n.max(m) + 2;
                out.push(Check::new(
                    "torsion_vanish",
                    format!("stable Hom(Q_{{{},{m}}}, P_{{{s},{n}}})", s - 1),
                    json!({"s": s, "m": m, "n": n, "N": nv}),
                    nv,
                    move || {
                        let got = stable_dim(HomSource::Q { r: s - 1, n: m }, HomSource::P { r: s, n }, nv)?;
                        Ok((json!(0), json!(got)))
                    },
                ));
            }
        }
    }
    out
}

fn kgroup() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=5 {
        for s in 0..=3 {
            out.push(Check::new(
                "kgroup",
                format!("μ_{n} invertible for s={s}"),
                json!({"n": n, "s": s}),
                0,
                move || {
                    let m = groth::mu_matrix(n, s)?;
                    let inv = groth::invert(&m)?;
                    let id_ok = mat_mul(&m, &inv) == identity(m.len());
                    Ok((json!(true), json!(id_ok)))
                },
            ));
        }
    }
    for s in 0..=3 {
        out.push(Check::new(
            "kgroup",
            format!("P/Q basis round trip, s={s}"),
            json!({"s": s, "max_level": 4}),
            0,
            move || {
                let mut ok = true;
                for k in 0..=4 {
                    for l in partitions(k) {
                        let p = KGenClass::basis(Tag::P, s, l.clone());
                        let q = KGenClass::basis(Tag::Q, s, l);
                        ok &= p.to_q_basis()?.to_p_basis()? == p;
                        ok &= q.to_p_basis()?.to_q_basis()? == q;
                    }
                }
                Ok((json!(true), json!(ok)))
            },
        ));
    }
    out.push(Check::new(
        "kgroup",
        "[P_{1,(2)}] in the Q basis".into(),
        json!({"s": 1, "lambda": "2"}),
        0,
        || {
            let c = groth::p_class_in_q_basis(&Partition::row(2), 1)?;
            Ok((json!(class_json(&expected_p12())), json!(class_json(&c))))
        },
    ));
    out
}

fn expected_p12() -> KGenClass {
    let mut c = KGenClass::zero();
    c.add_term(Tag::Q, 1, Partition::row(2), &Rational::from_integer(3.into()));
    c.add_term(Tag::Q, 1, Partition::column(2), &Rational::from_integer(1.into()));
    c
}

fn class_json(c: &KGenClass) -> Value {
    serde_json::to_value(c).unwrap_or(Value::Null)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(((i == j) as i64).into()))
                .collect()
        })
        .collect()
}

fn rank() -> Vec<Check> {
    (0..=2)
        .map(|s| {
            Check::new(
                "rank",
                format!("rank_expand injective on P_{{r,λ}}, r ≤ {s}, |λ| ≤ 3"),
                json!({"s": s, "max_level": 3}),
                0,
                move || {
                    let mut keys = Vec::new();
                    for r in 0..=s {
                        for k in 0..=3 {
                            keys.extend(partitions(k).into_iter().map(|l| (r, l)));
                        }
                    }
                    let mut cols = Vec::new();
                    let mut consistent = true;
                    let mut unit = true;
                    for (r, l) in &keys {
                        let p = groth::rank_expand(&KGenClass::basis(Tag::P, *r, l.clone()))?;
                        let q = KGenClass::basis(Tag::Q, *r, l.clone());
                        consistent &= groth::rank_expand(&q)? == groth::rank_expand(&q.to_p_basis()?)?;
                        if l.is_empty() {
                            unit &= p.coeffs.len() == 1 && p.coeff(*r) == crate::combinat::SymFunc::one();
                        }
                        let mut col = Vec::new();
                        for (j, (r2, l2)) in keys.iter().enumerate() {
                            let c = p.coeff(*r2).coeff(l2);
                            if !num_traits::Zero::is_zero(&c) {
                                col.push((j, c));
                            }
                        }
                        cols.push(col);
                    }
                    let rank = SparseMatrix::from_columns(keys.len(), cols).rank();
                    Ok((
                        json!({"rank": keys.len(), "consistent": true, "unit": true}),
                        json!({"rank": rank, "consistent": consistent, "unit": unit}),
                    ))
                },
            )
        })
        .collect()
}

fn tensor() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for m in 0..=3 {
            out.push(Check::new(
                "tensor",
                format!("V_{n} ⊗ V_{m} dimension identity"),
                json!({"n": n, "m": m, "N_max": 8}),
                0,
                move || {
                    let mut ok = true;
                    for nv in (n + m)..=8 {
                        ok &= groth::truncation_dim_check(n, m, nv)?;
                        for l in partitions(n) {
                            for k in partitions(m) {
                                let v = KClassRep::irreducible(l.clone());
                                let w = KClassRep::irreducible(k);
                                ok &= groth::tensor_dim_identity(&v, &w, nv)?;
                            }
                        }
                    }
                    Ok((json!(true), json!(ok)))
                },
            ));
            out.push(Check::new(
                "tensor",
                format!("Frobenius product identity at levels {n}, {m}"),
                json!({"n": n, "m": m}),
                0,
                move || {
                    let mut ok = true;
                    for l in partitions(n) {
                        for k in partitions(m) {
                            let v = KClassRep::irreducible(l.clone());
                            let w = KClassRep::irreducible(k);
                            let u = groth::tensor_induced_decompose(&v, &w)?;
                            ok &= u[0].1.to_symfunc() == v.to_symfunc().mul(&w.to_symfunc());
                        }
                    }
                    Ok((json!(true), json!(ok)))
                },
            ));
        }
    }
    out
}

fn cas() -> Vec<Check> {
    let mut out = vec![Check::new(
        "cas",
        "associativity on 200 seeded triples".into(),
        json!({"seed": 20_240_601u64, "count": 200, "max_size": 3, "max_s": 2}),
        0,
        || Ok((json!(true), json!(cas_cat::check_associativity(20_240_601, 200, 3, 2)?))),
    )];
    for m in 0..=2 {
        for n in 0..=2 {
            for s in 0..=2 {
                let nv = n + m + 1;
                out.push(Check::new(
                    "cas",
                    format!("Hom([{m}], [{n}]) against stable Hom(P_{{{s},{n}}}, P_{{{s},{m}}})"),
                    json!({"m": m, "n": n, "s": s, "N": nv}),
                    nv,
                    move || {
                        let c = cas_cat::compare_with_p_homs(m, n, s, nv)?;
                        Ok((json!(c.cas_dim), json!(c.stable_p_dim)))
                    },
                ));
            }
        }
    }
    for s in 0..=2 {
        for n in 0..=3 {
            out.push(Check::new(
                "cas",
                format!("socle of I_{{{s},{n}}}"),
                json!({"s": s, "n": n}),
                0,
                move || {
                    let i = cas_cat::injective_i(s, n, n)?;
                    let expected = count_injections(n, n).unwrap_or(0);
                    Ok((json!(expected), json!(i.socle_dim)))
                },
            ));
        }
    }
    out
}

/// Checks of a suite, or of every suite for `"all"`. Checks whose `N`
/// exceeds `max_level` are dropped.
pub fn checks(suite: &str, max_level: Option<usize>) -> Result<Vec<Check>> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::InvalidParameter(format!("unknown suite {suite:?}")));
    };
    let mut out = Vec::new();
    for name in names {
        out.extend(match name {
            "qqmaps" => qqmaps(),
            "qpmaps" => qpmaps(),
            "filtration" => filtration(),
            "phi" => phi(),
            "tor" => tor(),
            "ext_self" => ext_self(),
            "ext_vanish" => ext_vanish(),
            "torsion_vanish" => torsion_vanish(),
            "kgroup" => kgroup(),
            "rank" => rank(),
            "tensor" => tensor(),
            "cas" => cas(),
            _ => unreachable!(),
        });
    }
    if let Some(cap) = max_level {
        out.retain(|c| c.level <= cap);
    }
    Ok(out)
}

/// Runs the checks on up to `jobs` threads; outcomes keep the input order.
pub fn run(suite: &str, max_level: Option<usize>, jobs: usize) -> Result<Vec<Outcome>> {
    let cs = checks(suite, max_level)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(pool.install(|| cs.par_iter().map(Check::run).collect()))
}

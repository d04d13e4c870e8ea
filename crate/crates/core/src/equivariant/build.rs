use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{EquivModule, Label};
use crate::combinat::injections;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rep::Rep;
use crate::truncated_ring::{permute, Monomial, RingConfig};
use crate::combinat::Perm;

fn check_n(n: usize, n_vars: usize) -> Result<()> {
    if n > n_vars {
        return Err(Error::InvalidParameter(format!(
            "n={n} exceeds truncation level N={n_vars}"
        )));
    }
    Ok(())
}

pub(crate) fn swap_tuple(t: &[usize], j: usize) -> Vec<usize> {
    t.iter()
        .map(|&v| {
            if v == j {
                j + 1
            } else if v == j + 1 {
                j
            } else {
                v
            }
        })
        .collect()
}

pub(crate) fn sigma_pq(l: &Label, j: usize) -> Label {
    match l {
        Label::Pq { tuple, mono } => {
            let n = mono.len();
            Label::Pq {
                tuple: swap_tuple(tuple, j),
                mono: permute(&Perm::coxeter(n, j), mono).expect("lengths agree"),
            }
        }
        _ => unreachable!("P/Q module with foreign label"),
    }
}

/// Free module `P_{s,n}` on distinct `n`-tuples.
pub fn build_p(s: usize, n: usize, n_vars: usize) -> Result<EquivModule> {
    check_n(n, n_vars)?;
    let cfg = RingConfig::new(n_vars, s);
    let monos = cfg.monomials()?;
    let mut labels = Vec::new();
    for t in injections(n, n_vars) {
        for m in &monos {
            labels.push(Label::Pq {
                tuple: t.images().to_vec(),
                mono: m.clone(),
            });
        }
    }
    EquivModule::from_label_action(
        cfg,
        format!("P_{{{s},{n}}}"),
        labels,
        |l, i| match l {
            Label::Pq { tuple, mono } if mono.get(i) < s => Some(Label::Pq {
                tuple: tuple.clone(),
                mono: mono.with(i, mono.get(i) + 1),
            }),
            _ => None,
        },
        sigma_pq,
        None,
    )
}

/// `Q_{s,n}`: the quotient of `P_{s,n}` where `x_{t_p}` kills `e_t`.
pub fn build_q(s: usize, n: usize, n_vars: usize) -> Result<EquivModule> {
    check_n(n, n_vars)?;
    let cfg = RingConfig::new(n_vars, s);
    let monos = cfg.monomials()?;
    let mut labels = Vec::new();
    for t in injections(n, n_vars) {
        for m in &monos {
            if t.images().iter().all(|&i| m.get(i) == 0) {
                labels.push(Label::Pq {
                    tuple: t.images().to_vec(),
                    mono: m.clone(),
                });
            }
        }
    }
    EquivModule::from_label_action(
        cfg,
        format!("Q_{{{s},{n}}}"),
        labels,
        |l, i| match l {
            Label::Pq { tuple, mono } if !tuple.contains(&i) && mono.get(i) < s => {
                Some(Label::Pq {
                    tuple: tuple.clone(),
                    mono: mono.with(i, mono.get(i) + 1),
                })
            }
            _ => None,
        },
        sigma_pq,
        None,
    )
}

/// The ring `S_{N,s}` itself, graded by monomial degree.
pub fn build_ring(s: usize, n_vars: usize) -> Result<EquivModule> {
    let p = build_p(s, 0, n_vars)?;
    let grading: Vec<Monomial> = p
        .labels()
        .iter()
        .map(|l| match l {
            Label::Pq { mono, .. } => mono.clone(),
            _ => unreachable!(),
        })
        .collect();
    EquivModule::new(
        p.cfg(),
        format!("S_{{{n_vars},{s}}}"),
        p.labels().to_vec(),
        p.xmuls().to_vec(),
        p.coxeters().to_vec(),
        Some(grading),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InducedKind {
    P,
    Q,
}

/// `(M ⊗ V)^{S_n}` for `M = P_{s,n}` or `Q_{s,n}`, where `S_n` permutes the
/// tuple positions of `M` and acts on `V` through the given representation.
pub fn build_induced(kind: InducedKind, s: usize, v: &Rep, n_vars: usize) -> Result<EquivModule> {
    let n = v.degree();
    let base = Arc::new(match kind {
        InducedKind::P => build_p(s, n, n_vars)?,
        InducedKind::Q => build_q(s, n, n_vars)?,
    });
    let dv = v.dim();
    let dm = base.dim();
    let total = dm
        .checked_mul(dv)
        .ok_or_else(|| Error::TooLarge("tensor dimension overflow".into()))?;

    // Position swaps on the tuple: t ↦ t ∘ τ_k.
    let mut blocks = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let mut entries = Vec::new();
        for (b, l) in base.labels().iter().enumerate() {
            let Label::Pq { tuple, mono } = l else {
                unreachable!()
            };
            let mut t = tuple.clone();
            t.swap(k, k + 1);
            let b2 = base
                .label_index(&Label::Pq {
                    tuple: t,
                    mono: mono.clone(),
                })
                .ok_or_else(|| Error::AxiomViolation("tuple swap leaves basis".into()))?;
            for w in 0..dv {
                let col = b * dv + w;
                for (w2, a) in v.generators()[k].column(w) {
                    entries.push((b2 * dv + w2, col, a.clone()));
                }
            }
        }
        let g = SparseMatrix::from_triplets(total, total, entries)?;
        blocks.push(g.sub(&SparseMatrix::identity(total))?);
    }
    let stacked = if blocks.is_empty() {
        SparseMatrix::zeros(0, total)
    } else {
        SparseMatrix::vstack(&blocks.iter().collect::<Vec<_>>())?
    };
    let inv = stacked.kernel_subspace();

    let lift = |m: &SparseMatrix| -> SparseMatrix {
        let cols = (0..total)
            .map(|c| {
                let (b, w) = (c / dv, c % dv);
                m.column(b).iter().map(|(r, x)| (r * dv + w, x.clone())).collect()
            })
            .collect();
        SparseMatrix::from_columns(total, cols)
    };
    let xmul = base
        .xmuls()
        .iter()
        .map(|m| inv.restrict(&lift(m)))
        .collect::<Result<Vec<_>>>()?;
    let coxeter = base
        .coxeters()
        .iter()
        .map(|m| inv.restrict(&lift(m)))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..inv.dim()).map(|index| Label::Index { index }).collect();
    let kind_name = match kind {
        InducedKind::P => "P",
        InducedKind::Q => "Q",
    };
    EquivModule::new(
        base.cfg(),
        format!("{kind_name}_{s}(V)"),
        labels,
        xmul,
        coxeter,
        None,
    )
}

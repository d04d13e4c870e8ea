use std::sync::Arc;

use super::build::{build_p, build_q};
use super::{EquivMap, EquivModule, Label, ModuleCharacter};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SubQuotient, Subspace};
use crate::truncated_ring::Monomial;

/// Exponents of `mono` read along `tuple`.
fn beta_of(tuple: &[usize], mono: &Monomial) -> Vec<usize> {
    tuple.iter().map(|&i| mono.get(i)).collect()
}

/// All `β ∈ [0,s]^n`, by decreasing total degree, ties by decreasing lex.
fn beta_order(s: usize, n: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|b: Vec<usize>| {
                (0..=s).map(move |e| {
                    let mut c = b.clone();
                    c.push(e);
                    c
                })
            })
            .collect();
    }
    all.sort_by(|a, b| {
        let (da, db): (usize, usize) = (a.iter().sum(), b.iter().sum());
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    all
}

#[derive(Clone, Debug)]
pub struct FiltrationPiece {
    pub beta: Vec<usize>,
    /// `dim F_k`.
    pub sub_dim: usize,
    pub quotient: Arc<EquivModule>,
    /// Isomorphism `F_k / F_{k-1} → Q_{s,n}`, verified to be a module map.
    pub iso_to_q: EquivMap,
}

impl FiltrationPiece {
    pub fn character(&self) -> ModuleCharacter {
        self.quotient.character()
    }
}

#[derive(Clone, Debug)]
pub struct Filtration {
    pub module: Arc<EquivModule>,
    pub q: Arc<EquivModule>,
    pub pieces: Vec<FiltrationPiece>,
}

/// Chain `0 = F_0 ⊂ .. ⊂ F_{(s+1)^n} = P_{s,n}` where `F_k` is spanned by
/// the labels whose exponents along the tuple lie in the first `k` classes
/// of [`beta_order`]. Variables only raise that exponent vector, so each
/// `F_k` is a submodule; every quotient is identified with `Q_{s,n}`.
pub fn filtration_p(s: usize, n: usize, n_vars: usize) -> Result<Filtration> {
    let p = Arc::new(build_p(s, n, n_vars)?);
    let q = Arc::new(build_q(s, n, n_vars)?);
    let order = beta_order(s, n);
    let class_of: std::collections::HashMap<&Vec<usize>, usize> =
        order.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let label_class: Vec<usize> = p
        .labels()
        .iter()
        .map(|l| match l {
            Label::Pq { tuple, mono } => class_of[&beta_of(tuple, mono)],
            _ => unreachable!(),
        })
        .collect();

    let mut pieces = Vec::with_capacity(order.len());
    let mut prev = Subspace::zero(p.dim());
    for (k, beta) in order.iter().enumerate() {
        let members: Vec<usize> = (0..p.dim()).filter(|&i| label_class[i] <= k).collect();
        let cur = Subspace::coordinate(p.dim(), members);
        for m in p.xmuls().iter().chain(p.coxeters()) {
            for b in cur.basis() {
                if !cur.contains(&m.apply(b)) {
                    return Err(Error::AxiomViolation(format!(
                        "filtration step {k} is not a submodule"
                    )));
                }
            }
        }
        let sq = SubQuotient::new(cur.clone(), &prev)?;
        let xmul = p.xmuls().iter().map(|m| sq.induced(m)).collect::<Result<Vec<_>>>()?;
        let coxeter = p
            .coxeters()
            .iter()
            .map(|m| sq.induced(m))
            .collect::<Result<Vec<_>>>()?;
        let mut labels = Vec::with_capacity(sq.dim());
        let mut iso_cols = Vec::with_capacity(sq.dim());
        for c in 0..sq.dim() {
            let rep = sq.representative(c);
            let idx = rep[0].0;
            let Label::Pq { tuple, mono } = &p.labels()[idx] else {
                unreachable!()
            };
            let mut off = mono.clone();
            for &i in tuple {
                off = off.with(i, 0);
            }
            let target = Label::Pq {
                tuple: tuple.clone(),
                mono: off,
            };
            let j = q
                .label_index(&target)
                .ok_or_else(|| Error::AxiomViolation("quotient label missing from Q".into()))?;
            labels.push(p.labels()[idx].clone());
            iso_cols.push(crate::linalg::unit_vec(j));
        }
        let quotient = Arc::new(EquivModule::new(
            p.cfg(),
            format!("F_{}/F_{}", k + 1, k),
            labels,
            xmul,
            coxeter,
            None,
        )?);
        let iso = EquivMap::new(
            quotient.clone(),
            q.clone(),
            SparseMatrix::from_columns(q.dim(), iso_cols),
        )?;
        if iso.rank() != q.dim() || quotient.dim() != q.dim() {
            return Err(Error::AxiomViolation(format!(
                "filtration piece {k} is not isomorphic to Q"
            )));
        }
        pieces.push(FiltrationPiece {
            beta: beta.clone(),
            sub_dim: cur.dim(),
            quotient,
            iso_to_q: iso,
        });
        prev = cur;
    }
    Ok(Filtration {
        module: p,
        q,
        pieces,
    })
}

/// `Q_{s,n} → P_{s,n}`, `x^α e_t ↦ x^α (x_{t_1}..x_{t_n})^s e_t`.
pub fn q_into_p_embedding(s: usize, n: usize, n_vars: usize) -> Result<EquivMap> {
    let q = Arc::new(build_q(s, n, n_vars)?);
    let p = Arc::new(build_p(s, n, n_vars)?);
    let mut cols = Vec::with_capacity(q.dim());
    for l in q.labels() {
        let Label::Pq { tuple, mono } = l else {
            unreachable!()
        };
        let mut m = mono.clone();
        for &i in tuple {
            m = m.with(i, s);
        }
        let j = p
            .label_index(&Label::Pq {
                tuple: tuple.clone(),
                mono: m,
            })
            .expect("image label lies in P");
        cols.push(crate::linalg::unit_vec(j));
    }
    EquivMap::new(q, p.clone(), SparseMatrix::from_columns(p.dim(), cols))
}

/// The quotient map `P_{s,n} → Q_{s,n}`.
pub fn p_to_q_projection(s: usize, n: usize, n_vars: usize) -> Result<EquivMap> {
    let q = Arc::new(build_q(s, n, n_vars)?);
    let p = Arc::new(build_p(s, n, n_vars)?);
    let cols = p
        .labels()
        .iter()
        .map(|l| match q.label_index(l) {
            Some(j) => crate::linalg::unit_vec(j),
            None => Vec::new(),
        })
        .collect();
    EquivMap::new(p, q.clone(), SparseMatrix::from_columns(q.dim(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::iso_by_character;

    #[test]
    fn piece_counts_and_dims() {
        let f = filtration_p(1, 2, 3).unwrap();
        assert_eq!(f.pieces.len(), 4);
        let f = filtration_p(0, 2, 3).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert!(iso_by_character(&f.module, &f.q).unwrap());
        let f = filtration_p(1, 1, 3).unwrap();
        assert_eq!(f.pieces.len(), 2);
        assert_eq!(f.pieces.iter().map(|p| p.quotient.dim()).collect::<Vec<_>>(), vec![12, 12]);
        assert_eq!(f.pieces.last().unwrap().sub_dim, 24);
    }

    #[test]
    fn pieces_match_q_grid() {
        for nv in 0..=4 {
            for s in 0..=2 {
                for n in 0..=nv.min(2) {
                    let f = filtration_p(s, n, nv).unwrap();
                    assert_eq!(f.pieces.len(), (s + 1).pow(n as u32));
                    for piece in &f.pieces {
                        piece.quotient.check_axioms().unwrap();
                        assert_eq!(piece.character(), f.q.character());
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_and_composite() {
        let e = q_into_p_embedding(0, 1, 3).unwrap();
        assert_eq!(e.rank(), e.source.dim());
        assert_eq!(e.source.dim(), e.target.dim());
        let e = q_into_p_embedding(1, 1, 2).unwrap();
        assert_eq!(e.rank(), 4);
        for nv in 1..=4 {
            for s in 0..=2 {
                for n in 0..=nv.min(3) {
                    let e = q_into_p_embedding(s, n, nv).unwrap();
                    assert_eq!(e.rank(), e.source.dim());
                }
            }
        }
        // P → Q → P is multiplication by (x_t)^s on each e_t.
        let (s, n, nv) = (1, 1, 3);
        let e = q_into_p_embedding(s, n, nv).unwrap();
        let pr = p_to_q_projection(s, n, nv).unwrap();
        let comp = e.compose(&pr).unwrap();
        assert!(!comp.matrix.is_zero());
        for (c, l) in comp.source.labels().iter().enumerate() {
            let Label::Pq { tuple, mono } = l else { unreachable!() };
            let col = comp.matrix.column(c);
            if tuple.iter().all(|&i| mono.get(i) == 0) {
                let mut m = mono.clone();
                for &i in tuple {
                    m = m.with(i, s);
                }
                let j = comp.target.label_index(&Label::Pq { tuple: tuple.clone(), mono: m }).unwrap();
                assert_eq!(col, &crate::linalg::unit_vec(j));
            } else {
                assert!(col.is_empty());
            }
        }
    }
}

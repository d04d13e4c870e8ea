//! Finite-dimensional representations of `S_n` given by the matrices of the
//! Coxeter generators `σ_j = (j, j+1)`.

use num_traits::{One, Zero};

use crate::combinat::{partitions, ClassFunction, Partition, Perm};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    degree: usize,
    dim: usize,
    gens: Vec<SparseMatrix>,
}

impl Rep {
    /// Validates shapes and the Coxeter presentation of `S_degree`.
    pub fn new(degree: usize, dim: usize, gens: Vec<SparseMatrix>) -> Result<Self> {
        if gens.len() != degree.saturating_sub(1) {
            return Err(Error::SizeMismatch(format!(
                "S_{degree} needs {} generators, got {}",
                degree.saturating_sub(1),
                gens.len()
            )));
        }
        if gens.iter().any(|g| g.nrows() != dim || g.ncols() != dim) {
            return Err(Error::SizeMismatch(format!(
                "generator matrices must be {dim}x{dim}"
            )));
        }
        let rep = Self { degree, dim, gens };
        rep.check_coxeter_relations()?;
        Ok(rep)
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            dim: 1,
            gens: vec![SparseMatrix::identity(1); degree.saturating_sub(1)],
        }
    }

    pub fn sign(degree: usize) -> Self {
        Self {
            degree,
            dim: 1,
            gens: vec![SparseMatrix::identity(1).scale(&rat(-1)); degree.saturating_sub(1)],
        }
    }

    /// Left regular representation on `k[S_n]`, basis in [`Perm::all`] order.
    pub fn regular(degree: usize) -> Self {
        let elems = Perm::all(degree);
        let index: std::collections::HashMap<&Perm, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = (0..degree.saturating_sub(1))
            .map(|j| {
                let s = Perm::coxeter(degree, j);
                let image: Vec<Option<usize>> =
                    elems.iter().map(|g| Some(index[&s.compose(g)])).collect();
                SparseMatrix::from_index_map(elems.len(), &image)
            })
            .collect();
        Self {
            degree,
            dim: elems.len(),
            gens,
        }
    }

    /// Specht module `S^λ` in Young's seminormal form.
    pub fn specht(lambda: &Partition) -> Self {
        let n = lambda.size();
        let tableaux = standard_tableaux(lambda);
        let index: std::collections::HashMap<&Vec<(usize, usize)>, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let content = |cell: (usize, usize)| cell.1 as i64 - cell.0 as i64;
        let mut gens = Vec::new();
        for j in 0..n.saturating_sub(1) {
            let mut entries = Vec::new();
            for (col, t) in tableaux.iter().enumerate() {
                let r = content(t[j + 1]) - content(t[j]);
                let inv_r = Rational::new(1.into(), r.into());
                entries.push((col, col, inv_r.clone()));
                let mut swapped = t.clone();
                swapped.swap(j, j + 1);
                if let Some(&other) = index.get(&swapped) {
                    let off = if r > 0 {
                        Rational::one()
                    } else {
                        Rational::one() - &inv_r * &inv_r
                    };
                    entries.push((other, col, off));
                }
            }
            gens.push(
                SparseMatrix::from_triplets(tableaux.len(), tableaux.len(), entries)
                    .expect("indices in range"),
            );
        }
        Self {
            degree: n,
            dim: tableaux.len(),
            gens,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[SparseMatrix] {
        &self.gens
    }

    /// Matrix of an arbitrary permutation via its reduced word.
    pub fn action(&self, g: &Perm) -> SparseMatrix {
        let mut m = SparseMatrix::identity(self.dim);
        for &j in g.reduced_word().iter().rev() {
            m = self.gens[j].mul(&m).expect("square");
        }
        m
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.degree, |mu| trace(&self.action(&Perm::from_cycle_type(mu))))
    }

    pub fn check_coxeter_relations(&self) -> Result<()> {
        let id = SparseMatrix::identity(self.dim);
        for (j, g) in self.gens.iter().enumerate() {
            if g.mul(g)? != id {
                return Err(Error::AxiomViolation(format!("σ_{j}^2 != 1")));
            }
        }
        for j in 0..self.gens.len() {
            for k in j + 1..self.gens.len() {
                let (a, b) = (&self.gens[j], &self.gens[k]);
                if k == j + 1 {
                    let lhs = a.mul(b)?.mul(a)?;
                    let rhs = b.mul(a)?.mul(b)?;
                    if lhs != rhs {
                        return Err(Error::AxiomViolation(format!("braid relation fails at σ_{j}")));
                    }
                } else if a.mul(b)? != b.mul(a)? {
                    return Err(Error::AxiomViolation(format!(
                        "σ_{j} and σ_{k} do not commute"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn trace(m: &SparseMatrix) -> Rational {
    (0..m.ncols().min(m.nrows()))
        .map(|i| m.get(i, i))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Standard Young tableaux of shape `λ`, each as the cell `(row, col)` of
/// entries `0, 1, .., n-1`.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<(usize, usize)>> {
    fn go(
        shape: &[usize],
        filled: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == shape.iter().sum::<usize>() {
            out.push(cur.clone());
            return;
        }
        for i in 0..shape.len() {
            let ok_row = filled[i] < shape[i];
            let ok_col = i == 0 || filled[i - 1] > filled[i];
            if ok_row && ok_col {
                cur.push((i, filled[i]));
                filled[i] += 1;
                go(shape, filled, cur, out);
                filled[i] -= 1;
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(
        lambda.parts(),
        &mut vec![0; lambda.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// All Specht modules of `S_n`.
pub fn all_specht(n: usize) -> Vec<(Partition, Rep)> {
    partitions(n)
        .into_iter()
        .map(|l| {
            let r = Rep::specht(&l);
            (l, r)
        })
        .collect()
}

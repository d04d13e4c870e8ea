use std::sync::Arc;

use serde::Serialize;

use crate::combinat::{injections, Injection};
use crate::equivariant::{build_q, EquivMap, EquivModule, Label};
use crate::error::{Error, Result};
use crate::linalg::{rat, SparseMatrix};
use crate::truncated_ring::{Monomial, RingConfig};

/// Cochain complex `M_0 → M_1 → ..`, with `maps[i]: modules[i] → modules[i+1]`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub modules: Vec<Arc<EquivModule>>,
    pub maps: Vec<EquivMap>,
}

impl Complex {
    /// Validates shapes, module-map conditions and `d∘d = 0`.
    pub fn new(modules: Vec<Arc<EquivModule>>, maps: Vec<EquivMap>) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::SizeMismatch(format!(
                "{} modules with {} maps",
                modules.len(),
                maps.len()
            )));
        }
        for (i, d) in maps.iter().enumerate() {
            if *d.source != *modules[i] || *d.target != *modules[i + 1] {
                return Err(Error::SizeMismatch(format!("map {i} has the wrong endpoints")));
            }
            d.check()?;
        }
        let c = Complex { modules, maps };
        c.check_dd()?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn check_dd(&self) -> Result<()> {
        for (i, w) in self.maps.windows(2).enumerate() {
            if !w[1].matrix.mul(&w[0].matrix)?.is_zero() {
                return Err(Error::NotExact {
                    position: i + 1,
                    detail: "d∘d is nonzero".into(),
                });
            }
        }
        Ok(())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(EquivMap::rank).collect()
    }

    /// `dim H^i` at every position; the last position has no outgoing map.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.modules[i].dim() - out - inc
            })
            .collect()
    }
}

/// `0 → Q_{s,n} → P^0 → P^1 → ..` at truncation `N`. Term `d` is a sum of
/// copies of `P_{s,n}` indexed by compositions of `d` into `n` parts.
#[derive(Clone, Debug)]
pub struct Coresolution {
    pub s: usize,
    pub n: usize,
    /// `modules[0]` is `Q_{s,n}`, `maps[0]` its embedding.
    pub complex: Complex,
    /// No further terms exist: the last term is the end of the resolution.
    pub complete: bool,
}

impl Coresolution {
    /// Number of `P`-terms.
    pub fn length(&self) -> usize {
        self.complex.len() - 1
    }

    pub fn term(&self, d: usize) -> &Arc<EquivModule> {
        &self.complex.modules[d + 1]
    }

    /// Differential `P^d → P^{d+1}`.
    pub fn differential(&self, d: usize) -> &EquivMap {
        &self.complex.maps[d + 1]
    }

    pub fn embedding(&self) -> &EquivMap {
        &self.complex.maps[0]
    }

    /// Ranks of the embedding followed by each differential.
    pub fn ranks(&self) -> Vec<usize> {
        self.complex.ranks()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoresolutionSummary {
    pub s: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub n_vars: usize,
    pub term_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub complete: bool,
}

impl Coresolution {
    pub fn summary(&self) -> CoresolutionSummary {
        CoresolutionSummary {
            s: self.s,
            n: self.n,
            n_vars: self.complex.modules[0].cfg().n_vars,
            term_dims: self.complex.modules.iter().map(|m| m.dim()).collect(),
            ranks: self.ranks(),
            complete: self.complete,
        }
    }
}

fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn permute_mono(mono: &Monomial, j: usize) -> Monomial {
    let mut e = mono.exponents().to_vec();
    e.swap(j, j + 1);
    Monomial(e)
}

fn build_term(cfg: RingConfig, n: usize, d: usize) -> Result<EquivModule> {
    let monos = cfg.monomials()?;
    let tuples: Vec<Injection> = injections(n, cfg.n_vars);
    let mut labels = Vec::new();
    for comp in compositions(d, n) {
        for t in &tuples {
            for m in &monos {
                labels.push(Label::Comp {
                    comp: comp.clone(),
                    tuple: t.images().to_vec(),
                    mono: m.clone(),
                });
            }
        }
    }
    let s = cfg.s;
    EquivModule::from_label_action(
        cfg,
        format!("P^{d}"),
        labels,
        |l, i| match l {
            Label::Comp { comp, tuple, mono } if mono.get(i) < s => Some(Label::Comp {
                comp: comp.clone(),
                tuple: tuple.clone(),
                mono: mono.with(i, mono.get(i) + 1),
            }),
            _ => None,
        },
        |l, j| match l {
            Label::Comp { comp, tuple, mono } => Label::Comp {
                comp: comp.clone(),
                tuple: crate::equivariant::build::swap_tuple(tuple, j),
                mono: permute_mono(mono, j),
            },
            _ => unreachable!(),
        },
        None,
    )
}

/// `(c, t, α) ↦ Σ_p ± x_{t_p}^a (c + e_p, t, α)` with `a = 1` for even
/// `c_p` and `a = s` for odd `c_p`.
fn differential(s: usize, src: &Arc<EquivModule>, dst: &Arc<EquivModule>) -> Result<EquivMap> {
    let mut trip = Vec::new();
    for (col, l) in src.labels().iter().enumerate() {
        let Label::Comp { comp, tuple, mono } = l else { unreachable!() };
        let mut before = 0;
        for p in 0..comp.len() {
            let a = if comp[p] % 2 == 0 { 1 } else { s };
            let v = tuple[p];
            if mono.get(v) + a <= s {
                let mut c = comp.clone();
                c[p] += 1;
                let target = Label::Comp {
                    comp: c,
                    tuple: tuple.clone(),
                    mono: mono.with(v, mono.get(v) + a),
                };
                let row = dst
                    .label_index(&target)
                    .ok_or_else(|| Error::AxiomViolation(format!("missing label {target:?}")))?;
                trip.push((row, col, rat(if before % 2 == 0 { 1 } else { -1 })));
            }
            before += comp[p];
        }
    }
    let m = SparseMatrix::from_triplets(dst.dim(), src.dim(), trip)?;
    EquivMap::new(src.clone(), dst.clone(), m)
}

fn embedding(s: usize, q: &Arc<EquivModule>, p0: &Arc<EquivModule>) -> Result<EquivMap> {
    let mut cols = Vec::with_capacity(q.dim());
    for l in q.labels() {
        let Label::Pq { tuple, mono } = l else { unreachable!() };
        let mut m = mono.clone();
        for &i in tuple {
            m = m.with(i, s);
        }
        let target = Label::Comp {
            comp: vec![0; tuple.len()],
            tuple: tuple.clone(),
            mono: m,
        };
        cols.push(crate::linalg::unit_vec(p0.label_index(&target).expect("label of P^0")));
    }
    EquivMap::new(q.clone(), p0.clone(), SparseMatrix::from_columns(p0.dim(), cols))
}

/// Injective coresolution of `Q_{s,n}` by sums of `P_{s,n}` with `length`
/// terms, checked exact at every position that has an outgoing map. For
/// `s = 0` the embedding is an isomorphism and only one term is built.
pub fn coresolution_q(s: usize, n: usize, n_vars: usize, length: usize) -> Result<Coresolution> {
    if length == 0 {
        return Err(Error::InvalidParameter("coresolution needs at least one term".into()));
    }
    let cfg = RingConfig::new(n_vars, s);
    let q = Arc::new(build_q(s, n, n_vars)?);
    let complete = s == 0 || n == 0;
    let length = if complete { 1 } else { length };
    let mut modules = vec![q.clone()];
    let mut maps = Vec::new();
    for d in 0..length {
        let term = Arc::new(build_term(cfg, n, d)?);
        let map = if d == 0 {
            embedding(s, &q, &term)?
        } else {
            differential(s, modules.last().unwrap(), &term)?
        };
        modules.push(term);
        maps.push(map);
    }
    let complex = Complex::new(modules, maps)?;
    let h = complex.cohomology_dims();
    for (i, &dim) in h.iter().enumerate() {
        let last = i + 1 == h.len();
        if dim != 0 && !(last && !complete) {
            return Err(Error::NotExact {
                position: i,
                detail: format!("cohomology of dimension {dim}"),
            });
        }
    }
    Ok(Coresolution { s, n, complex, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(2, 0).len(), 0);
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn periodic_shape_n1() {
        let c = coresolution_q(2, 1, 2, 4).unwrap();
        assert_eq!(c.length(), 4);
        // Q has dim 2·3, each P term 2·9; ker x = x^2 P, ker x^2 = x P.
        assert_eq!(c.complex.modules.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![6, 18, 18, 18, 18]);
        assert_eq!(c.ranks(), vec![6, 12, 6, 12]);
        let c = coresolution_q(1, 1, 3, 4).unwrap();
        let r = c.ranks();
        assert_eq!(r[1], r[2]);
        assert_eq!(r[2], r[3]);
        assert_eq!(c.differential(0).matrix, c.differential(1).matrix);
    }

    #[test]
    fn s_zero_collapses() {
        let c = coresolution_q(0, 1, 3, 5).unwrap();
        assert!(c.complete);
        assert_eq!(c.length(), 1);
        assert_eq!(c.embedding().rank(), c.term(0).dim());
    }

    #[test]
    fn exact_grid() {
        for nv in 1..=3 {
            for s in 1..=2 {
                for n in 1..=nv.min(2) {
                    let c = coresolution_q(s, n, nv, 3).unwrap();
                    c.complex.check_dd().unwrap();
                    let h = c.complex.cohomology_dims();
                    assert!(h[..h.len() - 1].iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn complex_rejects_nonzero_square() {
        let q = Arc::new(build_q(1, 1, 2).unwrap());
        let d = EquivMap::new_unchecked(q.clone(), q.clone(), SparseMatrix::identity(q.dim()));
        assert!(Complex::new(vec![q.clone(), q.clone(), q.clone()], vec![d.clone(), d]).is_err());
    }
}

//! The truncated ring `S_{N,s} = k[x_1..x_N]/(x_i^{s+1})`, its monomial
//! basis, permutation action and dual module.

use serde::{Deserialize, Serialize};

use crate::combinat::{checked_pow, Partition, Perm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingConfig {
    #[serde(rename = "N")]
    pub n_vars: usize,
    pub s: usize,
}

impl RingConfig {
    pub fn new(n_vars: usize, s: usize) -> Self {
        Self { n_vars, s }
    }

    /// `(s+1)^N`; fails on overflow.
    pub fn num_monomials(&self) -> Result<usize> {
        checked_pow(self.s + 1, self.n_vars)
            .ok_or_else(|| Error::TooLarge(format!("(s+1)^N overflows for {self:?}")))
    }

    pub fn check_same(&self, other: &RingConfig) -> Result<()> {
        if self != other {
            return Err(Error::ConfigMismatch {
                left: format!("N={} s={}", self.n_vars, self.s),
                right: format!("N={} s={}", other.n_vars, other.s),
            });
        }
        Ok(())
    }

    pub fn one(&self) -> Monomial {
        Monomial(vec![0; self.n_vars])
    }

    pub fn variable(&self, i: usize) -> Result<Monomial> {
        if i >= self.n_vars {
            return Err(Error::InvalidParameter(format!("no variable x_{}", i + 1)));
        }
        if self.s == 0 {
            return Err(Error::InvalidParameter("x_i = 0 when s = 0".into()));
        }
        let mut e = vec![0; self.n_vars];
        e[i] = 1;
        Ok(Monomial(e))
    }

    /// Top monomial `(x_1 .. x_N)^s`.
    pub fn top(&self) -> Monomial {
        Monomial(vec![self.s; self.n_vars])
    }

    /// Monomials in order of their base-`(s+1)` rank.
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        let count = self.num_monomials()?;
        Ok((0..count).map(|r| self.unrank(r)).collect())
    }

    /// Base-`(s+1)` digits, `x_1` least significant.
    pub fn rank(&self, m: &Monomial) -> usize {
        m.0.iter()
            .rev()
            .fold(0usize, |acc, &e| acc * (self.s + 1) + e)
    }

    pub fn unrank(&self, mut r: usize) -> Monomial {
        let mut e = Vec::with_capacity(self.n_vars);
        for _ in 0..self.n_vars {
            e.push(r % (self.s + 1));
            r /= self.s + 1;
        }
        Monomial(e)
    }

    pub fn validate(&self, m: &Monomial) -> Result<()> {
        if m.0.len() != self.n_vars {
            return Err(Error::SizeMismatch(format!(
                "monomial of length {} in ring with N={}",
                m.0.len(),
                self.n_vars
            )));
        }
        if m.0.iter().any(|&e| e > self.s) {
            return Err(Error::InvalidParameter(format!(
                "exponent above s={} in {:?}",
                self.s, m.0
            )));
        }
        Ok(())
    }
}

/// Exponent vector; also used as a Δ(s)-degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn with(&self, i: usize, e: usize) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }

    /// Pad with zero exponents up to `n` variables.
    pub fn pad(&self, n: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        Monomial(v)
    }
}

pub fn parse_monomial(json: &str, cfg: &RingConfig) -> Result<Monomial> {
    let m: Monomial = serde_json::from_str(json)?;
    cfg.validate(&m)?;
    Ok(m)
}

/// Product in `S_{N,s}`; `None` is the zero element.
pub fn multiply(a: &Monomial, b: &Monomial, cfg: &RingConfig) -> Result<Option<Monomial>> {
    if a.len() != cfg.n_vars || b.len() != cfg.n_vars {
        return Err(Error::SizeMismatch(format!(
            "monomials of lengths {} and {} with N={}",
            a.len(),
            b.len(),
            cfg.n_vars
        )));
    }
    let e: Vec<usize> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
    if e.iter().any(|&x| x > cfg.s) {
        Ok(None)
    } else {
        Ok(Some(Monomial(e)))
    }
}

/// `x^α · y_β = y_{β-α}` on the dual basis; `None` is zero.
pub fn dual_action(alpha: &Monomial, y: &Monomial) -> Result<Option<Monomial>> {
    if alpha.len() != y.len() {
        return Err(Error::SizeMismatch(format!(
            "monomial of length {} acting on dual label of length {}",
            alpha.len(),
            y.len()
        )));
    }
    let mut e = Vec::with_capacity(y.len());
    for (b, a) in y.0.iter().zip(&alpha.0) {
        match b.checked_sub(*a) {
            Some(d) => e.push(d),
            None => return Ok(None),
        }
    }
    Ok(Some(Monomial(e)))
}

/// Exponent vector composed with `g⁻¹`: the exponent of `x_i` moves to `x_{g(i)}`.
pub fn permute(g: &Perm, m: &Monomial) -> Result<Monomial> {
    if g.degree() != m.len() {
        return Err(Error::SizeMismatch(format!(
            "permutation of degree {} on monomial of length {}",
            g.degree(),
            m.len()
        )));
    }
    let mut e = vec![0; m.len()];
    for (i, &x) in m.0.iter().enumerate() {
        e[g.apply(i)] = x;
    }
    Ok(Monomial(e))
}

/// Monomials fixed by a permutation of cycle type `μ`: those constant on cycles.
pub fn fixed_monomial_count(mu: &Partition, cfg: &RingConfig) -> Result<usize> {
    if mu.size() != cfg.n_vars {
        return Err(Error::SizeMismatch(format!(
            "cycle type {mu} in ring with N={}",
            cfg.n_vars
        )));
    }
    checked_pow(cfg.s + 1, mu.len()).ok_or_else(|| Error::TooLarge("fixed count overflow".into()))
}

/// Whether the dual module `Hom_k(S, k)` is generated by `y_top` alone,
/// checked by collecting `x^α · y_top` over all monomials α.
pub fn dual_is_free_of_rank_one(cfg: &RingConfig) -> Result<bool> {
    let top = cfg.top();
    let mut hit = vec![false; cfg.num_monomials()?];
    for a in cfg.monomials()? {
        if let Some(y) = dual_action(&a, &top)? {
            hit[cfg.rank(&y)] = true;
        }
    }
    Ok(hit.into_iter().all(|h| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions;
    use proptest::prelude::*;

    #[test]
    fn multiply_examples() {
        let cfg = RingConfig::new(2, 1);
        let x1 = cfg.variable(0).unwrap();
        let x2 = cfg.variable(1).unwrap();
        assert_eq!(multiply(&x1, &x1, &cfg).unwrap(), None);
        assert_eq!(multiply(&cfg.one(), &x1, &cfg).unwrap(), Some(x1.clone()));
        assert_eq!(
            multiply(&x1, &x2, &cfg).unwrap(),
            Some(Monomial(vec![1, 1]))
        );
        assert!(multiply(&x1, &Monomial(vec![0]), &cfg).is_err());
    }

    #[test]
    fn dual_examples() {
        let y = Monomial(vec![0, 1]);
        assert_eq!(dual_action(&Monomial(vec![0, 0]), &y).unwrap(), Some(y.clone()));
        assert_eq!(dual_action(&Monomial(vec![1, 0]), &y).unwrap(), None);
        for n in 0..=4 {
            for s in 0..=3 {
                assert!(dual_is_free_of_rank_one(&RingConfig::new(n, s)).unwrap());
            }
        }
    }

    #[test]
    fn permute_examples() {
        let m = Monomial(vec![1, 0, 2]);
        assert_eq!(permute(&Perm::identity(3), &m).unwrap(), m);
        assert_eq!(
            permute(&Perm::coxeter(2, 0), &Monomial(vec![1, 0])).unwrap(),
            Monomial(vec![0, 1])
        );
        for g in Perm::all(3) {
            assert_eq!(permute(&g, &Monomial(vec![0; 3])).unwrap(), Monomial(vec![0; 3]));
        }
    }

    #[test]
    fn counts_and_fixed_points() {
        for n in 0..=6 {
            for s in 0..=3 {
                let cfg = RingConfig::new(n, s);
                let mons = cfg.monomials().unwrap();
                let mut brute = 0;
                let mut e = vec![0; n];
                loop {
                    brute += 1;
                    let Some(i) = (0..n).find(|&i| e[i] < s) else { break };
                    e[i] += 1;
                    for x in e.iter_mut().take(i) {
                        *x = 0;
                    }
                }
                assert_eq!(mons.len(), brute);
                for (r, m) in mons.iter().enumerate() {
                    assert_eq!(cfg.rank(m), r);
                }
            }
        }
        let cfg = RingConfig::new(2, 1);
        assert_eq!(fixed_monomial_count(&Partition::column(2), &cfg).unwrap(), 4);
        assert_eq!(fixed_monomial_count(&Partition::row(2), &cfg).unwrap(), 2);
        for n in 0..=5 {
            for s in 0..=2 {
                let cfg = RingConfig::new(n, s);
                let mons = cfg.monomials().unwrap();
                for mu in partitions(n) {
                    let g = Perm::from_cycle_type(&mu);
                    let fixed = mons
                        .iter()
                        .filter(|m| permute(&g, m).unwrap() == **m)
                        .count();
                    let f = fixed_monomial_count(&mu, &cfg).unwrap();
                    assert_eq!(f, fixed);
                    assert!(f > 0);
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for n in 0..=3 {
            for s in 0..=2 {
                let cfg = RingConfig::new(n, s);
                let mons = cfg.monomials().unwrap();
                let mul = |a: &Monomial, b: &Monomial| multiply(a, b, &cfg).unwrap();
                for a in &mons {
                    for b in &mons {
                        assert_eq!(mul(a, b), mul(b, a));
                        for c in &mons {
                            let left = mul(a, b).and_then(|ab| mul(&ab, c));
                            let right = mul(b, c).and_then(|bc| mul(a, &bc));
                            assert_eq!(left, right);
                        }
                        for g in Perm::all(n) {
                            let lhs = mul(a, b).map(|ab| permute(&g, &ab).unwrap());
                            let rhs = mul(&permute(&g, a).unwrap(), &permute(&g, b).unwrap());
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_json() {
        let cfg = RingConfig::new(3, 2);
        assert_eq!(parse_monomial("[0,2,1]", &cfg).unwrap(), Monomial(vec![0, 2, 1]));
        assert!(parse_monomial("[0,3,1]", &cfg).is_err());
        assert!(parse_monomial("[0,1]", &cfg).is_err());
        assert!(parse_monomial("{}", &cfg).is_err());
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(n in 0usize..6, s in 0usize..4, seed in 0usize..100_000) {
            let cfg = RingConfig::new(n, s);
            let r = seed % cfg.num_monomials().unwrap();
            prop_assert_eq!(cfg.rank(&cfg.unrank(r)), r);
        }

        #[test]
        fn permute_is_a_bijection(n in 1usize..5, s in 0usize..3, k in 0usize..120) {
            let cfg = RingConfig::new(n, s);
            let perms = Perm::all(n);
            let g = &perms[k % perms.len()];
            let mut seen = std::collections::HashSet::new();
            for m in cfg.monomials().unwrap() {
                prop_assert!(seen.insert(permute(g, &m).unwrap()));
            }
        }
    }
}

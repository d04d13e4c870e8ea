//! Grothendieck-group calculus for `P`- and `Q`-classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::characters::splits;
use crate::combinat::{
    binomial, decompose, falling, injections, partitions, z_centralizer, ClassFunction, Partition,
    SymFunc,
};
use crate::error::{Error, Result};
use crate::linalg::{from_pair, to_pair, Rational};

/// Largest level accepted by decoders and basis changes.
pub const MAX_LEVEL: usize = 10;

/// Class in `K(Rep(S_n))`: multiplicities of the irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClassRep {
    level: usize,
    mult: BTreeMap<Partition, i64>,
}

impl KClassRep {
    pub fn new(level: usize, mult: BTreeMap<Partition, i64>) -> Result<Self> {
        for lambda in mult.keys() {
            if lambda.size() != level {
                return Err(Error::InvalidParameter(format!(
                    "{lambda} is not a partition of {level}"
                )));
            }
        }
        Ok(Self {
            level,
            mult: mult.into_iter().filter(|(_, m)| *m != 0).collect(),
        })
    }

    pub fn irreducible(lambda: Partition) -> Self {
        let level = lambda.size();
        Self {
            level,
            mult: BTreeMap::from([(lambda, 1)]),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, lambda: &Partition) -> i64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<Partition, i64> {
        &self.mult
    }

    pub fn character(&self) -> ClassFunction {
        let mut acc = ClassFunction::zero(self.level);
        for (lambda, m) in &self.mult {
            acc = acc
                .add(&ClassFunction::irreducible(lambda).scale(&Rational::from_integer((*m).into())))
                .expect("same level");
        }
        acc
    }

    /// Decomposition of a genuine character; fails on non-integral multiplicities.
    pub fn from_character(f: &ClassFunction) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for (lambda, m) in decompose(f) {
            if !m.is_integer() {
                return Err(Error::InvalidParameter(format!(
                    "multiplicity {m} of {lambda} is not an integer"
                )));
            }
            let v: i64 = m
                .to_integer()
                .try_into()
                .map_err(|_| Error::TooLarge("multiplicity exceeds 64 bits".into()))?;
            mult.insert(lambda, v);
        }
        Self::new(f.level(), mult)
    }

    pub fn dim(&self) -> BigInt {
        self.mult
            .iter()
            .map(|(l, m)| BigInt::from(crate::combinat::specht_dimension(l)) * BigInt::from(*m))
            .sum()
    }

    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_terms(
            self.mult
                .iter()
                .map(|(l, m)| (l.clone(), Rational::from_integer((*m).into()))),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct KClassRepRepr {
    level: usize,
    mult: BTreeMap<String, i64>,
}

impl Serialize for KClassRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KClassRepRepr {
            level: self.level,
            mult: self.mult.iter().map(|(l, m)| (l.to_arg(), *m)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KClassRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = KClassRepRepr::deserialize(d)?;
        if r.level > MAX_LEVEL {
            return Err(serde::de::Error::custom(format!("level {} exceeds {MAX_LEVEL}", r.level)));
        }
        let mut mult = BTreeMap::new();
        for (k, v) in r.mult {
            let p: Partition = k.parse().map_err(serde::de::Error::custom)?;
            mult.insert(p, v);
        }
        KClassRep::new(r.level, mult).map_err(serde::de::Error::custom)
    }
}

/// `μ ↦ (s+1)^{ℓ(μ)}`, the permutation character of `S_n` on the monomial
/// basis of the truncated ring in `n` variables.
pub fn char_of_s(n: usize, s: usize) -> ClassFunction {
    ClassFunction::from_fn(n, |mu| {
        let base = Rational::from_integer((s + 1).into());
        num_traits::pow(base, mu.len())
    })
}

/// `[V] ↦ [S ⊗ V]`.
pub fn mu_n(v: &KClassRep, s: usize) -> Result<KClassRep> {
    KClassRep::from_character(&char_of_s(v.level, s).mul(&v.character())?)
}

/// Matrix of `mu_n` in the irreducible basis, rows and columns in
/// [`partitions`] order: entry `(λ, μ)` is the multiplicity of `S^μ` in `S ⊗ S^λ`.
pub fn mu_matrix(n: usize, s: usize) -> Result<Vec<Vec<Rational>>> {
    let parts = partitions(n);
    parts
        .iter()
        .map(|lambda| {
            let img = mu_n(&KClassRep::irreducible(lambda.clone()), s)?;
            Ok(parts
                .iter()
                .map(|mu| Rational::from_integer(img.get(mu).into()))
                .collect())
        })
        .collect()
}

/// Exact Gauss-Jordan inverse.
pub fn invert(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    P,
    Q,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::P => "P",
            Tag::Q => "Q",
        })
    }
}

/// Rational combination of generic classes `[P_{s,λ}]`, `[Q_{s,λ}]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KGenClass {
    terms: BTreeMap<(Tag, usize, Partition), Rational>,
}

impl KGenClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(tag: Tag, s: usize, lambda: Partition) -> Self {
        let mut c = Self::zero();
        c.add_term(tag, s, lambda, &Rational::one());
        c
    }

    pub fn add_term(&mut self, tag: Tag, s: usize, lambda: Partition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let key = (tag, s, lambda);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, tag: Tag, s: usize, lambda: &Partition) -> Rational {
        self.terms
            .get(&(tag, s, lambda.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<(Tag, usize, Partition), Rational> {
        &self.terms
    }

    pub fn add(&self, other: &KGenClass) -> KGenClass {
        let mut out = self.clone();
        for ((t, s, l), c) in &other.terms {
            out.add_term(*t, *s, l.clone(), c);
        }
        out
    }

    pub fn scale(&self, a: &Rational) -> KGenClass {
        let mut out = KGenClass::zero();
        for ((t, s, l), c) in &self.terms {
            out.add_term(*t, *s, l.clone(), &(c * a));
        }
        out
    }

    /// Every `Q`-term rewritten in the `P`-basis.
    pub fn to_p_basis(&self) -> Result<KGenClass> {
        let mut out = KGenClass::zero();
        for ((t, s, l), c) in &self.terms {
            match t {
                Tag::P => out.add_term(Tag::P, *s, l.clone(), c),
                Tag::Q => out = out.add(&q_class_in_p_basis(l, *s)?.scale(c)),
            }
        }
        Ok(out)
    }

    /// Every `P`-term rewritten in the `Q`-basis.
    pub fn to_q_basis(&self) -> Result<KGenClass> {
        let mut out = KGenClass::zero();
        for ((t, s, l), c) in &self.terms {
            match t {
                Tag::Q => out.add_term(Tag::Q, *s, l.clone(), c),
                Tag::P => out = out.add(&p_class_in_q_basis(l, *s)?.scale(c)),
            }
        }
        Ok(out)
    }

    /// Action of `f ∈ Λ` through `[P_{s,λ}] ↦ Σ c^ν_{λμ} [P_{s,ν}]`, after
    /// moving to the `P`-basis.
    pub fn lambda_action(&self, f: &SymFunc) -> Result<KGenClass> {
        let p = self.to_p_basis()?;
        let mut out = KGenClass::zero();
        for ((_, s, l), c) in p.terms() {
            let prod = SymFunc::schur(l.clone()).mul(f);
            for (nu, d) in prod.terms() {
                out.add_term(Tag::P, *s, nu.clone(), &(c * d));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct KGenTerm {
    tag: Tag,
    s: usize,
    partition: Partition,
    coeff: (i64, i64),
}

impl Serialize for KGenClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|((tag, s, partition), c)| {
                let coeff = to_pair(c).ok_or_else(|| serde::ser::Error::custom("coefficient exceeds 64 bits"))?;
                Ok(KGenTerm {
                    tag: *tag,
                    s: *s,
                    partition: partition.clone(),
                    coeff,
                })
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for KGenClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<KGenTerm>::deserialize(d)?;
        let mut out = KGenClass::zero();
        for t in terms {
            if t.partition.size() > MAX_LEVEL {
                return Err(serde::de::Error::custom("partition too large"));
            }
            let c = from_pair(t.coeff.0, t.coeff.1).map_err(serde::de::Error::custom)?;
            out.add_term(t.tag, t.s, t.partition, &c);
        }
        Ok(out)
    }
}

/// `[P_{s,λ}] = Σ_μ mult_μ(S ⊗ S^λ) [Q_{s,μ}]`.
pub fn p_class_in_q_basis(lambda: &Partition, s: usize) -> Result<KGenClass> {
    check_level(lambda.size())?;
    let img = mu_n(&KClassRep::irreducible(lambda.clone()), s)?;
    let mut out = KGenClass::zero();
    for (mu, m) in img.multiplicities() {
        out.add_term(Tag::Q, s, mu.clone(), &Rational::from_integer((*m).into()));
    }
    Ok(out)
}

/// `[Q_{s,λ}]` in the `P`-basis, through the inverse of [`mu_matrix`].
pub fn q_class_in_p_basis(lambda: &Partition, s: usize) -> Result<KGenClass> {
    let n = lambda.size();
    check_level(n)?;
    let parts = partitions(n);
    let inv = invert(&mu_matrix(n, s)?)?;
    let row = parts.iter().position(|p| p == lambda).expect("partition of n");
    let mut out = KGenClass::zero();
    for (j, mu) in parts.iter().enumerate() {
        out.add_term(Tag::P, s, mu.clone(), &inv[row][j]);
    }
    Ok(out)
}

fn check_level(n: usize) -> Result<()> {
    if n > MAX_LEVEL {
        return Err(Error::TooLarge(format!("level {n} exceeds {MAX_LEVEL}")));
    }
    Ok(())
}

/// `Σ_r f_r [R/h_r]` with `f_r ∈ Λ ⊗ Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct KModClass {
    pub coeffs: BTreeMap<usize, SymFunc>,
}

impl KModClass {
    pub fn coeff(&self, r: usize) -> SymFunc {
        self.coeffs.get(&r).cloned().unwrap_or_default()
    }

    pub fn mul_symfunc(&self, f: &SymFunc) -> KModClass {
        KModClass {
            coeffs: self
                .coeffs
                .iter()
                .map(|(r, g)| (*r, g.mul(f)))
                .filter(|(_, g)| !g.is_zero())
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BTreeMap<String, SymFunc> = serde_json::from_str(s)?;
        let mut coeffs = BTreeMap::new();
        for (k, f) in raw {
            let r: usize = k
                .parse()
                .map_err(|_| Error::Decode(format!("bad rank index {k:?}")))?;
            if f.max_degree().unwrap_or(0) > MAX_LEVEL {
                return Err(Error::Decode("symmetric function degree too large".into()));
            }
            if !f.is_zero() {
                coeffs.insert(r, f);
            }
        }
        Ok(KModClass { coeffs })
    }
}

/// `[P_{r,λ}] ↦ s_λ [R/h_r]`, with `Q`-terms rewritten in the `P`-basis.
pub fn rank_expand(class: &KGenClass) -> Result<KModClass> {
    let p = class.to_p_basis()?;
    let mut coeffs: BTreeMap<usize, SymFunc> = BTreeMap::new();
    for ((_, r, l), c) in p.terms() {
        let e = coeffs.entry(*r).or_default();
        e.add_term(l.clone(), c);
    }
    coeffs.retain(|_, f| !f.is_zero());
    Ok(KModClass { coeffs })
}

fn z_rat(mu: &Partition) -> Rational {
    Rational::from_integer(BigInt::from(z_centralizer(mu)))
}

fn union(a: &Partition, b: &Partition) -> Partition {
    let mut v = a.parts().to_vec();
    v.extend_from_slice(b.parts());
    Partition::from_unsorted(v)
}

/// Characters of `U_r = Ind_{S_r × S_{n-r} × S_{m-r}}^{S_{n+m-r}} (V ⊗ W)`,
/// where `S_r` acts diagonally, for `r = 0..=min(n, m)`.
pub fn tensor_induced_decompose(v: &KClassRep, w: &KClassRep) -> Result<Vec<(usize, KClassRep)>> {
    let (n, m) = (v.level(), w.level());
    check_level(n + m)?;
    let (cv, cw) = (v.character(), w.character());
    let mut out = Vec::new();
    for r in 0..=n.min(m) {
        let total = n + m - r;
        let f = ClassFunction::from_fn(total, |mu| {
            let mut acc = Rational::zero();
            for (a, rest) in splits(mu, r) {
                for (b, c) in splits(&rest, n - r) {
                    let val = cv.get(&union(&a, &b)) * cw.get(&union(&a, &c));
                    if !val.is_zero() {
                        acc += val / (z_rat(&a) * z_rat(&b) * z_rat(&c));
                    }
                }
            }
            acc * z_rat(mu)
        });
        out.push((r, KClassRep::from_character(&f)?));
    }
    Ok(out)
}

/// `dim (V ⊗ W)` against `Σ_r dim U_r` after inducing up to `S_N`:
/// `dim V·C(N,n) · dim W·C(N,m) = Σ_r dim U_r · C(N, n+m-r)`.
pub fn tensor_dim_identity(v: &KClassRep, w: &KClassRep, n_vars: usize) -> Result<bool> {
    let (n, m) = (v.level(), w.level());
    let big = |x: num_bigint::BigUint| BigInt::from(x);
    let lhs = v.dim() * big(binomial(n_vars, n)) * w.dim() * big(binomial(n_vars, m));
    let rhs: BigInt = tensor_induced_decompose(v, w)?
        .into_iter()
        .map(|(r, u)| u.dim() * big(binomial(n_vars, n + m - r)))
        .sum();
    Ok(lhs == rhs)
}

/// `N!/(N-n)! · N!/(N-m)! = Σ_r C(n,r) C(m,r) r! · N!/(N-n-m+r)!`, checked
/// both by the formula and by sorting pairs of injections by overlap.
pub fn truncation_dim_check(n: usize, m: usize, n_vars: usize) -> Result<bool> {
    if n + m > n_vars {
        return Err(Error::InvalidParameter(format!(
            "need n+m ≤ N, got n={n} m={m} N={n_vars}"
        )));
    }
    let lhs = falling(n_vars, n) * falling(n_vars, m);
    let terms: Vec<num_bigint::BigUint> = (0..=n.min(m))
        .map(|r| {
            binomial(n, r) * binomial(m, r) * crate::combinat::factorial(r) * falling(n_vars, n + m - r)
        })
        .collect();
    let formula = lhs == terms.iter().cloned().sum();
    if n_vars > 8 {
        return Ok(formula);
    }
    let mut by_overlap = vec![num_bigint::BigUint::zero(); n.min(m) + 1];
    let bs = injections(m, n_vars);
    for a in injections(n, n_vars) {
        for b in &bs {
            let r = b.images().iter().filter(|x| a.images().contains(x)).count();
            by_overlap[r] += 1u32;
        }
    }
    Ok(formula && by_overlap == terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truncated_ring::{fixed_monomial_count, RingConfig};
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn char_of_s_examples() {
        let c = char_of_s(2, 1);
        assert_eq!(c.get(&p("1,1")), r(4, 1));
        assert_eq!(c.get(&p("2")), r(2, 1));
        let c = char_of_s(3, 1);
        assert_eq!(
            [c.get(&p("1,1,1")), c.get(&p("2,1")), c.get(&p("3"))],
            [r(8, 1), r(4, 1), r(2, 1)]
        );
        assert!(char_of_s(4, 0).values().values().all(|v| v.is_one()));
    }

    #[test]
    fn char_of_s_matches_fixed_monomials() {
        for n in 0..=5 {
            for s in 0..=3 {
                let c = char_of_s(n, s);
                for mu in partitions(n) {
                    let fixed = fixed_monomial_count(&mu, &RingConfig::new(n, s)).unwrap();
                    assert_eq!(c.get(&mu), r(fixed as i64, 1));
                    assert!(c.get(&mu) > Rational::zero());
                }
            }
        }
    }

    #[test]
    fn mu_examples() {
        let v = KClassRep::irreducible(p("1"));
        assert_eq!(mu_n(&v, 1).unwrap().get(&p("1")), 2);
        let v = KClassRep::irreducible(p("2"));
        let img = mu_n(&v, 1).unwrap();
        assert_eq!((img.get(&p("2")), img.get(&p("1,1"))), (3, 1));
        for lambda in partitions(3) {
            let v = KClassRep::irreducible(lambda);
            assert_eq!(mu_n(&v, 0).unwrap(), v);
        }
    }

    #[test]
    fn mu_invertible() {
        for n in 0..=5 {
            for s in 0..=3 {
                assert!(invert(&mu_matrix(n, s).unwrap()).is_ok(), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn regular_rep_scales_by_rank() {
        for n in 0..=4 {
            for s in 0..=2 {
                let reg = KClassRep::from_character(&ClassFunction::regular(n)).unwrap();
                let img = mu_n(&reg, s).unwrap();
                let k = ((s + 1) as i64).pow(n as u32);
                for (l, m) in reg.multiplicities() {
                    assert_eq!(img.get(l), k * m);
                }
            }
        }
    }

    #[test]
    fn basis_changes() {
        assert_eq!(p_class_in_q_basis(&p("1"), 1).unwrap().coeff(Tag::Q, 1, &p("1")), r(2, 1));
        let c = p_class_in_q_basis(&p("2"), 1).unwrap();
        assert_eq!(c.coeff(Tag::Q, 1, &p("2")), r(3, 1));
        assert_eq!(c.coeff(Tag::Q, 1, &p("1,1")), r(1, 1));
        assert_eq!(q_class_in_p_basis(&p("1"), 1).unwrap().coeff(Tag::P, 1, &p("1")), r(1, 2));
        for lambda in partitions(3) {
            assert_eq!(p_class_in_q_basis(&lambda, 0).unwrap(), KGenClass::basis(Tag::Q, 0, lambda.clone()));
            assert_eq!(q_class_in_p_basis(&lambda, 0).unwrap(), KGenClass::basis(Tag::P, 0, lambda));
        }
    }

    #[test]
    fn round_trips() {
        for n in 0..=4 {
            for s in 0..=2 {
                for lambda in partitions(n) {
                    let pc = KGenClass::basis(Tag::P, s, lambda.clone());
                    assert_eq!(pc.to_q_basis().unwrap().to_p_basis().unwrap(), pc);
                    let qc = KGenClass::basis(Tag::Q, s, lambda);
                    assert_eq!(qc.to_p_basis().unwrap().to_q_basis().unwrap(), qc);
                }
            }
        }
    }

    #[test]
    fn rank_expand_examples() {
        for rr in 0..=2 {
            let e = rank_expand(&KGenClass::basis(Tag::P, rr, Partition::empty())).unwrap();
            assert_eq!(e.coeff(rr), SymFunc::one());
        }
        let e = rank_expand(&KGenClass::basis(Tag::P, 1, p("1"))).unwrap();
        assert_eq!(e.coeff(1), SymFunc::schur(p("1")));
        let e = rank_expand(&KGenClass::basis(Tag::Q, 1, p("1"))).unwrap();
        assert_eq!(e.coeff(1), SymFunc::schur(p("1")).scale(&r(1, 2)));
    }

    #[test]
    fn rank_expand_respects_lambda_action() {
        for rr in 0..=2 {
            for lambda in [p("1"), p("2"), p("1,1")] {
                for mu in [p("1"), p("2,1")] {
                    let f = SymFunc::schur(mu);
                    for tag in [Tag::P, Tag::Q] {
                        let c = KGenClass::basis(tag, rr, lambda.clone());
                        let lhs = rank_expand(&c.lambda_action(&f).unwrap()).unwrap();
                        let rhs = rank_expand(&c).unwrap().mul_symfunc(&f);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn kmod_json() {
        let e = rank_expand(&KGenClass::basis(Tag::Q, 1, p("2"))).unwrap();
        let s = e.to_json().unwrap();
        assert_eq!(KModClass::from_json(&s).unwrap(), e);
        assert!(s.starts_with("{\"1\":"));
        assert!(KModClass::from_json(r#"{"x": {}}"#).is_err());
        assert!(KModClass::from_json(r#"{"0": {"2,1": [1, 0]}}"#).is_err());
    }

    #[test]
    fn kclass_json() {
        let v = KClassRep::new(3, BTreeMap::from([(p("2,1"), 2), (p("3"), -1)])).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<KClassRep>(&s).unwrap(), v);
        assert!(serde_json::from_str::<KClassRep>(r#"{"level":2,"mult":{"3":1}}"#).is_err());
        let g = KGenClass::basis(Tag::Q, 2, p("1,1")).scale(&r(-3, 4));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<KGenClass>(&s).unwrap(), g);
    }

    #[test]
    fn tensor_decompose_examples() {
        let t = KClassRep::irreducible(p("1"));
        let u = tensor_induced_decompose(&t, &t).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u[0].1.dim(), BigInt::from(2));
        assert_eq!(u[1].1.dim(), BigInt::from(1));
        assert!(tensor_dim_identity(&t, &t, 3).unwrap());
    }

    #[test]
    fn tensor_identity_grid() {
        for n in 0..=3 {
            for m in 0..=3 {
                let v = KClassRep::from_character(&ClassFunction::regular(n)).unwrap();
                let w = KClassRep::irreducible(partitions(m).into_iter().next().unwrap());
                let u = tensor_induced_decompose(&v, &w).unwrap();
                assert!(u.last().unwrap().1.dim() > BigInt::zero());
                for nv in 0..=8 {
                    assert!(tensor_dim_identity(&v, &w, nv).unwrap(), "n={n} m={m} N={nv}");
                }
            }
        }
    }

    #[test]
    fn truncation_examples() {
        assert!(truncation_dim_check(1, 1, 3).unwrap());
        assert!(truncation_dim_check(2, 1, 4).unwrap());
        assert!(truncation_dim_check(0, 3, 5).unwrap());
        assert!(truncation_dim_check(3, 3, 6).unwrap());
        assert!(truncation_dim_check(2, 2, 3).is_err());
    }

    proptest! {
        #[test]
        fn mu_preserves_dimension_scaling(n in 0usize..5, s in 0usize..3, idx in 0usize..8) {
            let parts = partitions(n);
            let lambda = parts[idx % parts.len()].clone();
            let v = KClassRep::irreducible(lambda);
            let img = mu_n(&v, s).unwrap();
            prop_assert_eq!(img.dim(), v.dim() * BigInt::from((s + 1).pow(n as u32)));
        }
    }
}

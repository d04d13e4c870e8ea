use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::characters::{decompose, induce_character, ClassFunction};
use super::partition::{partitions, Partition};
use crate::error::{Error, Result};
use crate::linalg::{from_pair, to_pair, Rational};

thread_local! {
    static PRODUCT_MEMO: RefCell<HashMap<(Partition, Partition), BTreeMap<Partition, Rational>>> =
        RefCell::new(HashMap::new());
}

/// Symmetric function in the Schur basis, with rational coefficients and no
/// stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn schur(lambda: Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda, Rational::one());
        Self { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, &c);
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(lambda.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, a: &Rational) -> SymFunc {
        Self::from_terms(self.coeffs.iter().map(|(p, c)| (p.clone(), c * a)))
    }

    /// Product through induction from Young subgroups.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let coef = ca * cb;
                for (nu, m) in schur_product(a, b) {
                    out.add_term(nu, &(&coef * m));
                }
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> SymFunc {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(p, _)| p.size() == d)
                .map(|(p, c)| (p.clone(), c.clone())),
        )
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Partition::size).max()
    }

    /// Inverse Frobenius map on the degree-`d` component.
    pub fn to_class_function(&self, d: usize) -> ClassFunction {
        let mut f = ClassFunction::zero(d);
        for (p, c) in &self.coeffs {
            if p.size() == d {
                f = f
                    .add(&ClassFunction::irreducible(p).scale(c))
                    .expect("same level");
            }
        }
        f
    }
}

fn schur_product(a: &Partition, b: &Partition) -> BTreeMap<Partition, Rational> {
    let key = if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if let Some(v) = PRODUCT_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return v;
    }
    let ind = induce_character(&[ClassFunction::irreducible(a), ClassFunction::irreducible(b)]);
    let v: BTreeMap<Partition, Rational> = decompose(&ind)
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .collect();
    PRODUCT_MEMO.with(|m| m.borrow_mut().insert(key, v.clone()));
    v
}

/// Frobenius characteristic: `χ^λ ↦ s_λ`, extended linearly.
pub fn frobenius_char(f: &ClassFunction) -> SymFunc {
    SymFunc::from_terms(decompose(f))
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "s{p}")?;
            } else {
                write!(f, "{c}*s{p}")?;
            }
        }
        Ok(())
    }
}

/// JSON: `{"2,1": [num, den], ...}`, the empty partition keyed by `""`.
impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = BTreeMap::new();
        for (p, c) in &self.coeffs {
            let pair = to_pair(c)
                .ok_or_else(|| serde::ser::Error::custom("coefficient exceeds 64 bits"))?;
            m.insert(p.to_arg(), pair);
        }
        m.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, (i64, i64)>::deserialize(de)?;
        let mut out = SymFunc::zero();
        for (k, (n, d)) in m {
            let p: Partition = k.parse().map_err(serde::de::Error::custom)?;
            let c = from_pair(n, d).map_err(serde::de::Error::custom)?;
            out.add_term(p, &c);
        }
        Ok(out)
    }
}

/// Complete homogeneous `h_n = s_(n)`.
pub fn h(n: usize) -> SymFunc {
    SymFunc::schur(Partition::row(n))
}

/// All Schur functions of degree `d`.
pub fn schur_basis(d: usize) -> Vec<SymFunc> {
    partitions(d).into_iter().map(SymFunc::schur).collect()
}

pub fn parse_symfunc(s: &str) -> Result<SymFunc> {
    serde_json::from_str(s).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use std::collections::HashMap;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let f = frobenius_char(&ClassFunction::irreducible(&p(&[2, 1])));
        assert_eq!(f, SymFunc::schur(p(&[2, 1])));
        let reg = frobenius_char(&ClassFunction::regular(2));
        assert_eq!(reg, SymFunc::schur(p(&[2])).add(&SymFunc::schur(p(&[1, 1]))));
        let t = ClassFunction::trivial(1);
        assert_eq!(frobenius_char(&induce_character(&[t.clone(), t])), reg);
    }

    #[test]
    fn pieri_h1_times_h1() {
        let prod = h(1).mul(&h(1));
        assert_eq!(prod.coeff(&p(&[2])), rat(1));
        assert_eq!(prod.coeff(&p(&[1, 1])), rat(1));
        assert_eq!(SymFunc::one().mul(&prod), prod);
    }

    #[test]
    fn json_roundtrip() {
        let f = SymFunc::schur(p(&[2, 1])).scale(&crate::linalg::ratio(1, 2)).add(&SymFunc::one());
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"":[1,1],"2,1":[1,2]}"#);
        assert_eq!(parse_symfunc(&s).unwrap(), f);
        assert!(parse_symfunc(r#"{"1,2":[1,1]}"#).is_err());
        assert!(parse_symfunc(r#"{"1":[1,0]}"#).is_err());
    }

    // Independent oracle: expand Schur polynomials as sums over semistandard
    // tableaux in k variables, multiply polynomials, then peel off leading
    // dominant monomials.
    type Poly = HashMap<Vec<usize>, i64>;

    fn schur_poly(lambda: &[usize], k: usize) -> Poly {
        let cells: Vec<(usize, usize)> = lambda
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect();
        let mut out = Poly::new();
        let mut fill = vec![vec![0usize; lambda.first().copied().unwrap_or(0)]; lambda.len()];
        fn go(
            idx: usize,
            cells: &[(usize, usize)],
            fill: &mut Vec<Vec<usize>>,
            k: usize,
            out: &mut Poly,
        ) {
            if idx == cells.len() {
                let mut e = vec![0; k];
                for &(i, j) in cells {
                    e[fill[i][j]] += 1;
                }
                *out.entry(e).or_insert(0) += 1;
                return;
            }
            let (i, j) = cells[idx];
            let lo_row = if j > 0 { fill[i][j - 1] } else { 0 };
            let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 0 };
            for v in lo_row.max(lo_col)..k {
                fill[i][j] = v;
                go(idx + 1, cells, fill, k, out);
            }
        }
        go(0, &cells, &mut fill, k, &mut out);
        out
    }

    fn poly_mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn schur_decompose(mut f: Poly, k: usize) -> BTreeMap<Partition, i64> {
        let mut out = BTreeMap::new();
        loop {
            f.retain(|_, v| *v != 0);
            let lead = f
                .iter()
                .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
                .max_by(|a, b| a.0.cmp(b.0))
                .map(|(e, c)| (e.clone(), *c));
            let Some((e, c)) = lead else { break };
            let lambda: Vec<usize> = e.into_iter().filter(|&x| x > 0).collect();
            for (m, v) in schur_poly(&lambda, k) {
                *f.entry(m).or_insert(0) -= c * v;
            }
            out.insert(Partition::new(lambda).unwrap(), c);
        }
        out
    }

    #[test]
    fn product_matches_tableau_oracle() {
        for a in 0..=3 {
            for b in 0..=3 {
                let k = a + b;
                for la in partitions(a) {
                    for lb in partitions(b) {
                        let got = SymFunc::schur(la.clone()).mul(&SymFunc::schur(lb.clone()));
                        let want = schur_decompose(
                            poly_mul(&schur_poly(la.parts(), k), &schur_poly(lb.parts(), k)),
                            k,
                        );
                        let want = SymFunc::from_terms(want.into_iter().map(|(p, c)| (p, rat(c))));
                        assert_eq!(got, want, "{la} * {lb}");
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_of_induced_is_product() {
        for a in 0..=3 {
            for b in 0..=3 {
                for la in partitions(a) {
                    for lb in partitions(b) {
                        let f = ClassFunction::irreducible(&la);
                        let g = ClassFunction::irreducible(&lb);
                        assert_eq!(
                            frobenius_char(&induce_character(&[f.clone(), g.clone()])),
                            frobenius_char(&f).mul(&frobenius_char(&g))
                        );
                    }
                }
            }
        }
    }
}

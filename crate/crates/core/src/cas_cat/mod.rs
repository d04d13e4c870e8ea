//! The category with objects finite sets `[n]` and morphisms
//! `Hom([m], [n]) = A_s([n]) ⊗ k[Inj([m], [n])]`, where `A_s([n])` is the
//! truncated ring in the variables indexed by `[n]`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{count_injections, injections, Injection, InjectionIndex};
use crate::error::{Error, Result};
use crate::homcalc::{stable_hom_pq, HomSource};
use crate::linalg::{from_pair, to_pair, Rational, SparseMatrix};
use crate::truncated_ring::{multiply, Monomial, RingConfig};

const MAX_SET: usize = 8;
const MAX_S: usize = 8;
const MAX_TERMS: usize = 10_000;

/// Morphism `[m] → [n]`: a combination of `a ⊗ f` with `a` a monomial in
/// `A_s([n])` and `f` an injection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasMorphism {
    m: usize,
    n: usize,
    s: usize,
    terms: BTreeMap<(Vec<usize>, Monomial), Rational>,
}

impl CasMorphism {
    pub fn zero(m: usize, n: usize, s: usize) -> Self {
        Self {
            m,
            n,
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, s: usize) -> Self {
        let mut f = Self::zero(n, n, s);
        f.add_term(&Injection::identity(n), &RingConfig::new(n, s).one(), &Rational::from_integer(1.into()))
            .expect("shapes agree");
        f
    }

    /// `a ⊗ f`.
    pub fn basic(a: Monomial, f: Injection, s: usize) -> Result<Self> {
        let mut out = Self::zero(f.source(), f.target(), s);
        out.add_term(&f, &a, &Rational::from_integer(1.into()))?;
        Ok(out)
    }

    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Monomial, &Rational)> {
        self.terms.iter().map(|((f, a), c)| (f.as_slice(), a, c))
    }

    pub fn add_term(&mut self, f: &Injection, a: &Monomial, c: &Rational) -> Result<()> {
        if f.source() != self.m || f.target() != self.n {
            return Err(Error::SizeMismatch(format!(
                "injection [{}]->[{}] in Hom([{}], [{}])",
                f.source(),
                f.target(),
                self.m,
                self.n
            )));
        }
        RingConfig::new(self.n, self.s).validate(a)?;
        if c.is_zero() {
            return Ok(());
        }
        let key = (f.images().to_vec(), a.clone());
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, other: &CasMorphism) -> Result<CasMorphism> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((f, a), c) in &other.terms {
            out.add_term(&Injection::new(f.clone(), self.n)?, a, c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> CasMorphism {
        let mut out = Self::zero(self.m, self.n, self.s);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect();
        out
    }

    fn check_shape(&self, other: &CasMorphism) -> Result<()> {
        if (self.m, self.n, self.s) != (other.m, other.n, other.s) {
            return Err(Error::SizeMismatch("morphisms of different shapes".into()));
        }
        Ok(())
    }

    /// Coordinates in the basis of [`hom_basis`].
    pub fn coordinates(&self) -> Result<Vec<(usize, Rational)>> {
        let idx = InjectionIndex::new(self.m, self.n)?;
        let cfg = RingConfig::new(self.n, self.s);
        let per = cfg.num_monomials()?;
        let mut v: Vec<(usize, Rational)> = self
            .terms
            .iter()
            .map(|((f, a), c)| (idx.rank(f) * per + cfg.rank(a), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn to_json(&self) -> Result<String> {
        let terms = self
            .terms
            .iter()
            .map(|((f, a), c)| {
                let (num, den) = to_pair(c)
                    .ok_or_else(|| Error::TooLarge("coefficient exceeds 64 bits".into()))?;
                Ok(TermRepr {
                    injection: f.iter().map(|v| v + 1).collect(),
                    monomial: a.exponents().to_vec(),
                    num,
                    den,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_string(&MorphismRepr {
            m: self.m,
            n: self.n,
            s: self.s,
            terms,
        })?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: MorphismRepr = serde_json::from_str(s)?;
        if r.m > MAX_SET || r.n > MAX_SET || r.s > MAX_S || r.terms.len() > MAX_TERMS {
            return Err(Error::Decode("morphism too large".into()));
        }
        let mut out = Self::zero(r.m, r.n, r.s);
        for t in r.terms {
            let images = t
                .injection
                .iter()
                .map(|&v| v.checked_sub(1).ok_or_else(|| Error::Decode("injection values are 1-based".into())))
                .collect::<Result<Vec<_>>>()?;
            let f = Injection::new(images, r.n)?;
            let a = Monomial(t.monomial);
            out.add_term(&f, &a, &from_pair(t.num, t.den)?)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    injection: Vec<usize>,
    monomial: Vec<usize>,
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    m: usize,
    n: usize,
    s: usize,
    terms: Vec<TermRepr>,
}

/// `g_*(a)`: the variable `x_t` goes to `x_{g(t)}`.
fn push(a: &Monomial, g: &[usize], target: usize) -> Monomial {
    let mut e = vec![0; target];
    for (t, &x) in a.exponents().iter().enumerate() {
        e[g[t]] = x;
    }
    Monomial(e)
}

/// `(b ⊗ g)(a ⊗ f) = b·g_*(a) ⊗ g∘f`, extended bilinearly.
pub fn compose(g: &CasMorphism, f: &CasMorphism) -> Result<CasMorphism> {
    if f.n != g.m || f.s != g.s {
        return Err(Error::SizeMismatch(format!(
            "cannot compose Hom([{}],[{}]) after Hom([{}],[{}]) (s={} vs {})",
            g.m, g.n, f.m, f.n, g.s, f.s
        )));
    }
    let cfg = RingConfig::new(g.n, g.s);
    let mut out = CasMorphism::zero(f.m, g.n, g.s);
    for ((gi, b), cg) in &g.terms {
        for ((fi, a), cf) in &f.terms {
            let pushed = push(a, gi, g.n);
            if let Some(prod) = multiply(b, &pushed, &cfg)? {
                let gf: Vec<usize> = fi.iter().map(|&i| gi[i]).collect();
                out.add_term(&Injection::new(gf, g.n)?, &prod, &(cg * cf))?;
            }
        }
    }
    Ok(out)
}

/// `dim Hom([m], [n]) = inj(m, n)·(s+1)^n`.
pub fn hom_dimension(m: usize, n: usize, s: usize) -> Result<usize> {
    let inj = count_injections(m, n).ok_or_else(|| Error::TooLarge("injection count".into()))?;
    let per = RingConfig::new(n, s).num_monomials()?;
    inj.checked_mul(per)
        .ok_or_else(|| Error::TooLarge("Hom dimension overflow".into()))
}

/// Basis `a ⊗ f` of `Hom([m], [n])`, injections in lex order, monomials in rank order.
pub fn hom_basis(m: usize, n: usize, s: usize) -> Result<Vec<CasMorphism>> {
    let monos = RingConfig::new(n, s).monomials()?;
    let mut out = Vec::new();
    for f in injections(m, n) {
        for a in &monos {
            out.push(CasMorphism::basic(a.clone(), f.clone(), s)?);
        }
    }
    Ok(out)
}

/// Matrix of `ψ ↦ ψ∘φ` from `Hom([m'], [n])` to `Hom([m], [n])` for `φ: [m] → [m']`.
fn precompose_matrix(phi: &CasMorphism, n: usize) -> Result<SparseMatrix> {
    let src = hom_basis(phi.n, n, phi.s)?;
    let rows = hom_dimension(phi.m, n, phi.s)?;
    let cols = src
        .iter()
        .map(|psi| compose(psi, phi)?.coordinates())
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(rows, cols))
}

/// Action of `φ: [m] → [m']` on `I_{s,n}`, in the dual basis:
/// `(φ_* λ)(ψ) = λ(ψ∘φ)`.
pub fn injective_action(phi: &CasMorphism, n: usize) -> Result<SparseMatrix> {
    Ok(precompose_matrix(phi, n)?.transpose())
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectiveInfo {
    pub s: usize,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    /// Common kernel of the `x_i ⊗ id` actions on `I_{s,n}([m])`.
    pub socle_dim: usize,
    /// Socle basis under the pairing `⟨a ⊗ f, b ⊗ g⟩ = [f = g]·coeff_top(ab)`:
    /// `(x_1..x_n)^s ⊗ σ` for `σ ∈ S_n`, given as (injection, monomial).
    pub socle: Vec<(Vec<usize>, Vec<usize>)>,
}

fn x_endomorphism(i: usize, m: usize, s: usize) -> Result<CasMorphism> {
    let cfg = RingConfig::new(m, s);
    CasMorphism::basic(cfg.variable(i)?, Injection::identity(m), s)
}

/// `I_{s,n}([m]) = Hom([m], [n])^*` with its socle.
pub fn injective_i(s: usize, n: usize, m: usize) -> Result<InjectiveInfo> {
    let dim = hom_dimension(m, n, s)?;
    let mut blocks = Vec::new();
    for i in (0..m).filter(|_| s > 0) {
        blocks.push(injective_action(&x_endomorphism(i, m, s)?, n)?);
    }
    let socle_dim = if blocks.is_empty() || dim == 0 {
        dim
    } else {
        let refs: Vec<&SparseMatrix> = blocks.iter().collect();
        dim - SparseMatrix::vstack(&refs)?.rank()
    };
    let socle = if m == n {
        let top = RingConfig::new(n, s).top();
        injections(n, n)
            .into_iter()
            .map(|f| (f.images().iter().map(|v| v + 1).collect(), top.exponents().to_vec()))
            .collect()
    } else {
        Vec::new()
    };
    Ok(InjectiveInfo {
        s,
        n,
        m,
        dim,
        socle_dim,
        socle,
    })
}

/// Dual-basis vectors `δ_{1⊗σ}` of `I_{s,n}([n])`, the socle under the pairing.
pub fn socle_vectors(s: usize, n: usize) -> Result<Vec<Vec<(usize, Rational)>>> {
    injections(n, n)
        .into_iter()
        .map(|f| {
            CasMorphism::basic(RingConfig::new(n, s).one(), f, s)?.coordinates()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HomComparison {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub n_vars: usize,
    pub cas_dim: usize,
    pub stable_p_dim: usize,
    pub agree: bool,
}

/// `dim Hom([m], [n])` against the stable `Hom(P_{s,n}, P_{s,m})`.
pub fn compare_with_p_homs(m: usize, n: usize, s: usize, n_vars: usize) -> Result<HomComparison> {
    if n_vars < n + m + 1 {
        return Err(Error::InvalidParameter(format!(
            "need N ≥ n+m+1 = {}, got {n_vars}",
            n + m + 1
        )));
    }
    let cas_dim = hom_dimension(m, n, s)?;
    let r = stable_hom_pq(&HomSource::P { r: s, n }, &HomSource::P { r: s, n: m }, n_vars)?;
    Ok(HomComparison {
        m,
        n,
        s,
        n_vars,
        cas_dim,
        stable_p_dim: r.dim_stable,
        agree: cas_dim == r.dim_stable,
    })
}

/// A random sparse morphism `[m] → [n]` with small integer coefficients.
pub fn random_morphism(rng: &mut impl Rng, m: usize, n: usize, s: usize, max_terms: usize) -> Result<CasMorphism> {
    let basis = hom_basis(m, n, s)?;
    let mut out = CasMorphism::zero(m, n, s);
    if basis.is_empty() {
        return Ok(out);
    }
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let b = &basis[rng.gen_range(0..basis.len())];
        let c = Rational::from_integer(rng.gen_range(-5i64..=5).into());
        out = out.add(&b.scale(&c))?;
    }
    Ok(out)
}

/// Checks `h(gf) = (hg)f` on `count` seeded random triples of sizes `≤ max_size`.
pub fn check_associativity(seed: u64, count: usize, max_size: usize, max_s: usize) -> Result<bool> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for _ in 0..count {
        let mut sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=max_size)).collect();
        sizes.sort_unstable();
        let s = rng.gen_range(0..=max_s);
        let f = random_morphism(&mut rng, sizes[0], sizes[1], s, 4)?;
        let g = random_morphism(&mut rng, sizes[1], sizes[2], s, 4)?;
        let h = random_morphism(&mut rng, sizes[2], sizes[3], s, 4)?;
        if compose(&h, &compose(&g, &f)?)? != compose(&compose(&h, &g)?, &f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

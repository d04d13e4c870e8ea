use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{FIModule, FIModuleData, RepSpec};
use crate::combinat::{Injection, InjectionIndex, Perm};
use crate::equivariant::{build_induced, build_q, is_module_map, EquivModule, InducedKind, Label};
use crate::error::{Error, Result};
use crate::homcalc::hom_generic;
use crate::linalg::{rat, SparseMatrix};
use crate::rep::Rep;
use crate::truncated_ring::{Monomial, RingConfig};

/// Positions carrying the top weight `s`.
fn top_support(alpha: &Monomial, s: usize) -> Vec<usize> {
    (0..alpha.len()).filter(|&i| alpha.get(i) == s).collect()
}

/// Injection between top supports induced by `e ↦ map(e)`.
fn support_map(from: &[usize], to: &[usize], map: impl Fn(usize) -> usize) -> Result<Injection> {
    let images = from
        .iter()
        .map(|&e| {
            let t = map(e);
            to.iter()
                .position(|&x| x == t)
                .ok_or_else(|| Error::AxiomViolation("weight-s element lost".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Injection::new(images, to.len())
}

/// `Φ_s(M)` at truncation `N`: in degree `α ∈ Δ(s)` it is `M` evaluated on
/// the entries of `α` equal to `s`, with `x^β` and `S_N` acting through the
/// transition maps.
pub fn phi_s(m: &FIModule, s: usize, n_vars: usize) -> Result<EquivModule> {
    if s == 0 {
        return Err(Error::InvalidParameter("Φ_s needs s ≥ 1".into()));
    }
    let cfg = RingConfig::new(n_vars, s);
    let monos = cfg.monomials()?;
    let mut offset = Vec::with_capacity(monos.len());
    let mut labels = Vec::new();
    let mut grading = Vec::new();
    for alpha in &monos {
        offset.push(labels.len());
        let d = m.dim(top_support(alpha, s).len())?;
        for index in 0..d {
            labels.push(Label::Graded { degree: alpha.clone(), index });
            grading.push(alpha.clone());
        }
    }
    let dim = labels.len();
    let mut xmul = Vec::with_capacity(n_vars);
    for i in 0..n_vars {
        let mut trip = Vec::new();
        for (r, alpha) in monos.iter().enumerate() {
            if alpha.get(i) >= s {
                continue;
            }
            let beta = alpha.with(i, alpha.get(i) + 1);
            let (w, w2) = (top_support(alpha, s), top_support(&beta, s));
            let t = m.transition(&support_map(&w, &w2, |e| e)?)?;
            let r2 = cfg.rank(&beta);
            for (a, b, v) in t.triplets() {
                trip.push((offset[r2] + a, offset[r] + b, v.clone()));
            }
        }
        xmul.push(SparseMatrix::from_triplets(dim, dim, trip)?);
    }
    let mut coxeter = Vec::with_capacity(n_vars.saturating_sub(1));
    for j in 0..n_vars.saturating_sub(1) {
        let g = Perm::coxeter(n_vars, j);
        let mut trip = Vec::new();
        for (r, alpha) in monos.iter().enumerate() {
            let beta = crate::truncated_ring::permute(&g, alpha)?;
            let (w, w2) = (top_support(alpha, s), top_support(&beta, s));
            let t = m.transition(&support_map(&w, &w2, |e| g.apply(e))?)?;
            let r2 = cfg.rank(&beta);
            for (a, b, v) in t.triplets() {
                trip.push((offset[r2] + a, offset[r] + b, v.clone()));
            }
        }
        coxeter.push(SparseMatrix::from_triplets(dim, dim, trip)?);
    }
    EquivModule::new(cfg, format!("Φ_{s}"), labels, xmul, coxeter, Some(grading))
}

/// Outcome of comparing `Φ_s` of an FI-module with a `Q`-module.
#[derive(Clone, Debug, Serialize)]
pub struct PhiCheck {
    pub holds: bool,
    pub dim_phi: usize,
    pub dim_q: usize,
    /// For each basis vector of the `Q`-module, its image in `Φ_s(M)`.
    pub bijection: Vec<usize>,
    pub failure: Option<String>,
}

fn finish_check(phi: &EquivModule, q: &EquivModule, image: Vec<Option<usize>>) -> Result<PhiCheck> {
    let mut failure = None;
    if phi.dim() != q.dim() {
        failure = Some(format!("dimensions differ: Φ {} vs Q {}", phi.dim(), q.dim()));
    }
    let mut hit = vec![false; phi.dim()];
    for (c, img) in image.iter().enumerate() {
        match img {
            None => {
                failure.get_or_insert_with(|| format!("basis vector {:?} has no image", q.labels()[c]));
            }
            Some(j) if hit[*j] => {
                failure.get_or_insert_with(|| format!("two basis vectors map to index {j}"));
            }
            Some(j) => hit[*j] = true,
        }
    }
    if failure.is_none() {
        let f = SparseMatrix::from_index_map(phi.dim(), &image);
        if let Err(e) = is_module_map(q, phi, &f) {
            failure = Some(e.to_string());
        }
    }
    Ok(PhiCheck {
        holds: failure.is_none(),
        dim_phi: phi.dim(),
        dim_q: q.dim(),
        bijection: image.into_iter().map(|x| x.unwrap_or(usize::MAX)).collect(),
        failure,
    })
}

/// Checks `Φ_s(P_n) ≅ Q_{s,n}` via `x^α e_t ↦` the injection `t` in degree
/// `α + s·1_t`.
pub fn verify_phi_p(s: usize, n: usize, n_vars: usize) -> Result<PhiCheck> {
    let fi = FIModule::new(FIModuleData::principal(n))?;
    let phi = phi_s(&fi, s, n_vars)?;
    let q = build_q(s, n, n_vars)?;
    let mut index_cache: HashMap<usize, InjectionIndex> = HashMap::new();
    let mut image = Vec::with_capacity(q.dim());
    for l in q.labels() {
        let Label::Pq { tuple, mono } = l else { unreachable!() };
        let mut deg = mono.clone();
        for &i in tuple {
            deg = deg.with(i, s);
        }
        let w = top_support(&deg, s);
        let images: Vec<usize> = tuple
            .iter()
            .map(|t| w.iter().position(|x| x == t).expect("tuple has top weight"))
            .collect();
        let idx = match index_cache.entry(w.len()) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(InjectionIndex::new(n, w.len())?),
        };
        image.push(phi.label_index(&Label::Graded {
            degree: deg,
            index: idx.rank(&images),
        }));
    }
    finish_check(&phi, &q, image)
}

/// Checks `Φ_s(T_n) ≅ Q_{s-1,n}` for the torsion module on the regular
/// representation.
pub fn verify_phi_t(s: usize, n: usize, n_vars: usize) -> Result<PhiCheck> {
    if s == 0 {
        return Err(Error::InvalidParameter("Φ_s needs s ≥ 1".into()));
    }
    let fi = FIModule::new(FIModuleData::torsion(RepSpec::Regular, n))?;
    let phi = phi_s(&fi, s, n_vars)?;
    let q = build_q(s - 1, n, n_vars)?.inflate(s)?;
    let perms = Perm::all(n);
    let perm_index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut image = Vec::with_capacity(q.dim());
    for l in q.labels() {
        let Label::Pq { tuple, mono } = l else { unreachable!() };
        let mut deg = mono.clone();
        for &i in tuple {
            deg = deg.with(i, s);
        }
        let w = top_support(&deg, s);
        let images: Vec<usize> = tuple
            .iter()
            .map(|t| w.iter().position(|x| x == t).expect("tuple has top weight"))
            .collect();
        let found = if w.len() == n {
            let p = Perm::from_images(images)?;
            phi.label_index(&Label::Graded {
                degree: deg,
                index: perm_index[&p],
            })
        } else {
            None
        };
        image.push(found);
    }
    finish_check(&phi, &q, image)
}

/// Checks `Φ_s(P(V)) ≅ Q_s(V)`: equal characters, and a random element of
/// the Hom space between them is invertible.
pub fn verify_phi_induced(s: usize, rep: &RepSpec, n: usize, n_vars: usize, seed: u64) -> Result<bool> {
    let fi = FIModule::new(FIModuleData::Induced { rep: rep.clone(), n })?;
    let phi = phi_s(&fi, s, n_vars)?;
    let q = build_induced(InducedKind::Q, s, &rep.build(n)?, n_vars)?;
    if phi.dim() != q.dim() || phi.character() != q.character() {
        return Ok(false);
    }
    if phi.dim() == 0 {
        return Ok(true);
    }
    let homs = hom_generic(&phi, &q)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut f = SparseMatrix::zeros(q.dim(), phi.dim());
    for h in &homs {
        f = f.axpy(&rat(rng.gen_range(-50..=50)), h)?;
    }
    Ok(f.rank() == q.dim())
}

/// `M([N])` with its `S_N`-action, the finite stand-in for the colimit.
pub fn theta(m: &FIModule, n_vars: usize) -> Result<Rep> {
    m.evaluate(n_vars)
}

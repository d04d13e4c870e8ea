use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::complex::{coresolution_q, Coresolution};
use super::hom::{stable_hom_modules, HomSource};
use crate::combinat::Perm;
use crate::equivariant::{EquivModule, Label};
use crate::error::{Error, Result};
use crate::linalg::{
    nullspace_of_rows, vec_dot, Accum, Rational, SparseMatrix, SparseVec, Subspace,
};
use crate::truncated_ring::Monomial;

/// Longest resolution [`ext_truncated`] will build.
pub const RESOLUTION_CAP: usize = 6;
/// Largest free module [`ext_truncated`] will build.
pub const FREE_DIM_CAP: usize = 20_000;

/// Stable `Ext^i(Q_{r,n}, Q_{s,m})` for `i < degrees`, as cohomology of the
/// stable Hom complex into the coresolution of the target.
pub fn ext_stable(src: HomSource, s: usize, m: usize, n_vars: usize, degrees: usize) -> Result<Vec<usize>> {
    let needed = degrees + 1;
    let c0 = coresolution_q(s, m, n_vars, needed)?;
    let c1 = coresolution_q(s, m, n_vars + 1, needed)?;
    ext_stable_from(&src, &c0, &c1, degrees)
}

/// As [`ext_stable`] over coresolutions already built at `N` and `N+1`.
pub fn ext_stable_from(src: &HomSource, c0: &Coresolution, c1: &Coresolution, degrees: usize) -> Result<Vec<usize>> {
    let len = c0.length().min(c1.length());
    let usable = if c0.complete { len } else { len.saturating_sub(1) };
    if degrees > usable && !c0.complete {
        return Err(Error::TooShort {
            degree: degrees - 1,
            needed: degrees + 1,
            have: len,
        });
    }
    let terms = len.min(degrees + 1);
    let spaces = (0..terms)
        .into_par_iter()
        .map(|d| {
            let t0 = c0.term(d);
            let t0 = inflate_to(t0, src.r())?;
            let t1 = inflate_to(c1.term(d), src.r())?;
            stable_hom_modules(src, &t0, &t1).map(|r| r.basis)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ranks = Vec::with_capacity(terms);
    for d in 0..terms.saturating_sub(1) {
        let diff = &c0.differential(d).matrix;
        let cols: Vec<SparseVec> = spaces[d]
            .basis()
            .iter()
            .map(|v| {
                let w = diff.apply(v);
                spaces[d + 1].coords(&w).ok_or_else(|| {
                    Error::AxiomViolation(format!("differential {d} leaves the stable Hom space"))
                })
            })
            .collect::<Result<_>>()?;
        ranks.push(SparseMatrix::from_columns(spaces[d + 1].dim(), cols).rank());
    }
    Ok((0..degrees)
        .map(|i| {
            if i >= terms {
                return 0;
            }
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            spaces[i].dim() - out - inc
        })
        .collect())
}

fn inflate_to(m: &Arc<EquivModule>, r: usize) -> Result<EquivModule> {
    if r > m.cfg().s {
        m.inflate(r)
    } else {
        Ok((**m).clone())
    }
}

/// Gram matrix of an `S_N`-invariant inner product on `m`.
fn invariant_gram(m: &EquivModule) -> Result<SparseMatrix> {
    if m.has_permutation_basis() {
        return Ok(SparseMatrix::identity(m.dim()));
    }
    let mut acc = SparseMatrix::zeros(m.dim(), m.dim());
    for g in Perm::all(m.cfg().n_vars) {
        let a = m.act(&g);
        acc = acc.add(&a.transpose().mul(&a)?)?;
    }
    Ok(acc)
}

/// One step of an equivariant minimal free resolution.
struct Step {
    /// Ambient module the generators live in.
    ambient: Arc<EquivModule>,
    /// `C_i`, an `S_N`-stable complement of `m K_i` in `K_i`.
    gens: Subspace,
    /// Action of each `σ_j` on `gens` in its own coordinates.
    gen_action: Vec<SparseMatrix>,
    /// Invariant form on `gens`.
    gram: SparseMatrix,
}

fn stable_complement(
    ambient: &EquivModule,
    gram: &SparseMatrix,
    k: &Subspace,
) -> Result<Subspace> {
    let mk = Subspace::from_spanning(
        ambient.dim(),
        k.basis()
            .iter()
            .flat_map(|b| ambient.xmuls().iter().map(move |x| x.apply(b))),
    );
    // y ∈ coords(K) with ⟨B_K y, w⟩ = 0 for w ∈ mK.
    let rows: Vec<SparseVec> = mk
        .basis()
        .iter()
        .map(|w| {
            let gw = gram.apply(w);
            let mut acc = Accum::new();
            for (j, b) in k.basis().iter().enumerate() {
                acc.add(j, &vec_dot(b, &gw));
            }
            acc.finish()
        })
        .collect();
    let ys = nullspace_of_rows(k.dim(), rows);
    Ok(Subspace::from_spanning(
        ambient.dim(),
        ys.iter().map(|y| k.from_coords(y)),
    ))
}

fn restricted_action(ambient: &EquivModule, c: &Subspace) -> Result<Vec<SparseMatrix>> {
    ambient.coxeters().iter().map(|g| c.restrict(g)).collect()
}

/// `S ⊗ C` with basis `x^α ⊗ c_k`, index `rank(α)·dim C + k`.
fn free_module(ambient_cfg: crate::truncated_ring::RingConfig, gen_action: &[SparseMatrix], dim_c: usize) -> Result<EquivModule> {
    let cfg = ambient_cfg;
    let monos = cfg.monomials()?;
    let total = monos
        .len()
        .checked_mul(dim_c)
        .filter(|&t| t <= FREE_DIM_CAP)
        .ok_or_else(|| Error::TooLarge(format!("free module S ⊗ C with dim C = {dim_c}")))?;
    let mut xmul = Vec::with_capacity(cfg.n_vars);
    for i in 0..cfg.n_vars {
        let mut trip = Vec::new();
        for (r, m) in monos.iter().enumerate() {
            if m.get(i) < cfg.s {
                let r2 = cfg.rank(&m.with(i, m.get(i) + 1));
                for k in 0..dim_c {
                    trip.push((r2 * dim_c + k, r * dim_c + k, Rational::from_integer(1.into())));
                }
            }
        }
        xmul.push(SparseMatrix::from_triplets(total, total, trip)?);
    }
    let mut coxeter = Vec::with_capacity(cfg.n_vars.saturating_sub(1));
    for (j, a) in gen_action.iter().enumerate() {
        let mut trip = Vec::new();
        for (r, m) in monos.iter().enumerate() {
            let mut e = m.exponents().to_vec();
            e.swap(j, j + 1);
            let r2 = cfg.rank(&Monomial(e));
            for (row, col, v) in a.triplets() {
                trip.push((r2 * dim_c + row, r * dim_c + col, v.clone()));
            }
        }
        coxeter.push(SparseMatrix::from_triplets(total, total, trip)?);
    }
    let labels = (0..total).map(|index| Label::Index { index }).collect();
    EquivModule::new(cfg, "S⊗C", labels, xmul, coxeter, None)
}

/// `ε(x^α ⊗ c_k) = x^α · b_k` into the ambient module of the generators.
fn cover_map(step: &Step, free: &EquivModule) -> SparseMatrix {
    let cfg = free.cfg();
    let dim_c = step.gens.dim();
    let monos = cfg.monomials().expect("bounded by the free module");
    let mut cols = Vec::with_capacity(free.dim());
    for m in &monos {
        let mut images: Vec<SparseVec> = step.gens.basis().to_vec();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                for v in images.iter_mut() {
                    *v = step.ambient.xmul(i).apply(v);
                }
            }
        }
        cols.extend(images);
    }
    debug_assert_eq!(cols.len(), monos.len() * dim_c);
    SparseMatrix::from_columns(step.ambient.dim(), cols)
}

/// Equivariant minimal free resolution data: the generator spaces and the
/// differentials restricted to them.
struct Resolution {
    steps: Vec<Step>,
}

fn resolve(m: &EquivModule, length: usize) -> Result<Resolution> {
    if length > RESOLUTION_CAP {
        return Err(Error::LengthCap { cap: RESOLUTION_CAP });
    }
    let mut steps = Vec::with_capacity(length);
    let mut ambient = Arc::new(m.clone());
    let mut gram = invariant_gram(m)?;
    let mut k = Subspace::full(m.dim());
    for _ in 0..length {
        let gens = stable_complement(&ambient, &gram, &k)?;
        let gen_action = restricted_action(&ambient, &gens)?;
        let b = gens.basis_matrix();
        let gram_c = b.transpose().mul(&gram.mul(&b)?)?;
        let step = Step {
            ambient: ambient.clone(),
            gens,
            gen_action,
            gram: gram_c,
        };
        let f = Arc::new(free_module(m.cfg(), &step.gen_action, step.gens.dim())?);
        let eps = cover_map(&step, &f);
        let kernel = eps.kernel_subspace();
        if f.dim() - kernel.dim() != k.dim() {
            return Err(Error::AxiomViolation("free cover is not onto the syzygy".into()));
        }
        // Invariant form on S ⊗ C is I ⊗ Γ.
        let dim_c = step.gens.dim();
        let mut trip = Vec::new();
        for r in 0..f.dim() / dim_c.max(1) {
            for (a, bcol, v) in step.gram.triplets() {
                trip.push((r * dim_c + a, r * dim_c + bcol, v.clone()));
            }
        }
        gram = SparseMatrix::from_triplets(f.dim(), f.dim(), trip)?;
        ambient = f.clone();
        k = kernel;
        steps.push(step);
    }
    Ok(Resolution { steps })
}

/// Basis of `Hom_{S_N}(C, T)` as flattened `dim T × dim C` matrices.
fn hom_gens(gen_action: &[SparseMatrix], dim_c: usize, t: &EquivModule) -> Vec<SparseVec> {
    let dt = t.dim();
    let mut rows = Vec::new();
    for (a, at) in gen_action.iter().zip(t.coxeters()) {
        let at_rows = at.transpose();
        for r in 0..dt {
            for c in 0..dim_c {
                let mut acc = Accum::new();
                for (k, v) in a.column(c) {
                    acc.add(r * dim_c + *k, v);
                }
                for (k, v) in at_rows.column(r) {
                    acc.add(*k * dim_c + c, &-v.clone());
                }
                let row = acc.finish();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    nullspace_of_rows(dt * dim_c, rows)
}

/// `dim Ext^i_{S ⋊ S_N}(M, T)` for `i ≤ max_i`, computed at the fixed
/// truncation from an equivariant minimal free resolution of `M`.
pub fn ext_truncated(m: &EquivModule, t: &EquivModule, max_i: usize) -> Result<Vec<usize>> {
    m.cfg().check_same(&t.cfg())?;
    let res = resolve(m, max_i + 2)?;
    let dt = t.dim();
    let homs: Vec<Subspace> = res
        .steps
        .par_iter()
        .map(|st| {
            let dc = st.gens.dim();
            Subspace::from_spanning(dt * dc, hom_gens(&st.gen_action, dc, t))
        })
        .collect();
    let mut mono_cache: HashMap<Monomial, SparseMatrix> = HashMap::new();
    let monos = t.cfg().monomials()?;
    for mo in &monos {
        mono_cache.insert(mo.clone(), t.mono_action(mo));
    }
    // δ_i: Hom(C_i, T) → Hom(C_{i+1}, T), φ ↦ (c ↦ Σ coef · x^α φ(c')).
    let mut ranks = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        let src = &res.steps[i];
        let dst = &res.steps[i + 1];
        let dc = src.gens.dim();
        let dc1 = dst.gens.dim();
        let cols: Vec<SparseVec> = homs[i]
            .basis()
            .iter()
            .map(|phi| {
                let phi_cols = unflatten(phi, dc);
                let mut out = Accum::new();
                for (k, b) in dst.gens.basis().iter().enumerate() {
                    let mut img = Accum::new();
                    for (idx, coef) in b {
                        let (r, cp) = (idx / dc, idx % dc);
                        let v = mono_cache[&monos[r]].apply(&phi_cols[cp]);
                        img.add_scaled(&v, coef);
                    }
                    for (row, v) in img.finish() {
                        out.add(row * dc1 + k, &v);
                    }
                }
                let flat = out.finish();
                homs[i + 1].coords(&flat).ok_or_else(|| {
                    Error::AxiomViolation(format!("coboundary {i} is not equivariant"))
                })
            })
            .collect::<Result<_>>()?;
        ranks.push(SparseMatrix::from_columns(homs[i + 1].dim(), cols).rank());
    }
    Ok((0..=max_i)
        .map(|i| {
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            homs[i].dim() - ranks[i] - inc
        })
        .collect())
}

fn unflatten(phi: &SparseVec, dc: usize) -> Vec<SparseVec> {
    let mut cols: Vec<SparseVec> = vec![Vec::new(); dc];
    for (idx, v) in phi {
        cols[idx % dc].push((idx / dc, v.clone()));
    }
    cols
}

/// Minimal generator counts `dim C_i` of the resolution of `m`.
pub fn betti_numbers(m: &EquivModule, length: usize) -> Result<Vec<usize>> {
    Ok(resolve(m, length)?.steps.iter().map(|s| s.gens.dim()).collect())
}

/// `dim Hom_{S_N}(M, T)` read off the resolution; equals `ext_truncated(..)[0]`.
pub fn hom_dim_via_resolution(m: &EquivModule, t: &EquivModule) -> Result<usize> {
    Ok(ext_truncated(m, t, 0)?[0])
}

#[cfg(test)]
fn gram_is_invariant(m: &EquivModule, gram: &SparseMatrix) -> bool {
    m.coxeters().iter().all(|g| {
        g.transpose()
            .mul(gram)
            .and_then(|x| x.mul(g))
            .map(|x| x == *gram)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::{build_p, build_q, build_ring};
    use crate::homcalc::hom::{hom_generic, inclusion_matrix};

    fn q(r: usize, n: usize) -> HomSource {
        HomSource::Q { r, n }
    }

    #[test]
    fn stable_ext_q11() {
        for s in 1..=2 {
            assert_eq!(ext_stable(q(s, 1), s, 1, 3, 4).unwrap(), vec![1, 1, 1, 1]);
        }
        assert_eq!(ext_stable(q(0, 1), 0, 1, 3, 3).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn stable_ext_needs_extra_term() {
        let c0 = coresolution_q(1, 1, 3, 2).unwrap();
        let c1 = coresolution_q(1, 1, 4, 2).unwrap();
        assert!(matches!(
            ext_stable_from(&q(1, 1), &c0, &c1, 2),
            Err(Error::TooShort { .. })
        ));
        assert_eq!(ext_stable_from(&q(1, 1), &c0, &c1, 1).unwrap(), vec![1]);
    }

    #[test]
    fn gram_invariance() {
        let m = build_q(1, 1, 3).unwrap();
        assert!(gram_is_invariant(&m, &invariant_gram(&m).unwrap()));
        let r = resolve(&m, 2).unwrap();
        for st in &r.steps {
            assert!(gram_is_invariant(&EquivModule::new(
                m.cfg(),
                "C",
                (0..st.gens.dim()).map(|index| Label::Index { index }).collect(),
                vec![SparseMatrix::zeros(st.gens.dim(), st.gens.dim()); m.cfg().n_vars],
                st.gen_action.clone(),
                None,
            ).unwrap(), &st.gram));
        }
    }

    #[test]
    fn resolution_of_free_module_stops() {
        let p = build_p(1, 1, 3).unwrap();
        let b = betti_numbers(&p, 3).unwrap();
        assert_eq!(b, vec![3, 0, 0]);
        let r = build_ring(1, 2).unwrap();
        assert_eq!(betti_numbers(&r, 2).unwrap(), vec![1, 0]);
    }

    #[test]
    fn betti_of_q_over_one_variable() {
        // k[x]/(x^2) resolves k with one generator in every degree.
        let k = build_q(1, 1, 1).unwrap();
        assert_eq!(betti_numbers(&k, 4).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn degree_zero_matches_hom_solver() {
        let cases = [
            (build_q(1, 1, 2).unwrap(), build_p(1, 1, 2).unwrap()),
            (build_q(1, 1, 3).unwrap(), build_q(1, 1, 3).unwrap()),
            (build_p(1, 1, 2).unwrap(), build_q(1, 2, 2).unwrap()),
            (build_q(2, 0, 2).unwrap(), build_ring(2, 2).unwrap()),
        ];
        for (m, t) in &cases {
            assert_eq!(hom_dim_via_resolution(m, t).unwrap(), hom_generic(m, t).unwrap().len());
        }
    }

    #[test]
    fn vanishing_into_free() {
        let m = build_q(1, 1, 3).unwrap();
        let t = build_p(1, 2, 3).unwrap();
        let e = ext_truncated(&m, &t, 2).unwrap();
        assert_eq!(&e[1..], &[0, 0]);
        let p = build_p(1, 1, 2).unwrap();
        assert!(ext_truncated(&p, &p, 0).unwrap()[0] >= 1);
    }

    #[test]
    fn length_cap() {
        let m = build_q(1, 1, 2).unwrap();
        assert!(matches!(ext_truncated(&m, &m, RESOLUTION_CAP), Err(Error::LengthCap { .. })));
    }

    #[test]
    fn inclusion_of_terms() {
        let c0 = coresolution_q(1, 1, 2, 2).unwrap();
        let c1 = coresolution_q(1, 1, 3, 2).unwrap();
        let inc = inclusion_matrix(c0.term(1), c1.term(1)).unwrap();
        assert_eq!(inc.rank(), c0.term(1).dim());
    }
}

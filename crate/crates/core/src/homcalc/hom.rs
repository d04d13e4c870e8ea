use std::collections::HashSet;
use serde::{Deserialize, Serialize};

use crate::equivariant::{build_p, build_q, fixed_subspace, EquivModule, Label};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_of_rows, Accum, Rational, SparseMatrix, SparseVec, Subspace};

/// Largest unknown count accepted by the unreduced solver in [`hom_generic`].
pub const GENERIC_UNKNOWN_CAP: usize = 250_000;

/// A cyclic source module, described by where its generator `e_{1..n}` may go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HomSource {
    /// `Q_{r,n}`: generator fixed by `S_{[n+1..]}`, killed by `x_1..x_n`
    /// and by `x_j^{r+1}` for `j > n`.
    Q { r: usize, n: usize },
    /// `P_{r,n}`: generator fixed by `S_{[n+1..]}`, killed by every `x_j^{r+1}`.
    P { r: usize, n: usize },
}

impl HomSource {
    pub fn n(&self) -> usize {
        match *self {
            HomSource::Q { n, .. } | HomSource::P { n, .. } => n,
        }
    }

    pub fn r(&self) -> usize {
        match *self {
            HomSource::Q { r, .. } | HomSource::P { r, .. } => r,
        }
    }

    pub fn build(&self, n_vars: usize) -> Result<EquivModule> {
        match *self {
            HomSource::Q { r, n } => build_q(r, n, n_vars),
            HomSource::P { r, n } => build_p(r, n, n_vars),
        }
    }

    /// Parse `Q,s,n` or `P,s,n`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let bad = || Error::InvalidParameter(format!("expected KIND,s,n with KIND in P|Q, got {spec:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let r: usize = parts[1].parse().map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        match parts[0] {
            "Q" | "q" => Ok(HomSource::Q { r, n }),
            "P" | "p" => Ok(HomSource::P { r, n }),
            _ => Err(bad()),
        }
    }

    /// Index of the generator `e_{1..n}` in the built module.
    pub fn generator_index(&self, m: &EquivModule) -> Option<usize> {
        m.label_index(&Label::Pq {
            tuple: (0..self.n()).collect(),
            mono: m.cfg().one(),
        })
    }

    fn check(&self, t: &EquivModule) -> Result<()> {
        let cfg = t.cfg();
        if self.n() > cfg.n_vars {
            return Err(Error::InvalidParameter(format!(
                "source level n={} exceeds N={}",
                self.n(),
                cfg.n_vars
            )));
        }
        if self.r() > cfg.s {
            return Err(Error::ConfigMismatch {
                left: format!("source over s={}", self.r()),
                right: format!("target over s={}", cfg.s),
            });
        }
        Ok(())
    }
}

fn apply_pow(m: &SparseMatrix, k: usize, v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for _ in 0..k {
        if out.is_empty() {
            break;
        }
        out = m.apply(&out);
    }
    out
}

/// Linear operators whose common kernel, inside the `S_{[n+1..]}`-fixed
/// vectors, is the space of generator images.
fn annihilator_ops(src: &HomSource, t: &EquivModule) -> Vec<(usize, usize)> {
    let cfg = t.cfg();
    let n = src.n();
    let mut ops = Vec::new();
    match *src {
        HomSource::Q { r, .. } => {
            ops.extend((0..n).map(|i| (i, 1)));
            if r < cfg.s {
                ops.extend((n..cfg.n_vars).map(|j| (j, r + 1)));
            }
        }
        HomSource::P { r, .. } => {
            if r < cfg.s {
                ops.extend((0..cfg.n_vars).map(|j| (j, r + 1)));
            }
        }
    }
    ops
}

fn fixing_gens(n: usize, n_vars: usize) -> Vec<usize> {
    (n..n_vars.saturating_sub(1)).collect()
}

/// Vectors `v` of `T` that are fixed by `S_{[n+1..]}` and killed by the
/// source relations. These are exactly the images of the generator under
/// the module maps out of the source.
pub fn hom_mapping_property(src: &HomSource, t: &EquivModule) -> Result<Subspace> {
    src.check(t)?;
    let fixed = fixed_subspace(t, &fixing_gens(src.n(), t.cfg().n_vars))?;
    cut_by_annihilators(src, t, &fixed)
}

fn cut_by_annihilators(src: &HomSource, t: &EquivModule, within: &Subspace) -> Result<Subspace> {
    let ops = annihilator_ops(src, t);
    if ops.is_empty() || within.dim() == 0 {
        return Ok(within.clone());
    }
    // Column k stacks op(b_k) over all operators.
    let dim = t.dim();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); within.dim()];
    for (k, b) in within.basis().iter().enumerate() {
        for (slot, &(i, e)) in ops.iter().enumerate() {
            for (r, x) in apply_pow(t.xmul(i), e, b) {
                cols[k].push((slot * dim + r, x));
            }
        }
    }
    let mut by_row: std::collections::HashMap<usize, SparseVec> = std::collections::HashMap::new();
    for (k, col) in cols.into_iter().enumerate() {
        for (r, x) in col {
            by_row.entry(r).or_default().push((k, x));
        }
    }
    let mut seen = HashSet::new();
    for (_, row) in by_row {
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    let kernel = nullspace_of_rows(within.dim(), rows);
    Ok(Subspace::from_spanning(
        dim,
        kernel.iter().map(|c| within.from_coords(c)),
    ))
}

/// Basis of the module maps `M → T`, each as a `dim T × dim M` matrix.
///
/// When both modules carry a permutation basis the unknowns are sums over
/// diagonal `S_N`-orbits of matrix positions, and only `f x_1 = x_1 f` is
/// imposed: the other variables are conjugate to `x_1` under `S_N`.
pub fn hom_generic(m: &EquivModule, t: &EquivModule) -> Result<Vec<SparseMatrix>> {
    m.cfg().check_same(&t.cfg())?;
    if m.dim() == 0 || t.dim() == 0 {
        return Ok(Vec::new());
    }
    if m.has_permutation_basis() && t.has_permutation_basis() {
        hom_orbit_sums(m, t)
    } else {
        hom_unreduced(m, t)
    }
}

fn hom_orbit_sums(m: &EquivModule, t: &EquivModule) -> Result<Vec<SparseMatrix>> {
    let (dm, dt) = (m.dim(), t.dim());
    let total = dm
        .checked_mul(dt)
        .ok_or_else(|| Error::TooLarge("Hom unknown count overflow".into()))?;
    let n_vars = m.cfg().n_vars;
    // Union-find over positions (a, b) ↦ a * dm + b.
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    if total > u32::MAX as usize {
        return Err(Error::TooLarge("Hom solve exceeds index range".into()));
    }
    for j in 0..n_vars.saturating_sub(1) {
        let pm = m.coxeter_images(j).expect("permutation basis");
        let pt = t.coxeter_images(j).expect("permutation basis");
        for a in 0..dt {
            for b in 0..dm {
                let x = (a * dm + b) as u32;
                let y = (pt[a] * dm + pm[b]) as u32;
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry) as usize] = rx.min(ry);
                }
            }
        }
    }
    let mut orbit = vec![u32::MAX; total];
    let mut ids = vec![u32::MAX; total];
    let mut count = 0u32;
    for x in 0..total {
        let r = find(&mut parent, x as u32) as usize;
        if ids[r] == u32::MAX {
            ids[r] = count;
            count += 1;
        }
        orbit[x] = ids[r];
    }
    drop(parent);
    drop(ids);
    let unknowns = count as usize;

    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    if n_vars > 0 {
        let xm = m.xmul(0);
        let xt_rows = t.xmul(0).transpose();
        for a in 0..dt {
            for b in 0..dm {
                let mut acc = Accum::new();
                // (f x_1)[a, b] = Σ_c f[a, c] x_1[c, b]
                for (c, v) in xm.column(b) {
                    acc.add(orbit[a * dm + *c] as usize, v);
                }
                // (x_1 f)[a, b] = Σ_c x_1[a, c] f[c, b]
                for (c, v) in xt_rows.column(a) {
                    acc.add(orbit[*c * dm + b] as usize, &-v.clone());
                }
                let row = acc.finish();
                if !row.is_empty() && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = nullspace_of_rows(unknowns, rows);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); unknowns];
    for (x, &o) in orbit.iter().enumerate() {
        members[o as usize].push(x);
    }
    Ok(kernel
        .into_iter()
        .map(|u| {
            let entries = u.iter().flat_map(|(o, val)| {
                members[*o].iter().map(move |&x| (x / dm, x % dm, val.clone()))
            });
            SparseMatrix::from_triplets(dt, dm, entries).expect("in range")
        })
        .collect())
}

fn hom_unreduced(m: &EquivModule, t: &EquivModule) -> Result<Vec<SparseMatrix>> {
    let (dm, dt) = (m.dim(), t.dim());
    let total = dm.saturating_mul(dt);
    if total > GENERIC_UNKNOWN_CAP {
        return Err(Error::TooLarge(format!(
            "{total} unknowns exceed the generic Hom cap of {GENERIC_UNKNOWN_CAP}"
        )));
    }
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    let pairs: Vec<(&SparseMatrix, &SparseMatrix)> = m
        .xmuls()
        .iter()
        .zip(t.xmuls())
        .chain(m.coxeters().iter().zip(t.coxeters()))
        .collect();
    for (am, at) in pairs {
        let at_rows = at.transpose();
        for a in 0..dt {
            for b in 0..dm {
                let mut acc = Accum::new();
                for (c, v) in am.column(b) {
                    acc.add(a * dm + *c, v);
                }
                for (c, v) in at_rows.column(a) {
                    acc.add(*c * dm + b, &-v.clone());
                }
                let row = acc.finish();
                if !row.is_empty() && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(nullspace_of_rows(total, rows)
        .into_iter()
        .map(|u| {
            SparseMatrix::from_triplets(dt, dm, u.into_iter().map(|(x, v)| (x / dm, x % dm, v)))
                .expect("in range")
        })
        .collect())
}

/// Generator images of the maps returned by [`hom_generic`].
pub fn generator_images(src: &HomSource, source: &EquivModule, maps: &[SparseMatrix]) -> Result<Vec<SparseVec>> {
    let g = src
        .generator_index(source)
        .ok_or_else(|| Error::InvalidParameter("source has no generator label".into()))?;
    Ok(maps.iter().map(|f| f.column(g).clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct StableHomResult {
    #[serde(rename = "N")]
    pub n_vars: usize,
    pub dim_at_n: usize,
    pub dim_at_n_plus_1: usize,
    pub dim_stable: usize,
    /// Generator images at level `N`.
    #[serde(skip)]
    pub basis: Subspace,
}

/// Hom out of `src` into `T_N` whose generator images stay valid after the
/// label-padding inclusion `T_N → T_{N+1}`.
pub fn stable_hom(
    src: &HomSource,
    target: impl Fn(usize) -> Result<EquivModule>,
    n_vars: usize,
) -> Result<StableHomResult> {
    let t0 = target(n_vars)?;
    let t1 = target(n_vars + 1)?;
    stable_hom_modules(src, &t0, &t1)
}

/// As [`stable_hom`] with both levels already built.
pub fn stable_hom_modules(src: &HomSource, t0: &EquivModule, t1: &EquivModule) -> Result<StableHomResult> {
    let n_vars = t0.cfg().n_vars;
    if t1.cfg().n_vars != n_vars + 1 || t1.cfg().s != t0.cfg().s {
        return Err(Error::NoInclusion(format!(
            "levels {:?} and {:?} are not consecutive truncations",
            t0.cfg(),
            t1.cfg()
        )));
    }
    let v0 = hom_mapping_property(src, t0)?;
    let v1 = hom_mapping_property(src, t1)?;
    let incl = inclusion_matrix(t0, t1)?;
    let pushed: Vec<SparseVec> = v0.basis().iter().map(|b| incl.apply(b)).collect();
    let stable_coords = constraint_kernel(src, t1, &pushed)?;
    let basis = Subspace::from_spanning(
        t0.dim(),
        stable_coords.iter().map(|c| v0.from_coords(c)),
    );
    Ok(StableHomResult {
        n_vars,
        dim_at_n: v0.dim(),
        dim_at_n_plus_1: v1.dim(),
        dim_stable: basis.dim(),
        basis,
    })
}

/// Canonical inclusion `T_N → T_{N+1}` matching padded labels.
pub fn inclusion_matrix(t0: &EquivModule, t1: &EquivModule) -> Result<SparseMatrix> {
    let n1 = t1.cfg().n_vars;
    let cols = t0
        .labels()
        .iter()
        .map(|l| {
            let p = l.pad(n1)?;
            let j = t1.label_index(&p).ok_or_else(|| {
                Error::NoInclusion(format!("label {l:?} has no image at level {n1}"))
            })?;
            Ok(crate::linalg::unit_vec(j))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(t1.dim(), cols))
}

/// Coordinates `c` such that `Σ c_k w_k` satisfies every source constraint in `t`.
fn constraint_kernel(src: &HomSource, t: &EquivModule, ws: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let dim = t.dim();
    let gens = fixing_gens(src.n(), t.cfg().n_vars);
    let ops = annihilator_ops(src, t);
    let mut by_row: std::collections::HashMap<usize, SparseVec> = std::collections::HashMap::new();
    for (k, w) in ws.iter().enumerate() {
        let mut slot = 0;
        for &j in &gens {
            let moved = t.coxeter(j).apply(w);
            let diff = crate::linalg::vec_sub(&moved, w);
            for (r, x) in diff {
                by_row.entry(slot * dim + r).or_default().push((k, x));
            }
            slot += 1;
        }
        for &(i, e) in &ops {
            for (r, x) in apply_pow(t.xmul(i), e, w) {
                by_row.entry(slot * dim + r).or_default().push((k, x));
            }
            slot += 1;
        }
    }
    let mut seen = HashSet::new();
    let rows: Vec<SparseVec> = by_row
        .into_values()
        .filter(|r| seen.insert(r.clone()))
        .collect();
    Ok(nullspace_of_rows(ws.len(), rows))
}

/// Stable Hom between two P/Q modules given by their parameters.
pub fn stable_hom_pq(src: &HomSource, dst: &HomSource, n_vars: usize) -> Result<StableHomResult> {
    let s = src.r().max(dst.r());
    let build = |nv: usize| -> Result<EquivModule> {
        let m = dst.build(nv)?;
        if m.cfg().s == s {
            Ok(m)
        } else {
            m.inflate(s)
        }
    };
    stable_hom(src, build, n_vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::count_injections;

    fn q(s: usize, n: usize) -> HomSource {
        HomSource::Q { r: s, n }
    }

    #[test]
    fn parse_sources() {
        assert_eq!(HomSource::parse("Q,1,2").unwrap(), q(1, 2));
        assert_eq!(HomSource::parse("P, 0, 0").unwrap(), HomSource::P { r: 0, n: 0 });
        assert!(HomSource::parse("R,1,1").is_err());
        assert!(HomSource::parse("Q,1").is_err());
        assert!(HomSource::parse("Q,-1,1").is_err());
    }

    #[test]
    fn identity_is_a_module_map() {
        let m = build_q(1, 1, 3).unwrap();
        let homs = hom_generic(&m, &m).unwrap();
        assert!(!homs.is_empty());
        let id = SparseMatrix::identity(m.dim());
        let span = Subspace::from_spanning(
            m.dim() * m.dim(),
            homs.iter().map(flatten),
        );
        assert!(span.contains(&flatten(&id)));
    }

    fn flatten(f: &SparseMatrix) -> SparseVec {
        let mut v: SparseVec = f
            .triplets()
            .map(|(r, c, x)| (r * f.ncols() + c, x.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    #[test]
    fn generic_agrees_with_mapping_property() {
        for nv in 1..=4 {
            for s in 0..=2 {
                for n in 0..=nv.min(2) {
                    let src = q(s, n);
                    let source = src.build(nv).unwrap();
                    for m in 0..=nv.min(2) {
                        for target in [build_q(s, m, nv).unwrap(), build_p(s, m, nv).unwrap()] {
                            if source.dim() * target.dim() > 40_000 {
                                continue;
                            }
                            let maps = hom_generic(&source, &target).unwrap();
                            let imgs = generator_images(&src, &source, &maps).unwrap();
                            let img_space = Subspace::from_spanning(target.dim(), imgs);
                            let mp = hom_mapping_property(&src, &target).unwrap();
                            assert_eq!(maps.len(), mp.dim(), "{} -> {} at N={nv}", source.name(), target.name());
                            assert!(img_space.same_as(&mp));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unreduced_solver_matches_orbit_solver() {
        let a = build_q(1, 1, 2).unwrap();
        let b = build_p(1, 1, 2).unwrap();
        assert_eq!(hom_unreduced(&a, &b).unwrap().len(), hom_orbit_sums(&a, &b).unwrap().len());
        let c = build_q(2, 1, 3).unwrap();
        assert_eq!(hom_unreduced(&c, &c).unwrap().len(), hom_orbit_sums(&c, &c).unwrap().len());
    }

    // Oracle for Q_{s,n} → Q_{s,m}: stable maps are indexed by injections [m] → [n].
    #[test]
    fn stable_qq_counts_injections_into_source_level() {
        for s in 1..=2 {
            for n in 0..=2 {
                for m in 0..=2 {
                    let nv = n.max(m) + 2;
                    let r = stable_hom_pq(&q(s, n), &q(s, m), nv).unwrap();
                    assert_eq!(r.dim_stable, count_injections(m, n).unwrap(), "s={s} n={n} m={m}");
                    assert!(r.dim_stable <= r.dim_at_n.min(r.dim_at_n_plus_1));
                }
            }
        }
    }

    #[test]
    fn stable_examples() {
        let r = stable_hom_pq(&q(1, 1), &HomSource::P { r: 1, n: 1 }, 3).unwrap();
        assert_eq!(r.dim_stable, 1);
        let r = stable_hom_pq(&q(0, 1), &HomSource::P { r: 1, n: 0 }, 3).unwrap();
        assert_eq!(r.dim_stable, 0);
        let r = stable_hom_pq(&q(1, 1), &q(1, 1), 3).unwrap();
        assert!(r.dim_stable >= 1);
        let r = stable_hom_pq(&q(0, 1), &q(0, 0), 3).unwrap();
        assert_eq!(r.dim_stable, 1);
        // Boundary junk: the symmetric socle element of the ring is a map at
        // level N that does not survive to N+1.
        let r = stable_hom_pq(&q(0, 0), &HomSource::P { r: 1, n: 0 }, 3).unwrap();
        assert_eq!((r.dim_at_n, r.dim_stable), (1, 0));
    }

    #[test]
    fn mapping_property_on_zero_module() {
        let z = EquivModule::zero(crate::truncated_ring::RingConfig::new(3, 1));
        assert_eq!(hom_mapping_property(&q(1, 1), &z).unwrap().dim(), 0);
    }
}

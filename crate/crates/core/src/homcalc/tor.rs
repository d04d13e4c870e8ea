use crate::combinat::{ClassFunction, Partition, Perm};
use crate::equivariant::{build_q, EquivModule, ModuleCharacter};
use crate::error::{Error, Result};
use crate::linalg::{Accum, Rational, SparseMatrix, SparseVec, Subspace};
use crate::rep::trace;

/// `P_{s,1} ⊗_S Q_{s,1} = k^N ⊗ Q_{s,1}`, basis `e_i ⊗ q`, index `i·dim Q + q`.
struct Tensored {
    q: EquivModule,
    n_vars: usize,
}

impl Tensored {
    fn dim(&self) -> usize {
        self.n_vars * self.q.dim()
    }

    /// `e_i ⊗ q ↦ e_i ⊗ x_i^a q`.
    fn diff(&self, a: usize) -> SparseMatrix {
        let dq = self.q.dim();
        let mut cols = Vec::with_capacity(self.dim());
        for i in 0..self.n_vars {
            let x = self.q.xmul(i);
            for c in 0..dq {
                let mut v: SparseVec = crate::linalg::unit_vec(c);
                for _ in 0..a {
                    v = x.apply(&v);
                }
                cols.push(v.into_iter().map(|(r, val)| (i * dq + r, val)).collect());
            }
        }
        SparseMatrix::from_columns(self.dim(), cols)
    }

    fn act(&self, g: &Perm) -> SparseMatrix {
        let dq = self.q.dim();
        let qa = self.q.act(g);
        let mut trip = Vec::new();
        for i in 0..self.n_vars {
            let gi = g.apply(i);
            for (r, c, v) in qa.triplets() {
                trip.push((gi * dq + r, i * dq + c, v.clone()));
            }
        }
        SparseMatrix::from_triplets(self.dim(), self.dim(), trip).expect("in range")
    }
}

fn character_of_subspace(level: usize, sub: &Subspace, act: impl Fn(&Perm) -> SparseMatrix) -> Result<ClassFunction> {
    let mut values = std::collections::BTreeMap::new();
    for mu in crate::combinat::partitions(level) {
        let g = Perm::from_cycle_type(&mu);
        let r = sub.restrict(&act(&g))?;
        values.insert(mu, trace(&r));
    }
    ClassFunction::from_values(level, values)
}

/// Characters of `Tor_r(Q_{s,1}, Q_{s,1})` for `r = 1..=r_max`, from the
/// 2-periodic free resolution `.. → P --x^s--> P --x--> P → Q` tensored with
/// `Q_{s,1}`.
pub fn tor_periodic(s: usize, r_max: usize, n_vars: usize) -> Result<Vec<ModuleCharacter>> {
    if s == 0 {
        return Err(Error::InvalidParameter("the periodic resolution needs s ≥ 1".into()));
    }
    let t = Tensored {
        q: build_q(s, 1, n_vars)?,
        n_vars,
    };
    let d_odd = t.diff(1);
    let d_even = t.diff(s);
    let d = |r: usize| if r % 2 == 1 { &d_odd } else { &d_even };
    let mut out = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        // H_r = ker(d_r) / im(d_{r+1}).
        let ker = d(r).kernel_subspace();
        let im = d(r + 1).image();
        let ck = character_of_subspace(n_vars, &ker, |g| t.act(g))?;
        let ci = character_of_subspace(n_vars, &im, |g| t.act(g))?;
        out.push(ck.sub(&ci)?);
    }
    Ok(out)
}

/// Character of `Tor_0 = coker(d_1)` from the same complex.
pub fn tor0_from_resolution(s: usize, n_vars: usize) -> Result<ModuleCharacter> {
    let t = Tensored {
        q: build_q(s, 1, n_vars)?,
        n_vars,
    };
    let full = Subspace::full(t.dim());
    let im = t.diff(1).image();
    let cf = character_of_subspace(n_vars, &full, |g| t.act(g))?;
    let ci = character_of_subspace(n_vars, &im, |g| t.act(g))?;
    cf.sub(&ci)
}

/// Character of `A ⊗_S B`, as `A ⊗_k B` modulo `x_i a ⊗ b − a ⊗ x_i b`,
/// with the diagonal `S_N` action.
pub fn tensor_over_ring(a: &EquivModule, b: &EquivModule) -> Result<ModuleCharacter> {
    a.cfg().check_same(&b.cfg())?;
    let (da, db) = (a.dim(), b.dim());
    let total = da * db;
    let mut rels = Vec::new();
    for i in 0..a.cfg().n_vars {
        let (xa, xb) = (a.xmul(i), b.xmul(i));
        for p in 0..da {
            for q in 0..db {
                let mut acc = Accum::new();
                for (r, v) in xa.column(p) {
                    acc.add(*r * db + q, v);
                }
                for (r, v) in xb.column(q) {
                    acc.add(p * db + *r, &-v.clone());
                }
                let v = acc.finish();
                if !v.is_empty() {
                    rels.push(v);
                }
            }
        }
    }
    let rel = Subspace::from_spanning(total, rels);
    let act = |g: &Perm| -> SparseMatrix {
        let (ga, gb) = (a.act(g), b.act(g));
        let mut trip = Vec::new();
        for (r1, c1, v1) in ga.triplets() {
            for (r2, c2, v2) in gb.triplets() {
                trip.push((r1 * db + r2, c1 * db + c2, v1 * v2));
            }
        }
        SparseMatrix::from_triplets(total, total, trip).expect("in range")
    };
    let n = a.cfg().n_vars;
    let cf = character_of_subspace(n, &Subspace::full(total), act)?;
    let cr = character_of_subspace(n, &rel, act)?;
    cf.sub(&cr)
}

pub fn character_dim(c: &ModuleCharacter) -> usize {
    let d: Rational = c.get(&Partition::new(vec![1; c.level()]).expect("valid"));
    d.to_integer().try_into().unwrap_or(0)
}

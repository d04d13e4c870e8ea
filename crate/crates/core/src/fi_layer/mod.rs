//! FI-modules from a small generative grammar, and the functor `Φ_s` into
//! graded modules over the truncated ring.

mod phi;

pub use phi::{phi_s, theta, verify_phi_p, verify_phi_t, verify_phi_induced, PhiCheck};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::combinat::{injections, Injection, InjectionIndex, Partition, Perm};
use crate::error::{Error, Result};
use crate::linalg::{fixed_space, SparseMatrix, SparseVec, Subspace};
use crate::rep::Rep;

const MAX_LEVEL: usize = 8;
const MAX_SHIFT: usize = 8;
const MAX_DEPTH: usize = 16;
const MAX_PARTS: usize = 64;

/// A representation of `S_n` named by its type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepSpec {
    Trivial,
    Sign,
    Regular,
    Specht(Partition),
}

impl RepSpec {
    pub fn build(&self, n: usize) -> Result<Rep> {
        Ok(match self {
            RepSpec::Trivial => Rep::trivial(n),
            RepSpec::Sign => Rep::sign(n),
            RepSpec::Regular => Rep::regular(n),
            RepSpec::Specht(lambda) => {
                if lambda.size() != n {
                    return Err(Error::InvalidParameter(format!(
                        "Specht module {lambda} does not live at level {n}"
                    )));
                }
                Rep::specht(lambda)
            }
        })
    }
}

/// FI-module grammar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FIModuleData {
    /// `P_n(S) = k[Hom_FI([n], S)]`.
    Principal { n: usize },
    /// `P(V) = P_n ⊗_{k[S_n]} V`.
    Induced { rep: RepSpec, n: usize },
    /// `V` in degree `n`, zero elsewhere.
    Torsion { rep: RepSpec, n: usize },
    /// `M(S ⊔ [k])`.
    Shift { inner: Box<FIModuleData>, k: usize },
    DirectSum { parts: Vec<FIModuleData> },
}

impl FIModuleData {
    pub fn principal(n: usize) -> Self {
        FIModuleData::Principal { n }
    }

    pub fn torsion(rep: RepSpec, n: usize) -> Self {
        FIModuleData::Torsion { rep, n }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_at(0)
    }

    fn validate_at(&self, depth: usize) -> Result<()> {
        if depth > MAX_DEPTH {
            return Err(Error::Decode("FI-module expression nested too deeply".into()));
        }
        let level = |n: usize| {
            if n > MAX_LEVEL {
                Err(Error::Decode(format!("level {n} exceeds {MAX_LEVEL}")))
            } else {
                Ok(())
            }
        };
        match self {
            FIModuleData::Principal { n } => level(*n),
            FIModuleData::Induced { rep, n } | FIModuleData::Torsion { rep, n } => {
                level(*n)?;
                rep.build(*n).map(|_| ())
            }
            FIModuleData::Shift { inner, k } => {
                if *k > MAX_SHIFT {
                    return Err(Error::Decode(format!("shift {k} exceeds {MAX_SHIFT}")));
                }
                inner.validate_at(depth + 1)
            }
            FIModuleData::DirectSum { parts } => {
                if parts.len() > MAX_PARTS {
                    return Err(Error::Decode(format!("{} summands exceed {MAX_PARTS}", parts.len())));
                }
                parts.iter().try_for_each(|p| p.validate_at(depth + 1))
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: FIModuleData = serde_json::from_str(s)?;
        d.validate()?;
        Ok(d)
    }
}

enum Node {
    Principal { n: usize },
    Induced { rep: Rep, n: usize },
    Torsion { rep: Rep, n: usize },
    Shift { inner: Box<FIModule>, k: usize },
    Sum { parts: Vec<FIModule> },
}

type TransitionKey = (Vec<usize>, usize, usize);

/// Evaluator for an [`FIModuleData`] with memoized dimensions, invariant
/// models and transition maps.
pub struct FIModule {
    data: FIModuleData,
    node: Node,
    transitions: Mutex<HashMap<TransitionKey, Arc<SparseMatrix>>>,
    invariants: Mutex<HashMap<usize, Arc<Subspace>>>,
}

impl std::fmt::Debug for FIModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FIModule").field("data", &self.data).finish()
    }
}

impl FIModule {
    pub fn new(data: FIModuleData) -> Result<Self> {
        data.validate()?;
        let node = match &data {
            FIModuleData::Principal { n } => Node::Principal { n: *n },
            FIModuleData::Induced { rep, n } => Node::Induced { rep: rep.build(*n)?, n: *n },
            FIModuleData::Torsion { rep, n } => Node::Torsion { rep: rep.build(*n)?, n: *n },
            FIModuleData::Shift { inner, k } => Node::Shift {
                inner: Box::new(FIModule::new((**inner).clone())?),
                k: *k,
            },
            FIModuleData::DirectSum { parts } => Node::Sum {
                parts: parts.iter().cloned().map(FIModule::new).collect::<Result<_>>()?,
            },
        };
        Ok(Self {
            data,
            node,
            transitions: Mutex::new(HashMap::new()),
            invariants: Mutex::new(HashMap::new()),
        })
    }

    pub fn data(&self) -> &FIModuleData {
        &self.data
    }

    /// `dim M([m])`.
    pub fn dim(&self, m: usize) -> Result<usize> {
        Ok(match &self.node {
            Node::Principal { n } => injection_count(*n, m)?,
            Node::Induced { .. } => self.induced_invariants(m)?.dim(),
            Node::Torsion { rep, n } => {
                if m == *n {
                    rep.dim()
                } else {
                    0
                }
            }
            Node::Shift { inner, k } => inner.dim(m + k)?,
            Node::Sum { parts } => parts.iter().map(|p| p.dim(m)).sum::<Result<usize>>()?,
        })
    }

    /// Matrix of `f_*: M([m]) → M([m'])`.
    pub fn transition(&self, f: &Injection) -> Result<Arc<SparseMatrix>> {
        let key = (f.images().to_vec(), f.source(), f.target());
        if let Some(t) = self.transitions.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.compute_transition(f)?);
        self.transitions
            .lock()
            .expect("cache lock")
            .insert(key, t.clone());
        Ok(t)
    }

    fn compute_transition(&self, f: &Injection) -> Result<SparseMatrix> {
        let (m, m2) = (f.source(), f.target());
        match &self.node {
            Node::Principal { n } => principal_transition(*n, f),
            Node::Torsion { rep, n } => {
                if m == *n && m2 == *n {
                    Ok(rep.action(&Perm::from_images(f.images().to_vec())?))
                } else {
                    Ok(SparseMatrix::zeros(self.dim(m2)?, self.dim(m)?))
                }
            }
            Node::Induced { rep, n } => {
                let src = self.induced_invariants(m)?;
                let dst = self.induced_invariants(m2)?;
                let pt = principal_transition(*n, f)?;
                let dv = rep.dim();
                let cols = src
                    .basis()
                    .iter()
                    .map(|v| {
                        let image: SparseVec = {
                            let mut out: Vec<(usize, _)> = v
                                .iter()
                                .flat_map(|(idx, x)| {
                                    let (g, a) = (idx / dv, idx % dv);
                                    pt.column(g)
                                        .iter()
                                        .map(move |(h, y)| (h * dv + a, x * y))
                                })
                                .collect();
                            out.sort_by_key(|e| e.0);
                            out
                        };
                        dst.coords(&image).ok_or_else(|| {
                            Error::AxiomViolation("transition leaves the invariant model".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(dst.dim(), cols))
            }
            Node::Shift { inner, k } => {
                let mut images = f.images().to_vec();
                images.extend((0..*k).map(|i| m2 + i));
                let g = Injection::new(images, m2 + k)?;
                Ok((*inner.transition(&g)?).clone())
            }
            Node::Sum { parts } => {
                let blocks = parts
                    .iter()
                    .map(|p| p.transition(f))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&SparseMatrix> = blocks.iter().map(|b| b.as_ref()).collect();
                Ok(block_diag_rect(&refs))
            }
        }
    }

    /// `(k[Inj([n],[m])] ⊗ V)^{S_n}`, with `S_n` acting by precomposition
    /// and on `V`. Basis index `g·dim V + a`.
    fn induced_invariants(&self, m: usize) -> Result<Arc<Subspace>> {
        let Node::Induced { rep, n } = &self.node else {
            unreachable!()
        };
        if let Some(s) = self.invariants.lock().expect("cache lock").get(&m) {
            return Ok(s.clone());
        }
        let count = injection_count(*n, m)?;
        let idx = InjectionIndex::new(*n, m)?;
        let dv = rep.dim();
        let total = count * dv;
        let mut ops = Vec::new();
        for j in 0..n.saturating_sub(1) {
            // g ↦ g∘σ_j, tensored with ρ(σ_j).
            let sj = Perm::coxeter(*n, j);
            let a = &rep.generators()[j];
            let mut trip = Vec::new();
            for g in injections(*n, m) {
                let gi = idx.rank(g.images());
                let moved: Vec<usize> = (0..*n).map(|i| g.apply(sj.apply(i))).collect();
                let hi = idx.rank(&moved);
                for (r, c, v) in a.triplets() {
                    trip.push((hi * dv + r, gi * dv + c, v.clone()));
                }
            }
            ops.push(SparseMatrix::from_triplets(total, total, trip)?);
        }
        let sub = Arc::new(fixed_space(total, &ops)?);
        self.invariants
            .lock()
            .expect("cache lock")
            .insert(m, sub.clone());
        Ok(sub)
    }

    /// `M([m])` as an `S_m`-representation.
    pub fn evaluate(&self, m: usize) -> Result<Rep> {
        let dim = self.dim(m)?;
        let gens = (0..m.saturating_sub(1))
            .map(|j| {
                let f = Injection::new(Perm::coxeter(m, j).images().to_vec(), m)?;
                Ok((*self.transition(&f)?).clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(m, dim, gens)
    }
}

fn injection_count(n: usize, m: usize) -> Result<usize> {
    crate::combinat::count_injections(n, m)
        .ok_or_else(|| Error::TooLarge(format!("injections [{n}]->[{m}]")))
}

fn principal_transition(n: usize, f: &Injection) -> Result<SparseMatrix> {
    let (m, m2) = (f.source(), f.target());
    let src = InjectionIndex::new(n, m)?;
    let dst = InjectionIndex::new(n, m2)?;
    let mut image = vec![None; src.count()];
    for g in injections(n, m) {
        let fg: Vec<usize> = g.images().iter().map(|&i| f.apply(i)).collect();
        image[src.rank(g.images())] = Some(dst.rank(&fg));
    }
    Ok(SparseMatrix::from_index_map(dst.count(), &image))
}

fn block_diag_rect(blocks: &[&SparseMatrix]) -> SparseMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut cols = Vec::new();
    let mut off = 0;
    for b in blocks {
        for c in b.columns() {
            cols.push(c.iter().map(|(r, v)| (r + off, v.clone())).collect());
        }
        off += b.nrows();
    }
    SparseMatrix::from_columns(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::count_injections;
    use proptest::prelude::*;

    #[test]
    fn evaluation_dims() {
        let p1 = FIModule::new(FIModuleData::principal(1)).unwrap();
        assert_eq!(p1.dim(3).unwrap(), 3);
        let p0 = FIModule::new(FIModuleData::principal(0)).unwrap();
        for m in 0..5 {
            assert_eq!(p0.dim(m).unwrap(), 1);
        }
        let t = FIModule::new(FIModuleData::torsion(RepSpec::Regular, 2)).unwrap();
        assert_eq!(t.dim(3).unwrap(), 0);
        assert_eq!(t.dim(2).unwrap(), 2);
        let ind = FIModule::new(FIModuleData::Induced { rep: RepSpec::Regular, n: 2 }).unwrap();
        let p2 = FIModule::new(FIModuleData::principal(2)).unwrap();
        for m in 0..5 {
            assert_eq!(ind.dim(m).unwrap(), p2.dim(m).unwrap());
        }
        let triv = FIModule::new(FIModuleData::Induced { rep: RepSpec::Trivial, n: 2 }).unwrap();
        assert_eq!(triv.dim(4).unwrap(), 6);
        let sh = FIModule::new(FIModuleData::Shift { inner: Box::new(FIModuleData::principal(1)), k: 2 }).unwrap();
        assert_eq!(sh.dim(1).unwrap(), 3);
    }

    #[test]
    fn evaluation_is_a_representation() {
        let cases = [
            FIModuleData::principal(2),
            FIModuleData::Induced { rep: RepSpec::Specht("2,1".parse().unwrap()), n: 3 },
            FIModuleData::torsion(RepSpec::Sign, 3),
            FIModuleData::Shift { inner: Box::new(FIModuleData::principal(2)), k: 1 },
            FIModuleData::DirectSum { parts: vec![FIModuleData::principal(0), FIModuleData::principal(1)] },
        ];
        for d in cases {
            let m = FIModule::new(d).unwrap();
            for lvl in 0..=4 {
                m.evaluate(lvl).unwrap().check_coxeter_relations().unwrap();
            }
        }
    }

    fn all_injections(max: usize) -> Vec<Injection> {
        (0..=max).flat_map(|a| (a..=max).flat_map(move |b| injections(a, b))).collect()
    }

    #[test]
    fn functoriality_exhaustive() {
        let cases = [
            FIModuleData::principal(1),
            FIModuleData::principal(2),
            FIModuleData::Induced { rep: RepSpec::Sign, n: 2 },
            FIModuleData::torsion(RepSpec::Regular, 2),
            FIModuleData::Shift { inner: Box::new(FIModuleData::principal(1)), k: 1 },
        ];
        let all = all_injections(4);
        for d in cases {
            let m = FIModule::new(d).unwrap();
            for f in &all {
                for g in all.iter().filter(|g| g.source() == f.target()) {
                    let gf = g.compose(f).unwrap();
                    let lhs = m.transition(&gf).unwrap();
                    let rhs = m.transition(g).unwrap().mul(&m.transition(f).unwrap()).unwrap();
                    assert_eq!(*lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_roundtrip_and_limits() {
        let d = FIModuleData::DirectSum {
            parts: vec![
                FIModuleData::principal(1),
                FIModuleData::Torsion { rep: RepSpec::Specht("2".parse().unwrap()), n: 2 },
                FIModuleData::Shift { inner: Box::new(FIModuleData::principal(0)), k: 3 },
            ],
        };
        let s = d.to_json().unwrap();
        assert_eq!(FIModuleData::from_json(&s).unwrap(), d);
        assert!(FIModuleData::from_json(r#"{"kind":"principal","n":99}"#).is_err());
        assert!(FIModuleData::from_json(r#"{"kind":"torsion","rep":{"specht":[2]},"n":3}"#).is_err());
        assert!(FIModuleData::from_json(r#"{"kind":"bogus"}"#).is_err());
        assert!(FIModuleData::from_json(r#"{"kind":"torsion","rep":"regular","n":1}"#).is_ok());
    }

    proptest! {
        #[test]
        fn principal_dims(n in 0usize..4, m in 0usize..6) {
            let p = FIModule::new(FIModuleData::principal(n)).unwrap();
            prop_assert_eq!(p.dim(m).unwrap(), count_injections(n, m).unwrap());
        }
    }
}

//! Finite-dimensional modules over `S_{N,s}` carrying a compatible `S_N`
//! action, stored as matrices of the variables and of the Coxeter
//! generators.

pub(crate) mod build;
mod filtration;
mod json;

pub use build::{build_induced, build_p, build_q, build_ring, InducedKind};
pub use filtration::{filtration_p, p_to_q_projection, q_into_p_embedding, Filtration, FiltrationPiece};
pub use json::{module_from_json, module_to_json, ModuleDump};

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinat::{ClassFunction, Perm};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseMatrix, SparseVec, SubQuotient, Subspace};
use crate::rep::trace;
use crate::truncated_ring::{permute, Monomial, RingConfig};

/// Structured basis label. Tuples are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    /// `x^mono e_tuple` in a P- or Q-module.
    Pq { tuple: Vec<usize>, mono: Monomial },
    /// Basis element of a coresolution term indexed by a composition.
    Comp {
        comp: Vec<usize>,
        tuple: Vec<usize>,
        mono: Monomial,
    },
    /// Element `index` of the graded component of the given degree.
    Graded { degree: Monomial, index: usize },
    Summand { part: usize, inner: Box<Label> },
    Index { index: usize },
}

impl Label {
    /// The image of this label under the inclusion from level `N` to `n_new`.
    pub fn pad(&self, n_new: usize) -> Result<Label> {
        Ok(match self {
            Label::Pq { tuple, mono } => Label::Pq {
                tuple: tuple.clone(),
                mono: mono.pad(n_new),
            },
            Label::Comp { comp, tuple, mono } => Label::Comp {
                comp: comp.clone(),
                tuple: tuple.clone(),
                mono: mono.pad(n_new),
            },
            Label::Summand { part, inner } => Label::Summand {
                part: *part,
                inner: Box::new(inner.pad(n_new)?),
            },
            Label::Graded { .. } | Label::Index { .. } => {
                return Err(Error::NoInclusion(format!(
                    "label {self:?} has no canonical image at a larger level"
                )))
            }
        })
    }
}

/// Type of ModuleCharacter: an `S_N` class function.
pub type ModuleCharacter = ClassFunction;

#[derive(Clone, Debug)]
pub struct EquivModule {
    cfg: RingConfig,
    name: String,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    xmul: Vec<SparseMatrix>,
    coxeter: Vec<SparseMatrix>,
    grading: Option<Vec<Monomial>>,
    // Basis images of each Coxeter generator, when it permutes the basis.
    coxeter_perm: Option<Vec<Vec<usize>>>,
}

impl PartialEq for EquivModule {
    fn eq(&self, other: &Self) -> bool {
        self.cfg == other.cfg
            && self.labels == other.labels
            && self.xmul == other.xmul
            && self.coxeter == other.coxeter
            && self.grading == other.grading
    }
}

impl EquivModule {
    /// Assemble a module from its matrices. Shapes are checked here; the
    /// module axioms are checked by [`EquivModule::check_axioms`].
    pub fn new(
        cfg: RingConfig,
        name: impl Into<String>,
        labels: Vec<Label>,
        xmul: Vec<SparseMatrix>,
        coxeter: Vec<SparseMatrix>,
        grading: Option<Vec<Monomial>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if xmul.len() != cfg.n_vars {
            return Err(Error::SizeMismatch(format!(
                "{} variable matrices for N={}",
                xmul.len(),
                cfg.n_vars
            )));
        }
        if coxeter.len() != cfg.n_vars.saturating_sub(1) {
            return Err(Error::SizeMismatch(format!(
                "{} Coxeter matrices for N={}",
                coxeter.len(),
                cfg.n_vars
            )));
        }
        if xmul
            .iter()
            .chain(&coxeter)
            .any(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::SizeMismatch(format!("action matrices must be {dim}x{dim}")));
        }
        if let Some(g) = &grading {
            if g.len() != dim || g.iter().any(|d| cfg.validate(d).is_err()) {
                return Err(Error::SizeMismatch("grading does not match basis".into()));
            }
        }
        let mut index = HashMap::with_capacity(dim);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate label {l:?}")));
            }
        }
        let coxeter_perm = coxeter
            .iter()
            .map(SparseMatrix::as_permutation)
            .collect::<Option<Vec<_>>>();
        Ok(Self {
            cfg,
            name: name.into(),
            labels,
            index,
            xmul,
            coxeter,
            grading,
            coxeter_perm,
        })
    }

    /// Module whose variables send labels to labels or zero and whose
    /// Coxeter generators permute labels.
    pub fn from_label_action(
        cfg: RingConfig,
        name: impl Into<String>,
        labels: Vec<Label>,
        x: impl Fn(&Label, usize) -> Option<Label>,
        sigma: impl Fn(&Label, usize) -> Label,
        grading: Option<Vec<Monomial>>,
    ) -> Result<Self> {
        let index: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let lookup = |l: &Label| {
            index.get(l).copied().ok_or_else(|| {
                Error::AxiomViolation(format!("action leaves the basis at {l:?}"))
            })
        };
        let dim = labels.len();
        let mut xmul = Vec::with_capacity(cfg.n_vars);
        for i in 0..cfg.n_vars {
            let image = labels
                .iter()
                .map(|l| x(l, i).map(|m| lookup(&m)).transpose())
                .collect::<Result<Vec<_>>>()?;
            xmul.push(SparseMatrix::from_index_map(dim, &image));
        }
        let mut coxeter = Vec::new();
        for j in 0..cfg.n_vars.saturating_sub(1) {
            let image = labels
                .iter()
                .map(|l| lookup(&sigma(l, j)).map(Some))
                .collect::<Result<Vec<_>>>()?;
            coxeter.push(SparseMatrix::from_index_map(dim, &image));
        }
        Self::new(cfg, name, labels, xmul, coxeter, grading)
    }

    pub fn zero(cfg: RingConfig) -> Self {
        Self::new(
            cfg,
            "0",
            Vec::new(),
            vec![SparseMatrix::zeros(0, 0); cfg.n_vars],
            vec![SparseMatrix::zeros(0, 0); cfg.n_vars.saturating_sub(1)],
            None,
        )
        .expect("empty module is well formed")
    }

    pub fn cfg(&self) -> RingConfig {
        self.cfg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_index(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn xmul(&self, i: usize) -> &SparseMatrix {
        &self.xmul[i]
    }

    pub fn xmuls(&self) -> &[SparseMatrix] {
        &self.xmul
    }

    pub fn coxeter(&self, j: usize) -> &SparseMatrix {
        &self.coxeter[j]
    }

    pub fn coxeters(&self) -> &[SparseMatrix] {
        &self.coxeter
    }

    pub fn grading(&self) -> Option<&[Monomial]> {
        self.grading.as_deref()
    }

    /// Whether every Coxeter generator permutes the basis.
    pub fn has_permutation_basis(&self) -> bool {
        self.coxeter_perm.is_some()
    }

    pub fn coxeter_images(&self, j: usize) -> Option<&[usize]> {
        self.coxeter_perm.as_ref().map(|p| p[j].as_slice())
    }

    /// Basis index images of `g`, when the action permutes the basis.
    pub fn perm_images(&self, g: &Perm) -> Option<Vec<usize>> {
        let gens = self.coxeter_perm.as_ref()?;
        let mut img: Vec<usize> = (0..self.dim()).collect();
        for &j in g.reduced_word().iter().rev() {
            for v in img.iter_mut() {
                *v = gens[j][*v];
            }
        }
        Some(img)
    }

    /// Matrix of an arbitrary permutation of `[N]`.
    pub fn act(&self, g: &Perm) -> SparseMatrix {
        if let Some(img) = self.perm_images(g) {
            let img: Vec<Option<usize>> = img.into_iter().map(Some).collect();
            return SparseMatrix::from_index_map(self.dim(), &img);
        }
        let mut m = SparseMatrix::identity(self.dim());
        for &j in g.reduced_word().iter().rev() {
            m = self.coxeter[j].mul(&m).expect("square");
        }
        m
    }

    pub fn act_vec(&self, g: &Perm, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for &j in g.reduced_word().iter().rev() {
            out = self.coxeter[j].apply(&out);
        }
        out
    }

    /// Multiplication by a monomial.
    pub fn mono_action(&self, m: &Monomial) -> SparseMatrix {
        let mut out = SparseMatrix::identity(self.dim());
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                out = self.xmul[i].mul(&out).expect("square");
            }
        }
        out
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.cfg.n_vars;
        for i in 0..n {
            for k in i + 1..n {
                if self.xmul[i].mul(&self.xmul[k])? != self.xmul[k].mul(&self.xmul[i])? {
                    return Err(Error::AxiomViolation(format!(
                        "x_{} and x_{} do not commute in {}",
                        i + 1,
                        k + 1,
                        self.name
                    )));
                }
            }
            if !self.xmul[i].pow(self.cfg.s + 1)?.is_zero() {
                return Err(Error::AxiomViolation(format!(
                    "x_{}^(s+1) != 0 in {}",
                    i + 1,
                    self.name
                )));
            }
        }
        let probe = crate::rep::Rep::new(n, self.dim(), self.coxeter.clone());
        if let Err(e) = probe {
            return Err(Error::AxiomViolation(format!("{} in {}", e, self.name)));
        }
        for j in 0..n.saturating_sub(1) {
            let s = &self.coxeter[j];
            for i in 0..n {
                let si = if i == j {
                    j + 1
                } else if i == j + 1 {
                    j
                } else {
                    i
                };
                if s.mul(&self.xmul[i])? != self.xmul[si].mul(s)? {
                    return Err(Error::AxiomViolation(format!(
                        "σ_{} x_{} != x_{} σ_{} in {}",
                        j + 1,
                        i + 1,
                        si + 1,
                        j + 1,
                        self.name
                    )));
                }
            }
        }
        if let Some(deg) = &self.grading {
            for i in 0..n {
                for (c, col) in self.xmul[i].columns().iter().enumerate() {
                    for (r, _) in col {
                        let want = deg[c].exponents()[i] + 1;
                        if deg[*r] != deg[c].with(i, want) {
                            return Err(Error::AxiomViolation(format!(
                                "x_{} does not raise degree by e_{} in {}",
                                i + 1,
                                i + 1,
                                self.name
                            )));
                        }
                    }
                }
            }
            for j in 0..n.saturating_sub(1) {
                let sj = Perm::coxeter(n, j);
                for (c, col) in self.coxeter[j].columns().iter().enumerate() {
                    for (r, _) in col {
                        if deg[*r] != permute(&sj, &deg[c])? {
                            return Err(Error::AxiomViolation(format!(
                                "σ_{} does not permute degrees in {}",
                                j + 1,
                                self.name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Trace of each conjugacy class representative.
    pub fn character(&self) -> ModuleCharacter {
        let n = self.cfg.n_vars;
        ClassFunction::from_fn(n, |mu| {
            let g = Perm::from_cycle_type(mu);
            match self.perm_images(&g) {
                Some(img) => {
                    let fixed = img.iter().enumerate().filter(|(i, j)| i == *j).count();
                    Rational::from_integer((fixed as i64).into())
                }
                None => trace(&self.act(&g)),
            }
        })
    }

    pub fn direct_sum(parts: &[&EquivModule]) -> Result<EquivModule> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidParameter("empty direct sum".into()));
        };
        let cfg = first.cfg;
        for p in parts {
            cfg.check_same(&p.cfg)?;
        }
        let labels = parts
            .iter()
            .enumerate()
            .flat_map(|(k, p)| {
                p.labels.iter().map(move |l| Label::Summand {
                    part: k,
                    inner: Box::new(l.clone()),
                })
            })
            .collect();
        let xmul = (0..cfg.n_vars)
            .map(|i| SparseMatrix::block_diag(&parts.iter().map(|p| &p.xmul[i]).collect::<Vec<_>>()))
            .collect();
        let coxeter = (0..cfg.n_vars.saturating_sub(1))
            .map(|j| {
                SparseMatrix::block_diag(&parts.iter().map(|p| &p.coxeter[j]).collect::<Vec<_>>())
            })
            .collect();
        let grading = if parts.iter().all(|p| p.grading.is_some()) {
            Some(
                parts
                    .iter()
                    .flat_map(|p| p.grading.clone().unwrap_or_default())
                    .collect(),
            )
        } else {
            None
        };
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(" + ");
        EquivModule::new(cfg, name, labels, xmul, coxeter, grading)
    }

    /// Submodule spanned by an invariant subspace, with its inclusion.
    pub fn submodule(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<EquivModule>, EquivMap)> {
        let xmul = self.xmul.iter().map(|m| sub.restrict(m)).collect::<Result<Vec<_>>>()?;
        let coxeter = self
            .coxeter
            .iter()
            .map(|m| sub.restrict(m))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..sub.dim()).map(|index| Label::Index { index }).collect();
        let m = Arc::new(EquivModule::new(
            self.cfg,
            format!("sub({})", self.name),
            labels,
            xmul,
            coxeter,
            None,
        )?);
        let incl = EquivMap::new_unchecked(m.clone(), self.clone(), sub.basis_matrix());
        Ok((m, incl))
    }

    /// Quotient by an invariant subspace, with its projection.
    pub fn quotient(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<EquivModule>, EquivMap)> {
        let q = SubQuotient::new(Subspace::full(self.dim()), sub)?;
        let xmul = self.xmul.iter().map(|m| q.induced(m)).collect::<Result<Vec<_>>>()?;
        let coxeter = self
            .coxeter
            .iter()
            .map(|m| q.induced(m))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..q.dim()).map(|index| Label::Index { index }).collect();
        let m = Arc::new(EquivModule::new(
            self.cfg,
            format!("{}/sub", self.name),
            labels,
            xmul,
            coxeter,
            None,
        )?);
        let cols = (0..self.dim())
            .map(|i| q.class_of(&crate::linalg::unit_vec(i)))
            .collect::<Result<Vec<_>>>()?;
        let proj = EquivMap::new_unchecked(self.clone(), m.clone(), SparseMatrix::from_columns(q.dim(), cols));
        Ok((m, proj))
    }

    /// Same module viewed over `S_{N,s_new}` for `s_new ≥ s`.
    pub fn inflate(&self, s_new: usize) -> Result<EquivModule> {
        if s_new < self.cfg.s {
            return Err(Error::InvalidParameter(format!(
                "cannot view a module over s={} as one over s={s_new}",
                self.cfg.s
            )));
        }
        let mut m = self.clone();
        m.cfg = RingConfig::new(self.cfg.n_vars, s_new);
        Ok(m)
    }

    /// Indices of basis vectors on which `x_i` acts by zero for every `i`.
    pub fn socle_labels(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&c| self.xmul.iter().all(|m| m.column(c).is_empty()))
            .collect()
    }
}

/// `true` iff the two modules have equal `S_N`-characters.
pub fn iso_by_character(a: &EquivModule, b: &EquivModule) -> Result<bool> {
    a.cfg.check_same(&b.cfg)?;
    Ok(a.dim() == b.dim() && a.character() == b.character())
}

pub fn character_of(m: &EquivModule) -> ModuleCharacter {
    m.character()
}

/// Module map, stored as a `dim target × dim source` matrix.
#[derive(Clone, Debug)]
pub struct EquivMap {
    pub source: Arc<EquivModule>,
    pub target: Arc<EquivModule>,
    pub matrix: SparseMatrix,
}

impl EquivMap {
    pub fn new(
        source: Arc<EquivModule>,
        target: Arc<EquivModule>,
        matrix: SparseMatrix,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix);
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(
        source: Arc<EquivModule>,
        target: Arc<EquivModule>,
        matrix: SparseMatrix,
    ) -> Self {
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn check(&self) -> Result<()> {
        self.source.cfg.check_same(&self.target.cfg)?;
        if self.matrix.nrows() != self.target.dim() || self.matrix.ncols() != self.source.dim() {
            return Err(Error::SizeMismatch(format!(
                "map matrix {}x{} between modules of dims {} and {}",
                self.matrix.nrows(),
                self.matrix.ncols(),
                self.source.dim(),
                self.target.dim()
            )));
        }
        is_module_map(&self.source, &self.target, &self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn compose(&self, first: &EquivMap) -> Result<EquivMap> {
        if !Arc::ptr_eq(&first.target, &self.source) && *first.target != *self.source {
            return Err(Error::SizeMismatch("maps are not composable".into()));
        }
        Ok(EquivMap::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix)?,
        ))
    }
}

/// Checks that `f` commutes with every variable and Coxeter generator.
pub fn is_module_map(source: &EquivModule, target: &EquivModule, f: &SparseMatrix) -> Result<()> {
    for i in 0..source.cfg.n_vars {
        if f.mul(source.xmul(i))? != target.xmul(i).mul(f)? {
            return Err(Error::NotEquivariant(format!(
                "map does not commute with x_{}",
                i + 1
            )));
        }
    }
    for j in 0..source.cfg.n_vars.saturating_sub(1) {
        if f.mul(source.coxeter(j))? != target.coxeter(j).mul(f)? {
            return Err(Error::NotEquivariant(format!(
                "map does not commute with σ_{}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Orbit id of each basis vector under the subgroup generated by the given
/// Coxeter generators, when they permute the basis. Ids are numbered in
/// order of first appearance.
pub fn basis_orbits(m: &EquivModule, gens: &[usize]) -> Option<Vec<usize>> {
    let perms = m.coxeter_perm.as_ref()?;
    let mut parent: Vec<usize> = (0..m.dim()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &j in gens {
        for (a, &b) in perms[j].iter().enumerate() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut id = vec![usize::MAX; m.dim()];
    let mut next = 0;
    let mut out = Vec::with_capacity(m.dim());
    for a in 0..m.dim() {
        let r = find(&mut parent, a);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out.push(id[r]);
    }
    Some(out)
}

/// Subspace fixed by the subgroup generated by the given Coxeter generators.
pub fn fixed_subspace(m: &EquivModule, gens: &[usize]) -> Result<Subspace> {
    if let Some(orb) = basis_orbits(m, gens) {
        let count = orb.iter().copied().max().map_or(0, |x| x + 1);
        let mut sums: Vec<SparseVec> = vec![Vec::new(); count];
        for (a, &o) in orb.iter().enumerate() {
            sums[o].push((a, Rational::from_integer(1.into())));
        }
        return Ok(Subspace::from_spanning(m.dim(), sums));
    }
    let ops: Vec<SparseMatrix> = gens.iter().map(|&j| m.coxeter(j).clone()).collect();
    crate::linalg::fixed_space(m.dim(), &ops)
}

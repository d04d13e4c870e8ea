use serde::{Deserialize, Serialize};

use super::{EquivModule, Label};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::truncated_ring::{Monomial, RingConfig};

/// Largest module accepted by [`module_from_json`].
pub const MAX_DECODED_DIM: usize = 4096;
const MAX_DECODED_VARS: usize = 12;

type Coords = Vec<(usize, usize, i64, i64)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDump {
    pub cfg: RingConfig,
    pub name: String,
    pub dim: usize,
    pub labels: Vec<Label>,
    /// Entries `(row, col, num, den)` of each `x_i`.
    pub xmul: Vec<Coords>,
    /// Entries of each `σ_j = (j, j+1)`.
    pub coxeter: Vec<Coords>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Monomial>>,
}

pub fn module_to_json(m: &EquivModule) -> Result<String> {
    let dump = ModuleDump {
        cfg: m.cfg(),
        name: m.name().to_string(),
        dim: m.dim(),
        labels: m.labels().to_vec(),
        xmul: m
            .xmuls()
            .iter()
            .map(SparseMatrix::to_coordinates)
            .collect::<Result<_>>()?,
        coxeter: m
            .coxeters()
            .iter()
            .map(SparseMatrix::to_coordinates)
            .collect::<Result<_>>()?,
        grading: m.grading().map(|g| g.to_vec()),
    };
    Ok(serde_json::to_string(&dump)?)
}

/// Decode and fully validate a module dump, module axioms included.
pub fn module_from_json(s: &str) -> Result<EquivModule> {
    let d: ModuleDump = serde_json::from_str(s)?;
    if d.dim > MAX_DECODED_DIM || d.cfg.n_vars > MAX_DECODED_VARS {
        return Err(Error::Decode(format!(
            "module too large to decode: dim {} with N={}",
            d.dim, d.cfg.n_vars
        )));
    }
    if d.labels.len() != d.dim {
        return Err(Error::Decode(format!(
            "{} labels for dim {}",
            d.labels.len(),
            d.dim
        )));
    }
    let decode = |list: &[Coords]| -> Result<Vec<SparseMatrix>> {
        list.iter()
            .map(|c| SparseMatrix::from_coordinates(d.dim, d.dim, c))
            .collect()
    };
    let m = EquivModule::new(
        d.cfg,
        d.name.clone(),
        d.labels.clone(),
        decode(&d.xmul)?,
        decode(&d.coxeter)?,
        d.grading.clone(),
    )?;
    m.check_axioms()?;
    Ok(m)
}

//! Ribbon Hopf algebras given by structure constants and their
//! finite-dimensional modules.
//!
//! Basis elements are `e_0..e_{d-1}`. Elements of `H` are sparse vectors of
//! length `d`; elements of `H⊗H` are sparse vectors indexed by `i*d + j`.

mod algebra;
pub mod bundles;
mod io;
mod rep;
mod validate;

use std::sync::OnceLock;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::cyclo::{CycError, CycNum, Field, SparseVec};

pub use io::{bundle_from_json, bundle_to_json, load_bundle, rep_from_json, rep_to_json};
pub use rep::{
    average, braiding, braiding_inv, direct_sum, dual_rep, higman_witness, hom_space, is_projective,
    is_projective_split, regular_rep, tensor_rep, trivial_rep, twist, twist_inv, Rep,
};
pub use validate::{validate_bundle, Failure, ValidationReport};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("malformed bundle: {0}")]
    Structure(String),
    #[error("bundle has no {0}; braided operations are unavailable")]
    Capability(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// Raw structure constants, as read from a bundle file or produced by a
/// builder. Duplicate entries are summed.
#[derive(Clone, Debug)]
pub struct BundleData {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub basis_labels: Option<Vec<String>>,
    pub unit: SparseVec,
    /// `(i, j, k, c)`: `e_i e_j` has coefficient `c` on `e_k`.
    pub mult: Vec<(usize, usize, usize, CycNum)>,
    /// `(i, j, k, c)`: `Δ(e_i)` has coefficient `c` on `e_j ⊗ e_k`.
    pub comult: Vec<(usize, usize, usize, CycNum)>,
    pub counit: SparseVec,
    /// `(i, j, c)`: `S(e_i)` has coefficient `c` on `e_j`.
    pub antipode: Vec<(usize, usize, CycNum)>,
    pub r: Option<Vec<(usize, usize, CycNum)>>,
    pub r_inv: Option<Vec<(usize, usize, CycNum)>>,
    pub ribbon: Option<SparseVec>,
    pub pivotal: SparseVec,
    pub modules: Vec<Rep>,
    pub simples: Vec<String>,
    pub metadata: Map<String, Value>,
}

/// A validated-shape bundle. Axioms are checked separately by
/// [`validate_bundle`].
pub struct HopfBundle {
    name: String,
    field: Field,
    dim: usize,
    labels: Vec<String>,
    unit: SparseVec,
    mult: Vec<SparseVec>,
    comult: Vec<SparseVec>,
    counit: Vec<CycNum>,
    antipode: Vec<SparseVec>,
    r: Option<SparseVec>,
    r_inv: Option<SparseVec>,
    ribbon: Option<SparseVec>,
    pivotal: SparseVec,
    modules: Vec<Rep>,
    simples: Vec<String>,
    metadata: Map<String, Value>,
    cache: Cache,
}

#[derive(Default)]
struct Cache {
    generators: OnceLock<Vec<usize>>,
    integral: OnceLock<SparseVec>,
    pivotal_inv: OnceLock<Option<SparseVec>>,
    ribbon_inv: OnceLock<Option<SparseVec>>,
}

impl HopfBundle {
    pub fn new(data: BundleData) -> Result<Self, HopfError> {
        let d = data.dim;
        let bad = |m: String| Err(HopfError::Structure(m));
        if d == 0 {
            return bad("dimension must be positive".into());
        }
        let f = &data.field;
        let check_elem = |what: &str, v: &SparseVec| -> Result<(), HopfError> {
            for (i, c) in v {
                if *i >= d {
                    return Err(HopfError::Structure(format!("{what}: index {i} out of range (dim {d})")));
                }
                if c.field() != f {
                    return Err(HopfError::Structure(format!("{what}: coefficient in the wrong field")));
                }
            }
            Ok(())
        };
        let unit = collect_vec(f, d, data.unit.iter().map(|(i, c)| (*i, c.clone())), "unit")?;
        check_elem("unit", &unit)?;
        let counit_sparse = collect_vec(f, d, data.counit.iter().map(|(i, c)| (*i, c.clone())), "counit")?;
        let pivotal = collect_vec(f, d, data.pivotal.iter().map(|(i, c)| (*i, c.clone())), "pivotal")?;
        let ribbon = data
            .ribbon
            .as_ref()
            .map(|v| collect_vec(f, d, v.iter().map(|(i, c)| (*i, c.clone())), "ribbon"))
            .transpose()?;

        let mut mult: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); d * d];
        for (i, j, k, c) in &data.mult {
            if *i >= d || *j >= d || *k >= d {
                return bad(format!("mult: entry ({i},{j},{k}) out of range (dim {d})"));
            }
            mult[i * d + j].push((*k, c.clone()));
        }
        let mult = mult
            .into_iter()
            .map(|v| collect_vec(f, d, v.into_iter(), "mult"))
            .collect::<Result<Vec<_>, _>>()?;

        let mut comult: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); d];
        for (i, j, k, c) in &data.comult {
            if *i >= d || *j >= d || *k >= d {
                return bad(format!("comult: entry ({i},{j},{k}) out of range (dim {d})"));
            }
            comult[*i].push((j * d + k, c.clone()));
        }
        let comult = comult
            .into_iter()
            .map(|v| collect_vec(f, d * d, v.into_iter(), "comult"))
            .collect::<Result<Vec<_>, _>>()?;

        let mut antipode: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); d];
        for (i, j, c) in &data.antipode {
            if *i >= d || *j >= d {
                return bad(format!("antipode: entry ({i},{j}) out of range (dim {d})"));
            }
            antipode[*i].push((*j, c.clone()));
        }
        let antipode = antipode
            .into_iter()
            .map(|v| collect_vec(f, d, v.into_iter(), "antipode"))
            .collect::<Result<Vec<_>, _>>()?;

        let pair = |what: &str, t: &Option<Vec<(usize, usize, CycNum)>>| -> Result<Option<SparseVec>, HopfError> {
            match t {
                None => Ok(None),
                Some(entries) => {
                    for (i, j, _) in entries {
                        if *i >= d || *j >= d {
                            return Err(HopfError::Structure(format!("{what}: entry ({i},{j}) out of range (dim {d})")));
                        }
                    }
                    collect_vec(f, d * d, entries.iter().map(|(i, j, c)| (i * d + j, c.clone())), what).map(Some)
                }
            }
        };
        let r = pair("R", &data.r)?;
        let r_inv = pair("R_inv", &data.r_inv)?;
        if r.is_some() != r_inv.is_some() {
            return bad("R and R_inv must be given together".into());
        }
        if ribbon.is_some() && r.is_none() {
            return bad("ribbon element given without R".into());
        }

        let mut names = std::collections::HashSet::new();
        for m in &data.modules {
            if !names.insert(m.name().to_string()) {
                return bad(format!("duplicate module name {:?}", m.name()));
            }
            if m.action_len() != d {
                return bad(format!(
                    "module {:?}: {} action matrices for a {d}-dimensional algebra",
                    m.name(),
                    m.action_len()
                ));
            }
            if m.field() != f {
                return bad(format!("module {:?}: matrices in the wrong field", m.name()));
            }
        }
        for s in &data.simples {
            if !names.contains(s) {
                return bad(format!("simple {s:?} is not a listed module"));
            }
        }
        let labels = match data.basis_labels {
            Some(l) if l.len() == d => l,
            Some(l) => return bad(format!("{} basis labels for dimension {d}", l.len())),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };

        let mut counit = vec![CycNum::zero(f); d];
        for (i, c) in counit_sparse {
            counit[i] = c;
        }
        Ok(HopfBundle {
            name: data.name,
            field: data.field,
            dim: d,
            labels,
            unit,
            mult,
            comult,
            counit,
            antipode,
            r,
            r_inv,
            ribbon,
            pivotal,
            modules: data.modules,
            simples: data.simples,
            metadata: data.metadata,
            cache: Cache::default(),
        })
    }

    /// Inverse of [`HopfBundle::new`], up to summing duplicate entries.
    pub fn to_data(&self) -> BundleData {
        let d = self.dim;
        let triples = |t: &SparseVec| t.iter().map(|(ij, c)| (ij / d, ij % d, c.clone())).collect::<Vec<_>>();
        BundleData {
            name: self.name.clone(),
            field: self.field.clone(),
            dim: d,
            basis_labels: Some(self.labels.clone()),
            unit: self.unit.clone(),
            mult: (0..d * d)
                .flat_map(|ij| self.mult[ij].iter().map(move |(k, c)| (ij / d, ij % d, *k, c.clone())))
                .collect(),
            comult: (0..d)
                .flat_map(|i| self.comult[i].iter().map(move |(jk, c)| (i, jk / d, jk % d, c.clone())))
                .collect(),
            counit: crate::cyclo::sparse_from_dense(&self.counit),
            antipode: (0..d)
                .flat_map(|i| self.antipode[i].iter().map(move |(j, c)| (i, *j, c.clone())))
                .collect(),
            r: self.r.as_ref().map(triples),
            r_inv: self.r_inv.as_ref().map(triples),
            ribbon: self.ribbon.clone(),
            pivotal: self.pivotal.clone(),
            modules: self.modules.clone(),
            simples: self.simples.clone(),
            metadata: self.metadata.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn modules(&self) -> &[Rep] {
        &self.modules
    }

    pub fn module(&self, name: &str) -> Option<&Rep> {
        self.modules.iter().find(|m| m.name() == name)
    }

    pub fn simples(&self) -> Vec<&Rep> {
        self.simples.iter().filter_map(|s| self.module(s)).collect()
    }

    pub fn simple_names(&self) -> &[String] {
        &self.simples
    }

    pub fn metadata(&self) -> &Map<String, Value> {
        &self.metadata
    }

    pub fn has_braiding(&self) -> bool {
        self.r.is_some()
    }

    pub fn has_ribbon(&self) -> bool {
        self.ribbon.is_some()
    }
}

fn collect_vec(
    field: &Field,
    len: usize,
    entries: impl Iterator<Item = (usize, CycNum)>,
    what: &str,
) -> Result<SparseVec, HopfError> {
    let mut dense: Vec<Option<CycNum>> = vec![None; len];
    for (i, c) in entries {
        if i >= len {
            return Err(HopfError::Structure(format!("{what}: index {i} out of range")));
        }
        if c.field() != field {
            return Err(HopfError::Structure(format!("{what}: coefficient in the wrong field")));
        }
        dense[i] = Some(match dense[i].take() {
            Some(x) => x + c,
            None => c,
        });
    }
    Ok(dense
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i, c)))
        .collect())
}

//! JSON documents for the `construct` inputs and for exporting structures.
//!
//! A group or semilattice is given either by name (`"Z2"`, `"V4"`, `"S3"`,
//! `"CH3"`, `"D4"`, ...) or inline as a table document:
//!
//! ```json
//! {"schema": 1, "id": 0, "labels": ["1", "g"], "table": [[0, 1], [1, 0]]}
//! ```
//!
//! An almost action adds `"dot"` (`dot[g][y] = g·y`), a gluing map adds
//! `"f"`, and a factor system uses `"h"`, `"n"`, `"sim"`, `"act"`, `"chi"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{AlmostAction, FactorSystem, GluingMap};
use crate::corpus::{chain, diamond, group_by_name};
use crate::error::Error;
use crate::inverse::SemilatticeMonoid;
use crate::monoid::FiniteMonoid;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("unknown structure name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Validation(#[from] Error),
}

fn default_schema() -> u32 {
    SCHEMA
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default)]
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl TableDoc {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        TableDoc {
            schema: SCHEMA,
            id: m.identity(),
            labels: m.labels().map(<[String]>::to_vec),
            table: m.rows(),
        }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid, DocError> {
        check_schema(self.schema)?;
        let m = FiniteMonoid::new(self.table.clone(), self.id)?;
        Ok(match &self.labels {
            Some(l) => m.with_labels(l.clone())?,
            None => m,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureRef {
    Named(String),
    Table(TableDoc),
}

impl StructureRef {
    fn group(&self) -> Result<FiniteMonoid, DocError> {
        match self {
            StructureRef::Named(name) => group_by_name(name).ok_or_else(|| DocError::UnknownName(name.clone())),
            StructureRef::Table(t) => {
                let g = t.to_monoid()?;
                g.require_group()?;
                Ok(g)
            }
        }
    }

    fn semilattice(&self) -> Result<SemilatticeMonoid, DocError> {
        match self {
            StructureRef::Named(name) => named_semilattice(name).ok_or_else(|| DocError::UnknownName(name.clone())),
            StructureRef::Table(t) => Ok(SemilatticeMonoid::new(t.to_monoid()?)?),
        }
    }

    fn monoid(&self) -> Result<FiniteMonoid, DocError> {
        match self {
            StructureRef::Named(name) => group_by_name(name)
                .or_else(|| named_semilattice(name).map(|y| y.monoid().clone()))
                .ok_or_else(|| DocError::UnknownName(name.clone())),
            StructureRef::Table(t) => t.to_monoid(),
        }
    }
}

/// `CH1` to `CH6` and `D4`.
fn named_semilattice(name: &str) -> Option<SemilatticeMonoid> {
    if name == "D4" {
        return Some(diamond());
    }
    let n: usize = name.strip_prefix("CH")?.parse().ok()?;
    (1..=6).contains(&n).then(|| chain(n))
}

fn check_schema(schema: u32) -> Result<(), DocError> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(DocError::Schema(schema))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlmostActionDoc {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub group: StructureRef,
    pub semilattice: StructureRef,
    pub dot: Vec<Vec<usize>>,
}

impl AlmostActionDoc {
    pub fn from_action(aa: &AlmostAction) -> Self {
        AlmostActionDoc {
            schema: SCHEMA,
            group: StructureRef::Table(TableDoc::from_monoid(aa.group())),
            semilattice: StructureRef::Table(TableDoc::from_monoid(aa.semilattice().monoid())),
            dot: aa.dot_rows(),
        }
    }

    pub fn build(&self) -> Result<AlmostAction, DocError> {
        check_schema(self.schema)?;
        Ok(AlmostAction::new(self.group.group()?, self.semilattice.semilattice()?, self.dot.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingDoc {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub group: StructureRef,
    pub semilattice: StructureRef,
    pub f: Vec<usize>,
}

impl GluingDoc {
    pub fn from_map(gm: &GluingMap) -> Self {
        GluingDoc {
            schema: SCHEMA,
            group: StructureRef::Table(TableDoc::from_monoid(gm.group())),
            semilattice: StructureRef::Table(TableDoc::from_monoid(gm.semilattice().monoid())),
            f: gm.values().to_vec(),
        }
    }

    pub fn build(&self) -> Result<GluingMap, DocError> {
        check_schema(self.schema)?;
        Ok(GluingMap::new(self.group.group()?, self.semilattice.semilattice()?, self.f.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSystemDoc {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub h: StructureRef,
    pub n: StructureRef,
    pub sim: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub chi: Vec<Vec<usize>>,
}

impl FactorSystemDoc {
    pub fn from_system(fs: &FactorSystem) -> Self {
        FactorSystemDoc {
            schema: SCHEMA,
            h: StructureRef::Table(TableDoc::from_monoid(fs.acting())),
            n: StructureRef::Table(TableDoc::from_monoid(fs.kernel())),
            sim: fs.sim_classes().to_vec(),
            act: fs.act_rows(),
            chi: fs.chi_rows(),
        }
    }

    pub fn build(&self) -> Result<FactorSystem, DocError> {
        check_schema(self.schema)?;
        Ok(FactorSystem::new(
            self.h.monoid()?,
            self.n.monoid()?,
            self.sim.clone(),
            self.act.clone(),
            self.chi.clone(),
        )?)
    }
}

pub fn parse_almost_action(text: &str) -> Result<AlmostAction, DocError> {
    serde_json::from_str::<AlmostActionDoc>(text)?.build()
}

pub fn parse_gluing_map(text: &str) -> Result<GluingMap, DocError> {
    serde_json::from_str::<GluingDoc>(text)?.build()
}

pub fn parse_factor_system(text: &str) -> Result<FactorSystem, DocError> {
    serde_json::from_str::<FactorSystemDoc>(text)?.build()
}

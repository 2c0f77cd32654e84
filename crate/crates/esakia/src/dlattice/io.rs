use super::{FinDLat, LatticeHom};
use crate::error::Result;
use crate::poset::PosetFile;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Lattice file format: explicit tables or the downset lattice of a poset.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeFile {
    Tables { n: usize, meet: Vec<Vec<usize>>, join: Vec<Vec<usize>>, bot: usize, top: usize },
    Birkhoff { poset: PosetFile },
}

impl LatticeFile {
    pub fn build(&self) -> Result<FinDLat> {
        match self {
            LatticeFile::Tables { n, meet, join, bot, top } => {
                FinDLat::from_tables(*n, meet.clone(), join.clone(), *bot, *top)
            }
            LatticeFile::Birkhoff { poset } => FinDLat::birkhoff(&poset.build()?),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomFile {
    pub dom: LatticeFile,
    pub cod: LatticeFile,
    pub map: Vec<usize>,
}

impl HomFile {
    pub fn build(&self) -> Result<LatticeHom> {
        LatticeHom::new(Arc::new(self.dom.build()?), Arc::new(self.cod.build()?), self.map.clone())
    }
}

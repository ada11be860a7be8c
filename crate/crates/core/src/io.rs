//! JSON formats for lattices, posets, patterns and congruence summaries.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::congruence::{con_lattice, jir_con_poset};
use crate::diagram::{recognize_oriented, recognize_rectangular, RectDiagram};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;
use crate::properties::PatternPoset;

/// `{"elements":[...],"covers":[[lo,hi],...],"coords":{elem:[x,y],...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<String, (i64, i64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub max_tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConJson {
    pub con_size: usize,
    pub jir_poset: PosetJson,
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            elements: p.names().to_vec(),
            covers: p.cover_names(),
        }
    }
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::new(&self.elements, &self.covers)
    }
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let p = PosetJson::from(l.poset());
        LatticeJson {
            elements: p.elements,
            covers: p.covers,
            coords: None,
        }
    }

    pub fn from_diagram(d: &RectDiagram) -> Self {
        let mut json = Self::from_lattice(d.lattice());
        json.coords = Some(
            (0..d.len())
                .map(|x| (d.name(x).to_string(), d.pos(x)))
                .collect(),
        );
        json
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::new(&self.elements, &self.covers)
    }

    /// Uses `coords` when present (the corner further left is the left
    /// corner); otherwise computes the layout.
    pub fn to_diagram(&self) -> Result<RectDiagram> {
        let l = self.to_lattice()?;
        let Some(coords) = &self.coords else {
            return RectDiagram::from_lattice(l);
        };
        let mut pos = Vec::with_capacity(l.len());
        for x in 0..l.len() {
            let p = coords
                .get(l.name(x))
                .ok_or_else(|| Error::Invalid(format!("no coordinates for `{}`", l.name(x))))?;
            pos.push(*p);
        }
        if let Some(extra) = coords.keys().find(|k| l.index_of(k).is_err()) {
            return Err(Error::UnknownElement(extra.clone()));
        }
        let c = recognize_rectangular(&l)?;
        let left = if pos[c.right].0 < pos[c.left].0 {
            c.right
        } else {
            c.left
        };
        let corners = recognize_oriented(&l, Some(left))?;
        RectDiagram::with_positions(l, corners, pos)
    }
}

pub fn con_json(l: &FiniteLattice) -> ConJson {
    ConJson {
        con_size: con_lattice(l).len(),
        jir_poset: PosetJson::from(&jir_con_poset(l)),
    }
}

pub fn parse_lattice_json(text: &str) -> Result<LatticeJson> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_lattice_json(path: &Path) -> Result<LatticeJson> {
    parse_lattice_json(&std::fs::read_to_string(path)?)
}

pub fn parse_pattern(name: &str, text: &str) -> Result<PatternPoset> {
    let json: PatternJson = serde_json::from_str(text)?;
    let poset = FinitePoset::new(&json.elements, &json.covers)?;
    PatternPoset::new(name, poset, &json.max_tags)
}

pub fn read_pattern(path: &Path) -> Result<PatternPoset> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_pattern(&name, &std::fs::read_to_string(path)?)
}

pub fn pattern_json(p: &PatternPoset) -> PatternJson {
    PatternJson {
        elements: p.poset.names().to_vec(),
        covers: p.poset.cover_names(),
        max_tags: p.tagged().map(|i| p.poset.name(i).to_string()).collect(),
    }
}

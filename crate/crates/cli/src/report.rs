//! Serializable report types and the text/CSV renderings.

use beauville_core::render::element_words;
use beauville_core::{DimensionResult, GroupTable, StructureFamily};
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Longest generator word used to name an element; raw indices beyond that.
pub const MAX_WORD_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub order: usize,
    pub classes: usize,
    pub sigma_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessPair {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    /// A non-identity element of the union of the witness carriers.
    pub element: String,
    /// Index of a witness carrier that excludes it.
    pub carrier: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionInfo {
    pub d: usize,
    pub witness: Option<Vec<WitnessPair>>,
    pub certificate: Vec<CertificateEntry>,
    pub blocking_element: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub spec: String,
    pub group: GroupInfo,
    pub dimension: DimensionInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn witness_pairs(names: &[String], fam: &StructureFamily) -> Vec<WitnessPair> {
    fam.pairs
        .iter()
        .map(|p| WitnessPair {
            x: names[p.x as usize].clone(),
            y: names[p.y as usize].clone(),
            z: names[p.z as usize].clone(),
        })
        .collect()
}

pub fn make_report(
    spec: String,
    g: &GroupTable,
    classes: usize,
    sigma_count: usize,
    dim: &DimensionResult,
    timing_ms: Option<u128>,
) -> Report {
    let names = element_words(g, MAX_WORD_LEN);
    Report {
        version: VERSION,
        spec,
        group: GroupInfo {
            order: g.order(),
            classes,
            sigma_count,
        },
        dimension: DimensionInfo {
            d: dim.d,
            witness: dim.witness.as_ref().map(|w| witness_pairs(&names, w)),
            certificate: dim
                .certificate
                .iter()
                .map(|&(e, i)| CertificateEntry {
                    element: names[e as usize].clone(),
                    carrier: i,
                })
                .collect(),
            blocking_element: dim.blocking_element.map(|e| names[e as usize].clone()),
        },
        timing_ms,
    }
}

/// Quote a CSV field, doubling embedded quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("spec: {}\n", self.spec));
        out.push_str(&format!(
            "order: {}  classes: {}  distinct carriers: {}\n",
            self.group.order, self.group.classes, self.group.sigma_count
        ));
        out.push_str(&format!("d = {}\n", self.dimension.d));
        if let Some(w) = &self.dimension.witness {
            out.push_str("witness pairs:\n");
            for p in w {
                out.push_str(&format!("  x = {}, y = {}, xy = {}\n", p.x, p.y, p.z));
            }
        }
        if let Some(b) = &self.dimension.blocking_element {
            out.push_str(&format!(
                "blocking element: {b} (lies in every carrier)\n"
            ));
        }
        if !self.dimension.certificate.is_empty() {
            out.push_str(&format!(
                "certificate: {} element/carrier exclusions\n",
                self.dimension.certificate.len()
            ));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing: {ms} ms\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("spec,order,classes,sigma_count,d,blocking_element\n");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&self.spec),
            self.group.order,
            self.group.classes,
            self.group.sigma_count,
            self.dimension.d,
            csv_field(self.dimension.blocking_element.as_deref().unwrap_or("")),
        ));
        out
    }
}

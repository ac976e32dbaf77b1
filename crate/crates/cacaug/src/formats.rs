//! Instance and solution files.
//!
//! One instance per file, as JSON. A cactus instance lists its cycles; a
//! tree instance (`"kind": "tap"`) lists tree edges instead and is doubled
//! into a cactus on load. The full grammar is documented in the repository
//! README. Parsing validates everything down to the cactus invariants, so a
//! loaded [`Instance`] is always structurally sound.

use serde::{Deserialize, Serialize};

use cacaug_core::cactus::{CactusError, Instance};
use cacaug_core::transforms::{tap_to_cacap, TapInstance, TransformError};
use cacaug_core::Cactus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    /// Malformed JSON; carries serde's line/column diagnostics.
    Parse(String),
    /// Structurally well-formed but semantically invalid.
    Validation(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Parse(msg) => write!(f, "parse error: {msg}"),
            FormatError::Validation(msg) => write!(f, "invalid instance: {msg}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<CactusError> for FormatError {
    fn from(e: CactusError) -> Self {
        FormatError::Validation(e.to_string())
    }
}

impl From<TransformError> for FormatError {
    fn from(e: TransformError) -> Self {
        FormatError::Validation(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    #[default]
    Cacap,
    Tap,
}

/// The on-disk instance representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "is_default_kind")]
    pub kind: InstanceKind,
    pub n: usize,
    /// Cactus cycles; required for `kind = cacap`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<Vec<usize>>,
    /// Spanning-tree edges; required for `kind = tap`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    /// Defaults to vertex 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    pub links: Vec<[usize; 2]>,
}

fn is_default_kind(k: &InstanceKind) -> bool {
    *k == InstanceKind::Cacap
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    /// Validates into an [`Instance`] (after edge doubling for tree files).
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let root = self.root.unwrap_or(0);
        let links: Vec<(usize, usize)> = self.links.iter().map(|&[u, v]| (u, v)).collect();
        match self.kind {
            InstanceKind::Cacap => {
                if !self.edges.is_empty() {
                    return Err(FormatError::Validation(
                        "cacap instances take cycles, not edges".into(),
                    ));
                }
                let cactus = Cactus::new(self.n, self.cycles.clone())?;
                Ok(Instance::new(cactus, &links, root)?)
            }
            InstanceKind::Tap => {
                if !self.cycles.is_empty() {
                    return Err(FormatError::Validation(
                        "tap instances take edges, not cycles".into(),
                    ));
                }
                let tap = TapInstance {
                    vertex_count: self.n,
                    edges: self.edges.iter().map(|&[u, v]| (u, v)).collect(),
                    links,
                };
                Ok(tap_to_cacap(&tap, root)?)
            }
        }
    }

    pub fn from_instance(instance: &Instance) -> Self {
        InstanceFile {
            kind: InstanceKind::Cacap,
            n: instance.vertex_count(),
            cycles: instance.cactus().cycles().to_vec(),
            edges: Vec::new(),
            root: Some(instance.root()),
            links: instance.links().iter().map(|l| [l.u, l.v]).collect(),
        }
    }
}

/// Per-run statistics embedded in a solution file; which fields are present
/// depends on the algorithm. Bound fields are doubled where needed so they
/// stay integral.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionStats {
    pub in_count: usize,
    pub cross_count: usize,
    pub leaf_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching_in_count: Option<usize>,
    /// Distinct links added by the completion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_links: Option<usize>,
    /// Arcs bought by the completion (the covering LP objective).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_arcs: Option<usize>,
    /// Twice the guaranteed completion size
    /// `|M| + |M_in|/2 + (|T| - 2|M|)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_bound_x2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcactus_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcactus_leaf_cap: Option<usize>,
    /// Exact optimum, for the exact solver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_value: Option<usize>,
    /// Wall time; written only when timing is requested, keeping default
    /// outputs byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

/// The on-disk solution representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub algorithm: String,
    pub link_ids: Vec<usize>,
    pub size: usize,
    pub feasible: bool,
    pub stats: SolutionStats,
}

impl SolutionFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution files serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_instance_round_trip() {
        let file = InstanceFile::parse(r#"{ "n": 2, "cycles": [[0, 1]], "links": [[0, 1]] }"#)
            .unwrap();
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.root(), 0);
        assert_eq!(inst.links().len(), 1);
        let back = InstanceFile::from_instance(&inst);
        assert_eq!(InstanceFile::parse(&back.serialize()).unwrap(), back);
    }

    #[test]
    fn tap_kind_doubles_edges() {
        let file = InstanceFile::parse(
            r#"{ "kind": "tap", "n": 3, "edges": [[0, 1], [1, 2]], "links": [[0, 2]] }"#,
        )
        .unwrap();
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.cactus().cycles().len(), 2);
        assert!(inst.is_leaf_to_leaf());
    }

    #[test]
    fn degenerate_cycle_is_rejected() {
        let file = InstanceFile::parse(r#"{ "n": 2, "cycles": [[0]], "links": [] }"#).unwrap();
        let err = file.to_instance().unwrap_err();
        assert!(matches!(err, FormatError::Validation(_)));
        assert!(err.to_string().contains("degenerate"));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = InstanceFile::parse("{ not json").unwrap_err();
        assert!(matches!(err, FormatError::Parse(_)));
        assert!(err.to_string().contains("line"));
    }

    #[test]
    fn solution_round_trip() {
        let sol = SolutionFile {
            algorithm: "matching".into(),
            link_ids: vec![0, 2],
            size: 2,
            feasible: true,
            stats: SolutionStats {
                in_count: 1,
                cross_count: 1,
                leaf_count: 4,
                matching_size: Some(1),
                matching_in_count: Some(0),
                cover_links: Some(1),
                cover_arcs: Some(1),
                completion_bound_x2: Some(8),
                ..SolutionStats::default()
            },
        };
        assert_eq!(SolutionFile::parse(&sol.serialize()).unwrap(), sol);
    }
}

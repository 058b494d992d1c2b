//! The structured run report. Serialised as JSON with fields in declaration
//! order; everything except `timing_ms` is a function of the configuration.

use std::collections::BTreeMap;

use normdec_core::homology::HomologyReport;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: u32,
    pub command: String,
    pub config: ConfigEcho,
    /// Degrees in which homology verdicts are exact, `[0, d - 1]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trusted_degrees: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<Structure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomVerdicts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dwyer: Option<DwyerSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thomason: Option<ThomasonSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selftest: Option<Vec<SelftestRow>>,
    pub verdict: Verdict,
    pub timing_ms: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn new(command: &str, config: ConfigEcho) -> RunReport {
        RunReport {
            format_version: FORMAT_VERSION,
            command: command.into(),
            config,
            trusted_degrees: None,
            system: None,
            structure: None,
            axioms: None,
            decomposition: None,
            dwyer: None,
            thomason: None,
            selftest: None,
            verdict: Verdict { passed: true, failures: Vec::new() },
            timing_ms: BTreeMap::new(),
        }
    }

    /// Records a named check; a failed one fails the run.
    pub fn require(&mut self, name: impl Into<String>, ok: bool) {
        if !ok {
            self.verdict.passed = false;
            self.verdict.failures.push(name.into());
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }

    /// The report with `timing_ms` emptied, for comparing runs.
    pub fn without_timing(&self) -> RunReport {
        RunReport { timing_ms: BTreeMap::new(), ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub p: u32,
    pub group: Option<String>,
    pub collection: String,
    pub eab: String,
    pub dim: usize,
    pub simplex_budget: usize,
    pub subdivision_budget: usize,
    pub strict: bool,
    pub dwyer_homology: bool,
    pub thomason: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub group_order: usize,
    pub fingerprint: String,
    pub sylow_order: usize,
    /// Elements of `S` as `(index, label)`.
    pub sylow_elements: Vec<(u32, String)>,
    pub subgroups_of_sylow: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub id: usize,
    pub order: usize,
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub representative: SubgroupEntry,
    pub size: usize,
    pub centric: bool,
    pub radical: bool,
    pub fully_centralised: bool,
    pub fully_normalised: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollectionSection {
    pub kind: String,
    pub members: usize,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainClassEntry {
    /// Subgroup ids, smallest first.
    pub representative: Vec<usize>,
    pub dimension: usize,
    pub size: usize,
}

/// `s̄dC` as a list of classes and the pairs `(a, b)`, `a ≠ b`, with
/// `b ≤ a` (the chains of `b` are conjugate to subchains of `a`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainPosetSection {
    pub classes: Vec<ChainClassEntry>,
    pub relations: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Structure {
    pub centric_classes: usize,
    pub radical_centric_classes: usize,
    pub collection: CollectionSection,
    pub linking_objects: usize,
    pub linking_morphisms: usize,
    pub chain_poset: ChainPosetSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomVerdicts {
    pub saturation_ok: bool,
    pub saturation_witnesses: Vec<String>,
    pub linking_ok: bool,
    pub linking_witnesses: Vec<String>,
    pub linking_sampled: bool,
    /// `|L(P,Q)| = |F(P,Q)|·|Z(P)|` for all objects.
    pub hom_counts_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionSection {
    pub theorem: String,
    /// For Theorem B, the collection `E`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eab: Option<CollectionSection>,
    pub base_objects: usize,
    pub total_objects: usize,
    pub total_morphisms: usize,
    pub target_objects: usize,
    pub target_morphisms: usize,
    pub model_objects: usize,
    pub total_simplices: usize,
    pub target_simplices: usize,
    pub homology: HomologyReport,
    pub iso: bool,
    pub checks: Vec<NamedCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DwyerClassEntry {
    pub chain: Vec<usize>,
    pub transporter_aut: usize,
    pub linking_aut: usize,
    pub kernel: usize,
    pub kernel_matches: bool,
    pub surjective: bool,
    pub kernel_coprime: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transporter_betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_iso: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DwyerSection {
    pub transporter_objects: usize,
    pub transporter_morphisms: usize,
    pub projection_is_functor: bool,
    pub classes: Vec<DwyerClassEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThomasonEntry {
    pub label: String,
    pub base_objects: usize,
    pub total_objects: usize,
    pub via_grothendieck: Vec<usize>,
    pub via_diagonal: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThomasonSection {
    pub seed: u64,
    pub cap: usize,
    pub entries: Vec<ThomasonEntry>,
    /// Diagrams whose nerves exceeded the simplex budget.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestRow {
    pub system: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

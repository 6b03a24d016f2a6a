//! JSON records for every command.
//!
//! Field order is the struct order and floats are written with 17
//! significant digits, so identical inputs give identical bytes.
//! Non-finite floats become `null`.

use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::Number;
use sgthresh_core::mc::PcEstimate;
use sgthresh_core::spread::SpreadCertificate;
use sgthresh_core::thresholds::{ThresholdReport, Witness};
use sgthresh_core::SubgraphClass;

pub fn float_number(x: f64) -> Option<Number> {
    if x.is_finite() {
        Some(Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"))
    } else {
        None
    }
}

fn f17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    float_number(*x).serialize(s)
}

fn f17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    x.and_then(float_number).serialize(s)
}

fn f17_pair<S: Serializer>(x: &[f64; 2], s: S) -> Result<S::Ok, S::Error> {
    [float_number(x[0]), float_number(x[1])].serialize(s)
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CensusEntry {
    pub canonical_key: String,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub multiplicity: String,
    pub aut_count: String,
    pub representative_edge_list: Vec<[usize; 2]>,
}

impl From<&SubgraphClass> for CensusEntry {
    fn from(c: &SubgraphClass) -> Self {
        CensusEntry {
            canonical_key: c.canonical.hex(),
            edge_count: c.edge_count,
            vertex_count: c.vertex_count,
            multiplicity: c.multiplicity.to_string(),
            aut_count: c.aut_count.to_string(),
            representative_edge_list: c.representative.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

pub fn census_json(classes: &[SubgraphClass]) -> Vec<CensusEntry> {
    classes.iter().map(CensusEntry::from).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct WitnessJson {
    pub canonical_key: String,
    pub edge_count: usize,
    #[serde(serialize_with = "f17")]
    pub log_value: f64,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            canonical_key: w.label.clone(),
            edge_count: w.edge_count,
            log_value: w.log_value,
        }
    }
}

/// `witnesses` lists the classes attaining `p̃_E`; `witnesses_p_E` those
/// attaining `p_E`.
#[derive(Serialize, Debug, Clone, PartialEq)]
#[allow(non_snake_case)]
pub struct ReportJson {
    pub n: usize,
    pub pattern: String,
    #[serde(serialize_with = "f17")]
    pub p_E: f64,
    #[serde(serialize_with = "f17")]
    pub p_tilde_E: f64,
    #[serde(serialize_with = "f17")]
    pub log_p_E: f64,
    #[serde(serialize_with = "f17")]
    pub log_p_tilde_E: f64,
    pub witnesses: Vec<WitnessJson>,
    pub witnesses_p_E: Vec<WitnessJson>,
}

impl From<&ThresholdReport> for ReportJson {
    fn from(r: &ThresholdReport) -> Self {
        ReportJson {
            n: r.n,
            pattern: r.pattern.clone(),
            p_E: r.p_expectation,
            p_tilde_E: r.p_modified,
            log_p_E: r.log_p_expectation,
            log_p_tilde_E: r.log_p_modified,
            witnesses: r.witnesses_modified.iter().map(WitnessJson::from).collect(),
            witnesses_p_E: r.witnesses_expectation.iter().map(WitnessJson::from).collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MarginJson {
    pub canonical_key: String,
    #[serde(serialize_with = "f17")]
    pub log_ratio_over_e: f64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct EmpiricalJson {
    pub canonical_key: String,
    #[serde(serialize_with = "f17")]
    pub exact_ratio: f64,
    #[serde(serialize_with = "f17")]
    pub rate: f64,
    #[serde(serialize_with = "f17")]
    pub std_error: f64,
    pub samples: u64,
    pub within_3se: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct LemmaJson {
    #[serde(serialize_with = "f17")]
    pub c: f64,
    #[serde(serialize_with = "f17")]
    pub p: f64,
    pub successes: u64,
    pub samples: u64,
    #[serde(serialize_with = "f17")]
    pub rate: f64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CertificateJson {
    pub n: usize,
    pub pattern: String,
    #[serde(serialize_with = "f17")]
    pub r_claimed: f64,
    #[serde(serialize_with = "f17")]
    pub r_star: f64,
    pub pass: bool,
    pub worst_classes: Vec<MarginJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<Vec<EmpiricalJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaJson>,
}

impl From<&SpreadCertificate> for CertificateJson {
    fn from(c: &SpreadCertificate) -> Self {
        CertificateJson {
            n: c.n,
            pattern: c.pattern.clone(),
            r_claimed: c.r_claimed,
            r_star: c.r_star,
            pass: c.pass,
            worst_classes: c
                .worst_classes
                .iter()
                .map(|m| MarginJson {
                    canonical_key: m.label.clone(),
                    log_ratio_over_e: m.log_ratio_over_e,
                })
                .collect(),
            empirical: None,
            lemma: None,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ProbeJson {
    #[serde(serialize_with = "f17")]
    pub p: f64,
    pub successes: u64,
    pub samples: u64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct EstimateJson {
    pub n: usize,
    pub pattern: String,
    pub method: &'static str,
    #[serde(serialize_with = "f17")]
    pub p_hat: f64,
    #[serde(serialize_with = "f17_pair")]
    pub ci: [f64; 2],
    pub trace: Vec<ProbeJson>,
    pub seed: u64,
    pub samples_per_probe: u64,
    pub low_confidence: bool,
}

impl From<&PcEstimate> for EstimateJson {
    fn from(e: &PcEstimate) -> Self {
        EstimateJson {
            n: e.n,
            pattern: e.pattern.clone(),
            method: e.method.name(),
            p_hat: e.p_hat,
            ci: [e.ci_low, e.ci_high],
            trace: e
                .probes
                .iter()
                .map(|p| ProbeJson {
                    p: p.p,
                    successes: p.successes,
                    samples: p.samples,
                })
                .collect(),
            seed: e.seed,
            samples_per_probe: e.samples_per_probe,
            low_confidence: e.low_confidence,
        }
    }
}

/// One row of a family scaling table. Unavailable cells are `null` in JSON
/// and empty in CSV; `note` says why.
#[derive(Serialize, Debug, Clone, PartialEq)]
#[allow(non_snake_case)]
pub struct ScalingRowJson {
    pub n: usize,
    pub param: usize,
    #[serde(serialize_with = "f17_opt")]
    pub p_E: Option<f64>,
    #[serde(serialize_with = "f17_opt")]
    pub p_tilde_E: Option<f64>,
    #[serde(serialize_with = "f17_opt")]
    pub n_p_tilde_E: Option<f64>,
    #[serde(serialize_with = "f17_opt")]
    pub p_c: Option<f64>,
    #[serde(serialize_with = "f17_opt")]
    pub p_c_n_over_ln_n: Option<f64>,
    #[serde(serialize_with = "f17_opt")]
    pub p_c_over_p_tilde_E_ln_e: Option<f64>,
    /// First class attaining `p̃_E`.
    pub binding_class: Option<String>,
    pub note: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        let n = float_number(0.1).unwrap();
        assert_eq!(n.to_string(), "1.0000000000000001e-1");
        assert_eq!(float_number(f64::NEG_INFINITY), None);
        let back: f64 = n.to_string().parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn report_fields() {
        let r = ThresholdReport {
            n: 5,
            pattern: "03e0".into(),
            pattern_edge_count: 3,
            p_expectation: 0.5,
            p_modified: 0.5,
            log_p_expectation: -std::f64::consts::LN_2,
            log_p_modified: -std::f64::consts::LN_2,
            witnesses_expectation: vec![],
            witnesses_modified: vec![],
        };
        let text = to_json(&ReportJson::from(&r));
        let keys = [
            "n",
            "pattern",
            "p_E",
            "p_tilde_E",
            "log_p_E",
            "log_p_tilde_E",
            "witnesses",
            "witnesses_p_E",
        ];
        let at: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{text}");
    }
}

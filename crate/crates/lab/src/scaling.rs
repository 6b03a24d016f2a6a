//! Family scaling tables: thresholds and optional `p_c` estimates across
//! ambient orders.

use sgthresh_core::families::{make_family, FamilyKind, FamilySpec};
use sgthresh_core::mc::{BisectionConfig, OracleKind, HAMILTONIAN_MAX_ORDER};
use sgthresh_core::{compute_thresholds, CensusOptions, Error, Result, ThresholdReport};

use crate::export::ScalingRowJson;
use crate::par;

pub const CSV_HEADERS: [&str; 10] = [
    "n",
    "param",
    "p_E",
    "p_tilde_E",
    "n_p_tilde_E",
    "p_c",
    "p_c_n_over_ln_n",
    "p_c_over_p_tilde_E_ln_e",
    "binding_class",
    "note",
];

/// Family parameter for ambient order `n`. Without an explicit value,
/// cycles and matchings span `K_n`.
pub fn resolve_param(kind: FamilyKind, param: Option<usize>, n: usize) -> Result<usize> {
    match (param, kind) {
        (Some(p), _) => Ok(p),
        (None, FamilyKind::Cycle) => Ok(n),
        (None, FamilyKind::Matching) if n.is_multiple_of(2) => Ok(n / 2),
        (None, FamilyKind::Matching) => Err(Error::Domain("a spanning matching needs even n")),
        (None, _) => Err(Error::Domain("this family needs an explicit parameter")),
    }
}

/// Thresholds for a family member: analytic census where one exists,
/// exhaustive census for cliques.
pub fn family_thresholds(spec: &FamilySpec, n: usize) -> Result<ThresholdReport> {
    if spec.has_analytic_census() {
        return par::family_report(spec, n).map(|(r, _)| r);
    }
    let g = make_family(spec)?;
    let census = par::census(&g, &CensusOptions::default())?;
    compute_thresholds(&g, n, &census)
}

/// Thresholds plus a readable name for the first class attaining `p̃_E`.
fn thresholds_and_binding(spec: &FamilySpec, n: usize) -> Result<(ThresholdReport, String)> {
    if !spec.has_analytic_census() {
        let r = family_thresholds(spec, n)?;
        let binding = r
            .witnesses_modified
            .first()
            .map(|w| w.label.clone())
            .unwrap_or_default();
        return Ok((r, binding));
    }
    let report = family_thresholds(spec, n)?;
    let scan = par::family_class_scan(spec, n)?;
    let binding = scan
        .modified
        .into_witnesses()
        .into_iter()
        .next()
        .map(|(shape, _, _)| shape.label())
        .unwrap_or_default();
    Ok((report, binding))
}

fn pc_cell(spec: &FamilySpec, n: usize, cfg: &BisectionConfig) -> Result<f64> {
    let g = make_family(spec)?;
    let oracle = OracleKind::suggest(&g, n);
    if spec.kind == FamilyKind::Cycle && spec.param == n && oracle == OracleKind::Generic {
        return Err(Error::Capacity {
            what: "Hamiltonian oracle host order",
            requested: n,
            limit: HAMILTONIAN_MAX_ORDER,
        });
    }
    Ok(par::estimate_pc(&g, n, cfg, oracle)?.p_hat)
}

fn note(notes: &mut Vec<String>, what: &str, e: &Error) {
    notes.push(format!("{what}: {e}"));
}

pub fn scaling_row(
    kind: FamilyKind,
    param: Option<usize>,
    n: usize,
    with_pc: Option<&BisectionConfig>,
) -> ScalingRowJson {
    let mut row = ScalingRowJson {
        n,
        param: 0,
        p_E: None,
        p_tilde_E: None,
        n_p_tilde_E: None,
        p_c: None,
        p_c_n_over_ln_n: None,
        p_c_over_p_tilde_E_ln_e: None,
        binding_class: None,
        note: String::new(),
    };
    let mut notes = Vec::new();
    let spec = resolve_param(kind, param, n).and_then(|p| {
        row.param = p;
        FamilySpec::new(kind, p)
    });
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            row.note = format!("family: {e}");
            return row;
        }
    };
    match thresholds_and_binding(&spec, n) {
        Ok((r, binding)) => {
            row.binding_class = Some(binding);
            row.p_E = Some(r.p_expectation);
            row.p_tilde_E = Some(r.p_modified);
            row.n_p_tilde_E = Some(n as f64 * r.p_modified);
        }
        Err(e) => note(&mut notes, "thresholds", &e),
    }
    if let Some(cfg) = with_pc {
        match pc_cell(&spec, n, cfg) {
            Ok(pc) => {
                row.p_c = Some(pc);
                if n >= 2 {
                    row.p_c_n_over_ln_n = Some(pc * n as f64 / (n as f64).ln());
                }
                let ln_e = (spec.edge_count() as f64).ln().max(1.0);
                row.p_c_over_p_tilde_E_ln_e = row.p_tilde_E.map(|pt| pc / (pt * ln_e));
            }
            Err(e) => note(&mut notes, "p_c", &e),
        }
    }
    row.note = notes.join("; ");
    row
}

/// One row per ambient order; failures only blank the affected cells.
pub fn scaling_table(
    kind: FamilyKind,
    param: Option<usize>,
    n_values: &[usize],
    with_pc: Option<&BisectionConfig>,
) -> Vec<ScalingRowJson> {
    n_values.iter().map(|&n| scaling_row(kind, param, n, with_pc)).collect()
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn to_csv(rows: &[ScalingRowJson]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADERS).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.param.to_string(),
            cell(r.p_E),
            cell(r.p_tilde_E),
            cell(r.n_p_tilde_E),
            cell(r.p_c),
            cell(r.p_c_n_over_ln_n),
            cell(r.p_c_over_p_tilde_E_ln_e),
            r.binding_class.clone().unwrap_or_default(),
            r.note.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

#[cfg(test)]
mod tests {
    use super::*;
    use sgthresh_core::{subgraph_census, Graph};

    #[test]
    fn cycle_rows_are_finite() {
        let rows = scaling_table(FamilyKind::Cycle, None, &[8, 16, 32, 64], None);
        assert_eq!(rows.len(), 4);
        for r in &rows {
            let x = r.n_p_tilde_E.unwrap();
            assert!(x.is_finite() && x > 0.0, "{r:?}");
            assert_eq!(r.param, r.n);
            assert!(r.binding_class.as_deref().is_some_and(|b| !b.is_empty()));
        }
    }

    #[test]
    fn matching_pc_column_is_roughly_flat() {
        let rows = scaling_table(
            FamilyKind::Matching,
            None,
            &[8, 12, 16],
            Some(&BisectionConfig::default()),
        );
        let col: Vec<f64> = rows.iter().map(|r| r.p_c_n_over_ln_n.unwrap()).collect();
        let hi = col.iter().cloned().fold(f64::MIN, f64::max);
        let lo = col.iter().cloned().fold(f64::MAX, f64::min);
        assert!(hi / lo < 1.5, "{col:?}");
    }

    #[test]
    fn clique_row_matches_direct() {
        let rows = scaling_table(FamilyKind::Clique, Some(3), &[5], None);
        let k3 = Graph::complete(3).unwrap();
        let census = subgraph_census(&k3, &CensusOptions::default()).unwrap();
        let direct = compute_thresholds(&k3, 5, &census).unwrap();
        assert_eq!(rows[0].p_tilde_E, Some(direct.p_modified));
        assert_eq!(rows[0].p_E, Some(direct.p_expectation));
    }

    #[test]
    fn bad_cells_keep_the_row() {
        let rows = scaling_table(FamilyKind::Matching, None, &[7, 8], None);
        assert!(rows[0].p_tilde_E.is_none() && !rows[0].note.is_empty());
        assert!(rows[1].p_tilde_E.is_some());
        let rows = scaling_table(FamilyKind::Cycle, None, &[24], Some(&BisectionConfig::default()));
        assert!(rows[0].p_tilde_E.is_some() && rows[0].p_c.is_none());
        assert!(rows[0].note.contains("p_c"));
        let csv = to_csv(&rows);
        assert!(csv.starts_with("n,param,p_E,p_tilde_E,n_p_tilde_E,p_c,"));
        assert_eq!(csv.lines().count(), 2);
    }
}

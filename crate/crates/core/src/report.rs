//! Full analysis reports, census tables and pullback checks, with canonical
//! JSON and a plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{CoverDatum, DEFAULT_CLOSURE_CAP};
use crate::directimage::{
    check_degree_zero, closure_trivialization_check, pushforward_parabolic, summand_e,
    DegreeZeroRecord,
};
use crate::error::{Error, Result};
use crate::hurwitz::{enumerate_hurwitz, EnumerationCaps};
use crate::parabolic::{ParabolicData, PullbackProfile};
use crate::rational::Rational;
use crate::stability::{analyze, StabilityReport, Verdict};

pub const PASS: &str = "pass";

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub skip_closure_check: bool,
    pub closure_cap: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            skip_closure_check: false,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub status: String,
    pub closure_degree: Option<usize>,
    pub pushforward_pulled_back: Option<ParabolicData>,
    pub e_pulled_back: Option<ParabolicData>,
    pub closure_self_pullback: Option<ParabolicData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub base_genus: usize,
    pub degree: usize,
    pub characteristic: u64,
    pub ramification_profile: BTreeMap<String, Vec<usize>>,
    pub genus_x: usize,
    pub degree_pushforward: i64,
    pub pushforward: ParabolicData,
    pub summand_e: Option<ParabolicData>,
    pub degree_zero: DegreeZeroRecord,
    pub stability: Option<StabilityReport>,
    pub closure_check: ClosureSummary,
    pub identity_checks: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

/// Runs every computation on a valid datum. Identity failures are errors;
/// an exceeded closure cap is recorded as `"skipped: cap"`.
pub fn build_report(d: &CoverDatum, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    d.validate().into_result()?;
    let pushforward = pushforward_parabolic(d)?;
    let e = if d.degree >= 2 { Some(summand_e(d)?) } else { None };
    let degree_zero = check_degree_zero(d)?;
    let stability = if d.degree >= 2 { Some(analyze(d)?) } else { None };

    let mut checks = BTreeMap::new();
    checks.insert("riemann_hurwitz_degree".to_string(), PASS.to_string());
    checks.insert("par_deg_pushforward_zero".to_string(), PASS.to_string());
    if let Some(e) = &e {
        checks.insert("par_deg_e_zero".to_string(), PASS.to_string());
        let split = ParabolicData::plain(1, 0)?.direct_sum(e);
        if split != pushforward {
            return Err(Error::IdentityViolated(
                "(f_* O_X)_* differs from O_Y ⊕ E_*".into(),
            ));
        }
        checks.insert("splitting_o_y_plus_e".to_string(), PASS.to_string());
    }

    let closure_check = if opts.skip_closure_check {
        ClosureSummary::skipped("skipped: by request")
    } else {
        match closure_trivialization_check(d, opts.closure_cap) {
            Ok(c) => ClosureSummary {
                status: PASS.to_string(),
                closure_degree: Some(c.closure_degree),
                pushforward_pulled_back: Some(c.pushforward_pulled_back),
                e_pulled_back: c.e_pulled_back,
                closure_self_pullback: Some(c.closure_self_pullback),
            },
            Err(Error::CapExceeded { .. }) => ClosureSummary::skipped("skipped: cap"),
            Err(other) => return Err(other),
        }
    };
    checks.insert("closure_trivialization".to_string(), closure_check.status.clone());

    let mut notes = Vec::new();
    if d.degree < 2 {
        notes.push("degree 1: E_* is zero, no stability analysis".into());
    }
    if d.is_etale() {
        notes.push("no parabolic points; E_* weightless".into());
    }

    Ok(AnalysisReport {
        base_genus: d.base_genus,
        degree: d.degree,
        characteristic: d.characteristic,
        ramification_profile: d.ramification_profile(),
        genus_x: d.genus_x()?,
        degree_pushforward: d.degree_pushforward()?,
        pushforward,
        summand_e: e,
        degree_zero,
        stability,
        closure_check,
        identity_checks: checks,
        notes,
    })
}

impl ClosureSummary {
    fn skipped(status: &str) -> Self {
        ClosureSummary {
            status: status.to_string(),
            closure_degree: None,
            pushforward_pulled_back: None,
            e_pulled_back: None,
            closure_self_pullback: None,
        }
    }
}

/// Pretty JSON with sorted keys.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn render_parabolic(out: &mut String, title: &str, p: &ParabolicData) {
    let _ = writeln!(
        out,
        "{title}: rank {}, degree {}, par-deg {}",
        p.rank(),
        p.underlying_degree(),
        p.par_deg()
    );
    if p.is_weightless() {
        let _ = writeln!(out, "  (no nonzero weights)");
    }
    for (label, ws) in p.points() {
        let entries: Vec<String> = ws
            .entries()
            .iter()
            .map(|(w, m)| format!("({w},{m})"))
            .collect();
        let _ = writeln!(out, "  {label}: {{{}}}", entries.join(","));
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cover: base genus {}, degree {}, characteristic {}",
            self.base_genus, self.degree, self.characteristic
        );
        let _ = writeln!(out, "ramification profile:");
        if self.ramification_profile.is_empty() {
            let _ = writeln!(out, "  (unramified)");
        }
        for (label, ct) in &self.ramification_profile {
            let _ = writeln!(out, "  {label}: {ct:?}");
        }
        let _ = writeln!(out, "genus_x: {}", self.genus_x);
        let _ = writeln!(out, "degree_pushforward: {}", self.degree_pushforward);
        render_parabolic(&mut out, "(f_* O_X)_*", &self.pushforward);
        if let Some(e) = &self.summand_e {
            render_parabolic(&mut out, "E_*", e);
        }
        let _ = writeln!(out, "weight contributions (m-1)/2:");
        for c in &self.degree_zero.contributions {
            let _ = writeln!(
                out,
                "  {} (m = {}): {}",
                c.label, c.multiplicity, c.contribution
            );
        }
        let _ = writeln!(
            out,
            "  total {} + degree {} = {}",
            self.degree_zero.total_contribution,
            self.degree_zero.underlying_degree,
            self.degree_zero.par_deg_pushforward
        );
        if let Some(s) = &self.stability {
            let f = &s.group_facts;
            let _ = writeln!(
                out,
                "monodromy group: order {}, {}-transitive, primitive {}, {:?}, morse {}, genuinely ramified {}",
                f.order,
                f.transitivity_degree,
                f.primitive,
                f.classification,
                f.morse,
                f.genuinely_ramified
            );
            let _ = writeln!(
                out,
                "E_*: rank {}, par-deg {}, polystable {}",
                s.rank_e, s.par_deg_e, s.polystable
            );
            let _ = writeln!(out, "verdict: {:?}", s.verdict);
            for c in &s.certificates {
                match c {
                    crate::stability::Certificate::Imprimitive { blocks } => {
                        let _ = writeln!(out, "  certificate Imprimitive: blocks {blocks:?}");
                    }
                    other => {
                        let _ = writeln!(out, "  certificate {}", other.name());
                    }
                }
            }
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        if let Some(k) = self.closure_check.closure_degree {
            let _ = writeln!(out, "galois closure degree: {k}");
        }
        let _ = writeln!(out, "identity checks:");
        for (name, status) in &self.identity_checks {
            let _ = writeln!(out, "  {name}: {status}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub handles: Vec<(String, String)>,
    pub branch: Vec<String>,
    pub group_order: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub base_genus: usize,
    pub degree: usize,
    pub cycle_types: Vec<Vec<usize>>,
    pub rows: Vec<CensusRow>,
    pub verdict_counts: BTreeMap<String, usize>,
}

/// Enumerates Hurwitz classes and analyzes each. Degree 1 rows are not
/// analyzed and never occur for nonempty branch data.
pub fn census(
    base_genus: usize,
    degree: usize,
    cycle_types: &[Vec<usize>],
    caps: &EnumerationCaps,
) -> Result<(Census, Vec<(CoverDatum, StabilityReport)>)> {
    let data = enumerate_hurwitz(base_genus, degree, cycle_types, caps)?;
    let analyzed: Vec<(CoverDatum, StabilityReport)> = data
        .into_par_iter()
        .filter(|d| d.degree >= 2)
        .map(|d| analyze(&d).map(|r| (d, r)))
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let rows = analyzed
        .iter()
        .map(|(d, r)| {
            *counts.entry(format!("{:?}", r.verdict)).or_default() += 1;
            CensusRow {
                handles: d
                    .handles
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
                branch: d.branch.iter().map(|bp| bp.sigma.to_string()).collect(),
                group_order: r.group_facts.order.to_string(),
                verdict: r.verdict,
            }
        })
        .collect();
    Ok((
        Census {
            base_genus,
            degree,
            cycle_types: cycle_types.to_vec(),
            rows,
            verdict_counts: counts,
        },
        analyzed,
    ))
}

impl Census {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "census: base genus {}, degree {}, cycle types {:?}",
            self.base_genus, self.degree, self.cycle_types
        );
        for (i, row) in self.rows.iter().enumerate() {
            let handles: Vec<String> = row
                .handles
                .iter()
                .map(|(a, b)| format!("[{a},{b}]"))
                .collect();
            let _ = writeln!(
                out,
                "{:>4}  {}{}  |Γ| = {}  {:?}",
                i + 1,
                if handles.is_empty() {
                    String::new()
                } else {
                    format!("{} ", handles.join(" "))
                },
                row.branch.join(" "),
                row.group_order,
                row.verdict
            );
        }
        let _ = writeln!(out, "classes: {}", self.rows.len());
        for (verdict, n) in &self.verdict_counts {
            let _ = writeln!(out, "  {verdict}: {n}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub input: ParabolicData,
    pub cover_degree: usize,
    pub result: ParabolicData,
    pub par_deg_input: Rational,
    pub par_deg_result: Rational,
    pub expected_par_deg: Rational,
    pub multiplicativity: String,
}

/// Pulls back and checks `par-deg(φ^* W_*) = deg(φ) · par-deg(W_*)`.
pub fn pullback_report(p: &ParabolicData, profile: &PullbackProfile) -> Result<PullbackReport> {
    let result = p.pullback(profile)?;
    let expected = Rational::from_int(profile.cover_degree() as i64) * p.par_deg();
    let status = if result.par_deg() == expected {
        PASS.to_string()
    } else {
        "fail".to_string()
    };
    Ok(PullbackReport {
        input: p.clone(),
        cover_degree: profile.cover_degree(),
        par_deg_input: p.par_deg(),
        par_deg_result: result.par_deg(),
        expected_par_deg: expected,
        result,
        multiplicativity: status,
    })
}

impl PullbackReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_parabolic(&mut out, "input", &self.input);
        render_parabolic(&mut out, "pullback", &self.result);
        let _ = writeln!(
            out,
            "par-deg multiplicativity: {} = {} · {}: {}",
            self.par_deg_result,
            self.cover_degree,
            self.par_deg_input,
            self.multiplicativity
        );
        out
    }
}

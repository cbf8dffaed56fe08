//! Stability verdicts for `E_*` with checkable certificates.
//!
//! `E_*` is always parabolic polystable of parabolic degree zero. Whether
//! it is stable is read off the monodromy group `Γ` acting on the fiber
//! `Γ/H = {1..r}`:
//!
//! * a nontrivial block system gives an intermediate cover `X → Z → Y`
//!   whose direct image maps nontrivially into `E_*`, so `E_*` is not stable;
//! * a 2-transitive action makes the sum-zero submodule of `k[Γ/H]`
//!   irreducible (`p ∤ |Γ|` under the tameness hypothesis), so `E_*` is stable;
//! * `Γ = S_r`, `Γ = A_r` with `r ≥ 4`, or a genuinely ramified Morse cover
//!   are special cases of the above and are attached as extra certificates.
//!
//! Anything else is reported as undetermined.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::cover::CoverDatum;
use crate::directimage::summand_e;
use crate::error::{Error, Result};
use crate::group::{factorial, BlockSystem, GroupClass};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Stable,
    NotStable,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `E_*` is a line bundle.
    RankOne,
    TwoTransitive,
    Symmetric,
    Alternating,
    MorseAndGenuinelyRamified,
    Imprimitive { blocks: BlockSystem },
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::RankOne => "RankOne",
            Certificate::TwoTransitive => "TwoTransitive",
            Certificate::Symmetric => "Symmetric",
            Certificate::Alternating => "Alternating",
            Certificate::MorseAndGenuinelyRamified => "MorseAndGenuinelyRamified",
            Certificate::Imprimitive { .. } => "Imprimitive",
        }
    }

    pub fn witnesses_stable(&self) -> bool {
        !matches!(self, Certificate::Imprimitive { .. })
    }
}

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFacts {
    #[serde(serialize_with = "as_decimal")]
    pub order: BigUint,
    pub transitivity_degree: usize,
    pub primitive: bool,
    pub classification: GroupClass,
    pub morse: bool,
    pub genuinely_ramified: bool,
    pub etale: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub rank_e: usize,
    pub par_deg_e: Rational,
    pub polystable: bool,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub group_facts: GroupFacts,
    pub notes: Vec<String>,
}

impl StabilityReport {
    pub fn has(&self, name: &str) -> bool {
        self.certificates.iter().any(|c| c.name() == name)
    }
}

/// Irreducibility of the sum-zero submodule of `k[Γ/H]`, decided by
/// 2-transitivity of the monodromy action.
pub fn is_v_irreducible(d: &CoverDatum) -> Result<bool> {
    if d.degree < 2 {
        return Err(Error::Precondition(
            "the sum-zero module needs degree at least 2".into(),
        ));
    }
    d.validate().into_result()?;
    d.monodromy_group().is_two_transitive()
}

pub fn analyze(d: &CoverDatum) -> Result<StabilityReport> {
    if d.degree < 2 {
        return Err(Error::Precondition(
            "stability of E_* needs degree at least 2".into(),
        ));
    }
    let e = summand_e(d)?;
    if !e.par_deg().is_zero() {
        return Err(Error::IdentityViolated(format!(
            "par-deg(E_*) = {}",
            e.par_deg()
        )));
    }

    let r = d.degree;
    let group = d.monodromy_group();
    let order = group.order();
    let classification = group.symmetric_or_alternating();
    let blocks = d.intermediate_factorizations()?;
    let two_transitive = group.is_two_transitive()?;
    let morse = d.is_morse();
    let genuinely_ramified = d.is_genuinely_ramified();
    let facts = GroupFacts {
        order: order.clone(),
        transitivity_degree: group.transitivity_degree(),
        primitive: blocks.is_empty(),
        classification,
        morse,
        genuinely_ramified,
        etale: d.is_etale(),
    };

    let mut certificates = Vec::new();
    let mut notes = Vec::new();

    if r == 2 {
        certificates.push(Certificate::RankOne);
    }
    for sys in &blocks {
        certificates.push(Certificate::Imprimitive { blocks: sys.clone() });
    }
    if two_transitive {
        certificates.push(Certificate::TwoTransitive);
    }
    match classification {
        GroupClass::Symmetric => certificates.push(Certificate::Symmetric),
        GroupClass::Alternating if r >= 4 => certificates.push(Certificate::Alternating),
        GroupClass::Alternating => notes.push(format!(
            "monodromy is A_{r}, which is not 2-transitive on {r} points; \
             no Alternating certificate is issued"
        )),
        GroupClass::Neither => {}
    }
    if morse && genuinely_ramified && !d.is_etale() {
        if order != factorial(r) {
            return Err(Error::IdentityViolated(format!(
                "genuinely ramified Morse cover has monodromy of order {order}, expected {r}!"
            )));
        }
        certificates.push(Certificate::MorseAndGenuinelyRamified);
    }
    if d.is_etale() {
        notes.push("no parabolic points; E_* weightless".into());
    }

    let stable = certificates.iter().any(Certificate::witnesses_stable);
    let not_stable = !blocks.is_empty();
    if stable && not_stable {
        return Err(Error::IdentityViolated(
            "stable and non-stable certificates coexist".into(),
        ));
    }
    let symmetric_like = certificates
        .iter()
        .any(|c| matches!(c, Certificate::Symmetric | Certificate::Alternating));
    if symmetric_like && !two_transitive {
        return Err(Error::IdentityViolated(
            "S_r or A_r (r ≥ 4) monodromy that is not 2-transitive".into(),
        ));
    }

    let verdict = if not_stable {
        Verdict::NotStable
    } else if stable {
        Verdict::Stable
    } else {
        notes.push(
            "primitive but not 2-transitive monodromy: E_* is polystable; stability is not decided"
                .into(),
        );
        Verdict::Undetermined
    };

    Ok(StabilityReport {
        rank_e: e.rank(),
        par_deg_e: e.par_deg(),
        polystable: true,
        verdict,
        certificates,
        group_facts: facts,
        notes,
    })
}

//! Parabolic structure on `f_* O_X` and on its trace-free summand `E`.
//!
//! Over a branch point `x`, each cycle of length `m` in the local monodromy
//! is a point of the fiber with multiplicity `m`; it contributes weights
//! `0, 1/m, ..., (m-1)/m`, one dimension each. Weights are reduced and
//! merged across cycles. `E_*` drops one copy of weight `0` at every point,
//! which is the trivial summand `O_Y`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cover::CoverDatum;
use crate::error::{Error, Result};
use crate::parabolic::{ParabolicData, Preimage, PullbackProfile, WeightSystem};
use crate::rational::Rational;

fn require_valid(d: &CoverDatum) -> Result<()> {
    d.validate().into_result()
}

/// Weight system of the direct image at one branch point.
fn fiber_weights(cycle_lengths: &[usize]) -> WeightSystem {
    WeightSystem::new(cycle_lengths.iter().flat_map(|&m| {
        (0..m).map(move |j| (Rational::new(j as i64, m as i64), 1))
    }))
    .expect("weights j/m lie in [0, 1)")
}

fn pushforward_unchecked(d: &CoverDatum) -> Result<ParabolicData> {
    let points = d
        .branch
        .iter()
        .map(|bp| (bp.label.clone(), fiber_weights(&bp.sigma.cycle_type())))
        .collect();
    ParabolicData::new(d.degree, d.degree_pushforward()?, points)
}

/// `(f_* O_X)_*` as numerical parabolic data.
pub fn pushforward_parabolic(d: &CoverDatum) -> Result<ParabolicData> {
    require_valid(d)?;
    pushforward_unchecked(d)
}

fn summand_from(pushforward: &ParabolicData) -> Result<ParabolicData> {
    let rank = pushforward.rank();
    if rank < 2 {
        return Err(Error::Precondition(
            "E_* is zero for a degree 1 cover".into(),
        ));
    }
    let points = pushforward
        .points()
        .iter()
        .map(|(label, ws)| {
            let mut dropped = false;
            let pairs: Vec<_> = ws
                .entries()
                .iter()
                .filter_map(|&(w, m)| {
                    if w.is_zero() && !dropped {
                        dropped = true;
                        (m > 1).then_some((w, m - 1))
                    } else {
                        Some((w, m))
                    }
                })
                .collect();
            debug_assert!(dropped, "every fiber has a weight 0 entry");
            Ok((label.clone(), WeightSystem::new(pairs)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    ParabolicData::new(rank - 1, pushforward.underlying_degree(), points)
}

/// The trace-free summand `E_*`, with `(f_* O_X)_* = O_Y ⊕ E_*`.
pub fn summand_e(d: &CoverDatum) -> Result<ParabolicData> {
    if d.degree < 2 {
        return Err(Error::Precondition(
            "E_* is zero for a degree 1 cover".into(),
        ));
    }
    summand_from(&pushforward_parabolic(d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointContribution {
    pub label: String,
    /// Ramification index `m_x` of one point over `label`.
    pub multiplicity: usize,
    /// `(m_x - 1) / 2`.
    pub contribution: Rational,
}

/// Exact bookkeeping showing that both parabolic degrees vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeZeroRecord {
    pub contributions: Vec<PointContribution>,
    pub total_contribution: Rational,
    pub underlying_degree: i64,
    pub par_deg_pushforward: Rational,
    pub par_deg_e: Option<Rational>,
}

/// Computes each ramification point's contribution `(m-1)/2` directly from
/// the cycle lengths, compares it with the weights of the constructed
/// parabolic data point by point, and checks that the degree cancels.
pub fn check_degree_zero(d: &CoverDatum) -> Result<DegreeZeroRecord> {
    let pushforward = pushforward_parabolic(d)?;
    let mut contributions = Vec::new();
    for bp in &d.branch {
        let mut at_point = Rational::ZERO;
        for m in bp.sigma.cycle_type().into_iter().filter(|&m| m > 1) {
            let c = Rational::new(m as i64 - 1, 2);
            at_point += c;
            contributions.push(PointContribution {
                label: bp.label.clone(),
                multiplicity: m,
                contribution: c,
            });
        }
        let from_weights = pushforward.weights_at(&bp.label).weight_sum();
        if from_weights != at_point {
            return Err(Error::IdentityViolated(format!(
                "weights at {:?} sum to {from_weights}, ramification gives {at_point}",
                bp.label
            )));
        }
    }
    let total_contribution: Rational = contributions.iter().map(|c| c.contribution).sum();
    let underlying_degree = pushforward.underlying_degree();
    let par_deg_pushforward = pushforward.par_deg();
    if Rational::from_int(underlying_degree) + total_contribution != Rational::ZERO
        || !par_deg_pushforward.is_zero()
    {
        return Err(Error::IdentityViolated(format!(
            "par-deg((f_* O_X)_*) = {par_deg_pushforward}, expected 0"
        )));
    }
    let par_deg_e = if d.degree >= 2 {
        let e = summand_from(&pushforward)?;
        if !e.par_deg().is_zero() {
            return Err(Error::IdentityViolated(format!(
                "par-deg(E_*) = {}, expected 0",
                e.par_deg()
            )));
        }
        Some(e.par_deg())
    } else {
        None
    };
    Ok(DegreeZeroRecord {
        contributions,
        total_contribution,
        underlying_degree,
        par_deg_pushforward,
        par_deg_e,
    })
}

/// Pullbacks to the Galois closure `φ: M → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub closure_degree: usize,
    pub pushforward_pulled_back: ParabolicData,
    pub e_pulled_back: Option<ParabolicData>,
    /// `φ^*(φ_* O_M)_*`.
    pub closure_self_pullback: ParabolicData,
}

/// Fiber multiplicities of the closure over each branch point. Every point
/// over `x` has multiplicity `ord(σ_x)`.
pub fn closure_profile(d: &CoverDatum, closure: &CoverDatum) -> Result<PullbackProfile> {
    let mut fibers = BTreeMap::new();
    for (bp, lifted) in d.branch.iter().zip(&closure.branch) {
        if bp.label != lifted.label {
            return Err(Error::IdentityViolated(format!(
                "closure branch label {:?} does not match {:?}",
                lifted.label, bp.label
            )));
        }
        let order = bp.sigma.order();
        let cycles = lifted.sigma.cycles();
        if cycles.iter().any(|c| c.len() != order) {
            return Err(Error::IdentityViolated(format!(
                "closure fiber over {:?} is not uniform of multiplicity {order}",
                bp.label
            )));
        }
        let fiber = cycles
            .iter()
            .enumerate()
            .map(|(k, c)| Preimage {
                label: format!("{}#{}", bp.label, k + 1),
                multiplicity: c.len(),
            })
            .collect();
        fibers.insert(bp.label.clone(), fiber);
    }
    if closure.branch.len() != d.branch.len() {
        return Err(Error::IdentityViolated(
            "closure is branched outside the branch locus".into(),
        ));
    }
    PullbackProfile::new(closure.degree, fibers)
}

fn expect_trivialized(what: &str, p: &ParabolicData, rank: usize) -> Result<()> {
    if p.rank() != rank || p.underlying_degree() != 0 || !p.is_weightless() {
        return Err(Error::IdentityViolated(format!(
            "{what}: expected rank {rank}, degree 0, no weights; got rank {}, degree {}, {} weighted points",
            p.rank(),
            p.underlying_degree(),
            p.points().len()
        )));
    }
    Ok(())
}

/// Pulls `(f_* O_X)_*` and `E_*` back to the Galois closure and checks that
/// both become trivial bundles with no parabolic weights, and likewise for
/// the closure's own direct image.
pub fn closure_trivialization_check(d: &CoverDatum, cap: usize) -> Result<ClosureCheck> {
    let pushforward = pushforward_parabolic(d)?;
    let closure = d.galois_closure(cap)?;
    let profile = closure_profile(d, &closure)?;

    let pushforward_pulled_back = pushforward.pullback(&profile)?;
    expect_trivialized("φ^*(f_* O_X)_*", &pushforward_pulled_back, d.degree)?;

    let e_pulled_back = if d.degree >= 2 {
        let e = summand_from(&pushforward)?.pullback(&profile)?;
        expect_trivialized("φ^*E_*", &e, d.degree - 1)?;
        Some(e)
    } else {
        None
    };

    let closure_self_pullback = pushforward_unchecked(&closure)?.pullback(&profile)?;
    expect_trivialized("φ^*(φ_* O_M)_*", &closure_self_pullback, closure.degree)?;

    Ok(ClosureCheck {
        closure_degree: closure.degree,
        pushforward_pulled_back,
        e_pulled_back,
        closure_self_pullback,
    })
}

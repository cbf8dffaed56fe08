//! Numerical calculus of parabolic bundles: ranks, degrees and weight
//! systems, with direct sums and pullback along a branched cover.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Weights in `[0, 1)`, strictly increasing, each with a positive
/// multiplicity. Weight `0` is stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<WeightEntry>", into = "Vec<WeightEntry>")]
pub struct WeightSystem {
    entries: Vec<(Rational, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: Rational,
    pub multiplicity: usize,
}

impl WeightSystem {
    /// Builds a system from arbitrary `(weight, multiplicity)` pairs,
    /// merging equal weights.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, usize)>,
    {
        let mut merged: BTreeMap<Rational, usize> = BTreeMap::new();
        for (w, m) in pairs {
            if w < Rational::ZERO || w >= Rational::ONE {
                return Err(Error::InvalidParabolic(format!(
                    "weight {w} outside [0, 1)"
                )));
            }
            if m == 0 {
                return Err(Error::InvalidParabolic(format!(
                    "weight {w} has zero multiplicity"
                )));
            }
            *merged.entry(w).or_default() += m;
        }
        Ok(WeightSystem {
            entries: merged.into_iter().collect(),
        })
    }

    /// Only weight `0`, with multiplicity `rank`.
    pub fn trivial(rank: usize) -> Self {
        WeightSystem {
            entries: vec![(Rational::ZERO, rank)],
        }
    }

    pub fn entries(&self) -> &[(Rational, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, weight: Rational) -> usize {
        self.entries
            .iter()
            .find(|(w, _)| *w == weight)
            .map_or(0, |&(_, m)| m)
    }

    /// `Σ weight · multiplicity`.
    pub fn weight_sum(&self) -> Rational {
        self.entries
            .iter()
            .map(|&(w, m)| w * Rational::from_int(m as i64))
            .sum()
    }

    /// True when every weight is zero.
    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|(w, _)| w.is_zero())
    }

    fn merged_with(&self, other: &WeightSystem) -> WeightSystem {
        WeightSystem::new(self.entries.iter().chain(&other.entries).copied())
            .expect("merging valid systems")
    }
}

impl TryFrom<Vec<WeightEntry>> for WeightSystem {
    type Error = Error;

    fn try_from(v: Vec<WeightEntry>) -> Result<Self> {
        if v.windows(2).any(|w| w[0].weight >= w[1].weight) {
            return Err(Error::InvalidParabolic(
                "weights must be strictly increasing".into(),
            ));
        }
        WeightSystem::new(v.into_iter().map(|e| (e.weight, e.multiplicity)))
    }
}

impl From<WeightSystem> for Vec<WeightEntry> {
    fn from(ws: WeightSystem) -> Self {
        ws.entries
            .into_iter()
            .map(|(weight, multiplicity)| WeightEntry {
                weight,
                multiplicity,
            })
            .collect()
    }
}

/// Rank, underlying degree and weight systems of a parabolic bundle.
///
/// Points whose system is entirely weight zero are dropped, so two values
/// compare equal exactly when they carry the same numerical data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ParabolicRepr", into = "ParabolicRepr")]
pub struct ParabolicData {
    rank: usize,
    underlying_degree: i64,
    points: BTreeMap<String, WeightSystem>,
}

#[derive(Serialize, Deserialize)]
struct ParabolicRepr {
    rank: usize,
    degree: i64,
    #[serde(default)]
    points: BTreeMap<String, WeightSystem>,
}

impl TryFrom<ParabolicRepr> for ParabolicData {
    type Error = Error;

    fn try_from(r: ParabolicRepr) -> Result<Self> {
        ParabolicData::new(r.rank, r.degree, r.points)
    }
}

impl From<ParabolicData> for ParabolicRepr {
    fn from(p: ParabolicData) -> Self {
        ParabolicRepr {
            rank: p.rank,
            degree: p.underlying_degree,
            points: p.points,
        }
    }
}

impl ParabolicData {
    pub fn new(
        rank: usize,
        underlying_degree: i64,
        points: BTreeMap<String, WeightSystem>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParabolic("rank must be positive".into()));
        }
        for (label, ws) in &points {
            if ws.total_multiplicity() != rank {
                return Err(Error::InvalidParabolic(format!(
                    "multiplicities at {label:?} sum to {}, expected rank {rank}",
                    ws.total_multiplicity()
                )));
            }
        }
        let points = points.into_iter().filter(|(_, ws)| !ws.is_trivial()).collect();
        Ok(ParabolicData {
            rank,
            underlying_degree,
            points,
        })
    }

    /// A bundle with no parabolic points.
    pub fn plain(rank: usize, degree: i64) -> Result<Self> {
        ParabolicData::new(rank, degree, BTreeMap::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn underlying_degree(&self) -> i64 {
        self.underlying_degree
    }

    pub fn points(&self) -> &BTreeMap<String, WeightSystem> {
        &self.points
    }

    /// Weight system at `label`; points not listed carry weight 0.
    pub fn weights_at(&self, label: &str) -> WeightSystem {
        self.points
            .get(label)
            .cloned()
            .unwrap_or_else(|| WeightSystem::trivial(self.rank))
    }

    pub fn is_weightless(&self) -> bool {
        self.points.is_empty()
    }

    pub fn par_weight(&self) -> Rational {
        self.points.values().map(WeightSystem::weight_sum).sum()
    }

    pub fn par_deg(&self) -> Rational {
        Rational::from_int(self.underlying_degree) + self.par_weight()
    }

    pub fn par_slope(&self) -> Rational {
        self.par_deg() / Rational::from_int(self.rank as i64)
    }

    pub fn direct_sum(&self, other: &ParabolicData) -> ParabolicData {
        let labels: BTreeSet<&String> = self.points.keys().chain(other.points.keys()).collect();
        let points = labels
            .into_iter()
            .map(|l| (l.clone(), self.weights_at(l).merged_with(&other.weights_at(l))))
            .collect();
        ParabolicData::new(
            self.rank + other.rank,
            self.underlying_degree + other.underlying_degree,
            points,
        )
        .expect("direct sum of valid data")
    }

    /// Pullback along a cover with the given fiber multiplicities.
    ///
    /// At a preimage of multiplicity `m`, weight `α` becomes `frac(m·α)` and
    /// the integral part `⌊m·α⌋` (times the entry's multiplicity) moves
    /// into the underlying degree.
    pub fn pullback(&self, profile: &PullbackProfile) -> Result<ParabolicData> {
        let mut degree = profile.cover_degree as i64 * self.underlying_degree;
        let mut points: BTreeMap<String, WeightSystem> = BTreeMap::new();
        for (label, ws) in &self.points {
            let fiber = profile
                .fibers
                .get(label)
                .ok_or_else(|| Error::MissingFiber(label.clone()))?;
            for pre in fiber {
                let m = Rational::from_int(pre.multiplicity as i64);
                let mut pairs = Vec::with_capacity(ws.entries.len());
                for &(alpha, d) in &ws.entries {
                    let scaled = m * alpha;
                    degree += d as i64 * scaled.floor();
                    pairs.push((scaled.fract(), d));
                }
                let pulled = WeightSystem::new(pairs)?;
                if points.insert(pre.label.clone(), pulled).is_some() {
                    return Err(Error::InvalidParabolic(format!(
                        "preimage label {:?} lies over two parabolic points",
                        pre.label
                    )));
                }
            }
        }
        ParabolicData::new(self.rank, degree, points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preimage {
    pub label: String,
    pub multiplicity: usize,
}

/// Degree of a cover and the multiplicities of the points over each
/// marked point of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct PullbackProfile {
    cover_degree: usize,
    fibers: BTreeMap<String, Vec<Preimage>>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    cover_degree: usize,
    fibers: BTreeMap<String, Vec<Preimage>>,
}

impl TryFrom<ProfileRepr> for PullbackProfile {
    type Error = Error;
    fn try_from(r: ProfileRepr) -> Result<Self> {
        PullbackProfile::new(r.cover_degree, r.fibers)
    }
}

impl From<PullbackProfile> for ProfileRepr {
    fn from(p: PullbackProfile) -> Self {
        ProfileRepr {
            cover_degree: p.cover_degree,
            fibers: p.fibers,
        }
    }
}

impl PullbackProfile {
    pub fn new(cover_degree: usize, fibers: BTreeMap<String, Vec<Preimage>>) -> Result<Self> {
        if cover_degree == 0 {
            return Err(Error::InvalidParabolic(
                "cover degree must be positive".into(),
            ));
        }
        for (label, fiber) in &fibers {
            if fiber.iter().any(|p| p.multiplicity == 0) {
                return Err(Error::InvalidParabolic(format!(
                    "zero multiplicity over {label:?}"
                )));
            }
            let total: usize = fiber.iter().map(|p| p.multiplicity).sum();
            if total != cover_degree {
                return Err(Error::InvalidParabolic(format!(
                    "multiplicities over {label:?} sum to {total}, expected {cover_degree}"
                )));
            }
        }
        Ok(PullbackProfile {
            cover_degree,
            fibers,
        })
    }

    pub fn cover_degree(&self) -> usize {
        self.cover_degree
    }

    pub fn fibers(&self) -> &BTreeMap<String, Vec<Preimage>> {
        &self.fibers
    }

    /// Profile of the composite: first `self`, then `next` on top of it.
    /// Multiplicities multiply along matching points.
    pub fn then(&self, next: &PullbackProfile) -> Result<PullbackProfile> {
        let mut fibers = BTreeMap::new();
        for (label, fiber) in &self.fibers {
            let mut composed = Vec::new();
            for pre in fiber {
                let upper = next
                    .fibers
                    .get(&pre.label)
                    .ok_or_else(|| Error::MissingFiber(pre.label.clone()))?;
                composed.extend(upper.iter().map(|u| Preimage {
                    label: u.label.clone(),
                    multiplicity: u.multiplicity * pre.multiplicity,
                }));
            }
            fibers.insert(label.clone(), composed);
        }
        PullbackProfile::new(self.cover_degree * next.cover_degree, fibers)
    }
}

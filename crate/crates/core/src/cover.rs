//! Branched covers of curves presented by monodromy.
//!
//! A degree `r` cover of a genus `g` curve branched over `b` points is
//! encoded by handle pairs `(a_j, b_j)` and local monodromies `σ_i` in
//! `S_r`. The product relation is read left to right, commutators first:
//!
//! ```text
//! [a_1, b_1] ··· [a_g, b_g] · σ_1 ··· σ_b = id,   [a, b] = a b a^-1 b^-1
//! ```
//!
//! where `x · y` applies `x` first.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{BlockSystem, GeneratedGroup};
use crate::perm::{commutator, word_product, Perm};

/// Stated in violation messages so users can reorder their input.
pub const PRODUCT_CONVENTION: &str =
    "commutators first, then branch in listed order, composed left to right";

/// Stated in violation messages for the characteristic check.
pub const TAMENESS_HYPOTHESIS: &str = "Char(k) > degree(f)";

/// Default cap on `|Γ|` for Galois-closure constructions.
pub const DEFAULT_CLOSURE_CAP: usize = 10080;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: String,
    pub sigma: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDatum {
    pub base_genus: usize,
    pub degree: usize,
    pub characteristic: u64,
    pub handles: Vec<(Perm, Perm)>,
    pub branch: Vec<BranchPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ProductRelation,
    NotTransitive,
    Tameness,
    DuplicateLabel,
    TrivialBranch,
    GenusInconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidCover(
                self.violations.into_iter().map(|v| v.message).collect(),
            ))
        }
    }
}

impl CoverDatum {
    /// Checks that every permutation has degree `degree`. The remaining
    /// invariants are reported by [`CoverDatum::validate`].
    pub fn new(
        base_genus: usize,
        degree: usize,
        characteristic: u64,
        handles: Vec<(Perm, Perm)>,
        branch: Vec<BranchPoint>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("cover degree must be positive".into()));
        }
        if handles.len() != base_genus {
            return Err(Error::Precondition(format!(
                "base genus {base_genus} needs {base_genus} handle pairs, got {}",
                handles.len()
            )));
        }
        let perms = handles
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(branch.iter().map(|bp| &bp.sigma));
        for p in perms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
        }
        Ok(CoverDatum {
            base_genus,
            degree,
            characteristic,
            handles,
            branch,
        })
    }

    /// Handles then branch permutations, in presentation order.
    pub fn generators(&self) -> Vec<Perm> {
        self.handles
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .chain(self.branch.iter().map(|bp| bp.sigma.clone()))
            .collect()
    }

    pub fn branch_perms(&self) -> Vec<Perm> {
        self.branch.iter().map(|bp| bp.sigma.clone()).collect()
    }

    pub fn is_etale(&self) -> bool {
        self.branch.is_empty()
    }

    /// Left-hand side of the product relation.
    pub fn relation_product(&self) -> Perm {
        let commutators: Vec<Perm> = self.handles.iter().map(|(a, b)| commutator(a, b)).collect();
        word_product(
            self.degree,
            commutators.iter().chain(self.branch.iter().map(|bp| &bp.sigma)),
        )
    }

    /// `Σ (m_x - 1)` over all ramification points.
    pub fn total_ramification(&self) -> usize {
        self.branch.iter().map(|bp| bp.sigma.ramification()).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |kind, message: String| violations.push(Violation { kind, message });

        let product = self.relation_product();
        if !product.is_identity() {
            push(
                ViolationKind::ProductRelation,
                format!(
                    "product relation fails: [a_1,b_1]···[a_g,b_g]·σ_1···σ_b = {product}, \
                     expected identity ({PRODUCT_CONVENTION})"
                ),
            );
        }

        let group = self.monodromy_group();
        if !group.is_transitive() {
            push(
                ViolationKind::NotTransitive,
                format!(
                    "not transitive: monodromy orbits {:?} (the source curve would be disconnected)",
                    group.orbits()
                ),
            );
        }

        if let Some(reason) = self.tameness_failure(&group) {
            push(ViolationKind::Tameness, reason);
        }

        let mut labels = HashSet::new();
        for bp in &self.branch {
            if !labels.insert(bp.label.as_str()) {
                push(
                    ViolationKind::DuplicateLabel,
                    format!("branch label {:?} is used more than once", bp.label),
                );
            }
            if bp.sigma.is_identity() {
                push(
                    ViolationKind::TrivialBranch,
                    format!("branch point {:?} has trivial monodromy", bp.label),
                );
            }
        }

        match self.genus_x() {
            Ok(_) => {}
            Err(e) => push(ViolationKind::GenusInconsistent, e.to_string()),
        }

        ValidationReport { violations }
    }

    /// `None` when the characteristic is admissible. A Galois (regular)
    /// datum only needs `p ∤ |Γ| = r`.
    fn tameness_failure(&self, group: &GeneratedGroup) -> Option<String> {
        let p = self.characteristic;
        if p == 0 {
            return None;
        }
        if !is_prime(p) {
            return Some(format!("characteristic {p} is neither 0 nor a prime"));
        }
        if p > self.degree as u64 {
            return None;
        }
        if !(self.degree as u64).is_multiple_of(p) && group.is_regular() {
            return None;
        }
        Some(format!(
            "characteristic {p} violates the standing hypothesis {TAMENESS_HYPOTHESIS} (degree {})",
            self.degree
        ))
    }

    pub fn monodromy_group(&self) -> GeneratedGroup {
        let gens = self.generators();
        if gens.is_empty() {
            GeneratedGroup::trivial(self.degree)
        } else {
            GeneratedGroup::new(gens).expect("degrees checked at construction")
        }
    }

    /// Cycle type of each branch permutation, keyed by label.
    pub fn ramification_profile(&self) -> BTreeMap<String, Vec<usize>> {
        self.branch
            .iter()
            .map(|bp| (bp.label.clone(), bp.sigma.cycle_type()))
            .collect()
    }

    /// Genus of the source from `2g_X - 2 = r(2g_Y - 2) + Σ (m_x - 1)`.
    pub fn genus_x(&self) -> Result<usize> {
        let r = self.degree as i64;
        let twice_minus_two = r * (2 * self.base_genus as i64 - 2) + self.total_ramification() as i64;
        if twice_minus_two % 2 != 0 {
            return Err(Error::IdentityViolated(format!(
                "Riemann–Hurwitz gives odd 2g_X - 2 = {twice_minus_two}"
            )));
        }
        let g = twice_minus_two / 2 + 1;
        if g < 0 {
            return Err(Error::IdentityViolated(format!(
                "Riemann–Hurwitz gives negative genus {g}"
            )));
        }
        Ok(g as usize)
    }

    /// `degree(f_* O_X)`, computed as both `r(g_Y - 1) - g_X + 1` and
    /// `-Σ (m_x - 1) / 2`; the two must agree.
    pub fn degree_pushforward(&self) -> Result<i64> {
        let gx = self.genus_x()? as i64;
        let via_riemann_roch = self.degree as i64 * (self.base_genus as i64 - 1) - gx + 1;
        let ramification = self.total_ramification() as i64;
        if ramification % 2 != 0 {
            return Err(Error::IdentityViolated(format!(
                "total ramification {ramification} is odd"
            )));
        }
        let via_ramification = -ramification / 2;
        if via_riemann_roch != via_ramification {
            return Err(Error::IdentityViolated(format!(
                "degree(f_* O_X): r(g_Y-1)-g_X+1 = {via_riemann_roch} but -Σ(m_x-1)/2 = {via_ramification}"
            )));
        }
        Ok(via_riemann_roch)
    }

    /// Every branch permutation is a single transposition. Vacuously true
    /// for an étale datum; see [`CoverDatum::is_etale`].
    pub fn is_morse(&self) -> bool {
        self.branch.iter().all(|bp| {
            let ct = bp.sigma.cycle_type();
            ct.first() == Some(&2) && ct.iter().skip(1).all(|&c| c == 1)
        })
    }

    /// The normal closure of the local monodromies is transitive, i.e. no
    /// nontrivial intermediate cover is étale.
    pub fn is_genuinely_ramified(&self) -> bool {
        let group = self.monodromy_group();
        group
            .normal_closure(&self.branch_perms())
            .expect("branch permutations lie in the monodromy group")
            .is_transitive()
    }

    /// Block systems of the monodromy action with `1 < #blocks < r`.
    pub fn intermediate_factorizations(&self) -> Result<Vec<BlockSystem>> {
        if self.degree < 2 {
            return Ok(Vec::new());
        }
        self.monodromy_group().nontrivial_block_systems()
    }

    /// The Galois closure as a cover of the same base: every generator acts
    /// by right multiplication on the sorted element list of `Γ`.
    pub fn galois_closure(&self, cap: usize) -> Result<CoverDatum> {
        let group = self.monodromy_group();
        let elements = group.elements(cap)?;
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let regular = |s: &Perm| -> Perm {
            let images = elements.iter().map(|g| index[&g.then(s)]).collect();
            Perm::from_zero_based(images)
        };
        let handles = self
            .handles
            .iter()
            .map(|(a, b)| (regular(a), regular(b)))
            .collect();
        let branch = self
            .branch
            .iter()
            .map(|bp| BranchPoint {
                label: bp.label.clone(),
                sigma: regular(&bp.sigma),
            })
            .collect();
        CoverDatum::new(
            self.base_genus,
            elements.len(),
            self.characteristic,
            handles,
            branch,
        )
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn perm(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    pub fn datum(genus: usize, n: usize, handles: &[(&str, &str)], branch: &[&str]) -> CoverDatum {
        CoverDatum::new(
            genus,
            n,
            0,
            handles.iter().map(|(a, b)| (perm(n, a), perm(n, b))).collect(),
            branch
                .iter()
                .enumerate()
                .map(|(i, s)| BranchPoint {
                    label: format!("x{}", i + 1),
                    sigma: perm(n, s),
                })
                .collect(),
        )
        .unwrap()
    }

    /// Degree 3 over P^1, four simple branch points, monodromy S_3.
    pub fn cover_a() -> CoverDatum {
        datum(0, 3, &[], &["(1 2)", "(1 2)", "(1 3)", "(1 3)"])
    }

    /// Degree 4 over P^1, two totally ramified points, monodromy C_4.
    pub fn cover_b() -> CoverDatum {
        datum(0, 4, &[], &["(1 2 3 4)", "(1 4 3 2)"])
    }

    /// Étale degree 3 over an elliptic curve, monodromy C_3.
    pub fn etale_c3() -> CoverDatum {
        datum(1, 3, &[("(1 2 3)", "()")], &[])
    }
}

//! Enumeration of Hurwitz tuples up to simultaneous conjugation.
//!
//! A tuple is `(a_1, b_1, ..., a_g, b_g, σ_1, ..., σ_b)` with each `σ_i` in
//! a prescribed conjugacy class, satisfying the product relation of
//! [`crate::cover`] and generating a transitive group.
//!
//! Classes are represented by a canonical form: for every start point, the
//! points are relabelled in breadth-first order (generators in tuple order),
//! and the lexicographically least relabelled tuple is kept. Two transitive
//! tuples are conjugate exactly when their canonical forms agree.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cover::{BranchPoint, CoverDatum};
use crate::error::{Error, Result};
use crate::perm::{commutator, Perm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_degree: usize,
    pub max_branch_points: usize,
    pub max_base_genus: usize,
    /// Upper bound on the number of tuples visited by the search.
    pub max_search: u128,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_degree: 8,
            max_branch_points: 6,
            max_base_genus: 2,
            max_search: 50_000_000,
        }
    }
}

/// All partitions of `n`, parts in descending order, listed in reverse
/// lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every permutation of `{1..n}`, in lexicographic order of image arrays.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm::from_zero_based(current.clone())];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Perm::from_zero_based(current.clone()));
    }
    out
}

/// Permutation with the given cycle type, cycles laid out on consecutive points.
pub fn class_representative(cycle_type: &[usize]) -> Perm {
    let n: usize = cycle_type.iter().sum();
    let mut cycles = Vec::new();
    let mut next = 1;
    for &len in cycle_type {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Perm::from_cycles(n, &cycles).expect("consecutive cycles")
}

/// The conjugacy class of `S_n` with the given cycle type.
pub fn conjugacy_class(cycle_type: &[usize]) -> Vec<Perm> {
    let n: usize = cycle_type.iter().sum();
    let mut wanted = cycle_type.to_vec();
    wanted.sort_unstable_by(|a, b| b.cmp(a));
    all_perms(n)
        .into_iter()
        .filter(|p| p.cycle_type() == wanted)
        .collect()
}

fn class_size(cycle_type: &[usize]) -> u128 {
    let n: usize = cycle_type.iter().sum();
    let mut size: u128 = (1..=n as u128).product();
    let mut counts = std::collections::BTreeMap::new();
    for &c in cycle_type {
        *counts.entry(c).or_insert(0u32) += 1;
        size /= c as u128;
    }
    for (_, k) in counts {
        size /= (1..=k as u128).product::<u128>();
    }
    size
}

/// True when the permutations generate a transitive group on `{1..n}`.
pub fn tuple_is_transitive(degree: usize, tuple: &[Perm]) -> bool {
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for g in tuple {
            let q = g.at(p);
            if !seen[q] {
                seen[q] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count == degree
}

/// Canonical representative of the conjugacy class of a transitive tuple.
pub fn canonical_form(degree: usize, tuple: &[Perm]) -> Vec<Perm> {
    let mut best: Option<Vec<Perm>> = None;
    let mut label = vec![usize::MAX; degree];
    let mut order = Vec::with_capacity(degree);
    for start in 0..degree {
        label.fill(usize::MAX);
        order.clear();
        label[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for g in tuple {
                let q = g.at(p);
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
            i += 1;
        }
        debug_assert_eq!(order.len(), degree, "canonical_form needs a transitive tuple");
        let relabel = Perm::from_zero_based(label.clone());
        let candidate: Vec<Perm> = tuple.iter().map(|g| g.conjugate_by(&relabel)).collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.unwrap_or_default()
}

enum Slot {
    HandleA,
    HandleB,
    Branch(usize),
}

struct Search<'a> {
    degree: usize,
    slots: Vec<Slot>,
    domains: Vec<Vec<Perm>>,
    /// Cycle type the determined last branch permutation must have.
    last_type: Option<&'a [usize]>,
}

impl Search<'_> {
    fn run_from(&self, prefix: &mut Vec<Perm>, product: Perm, out: &mut BTreeSet<Vec<Perm>>) {
        let k = prefix.len();
        let n = self.slots.len();
        if k == n {
            if product.is_identity() {
                self.accept(prefix, out);
            }
            return;
        }
        if k == n - 1 {
            if let Some(want) = self.last_type {
                let last = product.inverse();
                if last.cycle_type() == want {
                    prefix.push(last);
                    self.accept(prefix, out);
                    prefix.pop();
                }
                return;
            }
        }
        for candidate in &self.domains[k] {
            let next = match self.slots[k] {
                Slot::HandleA => product.clone(),
                Slot::HandleB => product.then(&commutator(&prefix[k - 1], candidate)),
                Slot::Branch(_) => product.then(candidate),
            };
            prefix.push(candidate.clone());
            self.run_from(prefix, next, out);
            prefix.pop();
        }
    }

    fn accept(&self, tuple: &[Perm], out: &mut BTreeSet<Vec<Perm>>) {
        if tuple_is_transitive(self.degree, tuple) {
            out.insert(canonical_form(self.degree, tuple));
        }
    }
}

fn check_types(degree: usize, cycle_types: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    cycle_types
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.sort_unstable_by(|a, b| b.cmp(a));
            if t.contains(&0) || t.iter().sum::<usize>() != degree {
                return Err(Error::Precondition(format!(
                    "cycle type {t:?} is not a partition of {degree}"
                )));
            }
            if t.iter().all(|&c| c == 1) {
                return Err(Error::Precondition(
                    "branch permutations must be non-trivial".into(),
                ));
            }
            Ok(t)
        })
        .collect()
}

fn cap(name: &'static str, limit: usize, requested: usize) -> Result<()> {
    if requested > limit {
        return Err(Error::CapExceeded {
            cap: name,
            limit: limit as u128,
            requested: requested as u128,
        });
    }
    Ok(())
}

/// All transitive tuples with the given branch cycle types satisfying the
/// product relation, one canonical representative per conjugacy class,
/// sorted by canonical form. Branch points are labelled `x1, x2, ...`.
pub fn enumerate_hurwitz(
    base_genus: usize,
    degree: usize,
    cycle_types: &[Vec<usize>],
    caps: &EnumerationCaps,
) -> Result<Vec<CoverDatum>> {
    cap("degree", caps.max_degree, degree)?;
    cap("branch points", caps.max_branch_points, cycle_types.len())?;
    cap("base genus", caps.max_base_genus, base_genus)?;
    if degree == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let types = check_types(degree, cycle_types)?;

    let mut slots = Vec::new();
    for _ in 0..base_genus {
        slots.push(Slot::HandleA);
        slots.push(Slot::HandleB);
    }
    slots.extend((0..types.len()).map(Slot::Branch));
    let n = slots.len();
    if n == 0 {
        return Ok(if degree == 1 {
            vec![to_datum(0, 1, &[])?]
        } else {
            Vec::new()
        });
    }

    // Conjugation moves the first slot to a fixed representative of its class.
    let whole_group = || all_perms(degree);
    let first_domain = match slots[0] {
        Slot::HandleA => partitions(degree).iter().map(|p| class_representative(p)).collect(),
        Slot::Branch(i) => vec![class_representative(&types[i])],
        Slot::HandleB => unreachable!(),
    };
    let last_type = match slots[n - 1] {
        Slot::Branch(i) if n >= 2 => Some(types[i].as_slice()),
        _ => None,
    };

    let mut search_size: u128 = first_domain.len() as u128;
    let mut domains: Vec<Vec<Perm>> = vec![first_domain];
    for (k, slot) in slots.iter().enumerate().skip(1) {
        if k == n - 1 && last_type.is_some() {
            domains.push(Vec::new());
            continue;
        }
        let size = match slot {
            Slot::Branch(i) => class_size(&types[*i]),
            _ => (1..=degree as u128).product(),
        };
        search_size = search_size.saturating_mul(size);
        if search_size > caps.max_search {
            return Err(Error::CapExceeded {
                cap: "search size",
                limit: caps.max_search,
                requested: search_size,
            });
        }
        domains.push(match slot {
            Slot::Branch(i) => conjugacy_class(&types[*i]),
            _ => whole_group(),
        });
    }

    let search = Search {
        degree,
        slots,
        domains,
        last_type,
    };

    let id = Perm::identity(degree);
    let seeds: Vec<Perm> = search.domains[0].clone();
    let found: BTreeSet<Vec<Perm>> = seeds
        .par_iter()
        .map(|first| {
            let mut out = BTreeSet::new();
            let product = match search.slots[0] {
                Slot::Branch(_) => id.then(first),
                _ => id.clone(),
            };
            if n == 1 {
                if product.is_identity() {
                    search.accept(std::slice::from_ref(first), &mut out);
                }
            } else {
                search.run_from(&mut vec![first.clone()], product, &mut out);
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });

    found
        .into_iter()
        .map(|tuple| to_datum(base_genus, degree, &tuple))
        .collect()
}

fn to_datum(base_genus: usize, degree: usize, tuple: &[Perm]) -> Result<CoverDatum> {
    let handles = tuple[..2 * base_genus]
        .chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();
    let branch = tuple[2 * base_genus..]
        .iter()
        .enumerate()
        .map(|(i, s)| BranchPoint {
            label: format!("x{}", i + 1),
            sigma: s.clone(),
        })
        .collect();
    CoverDatum::new(base_genus, degree, 0, handles, branch)
}

/// Flattens a datum back to its tuple `(a_1, b_1, ..., σ_1, ...)`.
pub fn datum_tuple(d: &CoverDatum) -> Vec<Perm> {
    d.generators()
}

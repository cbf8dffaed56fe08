//! Permutations of `{1..n}`.
//!
//! Points are 1-based in every public signature and in the text formats;
//! the image table is stored 0-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection of `{1..degree}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from a 1-based image array.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPerm("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::InvalidPerm(format!(
                    "image {im} out of range 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[im - 1], true) {
                return Err(Error::InvalidPerm(format!("image {im} repeated")));
            }
            zero_based.push(im - 1);
        }
        Ok(Perm { images: zero_based })
    }

    /// Builds a permutation from 1-based cycles. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPerm("degree must be at least 1".into()));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPerm(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::InvalidPerm(format!(
                        "point {p} appears in more than one place"
                    )));
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Perm::from_cycles(degree, &cycles)
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&images));
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    #[inline]
    pub(crate) fn at(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `p.compose(q)` applies `q` first, then `p`.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    pub(crate) fn compose_unchecked(&self, q: &Perm) -> Perm {
        Perm {
            images: q.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Product in left-to-right order: apply `self`, then `next`.
    pub fn then(&self, next: &Perm) -> Perm {
        next.compose_unchecked(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `g * self * g^-1`, i.e. the relabelling of `self` along `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i]] = g.images[j];
        }
        Perm { images: out }
    }

    /// Disjoint cycles as 1-based point lists, fixed points included,
    /// each starting at its least point and ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        if (self.degree() - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .into_iter()
            .fold(1, num_integer::lcm)
    }

    /// Sum of `(len - 1)` over all cycles.
    pub fn ramification(&self) -> usize {
        self.degree() - self.num_cycles()
    }
}

fn is_bijection(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&i| i < images.len() && !std::mem::replace(&mut seen[i], true))
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let err = |msg: &str| Error::Parse(format!("cycle notation {text:?}: {msg}"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty string"));
    }
    while !rest.is_empty() {
        rest = rest
            .strip_prefix('(')
            .ok_or_else(|| err("expected '('"))?;
        let close = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let body = &rest[..close];
        if body.contains('(') {
            return Err(err("nested '('"));
        }
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err("bad point")))
            .collect::<Result<Vec<_>>>()?;
        if points.len() > 1 {
            cycles.push(points);
        } else if points.len() == 1 && points[0] == 0 {
            return Err(err("points are 1-based"));
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation whose degree is the largest point mentioned.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycle_list(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        Perm::from_cycles(degree, &cycles)
    }
}

/// Left-to-right product of a word: the first factor is applied first.
pub fn word_product<'a, I>(degree: usize, word: I) -> Perm
where
    I: IntoIterator<Item = &'a Perm>,
{
    word.into_iter()
        .fold(Perm::identity(degree), |acc, w| acc.then(w))
}

/// Commutator `a b a^-1 b^-1`, read left to right.
pub fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.then(b).then(&a.inverse()).then(&b.inverse())
}

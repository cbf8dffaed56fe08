//! Finitely generated permutation groups backed by a deterministic
//! Schreier–Sims base and strong generating set.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A partition of `{1..n}` into blocks, each block sorted and the blocks
/// ordered by their least point.
pub type BlockSystem = Vec<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupClass {
    Symmetric,
    Alternating,
    Neither,
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point to `p`, for `p` in the basic orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, gens: Vec<Perm>, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens,
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut t: Vec<Option<Perm>> = vec![None; degree];
        t[self.base] = Some(Perm::identity(degree));
        let mut queue = VecDeque::from([self.base]);
        while let Some(p) = queue.pop_front() {
            for s in &self.gens {
                let q = s.at(p);
                if t[q].is_none() {
                    let u = s.compose_unchecked(t[p].as_ref().unwrap());
                    t[q] = Some(u);
                    queue.push_back(q);
                }
            }
        }
        self.transversal = t;
    }

    fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversal
            .iter()
            .enumerate()
            .filter_map(|(p, u)| u.as_ref().map(|_| p))
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|u| u.is_some()).count()
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Deterministic Schreier–Sims. The base starts with `prefix` (0-based)
    /// and is extended by least moved points as needed.
    fn build(degree: usize, generators: &[Perm], prefix: &[usize]) -> Self {
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut levels: Vec<Level> = Vec::new();
        for (i, &b) in prefix.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| prefix[..i].iter().all(|&c| g.at(c) == c))
                .cloned()
                .collect();
            levels.push(Level::new(b, level_gens, degree));
        }
        if levels.is_empty() {
            if let Some(b) = gens.first().and_then(first_moved) {
                levels.push(Level::new(b, gens.clone(), degree));
            }
        }
        let mut bsgs = Bsgs { degree, levels };
        // Levels past the prefix may still miss generators that fix the prefix.
        for g in &gens {
            if let Some((residue, j)) = bsgs.sift(g, 0) {
                bsgs.insert(residue, 0, j);
            }
        }
        bsgs.complete();
        bsgs
    }

    fn insert(&mut self, residue: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = first_moved(&residue).expect("non-identity residue");
            self.levels.push(Level::new(b, Vec::new(), self.degree));
        }
        for l in from..=to {
            if !self.levels[l].gens.contains(&residue) {
                self.levels[l].gens.push(residue.clone());
                self.levels[l].rebuild(self.degree);
            }
        }
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.find_missing_schreier_generator(i) {
                Some((residue, j)) => {
                    self.insert(residue, i + 1, j);
                    i = j;
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }

    fn find_missing_schreier_generator(&self, i: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[i];
        for p in level.orbit() {
            let up = level.transversal[p].as_ref().unwrap();
            for s in &level.gens {
                let q = s.at(p);
                let uq = level.transversal[q].as_ref().unwrap();
                let h = uq.inverse().compose_unchecked(&s.compose_unchecked(up));
                if h.is_identity() {
                    continue;
                }
                if let Some(found) = self.sift(&h, i + 1) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Strips `g` through levels `start..`. Returns the non-identity residue
    /// and the level where sifting stopped, or `None` if `g` sifts to identity.
    fn sift(&self, g: &Perm, start: usize) -> Option<(Perm, usize)> {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let p = h.at(level.base);
            match &level.transversal[p] {
                Some(u) => h = u.inverse().compose_unchecked(&h),
                None => return Some((h, l)),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.levels.len()))
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit_len()))
    }
}

fn first_moved(g: &Perm) -> Option<usize> {
    (0..g.degree()).find(|&i| g.at(i) != i)
}

/// A permutation group given by generators, with a lazily built BSGS.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Perm>,
    bsgs: OnceLock<Bsgs>,
}

impl GeneratedGroup {
    pub fn new(generators: Vec<Perm>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Perm::degree)
            .ok_or_else(|| Error::Precondition("a group needs at least one generator".into()))?;
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        Ok(GeneratedGroup {
            degree,
            generators,
            bsgs: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        GeneratedGroup::new(vec![Perm::identity(degree)]).expect("one generator")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    /// Order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.bsgs().sift(g, 0).is_none()
    }

    /// Base points (1-based) of the cached BSGS.
    pub fn base(&self) -> Vec<usize> {
        self.bsgs().levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.bsgs()
            .levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    fn check_point(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(point - 1)
    }

    /// Orbit of `point` (1-based), as a sorted set.
    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>> {
        let start = self.check_point(point)?;
        Ok(self.orbit0(start).into_iter().map(|p| p + 1).collect())
    }

    fn orbit0(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[start] = true;
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let p = out[i];
            for g in &self.generators {
                let q = g.at(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                }
            }
            i += 1;
        }
        out
    }

    /// All orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orbit = self.orbit0(p);
            for &q in &orbit {
                seen[q] = true;
            }
            orbit.sort_unstable();
            out.push(orbit.into_iter().map(|q| q + 1).collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit0(0).len() == self.degree
    }

    /// Stabilizer of `point` (1-based), generated by the strong generators
    /// of a BSGS whose base starts at `point`.
    pub fn stabilizer(&self, point: usize) -> Result<GeneratedGroup> {
        let p = self.check_point(point)?;
        let bsgs = Bsgs::build(self.degree, &self.generators, &[p]);
        let gens = bsgs
            .levels
            .get(1)
            .map(|l| l.gens.clone())
            .filter(|g| !g.is_empty())
            .unwrap_or_else(|| vec![Perm::identity(self.degree)]);
        let stab = GeneratedGroup::new(gens)?;
        // The tail of the chain is already a BSGS for the stabilizer.
        let tail = Bsgs {
            degree: self.degree,
            levels: bsgs.levels[1.min(bsgs.levels.len())..].to_vec(),
        };
        let _ = stab.bsgs.set(tail);
        Ok(stab)
    }

    /// True when the group is transitive and only the identity fixes a point,
    /// i.e. the order equals the degree. Runs in `O(n^2)` time and `O(n)`
    /// memory, so it stays usable for regular actions of large degree.
    pub fn is_regular(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let n = self.degree;
        // Schreier tree rooted at 0: parent[x] and the generator reaching x.
        let mut order = vec![0usize];
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for (k, g) in self.generators.iter().enumerate() {
                let q = g.at(p);
                if !seen[q] {
                    seen[q] = true;
                    via[q] = Some((p, k));
                    order.push(q);
                }
            }
            i += 1;
        }
        // Regular iff every Schreier generator u_{s(x)}^-1 s u_x is trivial,
        // checked one column y at a time: s(u_x(y)) == u_{s(x)}(y).
        let mut column = vec![0usize; n];
        for y in 0..n {
            for &x in &order {
                column[x] = match via[x] {
                    None => y,
                    Some((parent, k)) => self.generators[k].at(column[parent]),
                };
            }
            for g in &self.generators {
                if (0..n).any(|x| g.at(column[x]) != column[g.at(x)]) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest `k` such that the action is `k`-transitive (0 if intransitive).
    pub fn transitivity_degree(&self) -> usize {
        if !self.is_transitive() {
            return 0;
        }
        let prefix: Vec<usize> = (0..self.degree).collect();
        let bsgs = Bsgs::build(self.degree, &self.generators, &prefix);
        bsgs.levels
            .iter()
            .enumerate()
            .take_while(|(i, l)| l.orbit_len() == self.degree - i)
            .count()
    }

    pub fn is_two_transitive(&self) -> Result<bool> {
        if self.degree < 2 {
            return Err(Error::Precondition(
                "2-transitivity needs degree at least 2".into(),
            ));
        }
        if !self.is_transitive() {
            return Ok(false);
        }
        let stab = self.stabilizer(1)?;
        Ok(stab.orbit0(1).len() == self.degree - 1)
    }

    /// Finest `G`-invariant partition with `a` and `b` in one block
    /// (Atkinson's union–find closure).
    pub fn minimal_block_system(&self, a: usize, b: usize) -> Result<BlockSystem> {
        let a0 = self.check_point(a)?;
        let b0 = self.check_point(b)?;
        if a0 == b0 {
            return Err(Error::Precondition("block seeds must differ".into()));
        }
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut uf = UnionFind::new(self.degree);
        uf.union(a0, b0);
        let mut queue = vec![(a0, b0)];
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let (rx, ry) = (uf.find(g.at(x)), uf.find(g.at(y)));
                if rx != ry {
                    uf.union(rx, ry);
                    queue.push((rx, ry));
                }
            }
        }
        Ok(uf.blocks())
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.nontrivial_block_systems()?.is_empty())
    }

    /// Distinct minimal block systems `minimal_block_system(1, b)` over all
    /// `b != 1` that are not the single full block.
    pub fn nontrivial_block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut found: Vec<BlockSystem> = Vec::new();
        for b in 2..=self.degree {
            let sys = self.minimal_block_system(1, b)?;
            if sys.len() > 1 && !found.contains(&sys) {
                found.push(sys);
            }
        }
        Ok(found)
    }

    /// Smallest subgroup containing `elems` and normalised by `self`.
    pub fn normal_closure(&self, elems: &[Perm]) -> Result<GeneratedGroup> {
        for e in elems {
            if e.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, e.degree()));
            }
            if !self.contains(e) {
                return Err(Error::NotInGroup(e.to_string()));
            }
        }
        let mut gens: Vec<Perm> = elems.iter().filter(|e| !e.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok(GeneratedGroup::trivial(self.degree));
        }
        let mut closure = GeneratedGroup::new(gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            let n = gens[i].clone();
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if !closure.contains(&c) {
                    gens.push(c);
                    closure = GeneratedGroup::new(gens.clone())?;
                }
            }
            i += 1;
        }
        Ok(closure)
    }

    pub fn symmetric_or_alternating(&self) -> GroupClass {
        let n = self.degree;
        let full = factorial(n);
        let order = self.order();
        if order == full {
            GroupClass::Symmetric
        } else if n >= 2
            && order * 2u32 == full
            && self.generators.iter().all(|g| g.sign() == 1)
        {
            GroupClass::Alternating
        } else {
            GroupClass::Neither
        }
    }

    /// Every element, sorted by image array. Fails if more than `cap` exist.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                cap: "group enumeration",
                limit: cap as u128,
                requested: u128::try_from(order).unwrap_or(u128::MAX),
            });
        }
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn blocks(&mut self) -> BlockSystem {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x + 1);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

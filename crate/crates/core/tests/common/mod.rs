#![allow(dead_code)]

use std::collections::BTreeMap;

use covpar_core::cover::BranchPoint;
use covpar_core::{CoverDatum, ParabolicData, Perm, Preimage, PullbackProfile, Rational, WeightSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn perm(n: usize, s: &str) -> Perm {
    Perm::parse_cycles(n, s).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Perm::from_images(&v).unwrap()
}

/// Where corpus permutations are drawn from. The smaller ambients keep the
/// Galois closure under the enumeration cap.
#[derive(Clone, Copy, Debug)]
enum Ambient {
    Symmetric,
    Cyclic,
    Dihedral,
    /// Permutations preserving the blocks {1,2}, {3,4}, ...
    PairBlocks,
}

fn sample(rng: &mut impl Rng, ambient: Ambient, n: usize) -> Perm {
    match ambient {
        Ambient::Symmetric => random_perm(rng, n),
        Ambient::Cyclic => {
            let k = rng.gen_range(0..n);
            Perm::from_images(&(0..n).map(|i| (i + k) % n + 1).collect::<Vec<_>>()).unwrap()
        }
        Ambient::Dihedral => {
            let k = rng.gen_range(0..n);
            let flip = rng.gen_bool(0.5);
            let images: Vec<usize> = (0..n)
                .map(|i| {
                    let j = if flip { (n - i) % n } else { i };
                    (j + k) % n + 1
                })
                .collect();
            Perm::from_images(&images).unwrap()
        }
        Ambient::PairBlocks => {
            let m = n / 2;
            let mut blocks: Vec<usize> = (0..m).collect();
            blocks.shuffle(rng);
            let mut images = vec![0; n];
            for (b, &target) in blocks.iter().enumerate() {
                let swap = rng.gen_bool(0.5);
                let (x, y) = if swap { (1, 0) } else { (0, 1) };
                images[2 * b] = 2 * target + x + 1;
                images[2 * b + 1] = 2 * target + y + 1;
            }
            Perm::from_images(&images).unwrap()
        }
    }
}

fn sample_nontrivial(rng: &mut impl Rng, ambient: Ambient, n: usize) -> Perm {
    loop {
        let p = sample(rng, ambient, n);
        if !p.is_identity() {
            return p;
        }
    }
}

/// One random valid datum, or `None` if the draw was rejected.
pub fn random_datum(rng: &mut impl Rng, max_degree: usize) -> Option<CoverDatum> {
    let n = rng.gen_range(2..=max_degree);
    let genus = rng.gen_range(0..=2usize);
    let branch_count = if genus == 0 {
        rng.gen_range(2..=6usize)
    } else {
        rng.gen_range(0..=6usize)
    };
    let ambient = match rng.gen_range(0..4) {
        0 => Ambient::Symmetric,
        1 => Ambient::Cyclic,
        2 => Ambient::Dihedral,
        _ if n % 2 == 0 && n >= 4 => Ambient::PairBlocks,
        _ => Ambient::Symmetric,
    };
    let handles: Vec<(Perm, Perm)> = (0..genus)
        .map(|_| {
            let a = sample(rng, ambient, n);
            let b = if branch_count == 0 {
                // keep the commutator trivial so an étale relation can close
                if rng.gen_bool(0.5) {
                    Perm::identity(n)
                } else {
                    a.then(&a)
                }
            } else {
                sample(rng, ambient, n)
            };
            (a, b)
        })
        .collect();
    let mut branch: Vec<BranchPoint> = (0..branch_count.saturating_sub(1))
        .map(|i| BranchPoint {
            label: format!("p{}", i + 1),
            sigma: sample_nontrivial(rng, ambient, n),
        })
        .collect();
    let characteristic = match rng.gen_range(0..6) {
        0 => 11,
        1 => 13,
        _ => 0,
    };
    let mut d = CoverDatum::new(genus, n, characteristic, handles, Vec::new()).ok()?;
    if branch_count > 0 {
        d.branch = std::mem::take(&mut branch);
        let closing = d.relation_product().inverse();
        if closing.is_identity() {
            return None;
        }
        d.branch.push(BranchPoint {
            label: format!("p{branch_count}"),
            sigma: closing,
        });
    }
    d.validate().is_ok().then_some(d)
}

/// Deterministic corpus of valid data with degree in `2..=max_degree`.
pub fn corpus(seed: u64, size: usize, max_degree: usize) -> Vec<CoverDatum> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        if let Some(d) = random_datum(&mut rng, max_degree) {
            out.push(d);
        }
    }
    out
}

pub fn random_weight_system(rng: &mut impl Rng, rank: usize) -> WeightSystem {
    let denominators = [2i64, 3, 4, 5, 6, 7, 8, 12];
    let pairs: Vec<(Rational, usize)> = (0..rank)
        .map(|_| {
            let d = *denominators.choose(rng).unwrap();
            (Rational::new(rng.gen_range(0..d), d), 1)
        })
        .collect();
    WeightSystem::new(pairs).unwrap()
}

pub fn random_parabolic(rng: &mut impl Rng, labels: &[&str]) -> ParabolicData {
    let rank = rng.gen_range(1..=5);
    let degree = rng.gen_range(-10..=10);
    let mut points = BTreeMap::new();
    for l in labels {
        if rng.gen_bool(0.8) {
            points.insert(l.to_string(), random_weight_system(rng, rank));
        }
    }
    ParabolicData::new(rank, degree, points).unwrap()
}

/// Random multiplicity split of `cover_degree` over each label.
pub fn random_profile(
    rng: &mut impl Rng,
    cover_degree: usize,
    labels: &[&str],
    prefix: &str,
) -> PullbackProfile {
    let fibers = labels
        .iter()
        .map(|l| {
            let mut left = cover_degree;
            let mut fiber = Vec::new();
            while left > 0 {
                let m = rng.gen_range(1..=left);
                fiber.push(Preimage {
                    label: format!("{prefix}{l}.{}", fiber.len() + 1),
                    multiplicity: m,
                });
                left -= m;
            }
            (l.to_string(), fiber)
        })
        .collect();
    PullbackProfile::new(cover_degree, fibers).unwrap()
}

/// Every element of the group generated by `gens`, by closure under
/// right multiplication. Independent of the Schreier–Sims code.
pub fn brute_force_elements(gens: &[Perm], cap: usize) -> Option<Vec<Perm>> {
    use std::collections::HashSet;
    let n = gens[0].degree();
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// All permutations of degree `n`, by recursive insertion.
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm::from_images(prefix).unwrap());
            return;
        }
        for p in 0..used.len() {
            if !used[p] {
                used[p] = true;
                prefix.push(p + 1);
                go(prefix, used, out);
                prefix.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn sorted_type(p: &Perm) -> Vec<usize> {
    let mut t = p.cycle_type();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Every transitive tuple `(a1, b1, ..., ag, bg, s1, ..., sk)` with
/// `s_i` of the given cycle types and trivial relation product, found by
/// running over the full Cartesian product.
pub fn naive_hurwitz_tuples(
    genus: usize,
    degree: usize,
    cycle_types: &[Vec<usize>],
) -> std::collections::HashSet<Vec<Perm>> {
    let all = symmetric_group(degree);
    let mut slots: Vec<Vec<Perm>> = vec![all.clone(); 2 * genus];
    for t in cycle_types {
        let mut t = t.clone();
        t.sort_unstable_by(|a, b| b.cmp(a));
        slots.push(all.iter().filter(|p| sorted_type(p) == t).cloned().collect());
    }
    let mut out = std::collections::HashSet::new();
    let mut idx = vec![0usize; slots.len()];
    if slots.iter().any(|s| s.is_empty()) {
        return out;
    }
    loop {
        let tuple: Vec<Perm> = idx.iter().zip(&slots).map(|(&i, s)| s[i].clone()).collect();
        let mut product = Perm::identity(degree);
        for h in tuple[..2 * genus].chunks(2) {
            product = product
                .then(&h[0])
                .then(&h[1])
                .then(&h[0].inverse())
                .then(&h[1].inverse());
        }
        for s in &tuple[2 * genus..] {
            product = product.then(s);
        }
        if product.is_identity() && orbit_of_one(degree, &tuple) == degree {
            out.insert(tuple);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < slots[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn orbit_of_one(degree: usize, gens: &[Perm]) -> usize {
    let mut seen = vec![false; degree + 1];
    seen[1] = true;
    let mut stack = vec![1];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Expands each class representative by simultaneous conjugation and checks
/// the orbits are pairwise disjoint and cover the naive tuple set exactly.
/// Returns `(classes, tuples)` on success.
pub fn check_hurwitz_tiling(
    genus: usize,
    degree: usize,
    cycle_types: &[Vec<usize>],
) -> Result<(usize, usize), String> {
    use covpar_core::hurwitz::datum_tuple;
    use covpar_core::{enumerate_hurwitz, EnumerationCaps};
    use std::collections::HashSet;

    let naive = naive_hurwitz_tuples(genus, degree, cycle_types);
    let classes = enumerate_hurwitz(genus, degree, cycle_types, &EnumerationCaps::default())
        .map_err(|e| e.to_string())?;
    let conjugators = symmetric_group(degree);
    let mut covered: HashSet<Vec<Perm>> = HashSet::new();
    for d in &classes {
        let rep = datum_tuple(d);
        let orbit: HashSet<Vec<Perm>> = conjugators
            .iter()
            .map(|c| rep.iter().map(|p| p.conjugate_by(c)).collect())
            .collect();
        for t in orbit {
            if !naive.contains(&t) {
                return Err(format!("{t:?} is not a valid tuple"));
            }
            if !covered.insert(t) {
                return Err(format!("classes overlap at {rep:?}"));
            }
        }
    }
    if covered.len() != naive.len() {
        return Err(format!(
            "classes cover {} of {} tuples",
            covered.len(),
            naive.len()
        ));
    }
    Ok((classes.len(), naive.len()))
}

/// Multisets of `k` non-identity cycle types of degree `r`.
pub fn type_multisets(r: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let types: Vec<Vec<usize>> = covpar_core::hurwitz::partitions(r)
        .into_iter()
        .filter(|t| t.iter().any(|&c| c > 1))
        .collect();
    fn go(types: &[Vec<usize>], start: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..types.len() {
            cur.push(types[i].clone());
            go(types, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&types, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Mixed test set: named groups plus random subgroups of small ambients.
pub fn test_groups() -> Vec<covpar_core::GeneratedGroup> {
    let mut out = Vec::new();
    let named: &[(usize, &[&str])] = &[
        (3, &["(1 2)", "(1 3)"]),
        (4, &["(1 2 3 4)"]),
        (4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
        (4, &["(1 2 3)", "(2 3 4)"]),
        (4, &["(1 2)", "(3 4)", "(1 3)(2 4)"]),
        (5, &["(1 2 3 4 5)"]),
        (5, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
        (6, &["(1 2 3 4 5 6)", "(1 2)"]),
        (6, &["(1 2)(3 4)(5 6)", "(1 3 5)(2 4 6)"]),
        (6, &["(1 2 3)", "(4 5 6)"]),
        (7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        (8, &["(1 2 3 4 5 6 7 8)", "(1 5)"]),
        (8, &["(1 2)", "(3 4)", "(5 6)", "(7 8)", "(1 3)(2 4)", "(1 5)(2 6)(3 7)(4 8)"]),
    ];
    for (n, gens) in named {
        out.push(covpar_core::GeneratedGroup::new(gens.iter().map(|s| perm(*n, s)).collect()).unwrap());
    }
    let mut r = rng(7);
    for _ in 0..120 {
        let n = r.gen_range(2..=8);
        let k = r.gen_range(1..=3);
        let gens: Vec<Perm> = (0..k)
            .map(|_| {
                // sparse permutations keep many groups small and intransitive
                if r.gen_bool(0.5) {
                    random_perm(&mut r, n)
                } else {
                    let a = r.gen_range(1..=n);
                    let b = r.gen_range(1..=n);
                    let c = r.gen_range(1..=n);
                    if a != b && b != c && a != c && r.gen_bool(0.5) {
                        Perm::from_cycles(n, &[vec![a, b, c]]).unwrap()
                    } else if a != b {
                        Perm::from_cycles(n, &[vec![a, b]]).unwrap()
                    } else {
                        Perm::identity(n)
                    }
                }
            })
            .collect();
        out.push(covpar_core::GeneratedGroup::new(gens).unwrap());
    }
    out
}

pub fn brute_two_transitive(gens: &[Perm], n: usize) -> bool {
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::from([(1, 2)]);
    let mut stack = vec![(1, 2)];
    while let Some((a, b)) = stack.pop() {
        for g in gens {
            let next = (g.image(a), g.image(b));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == n * (n - 1)
}

/// Some `B` with `1 ∈ B`, `1 < |B| < n` and `gB = B` or `gB ∩ B = ∅` for
/// every element `g`.
pub fn brute_has_nontrivial_block(elems: &[Perm], n: usize) -> bool {
    (0u32..1 << (n - 1)).any(|mask| {
        let block: std::collections::BTreeSet<usize> = std::iter::once(1)
            .chain((2..=n).filter(|&p| mask & (1 << (p - 2)) != 0))
            .collect();
        if block.len() == 1 || block.len() == n {
            return false;
        }
        elems.iter().all(|g| {
            let image: std::collections::BTreeSet<usize> = block.iter().map(|&p| g.image(p)).collect();
            image == block || image.is_disjoint(&block)
        })
    })
}

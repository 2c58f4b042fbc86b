//! Pi-systems: linearly independent root sets whose pairwise pairings lie in
//! {0, 1}.  These are exactly the possible configurations of `(-2)`-curves,
//! i.e. simple roots of closed sub-root systems of `Q`.
//!
//! Enumeration follows Dynkin's two theorems: every Pi-system sits inside one
//! of maximal rank, and the maximal-rank ones are generated from the simple
//! roots of `Q` by elementary transformations (adjoin the lowest root of a
//! component, drop one of its simple roots).  An independent backtracking
//! search over all roots serves as the completeness oracle.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlin::{self, AbelianGroup, IntMatrix};
use crate::roots::{DynkinType, RootId, RootSystem};

/// A Pi-system, stored as sorted root ids of one [`RootSystem`].
///
/// Invariants (enforced by [`PiSystem::new`]): members are distinct roots of
/// the ambient system, pairwise pairings of distinct members are 0 or 1, and
/// the members are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiSystem {
    roots: Vec<RootId>,
}

impl PiSystem {
    pub fn empty() -> Self {
        PiSystem { roots: Vec::new() }
    }

    pub fn new(ambient: &RootSystem, mut roots: Vec<RootId>) -> Result<Self> {
        roots.sort_unstable();
        roots.dedup();
        for (i, &a) in roots.iter().enumerate() {
            if a as usize >= ambient.len() {
                return Err(Error::InvariantViolation(format!("no root with id {a}")));
            }
            for &b in &roots[i + 1..] {
                let p = ambient.pairing_ids(a, b);
                if p != 0 && p != 1 {
                    return Err(Error::InvariantViolation(format!(
                        "roots {a} and {b} pair to {p}"
                    )));
                }
            }
        }
        let m = IntMatrix::from_rows(
            &roots
                .iter()
                .map(|&id| ambient.root(id).to_vec())
                .collect::<Vec<_>>(),
        );
        if m.rank() < roots.len() {
            return Err(Error::InvariantViolation(
                "members are linearly dependent".into(),
            ));
        }
        Ok(PiSystem { roots })
    }

    /// For internal callers that guarantee the invariants by construction
    /// (subsets of validated systems, reflection images, the oracle search).
    pub(crate) fn from_sorted_unchecked(roots: Vec<RootId>) -> Self {
        debug_assert!(roots.windows(2).all(|w| w[0] < w[1]));
        PiSystem { roots }
    }

    pub fn roots(&self) -> &[RootId] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// The pair that identifies a table row: singularity type plus the invariant
/// factors of `(Q/E)_tors`.  Two Pi-systems with different keys are never
/// Weyl-equivalent; the converse is not claimed, and is not needed to
/// reproduce the tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantKey {
    pub dynkin: DynkinType,
    pub torsion: Vec<u64>,
}

impl InvariantKey {
    fn sort_key(&self) -> (usize, &DynkinType, &Vec<u64>) {
        (self.dynkin.rank(), &self.dynkin, &self.torsion)
    }
}

impl PartialOrd for InvariantKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for InvariantKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Debug for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.dynkin, self.torsion)
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.dynkin, self.torsion)
    }
}

/// A Pi-system together with everything a table row needs.
#[derive(Clone, Debug)]
pub struct ClassifiedSystem {
    pub system: PiSystem,
    pub dynkin: DynkinType,
    /// `(Q/E)` as computed from the quotient (torsion plus free rank).
    pub quotient: AbelianGroup,
    pub key: InvariantKey,
}

/// The quotient `Q / E` for the span `E` of a Pi-system, computed from the
/// matrix of the system's roots over the `q_basis` (an integral matrix, since
/// `q_basis` is a Z-basis of `Q`).
pub fn lattice_quotient(ambient: &RootSystem, s: &PiSystem) -> AbelianGroup {
    let basis_rank = ambient.lattice().q_basis().len();
    let m = IntMatrix::from_fn(basis_rank, s.len(), |i, j| {
        ambient.q_coords(s.roots()[j])[i]
    });
    intlin::quotient_torsion(&m).expect("Pi-system columns must be independent")
}

pub fn invariant_key(ambient: &RootSystem, s: &PiSystem) -> InvariantKey {
    classify(ambient, s.clone()).key
}

pub fn classify(ambient: &RootSystem, s: PiSystem) -> ClassifiedSystem {
    let dynkin = ambient
        .dynkin_type(s.roots())
        .expect("a Pi-system always has an ADE diagram");
    let quotient = lattice_quotient(ambient, &s);
    let key = InvariantKey {
        dynkin: dynkin.clone(),
        torsion: quotient.torsion().factors_u64(),
    };
    ClassifiedSystem {
        system: s,
        dynkin,
        quotient,
        key,
    }
}

/// Dynkin's elementary transformations of a maximal-rank Pi-system: for each
/// connected component `C` and each `r` in `C`, adjoin the lowest root of `C`
/// and discard `r`.  Every output is again a maximal-rank Pi-system (the
/// affine marks are all positive, so independence survives the swap).
pub fn elementary_transformations(
    ambient: &RootSystem,
    s: &PiSystem,
) -> Result<BTreeSet<PiSystem>> {
    if s.len() != ambient.max_rank() {
        return Err(Error::NotMaximalRank {
            expected: ambient.max_rank(),
            found: s.len(),
        });
    }
    let mut out = BTreeSet::new();
    for comp in ambient.components(s.roots()) {
        let lowest = ambient.lowest_root(&comp)?;
        for &drop in &comp {
            let mut roots: Vec<RootId> = s
                .roots()
                .iter()
                .copied()
                .filter(|&r| r != drop)
                .chain(std::iter::once(lowest))
                .collect();
            roots.sort_unstable();
            roots.dedup();
            let next = PiSystem::new(ambient, roots)?;
            debug_assert_eq!(next.len(), s.len());
            out.insert(next);
        }
    }
    Ok(out)
}

/// All maximal-rank Pi-systems up to invariant key: breadth-first closure of
/// the simple roots of `Q` under elementary transformations.
///
/// The search deduplicates states by the *closed subsystem* a system
/// generates (its reflection closure, as a sorted root-id set).  Any two
/// simple systems of the same closed subsystem are conjugate under its Weyl
/// group, so their successor subsystems are conjugate too; exploring one
/// representative per subsystem therefore reaches every maximal-rank system
/// up to the Weyl group of `Q`, which is exactly what the keys quotient out.
/// (Deduplicating by raw root-set identity instead is hopeless in `E8`: a
/// single `D8` subsystem alone has |W(D8)| > 5 million simple systems.)
pub fn maximal_rank_systems(ambient: &RootSystem) -> Vec<ClassifiedSystem> {
    let start = PiSystem::new(ambient, ambient.simple_root_ids().to_vec())
        .expect("simple roots form a Pi-system");
    let mut visited: HashSet<Vec<RootId>> = HashSet::new();
    visited.insert(ambient.subsystem_roots(start.roots()));
    let mut reps: BTreeMap<InvariantKey, ClassifiedSystem> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let cls = classify(ambient, s.clone());
        reps.entry(cls.key.clone()).or_insert(cls);
        let successors =
            elementary_transformations(ambient, &s).expect("queue holds maximal-rank systems");
        for next in successors {
            let closure = ambient.subsystem_roots(next.roots());
            if visited.insert(closure) {
                queue.push_back(next);
            }
        }
    }
    reps.into_values().collect()
}

/// Every Pi-system class in `Q`: classify all nonempty subsets of each
/// maximal-rank representative (sufficient by Dynkin's containment theorem),
/// dedupe by invariant key, keep the first representative per key.  Output
/// is sorted by key, i.e. by (total rank, type, torsion).
pub fn all_pisystems(ambient: &RootSystem) -> Vec<ClassifiedSystem> {
    let mut out: BTreeMap<InvariantKey, ClassifiedSystem> = BTreeMap::new();
    for max in maximal_rank_systems(ambient) {
        let ids = max.system.roots();
        for mask in 1u32..(1 << ids.len()) {
            let subset: Vec<RootId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &id)| id)
                .collect();
            let cls = classify(ambient, PiSystem::from_sorted_unchecked(subset));
            out.entry(cls.key.clone()).or_insert(cls);
        }
    }
    out.into_values().collect()
}

/// Independent oracle: enumerate every Pi-system of size at most `max_size`
/// by backtracking over all roots, extending sets root-by-root under the
/// pairing and independence constraints.  No use of Dynkin's theorems.
/// Feasible for degree >= 3; degrees 1 and 2 work but take much longer.
pub fn exhaustive_pisystems(ambient: &RootSystem, max_size: usize) -> Vec<ClassifiedSystem> {
    let max_size = max_size.min(ambient.max_rank());
    let n = ambient.len();
    // compatible[i] = ids j with pairing(i, j) in {0, 1}.
    let compatible: Vec<Vec<RootId>> = (0..n)
        .map(|i| {
            (0..n as RootId)
                .filter(|&j| {
                    j as usize != i && matches!(ambient.pairing_ids(i as RootId, j), 0 | 1)
                })
                .collect()
        })
        .collect();

    let merged = (0..n as RootId)
        .into_par_iter()
        .map(|first| {
            let mut found: BTreeMap<InvariantKey, PiSystem> = BTreeMap::new();
            let mut echelon = Echelon::new(ambient.lattice().dim());
            let added = echelon.push(ambient.root(first));
            debug_assert!(added);
            let mut chosen = vec![first];
            search(
                ambient,
                &compatible,
                max_size,
                &mut chosen,
                &mut echelon,
                &mut found,
            );
            found
        })
        .reduce(BTreeMap::new, |mut acc, branch| {
            for (key, sys) in branch {
                // Keep the lexicographically least representative so the
                // result is independent of the rayon schedule.
                acc.entry(key)
                    .and_modify(|cur| {
                        if sys < *cur {
                            *cur = sys.clone();
                        }
                    })
                    .or_insert(sys);
            }
            acc
        });

    merged
        .into_values()
        .map(|sys| classify(ambient, sys))
        .collect()
}

fn search(
    ambient: &RootSystem,
    compatible: &[Vec<RootId>],
    max_size: usize,
    chosen: &mut Vec<RootId>,
    echelon: &mut Echelon,
    found: &mut BTreeMap<InvariantKey, PiSystem>,
) {
    let sys = PiSystem::from_sorted_unchecked(chosen.clone());
    let cls = classify(ambient, sys);
    found
        .entry(cls.key)
        .and_modify(|cur| {
            if cls.system < *cur {
                *cur = cls.system.clone();
            }
        })
        .or_insert(cls.system);
    if chosen.len() == max_size {
        return;
    }
    let last = *chosen.last().unwrap();
    for &cand in &compatible[last as usize] {
        if cand <= last {
            continue;
        }
        if !chosen[..chosen.len() - 1]
            .iter()
            .all(|&c| matches!(ambient.pairing_ids(c, cand), 0 | 1))
        {
            continue;
        }
        let saved = echelon.clone();
        if echelon.push(ambient.root(cand)) {
            chosen.push(cand);
            search(ambient, compatible, max_size, chosen, echelon, found);
            chosen.pop();
        }
        *echelon = saved;
    }
}

/// Incremental fraction-free row echelon over the integers, for exact
/// independence tests during the backtracking search.  Entries stay within
/// i128 comfortably for these dimensions.
#[derive(Clone)]
struct Echelon {
    rows: Vec<Vec<i128>>,
    dim: usize,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            dim,
        }
    }

    /// Returns false (and leaves the echelon unchanged) when `v` is in the
    /// span of the current rows.
    fn push(&mut self, v: &[i64]) -> bool {
        let mut row: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for r in &self.rows {
            let lead = r.iter().position(|&x| x != 0).unwrap();
            if row[lead] != 0 {
                let (a, b) = (r[lead], row[lead]);
                for j in 0..self.dim {
                    row[j] = row[j] * a - r[j] * b;
                }
                // Normalising after every step keeps entries minor-bounded,
                // far inside i128 range.
                normalize(&mut row);
            }
        }
        if row.iter().all(|&x| x == 0) {
            return false;
        }
        self.rows.push(row);
        self.rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
        true
    }
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &x| gcd_i128(acc, x.abs()));
    if g > 1 {
        for x in row {
            *x /= g;
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

/// Test helper: apply a pseudo-random word of simple reflections (derived
/// deterministically from `seed`) to every member.  The image has the same
/// invariant key as the input.
pub fn weyl_perturb(ambient: &RootSystem, s: &PiSystem, seed: u64) -> PiSystem {
    let simple = ambient.simple_root_ids();
    let mut rng = SplitMix64::new(seed);
    let word_len = (seed % 17) as usize;
    let word: Vec<RootId> = (0..word_len)
        .map(|_| simple[(rng.next() % simple.len() as u64) as usize])
        .collect();
    let mut roots: Vec<RootId> = s
        .roots()
        .iter()
        .map(|&id| word.iter().fold(id, |x, &g| ambient.reflect_id(g, x)))
        .collect();
    roots.sort_unstable();
    PiSystem::from_sorted_unchecked(roots)
}

/// Tiny deterministic PRNG so the crate needs no rand dependency.
pub(crate) struct SplitMix64(u64);

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub(crate) fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

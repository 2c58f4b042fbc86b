//! Roots of `Q = K^perp`, Weyl reflections, decomposition of root sets into
//! connected components, and recognition of ADE Dynkin diagrams.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intlin::{solve_exact, IntMatrix};
use crate::pic::{LatticeVector, PicLattice};

/// Index of a root inside [`RootSystem::roots`].
pub type RootId = u16;

/// One irreducible ADE factor.  `Ord` sorts by `(rank, family)`, which is the
/// order singularity types are listed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub rank: usize,
    pub family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

impl Component {
    /// A valid irreducible label: `An` (n >= 1), `Dn` (n >= 4), `E6/E7/E8`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidLabel {
                family: match family {
                    Family::A => 'A',
                    Family::D => 'D',
                    Family::E => 'E',
                },
                rank,
            });
        }
        Ok(Component { family, rank })
    }

    /// Number of roots of the irreducible system of this type.
    pub fn root_count(&self) -> usize {
        match self.family {
            Family::A => self.rank * (self.rank + 1),
            Family::D => 2 * self.rank * (self.rank - 1),
            Family::E => match self.rank {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A singularity type: multiset of irreducible ADE labels, kept sorted.
/// Renders in the canonical form `2A1+A3` (multiplicity prefixes, terms
/// ascending by rank then family).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DynkinType {
    components: Vec<Component>,
}

impl DynkinType {
    /// Builds from arbitrary `(family, rank)` pairs, normalising the
    /// degenerate D-labels: `D2 -> 2A1`, `D3 -> A3`.
    pub fn new(labels: &[(Family, usize)]) -> Result<Self> {
        let mut components = Vec::new();
        for &(family, rank) in labels {
            match (family, rank) {
                (Family::D, 2) => {
                    components.push(Component::new(Family::A, 1)?);
                    components.push(Component::new(Family::A, 1)?);
                }
                (Family::D, 3) => components.push(Component::new(Family::A, 3)?),
                _ => components.push(Component::new(family, rank)?),
            }
        }
        components.sort();
        Ok(DynkinType { components })
    }

    pub fn from_components(mut components: Vec<Component>) -> Self {
        components.sort();
        DynkinType { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Total rank (number of simple roots).
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut count = 1;
            while i + count < self.components.len() && self.components[i + count] == c {
                count += 1;
            }
            if count == 1 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{count}{c}"));
            }
            i += count;
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Weyl reflection in a root `r` with `r.r = -2`: `s_r(x) = x + (x.r) r`.
/// An isometry; fixes `K` because roots pair to zero with it.
pub fn reflect(lattice: &PicLattice, x: &[i64], r: &[i64]) -> LatticeVector {
    let c = lattice.dot(x, r);
    x.iter().zip(r).map(|(&xi, &ri)| xi + c * ri).collect()
}

/// All roots of `Q` for one degree, with precomputed pairing and reflection
/// tables.  Roots are sorted by coordinate tuple, so ids are canonical.
pub struct RootSystem {
    lattice: PicLattice,
    roots: Vec<LatticeVector>,
    index: HashMap<LatticeVector, RootId>,
    /// Coordinates of each root in the `q_basis` of the lattice.
    q_coords: Vec<Vec<i64>>,
    /// pairing(roots[a], roots[b]) at `a * len + b`.
    pairings: Vec<i8>,
    /// Id of `s_{roots[a]}(roots[b])` at `a * len + b`.
    reflections: Vec<RootId>,
    simple_ids: Vec<RootId>,
}

impl RootSystem {
    pub fn for_degree(degree: u32) -> Result<Self> {
        Ok(Self::new(PicLattice::new(degree)?))
    }

    /// Enumerates the roots as the reflection closure of the simple roots;
    /// this yields exactly the root system, with no search bounds to tune.
    pub fn new(lattice: PicLattice) -> Self {
        let simple = lattice.simple_roots();
        let mut seen: HashMap<LatticeVector, ()> = HashMap::new();
        let mut queue: VecDeque<LatticeVector> = VecDeque::new();
        for r in &simple {
            for v in [r.clone(), r.iter().map(|x| -x).collect()] {
                if seen.insert(v.clone(), ()).is_none() {
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for r in &simple {
                let w = reflect(&lattice, &v, r);
                if seen.insert(w.clone(), ()).is_none() {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<LatticeVector> = seen.into_keys().collect();
        roots.sort();

        let index: HashMap<LatticeVector, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as RootId))
            .collect();

        let n = roots.len();
        let mut pairings = vec![0i8; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = lattice.dot(&roots[a], &roots[b]);
                pairings[a * n + b] = i8::try_from(p).expect("pairing out of i8 range");
            }
        }
        let mut reflections = vec![0 as RootId; n * n];
        for a in 0..n {
            for b in 0..n {
                let w = reflect(&lattice, &roots[b], &roots[a]);
                reflections[a * n + b] = index[&w];
            }
        }

        let q_coords = Self::q_coordinates(&lattice, &roots);
        let simple_ids = simple.iter().map(|r| index[r]).collect();

        RootSystem {
            lattice,
            roots,
            index,
            q_coords,
            pairings,
            reflections,
            simple_ids,
        }
    }

    /// Every root lies in `Q`, and `q_basis` is a Z-basis of `Q`, so each
    /// root has unique integer coordinates there.
    fn q_coordinates(lattice: &PicLattice, roots: &[LatticeVector]) -> Vec<Vec<i64>> {
        let basis = lattice.q_basis();
        let cols: Vec<Vec<i64>> = (0..lattice.dim())
            .map(|i| basis.iter().map(|v| v[i]).collect())
            .collect();
        let b = IntMatrix::from_rows(&cols);
        roots
            .iter()
            .map(|r| {
                let rhs: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
                let sol = solve_exact(&b, &rhs).expect("root outside the span of q_basis");
                sol.iter()
                    .map(|c| i64::try_from(c).expect("q-coordinate out of i64 range"))
                    .collect()
            })
            .collect()
    }

    pub fn lattice(&self) -> &PicLattice {
        &self.lattice
    }

    pub fn degree(&self) -> u32 {
        self.lattice.degree()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, id: RootId) -> &[i64] {
        &self.roots[id as usize]
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn root_id(&self, v: &[i64]) -> Option<RootId> {
        self.index.get(v).copied()
    }

    /// Coordinates of a root in the `q_basis`.
    pub fn q_coords(&self, id: RootId) -> &[i64] {
        &self.q_coords[id as usize]
    }

    pub fn pairing_ids(&self, a: RootId, b: RootId) -> i64 {
        self.pairings[a as usize * self.roots.len() + b as usize] as i64
    }

    /// `s_{root a}(root b)` as an id.
    pub fn reflect_id(&self, a: RootId, b: RootId) -> RootId {
        self.reflections[a as usize * self.roots.len() + b as usize]
    }

    pub fn negate_id(&self, id: RootId) -> RootId {
        // s_r(r) = -r.
        self.reflect_id(id, id)
    }

    /// Ids of the simple roots of `Q` (the rank of the root system; this is
    /// `n` for degrees up to 6 and 1 for degree 7).
    pub fn simple_root_ids(&self) -> &[RootId] {
        &self.simple_ids
    }

    /// Rank of the root system of `Q` (not of the lattice `Q` itself, which
    /// differs in degree 7).
    pub fn max_rank(&self) -> usize {
        self.simple_ids.len()
    }

    /// Connected components of the graph on `ids` with an edge where the
    /// pairing is 1.  Components come out sorted, each sorted internally.
    pub fn components(&self, ids: &[RootId]) -> Vec<Vec<RootId>> {
        let mut remaining: Vec<RootId> = ids.to_vec();
        remaining.sort_unstable();
        remaining.dedup();
        let mut out = Vec::new();
        let mut seen = vec![false; remaining.len()];
        for start in 0..remaining.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![remaining[start]];
            seen[start] = true;
            let mut queue = vec![remaining[start]];
            while let Some(x) = queue.pop() {
                for (k, &y) in remaining.iter().enumerate() {
                    if !seen[k] && self.pairing_ids(x, y) == 1 {
                        seen[k] = true;
                        comp.push(y);
                        queue.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }

    /// Recognise the shape of a connected simply-laced Dynkin graph:
    /// a path is `A_n`; a single degree-3 vertex with arm lengths
    /// `(1,1,k)` is `D_{k+3}`, `(1,2,2)/(1,2,3)/(1,2,4)` are `E6/E7/E8`.
    /// Anything else (cycle, degree >= 4, two branch vertices) is rejected.
    pub fn classify_component(&self, comp: &[RootId]) -> Result<Component> {
        let n = comp.len();
        assert!(n > 0, "empty component");
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && self.pairing_ids(comp[i], comp[j]) == 1)
                    .collect()
            })
            .collect();
        let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edges != n - 1 {
            // connected with n-1 edges iff a tree
            return Err(Error::NotSimplyLaced(format!(
                "{n} vertices with {edges} edges contain a cycle"
            )));
        }
        if let Some(i) = (0..n).find(|&i| adj[i].len() >= 4) {
            return Err(Error::NotSimplyLaced(format!(
                "vertex of degree {}",
                adj[i].len()
            )));
        }
        let branches: Vec<usize> = (0..n).filter(|&i| adj[i].len() == 3).collect();
        match branches.len() {
            0 => Component::new(Family::A, n),
            1 => {
                let b = branches[0];
                // Arm lengths: walk from each neighbour away from the branch.
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&first| {
                        let mut len = 1;
                        let mut prev = b;
                        let mut cur = first;
                        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                            prev = cur;
                            cur = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => Component::new(Family::D, n),
                    [1, 2, 2] => Component::new(Family::E, 6),
                    [1, 2, 3] => Component::new(Family::E, 7),
                    [1, 2, 4] => Component::new(Family::E, 8),
                    _ => Err(Error::NotSimplyLaced(format!(
                        "branch with arm lengths {arms:?}"
                    ))),
                }
            }
            _ => Err(Error::NotSimplyLaced("two branch vertices".into())),
        }
    }

    /// The type of an arbitrary root set (classifies each component).
    pub fn dynkin_type(&self, ids: &[RootId]) -> Result<DynkinType> {
        let comps = self
            .components(ids)
            .iter()
            .map(|c| self.classify_component(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(DynkinType::from_components(comps))
    }

    /// The full root set of the subsystem generated by a root set: the orbit
    /// of the set under the reflections in its own members.  For a Pi-system
    /// this equals the set of roots in its integer span.
    pub fn subsystem_roots(&self, ids: &[RootId]) -> Vec<RootId> {
        self.orbit_closure(ids)
            .into_iter()
            .map(|(id, _)| id)
            .collect()
    }

    /// Orbit closure together with the coefficients of each orbit element
    /// over the generating set: reflecting `x` in generator `g` adds
    /// `(x.g)` to the `g`-coefficient, so coefficients stay integral.
    fn orbit_closure(&self, ids: &[RootId]) -> Vec<(RootId, Vec<i64>)> {
        let k = ids.len();
        let mut coeffs: HashMap<RootId, Vec<i64>> = HashMap::new();
        let mut queue: VecDeque<RootId> = VecDeque::new();
        for (i, &id) in ids.iter().enumerate() {
            let mut unit = vec![0i64; k];
            unit[i] = 1;
            if coeffs.insert(id, unit).is_none() {
                queue.push_back(id);
            }
        }
        while let Some(x) = queue.pop_front() {
            let cx = coeffs[&x].clone();
            for (gi, &g) in ids.iter().enumerate() {
                let y = self.reflect_id(g, x);
                if coeffs.contains_key(&y) {
                    continue;
                }
                let mut cy = cx.clone();
                cy[gi] += self.pairing_ids(x, g);
                coeffs.insert(y, cy);
                queue.push_back(y);
            }
        }
        let mut out: Vec<(RootId, Vec<i64>)> = coeffs.into_iter().collect();
        out.sort_unstable_by_key(|(id, _)| *id);
        out
    }

    /// The lowest root of a connected component: the negative of the highest
    /// root, i.e. the unique subsystem root whose coefficients over the
    /// component are all <= 0 of minimal height.  Uniqueness of the height
    /// maximum is asserted, not assumed.
    pub fn lowest_root(&self, comp: &[RootId]) -> Result<RootId> {
        if self.components(comp).len() != 1 {
            return Err(Error::Disconnected);
        }
        let orbit = self.orbit_closure(comp);
        let (highest, _, ties) = orbit.iter().fold(
            (0 as RootId, i64::MIN, 0usize),
            |(best, max, ties), (id, c)| {
                let h: i64 = c.iter().sum();
                if h > max {
                    (*id, h, 1)
                } else if h == max {
                    (best, max, ties + 1)
                } else {
                    (best, max, ties)
                }
            },
        );
        assert_eq!(ties, 1, "highest root is not unique");
        let lowest = self.negate_id(highest);
        // The extended diagram is simply laced except for a rank-1
        // component, where the lowest root is the negative of the simple
        // root and pairs to +2 with it.
        if comp.len() > 1 {
            for &r in comp {
                let p = self.pairing_ids(lowest, r);
                debug_assert!(
                    p == 0 || p == 1,
                    "lowest root pairs to {p} with a simple root"
                );
            }
        }
        Ok(lowest)
    }
}

/// Cartan matrix of an irreducible ADE type in the standard node order
/// (chain `1..n`, with the fork/branch node conventions below).
fn cartan_matrix(c: Component) -> Vec<Vec<i64>> {
    let n = c.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match c.family {
        Family::A => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            // chain 0..n-2, extra node n-1 attached at n-3
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            // chain 0..n-2, extra node n-1 attached at node 2
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(2, n - 1);
        }
    }
    a
}

/// Coefficients of the highest root over the simple roots, computed by
/// closing the simple coefficient vectors under the reflections of the
/// abstract root system (no ambient lattice needed).
pub fn highest_root_marks(family: Family, rank: usize) -> Result<Vec<i64>> {
    let comp = Component::new(family, rank)?;
    let cartan = cartan_matrix(comp);
    let n = comp.rank;
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut unit = vec![0i64; n];
        unit[i] = 1;
        seen.insert(unit.clone(), ());
        queue.push_back(unit);
    }
    while let Some(c) = queue.pop_front() {
        for i in 0..n {
            // s_i(x) = x - <x, alpha_i> alpha_i with <x, alpha_i> from Cartan.
            let inner: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
            let mut c2 = c.clone();
            c2[i] -= inner;
            if seen.insert(c2.clone(), ()).is_none() {
                queue.push_back(c2);
            }
        }
    }
    debug_assert_eq!(seen.len(), comp.root_count());
    let mut best: Option<Vec<i64>> = None;
    let mut best_height = i64::MIN;
    let mut ties = 0;
    for c in seen.keys() {
        let h: i64 = c.iter().sum();
        if h > best_height {
            best_height = h;
            best = Some(c.clone());
            ties = 1;
        } else if h == best_height {
            ties += 1;
        }
    }
    assert_eq!(ties, 1, "highest root is not unique");
    Ok(best.unwrap())
}

//! Brauer groups of the contracted surfaces, by three independent routes:
//! the torsion of `Q/E`, the cokernel of the pairing map `Pic X -> E*`, and
//! the torsion of `Pic X / E` (the Picard group of the smooth locus).  Plus
//! the local groups at individual singular points, Zariski-local triviality,
//! and the bad primes of the ambient root system.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::intlin::{self, AbelianGroup, IntMatrix};
use crate::pisystems::{self, all_pisystems, PiSystem};
use crate::roots::{highest_root_marks, DynkinType, Family, RootId, RootSystem};

/// `Br Y = (Q/E)_tors`: express the configuration over a basis of `Q`, take
/// the quotient, and keep `Ext^1(Q/E, Z)`, which is its torsion.
pub fn brauer_group(ambient: &RootSystem, s: &PiSystem) -> AbelianGroup {
    intlin::ext1_to_z(&pisystems::lattice_quotient(ambient, s))
}

/// `Br Y` as the cokernel of `theta: Pic X -> E*`, the map induced by the
/// intersection pairing.  The pairing on `E` is negative definite, so the
/// cokernel must be finite; a free summand means corrupted input.
pub fn brauer_via_cokernel(ambient: &RootSystem, s: &PiSystem) -> Result<AbelianGroup> {
    let g = cokernel_of_pairing(ambient, s.roots());
    if g.free_rank() > 0 {
        return Err(Error::UnexpectedFreeRank(g.free_rank()));
    }
    Ok(g)
}

fn cokernel_of_pairing(ambient: &RootSystem, roots: &[RootId]) -> AbelianGroup {
    let lattice = ambient.lattice();
    let theta = IntMatrix::from_fn(roots.len(), lattice.dim(), |i, j| {
        lattice.dot(ambient.root(roots[i]), &lattice.basis_vector(j))
    });
    intlin::cokernel(&theta)
}

/// `Br Y` a third way: the torsion of `Pic(Y^ns) = (Pic X)/E`, computed from
/// the plain coordinate matrix with no pairing involved.
pub fn smooth_locus_picard_torsion(ambient: &RootSystem, s: &PiSystem) -> AbelianGroup {
    let lattice = ambient.lattice();
    let m = IntMatrix::from_fn(lattice.dim(), s.len(), |i, j| ambient.root(s.roots()[j])[i]);
    let quotient = intlin::quotient_torsion(&m).expect("Pi-system columns are independent");
    quotient.torsion()
}

/// Lipman's group `G(Y_P)` at the singular point of one connected component:
/// the cokernel of `theta_P: Pic X -> E_P*`.  Nontrivial means Brauer classes
/// are already visible Zariski-locally at `P`.
pub fn local_brauer(ambient: &RootSystem, component: &[RootId]) -> Result<AbelianGroup> {
    if ambient.components(component).len() != 1 {
        return Err(Error::Disconnected);
    }
    let g = cokernel_of_pairing(ambient, component);
    if g.free_rank() > 0 {
        return Err(Error::UnexpectedFreeRank(g.free_rank()));
    }
    Ok(g)
}

/// True iff every singular point has trivial local group, i.e. all Brauer
/// classes are locally trivial in the Zariski topology.
pub fn is_locally_trivial(ambient: &RootSystem, s: &PiSystem) -> Result<bool> {
    for comp in ambient.components(s.roots()) {
        if !local_brauer(ambient, &comp)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bad primes of an irreducible type: the primes occurring among the
/// coefficients of the highest root over the simple roots.  Computed from
/// the marks, not hardcoded.
pub fn bad_primes(family: Family, rank: usize) -> Result<BTreeSet<u64>> {
    let marks = highest_root_marks(family, rank)?;
    Ok(marks
        .into_iter()
        .filter(|&m| is_prime(m as u64))
        .map(|m| m as u64)
        .collect())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Bad primes of the (possibly reducible) root system of `Q` for a degree:
/// the union over its irreducible factors.
pub fn ambient_bad_primes(ambient: &RootSystem) -> BTreeSet<u64> {
    let ty = ambient
        .dynkin_type(ambient.simple_root_ids())
        .expect("simple roots classify");
    ty.components()
        .iter()
        .flat_map(|c| bad_primes(c.family, c.rank).expect("valid component label"))
        .collect()
}

/// The lattice-theoretically valid configurations that nevertheless do not
/// occur on any del Pezzo surface (the daggered table rows).  The underlying
/// classification is a characteristic-0 statement; see [`URABE_CAVEAT`].
const URABE_EXCLUSIONS: &[(u32, &str)] = &[(2, "7A1"), (1, "4A1+D4"), (1, "7A1"), (1, "8A1")];

/// Wording for outputs that show excluded rows.
pub const URABE_CAVEAT: &str = "the geometric exclusion is only established in characteristic 0";

pub fn urabe_excluded(degree: u32, ty: &DynkinType) -> bool {
    let label = ty.to_string();
    URABE_EXCLUSIONS
        .iter()
        .any(|&(d, t)| d == degree && t == label)
}

/// Singularity types realised by two distinct surface configurations (up to
/// the Weyl group), one with trivial Brauer group — the starred table rows.
///
/// Like the Urabe exclusions this is geometric input, not derivable from the
/// lattice alone: in degree 2 the types `2A1+A3` and `A1+A5` also admit a
/// second, saturated lattice embedding (reported through
/// [`BrauerResult::embeddings`]), but only `4A1` counts two actual
/// singularity types of surfaces.
const DOUBLE_EMBEDDINGS: &[(u32, &str)] = &[
    (2, "4A1"),
    (1, "A1+A5"),
    (1, "2A1+A3"),
    (1, "2A3"),
    (1, "4A1"),
    (1, "A7"),
];

pub fn double_embedding(degree: u32, ty: &DynkinType) -> bool {
    let label = ty.to_string();
    DOUBLE_EMBEDDINGS
        .iter()
        .any(|&(d, t)| d == degree && t == label)
}

/// One classified configuration, ready for rendering: everything Tables 1-4
/// record about a singularity type, plus the cross-check group.
#[derive(Clone, Debug)]
pub struct BrauerResult {
    pub degree: u32,
    pub dynkin: DynkinType,
    /// `(Q/E)_tors`.
    pub group: AbelianGroup,
    /// The same group computed as `coker(Pic X -> E*)`.
    pub group_via_cokernel: AbelianGroup,
    pub locally_trivial: bool,
    pub excluded: bool,
    /// The type is realised by two distinct singularity types of surfaces,
    /// the other one with trivial Brauer group (the starred rows).
    pub double_embedding: bool,
    /// Position of this embedding among the keys sharing its type string.
    pub embedding_index: usize,
    /// Total number of lattice embedding classes (keys) sharing the type.
    pub embeddings: usize,
}

/// Classify every Pi-system class of a degree.  Results are sorted by
/// (total rank, type, invariant factors); keys of the same type are adjacent.
pub fn brauer_table(degree: u32) -> Result<Vec<BrauerResult>> {
    let ambient = RootSystem::for_degree(degree)?;
    let classified = all_pisystems(&ambient);
    let mut out = Vec::with_capacity(classified.len());
    for cls in &classified {
        let group = brauer_group(&ambient, &cls.system);
        let group_via_cokernel = brauer_via_cokernel(&ambient, &cls.system)?;
        let locally_trivial = is_locally_trivial(&ambient, &cls.system)?;
        out.push(BrauerResult {
            degree,
            dynkin: cls.dynkin.clone(),
            group,
            group_via_cokernel,
            locally_trivial,
            excluded: urabe_excluded(degree, &cls.dynkin),
            double_embedding: double_embedding(degree, &cls.dynkin),
            embedding_index: 0,
            embeddings: 0,
        });
    }
    // Same-type keys are adjacent in key order; number them.
    let mut i = 0;
    while i < out.len() {
        let mut j = i + 1;
        while j < out.len() && out[j].dynkin == out[i].dynkin {
            j += 1;
        }
        for (idx, row) in out[i..j].iter_mut().enumerate() {
            row.embedding_index = idx;
            row.embeddings = j - i;
        }
        i = j;
    }
    Ok(out)
}

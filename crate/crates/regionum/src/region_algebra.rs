//! Checkerboard shading and the GF(2) incidence system between regions and
//! crossings.
//!
//! Region sets and crossing sets live in GF(2) vector spaces encoded as
//! `u64` bitmasks. The incidence map sends a region set to the set of
//! crossings it changes; its kernel is the space of ineffective sets. For a
//! reduced knot diagram the kernel is spanned by the two color-class
//! indicators, so every solvable target has exactly four solutions and the
//! cheapest one realizes the coset reduction behind the 2c(K) upper bound.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, Region, RegionId};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("kernel dimension {dim} exceeds the enumeration cap {cap}")]
    KernelTooLarge { dim: u32, cap: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

/// The unique proper 2-coloring of regions with the unbounded one white.
#[derive(Clone, Debug)]
pub struct Shading {
    pub colors: Vec<Color>,
    /// Region treated as unbounded.
    pub outer: RegionId,
}

impl Shading {
    pub fn color(&self, r: RegionId) -> Color {
        self.colors[r]
    }

    pub fn class(&self, color: Color) -> Vec<RegionId> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(r, _)| r)
            .collect()
    }

    pub fn black_set(&self) -> RegionSet {
        RegionSet::from_ids(self.class(Color::Black).iter().copied())
    }

    pub fn white_set(&self) -> RegionSet {
        RegionSet::from_ids(self.class(Color::White).iter().copied())
    }
}

/// A set of regions as a GF(2, u64) vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RegionSet(pub u64);

/// A set of crossings as a GF(2, u64) vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CrossingSet(pub u64);

macro_rules! bitset_impl {
    ($ty:ident) => {
        impl $ty {
            pub const EMPTY: $ty = $ty(0);

            pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> $ty {
                let mut bits = 0u64;
                for i in ids {
                    debug_assert!(i < 64);
                    bits |= 1 << i;
                }
                $ty(bits)
            }

            pub fn ids(&self) -> Vec<usize> {
                (0..64).filter(|i| self.0 >> i & 1 == 1).collect()
            }

            pub fn contains(&self, i: usize) -> bool {
                i < 64 && self.0 >> i & 1 == 1
            }

            pub fn len(&self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(&self) -> bool {
                self.0 == 0
            }

            pub fn symmetric_difference(&self, other: $ty) -> $ty {
                $ty(self.0 ^ other.0)
            }

            /// Hex-encoded bitstring, low region ids in the low bits.
            pub fn to_hex(&self) -> String {
                format!("{:x}", self.0)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (k, id) in self.ids().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{id}")?;
                }
                write!(f, "}}")
            }
        }
    };
}

bitset_impl!(RegionSet);
bitset_impl!(CrossingSet);

/// GF(2) matrix from regions to crossings: one row per region, entry 1 iff
/// the crossing lies in the region's incident set.
#[derive(Clone, Debug)]
pub struct IncidenceSystem {
    /// Row r = bitmask over crossings incident to region r.
    pub rows: Vec<CrossingSet>,
    pub region_count: usize,
    pub crossing_count: usize,
    /// Basis of the kernel of the map `S -> xor of rows in S`.
    pub kernel_basis: Vec<RegionSet>,
    pub rank: usize,
    /// Echelon rows: (reduced crossing vector, region combination producing it),
    /// indexed by pivot bit.
    echelon: Vec<Option<(u64, u64)>>,
}

/// Compute the checkerboard shading. `outer` overrides the default
/// unbounded-region convention.
pub fn checkerboard_shade(d: &Diagram, outer: Option<RegionId>) -> Result<Shading, AlgebraError> {
    let regions = d.regions();
    shade_regions(d, &regions, outer)
}

/// Shading from precomputed regions (the regions must come from `d`).
pub fn shade_regions(d: &Diagram, regions: &[Region], outer: Option<RegionId>) -> Result<Shading, AlgebraError> {
    let outer = match outer {
        Some(r) => {
            if r >= regions.len() {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "outer region id {r} out of range ({} regions)",
                    regions.len()
                )));
            }
            r
        }
        None => d.default_outer_region(regions),
    };
    if d.crossing_count() == 0 {
        let mut colors = vec![Color::Black; 2];
        colors[outer] = Color::White;
        return Ok(Shading { colors, outer });
    }
    // region_of_corner[4v+s] = face owning the corner between slots s, s+1.
    let mut region_of_corner = vec![usize::MAX; 4 * d.crossing_count()];
    for r in regions {
        for &(v, s) in &r.corners {
            region_of_corner[4 * v + s as usize] = r.id;
        }
    }
    // Two regions are adjacent iff they share an edge of |D|: the faces on
    // the two sides of the edge at slot s of crossing v own the corners
    // (v, s) and (v, s-1).
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); regions.len()];
    for v in 0..d.crossing_count() {
        for s in 0..4 {
            let a = region_of_corner[4 * v + s];
            let b = region_of_corner[4 * v + (s + 3) % 4];
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    let mut colors: Vec<Option<Color>> = vec![None; regions.len()];
    colors[outer] = Some(Color::White);
    let mut queue = vec![outer];
    while let Some(r) = queue.pop() {
        let next = match colors[r].unwrap() {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        for &other in &adjacency[r] {
            match colors[other] {
                None => {
                    colors[other] = Some(next);
                    queue.push(other);
                }
                Some(c) => debug_assert_eq!(c, next, "checkerboard coloring conflict"),
            }
        }
    }
    let colors = colors
        .into_iter()
        .map(|c| c.expect("face adjacency graph of a knot diagram is connected"))
        .collect();
    Ok(Shading { colors, outer })
}

/// Build the incidence system of a diagram, with kernel basis computed by
/// GF(2) elimination in deterministic order.
pub fn incidence_system(d: &Diagram) -> IncidenceSystem {
    let regions = d.regions();
    incidence_from_regions(&regions, d.crossing_count())
}

pub fn incidence_from_regions(regions: &[Region], crossing_count: usize) -> IncidenceSystem {
    assert!(crossing_count <= 62 && regions.len() <= 64, "diagram too large for bitmask algebra");
    let rows: Vec<CrossingSet> = regions
        .iter()
        .map(|r| CrossingSet::from_ids(r.incident.iter().copied()))
        .collect();
    // Echelon insertion of region rows in id order, tracking combinations.
    let mut echelon: Vec<Option<(u64, u64)>> = vec![None; crossing_count];
    let mut kernel_basis = Vec::new();
    let mut rank = 0;
    for (r, row) in rows.iter().enumerate() {
        let mut vec = row.0;
        let mut combo = 1u64 << r;
        while vec != 0 {
            let pivot = vec.trailing_zeros() as usize;
            match echelon[pivot] {
                Some((evec, ecombo)) => {
                    vec ^= evec;
                    combo ^= ecombo;
                }
                None => {
                    echelon[pivot] = Some((vec, combo));
                    rank += 1;
                    vec = 0;
                    combo = 0;
                }
            }
        }
        if combo != 0 {
            kernel_basis.push(RegionSet(combo));
        }
    }
    IncidenceSystem {
        rows,
        region_count: regions.len(),
        crossing_count,
        kernel_basis,
        rank,
        echelon,
    }
}

impl IncidenceSystem {
    /// The crossing set changed by a region set.
    pub fn apply(&self, s: RegionSet) -> CrossingSet {
        let mut out = 0u64;
        for r in 0..self.region_count {
            if s.0 >> r & 1 == 1 {
                out ^= self.rows[r].0;
            }
        }
        CrossingSet(out)
    }

    pub fn kernel_dimension(&self) -> u32 {
        self.kernel_basis.len() as u32
    }

    /// One region set S with `apply(S) = target`, or `None` when the target
    /// is outside the column space (possible only for degenerate inputs).
    pub fn solve_for_target(&self, target: CrossingSet) -> Result<Option<RegionSet>, AlgebraError> {
        if target.0 >> self.crossing_count != 0 {
            return Err(AlgebraError::DimensionMismatch(format!(
                "target mentions crossings beyond the {} in the diagram",
                self.crossing_count
            )));
        }
        let mut vec = target.0;
        let mut combo = 0u64;
        while vec != 0 {
            let pivot = vec.trailing_zeros() as usize;
            match self.echelon[pivot] {
                Some((evec, ecombo)) => {
                    vec ^= evec;
                    combo ^= ecombo;
                }
                None => return Ok(None),
            }
        }
        Ok(Some(RegionSet(combo)))
    }
}

/// Total cost of a region set: sum of the costs of its regions.
pub fn set_cost(regions: &[Region], s: RegionSet) -> usize {
    s.ids().iter().map(|&r| regions[r].cost).sum()
}

/// Enumerate the coset `s0 + span(kernel_basis)` and return the candidate of
/// minimum cost; ties break toward the lexicographically smallest sorted
/// region-id list.
pub fn min_cost_in_coset(
    regions: &[Region],
    s0: RegionSet,
    sys: &IncidenceSystem,
    kernel_cap: u32,
) -> Result<(RegionSet, usize), AlgebraError> {
    let dim = sys.kernel_dimension();
    if dim > kernel_cap {
        return Err(AlgebraError::KernelTooLarge { dim, cap: kernel_cap });
    }
    let mut best = s0;
    let mut best_cost = set_cost(regions, s0);
    for mask in 1u64..(1 << dim) {
        let mut cand = s0;
        for (i, k) in sys.kernel_basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cand = cand.symmetric_difference(*k);
            }
        }
        let cost = set_cost(regions, cand);
        if cost < best_cost || (cost == best_cost && cand.ids() < best.ids()) {
            best = cand;
            best_cost = cost;
        }
    }
    Ok((best, best_cost))
}

/// The constructive reduction behind the 2c(K) upper bound: replace a region
/// set by the cheapest one producing the same diagram. On a reduced knot
/// diagram the coset has exactly four members and the result costs at most
/// 2c when the input splits as a union of color-class subsets.
pub fn theorem1_reduce(d: &Diagram, region_ids: &[RegionId]) -> Result<(Vec<RegionId>, usize), AlgebraError> {
    let regions = d.regions();
    let sys = incidence_from_regions(&regions, d.crossing_count());
    let s0 = RegionSet::from_ids(region_ids.iter().copied());
    let (best, cost) = min_cost_in_coset(&regions, s0, &sys, crate::DEFAULT_KERNEL_CAP)?;
    Ok((best.ids(), cost))
}

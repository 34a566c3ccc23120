//! Knot diagrams as combinatorial maps.
//!
//! A diagram is a list of 4-valent crossings. Each crossing stores its four
//! incident edge labels in counterclockwise order together with the slot at
//! which the under-strand enters and the slot at which the over-strand
//! enters. The slot array is kept in a rotation-canonical form (lexicographic
//! minimum over the four rotations) so that crossing changes and mirrors do
//! not move corners: regions keep their identities across every over/under
//! operation on a fixed projection.
//!
//! PD convention for input and output: the tuple `[a, b, c, d]` lists edges
//! counterclockwise with `a` the incoming under-strand edge, so `c` follows
//! `a` along the knot (mod the edge count).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub type EdgeId = u32;
pub type CrossingId = usize;
pub type RegionId = usize;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedInput(String),
    #[error("edge label error: {0}")]
    LabelError(String),
    #[error("diagram has {0} link components, expected a knot")]
    NotAKnot(usize),
    #[error("face traversal found {found} regions, expected {expected}; not a planar knot shadow")]
    NotPlanar { found: usize, expected: usize },
    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),
    #[error("unknown region id {0}")]
    UnknownRegion(usize),
}

/// One crossing of a diagram. `slots` is rotation-canonical and
/// counterclockwise; `under_in`/`over_in` are slot indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    slots: [EdgeId; 4],
    under_in: u8,
    over_in: u8,
}

impl Crossing {
    pub fn slots(&self) -> [EdgeId; 4] {
        self.slots
    }

    pub fn under_in(&self) -> u8 {
        self.under_in
    }

    pub fn over_in(&self) -> u8 {
        self.over_in
    }

    /// The tuple rotated so the incoming under-strand edge sits first, as a
    /// PD code lists it.
    pub fn pd_tuple(&self) -> [EdgeId; 4] {
        let u = self.under_in as usize;
        [
            self.slots[u],
            self.slots[(u + 1) % 4],
            self.slots[(u + 2) % 4],
            self.slots[(u + 3) % 4],
        ]
    }

    /// +1 for a positive crossing (over-strand enters one slot clockwise of
    /// the under-in slot), -1 otherwise.
    pub fn sign(&self) -> i8 {
        if (self.under_in + 3) % 4 == self.over_in {
            1
        } else {
            -1
        }
    }

    fn changed(&self) -> Crossing {
        Crossing {
            slots: self.slots,
            under_in: self.over_in,
            over_in: self.under_in,
        }
    }
}

/// A face of the diagram: an orbit of the face-traversal permutation.
///
/// `corners` lists (crossing, slot) pairs in traversal order starting from
/// the smallest; the corner `(v, s)` sits between slots `s` and `s+1` of
/// crossing `v`. `cost` counts *distinct* incident crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    pub corners: Vec<(CrossingId, u8)>,
    pub incident: BTreeSet<CrossingId>,
    pub cost: usize,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    name: Option<String>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        // Name is provenance, not structure.
        self.crossings == other.crossings && self.edge_count == other.edge_count
    }
}

impl Eq for Diagram {}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pd_string())
    }
}

fn next_edge(e: EdgeId, edge_count: u32) -> EdgeId {
    e % edge_count + 1
}

fn canonical_rotation(slots: [EdgeId; 4]) -> usize {
    let mut best = 0usize;
    for r in 1..4 {
        for k in 0..4 {
            let a = slots[(r + k) % 4];
            let b = slots[(best + k) % 4];
            if a != b {
                if a < b {
                    best = r;
                }
                break;
            }
        }
    }
    best
}

/// Parse a PD code given as a JSON list of 4-element integer lists, e.g.
/// `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]`. `[]` is the 0-crossing unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let tuples: Vec<[u64; 4]> = serde_json::from_str(text)
        .map_err(|e| DiagramError::MalformedInput(format!("expected a JSON list of 4-tuples of positive integers: {e}")))?;
    let mut t32 = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut row = [0u32; 4];
        for (i, &x) in t.iter().enumerate() {
            if x == 0 || x > u32::MAX as u64 {
                return Err(DiagramError::MalformedInput(format!(
                    "edge label {x} out of range; labels must be positive integers"
                )));
            }
            row[i] = x as u32;
        }
        t32.push(row);
    }
    Diagram::from_pd_tuples(t32, None)
}

impl Diagram {
    /// The distinguished 0-crossing unknot diagram (2 regions by convention).
    pub fn unknot() -> Diagram {
        Diagram {
            crossings: Vec::new(),
            edge_count: 0,
            name: None,
        }
    }

    /// Build and validate a diagram from raw PD tuples (slot 0 = incoming
    /// under-strand, counterclockwise order). Labels may be any positive
    /// integers; they are normalized order-preservingly to `1..=2c`.
    pub fn from_pd_tuples(tuples: Vec<[EdgeId; 4]>, name: Option<String>) -> Result<Diagram, DiagramError> {
        let c = tuples.len();
        if c == 0 {
            let mut d = Diagram::unknot();
            d.name = name;
            return Ok(d);
        }
        let n = 2 * c as u32;

        // Every label appears exactly twice.
        let mut counts: BTreeMap<EdgeId, u32> = BTreeMap::new();
        for t in &tuples {
            for &e in t {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        for (&e, &k) in &counts {
            if k != 2 {
                return Err(DiagramError::LabelError(format!(
                    "edge label {e} appears {k} times, expected exactly 2"
                )));
            }
        }
        // Order-preserving normalization to 1..=2c.
        let relabel: BTreeMap<EdgeId, EdgeId> = counts
            .keys()
            .enumerate()
            .map(|(i, &e)| (e, i as EdgeId + 1))
            .collect();
        let tuples: Vec<[EdgeId; 4]> = tuples
            .iter()
            .map(|t| [relabel[&t[0]], relabel[&t[1]], relabel[&t[2]], relabel[&t[3]]])
            .collect();

        // Link-component count: opposite slots carry the same strand.
        let mut uf = UnionFind::new(n as usize + 1);
        for t in &tuples {
            uf.union(t[0] as usize, t[2] as usize);
            uf.union(t[1] as usize, t[3] as usize);
        }
        let comps = (1..=n as usize).map(|e| uf.find(e)).collect::<BTreeSet<_>>().len();
        if comps != 1 {
            return Err(DiagramError::NotAKnot(comps));
        }

        // Under-strand consecutiveness fixes the traversal numbering.
        for (i, t) in tuples.iter().enumerate() {
            if t[2] != next_edge(t[0], n) {
                return Err(DiagramError::MalformedInput(format!(
                    "crossing {i}: slot 2 label {} does not follow slot 0 label {} along the strand",
                    t[2], t[0]
                )));
            }
        }

        // Resolve which over slot is the incoming one.
        let mut crossings = Vec::with_capacity(c);
        for (i, t) in tuples.iter().enumerate() {
            let (x, y) = (t[1], t[3]);
            let x_in = next_edge(x, n) == y;
            let y_in = next_edge(y, n) == x;
            let over_in_raw: u8 = match (x_in, y_in) {
                (true, false) => 1,
                (false, true) => 3,
                (true, true) => {
                    // Only possible when n divides 2 (one-crossing kinks):
                    // settle by where the other end of x lives.
                    let mut other_is_head = false;
                    'outer: for (j, s) in tuples.iter().enumerate() {
                        for (k, &e) in s.iter().enumerate() {
                            if e == x && !(j == i && k == 1) {
                                other_is_head = k == 0;
                                break 'outer;
                            }
                        }
                    }
                    if other_is_head {
                        3
                    } else {
                        1
                    }
                }
                (false, false) => {
                    return Err(DiagramError::MalformedInput(format!(
                        "crossing {i}: over-strand labels {x} and {y} are not consecutive along the strand"
                    )));
                }
            };
            let r = canonical_rotation(*t);
            crossings.push(Crossing {
                slots: [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]],
                under_in: ((4 - r) % 4) as u8,
                over_in: ((over_in_raw as usize + 4 - r) % 4) as u8,
            });
        }

        // Every edge must have exactly one incoming end.
        let mut heads = vec![0u32; n as usize + 1];
        for cr in &crossings {
            heads[cr.slots[cr.under_in as usize] as usize] += 1;
            heads[cr.slots[cr.over_in as usize] as usize] += 1;
        }
        if let Some(e) = (1..=n as usize).find(|&e| heads[e] != 1) {
            return Err(DiagramError::MalformedInput(format!(
                "edge {e} has {} incoming ends, expected 1; inconsistent strand numbering",
                heads[e]
            )));
        }

        let d = Diagram {
            crossings,
            edge_count: n,
            name,
        };
        let faces = d.regions();
        if faces.len() != c + 2 {
            return Err(DiagramError::NotPlanar {
                found: faces.len(),
                expected: c + 2,
            });
        }
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Diagram {
        self.name = Some(name.into());
        self
    }

    /// PD code text, `[[a,b,c,d],...]` with slot 0 the incoming under edge.
    pub fn pd_string(&self) -> String {
        let rows: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.pd_tuple();
                format!("[{},{},{},{}]", t[0], t[1], t[2], t[3])
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// The regions of the diagram as orbits of the face-traversal
    /// permutation (rotate-at-vertex composed with the edge involution),
    /// in canonical order: sorted by smallest corner.
    pub fn regions(&self) -> Vec<Region> {
        let c = self.crossings.len();
        if c == 0 {
            // Two regions by convention; no corners.
            return vec![
                Region {
                    id: 0,
                    corners: Vec::new(),
                    incident: BTreeSet::new(),
                    cost: 0,
                },
                Region {
                    id: 1,
                    corners: Vec::new(),
                    incident: BTreeSet::new(),
                    cost: 0,
                },
            ];
        }
        // Darts are (crossing, slot), encoded as 4*crossing + slot.
        // alpha: partner dart along the same edge.
        let n = self.edge_count as usize;
        let mut by_edge: Vec<[usize; 2]> = vec![[usize::MAX; 2]; n + 1];
        for (v, cr) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let e = cr.slots[s] as usize;
                let slot = if by_edge[e][0] == usize::MAX { 0 } else { 1 };
                by_edge[e][slot] = 4 * v + s;
            }
        }
        let mut alpha = vec![0usize; 4 * c];
        for e in 1..=n {
            let [d0, d1] = by_edge[e];
            alpha[d0] = d1;
            alpha[d1] = d0;
        }
        let mut seen = vec![false; 4 * c];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..4 * c {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                orbit.push(d);
                // alpha composed with sigma: the orbit element (v, s) is the
                // corner between slots s and s+1 of crossing v.
                d = alpha[(d & !3) | ((d + 1) & 3)];
                if d == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        orbits.sort_by_key(|o| *o.iter().min().unwrap());
        orbits
            .into_iter()
            .enumerate()
            .map(|(id, orbit)| {
                // Rotate the cyclic corner list to start at the minimum dart.
                let min_pos = orbit
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &d)| d)
                    .map(|(i, _)| i)
                    .unwrap();
                let corners: Vec<(CrossingId, u8)> = orbit
                    .iter()
                    .cycle()
                    .skip(min_pos)
                    .take(orbit.len())
                    .map(|&d| (d / 4, (d % 4) as u8))
                    .collect();
                let incident: BTreeSet<CrossingId> = corners.iter().map(|&(v, _)| v).collect();
                let cost = incident.len();
                Region {
                    id,
                    corners,
                    incident,
                    cost,
                }
            })
            .collect()
    }

    /// Default choice of unbounded region: the one containing the corner
    /// between PD slots 0 and 1 of crossing 0. PD codes carry no embedding
    /// side information, so this is a labeling convention, overridable where
    /// it matters.
    pub fn default_outer_region(&self, regions: &[Region]) -> RegionId {
        if self.crossings.is_empty() {
            return 0;
        }
        let slot = self.crossings[0].under_in;
        regions
            .iter()
            .find(|r| r.corners.contains(&(0, slot)))
            .map(|r| r.id)
            .expect("corner partition covers every corner")
    }

    /// Swap over/under at one crossing. The projection is unchanged.
    pub fn crossing_change(&self, c_id: CrossingId) -> Result<Diagram, DiagramError> {
        if c_id >= self.crossings.len() {
            return Err(DiagramError::UnknownCrossing(c_id));
        }
        let mut crossings = self.crossings.clone();
        crossings[c_id] = crossings[c_id].changed();
        Ok(Diagram {
            crossings,
            edge_count: self.edge_count,
            name: self.name.clone(),
        })
    }

    /// Swap over/under at every crossing in `targets`.
    pub fn change_crossings(&self, targets: impl IntoIterator<Item = CrossingId>) -> Result<Diagram, DiagramError> {
        let mut crossings = self.crossings.clone();
        for c_id in targets {
            if c_id >= crossings.len() {
                return Err(DiagramError::UnknownCrossing(c_id));
            }
            crossings[c_id] = crossings[c_id].changed();
        }
        Ok(Diagram {
            crossings,
            edge_count: self.edge_count,
            name: self.name.clone(),
        })
    }

    /// Region crossing changes on the set `region_ids`: a crossing is
    /// changed iff it is incident (set-based) to an odd number of the chosen
    /// regions. Equals performing the region changes one after another.
    pub fn apply_region_changes(&self, region_ids: &[RegionId]) -> Result<Diagram, DiagramError> {
        let regions = self.regions();
        let mut parity = vec![false; self.crossings.len()];
        let chosen: BTreeSet<RegionId> = region_ids.iter().copied().collect();
        for &r in &chosen {
            let region = regions.get(r).ok_or(DiagramError::UnknownRegion(r))?;
            for &v in &region.incident {
                parity[v] = !parity[v];
            }
        }
        self.change_crossings((0..self.crossings.len()).filter(|&v| parity[v]))
    }

    /// Crossings that meet fewer than four distinct regions. Empty iff the
    /// diagram is reduced.
    pub fn nugatory_crossings(&self) -> BTreeSet<CrossingId> {
        let regions = self.regions();
        let mut distinct = vec![BTreeSet::new(); self.crossings.len()];
        for r in &regions {
            for &(v, _) in &r.corners {
                distinct[v].insert(r.id);
            }
        }
        distinct
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() < 4)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    /// Flip every crossing: the mirror image through the projection sphere.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            crossings: self.crossings.iter().map(|c| c.changed()).collect(),
            edge_count: self.edge_count,
            name: self.name.clone(),
        }
    }

    /// Whether two diagrams share the same underlying projection |D|.
    pub fn same_projection(&self, other: &Diagram) -> bool {
        self.edge_count == other.edge_count
            && self.crossings.len() == other.crossings.len()
            && self
                .crossings
                .iter()
                .zip(&other.crossings)
                .all(|(a, b)| a.slots == b.slots)
    }

    /// Connected sum, splicing along the lowest-numbered edge on the
    /// (default) unbounded face of each summand.
    pub fn connected_sum(&self, other: &Diagram) -> Diagram {
        if self.crossings.is_empty() {
            return other.clone();
        }
        if other.crossings.is_empty() {
            return self.clone();
        }
        let splice_edge = |d: &Diagram| -> EdgeId {
            let regions = d.regions();
            let outer = &regions[d.default_outer_region(&regions)];
            outer
                .corners
                .iter()
                .map(|&(v, s)| d.crossings[v].slots[s as usize])
                .min()
                .unwrap()
        };
        let a = splice_edge(self);
        let b = splice_edge(other);
        let n2 = other.edge_count;
        // Cut edge a of d1 and edge b of d2, then route d1's strand through
        // all of d2: the piece leaving a's tail keeps label a, d2's edges
        // become a+1..=a+n2 (ending with the piece that re-enters d1 at a's
        // old head), and d1's remaining edges shift up by n2. The two
        // occurrences of a cut edge map differently depending on whether the
        // slot is an incoming end.
        let mut tuples: Vec<[EdgeId; 4]> = Vec::with_capacity(self.crossings.len() + other.crossings.len());
        for c in &self.crossings {
            let mut t = [0; 4];
            for s in 0..4 {
                let e = c.slots[s];
                let incoming = s as u8 == c.under_in || s as u8 == c.over_in;
                t[s] = match (e == a, incoming) {
                    (true, true) => a + n2,
                    (true, false) => a,
                    (false, _) => {
                        if e < a {
                            e
                        } else {
                            e + n2
                        }
                    }
                };
            }
            let u = c.under_in as usize;
            tuples.push([t[u], t[(u + 1) % 4], t[(u + 2) % 4], t[(u + 3) % 4]]);
        }
        for c in &other.crossings {
            let mut t = [0; 4];
            for s in 0..4 {
                let e = c.slots[s];
                let incoming = s as u8 == c.under_in || s as u8 == c.over_in;
                t[s] = match (e == b, incoming) {
                    (true, true) => a,
                    (true, false) => a + n2,
                    (false, _) => a + (e + n2 - b - 1) % n2 + 1,
                };
            }
            let u = c.under_in as usize;
            tuples.push([t[u], t[(u + 1) % 4], t[(u + 2) % 4], t[(u + 3) % 4]]);
        }
        Diagram::from_pd_tuples(tuples, None).expect("splice of valid knot diagrams is a valid knot diagram")
    }

    /// Cache key: edges renumbered by strand traversal starting from the
    /// edge at (crossing 0, PD slot 0), then the PD tuples sorted.
    pub fn canonical_key(&self) -> String {
        if self.crossings.is_empty() {
            return "[]".to_string();
        }
        let n = self.edge_count;
        let start = self.crossings[0].pd_tuple()[0];
        let renum = |e: EdgeId| ((e + n - start) % n) + 1;
        let mut rows: Vec<[EdgeId; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.pd_tuple();
                [renum(t[0]), renum(t[1]), renum(t[2]), renum(t[3])]
            })
            .collect();
        rows.sort();
        let rows: Vec<String> = rows
            .iter()
            .map(|t| format!("[{},{},{},{}]", t[0], t[1], t[2], t[3]))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// The standard (2, 2k+1)-torus diagram: 2k+1 crossings in a single twist
/// region, two (2k+1)-cost faces and 2k+1 bigons.
pub fn gen_torus(k: u32) -> Diagram {
    assert!(k >= 1, "gen_torus requires k >= 1");
    let c = 2 * k + 1;
    let n = 2 * c;
    let e = |x: u32| (x - 1) % n + 1;
    // The two visits of a crossing are c edges apart along the strand.
    let tuples: Vec<[EdgeId; 4]> = (0..c)
        .map(|i| [e(2 * i + 1), e(2 * i + 1 + c), e(2 * i + 2), e(2 * i + 2 + c)])
        .collect();
    Diagram::from_pd_tuples(tuples, Some(format!("T(2,{})", c)))
        .expect("torus family diagrams are valid")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

//! Exhaustive computation of the multi-region index MRI(D) and the region
//! index Reg(D).
//!
//! Targets (crossing-change sets) are enumerated level by level in
//! nondecreasing size. Every target that unknots the diagram is converted to
//! its cheapest realizing region set by solving the GF(2) incidence system
//! and minimizing over the kernel coset. Since each changed crossing lies in
//! the boundary of at least one chosen region, every realization of a target
//! T costs at least |T|, which justifies cutting the enumeration once |T|
//! reaches the best cost found.
//!
//! Per-target certificates reuse projection-level data: the Goeritz frame
//! recomputes determinants from sign-flipped zeta vectors, and the bracket
//! state table serves every over/under assignment of the projection.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Region, RegionId};
use crate::goeritz::{self, GoeritzFrame};
use crate::invariants::{BracketTable, Evidence, InvariantError, UnknotCertificate, Verdict};
use crate::laurent::LaurentPoly;
use crate::region_algebra::{
    incidence_from_regions, min_cost_in_coset, AlgebraError, CrossingSet, IncidenceSystem, RegionSet,
};
use crate::{DEFAULT_CROSSING_CAP, DEFAULT_KERNEL_CAP};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("diagram has {crossings} crossings, above the configured cap {cap}")]
    TooLarge { crossings: usize, cap: usize },
    #[error("incidence system has no solution for an unknotting target; input is not a knot diagram")]
    NoSolution,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Crossing-count cap for the exponential stages.
    pub cap: usize,
    /// Cut enumeration at |T| >= best cost so far.
    pub prune: bool,
    /// Worker threads for target partitioning (1 = sequential).
    pub threads: usize,
    /// Cap on the kernel dimension for coset enumeration.
    pub kernel_cap: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: DEFAULT_CROSSING_CAP,
            prune: true,
            threads: 1,
            kernel_cap: DEFAULT_KERNEL_CAP,
        }
    }
}

/// Result of the exhaustive search on one diagram.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub mri: usize,
    pub mri_witness: Vec<RegionId>,
    /// Minimum cost of a single unknotting region, if one exists.
    pub reg: Option<usize>,
    pub reg_witness: Option<RegionId>,
    pub targets_examined: usize,
    /// Certificates for the unknotting targets encountered.
    pub certificates: BTreeMap<CrossingSet, UnknotCertificate>,
}

/// Optional external data about the underlying knot, as ingested from a
/// table row.
#[derive(Clone, Debug, Default)]
pub struct KnotRecord {
    pub name: String,
    pub pd: String,
    pub unknotting_number: Option<u32>,
    pub signature: Option<i64>,
    pub conway_a2: Option<i64>,
    pub determinant: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// MRI >= 2 for any nontrivial knot.
    Trivial2,
    /// mg2 < MRI.
    Mg2Plus1,
    /// u(K) <= MRI.
    UnknottingNumber,
    /// signature 0 and odd Conway a2 force MRI >= 3.
    KKS3,
    /// The exhaustive per-diagram search value.
    DiagramSearch,
    /// MRI(D) <= 2c(D) on reduced diagrams.
    TwoC,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Trivial2 => "trivial2",
            Provenance::Mg2Plus1 => "mg2plus1",
            Provenance::UnknottingNumber => "unknotting_number",
            Provenance::KKS3 => "kks3",
            Provenance::DiagramSearch => "diagram_search",
            Provenance::TwoC => "two_c",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Bound {
    pub value: usize,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug)]
pub struct BoundBracket {
    pub lower: Bound,
    pub upper: Bound,
    pub tight: bool,
}

/// Boolean theorem checks with the computed numbers attached.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub crossings: usize,
    pub reduced: bool,
    pub mri: usize,
    pub reg: Option<usize>,
    pub mg2: usize,
    pub unknotting_number: Option<u32>,
    /// mri <= 2c (checked on reduced diagrams).
    pub thm1: bool,
    /// mg2 < mri on nontrivial diagrams.
    pub thm2: bool,
    /// u <= mri, when u is known.
    pub ineq2: Option<bool>,
    /// mri >= 2 on nontrivial diagrams.
    pub ineq3: bool,
    /// For mri in {2,3}: the minimal witness is a single region and
    /// reg = mri.
    pub witness_check: Option<bool>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.thm1 && self.thm2 && self.ineq2.unwrap_or(true) && self.ineq3 && self.witness_check.unwrap_or(true)
    }
}

/// Projection-level context shared by every target of one search.
struct Ctx {
    regions: Vec<Region>,
    sys: IncidenceSystem,
    frame: GoeritzFrame,
    table: BracketTable,
    signs: Vec<i8>,
    base_writhe: i64,
    crossings: usize,
}

impl Ctx {
    fn build(d: &Diagram, cfg: &SearchConfig) -> Result<Ctx, SearchError> {
        let crossings = d.crossing_count();
        if crossings > cfg.cap {
            return Err(SearchError::TooLarge {
                crossings,
                cap: cfg.cap,
            });
        }
        let regions = d.regions();
        let sys = incidence_from_regions(&regions, crossings);
        let frame = GoeritzFrame::new(d, None)?;
        let table = BracketTable::build(d, cfg.cap)?;
        let signs: Vec<i8> = d.crossings().iter().map(|c| c.sign()).collect();
        let base_writhe = signs.iter().map(|&s| s as i64).sum();
        Ok(Ctx {
            regions,
            sys,
            frame,
            table,
            signs,
            base_writhe,
            crossings,
        })
    }

    /// Unknot certificate for the diagram with the crossings in `mask`
    /// changed: determinant filter first, then the normalized bracket.
    fn certify(&self, mask: u64) -> UnknotCertificate {
        let zeta = self
            .frame
            .zeta_after((0..self.crossings).filter(|&c| mask >> c & 1 == 1));
        let det = self.frame.determinant(&zeta);
        if !det.is_one() {
            return UnknotCertificate {
                verdict: Verdict::Knotted,
                evidence: Evidence::DeterminantNotOne(det),
                crossings: self.crossings,
            };
        }
        let flipped_sign_sum: i64 = (0..self.crossings)
            .filter(|&c| mask >> c & 1 == 1)
            .map(|c| self.signs[c] as i64)
            .sum();
        let writhe = self.base_writhe - 2 * flipped_sign_sum;
        let f = &LaurentPoly::neg_a_cubed_pow(-writhe) * &self.table.bracket(mask);
        if f.is_one() {
            UnknotCertificate {
                verdict: Verdict::Unknot,
                evidence: Evidence::JonesTrivial,
                crossings: self.crossings,
            }
        } else {
            UnknotCertificate {
                verdict: Verdict::Knotted,
                evidence: Evidence::JonesNontrivial,
                crossings: self.crossings,
            }
        }
    }

    fn certify_cached(&self, d: &Diagram, mask: u64, cache: Option<&UnknotCache>) -> UnknotCertificate {
        match cache {
            None => self.certify(mask),
            Some(cache) => {
                let changed = d
                    .change_crossings((0..self.crossings).filter(|&c| mask >> c & 1 == 1))
                    .expect("mask stays within the diagram");
                let key = changed.canonical_key();
                if let Some(cert) = cache.get(&key) {
                    return cert;
                }
                let cert = self.certify(mask);
                cache.put(&key, &cert);
                cert
            }
        }
    }
}

fn combination_masks(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct LevelHit {
    mask: u64,
    cert: UnknotCertificate,
    witness: RegionSet,
    cost: usize,
}

/// Compute MRI(D) and Reg(D) exactly.
pub fn mri_of_diagram(d: &Diagram, cfg: &SearchConfig, cache: Option<&UnknotCache>) -> Result<SearchResult, SearchError> {
    let ctx = Ctx::build(d, cfg)?;
    let c = ctx.crossings;

    let eval_level = |masks: &[u64]| -> Result<Vec<LevelHit>, SearchError> {
        let eval_one = |&mask: &u64| -> Result<Option<LevelHit>, SearchError> {
            let cert = ctx.certify_cached(d, mask, cache);
            if cert.verdict != Verdict::Unknot {
                return Ok(None);
            }
            let target = CrossingSet(mask);
            let s0 = ctx.sys.solve_for_target(target)?.ok_or(SearchError::NoSolution)?;
            let (witness, cost) = min_cost_in_coset(&ctx.regions, s0, &ctx.sys, cfg.kernel_cap)?;
            Ok(Some(LevelHit {
                mask,
                cert,
                witness,
                cost,
            }))
        };
        let results: Vec<Result<Option<LevelHit>, SearchError>> = if cfg.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                use rayon::prelude::*;
                masks.par_iter().map(eval_one).collect()
            })
        } else {
            masks.iter().map(eval_one).collect()
        };
        results
            .into_iter()
            .filter_map(|r| r.transpose())
            .collect::<Result<Vec<_>, _>>()
    };

    let mut best: Option<(usize, RegionSet)> = None;
    let mut certificates = BTreeMap::new();
    let mut targets_examined = 0usize;
    for size in 0..=c {
        if cfg.prune {
            if let Some((best_cost, _)) = best {
                if size >= best_cost {
                    break;
                }
            }
        }
        let masks = combination_masks(c, size);
        targets_examined += masks.len();
        for hit in eval_level(&masks)? {
            certificates.insert(CrossingSet(hit.mask), hit.cert);
            let better = match &best {
                None => true,
                Some((cost, wit)) => hit.cost < *cost || (hit.cost == *cost && hit.witness.ids() < wit.ids()),
            };
            if better {
                best = Some((hit.cost, hit.witness));
            }
        }
    }
    let (mri, witness) = best.ok_or(SearchError::NoSolution)?;

    // Reg(D): cheapest single unknotting region.
    let mut reg: Option<usize> = None;
    let mut reg_witness: Option<RegionId> = None;
    for region in &ctx.regions {
        let mask = region.incident.iter().fold(0u64, |m, &v| m | 1 << v);
        let cert = ctx.certify_cached(d, mask, cache);
        certificates.entry(CrossingSet(mask)).or_insert_with(|| cert.clone());
        if cert.verdict == Verdict::Unknot && reg.map_or(true, |r| region.cost < r) {
            reg = Some(region.cost);
            reg_witness = Some(region.id);
        }
    }

    Ok(SearchResult {
        mri,
        mri_witness: witness.ids(),
        reg,
        reg_witness,
        targets_examined,
        certificates,
    })
}

/// Minimum cost of a single unknotting region, with witness.
pub fn reg_of_diagram(d: &Diagram, cfg: &SearchConfig) -> Result<(Option<usize>, Option<RegionId>), SearchError> {
    let ctx = Ctx::build(d, cfg)?;
    let mut reg: Option<usize> = None;
    let mut witness: Option<RegionId> = None;
    for region in &ctx.regions {
        let mask = region.incident.iter().fold(0u64, |m, &v| m | 1 << v);
        let cert = ctx.certify(mask);
        if cert.verdict == Verdict::Unknot && reg.map_or(true, |r| region.cost < r) {
            reg = Some(region.cost);
            witness = Some(region.id);
        }
    }
    Ok((reg, witness))
}

/// Stream of unknotting targets in increasing size then lexicographic
/// order, restricted to |T| < cost_cap.
pub struct UnknottingTargets {
    ctx: Ctx,
    cost_cap: usize,
    size: usize,
    pending: std::vec::IntoIter<u64>,
}

pub fn unknotting_targets(d: &Diagram, cost_cap: usize, cfg: &SearchConfig) -> Result<UnknottingTargets, SearchError> {
    let ctx = Ctx::build(d, cfg)?;
    let first = combination_masks(ctx.crossings, 0);
    Ok(UnknottingTargets {
        ctx,
        cost_cap,
        size: 0,
        pending: first.into_iter(),
    })
}

impl Iterator for UnknottingTargets {
    type Item = CrossingSet;

    fn next(&mut self) -> Option<CrossingSet> {
        loop {
            if self.size >= self.cost_cap {
                return None;
            }
            match self.pending.next() {
                Some(mask) => {
                    if self.ctx.certify(mask).verdict == Verdict::Unknot {
                        return Some(CrossingSet(mask));
                    }
                }
                None => {
                    self.size += 1;
                    if self.size > self.ctx.crossings || self.size >= self.cost_cap {
                        return None;
                    }
                    self.pending = combination_masks(self.ctx.crossings, self.size).into_iter();
                }
            }
        }
    }
}

/// Assemble the theorem-derived bound bracket around the searched value.
pub fn bound_bracket(d: &Diagram, rec: Option<&KnotRecord>, cfg: &SearchConfig) -> Result<BoundBracket, SearchError> {
    let sr = mri_of_diagram(d, cfg, None)?;
    let m = goeritz::mg2(d)?;
    Ok(bound_bracket_from_parts(d, rec, &sr, m))
}

pub fn bound_bracket_from_parts(
    d: &Diagram,
    rec: Option<&KnotRecord>,
    sr: &SearchResult,
    mg2: usize,
) -> BoundBracket {
    let mut lower_candidates: Vec<(usize, Provenance)> = Vec::new();
    if sr.mri > 0 {
        lower_candidates.push((2, Provenance::Trivial2));
        lower_candidates.push((mg2 + 1, Provenance::Mg2Plus1));
        if let Some(u) = rec.and_then(|r| r.unknotting_number) {
            lower_candidates.push((u as usize, Provenance::UnknottingNumber));
        }
        if let Some(r) = rec {
            if r.signature == Some(0) && r.conway_a2.is_some_and(|a2| a2.rem_euclid(2) == 1) {
                lower_candidates.push((3, Provenance::KKS3));
            }
        }
    }
    let lower_value = lower_candidates.iter().map(|&(v, _)| v).max().unwrap_or(0);
    let lower = Bound {
        value: lower_value,
        provenance: lower_candidates
            .iter()
            .filter(|&&(v, _)| v == lower_value)
            .map(|&(_, p)| p)
            .collect(),
    };

    let mut upper_candidates = vec![(sr.mri, Provenance::DiagramSearch)];
    if d.is_reduced() {
        upper_candidates.push((2 * d.crossing_count(), Provenance::TwoC));
    }
    let upper_value = upper_candidates.iter().map(|&(v, _)| v).min().unwrap();
    let upper = Bound {
        value: upper_value,
        provenance: upper_candidates
            .iter()
            .filter(|&&(v, _)| v == upper_value)
            .map(|&(_, p)| p)
            .collect(),
    };

    let tight = lower.value == upper.value;
    BoundBracket { lower, upper, tight }
}

/// Run the theorem checks on one diagram.
pub fn verify_theorems(d: &Diagram, rec: Option<&KnotRecord>, cfg: &SearchConfig) -> Result<TheoremReport, SearchError> {
    let sr = mri_of_diagram(d, cfg, None)?;
    let m = goeritz::mg2(d)?;
    Ok(theorem_report_from_parts(d, rec, &sr, m))
}

pub fn theorem_report_from_parts(
    d: &Diagram,
    rec: Option<&KnotRecord>,
    sr: &SearchResult,
    mg2: usize,
) -> TheoremReport {
    let crossings = d.crossing_count();
    let reduced = d.is_reduced();
    let nontrivial = sr.mri > 0;
    let u = rec.and_then(|r| r.unknotting_number);
    let witness_check = if nontrivial && (sr.mri == 2 || sr.mri == 3) {
        Some(sr.reg == Some(sr.mri) && sr.mri_witness.len() == 1)
    } else {
        None
    };
    TheoremReport {
        crossings,
        reduced,
        mri: sr.mri,
        reg: sr.reg,
        mg2,
        unknotting_number: u,
        thm1: !reduced || sr.mri <= 2 * crossings,
        thm2: !nontrivial || mg2 < sr.mri,
        ineq2: u.map(|u| u as usize <= sr.mri),
        ineq3: !nontrivial || sr.mri >= 2,
        witness_check,
    }
}

/// Concurrent-read, serialized-write store of unknot certificates keyed by
/// canonical diagram strings, optionally backed by a JSON-lines file.
pub struct UnknotCache {
    map: RwLock<HashMap<String, UnknotCertificate>>,
    writer: Option<Mutex<File>>,
}

impl UnknotCache {
    pub fn in_memory() -> UnknotCache {
        UnknotCache {
            map: RwLock::new(HashMap::new()),
            writer: None,
        }
    }

    /// Load any existing entries and append new ones to `path`.
    pub fn open(path: &Path) -> std::io::Result<UnknotCache> {
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for line in reader.lines() {
                let line = line?;
                if let Some((key, cert)) = parse_cache_line(&line) {
                    map.insert(key, cert);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(UnknotCache {
            map: RwLock::new(map),
            writer: Some(Mutex::new(file)),
        })
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<UnknotCertificate> {
        self.map.read().expect("cache lock").get(key).cloned()
    }

    pub fn put(&self, key: &str, cert: &UnknotCertificate) {
        let mut map = self.map.write().expect("cache lock");
        if map.contains_key(key) {
            return;
        }
        map.insert(key.to_string(), cert.clone());
        if let Some(writer) = &self.writer {
            let mut file = writer.lock().expect("cache writer lock");
            let _ = writeln!(file, "{}", cache_line(key, cert));
        }
    }
}

fn cache_line(key: &str, cert: &UnknotCertificate) -> String {
    let (verdict, evidence, det) = match (&cert.verdict, &cert.evidence) {
        (Verdict::Unknot, _) => ("unknot", "jones_trivial", None),
        (_, Evidence::DeterminantNotOne(d)) => ("knotted", "determinant_not_one", Some(d.to_string())),
        (_, Evidence::JonesNontrivial) => ("knotted", "jones_nontrivial", None),
        (_, Evidence::JonesTrivial) => ("indeterminate", "jones_trivial", None),
    };
    let mut obj = serde_json::json!({
        "key": key,
        "verdict": verdict,
        "evidence": evidence,
        "crossings": cert.crossings,
    });
    if let Some(det) = det {
        obj["det"] = serde_json::Value::String(det);
    }
    obj.to_string()
}

fn parse_cache_line(line: &str) -> Option<(String, UnknotCertificate)> {
    let v: serde_json::Value = serde_json::from_str(line).ok()?;
    let key = v.get("key")?.as_str()?.to_string();
    let crossings = v.get("crossings")?.as_u64()? as usize;
    let verdict = v.get("verdict")?.as_str()?;
    let evidence = v.get("evidence")?.as_str()?;
    let cert = match (verdict, evidence) {
        ("unknot", _) => UnknotCertificate {
            verdict: Verdict::Unknot,
            evidence: Evidence::JonesTrivial,
            crossings,
        },
        ("knotted", "determinant_not_one") => {
            let det: BigInt = v.get("det")?.as_str()?.parse().ok()?;
            UnknotCertificate {
                verdict: Verdict::Knotted,
                evidence: Evidence::DeterminantNotOne(det),
                crossings,
            }
        }
        ("knotted", _) => UnknotCertificate {
            verdict: Verdict::Knotted,
            evidence: Evidence::JonesNontrivial,
            crossings,
        },
        _ => return None,
    };
    Some((key, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{gen_torus, Diagram};

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn unknot_diagram_has_mri_zero() {
        let sr = mri_of_diagram(&Diagram::unknot(), &cfg(), None).unwrap();
        assert_eq!(sr.mri, 0);
        assert!(sr.mri_witness.is_empty());
    }

    #[test]
    fn trefoil_mri_and_reg() {
        let sr = mri_of_diagram(&gen_torus(1), &cfg(), None).unwrap();
        assert_eq!(sr.mri, 2);
        assert_eq!(sr.reg, Some(2));
        // Witness re-certifies.
        let changed = gen_torus(1).apply_region_changes(&sr.mri_witness).unwrap();
        assert!(crate::invariants::is_unknot(&changed, 16).unwrap().is_unknot());
        let cost: usize = {
            let regions = gen_torus(1).regions();
            sr.mri_witness.iter().map(|&r| regions[r].cost).sum()
        };
        assert_eq!(cost, sr.mri);
    }

    #[test]
    fn torus_family_small() {
        // T(2,5): one bigon change unknots; MRI = u = 2.
        let sr = mri_of_diagram(&gen_torus(2), &cfg(), None).unwrap();
        assert_eq!(sr.mri, 2);
        assert_eq!(sr.reg, Some(2));
        // T(2,7): MRI = 4 via two disjoint bigons (cost 3 is unrealizable:
        // region costs are 2 and 7).
        let sr = mri_of_diagram(&gen_torus(3), &cfg(), None).unwrap();
        assert_eq!(sr.mri, 4);
        assert_eq!(sr.mri_witness.len(), 2);
    }

    #[test]
    fn granny_diagram_mri() {
        let granny = gen_torus(1).mirror().connected_sum(&gen_torus(1).mirror());
        let sr = mri_of_diagram(&granny, &cfg(), None).unwrap();
        assert_eq!(sr.mri, 4);
        let changed = granny.apply_region_changes(&sr.mri_witness).unwrap();
        assert!(crate::invariants::is_unknot(&changed, 16).unwrap().is_unknot());
    }

    #[test]
    fn no_prune_matches_pruned() {
        for d in [gen_torus(1), gen_torus(2), gen_torus(1).connected_sum(&gen_torus(1))] {
            let pruned = mri_of_diagram(&d, &cfg(), None).unwrap();
            let mut nc = cfg();
            nc.prune = false;
            let full = mri_of_diagram(&d, &nc, None).unwrap();
            assert_eq!(pruned.mri, full.mri);
            assert_eq!(pruned.mri_witness, full.mri_witness);
            assert_eq!(pruned.reg, full.reg);
        }
    }

    #[test]
    fn threads_do_not_change_results() {
        let d = gen_torus(2);
        let sequential = mri_of_diagram(&d, &cfg(), None).unwrap();
        let mut tc = cfg();
        tc.threads = 4;
        let parallel = mri_of_diagram(&d, &tc, None).unwrap();
        assert_eq!(sequential.mri, parallel.mri);
        assert_eq!(sequential.mri_witness, parallel.mri_witness);
        assert_eq!(sequential.targets_examined, parallel.targets_examined);
    }

    #[test]
    fn target_stream_order() {
        // The unknot diagram yields the empty target first.
        let mut it = unknotting_targets(&Diagram::unknot(), 3, &cfg()).unwrap();
        assert_eq!(it.next(), Some(CrossingSet::EMPTY));
        // Every singleton unknots the standard trefoil.
        let targets: Vec<CrossingSet> = unknotting_targets(&gen_torus(1), 2, &cfg()).unwrap().collect();
        assert_eq!(
            targets,
            vec![
                CrossingSet::from_ids([0]),
                CrossingSet::from_ids([1]),
                CrossingSet::from_ids([2])
            ]
        );
    }

    #[test]
    fn granny_has_no_unknotting_singleton() {
        let granny = gen_torus(1).connected_sum(&gen_torus(1));
        let first = unknotting_targets(&granny, 7, &cfg()).unwrap().next().unwrap();
        assert!(first.len() >= 2, "u(granny) = 2, got {first}");
    }

    #[test]
    fn bounds_torus_5() {
        let rec = KnotRecord {
            name: "5_1".into(),
            unknotting_number: Some(2),
            ..Default::default()
        };
        let bb = bound_bracket(&gen_torus(2), Some(&rec), &cfg()).unwrap();
        assert_eq!(bb.lower.value, 2);
        assert_eq!(bb.upper.value, 2);
        assert!(bb.tight);
        assert!(bb.upper.provenance.contains(&Provenance::DiagramSearch));
    }

    #[test]
    fn bounds_unknot_diagram() {
        let bb = bound_bracket(&Diagram::unknot(), None, &cfg()).unwrap();
        assert_eq!(bb.lower.value, 0);
        assert_eq!(bb.upper.value, 0);
        assert!(bb.tight);
    }

    #[test]
    fn kks_bound_applies() {
        // A record with signature 0 and odd a2 raises the lower bound to 3
        // when nothing else does.
        let rec = KnotRecord {
            name: "4_1".into(),
            signature: Some(0),
            conway_a2: Some(-1),
            unknotting_number: Some(1),
            ..Default::default()
        };
        let granny = gen_torus(1).connected_sum(&gen_torus(1));
        let sr = mri_of_diagram(&granny, &cfg(), None).unwrap();
        let bb = bound_bracket_from_parts(&granny, Some(&rec), &sr, 0);
        assert_eq!(bb.lower.value, 3);
        assert_eq!(bb.lower.provenance, vec![Provenance::KKS3]);
    }

    #[test]
    fn theorem_report_trefoil() {
        let rec = KnotRecord {
            name: "3_1".into(),
            unknotting_number: Some(1),
            ..Default::default()
        };
        let report = verify_theorems(&gen_torus(1), Some(&rec), &cfg()).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.mri, 2);
        assert_eq!(report.mg2, 1);
        assert_eq!(report.witness_check, Some(true));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("regionum-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let cache = UnknotCache::open(&dir).unwrap();
        let sr = mri_of_diagram(&gen_torus(1), &cfg(), Some(&cache)).unwrap();
        assert_eq!(sr.mri, 2);
        assert!(!cache.is_empty());
        let reloaded = UnknotCache::open(&dir).unwrap();
        assert_eq!(reloaded.len(), cache.len());
        let again = mri_of_diagram(&gen_torus(1), &cfg(), Some(&reloaded)).unwrap();
        assert_eq!(again.mri, 2);
        std::fs::remove_file(&dir).ok();
    }
}

//! Unknot certification: writhe, Kauffman bracket, normalized Jones
//! polynomial, and the layered determinant-then-Jones test.
//!
//! Conventions: the bracket is a state sum over the 2^c smoothings with loop
//! value -A^2 - A^-2 and bracket 1 for the 0-crossing unknot; the
//! A-smoothing at a crossing joins the incoming-under slot to the next slot
//! counterclockwise. f(D) = (-A^3)^(-writhe) * bracket is invariant under
//! Reidemeister moves and equals 1 on unknot diagrams.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::goeritz;
use crate::laurent::LaurentPoly;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, above the configured cap {cap}")]
    TooLarge { crossings: usize, cap: usize },
    #[error(transparent)]
    Algebra(#[from] crate::region_algebra::AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unknot,
    Knotted,
    /// Reserved for configurations where neither certificate applies.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The determinant differs from 1, so the diagram is knotted.
    DeterminantNotOne(BigInt),
    /// f(D) != 1, so the diagram is knotted.
    JonesNontrivial,
    /// f(D) = 1; certifies the unknot under the desk-scale soundness
    /// assumption (no counterexample exists at these crossing counts).
    JonesTrivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknotCertificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub crossings: usize,
}

impl UnknotCertificate {
    pub fn is_unknot(&self) -> bool {
        self.verdict == Verdict::Unknot
    }
}

/// Sum of crossing signs under the orientation induced by the edge
/// numbering.
pub fn writhe(d: &Diagram) -> i64 {
    d.crossings().iter().map(|c| c.sign() as i64).sum()
}

/// Loop counts for every smoothing state of a projection. State bit i set
/// means crossing i takes its B-smoothing relative to the *reference*
/// diagram; a crossing change flips A and B there, so the table serves every
/// over/under assignment of the projection by XOR-ing the state with the
/// changed-crossing mask.
pub struct BracketTable {
    pub loops: Vec<u8>,
    crossings: usize,
}

impl BracketTable {
    pub fn build(d: &Diagram, cap: usize) -> Result<BracketTable, InvariantError> {
        let c = d.crossing_count();
        if c > cap {
            return Err(InvariantError::TooLarge { crossings: c, cap });
        }
        let mut loops = Vec::with_capacity(1 << c);
        // Darts 4v..4v+3; smoothing arcs pair darts at each crossing, the
        // edge involution pairs darts across edges; loops are the cycles.
        let n = d.edge_count() as usize;
        let mut alpha = vec![usize::MAX; 4 * c.max(1)];
        if c > 0 {
            let mut by_edge: Vec<[usize; 2]> = vec![[usize::MAX; 2]; n + 1];
            for (v, cr) in d.crossings().iter().enumerate() {
                for s in 0..4 {
                    let e = cr.slots()[s] as usize;
                    let k = if by_edge[e][0] == usize::MAX { 0 } else { 1 };
                    by_edge[e][k] = 4 * v + s;
                }
            }
            for e in 1..=n {
                alpha[by_edge[e][0]] = by_edge[e][1];
                alpha[by_edge[e][1]] = by_edge[e][0];
            }
        }
        let unders: Vec<usize> = d.crossings().iter().map(|cr| cr.under_in() as usize).collect();
        let mut partner = vec![0usize; 4 * c.max(1)];
        for state in 0u64..(1 << c) {
            for (v, &u) in unders.iter().enumerate() {
                let b = state >> v & 1 == 1;
                for s in 0..4 {
                    partner[4 * v + s] = 4 * v + smooth_partner(u, s, b);
                }
            }
            let mut seen = vec![false; 4 * c];
            let mut count = 0u8;
            for start in 0..4 * c {
                if seen[start] {
                    continue;
                }
                count += 1;
                let mut dart = start;
                while !seen[dart] {
                    seen[dart] = true;
                    let p = partner[dart];
                    seen[p] = true;
                    dart = alpha[p];
                }
            }
            loops.push(count);
        }
        Ok(BracketTable { loops, crossings: c })
    }

    /// Bracket polynomial of the diagram whose changed-crossing set relative
    /// to the reference diagram is `flipped_mask`.
    pub fn bracket(&self, flipped_mask: u64) -> LaurentPoly {
        let c = self.crossings;
        if c == 0 {
            return LaurentPoly::one();
        }
        // Group states by (#B-smoothings, loop count).
        let mut counts = vec![vec![0u64; c + 2]; c + 1];
        for state in 0u64..(1 << c) {
            let b = state.count_ones() as usize;
            let loops = self.loops[(state ^ flipped_mask) as usize] as usize;
            counts[b][loops] += 1;
        }
        let mut total = LaurentPoly::zero();
        for (b, row) in counts.iter().enumerate() {
            for (loops, &k) in row.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let exp = c as i64 - 2 * b as i64;
                let term = LaurentPoly::monomial(exp, BigInt::from(k)).times_delta_pow(loops - 1);
                total += term;
            }
        }
        total
    }
}

fn smooth_partner(u: usize, s: usize, b_smoothing: bool) -> usize {
    let rel = (s + 4 - u) % 4;
    let rel_partner = if b_smoothing {
        // B pairs (1,2) and (3,0).
        match rel {
            0 => 3,
            1 => 2,
            2 => 1,
            _ => 0,
        }
    } else {
        // A pairs (0,1) and (2,3).
        match rel {
            0 => 1,
            1 => 0,
            2 => 3,
            _ => 2,
        }
    };
    (u + rel_partner) % 4
}

/// Kauffman bracket by the full state sum.
pub fn kauffman_bracket(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    Ok(BracketTable::build(d, cap)?.bracket(0))
}

/// The normalized bracket f(D) = (-A^3)^(-w) * <D>.
pub fn jones_normalized(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let bracket = kauffman_bracket(d, cap)?;
    Ok(&LaurentPoly::neg_a_cubed_pow(-writhe(d)) * &bracket)
}

/// Layered unknot test: determinant filter first, then the normalized
/// bracket.
pub fn is_unknot(d: &Diagram, cap: usize) -> Result<UnknotCertificate, InvariantError> {
    let crossings = d.crossing_count();
    if crossings > cap {
        return Err(InvariantError::TooLarge { crossings, cap });
    }
    let det = goeritz::determinant(d)?;
    if !det.is_one() {
        return Ok(UnknotCertificate {
            verdict: Verdict::Knotted,
            evidence: Evidence::DeterminantNotOne(det),
            crossings,
        });
    }
    if jones_normalized(d, cap)?.is_one() {
        Ok(UnknotCertificate {
            verdict: Verdict::Unknot,
            evidence: Evidence::JonesTrivial,
            crossings,
        })
    } else {
        Ok(UnknotCertificate {
            verdict: Verdict::Knotted,
            evidence: Evidence::JonesNontrivial,
            crossings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{gen_torus, parse_pd, Diagram};
    use crate::DEFAULT_CROSSING_CAP as CAP;

    fn trefoil() -> Diagram {
        gen_torus(1)
    }

    #[test]
    fn writhe_values() {
        assert_eq!(writhe(&Diagram::unknot()), 0);
        // The standard Rolfsen trefoil is left-handed; its mirror is the
        // positive trefoil.
        let d = trefoil();
        assert_eq!(writhe(&d), -3);
        assert_eq!(writhe(&d.mirror()), 3);
        let kink = parse_pd("[[1,1,2,2]]").unwrap();
        assert_eq!(writhe(&kink), 1);
    }

    #[test]
    fn bracket_unknot_and_kink() {
        assert!(kauffman_bracket(&Diagram::unknot(), CAP).unwrap().is_one());
        // One-step skein by hand: positive kink has bracket -A^3.
        let kink = parse_pd("[[1,1,2,2]]").unwrap();
        assert_eq!(kauffman_bracket(&kink, CAP).unwrap(), LaurentPoly::monomial(3, -1));
        assert!(jones_normalized(&kink, CAP).unwrap().is_one());
    }

    #[test]
    fn bracket_trefoil() {
        // State-sum oracle by hand for the left trefoil:
        // <3_1> = A^-5 ... mirror of -A^5 - A^-3 + A^-7.
        let b = kauffman_bracket(&trefoil(), CAP).unwrap();
        let mirror_b = kauffman_bracket(&trefoil().mirror(), CAP).unwrap();
        assert_eq!(b.invert_variable(), mirror_b);
        assert_eq!(b.term_count(), 3);
        let f = jones_normalized(&trefoil(), CAP).unwrap();
        assert!(!f.is_one());
        assert_eq!(f.term_count(), 3);
    }

    #[test]
    fn jones_mirror_symmetry() {
        for d in [trefoil(), gen_torus(2)] {
            let f = jones_normalized(&d, CAP).unwrap();
            let g = jones_normalized(&d.mirror(), CAP).unwrap();
            assert_eq!(f.invert_variable(), g);
        }
    }

    #[test]
    fn cap_enforced() {
        let d = gen_torus(3);
        assert!(matches!(
            kauffman_bracket(&d, 5),
            Err(InvariantError::TooLarge { crossings: 7, cap: 5 })
        ));
    }

    #[test]
    fn unknot_certificates() {
        let cert = is_unknot(&Diagram::unknot(), CAP).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknot);
        let cert = is_unknot(&trefoil(), CAP).unwrap();
        assert_eq!(cert.verdict, Verdict::Knotted);
        assert_eq!(cert.evidence, Evidence::DeterminantNotOne(BigInt::from(3)));
        let kink = parse_pd("[[1,1,2,2]]").unwrap();
        assert!(is_unknot(&kink, CAP).unwrap().is_unknot());
    }

    #[test]
    fn trefoil_bigon_region_change_unknots() {
        // The two-crossing region of the trefoil is an unknotting region.
        let d = trefoil();
        let regions = d.regions();
        let bigon = regions.iter().find(|r| r.cost == 2).unwrap();
        let changed = d.apply_region_changes(&[bigon.id]).unwrap();
        assert!(is_unknot(&changed, CAP).unwrap().is_unknot());
    }

    #[test]
    fn trefoil_single_crossing_change_unknots() {
        // u(3_1) = 1: any single crossing change gives determinant 1 and a
        // trivial normalized bracket.
        let d = trefoil();
        for c in 0..3 {
            let changed = d.crossing_change(c).unwrap();
            assert!(is_unknot(&changed, CAP).unwrap().is_unknot());
        }
    }

    #[test]
    fn r1_twist_trade_preserves_f() {
        // Changing a one-crossing region trades one Reidemeister 1 twist
        // for the other; f is unchanged.
        let kink = parse_pd("[[1,1,2,2]]").unwrap();
        let regions = kink.regions();
        let monogon = regions.iter().find(|r| r.corners.len() == 1).unwrap();
        let traded = kink.apply_region_changes(&[monogon.id]).unwrap();
        assert_eq!(
            jones_normalized(&kink, CAP).unwrap(),
            jones_normalized(&traded, CAP).unwrap()
        );
    }

    #[test]
    fn bracket_table_serves_crossing_changes() {
        let d = gen_torus(2);
        let table = BracketTable::build(&d, CAP).unwrap();
        for mask in [0u64, 1, 0b101, 0b11111] {
            let changed = d
                .change_crossings((0..5).filter(|&c| mask >> c & 1 == 1))
                .unwrap();
            let direct = kauffman_bracket(&changed, CAP).unwrap();
            assert_eq!(table.bracket(mask), direct);
        }
    }

    #[test]
    fn ineffective_set_preserves_f() {
        let d = gen_torus(2);
        let sh = crate::region_algebra::checkerboard_shade(&d, None).unwrap();
        let black = sh.class(crate::region_algebra::Color::Black);
        let same = d.apply_region_changes(&black).unwrap();
        assert_eq!(
            jones_normalized(&d, CAP).unwrap(),
            jones_normalized(&same, CAP).unwrap()
        );
    }
}

//! Independent oracles: brute-force enumeration over all region subsets for
//! MRI/Reg, and a second determinant route through the bracket polynomial
//! evaluated at a primitive eighth root of unity. These never touch the
//! pruned search or the Goeritz pipeline they check.

use num_bigint::BigInt;
use num_traits::Zero;

use regionum::diagram::{gen_torus, parse_pd, Diagram};
use regionum::goeritz;
use regionum::invariants::{is_unknot, jones_normalized};
use regionum::search::{mri_of_diagram, reg_of_diagram, SearchConfig};

const CAP: usize = 16;

fn figure8() -> Diagram {
    parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]").unwrap()
}

/// Exhaustive minimum of total region cost over all unknotting region sets.
fn brute_mri(d: &Diagram) -> (usize, Vec<usize>) {
    let regions = d.regions();
    let n = regions.len();
    assert!(n <= 20, "brute force oracle limited to small diagrams");
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u32..(1 << n) {
        let ids: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let changed = d.apply_region_changes(&ids).unwrap();
        if !is_unknot(&changed, CAP).unwrap().is_unknot() {
            continue;
        }
        let cost: usize = ids.iter().map(|&r| regions[r].cost).sum();
        let better = match &best {
            None => true,
            Some((c, w)) => cost < *c || (cost == *c && ids < *w),
        };
        if better {
            best = Some((cost, ids));
        }
    }
    best.expect("every knot diagram has an unknotting region set")
}

/// Exhaustive minimum single-region cost.
fn brute_reg(d: &Diagram) -> Option<usize> {
    let regions = d.regions();
    regions
        .iter()
        .filter(|r| {
            let changed = d.apply_region_changes(&[r.id]).unwrap();
            is_unknot(&changed, CAP).unwrap().is_unknot()
        })
        .map(|r| r.cost)
        .min()
}

#[test]
fn search_matches_brute_force() {
    let cfg = SearchConfig::default();
    let diagrams = vec![
        Diagram::unknot(),
        parse_pd("[[1,1,2,2]]").unwrap(),
        gen_torus(1),
        gen_torus(2),
        gen_torus(3),
        figure8(),
        gen_torus(1).connected_sum(&gen_torus(1)),
        gen_torus(1).mirror().connected_sum(&gen_torus(1)),
    ];
    for d in diagrams {
        let (expected_mri, expected_witness) = brute_mri(&d);
        let sr = mri_of_diagram(&d, &cfg, None).unwrap();
        assert_eq!(sr.mri, expected_mri, "mri mismatch on {}", d.pd_string());
        assert_eq!(sr.mri_witness, expected_witness, "witness mismatch on {}", d.pd_string());
        let expected_reg = brute_reg(&d);
        assert_eq!(sr.reg, expected_reg, "reg mismatch on {}", d.pd_string());
        let (reg_alone, _) = reg_of_diagram(&d, &cfg).unwrap();
        assert_eq!(reg_alone, expected_reg);
    }
}

#[test]
fn frozen_small_values() {
    // Values computed by the brute-force oracle above.
    let cfg = SearchConfig::default();
    let granny = gen_torus(1).connected_sum(&gen_torus(1));
    assert_eq!(brute_mri(&granny).0, 4);
    assert_eq!(brute_reg(&granny), Some(4));
    assert_eq!(brute_mri(&gen_torus(3)).0, 4);
    assert_eq!(brute_mri(&figure8()).0, 3);
    let sq = mri_of_diagram(&gen_torus(1).mirror().connected_sum(&gen_torus(1)), &cfg, None).unwrap();
    assert_eq!(sq.mri, 4);
}

#[test]
fn triple_trefoil_sum_spanning_region() {
    // The chain splice merges one bigon from every lobe into a single
    // region; changing it performs two crossing changes per trefoil lobe
    // and unknots the whole sum, so Reg(D) = MRI(D) = 6 here.
    let d = gen_torus(1)
        .connected_sum(&gen_torus(1))
        .connected_sum(&gen_torus(1));
    let cfg = SearchConfig::default();
    let sr = mri_of_diagram(&d, &cfg, None).unwrap();
    assert_eq!(sr.mri, 6);
    assert_eq!(sr.reg, Some(6));
}

#[test]
fn sum_with_heavy_lobe_has_no_unknotting_region() {
    // T(2,7) # T(2,3): the merged cross-lobe region leaves a trefoil behind
    // and no other single region unknots either, so Reg(D) is infinite
    // while MRI(D) stays finite.
    let d = gen_torus(3).connected_sum(&gen_torus(1));
    let cfg = SearchConfig::default();
    let (reg, witness) = reg_of_diagram(&d, &cfg).unwrap();
    assert_eq!(reg, None);
    assert_eq!(witness, None);
    let sr = mri_of_diagram(&d, &cfg, None).unwrap();
    assert_eq!(sr.reg, None);
    assert_eq!(sr.mri, 6);
}

/// |f(A)|^2 at A a primitive eighth root of unity equals det(K)^2. Computed
/// in Z[x]/(x^4+1).
fn det_squared_via_bracket(d: &Diagram) -> BigInt {
    let f = jones_normalized(d, CAP).unwrap();
    let reduce = |exps: Vec<(i64, BigInt)>| -> [BigInt; 4] {
        let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (e, c) in exps {
            let r = e.rem_euclid(8) as usize;
            if r < 4 {
                out[r] += c;
            } else {
                out[r - 4] -= c;
            }
        }
        out
    };
    let a = reduce(f.terms());
    let conj = reduce(f.terms().into_iter().map(|(e, c)| (-e, c)).collect());
    // Product mod x^4 + 1.
    let mut prod = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for i in 0..4 {
        for j in 0..4 {
            let term = &a[i] * &conj[j];
            let k = (i + j) % 8;
            if k < 4 {
                prod[k] += term;
            } else {
                prod[k - 4] -= term;
            }
        }
    }
    assert!(prod[1].is_zero() && prod[2].is_zero() && prod[3].is_zero(), "norm must be rational");
    prod[0].clone()
}

#[test]
fn determinant_agrees_with_bracket_route() {
    let diagrams = vec![
        Diagram::unknot(),
        parse_pd("[[1,1,2,2]]").unwrap(),
        gen_torus(1),
        gen_torus(2),
        gen_torus(3),
        gen_torus(4),
        figure8(),
        gen_torus(1).connected_sum(&gen_torus(1)),
        gen_torus(1).mirror().connected_sum(&gen_torus(2)),
    ];
    for d in diagrams {
        let det = goeritz::determinant(&d).unwrap();
        assert_eq!(
            det_squared_via_bracket(&d),
            &det * &det,
            "determinant routes disagree on {}",
            d.pd_string()
        );
    }
}

#[test]
fn figure8_values() {
    assert_eq!(goeritz::determinant(&figure8()).unwrap(), BigInt::from(5));
    assert_eq!(goeritz::mg2(&figure8()).unwrap(), 1);
    // Amphichiral: f equals its mirror image.
    let f = jones_normalized(&figure8(), CAP).unwrap();
    assert_eq!(f.invert_variable(), f);
}

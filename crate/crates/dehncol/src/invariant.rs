//! The cocycle invariant: per-crossing weights, the weight sum of a
//! coloring (always a cycle), the multiset invariant over all colorings,
//! the affine symmetry law, and minimum-color bounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{boundary2_of_chain, theta_of_chain, NormalChain2};
use crate::coloring::{
    classify_coloring, enumerate_colorings_with_budget, enumeration_budget,
    min_colors_over_diagram, solve_coloring_space, ColoringKind, DehnColoring,
};
use crate::error::{Error, Result};
use crate::modp::{floor_log2, mul_mod};
use crate::topology::DiagramTopology;

/// Sign and raw generator ((a,b),(a,c)) read off at one of the four corners
/// of a crossing. Corner k is quadrant k (0 = the corner reached first when
/// walking counterclockwise from the incoming under strand).
fn corner_weight(
    topo: &DiagramTopology,
    c: &DehnColoring,
    v: usize,
    corner: u8,
) -> (i64, [u64; 3]) {
    let q = topo.quadrants(v);
    let col = |i: usize| c.colors[q[i]];
    match corner {
        0 => (1, [col(0), col(3), col(1)]),
        1 => (-1, [col(1), col(2), col(0)]),
        2 => (1, [col(2), col(1), col(3)]),
        3 => (-1, [col(3), col(0), col(2)]),
        _ => panic!("corner index {corner} out of range"),
    }
}

/// Sign and raw generator of the weight of crossing `v`, read at the
/// reference corner (quadrant 0).
pub fn crossing_weight(topo: &DiagramTopology, c: &DehnColoring, v: usize) -> (i64, [u64; 3]) {
    corner_weight(topo, c, v, 0)
}

/// Same weight read at any of the four corners; all four normalize to the
/// same chain element.
pub fn crossing_weight_at(
    topo: &DiagramTopology,
    c: &DehnColoring,
    v: usize,
    corner: u8,
) -> (i64, [u64; 3]) {
    corner_weight(topo, c, v, corner)
}

/// The weight sum W(D, C) of a coloring, in normal form. Panics if the sum
/// fails to be a cycle, which would indicate an internal inconsistency.
pub fn weight_sum(topo: &DiagramTopology, c: &DehnColoring) -> NormalChain2 {
    let p = c.p;
    let mut w = NormalChain2::zero();
    for v in 0..topo.n_crossings() {
        let (sign, [a, b, cc]) = crossing_weight(topo, c, v);
        w.add_raw(a, b, cc, sign, p);
    }
    let boundary = boundary2_of_chain(&w, p);
    assert!(
        boundary.is_zero(),
        "weight sum has nonzero boundary {boundary}; coloring or topology is inconsistent"
    );
    w
}

/// Cocycle value of the weight sum of one coloring.
pub fn theta_weight(topo: &DiagramTopology, c: &DehnColoring) -> u64 {
    theta_of_chain(&weight_sum(topo, c), c.p)
}

/// Which colorings enter the invariant multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringFilter {
    All,
    Nontrivial,
}

/// The multiset invariant: how many (filtered) colorings take each cocycle
/// value, together with global counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiInvariant {
    pub p: u64,
    pub filter: ColoringFilter,
    /// value -> multiplicity over the filtered colorings.
    pub values: BTreeMap<u64, u128>,
    pub total_colorings: u128,
    pub trivial_colorings: u128,
}

impl PhiInvariant {
    pub fn nontrivial_colorings(&self) -> u128 {
        self.total_colorings - self.trivial_colorings
    }

    /// Render as a multiset, e.g. "{3: 98, 5: 98, 6: 98}".
    pub fn multiset_string(&self) -> String {
        let inner: Vec<String> = self
            .values
            .iter()
            .map(|(v, m)| format!("{v}: {m}"))
            .collect();
        format!("{{{}}}", inner.join(", "))
    }
}

/// Computes the invariant multiset by full enumeration.
pub fn phi_invariant(
    topo: &DiagramTopology,
    p: u64,
    filter: ColoringFilter,
    budget: Option<u128>,
) -> Result<PhiInvariant> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(topo, p)?;
    let mut values: BTreeMap<u64, u128> = BTreeMap::new();
    let mut total: u128 = 0;
    let mut trivial: u128 = 0;
    for c in enumerate_colorings_with_budget(&space, budget)? {
        total += 1;
        let kind = classify_coloring(topo, &c);
        if kind == ColoringKind::Trivial {
            trivial += 1;
            if filter == ColoringFilter::Nontrivial {
                continue;
            }
        }
        *values.entry(theta_weight(topo, &c)).or_insert(0) += 1;
    }
    Ok(PhiInvariant {
        p,
        filter,
        values,
        total_colorings: total,
        trivial_colorings: trivial,
    })
}

/// Checks that the weight of every crossing normalizes identically when
/// read at each of its four corners, over every coloring. Returns the
/// number of (coloring, crossing) pairs checked.
pub fn check_corner_independence(
    topo: &DiagramTopology,
    p: u64,
    budget: Option<u128>,
) -> Result<u128> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(topo, p)?;
    let mut checked: u128 = 0;
    for c in enumerate_colorings_with_budget(&space, budget)? {
        for v in 0..topo.n_crossings() {
            let reference = {
                let (s, [a, b, cc]) = crossing_weight_at(topo, &c, v, 0);
                signed_normal(a, b, cc, s, p)
            };
            for corner in 1u8..4 {
                let (s, [a, b, cc]) = crossing_weight_at(topo, &c, v, corner);
                if signed_normal(a, b, cc, s, p) != reference {
                    return Err(Error::VerificationFailed(format!(
                        "corner {corner} of crossing {v} disagrees with corner 0 \
                         under coloring {:?} mod {p}",
                        c.colors
                    )));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn signed_normal(a: u64, b: u64, c: u64, sign: i64, p: u64) -> NormalChain2 {
    let mut w = NormalChain2::zero();
    w.add_raw(a, b, c, sign, p);
    w
}

/// Checks the symmetry law: for every coloring C and every affine map
/// C -> s*C + t with s a unit, the cocycle value scales by s^2, and
/// triviality is preserved. Returns the number of (C, s, t) checks.
pub fn check_affine_symmetry(topo: &DiagramTopology, p: u64, budget: Option<u128>) -> Result<u128> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(topo, p)?;
    let mut checked: u128 = 0;
    for c in enumerate_colorings_with_budget(&space, budget)? {
        let kind = classify_coloring(topo, &c);
        let base = theta_weight(topo, &c);
        for s in 1..p {
            for t in 0..p {
                let image = DehnColoring {
                    p,
                    colors: c.colors.iter().map(|&x| (s * x + t) % p).collect(),
                };
                if classify_coloring(topo, &image) != kind {
                    return Err(Error::VerificationFailed(format!(
                        "map C -> {s}*C+{t} changed triviality of {:?} mod {p}",
                        c.colors
                    )));
                }
                let got = theta_weight(topo, &image);
                let want = mul_mod(mul_mod(s, s, p), base, p);
                if got != want {
                    return Err(Error::VerificationFailed(format!(
                        "theta(W({s}*C+{t})) = {got}, expected {s}^2 * {base} = {want} \
                         mod {p} for coloring {:?}",
                        c.colors
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Checks that the weight sum of every coloring is a cycle (zero boundary).
/// Returns the number of colorings checked.
pub fn check_weight_cycles(topo: &DiagramTopology, p: u64, budget: Option<u128>) -> Result<u128> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(topo, p)?;
    let mut checked: u128 = 0;
    for c in enumerate_colorings_with_budget(&space, budget)? {
        let mut w = NormalChain2::zero();
        for v in 0..topo.n_crossings() {
            let (sign, [a, b, cc]) = crossing_weight(topo, &c, v);
            w.add_raw(a, b, cc, sign, p);
        }
        let boundary = boundary2_of_chain(&w, p);
        if !boundary.is_zero() {
            return Err(Error::VerificationFailed(format!(
                "weight sum of coloring {:?} has boundary {boundary} != 0 mod {p}",
                c.colors
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Counts of checks performed when certifying weight behavior on a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightsCertificate {
    pub p: u64,
    /// colorings whose weight sum is a cycle.
    pub cycle_checks: u128,
    /// (coloring, crossing) pairs with corner-independent weights.
    pub corner_checks: u128,
    /// (coloring, s, t) affine symmetry checks.
    pub affine_checks: u128,
}

/// Runs all three weight verifications on one diagram at one prime.
pub fn verify_weights(
    topo: &DiagramTopology,
    p: u64,
    budget: Option<u128>,
) -> Result<WeightsCertificate> {
    Ok(WeightsCertificate {
        p,
        cycle_checks: check_weight_cycles(topo, p, budget)?,
        corner_checks: check_corner_independence(topo, p, budget)?,
        affine_checks: check_affine_symmetry(topo, p, budget)?,
    })
}

/// How a lower bound on the minimum number of colors was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundRoute {
    /// floor(log2 p) + 2, valid for every knot with a nontrivial coloring.
    LogBound,
    /// floor(log2 p) + 3 for p in {13, 29}: every candidate palette of
    /// minimal size has a theta-trivial kernel, unconditionally.
    Plus3Palette,
    /// floor(log2 p) + 3 for p in {7, 11, 19, 23, 31} when the nontrivial
    /// multiset is nonempty and avoids zero.
    Plus3Cocycle,
}

/// Bounds on the minimum number of colors among nontrivial colorings.
/// The lower bound applies to every diagram of the same knot; the upper
/// bound is the minimum realized on this diagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    /// Whether the diagram admits a nontrivial coloring at all.
    pub nontrivially_colorable: bool,
    pub lower: Option<u32>,
    pub lower_route: Option<LowerBoundRoute>,
    pub upper: Option<u32>,
    /// First enumerated nontrivial coloring realizing the upper bound.
    pub witness: Option<DehnColoring>,
}

/// Primes where the improved bound needs the cocycle condition.
pub const PLUS3_COCYCLE_PRIMES: [u64; 5] = [7, 11, 19, 23, 31];
/// Primes where the improved bound is unconditional.
pub const PLUS3_PALETTE_PRIMES: [u64; 2] = [13, 29];

/// Computes minimum-color bounds for one diagram at one prime.
pub fn mincol_bounds(topo: &DiagramTopology, p: u64, budget: Option<u128>) -> Result<BoundReport> {
    let phi = phi_invariant(topo, p, ColoringFilter::Nontrivial, budget)?;
    if phi.values.is_empty() {
        return Ok(BoundReport {
            p,
            nontrivially_colorable: false,
            lower: None,
            lower_route: None,
            upper: None,
            witness: None,
        });
    }
    let base = floor_log2(p) + 2;
    let (lower, route) = if PLUS3_PALETTE_PRIMES.contains(&p) {
        (base + 1, LowerBoundRoute::Plus3Palette)
    } else if PLUS3_COCYCLE_PRIMES.contains(&p) && !phi.values.contains_key(&0) {
        (base + 1, LowerBoundRoute::Plus3Cocycle)
    } else {
        (base, LowerBoundRoute::LogBound)
    };
    let (upper, witness) = match min_colors_over_diagram(topo, p, budget)? {
        Some((n, w)) => (Some(n as u32), Some(w)),
        None => (None, None),
    };
    Ok(BoundReport {
        p,
        nontrivially_colorable: true,
        lower: Some(lower),
        lower_route: Some(route),
        upper,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::PDCode;
    use crate::topology::extract_topology;

    fn topo(text: &str) -> DiagramTopology {
        extract_topology(&PDCode::parse(text).unwrap()).unwrap()
    }

    fn trefoil() -> DiagramTopology {
        topo("X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)")
    }

    fn knot52() -> DiagramTopology {
        topo("X(1,4,2,5);X(3,8,4,9);X(5,10,6,1);X(9,6,10,7);X(7,2,8,3)")
    }

    #[test]
    fn trivial_colorings_have_zero_weight() {
        let t = trefoil();
        for p in [3u64, 5, 7] {
            let c = DehnColoring::new(&t, p, vec![1; t.n_regions()]).unwrap();
            assert!(weight_sum(&t, &c).is_zero());
            assert_eq!(theta_weight(&t, &c), 0);
        }
    }

    #[test]
    fn trefoil_phi_mod3() {
        let t = trefoil();
        let phi = phi_invariant(&t, 3, ColoringFilter::Nontrivial, None).unwrap();
        assert_eq!(phi.total_colorings, 27);
        assert_eq!(phi.trivial_colorings, 9);
        assert_eq!(phi.values, BTreeMap::from([(1, 18)]));
        assert_eq!(phi.multiset_string(), "{1: 18}");
        let all = phi_invariant(&t, 3, ColoringFilter::All, None).unwrap();
        assert_eq!(all.values, BTreeMap::from([(0, 9), (1, 18)]));
    }

    #[test]
    fn knot52_phi_mod7() {
        let t = knot52();
        let phi = phi_invariant(&t, 7, ColoringFilter::Nontrivial, None).unwrap();
        assert_eq!(phi.total_colorings, 343);
        assert_eq!(phi.trivial_colorings, 49);
        assert_eq!(phi.values, BTreeMap::from([(3, 98), (5, 98), (6, 98)]));
    }

    #[test]
    fn corner_independence_small() {
        let t = trefoil();
        assert_eq!(check_corner_independence(&t, 3, None).unwrap(), 27 * 3);
        assert_eq!(check_corner_independence(&t, 5, None).unwrap(), 25 * 3);
    }

    #[test]
    fn affine_symmetry_trefoil() {
        let t = trefoil();
        assert_eq!(check_affine_symmetry(&t, 3, None).unwrap(), 27 * 6);
    }

    #[test]
    fn bounds_trefoil_and_52() {
        let t = trefoil();
        let b = mincol_bounds(&t, 3, None).unwrap();
        assert!(b.nontrivially_colorable);
        assert_eq!(b.lower, Some(3));
        assert_eq!(b.lower_route, Some(LowerBoundRoute::LogBound));
        assert_eq!(b.upper, Some(3));
        let none = mincol_bounds(&t, 5, None).unwrap();
        assert!(!none.nontrivially_colorable);
        assert_eq!(none.lower, None);

        let k = knot52();
        let b7 = mincol_bounds(&k, 7, None).unwrap();
        assert_eq!(b7.lower, Some(5));
        assert_eq!(b7.lower_route, Some(LowerBoundRoute::Plus3Cocycle));
        assert_eq!(b7.upper, Some(5));
        assert_eq!(b7.witness.as_ref().map(|w| w.n_colors()), Some(5));
    }

    #[test]
    fn specific_weight_sum_matches_hand_computation() {
        // On the 5-crossing diagram above, the coloring with theta value 5
        // whose weight sum in normal form is
        //   -((0,1),(0,2)) + ((0,1),(0,3)) - ((0,2),(0,0)) + ((0,3),(0,5))
        // plus the order-2 generator ((0,0),(0,1)).
        let t = knot52();
        let c = DehnColoring::new(&t, 7, vec![2, 1, 0, 3, 1, 0, 5]).unwrap();
        let w = weight_sum(&t, &c);
        assert_eq!(theta_of_chain(&w, 7), 5);
        let free: Vec<(_, i64)> = w.free.iter().map(|(g, &k)| ((g.a, g.b, g.c), k)).collect();
        assert_eq!(
            free,
            vec![
                ((0, 1, 2), -1),
                ((0, 1, 3), 1),
                ((0, 2, 0), -1),
                ((0, 3, 5), 1),
            ]
        );
        let torsion: Vec<(u64, u64)> = w.torsion.iter().map(|g| (g.a, g.b)).collect();
        assert_eq!(torsion, vec![(0, 1)]);
    }
}

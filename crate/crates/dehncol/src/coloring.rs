//! Dehn p-colorings: solving the region constraint system over Z_p,
//! streaming enumeration, triviality classification, and the affine
//! s*C + t symmetry on the coloring set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::nullspace_mod_p;
use crate::modp::check_odd_prime;
use crate::topology::DiagramTopology;

/// Default ceiling on p^d for full enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Enumeration budget: `DEHNCOL_BUDGET` env var when set, else the default.
pub fn enumeration_budget() -> u128 {
    std::env::var("DEHNCOL_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BUDGET)
}

/// An assignment of a Z_p color to every region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DehnColoring {
    pub p: u64,
    /// `colors[r]` = color of region r, always a canonical residue.
    pub colors: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringKind {
    Trivial,
    Nontrivial,
}

impl DehnColoring {
    /// Validates residues and the crossing equations against a topology.
    pub fn new(topo: &DiagramTopology, p: u64, colors: Vec<u64>) -> Result<Self> {
        check_odd_prime(p)?;
        if colors.len() != topo.n_regions() {
            return Err(Error::InvalidInput(format!(
                "coloring has {} entries for {} regions",
                colors.len(),
                topo.n_regions()
            )));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "color {bad} is not a residue mod {p}"
            )));
        }
        let c = DehnColoring { p, colors };
        for v in 0..topo.n_crossings() {
            let k = topo.crossing_corners(v);
            let lhs = (c.colors[k.x1] + c.colors[k.x3]) % p;
            let rhs = (c.colors[k.x2] + c.colors[k.x4]) % p;
            if lhs != rhs {
                return Err(Error::InvalidInput(format!(
                    "coloring violates the crossing equation at crossing {v}"
                )));
            }
        }
        Ok(c)
    }

    /// Distinct colors used.
    pub fn palette(&self) -> BTreeSet<u64> {
        self.colors.iter().copied().collect()
    }

    pub fn n_colors(&self) -> usize {
        self.palette().len()
    }
}

/// Set of distinct colors a coloring uses.
pub fn palette_of(coloring: &DehnColoring) -> BTreeSet<u64> {
    coloring.palette()
}

/// Solution space of the coloring system: a deterministic nullspace basis.
#[derive(Debug, Clone)]
pub struct ColoringSpace {
    pub p: u64,
    pub n_regions: usize,
    pub rank: usize,
    /// Nullspace basis vectors in reduced echelon shape, ascending free column.
    pub basis: Vec<Vec<u64>>,
}

impl ColoringSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// p^dim, None on u128 overflow.
    pub fn total(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.dim() {
            acc = acc.checked_mul(self.p as u128)?;
        }
        Some(acc)
    }
}

/// Coloring constraint rows over Z_p, one per crossing.
pub fn build_constraints(topo: &DiagramTopology, p: u64) -> Result<Vec<Vec<u64>>> {
    check_odd_prime(p)?;
    Ok(topo
        .constraint_rows_int()
        .iter()
        .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect())
}

/// Solves the system; the dimension is always at least 2 (constant colorings
/// and the checkerboard indicator are solutions).
pub fn solve_coloring_space(topo: &DiagramTopology, p: u64) -> Result<ColoringSpace> {
    let rows = build_constraints(topo, p)?;
    let basis = nullspace_mod_p(&rows, topo.n_regions(), p);
    let space = ColoringSpace {
        p,
        n_regions: topo.n_regions(),
        rank: topo.n_regions() - basis.len(),
        basis,
    };
    debug_assert!(
        space.dim() >= 2,
        "constant and checkerboard colorings always solve"
    );
    Ok(space)
}

/// Streams all p^dim colorings in deterministic odometer order over the
/// basis coefficients (last coefficient fastest).
pub struct ColoringIter<'a> {
    space: &'a ColoringSpace,
    coeffs: Vec<u64>,
    done: bool,
}

impl<'a> Iterator for ColoringIter<'a> {
    type Item = DehnColoring;

    fn next(&mut self) -> Option<DehnColoring> {
        if self.done {
            return None;
        }
        let p = self.space.p;
        let mut colors = vec![0u64; self.space.n_regions];
        for (k, b) in self.coeffs.iter().zip(&self.space.basis) {
            if *k != 0 {
                for (c, &x) in colors.iter_mut().zip(b) {
                    *c = (*c + k * x) % p;
                }
            }
        }
        // odometer increment
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < p {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(DehnColoring { p, colors })
    }
}

/// Enumeration with the configured budget (env override or default).
pub fn enumerate_colorings(space: &ColoringSpace) -> Result<ColoringIter<'_>> {
    enumerate_colorings_with_budget(space, enumeration_budget())
}

pub fn enumerate_colorings_with_budget(
    space: &ColoringSpace,
    budget: u128,
) -> Result<ColoringIter<'_>> {
    match space.total() {
        Some(t) if t <= budget => Ok(ColoringIter {
            space,
            coeffs: vec![0; space.dim()],
            done: space.dim() == 0,
        }),
        Some(t) => Err(Error::BudgetExceeded { needed: t, budget }),
        None => Err(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        }),
    }
}

/// A coloring is trivial exactly when every crossing sees equal diagonal
/// pairs; equivalently it is constant on each checkerboard shading class.
/// Both characterizations are computed and must agree.
pub fn classify_coloring(topo: &DiagramTopology, c: &DehnColoring) -> ColoringKind {
    let by_crossing = (0..topo.n_crossings()).all(|v| {
        let k = topo.crossing_corners(v);
        c.colors[k.x1] == c.colors[k.x4] && c.colors[k.x3] == c.colors[k.x2]
    });
    let mut class_color = [None::<u64>; 2];
    let mut by_shading = true;
    for (r, &col) in c.colors.iter().enumerate() {
        let s = topo.shade(r) as usize;
        match class_color[s] {
            None => class_color[s] = Some(col),
            Some(prev) if prev != col => by_shading = false,
            _ => {}
        }
    }
    assert_eq!(
        by_crossing, by_shading,
        "triviality characterizations disagree; topology or coloring is inconsistent"
    );
    if by_crossing {
        ColoringKind::Trivial
    } else {
        ColoringKind::Nontrivial
    }
}

/// The coloring s*C + t. s must be a unit mod p.
pub fn apply_affine(c: &DehnColoring, s: u64, t: u64) -> Result<DehnColoring> {
    let p = c.p;
    if s.is_multiple_of(p) {
        return Err(Error::InvalidInput(format!(
            "affine scale {s} is not a unit mod {p}"
        )));
    }
    Ok(DehnColoring {
        p,
        colors: c.colors.iter().map(|&x| (s % p * x + t) % p).collect(),
    })
}

/// An orbit of nontrivial colorings under C -> s*C + t.
#[derive(Debug, Clone)]
pub struct AffineClass {
    /// Lexicographically least color vector in the orbit.
    pub representative: DehnColoring,
    pub size: u64,
}

/// Partitions the nontrivial colorings into affine orbits, sorted by
/// representative.
pub fn coloring_affine_classes(
    topo: &DiagramTopology,
    space: &ColoringSpace,
    budget: Option<u128>,
) -> Result<Vec<AffineClass>> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let p = space.p;
    let mut pool: BTreeSet<Vec<u64>> = BTreeSet::new();
    for c in enumerate_colorings_with_budget(space, budget)? {
        if classify_coloring(topo, &c) == ColoringKind::Nontrivial {
            pool.insert(c.colors);
        }
    }
    let mut classes = Vec::new();
    while let Some(seed) = pool.iter().next().cloned() {
        let mut orbit: BTreeSet<Vec<u64>> = BTreeSet::new();
        for s in 1..p {
            for t in 0..p {
                orbit.insert(seed.iter().map(|&x| (s * x + t) % p).collect());
            }
        }
        for v in &orbit {
            debug_assert!(pool.contains(v), "affine image left the nontrivial set");
            pool.remove(v);
        }
        let rep = orbit.iter().next().cloned().expect("orbit nonempty");
        classes.push(AffineClass {
            representative: DehnColoring { p, colors: rep },
            size: orbit.len() as u64,
        });
    }
    classes.sort_by(|a, b| a.representative.colors.cmp(&b.representative.colors));
    Ok(classes)
}

/// Minimum number of distinct colors over all nontrivial colorings of this
/// diagram, with the first witness in enumeration order. None when the
/// diagram has no nontrivial coloring.
pub fn min_colors_over_diagram(
    topo: &DiagramTopology,
    p: u64,
    budget: Option<u128>,
) -> Result<Option<(usize, DehnColoring)>> {
    let budget = budget.unwrap_or_else(enumeration_budget);
    let space = solve_coloring_space(topo, p)?;
    let mut best: Option<(usize, DehnColoring)> = None;
    for c in enumerate_colorings_with_budget(&space, budget)? {
        if classify_coloring(topo, &c) == ColoringKind::Nontrivial {
            let n = c.n_colors();
            if best.as_ref().is_none_or(|(m, _)| n < *m) {
                best = Some((n, c));
            }
        }
    }
    Ok(best)
}

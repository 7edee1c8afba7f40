//! Palette analysis: which color sets S can support a nontrivial coloring
//! whose weight cycle has nonzero cocycle value. For a palette S the
//! analyzer lists the S-supported weight generators, imposes the cycle
//! condition on their integer span, and evaluates the cocycle on the kernel.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    boundary2, normalize_gen2, theta, tribracket, FreeGen2, Gen2Normal, TorsionGen2,
};
use crate::error::{Error, Result};
use crate::linalg::integer_kernel;
use crate::modp::check_odd_prime;

/// Largest number of free weight generators the analyzer will accept.
pub const GENERATOR_BUDGET: usize = 1000;

/// Primes for which a theta-trivial verdict feeds the improved lower bound
/// through the cocycle-value route.
pub const COCYCLE_ROUTE_PRIMES: [u64; 5] = [7, 11, 19, 23, 31];

/// Candidate minimal palettes (affine-canonical representatives) per prime:
/// the color sets of size floor(log2 p) + 2 that a nontrivial coloring
/// could use, up to affine equivalence.
pub fn candidate_palettes(p: u64) -> Result<Vec<Vec<u64>>> {
    let lists: &[&[u64]] = match p {
        3 => &[&[0, 1, 2]],
        5 => &[&[0, 1, 2, 3]],
        7 => &[&[0, 1, 2, 4]],
        11 => &[&[0, 1, 2, 3, 6], &[0, 1, 2, 4, 7]],
        13 => &[&[0, 1, 2, 4, 7]],
        17 => &[
            &[0, 1, 2, 3, 5, 9],
            &[0, 1, 2, 3, 5, 10],
            &[0, 1, 2, 3, 5, 12],
            &[0, 1, 2, 3, 6, 9],
            &[0, 1, 2, 3, 6, 10],
            &[0, 1, 2, 3, 6, 11],
            &[0, 1, 2, 3, 6, 13],
            &[0, 1, 2, 3, 7, 11],
            &[0, 1, 2, 4, 5, 9],
            &[0, 1, 2, 4, 5, 10],
            &[0, 1, 2, 4, 5, 12],
            &[0, 1, 2, 4, 10, 13],
        ],
        19 => &[
            &[0, 1, 2, 3, 5, 10],
            &[0, 1, 2, 3, 6, 10],
            &[0, 1, 2, 3, 6, 11],
            &[0, 1, 2, 3, 6, 12],
            &[0, 1, 2, 3, 6, 13],
            &[0, 1, 2, 3, 6, 14],
            &[0, 1, 2, 3, 7, 12],
            &[0, 1, 2, 4, 5, 10],
            &[0, 1, 2, 4, 5, 14],
            &[0, 1, 2, 4, 7, 12],
            &[0, 1, 2, 4, 7, 15],
        ],
        23 => &[
            &[0, 1, 2, 3, 6, 12],
            &[0, 1, 2, 4, 7, 12],
            &[0, 1, 2, 4, 7, 13],
            &[0, 1, 2, 4, 7, 14],
            &[0, 1, 2, 4, 9, 14],
            &[0, 1, 2, 4, 10, 19],
        ],
        29 => &[&[0, 1, 2, 4, 8, 15]],
        31 => &[&[0, 1, 2, 4, 8, 16]],
        _ => {
            return Err(Error::InvalidInput(format!(
                "no candidate palette table for p = {p}"
            )))
        }
    };
    Ok(lists.iter().map(|s| s.to_vec()).collect())
}

/// Lexicographically least image of S under all affine maps x -> s*x + t
/// with s a unit. Constant on affine orbits and idempotent.
pub fn affine_canonical_palette(set: &[u64], p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    if set.is_empty() {
        return Err(Error::InvalidInput("palette is empty".into()));
    }
    let set: BTreeSet<u64> = set.iter().map(|&x| x % p).collect();
    let mut best: Option<Vec<u64>> = None;
    for s in 1..p {
        for t in 0..p {
            let img: BTreeSet<u64> = set.iter().map(|&x| (s * x + t) % p).collect();
            let img: Vec<u64> = img.into_iter().collect();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    Ok(best.expect("at least the identity map"))
}

/// The weight generators a coloring with palette S could produce: canonical
/// free generators ((a,b),(a,c)) with a, b, c and `[a,b,c]` all in S (in
/// ascending lexicographic order — the numbering t1, t2, ... refers to this
/// order), and the order-2 generators ((a,a),(a,b)) with a < b in S.
pub fn weight_generators(set: &[u64], p: u64) -> Result<(Vec<FreeGen2>, Vec<TorsionGen2>)> {
    check_odd_prime(p)?;
    let set: BTreeSet<u64> = set.iter().map(|&x| x % p).collect();
    let mut free = Vec::new();
    for &a in &set {
        for &b in &set {
            if a == b {
                continue;
            }
            for &c in &set {
                if b == c || !set.contains(&tribracket(a, b, c, p)) {
                    continue;
                }
                if let Gen2Normal::Free(g, 1) = normalize_gen2(a, b, c, p) {
                    if (g.a, g.b, g.c) == (a, b, c) {
                        free.push(g);
                    }
                }
            }
        }
    }
    free.sort();
    let torsion: Vec<TorsionGen2> = set
        .iter()
        .flat_map(|&a| {
            set.iter()
                .filter(move |&&b| a < b)
                .map(move |&b| TorsionGen2 { a, b })
        })
        .collect();
    Ok((free, torsion))
}

/// Result of imposing the cycle condition on the S-supported weight span.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelAnalysis {
    pub p: u64,
    pub palette: Vec<u64>,
    /// Free generators in t-numbering order (t1 = first entry).
    pub free_generators: Vec<FreeGen2>,
    pub torsion_generators: Vec<TorsionGen2>,
    /// Row labels of the boundary matrix: 1-chain generators (x, y), x < y.
    pub boundary_rows: Vec<(u64, u64)>,
    /// Integer boundary matrix, `boundary_matrix[row][col]`.
    pub boundary_matrix: Vec<Vec<i64>>,
    /// Primitive basis of the integer kernel of the boundary matrix.
    pub kernel_basis: Vec<Vec<i64>>,
    /// Cocycle value of each free generator.
    pub generator_theta: Vec<u64>,
    /// Cocycle value of each kernel basis vector (mod p).
    pub kernel_theta: Vec<u64>,
    /// True when the cocycle vanishes on the whole kernel.
    pub theta_trivial: bool,
    /// Human-readable description of the kernel as forced relations among
    /// the t-coefficients.
    pub relations: Vec<String>,
    /// Whether a theta-trivial verdict at this prime feeds the improved
    /// minimum-color bound via the cocycle-value route.
    pub supports_cocycle_bound_route: bool,
}

/// Builds the boundary matrix of the free S-supported weight generators,
/// projected to the free part of the 1-chain group (rows (x,y) with x < y;
/// order-2 diagonal rows carry no constraint the cocycle can see, and
/// dropping them only enlarges the kernel, so the verdict stays sound).
pub fn kernel_analysis(set: &[u64], p: u64) -> Result<KernelAnalysis> {
    let (free, torsion) = weight_generators(set, p)?;
    if free.len() > GENERATOR_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: free.len() as u128,
            budget: GENERATOR_BUDGET as u128,
        });
    }
    let palette: Vec<u64> = set
        .iter()
        .map(|&x| x % p)
        .collect::<BTreeSet<u64>>()
        .into_iter()
        .collect();

    let columns: Vec<_> = free.iter().map(|g| boundary2(g.a, g.b, g.c, p)).collect();
    let mut rows: BTreeSet<(u64, u64)> = BTreeSet::new();
    for col in &columns {
        rows.extend(col.free.keys().copied());
    }
    let boundary_rows: Vec<(u64, u64)> = rows.into_iter().collect();
    let mut boundary_matrix = vec![vec![0i64; free.len()]; boundary_rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (i, label) in boundary_rows.iter().enumerate() {
            if let Some(&v) = col.free.get(label) {
                boundary_matrix[i][j] = v;
            }
        }
    }

    let kernel_basis = if free.is_empty() {
        Vec::new()
    } else {
        integer_kernel(&boundary_matrix, free.len())
    };
    let generator_theta: Vec<u64> = free.iter().map(|g| theta(g.a, g.b, g.c, p)).collect();
    let kernel_theta: Vec<u64> = kernel_basis
        .iter()
        .map(|v| {
            let mut acc: i64 = 0;
            for (x, &th) in v.iter().zip(&generator_theta) {
                acc += x * th as i64;
            }
            acc.rem_euclid(p as i64) as u64
        })
        .collect();
    let theta_trivial = kernel_theta.iter().all(|&x| x == 0);
    let relations = relation_strings(free.len(), &kernel_basis);

    Ok(KernelAnalysis {
        p,
        palette,
        free_generators: free,
        torsion_generators: torsion,
        boundary_rows,
        boundary_matrix,
        kernel_basis,
        generator_theta,
        kernel_theta,
        theta_trivial,
        relations,
        supports_cocycle_bound_route: theta_trivial && COCYCLE_ROUTE_PRIMES.contains(&p),
    })
}

/// Analyzes every candidate palette for the prime.
pub fn analyze_all(p: u64) -> Result<Vec<KernelAnalysis>> {
    candidate_palettes(p)?
        .iter()
        .map(|s| kernel_analysis(s, p))
        .collect()
}

/// Renders the kernel as relations among coefficients t1..tn: a zero kernel
/// forces every ti to 0; sign-vector kernels with disjoint supports read as
/// equality chains ("t1 = -t2 = t3 = t6") plus a zero clause for untouched
/// coefficients; anything else falls back to listing the basis vectors.
fn relation_strings(n: usize, basis: &[Vec<i64>]) -> Vec<String> {
    if n == 0 {
        return vec!["no free weight generators".to_string()];
    }
    let all_zero = || {
        let terms: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        format!("{} = 0", terms.join(" = "))
    };
    if basis.is_empty() {
        return vec![all_zero()];
    }
    let signs_only = basis
        .iter()
        .all(|v| v.iter().all(|&x| (-1..=1).contains(&x)));
    let mut seen = vec![0u32; n];
    for v in basis {
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                seen[i] += 1;
            }
        }
    }
    let disjoint = seen.iter().all(|&k| k <= 1);
    if signs_only && disjoint {
        let mut out = Vec::new();
        for v in basis {
            let chain: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x > 0 {
                        format!("t{}", i + 1)
                    } else {
                        format!("-t{}", i + 1)
                    }
                })
                .collect();
            out.push(chain.join(" = "));
        }
        let zeros: Vec<String> = seen
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k == 0)
            .map(|(i, _)| format!("t{}", i + 1))
            .collect();
        if !zeros.is_empty() {
            out.push(format!("{} = 0", zeros.join(" = ")));
        }
        return out;
    }
    basis
        .iter()
        .map(|v| {
            let entries: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("kernel vector ({})", entries.join(", "))
        })
        .collect()
}

//! The acceptance gate: ten criteria, each a test printing one PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeMap;
use std::time::Instant;

use dehncol::algebra::{theta, theta_bigint, verify_theta_cocycle};
use dehncol::coloring::{classify_coloring, enumerate_colorings, solve_coloring_space};
use dehncol::invariant::{
    check_affine_symmetry, check_corner_independence, check_weight_cycles, mincol_bounds,
    phi_invariant, ColoringFilter, LowerBoundRoute,
};
use dehncol::modp::floor_log2;
use dehncol::palette::analyze_all;
use dehncol::table::{builtin_table, find_knot};
use dehncol::topology::{extract_topology, DiagramTopology};
use dehncol::{ColoringKind, PDCode};

fn topo_of(name: &str) -> DiagramTopology {
    extract_topology(&find_knot(name, &[]).unwrap().pd).unwrap()
}

/// Standard alternating diagram of the (2,n) torus knot (n odd); its
/// determinant is n, so it is nontrivially p-colorable exactly when p | n.
fn torus_2n(n: u64) -> DiagramTopology {
    let wrap = |x: u64| ((x - 1) % (2 * n)) + 1;
    let text = (1..=n)
        .map(|i| {
            format!(
                "X({},{},{},{})",
                2 * i,
                wrap(2 * i + n + 1),
                wrap(2 * i + 1),
                wrap(2 * i + n)
            )
        })
        .collect::<Vec<_>>()
        .join(";");
    let topo = extract_topology(&PDCode::parse(&text).unwrap()).unwrap();
    assert_eq!(topo.determinant(), n);
    topo
}

#[test]
fn c01_cocycle_condition_verified_for_all_primes() {
    let t0 = Instant::now();
    let mut total = 0u64;
    for p in dehncol::modp::VERIFY_PRIMES {
        let cert = verify_theta_cocycle(p).unwrap();
        total += cert.diagonal_checks + cert.symmetry_checks + cert.coboundary_checks;
    }
    let dt = t0.elapsed();
    assert!(
        dt.as_secs_f64() < 10.0,
        "cocycle verification took {dt:.2?}"
    );
    println!(
        "PASS: c01 cocycle conditions hold for p in {{3,...,31}} ({total} checks in {dt:.2?})"
    );
}

#[test]
fn c02_cocycle_values_match_reference_evaluations() {
    let cases: &[(u64, u64, u64, u64, u64)] = &[
        (7, 0, 1, 2, 4),
        (7, 0, 1, 3, 6),
        (7, 0, 3, 5, 3),
        (7, 0, 5, 0, 0),
        (11, 0, 2, 3, 10),
        (19, 0, 1, 2, 15),
        (23, 1, 2, 3, 13),
    ];
    for &(p, a, b, c, want) in cases {
        assert_eq!(theta(a, b, c, p), want, "modular eval p={p} ({a},{b},{c})");
        assert_eq!(
            theta_bigint(a, b, c, p),
            want,
            "bigint eval p={p} ({a},{b},{c})"
        );
    }

    // Generator-value quadruples on the kernel supports of three palettes;
    // each alternating sum cancels to 0 mod p.
    type QuadCase = (u64, &'static [u64], [usize; 4], [u64; 4]);
    let quadruples: &[QuadCase] = &[
        (11, &[0, 1, 2, 3, 6], [0, 1, 2, 5], [9, 9, 10, 1]),
        (19, &[0, 1, 2, 3, 6, 10], [0, 1, 2, 5], [15, 10, 4, 10]),
        (23, &[0, 1, 2, 3, 6, 12], [0, 1, 2, 6], [17, 9, 2, 13]),
    ];
    for &(p, palette, idx, want) in quadruples {
        let a = dehncol::palette::kernel_analysis(palette, p).unwrap();
        let got: Vec<u64> = idx.iter().map(|&i| a.generator_theta[i]).collect();
        assert_eq!(got, want, "p={p} S={palette:?}");
        assert_eq!((want[0] + p - want[1] + want[2] + want[3]) % p, 0);
    }
    println!(
        "PASS: c02 cocycle spot values and generator quadruples agree across both evaluation routes ({} + {} cases)",
        cases.len(),
        quadruples.len()
    );
}

#[test]
fn c03_invariant_of_5_2_at_p7() {
    let t0 = Instant::now();
    let topo = topo_of("5_2");
    let phi = phi_invariant(&topo, 7, ColoringFilter::Nontrivial, None).unwrap();
    assert_eq!(phi.total_colorings, 343);
    assert_eq!(phi.trivial_colorings, 49);
    let want: BTreeMap<u64, u128> = [(3, 98), (5, 98), (6, 98)].into_iter().collect();
    assert_eq!(phi.values, want);

    let report = mincol_bounds(&topo, 7, None).unwrap();
    assert!(report.nontrivially_colorable);
    assert_eq!(report.lower, Some(5));
    assert_eq!(report.lower_route, Some(LowerBoundRoute::Plus3Cocycle));
    assert_eq!(report.upper, Some(5));
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "5_2 analysis took {dt:.2?}");
    println!(
        "PASS: c03 5_2 mod 7: 343 colorings, phi^nt = {}, bounds 5..5 ({dt:.2?})",
        phi.multiset_string()
    );
}

#[test]
fn c04_weight_chains_are_cycles() {
    let mut total = 0u128;
    for entry in builtin_table() {
        let topo = extract_topology(&entry.pd).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            total += check_weight_cycles(&topo, p, None).unwrap();
        }
    }
    println!("PASS: c04 every weight chain has zero boundary ({total} colorings checked)");
}

#[test]
fn c05_all_four_corner_readings_agree() {
    let mut total = 0u128;
    for entry in builtin_table() {
        let topo = extract_topology(&entry.pd).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            total += check_corner_independence(&topo, p, None).unwrap();
        }
    }
    println!("PASS: c05 corner-independent weights ({total} crossing readings checked)");
}

#[test]
fn c06_affine_moves_scale_the_cocycle_value_by_s_squared() {
    let a = check_affine_symmetry(&topo_of("5_2"), 7, None).unwrap();
    let b = check_affine_symmetry(&topo_of("trefoil"), 3, None).unwrap();
    println!(
        "PASS: c06 theta(s*C + t) = s^2 * theta(C) ({} checks)",
        a + b
    );
}

#[test]
fn c07_palette_kernels_are_theta_trivial_where_claimed() {
    let t0 = Instant::now();
    let mut palettes = 0usize;
    for p in [7u64, 11, 13, 19, 23, 29, 31] {
        for a in analyze_all(p).unwrap() {
            assert!(a.theta_trivial, "p={p} S={:?}", a.palette);
            assert!(
                a.kernel_theta.iter().all(|&t| t == 0),
                "p={p} S={:?}",
                a.palette
            );
            assert_eq!(
                a.supports_cocycle_bound_route,
                p != 13 && p != 29,
                "p={p} S={:?}",
                a.palette
            );
            palettes += 1;
        }
    }
    let first_11 = &analyze_all(11).unwrap()[0];
    assert_eq!(
        first_11.relations,
        vec!["t1 = -t2 = t3 = t6".to_string(), "t4 = t5 = 0".to_string()]
    );
    assert_eq!(first_11.kernel_basis, vec![vec![1, -1, 1, 0, 0, 1]]);
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "palette analyses took {dt:.2?}");
    println!("PASS: c07 theta vanishes on all {palettes} candidate kernels for p in {{7,11,13,19,23,29,31}} ({dt:.2?})");
}

#[test]
fn c08_p17_analysis_reports_the_undecided_palette() {
    // Deliberately weaker than the other criteria: the analyzer must finish
    // and must NOT certify all 12 candidates theta-trivial; exactly which
    // palettes fail is reported for human review, not asserted.
    let analyses = analyze_all(17).unwrap();
    assert_eq!(analyses.len(), 12);
    let flagged: Vec<_> = analyses.iter().filter(|a| !a.theta_trivial).collect();
    assert!(
        !flagged.is_empty(),
        "p=17 must not come out fully theta-trivial; if this changed, review the analyzer"
    );
    assert!(flagged.iter().all(|a| !a.supports_cocycle_bound_route));
    for a in &flagged {
        println!(
            "REVIEW: c08 p=17 palette {:?} has kernel theta values {:?}",
            a.palette, a.kernel_theta
        );
    }
    println!(
        "PASS: c08 p=17: {} of 12 candidate kernels theta-trivial; flagged palettes reported above",
        12 - flagged.len()
    );
}

#[test]
fn c09_solver_agrees_with_direct_constraint_enumeration() {
    let mut diagrams = 0usize;
    for entry in builtin_table() {
        let topo = extract_topology(&entry.pd).unwrap();
        if topo.n_regions() > 7 {
            continue;
        }
        for p in [3u64, 5, 7] {
            // Direct check of the defining relation on every candidate vector.
            let mut brute = 0u128;
            let mut colors = vec![0u64; topo.n_regions()];
            'odometer: loop {
                let ok = (0..topo.n_crossings()).all(|v| {
                    let c = topo.crossing_corners(v);
                    (colors[c.x1] + colors[c.x3]) % p == (colors[c.x2] + colors[c.x4]) % p
                });
                brute += ok as u128;
                let mut i = colors.len();
                loop {
                    if i == 0 {
                        break 'odometer;
                    }
                    i -= 1;
                    colors[i] += 1;
                    if colors[i] < p {
                        break;
                    }
                    colors[i] = 0;
                }
            }
            let space = solve_coloring_space(&topo, p).unwrap();
            assert_eq!(space.total(), Some(brute), "{} p={p}", entry.name);
            let trivial = enumerate_colorings(&space)
                .unwrap()
                .filter(|c| classify_coloring(&topo, c) == ColoringKind::Trivial)
                .count() as u128;
            assert_eq!(trivial, (p as u128) * (p as u128), "{} p={p}", entry.name);
            diagrams += 1;
        }
    }
    println!("PASS: c09 solver matches brute-force counts and p^2 trivial colorings ({diagrams} diagram/prime pairs)");
}

#[test]
fn c10_nontrivial_colorings_respect_the_log_lower_bound() {
    let cases = [
        (topo_of("5_2"), 7u64),
        (torus_2n(7), 7),
        (torus_2n(11), 11),
        (torus_2n(13), 13),
    ];
    let mut checked = 0u64;
    for (topo, p) in &cases {
        let p = *p;
        let bound = floor_log2(p) as usize + 2;
        let space = solve_coloring_space(topo, p).unwrap();
        let mut nontrivial = 0u64;
        for c in enumerate_colorings(&space).unwrap() {
            if classify_coloring(topo, &c) == ColoringKind::Nontrivial {
                nontrivial += 1;
                assert!(
                    c.n_colors() >= bound,
                    "p={p}: coloring {:?} uses {} < {bound} colors",
                    c.colors,
                    c.n_colors()
                );
            }
        }
        assert!(
            nontrivial > 0,
            "p={p}: the test diagram must have nontrivial colorings"
        );
        checked += nontrivial;
    }
    println!(
        "PASS: c10 every nontrivial coloring met the floor(log2 p) + 2 color bound ({checked} colorings over p in {{7,11,13}})"
    );
}

//! The full invariant pipeline on the 5_2 knot at p = 7.
//!
//! Every coloring C of a diagram D determines a 2-chain W(D, C) — one
//! signed generator per crossing — which is always a cycle. Evaluating the
//! cocycle theta_7 on it gives a number in Z_7, and the multiset of these
//! numbers over all nontrivial colorings is an invariant of the knot. The
//! affine maps C -> s*C + t act freely on nontrivial colorings and scale
//! the value by s^2, which organizes the multiset into uniform blocks.
//!
//! Run with: cargo run --example cocycle_invariant

use dehncol::coloring::{coloring_affine_classes, solve_coloring_space};
use dehncol::invariant::{mincol_bounds, phi_invariant, theta_weight, ColoringFilter};
use dehncol::table::find_knot;
use dehncol::topology::extract_topology;
use dehncol::Result;

fn main() -> Result<()> {
    let entry = find_knot("5_2", &[])?;
    let topo = extract_topology(&entry.pd)?;
    let p = 7;

    let phi_nt = phi_invariant(&topo, p, ColoringFilter::Nontrivial, None)?;
    println!("5_2 at p = {p}:");
    println!(
        "  colorings: {} total, {} trivial, {} nontrivial",
        phi_nt.total_colorings,
        phi_nt.trivial_colorings,
        phi_nt.nontrivial_colorings()
    );
    println!(
        "  invariant over nontrivial colorings: {}",
        phi_nt.multiset_string()
    );

    let phi_all = phi_invariant(&topo, p, ColoringFilter::All, None)?;
    println!(
        "  invariant over all colorings:        {}",
        phi_all.multiset_string()
    );
    println!(
        "  (trivial colorings contribute the block of {} zeros)",
        phi_nt.trivial_colorings
    );
    println!();

    // The affine classes: each nontrivial coloring sits in an orbit of
    // size p(p-1) = 42 under C -> s*C + t, and theta scales by s^2 inside
    // an orbit, so each orbit contributes a coset of squares.
    let space = solve_coloring_space(&topo, p)?;
    let classes = coloring_affine_classes(&topo, &space, None)?;
    println!(
        "  {} affine classes of nontrivial colorings:",
        classes.len()
    );
    for class in &classes {
        let theta = theta_weight(&topo, &class.representative);
        println!(
            "    representative {:?}  orbit size {}  theta = {}",
            class.representative.colors, class.size, theta
        );
    }
    println!();

    // Minimum-color bounds. The lower bound holds for every diagram of the
    // knot; the upper bound exhibits a coloring on this diagram.
    let bounds = mincol_bounds(&topo, p, None)?;
    println!("  minimum colors over nontrivial colorings:");
    println!(
        "    lower bound {} (route: {:?})",
        bounds.lower.unwrap(),
        bounds.lower_route.unwrap()
    );
    let witness = bounds.witness.as_ref().unwrap();
    println!(
        "    upper bound {} via witness {:?} using colors {:?}",
        bounds.upper.unwrap(),
        witness.colors,
        witness.palette()
    );

    // At a prime that does not divide the determinant there is nothing.
    let nothing = phi_invariant(&topo, 5, ColoringFilter::Nontrivial, None)?;
    println!();
    println!(
        "  at p = 5 (determinant {} is coprime to 5): multiset {} — not 5-colorable",
        topo.determinant(),
        nothing.multiset_string()
    );
    Ok(())
}

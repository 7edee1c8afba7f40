//! Solve the Dehn coloring system of a few diagrams and report counts.
//!
//! For each region of a diagram a color in Z_p is chosen; every crossing
//! imposes one linear equation (the two colors on one diagonal sum to the
//! same value as the two on the other). The solution set always contains
//! the p^2 "trivial" colorings that are constant on each checkerboard
//! shading class; a diagram is interesting at p when anything else shows up.
//!
//! Run with: cargo run --example count_colorings

use dehncol::coloring::{
    classify_coloring, enumerate_colorings, solve_coloring_space, ColoringKind,
};
use dehncol::table::builtin_table;
use dehncol::topology::extract_topology;
use dehncol::{PDCode, Result};

fn main() -> Result<()> {
    println!("diagram      p   regions  rank  dim  total  trivial  nontrivial");
    println!("--------------------------------------------------------------");
    for entry in builtin_table() {
        let topo = extract_topology(&entry.pd)?;
        for p in [3u64, 5, 7] {
            let space = solve_coloring_space(&topo, p)?;
            let mut total = 0u64;
            let mut trivial = 0u64;
            for c in enumerate_colorings(&space)? {
                total += 1;
                if classify_coloring(&topo, &c) == ColoringKind::Trivial {
                    trivial += 1;
                }
            }
            println!(
                "{:<10} {:>3} {:>8} {:>5} {:>4} {:>6} {:>8} {:>11}",
                entry.name,
                p,
                topo.n_regions(),
                space.rank,
                space.dim(),
                total,
                trivial,
                total - trivial
            );
        }
        println!(
            "{:<10} determinant = {} (nontrivial p-colorings exist iff p divides it)",
            "",
            topo.determinant()
        );
        println!();
    }

    // A custom diagram passed as PD text: the unknot drawn with two kinks.
    // Extra crossings add regions and equations but cannot manufacture
    // nontrivial colorings.
    let kinked = PDCode::parse("X(1,2,2,3);X(3,4,4,1)")?;
    let topo = extract_topology(&kinked)?;
    let space = solve_coloring_space(&topo, 5)?;
    let nontrivial = enumerate_colorings(&space)?
        .filter(|c| classify_coloring(&topo, c) == ColoringKind::Nontrivial)
        .count();
    println!(
        "two-kink unknot diagram: {} regions, {} nontrivial 5-colorings",
        topo.n_regions(),
        nontrivial
    );
    Ok(())
}

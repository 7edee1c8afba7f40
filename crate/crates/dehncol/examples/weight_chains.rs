//! A close look at the chain algebra behind the invariant.
//!
//! Each crossing of a colored diagram contributes a signed generator
//! ((a,b),(a,c)) built from the colors of the four surrounding regions.
//! Generators come in four equivalent presentations, so the weight can be
//! read at any corner of the crossing; the normal form makes the choices
//! agree. Summing over crossings gives the weight chain W(D, C), whose
//! boundary always cancels to zero — that is what makes the cocycle value
//! well defined.
//!
//! Run with: cargo run --example weight_chains

use dehncol::algebra::{boundary2, boundary2_of_chain, theta, theta_of_chain, tribracket};
use dehncol::coloring::DehnColoring;
use dehncol::invariant::{crossing_weight, weight_sum};
use dehncol::table::find_knot;
use dehncol::topology::extract_topology;
use dehncol::Result;

fn main() -> Result<()> {
    let p = 7;
    println!(
        "tribracket: [a,b,c] = a - b + c mod {p}; e.g. [0,1,2] = {}",
        tribracket(0, 1, 2, p)
    );
    println!();

    // One generator, its boundary, and its cocycle value.
    let (a, b, c) = (0, 1, 2);
    println!("generator ((0,1),(0,2)) over Z_{p}:");
    println!("  boundary:    {}", boundary2(a, b, c, p));
    println!("  theta value: {}", theta(a, b, c, p));
    let mut other_corner = dehncol::NormalChain2::zero();
    other_corner.add_raw(1, 0, 3, 1, p);
    println!("  the presentation ((1,0),(1,3)) has normal form {other_corner}");
    println!(
        "  (same generator up to sign; theta changes sign with it: {})",
        theta(1, 0, 3, p)
    );
    println!();

    // A specific nontrivial coloring of 5_2 mod 7 and its weights.
    let entry = find_knot("5_2", &[])?;
    let topo = extract_topology(&entry.pd)?;
    let coloring = DehnColoring::new(&topo, p, vec![2, 1, 0, 3, 1, 0, 5])?;
    println!("5_2 colored with {:?} mod {p}:", coloring.colors);
    for v in 0..topo.n_crossings() {
        let (sign, [x, y, z]) = crossing_weight(&topo, &coloring, v);
        let normal = {
            let mut ch = dehncol::NormalChain2::zero();
            ch.add_raw(x, y, z, sign, p);
            ch
        };
        println!(
            "  crossing {v}: raw {}(({x},{y}),({x},{z}))  ->  normal form {normal}",
            if sign < 0 { "-" } else { "+" }
        );
    }
    let w = weight_sum(&topo, &coloring);
    println!("  weight chain W(D,C) = {w}");
    println!("  boundary of W       = {}", boundary2_of_chain(&w, p));
    println!("  theta_7(W)          = {}", theta_of_chain(&w, p));
    Ok(())
}

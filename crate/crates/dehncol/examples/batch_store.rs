//! Batch processing with a persistent, append-only results store.
//!
//! Builds a small CSV knot table in a temporary directory, computes the
//! invariant for every knot at several primes while recording each result
//! in a store file, then reruns the whole batch to show that every result
//! is served from the store instead of being recomputed.
//!
//! Run with: cargo run --example batch_store

use dehncol::invariant::{phi_invariant, ColoringFilter};
use dehncol::store::{inputs_hash, RecordKey, ResultsStore};
use dehncol::table::load_knot_table;
use dehncol::topology::extract_topology;
use dehncol::Result;

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("dehncol-batch-demo");
    std::fs::create_dir_all(&dir)?;
    let table_path = dir.join("knots.csv");
    std::fs::write(
        &table_path,
        "name,pd,determinant\n\
         trefoil,\"X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\",3\n\
         figure-eight,\"X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)\",5\n\
         5_2,\"X(1,4,2,5);X(3,8,4,9);X(5,10,6,1);X(9,6,10,7);X(7,2,8,3)\",7\n",
    )?;
    let store_path = dir.join("results.jsonl");
    let _ = std::fs::remove_file(&store_path);
    let _ = std::fs::remove_file(store_path.with_extension("jsonl.idx"));

    let table = load_knot_table(&table_path)?;
    for pass in 1..=2 {
        println!("pass {pass}:");
        let mut store = ResultsStore::open(&store_path)?;
        for entry in &table {
            let topo = extract_topology(&entry.pd)?;
            for p in [3u64, 5, 7] {
                let key = RecordKey::new(&entry.name, p, "invariant-nontrivial");
                let hash = inputs_hash(&[&entry.pd.to_json(), &p.to_string()]);
                let (value, hit) = store.get_or_compute(key, &hash, || {
                    let phi = phi_invariant(&topo, p, ColoringFilter::Nontrivial, None)?;
                    Ok(serde_json::json!({
                        "multiset": phi.multiset_string(),
                        "nontrivial": phi.nontrivial_colorings().to_string(),
                    }))
                })?;
                println!(
                    "  {:<12} p={p}: phi^nt = {:<24} [{}]",
                    entry.name,
                    value["multiset"].as_str().unwrap_or("?"),
                    if hit { "store" } else { "computed" },
                );
            }
        }
        println!("  store now holds {} records\n", store.len());
    }
    println!("store file: {}", store_path.display());
    Ok(())
}

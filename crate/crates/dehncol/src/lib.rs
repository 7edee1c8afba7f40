//! Dehn p-colorings of knot diagrams and a cocycle invariant built on them.
//!
//! Given a planar diagram (PD) code of a knot, this crate
//!
//! * extracts the region structure of the diagram and solves the Dehn
//!   coloring equations over `Z_p` ([`extract_topology`],
//!   [`solve_coloring_space`], [`enumerate_colorings`]);
//! * evaluates a cocycle invariant: each coloring contributes a weight
//!   chain built from the colors around every crossing, a specific
//!   2-cocycle `theta` turns that chain into an element of `Z_p`, and the
//!   multiset of those values over all (or all nontrivial) colorings is a
//!   knot invariant ([`weight_sum`], [`theta`], [`phi_invariant`]);
//! * derives lower and upper bounds on the minimum number of distinct
//!   colors any nontrivial coloring must use ([`mincol_bounds`],
//!   [`min_colors_over_diagram`]);
//! * machine-checks the algebra behind all of the above: the chain
//!   complex, the cocycle conditions, and the kernel analyses of candidate
//!   small palettes ([`verify_chain_complex`], [`verify_theta_cocycle`],
//!   [`verify_weights`], [`kernel_analysis`]).
//!
//! The primary way into the crate is the `examples/` directory; each file
//! is a self-contained, commented program:
//!
//! * `count_colorings` — region extraction and coloring counts for the
//!   built-in knot table;
//! * `cocycle_invariant` — the full invariant story for one knot: value
//!   multisets, affine classes of colorings, and color bounds;
//! * `weight_chains` — the chain algebra at single-crossing resolution:
//!   raw weights, normal forms, boundaries, and theta;
//! * `palette_kernels` — kernel analyses of the candidate palettes for
//!   every supported prime;
//! * `verification` — the exhaustive self-check suites with check counts;
//! * `batch_store` — batch computation against a persistent results store.
//!
//! The same functionality is exposed on the command line through the
//! `dehncol` binary (`colorings`, `invariant`, `palette`, and `verify`
//! subcommands).
//!
//! Everything is specific to one algebraic setup: colors live in `Z_p` for
//! an odd prime `p <= 31`, the ternary bracket is `[a,b,c] = a - b + c`,
//! and the cocycle is the mod-p reduction of
//! `(a-b) * ((a-b+2c)^p + (a+b)^p - 2(a+c)^p) / p`.
//! Diagram conventions (PD slot order, quadrant labels, sign conventions)
//! are documented in [`topology`] and pinned by [`CONVENTION_VERSION`].

pub mod algebra;
pub mod coloring;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod modp;
pub mod palette;
pub mod pd;
pub mod store;
pub mod table;
pub mod topology;

pub use algebra::{
    boundary2, boundary2_of_chain, normalize_gen2, theta, theta_of_chain, tribracket,
    verify_theta_cocycle, CocycleCertificate, FreeGen2, Gen2Normal, NormalChain1, NormalChain2,
    TorsionGen2,
};
pub use algebra::{verify_chain_complex, ChainCertificate};
pub use coloring::{
    classify_coloring, coloring_affine_classes, enumerate_colorings, min_colors_over_diagram,
    solve_coloring_space, ColoringKind, ColoringSpace, DehnColoring,
};
pub use error::{Error, Result};
pub use invariant::{
    check_affine_symmetry, check_corner_independence, check_weight_cycles, crossing_weight,
    mincol_bounds, phi_invariant, theta_weight, verify_weights, weight_sum, BoundReport,
    ColoringFilter, LowerBoundRoute, PhiInvariant, WeightsCertificate,
};
pub use palette::{
    affine_canonical_palette, analyze_all, candidate_palettes, kernel_analysis, weight_generators,
    KernelAnalysis,
};
pub use pd::PDCode;
pub use store::{Record, RecordKey, ResultsStore, CONVENTION_VERSION};
pub use table::{builtin_table, find_knot, load_knot_table, KnotTableEntry};
pub use topology::{extract_topology, CrossingCorners, DiagramTopology};

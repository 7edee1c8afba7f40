//! Planar topology extracted from a PD code: regions, quadrants around each
//! crossing, and the checkerboard shading.
//!
//! Geometry convention at a crossing `X(e1,e2,e3,e4)` (labels counterclockwise
//! from the incoming under edge): e1 south, e2 east, e3 north, e4 west. The
//! under-strand is the vertical pass (slots 0 and 2), the over-strand the
//! horizontal one (slots 1 and 3). Quadrant `q_k` sits between slots k and
//! k+1, so q0=SE, q1=NE, q2=NW, q3=SW.
//!
//! The four regions in the roles used by coloring rules are
//! x1=q0 (reference), x2=q3 (across the under-strand from x1),
//! x3=q1 (across the over-strand from x1), x4=q2 (diagonal).

use crate::error::{Error, Result};
use crate::pd::PDCode;

/// End of an edge at a crossing: (crossing index, slot 0..=3).
type End = (usize, u8);

#[derive(Debug, Clone)]
pub struct DiagramTopology {
    pd: PDCode,
    n_regions: usize,
    /// quad[v][k] = region id of quadrant q_k at crossing v.
    quad: Vec<[usize; 4]>,
    /// Checkerboard class (0 or 1) per region; region 0 has class 0.
    shade: Vec<u8>,
    /// Corner orbits, one per region, in traversal order.
    faces: Vec<Vec<End>>,
}

/// The regions around one crossing in coloring-rule roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingCorners {
    /// Reference region q0.
    pub x1: usize,
    /// Across the under-strand from x1 (q3).
    pub x2: usize,
    /// Across the over-strand from x1 (q1).
    pub x3: usize,
    /// Diagonal from x1 (q2).
    pub x4: usize,
}

/// Builds the region structure of a PD code, rejecting codes that are not
/// single-component knot diagrams or whose rotation system is not planar.
pub fn extract_topology(pd: &PDCode) -> Result<DiagramTopology> {
    let n = pd.len();
    if n == 0 {
        // round unknot: two regions, opposite shades
        return Ok(DiagramTopology {
            pd: pd.clone(),
            n_regions: 2,
            quad: Vec::new(),
            shade: vec![0, 1],
            faces: vec![Vec::new(), Vec::new()],
        });
    }

    // mate[v*4+i] = the other end carrying the same edge label
    let mut by_label: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for (v, cr) in pd.crossings().iter().enumerate() {
        for (i, &lab) in cr.iter().enumerate() {
            by_label.entry(lab).or_default().push(v * 4 + i);
        }
    }
    let mut mate = vec![usize::MAX; 4 * n];
    for (_, ends) in by_label {
        debug_assert_eq!(ends.len(), 2, "PDCode validated labels");
        mate[ends[0]] = ends[1];
        mate[ends[1]] = ends[0];
    }

    // single strand: enter a crossing at slot i, leave at slot i+2
    let mut seen = vec![false; 4 * n];
    let start = 0usize;
    let mut cur = start;
    loop {
        let (v, i) = (cur / 4, cur % 4);
        let out = v * 4 + (i + 2) % 4;
        if seen[cur] {
            return Err(Error::NotAKnot("strand revisits a crossing slot".into()));
        }
        seen[cur] = true;
        seen[out] = true;
        cur = mate[out];
        if cur == start {
            break;
        }
    }
    if seen.iter().any(|&s| !s) {
        let missing = seen.iter().filter(|&&s| !s).count();
        return Err(Error::NotAKnot(format!(
            "strand closes up before covering the diagram ({missing} of {} crossing slots unvisited); this PD code describes a link",
            4 * n
        )));
    }

    // faces: orbits of corner (v,i) -> mate end of slot i+1
    let mut face_of = vec![usize::MAX; 4 * n];
    let mut faces: Vec<Vec<End>> = Vec::new();
    for c0 in 0..4 * n {
        if face_of[c0] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut orbit = Vec::new();
        let mut c = c0;
        while face_of[c] == usize::MAX {
            face_of[c] = id;
            orbit.push(((c / 4), (c % 4) as u8));
            let (v, i) = (c / 4, c % 4);
            c = mate[v * 4 + (i + 1) % 4];
        }
        if c != c0 {
            return Err(Error::NonPlanar("face traversal does not close up".into()));
        }
        faces.push(orbit);
    }
    if faces.len() != n + 2 {
        return Err(Error::NonPlanar(format!(
            "Euler count fails: {} crossings need {} regions, face traversal found {}",
            n,
            n + 2,
            faces.len()
        )));
    }

    let mut quad = vec![[0usize; 4]; n];
    for v in 0..n {
        for k in 0..4 {
            quad[v][k] = face_of[v * 4 + k];
        }
    }

    // checkerboard shading: regions on the two sides of an edge differ.
    // The sides of the edge at slot i of crossing v are the faces of
    // corners (v, i-1) and (v, i).
    let n_regions = faces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_regions];
    for v in 0..n {
        for i in 0..4usize {
            let f1 = face_of[v * 4 + (i + 3) % 4];
            let f2 = face_of[v * 4 + i];
            adj[f1].push(f2);
            adj[f2].push(f1);
        }
    }
    let mut shade = vec![u8::MAX; n_regions];
    shade[0] = 0;
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        for &g in &adj[f] {
            if shade[g] == u8::MAX {
                shade[g] = 1 - shade[f];
                stack.push(g);
            } else if shade[g] == shade[f] {
                return Err(Error::NonPlanar(
                    "checkerboard shading is inconsistent".into(),
                ));
            }
        }
    }
    if shade.contains(&u8::MAX) {
        return Err(Error::NonPlanar(
            "region adjacency graph is disconnected".into(),
        ));
    }

    Ok(DiagramTopology {
        pd: pd.clone(),
        n_regions,
        quad,
        shade,
        faces,
    })
}

impl DiagramTopology {
    pub fn pd(&self) -> &PDCode {
        &self.pd
    }

    pub fn n_crossings(&self) -> usize {
        self.pd.len()
    }

    pub fn n_regions(&self) -> usize {
        self.n_regions
    }

    /// Region ids of quadrants [q0, q1, q2, q3] at crossing v.
    pub fn quadrants(&self, v: usize) -> [usize; 4] {
        self.quad[v]
    }

    /// Checkerboard class (0 or 1) of a region.
    pub fn shade(&self, region: usize) -> u8 {
        self.shade[region]
    }

    pub fn shades(&self) -> &[u8] {
        &self.shade
    }

    pub fn faces(&self) -> &[Vec<End>] {
        &self.faces
    }

    /// Regions around crossing v in coloring-rule roles.
    pub fn crossing_corners(&self, v: usize) -> CrossingCorners {
        let q = self.quad[v];
        CrossingCorners {
            x1: q[0],
            x2: q[3],
            x3: q[1],
            x4: q[2],
        }
    }

    /// Integer coloring constraint rows, one per crossing:
    /// C(x1) + C(x3) - C(x2) - C(x4) = 0, with coefficients accumulated when
    /// quadrants coincide as regions (kinks).
    pub fn constraint_rows_int(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::with_capacity(self.n_crossings());
        for v in 0..self.n_crossings() {
            let mut row = vec![0i64; self.n_regions];
            let q = self.quad[v];
            row[q[0]] += 1;
            row[q[1]] += 1;
            row[q[2]] -= 1;
            row[q[3]] -= 1;
            rows.push(row);
        }
        rows
    }

    /// Knot determinant, computed as the product of the invariant factors of
    /// the integer constraint matrix.
    pub fn determinant(&self) -> u64 {
        crate::linalg::invariant_factor_product(&self.constraint_rows_int(), self.n_regions)
    }
}

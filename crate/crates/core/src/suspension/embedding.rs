//! Self-intersection test in the Klein ball.
//!
//! Geodesic triangles are flat Euclidean triangles in Klein coordinates, so
//! the hyperbolic question reduces to Euclidean triangle–triangle tests.
//!
//! Two triangles intersect iff some edge of one meets the other, and every
//! extreme point of their intersection is an endpoint of such an
//! edge–triangle segment. For adjacent faces we therefore ignore segment
//! endpoints lying within [`tol::ADJACENCY`] of the shared vertex or edge;
//! any other endpoint is a genuine intersection.

use serde::{Deserialize, Serialize};

use super::SuspensionMesh;
use crate::tol;

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn lerp(a: P3, b: P3, t: f64) -> P3 {
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}

fn norm(a: P3) -> f64 {
    dot(a, a).sqrt()
}

/// Portion of the segment `p0 p1` inside the closed triangle `tri`, as a
/// (possibly degenerate) segment.
fn segment_triangle(p0: P3, p1: P3, tri: &[P3; 3]) -> Option<(P3, P3)> {
    let eps = tol::INTERSECTION;
    let nrm = cross(sub(tri[1], tri[0]), sub(tri[2], tri[0]));
    let len = norm(nrm);
    if len == 0.0 {
        return None;
    }
    let unit = nrm.map(|x| x / len);
    let s0 = dot(sub(p0, tri[0]), unit);
    let s1 = dot(sub(p1, tri[0]), unit);
    if (s0 > eps && s1 > eps) || (s0 < -eps && s1 < -eps) {
        return None;
    }
    // Clip the parameter interval against the in-plane half-spaces of the
    // three edges; for a transversal segment first shrink it to the
    // crossing point.
    let (mut lo, mut hi) = if s0.abs() <= eps && s1.abs() <= eps {
        (0.0, 1.0)
    } else if s0.abs() <= eps {
        (0.0, 0.0)
    } else if s1.abs() <= eps {
        (1.0, 1.0)
    } else {
        let t = s0 / (s0 - s1);
        (t, t)
    };
    let d = sub(p1, p0);
    for k in 0..3 {
        let (a, b) = (tri[k], tri[(k + 1) % 3]);
        let inward = cross(unit, sub(b, a));
        let scale = norm(inward);
        let f0 = dot(sub(p0, a), inward) / scale;
        let fd = dot(d, inward) / scale;
        // Need f0 + t·fd ≥ −eps on [lo, hi].
        if fd.abs() < 1e-300 {
            if f0 < -eps {
                return None;
            }
            continue;
        }
        let t = (-eps - f0) / fd;
        if fd > 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
        if lo > hi {
            return None;
        }
    }
    Some((lerp(p0, p1, lo), lerp(p0, p1, hi)))
}

fn distance_to_shared(x: P3, shared: &[P3]) -> f64 {
    match shared {
        [] => f64::INFINITY,
        [v] => norm(sub(x, *v)),
        [a, b, ..] => {
            let ab = sub(*b, *a);
            let t = (dot(sub(x, *a), ab) / dot(ab, ab)).clamp(0.0, 1.0);
            norm(sub(x, lerp(*a, *b, t)))
        }
    }
}

/// Whether two triangles meet anywhere outside the simplex spanned by
/// `shared` (their common vertices).
pub fn triangles_intersect(t1: &[P3; 3], t2: &[P3; 3], shared: &[P3]) -> bool {
    let escapes = |(x, y): (P3, P3)| {
        distance_to_shared(x, shared) > tol::ADJACENCY
            || distance_to_shared(y, shared) > tol::ADJACENCY
    };
    for (a, b) in [(t1, t2), (t2, t1)] {
        for k in 0..3 {
            if let Some(seg) = segment_triangle(a[k], a[(k + 1) % 3], b) {
                if escapes(seg) {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub embedded: bool,
    pub pairs_checked: usize,
    /// First intersecting face pair (indices into `mesh.faces`).
    pub violation: Option<[usize; 2]>,
    pub violation_labels: Option<[String; 2]>,
}

/// Tests all face pairs of the mesh for intersections beyond shared
/// vertices and edges.
pub fn check_embedding(mesh: &SuspensionMesh) -> EmbeddingReport {
    let klein: Vec<P3> = mesh.vertices.iter().map(|v| v.klein()).collect();
    let tri = |f: &[usize; 3]| f.map(|i| klein[i]);
    let mut pairs_checked = 0;
    for (i, fi) in mesh.faces.iter().enumerate() {
        for (j, fj) in mesh.faces.iter().enumerate().skip(i + 1) {
            pairs_checked += 1;
            let shared: Vec<P3> = fi
                .iter()
                .filter(|v| fj.contains(v))
                .map(|&v| klein[v])
                .collect();
            if triangles_intersect(&tri(fi), &tri(fj), &shared) {
                let name = |f: &[usize; 3]| {
                    f.iter()
                        .map(|&v| mesh.label(v))
                        .collect::<Vec<_>>()
                        .join("")
                };
                return EmbeddingReport {
                    embedded: false,
                    pairs_checked,
                    violation: Some([i, j]),
                    violation_labels: Some([name(fi), name(fj)]),
                };
            }
        }
    }
    EmbeddingReport {
        embedded: true,
        pairs_checked,
        violation: None,
        violation_labels: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: [P3; 3] = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];

    #[test]
    fn piercing_triangle_intersects() {
        let other = [[0.2, 0.2, -0.5], [0.2, 0.2, 0.5], [0.8, 0.9, 0.0]];
        assert!(triangles_intersect(&T, &other, &[]));
    }

    #[test]
    fn separated_triangles_do_not_intersect() {
        let other = [[0.0, 0.0, 0.1], [1.0, 0.0, 0.1], [0.0, 1.0, 0.2]];
        assert!(!triangles_intersect(&T, &other, &[]));
    }

    #[test]
    fn coplanar_overlap_and_separation() {
        let overlap = [[0.2, 0.2, 0.0], [2.0, 0.2, 0.0], [0.2, 2.0, 0.0]];
        assert!(triangles_intersect(&T, &overlap, &[]));
        let apart = [[1.0, 1.0, 0.0], [2.0, 1.0, 0.0], [1.0, 2.0, 0.0]];
        assert!(!triangles_intersect(&T, &apart, &[]));
    }

    #[test]
    fn shared_edge_alone_is_not_an_intersection() {
        let hinge = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, -0.5, 0.4]];
        assert!(!triangles_intersect(&T, &hinge, &[T[0], T[1]]));
        // Coplanar on the other side of the shared edge.
        let flat = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, -1.0, 0.0]];
        assert!(!triangles_intersect(&T, &flat, &[T[0], T[1]]));
        // Folded onto the first triangle.
        let folded = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, 0.3, 0.0]];
        assert!(triangles_intersect(&T, &folded, &[T[0], T[1]]));
    }

    #[test]
    fn shared_vertex_alone_is_not_an_intersection() {
        let fan = [[0.0, 0.0, 0.0], [-1.0, 0.2, 0.3], [-0.5, -1.0, 0.1]];
        assert!(!triangles_intersect(&T, &fan, &[T[0]]));
        let through = [[0.0, 0.0, 0.0], [0.5, 0.2, -0.5], [0.5, 0.2, 0.5]];
        assert!(triangles_intersect(&T, &through, &[T[0]]));
    }
}

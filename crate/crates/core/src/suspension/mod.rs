//! Explicit coordinates for the suspension polyhedron.
//!
//! The star lies in the plane `x₃ = 0` around the basepoint `C`; the poles
//! `N` and `S` sit on the `x₃` axis. `A_i` (radius `p`) sit at azimuths
//! `2π(i−1)/n`, `B_i` (radius `q`) halfway between. The surface consists of
//! the `4n` lateral triangles of the two pyramids; the common base is not
//! part of it, so `C` is kept only as metadata.

pub mod embedding;
pub mod export;
pub mod minkowski;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tetra::{radial_lengths, FlexVelocities, SuspensionParams, TetraMetrics};

pub use embedding::{check_embedding, EmbeddingReport};
pub use export::{export_mesh, import_mesh_json, MeshFormat};
use minkowski::{interior_face_angle, lorentz_cross, MinkowskiPoint, Vec4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// `A_i B_i` and `B_i A_{i+1}`, of length `a`.
    Equator,
    /// `N A_i` and `S A_i`, of length `b`.
    ApexA,
    /// `N B_i` and `S B_i`, of length `c`.
    ApexB,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 3] = [EdgeClass::Equator, EdgeClass::ApexA, EdgeClass::ApexB];
}

/// One edge of the suspension with the length and total dihedral angle
/// predicted by the brick's closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub class: EdgeClass,
    pub vertices: [usize; 2],
    pub length: f64,
    /// Interior dihedral angle of the suspension, twice the brick's.
    pub dihedral: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspensionMesh {
    pub params: SuspensionParams,
    pub velocities: FlexVelocities,
    pub t: f64,
    pub center: MinkowskiPoint,
    /// `N, S, A_1..A_n, B_1..B_n`.
    pub vertices: Vec<MinkowskiPoint>,
    /// Triangles oriented with outward normals.
    pub faces: Vec<[usize; 3]>,
    pub edges: Vec<EdgeRecord>,
}

pub const NORTH: usize = 0;
pub const SOUTH: usize = 1;

impl SuspensionMesh {
    pub fn a_index(&self, i: usize) -> usize {
        2 + i % self.params.n
    }

    pub fn b_index(&self, i: usize) -> usize {
        2 + self.params.n + i % self.params.n
    }

    pub fn label(&self, v: usize) -> String {
        let n = self.params.n;
        match v {
            NORTH => "N".into(),
            SOUTH => "S".into(),
            v if v < 2 + n => format!("A{}", v - 1),
            v => format!("B{}", v - 1 - n),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Minkowski distance between the endpoints of an edge.
    pub fn edge_length(&self, edge: &EdgeRecord) -> f64 {
        let [i, j] = edge.vertices;
        self.vertices[i].distance(&self.vertices[j])
    }

    fn outward_normal(&self, face: &[usize; 3]) -> Vec4 {
        let [x, y, z] = face.map(|i| self.vertices[i].0);
        let n = lorentz_cross(&x, &y, &z);
        [-n[0], -n[1], -n[2], -n[3]]
    }

    /// Rotates the tip vertices `B_i` about the axis by `angle`. A large
    /// rotation drags the equator across itself, producing a folded,
    /// self-intersecting surface. Edge records are re-measured from the
    /// coordinates since the closed forms no longer apply.
    pub fn with_twisted_tips(&self, angle: f64) -> Result<Self> {
        let mut out = self.clone();
        for i in 0..self.params.n {
            let b = out.b_index(i);
            out.vertices[b] = out.vertices[b].rotate_about_axis(angle);
        }
        for k in 0..out.edges.len() {
            let e = out.edges[k];
            out.edges[k].length = out.edge_length(&e);
            out.edges[k].dihedral = dihedral_from_normals(&out, &e)?;
        }
        Ok(out)
    }
}

/// Builds the suspension at parameter `t` of the deformation.
pub fn build_mesh(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: f64,
) -> Result<SuspensionMesh> {
    let [h, p, q] = radial_lengths(params, vel, t)?;
    let metrics = TetraMetrics::at(params, vel, t)?;
    let n = params.n;

    let mut vertices = Vec::with_capacity(2 * n + 2);
    vertices.push(MinkowskiPoint::from_polar(h, [0.0, 0.0, 1.0]));
    vertices.push(MinkowskiPoint::from_polar(h, [0.0, 0.0, -1.0]));
    for i in 0..n {
        let az = 2.0 * PI * i as f64 / n as f64;
        vertices.push(MinkowskiPoint::from_polar(p, [az.cos(), az.sin(), 0.0]));
    }
    for i in 0..n {
        let az = (2 * i + 1) as f64 * PI / n as f64;
        vertices.push(MinkowskiPoint::from_polar(q, [az.cos(), az.sin(), 0.0]));
    }

    let a = |i: usize| 2 + i % n;
    let b = |i: usize| 2 + n + i % n;
    let mut faces = Vec::with_capacity(4 * n);
    for i in 0..n {
        faces.push([NORTH, a(i), b(i)]);
        faces.push([NORTH, b(i), a(i + 1)]);
        faces.push([SOUTH, b(i), a(i)]);
        faces.push([SOUTH, a(i + 1), b(i)]);
    }

    let d = metrics.dihedrals;
    let e = metrics.edges;
    let record = |class, vertices, length: f64, brick: f64| EdgeRecord {
        class,
        vertices,
        length,
        dihedral: 2.0 * brick,
    };
    let mut edges = Vec::with_capacity(6 * n);
    for i in 0..n {
        edges.push(record(
            EdgeClass::Equator,
            [a(i), b(i)],
            e.a.len,
            d.ab.angle(),
        ));
        edges.push(record(
            EdgeClass::Equator,
            [b(i), a(i + 1)],
            e.a.len,
            d.ab.angle(),
        ));
    }
    for pole in [NORTH, SOUTH] {
        for i in 0..n {
            edges.push(record(
                EdgeClass::ApexA,
                [pole, a(i)],
                e.b.len,
                d.na.angle(),
            ));
        }
    }
    for pole in [NORTH, SOUTH] {
        for i in 0..n {
            edges.push(record(
                EdgeClass::ApexB,
                [pole, b(i)],
                e.c.len,
                d.nb.angle(),
            ));
        }
    }

    Ok(SuspensionMesh {
        params: *params,
        velocities: *vel,
        t,
        center: MinkowskiPoint::BASE,
        vertices,
        faces,
        edges,
    })
}

/// Interior dihedral angle of the mesh at `edge`, measured from the two
/// incident faces in the tangent space at one endpoint.
pub fn dihedral_from_normals(mesh: &SuspensionMesh, edge: &EdgeRecord) -> Result<f64> {
    let [i, j] = edge.vertices;
    // The face traversing i → j and the one traversing j → i.
    let directed = |from: usize, to: usize| {
        mesh.faces.iter().find_map(|f| {
            (0..3)
                .find(|&k| f[k] == from && f[(k + 1) % 3] == to)
                .map(|k| (f, f[(k + 2) % 3]))
        })
    };
    let (f1, r) = directed(i, j).ok_or(Error::Degenerate("edge without forward face"))?;
    let (_, s) = directed(j, i).ok_or(Error::Degenerate("edge without backward face"))?;
    let v = &mesh.vertices;
    interior_face_angle(&v[i], &v[j], &v[r], &v[s], &mesh.outward_normal(f1))
}

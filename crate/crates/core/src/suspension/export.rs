//! Mesh serialization.
//!
//! JSON carries the full [`SuspensionMesh`] with hyperboloid coordinates
//! (floats printed in shortest round-trip form, so re-importing and
//! re-exporting is byte-identical). The OBJ variant carries Klein-ball
//! coordinates and 1-based faces for standard mesh viewers.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SuspensionMesh;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Json,
    Obj,
}

impl FromStr for MeshFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(MeshFormat::Json),
            "obj" => Ok(MeshFormat::Obj),
            other => Err(format!(
                "unknown mesh format `{other}` (expected `json` or `obj`)"
            )),
        }
    }
}

/// JSON document: `{"schema": "hypflex-mesh/1", "mesh": {...}}`.
#[derive(Serialize, Deserialize)]
struct Document<M> {
    schema: String,
    mesh: M,
}

pub const JSON_SCHEMA: &str = "hypflex-mesh/1";

pub fn to_obj(mesh: &SuspensionMesh) -> String {
    let mut out = String::new();
    let p = &mesh.params;
    let _ = writeln!(out, "# hyperbolic suspension, Klein-ball coordinates");
    let _ = writeln!(
        out,
        "# n={} h={:.16e} p={:.16e} q={:.16e} t={:.16e}",
        p.n, p.h, p.p, p.q, mesh.t
    );
    for (i, v) in mesh.vertices.iter().enumerate() {
        let k = v.klein();
        let _ = writeln!(
            out,
            "v {:.16e} {:.16e} {:.16e} # {}",
            k[0],
            k[1],
            k[2],
            mesh.label(i)
        );
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    out
}

pub fn to_json(mesh: &SuspensionMesh) -> Result<String> {
    let doc = Document {
        schema: JSON_SCHEMA.to_string(),
        mesh,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn import_mesh_json(text: &str) -> Result<SuspensionMesh> {
    let doc: Document<SuspensionMesh> = serde_json::from_str(text)?;
    if doc.schema != JSON_SCHEMA {
        return Err(crate::error::Error::InvalidParams(format!(
            "unsupported mesh schema `{}`",
            doc.schema
        )));
    }
    Ok(doc.mesh)
}

/// Writes the mesh in `format` to `out`.
pub fn export_mesh(mesh: &SuspensionMesh, format: MeshFormat, out: &mut impl Write) -> Result<()> {
    let text = match format {
        MeshFormat::Json => to_json(mesh)?,
        MeshFormat::Obj => to_obj(mesh),
    };
    out.write_all(text.as_bytes())?;
    if format == MeshFormat::Json {
        out.write_all(b"\n")?;
    }
    Ok(())
}

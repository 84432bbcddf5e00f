//! Sampled surfaces with per-vertex curvature, and their OBJ / CSV encodings.

use std::io::{self, Write};

use crate::curvature::{Grid, Orientation, SurfacePatch};
use crate::error::{Error, Result};
use crate::minkowski::MVec3;
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq)]
pub struct MeshVertex {
    pub u: f64,
    pub v: f64,
    pub position: MVec3,
    pub h: f64,
    pub k: f64,
    pub w_sign: Sign,
}

/// Structured grid mesh: vertices row-major in (u, v), quads as 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub grid: Grid,
    pub vertices: Vec<MeshVertex>,
    pub quads: Vec<[usize; 4]>,
}

/// Shortest representation that round-trips, so equal inputs give equal bytes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn build_mesh<P: SurfacePatch + ?Sized>(patch: &P, grid: Grid, orientation: Orientation) -> Result<SurfaceMesh> {
    if grid.nu < 2 || grid.nv < 2 {
        return Err(Error::InvalidDomain("a mesh needs at least 2x2 vertices".into()));
    }
    let dom = patch.domain();
    if !(dom.u.0 < dom.u.1 && dom.v.0 < dom.v.1) {
        return Err(Error::InvalidDomain("empty parameter domain".into()));
    }
    let vertices = dom
        .sample(grid)
        .into_iter()
        .map(|(u, v)| {
            let jet = patch.jet(u, v)?;
            let cd = patch.curvature_at(u, v, orientation)?;
            Ok(MeshVertex { u, v, position: jet.x, h: cd.h, k: cd.k, w_sign: cd.epsilon })
        })
        .collect::<Result<Vec<_>>>()?;
    let idx = |i: usize, j: usize| i * grid.nv + j;
    let mut quads = Vec::with_capacity((grid.nu - 1) * (grid.nv - 1));
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            quads.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    Ok(SurfaceMesh { grid, vertices, quads })
}

impl SurfaceMesh {
    pub fn positions(&self) -> Vec<MVec3> {
        self.vertices.iter().map(|v| v.position).collect()
    }

    /// `v x y z` records followed by 1-based quad `f` records.
    pub fn write_obj<W: Write>(&self, mut w: W) -> io::Result<()> {
        for v in &self.vertices {
            let p = v.position;
            writeln!(w, "v {} {} {}", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z))?;
        }
        for q in &self.quads {
            writeln!(w, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "u,v,x,y,z,H,K")?;
        for v in &self.vertices {
            let p = v.position;
            let row = [v.u, v.v, p.x, p.y, p.z, v.h, v.k].map(fmt_f64);
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

//! ASCII mesh export.
//!
//! Vertices are the valid nodes in row-major node order; each fully valid
//! quad is split into two triangles, and a quad touching any masked corner is
//! dropped. OBJ face indices are 1-based, PLY indices 0-based, LF line
//! endings in both.

use super::SurfaceError;
use super::SurfacePatch;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

/// Vertex and face counts of an exported mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshStats {
    pub vertices: usize,
    pub triangles: usize,
}

/// Write the patch as a triangle mesh. Needs a grid of at least 2 x 2 nodes
/// and at least one valid vertex.
pub fn export_mesh(
    patch: &SurfacePatch,
    format: MeshFormat,
    out: &mut dyn Write,
) -> Result<MeshStats, SurfaceError> {
    let grid = *patch.grid();
    if grid.nx() < 2 || grid.ny() < 2 || patch.n_valid() == 0 {
        return Err(SurfaceError::EmptyMesh);
    }

    // compact vertex numbering over valid nodes, row-major
    let mut vertex_no = vec![usize::MAX; grid.len()];
    let mut vertices = Vec::with_capacity(patch.n_valid());
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            if let Some(p) = patch.point(i, j) {
                vertex_no[grid.idx(i, j)] = vertices.len();
                vertices.push(p);
            }
        }
    }

    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for j in 0..grid.ny() - 1 {
        for i in 0..grid.nx() - 1 {
            let v00 = vertex_no[grid.idx(i, j)];
            let v10 = vertex_no[grid.idx(i + 1, j)];
            let v11 = vertex_no[grid.idx(i + 1, j + 1)];
            let v01 = vertex_no[grid.idx(i, j + 1)];
            if [v00, v10, v11, v01].iter().all(|&v| v != usize::MAX) {
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
    }

    match format {
        MeshFormat::Obj => {
            for p in &vertices {
                writeln!(out, "v {} {} {}", p[0], p[1], p[2])?;
            }
            for t in &triangles {
                writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
            }
        }
        MeshFormat::Ply => {
            writeln!(out, "ply")?;
            writeln!(out, "format ascii 1.0")?;
            writeln!(out, "element vertex {}", vertices.len())?;
            writeln!(out, "property float x")?;
            writeln!(out, "property float y")?;
            writeln!(out, "property float z")?;
            writeln!(out, "element face {}", triangles.len())?;
            writeln!(out, "property list uchar int vertex_indices")?;
            writeln!(out, "end_header")?;
            for p in &vertices {
                writeln!(out, "{} {} {}", p[0], p[1], p[2])?;
            }
            for t in &triangles {
                writeln!(out, "3 {} {} {}", t[0], t[1], t[2])?;
            }
        }
    }
    Ok(MeshStats {
        vertices: vertices.len(),
        triangles: triangles.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::integrate::integrate_patch;
    use super::*;
    use crate::expr::HoloFn;
    use crate::numerics::GridSpec;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_patch() {
        let grid = GridSpec::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let patch = integrate_patch(&HoloFn::parse("z").unwrap(), &grid, c(0.0, 0.0)).unwrap();
        let mut buf = Vec::new();
        let stats = export_mesh(&patch, MeshFormat::Obj, &mut buf).unwrap();
        assert_eq!(
            stats,
            MeshStats {
                vertices: 4,
                triangles: 2
            }
        );
        let text = String::from_utf8(buf).unwrap();
        let v_lines = text.lines().filter(|l| l.starts_with("v ")).count();
        let f_lines = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!((v_lines, f_lines), (4, 2));
        assert!(text.lines().next().unwrap().starts_with("v 0 0"));
    }

    #[test]
    fn masked_centre_drops_every_quad() {
        // 3x3 with exactly the centre masked: 8 vertices and no faces, since
        // every quad touches the centre
        let grid = GridSpec::square(-1.0, 1.0, 3).unwrap();
        let points = vec![[0.0, 0.0, 0.0]; 9];
        let mut mask = vec![true; 9];
        mask[grid.idx(1, 1)] = false;
        let patch = SurfacePatch::from_parts(grid, points, mask);
        let mut buf = Vec::new();
        let stats = export_mesh(&patch, MeshFormat::Ply, &mut buf).unwrap();
        assert_eq!(
            stats,
            MeshStats {
                vertices: 8,
                triangles: 0
            }
        );
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("ply\nformat ascii 1.0\n"));
        assert!(text.contains("element face 0\n"));
        assert!(text.contains("element vertex 8\n"));
    }

    #[test]
    fn full_grid_face_count() {
        let grid = GridSpec::square(-1.0, 1.0, 21).unwrap();
        let patch = integrate_patch(&HoloFn::parse("z").unwrap(), &grid, c(0.0, 0.0)).unwrap();
        let mut buf = Vec::new();
        let stats = export_mesh(&patch, MeshFormat::Obj, &mut buf).unwrap();
        assert_eq!(stats.vertices, 21 * 21);
        assert_eq!(stats.triangles, 20 * 20 * 2);
    }

    #[test]
    fn obj_indices_are_one_based() {
        let grid = GridSpec::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let patch = integrate_patch(&HoloFn::parse("z").unwrap(), &grid, c(0.0, 0.0)).unwrap();
        let mut buf = Vec::new();
        export_mesh(&patch, MeshFormat::Obj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("f 1 2 4"), "got:\n{text}");
    }

    #[test]
    fn degenerate_grid_is_empty_mesh() {
        let grid = GridSpec::new(0.0, 0.0, 0.0, 1.0, 1, 11).unwrap();
        let patch = integrate_patch(&HoloFn::parse("z").unwrap(), &grid, c(0.0, 0.0)).unwrap();
        let mut buf = Vec::new();
        assert!(matches!(
            export_mesh(&patch, MeshFormat::Obj, &mut buf),
            Err(SurfaceError::EmptyMesh)
        ));
    }
}

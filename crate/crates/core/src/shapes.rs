//! Small closed meshes with outward counter-clockwise winding.

use std::collections::HashMap;

use crate::mesh::TriMesh;

const BOX_FACES: [[usize; 3]; 12] = [
    [0, 2, 3],
    [0, 3, 1],
    [4, 5, 7],
    [4, 7, 6],
    [0, 1, 5],
    [0, 5, 4],
    [2, 6, 7],
    [2, 7, 3],
    [0, 4, 6],
    [0, 6, 2],
    [1, 3, 7],
    [1, 7, 5],
];

/// The cube `[0, 1]³`. Faces come in pairs: bottom, top, y = 0, y = 1,
/// x = 0, x = 1.
pub fn unit_cube() -> TriMesh {
    axis_box([0.0; 3], [1.0; 3])
}

/// Axis-aligned box spanning `lo..hi`; vertex `i` sits at the corner
/// selected by bits x = 1, y = 2, z = 4.
pub fn axis_box(lo: [f64; 3], hi: [f64; 3]) -> TriMesh {
    let positions = (0..8)
        .map(|i| {
            [
                if i & 1 == 0 { lo[0] } else { hi[0] },
                if i & 2 == 0 { lo[1] } else { hi[1] },
                if i & 4 == 0 { lo[2] } else { hi[2] },
            ]
        })
        .collect();
    TriMesh::new(positions, BOX_FACES.to_vec()).expect("static topology")
}

/// Subdivided icosahedron with vertices on the sphere of `radius` about the origin.
pub fn icosphere(levels: u32, radius: f64) -> TriMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pos: Vec<[f64; 3]> = vec![
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ];
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let unit = |p: [f64; 3]| {
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        p.map(|c| c / n)
    };
    for p in pos.iter_mut() {
        *p = unit(*p);
    }
    for _ in 0..levels {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: usize, b: usize, pos: &mut Vec<[f64; 3]>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (pos[a], pos[b]);
                pos.push(unit([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                pos.len() - 1
            })
        };
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut pos);
            let bc = midpoint(b, c, &mut pos);
            let ca = midpoint(c, a, &mut pos);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let positions = pos.into_iter().map(|p| p.map(|c| c * radius)).collect();
    TriMesh::new(positions, faces).expect("generated topology")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caps {
    None,
    Bottom,
    Both,
}

/// Prism over a regular `n`-gon of circumradius `radius`, from z = 0 to
/// z = `height`, with optional fan caps.
pub fn cylinder(n: usize, radius: f64, height: f64, caps: Caps) -> TriMesh {
    let mut positions = Vec::with_capacity(2 * n + 2);
    for z in [0.0, height] {
        for i in 0..n {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            positions.push([radius * a.cos(), radius * a.sin(), z]);
        }
    }
    let mut faces = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push([i, j, n + j]);
        faces.push([i, n + j, n + i]);
    }
    if caps != Caps::None {
        positions.push([0.0, 0.0, 0.0]);
        let c = positions.len() - 1;
        faces.extend((0..n).map(|i| [c, (i + 1) % n, i]));
    }
    if caps == Caps::Both {
        positions.push([0.0, 0.0, height]);
        let c = positions.len() - 1;
        faces.extend((0..n).map(|i| [c, n + i, n + (i + 1) % n]));
    }
    TriMesh::new(positions, faces).expect("generated topology")
}

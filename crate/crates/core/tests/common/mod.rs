//! Oracles and generators shared by the integration tests. Nothing here
//! goes through the algebra kernel except where a test needs a motor.
#![allow(dead_code)]

use pgamesh::mesh::TriMesh;
use pgamesh::pga::{plane, Blade, Multivector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type V3 = [f64; 3];

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(a: V3, s: f64) -> V3 {
    a.map(|x| x * s)
}

pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: V3, b: V3) -> f64 {
    norm(sub(a, b))
}

pub fn rand_v3(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> V3 {
    [r.gen_range(lo..hi), r.gen_range(lo..hi), r.gen_range(lo..hi)]
}

pub fn rand_unit(r: &mut ChaCha8Rng) -> V3 {
    loop {
        let v = rand_v3(r, -1.0, 1.0);
        let n = norm(v);
        if n > 0.1 && n <= 1.0 {
            return scale(v, 1.0 / n);
        }
    }
}

pub fn rand_multivector(r: &mut ChaCha8Rng) -> Multivector {
    let mut c = [0.0; 16];
    for x in c.iter_mut() {
        *x = r.gen_range(-1.0..1.0);
    }
    Multivector(c)
}

/// Product of `n` random planes, normalized. Even `n` gives a motor.
pub fn rand_versor(r: &mut ChaCha8Rng, n: usize) -> Multivector {
    let mut m = Multivector::scalar(1.0);
    for _ in 0..n {
        let u = rand_unit(r);
        m = m * plane(u[0], u[1], u[2], r.gen_range(-2.0..2.0));
    }
    m / (m * m.reverse()).scalar_part().sqrt()
}

pub fn rand_motor(r: &mut ChaCha8Rng) -> Multivector {
    let n = if r.gen_bool(0.5) { 2 } else { 4 };
    rand_versor(r, n)
}

/// A direction as an ideal point, moved by a motor.
pub fn move_direction(motor: &Multivector, d: V3) -> V3 {
    let mut x = Multivector::ZERO;
    x[Blade::E032] = d[0];
    x[Blade::E013] = d[1];
    x[Blade::E021] = d[2];
    let y = motor.sandwich(&x).unwrap();
    [y[Blade::E032], y[Blade::E013], y[Blade::E021]]
}

pub fn move_point(motor: &Multivector, p: V3) -> V3 {
    motor.sandwich(&pgamesh::pga::point_at(p)).unwrap().point_coordinates().unwrap()
}

/// Rotation matrix of a rotor `w + b23 e23 + b31 e31 + b12 e12` through the
/// quaternion `(w, -b23, -b31, -b12)`.
pub fn rotor_to_matrix(r: &Multivector) -> [[f64; 3]; 3] {
    let (w, x, y, z) = (r[Blade::Scalar], -r[Blade::E23], -r[Blade::E31], -r[Blade::E12]);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// Convex hull of points in general position by testing every triple.
pub fn brute_force_hull(pts: &[V3]) -> TriMesh {
    let n = pts.len();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                let side: Vec<f64> =
                    (0..n).filter(|&m| m != i && m != j && m != k).map(|m| dot(nrm, sub(pts[m], pts[i]))).collect();
                if side.iter().all(|&s| s < 0.0) {
                    faces.push([i, j, k]);
                } else if side.iter().all(|&s| s > 0.0) {
                    faces.push([i, k, j]);
                }
            }
        }
    }
    TriMesh::new(pts.to_vec(), faces).unwrap()
}

pub fn random_convex_polyhedron(r: &mut ChaCha8Rng, n: usize) -> TriMesh {
    let center = rand_v3(r, -3.0, 3.0);
    let radii = rand_v3(r, 0.5, 2.0);
    let pts: Vec<V3> = (0..n)
        .map(|_| {
            let u = rand_unit(r);
            [center[0] + radii[0] * u[0], center[1] + radii[1] * u[1], center[2] + radii[2] * u[2]]
        })
        .collect();
    brute_force_hull(&pts)
}

/// Volume of a convex mesh by splitting it into tetrahedra from the vertex
/// average, with plain determinants.
pub fn tetrahedralized_volume(m: &TriMesh) -> f64 {
    let p = m.positions();
    let c = scale(p.iter().fold([0.0; 3], |a, &b| add(a, b)), 1.0 / p.len() as f64);
    m.faces()
        .iter()
        .map(|f| dot(sub(p[f[0]], c), cross(sub(p[f[1]], c), sub(p[f[2]], c))) / 6.0)
        .sum()
}

pub fn box_volume_and_centroid(lo: V3, hi: V3) -> (f64, V3) {
    let d = sub(hi, lo);
    (d[0] * d[1] * d[2], scale(add(lo, hi), 0.5))
}

/// Monte-Carlo estimate of `∫ f dV` over a convex mesh, with its standard error.
pub fn monte_carlo<const N: usize>(m: &TriMesh, samples: usize, seed: u64, f: impl Fn(V3) -> [f64; N]) -> ([f64; N], [f64; N]) {
    let p = m.positions();
    let planes: Vec<(V3, V3)> =
        m.faces().iter().map(|f| (p[f[0]], cross(sub(p[f[1]], p[f[0]]), sub(p[f[2]], p[f[0]])))).collect();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for q in p {
        for k in 0..3 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    }
    let vbox = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    let mut r = rng(seed);
    let mut s1 = [0.0; N];
    let mut s2 = [0.0; N];
    for _ in 0..samples {
        let x = [r.gen_range(lo[0]..hi[0]), r.gen_range(lo[1]..hi[1]), r.gen_range(lo[2]..hi[2])];
        if planes.iter().all(|(a, n)| dot(*n, sub(x, *a)) <= 0.0) {
            let v = f(x);
            for k in 0..N {
                s1[k] += v[k];
                s2[k] += v[k] * v[k];
            }
        }
    }
    let n = samples as f64;
    let mut mean = [0.0; N];
    let mut err = [0.0; N];
    for k in 0..N {
        let m1 = s1[k] / n;
        let var = s2[k] / n - m1 * m1;
        mean[k] = vbox * m1;
        err[k] = vbox * (var / n).sqrt();
    }
    (mean, err)
}

/// The unit-density inertia integrands `[y²+z², x²+z², x²+y², -xy, -xz, -yz]`.
pub fn inertia_integrands(x: V3) -> [f64; 6] {
    [
        x[1] * x[1] + x[2] * x[2],
        x[0] * x[0] + x[2] * x[2],
        x[0] * x[0] + x[1] * x[1],
        -x[0] * x[1],
        -x[0] * x[2],
        -x[1] * x[2],
    ]
}

/// Eigenvalues of a symmetric matrix, descending, from nalgebra.
pub fn reference_eigenvalues(m: [[f64; 3]; 3]) -> [f64; 3] {
    let a = nalgebra::Matrix3::from_fn(|r, c| m[r][c]);
    let mut e: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| b.total_cmp(a));
    [e[0], e[1], e[2]]
}

pub fn rand_symmetric(r: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = r.gen_range(-1.0..1.0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

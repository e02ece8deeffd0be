mod common;

use common::*;
use pgamesh::pga::{point, point_at, Multivector};
use pgamesh::simplex::{vertex_count, Chain, Simplex};
use proptest::prelude::*;

fn position() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-5.0f64..5.0)
}

fn vertices(k: usize) -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(position(), k + 1)
}

fn any_simplex() -> impl Strategy<Value = Vec<[f64; 3]>> {
    (1usize..=3).prop_flat_map(vertices)
}

fn classical(p: &[[f64; 3]]) -> f64 {
    match p.len() {
        2 => dist(p[1], p[0]),
        3 => 0.5 * norm(cross(sub(p[1], p[0]), sub(p[2], p[0]))),
        _ => dot(sub(p[1], p[0]), cross(sub(p[2], p[0]), sub(p[3], p[0]))).abs() / 6.0,
    }
}

#[test]
fn boundary_examples() {
    let v: Vec<Multivector> = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]].map(point_at).to_vec();
    let edge = Simplex::new(&v[..2]).unwrap().boundary();
    let coefficients: Vec<i64> = edge.terms().iter().map(|t| t.0).collect();
    assert_eq!(coefficients, [1, -1]);
    assert_eq!(edge.terms()[0].1.vertices(), &v[1..2]);

    let tri = Simplex::new(&v).unwrap();
    let b = tri.boundary();
    let faces: Vec<(i64, Vec<Multivector>)> = b.terms().iter().map(|(c, s)| (*c, s.vertices().to_vec())).collect();
    assert_eq!(
        faces,
        vec![(1, vec![v[1], v[2]]), (-1, vec![v[0], v[2]]), (1, vec![v[0], v[1]])]
    );
    assert!(b.boundary().simplified().is_empty());
    assert!((tri.magnitude_from_boundary() - 0.5).abs() < 1e-15);

    let e = Simplex::from_positions(&[[0.0, 0.0, 0.0], [3.0, 4.0, 0.0]]).unwrap();
    assert!((e.magnitude_from_boundary() - 5.0).abs() < 1e-14);
    assert!(Simplex::new(&v[..1]).unwrap().boundary().is_empty());
}

#[test]
fn degenerate_simplices_have_zero_magnitude() {
    let collinear = Simplex::from_positions(&[[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [2.0, 2.0, 2.0]]).unwrap();
    assert_eq!(collinear.magnitude(), 0.0);
    let flat = Simplex::from_positions(&[[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]).unwrap();
    assert_eq!(flat.magnitude(), 0.0);
}

#[test]
fn unnormalized_vertices_are_normalized() {
    let s = Simplex::new(&[2.0 * point(1.0, 0.0, 0.0), -3.0 * point(0.0, 0.0, 0.0)]).unwrap();
    assert_eq!(s.vertices()[0], point(1.0, 0.0, 0.0));
    assert_eq!(s.vertices()[1], point(0.0, 0.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn matches_vector_calculus(p in any_simplex()) {
        let s = Simplex::from_positions(&p).unwrap();
        let want = classical(&p);
        prop_assert!((s.magnitude() - want).abs() <= 1e-12 * want.max(1e-3));
    }

    #[test]
    fn magnitude_from_boundary_agrees(p in any_simplex()) {
        let s = Simplex::from_positions(&p).unwrap();
        prop_assert!((s.magnitude_from_boundary() - s.magnitude()).abs() <= 1e-10 * s.magnitude().max(1e-3));
    }

    #[test]
    fn boundary_of_boundary_vanishes(p in any_simplex()) {
        let s = Simplex::from_positions(&p).unwrap();
        prop_assert!(s.boundary().boundary().simplified().is_empty());
    }

    #[test]
    fn gauge_invariance(p in vertices(3), t in -3.0f64..3.0, u in -3.0f64..3.0, k in 1usize..=2) {
        // Sliding the apex parallel to the sub-carrier keeps its height.
        let base = &p[..=k];
        let mut slide = scale(sub(base[1], base[0]), t);
        if k == 2 {
            slide = add(slide, scale(sub(base[2], base[0]), u));
        }
        let mut moved = base.to_vec();
        moved.push(add(p[3], slide));
        let mut orig = base.to_vec();
        orig.push(p[3]);
        let (a, b) = (Simplex::from_positions(&orig).unwrap(), Simplex::from_positions(&moved).unwrap());
        prop_assert!((b.magnitude() - a.magnitude()).abs() <= 1e-10 * a.magnitude().max(1.0));
    }

    #[test]
    fn apex_height_law(p in vertices(3), k in 1usize..=3) {
        let base = Simplex::from_positions(&p[..k]).unwrap();
        let full = base.extended(point_at(p[k])).unwrap();
        let h = match k {
            1 => dist(p[1], p[0]),
            2 => {
                let d = sub(p[1], p[0]);
                norm(cross(d, sub(p[2], p[0]))) / norm(d)
            }
            _ => {
                let n = cross(sub(p[1], p[0]), sub(p[2], p[0]));
                dot(n, sub(p[3], p[0])).abs() / norm(n)
            }
        };
        let sk1 = base.carrier().norm();
        let sk = full.carrier().norm();
        prop_assert!((sk - sk1 * h).abs() <= 1e-10 * sk.max(1.0));
    }

    #[test]
    fn motor_invariance(p in any_simplex(), seed in any::<u64>()) {
        let m = rand_motor(&mut rng(seed));
        let s = Simplex::from_positions(&p).unwrap();
        let moved = s.transformed(&m).unwrap();
        prop_assert!((moved.magnitude() - s.magnitude()).abs() <= 1e-10 * s.magnitude().max(1.0));
    }

    #[test]
    fn transposition_antisymmetry(p in any_simplex(), i in 0usize..4, j in 0usize..4) {
        let s = Simplex::from_positions(&p).unwrap();
        let (i, j) = (i % p.len(), j % p.len());
        prop_assume!(i != j);
        let t = s.swapped(i, j);
        let tol = 1e-12 * s.carrier().max_abs().max(1.0);
        prop_assert!(t.carrier().distance_max(&-s.carrier()) <= tol);
        prop_assert!((t.magnitude() - s.magnitude()).abs() <= tol);
    }

    #[test]
    fn vertex_count_of_unit_points(p in prop::collection::vec(position(), 1..20)) {
        let pts: Vec<Multivector> = p.iter().map(|&x| point_at(x)).collect();
        prop_assert_eq!(vertex_count(&pts), p.len() as f64);
    }

    #[test]
    fn chain_carriers_are_linear(p in vertices(3)) {
        let s = Simplex::from_positions(&p).unwrap();
        let mut c = Chain::new();
        c.push(2, s.clone());
        c.push(-1, s.clone());
        prop_assert!(c.carrier_sum().distance_max(&s.carrier()) <= 1e-12 * s.carrier().max_abs().max(1.0));
        let twice: Chain = vec![(1, s.clone()), (1, s.swapped(0, 1))].into_iter().collect();
        prop_assert!(twice.simplified().is_empty());
    }
}

//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::{Command, ExitCode};

use common::*;
use pgamesh::inertia::{align_to_eigenframe, jacobi_diagonalize, mesh_inertia, mesh_inertia_about_com, similarity, InertiaFrame, JacobiOptions};
use pgamesh::mesh::{center_of_mass, gap_magnitude, mesh_area, mesh_volume, sum_face_carriers, MeasureOptions};
use pgamesh::pga::{Blade, Multivector};
use pgamesh::shapes::{axis_box, icosphere, unit_cube};
use pgamesh::simplex::Simplex;
use pgamesh::slicer::{clip_below, fill_curve, sliced_com, sliced_volume, sliced_volume_old_form, ClipOptions, SlicePlane};
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn max_err(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn algebra_kernel() -> Outcome {
    let signature = [1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0, -1.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0];
    let squares_ok = Blade::ALL.iter().all(|&b| {
        let e = Multivector::basis(b);
        let want = signature[b.index()];
        e * e == Multivector::scalar(want)
    });
    let i = Multivector::basis(Blade::E0123);
    let dual_ok = Blade::ALL.iter().all(|&b| Multivector::basis(b) * Multivector::basis(b).dual() == i);
    let mut r = rng(1);
    let (mut assoc, mut duality) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (a, b, c) = (rand_multivector(&mut r), rand_multivector(&mut r), rand_multivector(&mut r));
        let lhs = (a * b) * c;
        assoc = assoc.max(lhs.distance_max(&(a * (b * c))) / lhs.max_abs().max(1.0));
        duality = duality.max(a.join(&b).dual().distance_max(&a.dual().wedge(&b.dual())));
    }
    check(
        squares_ok && dual_ok && assoc <= 1e-12 && duality <= 1e-12,
        format!("squares {squares_ok}, dual {dual_ok}, associativity {assoc:.1e}, join/meet {duality:.1e}"),
    )
}

fn random_simplex(r: &mut rand_chacha::ChaCha8Rng, k: usize) -> Vec<V3> {
    (0..=k).map(|_| rand_v3(r, -5.0, 5.0)).collect()
}

fn classical_magnitude(p: &[V3]) -> f64 {
    match p.len() {
        2 => dist(p[1], p[0]),
        3 => 0.5 * norm(cross(sub(p[1], p[0]), sub(p[2], p[0]))),
        4 => dot(sub(p[1], p[0]), cross(sub(p[2], p[0]), sub(p[3], p[0]))).abs() / 6.0,
        _ => unreachable!(),
    }
}

fn table_oracle() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let p = random_simplex(&mut r, 1 + i % 3);
        let s = Simplex::from_positions(&p).unwrap();
        worst = worst.max(rel_err(s.magnitude(), classical_magnitude(&p)));
    }
    check(worst <= 1e-12, format!("worst relative error {worst:.1e} over 1000 simplices"))
}

fn boundary_magnitudes() -> Outcome {
    let mut r = rng(3);
    let mut simplex = 0.0f64;
    for i in 0..1000 {
        let s = Simplex::from_positions(&random_simplex(&mut r, 1 + i % 3)).unwrap();
        simplex = simplex.max(rel_err(s.magnitude_from_boundary(), s.magnitude()));
    }
    let mut poly = 0.0f64;
    for _ in 0..50 {
        let n = r.gen_range(8..20);
        let m = random_convex_polyhedron(&mut r, n);
        let v = sum_face_carriers(&m).f_sum.ideal_norm() / 6.0;
        poly = poly.max(rel_err(v, tetrahedralized_volume(&m)));
    }
    check(simplex <= 1e-10 && poly <= 1e-10, format!("simplices {simplex:.1e}, 50 convex polyhedra {poly:.1e}"))
}

fn closed_mesh_cancellation() -> Outcome {
    let cube = unit_cube();
    let closed = sum_face_carriers(&cube).f_sum.norm();
    let gap = max_err((0..12).map(|i| {
        let area = 0.5 * cube.carriers()[i].norm();
        (gap_magnitude(&cube.without_faces(&[i])) - area).abs()
    }));
    check(closed < 1e-12 && gap <= 1e-12, format!("‖ΣF‖ = {closed:.1e}, gap vs removed face {gap:.1e}"))
}

fn fuel_tank() -> Outcome {
    let cube = unit_cube();
    let p = SlicePlane::new(0.0, 0.0, 1.0, -0.5).unwrap();
    let res = clip_below(&cube, &p);
    let v = sliced_volume(&res, &p);
    let c = sliced_com(&res).centroid.unwrap_or([f64::NAN; 3]);
    let half = (v - 0.5).abs().max(dist(c, [0.5, 0.5, 0.25]));
    let half_ok = half <= 1e-12;

    let mut r = rng(5);
    let meshes = [icosphere(2, 1.0).translated([0.3, -0.2, 0.1]), random_convex_polyhedron(&mut r, 16), cube.clone()];
    let (mut forms, mut oprime) = (0.0f64, 0.0f64);
    for i in 0..200 {
        let m = &meshes[i % 3];
        let com = center_of_mass(m).centroid.unwrap();
        let n = rand_unit(&mut r);
        let h = dot(n, com) + r.gen_range(-0.6..0.6);
        let p = SlicePlane::new(n[0], n[1], n[2], -h).unwrap();
        let res = clip_below(m, &p);
        let v = sliced_volume(&res, &p);
        forms = forms.max((v - sliced_volume_old_form(&res, &p)).abs());
        for axis in 0..3 {
            if let Ok(q) = p.axis_point(axis).and_then(|x| p.with_o_prime(x)) {
                if q.o_prime().point_coordinates().is_some_and(|c| norm(c) < 1e3) {
                    oprime = oprime.max((sliced_volume(&clip_below(m, &q), &q) - v).abs());
                }
            }
        }
    }
    let opts = ClipOptions { complement: true, ..Default::default() };
    let mut fill_ok = true;
    let mut fill_end = 0.0f64;
    for m in &meshes {
        let curve = fill_curve(m, rand_unit(&mut r), 41, &opts).unwrap();
        fill_ok &= curve.windows(2).all(|w| w[1].volume >= w[0].volume);
        fill_end = fill_end.max((curve.last().unwrap().volume - mesh_volume(m).signed).abs());
    }
    check(
        half_ok && forms <= 1e-10 && oprime <= 1e-10 && fill_ok && fill_end <= 1e-10,
        format!(
            "half cube {half:.1e}, two-term vs o′ form {forms:.1e}, o′ choice {oprime:.1e}, fill monotone {fill_ok}, fill end {fill_end:.1e}"
        ),
    )
}

fn center_of_mass_check() -> Outcome {
    let mut r = rng(6);
    let mut meshes = vec![unit_cube(), icosphere(3, 2.0).translated([1.0, 2.0, 3.0])];
    for _ in 0..10 {
        meshes.push(random_convex_polyhedron(&mut r, 14));
    }
    let weight = max_err(meshes.iter().map(|m| (center_of_mass(m).volume - mesh_volume(m).signed).abs()));
    let (a, b) = (([0.0, 0.0, 0.0], [2.0, 1.0, 1.0]), ([0.0, 1.0, 0.0], [1.0, 3.0, 1.0]));
    let l = axis_box(a.0, a.1).merged(&axis_box(b.0, b.1));
    let (va, ca) = box_volume_and_centroid(a.0, a.1);
    let (vb, cb) = box_volume_and_centroid(b.0, b.1);
    let want = scale(add(scale(ca, va), scale(cb, vb)), 1.0 / (va + vb));
    let lerr = dist(center_of_mass(&l).centroid.unwrap(), want);
    check(weight <= 1e-12 && lerr <= 1e-10, format!("weight vs volume {weight:.1e}, L-shape {lerr:.1e}"))
}

fn inertia_check() -> Outcome {
    let cube = unit_cube().translated([-0.5, -0.5, -0.5]);
    let m = mesh_inertia(&cube).per_unit_mass.unwrap().to_matrix();
    let cube_err = max_err((0..9).map(|k| (m[k / 3][k % 3] - if k % 4 == 0 { 1.0 / 6.0 } else { 0.0 }).abs()));

    let radius = 1.5;
    let ball = mesh_inertia(&icosphere(4, radius)).per_unit_mass.unwrap();
    let want = 0.4 * radius * radius;
    let ball_err = max_err((0..3).map(|k| rel_err(ball.entry(k, k), want)));

    let mut r = rng(7);
    let fixtures = [
        random_convex_polyhedron(&mut r, 18),
        axis_box([0.5, -1.0, 0.2], [2.0, 0.5, 1.0]),
        icosphere(1, 1.0).translated([0.4, 0.9, -0.3]),
    ];
    let mut worst_sigma = 0.0f64;
    for (i, f) in fixtures.iter().enumerate() {
        let raw = mesh_inertia(f).raw;
        let got = [raw.entry(0, 0), raw.entry(1, 1), raw.entry(2, 2), raw.entry(0, 1), raw.entry(0, 2), raw.entry(1, 2)];
        let (mean, err) = monte_carlo(f, 400_000, 70 + i as u64, inertia_integrands);
        for k in 0..6 {
            worst_sigma = worst_sigma.max((got[k] - mean[k]).abs() / err[k]);
        }
    }
    check(
        cube_err <= 1e-10 && ball_err <= 0.01 && worst_sigma <= 3.0,
        format!("cube {cube_err:.1e}, icosphere {:.3}% off, Monte-Carlo worst {worst_sigma:.2}σ", 100.0 * ball_err),
    )
}

fn jacobi_check() -> Outcome {
    let mut r = rng(8);
    let (mut off, mut eig, mut unit) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0;
    for _ in 0..1000 {
        let m = rand_symmetric(&mut r);
        let f = InertiaFrame::from_matrix(m);
        match jacobi_diagonalize(&f, &JacobiOptions::default()) {
            Ok(e) => {
                off = off.max(similarity(&e.rotor, &f).unwrap().max_off_diagonal());
                let want = reference_eigenvalues(m);
                eig = eig.max(max_err((0..3).map(|k| (e.moments[k] - want[k]).abs())));
                unit = unit.max((e.rotor * e.rotor.reverse()).distance_max(&Multivector::scalar(1.0)));
            }
            Err(_) => failures += 1,
        }
    }
    let mut align = 0.0f64;
    for _ in 0..5 {
        let m = random_convex_polyhedron(&mut r, 16);
        let frame = mesh_inertia(&m).per_unit_mass.unwrap();
        let e = jacobi_diagonalize(&frame, &JacobiOptions::default()).unwrap();
        let aligned = align_to_eigenframe(&m, &e).unwrap();
        align = align.max(mesh_inertia(&aligned).per_unit_mass.unwrap().max_off_diagonal());
    }
    check(
        failures == 0 && off < 1e-10 && eig <= 1e-10 && unit <= 1e-12 && align <= 1e-8,
        format!("off-diagonal {off:.1e}, eigenvalues {eig:.1e}, rotor unit {unit:.1e}, aligned mesh {align:.1e}, failures {failures}"),
    )
}

fn sign_free(a: V3, b: V3) -> f64 {
    dist(a, b).min(dist(a, scale(b, -1.0)))
}

fn equivariance_sweep() -> Outcome {
    let mut r = rng(9);
    let body = axis_box([1.0, 2.0, 3.0], [3.0, 3.0, 6.0]);
    let p = SlicePlane::new(0.2, -0.3, 1.0, -4.4).unwrap();
    let opts = MeasureOptions::default();
    let area = mesh_area(&body);
    let vol = mesh_volume(&body).signed;
    let res = clip_below(&body, &p);
    let sv = sliced_volume(&res, &p);
    let com = center_of_mass(&body).centroid.unwrap();
    let scom = sliced_com(&res).centroid.unwrap();
    let about = mesh_inertia_about_com(&body, &opts);
    let eig = jacobi_diagonalize(&about.per_unit_mass.unwrap(), &JacobiOptions::default()).unwrap();
    let (mut scalar, mut points, mut vectors) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let motor = rand_motor(&mut r);
        let moved = body.transformed(&motor).unwrap();
        let mp = p.transformed(&motor).unwrap();
        let mres = clip_below(&moved, &mp);
        scalar = scalar
            .max((mesh_area(&moved) - area).abs())
            .max((mesh_volume(&moved).signed - vol).abs())
            .max((sliced_volume(&mres, &mp) - sv).abs());
        points = points
            .max(dist(center_of_mass(&moved).centroid.unwrap(), move_point(&motor, com)))
            .max(dist(sliced_com(&mres).centroid.unwrap(), move_point(&motor, scom)));
        let e2 =
            jacobi_diagonalize(&mesh_inertia_about_com(&moved, &opts).per_unit_mass.unwrap(), &JacobiOptions::default())
                .unwrap();
        let (before, after) = (eig.eigenvectors(), e2.eigenvectors());
        for k in 0..3 {
            vectors = vectors.max(sign_free(after[k], move_direction(&motor, before[k])));
        }
    }
    check(
        scalar <= 1e-10 && points <= 1e-10 && vectors <= 1e-10,
        format!("area/volume/slice {scalar:.1e}, centroids {points:.1e}, eigenvectors {vectors:.1e}"),
    )
}

fn cli_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_pgamesh");
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut fixtures: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    fixtures.sort();
    let commands: [&[&str]; 5] = [
        &["measure"],
        &["slice", "--plane", "0.1,0.2,1,-0.4"],
        &["slice", "--plane", "0,0,1,0", "--fill-levels", "7"],
        &["inertia", "--about-com"],
        &["validate"],
    ];
    let (mut runs, mut mismatches) = (0, Vec::new());
    for f in &fixtures {
        for cmd in commands {
            let run = || {
                Command::new(exe)
                    .args(cmd)
                    .arg(f)
                    .args(["--json", "--deterministic", "--threads", "1"])
                    .output()
                    .unwrap()
            };
            let (a, b) = (run(), run());
            runs += 1;
            if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
                mismatches.push(format!("{} {:?}", f.file_name().unwrap().to_string_lossy(), cmd));
            }
        }
    }
    check(
        mismatches.is_empty(),
        format!("{runs} command/fixture pairs on {} fixtures; differing: {mismatches:?}", fixtures.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra kernel", algebra_kernel),
        ("vector-calculus oracle", table_oracle),
        ("magnitude from the boundary", boundary_magnitudes),
        ("closed-mesh cancellation and gap", closed_mesh_cancellation),
        ("fuel-tank slice", fuel_tank),
        ("center of mass", center_of_mass_check),
        ("inertia", inertia_check),
        ("Jacobi diagonalization", jacobi_check),
        ("equivariance sweep", equivariance_sweep),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let o = f();
        failed += usize::from(!o.ok);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {} ({:.1}s)", i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}


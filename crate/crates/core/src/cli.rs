//! The `pgamesh` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::inertia::{align_to_eigenframe, jacobi_diagonalize, mesh_inertia_about_com, mesh_inertia_with, JacobiOptions};
use crate::io::report::{
    ConfigEcho, FillQuantities, InertiaQuantities, InputInfo, MeasureQuantities, Quantities, ResultRecord, SliceQuantities,
    Timings, SCHEMA,
};
use crate::io::{load, write_obj, IoError, MeshFile};
use crate::mesh::{center_of_mass_with, mesh_area_with, mesh_volume_with, validate_with, MeasureOptions};
use crate::reduce::SumOptions;
use crate::slicer::{clip_below_with, fill_curve, slice_warnings, sliced_com, sliced_volume, ClipOptions, SlicePlane};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pgamesh", version, about = "Measure triangle meshes from their face carriers")]
pub struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Print a JSON result record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance for on-plane and closedness tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
    /// Serial summation and no timings, for byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Merge STL vertices closer than this distance (0 merges exact copies only).
    #[arg(long, global = true, default_value_t = 0.0)]
    weld: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Area, volume, centroid and closedness defect.
    Measure { mesh: PathBuf },
    /// Volume and centroid below a plane, or a fill curve.
    Slice(SliceArgs),
    /// Inertia frame, principal moments and aligning rotor.
    Inertia {
        mesh: PathBuf,
        /// Take moments about the center of mass instead of the origin.
        #[arg(long)]
        about_com: bool,
        /// Write the mesh rotated into its principal frame as OBJ.
        #[arg(long, value_name = "PATH")]
        align_out: Option<PathBuf>,
    },
    /// Closedness and edge-orientation report.
    Validate { mesh: PathBuf },
}

#[derive(Debug, Args)]
struct SliceArgs {
    mesh: PathBuf,
    /// Plane `a,b,c,d` for ax + by + cz + d = 0; below is where it is negative.
    #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true, conflicts_with_all = ["point", "normal"])]
    plane: Option<[f64; 4]>,
    /// A point on the plane, `x,y,z` (use with --normal).
    #[arg(long, value_parser = parse_list::<3>, allow_hyphen_values = true, requires = "normal")]
    point: Option<[f64; 3]>,
    /// Plane normal `a,b,c`, pointing to the side that is not filled.
    #[arg(long, value_parser = parse_list::<3>, allow_hyphen_values = true, requires = "point")]
    normal: Option<[f64; 3]>,
    /// Fill curve with this many levels along the plane normal.
    #[arg(long, value_name = "N")]
    fill_levels: Option<usize>,
    /// Always sum the part below, even when most of the mesh is below.
    #[arg(long)]
    no_complement: bool,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> =
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect::<Result<_, _>>()?;
    let n = parts.len();
    let arr: [f64; N] = parts.try_into().map_err(|_| format!("expected {N} comma-separated numbers, got {n}"))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(arr)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Numeric(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Parse(e.to_string())
    }
}

struct Output {
    record: ResultRecord,
    text: Vec<(String, String)>,
}

fn fmt3(v: [f64; 3]) -> String {
    format!("{} {} {}", v[0], v[1], v[2])
}

fn fmt_opt3(v: Option<[f64; 3]>) -> String {
    v.map_or_else(|| "undefined".to_string(), fmt3)
}

/// Parse `args` (including the program name) and run, writing to `out` and
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let result = match cli.global.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(o) => {
            if cli.global.json {
                match o.record.to_json() {
                    Some(s) => {
                        let _ = writeln!(out, "{s}");
                    }
                    None => {
                        let _ = writeln!(err, "error: result contains non-finite numbers");
                        return EXIT_NUMERIC;
                    }
                }
            } else {
                for (k, v) in &o.text {
                    let _ = writeln!(out, "{k:<20} {v}");
                }
            }
            for d in &o.record.diagnostics {
                let _ = writeln!(err, "note: {d}");
            }
            for w in &o.record.warnings {
                let _ = writeln!(err, "warning: {}", serde_json::to_string(w).unwrap_or_default());
            }
            EXIT_OK
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Parse(m) => (EXIT_PARSE, m),
                Failure::Numeric(m) => (EXIT_NUMERIC, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn measure_options(g: &Global) -> MeasureOptions {
    let sum = if g.deterministic { SumOptions::serial() } else { SumOptions::default() };
    MeasureOptions { sum, tolerance: g.epsilon }
}

fn record(cli: &Global, command: &str, file: &MeshFile, quantities: Quantities, timings: Timings) -> ResultRecord {
    ResultRecord {
        schema: SCHEMA,
        command: command.to_string(),
        input: InputInfo {
            path: file.path.display().to_string(),
            format: file.format,
            sha256: file.digest.clone(),
            vertices: file.mesh.vertex_count(),
            faces: file.mesh.face_count(),
        },
        units: "model",
        quantities,
        warnings: Vec::new(),
        diagnostics: file.diagnostics.clone(),
        config: ConfigEcho { epsilon: cli.epsilon, weld: cli.weld, deterministic: cli.deterministic, threads: cli.threads },
        timings: (!cli.deterministic).then_some(timings),
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn read(path: &Path, g: &Global) -> Result<(MeshFile, f64), Failure> {
    let t = Instant::now();
    let file = load(path, g.weld)?;
    Ok((file, ms(t)))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    if !(g.epsilon >= 0.0) || !g.epsilon.is_finite() {
        return Err(Failure::Usage("--epsilon must be a finite non-negative number".into()));
    }
    let opts = measure_options(g);
    match &cli.command {
        Command::Measure { mesh } => {
            let (file, parse_ms) = read(mesh, g)?;
            let t = Instant::now();
            let m = &file.mesh;
            let area = mesh_area_with(m, &opts);
            let vol = mesh_volume_with(m, &opts);
            let com = center_of_mass_with(m, &opts);
            let q = MeasureQuantities {
                area,
                volume: vol.signed,
                unsigned_volume: vol.unsigned,
                centroid: com.centroid,
                closedness_defect: vol.closedness_defect,
                gap_magnitude: 0.5 * vol.closedness_defect,
            };
            let text = vec![
                ("area".into(), q.area.to_string()),
                ("volume".into(), q.volume.to_string()),
                ("unsigned volume".into(), q.unsigned_volume.to_string()),
                ("centroid".into(), fmt_opt3(q.centroid)),
                ("closedness defect".into(), q.closedness_defect.to_string()),
                ("gap magnitude".into(), q.gap_magnitude.to_string()),
            ];
            let mut warnings = vol.warnings;
            let extra: Vec<_> = com.warnings.into_iter().filter(|w| !warnings_contains_kind(&warnings, w)).collect();
            warnings.extend(extra);
            let mut r = record(g, "measure", &file, Quantities::Measure(q), Timings { parse_ms, compute_ms: ms(t) });
            r.warnings = warnings;
            Ok(Output { record: r, text })
        }
        Command::Slice(a) => {
            let plane = match (a.plane, a.point, a.normal) {
                (Some(p), _, _) => SlicePlane::new(p[0], p[1], p[2], p[3]),
                (None, Some(pt), Some(n)) => SlicePlane::through_point(pt, n),
                _ => return Err(Failure::Usage("give --plane a,b,c,d or --point x,y,z --normal a,b,c".into())),
            }
            .map_err(|e| Failure::Numeric(e.to_string()))?;
            let (file, parse_ms) = read(&a.mesh, g)?;
            let t = Instant::now();
            let m = &file.mesh;
            let [pa, pb, pc, pd] = plane.p().plane_coefficients();
            if let Some(n) = a.fill_levels {
                let clip = ClipOptions { measure: opts, epsilon: g.epsilon, complement: !a.no_complement };
                let levels = fill_curve(m, [pa, pb, pc], n, &clip).map_err(|e| Failure::Numeric(e.to_string()))?;
                let text = levels
                    .iter()
                    .map(|l| (format!("level {}", l.level), format!("volume {}  centroid {}", l.volume, fmt_opt3(l.centroid))))
                    .collect();
                let q = FillQuantities { normal: [pa, pb, pc], levels };
                let r = record(g, "slice", &file, Quantities::Fill(q), Timings { parse_ms, compute_ms: ms(t) });
                return Ok(Output { record: r, text });
            }
            let clip = ClipOptions { measure: opts, epsilon: g.epsilon, complement: false };
            let res = clip_below_with(m, &plane, &clip);
            let com = sliced_com(&res);
            let q = SliceQuantities {
                plane: [pa, pb, pc, pd],
                volume: sliced_volume(&res, &plane),
                centroid: com.centroid,
                triangles_below: res.triangles_below,
                triangles_split: res.triangles_split,
                used_complement: res.used_complement,
            };
            let text = vec![
                ("plane".into(), format!("{pa} {pb} {pc} {pd}")),
                ("volume".into(), q.volume.to_string()),
                ("centroid".into(), fmt_opt3(q.centroid)),
                ("triangles below".into(), q.triangles_below.to_string()),
                ("triangles split".into(), q.triangles_split.to_string()),
            ];
            let mut r = record(g, "slice", &file, Quantities::Slice(q), Timings { parse_ms, compute_ms: ms(t) });
            r.warnings = slice_warnings(m, &res);
            Ok(Output { record: r, text })
        }
        Command::Inertia { mesh, about_com, align_out } => {
            let (file, parse_ms) = read(mesh, g)?;
            let t = Instant::now();
            let m = &file.mesh;
            let inertia = if *about_com { mesh_inertia_about_com(m, &opts) } else { mesh_inertia_with(m, &opts) };
            let per_mass = inertia
                .per_unit_mass
                .ok_or_else(|| Failure::Numeric("zero volume: inertia per unit mass is undefined".into()))?;
            let eig = jacobi_diagonalize(&per_mass, &JacobiOptions::default()).map_err(|e| Failure::Numeric(e.to_string()))?;
            if let Some(path) = align_out {
                let base = match inertia.center {
                    Some(c) => m.translated(c.map(|x| -x)),
                    None => m.clone(),
                };
                let aligned = align_to_eigenframe(&base, &eig).map_err(|e| Failure::Numeric(e.to_string()))?;
                std::fs::write(path, write_obj(&aligned))
                    .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
            }
            let q = InertiaQuantities {
                volume: inertia.volume,
                center: inertia.center,
                raw: inertia.raw.to_matrix(),
                per_unit_mass: per_mass.to_matrix(),
                moments: eig.moments,
                eigenvectors: eig.eigenvectors(),
                rotor: eig.rotor_coefficients(),
                sweeps: eig.sweeps,
            };
            let ev = q.eigenvectors;
            let text = vec![
                ("volume".into(), q.volume.to_string()),
                ("center".into(), fmt_opt3(q.center)),
                ("moments".into(), fmt3(q.moments)),
                ("eigenvector 1".into(), fmt3(ev[0])),
                ("eigenvector 2".into(), fmt3(ev[1])),
                ("eigenvector 3".into(), fmt3(ev[2])),
                ("rotor".into(), format!("{}", eig.rotor)),
                ("sweeps".into(), q.sweeps.to_string()),
            ];
            let mut r = record(g, "inertia", &file, Quantities::Inertia(q), Timings { parse_ms, compute_ms: ms(t) });
            r.warnings = inertia.warnings;
            Ok(Output { record: r, text })
        }
        Command::Validate { mesh } => {
            let (file, parse_ms) = read(mesh, g)?;
            let t = Instant::now();
            let rep = validate_with(&file.mesh, &opts);
            let text = vec![
                ("vertices".into(), rep.vertices.to_string()),
                ("faces".into(), rep.faces.to_string()),
                ("closedness defect".into(), rep.closedness_defect.to_string()),
                ("boundary edges".into(), rep.boundary_edges.to_string()),
                ("inconsistent edges".into(), rep.inconsistent_edges.to_string()),
                ("non-manifold edges".into(), rep.non_manifold_edges.to_string()),
                ("degenerate faces".into(), rep.degenerate_faces.to_string()),
                ("closed".into(), rep.closed.to_string()),
                ("consistent".into(), rep.consistent.to_string()),
            ];
            let warnings = rep.warnings();
            let mut r = record(g, "validate", &file, Quantities::Validate(rep), Timings { parse_ms, compute_ms: ms(t) });
            r.warnings = warnings;
            Ok(Output { record: r, text })
        }
    }
}

fn warnings_contains_kind(ws: &[crate::mesh::Warning], w: &crate::mesh::Warning) -> bool {
    ws.iter().any(|x| std::mem::discriminant(x) == std::mem::discriminant(w))
}

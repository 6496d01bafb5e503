use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use zonetile::ccs::{
    apply_rototiler, build_faces, find_rototiler_moves, parse_curve_system, surface_report,
};
use zonetile::generate::{random_essential_system, random_system, DEFAULT_ATTEMPTS};
use zonetile::geometry::{
    admissible, area, canonical_edge_data, classify_boundary, deformation_path, lattice_basis,
    openness_radius, zone_vectors,
};
use zonetile::homology::{
    essentiality, homology_coordinates, intersection_matrix, matrix_rank, spectral_pair,
};
use zonetile::tiler::{develop, export_json, export_svg, replicate, SvgOptions};
use zonetile::{json, CurveSystem, EdgeData, Error};

/// Combinatorial curve systems, their surfaces, and periodic parallelogram tilings.
#[derive(Debug, Parser)]
#[command(name = "zonetile", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report failures as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct EdgeSource {
    /// Edge data file: a JSON array of [re, im] pairs in curve order.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a .ccs file.
    Validate { system: PathBuf },
    /// Vertex, edge and face counts, components, genus and face loops.
    Surface { system: PathBuf },
    /// Generalized intersection matrix and its rank.
    Matrix { system: PathBuf },
    /// Essentiality verdict with reasons (exit 1 if not essential).
    Essential { system: PathBuf },
    /// Spectral pair: λ and the canonical edge data e0.
    Canonical {
        system: PathBuf,
        /// Also write e0 as an edge data file.
        #[arg(long)]
        edges_out: Option<PathBuf>,
    },
    /// Admissibility of edge data (exit 1 if not admissible).
    Admissible {
        system: PathBuf,
        #[arg(long)]
        edges: PathBuf,
    },
    /// Zone vectors z = C e (canonical edge data unless --edges is given).
    Zones {
        system: PathBuf,
        #[command(flatten)]
        source: EdgeSource,
    },
    /// Homology coordinates and period lattice basis.
    Lattice {
        system: PathBuf,
        #[command(flatten)]
        source: EdgeSource,
    },
    /// Area of a fundamental domain.
    Area {
        system: PathBuf,
        #[command(flatten)]
        source: EdgeSource,
    },
    /// Develop and replicate the tiling as SVG or JSON.
    #[command(group(ArgGroup::new("data").required(true).args(["edges", "canonical"])))]
    #[command(group(ArgGroup::new("format").required(true).args(["svg", "json"])))]
    Tile {
        system: PathBuf,
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        canonical: bool,
        /// Copies along the two lattice directions, as PxQ.
        #[arg(long, default_value = "1x1", value_parser = parse_copies)]
        copies: (i64, i64),
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        json: bool,
        /// Draw the zone polylines on top of the cells.
        #[arg(long)]
        overlay: bool,
    },
    /// Sample the straight segment between two edge data sets.
    Deform {
        system: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Locate edge data on the boundary hypersurfaces det(e_r, e_s) = 0.
    Boundary {
        system: PathBuf,
        #[arg(long)]
        edges: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// List triangular faces or apply the move at one of them.
    #[command(group(ArgGroup::new("action").required(true).args(["list", "apply"])))]
    Rototiler {
        system: PathBuf,
        #[arg(long)]
        list: bool,
        /// Face index as printed by `surface` and `rototiler --list`.
        #[arg(long, value_name = "FACEID")]
        apply: Option<usize>,
    },
    /// Print a random valid system in .ccs format.
    Gen {
        #[arg(long)]
        curves: usize,
        #[arg(long)]
        labels: usize,
        /// Only accept essential genus-1 systems.
        #[arg(long)]
        essential: bool,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: usize,
    },
}

fn parse_copies(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected PxQ, got {s:?}"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("bad count {p:?}"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("bad count {q:?}"))?;
    if p < 1 || q < 1 {
        return Err("copy counts must be at least 1".into());
    }
    Ok((p, q))
}

/// Successful output, plus whether the verdict it carries is negative.
struct Outcome {
    text: String,
    negative: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            negative: false,
        }
    }

    fn json(value: &Value) -> Self {
        Outcome::ok(json::to_string(value) + "\n")
    }
}

fn read_system(path: &Path) -> anyhow::Result<CurveSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_curve_system(&text)?)
}

fn read_edges(path: &Path) -> anyhow::Result<EdgeData> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(EdgeData::from_json(&text)?)
}

fn edges_or_canonical(system: &CurveSystem, source: &EdgeSource) -> anyhow::Result<EdgeData> {
    match &source.edges {
        Some(path) => read_edges(path),
        None => Ok(canonical_edge_data(system)?),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    Ok(match &cli.command {
        Command::Validate { system } => {
            let s = read_system(system)?;
            Outcome::json(&json!({
                "valid": true,
                "curves": s.curve_count(),
                "labels": s.label_count(),
            }))
        }
        Command::Surface { system } => {
            let r = surface_report(&read_system(system)?);
            let faces: Vec<Vec<String>> = r
                .faces
                .iter()
                .map(|f| f.borders.iter().map(|b| b.to_string()).collect())
                .collect();
            Outcome::json(&json!({
                "vertices": r.vertex_count,
                "edges": r.edge_count,
                "faces": r.face_count(),
                "euler_characteristic": r.euler_characteristic(),
                "connected": r.connected,
                "components": r.component_assignment,
                "genus": r.genus,
                "face_loops": faces,
            }))
        }
        Command::Matrix { system } => {
            let c = intersection_matrix(&read_system(system)?);
            Outcome::json(&json!({ "n": c.n(), "c": c.rows(), "rank": matrix_rank(&c) }))
        }
        Command::Essential { system } => {
            let r = essentiality(&read_system(system)?);
            Outcome {
                text: json::to_string(&r) + "\n",
                negative: !r.essential,
            }
        }
        Command::Canonical { system, edges_out } => {
            let s = read_system(system)?;
            let c = intersection_matrix(&s);
            let e = canonical_edge_data(&s)?;
            let sp = spectral_pair(&c)?;
            if let Some(path) = edges_out {
                fs::write(path, e.to_json() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Outcome::json(&json!({
                "n": c.n(),
                "c": c.rows(),
                "lambda": sp.lambda,
                "e0": json::pairs(e.as_slice()),
            }))
        }
        Command::Admissible { system, edges } => {
            let c = intersection_matrix(&read_system(system)?);
            let e = read_edges(edges)?;
            let r = admissible(&c, &e)?;
            let rho = openness_radius(&c, &e)?;
            Outcome {
                text: json::to_string(&json!({
                    "admissible": r.admissible,
                    "violations": r.violations,
                    "margin": r.margin,
                    "openness_radius": rho,
                })) + "\n",
                negative: !r.admissible,
            }
        }
        Command::Zones { system, source } => {
            let s = read_system(system)?;
            let e = edges_or_canonical(&s, source)?;
            let z = zone_vectors(&intersection_matrix(&s), &e)?;
            Outcome::json(&json!({ "z": json::pairs(&z.0) }))
        }
        Command::Lattice { system, source } => {
            let s = read_system(system)?;
            let e = edges_or_canonical(&s, source)?;
            let hc = homology_coordinates(&s)?;
            let lat = lattice_basis(&hc, &intersection_matrix(&s), &e)?;
            Outcome::json(&json!({
                "A": hc.a,
                "B": hc.b,
                "a": json::pair(lat.a),
                "b": json::pair(lat.b),
                "det": lat.det(),
            }))
        }
        Command::Area { system, source } => {
            let s = read_system(system)?;
            let e = edges_or_canonical(&s, source)?;
            Outcome::json(&json!({ "area": area(&intersection_matrix(&s), &e)? }))
        }
        Command::Tile {
            system,
            edges,
            canonical: _,
            copies: (p, q),
            svg,
            json: _,
            overlay,
        } => {
            let s = read_system(system)?;
            let e = match edges {
                Some(path) => read_edges(path)?,
                None => canonical_edge_data(&s)?,
            };
            let fd = develop(&s, &e)?;
            let mut patch = replicate(&fd, 0..*p, 0..*q)?;
            if *overlay {
                patch = patch.with_overlay();
            }
            if *svg {
                Outcome::ok(export_svg(
                    &patch,
                    &SvgOptions {
                        overlay: *overlay,
                        ..SvgOptions::default()
                    },
                ))
            } else {
                Outcome::ok(export_json(&patch) + "\n")
            }
        }
        Command::Deform {
            system,
            from,
            to,
            steps,
        } => {
            let c = intersection_matrix(&read_system(system)?);
            let path = deformation_path(&c, &read_edges(from)?, &read_edges(to)?, *steps)?;
            let all = path.iter().all(|(_, r)| r.admissible);
            let samples: Vec<Value> = path
                .iter()
                .map(|(t, r)| json!({ "t": t, "admissible": r.admissible, "margin": r.margin }))
                .collect();
            Outcome {
                text: json::to_string(&json!({ "all_admissible": all, "samples": samples })) + "\n",
                negative: !all,
            }
        }
        Command::Boundary { system, edges, tol } => {
            if tol.is_nan() || *tol < 0.0 {
                bail!("tolerance must be non-negative");
            }
            let c = intersection_matrix(&read_system(system)?);
            let hits = classify_boundary(&c, &read_edges(edges)?, *tol)?;
            Outcome::json(&json!({ "hits": hits }))
        }
        Command::Rototiler {
            system,
            list: _,
            apply,
        } => {
            let s = read_system(system)?;
            let faces = build_faces(&s);
            match apply {
                None => {
                    let triangles = find_rototiler_moves(&s);
                    let moves: Vec<Value> = faces
                        .iter()
                        .enumerate()
                        .filter(|(_, f)| triangles.contains(f))
                        .map(|(id, f)| {
                            let borders: Vec<String> =
                                f.borders.iter().map(|b| b.to_string()).collect();
                            json!({ "face": id, "borders": borders })
                        })
                        .collect();
                    Outcome::json(&json!({ "moves": moves }))
                }
                Some(id) => {
                    let face = faces.get(*id).ok_or_else(|| {
                        anyhow!(Error::BadIndex {
                            index: *id,
                            len: faces.len()
                        })
                    })?;
                    Outcome::ok(apply_rototiler(&s, face)?.to_ccs())
                }
            }
        }
        Command::Gen {
            curves,
            labels,
            essential,
            attempts,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let s = if *essential {
                random_essential_system(*curves, *labels, &mut rng, *attempts)?
            } else {
                random_system(*curves, *labels, &mut rng)?
            };
            Outcome::ok(s.to_ccs())
        }
    })
}

fn error_kind(err: &anyhow::Error) -> String {
    match err.downcast_ref::<Error>() {
        Some(e) => {
            let debug = format!("{e:?}");
            let end = debug.find([' ', '(', '{']).unwrap_or(debug.len());
            debug[..end].to_string()
        }
        None => "Io".to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => {
                fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))?
            }
            None => print!("{}", out.text),
        }
        Ok(out.negative)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(err) => {
            if cli.json_errors {
                let report = json!({
                    "error": { "kind": error_kind(&err), "message": format!("{err:#}") }
                });
                eprintln!("{report}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(1)
        }
    }
}

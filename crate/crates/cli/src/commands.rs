use std::path::{Path, PathBuf};

use dbubble_core::closed_forms::{emin, planar_minimizer, theorem_minimizer};
use dbubble_core::geometry::io::{read_grid, write_grid};
use dbubble_core::geometry::{double_bubble_energy, Axis, Configuration};
use dbubble_core::lemmas::{verify_all, GridSpec};
use dbubble_core::search::{brute_force, discrete_dominance_sweep, SearchSpec};
use dbubble_core::slicing::{best_direction, lower_bound, slicing_lemma_check};
use serde_json::json;

use crate::error::CliError;
use crate::output::{envelope, to_text, write_file};
use crate::{BoundArgs, CheckSlicingArgs, Command, EminArgs, EnergyArgs, PlanarArgs, SearchArgs, SweepArgs, VerifyArgs};

/// A report to print and whether the run counts as a success.
pub struct Outcome {
    pub report: String,
    pub status: Result<(), CliError>,
}

impl Outcome {
    fn ok(report: String) -> Outcome {
        Outcome { report, status: Ok(()) }
    }
}

pub fn run(cmd: &Command, outputs: &mut Vec<PathBuf>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Energy(args) => energy(args),
        Command::Planar(args) => planar(args),
        Command::Emin(args) => emin_cmd(args),
        Command::Bound(args) => bound(args),
        Command::Search2d(args) => search(2, args, outputs),
        Command::Search3d(args) => search(3, args, outputs),
        Command::Sweep(args) => sweep(args, outputs),
        Command::VerifyLemmas(args) => verify(args),
        Command::CheckSlicing(args) => check_slicing(args),
    }
}

fn load(path: &Path) -> Result<Configuration, CliError> {
    Ok(read_grid(path)?)
}

fn parse_axis(text: &str) -> Result<Axis, CliError> {
    text.parse::<usize>()
        .ok()
        .and_then(Axis::from_one_based)
        .ok_or_else(|| CliError::usage(format!("axis must be 1, 2, 3 or auto, got {text:?}")))
}

fn energy(args: &EnergyArgs) -> Result<Outcome, CliError> {
    let cfg = load(&args.input)?;
    let e = double_bubble_energy(&cfg);
    let report = if args.json {
        to_text(&envelope("energy", &e))
    } else {
        format!(
            "energy {} (perimeter A {}, perimeter B {}, interface {})\n",
            e.energy, e.perimeter_a, e.perimeter_b, e.interface
        )
    };
    Ok(Outcome::ok(report))
}

fn planar(args: &PlanarArgs) -> Result<Outcome, CliError> {
    let m = planar_minimizer(args.a, args.b)?;
    let payload = json!({
        "a": args.a,
        "b": args.b,
        "regime": m.regime,
        "energy": m.energy,
        "minimizer": {"a": m.a, "b": m.b, "lambda_interval": m.lambda_interval},
    });
    Ok(Outcome::ok(to_text(&envelope("planar", &payload))))
}

fn emin_cmd(args: &EminArgs) -> Result<Outcome, CliError> {
    let e = emin(args.va, args.vb)?;
    // the cuboid pair is only known to be optimal for ratios in [1/2, 2]
    let cuboids = theorem_minimizer(args.va, args.vb).ok();
    let payload = json!({
        "va": args.va,
        "vb": args.vb,
        "M": e.face_area,
        "E": e.energy,
        "theorem_applies": cuboids.is_some(),
        "cuboids": cuboids,
        "audit_energy": cuboids.map(|c| c.audit().energy),
    });
    Ok(Outcome::ok(to_text(&envelope("emin", &payload))))
}

fn bound(args: &BoundArgs) -> Result<Outcome, CliError> {
    let cfg = load(&args.input)?;
    let (axis, direction) = if args.axis == "auto" {
        let d = best_direction(&cfg)?;
        if !d.best_p_at_most_one_third {
            return Err(CliError::Hypothesis {
                code: "overlap_too_large",
                message: format!("every axis has p > 1/3 (least p = {} on axis {})", d.best.p, d.best.axis),
            });
        }
        (d.best.axis, Some(d))
    } else {
        (parse_axis(&args.axis)?, None)
    };
    let report = lower_bound(&cfg, axis)?;
    let payload = json!({"axis": axis.one_based(), "direction": direction, "bound": report});
    Ok(Outcome::ok(to_text(&envelope("bound", &payload))))
}

fn parse_box(text: &str, dim: usize) -> Result<[u32; 3], CliError> {
    let parts: Vec<u32> = text
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("box must look like 3x4 or 2x2x3, got {text:?}")))?;
    if parts.len() != dim || parts.contains(&0) {
        return Err(CliError::usage(format!("box needs {dim} positive extents, got {text:?}")));
    }
    let mut out = [1; 3];
    out[..dim].copy_from_slice(&parts);
    Ok(out)
}

fn search(dim: usize, args: &SearchArgs, outputs: &mut Vec<PathBuf>) -> Result<Outcome, CliError> {
    let spec = SearchSpec {
        dimension: dim,
        volume_a: args.va,
        volume_b: args.vb,
        bounding_box: args.bounding_box.as_deref().map(|b| parse_box(b, dim)).transpose()?,
        connected: !args.no_connectivity,
        symmetry_reduction: !args.no_symmetry,
        max_cells: args.max_cells,
    };
    let result = brute_force(&spec)?;
    let mut files = Vec::new();
    if let Some(dir) = &args.witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
        for (k, w) in result.witnesses.iter().enumerate() {
            let path = dir.join(format!("{dim}d_{}_{}_{k}.grid", args.va, args.vb));
            write_grid(w, &path)?;
            outputs.push(path.clone());
            files.push(path);
        }
    }
    let payload = json!({
        "spec": spec,
        "result": result,
        "witness_grids": result.witness_grids(),
        "witness_files": files,
    });
    Ok(Outcome::ok(to_text(&envelope(if dim == 2 { "search2d" } else { "search3d" }, &payload))))
}

fn sweep(args: &SweepArgs, outputs: &mut Vec<PathBuf>) -> Result<Outcome, CliError> {
    if !(2..=3).contains(&args.dim) {
        return Err(CliError::usage(format!("--dim must be 2 or 3, got {}", args.dim)));
    }
    let mut table = discrete_dominance_sweep(args.dim, args.max_total, args.max_cells)?;
    let dir = args.witness_dir.clone().unwrap_or_else(|| {
        let stem = args.out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
        args.out.with_file_name(format!("{stem}_witnesses"))
    });
    table.write_witnesses(&dir)?;
    outputs.extend(table.rows.iter().filter_map(|r| r.witness_path.as_ref().map(PathBuf::from)));
    let csv = table.to_csv().map_err(|e| CliError::io(args.out.display(), e))?;
    write_file(&args.out, &csv)?;
    outputs.push(args.out.clone());
    let violations: Vec<[u64; 2]> = table.violations().iter().map(|r| [r.a, r.b]).collect();
    let payload = json!({
        "dimension": table.dimension,
        "max_total": table.max_total,
        "csv": args.out,
        "witness_dir": dir,
        "violations": violations,
        "rows": table.rows,
    });
    let status = if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certification(format!("{} rows fall below the continuous bound", violations.len())))
    };
    Ok(Outcome { report: to_text(&envelope("sweep", &payload)), status })
}

fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let grid = GridSpec::by_name(&args.grid)
        .ok_or_else(|| CliError::usage(format!("--grid must be dense or fast, got {:?}", args.grid)))?;
    let suite = verify_all(&grid);
    eprint!("{}", suite.summary_table());
    let failed: Vec<&str> = suite.reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    let status = if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certification(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            suite.reports.len(),
            failed.join(", ")
        )))
    };
    let payload = json!({"passed": suite.passed(), "failed": failed, "grid": suite.grid, "reports": suite.reports});
    Ok(Outcome { report: to_text(&envelope("verify-lemmas", &payload)), status })
}

fn check_slicing(args: &CheckSlicingArgs) -> Result<Outcome, CliError> {
    let cfg = load(&args.input)?;
    let axis = parse_axis(&args.axis.to_string())?;
    let report = slicing_lemma_check(&cfg, axis)?;
    let holds = report.holds();
    let payload = json!({"holds": holds, "report": report});
    let status = if holds {
        Ok(())
    } else {
        Err(CliError::Certification(format!("slicing inequality fails on axis {axis}")))
    };
    Ok(Outcome { report: to_text(&envelope("check-slicing", &payload)), status })
}

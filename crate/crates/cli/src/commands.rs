use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use fieldscope::cnr::{
    cnr_2x2, cnr_rank1_sample, cnr_rank1_support_profile, rank1_row_form, RankOneRowForm,
};
use fieldscope::geometry::{
    convex_hull_2d, hausdorff_distance, uniform_angles, Ellipse, PointCloud,
};
use fieldscope::nr2::{inverse_numerical_range_detailed, membership_specht, numerical_range_2x2};
use fieldscope::nr3::{
    nr3_ellipse_zero23_detailed, nr3_hull, zero_diagonal_reduce_3x3, Nr3Grid, ZERO_DIAGONAL_TOL,
};
use fieldscope::oracle::{
    compare_region, exact_grid_2x2, sample_c_numerical_range, sample_numerical_range, AscentConfig,
    ComparisonReport, SeededSampler,
};
use fieldscope::{ComplexMatrix, Error, C64};

use crate::config::{Command, Format, RunConfig};
use crate::docs::{
    pair, parse_input, to_json, CheckDoc, EllipseDoc, Input, InverseDoc, MatrixDoc, PointsDoc,
    PrincipalDoc, RankOneDoc, ReductionDoc, VerifyDoc,
};
use crate::error::CliError;
use crate::render::{curve_csv, fixed10, indexed_csv, svg};

/// Points on emitted ellipse boundaries.
pub const BOUNDARY_POINTS: usize = 512;
/// Angles of emitted support profiles.
pub const PROFILE_ANGLES: usize = 64;
/// Boundary points per disk in rank-one clouds.
pub const DISK_POINTS: usize = 32;

const ORACLE_REL_HAUSDORFF: f64 = 0.02;
const GRID_REL_HAUSDORFF: f64 = 1e-3;
const UNION_REL_HAUSDORFF: f64 = 1e-2;
const CONTAINMENT: f64 = 1e-8;
const GRID_CONTAINMENT: f64 = 1e-10;

/// Caps the sampling thread pool at `FIELDSCOPE_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("FIELDSCOPE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "FIELDSCOPE_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    // a pool that already exists keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|source| CliError::Read {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Read {
                    path: "standard input".into(),
                    source,
                })?;
            Ok(s)
        }
    }
}

/// Reads the input, runs the command and writes the result.
pub fn execute(config: &RunConfig) -> Result<(), CliError> {
    config.validate()?;
    let text = read_input(config.input_path.as_deref())?;
    let out = run_on(config, &text)?;
    match &config.output_path {
        Some(p) => std::fs::write(p, out)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(out.as_bytes())?;
        }
    }
    Ok(())
}

/// Output text of a command applied to the given input document.
pub fn run_on(config: &RunConfig, input_text: &str) -> Result<String, CliError> {
    config.validate()?;
    let input = parse_input(input_text)?;
    match config.command {
        Command::Nr2 => {
            let e = numerical_range_2x2(input.primary())?;
            ellipse_output(config, &e, None)
        }
        Command::Nr3Ellipse => nr3_ellipse(config, input.primary()),
        Command::Nr3Sample => nr3_sample(config, input.primary()),
        Command::Member => {
            let ok = membership_specht(input.primary(), config.require_point()?, config.tol)?;
            no_svg(config)?;
            Ok(format!("{ok}\n"))
        }
        Command::Invert => invert(config, input.primary()),
        Command::ReduceDiag => reduce_diag(config, input.primary()),
        Command::Cnr2 => {
            let (a, c) = input.require_pair()?;
            ellipse_output(config, &cnr_2x2(a, c)?, None)
        }
        Command::CnrRank1 => {
            let (a, c) = input.require_pair()?;
            let form = rank1_row_form(c, config.tol)?;
            rank_one(config, a, &form)
        }
        Command::Qrange => {
            let a = input.primary();
            let form = RankOneRowForm::q_form(a.dim(), config.require_q()?)?;
            rank_one(config, a, &form)
        }
        Command::Verify => verify(config, &input),
    }
}

fn no_svg(config: &RunConfig) -> Result<(), CliError> {
    if config.format == Format::Svg {
        return Err(CliError::Usage("this command has no SVG output".into()));
    }
    Ok(())
}

fn json_only(config: &RunConfig) -> Result<(), CliError> {
    if config.format != Format::Json {
        return Err(CliError::Usage("this command only writes JSON".into()));
    }
    Ok(())
}

fn boundary(e: &Ellipse) -> (Vec<f64>, Vec<C64>) {
    let ts: Vec<f64> = (0..BOUNDARY_POINTS)
        .map(|k| 2.0 * PI * k as f64 / BOUNDARY_POINTS as f64)
        .collect();
    let pts = ts.iter().map(|&t| e.boundary_point(t)).collect();
    (ts, pts)
}

fn ellipse_output(
    config: &RunConfig,
    e: &Ellipse,
    principal: Option<PrincipalDoc>,
) -> Result<String, CliError> {
    Ok(match config.format {
        Format::Json => to_json(&EllipseDoc {
            principal,
            ..EllipseDoc::from_ellipse(e)
        }),
        Format::Csv => {
            let (ts, pts) = boundary(e);
            curve_csv(&ts, &pts)
        }
        Format::Svg => svg(&boundary(e).1, &[]),
    })
}

fn polygon_output(config: &RunConfig, vertices: &[C64]) -> String {
    match config.format {
        Format::Json => to_json(&PointsDoc {
            points: vertices.iter().map(|&z| pair(z)).collect(),
        }),
        Format::Csv => indexed_csv(vertices),
        Format::Svg => svg(vertices, &[]),
    }
}

/// `A - tr(A)/3` with zero diagonal, reducing only when needed.
fn zero_diagonal_form(a: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, C64), CliError> {
    a.require_dim(3)?;
    let shift = a.trace() / 3.0;
    let t = a.shifted(-shift);
    if t.max_abs_diagonal() <= ZERO_DIAGONAL_TOL * (1.0 + t.hs_norm()) {
        return Ok((t, shift));
    }
    Ok((zero_diagonal_reduce_3x3(a, tol)?.b, shift))
}

fn nr3_ellipse(config: &RunConfig, a: &ComplexMatrix) -> Result<String, CliError> {
    let (b, shift) = zero_diagonal_form(a, config.tol)?;
    let z = nr3_ellipse_zero23_detailed(&b, config.tol * (1.0 + a.hs_norm()))?;
    let principal = PrincipalDoc {
        lambda: [z.principal.lambda1, z.principal.lambda2],
        gamma: z.principal.gamma,
    };
    let e = z.ellipse.affine(C64::new(1.0, 0.0), shift);
    ellipse_output(config, &e, Some(principal))
}

fn shifted_hull(b: &ComplexMatrix, shift: C64) -> Result<Vec<C64>, CliError> {
    let hull = nr3_hull(b, &Nr3Grid::default())?;
    Ok(hull.vertices().iter().map(|v| v + shift).collect())
}

fn nr3_sample(config: &RunConfig, a: &ComplexMatrix) -> Result<String, CliError> {
    let (b, shift) = zero_diagonal_form(a, config.tol)?;
    Ok(polygon_output(config, &shifted_hull(&b, shift)?))
}

fn invert(config: &RunConfig, a: &ComplexMatrix) -> Result<String, CliError> {
    no_svg(config)?;
    let p = config.require_point()?;
    let sol = match inverse_numerical_range_detailed(a, p, config.tol) {
        Err(Error::OutsideRange { scale }) => return Err(CliError::OutsideRange { scale }),
        other => other?,
    };
    let h = sol.vector.components();
    Ok(match config.format {
        Format::Csv => indexed_csv(h),
        _ => to_json(&InverseDoc {
            point: pair(p),
            vector: h.iter().map(|&z| pair(z)).collect(),
            value: pair(a.quadratic_form(h)?),
            scale: sol.scale,
        }),
    })
}

fn reduce_diag(config: &RunConfig, a: &ComplexMatrix) -> Result<String, CliError> {
    json_only(config)?;
    let r = zero_diagonal_reduce_3x3(a, config.tol)?;
    Ok(to_json(&ReductionDoc {
        q: MatrixDoc::from_matrix(&r.q),
        b: MatrixDoc::from_matrix(&r.b),
        shift: pair(a.trace() / 3.0),
        residual: r.residual,
    }))
}

fn rank_one(
    config: &RunConfig,
    a: &ComplexMatrix,
    form: &RankOneRowForm,
) -> Result<String, CliError> {
    let sampler = SeededSampler::new(config.seed);
    let angles = uniform_angles(PROFILE_ANGLES);
    let support = cnr_rank1_support_profile(
        a,
        form,
        &angles,
        &sampler,
        config.samples,
        &AscentConfig::default(),
    )?;
    let cloud = cnr_rank1_sample(a, form, &sampler.derive(1), config.samples, DISK_POINTS)?;
    let hull = convex_hull_2d(&cloud)?.vertices().to_vec();
    Ok(match config.format {
        Format::Json => to_json(&RankOneDoc {
            c11: pair(form.c11),
            tail_norm: form.tail_norm,
            angles,
            support,
            hull: hull.iter().map(|&z| pair(z)).collect(),
        }),
        Format::Csv => indexed_csv(&hull),
        Format::Svg => svg(&hull, &[]),
    })
}

fn check(
    name: &str,
    report: &ComparisonReport,
    containment: f64,
    max_relative: Option<f64>,
) -> CheckDoc {
    let rel = report.relative_hausdorff();
    CheckDoc {
        name: name.into(),
        hausdorff: report.hausdorff,
        relative_hausdorff: rel,
        max_outward_violation: report.max_outward_violation,
        n_points: report.n_points,
        pass: report.max_outward_violation <= containment && max_relative.is_none_or(|m| rel <= m),
    }
}

fn verify(config: &RunConfig, input: &Input) -> Result<String, CliError> {
    let a = input.primary();
    let sampler = SeededSampler::new(config.seed);
    let scale = 1.0 + a.hs_norm();
    let mut checks = Vec::new();
    match a.dim() {
        2 => {
            let e = numerical_range_2x2(a)?;
            let oracle = sample_numerical_range(a, &sampler, config.samples);
            checks.push(check(
                "nr2-vs-unit-vectors",
                &compare_region(&e, &oracle, 4096)?,
                CONTAINMENT * scale,
                Some(ORACLE_REL_HAUSDORFF),
            ));
            checks.push(check(
                "nr2-vs-grid",
                &compare_region(&e, &exact_grid_2x2(a, 256, 256)?, 4096)?,
                GRID_CONTAINMENT * scale,
                Some(GRID_REL_HAUSDORFF),
            ));
            if let Input::Pair(_, c) = input {
                let e = cnr_2x2(a, c)?;
                let orbit = sample_c_numerical_range(a, c, &sampler.derive(1), config.samples)?;
                checks.push(check(
                    "cnr2-vs-unitary-orbit",
                    &compare_region(&e, &orbit, 4096)?,
                    CONTAINMENT * scale * (1.0 + c.hs_norm()),
                    Some(ORACLE_REL_HAUSDORFF),
                ));
            }
        }
        3 => {
            let (b, shift) = zero_diagonal_form(a, config.tol)?;
            let union = shifted_hull(&b, shift)?;
            let oracle = sample_numerical_range(a, &sampler, config.samples);
            if let Ok(z) = nr3_ellipse_zero23_detailed(&b, config.tol * scale) {
                let e = z.ellipse.affine(C64::new(1.0, 0.0), shift);
                let union_cloud = PointCloud::new(union.clone())?;
                checks.push(check(
                    "nr3-ellipse-vs-union",
                    &compare_region(&e, &union_cloud, 4096)?,
                    CONTAINMENT * scale,
                    Some(UNION_REL_HAUSDORFF),
                ));
                checks.push(check(
                    "nr3-ellipse-vs-unit-vectors",
                    &compare_region(&e, &oracle, 4096)?,
                    CONTAINMENT * scale,
                    None,
                ));
            }
            // grid hulls sit inside the range, so allow their resolution
            let hull = convex_hull_2d(&PointCloud::new(union)?)?;
            let diameter = hull.diameter();
            let violation = oracle
                .points()
                .iter()
                .map(|&p| hull.distance_to(p))
                .fold(0.0, f64::max);
            let hausdorff = hausdorff_distance(&hull, &convex_hull_2d(&oracle)?);
            let rel = if diameter > 0.0 {
                hausdorff / diameter
            } else {
                hausdorff
            };
            checks.push(CheckDoc {
                name: "nr3-union-vs-unit-vectors".into(),
                hausdorff,
                relative_hausdorff: rel,
                max_outward_violation: violation,
                n_points: oracle.len(),
                pass: violation <= UNION_REL_HAUSDORFF * diameter.max(1e-12),
            });
        }
        n => {
            return Err(CliError::Usage(format!(
                "verify handles 2x2 and 3x3 matrices, got {n}x{n}"
            )))
        }
    }
    let doc = VerifyDoc { checks };
    Ok(match config.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from(
                "name,hausdorff,relative_hausdorff,max_outward_violation,n_points,pass\n",
            );
            for c in &doc.checks {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.name,
                    fixed10(c.hausdorff),
                    fixed10(c.relative_hausdorff),
                    fixed10(c.max_outward_violation),
                    c.n_points,
                    c.pass
                ));
            }
            s
        }
        Format::Svg => return Err(CliError::Usage("verify has no SVG output".into())),
    })
}

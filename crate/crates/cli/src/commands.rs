use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use shellbound::verify::{body_record, BatchConfig, BodyRecord};
use shellbound::{
    build_spindle, outer_radius_bound, quotient_bound, quotient_bound_coarse, sample_profile,
    spindle_geometry, spindle_radii, stability, summarize, width_bound, Error, PinchSpec,
    QuotientBoundResult, SpindleGeometry, SpindleSpec, StabilityResult, WidthBoundResult,
};

use crate::export::{sig9, spindle_csv, spindle_svg, summary_csv};
use crate::{BoundArgs, FamilyArg, RTilde, SpindleArgs, VerifyArgs};

/// Exit status when a body violates a bound.
const VIOLATION_EXIT: u8 = 2;

#[derive(Debug, Serialize)]
struct OuterRadius {
    r: f64,
    bound: f64,
}

#[derive(Debug, Serialize)]
struct BoundReport {
    pinch: PinchSpec,
    width: WidthBoundResult,
    outer_radius: Option<OuterRadius>,
    quotient: Option<QuotientBoundResult>,
    quotient_coarse: Option<f64>,
    stability: Option<StabilityResult>,
}

fn bound_report(args: &BoundArgs) -> Result<BoundReport> {
    let pinch = args.pinch.pinch()?;
    let space = pinch.curvature();
    let outer_radius = args
        .r
        .map(|r| outer_radius_bound(&pinch, r).map(|bound| OuterRadius { r, bound }))
        .transpose()?;
    let (quotient, quotient_coarse) = if space.is_flat() {
        (
            Some(quotient_bound(&pinch)?),
            Some(quotient_bound_coarse(&pinch)?),
        )
    } else {
        (None, None)
    };
    // Written as (kappa1, (1 + eps) kappa1); undefined for kappa1 = 0.
    let stability = if pinch.kappa1() > 0.0 {
        Some(stability(
            pinch.kappa1(),
            space,
            pinch.kappa2() / pinch.kappa1() - 1.0,
        )?)
    } else {
        None
    };
    Ok(BoundReport {
        pinch,
        width: width_bound(&pinch),
        outer_radius,
        quotient,
        quotient_coarse,
        stability,
    })
}

fn write_rows(out: &mut impl Write, rows: &[(&str, String)]) -> io::Result<()> {
    for (name, value) in rows {
        writeln!(out, "{name:<28} {value}")?;
    }
    Ok(())
}

fn pinch_rows(pinch: &PinchSpec) -> Vec<(&'static str, String)> {
    vec![
        ("geometry", pinch.curvature().label()),
        ("c", sig9(pinch.curvature().c())),
        ("kappa1", sig9(pinch.kappa1())),
        ("kappa2", sig9(pinch.kappa2())),
        ("R1", sig9(pinch.r1())),
        ("R2", sig9(pinch.r2())),
    ]
}

pub fn bound(args: &BoundArgs) -> Result<ExitCode> {
    let report = bound_report(args)?;
    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer_pretty(&mut out, &report)?;
        writeln!(out)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut rows = pinch_rows(&report.pinch);
    rows.push(("width_bound", sig9(report.width.bound)));
    rows.push(("width_maximizer_r", sig9(report.width.maximizer_r)));
    if let Some(o) = &report.outer_radius {
        rows.push(("r", sig9(o.r)));
        rows.push(("outer_radius_bound", sig9(o.bound)));
    }
    if let Some(q) = &report.quotient {
        rows.push(("quotient_bound", sig9(q.bound)));
        rows.push(("quotient_maximizer_r", sig9(q.maximizer_r)));
    }
    if let Some(q) = report.quotient_coarse {
        rows.push(("quotient_bound_coarse", sig9(q)));
    }
    if let Some(s) = &report.stability {
        rows.push(("stability_epsilon", sig9(s.epsilon)));
        rows.push(("stability_width_constant", sig9(s.width_constant)));
        if let Some(q) = s.quotient_constant {
            rows.push(("stability_quotient_constant", sig9(q)));
        }
    }
    write_rows(&mut out, &rows)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct SpindleReport {
    pinch: PinchSpec,
    r_tilde: f64,
    r_outer: f64,
    width: f64,
    quotient: f64,
    geometry: SpindleGeometry,
}

pub fn spindle(args: &SpindleArgs) -> Result<ExitCode> {
    let pinch = args.pinch.pinch()?;
    let r_tilde = match args.r {
        RTilde::Value(r) => r,
        RTilde::MaxWidth => width_bound(&pinch).maximizer_r,
        RTilde::MaxQuotient => quotient_bound(&pinch)?.maximizer_r,
    };
    let spec = SpindleSpec::new(pinch, r_tilde)?;
    let (r_tilde, r_outer) = spindle_radii(&spec)?;
    let report = SpindleReport {
        pinch,
        r_tilde,
        r_outer,
        width: r_outer - r_tilde,
        quotient: r_outer / r_tilde,
        geometry: spindle_geometry(&spec)?,
    };

    if args.csv.is_some() || args.svg.is_some() {
        let profile = build_spindle(&spec)?;
        let samples = sample_profile(&profile, args.samples.max(4));
        if let Some(path) = &args.csv {
            fs::write(path, spindle_csv(&samples))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        if let Some(path) = &args.svg {
            fs::write(path, spindle_svg(&pinch, r_tilde, r_outer, &samples))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }

    let mut out = io::stdout().lock();
    if args.json {
        serde_json::to_writer_pretty(&mut out, &report)?;
        writeln!(out)?;
    } else {
        let mut rows = pinch_rows(&pinch);
        rows.extend([
            ("r_tilde", sig9(report.r_tilde)),
            ("R_tilde", sig9(report.r_outer)),
            ("width", sig9(report.width)),
            ("quotient", sig9(report.quotient)),
        ]);
        write_rows(&mut out, &rows)?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Re-evaluates the pass flags with a user tolerance.
fn apply_tolerance(record: &mut BodyRecord, tol: f64) {
    let m = record.margins;
    record.satisfied.width = m.width <= tol;
    record.satisfied.outer_radius = m.outer_radius <= tol;
    record.satisfied.quotient = m.quotient.map(|q| q <= tol);
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let pinch = args.pinch.pinch()?;
    if matches!(args.family, FamilyArg::Random) && !pinch.curvature().is_flat() {
        bail!("--family random needs --flat; use --family revolution or spindle in curved space");
    }
    let mut config = BatchConfig::new(
        pinch,
        args.family.into(),
        args.seeds.first..args.seeds.last + 1,
    );
    config.modes = args.modes;
    config.grid = args.grid;

    let ids = config.ids()?;
    let outcomes: Vec<(u64, shellbound::Result<BodyRecord>)> = ids
        .par_iter()
        .map(|&id| (id, body_record(&config, id)))
        .collect();

    let mut records = Vec::with_capacity(outcomes.len());
    let mut rejected = Vec::new();
    for (id, outcome) in outcomes {
        match outcome {
            Ok(mut record) => {
                apply_tolerance(&mut record, args.tol);
                records.push(record);
            }
            Err(e @ Error::PinchViolated { .. }) => rejected.push((id, e)),
            Err(e) => return Err(e).with_context(|| format!("body {id}")),
        }
    }

    if let Some(path) = &args.report {
        let mut text = String::new();
        for record in &records {
            text.push_str(&serde_json::to_string(record)?);
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut summary = summarize(&config, &records);
    summary.bodies += rejected.len();
    summary.violations += rejected.len();
    if let Some(path) = &args.summary {
        fs::write(path, summary_csv(&summary))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let total = records.len() + rejected.len();
    let satisfied = records.iter().filter(|r| r.satisfied.all()).count();
    let mut out = io::stdout().lock();
    let mut rows = pinch_rows(&pinch);
    rows.extend([
        ("family", config.family.label().to_owned()),
        ("bodies", total.to_string()),
        ("satisfied", format!("{satisfied}/{total}")),
    ]);
    if !records.is_empty() {
        rows.extend([
            ("worst_width_margin", sig9(summary.worst_width_margin)),
            (
                "worst_outer_radius_margin",
                sig9(summary.worst_outer_radius_margin),
            ),
        ]);
        if let Some(q) = summary.worst_quotient_margin {
            rows.push(("worst_quotient_margin", sig9(q)));
        }
        rows.extend([
            ("max_width", sig9(summary.max_width)),
            ("max_quotient", sig9(summary.max_quotient)),
        ]);
    }
    write_rows(&mut out, &rows)?;

    let mut failures: Vec<(u64, String)> = records
        .iter()
        .filter(|r| !r.satisfied.all())
        .map(|r| {
            let m = r.margins;
            (
                r.seed,
                format!(
                    "bound violated (width margin {}, outer radius margin {})",
                    m.width, m.outer_radius
                ),
            )
        })
        .chain(rejected.iter().map(|(id, e)| (*id, e.to_string())))
        .collect();
    failures.sort_by_key(|f| f.0);
    if failures.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    for (seed, why) in &failures {
        eprintln!("violation: seed {seed}: {why}");
    }
    Ok(ExitCode::from(VIOLATION_EXIT))
}

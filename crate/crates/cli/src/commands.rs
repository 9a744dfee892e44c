use std::fs::File;
use std::io::{BufWriter, Write};

use serde::Serialize;

use power_lindley::fitting::{
    fit, normalize_table, FitObjective, FitReport, FittedParams, FrequencyTable, ModelKind,
    ZeroHandling,
};
use power_lindley::moment_analysis::analyze;
use power_lindley::numerics::QuadratureSpec;
use power_lindley::stieltjes::{
    normalize, verify_vanishing_moments_with, H2Frequency, PerturbationKind, StieltjesMember,
};
use power_lindley::{PowerLindley, RandomSource};

use crate::args::{
    Cli, Command, FitArgs, Format, H2Angle, ModelChoice, ObjectiveArgs, ObjectiveChoice, Overlay,
    Params, PlotArgs, Range, SampleArgs, StieltjesArgs, Which,
};
use crate::error::CliError;
use crate::table::{read_table, WeightScale};

/// Overrides the relative tolerance of the quadrature used by `stieltjes`.
pub const QUAD_RTOL_VAR: &str = "PLFIT_QUAD_RTOL";

/// Residuals above this are reported as failures of the vanishing-moment check.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

const DENSITY_POINTS: usize = 400;

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(p) => cmd_analyze(p, out),
        Command::Fit(a) => cmd_fit(a, out, err),
        Command::Stieltjes(a) => cmd_stieltjes(a, out),
        Command::PlotData(a) => cmd_plot_data(a, out),
        Command::Sample(a) => cmd_sample(a, out),
    }
}

fn model(p: &Params) -> Result<PowerLindley<f64>, CliError> {
    Ok(PowerLindley::new(p.alpha, p.beta)?)
}

pub fn cmd_analyze(p: &Params, out: &mut dyn Write) -> Result<(), CliError> {
    let dist = model(p)?;
    let report = analyze(&dist);
    writeln!(out, "{report}")?;
    writeln!(out, "alpha: {}", p.alpha)?;
    writeln!(out, "beta: {}", p.beta)?;
    writeln!(out, "mgf interval: {}", report.mgf_interval)?;
    writeln!(out, "heavy-tailed: {}", if report.heavy_tailed { "yes" } else { "no" })?;
    writeln!(out, "mean: {}", dist.mean())?;
    writeln!(out, "median: {}", dist.median())?;
    Ok(())
}

fn objective(a: &ObjectiveArgs) -> FitObjective<f64> {
    match a.objective {
        ObjectiveChoice::Binned => FitObjective::Binned,
        ObjectiveChoice::Pdf => FitObjective::PdfAtValues {
            zero: if a.exclude_zero {
                ZeroHandling::Exclude
            } else {
                ZeroHandling::Include
            },
        },
        ObjectiveChoice::PdfShifted => FitObjective::PdfAtShifted { shift: a.shift },
    }
}

fn models(choice: ModelChoice) -> Vec<ModelKind> {
    match choice {
        ModelChoice::Pl => vec![ModelKind::PowerLindley],
        ModelChoice::Weibull => vec![ModelKind::Weibull],
        ModelChoice::Both => vec![ModelKind::PowerLindley, ModelKind::Weibull],
    }
}

fn verdict(reports: &[FitReport<f64>]) -> Option<String> {
    let [a, b] = reports else { return None };
    let (better, worse) = if a.error <= b.error { (a, b) } else { (b, a) };
    let relation = if better.error == worse.error { "=" } else { "<" };
    Some(format!(
        "verdict: {} error {relation} {} error ({:.6e} vs {:.6e})",
        better.model, worse.model, better.error, worse.error
    ))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    table: &'a str,
    model: &'static str,
    shape: f64,
    rate_or_scale: f64,
    objective: String,
    error: f64,
    mean: f64,
    median: f64,
    sample_mean: f64,
    mean_gap: f64,
    annotation: &'a str,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    table: &'a str,
    frequencies: String,
    reports: &'a [FitReport<f64>],
    verdict: Option<String>,
}

pub fn cmd_fit(a: &FitArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let table = read_table(&a.data)?;
    let objective = objective(&a.objective);
    let reports = models(a.model)
        .into_iter()
        .map(|m| fit(&table, m, &objective, None))
        .collect::<Result<Vec<_>, _>>()?;
    let scale = if a.weights_are_proportions {
        WeightScale::Proportions
    } else {
        WeightScale::detect(table.total())
    };
    let verdict = verdict(&reports);
    match a.format {
        Format::Table => write_fit_table(&table, scale, &objective, &reports, verdict.as_deref(), out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &reports {
                let (shape, rate_or_scale) = r.params.pair();
                w.serialize(CsvRow {
                    table: &r.table,
                    model: r.model.label(),
                    shape,
                    rate_or_scale,
                    objective: r.objective.to_string(),
                    error: r.error,
                    mean: r.mean,
                    median: r.median,
                    sample_mean: r.sample_mean,
                    mean_gap: r.mean_gap,
                    annotation: r.annotation.as_deref().unwrap_or(""),
                })?;
            }
            w.flush()?;
            if let Some(v) = &verdict {
                writeln!(err, "{v}")?;
            }
        }
        Format::Json => {
            let doc = JsonOutput {
                table: table.name(),
                frequencies: scale.to_string(),
                reports: &reports,
                verdict,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_fit_table(
    table: &FrequencyTable<f64>,
    scale: WeightScale,
    objective: &FitObjective<f64>,
    reports: &[FitReport<f64>],
    verdict: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let sample_mean = reports.first().map_or(f64::NAN, |r| r.sample_mean);
    writeln!(
        out,
        "data: {} ({} rows, frequencies as {scale}, total {:.4})",
        table.name(),
        table.rows().len(),
        table.total()
    )?;
    writeln!(out, "objective: {objective}")?;
    writeln!(out, "sample mean: {sample_mean:.6}")?;
    writeln!(
        out,
        "{:<14} {:>10} {:>10} {:>13} {:>9} {:>9} {:>11}  note",
        "model", "shape", "rate/scale", "error", "mean", "median", "|X-mean|"
    )?;
    for r in reports {
        let (shape, second) = r.params.pair();
        let note = match (&r.annotation, r.converged) {
            (Some(a), true) => a.clone(),
            (Some(a), false) => format!("{a}; not converged"),
            (None, false) => "not converged".to_string(),
            (None, true) => String::new(),
        };
        writeln!(
            out,
            "{:<14} {:>10.6} {:>10.6} {:>13.6e} {:>9.6} {:>9.6} {:>11.6}  {note}",
            r.model.label(),
            shape,
            second,
            r.error,
            r.mean,
            r.median,
            r.mean_gap
        )?;
    }
    if let Some(v) = verdict {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

fn quadrature_from_env() -> Result<QuadratureSpec<f64>, CliError> {
    let spec = QuadratureSpec::default();
    match std::env::var(QUAD_RTOL_VAR) {
        Ok(s) => {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{QUAD_RTOL_VAR}=`{s}` is not a number")))?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{QUAD_RTOL_VAR} must be positive, got {s}")));
            }
            Ok(spec.with_rel_tol(v))
        }
        Err(_) => Ok(spec),
    }
}

pub fn cmd_stieltjes(a: &StieltjesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let dist = model(&a.params)?;
    if a.params.alpha >= 0.5 {
        return Err(CliError::Refused(format!(
            "PL({}, {}) is moment-determinate (alpha >= 1/2); no Stieltjes class exists",
            a.params.alpha, a.params.beta
        )));
    }
    if a.epsilon.is_nan() || a.epsilon.abs() > 1.0 {
        return Err(CliError::Usage(format!("--epsilon must lie in [-1, 1], got {}", a.epsilon)));
    }
    if a.which != Which::H2 && (a.b.is_some() || a.gamma.is_some()) {
        return Err(CliError::Usage("--b and --gamma apply only to --which 2".into()));
    }
    let kind = match a.which {
        Which::H1 => PerturbationKind::H1,
        Which::H3 => PerturbationKind::H3,
        Which::H2 => {
            let PerturbationKind::H2 { b, gamma, .. } = PerturbationKind::h2_default(a.params.alpha) else {
                unreachable!("h2_default builds H2")
            };
            PerturbationKind::H2 {
                b: a.b.unwrap_or(b),
                gamma: a.gamma.unwrap_or(gamma),
                frequency: match a.h2_angle {
                    H2Angle::Gamma => H2Frequency::TanPiGamma,
                    H2Angle::Alpha => H2Frequency::TanPiAlpha,
                },
            }
        }
    };
    let quad = quadrature_from_env()?;
    let spec = normalize(kind, dist)?;
    writeln!(
        out,
        "{} perturbation of PL({}, {})",
        kind.label(),
        a.params.alpha,
        a.params.beta
    )?;
    if let PerturbationKind::H2 { b, gamma, frequency } = kind {
        let angle = match frequency {
            H2Frequency::TanPiGamma => "tan(pi*gamma)",
            H2Frequency::TanPiAlpha => "tan(pi*alpha)",
        };
        writeln!(out, "b: {b}, gamma: {gamma}, frequency factor: {angle}")?;
    }
    writeln!(out, "normalization M: {:.12e}", spec.scale())?;
    writeln!(out, "sup |H| approached at x = {:.6e}", spec.argmax())?;
    writeln!(out, "{:>3} {:>14} {:>14}  status", "k", "residual", "error bound")?;
    let residuals = verify_vanishing_moments_with(&spec, a.kmax, &quad);
    let mut worst = 0.0_f64;
    let mut failed = 0;
    for r in &residuals {
        let status = if !r.converged {
            failed += 1;
            "quadrature did not converge"
        } else if r.residual <= RESIDUAL_TOLERANCE {
            "ok"
        } else {
            "nonzero"
        };
        worst = worst.max(r.residual);
        writeln!(out, "{:>3} {:>14.6e} {:>14.6e}  {status}", r.k, r.residual, r.error_bound)?;
    }
    let summary = if worst <= RESIDUAL_TOLERANCE {
        "all residuals <= 1e-8"
    } else {
        "residuals exceed 1e-8"
    };
    writeln!(out, "max residual: {worst:.6e} ({summary})")?;

    if let Some(path) = &a.emit_density {
        let member = StieltjesMember::new(spec, a.epsilon)?;
        let file = File::create(path)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        let mut w = csv::Writer::from_writer(BufWriter::new(file));
        w.write_record(["series", "x", "y"])?;
        let hi = dist.quantile(0.999)?;
        let lo = dist.quantile(1e-4)?.min(hi * 1e-6);
        let xs = log_grid(lo, hi, DENSITY_POINTS);
                for &x in &xs {
            w.serialize(("pl", x, dist.pdf(x)))?;
        }
        for &x in &xs {
            w.serialize(("stieltjes", x, member.density(x)))?;
        }
        w.flush()?;
        writeln!(out, "density written to {}", path.display())?;
    }
    if failed > 0 {
        return Err(CliError::Numerical(format!(
            "{failed} moment integral(s) missed the quadrature tolerance"
        )));
    }
    Ok(())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn linear_grid(range: Range, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| range.lo + (range.hi - range.lo) * i as f64 / (n - 1) as f64)
        .collect()
}

pub fn cmd_plot_data(a: &PlotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let table = read_table(&a.data)?;
    let objective = objective(&a.objective);
    let range = a.range.unwrap_or_else(|| Range {
        lo: 0.0,
        hi: table.rows().last().map_or(1.0, |r| r.0) + 1.0,
    });
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["series", "x", "y"])?;
    for ((v, _), wgt) in table.rows().iter().zip(normalize_table(&table)) {
        if *v >= range.lo && *v <= range.hi {
            w.serialize(("data", v, wgt))?;
        }
    }
    let xs = linear_grid(range, a.points as usize);
    let mut seen = Vec::new();
    for overlay in &a.overlay {
        if seen.contains(overlay) {
            continue;
        }
        seen.push(*overlay);
        let (label, kind) = match overlay {
            Overlay::FittedPl => ("fitted-pl", ModelKind::PowerLindley),
            Overlay::FittedWeibull => ("fitted-weibull", ModelKind::Weibull),
        };
        let report = fit(&table, kind, &objective, None)?;
        let density = density_of(&report.params);
        for &x in &xs {
            w.serialize((label, x, density(x)))?;
        }
    }
    w.flush()?;
    Ok(())
}

fn density_of(params: &FittedParams<f64>) -> impl Fn(f64) -> f64 {
    let m = params.model();
    move |x| m.pdf(x)
}

pub fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let dist = model(&a.params)?;
    let n = usize::try_from(a.n).map_err(|_| CliError::Usage(format!("--n {} is too large", a.n)))?;
    let draws = dist.sample(n, &mut RandomSource::new(a.seed))?;
    let mut w = BufWriter::new(out);
    for x in draws {
        writeln!(w, "{x}")?;
    }
    w.flush()?;
    Ok(())
}

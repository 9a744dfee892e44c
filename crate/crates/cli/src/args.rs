use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "plfit", version, about = "Power Lindley analysis, Stieltjes classes and table fitting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic-function class, MGF interval and moment determinacy.
    Analyze(Params),
    /// Least-squares fit of a frequency table.
    Fit(FitArgs),
    /// Vanishing-moment check for a perturbation of an indeterminate law.
    Stieltjes(StieltjesArgs),
    /// Observed weights and fitted densities as `series,x,y` CSV.
    PlotData(PlotArgs),
    /// Draws from PL(alpha, beta), one per line.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Params {
    #[arg(long, value_parser = positive)]
    pub alpha: f64,
    #[arg(long, value_parser = positive)]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Pl,
    Weibull,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveChoice {
    Binned,
    Pdf,
    PdfShifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ObjectiveArgs {
    #[arg(long, value_enum, default_value_t = ObjectiveChoice::Binned)]
    pub objective: ObjectiveChoice,
    /// Offset added to each value under `pdf-shifted`.
    #[arg(long, value_parser = positive, default_value_t = 0.5)]
    pub shift: f64,
    /// Leave the value 0 out of the `pdf` objective.
    #[arg(long)]
    pub exclude_zero: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV path or embedded table name (dit-system, noc-system).
    #[arg(long)]
    pub data: String,
    #[arg(long, value_enum, default_value_t = ModelChoice::Both)]
    pub model: ModelChoice,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Treat frequencies as proportions regardless of their total.
    #[arg(long)]
    pub weights_are_proportions: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "1")]
    H1,
    #[value(name = "2")]
    H2,
    #[value(name = "3")]
    H3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum H2Angle {
    /// tan(πγ): the perturbation proper.
    Gamma,
    /// tan(πα): control that does not annihilate the moments.
    Alpha,
}

#[derive(Debug, Clone, Args)]
pub struct StieltjesArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum)]
    pub which: Which,
    /// H2 rate; default 1.
    #[arg(long, value_parser = positive)]
    pub b: Option<f64>,
    /// H2 exponent in (alpha, 1/2); default the midpoint.
    #[arg(long, value_parser = positive)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = H2Angle::Gamma)]
    pub h2_angle: H2Angle,
    #[arg(long, default_value_t = 10)]
    pub kmax: u32,
    /// Member of the class written by --emit-density.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub epsilon: f64,
    /// Write the member and base densities as `series,x,y` CSV.
    #[arg(long)]
    pub emit_density: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub data: String,
    /// Comma-separated: fitted-pl, fitted-weibull.
    #[arg(long, value_delimiter = ',', default_value = "fitted-pl,fitted-weibull")]
    pub overlay: Vec<Overlay>,
    /// `LO:HI`; default from 0 to one past the largest value.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: Option<Range>,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Overlay {
    FittedPl,
    FittedWeibull,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {s}"))
    }
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}:{hi}"));
    }
    Ok(Range { lo, hi })
}

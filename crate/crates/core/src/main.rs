use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hermite_bary::experiments::{self, Cell, ExperimentReport, PointSystem};
use hermite_bary::{
    bary_weights, sample_hermite_data, sv_weights, Algorithm, DataMode, Error, Grid, GridKind,
    Interpolant, JacobiParams, MultiNodeSpec, Scaling, TestFunction, WeightValues,
};

#[derive(Parser)]
#[command(
    name = "hermite-bary",
    version,
    about = "Barycentric Hermite-Fejér weights at Jacobi point systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nodes and quadrature weights of a point system
    Nodes(Common),
    /// Barycentric weight table, one row per (node, order)
    Weights(Common),
    /// Interpolation error of a test function
    Interp(Common),
    /// Reproducible numerical experiments
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    #[value(alias = "overflow_threshold")]
    Overflow,
    Convergence,
    #[value(alias = "common_factor")]
    CommonFactor,
    Normality,
    #[value(alias = "failure_second_kind")]
    FailureSecondKind,
    #[value(alias = "stability_limit")]
    StabilityLimit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Gauss,
    Lobatto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Sv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalingArg {
    Simplified,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FnArg {
    Runge,
    Expinv,
    Cusp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Full,
    #[value(alias = "fejer_zero")]
    FejerZero,
}

#[derive(Args, Clone)]
struct Common {
    /// Jacobi exponent at x = 1
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Jacobi exponent at x = -1
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Number of nodes
    #[arg(long)]
    n: Option<usize>,
    /// Data values per node
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    system: Option<SystemArg>,
    #[arg(long, value_enum, default_value = "2")]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum)]
    scaling: Option<ScalingArg>,
    #[arg(long = "fn", value_enum, default_value = "runge")]
    function: FnArg,
    /// Output file, or `stdout`
    #[arg(long, default_value = "stdout")]
    out: String,
    /// Node counts for experiments (comma separated)
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    /// Orders for experiments (comma separated)
    #[arg(long, value_delimiter = ',')]
    ms: Vec<usize>,
    /// Derivative data: true derivatives or zeros
    #[arg(long, value_enum)]
    data_mode: Option<ModeArg>,
    /// Subintervals of the equispaced evaluation grid on [-1, 1]
    #[arg(long)]
    intervals: Option<usize>,
    /// Print one row per evaluation point instead of a summary (interp)
    #[arg(long)]
    pointwise: bool,
    /// Sample points for the normality scan
    #[arg(long, default_value_t = 2001)]
    resolution: usize,
    /// Largest m tried by the stability-limit search
    #[arg(long, default_value_t = 32)]
    m_max: usize,
}

/// Failure with the process exit status it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams { .. }
            | Error::InvalidArgument(_)
            | Error::Shape(_)
            | Error::DuplicateNode(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

type CmdResult<T> = Result<T, Failure>;

impl Common {
    fn params(&self) -> CmdResult<JacobiParams> {
        Ok(JacobiParams::new(
            self.alpha.unwrap_or(-0.5),
            self.beta.unwrap_or(-0.5),
        )?)
    }

    fn kind(&self) -> GridKind {
        match self.system.unwrap_or(SystemArg::Gauss) {
            SystemArg::Gauss => GridKind::GaussJacobi,
            SystemArg::Lobatto => GridKind::JacobiGaussLobatto,
        }
    }

    fn system(&self) -> CmdResult<PointSystem> {
        Ok(PointSystem {
            kind: self.kind(),
            params: self.params()?,
        })
    }

    fn n(&self) -> CmdResult<usize> {
        self.n.ok_or_else(|| usage("--n is required"))
    }

    fn m(&self) -> usize {
        self.m.unwrap_or(1)
    }

    fn grid(&self) -> CmdResult<Grid> {
        Ok(Grid::new(self.kind(), self.params()?, self.n()?)?)
    }

    fn function(&self) -> TestFunction {
        match self.function {
            FnArg::Runge => TestFunction::Runge,
            FnArg::Expinv => TestFunction::ExpInv,
            FnArg::Cusp => TestFunction::Cusp,
        }
    }

    fn mode(&self, default: DataMode) -> DataMode {
        match self.data_mode {
            None => default,
            Some(ModeArg::Full) => DataMode::Full,
            Some(ModeArg::FejerZero) => DataMode::FejerZero,
        }
    }

    fn ns(&self, default: &[usize]) -> Vec<usize> {
        pick(&self.ns, self.n, default)
    }

    fn ms(&self, default: &[usize]) -> Vec<usize> {
        pick(&self.ms, self.m, default)
    }

    fn check_sv(&self) -> CmdResult<()> {
        if self.algorithm == AlgorithmArg::Sv && self.scaling == Some(ScalingArg::Full) {
            return Err(usage(
                "--algorithm sv yields unscaled weights in plain doubles; --scaling full is not available for it",
            ));
        }
        Ok(())
    }
}

fn pick(list: &[usize], single: Option<usize>, default: &[usize]) -> Vec<usize> {
    if !list.is_empty() {
        list.to_vec()
    } else if let Some(v) = single {
        vec![v]
    } else {
        default.to_vec()
    }
}

fn algorithm(a: AlgorithmArg) -> Algorithm {
    match a {
        AlgorithmArg::One => Algorithm::One,
        _ => Algorithm::Two,
    }
}

fn cmd_nodes(c: &Common) -> CmdResult<ExperimentReport> {
    let g = c.grid()?;
    let mut rep = ExperimentReport::new("nodes", &["k", "x", "quadrature_weight"]);
    for (k, (&x, &w)) in g.nodes.iter().zip(&g.gauss_weights).enumerate() {
        rep.push(vec![(k + 1).into(), x.into(), w.into()]);
    }
    Ok(rep)
}

fn cmd_weights(c: &Common) -> CmdResult<ExperimentReport> {
    c.check_sv()?;
    let g = c.grid()?;
    let m = c.m();
    if c.algorithm == AlgorithmArg::Sv {
        let w = sv_weights(&MultiNodeSpec::uniform(g.nodes.clone(), m)?)?;
        let mut rep = ExperimentReport::new("weights", &["k", "r", "x", "w", "nonfinite"]);
        for (k, row) in w.weights.iter().enumerate() {
            for (r, &v) in row.iter().enumerate() {
                rep.push(vec![
                    (k + 1).into(),
                    r.into(),
                    g.nodes[k].into(),
                    v.into(),
                    w.nonfinite[k][r].into(),
                ]);
            }
        }
        return Ok(rep);
    }
    let scaling = match c.scaling.unwrap_or(ScalingArg::Simplified) {
        ScalingArg::Simplified => Scaling::Simplified,
        ScalingArg::Full => Scaling::FullLogScaled,
    };
    let t = bary_weights(&g, m, scaling, algorithm(c.algorithm))?;
    let cols: &[&str] = match t.values {
        WeightValues::Simplified(_) => &["k", "r", "x", "w"],
        WeightValues::Full(_) => &["k", "r", "x", ""],
    };
    let mut rep = ExperimentReport::new("weights", cols);
    for k in 0..t.n {
        for r in 0..m {
            let cell = match &t.values {
                WeightValues::Simplified(v) => Cell::Real(v[k * m + r]),
                WeightValues::Full(v) => Cell::Scaled(v[k * m + r]),
            };
            rep.push(vec![(k + 1).into(), r.into(), g.nodes[k].into(), cell]);
        }
    }
    Ok(rep)
}

fn cmd_interp(c: &Common) -> CmdResult<ExperimentReport> {
    c.check_sv()?;
    if c.scaling == Some(ScalingArg::Full) {
        return Err(usage(
            "interp evaluates the second form, which takes simplified weights",
        ));
    }
    let g = c.grid()?;
    let m = c.m();
    let f = c.function();
    let mode = c.mode(DataMode::Full);
    let data = sample_hermite_data(|x, o: &mut [f64]| f.fill(x, o), &g, m, mode)?;
    let p = if c.algorithm == AlgorithmArg::Sv {
        let w = sv_weights(&MultiNodeSpec::uniform(g.nodes.clone(), m)?)?;
        if w.any_nonfinite() {
            return Err(Failure {
                code: 3,
                msg: "unscaled weights overflowed double precision".into(),
            });
        }
        Interpolant::from_raw(g.nodes.clone(), m, w.weights.concat(), &data)?
    } else {
        let t = bary_weights(&g, m, Scaling::Simplified, algorithm(c.algorithm))?;
        Interpolant::new(&t, &g, &data)?
    };
    let pts = experiments::uniform_points(c.intervals.unwrap_or(100));
    if c.pointwise {
        let mut rep = ExperimentReport::new("interp", &["x", "interpolant", "exact", "abs_error"]);
        for &x in &pts {
            let (h, e) = (p.eval(x)?, f.value(x));
            rep.push(vec![x.into(), h.into(), e.into(), (h - e).abs().into()]);
        }
        return Ok(rep);
    }
    let mut worst: f64 = 0.0;
    for &x in &pts {
        worst = worst.max((p.eval(x)? - f.value(x)).abs());
    }
    let mut rep = ExperimentReport::new(
        "interp",
        &[
            "function",
            "system",
            "alpha",
            "beta",
            "n",
            "m",
            "data_mode",
            "derivatives_truncated",
            "max_error",
        ],
    );
    let params = g.params;
    rep.push(vec![
        f.name().into(),
        if g.kind == GridKind::GaussJacobi {
            "gauss"
        } else {
            "lobatto"
        }
        .into(),
        params.alpha.into(),
        params.beta.into(),
        g.len().into(),
        m.into(),
        if mode == DataMode::Full {
            "full"
        } else {
            "fejer_zero"
        }
        .into(),
        (mode == DataMode::Full && !f.has_derivatives(m)).into(),
        worst.into(),
    ]);
    Ok(rep)
}

fn cmd_experiment(name: ExperimentName, c: &Common) -> CmdResult<ExperimentReport> {
    let explicit = c.alpha.is_some() || c.beta.is_some() || c.system.is_some();
    Ok(match name {
        ExperimentName::Overflow => {
            let systems: Vec<(&str, PointSystem)> = if explicit {
                vec![("custom", c.system()?)]
            } else {
                vec![
                    ("chebyshev", PointSystem::chebyshev()),
                    ("legendre", PointSystem::gauss(0.0, 0.0)?),
                ]
            };
            experiments::experiment_overflow(&systems, &c.ms(&[2, 3, 4]))?
        }
        ExperimentName::Convergence => experiments::experiment_convergence(
            c.function(),
            c.system()?,
            &c.ms(&[1, 2, 3, 4]),
            &c.ns(&[10, 20, 30, 40, 50, 60, 80, 100]),
            c.mode(DataMode::Full),
            c.intervals.unwrap_or(100),
        )?,
        ExperimentName::CommonFactor => experiments::experiment_common_factor(
            c.params()?,
            &c.ns(&[100, 200, 500, 1000]),
            &c.ms(&[2, 3, 4, 10]),
        ),
        ExperimentName::Normality => {
            experiments::experiment_normality(c.system()?, &c.ns(&[10, 20, 50, 100]), c.resolution)?
        }
        ExperimentName::FailureSecondKind => experiments::experiment_failure_second_kind(
            &c.ns(&[50, 100, 200, 500]),
            &c.ms(&[1, 2, 3, 4]),
            c.mode(DataMode::FejerZero),
        )?,
        ExperimentName::StabilityLimit => experiments::experiment_stability_limit(
            c.system()?,
            &c.ns(&[1_000, 10_000, 100_000]),
            c.m_max,
        )?,
    })
}

fn emit(rep: &ExperimentReport, out: &str) -> CmdResult<()> {
    if out == "stdout" || out == "-" {
        let stdout = io::stdout();
        rep.write_csv(stdout.lock())?;
    } else {
        let mut w = BufWriter::new(File::create(out)?);
        rep.write_csv(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult<()> {
    let (rep, out) = match &cli.cmd {
        Command::Nodes(c) => (cmd_nodes(c)?, &c.out),
        Command::Weights(c) => (cmd_weights(c)?, &c.out),
        Command::Interp(c) => (cmd_interp(c)?, &c.out),
        Command::Experiment { name, common } => (cmd_experiment(*name, common)?, &common.out),
    };
    emit(&rep, out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

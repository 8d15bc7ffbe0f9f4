//! One function per subcommand: validate flags, run the experiment, write
//! the table, print a one-line summary.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;

use randcube_core::functions::{registry_problem, FoolingFamily, TestProblem};
use randcube_core::interp::InterpolationOperator;
use randcube_core::montecarlo::{
    self, as_quadrature, error_trials, independent_sum_ratio, moment_from_trials, rate_fit,
    sep_mc, standard_mc, Algorithm, MCConfig, RatePoint,
};
use randcube_core::rademacher::{
    self, default_gamma, family_ratios, greedy_partition, rademacher_moment, Family, MomentMode,
};
use randcube_core::seeding::{self, DOMAIN_SIGNS};
use randcube_core::spaces::{Element, SpaceDescriptor};
use randcube_core::stats;

use crate::grid::{parse_grid, parse_list};
use crate::output::{Cell, Format, Table};
use crate::{usage, Failure};

/// Columns of the rates schema; `fit` checks files against this list.
pub const RATES_COLUMNS: [&str; 11] = [
    "algo", "space", "problem", "d", "r", "p", "n", "trials", "value", "stderr", "seed",
];

#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    /// Write result rows to this file
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// File format for --out
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Omit the timestamp header line (byte-reproducible output)
    #[arg(long)]
    no_timestamp: bool,
}

impl OutputOpts {
    fn emit(&self, table: &Table) -> Result<(), Failure> {
        if let Some(path) = &self.out {
            table
                .write(path, self.format)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn parse_space(s: &str) -> Result<SpaceDescriptor, Failure> {
    s.parse::<SpaceDescriptor>()
        .map_err(|e| usage(e.to_string()))
}

fn parse_algo(s: &str) -> Result<Algorithm, Failure> {
    s.parse::<Algorithm>().map_err(|e| usage(e.to_string()))
}

fn build_problem(spec: &str, d: usize, space: SpaceDescriptor) -> Result<TestProblem, Failure> {
    registry_problem(spec, d, space).map_err(|e| usage(e.to_string()))
}

fn check_algo_r(algo: Algorithm, r: u32) -> Result<(), Failure> {
    match algo {
        Algorithm::Standard if r != 0 => Err(usage(
            "--r applies to the separation algorithm; use --algo sep or drop --r",
        )),
        Algorithm::Separation if r == 0 => {
            Err(usage("the separation algorithm needs --r of at least 1"))
        }
        _ => Ok(()),
    }
}

fn format_element(v: &Element) -> String {
    let coords: Vec<String> = v.coords().iter().map(|c| format!("{c}")).collect();
    format!("[{}]", coords.join(", "))
}

// ---------------------------------------------------------------------------
// integrate

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    /// std | sep
    #[arg(long, default_value = "std")]
    algo: String,
    #[arg(long, default_value = "scalar")]
    space: String,
    #[arg(long, default_value = "const")]
    problem: String,
    /// Dimension of the integration cube
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Interpolation degree (separation algorithm only)
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Sample budget
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the drawn quadrature nodes and weights to this file
    #[arg(long, value_name = "PATH")]
    quad_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn integrate(args: IntegrateArgs) -> Result<(), Failure> {
    let algo = parse_algo(&args.algo)?;
    check_algo_r(algo, args.r)?;
    let space = parse_space(&args.space)?;
    let f = build_problem(&args.problem, args.d, space)?;
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }

    let value = match algo {
        Algorithm::Standard => standard_mc(&f, args.n, args.seed),
        Algorithm::Separation => sep_mc(&f, args.n, args.r, args.seed),
    }
    .context("integration failed")?;

    let mut summary = format!(
        "integrate algo={algo} space={space} problem={} d={} r={} n={} seed={}: value={}",
        args.problem,
        args.d,
        args.r,
        args.n,
        args.seed,
        format_element(&value)
    );
    if let Some(exact) = f.exact_integral() {
        let err = space
            .distance(exact, &value)
            .context("error norm failed")?;
        summary.push_str(&format!(" abs-error={err}"));
    }
    println!("{summary}");

    if let Some(path) = &args.quad_out {
        let q = as_quadrature(&f, args.n, args.r, args.seed).context("quadrature draw failed")?;
        let mut columns: Vec<String> = (1..=args.d).map(|a| format!("t{a}")).collect();
        columns.push("weight".into());
        columns.push("kind".into());
        let mut table = Table::new(columns);
        table.comment(format!(
            "quadrature realization: algo={algo} problem={} d={} r={} n={} seed={}",
            args.problem, args.d, args.r, args.n, args.seed
        ));
        table.comment(format!(
            "cardinality: {} (interpolation nodes first, then sample points)",
            q.cardinality()
        ));
        table.comment(format!("weight-sum: {}", q.weight_sum()));
        table.timestamp(args.output.no_timestamp);
        let interp_nodes = q.cardinality() - args.n;
        for (j, (node, weight)) in q.nodes().iter().zip(q.weights()).enumerate() {
            let mut row: Vec<Cell> = node.iter().map(|&c| Cell::from(c)).collect();
            row.push((*weight).into());
            row.push(if j < interp_nodes { "interp" } else { "sample" }.into());
            table.push(row);
        }
        table
            .write(path, args.output.format)
            .with_context(|| format!("writing {}", path.display()))?;
        println!(
            "quad-out: {} nodes ({} interp, {} sample) -> {}",
            q.nodes().len(),
            interp_nodes,
            args.n,
            path.display()
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// rates

#[derive(Args, Debug)]
pub struct RatesArgs {
    /// std | sep
    #[arg(long)]
    algo: String,
    #[arg(long, default_value = "scalar")]
    space: String,
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Interpolation degree (separation algorithm only)
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Error moment order in [1, 2]
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Sample grid: a single n or `a..bxq`
    #[arg(long, value_name = "GRID")]
    n: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn rates(args: RatesArgs) -> Result<(), Failure> {
    let algo = parse_algo(&args.algo)?;
    check_algo_r(algo, args.r)?;
    let space = parse_space(&args.space)?;
    let f = build_problem(&args.problem, args.d, space)?;
    let ns = parse_grid(&args.n).map_err(usage)?;
    if args.trials < 2 {
        return Err(usage("--trials must be at least 2"));
    }
    if !(1.0..=2.0).contains(&args.p) {
        return Err(usage("--p must lie in [1, 2]"));
    }
    if f.exact_integral().is_none() {
        return Err(usage(format!(
            "problem `{}` has no exact integral; rate runs need a reference",
            args.problem
        )));
    }

    let mut table = Table::new(RATES_COLUMNS);
    table.comment("rates: empirical (E ||S f - A f||^p)^(1/p) per n over seeded trials".to_string());
    table.comment(format!(
        "config: algo={algo} space={space} problem={} d={} r={} p={} trials={} seed={}",
        args.problem, args.d, args.r, args.p, args.trials, args.seed
    ));
    let theory = montecarlo::theoretical_exponent(args.r, args.d, args.p);
    table.comment(format!(
        "theory-exponent: -(r/d + 1 - 1/p) = {theory} (expected log-log slope)"
    ));
    if args.p != 1.0 {
        table.comment(format!(
            "rows with p=1 report the plain expected error norm alongside p={}",
            args.p
        ));
    }
    table.timestamp(args.output.no_timestamp);

    let mut fit_points = Vec::new();
    for &n in &ns {
        let cfg = MCConfig::new(n, args.r, args.seed, args.trials, args.p)
            .map_err(|e| usage(e.to_string()))?;
        let errors = error_trials(algo, &f, &cfg, None).context("trial runs failed")?;
        let mut emit = |p: f64| -> Result<montecarlo::ErrorMoment, Failure> {
            let m = moment_from_trials(&errors, p, args.seed).context("moment estimate failed")?;
            table.push(vec![
                algo.to_string().into(),
                space.to_string().into(),
                args.problem.as_str().into(),
                args.d.into(),
                args.r.into(),
                p.into(),
                n.into(),
                args.trials.into(),
                m.value.into(),
                m.stderr.into(),
                args.seed.into(),
            ]);
            Ok(m)
        };
        let m = emit(args.p)?;
        if args.p != 1.0 {
            emit(1.0)?;
        }
        fit_points.push(RatePoint { n, moment: m });
    }
    args.output.emit(&table)?;

    match rate_fit(&fit_points) {
        Ok(report) => {
            let excluded = if report.excluded > 0 {
                format!(" excluded={}", report.excluded)
            } else {
                String::new()
            };
            println!(
                "rates algo={algo} problem={} d={} r={} p={}: slope={:.4} intercept={:.4} r2={:.5} theory={theory}{excluded}",
                args.problem, args.d, args.r, args.p, report.slope, report.intercept, report.r2
            );
        }
        Err(e) => println!(
            "rates algo={algo} problem={} d={} r={} p={}: no fit ({e}); theory={theory}",
            args.problem, args.d, args.r, args.p
        ),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// interp-check

#[derive(Args, Debug)]
pub struct InterpCheckArgs {
    #[arg(long, default_value = "trig")]
    problem: String,
    #[arg(long, default_value = "scalar")]
    space: String,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Interpolation degree
    #[arg(long)]
    r: u32,
    /// Subdivision grid: a single k or `a..bxq`
    #[arg(long, default_value = "2..64x2", value_name = "GRID")]
    k: String,
    /// Evaluation points per axis for the sup estimate
    #[arg(long, default_value_t = 513)]
    grid: usize,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn interp_check(args: InterpCheckArgs) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    let f = build_problem(&args.problem, args.d, space)?;
    let ks = parse_grid(&args.k).map_err(usage)?;
    if args.r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    if args.grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }

    let mut table = Table::new(["problem", "d", "r", "k", "sup_error"]);
    table.comment(format!(
        "interp-check: sup-norm of f - P f over a {}^d grid per subdivision count k",
        args.grid
    ));
    table.comment(format!(
        "config: problem={} space={space} d={} r={} grid={}",
        args.problem, args.d, args.r, args.grid
    ));
    table.comment(format!(
        "theory-exponent: sup error decays like k^-r = k^-{}",
        args.r
    ));
    table.timestamp(args.output.no_timestamp);

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &k in &ks {
        let op = InterpolationOperator::build(args.r, k, args.d)
            .context("operator construction failed")?;
        let sup = op
            .sup_error_estimate(&f, args.grid)
            .context("sup-error estimate failed")?;
        table.push(vec![
            args.problem.as_str().into(),
            args.d.into(),
            args.r.into(),
            k.into(),
            sup.into(),
        ]);
        if sup > 0.0 {
            xs.push(k as f64);
            ys.push(sup);
        }
    }
    args.output.emit(&table)?;

    if xs.len() >= 2 {
        let fit = stats::ols_loglog(&xs, &ys).context("log-log fit failed")?;
        println!(
            "interp-check problem={} d={} r={}: slope={:.4} r2={:.5} target<=-{}",
            args.problem, args.d, args.r, fit.slope, fit.r2, args.r
        );
    } else {
        println!(
            "interp-check problem={} d={} r={}: sup errors vanish on the grid; no fit",
            args.problem, args.d, args.r
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// typeconst

#[derive(Args, Debug)]
pub struct TypeconstArgs {
    #[arg(long)]
    space: String,
    /// Moment order in [1, 2]
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Family size
    #[arg(long)]
    n: usize,
    /// basis | constant | random | all
    #[arg(long, default_value = "all")]
    family: String,
    /// Sign draws when n exceeds the exact-enumeration cutoff
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn typeconst(args: TypeconstArgs) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    let families = match args.family.as_str() {
        "basis" => vec![Family::Basis],
        "constant" => vec![Family::Constant],
        "random" => vec![Family::RandomUnit],
        "all" => Family::builtin(),
        other => {
            return Err(usage(format!(
                "unknown family `{other}` (expected basis, constant, random, or all)"
            )))
        }
    };
    if !(1.0..=2.0).contains(&args.p) {
        return Err(usage("--p must lie in [1, 2]"));
    }
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }

    let ratios = family_ratios(space, args.p, args.n, &families, args.seed, args.samples)
        .context("family evaluation failed")?;

    let mut table = Table::new(["space", "p", "n", "family", "ratio", "method", "stderr"]);
    table.comment(
        "typeconst: moment / (n^(1/p) max-norm) per family; each ratio lower-bounds \
         the equal-norm type-p constant at this n"
            .to_string(),
    );
    table.comment(format!(
        "config: space={space} p={} n={} seed={} samples={}",
        args.p, args.n, args.seed, args.samples
    ));
    table.timestamp(args.output.no_timestamp);
    for fr in &ratios {
        table.push(vec![
            space.to_string().into(),
            args.p.into(),
            args.n.into(),
            fr.family.as_str().into(),
            fr.ratio.into(),
            fr.method.to_string().into(),
            fr.stderr.map(Cell::from).unwrap_or(Cell::Null),
        ]);
    }
    args.output.emit(&table)?;

    let best = ratios
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("non-empty family list");
    println!(
        "typeconst space={space} p={} n={}: lower-bound={} witness={} method={}",
        args.p, args.n, best.ratio, best.family, best.method
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// foolset

#[derive(Args, Debug)]
pub struct FoolsetArgs {
    /// Subdivision counts to compare, e.g. 2,3,4
    #[arg(long, default_value = "2,3,4")]
    m: String,
    /// Derivative order the family is normalized for
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Random sign patterns checked for exact norm invariance
    #[arg(long, default_value_t = 8)]
    sign_trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

/// Deterministic +/-1 pattern from the seeded stream, without an RNG:
/// bit b of derived word w(i) = derive_seed(seed, signs-domain, trial*W+i).
fn sign_pattern(seed: u64, trial: u64, count: usize) -> Vec<f64> {
    let mut signs = Vec::with_capacity(count);
    let words = count.div_ceil(64);
    for w in 0..words {
        let bits = seeding::derive_seed(seed, DOMAIN_SIGNS, trial * words as u64 + w as u64);
        for b in 0..64 {
            if signs.len() == count {
                break;
            }
            signs.push(if bits >> b & 1 == 1 { 1.0 } else { -1.0 });
        }
    }
    signs
}

pub fn foolset(args: FoolsetArgs) -> Result<(), Failure> {
    let ms = parse_list(&args.m).map_err(usage)?;
    if args.d == 0 {
        return Err(usage("--d must be at least 1"));
    }

    let mut table = Table::new([
        "d",
        "r",
        "m",
        "c0",
        "sigma",
        "norm",
        "scaled_norm",
        "sign_invariant",
    ]);
    table.comment(
        "foolset: l_1-basis bump families; norm of the signed sum of member \
         integrals, and the same norm times m^r (constant in m by construction)"
            .to_string(),
    );
    table.comment(format!(
        "config: d={} r={} sign-trials={} seed={}",
        args.d, args.r, args.sign_trials, args.seed
    ));
    table.timestamp(args.output.no_timestamp);

    let mut scaled_values = Vec::new();
    for &m in &ms {
        let count = m.pow(args.d as u32);
        let space = SpaceDescriptor::lq(randcube_core::Exponent::Finite(1.0), count)
            .map_err(|e| usage(e.to_string()))?;
        let vectors: Vec<Element> = (0..count)
            .map(|i| space.basis_vector(i))
            .collect::<Result<_, _>>()
            .context("basis construction failed")?;
        let family = FoolingFamily::new(m, args.r, args.d, space, vectors)
            .context("family construction failed")?;

        let baseline = family
            .integral_combination(&vec![1.0; count])
            .context("integral sum failed")?;
        let norm = space.norm(&baseline).context("norm failed")?;
        let mut invariant = true;
        for trial in 0..args.sign_trials {
            let signs = sign_pattern(args.seed, trial as u64, count);
            let v = family
                .integral_combination(&signs)
                .context("integral sum failed")?;
            if space.norm(&v).context("norm failed")? != norm {
                invariant = false;
            }
        }
        let scaled = norm * (m as f64).powi(args.r as i32);
        scaled_values.push(scaled);
        table.push(vec![
            args.d.into(),
            args.r.into(),
            m.into(),
            family.c0().into(),
            family.sigma().into(),
            norm.into(),
            scaled.into(),
            if invariant { "yes" } else { "no" }.into(),
        ]);
    }
    args.output.emit(&table)?;

    let max = scaled_values.iter().cloned().fold(f64::MIN, f64::max);
    let min = scaled_values.iter().cloned().fold(f64::MAX, f64::min);
    let spread = if min > 0.0 { (max - min) / min } else { f64::NAN };
    println!(
        "foolset d={} r={} m={:?}: scaled-norm spread={spread:.3e} (exact sign invariance checked on {} patterns)",
        args.d, args.r, ms, args.sign_trials
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// partition-demo

#[derive(Args, Debug)]
pub struct PartitionDemoArgs {
    #[arg(long, default_value = "lq:2:3")]
    space: String,
    /// Number of random unit vectors to partition (at most 14)
    #[arg(long)]
    n: usize,
    /// Moment order in [1, 2]
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Subset density; defaults to the dimension-d value 8^d/(2*9^d)
    #[arg(long)]
    gamma: Option<f64>,
    /// Dimension used only for the default gamma
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn partition_demo(args: PartitionDemoArgs) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    if args.n == 0 || args.n > rademacher::SUBSET_SEARCH_MAX {
        return Err(usage(format!(
            "--n must lie in 1..={}",
            rademacher::SUBSET_SEARCH_MAX
        )));
    }
    let gamma = args.gamma.unwrap_or_else(|| default_gamma(args.d));
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(usage("--gamma must lie strictly between 0 and 1"));
    }

    let vectors = Family::RandomUnit
        .realize(space, args.n, args.seed, 0)
        .context("vector draw failed")?;
    let trace =
        greedy_partition(space, &vectors, gamma, args.p).context("partition failed")?;
    trace.validate(args.n).context("partition invariants")?;
    let block_sum = rademacher::reconstruct_full_moment(&trace, space, &vectors, args.p)
        .context("reconstruction failed")?;
    let full = rademacher_moment(space, &vectors, args.p, MomentMode::Exact, args.seed)
        .context("full moment failed")?
        .value;

    let mut table = Table::new(["step", "block_size", "remaining_before", "moment", "indices"]);
    table.comment(
        "partition-demo: greedy minimal-moment subsets of the remaining indices; \
         every block holds at least gamma times what remained before it"
            .to_string(),
    );
    table.comment(format!(
        "config: space={space} n={} p={} gamma={gamma} seed={}",
        args.n, args.p, args.seed
    ));
    table.timestamp(args.output.no_timestamp);
    let mut remaining = args.n;
    for (l, (block, moment)) in trace
        .blocks
        .iter()
        .zip(&trace.per_block_moment)
        .enumerate()
    {
        let idx: Vec<String> = block.iter().map(|i| i.to_string()).collect();
        table.push(vec![
            l.into(),
            block.len().into(),
            remaining.into(),
            (*moment).into(),
            idx.join(" ").into(),
        ]);
        remaining -= block.len();
    }
    args.output.emit(&table)?;

    println!(
        "partition-demo space={space} n={} p={} gamma={gamma:.4}: blocks={} block-moment-sum={block_sum:.6} full-moment={full:.6} dominated={}",
        args.n,
        args.p,
        trace.blocks.len(),
        block_sum + 1e-12 >= full
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// lemma2

#[derive(Args, Debug)]
pub struct Lemma2Args {
    #[arg(long, default_value = "lq:1:8")]
    space: String,
    /// Moment order in [1, 2]
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Summand-count grid: a single n or `a..bxq`
    #[arg(long, default_value = "4..1024x4", value_name = "GRID")]
    n: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

pub fn lemma2(args: Lemma2Args) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    let ns = parse_grid(&args.n).map_err(usage)?;
    if !(1.0..=2.0).contains(&args.p) {
        return Err(usage("--p must lie in [1, 2]"));
    }
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }

    let mut table = Table::new(["space", "p", "n", "trials", "moment", "ratio"]);
    table.comment(
        "lemma2: (E ||sum of n iid mean-zero noise vectors||^p)^(1/p), and the same \
         moment over n^(1/p) * ess-sup; monitored, not asserted"
            .to_string(),
    );
    table.comment(format!(
        "config: space={space} p={} trials={} seed={}",
        args.p, args.trials, args.seed
    ));
    table.timestamp(args.output.no_timestamp);

    let mut max_ratio = 0.0_f64;
    for &n in &ns {
        let pt = independent_sum_ratio(space, n, args.p, args.trials, args.seed)
            .context("diagnostic failed")?;
        max_ratio = max_ratio.max(pt.ratio);
        table.push(vec![
            space.to_string().into(),
            args.p.into(),
            n.into(),
            args.trials.into(),
            pt.moment.into(),
            pt.ratio.into(),
        ]);
    }
    args.output.emit(&table)?;

    println!(
        "lemma2 space={space} p={} n={:?} trials={}: max-ratio={max_ratio:.6}",
        args.p, ns, args.trials
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// fit

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Results file produced by `rates`
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

pub fn fit(args: FitArgs) -> Result<(), Failure> {
    crate::fitfile::fit_and_summarize(&args.input, args.format).map_err(Failure::Runtime)
}

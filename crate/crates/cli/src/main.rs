use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use ym2d::cm::{cylinder_propagator_integral, SpectralPropagator};
use ym2d::graph::{evaluate_partition, BoundaryData, OpenGraphSurface};
use ym2d::haar::QuadratureSpec;
use ym2d::lie::character;
use ym2d::surface::{disc_kernel, glue, insert_observable, PointObservable};
use ym2d::tensor::su2;
use ym2d::verify::{run_suite, Suite, VerifyConfig};
use ym2d::{CMatrix64, CartanPoint, HighestWeight, Rational, RootSystem};

const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug)]
#[command(name = "ym2d", version, about = "2D Yang-Mills partition functions, spin Calogero-Moser propagators and their verification suites")]
struct Cli {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true, env = "YM2D_CONFIG")]
    config: Option<PathBuf>,
    /// Gauge group: su2, su3 or su(n).
    #[arg(long, global = true)]
    group: Option<String>,
    /// Casimir cutoff c₂ ≤ cutoff on summed representations.
    #[arg(long, global = true)]
    cutoff: Option<f64>,
    /// Quadrature points per dimension of the SU(2) grid.
    #[arg(long, global = true)]
    resolution: Option<usize>,
    /// Finite-difference step.
    #[arg(long, global = true)]
    fd_step: Option<f64>,
    /// Tolerance replacing the verification suite defaults.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the numerical kernels.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, Casimir and optionally character of each irrep below the cutoff.
    Irrep(IrrepArgs),
    /// Partition function of a surface with a Wilson graph.
    Surface(SurfaceArgs),
    /// Multi-time cylinder kernel of the spin Calogero-Moser chain.
    Propagate(PropagateArgs),
    /// Point-observable algebra: U_A^F ∗ U_B^G against U_{A+B}^{FG}.
    Observables(ObservablesArgs),
    /// Run a verification suite; exits nonzero iff a residual exceeds its tolerance.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct IrrepArgs {
    /// Torus point in coroot coordinates, e.g. `0.3` or `0.3,1.1`; adds character columns.
    #[arg(long, value_delimiter = ',')]
    at: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Surface description in JSON.
    spec: PathBuf,
    /// Total area; region areas are rescaled proportionally.
    #[arg(long)]
    area: Option<f64>,
}

#[derive(Args, Debug)]
struct PropagateArgs {
    /// Spins μ_i of the Wilson lines (twice the SU(2) spin), e.g. `1,1`.
    #[arg(long, value_delimiter = ',', required = true)]
    spins: Vec<u32>,
    /// Areas between consecutive lines; one value is repeated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0])]
    areas: Vec<f64>,
    /// Number of random boundary configurations.
    #[arg(long, default_value_t = 1)]
    points: usize,
    /// Also evaluate the integral form on the SU(2) grid (at most two lines).
    #[arg(long)]
    integral: bool,
}

#[derive(Args, Debug)]
struct ObservablesArgs {
    /// Area A of the first disc, as a fraction such as `3/10`.
    #[arg(long, default_value = "1/2")]
    area_a: String,
    /// Area B of the second disc.
    #[arg(long, default_value = "1/2")]
    area_b: String,
    /// Number of random observable pairs.
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// rmatrix, eigen, kzb, haar, gluing, orthogonality or all.
    suite: String,
    /// Random regular points per configuration.
    #[arg(long)]
    points: Option<usize>,
}

/// Settings read from the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    group: Option<String>,
    cutoff: Option<f64>,
    resolution: Option<usize>,
    fd_step: Option<f64>,
    tolerance: Option<f64>,
    seed: Option<u64>,
    threads: Option<usize>,
    format: Option<Format>,
}

#[derive(Debug, Clone)]
struct RunConfig {
    group: String,
    cutoff: Option<f64>,
    resolution: usize,
    fd_step: f64,
    tolerance: Option<f64>,
    seed: u64,
    format: Option<Format>,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<(Self, Option<usize>)> {
        let file = match &cli.config {
            Some(path) => load_config(path)?,
            None => FileConfig::default(),
        };
        let cfg = Self {
            group: cli.group.clone().or(file.group).unwrap_or_else(|| "su2".into()),
            cutoff: cli.cutoff.or(file.cutoff),
            resolution: cli.resolution.or(file.resolution).unwrap_or(16),
            fd_step: cli.fd_step.or(file.fd_step).unwrap_or(1e-3),
            tolerance: cli.tolerance.or(file.tolerance),
            seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            format: cli.format.or(file.format),
        };
        cfg.check()?;
        Ok((cfg, cli.threads.or(file.threads)))
    }

    fn check(&self) -> Result<()> {
        if let Some(c) = self.cutoff {
            ensure!(c > 0.0, "cutoff must be positive, got {c}");
        }
        ensure!(self.fd_step > 0.0 && self.fd_step <= 0.1, "fd-step must lie in (0, 0.1], got {}", self.fd_step);
        ensure!(self.resolution >= 8, "resolution must be at least 8, got {}", self.resolution);
        if let Some(t) = self.tolerance {
            ensure!(t >= 0.0, "tolerance must be non-negative, got {t}");
        }
        Ok(())
    }

    fn cutoff_or(&self, default: f64) -> f64 {
        self.cutoff.unwrap_or(default)
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn root_system(&self) -> Result<RootSystem> {
        parse_group(&self.group)
    }
}

fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn parse_group(s: &str) -> Result<RootSystem> {
    let lower = s.to_ascii_lowercase();
    let digits = lower.strip_prefix("su").map(|r| r.trim_start_matches('(').trim_end_matches(')'));
    match digits.and_then(|d| d.parse::<usize>().ok()) {
        Some(n) => Ok(RootSystem::su(n)?),
        None => bail!("unknown group {s:?}; expected su2, su3 or su(n)"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (cfg, threads) = RunConfig::resolve(&cli)?;
    if let Some(n) = threads {
        ensure!(n > 0, "threads must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let mut out = String::new();
    let code = match &cli.command {
        Command::Irrep(a) => irrep(&cfg, a, &mut out)?,
        Command::Surface(a) => surface(&cfg, a, &mut out)?,
        Command::Propagate(a) => propagate(&cfg, a, &mut out)?,
        Command::Observables(a) => observables(&cfg, a, &mut out)?,
        Command::Verify(a) => verify(&cfg, a, &mut out)?,
    };
    print!("{out}");
    Ok(code)
}

/// Shortest round-trip form, switching to exponent notation far from unity.
fn num(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-5 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn json_line(out: &mut String, value: &impl Serialize) -> Result<()> {
    out.push_str(&serde_json::to_string_pretty(value)?);
    out.push('\n');
    Ok(())
}

fn irrep(cfg: &RunConfig, a: &IrrepArgs, out: &mut String) -> Result<ExitCode> {
    let rs = cfg.root_system()?;
    let q = match &a.at {
        Some(angles) => {
            ensure!(angles.len() == rs.rank(), "--at needs {} angles for {}", rs.rank(), cfg.group);
            Some(CartanPoint::new(angles.clone()))
        }
        None => None,
    };
    #[derive(Serialize)]
    struct Row {
        weight: Vec<i64>,
        dim: u64,
        c2: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        character: Option<Complex<f64>>,
    }
    let rows: Vec<Row> = rs
        .dominant_weights_below(cfg.cutoff_or(10.0))?
        .into_iter()
        .map(|l| Row {
            dim: rs.weyl_dim(&l),
            c2: rs.casimir2(&l),
            character: q.as_ref().map(|q| character(&rs, &l, q)),
            weight: l.coords().to_vec(),
        })
        .collect();
    match cfg.format_or(Format::Csv) {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            out.push_str(if rs.rank() == 1 { "m,dim,c2" } else { "weight,dim,c2" });
            out.push_str(if q.is_some() { ",character_re,character_im\n" } else { "\n" });
            for r in &rows {
                let label: Vec<String> = r.weight.iter().map(i64::to_string).collect();
                write!(out, "{},{},{}", label.join(" "), r.dim, num(r.c2))?;
                if let Some(c) = r.character {
                    write!(out, ",{},{}", num(c.re), num(c.im))?;
                }
                out.push('\n');
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn multi_index(mut flat: usize, dims: &[usize]) -> Vec<String> {
    let mut idx = vec![0; dims.len()];
    for (slot, d) in idx.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    idx.iter().map(usize::to_string).collect()
}

fn surface(cfg: &RunConfig, a: &SurfaceArgs, out: &mut String) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&a.spec).with_context(|| format!("reading {}", a.spec.display()))?;
    let gs = OpenGraphSurface::from_json(&text).with_context(|| format!("in {}", a.spec.display()))?;
    let rs = cfg.root_system()?;
    let areas = match a.area {
        Some(total) => {
            ensure!(total > 0.0, "area must be positive, got {total}");
            let sum: f64 = gs.regions.iter().map(|r| r.area).sum();
            ensure!(sum > 0.0, "the surface has no area to rescale");
            Some(gs.regions.iter().map(|r| r.area * total / sum).collect::<Vec<f64>>())
        }
        None => None,
    };
    let data = BoundaryData::<f64>::from_surface(&gs)?;
    let state = evaluate_partition(&gs, &rs, &data, areas.as_deref(), cfg.cutoff_or(40.0))?;
    for w in &state.warnings {
        eprintln!("warning: {w}");
    }
    #[derive(Serialize)]
    struct Output<'a> {
        group: &'a str,
        cutoff: f64,
        stubs: Vec<&'a str>,
        dims: Vec<usize>,
        colorings: usize,
        value: &'a [Complex<f64>],
        warnings: &'a [String],
    }
    match cfg.format_or(Format::Csv) {
        Format::Json => json_line(
            out,
            &Output {
                group: &cfg.group,
                cutoff: cfg.cutoff_or(40.0),
                stubs: state.stubs.iter().map(|s| s.edge.as_str()).collect(),
                dims: state.dims(),
                colorings: state.terms.len(),
                value: &state.value,
                warnings: &state.warnings,
            },
        )?,
        Format::Csv => {
            let mut header: Vec<&str> = state.stubs.iter().map(|s| s.edge.as_str()).collect();
            header.extend(["re", "im"]);
            writeln!(out, "{}", header.join(","))?;
            let dims = state.dims();
            for (k, z) in state.value.iter().enumerate() {
                let mut cells = multi_index(k, &dims);
                cells.extend([num(z.re), num(z.im)]);
                writeln!(out, "{}", cells.join(","))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn propagate(cfg: &RunConfig, a: &PropagateArgs, out: &mut String) -> Result<ExitCode> {
    ensure!(cfg.root_system()?.rank() == 1, "propagate is implemented for su2");
    let n = a.spins.len();
    let spins: Vec<HighestWeight> = a.spins.iter().map(|&m| HighestWeight::su2(m)).collect();
    let areas = match a.areas.len() {
        1 => vec![a.areas[0]; n],
        k if k == n => a.areas.clone(),
        k => bail!("{k} areas given for {n} lines"),
    };
    let cutoff = cfg.cutoff_or(40.0);
    let u = SpectralPropagator::new(spins.clone(), areas.clone(), cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    #[derive(Serialize)]
    struct Sample {
        point: usize,
        g: Vec<[Complex<f64>; 4]>,
        g_prime: Vec<[Complex<f64>; 4]>,
        spectral: Vec<Complex<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        integral: Option<Vec<Complex<f64>>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        difference: Option<f64>,
    }
    let entries = |g: &CMatrix64| [g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]];
    let mut samples = Vec::new();
    for point in 0..a.points {
        let gs: Vec<CMatrix64> = (0..n).map(|_| su2::random(&mut rng)).collect();
        let gps: Vec<CMatrix64> = (0..n).map(|_| su2::random(&mut rng)).collect();
        let k = u.kernel(&gs, &gps)?;
        let integral = if a.integral {
            Some(cylinder_propagator_integral(&spins, &areas, &gs, &gps, &QuadratureSpec::group(cfg.resolution), cutoff)?)
        } else {
            None
        };
        samples.push(Sample {
            point,
            g: gs.iter().map(entries).collect(),
            g_prime: gps.iter().map(entries).collect(),
            difference: integral.as_ref().map(|i| i.dist(&k)),
            integral: integral.map(|i| i.into_data()),
            spectral: k.into_data(),
        });
    }
    let dim: usize = spins.iter().map(|s| s.m() + 1).product();
    match cfg.format_or(Format::Csv) {
        Format::Json => {
            #[derive(Serialize)]
            struct Output<'a> {
                spins: &'a [u32],
                areas: &'a [f64],
                cutoff: f64,
                sectors: Vec<Vec<usize>>,
                dim: usize,
                samples: Vec<Sample>,
            }
            let sectors = u.sectors().iter().map(|s| s.sectors().iter().map(HighestWeight::m).collect()).collect();
            json_line(out, &Output { spins: &a.spins, areas: &areas, cutoff, sectors, dim, samples })?;
        }
        Format::Csv => {
            out.push_str("point,row,col,re,im");
            out.push_str(if a.integral { ",integral_re,integral_im\n" } else { "\n" });
            for s in &samples {
                for (k, z) in s.spectral.iter().enumerate() {
                    write!(out, "{},{},{},{},{}", s.point, k / dim, k % dim, num(z.re), num(z.im))?;
                    if let Some(i) = &s.integral {
                        write!(out, ",{},{}", num(i[k].re), num(i[k].im))?;
                    }
                    out.push('\n');
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_rational(s: &str) -> Result<Rational> {
    let r: Rational = s.trim().parse().map_err(|_| anyhow::anyhow!("not a fraction: {s:?}"))?;
    ensure!(r > Rational::from_integer(0), "area must be positive, got {s}");
    Ok(r)
}

fn observables(cfg: &RunConfig, a: &ObservablesArgs, out: &mut String) -> Result<ExitCode> {
    let rs = cfg.root_system()?;
    let cutoff = cfg.cutoff_or(10.0);
    let (area_a, area_b) = (parse_rational(&a.area_a)?, parse_rational(&a.area_b)?);
    let ws = rs.dominant_weights_below(cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    #[derive(Serialize)]
    struct Row {
        sample: usize,
        weight: String,
        f: String,
        g: String,
        left: String,
        right: String,
        equal: bool,
    }
    let mut rows = Vec::new();
    for sample in 0..a.samples {
        let mut draw = || -> PointObservable<Rational> {
            let mut values = std::collections::BTreeMap::new();
            for l in &ws {
                if rng.gen_bool(0.7) {
                    values.insert(l.clone(), Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
                }
            }
            PointObservable::new(values)
        };
        let (f, g) = (draw(), draw());
        let left = glue(&insert_observable(&disc_kernel(&rs, area_a, cutoff)?, &f), &insert_observable(&disc_kernel(&rs, area_b, cutoff)?, &g))?;
        let right = insert_observable(&disc_kernel(&rs, area_a + area_b, cutoff)?, &f.product(&g));
        for l in &ws {
            let (x, y) = (left.amplitude(l), right.amplitude(l));
            rows.push(Row {
                sample,
                weight: l.to_string(),
                f: f.value(l).to_string(),
                g: g.value(l).to_string(),
                left: x.to_string(),
                right: y.to_string(),
                equal: x == y,
            });
        }
    }
    match cfg.format_or(Format::Csv) {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "sample,weight,f,g,left,right,equal")?;
            for r in &rows {
                writeln!(out, "{},{},{},{},{},{},{}", r.sample, r.weight, r.f, r.g, r.left, r.right, r.equal)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig, a: &VerifyArgs, out: &mut String) -> Result<ExitCode> {
    let suite: Suite = a.suite.parse()?;
    ensure!(cfg.root_system()?.rank() == 1, "the verification suites run on su2");
    let defaults = VerifyConfig::default();
    let vc = VerifyConfig {
        seed: cfg.seed,
        resolution: cfg.resolution,
        fd_step: cfg.fd_step,
        sector_cutoff: cfg.cutoff_or(defaults.sector_cutoff),
        points: a.points.unwrap_or(defaults.points),
        tolerance: cfg.tolerance,
        ..defaults
    };
    let report = run_suite(suite, &vc)?;
    match cfg.format_or(Format::Json) {
        Format::Json => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            out.push_str(&String::from_utf8(buf)?);
        }
    }
    let failures = report.failures().count();
    if failures > 0 {
        eprintln!("{failures} of {} checks exceed their tolerance", report.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

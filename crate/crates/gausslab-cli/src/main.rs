//! `gsl`: command-line front end to the gausslab library.

mod config;
mod literal;
mod output;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use gausslab::expsum;
use gausslab::fourier::{self, FhatMethod};
use gausslab::hecke;
use gausslab::kernels::{self, HMethod, IForm, SpectralParams};
use gausslab::quad::QuadSpec;
use gausslab::report::Worst;
use gausslab::sieve::{self, Dist, LsKind, LsParams, QForm};
use gausslab::suites;
use gausslab::{GaussInt, Report, C64};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use output::Outcome;

const LITERALS: &str = "\
Literals:
  Gaussian integers  a+bi or a-bi with no spaces (3+4i, -2-1i, 0+1i),
                     a bare integer (5) or a bare imaginary (7i).
  Complex floats     x+yi with decimal parts (0.2+1.5i), a real (2.5),
                     or polar mod@arg with the argument in radians (2@0.785).

Config:
  --config FILE reads flat key=value lines (seed=7, tol=1e-9, json=out.json);
  flags given on the command line override the file.

Exit status: 0 all checks pass, 1 a check failed (first failing report on
stderr), 2 usage error.";

#[derive(Parser, Debug)]
#[command(name = "gsl", version, about = "Exponential sums, Bessel kernels and large-sieve checks over Z[i]", after_help = LITERALS)]
struct Cli {
    /// Quadrature tolerance for the Bessel integrals
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (falls back to GSL_THREADS, then all cores)
    #[arg(long, global = true, env = "GSL_THREADS")]
    threads: Option<usize>,
    /// Write JSON to PATH (stdout when PATH is omitted or `-`)
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "PATH")]
    json: Option<String>,
    /// Write CSV to PATH (stdout when PATH is omitted or `-`)
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "PATH")]
    csv: Option<String>,
    /// Human-readable summary on stdout
    #[arg(long, global = true)]
    pretty: bool,
    /// Preset flags from a key=value file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Kloosterman, Ramanujan and V-sums
    #[command(subcommand)]
    Expsum(ExpsumCmd),
    /// Hecke ζ(s,p) and divisor functions
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Bessel kernels and the integrals 𝓗, 𝓘
    #[command(subcommand)]
    Bessel(BesselCmd),
    /// Fourier kernels f and f̂
    #[command(subcommand)]
    Fker(FkerCmd),
    /// Coefficient sequences, large-sieve constants and the assembly
    #[command(subcommand)]
    Sieve(SieveCmd),
    /// Run verification suites
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        /// Only the exact finite identities (V-DFT, decomposition, circle, theta Poisson)
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ExpsumCmd {
    /// S(m,n;c)
    Kloosterman {
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        m: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        c: GaussInt,
    },
    /// S(n,0;c)
    Ramanujan {
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        c: GaussInt,
    },
    /// V_q(m,n;c)
    Vsum {
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        q: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        m: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        c: GaussInt,
    },
    /// Seeded sweeps of the finite identities and bounds
    Verify {
        #[arg(value_enum)]
        what: ExpsumCheck,
        #[arg(long, default_value_t = 400)]
        max_norm: u64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExpsumCheck {
    VDft,
    Decomposition,
    Weil,
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// ζ(s,p) partial sum with tail estimate
    Zeta {
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        s: C64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 200.0)]
        cutoff: f64,
    },
    /// τ_{s,p}(n) and σ_{s,p}(n)
    Sigma {
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        s: C64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
    },
    /// Truncated Ramanujan expansion of σ/ζ
    Ramanujan {
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        s: C64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long, default_value_t = 20.0)]
        y: f64,
        #[arg(long, default_value_t = hecke::RAMANUJAN_EPS)]
        eps: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Direct,
    Rep1,
    Rep2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Form {
    First,
    Second,
    Natural,
    Main,
}

#[derive(Subcommand, Debug)]
enum BesselCmd {
    /// The kernel 𝑱_{iκ,p}(z)
    J {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// 𝓗(z;u) by one of its three evaluations
    Eval {
        #[arg(long, value_enum, default_value = "rep1")]
        method: Method,
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "P")]
        p: f64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        z: C64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        u: C64,
    },
    /// 𝓘(v,w) at K = P = T
    I {
        #[arg(long = "T")]
        t: f64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        v: C64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        w: C64,
        #[arg(long, value_enum, default_value = "first")]
        form: Form,
    },
    /// Kernel identities, 𝓗 agreement and the 𝓘 asymptotic constant
    Verify {
        #[arg(value_enum)]
        what: BesselCheck,
        #[arg(long, value_enum, default_value = "small")]
        grid: Grid,
        #[arg(long = "T", default_value_t = 8.0)]
        t: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BesselCheck {
    LineRep,
    Circle,
    ThetaPoisson,
    GaussianFt,
    /// Three-way agreement of 𝓗
    ThreeWay,
    AsymptoticConstant,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Grid {
    Small,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FhatWay {
    Formula,
    Direct,
    Both,
}

#[derive(Subcommand, Debug)]
enum FkerCmd {
    /// f(w;v)
    F {
        #[arg(long = "T", default_value_t = 4.0)]
        t: f64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        w: C64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        v: C64,
    },
    /// f̂(u;v)
    Fhat {
        #[arg(long = "T", default_value_t = 4.0)]
        t: f64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        u: C64,
        #[arg(long, value_parser = literal::complex, allow_hyphen_values = true)]
        v: C64,
        #[arg(long, value_enum, default_value = "formula")]
        method: FhatWay,
    },
    /// Formula against direct transform, and the decay margin
    Verify {
        #[arg(long = "T", default_value_t = 4.0)]
        t: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
#[value(rename_all = "snake_case")]
enum KindArg {
    Classical,
    Hybrid,
    Cor1,
    Cor2,
    Quadform,
    MeanValue,
    RamanujanIneq,
}

impl From<KindArg> for LsKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Classical => LsKind::Classical,
            KindArg::Hybrid => LsKind::Hybrid,
            KindArg::Cor1 => LsKind::Cor1,
            KindArg::Cor2 => LsKind::Cor2,
            KindArg::Quadform => LsKind::Quadform,
            KindArg::MeanValue => LsKind::MeanValue,
            KindArg::RamanujanIneq => LsKind::RamanujanIneq,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DistArg {
    Unit,
    Gaussian,
    Sparse,
}

impl From<DistArg> for Dist {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Unit => Dist::Unit,
            DistArg::Gaussian => Dist::Gaussian,
            DistArg::Sparse => Dist::Sparse,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Check {
    None,
    Poisson,
    QForms,
    ZeroFreq,
    Eisenstein,
}

#[derive(clap::Args, Debug, Clone)]
struct LsArgs {
    #[arg(long, value_enum, default_value = "classical")]
    kind: KindArg,
    /// Band width Λ (defaults to N for hybrid/cor kinds, 100 otherwise)
    #[arg(long = "Lambda")]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, value_parser = literal::complex, default_value = "1", allow_hyphen_values = true)]
    v: C64,
    #[arg(long, value_enum, default_value = "unit")]
    dist: DistArg,
    #[arg(long, default_value_t = 20)]
    trials: u64,
}

#[derive(Subcommand, Debug)]
enum SieveCmd {
    /// Empirical constant of one large-sieve inequality
    Ratio {
        #[command(flatten)]
        ls: LsArgs,
        #[arg(long = "C", default_value_t = 5.0)]
        c: f64,
        #[arg(long = "N")]
        n: Option<f64>,
    },
    /// The same over a grid of C and N; one report per point
    Sweep {
        #[command(flatten)]
        ls: LsArgs,
        #[arg(long = "C", value_delimiter = ',', default_value = "2,3,4,5")]
        c: Vec<f64>,
        #[arg(long = "N", value_delimiter = ',', default_value = "10,20")]
        n: Vec<f64>,
    },
    /// Q, Σ and Z for a seeded sequence, with an optional check
    Assemble {
        #[arg(long = "T", default_value_t = 4.0)]
        t: f64,
        #[arg(long = "N", default_value_t = 2.0)]
        n: f64,
        #[arg(long = "X", default_value_t = 2.0)]
        x: f64,
        #[arg(long, value_enum, default_value = "gaussian")]
        dist: DistArg,
        /// c-range for Σ
        #[arg(long, default_value_t = 20.0)]
        c_max: f64,
        #[arg(long, value_enum, default_value = "none")]
        check: Check,
        /// Sampled (m,n) pairs for the Poisson check
        #[arg(long, default_value_t = 6)]
        pairs: usize,
    },
    /// Both sides of the q-Poisson identity for one (c, m, n)
    Poisson {
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        c: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        m: GaussInt,
        #[arg(long, value_parser = literal::gauss_int, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long = "T", default_value_t = 4.0)]
        t: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Suite {
    All,
    VDft,
    Decomposition,
    Weil,
    LineRep,
    Circle,
    ThreeWay,
    ThetaPoisson,
    GaussianFt,
    AsymptoticConstant,
    Fhat,
    Poisson,
    QForms,
    LargeSieve,
    Eisenstein,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] gausslab::Error),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(gausslab::Error::Convergence(_) | gausslab::Error::Overflow) => 1,
            _ => 2,
        }
    }
}

fn c_json(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn record(name: &str, inputs: Value, fields: Value, start: Instant) -> Value {
    let mut v = json!({ "name": name, "inputs": inputs });
    if let (Value::Object(m), Value::Object(f)) = (&mut v, fields) {
        m.extend(f);
        m.insert("elapsed".into(), json!(start.elapsed().as_secs_f64()));
    }
    v
}

fn run_expsum(cmd: ExpsumCmd, seed: u64) -> Result<Outcome, CliError> {
    let start = Instant::now();
    Ok(match cmd {
        ExpsumCmd::Kloosterman { m, n, c } => {
            let r = expsum::kloosterman(m, n, c)?;
            Outcome::value(record(
                "kloosterman",
                json!({ "m": m, "n": n, "c": c }),
                json!({ "value": r.re, "im": r.im, "terms": r.terms }),
                start,
            ))
        }
        ExpsumCmd::Ramanujan { n, c } => {
            let r = expsum::ramanujan(n, c)?;
            Outcome::value(record(
                "ramanujan",
                json!({ "n": n, "c": c }),
                json!({ "value": r.re, "im": r.im, "terms": r.terms }),
                start,
            ))
        }
        ExpsumCmd::Vsum { q, m, n, c } => {
            let r = expsum::v_sum(q, m, n, c)?;
            Outcome::value(record(
                "v_sum",
                json!({ "q": q, "m": m, "n": n, "c": c }),
                json!({ "value": r.re, "im": r.im, "terms": r.terms }),
                start,
            ))
        }
        ExpsumCmd::Verify { what, max_norm, trials } => Outcome::reports(match what {
            ExpsumCheck::VDft => vec![suites::v_dft(max_norm, trials, seed)?],
            ExpsumCheck::Decomposition => vec![suites::decomposition(max_norm, trials, seed)?],
            ExpsumCheck::Weil => suites::weil_ramanujan(max_norm, trials, seed)?,
        }),
    })
}

fn run_hecke(cmd: HeckeCmd) -> Result<Outcome, CliError> {
    let start = Instant::now();
    Ok(match cmd {
        HeckeCmd::Zeta { s, p, cutoff } => {
            let z = hecke::zeta_hecke(s, p, cutoff)?;
            let corrected = hecke::zeta_hecke_corrected(s, p, cutoff)?;
            Outcome::value(record(
                "zeta",
                json!({ "s": c_json(s), "p": p, "cutoff": cutoff }),
                json!({ "value": c_json(z.value()), "tail": z.tail, "corrected": c_json(corrected), "terms": z.terms }),
                start,
            ))
        }
        HeckeCmd::Sigma { s, p, n } => {
            let (tau, sigma) = hecke::tau_sigma(s, p, n)?;
            Outcome::value(record(
                "divisor_functions",
                json!({ "s": c_json(s), "p": p, "n": n }),
                json!({ "tau": c_json(tau), "sigma": c_json(sigma) }),
                start,
            ))
        }
        HeckeCmd::Ramanujan { s, p, n, y, eps } => {
            let r = hecke::ramanujan_residual(s, p, n, y, eps)?;
            Outcome::value(record(
                "ramanujan_expansion",
                json!({ "s": c_json(s), "p": p, "n": n, "Y": y, "eps": eps }),
                json!({ "residual": r.residual, "c_radius": r.c_radius, "zeta_tail": r.zeta_tail }),
                start,
            ))
        }
    })
}

fn run_bessel(cmd: BesselCmd, spec: &QuadSpec) -> Result<Outcome, CliError> {
    let start = Instant::now();
    Ok(match cmd {
        BesselCmd::J { kappa, p, z } => {
            let j = kernels::bold_j(kappa, p, z)?;
            Outcome::value(record("bold_j", json!({ "kappa": kappa, "p": p, "z": c_json(z) }), json!({ "value": c_json(j) }), start))
        }
        BesselCmd::Eval { method, k, p, z, u } => {
            let sp = SpectralParams::new(k, p)?;
            let m = match method {
                Method::Direct => HMethod::Direct,
                Method::Rep1 => HMethod::Rep1,
                Method::Rep2 => HMethod::Rep2,
            };
            let h = kernels::h_bessel(z, u, &sp, spec, m)?;
            Outcome::value(record(
                "h_bessel",
                json!({ "method": format!("{method:?}").to_lowercase(), "K": k, "P": p, "z": c_json(z), "u": c_json(u) }),
                json!({ "value": h }),
                start,
            ))
        }
        BesselCmd::I { t, v, w, form } => {
            let sp = SpectralParams::square(t)?;
            let f = match form {
                Form::First => IForm::First,
                Form::Second => IForm::Second,
                Form::Natural => IForm::Natural,
                Form::Main => IForm::Main,
            };
            let i = kernels::i_variant(v, w, &sp, spec, f)?;
            Outcome::value(record(
                "i_variant",
                json!({ "T": t, "v": c_json(v), "w": c_json(w), "form": format!("{form:?}").to_lowercase() }),
                json!({ "value": c_json(i) }),
                start,
            ))
        }
        BesselCmd::Verify { what, grid, t } => Outcome::reports(match what {
            BesselCheck::LineRep => vec![suites::line_representation(spec)?],
            BesselCheck::Circle => vec![suites::circle_formula()],
            BesselCheck::ThetaPoisson => vec![suites::theta_poisson()],
            BesselCheck::GaussianFt => vec![suites::gaussian_ft(t, spec)],
            BesselCheck::ThreeWay => {
                let ks: &[f64] = if grid == Grid::Full { &[1.0, 2.0, 3.0] } else { &[1.0] };
                vec![suites::h_three_way(ks, spec)?]
            }
            BesselCheck::AsymptoticConstant => {
                let steps = if grid == Grid::Full { 4 } else { 2 };
                vec![suites::asymptotic_constant(t, 2.0 * t, steps, spec)?]
            }
        }),
    })
}

fn run_fker(cmd: FkerCmd) -> Result<Outcome, CliError> {
    let start = Instant::now();
    Ok(match cmd {
        FkerCmd::F { t, w, v } => {
            let f = fourier::f_kernel(w, v, t)?;
            Outcome::value(record("f_kernel", json!({ "T": t, "w": c_json(w), "v": c_json(v) }), json!({ "value": f }), start))
        }
        FkerCmd::Fhat { t, u, v, method } => {
            let inputs = json!({ "T": t, "u": c_json(u), "v": c_json(v) });
            let fields = match method {
                FhatWay::Formula => json!({ "value": fourier::f_hat(u, v, t, FhatMethod::Formula)? }),
                FhatWay::Direct => json!({ "value": fourier::f_hat(u, v, t, FhatMethod::Direct)? }),
                FhatWay::Both => {
                    let a = fourier::f_hat(u, v, t, FhatMethod::Formula)?;
                    let b = fourier::f_hat(u, v, t, FhatMethod::Direct)?;
                    json!({ "formula": a, "direct": b, "deviation": (a - b).abs() })
                }
            };
            Outcome::value(record("f_hat", inputs, fields, start))
        }
        FkerCmd::Verify { t } => Outcome::reports(suites::fhat_checks(t)?),
    })
}

fn ls_params(ls: &LsArgs, c: f64, n: Option<f64>) -> LsParams {
    let kind = LsKind::from(ls.kind);
    let base = suites::ls_defaults(kind);
    let n = n.unwrap_or(base.n);
    let width = ls.lambda.unwrap_or(if base.width == base.n { n } else { base.width });
    LsParams { c_max: c, n, width, rho: ls.rho, v: ls.v, dist: ls.dist.into() }
}

fn assemble(t: f64, n: f64, x: f64, dist: Dist, c_max: f64, check: Check, pairs: usize, seed: u64) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let a = sieve::coeff_gen(n, dist, seed)?;
    let q = sieve::q_main(&a, t, x, QForm::Kloosterman)?;
    let sigma = sieve::sigma_bilinear(&a, t, c_max)?;
    let z = sieve::zero_freq_z(&a, t, x)?;
    let mut reports = Vec::new();
    match check {
        Check::None => {}
        Check::Poisson => {
            let support: Vec<GaussInt> = a.entries().iter().filter(|e| e.1 != 0.0).map(|e| e.0.gen()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut w = Worst::default();
            let moduli = gausslab::gauss::annulus(0.0, x)?;
            for _ in 0..pairs {
                let pick: Vec<&GaussInt> = support.choose_multiple(&mut rng, 2).collect();
                if pick.len() < 2 {
                    break;
                }
                let (m, nn) = (*pick[0], *pick[1]);
                for c in &moduli {
                    let r = sieve::poisson_qsum(c.gen(), m, nn, t)?;
                    w.push(r.residual, r.budget, || format!("c={} m={m} n={nn}", c.gen()));
                }
            }
            reports.push(w.report("poisson_qsum").param("T", t).param("X", x).param("seed", seed));
            if support.len() <= 12 {
                let s = sieve::poisson_split(&a, t, x)?;
                reports.push(
                    Report::new("q_equals_z_plus_s", s.residual, s.budget).param("Q", s.q).param("Z", s.z).param("S", s.s),
                );
            }
        }
        Check::QForms => {
            let v = sieve::q_main(&a, t, x, QForm::Shifted)?;
            reports.push(Report::new("q_forms", (q - v).abs() / q.abs().max(1e-300), 1e-8).param("kloosterman", q).param("shifted", v));
        }
        Check::ZeroFreq => {
            // |Z − π³Σ| against (T²N²/X² + T⁴)‖a‖², constant capped at LS_CONSTANT_CAP
            let scale = (t * t * n * n / (x * x) + t.powi(4)) * a.norm_sq();
            reports.push(
                Report::new("zero_frequency_constant", (z - PI.powi(3) * sigma.value).abs() / scale, sieve::LS_CONSTANT_CAP)
                    .param("sigma_tail", sigma.tail),
            );
        }
        Check::Eisenstein => {
            let e = sieve::e_zero_split(&a, t, c_max)?;
            reports.push(Report::new("e_zero_ratio", e.ratio, sieve::LS_CONSTANT_CAP).param("e0", e.e0).param("sigma_over_32", e.sigma_over_32));
            reports.push(suites::weight_identity(t)?);
        }
    }
    let reports = reports
        .into_iter()
        .map(|r| r.param("N", n).param("T", t).param("seed", seed).timed(start))
        .collect();
    Ok(Outcome {
        value: Some(record(
            "assemble",
            json!({ "T": t, "N": n, "X": x, "c_max": c_max, "seed": seed, "ideals": a.len() }),
            json!({ "Q": q, "Sigma": sigma.value, "Sigma_tail": sigma.tail, "Z": z, "norm_sq": a.norm_sq() }),
            start,
        )),
        reports,
    })
}

fn run_sieve(cmd: SieveCmd, seed: u64) -> Result<Outcome, CliError> {
    let start = Instant::now();
    Ok(match cmd {
        SieveCmd::Ratio { ls, c, n } => {
            let p = ls_params(&ls, c, n);
            Outcome::reports(vec![sieve::ls_ratios(ls.kind.into(), &p, ls.trials, seed)?])
        }
        SieveCmd::Sweep { ls, c, n } => {
            let mut out = Vec::new();
            for &cc in &c {
                for &nn in &n {
                    let p = ls_params(&ls, cc, Some(nn));
                    out.push(sieve::ls_ratios(ls.kind.into(), &p, ls.trials, seed)?);
                }
            }
            Outcome::reports(out)
        }
        SieveCmd::Assemble { t, n, x, dist, c_max, check, pairs } => assemble(t, n, x, dist.into(), c_max, check, pairs, seed)?,
        SieveCmd::Poisson { c, m, n, t } => {
            let r = sieve::poisson_qsum(c, m, n, t)?;
            let rep = Report::new("poisson_qsum", r.residual, r.budget)
                .param("c", c.to_string())
                .param("m", m.to_string())
                .param("n", n.to_string())
                .param("T", t)
                .param("lhs", r.lhs.re)
                .param("rhs", r.rhs)
                .param("zero_term", r.zero_term)
                .timed(start);
            Outcome::reports(vec![rep])
        }
    })
}

fn run_suite(suite: Suite, quick: bool, seed: u64, spec: &QuadSpec) -> Result<Vec<Report>, CliError> {
    let mut out = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if suite == Suite::All && quick {
        return Ok(suites::quick(seed)?);
    }
    if want(Suite::VDft) {
        out.push(suites::v_dft(400, 20, seed)?);
    }
    if want(Suite::Decomposition) {
        out.push(suites::decomposition(400, 20, seed)?);
    }
    if want(Suite::Weil) {
        out.extend(suites::weil_ramanujan(400, 20, seed)?);
    }
    if want(Suite::LineRep) {
        out.push(suites::line_representation(spec)?);
    }
    if want(Suite::Circle) {
        out.push(suites::circle_formula());
    }
    if want(Suite::ThreeWay) {
        out.push(suites::h_three_way(if quick { &[1.0] } else { &[1.0, 2.0, 3.0] }, spec)?);
    }
    if want(Suite::ThetaPoisson) {
        out.push(suites::theta_poisson());
    }
    if want(Suite::GaussianFt) {
        out.push(suites::gaussian_ft(4.0, spec));
        out.push(suites::gaussian_ft(8.0, spec));
    }
    if want(Suite::AsymptoticConstant) {
        out.push(suites::asymptotic_constant(8.0, 16.0, if quick { 2 } else { 4 }, spec)?);
    }
    if want(Suite::Fhat) {
        out.extend(suites::fhat_checks(4.0)?);
    }
    if want(Suite::Poisson) {
        out.push(suites::poisson_qsum(100, if quick { 3 } else { 10 }, 4.0, seed)?);
        out.push(suites::poisson_split(4.0, 2.0, seed)?);
    }
    if want(Suite::QForms) {
        out.push(suites::q_forms(50, 4.0, seed)?);
    }
    if want(Suite::LargeSieve) {
        out.extend(suites::large_sieve(if quick { 5 } else { 20 }, seed)?);
    }
    if want(Suite::Eisenstein) {
        out.push(suites::weight_identity(4.0)?);
        out.push(suites::e_zero_trend(&[3.0, 4.0, 5.0, 6.0], 10.0, 60.0, seed)?);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be ≥ 1".into()));
        }
        // a pool may already exist when run in-process; the first one wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut spec = QuadSpec::default();
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Usage("--tol must lie in (0, 1)".into()));
        }
        spec.tol = t;
    }
    match cli.cmd {
        Cmd::Expsum(c) => run_expsum(c, cli.seed),
        Cmd::Hecke(c) => run_hecke(c),
        Cmd::Bessel(c) => run_bessel(c, &spec),
        Cmd::Fker(c) => run_fker(c),
        Cmd::Sieve(c) => run_sieve(c, cli.seed),
        Cmd::Verify { suite, quick } => Ok(Outcome::reports(run_suite(suite, quick, cli.seed, &spec)?)),
    }
}

fn emit(out: &Outcome, json: Option<&str>, csv: Option<&str>, pretty: bool) -> Result<(), CliError> {
    if let Some(p) = json {
        output::write_to(p, &out.to_json().to_string())?;
    }
    if let Some(p) = csv {
        output::write_to(p, &out.to_csv()?)?;
    }
    if pretty {
        output::write_to("-", &out.to_pretty())?;
    }
    if json.is_none() && csv.is_none() && !pretty {
        output::write_to("-", &out.to_json().to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut cmd = Cli::command();
    let argv = match config::apply(argv, &mut cmd) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match cmd.try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (json, csv, pretty) = (cli.json.clone(), cli.csv.clone(), cli.pretty);
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    if let Err(e) = emit(&outcome, json.as_deref(), csv.as_deref(), pretty) {
        eprintln!("error: {e}");
        return ExitCode::from(e.code());
    }
    match outcome.first_failure() {
        Some(r) => {
            eprintln!("check failed: {}", serde_json::to_string(r).expect("report serializes"));
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

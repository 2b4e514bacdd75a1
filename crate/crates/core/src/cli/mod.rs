//! Command-line front end.
//!
//! Every numeric input is an exact integer or rational `p/q`. Classes are
//! ten comma-separated coordinates in the Gram basis (or `0`), and Mukai
//! vectors are written `r:c:s`.

pub mod config;
pub mod output;
pub mod parse;
pub mod svg;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::divisors::{bm_limit, bm_vector, bm_vector_slice, hilbert_extremal_rays, nef_hilbert, theta_hilbert, Limit};
use crate::error::{Error, Result};
use crate::lattice::{is_positive, phi, NumClass, RationalNumClass};
use crate::mukai::{divisibility, mukai_pair, mukai_square, pullback_pair, pullback_report, weakly_spherical_reflect, MukaiVector};
use crate::rational::{format_rational, int, parse_rational};
use crate::reports::{classify_moduli, linsys_report};
use crate::stability::{central_charge, discrepancy, half_degree, phase_cmp, slope, SlicePoint};
use crate::walls::{enumerate_dv, gieseker_bound_with, hilbert_wall_family, mu_max, wall_locus, ExactRadical, GiesekerVariant, WallLocus};
use config::{CliConfig, Format};
use parse::{parse_class, parse_mukai, parse_rational_class};
use svg::{render_svg, GiesekerMark, LabeledWall, WallDiagram};

pub const CONFIG_ENV: &str = "ENRIQUES_STAB_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "enriques-stab", version, about = "Exact stability-condition numerics on unnodal Enriques surfaces")]
struct Cli {
    /// JSON file with "name", "gram", "reference_ample", "output_format".
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct VArg {
    /// Mukai vector r:c1,...,c10:s
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Debug, Args)]
struct SliceArgs {
    #[arg(long = "H", allow_hyphen_values = true)]
    h: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// φ(D) and a witness.
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Mukai pairing (v, w), and the pairing of the pullbacks.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    MukaiSquare(VArg),
    /// v = m·v0 with v0 primitive.
    Divisibility(VArg),
    /// v + 2(v, u)u for u² = −1.
    Reflect {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Numerics of the pullback to the K3 cover.
    Pullback(VArg),
    CentralCharge {
        #[command(flatten)]
        v: VArg,
        #[command(flatten)]
        at: SliceArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    Slope {
        #[command(flatten)]
        v: VArg,
        #[command(flatten)]
        at: SliceArgs,
    },
    Delta {
        #[command(flatten)]
        v: VArg,
        #[command(flatten)]
        at: SliceArgs,
    },
    /// Compare phases of v and w: "<", "=" or ">".
    PhaseCmp {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[command(flatten)]
        at: SliceArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Hilbert-scheme walls (--hilbert n) or the wall of a pair (--v --w).
    Walls {
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        #[arg(long, conflicts_with_all = ["v", "w"], required_unless_present_all = ["v", "w"])]
        hilbert: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "w")]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "v")]
        w: Option<String>,
        /// Draw the Gieseker bound of the Hilbert vector at this b.
        #[arg(long, allow_hyphen_values = true, requires = "hilbert")]
        gieseker_b: Option<String>,
        /// Also write the diagram to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The destabilizer set D_v at b.
    Dv {
        #[command(flatten)]
        v: VArg,
        #[command(flatten)]
        at: SliceArgs,
    },
    /// Threshold on ω² = 2du above which the slice is in the Gieseker chamber.
    GiesekerBound {
        #[command(flatten)]
        v: VArg,
        #[command(flatten)]
        at: SliceArgs,
        #[arg(long)]
        sharpened: bool,
    },
    /// Bayer–Macrì vector on the slice, at general (ω, β), or as a limit.
    BmDivisor {
        #[command(flatten)]
        v: VArg,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, value_enum)]
        limit: Option<LimitArg>,
    },
    /// Whether D̃ − aB is nef on the Hilbert scheme of n points.
    NefHilbert {
        #[arg(long)]
        n: i64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    HilbertRays {
        #[arg(long)]
        n: i64,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
    Classify(VArg),
    Linsys {
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum LimitArg {
    Zero,
    Infinity,
}

/// A command's result before rendering.
enum Outcome {
    Data(Value),
    Diagram(Value, WallDiagram),
}

fn data<T: Serialize>(x: &T) -> Result<Outcome> {
    serde_json::to_value(x).map(Outcome::Data).map_err(|e| Error::internal(e.to_string()))
}

fn ample(cfg: &CliConfig, text: &str) -> Result<NumClass> {
    let h = parse_class(text)?;
    if !is_positive(&cfg.gram, &h, &cfg.reference_ample)? {
        return Err(Error::domain(format!("H = {h} is not ample")));
    }
    Ok(h)
}

fn slice_point(cfg: &CliConfig, at: &SliceArgs, u: &str) -> Result<SlicePoint> {
    SlicePoint::new(&cfg.gram, parse_class(&at.h)?, &cfg.reference_ample, parse_rational(&at.b)?, parse_rational(u)?)
}

/// `n` with `v = (1, 0, ½ − n)`, if `v` is a Hilbert-scheme vector.
fn hilbert_n(v: &MukaiVector) -> Option<i64> {
    let n = (1 - v.s2) / 2;
    (v.r == 1 && v.c.is_zero() && n >= 2 && MukaiVector::hilbert(n) == *v).then_some(n)
}

fn execute(cfg: &CliConfig, cmd: &Command) -> Result<Outcome> {
    let g = &cfg.gram;
    let h0 = &cfg.reference_ample;
    match cmd {
        Command::Phi { class } => data(&phi(g, &parse_class(class)?)?),
        Command::Pair { v, w } => {
            let (v, w) = (parse_mukai(v)?, parse_mukai(w)?);
            data(&json!({
                "pair": format_rational(&mukai_pair(g, &v, &w)),
                "pullback_pair": pullback_pair(g, &v, &w),
            }))
        }
        Command::MukaiSquare(a) => data(&json!({ "square": mukai_square(g, &parse_mukai(&a.v)?) })),
        Command::Divisibility(a) => data(&divisibility(&parse_mukai(&a.v)?)?),
        Command::Reflect { v, u } => data(&weakly_spherical_reflect(g, &parse_mukai(v)?, &parse_mukai(u)?)?),
        Command::Pullback(a) => data(&pullback_report(g, &parse_mukai(&a.v)?)),
        Command::CentralCharge { v, at, u } => data(&central_charge(g, &parse_mukai(&v.v)?, &slice_point(cfg, at, u)?)),
        Command::Slope { v, at } => {
            let h = ample(cfg, &at.h)?;
            data(&json!({ "slope": slope(g, &parse_mukai(&v.v)?, &h, &parse_rational(&at.b)?).to_string() }))
        }
        Command::Delta { v, at } => {
            let h = ample(cfg, &at.h)?;
            data(&json!({ "delta": format_rational(&discrepancy(g, &parse_mukai(&v.v)?, &h, &parse_rational(&at.b)?)?) }))
        }
        Command::PhaseCmp { v, w, at, u } => {
            let p = slice_point(cfg, at, u)?;
            let ord = phase_cmp(g, &parse_mukai(v)?, &parse_mukai(w)?, &p)?;
            let sym = match ord {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            data(&json!({ "order": sym }))
        }
        Command::Walls { h, hilbert, v, w, gieseker_b, .. } => {
            let h = ample(cfg, h)?;
            if let Some(n) = hilbert {
                let walls = hilbert_wall_family(g, *n, &h)?;
                let labeled = walls.iter().map(|x| LabeledWall { circle: x.circle.clone(), label: format!("k={}", x.k) }).collect();
                let mark = match gieseker_b {
                    Some(b) => {
                        let b = parse_rational(b)?;
                        let bound = gieseker_bound_with(g, &MukaiVector::hilbert(*n), &h, &b, GiesekerVariant::Standard)?;
                        // ω² = 2du
                        let two_d = int(2 * half_degree(g, &h));
                        let u = ExactRadical::new(&bound.a / &two_d, &bound.rad / (&two_d * &two_d));
                        Some(GiesekerMark { b, u })
                    }
                    None => None,
                };
                let value = serde_json::to_value(&walls).map_err(|e| Error::internal(e.to_string()))?;
                return Ok(Outcome::Diagram(value, WallDiagram::fit(labeled, mark)));
            }
            let (v, w) = match (v, w) {
                (Some(v), Some(w)) => (parse_mukai(v)?, parse_mukai(w)?),
                _ => return Err(Error::parse("walls needs --hilbert n or both --v and --w")),
            };
            let locus = wall_locus(g, &v, &w, &h);
            let labeled = match &locus {
                WallLocus::Circle(c) => vec![LabeledWall { circle: c.clone(), label: "wall".into() }],
                _ => Vec::new(),
            };
            let value = serde_json::to_value(&locus).map_err(|e| Error::internal(e.to_string()))?;
            Ok(Outcome::Diagram(value, WallDiagram::fit(labeled, None)))
        }
        Command::Dv { v, at } => {
            let (v, h, b) = (parse_mukai(&v.v)?, ample(cfg, &at.h)?, parse_rational(&at.b)?);
            data(&enumerate_dv(g, &v, &h, &b)?)
        }
        Command::GiesekerBound { v, at, sharpened } => {
            let (v, h, b) = (parse_mukai(&v.v)?, ample(cfg, &at.h)?, parse_rational(&at.b)?);
            let variant = if *sharpened { GiesekerVariant::Sharpened } else { GiesekerVariant::Standard };
            let bound = gieseker_bound_with(g, &v, &h, &b, variant)?;
            data(&json!({
                "variant": variant,
                "mu_max": format_rational(&mu_max(g, &v, &h, &b)?),
                "omega_sq": bound,
            }))
        }
        Command::BmDivisor { v, h, b, u, omega, beta, limit } => {
            let v = parse_mukai(&v.v)?;
            let w = match (omega, limit, h, b, u) {
                (Some(om), None, _, _, _) => {
                    let beta = parse_rational_class(beta.as_deref().unwrap_or("0"))?;
                    bm_vector(g, &v, &parse_rational_class(om)?, &beta, h0)?
                }
                (None, Some(which), Some(h), _, None) => {
                    let h = ample(cfg, h)?;
                    let beta = match (beta, b) {
                        (Some(x), None) => parse_rational_class(x)?,
                        (None, Some(x)) => RationalNumClass::multiple(&parse_rational(x)?, &h),
                        (None, None) => RationalNumClass::zero(),
                        (Some(_), Some(_)) => return Err(Error::parse("give --beta or --b, not both")),
                    };
                    let which = match which {
                        LimitArg::Zero => Limit::Zero,
                        LimitArg::Infinity => Limit::Infinity,
                    };
                    bm_limit(g, &v, &h, &beta, which, h0)?
                }
                (None, None, Some(h), Some(b), Some(u)) => {
                    let h = ample(cfg, h)?;
                    bm_vector_slice(g, &v, &h, &parse_rational(b)?, &parse_rational(u)?, h0)?
                }
                _ => return Err(Error::parse("bm-divisor needs --H --b --u, --omega [--beta], or --H --limit [--b | --beta]")),
            };
            let theta = match hilbert_n(&v) {
                Some(n) => Some(theta_hilbert(&w.as_mukai(), n)?),
                None => None,
            };
            data(&json!({ "w": w, "vertical": w.is_vertical(), "theta": theta }))
        }
        Command::NefHilbert { n, d, a } => data(&nef_hilbert(g, &parse_rational_class(d)?, &parse_rational(a)?, *n, h0)?),
        Command::HilbertRays { n, h } => data(&hilbert_extremal_rays(g, &parse_class(h)?, *n, h0)?),
        Command::Classify(a) => data(&classify_moduli(g, &parse_mukai(&a.v)?)?),
        Command::Linsys { h } => data(&linsys_report(g, &parse_class(h)?, h0)?),
    }
}

fn render(outcome: &Outcome, format: Format) -> Result<String> {
    let value = match outcome {
        Outcome::Data(v) | Outcome::Diagram(v, _) => v,
    };
    match (format, outcome) {
        (Format::Json, _) => Ok(output::to_json(value)),
        (Format::Csv, _) => output::to_csv(value),
        (Format::Table, _) => output::to_table(value),
        (Format::Svg, Outcome::Diagram(_, d)) => render_svg(d),
        (Format::Svg, Outcome::Data(_)) => Err(Error::parse("svg output is only available for walls")),
    }
}

fn load_config(flag: Option<&PathBuf>, env_config: Option<&str>) -> Result<CliConfig> {
    match (flag, env_config) {
        (Some(p), _) => CliConfig::load(p),
        (None, Some(p)) if !p.is_empty() => CliConfig::load(std::path::Path::new(p)),
        _ => Ok(CliConfig::default()),
    }
}

fn run_parsed(cli: &Cli, env_config: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(cli.config.as_ref(), env_config)?;
    let format = cli.format.unwrap_or(cfg.output_format);
    let outcome = execute(&cfg, &cli.command)?;
    if let (Command::Walls { svg: Some(path), .. }, Outcome::Diagram(_, d)) = (&cli.command, &outcome) {
        std::fs::write(path, render_svg(d)?).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
    }
    let text = render(&outcome, format)?;
    out.write_all(text.as_bytes()).map_err(|e| Error::internal(format!("write: {e}")))
}

/// Runs one invocation. `argv[0]` is the program name; `env_config` is the
/// value of `ENRIQUES_STAB_CONFIG`, if set. Returns the exit code.
pub fn run(argv: &[String], env_config: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                1
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match run_parsed(&cli, env_config, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("enriques-stab").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn phi_command() {
        let (code, out, _) = call(&["phi", "--class", "1,1,0,0,0,0,0,0,0,0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 1);
        assert_eq!(v["witness"]["F"], json!([0, 1, 0, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["phi", "--bogus"]).0, 1);
        assert_eq!(call(&["phi", "--class", "1,2"]).0, 1);
        assert_eq!(call(&["phi", "--class", "1,-1,0,0,0,0,0,0,0,0"]).0, 2);
        assert_eq!(call(&["--config", "/nonexistent/cfg.json", "phi", "--class", "1,1,0,0,0,0,0,0,0,0"]).0, 3);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("hilbert-rays"));
    }

    #[test]
    fn hole_is_a_domain_exit() {
        let (code, _, err) = call(&["phase-cmp", "--v", "1:0:-3/2", "--w", "1:0,-1,0,0,0,0,0,0,0,0:1/2", "--H", "1,5,0,0,0,0,0,0,0,0", "--b", "-1/10", "--u", "9/100"]);
        assert_eq!(code, 2);
        assert!(err.contains("hole"));
    }

    #[test]
    fn hilbert_rays_command() {
        let (code, out, _) = call(&["hilbert-rays", "--n", "2", "--H", "1,5,0,0,0,0,0,0,0,0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["hc_ray"]["a"], "0");
        assert_eq!(v["flop_ray"]["a"], "1/2");
    }

    #[test]
    fn svg_requires_walls() {
        assert_eq!(call(&["--format", "svg", "phi", "--class", "1,1,0,0,0,0,0,0,0,0"]).0, 1);
        let (code, out, _) = call(&["--format", "svg", "walls", "--hilbert", "2", "--H", "1,5,0,0,0,0,0,0,0,0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("<?xml"));
    }
}

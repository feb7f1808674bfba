//! Command-line interface: evaluates the library and serializes results as
//! CSV or JSON for external plotting and analysis.
//!
//! The metric is fixed by the global flags `--i1` with `--i3` (or `--eta` as
//! an alternative, `I3 = I1/(1 + eta)`); exactly one subcommand runs per
//! invocation. Numbers are printed with 17 significant digits so outputs are
//! byte-stable across runs. Exit codes: 0 success, 2 usage or domain error,
//! 3 internal solver error.

use clap::{Parser, Subcommand, ValueEnum};
use so3cut::{
    cut_locus_mesh, cut_time, diameter, distance, invert_exp, sample_geodesic,
    su2_cut_locus_sample, wavefront, Covector, Error, LocusMesh, Metric, Preimage,
    SrCompareParams, SrQuantity, UnitQuaternion,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "so3cut",
    version,
    about = "Geodesics, cut loci, distances and the diameter for left-invariant \
             metrics on SO(3) with two equal eigenvalues"
)]
struct Cli {
    /// First metric eigenvalue I1 (= I2), positive.
    #[arg(long, global = true)]
    i1: Option<f64>,

    /// Third metric eigenvalue I3, positive. Alternative: --eta.
    #[arg(long, global = true, allow_negative_numbers = true)]
    i3: Option<f64>,

    /// Oblateness eta = I1/I3 - 1 (> -1), as an alternative to --i3.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "i3")]
    eta: Option<f64>,

    /// Output file path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one geodesic as CSV rows t,w,x,y,z.
    Geodesic {
        #[arg(long, allow_negative_numbers = true)]
        pbar3: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        azimuth: f64,
        #[arg(long = "t-end")]
        t_end: f64,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Cut time as CSV rows pbar3,cut_time,tau,stratum; one row for --pbar3,
    /// otherwise an n-point grid over [-1, 1].
    CutTime {
        #[arg(long, allow_negative_numbers = true)]
        pbar3: Option<f64>,
        #[arg(long, default_value_t = 101)]
        n: usize,
    },
    /// Sampled cut locus as CSV rows pbar3,azimuth,w,x,y,z,tag.
    CutLocus {
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Geodesic front at time t, same columns as cut-locus (tag "none").
    Wavefront {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Distance from the identity to a target quaternion, as JSON.
    Distance {
        #[arg(long, allow_negative_numbers = true)]
        w: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Diameter and farthest-point set, as JSON.
    Diameter,
    /// Sampled SU(2) cut locus (raw quaternions) as CSV.
    Su2Locus {
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Riemannian vs sub-Riemannian comparison as CSV rows
    /// eta,riemannian,sub_riemannian,abs_error.
    SrCompare {
        #[arg(long)]
        quantity: QuantityArg,
        /// Vertical covector component (geodesic_endpoint, conjugate_time).
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c: f64,
        /// Horizontal phase of the initial covector (geodesic_endpoint).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        /// Circle argument for cut_time_axis, in (0, 2 pi).
        #[arg(long = "arg-alpha", default_value_t = std::f64::consts::FRAC_PI_2)]
        arg_alpha: f64,
        /// Target modulus for cut_time_plane, in [0, 1).
        #[arg(long = "alpha-norm", default_value_t = 0.5)]
        alpha_norm: f64,
        /// Oblateness values, decreasing toward -1.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_values_t = vec![-0.9, -0.99, -0.999, -0.9999]
        )]
        etas: Vec<f64>,
        /// Time samples for the geodesic_endpoint sup.
        #[arg(long = "n-t", default_value_t = 201)]
        n_t: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    #[value(name = "geodesic_endpoint")]
    GeodesicEndpoint,
    #[value(name = "conjugate_time")]
    ConjugateTime,
    #[value(name = "cut_time_axis")]
    CutTimeAxis,
    #[value(name = "cut_time_plane")]
    CutTimePlane,
    #[value(name = "cut_locus_hausdorff")]
    CutLocusHausdorff,
}

impl From<QuantityArg> for SrQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::GeodesicEndpoint => SrQuantity::GeodesicEndpoint,
            QuantityArg::ConjugateTime => SrQuantity::ConjugateTime,
            QuantityArg::CutTimeAxis => SrQuantity::CutTimeAxis,
            QuantityArg::CutTimePlane => SrQuantity::CutTimePlane,
            QuantityArg::CutLocusHausdorff => SrQuantity::CutLocusHausdorff,
        }
    }
}

/// 17 significant digits, stable across runs.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn metric_from_flags(cli: &Cli) -> Result<Metric, CliError> {
    let i1 = cli
        .i1
        .ok_or_else(|| CliError::Usage("missing required flag --i1".to_string()))?;
    match (cli.i3, cli.eta) {
        (Some(i3), None) => Ok(Metric::new(i1, i3)?),
        (None, Some(eta)) => Ok(Metric::from_oblateness(i1, eta)?),
        (None, None) => Err(CliError::Usage(
            "one of --i3 or --eta is required".to_string(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn mesh_csv(mesh: &LocusMesh) -> String {
    let mut out = String::from("pbar3,azimuth,w,x,y,z,tag\n");
    for p in &mesh.points {
        let tag = p.tag.map_or("none", |t| t.as_str());
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            num(p.pbar3),
            num(p.azimuth),
            num(p.quaternion.w),
            num(p.quaternion.x),
            num(p.quaternion.y),
            num(p.quaternion.z),
            tag,
        ));
    }
    out
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let metric = metric_from_flags(cli)?;

    match &cli.command {
        Command::Geodesic {
            pbar3,
            azimuth,
            t_end,
            n,
        } => {
            let p = Covector::from_angles(&metric, *pbar3, *azimuth)?;
            let sample = sample_geodesic(&metric, &p, *t_end, *n)?;
            let mut out = String::from("t,w,x,y,z\n");
            for (t, q) in &sample.points {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(*t),
                    num(q.w),
                    num(q.x),
                    num(q.y),
                    num(q.z)
                ));
            }
            Ok(out)
        }
        Command::CutTime { pbar3, n } => {
            let mut out = String::from("pbar3,cut_time,tau,stratum\n");
            let values: Vec<f64> = match pbar3 {
                Some(v) => vec![*v],
                None => (0..*n)
                    .map(|i| -1.0 + 2.0 * i as f64 / (*n - 1).max(1) as f64)
                    .collect(),
            };
            for v in values {
                let report = cut_time(&metric, v)?;
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    num(v),
                    num(report.cut_time),
                    num(report.tau_at_cut),
                    report.stratum.as_str()
                ));
            }
            Ok(out)
        }
        Command::CutLocus { n } => Ok(mesh_csv(&cut_locus_mesh(&metric, *n)?)),
        Command::Wavefront { t, n } => Ok(mesh_csv(&wavefront(&metric, *t, *n)?)),
        Command::Distance { w, x, y, z } => {
            if w * w + x * x + y * y + z * z == 0.0 {
                return Err(CliError::Usage(
                    "target quaternion must be nonzero".to_string(),
                ));
            }
            let target = UnitQuaternion::normalized(*w, *x, *y, *z);
            let d = distance(&metric, &target)?;
            let (cov, time, residual, on_cut) = if d == 0.0 {
                (Covector::new(0.0, 0.0, 0.0), 0.0, 0.0, false)
            } else {
                match invert_exp(&metric, &target)? {
                    Preimage::Interior(s) => (s.covector, s.time, s.residual, false),
                    Preimage::CutBoundary { time, solutions } => {
                        let s = solutions[0];
                        (s.covector, time, s.residual, true)
                    }
                }
            };
            Ok(format!(
                "{{\"distance\": {}, \"covector\": {{\"p1\": {}, \"p2\": {}, \"p3\": {}}}, \
                 \"time\": {}, \"residual\": {}, \"on_cut_locus\": {}}}\n",
                num(d),
                num(cov.p1),
                num(cov.p2),
                num(cov.p3),
                num(time),
                num(residual),
                on_cut
            ))
        }
        Command::Diameter => {
            let report = diameter(&metric);
            let reps: Vec<String> = report
                .representatives
                .iter()
                .map(|r| {
                    format!(
                        "{{\"axis\": [{}, {}, {}], \"angle\": {}}}",
                        num(r.axis()[0]),
                        num(r.axis()[1]),
                        num(r.axis()[2]),
                        num(r.angle())
                    )
                })
                .collect();
            Ok(format!(
                "{{\"value\": {}, \"farthest_kind\": \"{}\", \"representatives\": [{}]}}\n",
                num(report.value),
                report.farthest.as_str(),
                reps.join(", ")
            ))
        }
        Command::Su2Locus { n } => {
            let samples = su2_cut_locus_sample(&metric, *n)?;
            let mut out = String::from("pbar3,azimuth,w,x,y,z,tag\n");
            for s in samples {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    num(s.pbar3),
                    num(s.azimuth),
                    num(s.quaternion.w),
                    num(s.quaternion.x),
                    num(s.quaternion.y),
                    num(s.quaternion.z),
                    s.tag.as_str(),
                ));
            }
            Ok(out)
        }
        Command::SrCompare {
            quantity,
            c,
            theta,
            arg_alpha,
            alpha_norm,
            etas,
            n_t,
        } => {
            let params = SrCompareParams {
                c: *c,
                theta: *theta,
                arg_alpha: *arg_alpha,
                alpha_norm: *alpha_norm,
                n_t: *n_t,
            };
            let rows =
                so3cut::convergence_report(metric.i1(), (*quantity).into(), etas, &params)?;
            let mut out = String::from("eta,riemannian,sub_riemannian,abs_error\n");
            for row in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    num(row.eta),
                    num(row.riemannian_value),
                    num(row.sr_value),
                    num(row.abs_error)
                ));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

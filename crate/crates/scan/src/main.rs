use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quench_qgt::export::format_csv_value;
use quench_qgt::{
    bz_integral_im_qkt, diagnose, gtt_peak_report, reference_protocols, run_scan, write, Format,
    Result, ScanError, Settings, VERIFY_TOLERANCE,
};
use quench_qgt_core::grid::TimeGrid;

/// Post-quench quantum geometric tensor of the SSH chain.
#[derive(Parser)]
#[command(name = "quench-qgt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate components over a (k, t) grid and export them.
    Scan {
        #[command(flatten)]
        opts: Opts,
        /// Cross-check a random 1% of the grid against finite differences.
        #[arg(long)]
        fd_verify: bool,
    },
    /// Scan with verification on and report the finite-difference residual.
    Verify {
        #[command(flatten)]
        opts: Opts,
    },
    /// Brillouin-zone integral of Im Q_kt at each time node.
    Integrate {
        #[command(flatten)]
        opts: Opts,
    },
    /// Peak of g_tt over k; the four reference quenches unless --mi/--mf are set.
    Peaks {
        #[command(flatten)]
        opts: Opts,
    },
    /// Boundary sign analysis of the initial Im Q_kt near k = -π.
    Diagnose {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Default)]
struct Opts {
    /// Flat key=value file; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    mi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mf: Option<f64>,
    #[arg(long)]
    j2: Option<f64>,
    #[arg(long)]
    k_points: Option<usize>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    /// Comma separated, e.g. g_kk,g_tt,im_qkt
    #[arg(long)]
    components: Option<String>,
    #[arg(long)]
    fd_step: Option<f64>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Seed for the verification subsample.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

impl Opts {
    fn settings(&self) -> Result<Settings> {
        let file = match &self.config {
            Some(path) => Settings::parse(&fs::read_to_string(path)?)?,
            None => Settings::default(),
        };
        let flags = Settings {
            mi: self.mi,
            mf: self.mf,
            j2: self.j2,
            k_points: self.k_points,
            t_max: self.t_max,
            t_points: self.t_points,
            components: self.components.as_deref().map(quench_qgt::config::parse_components).transpose()?,
            fd_step: self.fd_step,
            fd_verify: None,
            format: self.format.as_deref().map(str::parse).transpose()?,
            out: self.out.clone(),
            seed: self.seed,
            threads: self.threads,
        };
        Ok(file.overridden_by(flags))
    }
}

fn output(settings: &Settings) -> Result<Box<dyn Write>> {
    Ok(match &settings.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

const REPORT_K_POINTS: usize = 512;

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Scan { opts, fd_verify } => {
            let mut settings = opts.settings()?;
            if fd_verify {
                settings.fd_verify = Some(true);
            }
            let cfg = settings.scan_config()?;
            let result = run_scan(&cfg)?;
            write(&result, cfg.format, output(&settings)?)?;
            if let Some(v) = &result.metadata.verification {
                if v.max_residual >= VERIFY_TOLERANCE {
                    return Err(ScanError::Verification { residual: v.max_residual, tolerance: VERIFY_TOLERANCE });
                }
            }
        }
        Command::Verify { opts } => {
            let mut settings = opts.settings()?;
            settings.fd_verify = Some(true);
            let cfg = settings.scan_config()?;
            let v = run_scan(&cfg)?.metadata.verification.expect("verification requested");
            let mut out = output(&settings)?;
            writeln!(out, "fd_step,seed,samples,max_residual")?;
            writeln!(out, "{},{},{},{}", v.fd_step, v.seed, v.samples, format_csv_value(v.max_residual))?;
            out.flush()?;
            if v.max_residual >= VERIFY_TOLERANCE {
                return Err(ScanError::Verification { residual: v.max_residual, tolerance: VERIFY_TOLERANCE });
            }
        }
        Command::Integrate { opts } => {
            let settings = opts.settings()?;
            let cfg = settings.scan_config()?;
            let k_points = settings.k_points.unwrap_or(REPORT_K_POINTS);
            let mut out = output(&settings)?;
            writeln!(out, "t,integral")?;
            for t in (TimeGrid { t_max: cfg.t_max, points: cfg.t_points }).nodes() {
                let v = bz_integral_im_qkt(&cfg.proto, t, k_points)?;
                writeln!(out, "{},{}", format_csv_value(t), format_csv_value(v))?;
            }
            out.flush()?;
        }
        Command::Peaks { opts } => {
            let settings = opts.settings()?;
            let protocols = if settings.mi.is_some() || settings.mf.is_some() {
                vec![settings.protocol()?]
            } else {
                reference_protocols()
            };
            let report = gtt_peak_report(&protocols, settings.k_points.unwrap_or(REPORT_K_POINTS))?;
            let mut out = output(&settings)?;
            match settings.format.unwrap_or_default() {
                Format::Json => {
                    serde_json::to_writer(&mut out, &report)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    writeln!(out, "m_i,m_f,j2,height,argmax_k")?;
                    for e in &report.entries {
                        let p = e.protocol;
                        writeln!(out, "{},{},{},{},{}", p.m_i, p.m_f, p.j2, format_csv_value(e.height), format_csv_value(e.argmax_k))?;
                    }
                }
            }
            out.flush()?;
            eprintln!("strictly increasing: {}", report.strictly_increasing);
        }
        Command::Diagnose { opts } => {
            let settings = opts.settings()?;
            let d = diagnose(&settings.protocol()?)?;
            let mut out = output(&settings)?;
            let r = d.report;
            writeln!(out, "a_i sign near k=-pi:    {}", r.a_i_sign_near_pi.symbol())?;
            writeln!(out, "D sign for k<0:         {}", r.d_sign_negative_k.symbol())?;
            writeln!(out, "predicted Im Q_kt(t=0): {}", r.initial_im_qkt_sign_negative_k.symbol())?;
            writeln!(out, "direct Im Q_kt at k={}: {}", d.probe_k, format_csv_value(d.direct_im_qkt))?;
            writeln!(out, "agrees: {}", d.agrees)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

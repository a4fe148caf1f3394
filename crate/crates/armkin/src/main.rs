// Copyright 2026 the Armkin Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use armkin::format::{fmt_num, write_sweep_csv};
use armkin::service::{self, solve_json, unreachable_json};
use armkin::{
    brute_force_components, classify_connectivity, normalize_arm, path_class, reach_closed, solve,
    state_block, sweep, ArmError, ArmSpec, Connectivity, EndEffectorTarget,
};

#[derive(Parser)]
#[command(name = "armkin", version, about = "Planar arm kinematics toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the reach interval.
    Reach {
        /// Segment lengths, base first, comma separated.
        #[arg(long)]
        lengths: ArmSpec,
    },
    /// Print component count, state block and path class at base length z.
    Classify {
        #[arg(long)]
        lengths: ArmSpec,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
    },
    /// Solve for an end-effector target.
    Solve {
        #[arg(long)]
        lengths: ArmSpec,
        /// Target as `x,y`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_target)]
        target: (f64, f64),
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write both inverse kinematics over a grid of base lengths as CSV.
    Sweep {
        #[arg(long)]
        lengths: ArmSpec,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the JSON service. ARMKIN_PORT takes precedence over --port.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
    /// Count components by brute force (at most 5 segments).
    Oracle {
        #[arg(long)]
        lengths: ArmSpec,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

fn parse_target(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y] = parts[..] else {
        return Err(format!("expected 'x,y', got '{s}'"));
    };
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| format!("invalid coordinate '{t}'"))
    };
    Ok((num(x)?, num(y)?))
}

enum Failure {
    Invalid(String),
    Io(io::Error),
}

impl From<ArmError> for Failure {
    fn from(e: ArmError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match cmd {
        Cmd::Reach { lengths } => {
            let r = reach_closed(lengths.lengths())?;
            writeln!(out, "lo={} hi={}", fmt_num(r.lo), fmt_num(r.hi))?;
        }
        Cmd::Classify { lengths, z } => {
            let arm = normalize_arm(&lengths);
            let class = path_class(&arm);
            let conn = classify_connectivity(&arm, z)?;
            let block = if conn == Connectivity::Infeasible {
                "UNREACHABLE"
            } else {
                state_block(&arm, z)?.label()
            };
            writeln!(
                out,
                "components={} block={block} class={class}",
                conn.components()
            )?;
        }
        Cmd::Solve {
            lengths,
            target,
            format,
        } => {
            let target = EndEffectorTarget::new(target.0, target.1)?;
            match format {
                Format::Json => {
                    let body = match solve_json(&lengths, target) {
                        Err(ArmError::Unreachable { z, lo, hi }) => unreachable_json(z, lo, hi),
                        other => other?,
                    };
                    writeln!(out, "{body}")?;
                }
                Format::Csv => match solve(&lengths, target) {
                    Err(ArmError::Unreachable { lo, hi, .. }) => {
                        writeln!(out, "status,lo,hi")?;
                        writeln!(out, "unreachable,{},{}", fmt_num(lo), fmt_num(hi))?;
                    }
                    other => {
                        let s = other?;
                        let header: Vec<String> =
                            (0..lengths.n()).map(|j| format!("theta{j}")).collect();
                        writeln!(out, "component,{}", header.join(","))?;
                        for (i, c) in s.configurations.iter().enumerate() {
                            let angles: Vec<String> =
                                c.angles().iter().map(|a| fmt_num(*a)).collect();
                            writeln!(out, "{},{}", i + 1, angles.join(","))?;
                        }
                    }
                },
            }
        }
        Cmd::Sweep {
            lengths,
            from,
            to,
            steps,
            out: path,
        } => {
            let rows = sweep(&lengths, from, to, steps)?;
            match path {
                Some(p) => write_sweep_csv(BufWriter::new(File::create(p)?), &rows)?,
                None => write_sweep_csv(&mut out, &rows)?,
            }
        }
        Cmd::Serve { port, host } => {
            let port = match std::env::var("ARMKIN_PORT") {
                Ok(v) => v
                    .parse()
                    .map_err(|_| Failure::Invalid(format!("invalid ARMKIN_PORT '{v}'")))?,
                Err(_) => port,
            };
            let addr = SocketAddr::new(host, port);
            eprintln!("listening on http://{addr}");
            tokio::runtime::Runtime::new()?.block_on(service::serve(addr))?;
        }
        Cmd::Oracle {
            lengths,
            z,
            resolution,
        } => {
            let count = brute_force_components(&lengths, z, resolution)?;
            writeln!(out, "components={count}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

use std::collections::BTreeMap;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qparticle_cli::{
    cmd_acse, cmd_check_rdm, cmd_fci, cmd_integrals, read_config_file, CliError, CliResult, InputSource, RunConfig,
};

#[derive(Parser)]
#[command(name = "qparticle", version, about = "Fermionic vs qubit-particle ACSE on small molecules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute MO integrals of a closed-shell molecule and write an FCIDUMP.
    Integrals {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        /// FCIDUMP file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the ACSE solver and write traces, 2-RDMs and a summary.
    Acse(Box<AcseArgs>),
    /// Exact ground-state energy in the input's particle-number and spin sector.
    Fci {
        #[command(flatten)]
        input: InputArgs,
        /// Write the ground-state amplitudes to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// N-representability report for a 2-RDM dump.
    CheckRdm {
        #[arg(long)]
        rdm: PathBuf,
        /// Electron count; defaults to the value in the dump header.
        #[arg(long)]
        nelec: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long, requires = "basis", conflicts_with = "fcidump")]
    geometry: Option<PathBuf>,
    #[arg(long, requires = "geometry")]
    basis: Option<PathBuf>,
    #[arg(long)]
    fcidump: Option<PathBuf>,
}

impl InputArgs {
    fn source(&self) -> CliResult<InputSource> {
        match (&self.geometry, &self.basis, &self.fcidump) {
            (Some(g), Some(b), None) => Ok(InputSource::Molecule { geometry: g.clone(), basis: b.clone() }),
            (None, None, Some(f)) => Ok(InputSource::Fcidump(f.clone())),
            _ => Err(CliError::usage("give either --geometry/--basis or --fcidump")),
        }
    }
}

#[derive(Args)]
struct AcseArgs {
    /// File of `key = value` lines; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    geometry: Option<String>,
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    fcidump: Option<String>,
    /// fermionic, qubit or both.
    #[arg(long)]
    encoding: Option<String>,
    #[arg(long)]
    epsilon0: Option<String>,
    /// on or off.
    #[arg(long)]
    line_search: Option<String>,
    /// steepest or conjugate.
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    #[arg(long)]
    residual_tol: Option<String>,
    #[arg(long)]
    energy_tol: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated subset of csv,json.
    #[arg(long)]
    format: Option<String>,
}

impl AcseArgs {
    fn settings(&self) -> CliResult<BTreeMap<String, String>> {
        let mut map = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("geometry", &self.geometry),
            ("basis", &self.basis),
            ("fcidump", &self.fcidump),
            ("encoding", &self.encoding),
            ("epsilon0", &self.epsilon0),
            ("line_search", &self.line_search),
            ("direction", &self.direction),
            ("max_iters", &self.max_iters),
            ("residual_tol", &self.residual_tol),
            ("energy_tol", &self.energy_tol),
            ("out", &self.out),
            ("format", &self.format),
        ];
        // an explicit input flag replaces whichever input the file named
        if self.fcidump.is_some() {
            map.remove("geometry");
            map.remove("basis");
        } else if self.geometry.is_some() || self.basis.is_some() {
            map.remove("fcidump");
        }
        for (key, value) in flags {
            if let Some(v) = value {
                map.insert(key.to_string(), v.clone());
            }
        }
        Ok(map)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let stdout = io::stdout().lock();
    match cli.command {
        Command::Integrals { geometry, basis, out } => cmd_integrals(&geometry, &basis, &out, stdout).map(drop),
        Command::Acse(args) => {
            let cfg = RunConfig::from_map(&args.settings()?)?;
            cmd_acse(&cfg, stdout).map(drop)
        }
        Command::Fci { input, dump } => cmd_fci(&input.source()?, dump.as_deref(), stdout).map(drop),
        Command::CheckRdm { rdm, nelec, json } => cmd_check_rdm(&rdm, nelec, json, stdout).map(drop),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
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

//! Command implementations behind the `qparticle` binary.
//!
//! Every command writes its human-readable output to a caller-supplied writer
//! so the same code paths are exercised by the binary and by tests.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use qparticle::acse::{acse_solve, fci_ground_state, AnsatzTrace, SearchDirection, SolverConfig, StopReason};
use qparticle::chem::{
    fcidump_read, fcidump_write, prepare_system, spin_orbital_expand, BasisSet, Geometry, IntegralSet, ScfOptions,
};
use qparticle::rdm::{n_rep_check, NRepReport, NRepTolerances, TwoRDM};
use qparticle::secondq::Statistics;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Usage = 1,
    Io = 2,
    Numerical = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Usage, message: message.into() }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        CliError { kind: ExitKind::Io, message: format!("{}: {err}", path.display()) }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<qparticle::Error> for CliError {
    fn from(e: qparticle::Error) -> Self {
        use qparticle::Error as E;
        let kind = match &e {
            E::Io(_) => ExitKind::Io,
            E::ScfNotConverged { .. } | E::SingularOverlap(_) | E::WrongSector { .. } => ExitKind::Numerical,
            _ => ExitKind::Usage,
        };
        CliError { kind, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn with_path<T>(path: &Path, r: qparticle::Result<T>) -> CliResult<T> {
    r.map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    Molecule { geometry: PathBuf, basis: PathBuf },
    Fcidump(PathBuf),
}

/// Spin-orbital integrals with the electron count and spin sector.
#[derive(Clone, Debug)]
pub struct LoadedSystem {
    pub ints: IntegralSet,
    pub n_electrons: usize,
    pub ms2: i32,
}

pub fn load_geometry(path: &Path) -> CliResult<Geometry> {
    with_path(path, Geometry::parse(open(path)?))
}

pub fn load_basis(path: &Path) -> CliResult<BasisSet> {
    with_path(path, BasisSet::parse(open(path)?))
}

pub fn load_system(input: &InputSource) -> CliResult<LoadedSystem> {
    match input {
        InputSource::Molecule { geometry, basis } => {
            let geom = load_geometry(geometry)?;
            let basis = load_basis(basis)?;
            let sys = prepare_system(&geom, &basis, &ScfOptions::default())?;
            Ok(LoadedSystem { ints: sys.spin_orbital, n_electrons: sys.n_electrons, ms2: 0 })
        }
        InputSource::Fcidump(path) => {
            if !path.exists() {
                return Err(CliError::io(path, io::Error::from(io::ErrorKind::NotFound)));
            }
            let dump = with_path(path, fcidump_read(path))?;
            let ints = spin_orbital_expand(&dump.ints)?;
            Ok(LoadedSystem { ints, n_electrons: dump.n_electrons, ms2: dump.ms2 })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub input: InputSource,
    pub encodings: Vec<Statistics>,
    pub solver: SolverConfig,
    pub out: PathBuf,
    pub formats: Formats,
}

/// Keys accepted in a config file; the matching command-line flag is the key
/// with `_` replaced by `-`.
pub const CONFIG_KEYS: &[&str] = &[
    "geometry",
    "basis",
    "fcidump",
    "encoding",
    "epsilon0",
    "line_search",
    "direction",
    "max_iters",
    "residual_tol",
    "energy_tol",
    "out",
    "format",
];

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
pub fn parse_config_text(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::usage(format!("config line {}: expected `key = value`", i + 1)));
        };
        let key = k.trim().to_string();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

pub fn read_config_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| CliError::usage(format!("invalid value for {key}: `{v}`")))
}

impl RunConfig {
    /// Builds a config from merged key/value settings (flags already applied).
    pub fn from_map(map: &BTreeMap<String, String>) -> CliResult<RunConfig> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let input = match (get("geometry"), get("basis"), get("fcidump")) {
            (Some(g), Some(b), None) => InputSource::Molecule { geometry: g.into(), basis: b.into() },
            (None, None, Some(f)) => InputSource::Fcidump(f.into()),
            (Some(_), None, None) | (None, Some(_), None) => {
                return Err(CliError::usage("--geometry and --basis must be given together"))
            }
            (None, None, None) => return Err(CliError::usage("no input: give --geometry/--basis or --fcidump")),
            _ => return Err(CliError::usage("give either --geometry/--basis or --fcidump, not both")),
        };
        let encodings = match get("encoding").unwrap_or("both") {
            "fermionic" => vec![Statistics::Fermionic],
            "qubit" => vec![Statistics::QubitParticle],
            "both" => vec![Statistics::Fermionic, Statistics::QubitParticle],
            other => return Err(CliError::usage(format!("invalid encoding `{other}` (fermionic|qubit|both)"))),
        };
        let mut solver = SolverConfig::default();
        if let Some(v) = get("epsilon0") {
            solver.epsilon0 = parse_value("epsilon0", v)?;
        }
        if let Some(v) = get("line_search") {
            solver.line_search = match v {
                "on" | "true" => true,
                "off" | "false" => false,
                _ => return Err(CliError::usage(format!("invalid line_search `{v}` (on|off)"))),
            };
        }
        if let Some(v) = get("direction") {
            solver.direction = match v {
                "steepest" => SearchDirection::Steepest,
                "conjugate" => SearchDirection::Conjugate,
                _ => return Err(CliError::usage(format!("invalid direction `{v}` (steepest|conjugate)"))),
            };
        }
        if let Some(v) = get("max_iters") {
            solver.max_iterations = parse_value("max_iters", v)?;
        }
        if let Some(v) = get("residual_tol") {
            solver.residual_tol = parse_value("residual_tol", v)?;
        }
        if let Some(v) = get("energy_tol") {
            solver.energy_tol = parse_value("energy_tol", v)?;
        }
        solver.validate()?;
        let mut formats = Formats { csv: false, json: false };
        for f in get("format").unwrap_or("csv,json").split(',').map(str::trim) {
            match f {
                "csv" => formats.csv = true,
                "json" => formats.json = true,
                _ => return Err(CliError::usage(format!("unknown output format `{f}` (csv,json)"))),
            }
        }
        Ok(RunConfig { input, encodings, solver, out: get("out").unwrap_or(".").into(), formats })
    }
}

/// Fixed-width scientific notation with 15 significant digits.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

pub const TRACE_HEADER: &str =
    "iteration,energy_hartree,abs_error_vs_fci,log10_error,residual_norm,cumulative_cnots,epsilon";

pub fn write_trace_csv<W: Write>(trace: &AnsatzTrace, e_fci: f64, mut w: W) -> io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for r in &trace.records {
        let err = (r.energy - e_fci).abs();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.iteration,
            sig15(r.energy),
            sig15(err),
            sig15(err.log10()),
            sig15(r.residual_norm),
            r.cumulative_cnots,
            sig15(r.epsilon)
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralsSummary {
    pub norb: usize,
    pub nelec: usize,
    pub e_nuc: f64,
    pub e_hf: f64,
    pub scf_iterations: usize,
}

/// Writes the MO-basis FCIDUMP of a closed-shell molecule.
pub fn cmd_integrals<W: Write>(geometry: &Path, basis: &Path, out: &Path, mut w: W) -> CliResult<IntegralsSummary> {
    let geom = load_geometry(geometry)?;
    let basis = load_basis(basis)?;
    let sys = prepare_system(&geom, &basis, &ScfOptions::default())?;
    with_path(out, fcidump_write(&sys.mo, sys.n_electrons, out))?;
    let summary = IntegralsSummary {
        norb: sys.mo.n_orb,
        nelec: sys.n_electrons,
        e_nuc: sys.mo.e_nuc,
        e_hf: sys.scf.energy,
        scf_iterations: sys.scf.iterations,
    };
    writeln!(w, "norb = {}", summary.norb).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    writeln!(w, "nelec = {}", summary.nelec).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    writeln!(w, "e_nuc = {}", summary.e_nuc).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    writeln!(w, "e_hf = {}", summary.e_hf).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    Ok(summary)
}

/// Lowest eigenvalue in the input's (N, MS2) sector, total energy in Hartree.
/// Optionally writes the embedded eigenvector as an amplitude dump.
pub fn cmd_fci<W: Write>(input: &InputSource, dump: Option<&Path>, mut w: W) -> CliResult<f64> {
    let sys = load_system(input)?;
    let (energy, state) = fci_ground_state(&sys.ints, sys.n_electrons, sys.ms2)?;
    if let Some(path) = dump {
        let mut f = create(path)?;
        state.write_amplitudes(&mut f).and_then(|_| f.flush()).map_err(|e| CliError::io(path, e))?;
    }
    writeln!(w, "{energy}").map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    Ok(energy)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub encoding: String,
    pub final_energy: f64,
    pub abs_error: f64,
    pub iterations: usize,
    pub converged: bool,
    pub stop_reason: String,
    pub total_cnots: usize,
    pub n_representability: NRepReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcseSummary {
    pub n_electrons: usize,
    pub num_spin_orbitals: usize,
    pub reference_energy: f64,
    pub fci_energy: f64,
    pub converged: bool,
    pub runs: Vec<RunSummary>,
}

fn stop_label(s: StopReason) -> &'static str {
    match s {
        StopReason::ResidualTolerance => "residual_tol",
        StopReason::EnergyTolerance => "energy_tol",
        StopReason::MaxIterations => "max_iterations",
    }
}

pub fn trace_file_name(enc: Statistics) -> String {
    format!("trace_{enc}.csv")
}

pub fn rdm_file_name(enc: Statistics) -> String {
    format!("rdm_{enc}.txt")
}

pub const SUMMARY_FILE: &str = "summary.json";

/// Runs the solver for each requested encoding and writes traces, final
/// 2-RDM dumps and the summary into `cfg.out`.
pub fn cmd_acse<W: Write>(cfg: &RunConfig, mut w: W) -> CliResult<AcseSummary> {
    let sys = load_system(&cfg.input)?;
    fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))?;
    let (e_fci, _) = fci_ground_state(&sys.ints, sys.n_electrons, sys.ms2)?;

    let outcomes = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .encodings
            .iter()
            .map(|&enc| {
                let solver = SolverConfig { encoding: enc, ..cfg.solver.clone() };
                let ints = &sys.ints;
                scope.spawn(move || acse_solve(ints, sys.n_electrons, &solver))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Vec<_>>()
    });

    let mut runs = Vec::new();
    let mut reference_energy = f64::NAN;
    for (&enc, outcome) in cfg.encodings.iter().zip(outcomes) {
        let outcome = outcome?;
        reference_energy = outcome.trace.initial_energy;
        if cfg.formats.csv {
            let path = cfg.out.join(trace_file_name(enc));
            let mut f = create(&path)?;
            write_trace_csv(&outcome.trace, e_fci, &mut f).and_then(|_| f.flush()).map_err(|e| CliError::io(&path, e))?;
        }
        let path = cfg.out.join(rdm_file_name(enc));
        let mut f = create(&path)?;
        with_path(&path, outcome.rdm.write_dump(&mut f))?;
        f.flush().map_err(|e| CliError::io(&path, e))?;

        let report = n_rep_check(&outcome.rdm, &NRepTolerances::default());
        runs.push(RunSummary {
            encoding: enc.to_string(),
            final_energy: outcome.energy,
            abs_error: (outcome.energy - e_fci).abs(),
            iterations: outcome.trace.records.len(),
            converged: outcome.trace.converged(),
            stop_reason: stop_label(outcome.trace.stop_reason).to_string(),
            total_cnots: outcome.trace.total_cnots(),
            n_representability: report,
        });
    }
    let summary = AcseSummary {
        n_electrons: sys.n_electrons,
        num_spin_orbitals: sys.ints.n_orb,
        reference_energy,
        fci_energy: e_fci,
        converged: runs.iter().all(|r| r.converged),
        runs,
    };
    if cfg.formats.json {
        let path = cfg.out.join(SUMMARY_FILE);
        let mut f = create(&path)?;
        serde_json::to_writer_pretty(&mut f, &summary)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(f))
            .and_then(|_| f.flush())
            .map_err(|e| CliError::io(&path, e))?;
    }
    let stdout_err = |e| CliError::io(Path::new("<stdout>"), e);
    writeln!(w, "e_fci = {}", summary.fci_energy).map_err(stdout_err)?;
    for r in &summary.runs {
        writeln!(
            w,
            "{}: e = {} |error| = {:.3e} iterations = {} cnots = {} converged = {} n_rep = {}",
            r.encoding,
            r.final_energy,
            r.abs_error,
            r.iterations,
            r.total_cnots,
            r.converged,
            if r.n_representability.all_pass() { "pass" } else { "fail" },
        )
        .map_err(stdout_err)?;
    }
    Ok(summary)
}

/// N-representability report for a 2-RDM dump. `n_electrons` overrides the
/// value stored in the dump header.
pub fn cmd_check_rdm<W: Write>(
    path: &Path,
    n_electrons: Option<usize>,
    json: bool,
    mut w: W,
) -> CliResult<NRepReport> {
    let mut rdm: TwoRDM = with_path(path, TwoRDM::read_dump(open(path)?))?;
    if let Some(n) = n_electrons {
        rdm.n_electrons = n;
    }
    let report = n_rep_check(&rdm, &NRepTolerances::default());
    let text = if json {
        serde_json::to_string_pretty(&report).expect("plain struct") + "\n"
    } else {
        report.to_key_value()
    };
    w.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn config_text() {
        let m = parse_config_text("# run\nfcidump = h4.fcidump\n\nmax_iters = 30  # short\n").unwrap();
        assert_eq!(m["fcidump"], "h4.fcidump");
        assert_eq!(m["max_iters"], "30");
        assert!(parse_config_text("colour = blue").is_err());
        assert!(parse_config_text("fcidump").is_err());
    }

    #[test]
    fn run_config_validation() {
        let cfg = RunConfig::from_map(&map(&[("fcidump", "x"), ("encoding", "qubit"), ("line_search", "off")])).unwrap();
        assert_eq!(cfg.encodings, vec![Statistics::QubitParticle]);
        assert!(!cfg.solver.line_search);
        assert_eq!(cfg.formats, Formats { csv: true, json: true });

        let bad = [
            vec![("fcidump", "x"), ("max_iters", "0")],
            vec![("fcidump", "x"), ("geometry", "g"), ("basis", "b")],
            vec![("geometry", "g")],
            vec![],
            vec![("fcidump", "x"), ("encoding", "bosonic")],
            vec![("fcidump", "x"), ("format", "xml")],
            vec![("fcidump", "x"), ("energy_tol", "-1")],
        ];
        for b in bad {
            let err = RunConfig::from_map(&map(&b)).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{b:?}");
        }
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(-2.180505591602938), "-2.18050559160294e0");
        assert_eq!(sig15(1e-7), "1.00000000000000e-7");
    }
}

//! Command-line driver. All randomness comes from `--seed`; output starts with a version header
//! and is identical for identical arguments.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::fixtures::{family, random_symbols, Setting};
use crate::linalg::fmt_rational;
use crate::qg::{build_qg_finite, component_of, gl_component, torus_component, GroupDatum, Label, QgError, QgQuiver};
use crate::quiver::{decompose_indecomposables, random_rep, Quiver, QuiverFile, Representation, RepresentationFile};
use crate::schofield::{coweight_of, restricted_span_dim, schofield_c, span_dim, transformation_check, weight_of};
use crate::schur::{schur_idempotents, schur_idempotents_general, DEFAULT_TENSOR_BUDGET};
use crate::smash::{build_idempotent_data, rc_apply, rc_symbolic, tc_apply, IdempotentData};
use crate::suites::{self, kronecker_alpha, SUITES};

pub const HEADER: &str = "# qgsmash-output v1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Json(PathBuf, serde_json::Error),
    #[error("unknown setting {0:?}; known settings: {1}")]
    Setting(String, String),
    #[error("unknown family {0:?}")]
    Family(String),
    #[error("bad vertex {0:?}: expected base:label, e.g. 2:[1]")]
    Vertex(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "qgsmash", version, about = "Q_G quivers, lifted functors and Schofield semi-invariants, exactly")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q_G construction.
    #[command(subcommand)]
    Qg(QgCmd),
    /// The symbolic matrices of R_c.
    #[command(subcommand)]
    Rc(RcCmd),
    /// T_c of a representation of Q.
    #[command(subcommand)]
    Tc(TcCmd),
    /// Schofield semi-invariants.
    #[command(subcommand)]
    Semiinv(SemiinvCmd),
    /// Schur algebra idempotents.
    #[command(subcommand)]
    Idempotents(IdemCmd),
    /// Run a verification suite (or "all"); exit code 0 iff every check passes.
    Verify {
        suite: String,
    },
}

/// A component, either a named setting or files plus a vertex.
#[derive(Debug, Args)]
pub struct Source {
    /// One of the built-in settings (see `--setting help`).
    #[arg(long, conflicts_with_all = ["quiver", "datum"])]
    pub setting: Option<String>,
    /// Quiver file (JSON: vertices, arrows as [name, tail, head]).
    #[arg(long, requires = "datum")]
    pub quiver: Option<PathBuf>,
    /// Group datum file (JSON, tagged by "kind": finite, gl or torus).
    #[arg(long, requires = "quiver")]
    pub datum: Option<PathBuf>,
    /// Component through this Q_G vertex, written base:label (e.g. 2:[1] or 1:(0,1)).
    #[arg(long)]
    pub vertex: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum QgCmd {
    Build(Source),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Dense,
    Yale,
}

#[derive(Debug, Subcommand)]
pub enum RcCmd {
    Emit {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Dense)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum TcCmd {
    Project {
        #[command(flatten)]
        source: Source,
        /// Representation file; otherwise a random representation of `--dims`.
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SemiinvCmd {
    /// c(M, N) for two representation files.
    Eval {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
    },
    /// Transformation law of c_N for a printed family at symbol size a.
    Check {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Span of c_{R_c(N)} on Rep_alpha(Q) over random N of dimension beta, with both sides of
    /// the reciprocity.
    Span {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        generators: usize,
        #[arg(long, default_value_t = 6)]
        points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdemCmd {
    Print {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

pub const SETTINGS: [&str; 8] =
    ["k2-symmetric", "k3-symmetric", "s4-subspace", "k3-natural", "k4-natural", "k3-natural-second", "k3-natural-third", "k3-sym2"];

pub fn setting(name: &str) -> Result<Setting, CliError> {
    Ok(match name {
        "k2-symmetric" => Setting::KroneckerSymmetric(2),
        "k3-symmetric" => Setting::KroneckerSymmetric(3),
        "s4-subspace" => Setting::SubspaceSymmetric(4),
        "k3-natural" => Setting::KroneckerNatural { n: 3, label: vec![1] },
        "k4-natural" => Setting::KroneckerNatural { n: 4, label: vec![1] },
        "k3-natural-second" => Setting::KroneckerNatural { n: 3, label: vec![1, 1] },
        "k3-natural-third" => Setting::KroneckerNatural { n: 3, label: vec![1, 1, 1] },
        "k3-sym2" => Setting::KroneckerSym2,
        other => return Err(CliError::Setting(other.into(), SETTINGS.join(", "))),
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.into(), e))
}

fn read_rep(path: &Path) -> Result<Representation, CliError> {
    Representation::try_from(&read_json::<RepresentationFile>(path)?).map_err(compute)
}

/// The Q_G quiver (or component) and the datum it came from.
fn resolve(source: &Source) -> Result<(QgQuiver, GroupDatum), CliError> {
    if let Some(name) = &source.setting {
        let s = setting(name)?;
        return Ok((s.component().map_err(compute)?, s.datum()));
    }
    let (Some(qp), Some(dp)) = (&source.quiver, &source.datum) else {
        return Err(CliError::Usage("give --setting, or --quiver with --datum".into()));
    };
    let q = Arc::new(Quiver::try_from(&read_json::<QuiverFile>(qp)?).map_err(compute)?);
    let datum: GroupDatum = read_json(dp)?;
    let vertex = source
        .vertex
        .as_deref()
        .map(|v| {
            let (base, label) = v.split_once(':').ok_or_else(|| CliError::Vertex(v.into()))?;
            let b = q.vertex_index(base).ok_or_else(|| CliError::Vertex(v.into()))?;
            let l: Label = label.parse().map_err(|_: QgError| CliError::Vertex(v.into()))?;
            Ok::<_, CliError>((b, l))
        })
        .transpose()?;
    let comp = match (&datum, vertex) {
        (GroupDatum::Finite(act), None) => build_qg_finite(&q, act).map_err(compute)?,
        (GroupDatum::Finite(act), Some((b, l))) => {
            let full = build_qg_finite(&q, act).map_err(compute)?;
            let v = full.find(b, &l).ok_or_else(|| CliError::Vertex(format!("{}:{l}", q.vertices()[b])))?;
            component_of(&full, v).map_err(compute)?
        }
        (GroupDatum::Gl(d), Some((b, Label::Partition(p)))) => gl_component(&q, d, b, &p).map_err(compute)?,
        (GroupDatum::Torus(d), Some((b, Label::Weight(w)))) => torus_component(&q, d, b, &w).map_err(compute)?,
        _ => return Err(CliError::Usage("GL and torus data need --vertex with a matching label".into())),
    };
    Ok((comp, datum))
}

fn idempotent_data(source: &Source, seed: u64) -> Result<IdempotentData, CliError> {
    let (comp, datum) = resolve(source)?;
    build_idempotent_data(&comp, &datum, seed).map_err(compute)
}

fn write_qg(out: &mut impl Write, c: &QgQuiver) -> Result<(), CliError> {
    writeln!(out, "vertices {}", c.num_vertices())?;
    for i in 0..c.num_vertices() {
        writeln!(out, "  {} dim {}", c.vertex_name(i), c.dims[i])?;
    }
    writeln!(out, "arrows {}", c.num_arrows())?;
    for b in &c.bundles {
        writeln!(out, "  {} -> {} x{}", c.vertex_name(b.tail), c.vertex_name(b.head), b.count)?;
    }
    if c.open.iter().any(|&o| o) {
        let open: Vec<String> = (0..c.num_vertices()).filter(|&i| c.open[i]).map(|i| c.vertex_name(i)).collect();
        writeln!(out, "open {}", open.join(" "))?;
    }
    Ok(())
}

fn dims_text(d: &[usize]) -> String {
    let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

/// Runs one command; `Ok(false)` means a verification ran and failed.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<bool, CliError> {
    writeln!(out, "{HEADER}")?;
    let seed = cli.seed;
    match &cli.command {
        Command::Qg(QgCmd::Build(source)) => {
            let (c, _) = resolve(source)?;
            write_qg(out, &c)?;
        }
        Command::Rc(RcCmd::Emit { source, format }) => {
            let data = idempotent_data(source, seed)?;
            let qc = &data.quiver_c;
            for (k, a) in qc.arrows().iter().enumerate() {
                writeln!(out, "B{} : {} -> {}", k + 1, qc.vertices()[a.tail], qc.vertices()[a.head])?;
            }
            for m in rc_symbolic(&data) {
                match format {
                    Format::Dense => write!(out, "{m}")?,
                    Format::Yale => {
                        writeln!(out, "{} ({}x{})", m.arrow, m.rows.len(), m.cols.len())?;
                        for (k, t) in m.yale() {
                            let vals: Vec<String> = t.values.iter().map(fmt_rational).collect();
                            writeln!(out, "  B{} values [{}]", k + 1, vals.join(", "))?;
                            writeln!(out, "  B{} rows   {:?}", k + 1, t.rows)?;
                            writeln!(out, "  B{} cols   {:?}", k + 1, t.cols)?;
                        }
                    }
                }
            }
        }
        Command::Tc(TcCmd::Project { source, rep, dims }) => {
            let data = idempotent_data(source, seed)?;
            let m = match rep {
                Some(p) => read_rep(p)?,
                None if dims.len() == data.base.num_vertices() => random_rep(data.base.clone(), dims, seed, 5),
                None => return Err(CliError::Usage(format!("--dims needs {} entries", data.base.num_vertices()))),
            };
            let t = tc_apply(&data, &m).map_err(compute)?;
            writeln!(out, "input {}", dims_text(m.dims()))?;
            let names: Vec<String> = (0..data.component.num_vertices()).map(|i| data.component.vertex_name(i)).collect();
            writeln!(out, "vertices {}", names.join(" "))?;
            writeln!(out, "T_c {}", dims_text(t.dims()))?;
            for s in decompose_indecomposables(&t, seed).map_err(compute)? {
                writeln!(out, "  summand {} x{}{}", dims_text(s.rep.dims()), s.multiplicity, if s.inconclusive { " (grouping inconclusive)" } else { "" })?;
            }
        }
        Command::Semiinv(SemiinvCmd::Eval { m, n }) => {
            let (m, n) = (read_rep(m)?, read_rep(n)?);
            let c = schofield_c(&m, &n).map_err(compute)?;
            writeln!(out, "c {}", fmt_rational(&c))?;
            writeln!(out, "weight {:?}", weight_of(n.quiver(), n.dims()))?;
            writeln!(out, "coweight {:?}", coweight_of(m.quiver(), m.dims()))?;
        }
        Command::Semiinv(SemiinvCmd::Check { family: name, a, trials }) => {
            let fam = family(name).ok_or_else(|| CliError::Family(name.clone()))?;
            let datum = fam.setting.datum();
            let n = fam.evaluate(&random_symbols(fam.symbols.len(), *a, seed));
            let alpha = kronecker_alpha(n.quiver(), n.dims(), *a).ok_or_else(|| CliError::Usage("no alpha of pairing zero".into()))?;
            let els: Vec<_> = match &datum {
                GroupDatum::Gl(d) => (0..3).map(|i| crate::qg::GroupElement::Gl(crate::quiver::random_base_change(&[d.n], seed + i, 3).remove(0))).collect(),
                _ => Vec::new(),
            };
            let r = transformation_check(&n, &alpha, Some((&datum, &els)), *trials, seed).map_err(compute)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializable"))?;
            writeln!(out, "result {}", if r.passed() { "pass" } else if r.vacuous() { "vacuous" } else { "fail" })?;
            return Ok(r.passed());
        }
        Command::Semiinv(SemiinvCmd::Span { source, alpha, beta, generators, points }) => {
            let data = idempotent_data(source, seed)?;
            let gens = (0..*generators as u64)
                .map(|i| rc_apply(&data, &random_rep(data.quiver_c.clone(), beta, seed + 1000 + i, 5)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(compute)?;
            writeln!(out, "span {}", span_dim(&gens, alpha, *points, seed).map_err(compute)?)?;
            let r = restricted_span_dim(&data, alpha, beta, (*points).max(*generators), seed + 1).map_err(compute)?;
            writeln!(out, "reciprocity left {} right {}", r.left, r.right)?;
        }
        Command::Idempotents(IdemCmd::Print { n, d }) => {
            let table = if *d <= 3 { schur_idempotents(*n, *d).map_err(compute)? } else { schur_idempotents_general(*n, *d, seed, DEFAULT_TENSOR_BUDGET).map_err(compute)? };
            for e in table {
                writeln!(out, "{} : {}", e.label, e.xi)?;
            }
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut all = true;
            for name in names {
                let r = suites::run(name, seed).map_err(|e| match e {
                    suites::SuiteError::Unknown { .. } => CliError::Usage(e.to_string()),
                    other => compute(other),
                })?;
                writeln!(out, "suite {} seed {}: {}", r.suite, r.seed, if r.passed() { "pass" } else { "FAIL" })?;
                for c in &r.checks {
                    writeln!(out, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.label, c.detail)?;
                }
                for n in &r.notes {
                    writeln!(out, "  note: {n}")?;
                }
                all &= r.passed();
            }
            return Ok(all);
        }
    }
    Ok(true)
}

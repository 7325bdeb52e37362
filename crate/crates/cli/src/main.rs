use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use spj_core::chains::{self, OmegaGroup, StepKind};
use spj_core::hecke::HeckeModule;
use spj_core::jcomb;
use spj_core::oracle::FiniteGroupModel;
use spj_core::special::{CoefficientRing, SpecialModule};
use spj_core::suite::{self, SuiteConfig};
use spj_core::{CartanType, Error, RootSystem, SubsetJ, WeylGroup};

#[derive(Parser)]
#[command(name = "spj", version, about = "Parabolic coset combinatorics and mod-p Hecke modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Cartan type, e.g. A2, B3, A2xC3
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    /// Comma-separated 1-based simple roots; empty for the empty set, `all` to iterate
    #[arg(long, global = true)]
    j: Option<String>,
    /// Coefficient ring: Z, Q or Fp
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Prime characteristic
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tab-separated output (suite only)
    #[arg(long, global = true)]
    tsv: bool,
    /// Log at debug level
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Factors, rank, positive root count and highest roots
    Rootdata,
    /// The sets W^J and V^J
    Vj,
    /// The J-quasi-parabolic root sets
    Qp,
    /// Rank, torsion and basis check of the cokernel of the boundary map
    Module,
    /// Restricted exactness for every quasi-parabolic set
    Exactness,
    /// The chain from the longest element to the identity
    Chain,
    /// The group W_Omega
    Omega,
    /// Matrices of the T_s and Omega operators
    Hecke,
    /// Simplicity of the Hecke module
    Irreducible,
    /// Brute-force certification inside GL_n(F_q)
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// The full acceptance battery
    Suite {
        /// JSON configuration file
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::TooLarge(_) => Failure::Cap(e.to_string()),
            Error::ParseType(_)
            | Error::UnsupportedType(_)
            | Error::IndexOutOfRange { .. }
            | Error::NonPrimeCharacteristic(_)
            | Error::BadAlpha(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Command output: the document and whether every check in it passed.
struct Output {
    body: String,
    ok: bool,
}

fn json_output(v: &impl Serialize, ok: bool) -> Output {
    let mut body = serde_json::to_string_pretty(v).expect("serializable");
    body.push('\n');
    Output { body, ok }
}

impl Opts {
    fn group(&self) -> CliResult<WeylGroup> {
        let ty = self.ty.as_deref().ok_or_else(|| Failure::Usage("--type is required".into()))?;
        let ct: CartanType = ty.parse()?;
        Ok(WeylGroup::new(RootSystem::build(&ct)?)?)
    }

    fn subsets(&self, rank: usize) -> CliResult<Vec<SubsetJ>> {
        let list = self.j.as_deref().ok_or_else(|| Failure::Usage("--j is required".into()))?.trim();
        if list == "all" {
            return Ok(SubsetJ::all(rank).collect());
        }
        let mut idx = Vec::new();
        for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let k: usize = part.parse().map_err(|_| Failure::Usage(format!("bad simple root `{part}`")))?;
            if k == 0 {
                return Err(Failure::Usage("simple roots are numbered from 1".into()));
            }
            idx.push(k - 1);
        }
        Ok(vec![SubsetJ::from_indices(&idx, rank)?])
    }

    fn ring(&self) -> CliResult<CoefficientRing> {
        match (&self.ring, self.p) {
            (Some(r), _) => {
                let ring: CoefficientRing = r.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                ring.field()?;
                Ok(ring)
            }
            (None, Some(p)) => Ok(CoefficientRing::PrimeField(self.prime(p)?)),
            (None, None) => Ok(CoefficientRing::Integers),
        }
    }

    fn prime(&self, p: u64) -> CliResult<u64> {
        spj_core::linalg::PrimeField::new(p)?;
        Ok(p)
    }

    fn require_p(&self) -> CliResult<u64> {
        match (self.p, &self.ring) {
            (Some(p), _) => self.prime(p),
            (None, Some(_)) => match self.ring()? {
                CoefficientRing::PrimeField(p) => Ok(p),
                _ => Err(Failure::Usage("a prime field is required".into())),
            },
            (None, None) => Err(Failure::Usage("--p is required".into())),
        }
    }
}

/// Runs `f` for every selected subset; a single subset gives a bare object.
fn per_subset(
    g: &WeylGroup,
    opts: &Opts,
    f: impl Fn(SubsetJ) -> CliResult<(Value, bool)>,
) -> CliResult<Output> {
    let subsets = opts.subsets(g.rank())?;
    let iterate = opts.j.as_deref().map(str::trim) == Some("all");
    let mut items = Vec::new();
    let mut ok = true;
    for j in subsets {
        let (v, pass) = f(j)?;
        ok &= pass;
        items.push(if iterate { json!({"j": j, "result": v}) } else { v });
    }
    let doc = if iterate { Value::Array(items) } else { items.pop().expect("one subset") };
    Ok(json_output(&doc, ok))
}

fn labels(g: &WeylGroup, ws: &[usize]) -> Vec<Value> {
    ws.iter().map(|&w| json!(g.element(w))).collect()
}

fn rootdata(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let rs = g.root_system();
    let factors: Vec<String> = rs.cartan_type().factors.iter().map(|f| f.to_string()).collect();
    let highest: Vec<Value> = (0..rs.layout().len())
        .map(|f| {
            let lay = &rs.layout()[f];
            let r = rs.root(rs.highest_root(f));
            json!(r.coeffs[lay.simple_range()].to_vec())
        })
        .collect();
    let doc = json!({
        "factors": factors,
        "rank": rs.rank(),
        "num_positive_roots": rs.num_positive(),
        "highest_roots": highest,
    });
    Ok(json_output(&doc, true))
}

fn vj(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    per_subset(&g, opts, |j| {
        let vj = g.enumerate_vj(j);
        let doc = json!({
            "sizeW": g.order(),
            "sizeWJ": g.enumerate_wj(j).len(),
            "sizeVJ": vj.len(),
            "elements": labels(&g, &vj),
            "zJ": g.element(g.z_j(j)),
        });
        Ok((doc, true))
    })
}

fn qp(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let rs = g.root_system();
    per_subset(&g, opts, |j| {
        let mut out = Vec::new();
        for q in jcomb::enumerate_quasi_parabolic(&g, j)? {
            let roots: Vec<Value> = q.roots.iter().map(|r| json!(rs.root(r).coeffs)).collect();
            out.push(json!({
                "roots": roots,
                "size": q.roots.len(),
                "num_witnesses": q.witnesses.len(),
                "sizeWJD": jcomb::wj_of_d(&g, j, q.roots)?.len(),
                "sizeVJD": jcomb::vj_of_d(&g, j, q.roots)?.len(),
            }));
        }
        Ok((Value::Array(out), true))
    })
}

fn module(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let ring = opts.ring()?;
    per_subset(&g, opts, |j| {
        let r = SpecialModule::new(&g, j)?.build_report(ring)?;
        let ok = r.rank == r.size_vj && r.torsion_invariants.is_empty() && r.vj_basis_ok;
        Ok((serde_json::to_value(&r).expect("serializable"), ok))
    })
}

fn exactness(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let ring = opts.ring()?;
    let rs = g.root_system();
    per_subset(&g, opts, |j| {
        let m = SpecialModule::new(&g, j)?;
        let mut out = Vec::new();
        let mut ok = true;
        for q in jcomb::enumerate_quasi_parabolic(&g, j)? {
            let r = m.restricted_exactness(q.roots, ring)?;
            ok &= r.exact;
            let roots: Vec<Value> = q.roots.iter().map(|x| json!(rs.root(x).coeffs)).collect();
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["roots"] = Value::Array(roots);
            out.push(v);
        }
        Ok((Value::Array(out), ok))
    })
}

fn chain(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let rs = g.root_system();
    let steps = chains::weyllem2_chain(rs)?;
    let out: Vec<Value> = steps
        .iter()
        .map(|st| {
            let (kind, which) = match &st.kind {
                StepKind::Weak { s } => ("weak", json!(s + 1)),
                StepKind::Omega { u } => ("omega", json!(u)),
            };
            json!({
                "kind": kind,
                "s_or_u": which,
                "from": st.from,
                "to": st.to,
                "length_from": spj_core::weyl::length(rs, &st.from),
                "length_to": spj_core::weyl::length(rs, &st.to),
            })
        })
        .collect();
    Ok(json_output(&out, true))
}

fn omega(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let om = OmegaGroup::build(g.root_system())?;
    let table: Vec<Vec<usize>> = om
        .elements
        .iter()
        .map(|a| {
            om.elements.iter().map(|b| om.elements.iter().position(|x| *x == a.compose(b)).unwrap_or(usize::MAX)).collect()
        })
        .collect();
    let elements: Vec<Value> = om
        .elements
        .iter()
        .zip(&om.labels)
        .map(|(e, l)| json!({"element": e, "indices": l.iter().map(|i| i + 1).collect::<Vec<_>>()}))
        .collect();
    let doc = json!({"order": om.order(), "elements": elements, "product_table": table});
    Ok(json_output(&doc, om.is_closed()))
}

fn hecke(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let p = opts.require_p()?;
    let field = spj_core::linalg::PrimeField::new(p)?;
    per_subset(&g, opts, |j| {
        let h = HeckeModule::new(&g, j)?;
        let ts: Vec<Value> = h
            .all_ts()?
            .iter()
            .enumerate()
            .map(|(s, m)| json!({"s": s + 1, "matrix": field.reduce_matrix(&m.entries)}))
            .collect();
        let om: Vec<Value> = h
            .all_omega()?
            .iter()
            .map(|m| match &m.tag {
                spj_core::hecke::OperatorTag::Omega { u } => json!({"u": u, "matrix": field.reduce_matrix(&m.entries)}),
                spj_core::hecke::OperatorTag::Ts { .. } => unreachable!("omega operators only"),
            })
            .collect();
        let doc = json!({
            "p": p,
            "basis": labels(&g, h.module().vj()),
            "ts": ts,
            "omega": om,
        });
        Ok((doc, true))
    })
}

fn irreducible(opts: &Opts) -> CliResult<Output> {
    let g = opts.group()?;
    let p = opts.require_p()?;
    per_subset(&g, opts, |j| {
        let r = HeckeModule::new(&g, j)?.check_simple(p)?;
        Ok((serde_json::to_value(&r).expect("serializable"), r.is_simple))
    })
}

fn oracle(opts: &Opts, n: usize, q: u64) -> CliResult<Output> {
    let m = FiniteGroupModel::build(n, q)?;
    let mut reports = Vec::new();
    let iterate = opts.j.as_deref().map(str::trim) == Some("all");
    let mut ok = true;
    for j in opts.subsets(n.saturating_sub(1))? {
        let r = m.report(j)?;
        ok &= r.dim_invariants == r.size_vj && r.cell_classes_basis && r.hecke_match.iter().all(|&b| b) && r.brudec_ok;
        reports.push(r);
    }
    Ok(if iterate { json_output(&reports, ok) } else { json_output(&reports[0], ok) })
}

fn run_suite(opts: &Opts, config: Option<&PathBuf>) -> CliResult<Output> {
    let cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<SuiteConfig>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    cfg.validate().map_err(Failure::Usage)?;
    let report = suite::run_suite(&cfg);
    let body = if opts.tsv { report.to_tsv() } else { report.to_jsonl() };
    Ok(Output { body, ok: report.all_pass() })
}

fn run(cli: &Cli) -> CliResult<Output> {
    let o = &cli.opts;
    match &cli.command {
        Command::Rootdata => rootdata(o),
        Command::Vj => vj(o),
        Command::Qp => qp(o),
        Command::Module => module(o),
        Command::Exactness => exactness(o),
        Command::Chain => chain(o),
        Command::Omega => omega(o),
        Command::Hecke => hecke(o),
        Command::Irreducible => irreducible(o),
        Command::Oracle { n, q } => oracle(o, *n, *q),
        Command::Suite { config } => run_suite(o, config.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.opts.verbose { log::LevelFilter::Debug } else { log::LevelFilter::Warn };
    env_logger::Builder::new().filter_level(level).init();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.opts.out {
                Some(path) => fs::write(path, &out.body).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hopf_cocycles::bosonization::BosonHopf;
use hopf_cocycles::cocycles::{
    check_commuting_conditions, check_eq1_eq2, check_hochschild, check_multiplicative_cocycle, invariance_report,
    lift_functional, BilinearForm, Convolution, DihedralCoefficients, Family,
};
use hopf_cocycles::deform::{chi_triviality_scan, verify_theorem_sn_on, DihedralInstance, RackInstance, SnVariant};
use hopf_cocycles::error::Error;
use hopf_cocycles::groups::FinGroup;
use hopf_cocycles::nichols::{Cap, DEFAULT_TENSOR_BUDGET};
use hopf_cocycles::racks::{Rack, RackCocycle};
use hopf_cocycles::report::{CheckEntry, Report, Witness};
use hopf_cocycles::scalars::{CycField, CycScalar, Rational};
use hopf_cocycles::yetter_drinfeld::YDModule;

/// Build bosonized Nichols algebras over dihedral and symmetric groups and verify cocycle
/// deformations of them, in exact arithmetic.
#[derive(Parser)]
#[command(name = "hopf-cocycles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for data-parallel sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Largest tensor power dimension the Nichols construction may materialize.
    #[arg(long, global = true, env = "HOPF_COCYCLES_TENSOR_BUDGET", default_value_t = DEFAULT_TENSOR_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build B(V) # kG and dump its structure.
    BuildAlgebra {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Include product and coproduct tables in the dump.
        #[arg(long)]
        full_tables: bool,
    },
    /// Run one verification on an instance.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        form: FormArgs,
        /// Sweep every group element instead of the generators (invariance only).
        #[arg(long)]
        full_group: bool,
    },
    /// Evaluate the relations of a lifting presentation inside the deformed algebra.
    VerifyTheorem {
        #[arg(value_enum)]
        name: TheoremKind,
        #[arg(long, default_value_t = 12)]
        m: u32,
        /// A pair `i,k` of the index set I (repeatable).
        #[arg(long = "I", value_name = "i,k")]
        pairs: Vec<String>,
        /// An element of L (repeatable).
        #[arg(long = "L", value_name = "l")]
        ells: Vec<u32>,
        /// Coefficient `family:r,s,first,second=value` with family a, b, z or x (repeatable).
        #[arg(long = "alpha", value_name = "entry")]
        coefficients: Vec<String>,
        /// Grid size used when no coefficients are given.
        #[arg(long, default_value_t = 25)]
        limit: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Degree of the symmetric group for the twisted scan.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    HopfAxioms,
    Invariance,
    Eq12,
    Hochschild,
    MultCocycle,
    Commuting,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremKind {
    #[value(name = "AI", alias = "ai")]
    Ai,
    #[value(name = "BIL", alias = "bil")]
    Bil,
    #[value(name = "S3", alias = "s3", alias = "q3")]
    S3,
    #[value(name = "Q4", alias = "q4")]
    Q4,
    #[value(name = "D4", alias = "d4")]
    D4,
    #[value(name = "chi-scan")]
    ChiScan,
}

#[derive(Args)]
struct InstanceArgs {
    /// `dihedral:m` or `sym:n`.
    #[arg(long)]
    group: Option<String>,
    /// Shorthand for `--group sym:N`.
    #[arg(long)]
    n: Option<usize>,
    /// Dihedral summand `ik:i,k` or `ell:l` (repeatable).
    #[arg(long)]
    module: Vec<String>,
    /// Rack module `o2:-1`, `o2:chi` or `o4:-1`.
    #[arg(long)]
    rack: Option<String>,
    /// Truncation degree; omitted means the whole Nichols algebra.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct FormArgs {
    /// Class values of a rack form, one per pair orbit (ordered id, (123), (12)(34), ...).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Option<Vec<String>>,
    /// Dihedral coefficient `family:r,s,first,second=value` (repeatable).
    #[arg(long = "alpha", value_name = "entry")]
    coefficients: Vec<String>,
    /// Use a random form with no invariance imposed.
    #[arg(long)]
    non_invariant: bool,
}

/// The module, and the bosonization when the command needs it.
struct Instance {
    module: Arc<YDModule>,
    rack: Option<Arc<RackCocycle>>,
    algebra: Option<Arc<BosonHopf>>,
}

impl Instance {
    fn module(&self) -> &Arc<YDModule> {
        &self.module
    }

    fn algebra(&self) -> &Arc<BosonHopf> {
        self.algebra.as_ref().expect("algebra requested for this command")
    }
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| anyhow!(e)).with_context(|| format!("bad rational {s:?}"))
}

fn parse_pair(s: &str) -> anyhow::Result<(u32, u32)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::validation("bad-pair", format!("expected i,k, got {s:?}")))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn build_instance(args: &InstanceArgs, budget: usize, need_algebra: bool) -> anyhow::Result<Instance> {
    let group = match (&args.group, args.n) {
        (Some(g), _) => g.clone(),
        (None, Some(n)) => format!("sym:{n}"),
        (None, None) => return Err(Error::validation("missing-group", "give --group dihedral:m or sym:n").into()),
    };
    let (kind, order) =
        group.split_once(':').ok_or_else(|| Error::validation("bad-group", format!("expected kind:order, got {group:?}")))?;
    let order: u32 = order.parse().map_err(|_| Error::validation("bad-group", format!("bad order in {group:?}")))?;
    let cap = args.cap.map_or(Cap::Full, Cap::Degree);
    match kind {
        "dihedral" | "d" => {
            if args.rack.is_some() {
                return Err(Error::validation("bad-instance", "rack modules need a symmetric group").into());
            }
            if args.cap.is_some() {
                return Err(Error::validation("bad-instance", "dihedral Nichols algebras are always built whole").into());
            }
            let mut pairs = Vec::new();
            let mut ells = Vec::new();
            for m in &args.module {
                match m.split_once(':') {
                    Some(("ik", v)) => pairs.push(parse_pair(v)?),
                    Some(("ell", v)) | Some(("l", v)) => ells.push(
                        v.trim().parse().map_err(|_| Error::validation("bad-module", format!("bad l in {m:?}")))?,
                    ),
                    _ => return Err(Error::validation("bad-module", format!("expected ik:i,k or ell:l, got {m:?}")).into()),
                }
            }
            let d = DihedralInstance::with_budget(order, pairs, ells, budget)?;
            Ok(Instance { module: d.module, rack: None, algebra: Some(d.algebra) })
        }
        "sym" | "s" => {
            if !args.module.is_empty() {
                return Err(Error::validation("bad-instance", "dihedral summands need a dihedral group").into());
            }
            let g = Arc::new(FinGroup::symmetric(order as usize)?);
            let rack = args.rack.as_deref().unwrap_or("o2:-1");
            let cocycle = match rack {
                "o2:-1" => RackCocycle::minus_one(Arc::new(Rack::transpositions(g)?)),
                "o2:chi" => RackCocycle::chi(Arc::new(Rack::transpositions(g)?))?,
                "o4:-1" => RackCocycle::minus_one(Arc::new(Rack::four_cycles(g)?)),
                _ => return Err(Error::validation("bad-rack", format!("expected o2:-1, o2:chi or o4:-1, got {rack:?}")).into()),
            };
            if need_algebra {
                let r = RackInstance::new(cocycle, cap, budget)?;
                Ok(Instance { module: r.module, rack: Some(r.cocycle), algebra: Some(r.algebra) })
            } else {
                let cocycle = Arc::new(cocycle);
                let module = Arc::new(YDModule::rack_module(cocycle.clone())?);
                Ok(Instance { module, rack: Some(cocycle), algebra: None })
            }
        }
        _ => Err(Error::validation("bad-group", format!("unknown group kind {kind:?}")).into()),
    }
}

fn parse_coefficients(entries: &[String], field: &'static CycField) -> anyhow::Result<DihedralCoefficients> {
    let mut c = DihedralCoefficients::default();
    for e in entries {
        let bad = || Error::validation("bad-coefficient", format!("expected family:r,s,first,second=value, got {e:?}"));
        let (fam, rest) = e.split_once(':').ok_or_else(bad)?;
        let (idx, value) = rest.split_once('=').ok_or_else(bad)?;
        let family = match fam {
            "a" | "alpha" => Family::Alpha,
            "b" | "beta" => Family::Beta,
            "z" | "zeta" => Family::Zeta,
            "x" | "xi" => Family::Xi,
            _ => return Err(bad().into()),
        };
        let nums: Vec<usize> = idx.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let [r, s, first, second] = nums[..] else { return Err(bad().into()) };
        c.set(family, r as u8, s as u8, first, second, field.from_rational(&parse_rational(value)?));
    }
    Ok(c)
}

fn build_form(inst: &Instance, args: &FormArgs, seed: u64) -> anyhow::Result<BilinearForm> {
    let module = inst.module();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if args.non_invariant {
        return Ok(BilinearForm::random(module, &mut rng));
    }
    if let Some(values) = &args.beta {
        let Some(cocycle) = &inst.rack else {
            return Err(Error::validation("bad-form", "--beta needs a rack module").into());
        };
        let field = module.field();
        let orbits = cocycle.rack().pair_orbits();
        let mut labels: Vec<&str> = Vec::new();
        for o in &orbits {
            if !labels.contains(&o.product_label.as_str()) {
                labels.push(&o.product_label);
            }
        }
        if values.len() != labels.len() {
            return Err(Error::validation(
                "bad-class-values",
                format!("expected {} class values for orbits {:?}", labels.len(), labels),
            )
            .into());
        }
        let vals: Vec<CycScalar> =
            values.iter().map(|v| parse_rational(v).map(|q| field.from_rational(&q))).collect::<anyhow::Result<_>>()?;
        return Ok(BilinearForm::from_class_values(module.clone(), &labels, &vals)?);
    }
    if !args.coefficients.is_empty() {
        let c = parse_coefficients(&args.coefficients, module.field())?;
        return Ok(c.to_form(module.clone())?);
    }
    let basis = BilinearForm::invariant_basis(module);
    Ok(BilinearForm::random_combination(module, &basis, &mut rng))
}

fn run_check(which: CheckKind, inst: &Instance, form_args: &FormArgs, full_group: bool, seed: u64) -> anyhow::Result<(Value, bool)> {
    let report = match which {
        CheckKind::HopfAxioms => inst.algebra().verify_hopf_axioms(),
        _ => {
            let form = build_form(inst, form_args, seed)?;
            let a = || inst.algebra();
            match which {
                CheckKind::Invariance => invariance_report(&form, full_group),
                CheckKind::Eq12 => check_eq1_eq2(&form),
                CheckKind::Hochschild => {
                    let eta = lift_functional(&form, a())?;
                    Report::new("hochschild", a().instance_name(), vec![CheckEntry::from_witness("hochschild", check_hochschild(&eta, a()))])
                }
                CheckKind::MultCocycle => {
                    let eta = lift_functional(&form, a())?;
                    let conv = Convolution::new(a());
                    let sigma = conv.exp(&eta)?;
                    let inv = conv.exp(&eta.scale(&-a().field().one()))?;
                    check_multiplicative_cocycle(&sigma, Some(&inv), a())
                }
                CheckKind::Commuting => {
                    let eq = check_eq1_eq2(&form);
                    let eta = lift_functional(&form, a())?;
                    let c = check_commuting_conditions(&eta, a())?;
                    let agree = eq.verdict == c.condition_b && eq.verdict == c.condition_c;
                    let summary = |x: bool| if x { "holds" } else { "fails" }.to_string();
                    let mut entries = vec![
                        CheckEntry::from_witness("a", eq.first_failure().and_then(|e| e.counterexample.clone())),
                        CheckEntry::from_witness("b", c.witness_b),
                        CheckEntry::from_witness("c", c.witness_c),
                    ];
                    entries.push(if agree {
                        CheckEntry::passed("equivalent")
                    } else {
                        CheckEntry::failed(
                            "equivalent",
                            Witness { indices: vec![], labels: vec![], lhs: summary(eq.verdict), rhs: format!("b {}, c {}", summary(c.condition_b), summary(c.condition_c)) },
                        )
                    });
                    // Only the equivalence is asserted; (a) itself may fail for a valid input.
                    let mut r = Report::new("commuting", a().instance_name(), entries);
                    r.verdict = agree;
                    r
                }
                CheckKind::HopfAxioms => unreachable!(),
            }
        }
    };
    let verdict = report.verdict;
    Ok((serde_json::to_value(report)?, verdict))
}

fn run_theorem(cli: &Cli) -> anyhow::Result<(Value, bool)> {
    let Command::VerifyTheorem { name, m, pairs, ells, coefficients, limit, lambda, n } = &cli.command else { unreachable!() };
    let lambda = parse_rational(lambda)?;
    match name {
        TheoremKind::Ai | TheoremKind::Bil => {
            let pairs: Vec<(u32, u32)> = pairs.iter().map(|p| parse_pair(p)).collect::<anyhow::Result<_>>()?;
            let inst = DihedralInstance::with_budget(*m, pairs, ells.clone(), cli.budget)?;
            let draws = if coefficients.is_empty() {
                inst.coefficient_grid(*limit, cli.seed)?
            } else {
                vec![parse_coefficients(coefficients, inst.algebra.field())?]
            };
            let mut reports = Vec::new();
            for c in &draws {
                reports.push(match name {
                    TheoremKind::Ai => inst.verify_ai(c)?,
                    _ => inst.verify_bil(c)?,
                });
            }
            let ok = reports.iter().all(|r| r.overall);
            if reports.len() == 1 {
                Ok((serde_json::to_value(&reports[0])?, ok))
            } else {
                Ok((json!({ "schema_version": hopf_cocycles::report::SCHEMA_VERSION, "overall": ok, "reports": reports }), ok))
            }
        }
        TheoremKind::S3 | TheoremKind::Q4 | TheoremKind::D4 => {
            let q = CycField::get(1)?;
            let (variant, inst) = match name {
                TheoremKind::S3 => (SnVariant::Q3, RackInstance::new(transpositions(3)?, Cap::Full, cli.budget)?),
                TheoremKind::Q4 => (SnVariant::Q4, RackInstance::new(transpositions(4)?, Cap::Degree(2), cli.budget)?),
                _ => {
                    let g = Arc::new(FinGroup::symmetric(4)?);
                    (SnVariant::D4, RackInstance::new(RackCocycle::minus_one(Arc::new(Rack::four_cycles(g)?)), Cap::Degree(2), cli.budget)?)
                }
            };
            let rep = verify_theorem_sn_on(&inst, variant, &q.from_rational(&lambda))?;
            let ok = rep.overall;
            Ok((serde_json::to_value(rep)?, ok))
        }
        TheoremKind::ChiScan => {
            let rep = chi_triviality_scan(*n, *limit, cli.seed)?;
            let ok = rep.only_trivial;
            Ok((serde_json::to_value(rep)?, ok))
        }
    }
}

fn transpositions(n: usize) -> anyhow::Result<RackCocycle> {
    let g = Arc::new(FinGroup::symmetric(n)?);
    Ok(RackCocycle::minus_one(Arc::new(Rack::transpositions(g)?)))
}

fn run(cli: &Cli) -> anyhow::Result<(Value, bool)> {
    match &cli.command {
        Command::BuildAlgebra { instance, full_tables } => {
            let inst = build_instance(instance, cli.budget, true)?;
            let a = inst.algebra();
            let mut v = a.to_json(*full_tables);
            v["module"] = inst.module().to_json();
            eprintln!("{}", a.summary());
            Ok((v, true))
        }
        Command::Check { which, instance, form, full_group } => {
            let need_algebra = !matches!(which, CheckKind::Eq12 | CheckKind::Invariance);
            let inst = build_instance(instance, cli.budget, need_algebra)?;
            run_check(*which, &inst, form, *full_group, cli.seed)
        }
        Command::VerifyTheorem { .. } => run_theorem(cli),
    }
}

fn emit(cli: &Cli, v: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match &cli.output {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                // A closed reader (e.g. `| head`) is not an error of ours.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Ignoring the error is fine: it only fails if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli).and_then(|(v, ok)| emit(&cli, &v).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let (code, exit) = match e.downcast_ref::<Error>() {
                Some(err) => (err.code(), err.exit_code()),
                None => ("usage", 2),
            };
            eprintln!("{}", json!({ "error": code, "message": format!("{e:#}") }));
            ExitCode::from(exit as u8)
        }
    }
}

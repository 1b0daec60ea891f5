//! `rackalg`: exact checks on racks, Nichols algebras, their deformations
//! and Yetter-Drinfeld realizations, reported as JSON.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rackalg::braided::{BraidedSpace, Flavor};
use rackalg::deform::{
    appendix_membership_audit, copointed_lifting_generators, pointed_lifting_generators, sample_params, verify_nonzero,
    CopointedFamily, CopointedLambda, DeformParams, Family,
};
use rackalg::freealg::{groebner, FreePoly, GbFile, GroebnerConfig, IdealFile, QuotientDim, DEFAULT_MAX_DEG};
use rackalg::grouprealize::{
    comatrix_action_audit, dual_braiding_check, theta_characters, validate_principal, PrincipalRealization,
    RealizationFile, Side,
};
use rackalg::quadrel::{
    copointed_lambda_space, hom_vanishing_check, pointed_lambda_space, quadratic_relations, rprime_report,
    size_counts, verify_j2_report,
};
use rackalg::rational::fmt_q;
use rackalg::{Error, Result};
use serde_json::{json, Value};

use input::{from_value, load_cocycle, load_rack, parse_list, read_json};
use report::{Outcome, Report};

#[derive(Parser)]
#[command(name = "rackalg", version, about = "Exact computations for rack-type Nichols algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// also write the report to this path
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// include wall-clock time in the report (breaks byte-identical output)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// rack axioms and properties
    #[command(subcommand)]
    Rack(RackCmd),
    /// 2-cocycle law
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// braid equation of V(X,q) or W(q,X)
    #[command(subcommand)]
    Braid(BraidCmd),
    /// quadratic Nichols algebra: dimension, J², Hilbert series
    #[command(subcommand)]
    Nichols(NicholsCmd),
    /// Gröbner basis of an ideal file
    #[command(subcommand)]
    Gb(GbCmd),
    /// deformed ideals: nonzero checks, the printed basis audit, parameter spaces
    #[command(subcommand)]
    Deform(DeformCmd),
    /// lifting generators over kS₄ and k^S₄
    #[command(subcommand)]
    Lift(LiftCmd),
    /// principal realizations over S₄
    #[command(subcommand)]
    Realize(RealizeCmd),
}

#[derive(Args, Clone)]
struct RackArgs {
    /// builtin rack: o2N (N = 2..9) or o44
    #[arg(long)]
    rack: Option<String>,
    /// rack JSON, or a cocycle file {"rack": ..., "q": ...}
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    #[command(flatten)]
    rack: RackArgs,
    /// const:ω or chi
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long, value_enum, default_value_t = FlavorArg::V)]
    flavor: FlavorArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    #[value(name = "V")]
    V,
    #[value(name = "W")]
    W,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::V => Flavor::V,
            FlavorArg::W => Flavor::W,
        }
    }
}

#[derive(Subcommand)]
enum RackCmd {
    /// validate the axioms
    Check(RackArgs),
    /// faithful, indecomposable, quandle, inner group order
    Props(RackArgs),
}

#[derive(Subcommand)]
enum CocycleCmd {
    Check {
        #[command(flatten)]
        rack: RackArgs,
        #[arg(long)]
        cocycle: Option<String>,
    },
}

#[derive(Subcommand)]
enum BraidCmd {
    Check(SpaceArgs),
}

#[derive(Subcommand)]
enum NicholsCmd {
    /// dimension of T(V) modulo the quadratic relations
    Dim {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// span of the b_C against ker ς₂
    J2(SpaceArgs),
    /// Hilbert series; with --sym-deg also the ranks of ς_m
    Hilbert {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        max_deg: Option<usize>,
        /// compare against quantum symmetrizer ranks up to this degree
        #[arg(long)]
        sym_deg: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GbCmd {
    /// complete an ideal file and audit the result
    Run {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        max_deg: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// quotients at seeded random parameters are nonzero, and flat where admissible
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// extra parameter sets: one DeformParams object or a list of them
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// the printed Gröbner basis for n = 4 lies in the computed ideal
    Audit {
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// pointed and copointed parameter spaces
    Params {
        #[command(flatten)]
        rack: RackArgs,
        #[arg(long)]
        cocycle: Option<String>,
    },
}

#[derive(Subcommand)]
enum LiftCmd {
    /// b_C − λ_C(1 − g_C) over kS₄
    Pointed {
        #[arg(long)]
        rack: String,
        #[arg(long)]
        cocycle: String,
        /// λ per R' class, comma separated; default zero
        #[arg(long, conflicts_with = "free")]
        lambda: Option<String>,
        /// values of the free coordinates of the parameter space
        #[arg(long)]
        free: Option<String>,
    },
    /// deformed relations over k^S₄
    Copointed {
        /// TranspMinus, TranspChi or FourCycles
        #[arg(long)]
        family: String,
        /// λ per rack element, comma separated
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Args)]
struct RealizeArgs {
    /// builtin datum: o24 or o44
    #[arg(long)]
    rack: Option<String>,
    /// const:-1 (sign character) or chi
    #[arg(long)]
    cocycle: Option<String>,
    /// realization JSON
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RealizeCmd {
    /// datum axioms, comatrix audits on both sides, and g_C ≠ g_x
    Check(RealizeArgs),
    /// the copointed braiding is W(q,X) and the pointed one V(X,q)
    Dual(RealizeArgs),
    /// the characters θ_z on k^G
    Theta(RealizeArgs),
}

fn config(max_deg: Option<usize>) -> GroebnerConfig {
    GroebnerConfig { max_deg: max_deg.unwrap_or(DEFAULT_MAX_DEG), ..GroebnerConfig::default() }
}

fn dim_value(d: &QuotientDim) -> Value {
    match d {
        QuotientDim::Finite(n) => json!(n),
        QuotientDim::Infinite => json!("infinite"),
        QuotientDim::UnknownTruncated => json!("unknown"),
    }
}

fn texts(ps: &[FreePoly], alphabet: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display(alphabet)).collect()
}

fn rack_check(a: &RackArgs) -> Result<Outcome> {
    let r = load_rack(a.rack.as_deref(), a.file.as_deref())?;
    Ok(Outcome::info(json!({
        "n": r.rack.len(),
        "labels": r.rack.labels(),
        "table": r.rack.table(),
        "properties": r.rack.properties(),
    })))
}

fn rack_props(a: &RackArgs) -> Result<Outcome> {
    let r = load_rack(a.rack.as_deref(), a.file.as_deref())?;
    let inner = r.rack.inner_group()?;
    Ok(Outcome::info(json!({
        "n": r.rack.len(),
        "properties": r.rack.properties(),
        "inner_group_order": inner.order(),
        "permutations": r.builtin.map(|b| b.perms.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    })))
}

fn cocycle_check(a: &RackArgs, cocycle: Option<&str>) -> Result<Outcome> {
    let r = load_rack(a.rack.as_deref(), a.file.as_deref())?;
    let q = load_cocycle(&r, cocycle)?;
    Ok(Outcome::info(json!({
        "n": q.len(),
        "constant": q.is_constant().map(fmt_q),
        "diagonal_minus_one": rackalg::cocycle::diagonal_is_minus_one(&q),
        "q": q,
    })))
}

fn space(a: &SpaceArgs) -> Result<(input::RackInput, rackalg::cocycle::Cocycle)> {
    let r = load_rack(a.rack.rack.as_deref(), a.rack.file.as_deref())?;
    let q = load_cocycle(&r, a.cocycle.as_deref())?;
    Ok((r, q))
}

fn braid_check(a: &SpaceArgs) -> Result<Outcome> {
    let (r, q) = space(a)?;
    let ok = BraidedSpace::from_rack(&r.rack, &q, a.flavor.into()).check_braid_equation();
    Ok(Outcome::new(ok, json!({ "dim": r.rack.len(), "flavor": Flavor::from(a.flavor), "braid_equation": ok })))
}

fn nichols_dim(a: &SpaceArgs, max_deg: Option<usize>) -> Result<Outcome> {
    let (r, q) = space(a)?;
    let rels = quadratic_relations(&r.rack, &q, a.flavor.into());
    let gb = groebner(r.rack.len(), &rels, config(max_deg))?;
    let dim = gb.quotient_dim();
    if dim == QuotientDim::UnknownTruncated {
        return Err(Error::DegreeBudgetExceeded(format!(
            "basis incomplete at max degree {}; the dimension is undetermined",
            config(max_deg).max_deg
        )));
    }
    let top = match dim {
        QuotientDim::Finite(_) => gb.basis().iter().filter_map(FreePoly::degree).max().unwrap_or(0) * r.rack.len(),
        _ => config(max_deg).max_deg,
    };
    let mut hilbert = gb.hilbert_series(top);
    while hilbert.len() > 1 && hilbert.last() == Some(&0) {
        hilbert.pop();
    }
    Ok(Outcome::info(json!({
        "dim": dim_value(&dim),
        "relations": rels.len(),
        "basis_size": gb.basis().len(),
        "hilbert": hilbert,
    })))
}

fn nichols_j2(a: &SpaceArgs) -> Result<Outcome> {
    let (r, q) = space(a)?;
    let rep = verify_j2_report(&r.rack, &q, a.flavor.into());
    let rp = rprime_report(&r.rack, &q);
    let sizes = size_counts(&rp.classes.iter().filter(|c| c.in_rprime).cloned().collect::<Vec<_>>());
    Ok(Outcome::new(rep.equal, json!({ "j2": rep, "rprime_count": rp.rprime_count, "rprime_sizes": sizes })))
}

fn nichols_hilbert(a: &SpaceArgs, max_deg: Option<usize>, sym_deg: Option<usize>) -> Result<Outcome> {
    let (r, q) = space(a)?;
    let rels = quadratic_relations(&r.rack, &q, a.flavor.into());
    let cfg = config(max_deg);
    let gb = groebner(r.rack.len(), &rels, cfg)?;
    let hilbert = gb.hilbert_series(cfg.max_deg);
    let mut body = json!({
        "dim": dim_value(&gb.quotient_dim()),
        "complete": gb.is_complete(),
        "hilbert": hilbert,
    });
    let mut ok = true;
    if let Some(m) = sym_deg {
        let sym = BraidedSpace::from_rack(&r.rack, &q, a.flavor.into()).nichols_dims(m)?;
        ok = sym.dims.iter().zip(&hilbert).all(|(a, b)| *a as u128 == *b);
        body["symmetrizer_ranks"] = json!(sym.dims);
        body["agree"] = json!(ok);
    }
    Ok(Outcome::new(ok, body))
}

fn gb_run(file: &std::path::Path, max_deg: Option<usize>) -> Result<Outcome> {
    let ideal: IdealFile = from_value(read_json(file)?)?;
    let gens = ideal.polys()?;
    let cfg = config(max_deg);
    let gb = groebner(ideal.alphabet.len(), &gens, cfg)?;
    let residues = gb.audit_obstructions(cfg.max_deg);
    let idempotent = gens.iter().all(|g| {
        let nf = gb.normal_form(g);
        gb.normal_form(&nf) == nf && nf.is_zero()
    });
    let dim = gb.quotient_dim();
    Ok(Outcome::new(
        residues.is_empty() && idempotent,
        json!({
            "dim": dim_value(&dim),
            "generators_reduce_to_zero": idempotent,
            "unresolved_s_elements": texts(&residues, &ideal.alphabet),
            "basis": GbFile::new(ideal.alphabet.clone(), &gb),
        }),
    ))
}

fn deform_verify(
    family: &str,
    n: usize,
    samples: usize,
    seed: u64,
    file: Option<&std::path::Path>,
    max_deg: Option<usize>,
) -> Result<Outcome> {
    let family: Family = family.parse()?;
    let pinned: Vec<DeformParams> = match file {
        None => Vec::new(),
        Some(p) => match read_json(p)? {
            Value::Array(items) => items.into_iter().map(from_value).collect::<Result<_>>()?,
            v => vec![from_value(v)?],
        },
    };
    let rep = verify_nonzero(family, n, samples, seed, &pinned, config(max_deg))?;
    Ok(Outcome::new(rep.pass(), rep))
}

fn deform_audit(samples: usize, seed: u64) -> Result<Outcome> {
    if samples == 0 {
        return Err(Error::Invalid("at least one specialization is required".into()));
    }
    let mut audits = Vec::with_capacity(samples);
    for i in 0..samples as u64 {
        let (_, p) = sample_params(Family::Eminus, 4, seed, i)?;
        let DeformParams::Eminus { alpha, mu1, mu2, .. } = p else { unreachable!("Eminus samples") };
        audits.push(appendix_membership_audit(&alpha, &mu1, &mu2, GroebnerConfig::default())?);
    }
    let printed = audits.iter().all(|a| a.pass());
    let corrected = audits.iter().all(|a| a.pass_corrected());
    Ok(Outcome::new(
        printed,
        json!({
            "specializations": samples,
            "printed_pass": printed,
            "corrected_pass": corrected,
            "corrections": rackalg::deform::CORRECTIONS
                .iter()
                .map(|(i, from, to)| json!({ "element": i, "printed": from, "corrected": to }))
                .collect::<Vec<_>>(),
            "audits": audits,
        }),
    ))
}

fn deform_params(a: &RackArgs, cocycle: Option<&str>) -> Result<Outcome> {
    let r = load_rack(a.rack.as_deref(), a.file.as_deref())?;
    let q = load_cocycle(&r, cocycle)?;
    Ok(Outcome::info(json!({
        "labels": r.rack.labels(),
        "pointed": pointed_lambda_space(&r.rack, &q).export(),
        "copointed": copointed_lambda_space(&r.rack, &q).export(),
        "hom_vanishing": hom_vanishing_check(&r.rack, &q),
    })))
}

fn chi_name(cocycle: &str) -> Result<&'static str> {
    match cocycle {
        "const:-1" => Ok("sgn"),
        "chi" => Ok("chi"),
        _ => Err(Error::Invalid(format!("no builtin realization for cocycle {cocycle:?}; use const:-1 or chi"))),
    }
}

fn lift_pointed(rack: &str, cocycle: &str, lambda: Option<&str>, free: Option<&str>) -> Result<Outcome> {
    let real = PrincipalRealization::builtin(rack, chi_name(cocycle)?)?;
    let q = real.cocycle()?;
    let space = pointed_lambda_space(&real.rack, &q);
    let lambda = match (lambda, free) {
        (Some(l), _) => parse_list(l)?,
        (None, Some(f)) => {
            let values = parse_list(f)?;
            if values.len() != space.free_dim() {
                return Err(Error::IndexMismatch(format!("{} free values, expected {}", values.len(), space.free_dim())));
            }
            space.instantiate(&values)
        }
        (None, None) => vec![rackalg::Q::from_integer(0.into()); space.classes.len()],
    };
    let gens = pointed_lifting_generators(&real, &lambda)?;
    let alphabet = real.rack.labels().to_vec();
    Ok(Outcome::info(json!({
        "lambda": lambda.iter().map(fmt_q).collect::<Vec<_>>(),
        "generators": gens
            .iter()
            .map(|g| json!({
                "b_c": g.poly.display(&alphabet),
                "lambda": fmt_q(&g.lambda),
                "g_c": g.g_c_label,
                "class": g.class,
            }))
            .collect::<Vec<_>>(),
    })))
}

fn lift_copointed(family: &str, lambda: &str) -> Result<Outcome> {
    let family: CopointedFamily = from_value(json!(family))
        .map_err(|_| Error::Invalid(format!("unknown family {family:?}; expected TranspMinus, TranspChi or FourCycles")))?;
    let gens = copointed_lifting_generators(&CopointedLambda { family, lambda: parse_list(lambda)? })?;
    Ok(Outcome::info(gens))
}

fn realization(a: &RealizeArgs) -> Result<(PrincipalRealization, rackalg::cocycle::Cocycle)> {
    match (&a.file, &a.rack) {
        (Some(path), None) => {
            if a.cocycle.is_some() {
                return Err(Error::Invalid("--cocycle applies to builtin data only".into()));
            }
            let file: RealizationFile = from_value(read_json(path)?)?;
            let r = file.realize()?;
            let q = r.cocycle()?;
            Ok((r, q))
        }
        (None, Some(rack)) => {
            let cocycle = a.cocycle.as_deref().unwrap_or("const:-1");
            let r = PrincipalRealization::builtin(rack, chi_name(cocycle)?)?;
            // audit against the named cocycle, not the induced one
            let q = rackalg::builtin::setting(rack, cocycle)?.1;
            Ok((r, q))
        }
        _ => Err(Error::Invalid("give either --rack (with --cocycle) or --file".into())),
    }
}

fn realize_check(a: &RealizeArgs) -> Result<Outcome> {
    let (r, q) = realization(a)?;
    let principal = validate_principal(&r, &q);
    let pointed = comatrix_action_audit(&r, &q, Side::Pointed);
    let copointed = comatrix_action_audit(&r, &q, Side::Copointed);
    let zero = vec![rackalg::Q::from_integer(0.into()); rackalg::quadrel::select_rprime(&r.rack, &q).len()];
    let condition = match pointed_lifting_generators(&r, &zero) {
        Ok(_) => json!({ "pass": true }),
        Err(e @ Error::ConditionViolated { .. }) => json!({ "pass": false, "witness": e.to_string() }),
        Err(e) => return Err(e),
    };
    let ok = principal.all_pass && pointed.all_pass && copointed.all_pass && condition["pass"] == json!(true);
    Ok(Outcome::new(
        ok,
        json!({
            "group": r.group.name(),
            "principal": principal,
            "comatrix_pointed": pointed,
            "comatrix_copointed": copointed,
            "condition": condition,
        }),
    ))
}

fn realize_dual(a: &RealizeArgs) -> Result<Outcome> {
    let (r, _) = realization(a)?;
    let ok = dual_braiding_check(&r);
    Ok(Outcome::new(ok, json!({ "dual_braiding": ok })))
}

fn realize_theta(a: &RealizeArgs) -> Result<Outcome> {
    let (r, _) = realization(a)?;
    let (thetas, rep) = theta_characters(&r);
    Ok(Outcome::new(rep.relation_holds, json!({ "thetas": thetas, "report": rep })))
}

fn command_name(cmd: &Cmd) -> (String, Option<u64>) {
    let (name, seed) = match cmd {
        Cmd::Rack(RackCmd::Check(_)) => ("rack check", None),
        Cmd::Rack(RackCmd::Props(_)) => ("rack props", None),
        Cmd::Cocycle(_) => ("cocycle check", None),
        Cmd::Braid(_) => ("braid check", None),
        Cmd::Nichols(NicholsCmd::Dim { .. }) => ("nichols dim", None),
        Cmd::Nichols(NicholsCmd::J2(_)) => ("nichols j2", None),
        Cmd::Nichols(NicholsCmd::Hilbert { .. }) => ("nichols hilbert", None),
        Cmd::Gb(_) => ("gb run", None),
        Cmd::Deform(DeformCmd::Verify { seed, .. }) => ("deform verify", Some(*seed)),
        Cmd::Deform(DeformCmd::Audit { seed, .. }) => ("deform audit", Some(*seed)),
        Cmd::Deform(DeformCmd::Params { .. }) => ("deform params", None),
        Cmd::Lift(LiftCmd::Pointed { .. }) => ("lift pointed", None),
        Cmd::Lift(LiftCmd::Copointed { .. }) => ("lift copointed", None),
        Cmd::Realize(RealizeCmd::Check(_)) => ("realize check", None),
        Cmd::Realize(RealizeCmd::Dual(_)) => ("realize dual", None),
        Cmd::Realize(RealizeCmd::Theta(_)) => ("realize theta", None),
    };
    (name.to_string(), seed)
}

fn run(cmd: &Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Rack(RackCmd::Check(a)) => rack_check(a),
        Cmd::Rack(RackCmd::Props(a)) => rack_props(a),
        Cmd::Cocycle(CocycleCmd::Check { rack, cocycle }) => cocycle_check(rack, cocycle.as_deref()),
        Cmd::Braid(BraidCmd::Check(a)) => braid_check(a),
        Cmd::Nichols(NicholsCmd::Dim { space, max_deg }) => nichols_dim(space, *max_deg),
        Cmd::Nichols(NicholsCmd::J2(a)) => nichols_j2(a),
        Cmd::Nichols(NicholsCmd::Hilbert { space, max_deg, sym_deg }) => nichols_hilbert(space, *max_deg, *sym_deg),
        Cmd::Gb(GbCmd::Run { file, max_deg }) => gb_run(file, *max_deg),
        Cmd::Deform(DeformCmd::Verify { family, n, samples, seed, file, max_deg }) => {
            deform_verify(family, *n, *samples, *seed, file.as_deref(), *max_deg)
        }
        Cmd::Deform(DeformCmd::Audit { samples, seed }) => deform_audit(*samples, *seed),
        Cmd::Deform(DeformCmd::Params { rack, cocycle }) => deform_params(rack, cocycle.as_deref()),
        Cmd::Lift(LiftCmd::Pointed { rack, cocycle, lambda, free }) => {
            lift_pointed(rack, cocycle, lambda.as_deref(), free.as_deref())
        }
        Cmd::Lift(LiftCmd::Copointed { family, lambda }) => lift_copointed(family, lambda),
        Cmd::Realize(RealizeCmd::Check(a)) => realize_check(a),
        Cmd::Realize(RealizeCmd::Dual(a)) => realize_dual(a),
        Cmd::Realize(RealizeCmd::Theta(a)) => realize_theta(a),
    }
}

fn emit(report: &Report, json_out: Option<&std::path::Path>) -> bool {
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = json_out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cannot write {}: {e}", path.display());
            return false;
        }
    }
    true
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let command = std::env::args().skip(1).take(2).collect::<Vec<_>>().join(" ");
            let (report, code) = Report::usage(command, e.kind().to_string());
            eprint!("{e}");
            emit(&report, None);
            return ExitCode::from(code as u8);
        }
    };
    let (command, seed) = command_name(&cli.cmd);
    let start = Instant::now();
    let outcome = run(&cli.cmd);
    let elapsed = cli.timings.then(|| start.elapsed());
    let (report, code) = Report::build(command, seed, outcome, elapsed);
    if !emit(&report, cli.json_out.as_deref()) {
        return ExitCode::from(report::EXIT_INVALID as u8);
    }
    ExitCode::from(code as u8)
}

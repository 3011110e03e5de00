use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use selfdual_core::groups::{Config, FinAbGroup, Subgroup};
use selfdual_core::quad_arith::{self, ChevalleyInput, QuadField, Splitting};
use selfdual_core::stickelberger::Stickelberger;
use selfdual_core::{psi_model, suites, swan_lattice, Error};

#[derive(Parser)]
#[command(name = "selfdual", version, about = "Stickelberger pairings, Swan ideals and quadratic-field searches")]
struct Cli {
    /// Print a human-readable listing instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = Config::default().enumeration_bound)]
    enumeration_bound: i64,
    /// Largest prime accepted by the residue-ring computations.
    #[arg(long, global = true, default_value_t = Config::default().residue_prime_bound)]
    residue_prime_bound: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hermite basis and index of the lattice A in Z^(characters).
    Stickelberger(StickelbergerArgs),
    /// Local-freeness and fiber certificate for a Swan ideal (r, Sigma_H).
    Swan(SwanArgs),
    /// Primes p <= bound with p = -1 mod 2m, optionally with V_p witnesses.
    #[command(allow_negative_numbers = true)]
    Search(SearchArgs),
    /// Structure of V_p for a quadratic field.
    #[command(allow_negative_numbers = true)]
    Vp(VpArgs),
    /// The class number formula, optionally beside the closed form 2^r1 (p-1)^r2 / n0.
    Chevalley(ChevalleyArgs),
    /// Candidate V_p orders for an inert prime of an imaginary quadratic field.
    #[command(allow_negative_numbers = true)]
    Kobayashi(KobayashiArgs),
    /// Criteria and chain checks for a module over (Z/nZ)^x.
    Psi(PsiArgs),
    /// Run every exhaustive verification suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Args, Serialize)]
struct StickelbergerArgs {
    /// Invariant factors such as "2,4"; "1" is the trivial group.
    group: String,
}

#[derive(Args, Serialize)]
struct SwanArgs {
    /// Invariant factors of G.
    group: String,
    /// Coordinates of a generator of H, e.g. "3"; repeat for more generators.
    #[arg(long = "gen", required = true)]
    generators: Vec<String>,
    /// The integer r, prime to |H|.
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    m: i64,
    bound: i64,
    /// Attach V_p witnesses for Q(sqrt D).
    #[arg(long)]
    field: Option<i64>,
}

#[derive(Args, Serialize)]
struct VpArgs {
    /// Squarefree D defining Q(sqrt D).
    d: i64,
    p: i64,
}

#[derive(Args, Serialize)]
struct ChevalleyArgs {
    #[arg(long)]
    h_k: u64,
    /// Number of real places of the base field that ramify.
    #[arg(long)]
    r: u32,
    /// Ramification indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    e: Vec<u64>,
    #[arg(long)]
    norm_index: u64,
    #[arg(long)]
    degree: u64,
    /// Also evaluate the closed form at "r1,r2,n0,p".
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lem3: Option<Vec<i64>>,
}

#[derive(Args, Serialize)]
struct KobayashiArgs {
    d: i64,
    p: i64,
}

#[derive(Args, Serialize)]
struct PsiArgs {
    /// Invariant factors of A.
    group: String,
    /// The modulus n.
    n: i64,
    /// "K:M" sets Psi_K to multiplication by M; unset operators act trivially.
    #[arg(long = "scalar", allow_hyphen_values = true)]
    scalars: Vec<String>,
    /// Check every action of a cyclic (Z/nZ)^x on A instead.
    #[arg(long, conflicts_with = "scalars")]
    all_actions: bool,
    /// Classify the prime p for a class of order --c-order.
    #[arg(long, requires = "c_order")]
    prime: Option<i64>,
    #[arg(long)]
    c_order: Option<i64>,
}

#[derive(Args, Serialize)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 12)]
    size_bound: i64,
    /// Include per-suite wall-clock times (makes the output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    DomainError,
    ResourceError,
}

#[derive(Serialize)]
struct CommandResult {
    command: &'static str,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    outputs: Option<Value>,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

type Outcome = selfdual_core::Result<Value>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

fn parse_ints(spec: &str, what: &str) -> selfdual_core::Result<Vec<i64>> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::input(format!("bad {what} '{spec}'")))
        })
        .collect()
}

fn parse_group(spec: &str) -> selfdual_core::Result<FinAbGroup> {
    let factors: Vec<i64> = parse_ints(spec, "group spec")?.into_iter().filter(|&d| d != 1).collect();
    FinAbGroup::new(factors)
}

fn stickelberger(a: &StickelbergerArgs, cfg: &Config) -> Outcome {
    let g = parse_group(&a.group)?;
    let st = Stickelberger::new(&g, cfg)?;
    let lattice = st.a_hat();
    Ok(json!({
        "invariant_factors": g.invariant_factors(),
        "characters": st.characters(),
        "basis": lattice.basis(),
        "index": lattice.index(),
    }))
}

fn swan(a: &SwanArgs, cfg: &Config) -> Outcome {
    let g = parse_group(&a.group)?;
    let gens = a
        .generators
        .iter()
        .map(|s| g.element(&parse_ints(s, "generator")?))
        .collect::<selfdual_core::Result<Vec<_>>>()?;
    let h = Subgroup::generated_by(&g, &gens);
    let cert = swan_lattice::swan_certificate(&g, &h, a.r, cfg)?;
    let ideal = swan_lattice::swan_ideal(&g, &h, a.r, cfg)?;
    let mut out = to_value(&cert);
    out["ideal_basis"] = to_value(&ideal.lattice.basis());
    Ok(out)
}

fn search(a: &SearchArgs, cfg: &Config) -> Outcome {
    match a.field {
        None => Ok(json!({ "primes": quad_arith::explicit_prime_search(a.m, a.bound)? })),
        Some(d) => {
            let report = quad_arith::explicit_prime_witness(d, a.m, a.bound, cfg)?;
            let primes: Vec<i64> = report.witnesses.iter().map(|w| w.p).collect();
            let mut out = to_value(&report);
            out["primes"] = to_value(&primes);
            Ok(out)
        }
    }
}

fn vp(a: &VpArgs, cfg: &Config) -> Outcome {
    let k = QuadField::new(a.d)?;
    let mut out = to_value(&quad_arith::vp_structure(&k, a.p, cfg)?);
    out["disc"] = json!(k.disc);
    if a.d > 0 {
        let unit = quad_arith::fundamental_unit(&k)?;
        out["fundamental_unit"] = json!({ "value": unit.display(&k), "norm": unit.norm });
        if a.p % 4 == 3 && quad_arith::splitting_type(&k, a.p)? == Splitting::Inert {
            out["remark"] = to_value(&quad_arith::remark_check(&k, a.p, cfg)?);
        }
    }
    Ok(out)
}

fn chevalley(a: &ChevalleyArgs) -> Outcome {
    let input = ChevalleyInput {
        h_k: a.h_k,
        r: a.r,
        e_list: a.e.clone(),
        norm_index: a.norm_index,
        degree: a.degree,
    };
    let mut out = to_value(&quad_arith::chevalley(&input)?);
    if let Some(l) = &a.lem3 {
        if l.len() != 4 {
            return Err(Error::input("--lem3 takes r1,r2,n0,p"));
        }
        let (r1, r2) = (u32::try_from(l[0]), u32::try_from(l[1]));
        let (Ok(r1), Ok(r2)) = (r1, r2) else {
            return Err(Error::input("r1 and r2 must be non-negative"));
        };
        let bound = quad_arith::lem3_bound(r1, r2, l[2], l[3])?;
        out["matches_lem3"] = json!(bound.value == quad_arith::chevalley(&input)?.value);
        out["lem3"] = to_value(&bound);
    }
    Ok(out)
}

fn kobayashi(a: &KobayashiArgs) -> Outcome {
    Ok(to_value(&quad_arith::kobayashi_swan(a.d, a.p)?))
}

fn psi_report(m: &psi_model::PsiModule, cfg: &Config) -> Outcome {
    let a = m.group();
    let mut subgroups = Vec::new();
    for r in psi_model::test_subgroups(m)? {
        let at = if m.n() % 2 == 1 {
            Some(psi_model::at_image(m, &r)?.members)
        } else {
            None
        };
        subgroups.push(json!({
            "members": r.members,
            "sd_kernel": psi_model::sd_kernel(m, &r)?.members,
            "at_image": at,
            "criteria_b": psi_model::check_criteria_b(m, &r)?,
            "telescoping": psi_model::telescoping_identity(m, &r)?,
            "chain": if m.n() % 2 == 1 { Some(psi_model::check_chain(m, &r)?) } else { None },
        }));
    }
    let mut fixed = Vec::new();
    for c in a.elements(cfg)? {
        if m.psi(-1, &c)? == c {
            fixed.push(json!({
                "c": c.coords,
                "in_sd_kernel": psi_model::check_criteria_a(m, &c)?,
            }));
        }
    }
    Ok(json!({
        "psi_2": m.matrix(2),
        "psi_minus_1": m.matrix(-1),
        "fixed_by_psi_minus_1": fixed,
        "subgroups": subgroups,
    }))
}

fn psi(a: &PsiArgs, cfg: &Config) -> Outcome {
    let g = parse_group(&a.group)?;
    let mut out = if a.all_actions {
        let mut actions = Vec::new();
        for m in psi_model::enumerate_actions(&g, a.n, cfg)? {
            actions.push(psi_report(&m, cfg)?);
        }
        json!({ "actions": actions })
    } else {
        let scalars = a
            .scalars
            .iter()
            .map(|s| {
                let (k, m) = s
                    .split_once(':')
                    .ok_or_else(|| Error::input(format!("scalar '{s}' is not K:M")))?;
                let k = k.trim().parse().map_err(|_| Error::input(format!("bad K in '{s}'")))?;
                let m = m.trim().parse().map_err(|_| Error::input(format!("bad M in '{s}'")))?;
                Ok((k, m))
            })
            .collect::<selfdual_core::Result<Vec<(i64, i64)>>>()?;
        let m = psi_model::PsiModule::from_scalars(g, a.n, &scalars, cfg)?;
        psi_report(&m, cfg)?
    };
    if let (Some(p), Some(c)) = (a.prime, a.c_order) {
        out["prime_report"] = to_value(&psi_model::criteria_prime_report(p, c)?);
    }
    Ok(out)
}

fn verify_all(a: &VerifyAllArgs, cfg: &Config) -> Outcome {
    let reports = suites::verify_all(a.size_bound, cfg)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let mut list = to_value(&reports);
    if !a.timings {
        for r in list.as_array_mut().into_iter().flatten() {
            r.as_object_mut().map(|o| o.remove("millis"));
        }
    }
    Ok(json!({ "all_pass": all_pass, "suites": list }))
}

fn render_pretty(res: &CommandResult) -> String {
    let mut lines = vec![format!("{} [{}]", res.command, to_value(&res.status).as_str().unwrap_or(""))];
    if let Some(e) = &res.error {
        lines.push(format!("  error: {e}"));
    }
    match &res.outputs {
        Some(Value::Object(o)) if o.contains_key("suites") => {
            lines.push(format!("  {:<22} {:>9} {:>9}  result", "suite", "cases", "failures"));
            for s in o["suites"].as_array().into_iter().flatten() {
                let verdict = if s["pass"] == json!(true) { "PASS" } else { "FAIL" };
                let ms = s.get("millis").map(|m| format!("  {m} ms")).unwrap_or_default();
                lines.push(format!(
                    "  {:<22} {:>9} {:>9}  {verdict}{ms}",
                    s["name"].as_str().unwrap_or(""),
                    s["cases"].as_u64().unwrap_or(0),
                    s["failures"].as_u64().unwrap_or(0)
                ));
                for c in s["counterexamples"].as_array().into_iter().flatten() {
                    lines.push(format!("      {}", c.as_str().unwrap_or("")));
                }
            }
        }
        Some(v) => flatten(v, "", &mut lines),
        None => {}
    }
    lines.join("\n")
}

fn flatten(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{path}[{i}]"), out);
            }
        }
        _ => out.push(format!("  {path} = {v}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config {
        enumeration_bound: cli.enumeration_bound,
        residue_prime_bound: cli.residue_prime_bound,
    };
    let (name, inputs, outcome) = match &cli.command {
        Command::Stickelberger(a) => ("stickelberger", to_value(a), stickelberger(a, &cfg)),
        Command::Swan(a) => ("swan", to_value(a), swan(a, &cfg)),
        Command::Search(a) => ("search", to_value(a), search(a, &cfg)),
        Command::Vp(a) => ("vp", to_value(a), vp(a, &cfg)),
        Command::Chevalley(a) => ("chevalley", to_value(a), chevalley(a)),
        Command::Kobayashi(a) => ("kobayashi", to_value(a), kobayashi(a)),
        Command::Psi(a) => ("psi", to_value(a), psi(a, &cfg)),
        Command::VerifyAll(a) => ("verify-all", to_value(a), verify_all(a, &cfg)),
    };
    let (status, outputs, error, code) = match outcome {
        Ok(v) => (Status::Ok, Some(v), None, 0),
        Err(Error::Input(msg)) => {
            eprintln!("error: {msg}\n\nRun 'selfdual {name} --help' for usage.");
            return ExitCode::from(2);
        }
        Err(Error::Domain(msg)) => (Status::DomainError, None, Some(msg), 3),
        Err(Error::Resource(msg)) => (Status::ResourceError, None, Some(msg), 4),
    };
    let res = CommandResult {
        command: name,
        inputs,
        outputs,
        status,
        error,
    };
    let text = if cli.pretty {
        render_pretty(&res)
    } else {
        serde_json::to_string(&res).expect("result serializes")
    };
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ringset::classify::{
    self, decide_ringset, delta_and_gamma, gamma_combination, parse_elements, reduce_set,
    separator, QuatSet, Verdict,
};
use ringset::oracle::{self, brute_force_ringset, verify_witness, Partner, Witness};
use ringset::quat::enumerate_class;
use ringset::report::{PolyReport, ReducedReport, VerdictReport, WitnessReport};
use ringset::{Error, MinPoly, Quat, RingTag};

#[derive(Parser)]
#[command(
    name = "ringset",
    version,
    about = "Decide whether a finite set of Lipschitz or Hurwitz quaternions is a ringset"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Order to work in: L (Lipschitz) or H (Hurwitz).
    #[arg(long, global = true, default_value = "L")]
    ring: RingTag,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest Γ the brute-force oracle will enumerate.
    #[arg(long, global = true, default_value_t = 16)]
    gamma_cap: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classification pipeline; negative verdicts carry a witness.
    Classify {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Write a single-class set as a + nT with T reduced.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Differences, Γ, and an integer combination of norms reaching Γ.
    Gamma {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Decide by brute-force coset enumeration.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Print a witness for a non-ringset, or check one read from a file.
    Witness {
        #[arg(allow_hyphen_values = true)]
        set: String,
        /// JSON witness to verify against the set.
        #[arg(long)]
        check: Option<String>,
    },
    /// A rational polynomial vanishing on S and equal to 1 on T.
    Separator {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// List the class of x^2 - trace·x + norm.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long)]
        norm: i64,
    },
    /// The set T_n, or the union of T_2..T_n with --union.
    TnExample {
        n: i64,
        #[arg(long)]
        union: bool,
    },
    /// Check the finite-set hypothesis for infinite ringsets up to n_max.
    CheckProp56 {
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 10)]
        n_max: i64,
    },
    /// Compare the classifier with the oracle on random single-class sets.
    SelfTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_payload(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(lines_to_list(&s))
    } else if let Some(path) = arg.strip_prefix('@') {
        let s =
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        Ok(lines_to_list(&s))
    } else {
        Ok(arg.to_string())
    }
}

/// One literal per line; blank lines and `#` comments are skipped.
fn lines_to_list(s: &str) -> String {
    s.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(",")
}

fn load_set(arg: &str, ring: RingTag) -> CliResult<QuatSet> {
    let elems = parse_elements(&read_payload(arg)?)?;
    let set = QuatSet::new(ring, elems.iter().copied())?;
    if set.len() < elems.len() {
        eprintln!(
            "note: removed {} duplicate element(s)",
            elems.len() - set.len()
        );
    }
    Ok(set)
}

fn join(qs: &[Quat]) -> String {
    qs.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_json<T: ?Sized + Serialize>(v: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("serializable report")
    );
}

fn witness_text(w: &Witness, verified: bool) -> String {
    let partner = match &w.partner {
        Partner::Unit(u) => format!("unit {u}"),
        Partner::Poly(g) => format!("g(x) = {g}"),
    };
    format!(
        "witness:\n  f(x)       = {}\n  partner    = {partner}\n  fail at    = {}\n  fail value = {}\n  modulus    = {}\n  verified   = {verified}",
        w.f, w.fail_at, w.fail_value, w.modulus
    )
}

fn verdict_text(v: &Verdict, s: &QuatSet) {
    println!("ring {}: {}", v.ring, s);
    for c in &v.classes {
        let mut line = format!("  class {} [{}]", c.min_poly, join(c.set.elems()));
        if let Some(r) = &c.reduced {
            if r.a != 0 || r.n != 1 {
                line += &format!(" = {} + {}·{}", r.a, r.n, r.t);
            }
        }
        let status = if c.is_ringset {
            "ringset"
        } else {
            "not a ringset"
        };
        println!("{line}: {:?} ({}) -> {status}", c.rule, c.detail);
    }
    println!(
        "verdict: {}",
        if v.is_ringset {
            "ringset"
        } else {
            "not a ringset"
        }
    );
    if let Some(w) = &v.witness {
        println!("{}", witness_text(w, verify_witness(w, s)));
    }
}

fn decided(is_ringset: bool) -> ExitCode {
    if is_ringset {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { set } => {
            let s = load_set(set, g.ring)?;
            let v = decide_ringset(&s)?;
            if g.json {
                print_json(&VerdictReport::new(&v, &s)?);
            } else {
                verdict_text(&v, &s);
            }
            Ok(decided(v.is_ringset))
        }
        Command::Reduce { set } => {
            let s = load_set(set, g.ring)?;
            let r = reduce_set(&s)?;
            let reduced = classify::is_reduced(&r.t)?;
            if g.json {
                print_json(
                    &json!({ "reduced": ReducedReport::from(&r), "input_is_reduced": r.a == 0 && r.n == 1 && reduced }),
                );
            } else {
                println!("{} = {} + {}·{}", s, r.a, r.n, r.t);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { set } => {
            let s = load_set(set, g.ring)?;
            let stats = delta_and_gamma(&s)?;
            let combo = if stats.gamma > 0 {
                gamma_combination(&stats)?
            } else {
                vec![]
            };
            if g.json {
                let terms: Vec<Value> = combo
                    .iter()
                    .map(|(c, d)| json!({ "coef": c, "delta": d, "norm": d.norm_int().unwrap_or(0) }))
                    .collect();
                print_json(
                    &json!({ "deltas": stats.deltas, "gamma": stats.gamma, "combination": terms }),
                );
            } else {
                println!("Δ = {{{}}}", join(&stats.deltas));
                println!("Γ = {}", stats.gamma);
                for (c, d) in &combo {
                    println!("  {c:+} · N({d}) = {c:+} · {}", d.norm_int()?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { set } => {
            let s = load_set(set, g.ring)?;
            let r = brute_force_ringset(&s, g.gamma_cap)?;
            if g.json {
                let w = r
                    .witness
                    .as_ref()
                    .map(|w| WitnessReport::new(w, &s))
                    .transpose()?;
                print_json(&json!({
                    "ring": g.ring, "is_ringset": r.is_ringset, "cosets": r.cosets,
                    "admissible": r.admissible, "witness": w,
                }));
            } else {
                println!(
                    "oracle: {} ({} cosets scanned, {} admissible)",
                    if r.is_ringset {
                        "ringset"
                    } else {
                        "not a ringset"
                    },
                    r.cosets,
                    r.admissible
                );
                if let Some(w) = &r.witness {
                    println!("{}", witness_text(w, verify_witness(w, &s)));
                }
            }
            Ok(decided(r.is_ringset))
        }
        Command::Witness { set, check } => {
            let s = load_set(set, g.ring)?;
            if let Some(path) = check {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                let rep: WitnessReport = serde_json::from_str(&extract_witness(&text)?)
                    .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                let ok = verify_witness(&rep.to_witness()?, &s);
                if g.json {
                    print_json(&json!({ "verified": ok }));
                } else {
                    println!("witness {}", if ok { "verified" } else { "rejected" });
                }
                return Ok(if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let v = decide_ringset(&s)?;
            match &v.witness {
                Some(w) if g.json => print_json(&WitnessReport::new(w, &s)?),
                Some(w) => println!("{}", witness_text(w, verify_witness(w, &s))),
                None if g.json => print_json(&Value::Null),
                None => println!("no witness: the set is a ringset"),
            }
            Ok(decided(v.is_ringset))
        }
        Command::Separator { s, t } => {
            let ss = load_set(s, g.ring)?;
            let tt = load_set(t, g.ring)?;
            let f = separator(&ss, &tt)?;
            if g.json {
                print_json(&PolyReport::from_poly(&f, g.ring)?);
            } else {
                println!("F(x) = {f}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { trace, norm } => {
            let m = MinPoly::Quadratic {
                trace: *trace,
                norm: *norm,
            };
            let class = enumerate_class(&m, g.ring)?;
            if g.json {
                print_json(
                    &json!({ "min_poly": { "trace": trace, "norm": norm }, "size": class.len(), "elems": class }),
                );
            } else {
                println!("{} elements with minimal polynomial {m}", class.len());
                for q in &class {
                    println!("{q}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::TnExample { n, union } => {
            let mut elems = Vec::new();
            let lo = if *union { 2 } else { *n };
            for k in lo..=*n {
                elems.extend(oracle::tn_example(k)?);
            }
            if g.json {
                print_json(&elems);
            } else {
                println!("{}", join(&elems));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckProp56 { set, n_max } => {
            let s = load_set(set, g.ring)?;
            let ok = oracle::check_prop56_hypothesis(&s, *n_max)?;
            if g.json {
                print_json(&json!({ "n_max": n_max, "holds": ok }));
            } else {
                println!(
                    "hypothesis {} for 2 <= n <= {n_max}",
                    if ok { "holds" } else { "fails" }
                );
            }
            Ok(decided(ok))
        }
        Command::SelfTest { seed, count } => self_test(*seed, *count, g),
    }
}

/// Accepts either a bare witness or a full verdict report.
fn extract_witness(text: &str) -> CliResult<String> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(e.to_string()))?;
    match v.get("witness") {
        Some(w) if w.is_object() => Ok(w.to_string()),
        Some(_) => Err(Failure::Usage("report carries no witness".into())),
        None => Ok(text.to_string()),
    }
}

fn random_subset(rng: &mut ChaCha8Rng, ring: RingTag) -> CliResult<QuatSet> {
    loop {
        let trace = rng.gen_range(-2..=2i64);
        let norm = rng.gen_range(1..=30i64);
        let class = enumerate_class(&MinPoly::Quadratic { trace, norm }, ring)?;
        if class.len() < 2 {
            continue;
        }
        let k = rng.gen_range(2..=class.len().min(5));
        let pick: Vec<Quat> = class.choose_multiple(rng, k).copied().collect();
        return Ok(QuatSet::new(ring, pick)?);
    }
}

fn self_test(seed: u64, count: usize, g: &Global) -> CliResult<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut skipped) = (0usize, 0usize);
    let mut disagreements = Vec::new();
    for _ in 0..count {
        let s = random_subset(&mut rng, g.ring)?;
        let v = decide_ringset(&s)?;
        // verdicts are invariant under a + nT, so the oracle may run on T
        let target = if delta_and_gamma(&s)?.gamma <= g.gamma_cap {
            s.clone()
        } else {
            reduce_set(&s)?.t
        };
        if target.len() < 2 || delta_and_gamma(&target)?.gamma > g.gamma_cap {
            skipped += 1;
            continue;
        }
        let r = oracle::brute_force_ringset_class(&target, g.gamma_cap)?;
        if r.is_ringset == v.is_ringset {
            agree += 1;
        } else {
            disagreements.push(s.to_string());
        }
    }
    if g.json {
        print_json(
            &json!({ "seed": seed, "agree": agree, "skipped": skipped, "disagree": disagreements }),
        );
    } else {
        println!(
            "self-test seed {seed}: {agree} agree, {skipped} skipped, {} disagree",
            disagreements.len()
        );
        for d in &disagreements {
            println!("  disagreement on {d}");
        }
    }
    Ok(decided(disagreements.is_empty()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

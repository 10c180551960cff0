//! Command-line surface: every verification and table as a reproducible
//! command with text or JSON output.
//!
//! Exit status contract: 0 when every asserted property holds, 1 when a
//! mathematical assertion fails (a witness is printed), 2 on usage or
//! configuration errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gfcaps::caps::{self, CapReport, CapsError, CompletenessReport};
use gfcaps::cards::{self, CardsError};
use gfcaps::cosetsearch::{self, SearchError};
use gfcaps::ffield::{default_modulus, FieldCtx, FieldError, FieldSpec, Poly, PolyError};
use gfcaps::groups::{self, GroupError, SubgroupHandle};

/// Line to stdout, swallowing broken-pipe errors so `gfcaps ... | head`
/// exits quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "gfcaps",
    version,
    about = "Finite-field subgroup cap sets: verification, scans, coset searches, card tables",
    after_help = "Exit status: 0 = verified, 1 = a mathematical assertion failed, 2 = usage error."
)]
struct Cli {
    /// Field characteristic (a prime)
    #[arg(long, global = true)]
    p: Option<u32>,

    /// Extension degree
    #[arg(long, global = true)]
    n: Option<u32>,

    /// Modulus polynomial override, e.g. "x^4+2x+2" or a coefficient list "2,2,0,0,1" in brackets
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// Subgroup order (must divide q-1)
    #[arg(long, global = true)]
    d: Option<u32>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized self-checks; recorded in reports so identical
    /// invocations produce identical bytes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that the order-d subgroup is a cap with strong solution
    /// structure, optionally checking completeness both ways
    Verify {
        /// Also require completeness (naive and generator-reduced must agree)
        #[arg(long)]
        complete: bool,
    },
    /// One verdict row per divisor of q-1
    Scan,
    /// Emit the card-code coset table for a deck
    Tables {
        /// "set" or "quads"
        deck: String,
    },
    /// List all cosets of the order-d subgroup, each re-verified as a cap
    Cosets,
    /// Coset-pair spectrum and pairing, or (with --r) the r-coset union search
    Pairs {
        /// Search unions of exactly this many cosets instead
        #[arg(long)]
        r: Option<u32>,
    },
    /// Check the binary family: subgroups of order 2^n+1 in GF(2^(2n))
    Family {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("unknown deck {0:?}: expected \"set\" or \"quads\"")]
    UnknownDeck(String),
    #[error("--n-min {0} must not exceed --n-max {1}")]
    BadRange(u32, u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Caps(#[from] CapsError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Cards(#[from] CardsError),
}

/// Whether every property the command asserts actually held.
enum Outcome {
    Pass,
    MathFail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::MathFail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify { complete } => cmd_verify(&cli, complete),
        Command::Scan => cmd_scan(&cli),
        Command::Tables { ref deck } => cmd_tables(&cli, deck),
        Command::Cosets => cmd_cosets(&cli),
        Command::Pairs { r } => cmd_pairs(&cli, r),
        Command::Family { n_min, n_max } => cmd_family(&cli, n_min, n_max),
    }
}

fn build_ctx(cli: &Cli) -> Result<FieldCtx, CliError> {
    let p = cli.p.ok_or(CliError::Missing("p"))?;
    let n = cli.n.ok_or(CliError::Missing("n"))?;
    let modulus = match &cli.modulus {
        Some(s) => Poly::parse(p, s)?,
        None => default_modulus(p, n)?,
    };
    Ok(FieldCtx::build(FieldSpec::new(p, n, modulus)?)?)
}

fn subgroup(cli: &Cli, ctx: &FieldCtx) -> Result<SubgroupHandle, CliError> {
    let d = cli.d.ok_or(CliError::Missing("d"))?;
    Ok(groups::subgroup_of_order(ctx, d)?)
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    modulus_str: String,
    generator: String,
    generator_enc: u32,
}

impl FieldInfo {
    fn of(ctx: &FieldCtx) -> FieldInfo {
        FieldInfo {
            p: ctx.p(),
            n: ctx.n(),
            q: ctx.q(),
            modulus: ctx.modulus().coeffs().to_vec(),
            modulus_str: ctx.modulus().to_string(),
            generator: ctx.poly_string(ctx.generator().encoding()),
            generator_enc: ctx.generator().encoding(),
        }
    }

    fn headline(&self) -> String {
        format!(
            "GF({}) = GF({}^{}), modulus {}, generator {}",
            self.q, self.p, self.n, self.modulus_str, self.generator
        )
    }
}

fn witness_text(ctx: &FieldCtx, witness: &[u32]) -> String {
    let parts: Vec<String> = witness
        .iter()
        .map(|&enc| match ctx.log_enc(enc) {
            Some(k) => format!("{enc} = {} = g^{k}", ctx.poly_string(enc)),
            None => format!("{enc} = 0"),
        })
        .collect();
    format!("{{ {} }}", parts.join(", "))
}

fn cap_json(ctx: &FieldCtx, report: &CapReport) -> serde_json::Value {
    json!({
        "verdict": report.verdict,
        "set_size": report.set_size,
        "distinct_zero_sum_count": report.distinct_zero_sum_count,
        "witness": report.witness.as_ref().map(|w| caps::witness_elems(ctx, w)),
    })
}

fn completeness_json(report: &CompletenessReport) -> serde_json::Value {
    serde_json::to_value(report).expect("serializable")
}

fn cmd_verify(cli: &Cli, check_complete: bool) -> Result<Outcome, CliError> {
    let ctx = build_ctx(cli)?;
    let g = subgroup(cli, &ctx)?;
    let cap = caps::is_cap(&ctx, g.elements())?;
    let strong = match ctx.p() {
        3 => caps::strong_structure_char3(&ctx, &g)?,
        _ => caps::strong_structure_char2(&ctx, &g)?,
    };
    let arity = if ctx.p() == 3 { 3 } else { 4 };
    let completeness = if check_complete && cap.verdict {
        let naive = caps::is_complete_naive(&ctx, g.elements(), arity)?;
        let reduced = caps::is_complete_subgroup_reduced(&ctx, &g, arity)?;
        Some((naive, reduced))
    } else {
        None
    };

    let complete_ok = match &completeness {
        None => !check_complete || cap.verdict,
        Some((naive, reduced)) => {
            naive.complete && reduced.complete && naive.complete == reduced.complete
        }
    };
    let pass = cap.verdict && strong && complete_ok;

    let info = FieldInfo::of(&ctx);
    match cli.format {
        Format::Json => {
            let value = json!({
                "command": "verify",
                "seed": cli.seed,
                "field": info,
                "subgroup": { "d": g.d(), "e": g.e() },
                "cap": cap_json(&ctx, &cap),
                "strong": strong,
                "completeness": completeness.as_ref().map(|(naive, reduced)| json!({
                    "naive": completeness_json(naive),
                    "generator_reduced": completeness_json(reduced),
                    "agree": naive.complete == reduced.complete,
                })),
                "pass": pass,
            });
            out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Text => {
            out!("field {}", info.headline());
            out!("subgroup of order d={} (index e={})", g.d(), g.e());
            match &cap.witness {
                None => out!(
                    "cap: yes ({} elements, no zero-sum tuple of distinct members)",
                    cap.set_size
                ),
                Some(w) => out!(
                    "cap: NO — {} distinct zero-sum tuples, witness {}",
                    cap.distinct_zero_sum_count,
                    witness_text(&ctx, w)
                ),
            }
            out!("strong solution structure: {}", if strong { "yes" } else { "NO" });
            if let Some((naive, reduced)) = &completeness {
                out!(
                    "complete: naive={}, generator-reduced={}, methods {}",
                    if naive.complete { "yes" } else { "NO" },
                    if reduced.complete { "yes" } else { "NO" },
                    if naive.complete == reduced.complete { "agree" } else { "DISAGREE" },
                );
            } else if check_complete {
                out!("complete: not checked (subgroup is not a cap)");
            }
            out!("result: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { Outcome::Pass } else { Outcome::MathFail })
}

fn cmd_scan(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = build_ctx(cli)?;
    let rows = cosetsearch::subgroup_cap_scan(&ctx)?;
    let info = FieldInfo::of(&ctx);
    match cli.format {
        Format::Json => {
            let value = json!({
                "command": "scan",
                "seed": cli.seed,
                "field": info,
                "rows": rows,
            });
            out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Text => {
            out!("field {}", info.headline());
            out!("{:>6}  {:>4}  {:>6}  {:>8}", "d", "cap", "strong", "complete");
            for row in &rows {
                out!(
                    "{:>6}  {:>4}  {:>6}  {:>8}",
                    row.d,
                    if row.is_cap { "yes" } else { "no" },
                    if row.strong { "yes" } else { "no" },
                    match row.complete {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "-",
                    }
                );
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_tables(cli: &Cli, deck: &str) -> Result<Outcome, CliError> {
    let table = match deck {
        "set" => cards::emit_set_table(&cards::set_ctx())?,
        "quads" => cards::emit_quads_table(&cards::quads_ctx())?,
        other => return Err(CliError::UnknownDeck(other.to_string())),
    };
    match cli.format {
        Format::Json => {
            out!("{}", serde_json::to_string_pretty(&table).expect("serializable"));
        }
        Format::Text => out!("{}", table.to_text().trim_end_matches('\n')),
    }
    Ok(Outcome::Pass)
}

fn cmd_cosets(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = build_ctx(cli)?;
    let g = subgroup(cli, &ctx)?;
    let family = groups::coset_family(&ctx, &g);
    let verdicts: Vec<CapReport> = family
        .cosets
        .iter()
        .map(|coset| caps::is_cap(&ctx, coset))
        .collect::<Result<_, _>>()?;
    let info = FieldInfo::of(&ctx);
    match cli.format {
        Format::Json => {
            let cosets: Vec<serde_json::Value> = (0..family.e)
                .map(|j| {
                    json!({
                        "label": j,
                        "elements": family.sorted_coset(j),
                        "cap": cap_json(&ctx, &verdicts[j as usize]),
                    })
                })
                .collect();
            let value = json!({
                "command": "cosets",
                "seed": cli.seed,
                "field": info,
                "q": ctx.q(),
                "d": g.d(),
                "e": g.e(),
                "generator": info.generator,
                "cosets": cosets,
            });
            out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Text => {
            out!("field {}", info.headline());
            out!(
                "{} cosets of the order-{} subgroup (index e={})",
                family.e,
                g.d(),
                g.e()
            );
            for j in 0..family.e {
                let encs = family.sorted_coset(j);
                let list: Vec<String> = encs.iter().map(|e| e.to_string()).collect();
                out!(
                    "coset {j} ({}): {}",
                    if verdicts[j as usize].verdict { "cap" } else { "NOT a cap" },
                    list.join(" ")
                );
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_pairs(cli: &Cli, r: Option<u32>) -> Result<Outcome, CliError> {
    let ctx = build_ctx(cli)?;
    let g = subgroup(cli, &ctx)?;
    // report a non-cap subgroup as a mathematical failure, with its witness
    let cap = caps::is_cap(&ctx, g.elements())?;
    if !cap.verdict {
        match cli.format {
            Format::Json => {
                let value = json!({
                    "command": "pairs",
                    "seed": cli.seed,
                    "field": FieldInfo::of(&ctx),
                    "subgroup": { "d": g.d(), "e": g.e() },
                    "cap": cap_json(&ctx, &cap),
                    "pass": false,
                });
                out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            }
            Format::Text => {
                out!(
                    "subgroup of order {} is NOT a cap, witness {}",
                    g.d(),
                    witness_text(&ctx, cap.witness.as_ref().expect("non-cap has witness"))
                );
            }
        }
        return Ok(Outcome::MathFail);
    }

    let info = FieldInfo::of(&ctx);
    match r {
        Some(r) => {
            let found = cosetsearch::exists_union_cap(&ctx, &g, r)?;
            let candidates = if r == 0 {
                0
            } else {
                binomial(g.e() as u64 - 1, r as u64 - 1)
            };
            match cli.format {
                Format::Json => {
                    let value = json!({
                        "command": "pairs",
                        "seed": cli.seed,
                        "field": info,
                        "subgroup": { "d": g.d(), "e": g.e() },
                        "r": r,
                        "candidates_examined": candidates,
                        "found": found,
                    });
                    out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Text => {
                    out!("field {}", info.headline());
                    match &found {
                        Some(hit) => out!(
                            "union of {} cosets with labels {:?} is a cap of size {}",
                            r, hit.coset_labels, hit.union_size
                        ),
                        None => out!(
                            "no {}-coset union cap (exhausted all {} candidates with label 0 fixed)",
                            r, candidates
                        ),
                    }
                }
            }
        }
        None => {
            let spectrum = cosetsearch::pair_difference_spectrum(&ctx, &g)?;
            let partition = cosetsearch::find_pair_partition(&ctx, &g);
            // an odd index means pairing is impossible, not a failure
            let partition = match partition {
                Ok(p) => Ok(p),
                Err(SearchError::OddIndex(_)) => Ok(None),
                Err(e) => Err(e),
            }?;
            match cli.format {
                Format::Json => {
                    let partition_json = partition.as_ref().map(|p| {
                        let exponents: Vec<Vec<u32>> = p
                            .blocks
                            .iter()
                            .map(|block| {
                                let mut exps: Vec<u32> = block
                                    .iter()
                                    .map(|&enc| ctx.log_enc(enc).expect("nonzero member"))
                                    .collect();
                                exps.sort_unstable();
                                exps
                            })
                            .collect();
                        json!({
                            "pairs": p.pairs,
                            "blocks": p.blocks,
                            "block_exponents": exponents,
                        })
                    });
                    let value = json!({
                        "command": "pairs",
                        "seed": cli.seed,
                        "field": info,
                        "subgroup": { "d": g.d(), "e": g.e() },
                        "spectrum": spectrum,
                        "partition": partition_json,
                    });
                    out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Text => {
                    out!("field {}", info.headline());
                    if spectrum.is_empty() {
                        out!("pair spectrum: empty (no coset-pair union is a cap)");
                    } else {
                        let list: Vec<String> = spectrum.iter().map(|t| t.to_string()).collect();
                        out!("pair spectrum (label differences): {}", list.join(" "));
                    }
                    match &partition {
                        Some(p) => {
                            let pairs: Vec<String> = p
                                .pairs
                                .iter()
                                .map(|&(a, b)| format!("({a},{b})"))
                                .collect();
                            out!(
                                "pair partition: {} blocks of size {}: {}",
                                p.pairs.len(),
                                2 * g.d(),
                                pairs.join(" ")
                            );
                        }
                        None => out!("pair partition: none"),
                    }
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_family(cli: &Cli, n_min: u32, n_max: u32) -> Result<Outcome, CliError> {
    if n_min > n_max {
        return Err(CliError::BadRange(n_min, n_max));
    }
    let mut reports = Vec::new();
    for n in n_min..=n_max {
        reports.push(cosetsearch::general_family_check_with_bound(n, n_max)?);
    }
    let pass = reports.iter().all(|r| r.holds);
    match cli.format {
        Format::Json => {
            let value = json!({
                "command": "family",
                "seed": cli.seed,
                "n_min": n_min,
                "n_max": n_max,
                "results": reports,
                "pass": pass,
            });
            out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Text => {
            for r in &reports {
                out!(
                    "n={}: GF({}) subgroup of order {}: cap={} strong={} with-zero cap={} (expected {}) => {}",
                    r.n,
                    r.q,
                    r.d,
                    if r.subgroup_is_cap { "yes" } else { "NO" },
                    if r.strong { "yes" } else { "NO" },
                    if r.with_zero_is_cap { "yes" } else { "no" },
                    if r.with_zero_expected { "yes" } else { "no" },
                    if r.holds { "ok" } else { "FAIL" },
                );
                if let Some(w) = &r.with_zero_witness {
                    out!("      zero-sum witness encodings: {w:?}");
                }
            }
            out!("result: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { Outcome::Pass } else { Outcome::MathFail })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

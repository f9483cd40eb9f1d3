//! Command-line front end for `(p,q)`-clan Schubert products: expansion,
//! clan tools, weak order graphs, and self-verification against the
//! polynomial oracle.
//!
//! Exit codes: 0 success, 1 parse error, 2 not a `(p,q)`-pair,
//! 3 incomparable pair, 4 verification mismatch.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use pqclans::clan::{enumerate_clans, Clan};
use pqclans::permutation::Permutation;
use pqclans::richardson::{clan_of_pair, PairError, PqPair};
use pqclans::structure::{cross_check_against_oracle, expand_product, structure_constant};
use pqclans::weak_order::{act_word, WeakOrderGraph};

#[derive(Parser)]
#[command(
    name = "pqclans",
    about = "Schubert structure constants for (p,q)-pairs via clan combinatorics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Plain text table
    Text,
    /// JSON object
    Json,
    /// Graphviz DOT (graph commands only)
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Expand S_u · S_v in the Schubert basis for a (p,q)-pair
    Product {
        /// The pair (p,q), e.g. `3,2`
        #[arg(long)]
        pq: String,
        /// One-line notation for u
        #[arg(long)]
        u: String,
        /// One-line notation for v
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the (1,2,1,2)-avoiding clan attached to a comparable (p,q)-pair
    ClanOfPair {
        #[arg(long)]
        pq: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Apply a word of simple reflections to a clan
    Act {
        /// Comma- or space-separated simple root indices, e.g. `2,1,3,2,3,4`
        #[arg(long)]
        word: String,
        /// The clan, e.g. `+ - + - +`
        #[arg(long)]
        clan: String,
        #[arg(long)]
        pq: String,
    },
    /// List all (p,q)-clans
    Clans {
        #[arg(long)]
        pq: String,
        /// Keep only clans avoiding the (1,2,1,2) pattern
        #[arg(long)]
        avoid_1212: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the weak order graph on (p,q)-clans in DOT format
    WeakOrder {
        #[arg(long)]
        pq: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Cross-check the clan rule against the polynomial oracle
    Verify {
        /// Check every (p,q)-pair for all p + q = n up to this rank (2..=6)
        #[arg(long)]
        n_max: Option<usize>,
        /// Print the reference 20-row table for the (3,2) product
        /// S_31425 · S_14253 and check it
        #[arg(long)]
        table1: bool,
    },
}

enum CliError {
    Parse(String),
    NotPqPair(String),
    Incomparable(String),
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::NotPqPair(_) => 2,
            CliError::Incomparable(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::NotPqPair(m) | CliError::Incomparable(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Product { pq, u, v, format } => cmd_product(&pq, &u, &v, format),
        Command::ClanOfPair { pq, u, v } => cmd_clan_of_pair(&pq, &u, &v),
        Command::Act { word, clan, pq } => cmd_act(&word, &clan, &pq),
        Command::Clans { pq, avoid_1212, format } => cmd_clans(&pq, avoid_1212, format),
        Command::WeakOrder { pq, format } => cmd_weak_order(&pq, format),
        Command::Verify { n_max, table1 } => cmd_verify(n_max, table1),
    }
}

fn parse_pq(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Parse(format!("expected `p,q`, got `{text}`")));
    }
    let p = parts[0]
        .parse::<usize>()
        .map_err(|_| CliError::Parse(format!("invalid p `{}`", parts[0])))?;
    let q = parts[1]
        .parse::<usize>()
        .map_err(|_| CliError::Parse(format!("invalid q `{}`", parts[1])))?;
    if p + q == 0 {
        return Err(CliError::Parse("need p + q >= 1".into()));
    }
    Ok((p, q))
}

fn parse_perm(text: &str, n: usize, name: &str) -> Result<Permutation, CliError> {
    let w = Permutation::parse(text).map_err(|e| CliError::Parse(format!("{name}: {e}")))?;
    if w.n() != n {
        return Err(CliError::Parse(format!("{name} lies in S_{} but p + q = {n}", w.n())));
    }
    Ok(w)
}

fn parse_pair(pq: &str, u: &str, v: &str) -> Result<PqPair, CliError> {
    let (p, q) = parse_pq(pq)?;
    let u = parse_perm(u, p + q, "u")?;
    let v = parse_perm(v, p + q, "v")?;
    PqPair::new(p, q, u, v).map_err(|e| CliError::NotPqPair(e.to_string()))
}

fn cmd_product(pq: &str, u: &str, v: &str, format: Format) -> Result<(), CliError> {
    let pair = parse_pair(pq, u, v)?;
    let expansion = expand_product(pair.u(), pair.v(), pair.p(), pair.q())
        .map_err(|e| CliError::NotPqPair(e.to_string()))?;
    match format {
        Format::Text => {
            match &expansion.clan {
                Some(clan) => println!("clan: {clan}"),
                None => println!("incomparable (all constants 0)"),
            }
            println!("terms: {}", expansion.terms.len());
            for (w, c) in &expansion.terms {
                println!("{w}  {c}");
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&expansion.to_json()).expect("valid JSON"));
        }
        Format::Dot => {
            return Err(CliError::Parse("dot output is only available for graph commands".into()));
        }
    }
    Ok(())
}

fn cmd_clan_of_pair(pq: &str, u: &str, v: &str) -> Result<(), CliError> {
    let pair = parse_pair(pq, u, v)?;
    match clan_of_pair(&pair) {
        Ok(clan) => {
            println!("{clan}");
            Ok(())
        }
        Err(e @ PairError::Incomparable) => Err(CliError::Incomparable(e.to_string())),
        Err(e) => Err(CliError::NotPqPair(e.to_string())),
    }
}

fn cmd_act(word: &str, clan_text: &str, pq: &str) -> Result<(), CliError> {
    let (p, q) = parse_pq(pq)?;
    let clan = Clan::parse(clan_text, p, q).map_err(|e| CliError::Parse(e.to_string()))?;
    let word = parse_word(word, p + q)?;
    println!("{}", act_word(&word, &clan));
    Ok(())
}

fn parse_word(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut word = Vec::new();
    for tok in text.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
        let i = tok
            .parse::<usize>()
            .map_err(|_| CliError::Parse(format!("invalid word letter `{tok}`")))?;
        if i == 0 || i >= n {
            return Err(CliError::Parse(format!("word letter {i} out of range 1..={}", n - 1)));
        }
        word.push(i);
    }
    Ok(word)
}

fn cmd_clans(pq: &str, avoid_1212: bool, format: Format) -> Result<(), CliError> {
    let (p, q) = parse_pq(pq)?;
    let clans: Vec<Clan> = enumerate_clans(p, q)
        .into_iter()
        .filter(|c| !avoid_1212 || c.avoids_1212())
        .collect();
    match format {
        Format::Text => {
            for clan in &clans {
                println!("{clan}");
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "p": p,
                "q": q,
                "clans": clans.iter().map(Clan::to_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON"));
        }
        Format::Dot => {
            return Err(CliError::Parse("dot output is only available for graph commands".into()));
        }
    }
    Ok(())
}

fn cmd_weak_order(pq: &str, format: Format) -> Result<(), CliError> {
    let (p, q) = parse_pq(pq)?;
    if format != Format::Dot {
        return Err(CliError::Parse("the weak order graph is only emitted as dot".into()));
    }
    if p + q > 10 {
        return Err(CliError::Parse("weak order graph supports p + q <= 10".into()));
    }
    print!("{}", WeakOrderGraph::build(p, q).to_dot());
    Ok(())
}

/// The 20 length-6 words of S_5, the image of `(+,-,+,-,+)` under each, and
/// the structure constant of `S_31425 · S_14253`: the built-in reference for
/// `verify --table1`.
const REFERENCE_TABLE_32: [(&[usize], &str, u64); 20] = [
    (&[4, 3, 2, 4, 3, 4], "+ 1 2 2 1", 0),
    (&[1, 3, 2, 4, 3, 4], "1 + 2 2 1", 0),
    (&[1, 4, 3, 2, 3, 4], "1 + 2 2 1", 0),
    (&[1, 4, 3, 2, 4, 3], "1 + 2 2 1", 0),
    (&[2, 1, 2, 4, 3, 4], "1 2 2 + 1", 0),
    (&[2, 1, 3, 2, 3, 4], "1 2 + 2 1", 1),
    (&[2, 1, 3, 2, 4, 3], "1 2 + 2 1", 1),
    (&[2, 1, 4, 3, 2, 4], "1 2 + 2 1", 1),
    (&[2, 1, 4, 3, 2, 3], "1 2 2 + 1", 0),
    (&[3, 2, 1, 4, 3, 4], "1 2 + 1 2", 0),
    (&[3, 2, 1, 2, 3, 4], "1 2 + 2 1", 1),
    (&[3, 2, 1, 2, 4, 3], "1 2 + 2 1", 1),
    (&[3, 2, 1, 3, 2, 4], "1 2 + 1 2", 0),
    (&[3, 2, 1, 3, 2, 3], "1 2 2 1 +", 0),
    (&[3, 2, 1, 4, 3, 2], "1 2 + 2 1", 1),
    (&[4, 3, 2, 1, 3, 4], "1 2 + 2 1", 1),
    (&[4, 3, 2, 1, 4, 3], "1 2 + 2 1", 1),
    (&[4, 3, 2, 1, 2, 4], "1 + 2 2 1", 0),
    (&[4, 3, 2, 1, 2, 3], "1 2 2 + 1", 0),
    (&[4, 3, 2, 1, 3, 2], "1 2 2 + 1", 0),
];

fn paren(clan: &Clan) -> String {
    let tokens: Vec<String> = clan.symbols().iter().map(|s| s.to_string()).collect();
    format!("({})", tokens.join(","))
}

fn cmd_verify(n_max: Option<usize>, table1: bool) -> Result<(), CliError> {
    let mut mismatches = 0usize;

    if table1 {
        let u = Permutation::parse("31425").expect("valid reference data");
        let v = Permutation::parse("14253").expect("valid reference data");
        let pair = PqPair::new(3, 2, u.clone(), v.clone()).expect("valid reference data");
        let gamma = clan_of_pair(&pair).expect("the reference pair is comparable");
        println!("S_{u} · S_{v} with (p,q) = (3,2), clan {}", paren(&gamma));
        println!("{:<24} {:<14} c", "word", "image clan");
        for &(word, expected_clan, expected_c) in &REFERENCE_TABLE_32 {
            let w = Permutation::from_word(5, word);
            let image = act_word(word, &gamma);
            let c = structure_constant(&u, &v, &w, 3, 2).expect("reference pair is valid");
            let word_text = format!(
                "[{}]",
                word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
            );
            println!("{:<24} {:<14} {}", word_text, paren(&image), c);
            let expected = Clan::parse(expected_clan, 3, 2).expect("valid reference data");
            if image != expected || c != expected_c {
                mismatches += 1;
            }
        }
        println!("table check: {}", if mismatches == 0 { "ok" } else { "MISMATCH" });
    }

    if n_max.is_some() || !table1 {
        let n_max = n_max.unwrap_or(4);
        if !(2..=6).contains(&n_max) {
            return Err(CliError::Parse("--n-max must lie in 2..=6".into()));
        }
        for n in 2..=n_max {
            let result = cross_check_against_oracle(n);
            println!(
                "n={n}: {} pairs ({} comparable), {} mismatches, {} coefficients above 1",
                result.pairs_checked,
                result.comparable_pairs,
                result.mismatches.len(),
                result.multiplicity_violations.len()
            );
            mismatches += result.mismatches.len() + result.multiplicity_violations.len();
        }
        println!("{mismatches} mismatches");
    }

    if mismatches > 0 {
        return Err(CliError::Mismatch(format!(
            "{mismatches} disagreement(s) with the reference data or oracle"
        )));
    }
    Ok(())
}

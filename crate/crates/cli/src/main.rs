use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use twistgen_core::report::{run_verification, GenSet, VerifyOptions};
use twistgen_core::search::{
    closure_with_threads, express_bounded, threads_from_env, ExpressResult, Packing, Rep, DEFAULT_CAP,
};
use twistgen_core::{print_word, svg, Error, Evaluator, Model};

const EXIT_FAIL: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Homology-level checks for torsion generators of the twist subgroup of
/// odd-genus non-orientable surfaces.
///
/// Words are read as compositions of functions: in "A1 B0" the twist B0 is
/// applied first. Write X' or X^-1 for an inverse and ID for the empty word.
/// The closure worker count comes from MCG_THREADS (default 1).
#[derive(Parser)]
#[command(name = "twistgen", version)]
struct Cli {
    /// Run closures on a single thread regardless of MCG_THREADS.
    #[arg(long, global = true)]
    single_thread: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite and write a JSON report.
    Verify {
        #[arg(long)]
        genus: usize,
        /// Also run the closure over Z/3 (slow).
        #[arg(long)]
        mod3: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Record closure wall-clock times (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a word and print its action on homology.
    Eval {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the finite image of a generating set.
    Closure {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        gens: GensArg,
        #[arg(long, value_enum, default_value = "z2")]
        rep: RepArg,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Write every element with a shortest word to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Find a shortest word in a generating set equal to the target on H_1.
    Express {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        target: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "torsion")]
        gens: GensArg,
        #[arg(long, default_value_t = 2_000_000)]
        cap: usize,
    },
    /// Draw the crosscap model with some standard curves as SVG.
    Render {
        #[arg(long)]
        genus: usize,
        /// Comma-separated, e.g. a1,b0,c. Empty draws the bare model.
        #[arg(long, value_delimiter = ',', default_value = "")]
        curves: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GensArg {
    Torsion,
    Omori,
}

impl From<GensArg> for GenSet {
    fn from(g: GensArg) -> Self {
        match g {
            GensArg::Torsion => GenSet::Torsion,
            GensArg::Omori => GenSet::Omori,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Z2,
    Z3,
}

impl From<RepArg> for Rep {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Z2 => Rep::Z2,
            RepArg::Z3 => Rep::Z3,
        }
    }
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OddGenusRequired(_)
            | Error::UnknownToken { .. }
            | Error::MalformedExponent { .. }
            | Error::EmptyWord
            | Error::UnknownCurve(_)
            | Error::UnknownSymmetry(_)
            | Error::CurveUnavailable { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let threads = if cli.single_thread { 1 } else { threads_from_env() };
    match run(cli.command, threads) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cmd: Command, threads: usize) -> Result<u8, CliError> {
    match cmd {
        Command::Verify { genus, mod3, cap, timings, out } => {
            let report = run_verification(genus, &VerifyOptions { mod3, cap, timings, threads })?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            for c in &report.checks {
                eprintln!("{:<24} {:?}", c.name, c.status);
            }
            eprintln!("overall: {:?}", report.overall);
            let text = report.to_json_string();
            match out {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(report.overall.exit_code() as u8)
        }
        Command::Eval { genus, word, json } => {
            let model = Model::new(genus)?;
            let mut ev = Evaluator::new(&model);
            let m = ev.evaluate_str(&word)?;
            if json {
                let mut v = m.to_json();
                v["lift"] = json!(m.lift().to_rows());
                v["in_twist_subgroup"] = json!(m.in_twist_subgroup());
                v["is_identity"] = json!(m.is_identity());
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                println!("action on H_1 (columns are images of mu_1..mu_g):\n{}", m.lift());
                println!("free part:\n{}", m.mat_free());
                println!("mod 2:");
                for row in m.mat_z2().to_rows() {
                    let cells: Vec<String> = row.iter().map(|b| b.to_string()).collect();
                    println!("[ {} ]", cells.join(" "));
                }
                println!("det_free: {}", m.det_free());
                println!("identity: {}", m.is_identity());
                println!("in T(N_g): {}", m.in_twist_subgroup());
            }
            Ok(0)
        }
        Command::Closure { genus, gens, rep, cap, export } => {
            let model = Model::new(genus)?;
            let mut ev = Evaluator::new(&model);
            let set = GenSet::from(gens);
            let named = set.build(&mut ev)?;
            let packing = Packing::for_genus(rep.into(), genus)?;
            let keys: Vec<u128> = named.iter().map(|n| packing.key(&n.class)).collect();
            let table = closure_with_threads(packing, &keys, cap, threads)?;
            let summary = json!({
                "genus": genus,
                "gens": set,
                "rep": Rep::from(rep),
                "order": table.order(),
                "complete": table.is_complete(),
                "cap": cap,
            });
            println!("{}", serde_json::to_string_pretty(&summary).expect("json"));
            if let Some(p) = export {
                let names: Vec<String> = named.iter().map(|n| print_word(&n.word)).collect();
                fs::write(p, table.export(&names))?;
            }
            Ok(if table.is_complete() { 0 } else { EXIT_INDETERMINATE })
        }
        Command::Express { genus, target, depth, gens, cap } => {
            let model = Model::new(genus)?;
            let mut ev = Evaluator::new(&model);
            let goal = ev.evaluate_str(&target)?;
            let named = GenSet::from(gens).build(&mut ev)?;
            let result = express_bounded(&goal, &named, depth, cap);
            let code = match &result {
                ExpressResult::Found { word, length } => {
                    println!("{target} = {} (length {length})", print_word(word));
                    0
                }
                ExpressResult::NotFound { depth, visited } => {
                    println!("no word of length <= {depth} ({visited} elements visited)");
                    EXIT_FAIL
                }
                ExpressResult::CapReached { depth, visited } => {
                    println!("cap reached after depth {depth} ({visited} elements visited)");
                    EXIT_INDETERMINATE
                }
            };
            Ok(code)
        }
        Command::Render { genus, curves, out } => {
            let model = Model::new(genus)?;
            let curves: Vec<String> = curves.into_iter().filter(|c| !c.is_empty()).collect();
            fs::write(out, svg::render(&model, &curves)?)?;
            Ok(0)
        }
    }
}

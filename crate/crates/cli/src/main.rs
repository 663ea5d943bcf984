mod io;

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use ybe_core::brace::{build_perm_brace, check_brace_tables, BraceDoc, DEFAULT_BRACE_CAP};
use ybe_core::classify::{
    classify_size_p2, count_formula, enumerate_classes, irr_classes, irr_orbit_counts, mpl2_classes,
    mpl2_orbit_count,
};
use ybe_core::families::{cable, deform, scale_map};
use ybe_core::oracle::{brute_aut, brute_iso, enumerate_cycle_sets, SearchOptions};
use ybe_core::{
    classify, from_solution, to_solution, CycleSet, CycleSetDoc, Document, FamilyParams, Perm, SolutionDoc,
};

use crate::io::{parse_list, read_documents, usage, CliError, CliResult, Emitter, Format};

/// Involutive set-theoretic Yang–Baxter solutions, cycle sets and their braces.
#[derive(Parser)]
#[command(name = "ybe", version)]
struct Cli {
    /// Output file; `-` is stdout.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for the oracle search.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cyclic,
    Mpl2,
    Irr,
    All,
}

/// Where a command's cycle sets come from: `--in` documents, or a family
/// member described by flags.
#[derive(Args)]
struct Source {
    /// JSON documents (cycle sets, solutions, parameter records); `-` is stdin,
    /// which is also read when neither --in nor --family is given.
    #[arg(long = "in")]
    inputs: Vec<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    p: Option<u64>,
    /// Values of Φ on 0..p−1, comma separated.
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check documents: cycle-set axioms, solution axioms, parameter constraints, brace laws.
    Verify(Source),
    /// Cycle set to solution and back; parameter records become cycle sets.
    Convert(Source),
    /// Stream one parameter record per isomorphism class of size p².
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
    },
    /// Class counts from the closed formulas.
    Count {
        #[arg(long)]
        p: u64,
        /// Also count orbits directly and compare.
        #[arg(long)]
        orbits: bool,
    },
    /// Canonical parameters of indecomposable cycle sets of size p².
    Classify(Source),
    /// Isomorphism between exactly two cycle sets.
    Iso {
        #[command(flatten)]
        source: Source,
        /// Scan all bijections instead of the refined search.
        #[arg(long)]
        brute: bool,
    },
    /// Automorphism group.
    Aut {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        brute: bool,
    },
    /// Retraction tower and the first retraction.
    Retract(Source),
    /// k-th cabling: σ_x replaced by its k-th additive power in the permutation brace.
    Cable {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = DEFAULT_BRACE_CAP)]
        cap: usize,
    },
    /// Deformation x·y ↦ φ(x·y) by an automorphism φ.
    Deform {
        #[command(flatten)]
        source: Source,
        /// φ as a comma-separated image list.
        #[arg(long, conflicts_with = "scale")]
        perm: Option<String>,
        /// φ(a, x) = (γa, γx) on Z_p × Z_p.
        #[arg(long)]
        scale: Option<u64>,
    },
    /// Brute-force enumeration of cycle sets of size n up to isomorphism.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        indecomposable: bool,
        #[arg(long)]
        irretractable: bool,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Permutation brace summary, or its tables with --dump.
    Brace {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        dump: bool,
        #[arg(long, default_value_t = DEFAULT_BRACE_CAP)]
        cap: usize,
    },
}

impl Source {
    fn documents(&self) -> CliResult<Vec<Document>> {
        match (self.inputs.is_empty(), self.family) {
            (false, Some(_)) => usage("give either --in or --family, not both"),
            (false, None) => read_documents(&self.inputs),
            (true, Some(family)) => Ok(vec![Document::Params(self.params(family)?)]),
            (true, None) => read_documents(&["-".to_string()]),
        }
    }

    fn params(&self, family: FamilyArg) -> CliResult<FamilyParams> {
        let Some(p) = self.p else {
            return usage("--family needs --p");
        };
        let phi = || -> CliResult<Vec<u64>> {
            match &self.phi {
                Some(text) => parse_list(text, "--phi"),
                None => usage("this family needs --phi"),
            }
        };
        Ok(match family {
            FamilyArg::Cyclic => FamilyParams::Cyclic { p },
            FamilyArg::Mpl2 => FamilyParams::mpl2_zp(p, &phi()?, self.s.unwrap_or(0)),
            FamilyArg::Irr => FamilyParams::Irr { p, phi: phi()?, alpha: self.alpha.unwrap_or(1) },
            FamilyArg::All => return usage("--family all only applies to enumerate"),
        })
    }

    fn cycle_sets(&self) -> CliResult<Vec<CycleSet>> {
        self.documents()?.iter().map(|d| d.to_cycle_set().map_err(CliError::from)).collect()
    }
}

fn verify_record(doc: &Document) -> CliResult<(serde_json::Value, Option<String>)> {
    Ok(match doc {
        Document::CycleSet(d) => {
            let report = d.check()?;
            let witness = (!report.is_valid()).then(|| report.describe());
            (json!({"kind": "cycle_set", "n": d.n, "valid": report.is_valid(), "report": report}), witness)
        }
        Document::Solution(d) => {
            let report = d.check()?;
            let witness = (!report.is_valid()).then(|| report.describe());
            (json!({"kind": "solution", "n": d.n, "valid": report.is_valid(), "report": report}), witness)
        }
        Document::Params(params) => {
            let error = params
                .build()
                .and_then(|cs| {
                    let report = cs.check();
                    if report.is_valid() {
                        Ok(())
                    } else {
                        Err(ybe_core::Error::InvalidCycleSet(report.describe()))
                    }
                })
                .err()
                .map(|e| e.to_string());
            (
                json!({"kind": "params", "family": params.family_name(), "valid": error.is_none(), "error": error}),
                error.clone(),
            )
        }
        Document::Brace(d) => {
            let error = check_brace_doc(d).err();
            (json!({"kind": "perm_brace", "order": d.order, "valid": error.is_none(), "error": error}), error)
        }
    })
}

fn check_brace_doc(d: &BraceDoc) -> Result<(), String> {
    if d.order != d.add.len() || d.order != d.elements.len() {
        return Err(format!("order {} disagrees with the table sizes", d.order));
    }
    if d.elements.iter().any(|e| e.degree() != d.n_points) {
        return Err("element degree differs from n_points".into());
    }
    check_brace_tables(&d.circ, &d.add)?;
    for a in 0..d.order {
        for b in 0..d.order {
            let composed = ybe_core::perm::compose(&d.elements[a], &d.elements[b]).map_err(|e| e.to_string())?;
            if composed != d.elements[d.circ[a][b] as usize] {
                return Err(format!("circ table disagrees with composition at ({a},{b})"));
            }
        }
    }
    Ok(())
}

fn emit_cycle_set(out: &mut Emitter, cs: &CycleSet) -> CliResult {
    out.emit(&CycleSetDoc::new(cs))
}

fn single(mut sets: Vec<CycleSet>, what: &str) -> CliResult<CycleSet> {
    if sets.len() != 1 {
        return usage(format!("{what} takes exactly one cycle set, got {}", sets.len()));
    }
    Ok(sets.pop().expect("length checked"))
}

#[derive(Serialize)]
struct OrbitCheck {
    formula: classify::CountReport,
    orbit_n_mpl2: u64,
    orbit_n_irr_even: u64,
    orbit_n_irr_zero: u64,
    agree: bool,
}

fn run(cli: Cli) -> CliResult {
    let mut out = Emitter::new(Some(&cli.out), cli.format)?;
    match &cli.command {
        Command::Verify(source) => {
            let mut first_failure = None;
            for doc in source.documents()? {
                let (record, witness) = verify_record(&doc)?;
                out.emit(&record)?;
                if first_failure.is_none() {
                    first_failure = witness.map(|w| format!("{}: {w}", doc.kind()));
                }
            }
            out.finish()?;
            if let Some(w) = first_failure {
                return Err(CliError::Invalid(w));
            }
            return Ok(());
        }
        Command::Convert(source) => {
            for doc in source.documents()? {
                match &doc {
                    Document::CycleSet(_) => out.emit(&SolutionDoc::new(&to_solution(&doc.to_cycle_set()?)))?,
                    Document::Params(_) => emit_cycle_set(&mut out, &doc.to_cycle_set()?)?,
                    Document::Solution(d) => emit_cycle_set(&mut out, &from_solution(&d.to_solution()?)?)?,
                    Document::Brace(_) => return usage("convert does not accept brace dumps"),
                }
            }
        }
        Command::Enumerate { p, family } => {
            let classes = match family {
                FamilyArg::All => enumerate_classes(*p)?,
                FamilyArg::Cyclic => {
                    enumerate_classes(*p)?.into_iter().filter(|c| c.family_name() == "cyclic").collect()
                }
                FamilyArg::Mpl2 => mpl2_classes(*p)?,
                FamilyArg::Irr => irr_classes(*p)?,
            };
            for params in &classes {
                out.emit(params)?;
            }
        }
        Command::Count { p, orbits } => {
            let formula = count_formula(*p)?;
            if *orbits {
                let (even, zero) = irr_orbit_counts(*p)?;
                let mpl2 = mpl2_orbit_count(*p)?;
                let agree = formula.n_mpl2 == mpl2 as u128
                    && formula.n_irr_even == even as u128
                    && formula.n_irr_zero == zero as u128;
                out.emit(&OrbitCheck {
                    formula,
                    orbit_n_mpl2: mpl2,
                    orbit_n_irr_even: even,
                    orbit_n_irr_zero: zero,
                    agree,
                })?;
                out.finish()?;
                if !agree {
                    return Err(CliError::Invalid(format!("formula and orbit counts differ at p = {p}")));
                }
                return Ok(());
            }
            out.emit(&formula)?;
        }
        Command::Classify(source) => {
            for cs in source.cycle_sets()? {
                out.emit(&classify_size_p2(&cs)?)?;
            }
        }
        Command::Iso { source, brute } => {
            let sets = source.cycle_sets()?;
            let [a, b] = sets.as_slice() else {
                return usage(format!("iso takes exactly two cycle sets, got {}", sets.len()));
            };
            let map = if *brute { brute_iso(a, b)? } else { classify::iso_cycle_sets(a, b) };
            out.emit(&json!({"isomorphic": map.is_some(), "map": map}))?;
        }
        Command::Aut { source, brute } => {
            let cs = single(source.cycle_sets()?, "aut")?;
            let mut auts = if *brute { brute_aut(&cs)? } else { classify::automorphisms(&cs) };
            auts.sort();
            out.emit(&json!({"count": auts.len(), "automorphisms": auts}))?;
        }
        Command::Retract(source) => {
            for cs in source.cycle_sets()? {
                let ret = cs.retraction()?;
                out.emit(&json!({
                    "tower": cs.retraction_tower(),
                    "level": cs.multipermutation_level(),
                    "irretractable": cs.is_irretractable(),
                    "projection": ret.projection,
                    "retraction": CycleSetDoc::new(&ret.cycle_set),
                }))?;
            }
        }
        Command::Cable { source, k, cap } => {
            for cs in source.cycle_sets()? {
                emit_cycle_set(&mut out, &cable(&cs, *k, *cap)?)?;
            }
        }
        Command::Deform { source, perm, scale } => {
            for cs in source.cycle_sets()? {
                let phi = match (perm, scale) {
                    (Some(text), _) => {
                        let images = parse_list(text, "--perm")?.into_iter().map(|v| v as usize).collect();
                        Perm::from_images(images)?
                    }
                    (None, Some(gamma)) => {
                        let p = (cs.size() as f64).sqrt().round() as u64;
                        if (p * p) as usize != cs.size() {
                            return usage("--scale needs a cycle set of size p²");
                        }
                        scale_map(p, *gamma)
                    }
                    (None, None) => return usage("deform needs --perm or --scale"),
                };
                if phi.degree() != cs.size() {
                    return usage(format!("--perm has degree {} but the cycle set has size {}", phi.degree(), cs.size()));
                }
                emit_cycle_set(&mut out, &deform(&cs, &phi)?)?;
            }
        }
        Command::Oracle { n, indecomposable, irretractable, budget } => {
            let mut opts = SearchOptions::new(*n);
            opts.indecomposable_only = *indecomposable;
            opts.irretractable_only = *irretractable;
            opts.jobs = cli.jobs.max(1);
            if let Some(secs) = budget {
                if !secs.is_finite() || *secs < 0.0 {
                    return usage("--budget must be a non-negative number of seconds");
                }
                opts.time_budget = Some(Duration::from_secs_f64(*secs));
            }
            let result = enumerate_cycle_sets(&opts)?;
            for cs in &result.classes {
                emit_cycle_set(&mut out, cs)?;
            }
            if !result.complete {
                eprintln!("budget exhausted: class list is incomplete");
            }
            out.emit(&result.summary())?;
        }
        Command::Brace { source, dump, cap } => {
            for cs in source.cycle_sets()? {
                let brace = build_perm_brace(&cs, *cap)?;
                if *dump {
                    out.emit(&brace.to_doc()?)?;
                } else {
                    out.emit(&json!({
                        "kind": "perm_brace_summary",
                        "n_points": brace.n_points(),
                        "order": brace.order(),
                        "circ_abelian": brace.is_circ_abelian(),
                        "socle": brace.socle().len(),
                        "fix": brace.fix(None).len(),
                        "circ_center": brace.circ_center().len(),
                    }))?;
                }
            }
        }
    }
    out.finish()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

//! Command-line front end for the finite-monoid decision toolkit.
//!
//! Every subcommand prints one JSON report on stdout and keeps diagnostics
//! on stderr. Exit code 0 means the computation finished (the verdict inside
//! the report may still be `false`), 1 means the input was rejected, and 2
//! means a resource cap stopped the run. Reports are deterministic:
//! re-running with the same inputs yields byte-identical output except for
//! the trailing `wall_ms` field.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use monoidkit_core::enumeration::monoid_library;
use monoidkit_core::expansion;
use monoidkit_core::green::{self, GreenData};
use monoidkit_core::inevitability::{witness_sweep, SweepConfig, SweepOutcome};
use monoidkit_core::json::{monoid_to_value, parse_graph, parse_monoid};
use monoidkit_core::pointlikes;
use monoidkit_core::pointset::maximal_antichain;
use monoidkit_core::stable_pairs::{self, StableCertificate, StablePairReport, Variety};
use monoidkit_core::triples::{self, TripleCase, TripleCertificate, TripleReport};
use monoidkit_core::{Error, Monoid, PointSet};

#[derive(Parser)]
#[command(name = "monoidkit", version, about = "Decision toolkit for finite monoids")]
struct Cli {
    /// Size of the worker thread pool (default: one thread per logical CPU).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyArg {
    /// Aperiodic monoids.
    #[value(name = "A", alias = "a")]
    A,
    /// All finite monoids.
    #[value(name = "M", alias = "m")]
    M,
}

impl VarietyArg {
    fn core(self) -> Variety {
        match self {
            VarietyArg::A => Variety::A,
            VarietyArg::M => Variety::M,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, Green structure, idempotents, and aperiodicity of a monoid.
    Analyze {
        /// Monoid JSON file (table or transformation form).
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Write the eggbox and right Cayley graphs as DOT digraphs to this file.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Cut expansion of a monoid together with its projection onto the input.
    Expand {
        /// Monoid JSON file.
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Number of expansion levels to stack (the projection composes down
        /// to the original monoid).
        #[arg(long, value_name = "K", default_value_t = 1)]
        iterate: usize,
        /// Cap on the element count of any single level.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
    /// Pointlike subsets of a monoid relative to the aperiodic monoids.
    Pointlikes {
        /// Monoid JSON file.
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Also list the inclusion-maximal members.
        #[arg(long)]
        maximal: bool,
        /// Also list the maximal members satisfying Z*Z = Z.
        #[arg(long)]
        idempotent: bool,
        /// Cap on the closure family size.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        /// Directory for cached closures, keyed by a content hash of the
        /// monoid (falls back to the MONOIDKIT_CACHE environment variable).
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
    },
    /// Decide or enumerate stable pairs (Y, N) over a chosen variety.
    StablePairs {
        /// Monoid JSON file.
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Variety the factorization target ranges over.
        #[arg(long, value_enum)]
        variety: VarietyArg,
        /// Pair to decide: either one inline JSON object {"Y":[..],"N":[..]}
        /// or two files holding the Y and N id arrays.
        #[arg(long, value_name = "JSON", num_args = 1..=2)]
        decide: Option<Vec<String>>,
        /// Enumerate the maximal stable pairs instead of deciding one.
        #[arg(long)]
        maximal: bool,
        /// Cap on the pointlike family size (aperiodic variety only).
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
    /// Decide or enumerate aperiodic-pointlike triples (A, B, C).
    Triples {
        /// Monoid JSON file.
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Triple to decide: either one inline JSON object
        /// {"A":[..],"B":[..],"C":[..]} or three files holding id arrays.
        #[arg(long, value_name = "JSON", num_args = 1..=3)]
        decide: Option<Vec<String>>,
        /// Enumerate the componentwise-maximal triples instead.
        #[arg(long)]
        maximal: bool,
        /// Cap on the pointlike family size.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
    /// Sweep a labelled graph against the witness library.
    Inevitable {
        /// Monoid JSON file the graph labels live over.
        #[arg(long, value_name = "PATH")]
        monoid: PathBuf,
        /// Labelled graph JSON file.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        /// Run the sweep (the only supported mode; kept explicit because a
        /// sweep can only refute, never certify).
        #[arg(long)]
        sweep: bool,
        /// Witness variety: A draws aperiodic witnesses only.
        #[arg(long, value_enum, default_value = "A")]
        variety: VarietyArg,
        /// Largest witness order drawn from the library.
        #[arg(long, value_name = "K", default_value_t = 4)]
        max_order: usize,
        /// Expansion tower depth stacked over the input monoid (0 disables).
        #[arg(long, value_name = "D", default_value_t = 2)]
        towers: usize,
        /// Cap on the element count of any tower level.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
    },
    /// Write the witness library as a directory of monoid JSON files.
    GenLibrary {
        /// Largest member order.
        #[arg(long, value_name = "K", default_value_t = 4)]
        max_order: usize,
        /// Output directory: one JSON file per entry plus an index manifest.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Include non-aperiodic members too.
        #[arg(long)]
        all: bool,
    },
}

/// A rejected run: exit code plus the stderr diagnostic.
struct Failure {
    code: u8,
    message: String,
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::SizeLimitExceeded { .. } | Error::OrderTooLarge { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Running digest over every piece of input content, in consumption order.
/// Chunks are length-prefixed so distinct splits never collide.
struct InputHash(Sha256);

impl InputHash {
    fn new() -> InputHash {
        InputHash(Sha256::new())
    }

    fn add(&mut self, label: &str, bytes: &[u8]) {
        self.0.update(label.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    fn hex(self) -> String {
        format!("{:x}", self.0.finalize())
    }

    fn finish(self) -> String {
        format!("sha256:{}", self.hex())
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: threads: must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: threads: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli.command) {
        Ok((command, input_hash, result)) => {
            let mut report = Map::new();
            report.insert("command".into(), Value::from(command));
            report.insert("input_hash".into(), Value::from(input_hash));
            report.insert("tool_version".into(), Value::from(env!("CARGO_PKG_VERSION")));
            report.insert("result".into(), result);
            report.insert(
                "wall_ms".into(),
                Value::from(started.elapsed().as_millis() as u64),
            );
            let text = serde_json::to_string_pretty(&Value::Object(report))
                .expect("report serializes");
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn execute(command: Command) -> Result<(&'static str, String, Value), Failure> {
    let mut hash = InputHash::new();
    match command {
        Command::Analyze { monoid, dot } => {
            let m = load_monoid(&monoid, &mut hash)?;
            let result = analyze(&m, dot.as_deref())?;
            Ok(("analyze", hash.finish(), result))
        }
        Command::Expand { monoid, iterate, cap } => {
            let m = load_monoid(&monoid, &mut hash)?;
            let result = expand(&m, iterate, cap)?;
            Ok(("expand", hash.finish(), result))
        }
        Command::Pointlikes { monoid, maximal, idempotent, cap, cache } => {
            let text = read_input("monoid", &monoid, &mut hash)?;
            let m = parse_monoid(&text)?;
            let result = pointlike_report(&m, &text, maximal, idempotent, cap, cache)?;
            Ok(("pointlikes", hash.finish(), result))
        }
        Command::StablePairs { monoid, variety, decide, maximal, cap } => {
            let m = load_monoid(&monoid, &mut hash)?;
            let result = stable_pair_report(&m, variety, decide, maximal, cap, &mut hash)?;
            Ok(("stable-pairs", hash.finish(), result))
        }
        Command::Triples { monoid, decide, maximal, cap } => {
            let m = load_monoid(&monoid, &mut hash)?;
            let result = triple_report(&m, decide, maximal, cap, &mut hash)?;
            Ok(("triples", hash.finish(), result))
        }
        Command::Inevitable { monoid, graph, sweep, variety, max_order, towers, cap } => {
            let m = load_monoid(&monoid, &mut hash)?;
            let graph_text = read_input("graph", &graph, &mut hash)?;
            let g = parse_graph(&graph_text, m.order())?;
            if !sweep {
                return Err(bad_input("sweep: pass --sweep (the only supported mode)"));
            }
            let result = sweep_report(&m, &g, variety, max_order, towers, cap)?;
            Ok(("inevitable", hash.finish(), result))
        }
        Command::GenLibrary { max_order, out, all } => {
            hash.add("max_order", &max_order.to_le_bytes());
            hash.add("all", &[all as u8]);
            let result = gen_library(max_order, all, &out)?;
            Ok(("gen-library", hash.finish(), result))
        }
    }
}

fn read_input(field: &str, path: &Path, hash: &mut InputHash) -> Result<String, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| bad_input(format!("{field}: cannot read {}: {e}", path.display())))?;
    hash.add(field, text.as_bytes());
    Ok(text)
}

fn load_monoid(path: &Path, hash: &mut InputHash) -> Result<Monoid, Failure> {
    let text = read_input("monoid", path, hash)?;
    Ok(parse_monoid(&text)?)
}

fn ids(z: &PointSet) -> Value {
    Value::from(z.ids())
}

fn ids_list(sets: &[PointSet]) -> Value {
    Value::from(sets.iter().map(|z| z.ids()).collect::<Vec<_>>())
}

fn point_set_from_value(field: &str, v: &Value, order: usize) -> Result<PointSet, Failure> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad_input(format!("{field}: expected an array of element ids")))?;
    let mut out = Vec::with_capacity(arr.len());
    for item in arr {
        let id = item
            .as_u64()
            .ok_or_else(|| bad_input(format!("{field}: ids must be nonnegative integers")))?;
        if id as usize >= order {
            return Err(bad_input(format!(
                "{field}: element {id} outside carrier of order {order}"
            )));
        }
        out.push(id as usize);
    }
    Ok(PointSet::from_ids(order, out))
}

/// Component sets for --decide: either one inline JSON object carrying the
/// named keys or one file per component, each holding an id array.
fn parse_decide(
    values: &[String],
    keys: &[&str],
    order: usize,
    hash: &mut InputHash,
) -> Result<Vec<PointSet>, Failure> {
    if values.len() == 1 && values[0].trim_start().starts_with('{') {
        hash.add("decide", values[0].as_bytes());
        let v: Value = serde_json::from_str(&values[0])
            .map_err(|e| bad_input(format!("decide: invalid JSON: {e}")))?;
        return keys
            .iter()
            .map(|key| {
                let item = v
                    .get(*key)
                    .ok_or_else(|| bad_input(format!("decide: missing field {key}")))?;
                point_set_from_value(key, item, order)
            })
            .collect();
    }
    if values.len() != keys.len() {
        return Err(bad_input(format!(
            "decide: pass one inline JSON object or {} files ({})",
            keys.len(),
            keys.join(", ")
        )));
    }
    keys.iter()
        .zip(values)
        .map(|(key, path)| {
            let text = read_input(key, Path::new(path), hash)?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| bad_input(format!("{key}: invalid JSON in {path}: {e}")))?;
            point_set_from_value(key, &v, order)
        })
        .collect()
}

fn analyze(m: &Monoid, dot: Option<&Path>) -> Result<Value, Failure> {
    let gd = GreenData::compute(m);
    let mut gens = Map::new();
    for (letter, id) in m.generators() {
        gens.insert(letter.clone(), Value::from(*id));
    }
    let mut result = Map::new();
    result.insert("order".into(), Value::from(m.order()));
    result.insert("identity".into(), Value::from(m.identity()));
    result.insert("generators".into(), Value::Object(gens));
    result.insert("aperiodic".into(), Value::from(green::is_aperiodic(m)));
    result.insert("er".into(), Value::from(green::is_er(m)));
    result.insert("idempotents".into(), Value::from(m.idempotents()));
    result.insert("minimal_ideal".into(), ids(&green::minimal_ideal(m)));
    result.insert(
        "green".into(),
        json!({
            "l_classes": gd.l_classes,
            "r_classes": gd.r_classes,
            "j_classes": gd.j_classes,
            "h_classes": gd.h_classes,
        }),
    );
    if let Some(path) = dot {
        let mut text = green::eggbox_dot(m);
        text.push('\n');
        text.push_str(&m.right_cayley_dot());
        fs::write(path, text)
            .map_err(|e| bad_input(format!("dot: cannot write {}: {e}", path.display())))?;
        result.insert("dot".into(), Value::from(path.display().to_string()));
    }
    Ok(Value::Object(result))
}

fn expand(m: &Monoid, iterate: usize, cap: Option<usize>) -> Result<Value, Failure> {
    if iterate == 0 {
        return Err(bad_input("iterate: must be at least 1"));
    }
    let cap = cap.unwrap_or(expansion::DEFAULT_ELEMENT_CAP);
    let levels = expansion::tower(m, iterate, cap)?;
    let top = levels.last().expect("tower depth is positive");
    // Compose the per-level projections so eta maps top-level ids all the
    // way down to the original input.
    let mut eta: Vec<usize> = (0..top.order()).collect();
    for level in levels.iter().rev() {
        eta = eta.iter().map(|&x| level.eta()[x]).collect();
    }
    let mut result = match monoid_to_value(top.monoid()) {
        Value::Object(obj) => obj,
        _ => unreachable!("monoid serializes to an object"),
    };
    result.insert("eta".into(), Value::from(eta));
    result.insert("levels".into(), Value::from(iterate));
    Ok(Value::Object(result))
}

fn pointlike_report(
    m: &Monoid,
    monoid_text: &str,
    maximal: bool,
    idempotent: bool,
    cap: Option<usize>,
    cache: Option<PathBuf>,
) -> Result<Value, Failure> {
    let cap = cap.unwrap_or(pointlikes::DEFAULT_FAMILY_CAP);
    let cache_dir = cache.or_else(|| std::env::var_os("MONOIDKIT_CACHE").map(PathBuf::from));
    let key = {
        let mut h = InputHash::new();
        h.add("monoid", monoid_text.as_bytes());
        h.add("cap", &cap.to_le_bytes());
        h.hex()
    };

    let mut sets: Option<Vec<PointSet>> = None;
    let mut provenance: Vec<String> = Vec::new();
    if let Some(dir) = &cache_dir {
        if let Some((s, p)) = cache_lookup(dir, &key, m.order()) {
            eprintln!("cache: reusing stored closure {key}");
            sets = Some(s);
            provenance = p;
        }
    }
    let sets = match sets {
        Some(s) => s,
        None => {
            let pl = pointlikes::henckell_closure_with_cap(m, cap)?;
            let s = pl.members().to_vec();
            provenance = pl.provenance().iter().map(|p| p.to_string()).collect();
            if let Some(dir) = &cache_dir {
                cache_store(dir, &key, &s, &provenance);
            }
            s
        }
    };

    let members: Vec<Value> = sets
        .iter()
        .zip(&provenance)
        .map(|(z, p)| json!({ "ids": z.ids(), "provenance": p }))
        .collect();
    let mut result = Map::new();
    result.insert("order".into(), Value::from(m.order()));
    result.insert("count".into(), Value::from(sets.len()));
    result.insert("members".into(), Value::from(members));
    if maximal {
        result.insert("maximal".into(), ids_list(&maximal_antichain(&sets)));
    }
    if idempotent {
        let idem: Vec<PointSet> = sets
            .iter()
            .filter(|z| &m.set_product(z, z) == *z)
            .cloned()
            .collect();
        result.insert("idempotent".into(), ids_list(&maximal_antichain(&idem)));
    }
    Ok(Value::Object(result))
}

/// Cached closures are an optimization only: anything unreadable or
/// inconsistent is treated as a miss and recomputed.
fn cache_lookup(dir: &Path, key: &str, order: usize) -> Option<(Vec<PointSet>, Vec<String>)> {
    let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    let arr = v.get("members")?.as_array()?;
    let mut sets = Vec::with_capacity(arr.len());
    let mut provenance = Vec::with_capacity(arr.len());
    for item in arr {
        let raw = item.get("ids")?.as_array()?;
        let mut members = Vec::with_capacity(raw.len());
        for id in raw {
            let id = id.as_u64()? as usize;
            if id >= order {
                return None;
            }
            members.push(id);
        }
        sets.push(PointSet::from_ids(order, members));
        provenance.push(item.get("provenance")?.as_str()?.to_string());
    }
    Some((sets, provenance))
}

fn cache_store(dir: &Path, key: &str, sets: &[PointSet], provenance: &[String]) {
    let members: Vec<Value> = sets
        .iter()
        .zip(provenance)
        .map(|(z, p)| json!({ "ids": z.ids(), "provenance": p }))
        .collect();
    let body = json!({ "members": members });
    let mut text = serde_json::to_string_pretty(&body).expect("cache entry serializes");
    text.push('\n');
    if let Err(e) = fs::create_dir_all(dir).and_then(|()| fs::write(dir.join(format!("{key}.json")), text)) {
        eprintln!("cache: cannot store entry: {e}");
    }
}

fn variety_name(v: Variety) -> &'static str {
    match v {
        Variety::M => "M",
        Variety::A => "A",
    }
}

fn stable_certificate_value(c: &StableCertificate) -> Value {
    match c {
        StableCertificate::IdempotentChain(chain) => json!({
            "kind": "idempotent-chain",
            "chain": chain,
        }),
        StableCertificate::ChainInPower { dominating, chain } => json!({
            "kind": "chain-in-power",
            "dominating": dominating.ids(),
            "chain": chain.iter().map(|z| z.ids()).collect::<Vec<_>>(),
        }),
    }
}

fn stable_report_value(r: &StablePairReport) -> Value {
    json!({
        "variety": variety_name(r.variety),
        "y": r.y.ids(),
        "n": r.n.ids(),
        "verdict": r.verdict,
        "certificate": r.certificate.as_ref().map(stable_certificate_value),
    })
}

fn stable_pair_report(
    m: &Monoid,
    variety: VarietyArg,
    decide: Option<Vec<String>>,
    maximal: bool,
    cap: Option<usize>,
    hash: &mut InputHash,
) -> Result<Value, Failure> {
    let cap = cap.unwrap_or(pointlikes::DEFAULT_FAMILY_CAP);
    match (decide, maximal) {
        (Some(_), true) => Err(bad_input("decide: choose one of --decide and --maximal")),
        (None, false) => Err(bad_input(
            "decide: pass --decide (one inline JSON object or two files) or --maximal",
        )),
        (Some(values), false) => {
            let comps = parse_decide(&values, &["Y", "N"], m.order(), hash)?;
            let (y, n) = (&comps[0], &comps[1]);
            let report = match variety {
                VarietyArg::M => {
                    if y.len() != 1 {
                        return Err(bad_input(format!(
                            "Y: an M-stable pair takes a single left element, got {} ids",
                            y.len()
                        )));
                    }
                    stable_pairs::m_stable_decide(m, y.first().expect("nonempty"), n)?
                }
                VarietyArg::A => {
                    let pl = pointlikes::henckell_closure_with_cap(m, cap)?;
                    stable_pairs::a_stable_decide_in(&pl, y, n)?
                }
            };
            Ok(stable_report_value(&report))
        }
        (None, true) => {
            let reports = match variety {
                VarietyArg::M => stable_pairs::m_stable_maximal(m),
                VarietyArg::A => {
                    let pl = pointlikes::henckell_closure_with_cap(m, cap)?;
                    stable_pairs::a_stable_maximal_in(&pl)?
                }
            };
            Ok(json!({
                "variety": variety_name(variety.core()),
                "count": reports.len(),
                "pairs": reports.iter().map(stable_report_value).collect::<Vec<_>>(),
            }))
        }
    }
}

fn triple_certificate_value(c: &TripleCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("a".into(), ids(&c.a));
    obj.insert("b".into(), ids(&c.b));
    obj.insert("c".into(), ids(&c.c));
    obj.insert("case".into(), Value::from(c.case.number()));
    match &c.case {
        TripleCase::One => {}
        TripleCase::Two { t } => {
            obj.insert("t".into(), ids(t));
        }
        TripleCase::Three { s, t, i } => {
            obj.insert("s".into(), ids(s));
            obj.insert("t".into(), ids(t));
            obj.insert("i".into(), Value::from(*i));
        }
    }
    Value::Object(obj)
}

fn triple_report_value(r: &TripleReport) -> Value {
    json!({
        "a": r.a.ids(),
        "b": r.b.ids(),
        "c": r.c.ids(),
        "verdict": r.verdict,
        "certificate": r.certificate.as_ref().map(triple_certificate_value),
    })
}

fn triple_report(
    m: &Monoid,
    decide: Option<Vec<String>>,
    maximal: bool,
    cap: Option<usize>,
    hash: &mut InputHash,
) -> Result<Value, Failure> {
    let cap = cap.unwrap_or(pointlikes::DEFAULT_FAMILY_CAP);
    match (decide, maximal) {
        (Some(_), true) => Err(bad_input("decide: choose one of --decide and --maximal")),
        (None, false) => Err(bad_input(
            "decide: pass --decide (one inline JSON object or three files) or --maximal",
        )),
        (Some(values), false) => {
            let comps = parse_decide(&values, &["A", "B", "C"], m.order(), hash)?;
            let pl = pointlikes::henckell_closure_with_cap(m, cap)?;
            let report = triples::a_triple_decide_in(&pl, &comps[0], &comps[1], &comps[2])?;
            Ok(triple_report_value(&report))
        }
        (None, true) => {
            let pl = pointlikes::henckell_closure_with_cap(m, cap)?;
            let reports = triples::a_triple_maximal_in(&pl);
            Ok(json!({
                "count": reports.len(),
                "triples": reports.iter().map(triple_report_value).collect::<Vec<_>>(),
            }))
        }
    }
}

fn sweep_report(
    m: &Monoid,
    graph: &monoidkit_core::inevitability::LabelledGraph,
    variety: VarietyArg,
    max_order: usize,
    towers: usize,
    cap: Option<usize>,
) -> Result<Value, Failure> {
    let mut config = SweepConfig::for_variety(variety.core());
    config.max_order = max_order;
    config.tower_depth = towers;
    config.include_expansion_towers = towers > 0;
    if let Some(c) = cap {
        config.expansion_cap = c;
    }
    let outcome = witness_sweep(m, graph, &config)?;
    Ok(match outcome {
        SweepOutcome::Refuted { witness } => {
            let mut genmap = Map::new();
            for (letter, id) in witness.morphism.genmap() {
                genmap.insert(letter.clone(), Value::from(*id));
            }
            json!({
                "consistent": false,
                "refuted_by": {
                    "witness": witness.name,
                    "target_order": witness.morphism.target().order(),
                    "genmap": genmap,
                },
            })
        }
        SweepOutcome::Consistent { census } => json!({
            "consistent": true,
            "census": {
                "witnesses": census.witnesses,
                "max_order": census.max_order,
                "tower_levels": census.tower_levels,
                "aperiodic_only": census.aperiodic_only,
            },
        }),
    })
}

fn gen_library(max_order: usize, all: bool, out: &Path) -> Result<Value, Failure> {
    let lib = monoid_library(max_order, !all)?;
    fs::create_dir_all(out)
        .map_err(|e| bad_input(format!("out: cannot create {}: {e}", out.display())))?;
    let mut entries = Vec::with_capacity(lib.len());
    for entry in &lib {
        let file = format!("{}.json", entry.name);
        let mut text = serde_json::to_string_pretty(&monoid_to_value(&entry.monoid))
            .expect("monoid serializes");
        text.push('\n');
        fs::write(out.join(&file), text)
            .map_err(|e| bad_input(format!("out: cannot write {file}: {e}")))?;
        entries.push(json!({
            "name": &entry.name,
            "file": file,
            "order": entry.monoid.order(),
            "aperiodic": green::is_aperiodic(&entry.monoid),
            "generating_subsets": &entry.generating_subsets,
        }));
    }
    let index = Value::from(entries);
    let mut index_text = serde_json::to_string_pretty(&index).expect("index serializes");
    index_text.push('\n');
    fs::write(out.join("index.json"), index_text)
        .map_err(|e| bad_input(format!("out: cannot write index.json: {e}")))?;
    Ok(json!({
        "dir": out.display().to_string(),
        "count": lib.len(),
        "entries": index,
    }))
}

//! `superdom`: command-line front end for the super domination toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification run finds violations,
//! 2 on usage or input errors.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superdom::canon::canonical_form;
use superdom::enumeration::{dump_edge_lists, trees_in_range, MAX_TREE_ORDER};
use superdom::families::{self, Family, FamilyCertificate};
use superdom::harness::{self, VerifyReport};
use superdom::io::{emit_edge_list, emit_inline, parse_edge_list, parse_inline};
use superdom::solvers;
use superdom::subdivision::{sd_gamma_sp, single_edge_values, SubdivisionError};
use superdom::transform::{normalize_for_leaf_traced, EpnChoice};
use superdom::{Graph, VertexSet};

use render::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "superdom", version, about = "Exact super domination computations on trees")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge-list file ("n m" header, then one "u v" per line).
    file: Option<PathBuf>,
    /// The path on N vertices.
    #[arg(long = "path", value_name = "N")]
    path_order: Option<usize>,
    /// The star K_{1,K}.
    #[arg(long = "star", value_name = "K")]
    star_leaves: Option<usize>,
    /// Inline edges, e.g. "0 1;1 2".
    #[arg(long = "edges", value_name = "LIST")]
    inline: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Param {
    Gamma,
    GammaT,
    GammaSp,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Choice {
    Lowest,
    Highest,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domination, total domination and super domination numbers with witnesses.
    Compute {
        #[command(flatten)]
        graph: GraphInput,
        /// Parameters to compute.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        params: Vec<Param>,
    },
    /// Subdivision number, class and U-family membership of a tree.
    Classify {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Subdivide the given edges, or list the effect of each single edge.
    Subdivide {
        #[command(flatten)]
        graph: GraphInput,
        /// Edges to subdivide, e.g. "0 1;1 2".
        #[arg(long, value_name = "LIST")]
        at: Option<String>,
    },
    /// Turn a minimum super dominating set into one whose complement holds a given leaf.
    Transform {
        #[command(flatten)]
        graph: GraphInput,
        /// The leaf to move into the complement.
        #[arg(long)]
        leaf: usize,
        /// Minimum super dominating set, e.g. "1,2"; defaults to the solver's witness.
        #[arg(long, value_name = "VERTICES")]
        set: Option<String>,
        /// Which private neighbour to take when there are several.
        #[arg(long, value_enum, default_value_t = Choice::Lowest)]
        choice: Choice,
    },
    /// Family tools: replay certificates, recognize trees, list members.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Count or dump all trees up to an order.
    Trees {
        /// Largest order.
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Smallest order.
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        /// Directory for one edge-list file per tree.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run exhaustive checks.
    Verify {
        /// Check ids (see --list).
        ids: Vec<String>,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
        /// Largest order (each check applies its own cap).
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Report 0 for elapsed_ms so output is byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
        /// Also write the report to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyAction {
    /// Replay a certificate (JSON file, or "-" for stdin) into an edge list.
    Build { certificate: PathBuf },
    /// Decide membership and produce a certificate.
    Recognize {
        family: Family,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// All members up to an order.
    Enumerate {
        family: Family,
        /// Largest order (or use --nmax).
        n_max: Option<usize>,
        #[arg(long = "nmax", conflicts_with = "n_max")]
        nmax_flag: Option<usize>,
        /// Directory for one edge-list file per member.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        if let Some(n) = self.path_order {
            if n == 0 {
                bail!("--path needs at least one vertex");
            }
            return Ok(Graph::path(n));
        }
        if let Some(k) = self.star_leaves {
            return Ok(Graph::star(k));
        }
        if let Some(text) = &self.inline {
            return parse_inline(text).context("--edges");
        }
        let path = self.file.as_ref().expect("clap enforces one input");
        let text = read_text(path)?;
        parse_edge_list(&text).with_context(|| path.display().to_string())
    }

    fn load_tree(&self) -> Result<Graph> {
        let g = self.load()?;
        g.require_tree()?;
        Ok(g)
    }
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.to_vec())
}

fn parse_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut s = VertexSet::new(n);
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().with_context(|| format!("invalid vertex {part:?} in --set"))?;
        if v >= n {
            bail!("vertex {v} in --set is outside 0..{n}");
        }
        s.insert(v);
    }
    Ok(s)
}

fn compute(g: &Graph, params: &[Param]) -> Result<Value> {
    let want = |p: Param| params.contains(&p) || params.contains(&Param::All);
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(g.order()));
    out.insert("m".into(), json!(g.size()));
    if want(Param::Gamma) {
        let w = solvers::gamma_witness(g)?;
        out.insert("gamma".into(), json!(w.len()));
        out.insert("gamma_witness".into(), set_json(&w));
    }
    if want(Param::GammaT) {
        let w = solvers::gamma_t_witness(g)?;
        out.insert("gamma_t".into(), json!(w.len()));
        out.insert("gamma_t_witness".into(), set_json(&w));
    }
    if want(Param::GammaSp) {
        let w = solvers::gamma_sp_witness(g)?;
        out.insert("gamma_sp".into(), json!(w.len()));
        out.insert("gamma_sp_witness".into(), set_json(&w));
    }
    Ok(Value::Object(out))
}

fn classify(t: &Graph) -> Result<Value> {
    let base = solvers::gamma_sp(t)?;
    let (sd, witness, class) = match sd_gamma_sp(t) {
        Ok(r) => (json!(r.sd), json!(r.witness_edges), if r.sd == 1 { "Class 1" } else { "Class 2" }),
        Err(SubdivisionError::BoundViolated(k)) => (json!(k), json!([]), "unclassified (sd > 2)"),
        Err(e) => return Err(e.into()),
    };
    let u = families::recognize(Family::U, t)?;
    Ok(json!({
        "n": t.order(),
        "gamma_sp": base,
        "sd": sd,
        "witness_edges": witness,
        "class": class,
        "in_U": u.member,
    }))
}

fn subdivide(t: &Graph, at: Option<&str>) -> Result<Value> {
    let base = solvers::gamma_sp(t)?;
    match at {
        Some(list) => {
            let edges = parse_inline(list).context("--at")?.edges().to_vec();
            let g = t.subdivide(&edges)?;
            let after = solvers::gamma_sp(&g)?;
            Ok(json!({
                "subdivided": edges,
                "gamma_sp_before": base,
                "gamma_sp_after": after,
                "raises": after > base,
                "n": g.order(),
                "edges": emit_inline(&g),
            }))
        }
        None => Ok(Value::Array(
            single_edge_values(t)?
                .into_iter()
                .map(|(e, after)| {
                    json!({
                        "edge": [e.0, e.1],
                        "gamma_sp_before": base,
                        "gamma_sp_after": after,
                        "raises": after > base,
                    })
                })
                .collect(),
        )),
    }
}

fn transform(t: &Graph, leaf: usize, set: Option<&str>, choice: Choice) -> Result<Value> {
    let s = match set {
        Some(text) => parse_set(text, t.order())?,
        None => solvers::gamma_sp_witness(t)?,
    };
    let choice = match choice {
        Choice::Lowest => EpnChoice::Lowest,
        Choice::Highest => EpnChoice::Highest,
    };
    let r = normalize_for_leaf_traced(t, &s, leaf, choice)?;
    Ok(json!({
        "input_set": set_json(&s),
        "input_complement": set_json(&s.complement()),
        "leaf": leaf,
        "case": r.case,
        "steps": r.steps,
        "output_set": set_json(&r.set),
        "output_complement": set_json(&r.set.complement()),
    }))
}

fn recognize(family: Family, t: &Graph) -> Result<Value> {
    let rec = families::recognize(family, t)?;
    Ok(json!({
        "family": rec.family,
        "member": rec.member,
        "detail": rec.detail,
        "certificate": rec.certificate,
    }))
}

fn by_order(members: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut v: Vec<(usize, Vec<u8>, Graph)> = members
        .into_iter()
        .map(|g| (g.order(), canonical_form(&g).unwrap_or_default(), g))
        .collect();
    v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    v.into_iter().map(|(_, _, g)| g).collect()
}

fn enumerate(family: Family, n_max: usize, out: Option<&Path>) -> Result<Value> {
    let members = by_order(families::enumerate_family(family, n_max)?.into_values());
    if let Some(dir) = out {
        dump_edge_lists(dir, &members).with_context(|| format!("writing {}", dir.display()))?;
    }
    Ok(json!({
        "family": family,
        "n_max": n_max,
        "count": members.len(),
        "trees": members.iter().map(emit_inline).collect::<Vec<_>>(),
    }))
}

fn trees(n_min: usize, n_max: usize, out: Option<&Path>) -> Result<Value> {
    if n_max > MAX_TREE_ORDER {
        bail!("--nmax {n_max} exceeds the enumeration budget of {MAX_TREE_ORDER}");
    }
    let all = trees_in_range(n_min, n_max)?;
    if let Some(dir) = out {
        dump_edge_lists(dir, &all).with_context(|| format!("writing {}", dir.display()))?;
    }
    let rows = (n_min.max(1)..=n_max)
        .map(|n| json!({"n": n, "count": all.iter().filter(|t| t.order() == n).count()}))
        .collect();
    Ok(Value::Array(rows))
}

fn selected_checks(ids: &[String], theorems: &[String], all: bool) -> Result<Vec<String>> {
    if all {
        return Ok(harness::checks().into_iter().map(|(id, _)| id.to_string()).collect());
    }
    let chosen: Vec<String> = ids.iter().chain(theorems).cloned().collect();
    if chosen.is_empty() {
        bail!("name at least one check, or pass --all (see verify --list)");
    }
    let known: Vec<&str> = harness::checks().into_iter().map(|(id, _)| id).collect();
    if let Some(bad) = chosen.iter().find(|id| !known.contains(&id.as_str())) {
        bail!("unknown check {bad:?}; valid ids: {}", known.join(", "));
    }
    Ok(chosen)
}

/// What a command produced, and whether it found violations.
struct Outcome {
    value: Value,
    violations: bool,
    /// Pre-rendered text that replaces the generic listing.
    text: Option<String>,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome {
            value,
            violations: false,
            text: None,
        }
    }
}

fn reports_value(reports: &[VerifyReport]) -> Result<Value> {
    Ok(match reports {
        [one] => serde_json::to_value(one)?,
        many => serde_json::to_value(many)?,
    })
}

fn run(cli: &Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let outcome = match &cli.command {
        Command::Compute { graph, params } => compute(&graph.load()?, params)?.into(),
        Command::Classify { graph } => classify(&graph.load_tree()?)?.into(),
        Command::Subdivide { graph, at } => subdivide(&graph.load_tree()?, at.as_deref())?.into(),
        Command::Transform {
            graph,
            leaf,
            set,
            choice,
        } => transform(&graph.load_tree()?, *leaf, set.as_deref(), *choice)?.into(),
        Command::Family { action } => match action {
            FamilyAction::Build { certificate } => {
                let text = read_text(certificate)?;
                // Accept `family recognize` output as well as a bare certificate.
                let parsed: Value = serde_json::from_str(&text).context("parsing certificate")?;
                let cert = match parsed.get("certificate") {
                    Some(inner) if !inner.is_null() => FamilyCertificate::from_json(&inner.to_string()),
                    _ => FamilyCertificate::from_json(&text),
                }
                .context("parsing certificate")?;
                let g = families::replay(&cert).context("replaying certificate")?;
                Outcome {
                    value: json!({
                        "family": cert.family,
                        "n": g.order(),
                        "m": g.size(),
                        "edges": emit_inline(&g),
                    }),
                    violations: false,
                    text: Some(emit_edge_list(&g)),
                }
            }
            FamilyAction::Recognize { family, graph } => recognize(*family, &graph.load_tree()?)?.into(),
            FamilyAction::Enumerate {
                family,
                n_max,
                nmax_flag,
                out,
            } => {
                let Some(n) = n_max.or(*nmax_flag) else {
                    bail!("give the largest order, e.g. `family enumerate {family} 12`");
                };
                enumerate(*family, n, out.as_deref())?.into()
            }
        },
        Command::Trees { nmax, nmin, out } => trees(*nmin, *nmax, out.as_deref())?.into(),
        Command::Verify {
            ids,
            theorems,
            all,
            list,
            nmax,
            no_timing,
            out,
        } => {
            if *list {
                let rows = harness::checks()
                    .into_iter()
                    .map(|(id, description)| json!({"id": id, "description": description}))
                    .collect();
                return Ok((Value::Array(rows).into(), None));
            }
            let mut reports = Vec::new();
            for id in selected_checks(ids, theorems, *all)? {
                let mut r = harness::verify(&id, *nmax)?;
                if *no_timing {
                    r.elapsed_ms = 0;
                }
                reports.push(r);
            }
            let violations = reports.iter().any(|r| !r.passed());
            let value = reports_value(&reports)?;
            return Ok((
                Outcome {
                    value,
                    violations,
                    text: None,
                },
                out.clone(),
            ));
        }
    };
    Ok((outcome, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out_file) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let rendered = match (&outcome.text, cli.format) {
        (Some(text), Format::Text) => Ok(text.clone()),
        _ => render(&outcome.value, cli.format),
    };
    let rendered = match rendered {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    print!("{rendered}");
    if let Some(path) = out_file {
        if let Err(e) = std::fs::write(&path, &rendered) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

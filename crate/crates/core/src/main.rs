use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thrackle::combinatorial::{edge_vertex_ratio_topological, verify_topological, CombinatorialDrawing};
use thrackle::families_geometric::{build_butterfly, build_star_cycle, build_ta, build_tb};
use thrackle::families_topological::{add_isolated, build_c6, build_kyncl, build_t1, build_tk, C6_CENTRAL_FACE};
use thrackle::geometric::{
    brute_force_maximal_subsets, edge_vertex_ratio, insertable_segments, verify_geometric, GeometricDrawing,
    ThrackleVerdict, Violation,
};
use thrackle::geometry::{format_decimal, format_rational, parse_rational};
use thrackle::io::{parse, serialize, Drawing};
use thrackle::render::{render_geometric, render_topological, RenderOptions};
use thrackle::search::{insertable_pair, is_maximal_topological, Exact, InsertionWitness, Maximality, SearchBudget};
use thrackle::{ExactScalar, Point, SearchError};

#[derive(Parser)]
#[command(name = "thrackle", version, about = "Build, verify and maximality-check thrackle drawings")]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
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
    /// Check that every pair of edges meets exactly once.
    Verify { file: PathBuf },
    /// Decide whether any new edge can be added.
    Maximal {
        file: PathBuf,
        /// Search states per vertex pair (default from THRACKLE_BUDGET_STATES).
        #[arg(long)]
        budget_states: Option<u64>,
        /// Wall-clock seconds per vertex pair.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Decide whether the edge `u v` can be added.
    Insertable {
        file: PathBuf,
        u: String,
        v: String,
        #[arg(long)]
        budget_states: Option<u64>,
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Print |E| / |V| exactly and as a decimal.
    Ratio { file: PathBuf },
    /// Write a drawing of a named family.
    Build {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw a drawing file as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long)]
        no_labels: bool,
    },
    /// Enumerate every maximal straight-line thrackle on a small point set.
    Oracle {
        /// One point per line as two rationals; `#` starts a comment.
        points: PathBuf,
        #[arg(long)]
        max_edges: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Butterfly,
    Ta,
    Tb,
    Star,
    C6,
    C6iso,
    Kyncl,
    T1,
    T2,
    Tk,
}

const OK: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

/// Failure that ends the run with a message.
struct Fail(u8, String);

impl Fail {
    fn usage(m: impl std::fmt::Display) -> Self {
        Fail(USAGE, m.to_string())
    }
}

fn search_fail(e: SearchError) -> Fail {
    match e {
        SearchError::BudgetExceeded => Fail(BUDGET, e.to_string()),
        other => Fail::usage(other),
    }
}

struct Report {
    code: u8,
    text: String,
    json: Value,
}

fn read_drawing(path: &Path) -> Result<Drawing, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn budget(states: Option<u64>, secs: Option<u64>) -> Result<SearchBudget, Fail> {
    let base = SearchBudget::default();
    let states = states.unwrap_or(base.max_states);
    let time = secs.map(Duration::from_secs).unwrap_or(base.max_time);
    if states == 0 || time.is_zero() {
        return Err(Fail::usage("budgets must be positive"));
    }
    Ok(SearchBudget::new(states, time))
}

fn geo_name(d: &GeometricDrawing, v: usize) -> String {
    d.label(v)
}

fn geo_edge(d: &GeometricDrawing, e: usize) -> String {
    let (u, v) = d.edges[e];
    format!("{}{}", geo_name(d, u), geo_name(d, v))
}

fn describe_violation(names: &dyn Fn(usize) -> String, vertex: &dyn Fn(usize) -> String, v: &Violation) -> (String, Value) {
    match v {
        Violation::Pair { edges: (e, f), relation } => (
            format!("edges {} and {}: {}", names(*e), names(*f), relation.tag()),
            json!({"edges": [names(*e), names(*f)], "relation": relation.tag()}),
        ),
        Violation::VertexOnEdge { vertex: w, edge } => (
            format!("vertex {} lies on edge {}", vertex(*w), names(*edge)),
            json!({"vertex": vertex(*w), "edge": names(*edge)}),
        ),
        Violation::Count { edges: (e, f), shared_endpoints, crossings } => (
            format!(
                "edges {} and {}: {shared_endpoints} shared endpoints, {crossings} crossings",
                names(*e),
                names(*f)
            ),
            json!({"edges": [names(*e), names(*f)], "shared_endpoints": shared_endpoints, "crossings": crossings}),
        ),
    }
}

fn verdict_report(v: &ThrackleVerdict, names: &dyn Fn(usize) -> String, vertex: &dyn Fn(usize) -> String) -> Report {
    match &v.violation {
        None => Report { code: OK, text: "thrackle".into(), json: json!({"thrackle": true}) },
        Some(x) => {
            let (t, j) = describe_violation(names, vertex, x);
            Report { code: FALSE, text: format!("not a thrackle: {t}"), json: json!({"thrackle": false, "violation": j}) }
        }
    }
}

fn cmd_verify(file: &Path) -> Result<Report, Fail> {
    match read_drawing(file)? {
        Drawing::Geometric(g) => {
            let v = verify_geometric(&g).map_err(Fail::usage)?;
            Ok(verdict_report(&v, &|e| geo_edge(&g, e), &|w| geo_name(&g, w)))
        }
        Drawing::Topological(t) => {
            let v = verify_topological(&t).map_err(Fail::usage)?;
            Ok(verdict_report(&v, &|e| t.edges[e].name.clone(), &|w| t.vertex_name(w).to_string()))
        }
    }
}

fn witness_json(d: &CombinatorialDrawing, w: &InsertionWitness) -> Value {
    json!({
        "u": d.vertex_name(w.u),
        "v": d.vertex_name(w.v),
        "crossings": w.steps.iter().map(|s| json!({
            "edge": d.edges[s.edge].name,
            "segment": s.segment,
            "sign": s.sign.symbol(),
        })).collect::<Vec<_>>(),
    })
}

fn witness_text(d: &CombinatorialDrawing, w: &InsertionWitness) -> String {
    if w.steps.is_empty() {
        return "no crossings".into();
    }
    let parts: Vec<String> =
        w.steps.iter().map(|s| format!("{}[{}]{}", d.edges[s.edge].name, s.segment, s.sign.symbol())).collect();
    format!("crosses {}", parts.join(" "))
}

fn pair_names(name: &dyn Fn(usize) -> String, pairs: &[(usize, usize)]) -> Vec<[String; 2]> {
    pairs.iter().map(|&(u, v)| [name(u), name(v)]).collect()
}

fn cmd_maximal(file: &Path, b: SearchBudget) -> Result<Report, Fail> {
    match read_drawing(file)? {
        Drawing::Geometric(g) => {
            let free = insertable_segments(&g).map_err(Fail::usage)?;
            Ok(match free.first() {
                None => Report { code: OK, text: "Maximal".into(), json: json!({"result": "Maximal"}) },
                Some(&(u, v)) => {
                    let (a, c) = (geo_name(&g, u), geo_name(&g, v));
                    Report {
                        code: FALSE,
                        text: format!("NotMaximal({a}, {c})"),
                        json: json!({"result": "NotMaximal", "pair": [a, c]}),
                    }
                }
            })
        }
        Drawing::Topological(t) => {
            let name = |v: usize| t.vertex_name(v).to_string();
            Ok(match is_maximal_topological(&t, b).map_err(search_fail)? {
                Maximality::Maximal => Report { code: OK, text: "Maximal".into(), json: json!({"result": "Maximal"}) },
                Maximality::NotMaximal((u, v), w) => Report {
                    code: FALSE,
                    text: format!("NotMaximal({}, {}): {}", name(u), name(v), witness_text(&t, &w)),
                    json: json!({"result": "NotMaximal", "pair": [name(u), name(v)], "witness": witness_json(&t, &w)}),
                },
                Maximality::Unknown(pairs) => {
                    let names = pair_names(&name, &pairs);
                    let list: Vec<String> = names.iter().map(|[a, c]| format!("({a}, {c})")).collect();
                    Report {
                        code: BUDGET,
                        text: format!("Unknown({})", list.join(", ")),
                        json: json!({"result": "Unknown", "pairs": names}),
                    }
                }
            })
        }
    }
}

fn lookup(names: &[String], v: &str) -> Result<usize, Fail> {
    names
        .iter()
        .position(|n| n == v)
        .or_else(|| v.parse().ok().filter(|&i: &usize| i < names.len()))
        .ok_or_else(|| Fail::usage(format!("unknown vertex {v:?}")))
}

fn cmd_insertable(file: &Path, u: &str, v: &str, b: SearchBudget) -> Result<Report, Fail> {
    let no = |u: &str, v: &str| Report { code: FALSE, text: "No".into(), json: json!({"result": "No", "pair": [u, v]}) };
    match read_drawing(file)? {
        Drawing::Geometric(g) => {
            let names: Vec<String> = (0..g.points.len()).map(|i| geo_name(&g, i)).collect();
            let (a, c) = (lookup(&names, u)?, lookup(&names, v)?);
            if !verify_geometric(&g).map_err(Fail::usage)?.ok {
                return Err(Fail::usage("drawing is not a thrackle"));
            }
            let pair = (a.min(c), a.max(c));
            let free = insertable_segments(&g).map_err(Fail::usage)?;
            Ok(if a != c && free.contains(&pair) {
                Report { code: OK, text: "Yes".into(), json: json!({"result": "Yes", "pair": [u, v]}) }
            } else {
                no(u, v)
            })
        }
        Drawing::Topological(t) => {
            let names: Vec<String> = (0..t.num_vertices_total()).map(|i| t.vertex_name(i).to_string()).collect();
            let (a, c) = (lookup(&names, u)?, lookup(&names, v)?);
            Ok(match insertable_pair(&t, a, c, b).map_err(search_fail)? {
                Exact::No => no(u, v),
                Exact::Yes(w) => Report {
                    code: OK,
                    text: format!("Yes: {}", witness_text(&t, &w)),
                    json: json!({"result": "Yes", "pair": [u, v], "witness": witness_json(&t, &w)}),
                },
            })
        }
    }
}

fn ratio_report(r: &ExactScalar) -> Report {
    let (f, d) = (format_rational(r), format_decimal(r));
    Report { code: OK, text: format!("{f} ({d})"), json: json!({"ratio": f, "decimal": d}) }
}

fn cmd_ratio(file: &Path) -> Result<Report, Fail> {
    let r = match read_drawing(file)? {
        Drawing::Geometric(g) => edge_vertex_ratio(&g).map_err(Fail::usage)?,
        Drawing::Topological(t) => edge_vertex_ratio_topological(&t).map_err(Fail::usage)?,
    };
    Ok(ratio_report(&r))
}

fn need(v: Option<usize>, flag: &str, family: &str, min: usize) -> Result<usize, Fail> {
    let v = v.ok_or_else(|| Fail::usage(format!("{family} needs --{flag}")))?;
    if v < min {
        return Err(Fail::usage(format!("{family} needs --{flag} >= {min}")));
    }
    Ok(v)
}

fn build(family: Family, n: Option<usize>, m: Option<usize>, k: Option<usize>) -> Result<Drawing, Fail> {
    let topo = |r: Result<CombinatorialDrawing, thrackle::TopologyError>| r.map(Drawing::from).map_err(Fail::usage);
    Ok(match family {
        Family::Butterfly => build_butterfly().into(),
        Family::Ta => build_ta(need(n, "n", "ta", 1)?).into(),
        Family::Tb => build_tb(need(m, "m", "tb", 1)?).into(),
        Family::Star => build_star_cycle(need(n, "n", "star", 1)?).into(),
        Family::C6 => build_c6().into(),
        Family::C6iso => topo(add_isolated(&build_c6(), C6_CENTRAL_FACE, need(k, "k", "c6iso", 1)?))?,
        Family::Kyncl => build_kyncl().into(),
        Family::T1 => topo(build_t1(need(n, "n", "t1", 2)?))?,
        Family::T2 => topo(build_tk(need(n, "n", "t2", 2)?, 1))?,
        Family::Tk => topo(build_tk(need(n, "n", "tk", 2)?, need(k, "k", "tk", 1)?))?,
    })
}

fn cmd_build(family: Family, n: Option<usize>, m: Option<usize>, k: Option<usize>, out: &Path) -> Result<Report, Fail> {
    let d = build(family, n, m, k)?;
    write_file(out, &serialize(&d))?;
    let (v, e) = match &d {
        Drawing::Geometric(g) => (g.points.len(), g.edges.len()),
        Drawing::Topological(t) => (t.num_vertices_total(), t.edges.len()),
    };
    Ok(Report {
        code: OK,
        text: format!("wrote {} ({v} vertices, {e} edges)", out.display()),
        json: json!({"output": out.display().to_string(), "vertices": v, "edges": e}),
    })
}

fn cmd_render(file: &Path, out: &Path, opts: RenderOptions) -> Result<Report, Fail> {
    let svg = match read_drawing(file)? {
        Drawing::Geometric(g) => render_geometric(&g, &opts),
        Drawing::Topological(t) => render_topological(&t, &opts),
    }
    .map_err(Fail::usage)?;
    write_file(out, &svg)?;
    Ok(Report { code: OK, text: format!("wrote {}", out.display()), json: json!({"output": out.display().to_string()}) })
}

fn read_points(path: &Path) -> Result<Vec<Point<ExactScalar>>, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        let bad = || Fail::usage(format!("{}:{}: expected two rationals", path.display(), i + 1));
        if parts.len() != 2 {
            return Err(bad());
        }
        let x = parse_rational(parts[0]).map_err(|_| bad())?;
        let y = parse_rational(parts[1]).map_err(|_| bad())?;
        pts.push(Point::new(x, y));
    }
    Ok(pts)
}

fn cmd_oracle(points: &Path, max_edges: usize) -> Result<Report, Fail> {
    let pts = read_points(points)?;
    let subsets = brute_force_maximal_subsets(&pts, max_edges).map_err(Fail::usage)?;
    let mut lines = vec![format!("{} maximal thrackles", subsets.len())];
    let mut items = Vec::new();
    for s in &subsets {
        let edges: Vec<String> = s.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        lines.push(format!("{} [{}]", format_rational(&s.ratio), edges.join(" ")));
        items.push(json!({"edges": s.edges, "ratio": format_rational(&s.ratio)}));
    }
    Ok(Report { code: OK, text: lines.join("\n"), json: json!({"count": subsets.len(), "subsets": items}) })
}

fn run(cli: Cli) -> Result<Report, Fail> {
    match cli.command {
        Command::Verify { file } => cmd_verify(&file),
        Command::Maximal { file, budget_states, budget_secs } => cmd_maximal(&file, budget(budget_states, budget_secs)?),
        Command::Insertable { file, u, v, budget_states, budget_secs } => {
            cmd_insertable(&file, &u, &v, budget(budget_states, budget_secs)?)
        }
        Command::Ratio { file } => cmd_ratio(&file),
        Command::Build { family, n, m, k, output } => cmd_build(family, n, m, k, &output),
        Command::Render { file, output, width, height, no_labels } => {
            let opts = RenderOptions { width, height, labels: !no_labels, ..RenderOptions::default() };
            cmd_render(&file, &output, opts)
        }
        Command::Oracle { points, max_edges } => cmd_oracle(&points, max_edges),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            match format {
                Format::Text => println!("{}", r.text),
                Format::Json => println!("{}", r.json),
            }
            ExitCode::from(r.code)
        }
        Err(Fail(code, msg)) => {
            match format {
                Format::Text => eprintln!("error: {msg}"),
                Format::Json => println!("{}", json!({"error": msg})),
            }
            ExitCode::from(code)
        }
    }
}

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use delzant_core::graphs::{self, TrivalentGraph};
use delzant_core::moment::{self, moment_polytope};
use delzant_core::polyhedra::rational_string;
use delzant_core::quantization::{self, CountMode};
use delzant_core::smoothness::{is_delzant, LatticeChoice};
use delzant_core::verify::{self, VerifyOptions};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "delzant",
    version,
    about = "Moment polytopes of trivalent graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads.
    #[arg(long, global = true, env = "DELZANT_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Parity,
    Raw,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LatticeArg {
    Standard,
    VertexDiff,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Graph JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// The theta graph.
    #[arg(long)]
    theta: bool,
    /// The genus-g multi-theta graph.
    #[arg(long, value_name = "G")]
    multi_theta: Option<usize>,
    /// The complete graph on four vertices.
    #[arg(long)]
    k4: bool,
}

impl Input {
    fn load(&self) -> Result<TrivalentGraph> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return Ok(TrivalentGraph::from_json(&text)?);
        }
        if self.theta {
            return Ok(graphs::theta());
        }
        if let Some(g) = self.multi_theta {
            return Ok(graphs::multi_theta(g)?);
        }
        if self.k4 {
            return Ok(graphs::k4());
        }
        bail!("no input graph")
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph inspection.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// H- and/or V-representation of the moment polytope.
    Polytope {
        #[command(flatten)]
        input: Input,
        /// Print the halfspace system.
        #[arg(long)]
        hrep: bool,
        /// Print the vertex list.
        #[arg(long)]
        vrep: bool,
    },
    /// Delzant smoothness check.
    DelzantCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LatticeArg::VertexDiff)]
        lattice: LatticeArg,
    },
    /// Bohr-Sommerfeld point count with both oracles.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Parity)]
        mode: ModeArg,
    },
    /// Verlinde numbers from the closed form and the fusion recursion.
    Verlinde {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
    },
    /// Exact volume next to the reference constant.
    Volume {
        #[command(flatten)]
        input: Input,
    },
    /// Approximation chain of the multi-theta polytope.
    Chain {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        genus: u32,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
        max_genus: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_level: u32,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Genus, incidence form and bipartition.
    Info {
        #[command(flatten)]
        input: Input,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

/// Serialized name of a unit enum variant.
fn label<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|x| x.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn graph_info(format: Format, graph: &TrivalentGraph) -> Result<()> {
    let names = |ix: &[usize]| {
        ix.iter()
            .map(|&i| graph.vertices()[i].clone())
            .collect::<Vec<_>>()
    };
    let bip = graph.hyperbolic_bipartition();
    let value = json!({
        "name": graph.name(),
        "vertices": graph.vertices(),
        "edges": graph.edges().iter().map(|e| json!({
            "id": e.id,
            "ends": [graph.vertices()[e.ends.0].clone(), graph.vertices()[e.ends.1].clone()],
        })).collect::<Vec<_>>(),
        "genus": graph.genus(),
        "components": graph.component_count(),
        "incidence_form": graph.incidence_form(),
        "bipartition": bip.as_ref().map(|b| json!({"plus": names(&b.plus), "minus": names(&b.minus)})),
    });
    emit(format, &value, || {
        let mut s = String::new();
        let _ = writeln!(s, "graph {}", graph.name());
        let _ = writeln!(
            s,
            "vertices {} edges {} components {}",
            graph.vertices().len(),
            graph.edges().len(),
            graph.component_count()
        );
        let _ = writeln!(s, "genus {}", graph.genus());
        let _ = writeln!(s, "incidence form");
        for row in graph.incidence_form() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
        match &bip {
            Some(b) => {
                let _ = writeln!(
                    s,
                    "bipartition plus {} minus {}",
                    names(&b.plus).join(","),
                    names(&b.minus).join(",")
                );
            }
            None => {
                let _ = writeln!(s, "bipartition none");
            }
        }
        s
    })
}

fn polytope(format: Format, graph: &TrivalentGraph, hrep: bool, vrep: bool) -> Result<()> {
    let mp = moment_polytope(graph)?;
    let (hrep, vrep) = if !hrep && !vrep {
        (true, true)
    } else {
        (hrep, vrep)
    };
    let p = mp.polytope();
    let mut value = json!({
        "graph": graph.name(),
        "dim": p.dim(),
        "edge_order": mp.coordinate_order(),
    });
    if hrep {
        value["halfspaces"] = serde_json::to_value(p.halfspaces())?;
        value["trinion_blocks"] = serde_json::to_value(mp.report().trinion_blocks)?;
    }
    if vrep {
        value["vertex_count"] = json!(p.vertices().len());
        value["vertices"] = serde_json::to_value(p.vertex_system())?;
    }
    emit(format, &value, || {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} dim {}", graph.name(), p.dim());
        let _ = writeln!(s, "coordinates {}", mp.coordinate_order().join(" "));
        if hrep {
            let _ = writeln!(s, "halfspaces {}", p.halfspaces().rows().len());
            for r in p.halfspaces().rows() {
                let _ = writeln!(s, "  {r}");
            }
        }
        if vrep {
            let _ = writeln!(s, "vertices {}", p.vertices().len());
            for v in p.vertices() {
                let _ = writeln!(s, "  {v}");
            }
        }
        s
    })
}

fn delzant_check(format: Format, graph: &TrivalentGraph, lattice: LatticeArg) -> Result<()> {
    let mp = moment_polytope(graph)?;
    let choice = match lattice {
        LatticeArg::Standard => LatticeChoice::Standard,
        LatticeArg::VertexDiff => LatticeChoice::VertexDiff,
    };
    let lat = choice.build(mp.polytope())?;
    let report = is_delzant(mp.polytope(), &lat)?;
    emit(format, &report, || {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "graph {} lattice {} covolume {}",
            graph.name(),
            label(&choice),
            rational_string(&lat.covolume())
        );
        for c in &report.per_vertex {
            let det = c
                .determinant
                .as_ref()
                .map_or_else(|| "-".to_string(), ToString::to_string);
            let _ = writeln!(
                s,
                "  {} valence {} det {} {}",
                c.vertex,
                c.directions.len(),
                det,
                if c.pass { "ok" } else { "fail" }
            );
        }
        let _ = writeln!(
            s,
            "valence_ok {} overall {}",
            report.valence_ok, report.overall
        );
        s
    })
}

fn count(format: Format, graph: &TrivalentGraph, level: u32, mode: ModeArg) -> Result<()> {
    let mp = moment_polytope(graph)?;
    let mode = match mode {
        ModeArg::Parity => CountMode::Parity,
        ModeArg::Raw => CountMode::Raw,
    };
    let r = quantization::count(&mp, level, mode)?;
    emit(format, &r, || {
        let mut s = format!(
            "graph {} genus {} level {} mode {}\ncount {}\nverlinde {} match {}\nfusion {} match {}\n",
            r.graph, r.genus, r.level, label(&r.mode), r.count, r.oracle_closed_form, r.matches_closed_form, r.oracle_fusion, r.matches_fusion
        );
        if let Some(note) = &r.note {
            let _ = writeln!(s, "note: {note}");
        }
        s
    })
}

fn verlinde(format: Format, genus: u32, level: u32) -> Result<()> {
    let closed = quantization::verlinde_closed_form(genus, level)?;
    let fusion = quantization::fusion_count(&graphs::multi_theta(genus as usize)?, level);
    let value = json!({
        "genus": genus,
        "level": level,
        "closed_form": closed,
        "fusion": fusion,
        "agree": closed == fusion,
    });
    emit(format, &value, || {
        format!(
            "genus {genus} level {level}\nclosed form {closed}\nfusion {fusion}\nagree {}\n",
            closed == fusion
        )
    })
}

fn volume(format: Format, graph: &TrivalentGraph) -> Result<()> {
    let r = quantization::volume_report(graph)?;
    emit(format, &r, || {
        format!(
            "graph {} genus {}\nvolume {} ({})\nreference {}\nratio {} (equal: {})\n",
            r.graph,
            r.genus,
            rational_string(&r.computed),
            r.computed_decimal,
            r.reference_value,
            r.ratio,
            r.ratio_is_one
        )
    })
}

#[derive(Serialize)]
struct ChainStep {
    step: usize,
    imposed: Option<String>,
    vertices: usize,
    contained_in_previous: Option<bool>,
    strict: Option<bool>,
}

fn chain(format: Format, genus: u32) -> Result<()> {
    let c = moment::approximation_chain(genus as usize)?;
    let mut steps = Vec::new();
    for (i, p) in c.steps.iter().enumerate() {
        let (inside, strict) = if i == 0 {
            (None, None)
        } else {
            let prev = &c.steps[i - 1];
            (Some(prev.contains(p)?), Some(!p.contains(prev)?))
        };
        steps.push(ChainStep {
            step: i,
            imposed: i.checked_sub(1).map(|j| c.order[j].clone()),
            vertices: p.vertices().len(),
            contained_in_previous: inside,
            strict,
        });
    }
    let ends_at_target = c
        .steps
        .last()
        .expect("nonempty chain")
        .equals(moment_polytope(&c.graph)?.polytope())?;
    let value = json!({
        "graph": c.graph.name(),
        "order": c.order,
        "steps": steps,
        "ends_at_moment_polytope": ends_at_target,
    });
    emit(format, &value, || {
        let mut s = format!("graph {} order {}\n", c.graph.name(), c.order.join(" "));
        for st in &steps {
            let _ = writeln!(
                s,
                "  A{} vertices {}{}",
                st.step,
                st.vertices,
                match (&st.imposed, st.contained_in_previous, st.strict) {
                    (Some(v), Some(a), Some(b)) => format!(" after {v} contained {a} strict {b}"),
                    _ => String::new(),
                }
            );
        }
        let _ = writeln!(s, "ends at moment polytope {ends_at_target}");
        s
    })
}

fn run_verify(format: Format, max_genus: u32, max_level: u32) -> Result<bool> {
    let results = verify::run_all(&VerifyOptions {
        max_genus: max_genus as usize,
        max_level,
    });
    let all = results.iter().all(|r| r.passed);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({"passed": all, "criteria": results}))?
        ),
        Format::Text => {
            for r in &results {
                println!("{}", r.line());
            }
            println!(
                "{} of {} criteria passed",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
        }
    }
    Ok(all)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
            .context("configuring worker pool")?;
    }
    let f = cli.format;
    match cli.command {
        Command::Graph {
            command: GraphCommand::Info { input },
        } => graph_info(f, &input.load()?)?,
        Command::Polytope { input, hrep, vrep } => polytope(f, &input.load()?, hrep, vrep)?,
        Command::DelzantCheck { input, lattice } => delzant_check(f, &input.load()?, lattice)?,
        Command::Count { input, level, mode } => count(f, &input.load()?, level, mode)?,
        Command::Verlinde { genus, level } => verlinde(f, genus, level)?,
        Command::Volume { input } => volume(f, &input.load()?)?,
        Command::Chain { genus } => chain(f, genus)?,
        Command::Verify {
            max_genus,
            max_level,
        } => {
            if !run_verify(f, max_genus, max_level)? {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

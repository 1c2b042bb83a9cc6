//! The `pytharr` command line. Exit codes: 0 on success, 1 on a domain error,
//! 2 on a parse or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::arrangement::build_arrangement;
use crate::error::{Error, Result};
use crate::genericity::{bias_restricted_flats, derived_arrangement, flats_lattice};
use crate::instance::{bias_token_ids, parse_circle, Instance};
use crate::report;
use crate::transport::{
    are_equivalent, parallelism_canonicalization, realize_circuit_as_circle, transport_onto, tree_representation,
};

#[derive(Parser, Debug)]
#[command(name = "pytharr", version, about = "Exact analysis of Pythagorean hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the hyperplane of every edge.
    Build {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Intersection semilattice, flats by codimension.
    Semilattice {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Whether the gains avoid every hyperplane of nongenericity.
    Genericity {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lattice of flats of the derived arrangement in gain space.
    Flats {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Balanced circles, comma separated (`abs,bct` or `12:23:31`).
        #[arg(long, value_delimiter = ',')]
        bias: Vec<String>,
    },
    /// Emit an equivalent instance.
    Transport {
        file: PathBuf,
        /// Target shape; its gains are ignored.
        #[arg(long, requires = "map")]
        target: Option<PathBuf>,
        /// Edge correspondence `target=source`, comma separated.
        #[arg(long, value_delimiter = ',')]
        map: Vec<String>,
        /// Tree shape `edge=u-v`, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "target")]
        tree: Vec<String>,
        /// Circuit to turn into a circle.
        #[arg(long)]
        circuit: Option<String>,
        #[arg(long)]
        canonicalize: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// SVG plot of a planar arrangement.
    Plot {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn write_json(path: &Option<PathBuf>, v: &serde_json::Value) -> Result<()> {
    match path {
        Some(p) => write(p, &(serde_json::to_string_pretty(v).expect("json value") + "\n")),
        None => Ok(()),
    }
}

fn pairs(items: &[String], sep: char, what: &str) -> Result<Vec<(String, String)>> {
    items
        .iter()
        .map(|s| {
            s.split_once(sep)
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| Error::parse(format!("--{what}"), format!("expected `x{sep}y`, got `{s}`")))
        })
        .collect()
}

pub fn execute(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Build { file, json } => {
            let inst = Instance::read(file)?;
            let a = build_arrangement(&inst.triple.config, &inst.triple.graph)?;
            write_json(json, &report::arrangement_json(&a))?;
            Ok(report::arrangement_text(&a))
        }
        Command::Semilattice { file, dot, json } => {
            let inst = Instance::read(file)?;
            let a = build_arrangement(&inst.triple.config, &inst.triple.graph)?;
            let sl = a.intersection_semilattice();
            if let Some(p) = dot {
                write(p, &report::semilattice_dot(&a, &sl))?;
            }
            write_json(json, &report::semilattice_json(&a, &sl))?;
            Ok(report::semilattice_text(&a, &sl))
        }
        Command::Genericity { file, json } => {
            let inst = Instance::read(file)?;
            let (c, g) = (&inst.triple.config, &inst.triple.graph);
            let derived = derived_arrangement(c, g)?;
            if json.is_some() {
                let gains = g.gains();
                let ids: Vec<String> = g.edges().iter().map(|e| e.id.clone()).collect();
                let central: Vec<serde_json::Value> = derived
                    .iter()
                    .filter(|(_, f)| f.contains(&gains))
                    .map(|(x, f)| serde_json::json!({"circuit": g.label(*x), "equation": f.display(&ids)}))
                    .collect();
                write_json(json, &serde_json::json!({"generic": central.is_empty(), "central": central}))?;
            }
            Ok(report::genericity_text(g, &derived))
        }
        Command::Flats { file, dot, json, bias } => {
            let inst = Instance::read(file)?;
            let (c, g) = (&inst.triple.config, &inst.triple.graph);
            let circles = if bias.is_empty() {
                inst.bias_circles()?
            } else {
                bias.iter().map(|t| parse_circle(g, &bias_token_ids(t))).collect::<Result<Vec<_>>>()?
            };
            let restricted;
            let (lat, b) = if circles.is_empty() {
                (flats_lattice(c, g)?, None)
            } else {
                restricted = bias_restricted_flats(c, g, &circles)?;
                (restricted.lattice.clone(), Some(&restricted))
            };
            if let Some(p) = dot {
                write(p, &report::flats_dot(g, &lat, b))?;
            }
            write_json(json, &report::flats_json(g, &lat, b))?;
            Ok(report::flats_text(g, &lat, b))
        }
        Command::Transport { file, target, map, tree, circuit, canonicalize, json } => {
            let inst = Instance::read(file)?;
            let t = &inst.triple;
            let out = if let Some(target) = target {
                let shape = Instance::read(target)?;
                transport_onto(t, &shape.triple, &pairs(map, '=', "map")?)?
            } else if !tree.is_empty() {
                let tree_edges = pairs(tree, '=', "tree")?
                    .into_iter()
                    .map(|(e, uv)| {
                        uv.split_once('-')
                            .map(|(u, v)| (e.clone(), u.to_string(), v.to_string()))
                            .ok_or_else(|| Error::parse("--tree", format!("expected `edge=u-v`, got `{e}={uv}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                tree_representation(t, &tree_edges)?
            } else if let Some(x) = circuit {
                let ids = bias_token_ids(x);
                let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
                realize_circuit_as_circle(t, t.graph.edge_set(&refs)?)?
            } else if *canonicalize {
                parallelism_canonicalization(t)?
            } else {
                t.clone()
            };
            let equivalent = are_equivalent(t, &out)?;
            let text = Instance::new(out).to_json();
            match json {
                Some(p) => {
                    write(p, &text)?;
                    Ok(format!("equivalent: {equivalent}\n"))
                }
                None => {
                    eprintln!("equivalent: {equivalent}");
                    Ok(text)
                }
            }
        }
        Command::Plot { file, svg } => {
            let inst = Instance::read(file)?;
            let a = build_arrangement(&inst.triple.config, &inst.triple.graph)?;
            write(svg, &report::plot_svg(&inst.triple.config, &a)?)?;
            Ok(String::new())
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    if e.is_parse() {
        2
    } else {
        1
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

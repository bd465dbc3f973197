use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use linecover::cover::{self, SearchSpace};
use linecover::geom::{self, io as gio, svg, Drawing2, Line2};
use linecover::graph::{self, make_g0, make_spiral, make_stacked, Graph, LevelAssignment};
use linecover::planes3d::{self, TwoPlaneDrawing};
use linecover::reduction::{self, ReductionOutput, TwoLineDrawing};
use linecover::Error;

#[derive(Parser)]
#[command(name = "linecover", version, about = "Line and plane cover laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

/// Paths may be `-` for standard input or output.
#[derive(Subcommand)]
enum Cmd {
    /// Stacked triangulation of depth d.
    GenStacked {
        d: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Two K4s sharing an edge.
    GenG0 {
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Spiral for a path of length L.
    GenSpiral {
        l: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the canonical drawing here.
        #[arg(long)]
        drawing: Option<PathBuf>,
    },
    /// Builds G'' from a connected planar graph.
    Reduce {
        graph: PathBuf,
        /// Vertex the path attaches to; by default the first vertex of the
        /// lowest level of a level-planar witness, or 0 if none is found.
        #[arg(long)]
        attachment: Option<usize>,
        /// G'' in the graph format (roles and marks as comment lines).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Full reduction record as JSON, as read by extract-levels.
        #[arg(long)]
        reduction: Option<PathBuf>,
    },
    /// Draws G'' on the two axes from a leveling of the input graph.
    ForwardDraw {
        graph: PathBuf,
        levels: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        reduction: Option<PathBuf>,
        /// G'' in the graph format.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Recovers a leveling of the input graph from a two-axis drawing of G''.
    ExtractLevels {
        reduction: PathBuf,
        drawing: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bounds the weak line cover number by search.
    SolvePi12 {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        /// Half-width of the integer position window.
        #[arg(long, default_value_t = 4)]
        radius: i64,
        /// Parallel horizontal lines instead of a concurrent pencil.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        drawing_out: Option<PathBuf>,
        #[arg(long)]
        lines_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Draws the stacked triangulation of depth d on few lines.
    StackedDraw {
        d: usize,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        drawing_out: Option<PathBuf>,
        #[arg(long)]
        lines_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Two-plane drawing with 5n - 19 edges.
    GenTwoPlanes {
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bound check over seeded random saturated two-plane drawings.
    #[command(name = "random-3d")]
    Random3d {
        n: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Checks a straight-line drawing, and optionally that lines cover it.
    #[command(name = "verify-2d")]
    Verify2d {
        graph: PathBuf,
        drawing: PathBuf,
        lines: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Checks a two-plane drawing.
    #[command(name = "verify-3d")]
    Verify3d {
        drawing: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compares a two-plane drawing with the 5n - 19 bound.
    BoundCheck {
        drawing: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Renders a 2D drawing as SVG.
    ExportSvg {
        graph: PathBuf,
        drawing: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lines: Option<PathBuf>,
        /// Draw both coordinate axes.
        #[arg(long)]
        axes: bool,
    },
}

fn is_dash(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn reader(path: &Path) -> anyhow::Result<Box<dyn BufRead>> {
    if is_dash(path) {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(f)))
}

fn read_string(path: &Path) -> anyhow::Result<String> {
    let mut s = String::new();
    reader(path)?.read_to_string(&mut s)?;
    Ok(s)
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) if !is_dash(p) => {
            std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))
        }
        _ => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_file(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => emit(Some(p), text),
        None => Ok(()),
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Ok(Graph::read_text(reader(path)?)?)
}

fn read_drawing(path: &Path) -> anyhow::Result<Drawing2> {
    Ok(gio::read_drawing2(reader(path)?)?)
}

fn json_text<T: serde::Serialize + ?Sized>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn default_attachment(g: &Graph) -> usize {
    match graph::leveled_planar_search(g, g.vertex_count()) {
        Ok(Some(lev)) => lev.order[0][0],
        _ => 0,
    }
}

fn run(cmd: Cmd) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::GenStacked { d, out } => {
            let (g, _) = make_stacked(d)?;
            emit(out.as_deref(), &g.to_text())?;
        }
        Cmd::GenG0 { out } => emit(out.as_deref(), &make_g0().to_text())?,
        Cmd::GenSpiral { l, out, drawing } => {
            let s = make_spiral(l)?;
            emit(out.as_deref(), &s.graph.to_text())?;
            emit_file(
                drawing.as_ref(),
                &gio::drawing2_to_string(&s.layout.drawing),
            )?;
        }
        Cmd::Reduce {
            graph,
            attachment,
            out,
            reduction,
        } => {
            let g = read_graph(&graph)?;
            let a = attachment.unwrap_or_else(|| default_attachment(&g));
            let red = reduction::build(&g, a)?;
            emit(out.as_deref(), &red.graph.to_text())?;
            emit_file(reduction.as_ref(), &json_text(&red)?)?;
        }
        Cmd::ForwardDraw {
            graph,
            levels,
            out,
            reduction,
            graph_out,
        } => {
            let g = read_graph(&graph)?;
            let lev = LevelAssignment::read_text(reader(&levels)?)?;
            graph::validate_leveling(&g, &lev)?;
            let red = reduction::build(&g, lev.order[0][0])?;
            let d = reduction::forward_draw(&g, &lev, &red)?;
            emit(out.as_deref(), &gio::drawing2_to_string(d.drawing()))?;
            emit_file(reduction.as_ref(), &json_text(&red)?)?;
            emit_file(graph_out.as_ref(), &red.graph.to_text())?;
        }
        Cmd::ExtractLevels {
            reduction,
            drawing,
            out,
        } => {
            let red: ReductionOutput = serde_json::from_str(&read_string(&reduction)?)
                .context("reduction file is not a valid reduction record")?;
            let d = TwoLineDrawing::new(&red.graph, read_drawing(&drawing)?)?;
            let lev = reduction::extract_levels(&red, &d)?;
            emit(out.as_deref(), &lev.to_text())?;
        }
        Cmd::SolvePi12 {
            graph,
            k_max,
            radius,
            parallel,
            drawing_out,
            lines_out,
            format,
        } => {
            let g = read_graph(&graph)?;
            let space = if parallel {
                SearchSpace::parallel(radius)
            } else {
                SearchSpace::default().with_radius(radius)
            };
            let (interval, cert) = cover::pi12_interval_with_witness(&g, k_max, &space)?;
            if let Some(c) = &cert {
                emit_file(drawing_out.as_ref(), &gio::drawing2_to_string(c.drawing()))?;
                emit_file(lines_out.as_ref(), &gio::lines_to_string(c.lines()))?;
            }
            let upper = interval
                .upper
                .map_or("none found".to_string(), |k| k.to_string());
            let where_ = drawing_out
                .as_ref()
                .filter(|_| cert.is_some())
                .map(|p| p.display().to_string());
            let text = match format {
                Format::Json => json_text(&json!({
                    "lower": interval.lower,
                    "upper": interval.upper,
                    "k_max": k_max,
                    "certificate": where_,
                }))?,
                Format::Text => {
                    let mut s = format!("pi12 in [{}, {}]\n", interval.lower, upper);
                    if let Some(p) = where_ {
                        s += &format!("certificate {p}\n");
                    }
                    s
                }
            };
            emit(None, &text)?;
        }
        Cmd::StackedDraw {
            d,
            graph_out,
            drawing_out,
            lines_out,
            format,
        } => {
            let sd = cover::stacked_drawing(d)?;
            let c = &sd.certificate;
            emit_file(graph_out.as_ref(), &c.graph().to_text())?;
            emit_file(drawing_out.as_ref(), &gio::drawing2_to_string(c.drawing()))?;
            emit_file(lines_out.as_ref(), &gio::lines_to_string(c.lines()))?;
            let text = match format {
                Format::Json => json_text(&json!({
                    "depth": sd.depth,
                    "vertices": c.graph().vertex_count(),
                    "construction": sd.construction,
                    "lines_used": sd.lines_used,
                    "target": sd.target,
                    "meets_target": sd.meets_target,
                }))?,
                Format::Text => format!(
                    "depth {} vertices {} construction {:?} lines {} target {}\n",
                    sd.depth,
                    c.graph().vertex_count(),
                    sd.construction,
                    sd.lines_used,
                    sd.target
                ),
            };
            emit(None, &text)?;
        }
        Cmd::GenTwoPlanes { n, out } => {
            let d = planes3d::tight_construction(n)?;
            emit(out.as_deref(), &d.to_text())?;
        }
        Cmd::Random3d {
            n,
            seeds,
            first_seed,
            report,
            format,
        } => {
            let mut rows = Vec::new();
            for seed in first_seed..first_seed + seeds {
                let d = planes3d::random_two_plane(n, seed)?;
                rows.push((seed, planes3d::bound_check(&d)));
            }
            let all = rows.iter().all(|(_, r)| r.passed);
            let max_m = rows.iter().map(|(_, r)| r.m).max().unwrap_or(0);
            let bound = planes3d::small_case_bound(n);
            let text = match format {
                Format::Json => json_text(&json!({
                    "n": n,
                    "bound": bound,
                    "max_m": max_m,
                    "passed": all,
                    "runs": rows.iter().map(|(seed, r)| json!({
                        "seed": seed,
                        "m": r.m,
                        "stats": r.stats,
                        "passed": r.passed,
                    })).collect::<Vec<_>>(),
                }))?,
                Format::Text => {
                    let mut s = format!(
                        "{:>6} {:>4} {:>5} {:>4} {:>4} {:>4} {:>4} {:>5} {:>6}\n",
                        "seed", "n", "m", "s", "a", "b", "t", "gaps", "result"
                    );
                    for (seed, r) in &rows {
                        let st = &r.stats;
                        s += &format!(
                            "{:>6} {:>4} {:>5} {:>4} {:>4} {:>4} {:>4} {:>5} {:>6}\n",
                            seed,
                            st.n,
                            st.m,
                            st.s,
                            st.a,
                            st.b,
                            st.t,
                            st.internal_gaps,
                            if r.passed { "pass" } else { "fail" }
                        );
                    }
                    s += &format!("max m {max_m} of bound {bound}\n");
                    s
                }
            };
            emit(report.as_deref(), &text)?;
            return Ok(verdict(all));
        }
        Cmd::Verify2d {
            graph,
            drawing,
            lines,
            format,
        } => {
            let g = read_graph(&graph)?;
            let d = read_drawing(&drawing)?;
            let report = geom::validate_drawing2(&g, &d)?;
            let lines: Option<Vec<Line2>> = match &lines {
                Some(p) => Some(gio::read_lines(reader(p)?)?),
                None => None,
            };
            let uncovered: Vec<usize> = match &lines {
                Some(ls) => (0..g.vertex_count())
                    .filter(|&v| !ls.iter().any(|l| l.contains(&d.positions[v])))
                    .collect(),
                None => Vec::new(),
            };
            let ok = report.passed() && uncovered.is_empty();
            let text = match format {
                Format::Json => json_text(&json!({
                    "passed": ok,
                    "violations": report.violations,
                    "lines": lines.as_ref().map(|l| l.len()),
                    "uncovered": uncovered,
                }))?,
                Format::Text => {
                    let mut s = report.to_string();
                    if let Some(ls) = &lines {
                        if uncovered.is_empty() {
                            s += &format!("covered by {} line(s)\n", ls.len());
                        } else {
                            s += &format!("vertices off the lines: {uncovered:?}\n");
                        }
                    }
                    s
                }
            };
            emit(None, &text)?;
            return Ok(verdict(ok));
        }
        Cmd::Verify3d { drawing, format } => {
            let text3 = gio::read_drawing3(reader(&drawing)?)?;
            let (g, report) = TwoPlaneDrawing::check(&text3)?;
            let text = match format {
                Format::Json => json_text(&json!({
                    "passed": report.passed(),
                    "n": g.vertex_count(),
                    "m": g.edge_count(),
                    "violations": report.violations,
                }))?,
                Format::Text => format!("n {} m {}\n{report}", g.vertex_count(), g.edge_count()),
            };
            emit(None, &text)?;
            return Ok(verdict(report.passed()));
        }
        Cmd::BoundCheck { drawing, format } => {
            let d = TwoPlaneDrawing::read_text(reader(&drawing)?)?;
            let r = planes3d::bound_check(&d);
            let text = match format {
                Format::Json => json_text(&r)?,
                Format::Text => r.to_string(),
            };
            emit(None, &text)?;
            return Ok(verdict(r.passed));
        }
        Cmd::ExportSvg {
            graph,
            drawing,
            out,
            lines,
            axes,
        } => {
            if is_dash(&graph) && is_dash(&drawing) {
                bail!("graph and drawing cannot both come from standard input");
            }
            let g = read_graph(&graph)?;
            let d = read_drawing(&drawing)?;
            let mut ls = match &lines {
                Some(p) => gio::read_lines(reader(p)?)?,
                None => Vec::new(),
            };
            if axes {
                ls.extend([Line2::x_axis(), Line2::y_axis()]);
            }
            emit(out.as_deref(), &svg::render(&g, &d, &ls))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Verification failures exit with 1, usage and capacity problems with 2.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidDrawing(_) | Error::InvalidLeveling(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

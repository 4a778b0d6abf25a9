mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use homdens::algebra::QExpr;
use homdens::certificates::{self, check_cs_proof, is_psd, moment_matrix, refute, RefuteOptions, Verdict};
use homdens::density::{self, t_expr_with_cap, RootMap, WeightedGraph, DEFAULT_FREE_LABEL_CAP};
use homdens::graphs::{enumerate_plgs, is_stringent, stringent_graph, Graph};
use homdens::reductions::{build_instance, witness_graph};
use homdens::{text, Rational};
use num::Signed;

use io::Cache;

#[derive(Parser)]
#[command(name = "homdens", version, about = "Exact homomorphism densities of quantum graphs")]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Term budget for expansions.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Cap on labels enumerated at once by structured evaluation.
    #[arg(long, global = true)]
    free_label_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hom,
    Inj,
    Ind,
}

#[derive(Subcommand)]
enum Cmd {
    /// Density of a graph or quantum graph in a (weighted) target.
    Density {
        #[arg(long)]
        target: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// For a single graph: homomorphism, injective or induced density.
        #[arg(long, value_enum, default_value = "hom")]
        kind: Kind,
    },
    /// The stringent graph on k vertices.
    Stringent {
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The positive quantum graph that is not a sum of squares.
    Counterexample {
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        /// Write the unexpanded expression instead.
        #[arg(long)]
        structured: bool,
    },
    /// The reduction instance of a polynomial, as an expression.
    Reduce {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        /// Expand into a quantum graph (within the budget).
        #[arg(long)]
        expand: bool,
    },
    /// The clique blow-up witnessing a negative grid point of a polynomial.
    Witness {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact value of an instance on a target; exit 1 when negative.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Checks `target = ⟦Σ g_i²⟧` for a certificate file.
    VerifySos {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Checks a Cauchy–Schwarz calculus proof of `claim ≥ 0`.
    CheckProof {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        claim: PathBuf,
    },
    /// Searches for a graph on which the input is negative; exit 1 if found.
    Refute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        sample_max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moment matrix of a basis of partially labeled graphs and its PSD status.
    MomentMatrix {
        #[arg(long)]
        target: PathBuf,
        /// One PLG per line.
        #[arg(long, conflicts_with_all = ["labels", "max_unlabeled"])]
        basis: Option<PathBuf>,
        /// All PLGs with these labels ...
        #[arg(long)]
        labels: Option<String>,
        /// ... and at most this many unlabeled vertices.
        #[arg(long)]
        max_unlabeled: Option<usize>,
    },
    /// Lists graphs up to isomorphism, or PLGs with given labels.
    Enumerate {
        /// Exact order for graphs; maximum order for PLGs.
        #[arg(long)]
        n: usize,
        /// Comma-separated label set.
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn warn_override(name: &str, value: usize, default: usize) {
    if value != default {
        eprintln!("warning: {name} set to {value} (default {default}); runtimes and results past the default are unvetted");
    }
}

fn weighted(g: Graph, w: Option<Vec<Rational>>) -> Result<WeightedGraph> {
    Ok(match w {
        Some(w) => WeightedGraph::new(g, w)?,
        None => WeightedGraph::uniform(g)?,
    })
}

fn sign(v: &Rational) -> &'static str {
    if v.is_negative() {
        "negative"
    } else if v.is_positive() {
        "positive"
    } else {
        "zero"
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("cannot configure worker threads")?;
    }
    let budget = cli.budget.unwrap_or(certificates::DEFAULT_EXPANSION_BUDGET);
    warn_override("--budget", budget, certificates::DEFAULT_EXPANSION_BUDGET);
    let cap = cli.free_label_cap.unwrap_or(DEFAULT_FREE_LABEL_CAP);
    warn_override("--free-label-cap", cap, DEFAULT_FREE_LABEL_CAP);
    let cache = Cache::from_env();

    match cli.cmd {
        Cmd::Density { target, input, kind } => {
            let (g, w) = io::read_target(&target)?;
            let e = io::read_expr(&input)?;
            let value = match (&e, kind) {
                (_, Kind::Hom) => t_expr_with_cap(&QExpr::unlabel_all(e.clone()), &weighted(g, w)?, &RootMap::empty(), cap)?,
                (QExpr::Atom(p), k) => {
                    if w.is_some() {
                        bail!("--kind inj/ind needs an unweighted target");
                    }
                    let h = p.graph();
                    match k {
                        Kind::Inj => density::t_inj(h, &g)?,
                        _ => density::t_ind(h, &g)?,
                    }
                }
                _ => bail!("--kind inj/ind needs a single graph as input"),
            };
            println!("t={value}");
        }
        Cmd::Stringent { k, out } => {
            let h = stringent_graph(k)?;
            println!("vertices={} edges={} stringent={}", h.order(), h.edge_count(), is_stringent(&h)?);
            match out {
                Some(p) => io::write(&p, &text::format_target(&h, None))?,
                None => println!("graph={}", text::format_graph(&h)),
            }
        }
        Cmd::Counterexample { k, out, structured } => {
            if structured {
                let e = homdens::reductions::counterexample_expr(k)?;
                io::write(&out, &(text::format_qexpr(&e) + "\n"))?;
                println!("nodes={}", e.size());
            } else {
                let x = cache.counterexample(k)?;
                io::write(&out, &text::format_quantum(&x))?;
                println!("terms={}", x.len());
            }
        }
        Cmd::Reduce { poly, k, out, expand } => {
            let p = text::parse_polynomial(&io::read(&poly)?).map_err(|e| anyhow::anyhow!("{}:{e}", poly.display()))?;
            let inst = build_instance(&p, k)?;
            if expand {
                let q = inst.expr.expand(budget)?;
                io::write(&out, &text::format_quantum(&q))?;
                println!("terms={}", q.len());
            } else {
                io::write(&out, &(text::format_qexpr(&inst.expr) + "\n"))?;
                println!("nodes={} degree={}", inst.expr.size(), inst.q.degree());
            }
        }
        Cmd::Witness { poly, sizes, out } => {
            let p = text::parse_polynomial(&io::read(&poly)?).map_err(|e| anyhow::anyhow!("{}:{e}", poly.display()))?;
            let g = witness_graph(&p, &sizes)?;
            io::write(&out, &text::format_target(&g, None))?;
            println!("vertices={} edges={}", g.order(), g.edge_count());
        }
        Cmd::Eval { input, target } => {
            let e = io::read_expr(&input)?;
            let (g, w) = io::read_target(&target)?;
            let v = t_expr_with_cap(&QExpr::unlabel_all(e), &weighted(g, w)?, &RootMap::empty(), cap)?;
            println!("value={v}");
            println!("sign={}", sign(&v));
            return Ok(u8::from(v.is_negative()));
        }
        Cmd::VerifySos { target, cert } => {
            let t = io::read_quantum(&target, budget)?;
            let c = text::parse_sos(&io::read(&cert)?).map_err(|e| anyhow::anyhow!("{}:{e}", cert.display()))?;
            let ok = certificates::verify_sos_with_budget(&t, &c, budget)?;
            println!("verified={ok}");
            return Ok(u8::from(!ok));
        }
        Cmd::CheckProof { proof, claim } => {
            let base = proof.parent().map(PathBuf::from).unwrap_or_default();
            let resolve = |p: &str| io::read_expr(&base.join(p)).map_err(|e| format!("{e:#}"));
            let pr = text::parse_proof(&io::read(&proof)?, &resolve).map_err(|e| anyhow::anyhow!("{}:{e}", proof.display()))?;
            let claimed = io::read_quantum(&claim, budget)?;
            match check_cs_proof(&pr, &claimed)? {
                Verdict::Accepted => {
                    println!("accepted=true lines={}", pr.lines.len());
                    return Ok(0);
                }
                Verdict::Rejected { line, reason } => {
                    println!("accepted=false line={line} reason=\"{reason}\"");
                    return Ok(1);
                }
            }
        }
        Cmd::Refute { input, max_n, samples, sample_max_n, seed, out } => {
            let e = QExpr::unlabel_all(io::read_expr(&input)?);
            let opts = RefuteOptions { max_n, samples, sample_max_n, seed, ..RefuteOptions::default() };
            match refute(&e, &opts)? {
                None => println!("witness=none"),
                Some(w) => {
                    println!("witness={}", text::format_graph(&w.graph));
                    if let Some(ws) = &w.weights {
                        let ws: Vec<String> = ws.iter().map(u64::to_string).collect();
                        println!("weights={}", ws.join(","));
                    }
                    if let Some(b) = &w.blowup {
                        println!("blowup={}", text::format_graph(b));
                    }
                    println!("value={}", w.value);
                    if let Some(p) = out {
                        io::write(&p, &text::format_target(w.blowup.as_ref().unwrap_or(&w.graph), None))?;
                    }
                    return Ok(1);
                }
            }
        }
        Cmd::MomentMatrix { target, basis, labels, max_unlabeled } => {
            let (g, w) = io::read_target(&target)?;
            if w.is_some() {
                bail!("moment matrices use unweighted targets");
            }
            let b = match basis {
                Some(p) => io::read_plg_list(&p)?,
                None => {
                    let labels = io::parse_labels(labels.as_deref().unwrap_or(""))?;
                    enumerate_plgs(&labels, max_unlabeled.unwrap_or(1))?
                }
            };
            let m = moment_matrix(&g, &b)?;
            for (p, row) in b.iter().zip(&m.entries) {
                let r: Vec<String> = row.iter().map(Rational::to_string).collect();
                println!("row {} = {}", text::format_plg(p), r.join(" "));
            }
            let psd = is_psd(&m.entries);
            println!("size={} psd={psd}", b.len());
            return Ok(u8::from(!psd));
        }
        Cmd::Enumerate { n, labels, list } => {
            let items: Vec<String> = match labels {
                Some(l) => {
                    let labels = io::parse_labels(&l)?;
                    let extra = n.checked_sub(labels.len()).context("--n is smaller than the number of labels")?;
                    enumerate_plgs(&labels, extra)?.iter().map(text::format_plg).collect()
                }
                None => cache.graphs(n)?.iter().map(text::format_graph).collect(),
            };
            println!("count={}", items.len());
            if list {
                for s in items {
                    println!("{s}");
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(sign(&homdens::rat(-1, 2)), "negative");
        assert_eq!(sign(&homdens::rat(0, 1)), "zero");
    }
}

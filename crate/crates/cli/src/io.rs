use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use homdens::algebra::{QExpr, QuantumGraph};
use homdens::graphs::{enumerate_graphs, Graph, Plg};
use homdens::text;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn parsed<T>(path: &Path, r: Result<T, text::ParseError>) -> Result<T> {
    r.map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

/// Anything that denotes a quantum graph: a PLG, quantum-graph terms or an
/// expression, told apart by extension and then by the first character.
pub fn read_expr(path: &Path) -> Result<QExpr> {
    let s = read(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let first = s.trim_start().chars().next().unwrap_or(' ');
    match ext {
        "qx" => parsed(path, text::parse_qexpr(&s)),
        "qg" => Ok(QExpr::from(&parsed(path, text::parse_quantum(&s))?)),
        "plg" => Ok(QExpr::Atom(parsed(path, text::parse_plg(&s))?)),
        _ if first == '(' => parsed(path, text::parse_qexpr(&s)),
        _ if first == '[' => Ok(QExpr::Atom(parsed(path, text::parse_plg(&s))?)),
        _ => Ok(QExpr::from(&parsed(path, text::parse_quantum(&s))?)),
    }
}

pub fn read_quantum(path: &Path, budget: usize) -> Result<QuantumGraph> {
    Ok(read_expr(path)?.expand(budget)?)
}

pub fn read_target(path: &Path) -> Result<(Graph, Option<Vec<homdens::Rational>>)> {
    parsed(path, text::parse_target(&read(path)?))
}

pub fn read_plg_list(path: &Path) -> Result<Vec<Plg>> {
    let s = read(path)?;
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = text::parse_plg(line).map_err(|e| anyhow::anyhow!("{}:{}:{}: {}", path.display(), i + 1, e.col, e.msg))?;
        out.push(p);
    }
    Ok(out)
}

pub fn parse_labels(s: &str) -> Result<Vec<homdens::graphs::Label>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().with_context(|| format!("bad label `{x}`")))
        .collect()
}

/// Results that are expensive to recompute, kept as files under
/// `HOMDENS_CACHE_DIR` when that is set. Corrupt entries are recomputed.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn from_env() -> Self {
        Cache { dir: std::env::var_os("HOMDENS_CACHE_DIR").map(PathBuf::from) }
    }

    fn entry<T>(&self, key: &str, load: impl Fn(&str) -> Option<T>, compute: impl FnOnce() -> Result<T>, store: impl Fn(&T) -> String) -> Result<T> {
        let Some(dir) = &self.dir else {
            return compute();
        };
        let path = dir.join(key);
        if let Some(v) = fs::read_to_string(&path).ok().and_then(|s| load(&s)) {
            return Ok(v);
        }
        let v = compute()?;
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        // write then rename so a concurrent reader never sees a partial file
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        write(&tmp, &store(&v))?;
        fs::rename(&tmp, &path).with_context(|| format!("cannot update cache entry {}", path.display()))?;
        Ok(v)
    }

    pub fn graphs(&self, n: usize) -> Result<Vec<Graph>> {
        self.entry(
            &format!("graphs-n{n}.txt"),
            |s| s.lines().map(|l| text::parse_plg(l).ok().map(|p| p.graph().clone())).collect(),
            || Ok(enumerate_graphs(n)?),
            |gs| gs.iter().map(|g| text::format_graph(g) + "\n").collect(),
        )
    }

    pub fn counterexample(&self, k: usize) -> Result<QuantumGraph> {
        self.entry(
            &format!("counterexample-k{k}.qg"),
            |s| text::parse_quantum(s).ok(),
            || Ok(homdens::reductions::build_counterexample(k)?),
            text::format_quantum,
        )
    }
}

//! Line-oriented text formats for instances, solutions, gadgets and
//! path-packing instances. `#` starts a comment; blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use connpres_core::reductions::BicriteriaCutInstance;
use connpres_core::treemcf::{PathPackingInstance, Tree, TreePath};
use connpres_core::{EdgeId, Instance, MultiGraph, Solution, Terminals};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based; 0 means end of input.
    pub line: usize,
    pub message: String,
}

pub type Result<T> = std::result::Result<T, FormatError>;

struct Lines<'a> {
    inner: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = body.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Lines { inner, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.inner.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let item = self.inner.get(self.pos).cloned().ok_or_else(|| FormatError {
            line: 0,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    /// Reads a line `<keyword> <args...>` with exactly `arity` arguments.
    fn keyword(&mut self, keyword: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
        let (line, tokens) = self.next(&format!("`{keyword}`"))?;
        if tokens[0] != keyword {
            return Err(err(line, format!("expected `{keyword}`, found `{}`", tokens[0])));
        }
        if tokens.len() != arity + 1 {
            return Err(err(
                line,
                format!("`{keyword}` takes {arity} argument(s), found {}", tokens.len() - 1),
            ));
        }
        Ok((line, tokens[1..].to_vec()))
    }

    fn done(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, tokens)) => Err(err(*line, format!("unexpected `{}`", tokens[0]))),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| err(line, format!("`{token}` is not a non-negative integer")))
}

fn header(lines: &mut Lines, magic: &str) -> Result<()> {
    let (line, tokens) = lines.next(&format!("`{magic} v1`"))?;
    if tokens.len() != 2 || tokens[0] != magic {
        return Err(err(line, format!("expected header `{magic} v1`")));
    }
    if tokens[1] != "v1" {
        return Err(err(line, format!("unsupported version `{}`", tokens[1])));
    }
    Ok(())
}

/// A parsed instance file, with the optional gadget sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub instance: Instance,
    pub protected: Option<BTreeSet<EdgeId>>,
    /// `(s, t, A, B)`.
    pub bicriteria: Option<(usize, usize, usize, usize)>,
}

impl Document {
    /// The bicriteria query of a gadget file.
    pub fn bicriteria_instance(&self) -> Option<std::result::Result<BicriteriaCutInstance, connpres_core::Error>> {
        let (s, t, a, b) = self.bicriteria?;
        let protected = self.protected.clone().unwrap_or_default();
        Some(BicriteriaCutInstance::new(
            self.instance.graph().clone(),
            protected,
            s,
            t,
            a,
            b,
        ))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    Ok(parse_document(text)?.instance)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    header(&mut lines, "cp-instance")?;
    let (line, pq) = lines.next("`p <int> q <int>`")?;
    if pq.len() != 4 || pq[0] != "p" || pq[2] != "q" {
        return Err(err(line, "expected `p <int> q <int>`"));
    }
    let p: usize = num(line, pq[1])?;
    let q: usize = num(line, pq[3])?;
    if p == 0 {
        return Err(err(line, "p must be at least 1"));
    }
    if q == 0 {
        return Err(err(line, "q must be at least 1"));
    }
    let (vline, v) = lines.keyword("variant", 1)?;
    let variant = v[0];
    if !matches!(variant, "steiner" | "st" | "global") {
        return Err(err(vline, format!("unknown variant `{variant}`")));
    }
    let (line, v) = lines.keyword("vertices", 1)?;
    let n: usize = num(line, v[0])?;
    let (line, v) = lines.keyword("edges", 1)?;
    let m: usize = num(line, v[0])?;
    let mut g = MultiGraph::new(n);
    let mut cost = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, e) = lines.keyword("e", 4)?;
        let id: EdgeId = num(line, e[0])?;
        let u: usize = num(line, e[1])?;
        let w: usize = num(line, e[2])?;
        let c: u64 = num(line, e[3])?;
        g.add_edge(id, u, w).map_err(|e| err(line, e.to_string()))?;
        cost.push(c);
    }
    let terminals = if variant == "global" {
        if let Some((line, tokens)) = lines.peek() {
            if tokens[0] == "terminals" {
                return Err(err(*line, "the global variant takes no terminals section"));
            }
        }
        Terminals::Global
    } else {
        let (line, v) = lines.keyword("terminals", 1)?;
        let k: usize = num(line, v[0])?;
        if variant == "st" && k != 1 {
            return Err(err(line, format!("the st variant needs exactly 1 terminal pair (got {k})")));
        }
        let mut pairs = Vec::with_capacity(k);
        for _ in 0..k {
            let (line, t) = lines.keyword("t", 2)?;
            let s: usize = num(line, t[0])?;
            let t: usize = num(line, t[1])?;
            if s >= n || t >= n || s == t {
                return Err(err(line, format!("invalid terminal pair ({s}, {t})")));
            }
            pairs.push((s, t));
        }
        if variant == "st" {
            Terminals::St(pairs[0].0, pairs[0].1)
        } else {
            Terminals::Steiner(pairs)
        }
    };
    let instance =
        Instance::new(g, cost, terminals, p, q).map_err(|e| err(vline, e.to_string()))?;
    let mut protected = None;
    if lines.peek().is_some_and(|(_, t)| t[0] == "protected") {
        let (line, v) = lines.keyword("protected", 1)?;
        let k: usize = num(line, v[0])?;
        let mut set = BTreeSet::new();
        for _ in 0..k {
            let (line, x) = lines.keyword("px", 1)?;
            let id: EdgeId = num(line, x[0])?;
            if !instance.graph().contains_edge(id) {
                return Err(err(line, format!("unknown edge id {id}")));
            }
            if !set.insert(id) {
                return Err(err(line, format!("duplicate protected edge {id}")));
            }
        }
        protected = Some(set);
    }
    let mut bicriteria = None;
    if lines.peek().is_some_and(|(_, t)| t[0] == "bicriteria") {
        let (line, v) = lines.keyword("bicriteria", 4)?;
        let vals: Vec<usize> = v.iter().map(|t| num(line, t)).collect::<Result<_>>()?;
        if vals[0] >= n || vals[1] >= n || vals[0] == vals[1] {
            return Err(err(line, "invalid bicriteria terminals"));
        }
        if vals[3] < vals[2] {
            return Err(err(line, "B must be at least A"));
        }
        bicriteria = Some((vals[0], vals[1], vals[2], vals[3]));
    }
    lines.done()?;
    Ok(Document {
        instance,
        protected,
        bicriteria,
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    out.push_str("cp-instance v1\n");
    let _ = writeln!(out, "p {} q {}", inst.p(), inst.q());
    let _ = writeln!(out, "variant {}", inst.terminals().keyword());
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    let _ = writeln!(out, "edges {}", g.edge_count());
    for (p, e) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "e {} {} {} {}", e.id, e.u, e.v, inst.cost_at(p));
    }
    let pairs: Vec<(usize, usize)> = match inst.terminals() {
        Terminals::Steiner(pairs) => pairs.clone(),
        Terminals::St(s, t) => vec![(*s, *t)],
        Terminals::Global => Vec::new(),
    };
    if !inst.is_global() {
        let _ = writeln!(out, "terminals {}", pairs.len());
        for (s, t) in pairs {
            let _ = writeln!(out, "t {s} {t}");
        }
    }
    out
}

/// The verification query of a gadget followed by its `protected` and
/// `bicriteria` sections.
pub fn serialize_gadget(b: &BicriteriaCutInstance) -> std::result::Result<String, connpres_core::Error> {
    let (inst, _) = b.verification_query()?;
    let mut out = serialize_instance(&inst);
    let _ = writeln!(out, "protected {}", b.protected.len());
    for id in &b.protected {
        let _ = writeln!(out, "px {id}");
    }
    let _ = writeln!(out, "bicriteria {} {} {} {}", b.s, b.t, b.a, b.b);
    Ok(out)
}

pub fn parse_solution(text: &str, inst: &Instance) -> Result<Solution> {
    let mut lines = Lines::new(text);
    header(&mut lines, "cp-solution")?;
    let mut ids = BTreeSet::new();
    while lines.peek().is_some() {
        let (line, x) = lines.keyword("x", 1)?;
        let id: EdgeId = num(line, x[0])?;
        if !inst.graph().contains_edge(id) {
            return Err(err(line, format!("unknown edge id {id}")));
        }
        if !ids.insert(id) {
            return Err(err(line, format!("duplicate edge id {id}")));
        }
    }
    inst.solution(ids).map_err(|e| err(0, e.to_string()))
}

pub fn serialize_solution(x: &Solution) -> String {
    let mut out = String::from("cp-solution v1\n");
    for id in x.protected() {
        let _ = writeln!(out, "x {id}");
    }
    out
}

pub fn parse_tree_mcf(text: &str) -> Result<PathPackingInstance> {
    let mut lines = Lines::new(text);
    header(&mut lines, "tree-mcf")?;
    let (nline, v) = lines.keyword("nodes", 1)?;
    let n: usize = num(nline, v[0])?;
    if n == 0 {
        return Err(err(nline, "a tree needs at least one node"));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let (line, e) = lines.keyword("edge", 2)?;
        let a: usize = num(line, e[0])?;
        let b: usize = num(line, e[1])?;
        if a >= n || b >= n {
            return Err(err(line, format!("tree edge ({a}, {b}) out of range")));
        }
        edges.push((a, b));
    }
    let tree = Tree::new(n, edges).map_err(|e| err(nline, e.to_string()))?;
    let (line, v) = lines.keyword("paths", 1)?;
    let k: usize = num(line, v[0])?;
    let mut paths = Vec::with_capacity(k);
    let mut seen = BTreeSet::new();
    for _ in 0..k {
        let (line, t) = lines.keyword("path", 4)?;
        let path = TreePath {
            id: num(line, t[0])?,
            a: num(line, t[1])?,
            b: num(line, t[2])?,
            weight: num(line, t[3])?,
        };
        if path.a >= n || path.b >= n || path.a == path.b {
            return Err(err(line, format!("path {} has invalid endpoints", path.id)));
        }
        if !seen.insert(path.id) {
            return Err(err(line, format!("duplicate path id {}", path.id)));
        }
        paths.push(path);
    }
    lines.done()?;
    PathPackingInstance::new(tree, paths).map_err(|e| err(0, e.to_string()))
}

pub fn serialize_tree_mcf(inst: &PathPackingInstance) -> String {
    let tree = inst.tree();
    let mut out = String::from("tree-mcf v1\n");
    let _ = writeln!(out, "nodes {}", tree.node_count());
    for (a, b) in tree.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    let _ = writeln!(out, "paths {}", inst.paths().len());
    for p in inst.paths() {
        let _ = writeln!(out, "path {} {} {} {}", p.id, p.a, p.b, p.weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "cp-instance v1\n# a 4-cycle\np 1 q 2\nvariant global\nvertices 4\nedges 4\n\
                      e 0 0 1 1\ne 1 1 2 1\ne 2 2 3 1\ne 3 3 0 1\n";

    #[test]
    fn round_trip() {
        let inst = parse_instance(C4).unwrap();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(text, C4.replace("# a 4-cycle\n", ""));
    }

    #[test]
    fn q_zero_rejected() {
        let e = parse_instance(&C4.replace("q 2", "q 0")).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn unknown_variant() {
        let e = parse_instance(&C4.replace("global", "directed")).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("directed"));
    }

    #[test]
    fn duplicate_edge_and_range() {
        let dup = C4.replace("e 1 1 2 1", "e 0 1 2 1");
        assert_eq!(parse_instance(&dup).unwrap_err().line, 8);
        let range = C4.replace("e 2 2 3 1", "e 2 2 9 1");
        assert_eq!(parse_instance(&range).unwrap_err().line, 9);
    }

    #[test]
    fn st_needs_one_pair() {
        let text = C4.replace("global", "st") + "terminals 2\nt 0 2\nt 1 3\n";
        assert!(parse_instance(&text).is_err());
        let text = C4.replace("global", "st") + "terminals 1\nt 0 2\n";
        assert_eq!(parse_instance(&text).unwrap().terminals(), &Terminals::St(0, 2));
    }

    #[test]
    fn global_rejects_terminals() {
        assert!(parse_instance(&(C4.to_string() + "terminals 1\nt 0 2\n")).is_err());
    }

    #[test]
    fn solution_round_trip() {
        let inst = parse_instance(C4).unwrap();
        let x = inst.solution([3, 1]).unwrap();
        let text = serialize_solution(&x);
        assert_eq!(text, "cp-solution v1\nx 1\nx 3\n");
        assert_eq!(parse_solution(&text, &inst).unwrap(), x);
        assert!(parse_solution("cp-solution v1\nx 7\n", &inst).is_err());
    }

    #[test]
    fn tree_mcf_round_trip() {
        let text = "tree-mcf v1\nnodes 3\nedge 0 1\nedge 1 2\npaths 2\npath 0 0 2 5\npath 1 1 2 3\n";
        let inst = parse_tree_mcf(text).unwrap();
        assert_eq!(serialize_tree_mcf(&inst), text);
        assert!(parse_tree_mcf(&text.replace("path 1 1 2 3", "path 1 2 2 3")).is_err());
    }
}

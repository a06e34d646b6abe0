//! Graph modules: weight modules read off a directed graph whose components
//! are paths and cycles, with weights, edge labels in `{1, x, y}` and
//! scaling factors on every edge.
//!
//! `X u = a_+(e) v` along an edge `e = (u, v)` not labelled `y`, and
//! `Y v = a_-(e) u` along an edge not labelled `x`. Under the evaluation
//! convention used throughout the crate the compatibility condition on an
//! edge labelled `1` reads `a_+ a_- = t(q^{wt(u)})`.

use crate::error::{GwaError, Result};
use crate::modules::{decompose_lenient, CycleModule, Decomposition, Module, PathModule};
use crate::oracle::ExplicitModule;
use crate::orbit::{letter_mul, Letter, OrbitConfig, TParam};
use crate::sample::{random_eigenvalue, random_tparam};
use crate::scalars::literal::parse_scalar;
use crate::scalars::{CycloScalar, JordanType, Matrix};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub id: String,
    pub wt: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub label: Letter,
    pub ap: CycloScalar,
    pub am: CycloScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphModule {
    pub cfg: OrbitConfig,
    pub t: TParam,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

/// One connected component, vertices listed along the edge direction.
#[derive(Clone, Debug)]
pub enum Component {
    /// Vertex indices and the indices of the edges between them.
    Path(Vec<usize>, Vec<usize>),
    /// Like a path, with one more edge from the last vertex to the first.
    Cycle(Vec<usize>, Vec<usize>),
}

impl GraphModule {
    pub fn new(cfg: OrbitConfig, t: TParam) -> Self {
        GraphModule {
            cfg,
            t,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, wt: u32) {
        self.vertices.push(GraphVertex { id: id.into(), wt });
    }

    pub fn add_edge(&mut self, from: &str, to: &str, label: Letter, ap: CycloScalar, am: CycloScalar) {
        self.edges.push(GraphEdge {
            from: from.to_string(),
            to: to.to_string(),
            label,
            ap,
            am,
        });
    }

    fn index(&self) -> Result<HashMap<&str, usize>> {
        let mut idx = HashMap::new();
        for (n, v) in self.vertices.iter().enumerate() {
            if idx.insert(v.id.as_str(), n).is_some() {
                return Err(GwaError::GraphShape(format!("duplicate vertex id {}", v.id)));
            }
        }
        Ok(idx)
    }

    /// Outgoing and incoming edge index of each vertex.
    fn adjacency(&self) -> Result<(Vec<Option<usize>>, Vec<Option<usize>>)> {
        let idx = self.index()?;
        let n = self.vertices.len();
        let (mut out, mut inc) = (vec![None; n], vec![None; n]);
        for (k, e) in self.edges.iter().enumerate() {
            let (Some(&a), Some(&b)) = (idx.get(e.from.as_str()), idx.get(e.to.as_str())) else {
                return Err(GwaError::GraphShape(format!(
                    "edge {} -> {} has an unknown end",
                    e.from, e.to
                )));
            };
            if out[a].replace(k).is_some() || inc[b].replace(k).is_some() {
                return Err(GwaError::GraphShape(format!(
                    "vertex of edge {} -> {} has degree above one",
                    e.from, e.to
                )));
            }
        }
        Ok((out, inc))
    }

    fn endpoints(&self, e: &GraphEdge) -> (usize, usize) {
        let pos = |id: &str| self.vertices.iter().position(|v| v.id == id).expect("known vertex");
        (pos(&e.from), pos(&e.to))
    }

    /// Connected components, each either a directed path or a directed cycle.
    pub fn components(&self) -> Result<Vec<Component>> {
        let (out, inc) = self.adjacency()?;
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let walk = |start: usize, seen: &mut Vec<bool>| -> (Vec<usize>, Vec<usize>, bool) {
            let (mut vs, mut es) = (vec![start], vec![]);
            seen[start] = true;
            let mut cur = start;
            while let Some(e) = out[cur] {
                let (_, next) = self.endpoints(&self.edges[e]);
                es.push(e);
                if next == start {
                    return (vs, es, true);
                }
                seen[next] = true;
                vs.push(next);
                cur = next;
            }
            (vs, es, false)
        };
        for s in 0..n {
            if inc[s].is_none() {
                let (vs, es, _) = walk(s, &mut seen);
                comps.push(Component::Path(vs, es));
            }
        }
        for s in 0..n {
            if !seen[s] {
                let (vs, es, closed) = walk(s, &mut seen);
                debug_assert!(closed);
                comps.push(Component::Cycle(vs, es));
            }
        }
        Ok(comps)
    }
}

/// Checks the path-or-cycle shape and conditions (a) to (f).
pub fn graph_validate(g: &GraphModule) -> Result<()> {
    let p = g.cfg.p();
    let (out, inc) = g.adjacency()?;
    for v in &g.vertices {
        if v.wt >= p {
            return Err(GwaError::GraphWeight(format!(
                "vertex {} has weight {} outside 0..{}",
                v.id, v.wt, p
            )));
        }
    }
    for e in &g.edges {
        let (a, b) = g.endpoints(e);
        let (wu, wv) = (g.vertices[a].wt, g.vertices[b].wt);
        if wv != (wu + 1) % p {
            return Err(GwaError::GraphWeight(format!(
                "{} -> {} goes from weight {} to {}",
                e.from, e.to, wu, wv
            )));
        }
    }
    for (k, v) in g.vertices.iter().enumerate() {
        if inc[k].is_none() && !g.t.is_break(v.wt as i64 - 1) {
            return Err(GwaError::GraphSource(format!(
                "source {} at weight {} does not follow a break",
                v.id, v.wt
            )));
        }
        if out[k].is_none() && !g.t.is_break(v.wt as i64) {
            return Err(GwaError::GraphSink(format!(
                "sink {} at weight {} is not a break",
                v.id, v.wt
            )));
        }
    }
    for e in &g.edges {
        let (a, _) = g.endpoints(e);
        let wu = g.vertices[a].wt as i64;
        let brk = g.t.is_break(wu);
        let ok = match e.label {
            Letter::One => !brk,
            Letter::X | Letter::Y => brk,
            Letter::Zero => false,
        };
        if !ok {
            return Err(GwaError::GraphLabel(format!(
                "edge {} -> {} labelled {} at weight {}",
                e.from,
                e.to,
                e.label.to_char(),
                wu
            )));
        }
        if e.ap.is_zero() || e.am.is_zero() {
            return Err(GwaError::GraphScalarZero(format!("edge {} -> {}", e.from, e.to)));
        }
        if e.label == Letter::One && &e.ap * &e.am != g.t.eval_at(&g.cfg, wu) {
            return Err(GwaError::GraphScalarProduct(format!(
                "edge {} -> {}: {} * {} != t(q^{})",
                e.from,
                e.to,
                e.ap.to_literal(),
                e.am.to_literal(),
                wu
            )));
        }
    }
    Ok(())
}

/// Product of the multipliers `X` (label `x`) or `Y^{-1}` (labels `1`, `y`)
/// around a cycle.
fn cycle_monodromy(g: &GraphModule, edges: &[usize]) -> Result<CycloScalar> {
    let mut acc = g.cfg.scalar(1);
    for &k in edges {
        let e = &g.edges[k];
        acc = if e.label == Letter::X {
            &acc * &e.ap
        } else {
            &acc * &e
                .am
                .inv()
                .ok_or_else(|| GwaError::GraphScalarZero(format!("edge {} -> {}", e.from, e.to)))?
        };
    }
    Ok(acc)
}

/// Module of each component, before splitting.
pub fn graph_components_as_modules(g: &GraphModule) -> Result<Vec<Module>> {
    graph_validate(g)?;
    let p = g.cfg.p();
    let mut out = Vec::new();
    for comp in g.components()? {
        match comp {
            Component::Path(vs, es) => {
                let i = (g.vertices[vs[0]].wt + p - 1) % p;
                let w = es.iter().map(|&k| g.edges[k].label).collect();
                out.push(Module::Path(PathModule::new(g.cfg, g.t.clone(), i, w)?));
            }
            Component::Cycle(vs, es) => {
                let start = vs
                    .iter()
                    .position(|&v| g.vertices[v].wt == 1 % p)
                    .expect("cycle meets every weight");
                let len = es.len();
                let w = (0..len).map(|s| g.edges[es[(start + s) % len]].label).collect();
                let xi = cycle_monodromy(g, &es)?;
                out.push(Module::Cycle(CycleModule::with_eigenvalue(g.cfg, g.t.clone(), w, xi)?));
            }
        }
    }
    Ok(out)
}

/// Module of a graph, split into indecomposable summands where the field
/// allows it.
pub fn graph_to_module(g: &GraphModule) -> Result<Decomposition> {
    let mut out = Decomposition::new();
    for m in graph_components_as_modules(g)? {
        out.extend(&decompose_lenient(&m)?, 1);
    }
    Ok(out)
}

fn edge_scalars(cfg: &OrbitConfig, t: &TParam, label: Letter, k: i64) -> (CycloScalar, CycloScalar) {
    match label {
        Letter::One => (t.eval_at(cfg, k), cfg.scalar(1)),
        _ => (cfg.scalar(1), cfg.scalar(1)),
    }
}

/// Graph of a path module, or of a cycle module whose eigen-data has only
/// blocks of size one. Letters `0` become missing edges.
pub fn module_to_graph(m: &Module) -> Result<GraphModule> {
    let mut g = GraphModule::new(*m.cfg(), m.t().clone());
    let cfg = *m.cfg();
    match m {
        Module::Path(pm) => {
            let start = pm.i as i64 + 1;
            for k in start..=pm.end() {
                g.add_vertex(format!("e{}", k), cfg.weight(k));
            }
            for k in start..pm.end() {
                let l = pm.letter(k);
                if l != Letter::Zero {
                    let (ap, am) = edge_scalars(&cfg, &pm.t, l, k);
                    g.add_edge(&format!("e{}", k), &format!("e{}", k + 1), l, ap, am);
                }
            }
        }
        Module::Cycle(c) => {
            let len = c.w.len();
            let multi = c.f.blocks().len() > 1;
            for (s, (lambda, size)) in c.f.blocks().iter().enumerate() {
                if *size != 1 {
                    return Err(GwaError::UnsupportedShape(format!(
                        "eigen-data of {} has a Jordan block of size {}",
                        m, size
                    )));
                }
                let name = |k: usize| {
                    if multi {
                        format!("c{}e{}", s, k)
                    } else {
                        format!("e{}", k)
                    }
                };
                for k in 1..=len {
                    g.add_vertex(name(k), cfg.weight(k as i64));
                }
                for k in 1..=len {
                    let l = c.w[k - 1];
                    if l == Letter::Zero {
                        continue;
                    }
                    let (mut ap, mut am) = edge_scalars(&cfg, &c.t, l, k as i64);
                    let next = if k == len {
                        ap = &ap * lambda;
                        am = &am * &lambda.inv().ok_or(GwaError::SingularF)?;
                        1
                    } else {
                        k + 1
                    };
                    g.add_edge(&name(k), &name(next), l, ap, am);
                }
            }
        }
    }
    Ok(g)
}

/// Product graph on pairs of vertices of equal weight. Vertex ids are
/// `a⊗b`, listed in the order of the first then the second factor.
pub fn graph_tensor(g1: &GraphModule, g2: &GraphModule) -> Result<GraphModule> {
    g1.cfg.check_same(&g2.cfg)?;
    let mut g = GraphModule::new(g1.cfg, g1.t.mul(&g2.t));
    let pair = |a: &str, b: &str| format!("{}⊗{}", a, b);
    for v in &g1.vertices {
        for v2 in &g2.vertices {
            if v.wt == v2.wt {
                g.add_vertex(pair(&v.id, &v2.id), v.wt);
            }
        }
    }
    let wt1: HashMap<&str, u32> = g1.vertices.iter().map(|v| (v.id.as_str(), v.wt)).collect();
    let wt2: HashMap<&str, u32> = g2.vertices.iter().map(|v| (v.id.as_str(), v.wt)).collect();
    for e in &g1.edges {
        for e2 in &g2.edges {
            if wt1.get(e.from.as_str()) != wt2.get(e2.from.as_str()) {
                continue;
            }
            let label = letter_mul(e.label, e2.label);
            if label == Letter::Zero {
                continue;
            }
            g.add_edge(
                &pair(&e.from, &e2.from),
                &pair(&e.to, &e2.to),
                label,
                &e.ap * &e2.ap,
                &e.am * &e2.am,
            );
        }
    }
    Ok(g)
}

/// Disjoint union of two graphs with the same parameter; ids must not clash.
pub fn graph_union(g1: &GraphModule, g2: &GraphModule) -> Result<GraphModule> {
    g1.cfg.check_same(&g2.cfg)?;
    if g1.t != g2.t {
        return Err(GwaError::ContextMismatch(format!(
            "parameters {} and {} differ",
            g1.t, g2.t
        )));
    }
    let mut g = g1.clone();
    g.vertices.extend(g2.vertices.iter().cloned());
    g.edges.extend(g2.edges.iter().cloned());
    g.index()?;
    Ok(g)
}

/// Explicit matrices of the graph module, one basis vector per vertex.
pub fn graph_realize(g: &GraphModule) -> Result<ExplicitModule> {
    let p = g.cfg.p() as usize;
    let n = g.cfg.conductor();
    let mut dims = vec![0usize; p];
    let mut slot = Vec::with_capacity(g.vertices.len());
    for v in &g.vertices {
        slot.push(dims[v.wt as usize]);
        dims[v.wt as usize] += 1;
    }
    let mut x: Vec<Matrix> = (0..p).map(|i| Matrix::zeros(dims[(i + 1) % p], dims[i], n)).collect();
    let mut y: Vec<Matrix> = (0..p)
        .map(|i| Matrix::zeros(dims[(i + p - 1) % p], dims[i], n))
        .collect();
    for e in &g.edges {
        let (a, b) = g.endpoints(e);
        let wu = g.vertices[a].wt as usize;
        let wv = g.vertices[b].wt as usize;
        if e.label != Letter::Y {
            x[wu].set(slot[b], slot[a], e.ap.clone());
        }
        if e.label != Letter::X {
            y[wv].set(slot[a], slot[b], e.am.clone());
        }
    }
    let m = ExplicitModule {
        cfg: g.cfg,
        t: g.t.clone(),
        dims,
        x,
        y,
    };
    m.check_relations()?;
    Ok(m)
}

/// Graphviz document with vertices on rays at angle `2 pi k / p`, one ring
/// per vertex of the same weight.
pub fn graph_to_dot(g: &GraphModule) -> String {
    let p = g.cfg.p() as f64;
    let mut ring: BTreeMap<u32, usize> = BTreeMap::new();
    let mut s = String::new();
    let _ = writeln!(s, "digraph G {{");
    let _ = writeln!(s, "  layout=neato;");
    let _ = writeln!(s, "  node [shape=circle, width=0.12, label=\"\", xlabel=\"\\N\"];");
    for v in &g.vertices {
        let r = ring.entry(v.wt).or_insert(0);
        let radius = 1.0 + *r as f64 * 0.6;
        *r += 1;
        let ang = 2.0 * std::f64::consts::PI * v.wt as f64 / p;
        let _ = writeln!(
            s,
            "  \"{}\" [pos=\"{:.3},{:.3}!\"];",
            v.id,
            radius * ang.cos(),
            radius * ang.sin()
        );
    }
    for e in &g.edges {
        let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.label.to_char());
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: String,
    wt: u32,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: String,
    to: String,
    label: String,
    ap: String,
    am: String,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    p: u32,
    #[serde(default)]
    conductor: Option<u32>,
    t: String,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

impl Serialize for GraphModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            p: self.cfg.p(),
            conductor: Some(self.cfg.conductor()),
            t: self.t.to_string(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    wt: v.wt,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from.clone(),
                    to: e.to.clone(),
                    label: e.label.to_char().to_string(),
                    ap: e.ap.to_literal(),
                    am: e.am.to_literal(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = GraphJson::deserialize(d)?;
        let cfg = match j.conductor {
            Some(n) => OrbitConfig::new(j.p, n),
            None => Ok(OrbitConfig::with_p(j.p)),
        }
        .map_err(D::Error::custom)?;
        let t = TParam::parse(&j.t, j.p).map_err(D::Error::custom)?;
        let mut g = GraphModule::new(cfg, t);
        for v in j.vertices {
            g.add_vertex(v.id, v.wt);
        }
        for e in j.edges {
            let mut chars = e.label.chars();
            let label = match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(l), None) if l != Letter::Zero => l,
                _ => return Err(D::Error::custom(format!("bad edge label {:?}", e.label))),
            };
            let ap = parse_scalar(&e.ap, cfg.conductor()).map_err(D::Error::custom)?;
            let am = parse_scalar(&e.am, cfg.conductor()).map_err(D::Error::custom)?;
            g.add_edge(&e.from, &e.to, label, ap, am);
        }
        Ok(g)
    }
}

/// Random valid graph: one to three components over one random parameter,
/// each with at most `3p` vertices, with scaling factors rescaled at random
/// while keeping condition (f).
pub fn random_graph<R: Rng>(rng: &mut R, cfg: &OrbitConfig) -> GraphModule {
    let p = cfg.p() as i64;
    let t = random_tparam(rng, cfg.p(), true);
    let mut g = GraphModule::new(*cfg, t.clone());
    let comps = rng.gen_range(1..=if t.has_breaks() { 3 } else { 2 });
    for c in 0..comps {
        let m = if t.has_breaks() && rng.gen_bool(0.5) {
            let breaks = t.breaks();
            let i = breaks[rng.gen_range(0..breaks.len())];
            let lens: Vec<i64> = (0..3 * p).filter(|l| t.is_break(i as i64 + l + 1)).collect();
            let l = lens[rng.gen_range(0..lens.len())];
            let w = (1..=l).map(|s| random_graph_letter(rng, &t, i as i64 + s)).collect();
            Module::Path(PathModule::new(*cfg, t.clone(), i, w).expect("valid path"))
        } else {
            let r = rng.gen_range(1..=3);
            let w = (1..=r * p).map(|k| random_graph_letter(rng, &t, k)).collect();
            let f = JordanType::single(random_eigenvalue(rng, cfg), 1);
            Module::Cycle(CycleModule::new(*cfg, t.clone(), w, f).expect("valid cycle"))
        };
        let mut part = module_to_graph(&m).expect("convertible");
        for v in part.vertices.iter_mut() {
            v.id = format!("g{}{}", c, v.id);
        }
        for e in part.edges.iter_mut() {
            e.from = format!("g{}{}", c, e.from);
            e.to = format!("g{}{}", c, e.to);
            let s = random_eigenvalue(rng, cfg);
            let sinv = s.inv().expect("nonzero");
            match e.label {
                Letter::One => {
                    e.ap = &e.ap * &s;
                    e.am = &e.am * &sinv;
                }
                _ => {
                    e.ap = &e.ap * &s;
                    e.am = &e.am * &random_eigenvalue(rng, cfg);
                }
            }
        }
        g = graph_union(&g, &part).expect("distinct ids");
    }
    g
}

fn random_graph_letter<R: Rng>(rng: &mut R, t: &TParam, k: i64) -> Letter {
    if !t.is_break(k) {
        Letter::One
    } else if rng.gen_bool(0.5) {
        Letter::X
    } else {
        Letter::Y
    }
}

/// The two factors and the product shown in the worked figure, on the
/// orbit of size 3. The second factor starts at a weight whose predecessor
/// is not a break, so it fails condition (b); the product is formed anyway.
pub fn figure_instance() -> (GraphModule, GraphModule, GraphModule) {
    let cfg = OrbitConfig::with_p(3);
    let one = || cfg.scalar(1);
    let t = TParam::new(vec![1, 0, 1]);
    let t2 = TParam::new(vec![0, 1, 1]);
    let mut g = GraphModule::new(cfg, t.clone());
    for (id, wt) in [("v0", 0), ("v1", 1), ("v2", 2), ("w0", 0)] {
        g.add_vertex(id, wt);
    }
    g.add_edge("v0", "v1", Letter::X, one(), one());
    g.add_edge("v1", "v2", Letter::One, t.eval_at(&cfg, 1), one());
    g.add_edge("v2", "w0", Letter::X, one(), one());
    let mut g2 = GraphModule::new(cfg, t2.clone());
    for (id, wt) in [("v1'", 1), ("v2'", 2), ("w0'", 0), ("w1'", 1)] {
        g2.add_vertex(id, wt);
    }
    g2.add_edge("v1'", "v2'", Letter::Y, one(), one());
    g2.add_edge("v2'", "w0'", Letter::X, one(), one());
    g2.add_edge("w0'", "w1'", Letter::One, t2.eval_at(&cfg, 0), one());
    let prod = graph_tensor(&g, &g2).expect("same orbit");
    (g, g2, prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{decompositions_isomorphic, IsoData};
    use crate::oracle::{oracle_iso_data, realize};
    use crate::orbit::parse_letters;
    use crate::tensor::tensor_decompositions;
    use rand::SeedableRng;

    #[test]
    fn path_graph_round_trip() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::new(vec![1, 0, 1]);
        let m = Module::Path(PathModule::new(cfg, t, 2, parse_letters("x1x").unwrap()).unwrap());
        let g = module_to_graph(&m).unwrap();
        graph_validate(&g).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(graph_to_module(&g).unwrap(), Decomposition::single(m.clone()));
        assert_eq!(graph_realize(&g).unwrap(), realize(&m));
    }

    #[test]
    fn breakless_cycle_gives_binomial() {
        let cfg = OrbitConfig::new(2, 4).unwrap();
        let t = TParam::new(vec![0, 1]);
        let m = Module::Cycle(
            CycleModule::with_eigenvalue(cfg, TParam::one(2), parse_letters("1111").unwrap(), cfg.scalar(-1)).unwrap(),
        );
        let g = module_to_graph(&m).unwrap();
        let d = graph_to_module(&g).unwrap();
        let i = CycloScalar::root_of_unity(1, 4);
        let mut expect = Decomposition::new();
        for xi in [i.clone(), -i] {
            expect.push(
                Module::Cycle(
                    CycleModule::with_eigenvalue(cfg, TParam::one(2), parse_letters("11").unwrap(), xi).unwrap(),
                ),
                1,
            );
        }
        assert_eq!(d, expect);
        assert!(graph_validate(&GraphModule::new(cfg, t)).is_ok());
    }

    #[test]
    fn validation_conditions() {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::new(vec![1, 0, 0]);
        let mut g = GraphModule::new(cfg, TParam::one(3));
        for (id, wt) in [("a", 0), ("b", 1), ("c", 2), ("d", 0)] {
            g.add_vertex(id, wt);
        }
        for (a, b) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            g.add_edge(a, b, Letter::One, cfg.scalar(1), cfg.scalar(1));
        }
        assert!(matches!(graph_validate(&g), Err(GwaError::GraphWeight(_))));
        let m = Module::Path(PathModule::new(cfg, t.clone(), 0, parse_letters("11").unwrap()).unwrap());
        let mut g = module_to_graph(&m).unwrap();
        graph_validate(&g).unwrap();
        g.edges[0].am = cfg.scalar(2);
        assert!(matches!(graph_validate(&g), Err(GwaError::GraphScalarProduct(_))));
        g.edges[0].am = cfg.scalar(0);
        assert!(matches!(graph_validate(&g), Err(GwaError::GraphScalarZero(_))));
        let mut g = module_to_graph(&m).unwrap();
        g.edges[1].label = Letter::X;
        assert!(matches!(graph_validate(&g), Err(GwaError::GraphLabel(_))));
        g.edges.pop();
        assert!(matches!(graph_validate(&g), Err(GwaError::GraphSink(_))));
    }

    #[test]
    fn figure_product_shape() {
        let (g, g2, prod) = figure_instance();
        graph_validate(&g).unwrap();
        assert!(matches!(graph_validate(&g2), Err(GwaError::GraphSource(_))));
        let ids: Vec<&str> = prod.vertices.iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["v0⊗w0'", "v1⊗v1'", "v1⊗w1'", "v2⊗v2'", "w0⊗w0'"]);
        let edges: Vec<(&str, &str, char)> = prod
            .edges
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str(), e.label.to_char()))
            .collect();
        assert_eq!(
            edges,
            [
                ("v0⊗w0'", "v1⊗w1'", 'x'),
                ("v1⊗v1'", "v2⊗v2'", 'y'),
                ("v2⊗v2'", "w0⊗w0'", 'x')
            ]
        );
    }

    #[test]
    fn product_graph_matches_tensor() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..40 {
            let cfg = OrbitConfig::new(2 + n % 3, 12).unwrap();
            let (g1, g2) = (random_graph(&mut rng, &cfg), random_graph(&mut rng, &cfg));
            graph_validate(&g1).unwrap();
            let prod = graph_tensor(&g1, &g2).unwrap();
            graph_validate(&prod).unwrap();
            let direct = graph_to_module(&prod).unwrap();
            let via = tensor_decompositions(&graph_to_module(&g1).unwrap(), &graph_to_module(&g2).unwrap()).unwrap();
            assert!(
                decompositions_isomorphic(&direct, &via).unwrap(),
                "{} vs {}",
                direct,
                via
            );
            let oracle = oracle_iso_data(&graph_realize(&prod).unwrap()).unwrap();
            assert!(IsoData::of(&direct).unwrap().isomorphic(&oracle));
        }
    }

    #[test]
    fn json_round_trip() {
        let (g, _, _) = figure_instance();
        let s = serde_json::to_string(&g).unwrap();
        let back: GraphModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(graph_to_dot(&g).contains("\"v0\" -> \"v1\" [label=\"x\"]"));
    }
}

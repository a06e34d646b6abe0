//! Deterministic drawings of modules, decompositions and weighted graphs.
//!
//! Weight `k` sits on the ray at angle `2 pi k / p`; each further lap around
//! the orbit moves one ring outwards. Letter `1` is drawn as a double arrow,
//! `x` as a forward arrow, `y` as a backward arrow and `0` as no edge.

use std::f64::consts::PI;
use std::fmt::Write;

use gwa_core::graphmod::GraphModule;
use gwa_core::modules::{dimension_vector, Decomposition, Module};
use gwa_core::orbit::Letter;

const RING_STEP: f64 = 0.4;
const GAP: f64 = 1.0;

struct Node {
    label: String,
    wt: u32,
    ring: usize,
}

struct Edge {
    from: usize,
    to: usize,
    letter: Letter,
    note: Option<String>,
}

/// One connected picture.
pub struct Figure {
    title: String,
    p: u32,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl Figure {
    fn radius(&self) -> f64 {
        let rings = self.nodes.iter().map(|n| n.ring).max().unwrap_or(0);
        1.0 + RING_STEP * rings as f64
    }

    fn position(&self, k: usize) -> (f64, f64) {
        let n = &self.nodes[k];
        let r = 1.0 + RING_STEP * n.ring as f64;
        let theta = 2.0 * PI * n.wt as f64 / self.p as f64;
        (r * theta.cos(), r * theta.sin())
    }
}

fn letter_char(l: Letter) -> char {
    match l {
        Letter::Zero => '0',
        Letter::One => '1',
        Letter::X => 'x',
        Letter::Y => 'y',
    }
}

fn wt(k: i64, p: u32) -> u32 {
    k.rem_euclid(p as i64) as u32
}

/// Figures for one indecomposable or cycle module; a cycle with a
/// `d`-dimensional monodromy gets `d` concentric copies.
pub fn module_figures(m: &Module) -> Vec<Figure> {
    match m {
        Module::Path(pm) => {
            let p = pm.cfg.p();
            let first = pm.i as i64 + 1;
            let nodes = (first..=pm.end())
                .map(|k| Node {
                    label: format!("e{}", k),
                    wt: wt(k, p),
                    ring: ((k - first) / p as i64) as usize,
                })
                .collect();
            let edges = (0..pm.len())
                .map(|s| Edge {
                    from: s,
                    to: s + 1,
                    letter: pm.w[s],
                    note: None,
                })
                .collect();
            vec![Figure {
                title: m.to_string(),
                p,
                nodes,
                edges,
            }]
        }
        Module::Cycle(c) => {
            let p = c.cfg.p();
            let n = c.w.len();
            let d = c.d();
            let mut nodes = Vec::new();
            let mut edges = Vec::new();
            let wrap_note = match c.f.blocks() {
                [(xi, 1)] => format!("F={}", xi.to_literal()),
                _ => format!("F={}", c.f),
            };
            for s in 0..d {
                let base = nodes.len();
                for k in 1..=n {
                    nodes.push(Node {
                        label: if d == 1 {
                            format!("e{}", k)
                        } else {
                            format!("e{}.{}", k, s + 1)
                        },
                        wt: wt(k as i64, p),
                        ring: s * c.r() + (k - 1) / p as usize,
                    });
                }
                for k in 0..n {
                    edges.push(Edge {
                        from: base + k,
                        to: base + (k + 1) % n,
                        letter: c.w[k],
                        note: (k + 1 == n).then(|| wrap_note.clone()),
                    });
                }
            }
            vec![Figure {
                title: m.to_string(),
                p,
                nodes,
                edges,
            }]
        }
    }
}

/// One figure per summand copy, in the canonical summand order.
pub fn decomposition_figures(d: &Decomposition) -> Vec<Figure> {
    d.iter()
        .flat_map(|(m, k)| (0..k).flat_map(move |_| module_figures(m)))
        .collect()
}

pub fn graph_figures(g: &GraphModule) -> Vec<Figure> {
    let mut seen = vec![0usize; g.cfg.p() as usize];
    let nodes: Vec<Node> = g
        .vertices
        .iter()
        .map(|v| {
            let ring = seen[v.wt as usize];
            seen[v.wt as usize] += 1;
            Node {
                label: v.id.clone(),
                wt: v.wt,
                ring,
            }
        })
        .collect();
    let index = |id: &str| g.vertices.iter().position(|v| v.id == id).expect("validated graph");
    let edges = g
        .edges
        .iter()
        .map(|e| Edge {
            from: index(&e.from),
            to: index(&e.to),
            letter: e.label,
            note: Some(format!("{}/{}", e.ap.to_literal(), e.am.to_literal())),
        })
        .collect();
    vec![Figure {
        title: format!("graph t=[{}]", g.t),
        p: g.cfg.p(),
        nodes,
        edges,
    }]
}

// ---------------------------------------------------------------------------
// Text

fn edge_text(f: &Figure, e: &Edge) -> String {
    let (a, b) = (&f.nodes[e.from].label, &f.nodes[e.to].label);
    let arrow = match e.letter {
        Letter::Zero => " -0- ",
        Letter::One => " <-1-> ",
        Letter::X => " -x-> ",
        Letter::Y => " <-y- ",
    };
    match &e.note {
        Some(n) => format!("{}{}{}  [{}]", a, arrow, b, n),
        None => format!("{}{}{}", a, arrow, b),
    }
}

fn figures_text(out: &mut String, figs: &[Figure]) {
    for f in figs {
        let _ = writeln!(out, "  {}", f.title);
        let verts: Vec<String> = f.nodes.iter().map(|n| format!("{}@{}", n.label, n.wt)).collect();
        let _ = writeln!(out, "    vertices: {}", verts.join(" "));
        for e in &f.edges {
            let _ = writeln!(out, "    {}", edge_text(f, e));
        }
    }
}

pub fn module_text(m: &Module) -> String {
    let mut out = format!("{}\ndimension vector: {:?}\n", m, dimension_vector(m));
    figures_text(&mut out, &module_figures(m));
    out
}

pub fn decomposition_text(d: &Decomposition) -> String {
    let mut out = format!("{}\n", d);
    for (m, k) in d.iter() {
        let _ = writeln!(out, "  x{}  {}  dims {:?}", k, m, dimension_vector(m));
    }
    out
}

pub fn graph_text(g: &GraphModule) -> String {
    let mut out = String::new();
    figures_text(&mut out, &graph_figures(g));
    out
}

// ---------------------------------------------------------------------------
// DOT

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Horizontal offsets of each figure's centre, with the gaps between them.
fn offsets(figs: &[Figure]) -> Vec<f64> {
    let mut x = 0.0;
    let mut out = Vec::new();
    for (j, f) in figs.iter().enumerate() {
        let r = f.radius();
        if j > 0 {
            x += GAP;
        }
        x += r;
        out.push(x);
        x += r;
    }
    out
}

pub fn to_dot(figs: &[Figure]) -> String {
    let mut out =
        String::from("digraph gwa {\n  layout=neato;\n  node [shape=point, width=0.08];\n  edge [arrowsize=0.6];\n");
    let xs = offsets(figs);
    for (j, f) in figs.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{} {{\n    label={};", j, quote(&f.title));
        for (k, n) in f.nodes.iter().enumerate() {
            let (x, y) = f.position(k);
            let _ = writeln!(
                out,
                "    {} [pos=\"{:.3},{:.3}!\", xlabel={}];",
                quote(&format!("f{}_{}", j, k)),
                x + xs[j],
                y,
                quote(&n.label)
            );
        }
        out.push_str("  }\n");
        if j > 0 {
            let mid = xs[j] - f.radius() - GAP / 2.0;
            let _ = writeln!(
                out,
                "  \"plus_{}\" [shape=plaintext, label=\"⊕\", pos=\"{:.3},0.000!\"];",
                j, mid
            );
        }
    }
    for (j, f) in figs.iter().enumerate() {
        for e in &f.edges {
            let dir = match e.letter {
                Letter::Zero => continue,
                Letter::One => "both",
                Letter::X => "forward",
                Letter::Y => "back",
            };
            let label = match &e.note {
                Some(n) => format!("{} {}", letter_char(e.letter), n),
                None => letter_char(e.letter).to_string(),
            };
            let _ = writeln!(
                out,
                "  {} -> {} [dir={}, label={}];",
                quote(&format!("f{}_{}", j, e.from)),
                quote(&format!("f{}_{}", j, e.to)),
                dir,
                quote(&label)
            );
        }
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// SVG

const SCALE: f64 = 60.0;
const DOT_R: f64 = 4.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_svg(figs: &[Figure]) -> String {
    let xs = offsets(figs);
    let total = figs.last().map(|f| xs[xs.len() - 1] + f.radius()).unwrap_or(0.0);
    let rmax = figs.iter().map(|f| f.radius()).fold(0.0, f64::max);
    let margin = 0.8;
    let width = (total + 2.0 * margin) * SCALE;
    let height = (2.0 * rmax + 2.0 * margin + 0.6) * SCALE;
    let cy = (rmax + margin) * SCALE;
    let px = |x: f64| (x + margin) * SCALE;
    let py = |y: f64| cy - y * SCALE;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1}\" height=\"{:.1}\" viewBox=\"0 0 {:.1} {:.1}\">",
        width, height, width, height
    );
    out.push_str(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if figs.is_empty() {
        let _ = writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">0</text>",
            width / 2.0,
            height / 2.0
        );
    }
    for (j, f) in figs.iter().enumerate() {
        let _ = writeln!(out, "  <g id=\"summand-{}\">", j);
        let pos: Vec<(f64, f64)> = (0..f.nodes.len())
            .map(|k| {
                let (x, y) = f.position(k);
                (px(x + xs[j]), py(y))
            })
            .collect();
        for e in &f.edges {
            let markers = match e.letter {
                Letter::Zero => continue,
                Letter::One => " marker-start=\"url(#arrow)\" marker-end=\"url(#arrow)\"",
                Letter::X => " marker-end=\"url(#arrow)\"",
                Letter::Y => " marker-start=\"url(#arrow)\"",
            };
            let (a, b) = (pos[e.from], pos[e.to]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let (ux, uy) = (dx / len * (DOT_R + 2.0), dy / len * (DOT_R + 2.0));
            let _ = writeln!(
                out,
                "    <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"{}/>",
                a.0 + ux,
                a.1 + uy,
                b.0 - ux,
                b.1 - uy,
                markers
            );
            let label = match &e.note {
                Some(n) => format!("{} {}", letter_char(e.letter), n),
                None => letter_char(e.letter).to_string(),
            };
            let _ = writeln!(
                out,
                "    <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" fill=\"gray\">{}</text>",
                (a.0 + b.0) / 2.0 + 3.0,
                (a.1 + b.1) / 2.0 - 3.0,
                escape(&label)
            );
        }
        for (k, n) in f.nodes.iter().enumerate() {
            let (x, y) = pos[k];
            let _ = writeln!(out, "    <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"{:.1}\"/>", x, y, DOT_R);
            let _ = writeln!(
                out,
                "    <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{}</text>",
                x + 6.0,
                y + 12.0,
                escape(&n.label)
            );
        }
        let _ = writeln!(
            out,
            "    <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            px(xs[j]),
            height - 0.3 * SCALE,
            escape(&f.title)
        );
        out.push_str("  </g>\n");
        if j > 0 {
            let _ = writeln!(
                out,
                "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"18\" text-anchor=\"middle\">⊕</text>",
                px(xs[j] - f.radius() - GAP / 2.0),
                cy + 6.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwa_core::modules::PathModule;
    use gwa_core::orbit::{parse_letters, OrbitConfig, TParam};
    use gwa_core::tensor::tensor;

    fn path_t(t: &str, i: u32, w: &str) -> Module {
        let cfg = OrbitConfig::with_p(3);
        let t = TParam::parse(t, 3).unwrap();
        Module::Path(PathModule::new(cfg, t, i, parse_letters(w).unwrap()).unwrap())
    }

    fn path(i: u32, w: &str) -> Module {
        path_t("0:1,2:1", i, w)
    }

    #[test]
    fn layout_follows_weights_and_laps() {
        let f = &module_figures(&path(2, "x1x"))[0];
        let labels: Vec<_> = f.nodes.iter().map(|n| (n.label.as_str(), n.wt, n.ring)).collect();
        assert_eq!(labels, vec![("e3", 0, 0), ("e4", 1, 0), ("e5", 2, 0), ("e6", 0, 1)]);
        let (x, y) = f.position(3);
        assert!((x - 1.4).abs() < 1e-12 && y.abs() < 1e-12);
    }

    #[test]
    fn empty_word_is_one_dot() {
        let figs = module_figures(&path(2, ""));
        assert_eq!(figs[0].nodes.len(), 1);
        assert!(figs[0].edges.is_empty());
        let dot = to_dot(&figs);
        assert_eq!(dot.matches("[pos=").count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn worked_product_has_five_subfigures() {
        let a = path(2, "x1x");
        let b = path_t("1:1,2:1", 2, "1yx10x1");
        let d = tensor(&a, &b).unwrap().decomposition;
        let mut counts: Vec<usize> = decomposition_figures(&d).iter().map(|f| f.nodes.len()).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2, 2, 2, 4]);
        let dot = to_dot(&decomposition_figures(&d));
        assert_eq!(dot, to_dot(&decomposition_figures(&d)));
        assert_eq!(dot.matches("⊕").count(), 4);
    }
}

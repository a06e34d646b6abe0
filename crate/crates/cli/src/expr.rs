//! Text inputs: module expressions, JSON values and the generator grammars
//! of the split rings.

use gwa_core::graphmod::{module_to_graph, GraphModule};
use gwa_core::modules::{Decomposition, Module};
use gwa_core::orbit::{OrbitConfig, TParam};
use gwa_core::scalars::{parse_scalar, CycloScalar};
use gwa_core::split::{
    class_to_quotient, Combination, QuotientElement, QuotientSplitMonomial, SemisimpleM0Element, SemisimpleSymbol,
    TrivialElement, TrivialSplitMonomial,
};
use gwa_core::{GwaError, Result};

fn parse_err<T>(offset: usize, msg: impl Into<String>) -> Result<T> {
    Err(GwaError::Parse {
        offset,
        msg: msg.into(),
    })
}

fn json_err(s: &str, e: serde_json::Error) -> GwaError {
    // serde_json reports 1-based line and column
    let offset = s
        .lines()
        .take(e.line().saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    GwaError::Parse {
        offset,
        msg: format!("invalid JSON: {}", e),
    }
}

/// Deserializes a JSON value. Any failure, including invalid module data,
/// is reported as a parse error at the offending offset.
pub fn from_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| json_err(s, e))
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            parse_err(self.pos, format!("expected {:?}", tok))
        }
    }

    /// Text up to (not including) the first of `stops`, trimmed.
    fn until(&mut self, stops: &[char]) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c| stops.contains(&c)).unwrap_or(self.rest().len());
        self.pos += len;
        (start, self.src[start..start + len].trim_end())
    }

    fn uint(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return parse_err(start, "expected a non-negative integer");
        }
        self.pos += len;
        let v = self.src[start..self.pos].parse().map_err(|_| GwaError::Parse {
            offset: start,
            msg: "integer too large".into(),
        })?;
        Ok((start, v))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat("-");
        let (_, v) = self.uint()?;
        Ok(if neg { -(v as i64) } else { v as i64 })
    }

    /// A double-quoted string; returns the offset of its first character.
    fn quoted(&mut self) -> Result<(usize, &'a str)> {
        self.expect("\"")?;
        let start = self.pos;
        let Some(len) = self.rest().find('"') else {
            return parse_err(start, "unterminated string");
        };
        self.pos += len + 1;
        Ok((start, &self.src[start..start + len]))
    }
}

fn shift_offset(e: GwaError, base: usize) -> GwaError {
    match e {
        GwaError::Parse { offset, msg } => GwaError::Parse {
            offset: offset + base,
            msg,
        },
        e => e,
    }
}

/// Parses `V[t=0:1,2:1; i=2; w="x1x"]` or `V[t=; w="111"@1; F=[["1",1]]]`.
/// Error offsets are relative to the start of `s`.
pub fn parse_module_expr(s: &str, cfg: &OrbitConfig) -> Result<Module> {
    let mut c = Cursor { src: s, pos: 0 };
    c.expect("V")?;
    c.expect("[")?;
    c.expect("t=")?;
    let (toff, tlit) = c.until(&[';', ']']);
    let t = TParam::parse(tlit, cfg.p()).map_err(|e| shift_offset(e, toff))?;
    c.expect(";")?;
    let mut i = None;
    if c.eat("i=") {
        i = Some(c.uint()?.1 as u32);
        c.expect(";")?;
    }
    c.expect("w=")?;
    let (woff, word) = c.quoted()?;
    gwa_core::orbit::parse_letters(word).map_err(|e| shift_offset(e, woff))?;
    let start = if c.eat("@") { Some(c.int()?) } else { None };
    let mut f = None;
    if i.is_none() {
        c.expect(";")?;
        c.expect("F=")?;
        c.skip_ws();
        let foff = c.pos;
        let text = c.rest();
        let mut de = serde_json::Deserializer::from_str(text).into_iter::<Vec<(String, usize)>>();
        let blocks = match de.next() {
            Some(Ok(b)) => b,
            Some(Err(e)) => return Err(shift_offset(json_err(text, e), foff)),
            None => return parse_err(foff, "expected eigen-data"),
        };
        c.pos += de.byte_offset();
        let mut parsed = Vec::new();
        for (lit, a) in blocks {
            let xi = parse_scalar(&lit, cfg.conductor()).map_err(|e| match e {
                GwaError::Parse { msg, .. } => GwaError::Parse {
                    offset: foff,
                    msg: format!("eigenvalue {:?}: {}", lit, msg),
                },
                e => e,
            })?;
            parsed.push((xi, a));
        }
        f = Some(parsed);
    }
    c.expect("]")?;
    c.skip_ws();
    if !c.rest().is_empty() {
        return parse_err(c.pos, "trailing input");
    }
    Module::from_parts(*cfg, t, i.is_some(), i, word, start, f)
}

/// A module given as an expression or as JSON.
pub fn parse_module(s: &str, cfg: &OrbitConfig) -> Result<Module> {
    let s = s.trim();
    if s.starts_with('{') {
        from_json(s)
    } else {
        parse_module_expr(s, cfg)
    }
}

/// Values accepted by `render` and `decompose`.
pub enum Renderable {
    Module(Module),
    Decomposition(Decomposition),
    Graph(GraphModule),
}

pub fn parse_renderable(s: &str, cfg: &OrbitConfig) -> Result<Renderable> {
    let t = s.trim();
    if t.starts_with('[') {
        return Ok(Renderable::Decomposition(from_json(t)?));
    }
    if t.starts_with('{') {
        let v: serde_json::Value = from_json(t)?;
        if v.get("vertices").is_some() {
            return Ok(Renderable::Graph(from_json(t)?));
        }
        if v.get("decomposition").is_some() {
            return Ok(Renderable::Decomposition(
                serde_json::from_value(v["decomposition"].clone()).map_err(|e| json_err(t, e))?,
            ));
        }
        return Ok(Renderable::Module(from_json(t)?));
    }
    Ok(Renderable::Module(parse_module_expr(t, cfg)?))
}

/// A graph given as JSON, or a module expression converted to its graph.
pub fn parse_graph(s: &str, cfg: &OrbitConfig) -> Result<GraphModule> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: serde_json::Value = from_json(t)?;
        if v.get("vertices").is_some() {
            return from_json(t);
        }
    }
    module_to_graph(&parse_module(t, cfg)?)
}

// ---------------------------------------------------------------------------
// Split-ring element grammar

/// A generator with its argument list, as written `name[a, b]`.
struct Factor<'a> {
    offset: usize,
    name: &'a str,
    args: Vec<(usize, &'a str)>,
}

/// Parses `element := term (('+'|'-') term)*`,
/// `term := [rational '*'] factor ('*' factor)*`, `factor := name '[' args ']' ['^' n]`.
fn parse_combination<K, G, M>(s: &str, unit: Combination<K>, mut gen: G, mut mul: M) -> Result<Combination<K>>
where
    K: Ord + Clone,
    G: FnMut(&Factor) -> Result<Combination<K>>,
    M: FnMut(&Combination<K>, &Combination<K>) -> Result<Combination<K>>,
{
    let mut c = Cursor { src: s, pos: 0 };
    let mut total = Combination::zero();
    let mut first = true;
    loop {
        c.skip_ws();
        let neg = if first {
            c.eat("-")
        } else if c.eat("+") {
            false
        } else if c.eat("-") {
            true
        } else {
            break;
        };
        first = false;
        c.skip_ws();
        let mut coeff = CycloScalar::one(1);
        if c.rest().starts_with(|ch: char| ch.is_ascii_digit()) {
            let (off, lit) = c.until(&['*', '+', '-']);
            coeff = parse_scalar(lit, 1).map_err(|e| shift_offset(e, off))?;
            if !c.eat("*") {
                c.skip_ws();
                if !c.rest().is_empty() && !c.rest().starts_with(['+', '-']) {
                    return parse_err(c.pos, "expected '*'");
                }
                let r = coeff.to_rational().expect("rational literal");
                total = total.add(&unit.scale(&if neg { -r } else { r }));
                continue;
            }
        }
        let mut term = unit.clone();
        loop {
            c.skip_ws();
            let offset = c.pos;
            let (_, name) = c.until(&['[']);
            if name.is_empty() || !name.chars().all(|ch| ch.is_ascii_alphabetic()) {
                return parse_err(offset, "expected a generator name");
            }
            c.expect("[")?;
            let (aoff, inner) = c.until(&[']']);
            c.expect("]")?;
            let mut args = Vec::new();
            let mut at = aoff;
            for part in inner.split(',') {
                let lead = part.len() - part.trim_start().len();
                args.push((at + lead, part.trim()));
                at += part.len() + 1;
            }
            let g = gen(&Factor { offset, name, args })?;
            let power = if c.eat("^") { c.uint()?.1 } else { 1 };
            for _ in 0..power {
                term = mul(&term, &g)?;
            }
            if !c.eat("*") {
                break;
            }
        }
        let r = coeff.to_rational().expect("rational literal");
        total = total.add(&term.scale(&if neg { -r } else { r }));
    }
    c.skip_ws();
    if first || !c.rest().is_empty() {
        return parse_err(c.pos, "expected a term");
    }
    Ok(total)
}

fn arg_scalar(f: &Factor, k: usize, cfg: &OrbitConfig) -> Result<CycloScalar> {
    let (off, lit) = f.args[k];
    parse_scalar(lit, cfg.conductor()).map_err(|e| shift_offset(e, off))
}

fn arg_uint(f: &Factor, k: usize) -> Result<u32> {
    let (off, lit) = f.args[k];
    lit.parse().map_err(|_| GwaError::Parse {
        offset: off,
        msg: format!("expected a positive integer, got {:?}", lit),
    })
}

fn arity(f: &Factor, allowed: &[usize]) -> Result<()> {
    if allowed.contains(&f.args.len()) {
        Ok(())
    } else {
        parse_err(f.offset, format!("{} takes {:?} arguments", f.name, allowed))
    }
}

fn unknown<T>(f: &Factor, known: &str) -> Result<T> {
    parse_err(
        f.offset,
        format!("unknown generator {:?}; expected one of {}", f.name, known),
    )
}

/// Elements of the ring spanned by the classes `u(xi, a)`.
pub fn parse_trivial(s: &str, cfg: &OrbitConfig) -> Result<TrivialElement> {
    let unit = TrivialElement::basis(TrivialSplitMonomial::new(cfg.scalar(1), 1)?);
    parse_combination(
        s,
        unit,
        |f| {
            if f.name != "u" {
                return unknown(f, "u[xi,a]");
            }
            arity(f, &[1, 2])?;
            let a = if f.args.len() == 2 { arg_uint(f, 1)? } else { 1 };
            Ok(TrivialElement::basis(TrivialSplitMonomial::new(
                arg_scalar(f, 0, cfg)?,
                a,
            )?))
        },
        |a, b| Ok(gwa_core::split::trivial_mul_elements(a, b)),
    )
}

/// Elements of the quotient ring: `u[xi]`, `u[xi,a]` and `yw[word]`.
pub fn parse_quotient(s: &str, cfg: &OrbitConfig) -> Result<QuotientElement> {
    let unit = QuotientElement::basis(QuotientSplitMonomial::unit(cfg));
    parse_combination(
        s,
        unit,
        |f| match f.name {
            "u" => {
                arity(f, &[1, 2])?;
                let xi = arg_scalar(f, 0, cfg)?;
                if f.args.len() == 1 {
                    return Ok(QuotientElement::basis(QuotientSplitMonomial::u(cfg, xi)));
                }
                let m = TrivialSplitMonomial::new(xi, arg_uint(f, 1)?)?.module(cfg)?;
                class_to_quotient(&m)
            }
            "yw" => {
                arity(f, &[1])?;
                let (off, w) = f.args[0];
                let letters = gwa_core::orbit::parse_letters(w).map_err(|e| shift_offset(e, off))?;
                Ok(QuotientElement::basis(QuotientSplitMonomial::y(cfg, &letters)?))
            }
            _ => unknown(f, "u[xi], u[xi,a], yw[word]"),
        },
        |a, b| gwa_core::split::quotient_mul_elements(cfg, a, b),
    )
}

/// Combinations of simple classes for `t = (z-1)^a`.
pub fn parse_semisimple(s: &str, cfg: &OrbitConfig) -> Result<SemisimpleM0Element> {
    let unit = SemisimpleM0Element::basis(SemisimpleSymbol::U(cfg.scalar(1)));
    parse_combination(
        s,
        unit,
        |f| {
            let sym = match f.name {
                "u" => {
                    arity(f, &[1])?;
                    SemisimpleSymbol::U(arg_scalar(f, 0, cfg)?)
                }
                "xa" => {
                    arity(f, &[1])?;
                    SemisimpleSymbol::X(arg_uint(f, 0)?)
                }
                "ya" => {
                    arity(f, &[2])?;
                    SemisimpleSymbol::Y(arg_uint(f, 0)?, arg_scalar(f, 1, cfg)?)
                }
                "ysa" => {
                    arity(f, &[2])?;
                    SemisimpleSymbol::Ys(arg_uint(f, 0)?, arg_scalar(f, 1, cfg)?)
                }
                _ => return unknown(f, "u[xi], xa[a], ya[a,xi], ysa[a,xi]"),
            };
            if matches!(
                sym,
                SemisimpleSymbol::X(0) | SemisimpleSymbol::Y(0, _) | SemisimpleSymbol::Ys(0, _)
            ) {
                return parse_err(f.offset, "the exponent a must be positive");
            }
            Ok(SemisimpleM0Element::basis(sym))
        },
        |a, b| Ok(gwa_core::split::semisimple_mul(a, b)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwa_core::modules::{CycleModule, PathModule};
    use gwa_core::orbit::parse_letters;
    use gwa_core::scalars::JordanType;

    #[test]
    fn path_expression() {
        let cfg = OrbitConfig::with_p(3);
        let m = parse_module("V[t=0:1,2:1; i=2; w=\"x1x\"]", &cfg).unwrap();
        let want = PathModule::new(
            cfg,
            TParam::parse("0:1,2:1", 3).unwrap(),
            2,
            parse_letters("x1x").unwrap(),
        );
        assert_eq!(m, Module::Path(want.unwrap()));
    }

    #[test]
    fn cycle_expression_is_the_unit() {
        let cfg = OrbitConfig::with_p(3);
        let m = parse_module("V[t=; w=\"111\"@1; F=[[\"1\",1]]]", &cfg).unwrap();
        let want = CycleModule::new(
            cfg,
            TParam::one(3),
            parse_letters("111").unwrap(),
            JordanType::trivial(3),
        );
        assert_eq!(m, Module::Cycle(want.unwrap()));
    }

    #[test]
    fn word_errors_point_at_the_letter() {
        assert!(matches!(parse_letters("x1z"), Err(GwaError::Parse { offset: 2, .. })));
        let cfg = OrbitConfig::with_p(3);
        let s = "V[t=0:1; i=2; w=\"x1z\"]";
        let Err(GwaError::Parse { offset, .. }) = parse_module(s, &cfg) else {
            panic!()
        };
        assert_eq!(&s[offset..offset + 1], "z");
    }

    #[test]
    fn json_and_expression_agree() {
        let cfg = OrbitConfig::new(2, 4).unwrap();
        let m = parse_module("V[t=0:1; w=\"x1\"@2; F=[[\"z\",2]]]", &cfg).unwrap();
        let Module::Cycle(c) = &m else { panic!() };
        assert_eq!(gwa_core::orbit::letters_to_string(&c.w), "1x");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(parse_module(&json, &cfg).unwrap(), m);
    }

    #[test]
    fn split_grammars() {
        let cfg = OrbitConfig::new(2, 4).unwrap();
        let e = parse_trivial("u[1,2]*u[1,2] - u[1,1]", &cfg).unwrap();
        assert_eq!(
            e,
            TrivialElement::basis(TrivialSplitMonomial::new(cfg.scalar(1), 3).unwrap())
        );
        let q = parse_quotient("yw[1x]^2*u[z]", &cfg).unwrap();
        assert_eq!(q.terms().count(), 1);
        assert!(parse_quotient("yw[1x]*yw[1y]", &cfg).unwrap().is_zero());
        let s = parse_semisimple("ya[1,1]*ysa[2,z]", &cfg).unwrap();
        assert_eq!(s, SemisimpleM0Element::basis(SemisimpleSymbol::X(3)));
        assert!(matches!(parse_semisimple("ya[1]", &cfg), Err(GwaError::Parse { .. })));
    }
}

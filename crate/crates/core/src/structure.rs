//! Structure description files: a strict JSON subset with exact rational
//! literals.
//!
//! ```json
//! {
//!   "name": "example1",
//!   "generators": [{"id": "1", "degree": 0}, {"id": "x", "degree": 2}],
//!   "differential": [],
//!   "cooperations": [
//!     {"arity": 3, "source": "w", "terms": [{"coeff": "1", "word": ["x", "y", "z"]}]}
//!   ],
//!   "flags": {"connected": true, "expected_primitive": true}
//! }
//! ```
//!
//! Arity-two entries list the reduced coproduct; the counit terms
//! `1 ⊗ c + c ⊗ 1` are implied and may be written out explicitly.

use std::collections::BTreeSet;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ainf::{AInfCoalgebra, Cooperations};
use crate::error::{Error, Result};
use crate::graded::{Generator, GradedSpace, TensorElement, Word, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: Vec<MapEntry>,
    #[serde(default)]
    pub cooperations: Vec<CooperationEntry>,
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub id: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub source: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CooperationEntry {
    pub arity: usize,
    pub source: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Coeff,
    pub word: Vec<String>,
}

/// An exact rational literal: an integer or a string `"p"` / `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn value(&self) -> Result<Q> {
        match self {
            Coeff::Int(n) => Ok(Q::from_integer((*n).into())),
            Coeff::Text(s) => s
                .trim()
                .parse::<Q>()
                .map_err(|_| Error::Structure(format!("`{}` is not a rational literal", s))),
        }
    }

    pub fn from_q(c: &Q) -> Self {
        Coeff::Text(c.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default = "yes")]
    pub connected: bool,
    #[serde(default)]
    pub expected_primitive: bool,
}

fn yes() -> bool {
    true
}

impl Default for Flags {
    fn default() -> Self {
        Flags { connected: true, expected_primitive: false }
    }
}

/// A parsed structure together with its flags.
#[derive(Clone, Debug)]
pub struct Structure {
    pub coalgebra: AInfCoalgebra,
    pub flags: Flags,
}

/// 1-based line of the `nth` occurrence of `needle` after `anchor`, if any.
fn locate(text: &str, anchor: &str, needle: &str, nth: usize) -> Option<usize> {
    let start = text.find(anchor).unwrap_or(0);
    let mut from = start;
    let mut found = None;
    for _ in 0..=nth {
        let i = text[from..].find(needle)? + from;
        found = Some(i);
        from = i + needle.len();
    }
    found.map(|i| text[..i].matches('\n').count() + 1)
}

fn at_line(line: Option<usize>, msg: String) -> Error {
    match line {
        Some(l) => Error::Structure(format!("line {}: {}", l, msg)),
        None => Error::Structure(msg),
    }
}

pub fn parse_str(text: &str) -> Result<Structure> {
    let file: StructureFile = serde_json::from_str(text)
        .map_err(|e| Error::Syntax { line: e.line(), column: e.column(), msg: e.to_string() })?;
    build(&file, text)
}

pub fn parse_path(path: &Path) -> Result<Structure> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text)
}

/// Builds the structure; `text` is only used to locate diagnostics.
pub fn build(file: &StructureFile, text: &str) -> Result<Structure> {
    let mut gens = Vec::new();
    let mut seen = BTreeSet::new();
    for g in &file.generators {
        let line = locate(text, "\"generators\"", &format!("\"{}\"", g.id), 0);
        if !seen.insert(g.id.clone()) {
            let line = locate(text, "\"generators\"", &format!("\"{}\"", g.id), 1);
            return Err(at_line(line, format!("duplicate generator id `{}`", g.id)));
        }
        if g.id == "1" {
            if g.degree != 0 {
                return Err(at_line(line, "the unit `1` must have degree 0".into()));
            }
            if !file.flags.connected {
                return Err(at_line(line, "the unit `1` is only meaningful for a connected space".into()));
            }
            continue;
        }
        if g.degree < 0 {
            return Err(at_line(line, format!("generator `{}` has negative degree {}", g.id, g.degree)));
        }
        if file.flags.connected && g.degree == 0 {
            return Err(at_line(
                line,
                format!("generator `{}` has degree 0; a connected space has only the unit there", g.id),
            ));
        }
        gens.push(Generator { id: g.id.clone(), degree: g.degree });
    }
    let space = GradedSpace::new(gens, file.flags.connected)?;
    let mut a = AInfCoalgebra::new(file.name.clone(), space.clone());

    let word_of = |ids: &[String], line: Option<usize>| -> Result<Vec<Word>> {
        ids.iter()
            .map(|id| {
                if id == "1" {
                    Ok(Word::unit())
                } else {
                    space.gen_by_id(id).ok_or_else(|| at_line(line, format!("unknown generator `{}`", id)))
                }
            })
            .collect()
    };

    let mut occurrence = std::collections::BTreeMap::<String, usize>::new();
    let mut next_line = |section: &str, source: &str| {
        let key = format!("{}:{}", section, source);
        let n = occurrence.entry(key).or_insert(0);
        let l = locate(text, &format!("\"{}\"", section), &format!("\"{}\"", source), *n);
        *n += 1;
        l
    };

    for entry in &file.differential {
        let line = next_line("differential", &entry.source);
        let src = space
            .index_of(&entry.source)
            .ok_or_else(|| at_line(line, format!("unknown generator `{}`", entry.source)))?;
        let mut img = a.differential_of(src);
        for t in &entry.terms {
            let w = word_of(&t.word, line)?;
            if w.len() != 1 {
                return Err(at_line(line, "differential terms are single generators".into()));
            }
            img.add_term(w, t.coeff.value().map_err(|e| at_line(line, e.to_string()))?);
        }
        a.set_differential(src, img).map_err(|e| at_line(line, e.to_string()))?;
    }

    for entry in &file.cooperations {
        let line = next_line("cooperations", &entry.source);
        let src = space
            .index_of(&entry.source)
            .ok_or_else(|| at_line(line, format!("unknown generator `{}`", entry.source)))?;
        if entry.arity < 2 {
            return Err(at_line(line, format!("cooperation arity {} < 2", entry.arity)));
        }
        let gen = space.gen(src);
        let mut img = a.reduced_cooperation(entry.arity, src);
        for t in &entry.terms {
            if t.word.len() != entry.arity {
                return Err(at_line(
                    line,
                    format!("term of Δ_{} has {} factors", entry.arity, t.word.len()),
                ));
            }
            let w = word_of(&t.word, line)?;
            let c = t.coeff.value().map_err(|e| at_line(line, e.to_string()))?;
            if w.iter().any(Word::is_unit) {
                let counit = entry.arity == 2
                    && c.is_one()
                    && ((w[0].is_unit() && w[1] == gen) || (w[1].is_unit() && w[0] == gen));
                if !counit {
                    return Err(at_line(
                        line,
                        "a unit factor may only appear in the counit terms 1 ⊗ c and c ⊗ 1".into(),
                    ));
                }
                continue;
            }
            img.add_term(w, c);
        }
        a.set_cooperation(entry.arity, src, img).map_err(|e| at_line(line, e.to_string()))?;
    }
    Ok(Structure { coalgebra: a, flags: file.flags.clone() })
}

/// The file form of a structure (unit listed first; counit terms implied).
pub fn to_file(s: &Structure) -> StructureFile {
    let a = &s.coalgebra;
    let space = a.space();
    let mut generators = Vec::new();
    if space.connected() {
        generators.push(GeneratorEntry { id: "1".into(), degree: 0 });
    }
    generators.extend(space.generators().iter().map(|g| GeneratorEntry { id: g.id.clone(), degree: g.degree }));
    let ids = |w: &[Word]| -> Vec<String> {
        w.iter().map(|f| if f.is_unit() { "1".to_string() } else { space.render_word(f) }).collect()
    };
    let terms = |x: &TensorElement<Word>| -> Vec<Term> {
        x.terms().filter(|(_, c)| !c.is_zero()).map(|(w, c)| Term { coeff: Coeff::from_q(c), word: ids(w) }).collect()
    };
    let mut differential = Vec::new();
    let mut cooperations = Vec::new();
    for (i, g) in space.generators().iter().enumerate() {
        let d = a.differential_of(i);
        if !d.is_zero() {
            differential.push(MapEntry { source: g.id.clone(), terms: terms(&d) });
        }
    }
    for r in 2..=a.max_arity() {
        for (i, g) in space.generators().iter().enumerate() {
            let c = a.reduced_cooperation(r, i);
            if !c.is_zero() {
                cooperations.push(CooperationEntry { arity: r, source: g.id.clone(), terms: terms(&c) });
            }
        }
    }
    StructureFile { name: a.name.clone(), generators, differential, cooperations, flags: s.flags.clone() }
}

pub fn to_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&to_file(s)).expect("plain data serializes")
}

/// A word from generator ids separated by `.`, commas or whitespace.
pub fn parse_word(space: &GradedSpace, text: &str) -> Result<Word> {
    let mut w = Word::unit();
    for id in text.split(|c: char| c == '.' || c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let g = space.gen_by_id(id).ok_or_else(|| Error::Structure(format!("unknown generator `{}`", id)))?;
        w = w.concat(&g);
    }
    if w.is_unit() {
        return Err(Error::Structure("empty word".into()));
    }
    Ok(w)
}

pub const EXAMPLE1: &str = r#"{
  "name": "example1",
  "generators": [
    {"id": "1", "degree": 0},
    {"id": "x", "degree": 2},
    {"id": "y", "degree": 2},
    {"id": "z", "degree": 2},
    {"id": "w", "degree": 5}
  ],
  "differential": [],
  "cooperations": [
    {"arity": 3, "source": "w", "terms": [{"coeff": "1", "word": ["x", "y", "z"]}]}
  ],
  "flags": {"connected": true, "expected_primitive": true}
}
"#;

pub const EXAMPLE2: &str = r#"{
  "name": "example2",
  "generators": [
    {"id": "1", "degree": 0},
    {"id": "x", "degree": 2},
    {"id": "y", "degree": 2},
    {"id": "z", "degree": 2},
    {"id": "w", "degree": 5}
  ],
  "differential": [],
  "cooperations": [],
  "flags": {"connected": true, "expected_primitive": true}
}
"#;

pub fn builtin_names() -> &'static [&'static str] {
    &["example1", "example2"]
}

pub fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "example1" => Some(EXAMPLE1),
        "example2" => Some(EXAMPLE2),
        _ => None,
    }
}

pub fn builtin(name: &str) -> Result<Structure> {
    let text = builtin_text(name).ok_or_else(|| {
        Error::Structure(format!("unknown built-in `{}` (known: {})", name, builtin_names().join(", ")))
    })?;
    parse_str(text)
}

pub fn example1() -> AInfCoalgebra {
    builtin("example1").expect("built-in parses").coalgebra
}

pub fn example2() -> AInfCoalgebra {
    builtin("example2").expect("built-in parses").coalgebra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        let a = example1();
        let degs: Vec<i64> = a.space().generators().iter().map(|g| g.degree).collect();
        assert_eq!(degs, vec![2, 2, 2, 5]);
        assert_eq!(a.max_arity(), 3);
        assert_eq!(example2().max_arity(), 2);
    }

    #[test]
    fn degree_violation_has_a_line() {
        let bad = EXAMPLE1.replace(r#"["x", "y", "z"]"#, r#"["x", "y", "1"]"#);
        assert!(parse_str(&bad).is_err());
        let bad = EXAMPLE1.replace(r#"{"id": "w", "degree": 5}"#, r#"{"id": "w", "degree": 6}"#);
        let err = parse_str(&bad).unwrap_err().to_string();
        assert!(err.contains("line 12"), "{}", err);
        assert!(err.contains("degree"), "{}", err);
    }

    #[test]
    fn duplicates_and_unknown_fields() {
        let dup = EXAMPLE1.replace(r#"{"id": "y", "degree": 2}"#, r#"{"id": "x", "degree": 2}"#);
        let err = parse_str(&dup).unwrap_err().to_string();
        assert!(err.contains("duplicate") && err.contains("line 6"), "{}", err);
        let unk = EXAMPLE1.replace(r#""differential": [],"#, r#""differential": [], "extra": 1,"#);
        assert!(matches!(parse_str(&unk), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(Coeff::Text("-3/6".into()).value().unwrap(), crate::graded::q_frac(-1, 2));
        assert_eq!(Coeff::Int(4).value().unwrap(), crate::graded::q(4));
        assert!(Coeff::Text("x".into()).value().is_err());
    }

    #[test]
    fn words_parse() {
        let a = example1();
        let w = parse_word(a.space(), "x.w, y").unwrap();
        assert_eq!(a.space().render_word(&w), "x.w.y");
        assert!(parse_word(a.space(), " ").is_err());
        assert!(parse_word(a.space(), "x.q").is_err());
    }

    #[test]
    fn round_trip() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            let again = parse_str(&to_json(&s)).unwrap();
            assert_eq!(to_file(&s), to_file(&again));
        }
    }
}

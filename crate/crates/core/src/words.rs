//! Words in the named generators.
//!
//! Grammar: whitespace-separated tokens, each optionally followed by `'` or
//! `^-1` for the inverse. Words compose as functions: the rightmost letter
//! is applied first.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcg::MappingClass;
use crate::model::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    A(usize),
    B0,
    C,
    E,
    U(usize),
    Y(usize),
    D(usize),
    Sgm,
    Rot,
    Tau1,
    Tau2,
    Tau3,
}

impl Token {
    /// Parses a bare token name; indexed tokens must lie in 1..=genus.
    pub fn parse(name: &str, genus: usize) -> Option<Token> {
        let fixed = match name {
            "B0" => Some(Token::B0),
            "C" => Some(Token::C),
            "E" => Some(Token::E),
            "SGM" => Some(Token::Sgm),
            "ROT" => Some(Token::Rot),
            "TAU1" => Some(Token::Tau1),
            "TAU2" => Some(Token::Tau2),
            "TAU3" => Some(Token::Tau3),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        let (head, idx) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        if idx.starts_with('0') {
            return None;
        }
        let i: usize = idx.parse().ok()?;
        if i == 0 || i > genus {
            return None;
        }
        match head {
            "A" => Some(Token::A(i)),
            "U" => Some(Token::U(i)),
            "Y" => Some(Token::Y(i)),
            "D" => Some(Token::D(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::A(i) => write!(f, "A{i}"),
            Token::U(i) => write!(f, "U{i}"),
            Token::Y(i) => write!(f, "Y{i}"),
            Token::D(i) => write!(f, "D{i}"),
            Token::B0 => f.write_str("B0"),
            Token::C => f.write_str("C"),
            Token::E => f.write_str("E"),
            Token::Sgm => f.write_str("SGM"),
            Token::Rot => f.write_str("ROT"),
            Token::Tau1 => f.write_str("TAU1"),
            Token::Tau2 => f.write_str("TAU2"),
            Token::Tau3 => f.write_str("TAU3"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub letters: Vec<(Token, i8)>,
}

impl GeneratorWord {
    pub fn identity() -> Self {
        GeneratorWord::default()
    }

    pub fn letter(t: Token, exp: i8) -> Self {
        GeneratorWord { letters: vec![(t, exp)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word `self other`, which applies `other` first.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GeneratorWord { letters }
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord { letters: self.letters.iter().rev().map(|&(t, e)| (t, -e)).collect() }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_word(self))
    }
}

pub fn parse_word(text: &str, genus: usize) -> Result<GeneratorWord> {
    let mut letters = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            end = i + c.len_utf8();
            chars.next();
        }
        let raw = &text[start..end];
        let (name, exp) = split_exponent(raw, start)?;
        if name == "ID" {
            continue;
        }
        let token = Token::parse(name, genus)
            .ok_or_else(|| Error::UnknownToken { token: name.to_string(), position: start })?;
        letters.push((token, exp));
    }
    Ok(GeneratorWord { letters })
}

fn split_exponent(raw: &str, position: usize) -> Result<(&str, i8)> {
    let malformed = || Error::MalformedExponent { token: raw.to_string(), position };
    if let Some((name, exp)) = raw.split_once('^') {
        return match exp {
            "-1" => Ok((name, -1)),
            "1" => Ok((name, 1)),
            _ => Err(malformed()),
        };
    }
    if let Some(name) = raw.strip_suffix('\'') {
        if name.contains('\'') {
            return Err(malformed());
        }
        return Ok((name, -1));
    }
    if raw.contains('\'') {
        return Err(malformed());
    }
    Ok((raw, 1))
}

pub fn print_word(w: &GeneratorWord) -> String {
    if w.letters.is_empty() {
        return "ID".to_string();
    }
    let parts: Vec<String> =
        w.letters.iter().map(|(t, e)| if *e < 0 { format!("{t}'") } else { t.to_string() }).collect();
    parts.join(" ")
}

pub fn free_reduce(w: &GeneratorWord) -> GeneratorWord {
    let mut out: Vec<(Token, i8)> = Vec::with_capacity(w.letters.len());
    for &(t, e) in &w.letters {
        match out.last() {
            Some(&(t2, e2)) if t2 == t && e2 == -e => {
                out.pop();
            }
            _ => out.push((t, e)),
        }
    }
    GeneratorWord { letters: out }
}

/// Evaluates words for one model, caching generator matrices.
pub struct Evaluator<'m> {
    model: &'m Model,
    cache: HashMap<Token, MappingClass>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m Model) -> Self {
        Evaluator { model, cache: HashMap::new() }
    }

    pub fn model(&self) -> &Model {
        self.model
    }

    pub fn generator(&mut self, t: Token) -> Result<MappingClass> {
        if let Some(m) = self.cache.get(&t) {
            return Ok(m.clone());
        }
        let m = self.build(t)?;
        self.cache.insert(t, m.clone());
        Ok(m)
    }

    fn build(&self, t: Token) -> Result<MappingClass> {
        let model = self.model;
        let twist = |name: &str| MappingClass::dehn_twist(&model.standard_curve(name)?, 1);
        let rigid = |name: &str| MappingClass::from_rigid(model, &model.standard_symmetry(name)?);
        match t {
            Token::A(i) => twist(&format!("a_{i}")),
            Token::D(i) => twist(&format!("delta_{i}")),
            Token::B0 => twist("b0"),
            Token::C => twist("c"),
            Token::E => twist("e"),
            Token::U(i) => MappingClass::crosscap_transposition(model, i),
            Token::Y(i) => MappingClass::crosscap_slide(model, i),
            Token::Sgm => rigid("sigma"),
            Token::Rot => rigid("t"),
            Token::Tau1 => rigid("tau1"),
            Token::Tau2 => rigid("tau2"),
            Token::Tau3 => rigid("tau3"),
        }
    }

    pub fn evaluate(&mut self, w: &GeneratorWord) -> Result<MappingClass> {
        let mut acc = MappingClass::identity(self.model.genus());
        for &(t, e) in &w.letters {
            let m = self.generator(t)?;
            acc = acc.compose(&if e < 0 { m.inverse() } else { m });
        }
        Ok(acc)
    }

    pub fn evaluate_str(&mut self, text: &str) -> Result<MappingClass> {
        let w = parse_word(text, self.model.genus())?;
        self.evaluate(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let w = parse_word("TAU1 B0", 5).unwrap();
        assert_eq!(w.letters, vec![(Token::Tau1, 1), (Token::B0, 1)]);
        assert_eq!(free_reduce(&parse_word("A1 A1'", 5).unwrap()), GeneratorWord::identity());
        assert_eq!(print_word(&free_reduce(&parse_word("A1 B0 B0' A1'", 5).unwrap())), "ID");
        assert_eq!(parse_word("A2^-1 Y5", 5).unwrap().letters, vec![(Token::A(2), -1), (Token::Y(5), 1)]);
        assert_eq!(parse_word("ID", 5).unwrap(), GeneratorWord::identity());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(parse_word("A1 A9", 5), Err(Error::UnknownToken { token: "A9".into(), position: 3 }));
        assert_eq!(parse_word("B0^2", 5), Err(Error::MalformedExponent { token: "B0^2".into(), position: 0 }));
        assert!(matches!(parse_word("  A1''", 5), Err(Error::MalformedExponent { position: 2, .. })));
        assert!(matches!(parse_word("A01", 5), Err(Error::UnknownToken { .. })));
        assert!(matches!(parse_word("Q1", 5), Err(Error::UnknownToken { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let m = Model::new(5).unwrap();
        let mut ev = Evaluator::new(&m);
        assert!(ev.evaluate_str(&["SGM"; 10].join(" ")).unwrap().is_identity());
        assert_eq!(ev.evaluate_str("A1 U1").unwrap(), ev.evaluate_str("Y1").unwrap());
        assert!(ev.evaluate_str("ID").unwrap().is_identity());
        assert_eq!(ev.evaluate_str("TAU3").unwrap(), ev.evaluate_str("SGM SGM SGM SGM SGM").unwrap());
    }

    fn token_strategy(g: usize) -> impl Strategy<Value = (Token, i8)> {
        let i = 1..=g;
        let tok = prop_oneof![
            i.clone().prop_map(Token::A),
            i.clone().prop_map(Token::U),
            i.clone().prop_map(Token::Y),
            i.prop_map(Token::D),
            Just(Token::B0),
            Just(Token::C),
            Just(Token::E),
            Just(Token::Sgm),
            Just(Token::Rot),
            Just(Token::Tau1),
            Just(Token::Tau2),
            Just(Token::Tau3),
        ];
        (tok, prop::bool::ANY.prop_map(|b| if b { 1 } else { -1 }))
    }

    fn word_strategy(g: usize) -> impl Strategy<Value = GeneratorWord> {
        prop::collection::vec(token_strategy(g), 0..12).prop_map(|letters| GeneratorWord { letters })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(w in word_strategy(7)) {
            let r = free_reduce(&w);
            prop_assert_eq!(parse_word(&print_word(&r), 7).unwrap(), r.clone());
            prop_assert_eq!(free_reduce(&r), r);
        }

        #[test]
        fn reduction_preserves_value(w in word_strategy(5)) {
            let m = Model::new(5).unwrap();
            let mut ev = Evaluator::new(&m);
            prop_assert_eq!(ev.evaluate(&free_reduce(&w)).unwrap(), ev.evaluate(&w).unwrap());
            prop_assert!(ev.evaluate(&w.concat(&w.inverse())).unwrap().is_identity());
        }
    }
}

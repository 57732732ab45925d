use std::collections::HashSet;
use std::fmt;

use super::{FpError, Word};

/// A finitely presented group: named generators and freely reduced,
/// non-empty relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are freely reduced; those that reduce to the empty word are
    /// dropped.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(FpError::Syntax {
                    position: 0,
                    message: format!("'{name}' is not a valid generator name"),
                });
            }
            if !seen.insert(name.as_str()) {
                return Err(FpError::DuplicateGenerator(name.clone()));
            }
        }
        let n = names.len() as i32;
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(&bad) = r.letters().iter().find(|l| l.abs() > n) {
                return Err(FpError::UnknownGenerator(format!("#{}", bad.abs())));
            }
            let r = Word::new(r.letters().iter().copied());
            if !r.is_empty() {
                kept.push(r);
            }
        }
        Ok(Presentation {
            names,
            relators: kept,
        })
    }

    pub fn free(names: &[&str]) -> Self {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
            .expect("valid free-group names")
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses a word such as `x^2*(x*y^-1)^3` over this presentation's
    /// generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        let mut p = Parser::new(text, &self.names);
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(Word::empty());
        }
        let w = p.expr(false)?;
        p.skip_ws();
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(w)
    }

    /// Parses a comma-separated list of words.
    pub fn parse_words(&self, text: &str) -> Result<Vec<Word>, FpError> {
        let mut p = Parser::new(text, &self.names);
        let mut out = Vec::new();
        loop {
            p.skip_ws();
            if p.peek().is_none() {
                break;
            }
            out.push(p.expr(false)?);
            p.skip_ws();
            match p.peek() {
                Some(',') => p.bump(),
                None => break,
                Some(_) => return Err(p.error("expected ',' between words")),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(" "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| r.format(&self.names)).collect();
        if !rels.is_empty() {
            write!(f, " {}", rels.join(", "))?;
        }
        write!(f, " >")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `< names | relators >`.
///
/// At the top level relators are separated by whitespace or commas, and
/// factors inside one relator are joined by `*` or written without a gap.
/// Inside parentheses and brackets whitespace is insignificant. `^n`,
/// `^-n` and a leading `-` give powers and inverses; `[a,b]` is the
/// commutator `a⁻¹b⁻¹ab`.
pub fn parse_presentation(text: &str) -> Result<Presentation, FpError> {
    let mut p = Parser::new(text, &[]);
    p.skip_ws();
    p.expect('<')?;
    let mut names = Vec::new();
    loop {
        p.skip_ws();
        match p.peek() {
            Some('|') => {
                p.bump();
                break;
            }
            Some(',') => p.bump(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = p.identifier();
                if names.contains(&name) {
                    return Err(FpError::DuplicateGenerator(name));
                }
                names.push(name);
            }
            Some('>') => break,
            _ => return Err(p.error("expected a generator name or '|'")),
        }
    }
    p.names = names.clone();
    let mut relators = Vec::new();
    loop {
        p.skip_ws();
        match p.peek() {
            Some('>') => {
                p.bump();
                break;
            }
            Some(',') => p.bump(),
            None => return Err(p.error("expected '>'")),
            Some(_) => relators.push(p.expr(true)?),
        }
    }
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected input after '>'"));
    }
    Presentation::new(names, relators)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    names: Vec<String>,
}

impl Parser {
    fn new(src: &str, names: &[String]) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            names: names.to_vec(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn error(&self, message: &str) -> FpError {
        FpError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FpError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[' || c == '-')
    }

    fn expr(&mut self, top_level: bool) -> Result<Word, FpError> {
        if !top_level {
            self.skip_ws();
        }
        let mut w = self.factor()?;
        loop {
            let save = self.pos;
            let had_ws = self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                w = w.concat(&self.factor()?);
                continue;
            }
            if had_ws && top_level {
                self.pos = save;
                break;
            }
            if self.starts_factor() {
                w = w.concat(&self.factor()?);
                continue;
            }
            self.pos = save;
            break;
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, FpError> {
        let mut w = self.atom()?;
        while self.peek() == Some('^') {
            self.bump();
            let pos = self.pos;
            let negative = if self.peek() == Some('-') {
                self.bump();
                true
            } else {
                false
            };
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: i64 = digits.parse().map_err(|_| FpError::Syntax {
                position: start,
                message: "exponent out of range".into(),
            })?;
            if e == 0 {
                return Err(FpError::ZeroPower { position: pos });
            }
            w = w.pow(if negative { -e } else { e });
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, FpError> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.atom()?.inverse())
            }
            Some('(') => {
                self.bump();
                let w = self.expr(false)?;
                self.skip_ws();
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let a = self.expr(false)?;
                self.skip_ws();
                self.expect(',')?;
                let b = self.expr(false)?;
                self.skip_ws();
                self.expect(']')?;
                Ok(a.inverse().concat(&b.inverse()).concat(&a).concat(&b))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.identifier();
                match self.names.iter().position(|n| *n == name) {
                    Some(k) => Ok(Word::generator(k)),
                    None => Err(FpError::UnknownGenerator(name)),
                }
            }
            _ => Err(self.error("expected a generator, '(', '[' or '-'")),
        }
    }
}

use serde::{Deserialize, Serialize};

use super::{AdmissibleGraph, Target};
use crate::error::{Error, Result};

/// JSON shape of a graph; targets as strings like `"B1"`, `"V2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    pub n: usize,
    pub legs: Vec<[String; 2]>,
}

impl From<&AdmissibleGraph> for GraphJson {
    fn from(g: &AdmissibleGraph) -> Self {
        GraphJson {
            m: g.m(),
            n: g.n(),
            legs: g.legs().iter().map(|p| p.map(|t| t.to_string())).collect(),
        }
    }
}

impl TryFrom<GraphJson> for AdmissibleGraph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        if json.legs.len() != json.n {
            return Err(Error::InvalidGraph(format!(
                "n={} but {} leg pairs given",
                json.n,
                json.legs.len()
            )));
        }
        let mut legs = Vec::with_capacity(json.n);
        for [a, c] in &json.legs {
            let parse = |s: &str| {
                let mut p = Parser::new(s);
                let t = p.target()?;
                p.end()?;
                Ok::<_, Error>(t)
            };
            legs.push([parse(a)?, parse(c)?]);
        }
        AdmissibleGraph::new(json.m, legs)
    }
}

/// Parses `m=<int>;n=<int>;v1:<T>,<T>;...`. Whitespace is ignored.
pub fn parse_graph(text: &str) -> Result<AdmissibleGraph> {
    let mut p = Parser::new(text);
    p.literal("m=")?;
    let m = p.number()?;
    p.literal(";n=")?;
    let n = p.number()?;
    let mut legs = Vec::with_capacity(n);
    for k in 1..=n {
        p.literal(";")?;
        p.letter('v')?;
        let at = p.position();
        let idx = p.number()?;
        if idx != k {
            return Err(Error::Syntax {
                position: at,
                message: format!("expected vertex v{k}, found v{idx}"),
            });
        }
        p.literal(":")?;
        let a = p.target()?;
        p.literal(",")?;
        let c = p.target()?;
        legs.push([a, c]);
    }
    p.end()?;
    AdmissibleGraph::new(m, legs)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser { chars, pos: 0, len: text.len() }
    }

    fn position(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.position(), message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn literal(&mut self, s: &str) -> Result<()> {
        for want in s.chars() {
            if self.peek() != Some(want) {
                return Err(self.error(format!("expected {s:?}")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn letter(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c.eq_ignore_ascii_case(&want) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {want:?}"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().map_err(|_| Error::Syntax {
            position: self.chars[start].0,
            message: "number too large".into(),
        })
    }

    fn target(&mut self) -> Result<Target> {
        let kind = self.peek();
        let make: fn(u8) -> Target = match kind {
            Some('B' | 'b') => Target::B,
            Some('V' | 'v') => Target::V,
            _ => return Err(self.error("expected a target B<i> or V<k>")),
        };
        self.pos += 1;
        let at = self.position();
        let idx = self.number()?;
        if idx == 0 || idx > u8::MAX as usize {
            return Err(Error::Syntax { position: at, message: "index out of range".into() });
        }
        Ok(make(idx as u8))
    }

    fn end(&self) -> Result<()> {
        if self.pos == self.chars.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

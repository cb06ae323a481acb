//! Directive sequences `(d_0, d_1, ...)` with an eventually periodic description.
//!
//! Text grammar, shared by every command line entry point:
//!
//! ```text
//! fib                 alias for (1)
//! 2,1,3               finite head; every later term is 1
//! 2,1,(3,4)           head 2,1 followed by 3,4,3,4,...
//! (14)                constant 14
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectiveSequence {
    head: Vec<u64>,
    tail: Option<Vec<u64>>,
}

impl DirectiveSequence {
    /// Terms past the end of a head without a periodic tail are 1.
    pub const DEFAULT_FILL: u64 = 1;

    pub fn new(head: Vec<u64>, tail: Option<Vec<u64>>) -> Result<Self> {
        if let Some(t) = &tail {
            if t.is_empty() {
                return Err(Error::Parse("periodic tail must be non-empty".into()));
            }
        }
        let all = head.iter().chain(tail.iter().flatten());
        if let Some(bad) = all.clone().find(|&&d| d == 0) {
            return Err(Error::Parse(format!("directive terms must be >= 1, found {bad}")));
        }
        Ok(Self { head, tail })
    }

    pub fn fibonacci() -> Self {
        Self {
            head: Vec::new(),
            tail: Some(vec![1]),
        }
    }

    pub fn constant(d: u64) -> Result<Self> {
        Self::new(Vec::new(), Some(vec![d]))
    }

    pub fn periodic(period: Vec<u64>) -> Result<Self> {
        Self::new(Vec::new(), Some(period))
    }

    pub fn finite(head: Vec<u64>) -> Result<Self> {
        Self::new(head, None)
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn tail(&self) -> Option<&[u64]> {
        self.tail.as_deref()
    }

    /// The term `d_i`.
    pub fn d(&self, i: usize) -> u64 {
        if let Some(&d) = self.head.get(i) {
            return d;
        }
        match &self.tail {
            Some(t) => t[(i - self.head.len()) % t.len()],
            None => Self::DEFAULT_FILL,
        }
    }

    /// The directive `(d_k, d_{k+1}, ...)`.
    pub fn shifted(&self, k: usize) -> Self {
        if k <= self.head.len() {
            return Self {
                head: self.head[k..].to_vec(),
                tail: self.tail.clone(),
            };
        }
        match &self.tail {
            Some(t) => {
                let r = (k - self.head.len()) % t.len();
                let mut rotated = t[r..].to_vec();
                rotated.extend_from_slice(&t[..r]);
                Self {
                    head: Vec::new(),
                    tail: Some(rotated),
                }
            }
            None => Self {
                head: Vec::new(),
                tail: None,
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl FromStr for DirectiveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("fib") {
            return Ok(Self::fibonacci());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty directive".into()));
        }
        let (head_text, tail_text) = match s.find('(') {
            Some(open) => {
                let close = s
                    .rfind(')')
                    .filter(|&c| c > open)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
                if !s[close + 1..].trim().is_empty() {
                    return Err(Error::Parse(format!("the periodic tail must come last in {s:?}")));
                }
                let head = s[..open].trim().trim_end_matches(',');
                (head, Some(&s[open + 1..close]))
            }
            None => (s, None),
        };
        let head = parse_list(head_text)?;
        let tail = tail_text.map(parse_list).transpose()?;
        if tail.as_ref().is_some_and(|t| t.is_empty()) {
            return Err(Error::Parse("periodic tail must be non-empty".into()));
        }
        Self::new(head, tail)
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad directive term {t:?}")))
        })
        .collect()
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.head))?;
        if let Some(t) = &self.tail {
            if !self.head.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "({})", join(t))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_forms() {
        let fib = DirectiveSequence::parse("fib").unwrap();
        assert_eq!(fib, DirectiveSequence::parse("(1)").unwrap());
        assert!((0..50).all(|i| fib.d(i) == 1));

        let d = DirectiveSequence::parse("2, 1,(3,4)").unwrap();
        let terms: Vec<u64> = (0..7).map(|i| d.d(i)).collect();
        assert_eq!(terms, [2, 1, 3, 4, 3, 4, 3]);

        let finite = DirectiveSequence::parse("1,1,1,1,5,1").unwrap();
        assert_eq!(finite.d(4), 5);
        assert_eq!(finite.d(6), 1);
        assert_eq!(finite.d(1000), 1);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "0,1", "1,(0)", "1,()", "1,(2", "(2),1", "x", "1,,2"] {
            assert!(DirectiveSequence::parse(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["2,1,(3,4)", "(14)", "8,8,(1)", "1,1,1,1,5,1"] {
            let d = DirectiveSequence::parse(text).unwrap();
            assert_eq!(d.to_string(), text);
            assert_eq!(DirectiveSequence::parse(&d.to_string()).unwrap(), d);
        }
    }

    #[test]
    fn shift_matches_terms() {
        let d = DirectiveSequence::parse("5,2,(3,4,6)").unwrap();
        for k in 0..9 {
            let s = d.shifted(k);
            for i in 0..20 {
                assert_eq!(s.d(i), d.d(i + k), "shift {k}, term {i}");
            }
        }
    }
}

//! Representations `N = sum k_i q_i` in the Ostrowski, legal and valid senses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::WordFamily;

/// Digit vector `k_0, k_1, ...`, least significant position first.
///
/// High-position zeros are stripped on construction, so representations that
/// differ only by leading zeros compare equal. Nothing about validity is
/// implied by the type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    digits: Vec<u64>,
}

impl Representation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_lsf(mut digits: Vec<u64>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Self { digits }
    }

    pub fn from_msf(digits: &[u64]) -> Self {
        Self::from_lsf(digits.iter().rev().copied().collect())
    }

    /// Digit at position `i` (zero past the top).
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn set_digit(&mut self, i: usize, value: u64) {
        if i >= self.digits.len() {
            if value == 0 {
                return;
            }
            self.digits.resize(i + 1, 0);
        }
        self.digits[i] = value;
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
    }

    pub fn digits_lsf(&self) -> &[u64] {
        &self.digits
    }

    pub fn digits_msf(&self) -> Vec<u64> {
        self.digits.iter().rev().copied().collect()
    }

    /// Number of significant positions.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Same as [`Representation::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Rendering padded with leading zeros to `width` positions.
    pub fn to_string_width(&self, width: usize) -> String {
        let mut digits = self.digits_msf();
        if digits.len() < width {
            let mut padded = vec![0; width - digits.len()];
            padded.append(&mut digits);
            digits = padded;
        }
        render(&digits)
    }
}

fn render(msf: &[u64]) -> String {
    if msf.is_empty() {
        return "0".to_string();
    }
    if msf.iter().all(|&d| d <= 9) {
        msf.iter().map(u64::to_string).collect()
    } else {
        msf.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }
}

/// Most significant digit first; dot-separated once any digit exceeds 9.
impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.digits_msf()))
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty digit string".into()));
        }
        let digits: Result<Vec<u64>> = if s.contains('.') {
            s.split('.')
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad digit {t:?} in {s:?}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect()
        };
        Ok(Self::from_msf(&digits?))
    }
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits_msf().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let msf = Vec::<u64>::deserialize(deserializer)?;
        Ok(Self::from_msf(&msf))
    }
}

/// JSON form `{"digits_msf": [...], "value": N}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReprJson {
    pub digits_msf: Vec<u64>,
    pub value: u64,
}

impl ReprJson {
    pub fn new(family: &WordFamily, r: &Representation) -> Result<Self> {
        Ok(Self {
            digits_msf: r.digits_msf(),
            value: value(family, r)?,
        })
    }

    pub fn representation(&self) -> Representation {
        Representation::from_msf(&self.digits_msf)
    }
}

/// `sum k_i q_i`.
pub fn value(family: &WordFamily, r: &Representation) -> Result<u64> {
    let overflow = Error::Overflow {
        what: "representation value",
    };
    r.digits_lsf()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .try_fold(0u64, |acc, (i, &k)| {
            let q = family.q(i)?;
            k.checked_mul(q)
                .and_then(|x| acc.checked_add(x))
                .ok_or_else(|| overflow.clone())
        })
}

/// Greedy Ostrowski representation.
///
/// At each position the largest admissible coefficient is taken. Since the
/// remainder below `q_{i+1} = d_i q_i + q_{i-1}` never exceeds it, the
/// coefficient is at most `d_i`, and a coefficient equal to `d_i` leaves a
/// remainder below `q_{i-1}`, forcing `k_{i-1} = 0`.
pub fn ostrowski(family: &WordFamily, n: u64) -> Result<Representation> {
    let Some(top) = family.order_at_most(n) else {
        return Ok(Representation::zero());
    };
    let mut digits = vec![0u64; top + 1];
    let mut rest = n;
    for i in (0..=top).rev() {
        let q = family.q(i)?;
        digits[i] = rest / q;
        rest %= q;
    }
    debug_assert_eq!(rest, 0);
    Ok(Representation::from_lsf(digits))
}

pub fn is_legal(family: &WordFamily, r: &Representation) -> bool {
    r.digits_lsf().iter().enumerate().all(|(i, &k)| k <= family.d(i))
}

/// Legal, and `k_i = d_i` forces `k_{i-1} = 0` for `i >= 1`.
pub fn is_ostrowski(family: &WordFamily, r: &Representation) -> bool {
    is_legal(family, r) && (1..r.len()).all(|i| r.digit(i) != family.d(i) || r.digit(i - 1) == 0)
}

/// Whether `s_n^{k_n} ... s_0^{k_0}` equals `w(0..N]`.
///
/// Blocks are compared one by one against the prefix buffer, stopping at the
/// first mismatch; the concatenation is never built.
pub fn is_valid(family: &mut WordFamily, r: &Representation) -> Result<bool> {
    let n = value(family, r)?;
    family.grow(n)?;
    let w = family.buffer();
    let mut pos = 0usize;
    for i in (0..r.len()).rev() {
        let q = family.q(i)? as usize;
        for _ in 0..r.digit(i) {
            if w[pos..pos + q] != w[..q] {
                return Ok(false);
            }
            pos += q;
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Added to every digit bound `(d_0+1, d_1+1, d_i+2)`.
    pub slack: u64,
    /// Maximum number of partial digit vectors explored.
    pub candidate_cap: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            slack: 0,
            candidate_cap: 10_000_000,
        }
    }
}

/// Upper bound on digit `i` of any valid representation.
pub fn digit_bound(family: &WordFamily, i: usize) -> u64 {
    family.d(i) + if i < 2 { 1 } else { 2 }
}

/// Every valid representation of `n`, by exhaustive search over bounded digits.
pub fn enumerate_valid(family: &mut WordFamily, n: u64) -> Result<BTreeSet<Representation>> {
    enumerate_valid_with(family, n, EnumerationOptions::default())
}

pub fn enumerate_valid_with(
    family: &mut WordFamily,
    n: u64,
    options: EnumerationOptions,
) -> Result<BTreeSet<Representation>> {
    let mut out = BTreeSet::new();
    let Some(top) = family.order_at_most(n) else {
        out.insert(Representation::zero());
        return Ok(out);
    };
    family.grow(n)?;

    let bounds: Vec<u64> = (0..=top).map(|i| digit_bound(family, i) + options.slack).collect();
    let qs: Vec<usize> = (0..=top)
        .map(|i| family.q(i).map(|q| q as usize))
        .collect::<Result<_>>()?;
    // reach[i] = largest value expressible with positions below i.
    let mut reach = vec![0u64; top + 2];
    for i in 0..=top {
        reach[i + 1] = reach[i].saturating_add(bounds[i].saturating_mul(qs[i] as u64));
    }

    let mut search = Search {
        w: family.buffer(),
        qs: &qs,
        bounds: &bounds,
        reach: &reach,
        digits: vec![0; top + 1],
        explored: 0,
        cap: options.candidate_cap,
        out: &mut out,
    };
    search.descend(top, 0, n as usize)?;
    Ok(out)
}

struct Search<'a> {
    w: &'a [u8],
    qs: &'a [usize],
    bounds: &'a [u64],
    reach: &'a [u64],
    digits: Vec<u64>,
    explored: u64,
    cap: u64,
    out: &'a mut BTreeSet<Representation>,
}

impl Search<'_> {
    /// Chooses the digit at position `i`, with `pos` symbols already matched
    /// and `rest` still to cover.
    fn descend(&mut self, i: usize, pos: usize, rest: usize) -> Result<()> {
        let q = self.qs[i];
        let mut k = 0u64;
        let mut pos_k = pos;
        loop {
            self.explored += 1;
            if self.explored > self.cap {
                return Err(Error::CandidateCap { cap: self.cap });
            }
            let rest_k = rest - (pos_k - pos);
            if rest_k as u64 <= self.reach[i] {
                self.digits[i] = k;
                if i == 0 {
                    if rest_k == 0 {
                        self.out.insert(Representation::from_lsf(self.digits.clone()));
                    }
                } else {
                    self.descend(i - 1, pos_k, rest_k)?;
                }
            }
            // Next copy of s_i must fit and must match the word.
            if k == self.bounds[i] || rest_k < q || self.w[pos_k..pos_k + q] != self.w[..q] {
                break;
            }
            k += 1;
            pos_k += q;
        }
        self.digits[i] = 0;
        Ok(())
    }
}

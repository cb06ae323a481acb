//! Palindrome occurrences `w(p1..p2]` in the characteristic word and the
//! representation pairs attached to their endpoints.
//!
//! Every maximal palindromic extension is bispecial, hence a central word
//! `c_{n,j}` with `0 <= j <= d_n`. Given that label, the pair is assembled
//! from three decompositions: the prefix before the extension (peeled off the
//! block partitions), the stretch from the extension's start to `p1`
//! (`s_m^{l_m}` followed by the Ostrowski form of the rest), and its
//! complement inside `c_{m,j}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::{enumerate_valid, is_valid, ostrowski, value, ReprJson, Representation};
use crate::transforms::z_profile;
use crate::words::{is_palindrome, WordFamily};

/// `(n, j)` naming the central word `c_{n,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CentralLabel {
    pub n: usize,
    pub j: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalindromeOccurrence {
    pub p1: usize,
    pub p2: usize,
    pub ext_left: usize,
    pub ext_right: usize,
    /// The extension ran into the start of the word.
    pub reached_prefix: bool,
    pub central: CentralLabel,
}

impl PalindromeOccurrence {
    /// Number of symbols added on each side.
    pub fn radius(&self) -> usize {
        self.p1 - self.ext_left
    }
}

pub fn is_palindrome_occurrence(family: &mut WordFamily, p1: usize, p2: usize) -> Result<bool> {
    if p1 > p2 {
        return Ok(false);
    }
    Ok(is_palindrome(family.factor(p1, p2)?))
}

/// Every label `(n, j)`, `0 <= j <= d_n`, with `c_{n,j} = word`, largest `n` first.
///
/// Only orders whose central-word length formula
/// `|c_{n,j}| = (j+1) q_n + q_{n-1} - 2` can hit `|word|` are materialized.
pub fn central_labels(family: &mut WordFamily, word: &[u8]) -> Result<Vec<CentralLabel>> {
    let len = word.len() as u64;
    let mut out = Vec::new();
    for n in (0..=family.max_order()).rev() {
        let q = family.q(n)?;
        let base = q.saturating_add(family.q_before(n));
        if base > len + 2 {
            continue;
        }
        let span = len + 2 - family.q_before(n);
        if !span.is_multiple_of(q) {
            continue;
        }
        let j = span / q - 1;
        if j > family.d(n) {
            continue;
        }
        if family.central_word(n, j)? == word {
            out.push(CentralLabel { n, j });
        }
    }
    Ok(out)
}

/// The label of a central word, preferring the largest order.
///
/// `c_{n+1,0} = c_{n,d_n}` for every `n`, so most central words carry two
/// labels; taking the larger order means every non-empty central word except
/// `c_{1,0} = a^{d_0}` starts with `s_n`.
pub fn classify_central(family: &mut WordFamily, word: &[u8]) -> Result<Option<CentralLabel>> {
    Ok(central_labels(family, word)?.into_iter().next())
}

/// Grows `w(p1..p2]` symmetrically while it stays a palindrome.
pub fn maximal_extension(family: &mut WordFamily, p1: usize, p2: usize) -> Result<PalindromeOccurrence> {
    if !is_palindrome_occurrence(family, p1, p2)? {
        return Err(Error::NotAPalindrome { p1, p2 });
    }
    // At most p1 steps; one extra symbol to see why the extension stopped.
    family.grow((p2 + p1 + 1) as u64)?;
    let w = family.buffer();
    let mut d = 0;
    // 1-based w[p1 - d] and w[p2 + d + 1].
    while d < p1 && w[p1 - d - 1] == w[p2 + d] {
        d += 1;
    }
    let (ext_left, ext_right) = (p1 - d, p2 + d);
    let ext = w[ext_left..ext_right].to_vec();
    let central = classify_central(family, &ext)?.ok_or_else(|| {
        Error::ConstructionFailed(format!(
            "maximal extension w({ext_left}..{ext_right}] is not a central word"
        ))
    })?;
    Ok(PalindromeOccurrence {
        p1,
        p2,
        ext_left,
        ext_right,
        reached_prefix: d == p1,
        central,
    })
}

/// Valid representations `r1` of `p1` and `r2` of `p2` that agree above `m`
/// and have complementary digits `x_i`, `d_i - x_i` below it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReprPair {
    pub r1: Representation,
    pub r2: Representation,
    pub m: usize,
}

impl ReprPair {
    /// Checks the shape against `family` without any validity test.
    pub fn shape_holds(&self, family: &WordFamily) -> bool {
        let m = self.m;
        let top = self.r1.len().max(self.r2.len());
        (m + 1..top).all(|i| self.r1.digit(i) == self.r2.digit(i))
            && (0..m).all(|i| {
                let x = self.r1.digit(i);
                x <= family.d(i) && self.r2.digit(i) == family.d(i) - x
            })
    }

    /// All invariants: both valid, values `p1`/`p2`, shape, and z-profiles
    /// agreeing away from `m`. Returns the first violated condition.
    pub fn verify(&self, family: &mut WordFamily, p1: usize, p2: usize) -> std::result::Result<(), String> {
        let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        let v1 = value(family, &self.r1).map_err(|e| e.to_string())?;
        let v2 = value(family, &self.r2).map_err(|e| e.to_string())?;
        check(v1 == p1 as u64, &format!("value(r1) = {v1}, expected {p1}"))?;
        check(v2 == p2 as u64, &format!("value(r2) = {v2}, expected {p2}"))?;
        check(
            is_valid(family, &self.r1).map_err(|e| e.to_string())?,
            "r1 is not valid",
        )?;
        check(
            is_valid(family, &self.r2).map_err(|e| e.to_string())?,
            "r2 is not valid",
        )?;
        check(self.shape_holds(family), "digit shape violated")?;
        let (z1, z2) = (z_profile(family, &self.r1), z_profile(family, &self.r2));
        let width = z1.len().max(z2.len());
        let z_at = |z: &[u64], i: usize| z.get(i).copied().unwrap_or(0);
        let off = (0..width).find(|&i| i != self.m && z_at(&z1, i) != z_at(&z2, i));
        check(off.is_none(), &format!("z differs at position {off:?} != m"))
    }
}

/// The representation pair built from the maximal extension of `w(p1..p2]`.
pub fn palindrome_repr_pair(family: &mut WordFamily, p1: usize, p2: usize) -> Result<ReprPair> {
    Ok(palindrome_construction(family, p1, p2)?.pair)
}

/// Intermediate data of [`palindrome_repr_pair`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairConstruction {
    pub occurrence: PalindromeOccurrence,
    /// Label used by the construction: the smallest order, so `c_{n+1,0}`
    /// is read as `c_{n,d_n}` (in particular `a^{d_0}` as `c_{0,d_0}`) and
    /// the extension starts with `s_m`.
    pub label: CentralLabel,
    /// `k_i` with `w(0..ext_left] = s_n^{k_n} ... s_m^{k_m}`.
    pub before: Vec<u64>,
    /// `l_m, ..., l_0` (least significant first) with
    /// `w(ext_left..p1] = s_m^{l_m} s_{m-1}^{l_{m-1}} ... s_0^{l_0}`.
    pub lead: Vec<u64>,
    pub pair: ReprPair,
}

pub fn palindrome_construction(family: &mut WordFamily, p1: usize, p2: usize) -> Result<PairConstruction> {
    if p1 == p2 {
        return Err(Error::EmptyOccurrence { p: p1 });
    }
    let occurrence = maximal_extension(family, p1, p2)?;
    let ext = family.factor(occurrence.ext_left, occurrence.ext_right)?.to_vec();
    let label = *central_labels(family, &ext)?.last().expect("extension was classified");
    let CentralLabel { n: m, j } = label;
    let start = occurrence.ext_left;
    let radius = occurrence.radius();

    let before = family.decompose_prefix_at_occurrence(start, m)?;

    // Largest power of s_m that begins w(start..p1].
    let q_m = family.q(m)? as usize;
    let mut l_m = 0usize;
    {
        let w = family.buffer();
        while (l_m + 1) * q_m <= radius && w[start + l_m * q_m..start + (l_m + 1) * q_m] == w[..q_m] {
            l_m += 1;
        }
    }
    if l_m as u64 > j {
        return Err(Error::ConstructionFailed(format!(
            "w({start}..{p1}] begins with s_{m}^{l_m}, beyond j = {j}"
        )));
    }
    let low = ostrowski(family, (radius - l_m * q_m) as u64)?;
    if low.len() > m {
        return Err(Error::ConstructionFailed(format!(
            "remainder {} after s_{m}^{l_m} needs position {}",
            radius - l_m * q_m,
            low.len() - 1
        )));
    }

    let top = before.len().max(m + 1);
    let mut x = vec![0u64; top];
    let mut y = vec![0u64; top];
    if before.len() > m + 1 {
        x[m + 1..].copy_from_slice(&before[m + 1..]);
        y[m + 1..].copy_from_slice(&before[m + 1..]);
    }
    x[m] = before[m] + l_m as u64;
    y[m] = before[m] + (j - l_m as u64);
    for i in 0..m {
        x[i] = low.digit(i);
        y[i] = family.d(i) - low.digit(i);
    }
    let mut lead = low.digits_lsf().to_vec();
    lead.resize(m + 1, 0);
    lead[m] = l_m as u64;

    let pair = ReprPair {
        r1: Representation::from_lsf(x),
        r2: Representation::from_lsf(y),
        m,
    };
    pair.verify(family, p1, p2)
        .map_err(|why| Error::ConstructionFailed(format!("pair for w({p1}..{p2}]: {why}")))?;
    Ok(PairConstruction {
        occurrence,
        label,
        before,
        lead,
        pair,
    })
}

/// Every `(r1, r2, m)` over the valid representations of `p1` and `p2`
/// satisfying the pair shape. Exhaustive; meant for small values.
pub fn enumerate_repr_pairs(family: &mut WordFamily, p1: usize, p2: usize) -> Result<BTreeSet<ReprPair>> {
    let ones = enumerate_valid(family, p1 as u64)?;
    let twos = enumerate_valid(family, p2 as u64)?;
    let mut out = BTreeSet::new();
    for r1 in &ones {
        for r2 in &twos {
            let top = r1.len().max(r2.len()).max(1);
            for m in 0..top {
                let pair = ReprPair {
                    r1: r1.clone(),
                    r2: r2.clone(),
                    m,
                };
                if pair.shape_holds(family) {
                    out.insert(pair);
                }
            }
        }
    }
    Ok(out)
}

/// JSON form `{"p1", "p2", "ext": [l, r], "central": {"n", "j"}, "pair": {"r1", "r2", "m"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceJson {
    pub p1: usize,
    pub p2: usize,
    pub ext: [usize; 2],
    pub central: CentralLabel,
    pub pair: PairJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub r1: ReprJson,
    pub r2: ReprJson,
    pub m: usize,
}

impl OccurrenceJson {
    pub fn new(family: &WordFamily, c: &PairConstruction) -> Result<Self> {
        Ok(Self {
            p1: c.occurrence.p1,
            p2: c.occurrence.p2,
            ext: [c.occurrence.ext_left, c.occurrence.ext_right],
            central: c.occurrence.central,
            pair: PairJson {
                r1: ReprJson::new(family, &c.pair.r1)?,
                r2: ReprJson::new(family, &c.pair.r2)?,
                m: c.pair.m,
            },
        })
    }
}

/// All non-empty palindrome occurrences `w(p1..p2]` with `p2 <= horizon`.
pub fn palindrome_occurrences(family: &mut WordFamily, horizon: usize) -> Result<Vec<(usize, usize)>> {
    let w = family.characteristic_prefix(horizon as u64)?;
    let mut out = Vec::new();
    for center in 0..w.len() {
        // odd lengths around w[center]
        let (mut l, mut r) = (center as isize, center);
        while l >= 0 && r < w.len() && w[l as usize] == w[r] {
            out.push((l as usize, r + 1));
            l -= 1;
            r += 1;
        }
        // even lengths between center and center + 1
        let (mut l, mut r) = (center as isize, center + 1);
        while l >= 0 && r < w.len() && w[l as usize] == w[r] {
            out.push((l as usize, r + 1));
            l -= 1;
            r += 1;
        }
    }
    out.sort_unstable();
    Ok(out)
}

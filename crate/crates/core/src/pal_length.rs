//! Palindromic length: a quadratic dynamic program, a palindromic-tree engine
//! with series links, and witness prefixes whose palindromic length exceeds
//! a given bound.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::{is_legal, is_valid, ostrowski, Representation};
use crate::palindromes::palindrome_repr_pair;
use crate::transforms::z_profile;
use crate::words::{is_palindrome, WordFamily};

pub const ORACLE_CAP: usize = 5000;

/// Minimal palindromic factorization of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub length: usize,
    pub pal_len: usize,
    /// `0 = p_0 < p_1 < ... < p_Q = length`, each `word[p_k..p_{k+1}]` a palindrome.
    pub witness_cuts: Vec<usize>,
}

impl FactorizationResult {
    fn from_back_pointers(len: usize, pal_len: usize, back: &[usize]) -> Self {
        let mut cuts = vec![len];
        let mut i = len;
        while i > 0 {
            i = back[i];
            cuts.push(i);
        }
        cuts.reverse();
        Self {
            length: len,
            pal_len,
            witness_cuts: cuts,
        }
    }
}

/// Manacher radii answering "is `word[l..r]` a palindrome" in O(1).
struct PalindromeTable {
    /// `odd[i]`: number of odd palindromes centred at `i`.
    odd: Vec<usize>,
    /// `even[i]`: number of even palindromes centred between `i - 1` and `i`.
    even: Vec<usize>,
}

impl PalindromeTable {
    fn new(s: &[u8]) -> Self {
        let n = s.len();
        let mut odd = vec![0usize; n];
        let (mut l, mut r) = (0isize, -1isize);
        for i in 0..n {
            let mut k = if i as isize > r {
                1
            } else {
                odd[(l + r) as usize - i].min((r - i as isize + 1) as usize)
            };
            while i + k < n && i >= k && s[i - k] == s[i + k] {
                k += 1;
            }
            odd[i] = k;
            if (i + k - 1) as isize > r {
                l = (i + 1 - k) as isize;
                r = (i + k - 1) as isize;
            }
        }
        let mut even = vec![0usize; n];
        let (mut l, mut r) = (0isize, -1isize);
        for i in 0..n {
            let mut k = if i as isize > r {
                0
            } else {
                even[(l + r) as usize - i + 1].min((r - i as isize + 1) as usize)
            };
            while i + k < n && i > k && s[i - k - 1] == s[i + k] {
                k += 1;
            }
            even[i] = k;
            if k > 0 && (i + k - 1) as isize > r {
                l = (i - k) as isize;
                r = (i + k - 1) as isize;
            }
        }
        Self { odd, even }
    }

    /// `word[l..r]`, non-empty.
    fn is_pal(&self, l: usize, r: usize) -> bool {
        let len = r - l;
        let mid = l + len / 2;
        if len % 2 == 1 {
            self.odd[mid] > len / 2
        } else {
            self.even[mid] >= len / 2
        }
    }
}

/// Exact palindromic length by dynamic programming over all palindromic
/// suffixes; ties go to the longest last palindrome.
pub fn pal_length_oracle(word: &[u8]) -> Result<FactorizationResult> {
    pal_length_oracle_with_cap(word, ORACLE_CAP)
}

pub fn pal_length_oracle_with_cap(word: &[u8], cap: usize) -> Result<FactorizationResult> {
    let n = word.len();
    if n > cap {
        return Err(Error::OracleCap { length: n, cap });
    }
    let table = PalindromeTable::new(word);
    let mut dp = vec![0usize; n + 1];
    let mut back = vec![0usize; n + 1];
    for i in 1..=n {
        let (best, from) = (0..i)
            .filter(|&j| table.is_pal(j, i))
            .map(|j| (dp[j] + 1, j))
            .min()
            .expect("single letters are palindromes");
        dp[i] = best;
        back[i] = from;
    }
    Ok(FactorizationResult::from_back_pointers(n, dp[n], &back))
}

const NONE: u32 = u32::MAX;

/// Palindromic tree over arbitrary bytes.
///
/// Node 0 is the root of length -1, node 1 the empty palindrome. Besides the
/// suffix link, each node keeps `diff = len - len(link)` and the series link:
/// the first suffix-palindrome whose `diff` differs. Suffix palindromes of a
/// prefix then split into `O(log n)` series with arithmetic lengths, and the
/// dp minimum over one series is inherited from the node's suffix link as it
/// was `diff` symbols earlier.
struct Eertree {
    len: Vec<i64>,
    link: Vec<u32>,
    diff: Vec<i64>,
    series_link: Vec<u32>,
    first_edge: Vec<u32>,
    edges: Vec<Edge>,
    last: u32,
}

struct Edge {
    symbol: u8,
    target: u32,
    next: u32,
}

impl Eertree {
    fn with_capacity(n: usize) -> Self {
        let mut t = Self {
            len: Vec::with_capacity(n + 2),
            link: Vec::with_capacity(n + 2),
            diff: Vec::with_capacity(n + 2),
            series_link: Vec::with_capacity(n + 2),
            first_edge: Vec::with_capacity(n + 2),
            edges: Vec::with_capacity(n),
            last: 1,
        };
        for len in [-1, 0] {
            t.len.push(len);
            t.link.push(0);
            t.diff.push(0);
            t.series_link.push(0);
            t.first_edge.push(NONE);
        }
        t
    }

    fn child(&self, node: u32, symbol: u8) -> Option<u32> {
        let mut e = self.first_edge[node as usize];
        while e != NONE {
            let edge = &self.edges[e as usize];
            if edge.symbol == symbol {
                return Some(edge.target);
            }
            e = edge.next;
        }
        None
    }

    fn suffix_with_extension(&self, s: &[u8], i: usize, mut v: u32) -> u32 {
        loop {
            let l = self.len[v as usize];
            let j = i as i64 - l - 1;
            if j >= 0 && s[j as usize] == s[i] {
                return v;
            }
            v = self.link[v as usize];
        }
    }

    /// Appends `s[i]`; returns the node of the longest palindromic suffix.
    fn push(&mut self, s: &[u8], i: usize) -> u32 {
        let c = s[i];
        let parent = self.suffix_with_extension(s, i, self.last);
        if let Some(existing) = self.child(parent, c) {
            self.last = existing;
            return existing;
        }
        let node = self.len.len() as u32;
        let len = self.len[parent as usize] + 2;
        let link = if len == 1 {
            1
        } else {
            let p = self.suffix_with_extension(s, i, self.link[parent as usize]);
            self.child(p, c).expect("suffix palindrome already present")
        };
        let diff = len - self.len[link as usize];
        let series_link = if diff == self.diff[link as usize] {
            self.series_link[link as usize]
        } else {
            link
        };
        self.len.push(len);
        self.link.push(link);
        self.diff.push(diff);
        self.series_link.push(series_link);
        self.first_edge.push(NONE);
        self.edges.push(Edge {
            symbol: c,
            target: node,
            next: self.first_edge[parent as usize],
        });
        self.first_edge[parent as usize] = self.edges.len() as u32 - 1;
        self.last = node;
        node
    }
}

/// Palindromic length in `O(n log n)` with the same tie-breaking as the oracle.
pub fn pal_length_fast(word: &[u8]) -> Result<FactorizationResult> {
    let n = word.len();
    if n >= NONE as usize - 2 {
        return Err(Error::Overflow {
            what: "palindromic tree size",
        });
    }
    let mut tree = Eertree::with_capacity(n);
    let mut dp = vec![0u32; n + 1];
    let mut back = vec![0usize; n + 1];
    // Per node: (dp value, start) minimum over its series, as last computed.
    let mut series: Vec<(u32, usize)> = Vec::with_capacity(n + 2);
    series.resize(2, (u32::MAX, 0));

    for i in 1..=n {
        let last = tree.push(word, i - 1);
        if series.len() < tree.len.len() {
            series.resize(tree.len.len(), (u32::MAX, 0));
        }
        let mut best = (u32::MAX, usize::MAX);
        let mut v = last;
        while tree.len[v as usize] > 0 {
            let vi = v as usize;
            let sl = tree.series_link[vi] as usize;
            let start = i - (tree.len[sl] + tree.diff[vi]) as usize;
            let mut cand = (dp[start], start);
            if tree.diff[vi] == tree.diff[tree.link[vi] as usize] {
                cand = cand.min(series[tree.link[vi] as usize]);
            }
            series[vi] = cand;
            best = best.min((cand.0 + 1, cand.1));
            v = tree.series_link[vi];
        }
        dp[i] = best.0;
        back[i] = best.1;
    }
    Ok(FactorizationResult::from_back_pointers(n, dp[n] as usize, &back))
}

/// Checks that `cuts` factor `word` into palindromes; empty parts allowed.
pub fn check_cuts(word: &[u8], cuts: &[usize]) -> Result<()> {
    let bad = |why: String| Err(Error::InvalidCuts(why));
    if cuts.first() != Some(&0) || cuts.last() != Some(&word.len()) {
        return bad(format!("cuts must run from 0 to {}", word.len()));
    }
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a > b {
            return bad(format!("cuts decrease at {a} > {b}"));
        }
        if !is_palindrome(&word[a..b]) {
            return bad(format!("part ({a}..{b}] is not a palindrome"));
        }
    }
    Ok(())
}

/// Prefix length `N` whose palindromic length exceeds `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    #[serde(rename = "Q")]
    pub q: u64,
    /// `Q + 1` increasing positions with `d_m >= 6Q + 2`.
    pub positions: Vec<usize>,
    /// The common digit `3Q + 1`.
    pub digit: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub representation: Representation,
}

pub const DEFAULT_WITNESS_HORIZON: usize = 256;

pub fn build_witness(family: &WordFamily, q: u64) -> Result<WitnessSpec> {
    build_witness_within(family, q, DEFAULT_WITNESS_HORIZON)
}

/// Digit `3Q + 1` at the `Q + 1` smallest positions with `d_m >= 6Q + 2`
/// among the first `horizon` terms, zero elsewhere.
pub fn build_witness_within(family: &WordFamily, q: u64, horizon: usize) -> Result<WitnessSpec> {
    if q == 0 {
        return Err(Error::Parse("witness bound Q must be at least 1".into()));
    }
    let threshold = 6 * q + 2;
    let needed = q as usize + 1;
    let positions: Vec<usize> = (0..horizon)
        .filter(|&i| family.d(i) >= threshold)
        .take(needed)
        .collect();
    if positions.len() < needed {
        return Err(Error::InsufficientDirective {
            found: positions.len(),
            needed,
            threshold,
            horizon,
        });
    }
    let digit = 3 * q + 1;
    let mut digits = vec![0u64; positions.last().unwrap() + 1];
    let mut n = 0u64;
    for &m in &positions {
        digits[m] = digit;
        n = family
            .q(m)?
            .checked_mul(digit)
            .and_then(|x| x.checked_add(n))
            .ok_or(Error::Overflow { what: "witness value" })?;
    }
    Ok(WitnessSpec {
        q,
        positions,
        digit,
        n,
        representation: Representation::from_lsf(digits),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub positions: Vec<usize>,
    pub pal_len: usize,
    /// Oracle result, when `N` is within its cap.
    pub oracle_pal_len: Option<usize>,
    pub legal: bool,
    pub valid: bool,
    pub z_profile: Vec<u64>,
    pub witness_cuts: Vec<usize>,
    pub runtime_ms: u128,
}

/// Computes the palindromic length of `w(0..N]` and checks it exceeds `Q`.
pub fn verify_witness(family: &mut WordFamily, spec: &WitnessSpec) -> Result<WitnessReport> {
    let started = Instant::now();
    let legal = is_legal(family, &spec.representation);
    let valid = is_valid(family, &spec.representation)?;
    let word = family.characteristic_prefix(spec.n)?;
    let fast = pal_length_fast(word)?;
    let oracle_pal_len = if word.len() <= ORACLE_CAP {
        Some(pal_length_oracle(word)?.pal_len)
    } else {
        None
    };
    let runtime_ms = started.elapsed().as_millis();
    let report = WitnessReport {
        q: spec.q,
        n: spec.n,
        positions: spec.positions.clone(),
        pal_len: fast.pal_len,
        oracle_pal_len,
        legal,
        valid,
        z_profile: z_profile(family, &spec.representation),
        witness_cuts: fast.witness_cuts,
        runtime_ms,
    };
    let agrees = oracle_pal_len.is_none_or(|o| o == report.pal_len);
    if !(legal && valid && agrees) || report.pal_len as u64 <= spec.q {
        return Err(Error::ConstructionFailed(format!(
            "witness N = {} for Q = {} refuted: pal_len = {}, oracle = {:?}, legal = {legal}, valid = {valid}",
            spec.n, spec.q, report.pal_len, oracle_pal_len
        )));
    }
    Ok(report)
}

/// One row of the unboundedness experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub positions: String,
    pub pal_len: usize,
    pub runtime_ms: u128,
}

/// Builds and verifies the witness for each `Q` in turn.
pub fn run_experiment(family: &mut WordFamily, qs: impl IntoIterator<Item = u64>) -> Result<Vec<ExperimentRow>> {
    qs.into_iter()
        .map(|q| {
            let spec = build_witness(family, q)?;
            let report = verify_witness(family, &spec)?;
            Ok(ExperimentRow {
                q,
                n: spec.n,
                positions: spec
                    .positions
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
                pal_len: report.pal_len,
                runtime_ms: report.runtime_ms,
            })
        })
        .collect()
}

/// Outcome of the digit-counting argument for a target representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingVerdict {
    pub parts: usize,
    /// `3 * parts`: after that many steps a position can drift this far.
    pub threshold: u64,
    /// Positions of the target whose `z` exceeds the threshold.
    pub positions_above: Vec<usize>,
    /// More such positions than parts: no factorization into `parts`
    /// palindromes can reach the target.
    pub contradiction: bool,
}

/// Each palindrome may move one `z` freely and every other by at most 3, so
/// `parts` palindromes starting from the zero representation leave at most
/// `parts` positions with `z > 3 * parts`.
pub fn counting_bound(family: &WordFamily, target: &Representation, parts: usize) -> CountingVerdict {
    let threshold = 3 * parts as u64;
    let positions_above: Vec<usize> = z_profile(family, target)
        .iter()
        .enumerate()
        .filter(|(_, &z)| z > threshold)
        .map(|(i, _)| i)
        .collect();
    CountingVerdict {
        parts,
        threshold,
        contradiction: positions_above.len() > parts,
        positions_above,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditStep {
    pub p_start: usize,
    pub p_end: usize,
    /// Representation of `p_start` from this palindrome's pair.
    pub r_start: Representation,
    /// Representation of `p_end` from this palindrome's pair.
    pub r_end: Representation,
    /// The one position where `z(r_start)` and `z(r_end)` may differ;
    /// `None` for an empty part.
    pub free_position: Option<usize>,
    /// Positions where they actually differ.
    pub z_changed: Vec<usize>,
    /// `max |z|` difference between the previous step's `r_end` and this
    /// step's `r_start`, two representations of the same number.
    pub drift_in: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub cuts: Vec<usize>,
    pub steps: Vec<AuditStep>,
    pub target: Representation,
    /// Drift between the last step's `r_end` and the target.
    pub drift_out: u64,
    pub max_drift: u64,
    pub free_positions: Vec<usize>,
    /// Every step changed `z` only at its free position.
    pub free_changes_only: bool,
    pub verdict: CountingVerdict,
}

/// Replays the digit bookkeeping of the counting argument on a concrete
/// palindromic factorization of `w(0..N]`.
///
/// `target` is the representation of `N` the ledger ends on; the Ostrowski
/// form is used when absent.
pub fn counting_audit(
    family: &mut WordFamily,
    n: u64,
    cuts: &[usize],
    target: Option<&Representation>,
) -> Result<AuditReport> {
    let word = family.characteristic_prefix(n)?.to_vec();
    check_cuts(&word, cuts)?;
    let target = match target {
        Some(t) => {
            if !is_valid(family, t)? || crate::numeration::value(family, t)? != n {
                return Err(Error::InvalidRepresentation(t.to_string()));
            }
            t.clone()
        }
        None => ostrowski(family, n)?,
    };

    let z_gap = |family: &WordFamily, a: &Representation, b: &Representation| -> (u64, Vec<usize>) {
        let (za, zb) = (z_profile(family, a), z_profile(family, b));
        let width = za.len().max(zb.len());
        let at = |z: &[u64], i: usize| z.get(i).copied().unwrap_or(0);
        let changed: Vec<usize> = (0..width).filter(|&i| at(&za, i) != at(&zb, i)).collect();
        let max = (0..width).map(|i| at(&za, i).abs_diff(at(&zb, i))).max().unwrap_or(0);
        (max, changed)
    };

    let mut steps = Vec::new();
    let mut previous_end = Representation::zero();
    for part in cuts.windows(2) {
        let (a, b) = (part[0], part[1]);
        let (r_start, r_end, free_position) = if a == b {
            (previous_end.clone(), previous_end.clone(), None)
        } else {
            let pair = palindrome_repr_pair(family, a, b)?;
            (pair.r1, pair.r2, Some(pair.m))
        };
        let (drift_in, _) = z_gap(family, &previous_end, &r_start);
        let (_, z_changed) = z_gap(family, &r_start, &r_end);
        previous_end = r_end.clone();
        steps.push(AuditStep {
            p_start: a,
            p_end: b,
            r_start,
            r_end,
            free_position,
            z_changed,
            drift_in,
        });
    }
    let (drift_out, _) = z_gap(family, &previous_end, &target);
    let max_drift = steps.iter().map(|s| s.drift_in).chain([drift_out]).max().unwrap_or(0);
    let free_positions: BTreeSet<usize> = steps.iter().filter_map(|s| s.free_position).collect();
    let free_changes_only = steps
        .iter()
        .all(|s| s.z_changed.iter().all(|&i| Some(i) == s.free_position));
    let verdict = counting_bound(family, &target, cuts.len() - 1);
    Ok(AuditReport {
        n,
        cuts: cuts.to_vec(),
        steps,
        target,
        drift_out,
        max_drift,
        free_positions: free_positions.into_iter().collect(),
        free_changes_only,
        verdict,
    })
}

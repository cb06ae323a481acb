//! Unbending `rho_m` and bending `beta_m` on digit vectors, normalization to
//! the Ostrowski form, and the reachability closure.
//!
//! `rho_m`: `(.., k_{m+1}, d_m, k_{m-1}, ..) -> (.., k_{m+1}+1, 0, k_{m-1}-1, ..)`,
//! defined when `k_m = d_m` and `k_{m-1} > 0`. `beta_m` is its inverse, defined
//! when `k_{m+1} > 0` and `k_m = 0`. Both exist only for `m >= 1` and both
//! rest on `s_m^{d_m} s_{m-1} = s_{m+1}`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::{is_ostrowski, is_valid, ostrowski, value, ReprJson, Representation};
use crate::words::WordFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    #[serde(rename = "rho")]
    Unbend,
    #[serde(rename = "beta")]
    Bend,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Unbend => "rho",
            StepKind::Bend => "beta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformStep {
    pub kind: StepKind,
    #[serde(rename = "m")]
    pub position: usize,
}

impl TransformStep {
    pub fn unbend(position: usize) -> Self {
        Self {
            kind: StepKind::Unbend,
            position,
        }
    }

    pub fn bend(position: usize) -> Self {
        Self {
            kind: StepKind::Bend,
            position,
        }
    }

    pub fn apply(&self, family: &WordFamily, r: &Representation) -> Result<Representation> {
        match self.kind {
            StepKind::Unbend => unbend(family, r, self.position),
            StepKind::Bend => bend(family, r, self.position),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            kind: match self.kind {
                StepKind::Unbend => StepKind::Bend,
                StepKind::Bend => StepKind::Unbend,
            },
            position: self.position,
        }
    }
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformTrace {
    pub start: Representation,
    pub steps: Vec<TransformStep>,
    pub end: Representation,
}

impl TransformTrace {
    /// Every intermediate representation, `start` first and `end` last.
    pub fn replay(&self, family: &WordFamily) -> Result<Vec<Representation>> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            let next = step.apply(family, out.last().unwrap())?;
            out.push(next);
        }
        if out.last() != Some(&self.end) {
            return Err(Error::ConstructionFailed(format!(
                "trace replays to {}, recorded end is {}",
                out.last().unwrap(),
                self.end
            )));
        }
        Ok(out)
    }

    /// The trace walked backwards with inverted steps.
    pub fn reversed(&self) -> Self {
        Self {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(TransformStep::inverse).collect(),
            end: self.start.clone(),
        }
    }
}

impl fmt::Display for TransformTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for step in &self.steps {
            write!(f, " {step}")?;
        }
        write!(f, " => {}", self.end)
    }
}

impl TransformTrace {
    /// `1300 -rho_3-> 10200 -beta_1-> ...` with every intermediate state.
    pub fn describe(&self, family: &WordFamily) -> Result<String> {
        let states = self.replay(family)?;
        let mut out = states[0].to_string();
        for (step, state) in self.steps.iter().zip(&states[1..]) {
            out.push_str(&format!(" -{step}-> {state}"));
        }
        Ok(out)
    }
}

/// JSON form `{"start": <repr>, "steps": [{"kind": "rho"|"beta", "m": int}], "end": <repr>}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub start: ReprJson,
    pub steps: Vec<TransformStep>,
    pub end: ReprJson,
}

impl TraceJson {
    pub fn new(family: &WordFamily, trace: &TransformTrace) -> Result<Self> {
        Ok(Self {
            start: ReprJson::new(family, &trace.start)?,
            steps: trace.steps.clone(),
            end: ReprJson::new(family, &trace.end)?,
        })
    }

    pub fn trace(&self) -> TransformTrace {
        TransformTrace {
            start: self.start.representation(),
            steps: self.steps.clone(),
            end: self.end.representation(),
        }
    }
}

/// `rho_m`.
pub fn unbend(family: &WordFamily, r: &Representation, m: usize) -> Result<Representation> {
    if m == 0 || r.digit(m) != family.d(m) || r.digit(m - 1) == 0 {
        return Err(Error::NotApplicable {
            kind: StepKind::Unbend,
            position: m,
        });
    }
    let mut out = r.clone();
    out.set_digit(m + 1, r.digit(m + 1) + 1);
    out.set_digit(m, 0);
    out.set_digit(m - 1, r.digit(m - 1) - 1);
    Ok(out)
}

/// `beta_m`.
pub fn bend(family: &WordFamily, r: &Representation, m: usize) -> Result<Representation> {
    if m == 0 || r.digit(m + 1) == 0 || r.digit(m) != 0 {
        return Err(Error::NotApplicable {
            kind: StepKind::Bend,
            position: m,
        });
    }
    let mut out = r.clone();
    out.set_digit(m + 1, r.digit(m + 1) - 1);
    out.set_digit(m, family.d(m));
    out.set_digit(m - 1, r.digit(m - 1) + 1);
    Ok(out)
}

/// All steps whose preconditions hold on `r`.
pub fn applicable_steps(family: &WordFamily, r: &Representation) -> Vec<TransformStep> {
    let mut out = Vec::new();
    for m in 1..=r.len() {
        if r.digit(m) == family.d(m) && r.digit(m - 1) > 0 {
            out.push(TransformStep::unbend(m));
        }
        if r.digit(m + 1) > 0 && r.digit(m) == 0 {
            out.push(TransformStep::bend(m));
        }
    }
    out
}

/// Drives a valid representation to the Ostrowski one.
///
/// Each round takes the greatest `m` with either `k_m = d_m, k_{m-1} > 0`
/// (apply `rho_m`) or `k_m > d_m`; in the latter case `k_m = d_m + 1`,
/// `m >= 2` and `k_{m-1} = 0` must hold, and `beta_{m-1}` then `rho_m` are
/// applied. The first kind strictly lowers the digit sum without raising the
/// highest over-large position, the second lowers that position.
pub fn normalize(family: &mut WordFamily, r: &Representation) -> Result<TransformTrace> {
    if !is_valid(family, r)? {
        return Err(Error::InvalidRepresentation(r.to_string()));
    }
    let family = &*family;
    let width = r.len() as u64 + 2;
    let cap = 10 * (r.digit_sum() + width).pow(2);

    let mut cur = r.clone();
    let mut steps = Vec::new();
    loop {
        let offending = (0..cur.len()).rev().find(|&m| {
            let k = cur.digit(m);
            let d = family.d(m);
            k > d || (m >= 1 && k == d && cur.digit(m - 1) > 0)
        });
        let Some(m) = offending else { break };
        let k = cur.digit(m);
        let d = family.d(m);
        if k == d {
            cur = unbend(family, &cur, m)?;
            steps.push(TransformStep::unbend(m));
        } else if k == d + 1 && m >= 2 && cur.digit(m - 1) == 0 {
            cur = bend(family, &cur, m - 1)?;
            steps.push(TransformStep::bend(m - 1));
            cur = unbend(family, &cur, m)?;
            steps.push(TransformStep::unbend(m));
        } else {
            return Err(Error::ConstructionFailed(format!(
                "valid representation {cur} has digit {k} > d_{m} + 1 or a non-zero digit below it"
            )));
        }
        if steps.len() as u64 > cap {
            return Err(Error::Nontermination { cap });
        }
    }
    debug_assert!(is_ostrowski(family, &cur));
    Ok(TransformTrace {
        start: r.clone(),
        steps,
        end: cur,
    })
}

pub const DEFAULT_FRONTIER_CAP: usize = 1_000_000;

/// Closure of `r` under every applicable bend and unbend, by breadth-first search.
pub fn reachable_set(family: &mut WordFamily, r: &Representation) -> Result<BTreeSet<Representation>> {
    reachable_set_with_cap(family, r, DEFAULT_FRONTIER_CAP)
}

pub fn reachable_set_with_cap(
    family: &mut WordFamily,
    r: &Representation,
    cap: usize,
) -> Result<BTreeSet<Representation>> {
    if !is_valid(family, r)? {
        return Err(Error::InvalidRepresentation(r.to_string()));
    }
    let parents = bfs(family, r, cap, |_| true, None)?;
    Ok(parents.into_keys().collect())
}

/// Closure of `r` using only steps accepted by `allow`.
pub fn reachable_set_filtered(
    family: &WordFamily,
    r: &Representation,
    cap: usize,
    allow: impl Fn(&TransformStep) -> bool,
) -> Result<BTreeSet<Representation>> {
    Ok(bfs(family, r, cap, allow, None)?.into_keys().collect())
}

/// A shortest step sequence from `from` to `to`, if one exists.
pub fn shortest_trace(
    family: &WordFamily,
    from: &Representation,
    to: &Representation,
    cap: usize,
) -> Result<Option<TransformTrace>> {
    let parents = bfs(family, from, cap, |_| true, Some(to))?;
    if !parents.contains_key(to) {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut cur = to.clone();
    while let Some(Some((prev, step))) = parents.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    Ok(Some(TransformTrace {
        start: from.clone(),
        steps,
        end: to.clone(),
    }))
}

type Parents = HashMap<Representation, Option<(Representation, TransformStep)>>;

fn bfs(
    family: &WordFamily,
    start: &Representation,
    cap: usize,
    allow: impl Fn(&TransformStep) -> bool,
    stop_at: Option<&Representation>,
) -> Result<Parents> {
    let mut parents: Parents = HashMap::new();
    parents.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(cur) = queue.pop_front() {
        if stop_at == Some(&cur) {
            break;
        }
        for step in applicable_steps(family, &cur) {
            if !allow(&step) {
                continue;
            }
            let next = step.apply(family, &cur)?;
            if !parents.contains_key(&next) {
                if parents.len() >= cap {
                    return Err(Error::FrontierCap { cap });
                }
                parents.insert(next.clone(), Some((cur.clone(), step)));
                queue.push_back(next);
            }
        }
    }
    Ok(parents)
}

/// `z_m = min(k_m, |d_m - k_m|)` for every position up to the top digit.
pub fn z_profile(family: &WordFamily, r: &Representation) -> Vec<u64> {
    (0..r.len())
        .map(|m| {
            let k = r.digit(m);
            k.min(k.abs_diff(family.d(m)))
        })
        .collect()
}

/// Largest `|z_m(a) - z_m(b)|` over all positions.
pub fn z_distance(family: &WordFamily, a: &Representation, b: &Representation) -> u64 {
    let (za, zb) = (z_profile(family, a), z_profile(family, b));
    (0..za.len().max(zb.len()))
        .map(|m| {
            let x = za.get(m).copied().unwrap_or(0);
            let y = zb.get(m).copied().unwrap_or(0);
            x.abs_diff(y)
        })
        .max()
        .unwrap_or(0)
}

/// `normalize` followed by a check that the trace lands on the greedy form.
pub fn normalize_checked(family: &mut WordFamily, r: &Representation) -> Result<TransformTrace> {
    let trace = normalize(family, r)?;
    let expected = ostrowski(family, value(family, r)?)?;
    if trace.end != expected {
        return Err(Error::ConstructionFailed(format!(
            "normalization of {r} ended at {}, greedy form is {expected}",
            trace.end
        )));
    }
    Ok(trace)
}

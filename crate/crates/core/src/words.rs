//! Standard words, their lengths, central words and block partitions of the
//! characteristic word.
//!
//! Indexing: `s_{-1} = b`, `s_0 = a`, `s_{n+1} = s_n^{d_n} s_{n-1}`, and
//! `q_n = |s_n|`. Order `-1` only ever appears as "the word before order 0",
//! so the API takes `usize` orders and offers `*_before` accessors for
//! `s_{n-1}` and `q_{n-1}`.
//!
//! Central words follow `c_{n,j} = s_n^j c_n`, i.e. `s_n^{j+1} s_{n-1}` with
//! its last two symbols erased, so `c_{n,0} = c_n`, `c_{0,j} = a^j` and
//! `c_{1,0} = a^{d_0} = c_{0,d_0}`.

use serde::{Deserialize, Serialize};

use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};

/// Default cap on materialized prefix symbols.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const S_MINUS_ONE: &[u8] = b"b";

/// A directive sequence together with its standard-word lengths and a lazily
/// grown prefix of the characteristic word.
///
/// Reads through `&self` never grow the buffer; anything that may need more
/// of the word takes `&mut self`.
#[derive(Debug, Clone)]
pub struct WordFamily {
    directive: DirectiveSequence,
    budget: u64,
    /// `lengths[i] = q_{i-1}`, extended for as long as it fits in `u64`.
    lengths: Vec<u64>,
    /// A prefix of the characteristic word.
    buffer: Vec<u8>,
    /// Largest `n` with `q_n <= buffer.len()`, once the buffer is non-empty.
    level: usize,
}

impl WordFamily {
    pub fn new(directive: DirectiveSequence) -> Self {
        Self::with_budget(directive, DEFAULT_BUDGET)
    }

    pub fn with_budget(directive: DirectiveSequence, budget: u64) -> Self {
        let mut lengths = vec![1u64, 1u64];
        for n in 0.. {
            let q_n = lengths[n + 1];
            let q_prev = lengths[n];
            match directive.d(n).checked_mul(q_n).and_then(|x| x.checked_add(q_prev)) {
                Some(next) => lengths.push(next),
                None => break,
            }
        }
        Self {
            directive,
            budget,
            lengths,
            buffer: Vec::new(),
            level: 0,
        }
    }

    /// Family with standard words materialized through order `depth`.
    pub fn build(directive: DirectiveSequence, depth: usize) -> Result<Self> {
        Self::build_with_budget(directive, depth, DEFAULT_BUDGET)
    }

    pub fn build_with_budget(directive: DirectiveSequence, depth: usize, budget: u64) -> Result<Self> {
        let mut family = Self::with_budget(directive, budget);
        let q = family.q(depth)?;
        family.grow(q)?;
        Ok(family)
    }

    pub fn directive(&self) -> &DirectiveSequence {
        &self.directive
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn d(&self, i: usize) -> u64 {
        self.directive.d(i)
    }

    /// `q_n`.
    pub fn q(&self, n: usize) -> Result<u64> {
        self.lengths.get(n + 1).copied().ok_or(Error::Overflow { what: "q_n" })
    }

    /// `q_{n-1}`.
    pub fn q_before(&self, n: usize) -> u64 {
        self.lengths[n]
    }

    /// Largest order whose length is representable.
    pub fn max_order(&self) -> usize {
        self.lengths.len() - 2
    }

    /// Largest `n` with `q_n <= N`; `None` for `N = 0`.
    pub fn order_at_most(&self, value: u64) -> Option<usize> {
        if value == 0 {
            return None;
        }
        // lengths[1..] = q_0, q_1, ... is strictly increasing.
        let idx = self.lengths[1..].partition_point(|&q| q <= value);
        Some(idx - 1)
    }

    /// Order of the longest fully materialized standard word.
    pub fn depth(&self) -> Option<usize> {
        if self.buffer.is_empty() {
            None
        } else {
            Some(self.level)
        }
    }

    /// The materialized prefix, without growing it.
    pub fn buffer(&self) -> &[u8] {
        &self.buffer
    }

    /// Materializes `w(0..len]`.
    pub fn grow(&mut self, len: u64) -> Result<()> {
        if len <= self.buffer.len() as u64 {
            return Ok(());
        }
        if len > self.budget {
            return Err(Error::BudgetExceeded {
                requested: len,
                budget: self.budget,
            });
        }
        let target = usize::try_from(len).map_err(|_| Error::Overflow { what: "prefix length" })?;
        self.buffer.reserve(target - self.buffer.len());
        if self.buffer.is_empty() {
            self.buffer.push(b'a');
        }
        while self.buffer.len() < target {
            let pos = self.buffer.len();
            while self.q(self.level + 1)? <= pos as u64 {
                self.level += 1;
            }
            // pos lies inside s_{n+1} = s_n^{d_n} s_{n-1}, past its first s_n.
            let n = self.level;
            let q_n = self.q(n)? as usize;
            let periodic_end = self.q(n + 1)? as usize - self.q_before(n) as usize;
            if pos < periodic_end {
                let take = q_n.min(periodic_end - pos).min(target - pos);
                self.buffer.extend_from_within(pos - q_n..pos - q_n + take);
            } else if n == 0 {
                self.buffer.push(b'b');
            } else {
                let offset = pos - periodic_end;
                let take = (self.q_before(n) as usize - offset).min(target - pos);
                self.buffer.extend_from_within(offset..offset + take);
            }
        }
        while self.q(self.level + 1).is_ok_and(|q| q <= self.buffer.len() as u64) {
            self.level += 1;
        }
        Ok(())
    }

    /// `w(0..len]`.
    pub fn characteristic_prefix(&mut self, len: u64) -> Result<&[u8]> {
        self.grow(len)?;
        Ok(&self.buffer[..len as usize])
    }

    /// `w(from..to]`, growing the buffer as needed.
    pub fn factor(&mut self, from: usize, to: usize) -> Result<&[u8]> {
        self.grow(to as u64)?;
        Ok(&self.buffer[from..to])
    }

    /// `s_n`.
    pub fn standard(&mut self, n: usize) -> Result<&[u8]> {
        let q = self.q(n)?;
        self.characteristic_prefix(q)
    }

    /// `s_{n-1}`; for `n = 0` this is `b`.
    pub fn standard_before(&mut self, n: usize) -> Result<&[u8]> {
        if n == 0 {
            Ok(S_MINUS_ONE)
        } else {
            self.standard(n - 1)
        }
    }

    /// `s_{-1}, s_0, ..., s_depth` for the materialized depth.
    pub fn standards(&self) -> Vec<&[u8]> {
        let mut out = vec![S_MINUS_ONE];
        if let Some(depth) = self.depth() {
            out.extend((0..=depth).map(|n| &self.buffer[..self.lengths[n + 1] as usize]));
        }
        out
    }

    /// `q_{-1}, q_0, ..., q_depth` for the materialized depth.
    pub fn standard_lengths(&self) -> Vec<u64> {
        let top = self.depth().map_or(1, |d| d + 2);
        self.lengths[..top].to_vec()
    }

    /// Length of `c_{n,j}`.
    pub fn central_len(&self, n: usize, j: u64) -> Result<u64> {
        let q = self.q(n)?;
        (j + 1)
            .checked_mul(q)
            .and_then(|x| x.checked_add(self.q_before(n)))
            .map(|x| x - 2)
            .ok_or(Error::Overflow {
                what: "central word length",
            })
    }

    /// `c_{n,j}`: `s_n^{j+1} s_{n-1}` with the last two symbols erased.
    pub fn central_word(&mut self, n: usize, j: u64) -> Result<Vec<u8>> {
        let len = self.central_len(n, j)?;
        if len > self.budget {
            return Err(Error::BudgetExceeded {
                requested: len,
                budget: self.budget,
            });
        }
        let q = self.q(n)? as usize;
        let mut out = Vec::with_capacity(len as usize + 2);
        let s_n = self.standard(n)?.to_vec();
        for _ in 0..=j {
            out.extend_from_slice(&s_n);
        }
        out.extend_from_slice(self.standard_before(n)?);
        out.truncate(out.len() - 2);
        debug_assert_eq!(out.len() as u64, len);
        debug_assert!(q > 0);
        Ok(out)
    }

    /// The `m`-partition of `w(0..prefix_length]` into blocks `s_m` and `s_{m-1}`.
    ///
    /// The block sequence of the `m`-partition, read with `s_m -> a` and
    /// `s_{m-1} -> b`, is the characteristic word of `(d_m, d_{m+1}, ...)`.
    pub fn n_partition(&mut self, m: usize, prefix_length: usize) -> Result<BlockPartition> {
        let big = self.q(m)? as usize;
        let small = self.q_before(m) as usize;
        let mut tags = WordFamily::with_budget(self.directive.shifted(m), self.budget);
        let max_blocks = (prefix_length / small.min(big)) as u64 + 1;
        let tag_word = tags.characteristic_prefix(max_blocks)?;

        let mut blocks = Vec::new();
        let mut covered = 0usize;
        for &t in tag_word {
            if covered >= prefix_length {
                break;
            }
            let block = if t == b'a' { Block::Big } else { Block::Small };
            covered += if block == Block::Big { big } else { small };
            blocks.push(block);
        }
        if covered != prefix_length {
            return Err(Error::NotABoundary {
                order: m,
                length: prefix_length,
            });
        }
        Ok(BlockPartition {
            order: m,
            blocks,
            covered_length: covered,
        })
    }

    /// Exponents `k_i` (indexed by absolute position, zero below `m`) with
    /// `w(0..r] = s_n^{k_n} ... s_m^{k_m}`, given that `s_m` occurs at `r`.
    ///
    /// Trailing `s_m` blocks of the `m`-partition are peeled off; the block
    /// before them is an `s_{m-1}` closing an `s_{m+1}`, so the remainder is
    /// re-partitioned at order `m + 1`, and so on.
    pub fn decompose_prefix_at_occurrence(&mut self, r: usize, m: usize) -> Result<Vec<u64>> {
        let q_m = self.q(m)? as usize;
        self.grow((r + q_m) as u64)?;
        if self.buffer[r..r + q_m] != self.buffer[..q_m] {
            return Err(Error::NotAnOccurrence { position: r, order: m });
        }
        let mut exponents = vec![0u64; m];
        let mut rest = r;
        let mut level = m;
        while rest > 0 {
            let partition = self.n_partition(level, rest).map_err(|e| match e {
                Error::NotABoundary { order, length } => Error::ConstructionFailed(format!(
                    "prefix of length {length} does not end on an order-{order} block boundary"
                )),
                other => other,
            })?;
            let k = partition.trailing_big();
            exponents.push(k as u64);
            rest -= k * self.q(level)? as usize;
            level += 1;
        }
        if exponents.len() == m {
            exponents.push(0);
        }
        Ok(exponents)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    /// `s_m`
    Big,
    /// `s_{m-1}`
    Small,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub order: usize,
    pub blocks: Vec<Block>,
    pub covered_length: usize,
}

impl BlockPartition {
    fn trailing_big(&self) -> usize {
        self.blocks.iter().rev().take_while(|&&b| b == Block::Big).count()
    }

    /// Concatenation of the blocks.
    pub fn concat(&self, family: &mut WordFamily) -> Result<Vec<u8>> {
        let big = family.standard(self.order)?.to_vec();
        let small = family.standard_before(self.order)?.to_vec();
        let mut out = Vec::with_capacity(self.covered_length);
        for b in &self.blocks {
            out.extend_from_slice(if *b == Block::Big { &big } else { &small });
        }
        Ok(out)
    }
}

pub fn is_palindrome(word: &[u8]) -> bool {
    word.iter().eq(word.iter().rev())
}

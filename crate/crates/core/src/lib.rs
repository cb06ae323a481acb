//! Extended Ostrowski numeration on characteristic Sturmian words.
//!
//! A directive sequence `(d_i)` fixes the standard words
//! `s_{n+1} = s_n^{d_n} s_{n-1}` and their limit, the characteristic word `w`.
//! A digit vector `(k_i)` is a *valid* representation of `N = sum k_i q_i`
//! when `s_n^{k_n} ... s_0^{k_0}` spells `w(0..N]`. The crate provides:
//!
//! - [`words`]: standard and central words, prefixes of `w`, block partitions;
//! - [`numeration`]: Ostrowski, legal and valid representations;
//! - [`transforms`]: the bending/unbending rewrites and normalization;
//! - [`palindromes`]: palindrome occurrences and their representation pairs;
//! - [`pal_length`]: palindromic length engines and unboundedness witnesses.

pub mod directive;
pub mod error;
pub mod numeration;
pub mod pal_length;
pub mod palindromes;
pub mod transforms;
pub mod words;

pub use directive::DirectiveSequence;
pub use error::{Error, Result};
pub use numeration::{
    enumerate_valid, enumerate_valid_with, is_legal, is_ostrowski, is_valid, ostrowski, value, EnumerationOptions,
    ReprJson, Representation,
};
pub use pal_length::{
    build_witness, counting_audit, counting_bound, pal_length_fast, pal_length_oracle, verify_witness,
    FactorizationResult, WitnessReport, WitnessSpec,
};
pub use palindromes::{
    classify_central, maximal_extension, palindrome_repr_pair, CentralLabel, PalindromeOccurrence, ReprPair,
};
pub use transforms::{bend, normalize, reachable_set, unbend, z_profile, StepKind, TransformStep, TransformTrace};
pub use words::{Block, BlockPartition, WordFamily, DEFAULT_BUDGET};

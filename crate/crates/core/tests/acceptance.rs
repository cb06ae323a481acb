//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use sturmian::numeration::{enumerate_valid_with, EnumerationOptions};
use sturmian::pal_length::{build_witness, check_cuts, verify_witness};
use sturmian::palindromes::{palindrome_occurrences, palindrome_repr_pair};
use sturmian::transforms::{z_distance, TransformStep};
use sturmian::{
    enumerate_valid, is_legal, is_ostrowski, is_valid, normalize, ostrowski, pal_length_fast, pal_length_oracle,
    reachable_set, value, DirectiveSequence, Representation, WordFamily,
};

use common::{family, standard_families};

type Outcome = Result<String, String>;

fn r(s: &str) -> Representation {
    s.parse().unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn worked_examples() -> Outcome {
    let started = Instant::now();
    let mut f = family("fib");
    let e = |x: sturmian::Error| x.to_string();

    ensure(ostrowski(&f, 14).map_err(e)? == r("100001"), || {
        "14 is not 100001".into()
    })?;
    ensure(ostrowski(&f, 12).map_err(e)? == r("10101"), || "12 is not 10101".into())?;
    ensure(ostrowski(&f, 13).map_err(e)? == r("100000"), || {
        "13 is not 100000".into()
    })?;

    let chain = r("1300");
    ensure(value(&f, &chain).map_err(e)? == 14, || "1300 does not denote 14".into())?;
    ensure(is_valid(&mut f, &chain).map_err(e)?, || "1300 is not valid".into())?;
    ensure(!is_legal(&f, &chain), || "1300 is legal".into())?;

    let trace = normalize(&mut f, &chain).map_err(e)?;
    let states = trace.replay(&f).map_err(e)?;
    let expected: Vec<Representation> = ["1300", "10200", "10111", "11001", "100001"]
        .iter()
        .map(|s| r(s))
        .collect();
    ensure(states == expected, || {
        format!("chain {}", trace.describe(&f).unwrap_or_default())
    })?;
    let back = trace.reversed().replay(&f).map_err(e)?;
    let mut reversed = expected.clone();
    reversed.reverse();
    ensure(back == reversed, || "reversed chain does not replay".into())?;

    let pair = palindrome_repr_pair(&mut f, 12, 13).map_err(e)?;
    ensure(pair.r1 == r("1201") && pair.r2 == r("1210") && pair.m == 1, || {
        format!("pair for w(12..13] is ({}, {}, m={})", pair.r1, pair.r2, pair.m)
    })?;
    let nine = enumerate_valid(&mut f, 9).map_err(e)?;
    ensure(nine.contains(&r("1012")) && nine.contains(&r("1101")), || {
        "9 lacks 1012 or 1101".into()
    })?;

    within(started.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.2?}", started.elapsed()))
}

/// Every digit vector over positions `0..top` with `k_i <= d_i` and value below `limit`.
fn legal_below(f: &WordFamily, top: usize, limit: u64) -> Vec<Representation> {
    let mut out = Vec::new();
    let mut digits = vec![0u64; top];
    fn go(f: &WordFamily, i: usize, acc: u64, limit: u64, digits: &mut Vec<u64>, out: &mut Vec<Representation>) {
        if i == digits.len() {
            out.push(Representation::from_lsf(digits.clone()));
            return;
        }
        let q = f.q(i).unwrap();
        for k in 0..=f.d(i) {
            let v = acc + k * q;
            if v >= limit {
                break;
            }
            digits[i] = k;
            go(f, i + 1, v, limit, digits, out);
        }
        digits[i] = 0;
    }
    go(f, 0, 0, limit, &mut digits, &mut out);
    out
}

fn legal_implies_valid() -> Outcome {
    let started = Instant::now();
    let mut checked = 0usize;
    for mut f in standard_families() {
        let q6 = f.q(6).map_err(|e| e.to_string())?;
        for rep in legal_below(&f, 6, q6) {
            checked += 1;
            let valid = is_valid(&mut f, &rep).map_err(|e| e.to_string())?;
            ensure(valid, || format!("{} legal but not valid for {}", rep, f.directive()))?;
        }
    }
    within(started.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{checked} legal representations, {:.2?}", started.elapsed()))
}

/// Criteria 3, 4 and 5 share one enumeration pass.
struct EnumerationRun {
    completeness: Outcome,
    normalization: Outcome,
    z_stability: Outcome,
}

fn enumeration_run() -> EnumerationRun {
    let started = Instant::now();
    let mut sets = 0usize;
    let mut members = 0usize;
    let mut steps = 0usize;
    let mut max_z = 0u64;
    let mut completeness = Ok(());
    let mut normalization = Ok(());
    let mut z_stability = Ok(());

    'families: for mut f in standard_families() {
        for n in 0..=400u64 {
            let e = |x: sturmian::Error| x.to_string();
            let base = enumerate_valid_with(&mut f, n, EnumerationOptions::default()).map_err(e);
            let loose = enumerate_valid_with(
                &mut f,
                n,
                EnumerationOptions {
                    slack: 1,
                    ..EnumerationOptions::default()
                },
            )
            .map_err(e);
            let o = ostrowski(&f, n).map_err(e);
            let (base, loose, o) = match (base, loose, o) {
                (Ok(b), Ok(l), Ok(o)) => (b, l, o),
                (b, l, o) => {
                    completeness = Err(format!(
                        "N={n}: {:?}",
                        b.err().or(l.err()).or(o.err()).unwrap_or_default()
                    ));
                    break 'families;
                }
            };
            let reach = match reachable_set(&mut f, &o) {
                Ok(s) => s,
                Err(x) => {
                    completeness = Err(format!("N={n}: {x}"));
                    break 'families;
                }
            };
            sets += 1;
            members += base.len();
            if completeness.is_ok() && base != loose {
                completeness = Err(format!(
                    "{} N={n}: a valid representation exceeds the digit bounds",
                    f.directive()
                ));
            }
            if completeness.is_ok() && base != reach {
                completeness = Err(format!(
                    "{} N={n}: enumeration differs from the reachable set",
                    f.directive()
                ));
            }

            for rep in &base {
                match normalize(&mut f, rep) {
                    Ok(t) if t.end == o && is_ostrowski(&f, &t.end) => steps = steps.max(t.steps.len()),
                    Ok(t) if normalization.is_ok() => {
                        normalization = Err(format!("{} N={n}: {} normalizes to {}", f.directive(), rep, t.end))
                    }
                    Err(x) if normalization.is_ok() => {
                        normalization = Err(format!("{} N={n}: {rep}: {x}", f.directive()))
                    }
                    _ => {}
                }
            }

            let all: Vec<&Representation> = base.iter().collect();
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    let z = z_distance(&f, a, b);
                    max_z = max_z.max(z);
                    if z > 3 && z_stability.is_ok() {
                        z_stability = Err(format!("{} N={n}: {a} vs {b} differ by {z}", f.directive()));
                    }
                }
            }
        }
    }

    let elapsed = started.elapsed();
    let completeness = completeness
        .and_then(|()| within(elapsed, Duration::from_secs(60)))
        .map(|()| format!("{sets} sets, {members} representations, {elapsed:.2?}"));
    let normalization = normalization.map(|()| format!("{members} traces, longest {steps} steps"));

    // 140000 and 1011221 denote the same N; digit 4 drops from 4 to 1. With
    // d_4 = 5 both have z_4 = 1, so the z gap of 3 needs d_4 >= 8.
    let z_stability = z_stability.and_then(|()| {
        let e = |x: sturmian::Error| x.to_string();
        let (a, b) = (r("140000"), r("1011221"));
        let mut gaps = Vec::new();
        for d4 in [5u64, 8] {
            let mut f = WordFamily::new(DirectiveSequence::finite(vec![1, 1, 1, 1, d4, 1]).map_err(e)?);
            let (va, vb) = (value(&f, &a).map_err(e)?, value(&f, &b).map_err(e)?);
            ensure(va == vb, || format!("d_4={d4}: values differ: {va} vs {vb}"))?;
            ensure(is_valid(&mut f, &a).map_err(e)?, || {
                format!("d_4={d4}: 140000 is not valid")
            })?;
            ensure(is_valid(&mut f, &b).map_err(e)?, || {
                format!("d_4={d4}: 1011221 is not valid")
            })?;
            let digit_gap = a.digit(4).abs_diff(b.digit(4));
            ensure(digit_gap == 3, || format!("d_4={d4}: digit 4 changes by {digit_gap}"))?;
            let steps = [
                TransformStep::unbend(5),
                TransformStep::bend(3),
                TransformStep::bend(1),
                TransformStep::bend(2),
                TransformStep::bend(3),
            ];
            let mut cur = a.clone();
            for step in &steps {
                cur = step.apply(&f, &cur).map_err(e)?;
            }
            ensure(cur == b, || format!("d_4={d4}: chain ends at {cur}"))?;
            gaps.push((d4, va, z_distance(&f, &a, &b)));
        }
        let (_, n8, z8) = gaps[1];
        ensure(z8 == 3, || format!("d_4=8: z gap {z8}, expected 3"))?;
        Ok(format!(
            "max z gap over sets {max_z}; digit 4 moves by 3 at N={} (d_4=5, z gap {}); z gap 3 at N={n8} (d_4=8)",
            gaps[0].1, gaps[0].2
        ))
    });

    EnumerationRun {
        completeness,
        normalization,
        z_stability,
    }
}

fn palindrome_pairs() -> Outcome {
    let started = Instant::now();
    let mut count = 0usize;
    for text in ["fib", "(2,3,1,4)"] {
        let mut f = family(text);
        let occurrences = palindrome_occurrences(&mut f, 300).map_err(|e| e.to_string())?;
        for (p1, p2) in occurrences {
            let pair = palindrome_repr_pair(&mut f, p1, p2).map_err(|e| format!("{text} w({p1}..{p2}]: {e}"))?;
            pair.verify(&mut f, p1, p2)
                .map_err(|e| format!("{text} w({p1}..{p2}]: {e}"))?;
            count += 1;
        }
    }
    within(started.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{count} occurrences, {:.2?}", started.elapsed()))
}

fn engine_equivalence() -> Outcome {
    let started = Instant::now();
    let compare = |word: &[u8], label: &dyn Fn() -> String| -> Result<(), String> {
        let fast = pal_length_fast(word).map_err(|e| e.to_string())?;
        let oracle = pal_length_oracle(word).map_err(|e| e.to_string())?;
        ensure(fast.pal_len == oracle.pal_len, || {
            format!("{}: fast {} vs oracle {}", label(), fast.pal_len, oracle.pal_len)
        })?;
        check_cuts(word, &fast.witness_cuts).map_err(|e| format!("{}: {e}", label()))?;
        ensure(fast.witness_cuts.len() == fast.pal_len + 1, || {
            format!("{}: cut count", label())
        })
    };

    let mut words = 0usize;
    let mut word = Vec::with_capacity(14);
    for len in 0..=14usize {
        for bits in 0u32..1 << len {
            word.clear();
            word.extend((0..len).map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' }));
            compare(&word, &|| String::from_utf8_lossy(&word).into_owned())?;
            words += 1;
        }
    }
    for text in ["fib", "(2,1)", "(3)", "1,4,(2,5)", "8,8,(1)"] {
        let mut f = family(text);
        for len in [100u64, 500, 2000] {
            let w = f.characteristic_prefix(len).map_err(|e| e.to_string())?.to_vec();
            compare(&w, &|| format!("{text} prefix {len}"))?;
            words += 1;
        }
    }
    Ok(format!("{words} words, {:.2?}", started.elapsed()))
}

fn witnesses() -> Outcome {
    let started = Instant::now();
    let mut lines = Vec::new();
    for (text, q, n) in [("8,8,(1)", 1u64, 40u64), ("(14)", 2, 7 * (1 + 15 + 211))] {
        let mut f = family(text);
        let spec = build_witness(&f, q).map_err(|e| e.to_string())?;
        ensure(spec.n == n, || format!("{text}: N = {}, expected {n}", spec.n))?;
        let report = verify_witness(&mut f, &spec).map_err(|e| e.to_string())?;
        ensure(report.pal_len as u64 > q, || {
            format!("{text}: pal_len {}", report.pal_len)
        })?;
        if n == 40 {
            ensure(report.oracle_pal_len == Some(report.pal_len), || {
                "oracle disagrees at N = 40".into()
            })?;
        }
        lines.push(format!("Q={q} N={n} pal_len={}", report.pal_len));
    }
    within(started.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{}, {:.2?}", lines.join("; "), started.elapsed()))
}

fn performance() -> Outcome {
    let mut f = family("fib");
    let started = Instant::now();
    f.characteristic_prefix(10_000_000).map_err(|e| e.to_string())?;
    let prefix_time = started.elapsed();
    within(prefix_time, Duration::from_secs(2)).map_err(|e| format!("10^7 prefix {e}"))?;

    let mut g = family("1,2,(3,1)");
    let w = g.characteristic_prefix(1_000_000).map_err(|e| e.to_string())?.to_vec();
    let started = Instant::now();
    let result = pal_length_fast(&w).map_err(|e| e.to_string())?;
    let fast_time = started.elapsed();
    within(fast_time, Duration::from_secs(5)).map_err(|e| format!("10^6 fast engine {e}"))?;
    Ok(format!(
        "10^7 prefix {prefix_time:.2?}, 10^6 pal_len {} in {fast_time:.2?}",
        result.pal_len
    ))
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "worked examples", worked_examples()),
        (2, "legal implies valid", legal_implies_valid()),
    ];
    let run = enumeration_run();
    results.push((3, "digit bounds and completeness", run.completeness));
    results.push((4, "normalization reaches Ostrowski", run.normalization));
    results.push((5, "z-stability", run.z_stability));
    results.push((6, "palindrome representation pairs", palindrome_pairs()));
    results.push((7, "palindromic length engines agree", engine_equivalence()));
    results.push((8, "witnesses", witnesses()));
    results.push((9, "performance", performance()));

    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

mod common;

use sturmian::transforms::{reachable_set_filtered, DEFAULT_FRONTIER_CAP};
use sturmian::{enumerate_valid, WordFamily};

use common::{family, standard_families};

/// Transforms below `m` never lower digit `m` by more than one once
/// `k_m >= 2` and `k_{m-1} >= 1`.
#[test]
fn lower_transforms_cost_at_most_one() {
    let mut checked = 0usize;
    for mut f in standard_families().into_iter().take(8) {
        for n in 0..=300u64 {
            for r in enumerate_valid(&mut f, n).unwrap() {
                for m in 1..r.len() {
                    let k = r.digit(m);
                    if k < 2 || r.digit(m - 1) < 1 {
                        continue;
                    }
                    let reach = reachable_set_filtered(&f, &r, DEFAULT_FRONTIER_CAP, |s| s.position < m).unwrap();
                    for b in &reach {
                        assert!(b.digit(m) + 1 >= k, "{}: {r} -> {b} at m = {m}", f.directive());
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} cases");
}

fn three_bound(f: &mut WordFamily, max_n: u64) -> usize {
    let mut pairs = 0;
    for n in 0..=max_n {
        let set: Vec<_> = enumerate_valid(f, n).unwrap().into_iter().collect();
        for a in &set {
            for m in 0..a.len() {
                let (k, d) = (a.digit(m), f.d(m));
                if k < 4 || k + 4 > d {
                    continue;
                }
                for b in &set {
                    assert!(b.digit(m).abs_diff(k) <= 3, "{}: N = {n}, {a} vs {b} at m = {m}", f.directive());
                    pairs += 1;
                }
            }
        }
    }
    pairs
}

/// A digit with `4 <= k_m <= d_m - 4` moves by at most 3 across representations.
#[test]
fn interior_digits_move_at_most_three() {
    let mut pairs = 0;
    for (text, max_n) in [("(1,9)", 1500), ("(2,8,1)", 1500), ("9,(1,10)", 1500), ("1,1,1,1,9,(1)", 400)] {
        pairs += three_bound(&mut family(text), max_n);
    }
    assert!(pairs > 100, "only {pairs} pairs");
}

#![allow(dead_code)]

use genmaj::random::{random_instance, InstanceShape};
use genmaj::{Instance, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All nonincreasing sequences of length `len` with entries in `[lo, hi]`.
pub fn partitions(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, lo: i64, cap: i64, buf: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if buf.len() == len {
            out.push(buf.clone());
            return;
        }
        for v in (lo..=cap).rev() {
            buf.push(v);
            go(len, lo, v, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(len, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Every valid instance with `m, n` in {1, 2}, `s, k` in {0, 1, 2}, entries
/// in {0..3}, `c` and `d` value-disjoint.
pub fn sweep_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for m in 1..=2usize {
        for n in 1..=2usize {
            for s in 0..=2usize {
                let Some(k) = (m + s).checked_sub(n).filter(|&k| k <= 2) else {
                    continue;
                };
                for d in partitions(m, 0, 3) {
                    for c in partitions(n, 0, 3) {
                        if c.iter().any(|v| d.contains(v)) {
                            continue;
                        }
                        for a in partitions(s, 0, 3) {
                            for b in partitions(k, 0, 3) {
                                out.push(
                                    Instance::from_vecs(a.clone(), b.clone(), c.clone(), d.clone())
                                        .expect("sweep instance is valid"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Seeded random instances with lengths up to 5 and entries in [-3, 6].
pub fn random_population(count: usize, seed: u64) -> Vec<Instance> {
    let shape = InstanceShape {
        max_len: 5,
        min_val: -3,
        max_val: 6,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_instance(&mut rng, shape).expect("shape admits instances"))
        .collect()
}

pub fn p(v: &[i64]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

pub fn inst(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Instance {
    Instance::from_vecs(a.to_vec(), b.to_vec(), c.to_vec(), d.to_vec()).unwrap()
}

// Literal re-evaluation of the majorization conditions, written from the
// definitions without the library's sentinel machinery.

/// `d_i` for 1-based `i`, with `None` meaning -inf past the end; callers
/// never ask for `i <= 0` except through `pivot`.
fn d_at(d: &[i64], i: i64) -> Option<i64> {
    if i >= 1 && (i as usize) <= d.len() {
        Some(d[i as usize - 1])
    } else {
        None
    }
}

/// `h_j = min { i : d_{i-j+1} < g_i }`.
pub fn pivot(g: &[i64], d: &[i64], j: usize) -> usize {
    for i in 1..=g.len() {
        let idx = i as i64 - j as i64 + 1;
        if idx <= 0 {
            continue; // +inf is never below g_i
        }
        match d_at(d, idx) {
            None => return i,
            Some(v) if v < g[i - 1] => return i,
            _ => {}
        }
    }
    g.len() + 1
}

fn sum(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// `d_i >= g_{i+s}` for every `i`.
pub fn interlacing(g: &[i64], d: &[i64], s: usize) -> bool {
    (0..d.len()).all(|i| i + s >= g.len() || d[i] >= g[i + s])
}

/// `sum_{i <= h_j} g_i - sum_{i <= h_j - j} d_i <= sum_{i <= j} a_i`.
pub fn prefix_bound(g: &[i64], d: &[i64], a: &[i64]) -> bool {
    (1..=a.len()).all(|j| {
        let h = pivot(g, d, j);
        let gs = sum(&g[..h.min(g.len())]);
        let ds = sum(&d[..(h - j).min(d.len())]);
        gs - ds <= sum(&a[..j])
    })
}

/// `sum_{i > h_j} g_i >= sum_{i >= h_j - j + 1} d_i + sum_{i >= j + 1} a_i`.
pub fn tail_bound(g: &[i64], d: &[i64], a: &[i64]) -> bool {
    (1..=a.len()).all(|j| {
        let h = pivot(g, d, j);
        let gs = sum(&g[h.min(g.len())..]);
        let ds = sum(&d[(h - j).min(d.len())..]);
        gs >= ds + sum(&a[j..])
    })
}

pub fn literal_exact(g: &[i64], d: &[i64], a: &[i64]) -> bool {
    interlacing(g, d, a.len()) && sum(g) == sum(d) + sum(a) && prefix_bound(g, d, a)
}

pub fn literal_weak(g: &[i64], d: &[i64], a: &[i64]) -> bool {
    interlacing(g, d, a.len()) && sum(g) >= sum(d) + sum(a) && tail_bound(g, d, a)
}

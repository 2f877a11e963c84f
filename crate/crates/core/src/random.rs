use crate::instance::Instance;
use crate::partition::Partition;
use rand::Rng;

/// Shape and value range of random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    /// Upper bound for each of `m, n, s, k` (`m, n >= 1`).
    pub max_len: usize,
    pub min_val: i64,
    pub max_val: i64,
}

fn random_partition<R: Rng>(rng: &mut R, len: usize, lo: i64, hi: i64) -> Partition {
    Partition::from_multiset((0..len).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Draws a valid instance; `c` avoids every value of `d`.
///
/// Returns `None` when the shape admits no instance (a value range of one
/// element, or `max_len == 0`).
pub fn random_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> Option<Instance> {
    let InstanceShape {
        max_len,
        min_val,
        max_val,
    } = shape;
    if max_len == 0 || min_val >= max_val {
        return None;
    }
    loop {
        let m = rng.gen_range(1..=max_len);
        let n = rng.gen_range(1..=max_len);
        let s = rng.gen_range(0..=max_len);
        let Some(k) = (m + s).checked_sub(n).filter(|&k| k <= max_len) else {
            continue;
        };
        let d = random_partition(rng, m, min_val, max_val);
        let free: Vec<i64> = (min_val..=max_val)
            .filter(|v| !d.as_slice().contains(v))
            .collect();
        if free.is_empty() {
            continue;
        }
        let c =
            Partition::from_multiset((0..n).map(|_| free[rng.gen_range(0..free.len())]).collect());
        let a = random_partition(rng, s, min_val, max_val);
        let b = random_partition(rng, k, min_val, max_val);
        return Some(Instance::new(a, b, c, d).expect("generated instance is valid"));
    }
}

//! Exact prime counting by a segmented, odd-only sieve of Eratosthenes.

use crate::error::{Error, Result};

pub const PRIME_COUNT_LIMIT: f64 = 1e7;

const SEGMENT: usize = 1 << 15;

/// π(x), the number of primes ≤ x, for 0 ≤ x ≤ 10⁷.
pub fn prime_count(x: f64) -> Result<u64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "prime_count needs x >= 0, got {x}"
        )));
    }
    if x > PRIME_COUNT_LIMIT {
        return Err(Error::RangeTooLarge {
            x,
            max: PRIME_COUNT_LIMIT,
        });
    }
    Ok(count_primes_upto(x.floor() as u64))
}

fn count_primes_upto(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let root = (n as f64).sqrt() as u64 + 1;
    let base = small_odd_primes(root);

    // Odd numbers 3, 5, 7, ... are indexed by (m - 3) / 2.
    let mut count = 1; // the prime 2
    let mut low = 3;
    let mut marks = vec![false; SEGMENT];
    while low <= n {
        let high = (low + 2 * SEGMENT as u64 - 2).min(n);
        let len = ((high - low) / 2 + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = (p * p).max(low.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut m = start;
            while m <= high {
                marks[((m - low) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        count += marks[..len].iter().filter(|&&composite| !composite).count() as u64;
        low = high + 2;
    }
    count
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 3..=limit {
        if i % 2 == 1 && !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

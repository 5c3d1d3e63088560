//! Von Mangoldt sieve and prime lookup.
//!
//! All arithmetic is exact integer arithmetic: primes come from an
//! odd-only Eratosthenes bitset, prime powers from repeated multiplication.

use crate::error::{Error, Result};

/// Hard cap on sieve sizes; beyond this the table itself becomes the problem.
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// One prime power `n = p^m` with weight `Lambda(n) = ln p` (nats).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MangoldtEntry {
    pub n: u64,
    pub weight: f64,
}

/// All prime powers up to `limit` with their von Mangoldt weights,
/// strictly ascending in `n`. Entries with `Lambda(n) = 0` are not stored.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    limit: u64,
    entries: Vec<MangoldtEntry>,
}

impl MangoldtTable {
    /// Sieve all prime powers up to `limit`. A limit below 2 yields an
    /// empty table (there is no prime power <= 1).
    pub fn sieve(limit: u64) -> MangoldtTable {
        if limit < 2 {
            return MangoldtTable {
                limit,
                entries: Vec::new(),
            };
        }
        assert!(
            limit <= MAX_SIEVE_LIMIT,
            "sieve limit {limit} exceeds MAX_SIEVE_LIMIT {MAX_SIEVE_LIMIT}"
        );
        let mut entries = Vec::new();
        for p in primes_up_to(limit) {
            let weight = (p as f64).ln();
            let mut n = p;
            loop {
                entries.push(MangoldtEntry { n, weight });
                match n.checked_mul(p) {
                    Some(next) if next <= limit => n = next,
                    _ => break,
                }
            }
        }
        entries.sort_unstable_by_key(|e| e.n);
        MangoldtTable { limit, entries }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[MangoldtEntry] {
        &self.entries
    }

    /// Chebyshev psi(x): sum of weights over prime powers n <= x.
    pub fn chebyshev_psi(&self, x: f64) -> f64 {
        self.entries
            .iter()
            .take_while(|e| (e.n as f64) <= x)
            .map(|e| e.weight)
            .sum()
    }

    /// Error unless the table covers prime powers up to `needed`.
    pub fn require_limit(&self, needed: u64) -> Result<()> {
        if self.limit < needed {
            Err(Error::SieveCapacity {
                needed,
                available: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// The n-th prime (1-based: `nth_prime(1) == 2`).
pub fn nth_prime(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("prime index must be >= 1".into()));
    }
    // Rosser-type upper bound p_n < n(ln n + ln ln n) for n >= 6.
    let bound = if n < 6 {
        14
    } else {
        let x = n as f64;
        (x * (x.ln() + x.ln().ln())).ceil() as u64 + 16
    };
    if bound > MAX_SIEVE_LIMIT {
        return Err(Error::SieveCapacity {
            needed: bound,
            available: MAX_SIEVE_LIMIT,
        });
    }
    let mut count = 0usize;
    for p in primes_up_to(bound) {
        count += 1;
        if count == n {
            return Ok(p);
        }
    }
    unreachable!("prime bound {bound} did not cover p_{n}");
}

/// Odd-only Eratosthenes bitset; returns the primes <= limit ascending.
fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // Bit i represents the odd number 2i + 1; index 0 (the number 1) unused.
    let half = ((limit - 1) / 2) as usize + 1;
    let mut composite = vec![0u64; half / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    let mut p = 3u64;
    while p * p <= limit {
        if !is_set(&composite, (p / 2) as usize) {
            let mut m = p * p;
            while m <= limit {
                let i = (m / 2) as usize;
                composite[i / 64] |= 1 << (i % 64);
                m += 2 * p;
            }
        }
        p += 2;
    }
    let mut primes = vec![2];
    let mut q = 3u64;
    while q <= limit {
        if !is_set(&composite, (q / 2) as usize) {
            primes.push(q);
        }
        q += 2;
    }
    primes
}

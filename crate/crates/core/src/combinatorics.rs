//! Binomial coefficients, factorials and Stirling numbers over big integers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// C(n, k) for non-negative `n`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial m(m-1)...(m-j+1)/j!, valid for negative `m`.
pub fn binomial_signed(m: &BigInt, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        // Running product divided by (i+1)! stays integral at every step.
        acc = acc * (m - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_i64(m: i64, j: usize) -> BigInt {
    binomial_signed(&BigInt::from(m), j)
}

pub fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[derive(Default)]
struct StirlingTable {
    // first[n][k] = s(n, k), signed; second[n][k] = S(n, k)
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    fn extend_to(&mut self, n: usize) {
        while self.first.len() <= n {
            let m = self.first.len();
            if m == 0 {
                self.first.push(vec![BigInt::one()]);
                self.second.push(vec![BigInt::one()]);
                continue;
            }
            let prev1 = &self.first[m - 1];
            let prev2 = &self.second[m - 1];
            let at = |row: &Vec<BigInt>, k: usize| row.get(k).cloned().unwrap_or_default();
            let mut row1 = vec![BigInt::zero(); m + 1];
            let mut row2 = vec![BigInt::zero(); m + 1];
            for k in 1..=m {
                // s(m,k) = s(m-1,k-1) - (m-1) s(m-1,k)
                row1[k] = at(prev1, k - 1) - BigInt::from(m - 1) * at(prev1, k);
                // S(m,k) = S(m-1,k-1) + k S(m-1,k)
                row2[k] = at(prev2, k - 1) + BigInt::from(k) * at(prev2, k);
            }
            self.first.push(row1);
            self.second.push(row2);
        }
    }
}

fn table() -> &'static RwLock<StirlingTable> {
    static TABLE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(StirlingTable::default()))
}

fn lookup(n: usize, k: usize, pick: fn(&StirlingTable) -> &Vec<Vec<BigInt>>) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let t = table().read().unwrap_or_else(|e| e.into_inner());
        if let Some(row) = pick(&t).get(n) {
            return row[k].clone();
        }
    }
    let mut t = table().write().unwrap_or_else(|e| e.into_inner());
    t.extend_to(n);
    pick(&t)[n][k].clone()
}

/// Signed Stirling number of the first kind: x(x-1)...(x-n+1) = Σ_k s(n,k) x^k.
pub fn stirling_first(n: usize, k: usize) -> BigInt {
    lookup(n, k, |t| &t.first)
}

/// Stirling number of the second kind: x^n = Σ_k S(n,k) x(x-1)...(x-k+1).
pub fn stirling_second(n: usize, k: usize) -> BigInt {
    lookup(n, k, |t| &t.second)
}

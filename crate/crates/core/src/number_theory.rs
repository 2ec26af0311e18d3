//! Integer arithmetic: trial-division factorization, Euler's totient, the
//! divisor-chain sum `χ_n`, and the smallest prime power `ρ_n ≥ n`.
//!
//! `χ_n` is the clique number of the power graph of the cyclic group of
//! order `n`. It is the sum of `φ(d)` over the maximal divisor chain that
//! strips the smallest prime first:
//!
//! ```text
//! n, n/p1, ..., n/p1^r1, n/(p1^r1 p2), ..., 1
//! ```
//!
//! We fix `χ_1 = φ(1) = 1`. Note that with this convention `χ_1 = 1` while
//! 1 is not reported as a prime power, so "χ_n = n iff n is a prime power"
//! only holds from `n = 2` on.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("argument must be a positive integer, got 0")]
    Zero,
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Result<Self, ArithmeticError> {
        if n == 0 {
            return Err(ArithmeticError::Zero);
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                let mut r = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    r += 1;
                }
                factors.push((p, r));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { factors })
    }

    /// `(p_i, r_i)` pairs in increasing order of `p_i`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, r)| p.pow(r)).product()
    }

    pub fn least_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `2q` with `q` an odd prime.
    pub fn is_twice_odd_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(2, 1), (q, 1)] if *q > 2)
    }

    /// The divisor chain `n, n/p1, ..., 1` underlying `χ_n`.
    pub fn divisor_chain(&self) -> Vec<u64> {
        let mut chain = vec![self.value()];
        let mut d = self.value();
        for &(p, r) in &self.factors {
            for _ in 0..r {
                d /= p;
                chain.push(d);
            }
        }
        chain
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && Factorization::of(n).map(|f| f.is_prime()).unwrap_or(false)
}

pub fn is_prime_power(n: u64) -> bool {
    n >= 2 && Factorization::of(n).map(|f| f.is_prime_power()).unwrap_or(false)
}

/// Euler's totient via the product formula over the factorization.
pub fn totient(n: u64) -> Result<u64, ArithmeticError> {
    let f = Factorization::of(n)?;
    Ok(totient_of(&f))
}

fn totient_of(f: &Factorization) -> u64 {
    f.factors().iter().map(|&(p, r)| (p - 1) * p.pow(r - 1)).product()
}

/// `χ_n` as the displayed totient sum over the divisor chain.
pub fn chi_sum(n: u64) -> Result<u64, ArithmeticError> {
    let f = Factorization::of(n)?;
    f.divisor_chain().into_iter().map(totient).sum()
}

/// `χ_n` by the recursion `χ_n = φ(n) + χ_{n/p}` with `p` the least prime
/// factor, bottoming out at `χ_1 = 1`.
pub fn chi_recursive(n: u64) -> Result<u64, ArithmeticError> {
    let mut f = Factorization::of(n)?;
    let mut acc = 0;
    loop {
        acc += totient_of(&f);
        match f.least_prime() {
            None => return Ok(acc),
            Some(p) => {
                f = Factorization::of(f.value() / p)?;
            }
        }
    }
}

/// `χ_n`. Both routes are evaluated and must agree.
pub fn chi(n: u64) -> Result<u64, ArithmeticError> {
    let by_sum = chi_sum(n)?;
    let by_recursion = chi_recursive(n)?;
    assert_eq!(
        by_sum, by_recursion,
        "divisor-chain sum and recursion disagree for n = {n}"
    );
    Ok(by_sum)
}

/// Smallest prime power `q ≥ n`.
pub fn rho(n: u64) -> u64 {
    (n.max(2)..).find(|&q| is_prime_power(q)).expect("primes are unbounded")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderClass {
    pub factorization: Factorization,
    pub is_prime_power: bool,
    pub is_twice_odd_prime: bool,
}

pub fn classify_order(n: u64) -> Result<OrderClass, ArithmeticError> {
    let factorization = Factorization::of(n)?;
    Ok(OrderClass {
        is_prime_power: factorization.is_prime_power(),
        is_twice_odd_prime: factorization.is_twice_odd_prime(),
        factorization,
    })
}

/// `χ_k` memoized over `1..=limit`, filled with the recursion on a sieve of
/// least prime factors. Grows on demand.
#[derive(Debug, Clone)]
pub struct ChiTable {
    chi: Vec<u64>,
}

impl ChiTable {
    pub fn new(limit: usize) -> Self {
        let mut t = ChiTable { chi: vec![0, 1] };
        t.extend_to(limit);
        t
    }

    pub fn extend_to(&mut self, limit: usize) {
        if limit < self.chi.len() {
            return;
        }
        let limit = limit.max(2 * self.chi.len());
        let mut lpf = vec![0usize; limit + 1];
        for i in 2..=limit {
            if lpf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if lpf[j] == 0 {
                        lpf[j] = i;
                    }
                    j += i;
                }
            }
        }
        for (k, &p) in lpf.iter().enumerate().skip(self.chi.len()) {
            let phi = totient(k as u64).expect("k >= 1");
            let prev = self.chi[k / p];
            self.chi.push(phi + prev);
        }
    }

    pub fn get(&mut self, k: usize) -> u64 {
        assert!(k >= 1, "χ is defined for positive integers");
        self.extend_to(k);
        self.chi[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn totient_small_values() {
        assert_eq!(totient(1), Ok(1));
        assert_eq!(totient(12), Ok(4));
        for p in [2u64, 3, 5, 7, 97, 101] {
            assert_eq!(totient(p), Ok(p - 1));
        }
        for n in 1..=500 {
            assert_eq!(totient(n).unwrap(), brute_totient(n), "n={n}");
        }
        assert_eq!(totient(0), Err(ArithmeticError::Zero));
    }

    #[test]
    fn chi_known_values() {
        assert_eq!(chi(36), Ok(27));
        assert_eq!(chi(93), Ok(91));
        assert_eq!(chi(6), Ok(5));
        assert_eq!(chi(1), Ok(1));
        for q in [2u64, 4, 8, 9, 27, 25, 49, 121, 128] {
            assert_eq!(chi(q), Ok(q));
        }
        assert_eq!(chi(0), Err(ArithmeticError::Zero));
    }

    #[test]
    fn chi_table_matches_direct() {
        let mut table = ChiTable::new(10);
        for k in 1..=3000u64 {
            assert_eq!(table.get(k as usize), chi(k).unwrap());
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(14), 16);
        assert_eq!(rho(91), 97);
        assert_eq!(rho(8), 8);
        assert_eq!(rho(1), 2);
        assert_eq!(rho(34), 37);
    }

    #[test]
    fn classify_examples() {
        let c = classify_order(6).unwrap();
        assert!(c.is_twice_odd_prime && !c.is_prime_power);
        assert!(classify_order(16).unwrap().is_prime_power);
        let c = classify_order(12).unwrap();
        assert!(!c.is_twice_odd_prime && !c.is_prime_power);
        let c = classify_order(1).unwrap();
        assert!(!c.is_prime_power && c.factorization.factors().is_empty());
        assert!(!classify_order(4).unwrap().is_twice_odd_prime);
    }

    #[test]
    fn divisor_chain_strips_smallest_prime_first() {
        let f = Factorization::of(36).unwrap();
        assert_eq!(f.divisor_chain(), vec![36, 18, 9, 3, 1]);
    }

    proptest::proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..2_000_000) {
            let f = Factorization::of(n).unwrap();
            proptest::prop_assert_eq!(f.value(), n);
            for w in f.factors().windows(2) {
                proptest::prop_assert!(w[0].0 < w[1].0);
            }
            for &(p, r) in f.factors() {
                proptest::prop_assert!(is_prime(p) && r >= 1);
            }
        }

        #[test]
        fn rho_is_least_prime_power_above(n in 2u64..5000) {
            let q = rho(n);
            proptest::prop_assert!(q >= n && is_prime_power(q));
            for k in n..q {
                proptest::prop_assert!(!is_prime_power(k));
            }
        }
    }
}

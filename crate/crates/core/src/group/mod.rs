//! Finite groups as dense Cayley tables.
//!
//! Elements are the identifiers `0..n`, and identifier `0` is always the
//! identity. Every constructor in this module, including the Cayley-file
//! loader, enforces that. A [`Group`] is immutable once built.

mod catalog;
mod families;
mod iso;
mod spec;

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::number_theory;

pub use catalog::{catalog_for_order, known_group_count, Catalog, COMPLETE_ORDERS};
pub use iso::{are_isomorphic, element_invariants, ElementInvariant, Fingerprint};
pub use spec::{construct_group, GroupSpec};

/// Largest supported group order (`S7`).
pub const MAX_ORDER: usize = 5040;

/// Associativity is checked exhaustively up to this order, sampled above.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed group spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },
    #[error("group axiom `{axiom}` fails: {detail}")]
    Axiom { axiom: &'static str, detail: String },
    #[error("element {x} out of range for a group of order {n}")]
    OutOfRange { x: usize, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot read Cayley table: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse Cayley table: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<usize>,
    orders: Vec<usize>,
    label: String,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label, self.n)
    }
}

#[derive(Deserialize)]
struct CayleyFile {
    n: usize,
    mul: Vec<Vec<usize>>,
}

impl Group {
    /// Builds a group from a trusted multiplication rule. Axioms are only
    /// checked in debug builds; use [`Group::from_table`] for external data.
    pub(crate) fn from_fn(n: usize, label: String, op: impl Fn(usize, usize) -> usize) -> Group {
        assert!((1..=MAX_ORDER).contains(&n), "group order {n} outside 1..={MAX_ORDER}");
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = op(a, b);
                debug_assert!(c < n);
                mul.push(c as u16);
            }
        }
        let g = Group::finish(n, mul, label).expect("family construction yields a group");
        debug_assert!(g.check_associative(EXHAUSTIVE_ASSOC_LIMIT).is_ok());
        g
    }

    /// Validates and wraps an explicit table. Identity must be element 0.
    pub fn from_table(mul: &[Vec<usize>], label: impl Into<String>) -> Result<Group, GroupError> {
        let n = mul.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::Axiom {
                axiom: "order",
                detail: format!("order {n} outside 1..={MAX_ORDER}"),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Axiom {
                    axiom: "closure",
                    detail: format!("row {a} has {} entries, expected {n}", row.len()),
                });
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::Axiom {
                        axiom: "closure",
                        detail: format!("mul[{a}][{b}] = {c} is not an element"),
                    });
                }
                flat.push(c as u16);
            }
        }
        let g = Group::finish(n, flat, label.into())?;
        g.check_associative(EXHAUSTIVE_ASSOC_LIMIT)?;
        Ok(g)
    }

    /// Loads the JSON Cayley format `{"n": int, "mul": [[int]]}`.
    pub fn from_cayley_json(text: &str, label: impl Into<String>) -> Result<Group, GroupError> {
        let file: CayleyFile = serde_json::from_str(text)?;
        if file.mul.len() != file.n {
            return Err(GroupError::Axiom {
                axiom: "closure",
                detail: format!("table has {} rows but n = {}", file.mul.len(), file.n),
            });
        }
        Group::from_table(&file.mul, label)
    }

    /// Identity, inverse and order bookkeeping shared by both constructors.
    fn finish(n: usize, mul: Vec<u16>, label: String) -> Result<Group, GroupError> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::Axiom {
                    axiom: "identity",
                    detail: format!("element 0 is not a two-sided identity (fails at {x})"),
                });
            }
        }
        let mut inv = vec![usize::MAX; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            let right = (0..n).filter(|&y| at(x, y) == 0).collect::<Vec<_>>();
            match right.as_slice() {
                [y] if at(*y, x) == 0 => *slot = *y,
                _ => {
                    return Err(GroupError::Axiom {
                        axiom: "inverse",
                        detail: format!("element {x} has no unique two-sided inverse"),
                    })
                }
            }
        }
        // Rows and columns must be permutations (cancellation).
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let c = at(a, b);
                if seen[c] == 2 * a + 1 {
                    return Err(GroupError::Axiom {
                        axiom: "cancellation",
                        detail: format!("row {a} repeats {c}"),
                    });
                }
                seen[c] = 2 * a + 1;
            }
            for b in 0..n {
                let c = at(b, a);
                if seen[c] == 2 * a + 2 {
                    return Err(GroupError::Axiom {
                        axiom: "cancellation",
                        detail: format!("column {a} repeats {c}"),
                    });
                }
                seen[c] = 2 * a + 2;
            }
        }
        let mut orders = vec![0; n];
        for (x, slot) in orders.iter_mut().enumerate() {
            let (mut k, mut y) = (1, x);
            while y != 0 {
                y = at(y, x);
                k += 1;
                if k > n {
                    return Err(GroupError::Axiom {
                        axiom: "associativity",
                        detail: format!("powers of {x} never reach the identity"),
                    });
                }
            }
            *slot = k;
        }
        Ok(Group { n, mul, inv, orders, label })
    }

    /// Checks `(ab)c = a(bc)`: every triple when `n ≤ exhaustive_limit`, a
    /// fixed pseudo-random sample of triples otherwise.
    pub fn check_associative(&self, exhaustive_limit: usize) -> Result<(), GroupError> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| {
            let left = self.mul(self.mul(a, b), c);
            let right = self.mul(a, self.mul(b, c));
            if left == right {
                Ok(())
            } else {
                Err(GroupError::Axiom {
                    axiom: "associativity",
                    detail: format!("({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}"),
                })
            }
        };
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // xorshift; deterministic sample of 200k triples
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % n as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// The Cayley table as nested rows, the shape of the JSON format.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn element_order(&self, x: usize) -> Result<usize, GroupError> {
        self.orders.get(x).copied().ok_or(GroupError::OutOfRange { x, n: self.n })
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k % self.orders[x]).fold(0, |acc, _| self.mul(acc, x))
    }

    /// `[e, x, x², ...]` up to `x^{|x|-1}`.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.orders[x]);
        let mut y = 0;
        loop {
            out.push(y);
            y = self.mul(y, x);
            if y == 0 {
                return out;
            }
        }
    }

    /// Elements of order exactly 2.
    pub fn involutions(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&x| self.orders[x] == 2).collect()
    }

    /// Involutions together with the identity.
    pub fn self_inverse_elements(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&x| self.orders[x] <= 2).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.contains(&self.n)
    }

    /// Isomorphic to `Q_{2^k}` for some `k ≥ 3`.
    pub fn is_generalized_quaternion(&self) -> bool {
        let n = self.n;
        if n < 8 || !n.is_power_of_two() || self.involutions().len() != 1 {
            return false;
        }
        let q = construct_group(&GroupSpec::Quaternion(n)).expect("Q of a 2-power order at least 8");
        are_isomorphic(self, &q)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generators of the group when it is cyclic, plus the identity.
    pub fn generators_and_identity(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&x| x == 0 || self.orders[x] == self.n).collect()
    }

    pub fn unique_subgroup_of_prime_order(&self, p: u64) -> Result<PrimeSubgroups, GroupError> {
        if !number_theory::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let p = p as usize;
        if !self.n.is_multiple_of(p) {
            return Ok(PrimeSubgroups::Absent);
        }
        let mut subgroup: Option<BTreeSet<usize>> = None;
        for x in (0..self.n).filter(|&x| self.orders[x] == p) {
            let s: BTreeSet<usize> = self.cyclic_subgroup(x).into_iter().collect();
            match &subgroup {
                None => subgroup = Some(s),
                Some(t) if *t == s => {}
                Some(_) => return Ok(PrimeSubgroups::Several),
            }
        }
        // Cauchy: p | n guarantees an element of order p.
        debug_assert!(subgroup.is_some());
        Ok(PrimeSubgroups::Unique)
    }
}

/// How many subgroups of a given prime order a group has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeSubgroups {
    Unique,
    Several,
    /// The prime does not divide the group order.
    Absent,
}

impl PrimeSubgroups {
    pub fn is_unique(self) -> bool {
        self == PrimeSubgroups::Unique
    }
}

//! The group family grammar.
//!
//! ```text
//! Z<n>              cyclic of order n
//! Ab[d1,...,dk]     Z_d1 × ... × Z_dk
//! D<2n>             dihedral of order 2n
//! GDih[d1,...,dk]   generalized dihedral over Ab[d1,...,dk]
//! Dic<n>            dicyclic of order 4n
//! Q<m>              generalized quaternion, m = 2^k with k ≥ 3 (= Dic<m/4>)
//! S<n> / A<n>       symmetric / alternating, n ≤ 7
//! Meta[m,k,r]       Z_m ⋊ Z_k acting by x ↦ x^r, needs r^k ≡ 1 (mod m)
//! Prod(a,b)         direct product
//! cayley:<path>     JSON Cayley table
//! ```
//!
//! Names are case-sensitive and whitespace is not allowed.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{families, Group, GroupError, MAX_ORDER};
use crate::number_theory::gcd;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    /// Carries the group order `2n`, as written.
    Dihedral(usize),
    GeneralizedDihedral(Vec<usize>),
    /// Carries `n`; the group has order `4n`.
    Dicyclic(usize),
    /// Carries the group order `2^k`.
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    Metacyclic { m: usize, k: usize, r: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Cayley(PathBuf),
}

fn join(ds: &[usize]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Abelian(ds) => write!(f, "Ab[{}]", join(ds)),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::GeneralizedDihedral(ds) => write!(f, "GDih[{}]", join(ds)),
            GroupSpec::Dicyclic(n) => write!(f, "Dic{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Metacyclic { m, k, r } => write!(f, "Meta[{m},{k},{r}]"),
            GroupSpec::Product(a, b) => write!(f, "Prod({a},{b})"),
            GroupSpec::Cayley(p) => write!(f, "cayley:{}", p.display()),
        }
    }
}

impl GroupSpec {
    /// Group order implied by the spec, when it does not depend on a file.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Abelian(ds) | GroupSpec::GeneralizedDihedral(ds) => {
                let m: usize = ds.iter().product();
                if matches!(self, GroupSpec::GeneralizedDihedral(_)) {
                    2 * m
                } else {
                    m
                }
            }
            GroupSpec::Dihedral(n) | GroupSpec::Quaternion(n) => *n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>()).div_ceil(2).max(1),
            GroupSpec::Metacyclic { m, k, .. } => m * k,
            GroupSpec::Product(a, b) => a.order()? * b.order()?,
            GroupSpec::Cayley(_) => return None,
        })
    }

    fn validate(&self) -> Result<(), String> {
        let positive = |ds: &[usize]| {
            if ds.is_empty() || ds.contains(&0) {
                Err("parameters must be positive".to_string())
            } else {
                Ok(())
            }
        };
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dicyclic(n) => positive(&[*n]),
            GroupSpec::Abelian(ds) | GroupSpec::GeneralizedDihedral(ds) => positive(ds),
            GroupSpec::Dihedral(n) => {
                if *n == 0 || n % 2 != 0 {
                    Err(format!("dihedral order must be even and positive, got {n}"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Quaternion(n) => {
                if *n >= 8 && n.is_power_of_two() {
                    Ok(())
                } else {
                    Err(format!("Q<m> needs m = 2^k with k >= 3, got {n}"))
                }
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if (1..=7).contains(n) {
                    Ok(())
                } else {
                    Err(format!("degree must be in 1..=7, got {n}"))
                }
            }
            GroupSpec::Metacyclic { m, k, r } => {
                positive(&[*m, *k])?;
                let mut acc = 1 % m;
                for _ in 0..*k {
                    acc = acc * r % m;
                }
                if gcd(*r as u64, *m as u64) != 1 && *m > 1 {
                    Err(format!("r = {r} is not a unit mod {m}"))
                } else if acc != 1 % m {
                    Err(format!("{r}^{k} is not 1 mod {m}"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupSpec::Cayley(p) => {
                if p.as_os_str().is_empty() {
                    Err("empty Cayley path".into())
                } else {
                    Ok(())
                }
            }
        }?;
        match self.order() {
            Some(n) if n > MAX_ORDER => Err(format!("order {n} exceeds {MAX_ORDER}")),
            _ => Ok(()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), String> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(format!("expected `{token}` at offset {}", self.pos))
        }
    }

    fn number(&mut self) -> Result<usize, String> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(format!("expected a number at offset {}", self.pos));
        }
        let text = &self.rest()[..len];
        self.pos += len;
        text.parse().map_err(|_| format!("number `{text}` is too large"))
    }

    fn list(&mut self) -> Result<Vec<usize>, String> {
        self.expect("[")?;
        let mut out = vec![self.number()?];
        while self.eat(",") {
            out.push(self.number()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn spec(&mut self, nested: bool) -> Result<GroupSpec, String> {
        // Longest keywords first so `GDih` is not read as `D...`.
        if self.eat("cayley:") {
            let rest = self.rest();
            let len = if nested {
                let mut depth = 0i32;
                rest.char_indices()
                    .find(|&(_, c)| match c {
                        '(' => {
                            depth += 1;
                            false
                        }
                        ')' if depth == 0 => true,
                        ')' => {
                            depth -= 1;
                            false
                        }
                        ',' => depth == 0,
                        _ => false,
                    })
                    .map_or(rest.len(), |(i, _)| i)
            } else {
                rest.len()
            };
            self.pos += len;
            return Ok(GroupSpec::Cayley(PathBuf::from(&rest[..len])));
        }
        if self.eat("Prod(") {
            let a = self.spec(true)?;
            self.expect(",")?;
            let b = self.spec(true)?;
            self.expect(")")?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        if self.eat("GDih") {
            return Ok(GroupSpec::GeneralizedDihedral(self.list()?));
        }
        if self.eat("Meta") {
            return match self.list()?.as_slice() {
                &[m, k, r] => Ok(GroupSpec::Metacyclic { m, k, r }),
                other => Err(format!("Meta needs exactly 3 parameters, got {}", other.len())),
            };
        }
        if self.eat("Dic") {
            return Ok(GroupSpec::Dicyclic(self.number()?));
        }
        if self.eat("Ab") {
            return Ok(GroupSpec::Abelian(self.list()?));
        }
        let ctor: fn(usize) -> GroupSpec = if self.eat("Z") {
            GroupSpec::Cyclic
        } else if self.eat("D") {
            GroupSpec::Dihedral
        } else if self.eat("Q") {
            GroupSpec::Quaternion
        } else if self.eat("S") {
            GroupSpec::Symmetric
        } else if self.eat("A") {
            GroupSpec::Alternating
        } else {
            return Err(format!("unknown group family at offset {}", self.pos));
        };
        Ok(ctor(self.number()?))
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: String| GroupError::Spec { spec: s.to_string(), reason };
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec(false).map_err(fail)?;
        if p.pos != s.len() {
            return Err(fail(format!("trailing input at offset {}", p.pos)));
        }
        spec.validate().map_err(fail)?;
        Ok(spec)
    }
}

/// Builds the group a spec describes. The label is the spec's canonical text.
pub fn construct_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    spec.validate().map_err(|reason| GroupError::Spec { spec: spec.to_string(), reason })?;
    let label = spec.to_string();
    Ok(match spec {
        GroupSpec::Cyclic(n) => families::cyclic(*n, label),
        GroupSpec::Abelian(ds) => families::abelian(ds, label),
        GroupSpec::Dihedral(n) => families::dihedral(*n, label),
        GroupSpec::GeneralizedDihedral(ds) => families::generalized_dihedral(ds, label),
        GroupSpec::Dicyclic(n) => families::dicyclic(*n, label),
        GroupSpec::Quaternion(n) => families::dicyclic(n / 4, label),
        GroupSpec::Symmetric(n) => families::permutations(*n, false, label),
        GroupSpec::Alternating(n) => families::permutations(*n, true, label),
        GroupSpec::Metacyclic { m, k, r } => families::metacyclic(*m, *k, *r, label),
        GroupSpec::Product(a, b) => {
            let (ga, gb) = (construct_group(a)?, construct_group(b)?);
            families::direct_product(&ga, &gb, label)
        }
        GroupSpec::Cayley(path) => {
            let text = std::fs::read_to_string(path)?;
            Group::from_cayley_json(&text, label)?
        }
    })
}

//! The group `G = ⟨σ_1, …, σ_n⟩ ≅ Z^n` inside `Gal(K/F) ≅ Z_p`.
//!
//! Each `σ_i` is the Frobenius raised to a `p`-adic exponent `a_i` with digits
//! in `{0, 1}`; on level `k` it acts as `Frobenius^(a_i mod p^k)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Deref, Neg, Sub};

use crate::arith::{checked_pow, gcd_u64, is_prime, rem_i128};
use crate::error::{Error, Result};

/// An element `Σ g_i σ_i` of `G ≅ Z^n`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<i64>);

impl GroupWord {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupWord(coords)
    }

    pub fn zero(n: usize) -> Self {
        GroupWord(alloc::vec![0; n])
    }

    /// The basis vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = alloc::vec![0; n];
        v[i] = 1;
        GroupWord(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, by: i64) -> Self {
        GroupWord(self.0.iter().map(|&c| c * by).collect())
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for GroupWord {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for GroupWord {
    fn from(v: Vec<i64>) -> Self {
        GroupWord(v)
    }
}

impl Add for &GroupWord {
    type Output = GroupWord;
    fn add(self, rhs: &GroupWord) -> GroupWord {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        GroupWord(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupWord {
    type Output = GroupWord;
    fn sub(self, rhs: &GroupWord) -> GroupWord {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        GroupWord(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupWord {
    type Output = GroupWord;
    fn neg(self) -> GroupWord {
        GroupWord(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum DigitRule {
    Finite(Vec<u32>),
    /// Positions `(stride·t + offset)^2` for `t ≥ 0`.
    ShiftedSquares {
        stride: u32,
        offset: u32,
    },
}

/// A `p`-adic integer `Σ_{e ∈ E} p^e` given by its set of digit positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicExponent {
    rule: DigitRule,
    label: String,
}

impl PAdicExponent {
    pub fn one() -> Self {
        PAdicExponent {
            rule: DigitRule::Finite(alloc::vec![0]),
            label: "1".into(),
        }
    }

    /// Finitely many digits; positions must be strictly increasing.
    pub fn finite(positions: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "digit positions must be strictly increasing".into(),
            ));
        }
        Ok(PAdicExponent {
            rule: DigitRule::Finite(positions),
            label: label.into(),
        })
    }

    /// Infinitely many digits at `(stride·t + offset)^2`, `t = 0, 1, 2, …`.
    pub fn shifted_squares(stride: u32, offset: u32) -> Self {
        PAdicExponent {
            rule: DigitRule::ShiftedSquares { stride, offset },
            label: format!("sum over t of p^(({stride}t+{offset})^2)"),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_one(&self) -> bool {
        self.rule == DigitRule::Finite(alloc::vec![0])
    }

    /// Digit positions strictly below `k`.
    pub fn positions_below(&self, k: u32) -> Vec<u32> {
        match &self.rule {
            DigitRule::Finite(pos) => pos.iter().copied().take_while(|&e| e < k).collect(),
            DigitRule::ShiftedSquares { stride, offset } => (0u64..)
                .map(|t| (*stride as u64 * t + *offset as u64).pow(2))
                .take_while(|&e| e < k as u64)
                .map(|e| e as u32)
                .collect(),
        }
    }

    /// `a mod p^k`, which only depends on positions below `k`.
    pub fn truncate(&self, p: u32, k: u32) -> u64 {
        let modulus = checked_pow(p as u64, k as u64).expect("p^k fits in u64");
        self.positions_below(k).into_iter().fold(0u64, |acc, e| {
            (acc + checked_pow(p as u64, e as u64).unwrap()) % modulus
        })
    }
}

/// Largest `k` with `p^k < 2^62`, the horizon for exponent arithmetic.
pub fn level_horizon(p: u32) -> u32 {
    let mut k = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p as u64).filter(|&v| v < (1u64 << 62)) {
        acc = next;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionConfig {
    p: u32,
    exponents: Vec<PAdicExponent>,
}

/// Evidence that no nonzero `m` with `|m_i| ≤ bound` has `Σ m_i a_i ≡ 0 mod p^level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub bound: u64,
    pub level: u32,
}

impl ActionConfig {
    /// `a_1` must be exactly 1 so that `σ_1` is the Frobenius. Distinctness of
    /// the exponents is not checked here; it is implied by certification.
    pub fn new(p: u32, exponents: Vec<PAdicExponent>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        match exponents.first() {
            None => return Err(Error::InvalidConfig("rank n must be at least 1".into())),
            Some(a1) if !a1.is_one() => {
                return Err(Error::InvalidConfig("a_1 must equal 1".into()));
            }
            _ => {}
        }
        Ok(ActionConfig { p, exponents })
    }

    /// `a_1 = 1` and `a_i` with digits at `(n·t + i)^2` for `i ≥ 2`.
    pub fn default_for(p: u32, n: usize) -> Result<Self> {
        let exponents = (1..=n)
            .map(|i| {
                if i == 1 {
                    PAdicExponent::one()
                } else {
                    PAdicExponent::shifted_squares(n as u32, i as u32)
                }
            })
            .collect();
        Self::new(p, exponents)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[PAdicExponent] {
        &self.exponents
    }

    pub fn modulus(&self, k: u32) -> u64 {
        checked_pow(self.p as u64, k as u64).expect("p^k fits in u64")
    }

    /// `(a_1 mod p^k, …, a_n mod p^k)`.
    pub fn truncations(&self, k: u32) -> Vec<u64> {
        self.exponents
            .iter()
            .map(|a| a.truncate(self.p, k))
            .collect()
    }

    /// `ψ_k(g)` as the Frobenius power `Σ g_i a_i mod p^k`.
    pub fn action_exponent(&self, g: &[i64], k: u32) -> u64 {
        debug_assert_eq!(g.len(), self.rank());
        let modulus = self.modulus(k);
        let sum = self
            .truncations(k)
            .iter()
            .zip(g)
            .fold(0i128, |acc, (&a, &gi)| {
                (acc + a as i128 * gi as i128) % modulus as i128
            });
        rem_i128(sum, modulus)
    }

    /// Additive order of `ψ_k(g)` in `Z/p^k`.
    pub fn restriction_order(&self, g: &[i64], k: u32) -> Result<u64> {
        if g.iter().all(|&c| c == 0) {
            return Err(Error::Usage(
                "restriction order of the identity (always 1)".into(),
            ));
        }
        let modulus = self.modulus(k);
        Ok(modulus / gcd_u64(modulus, self.action_exponent(g, k)))
    }

    /// True iff no nonzero `m` with `|m_i| ≤ bound` satisfies
    /// `Σ m_i a_i ≡ 0 mod p^k`, by exhaustive search over the box.
    pub fn independence_certificate(&self, bound: u64, k: u32) -> bool {
        independence_certificate(&self.truncations(k), self.modulus(k), bound)
    }

    /// Finds the least level up to `max_level` at which the certificate holds.
    pub fn certify(&self, bound: u64, max_level: u32) -> Result<Certificate> {
        let max_level = max_level.min(level_horizon(self.p));
        (1..=max_level)
            .find(|&k| self.independence_certificate(bound, k))
            .map(|level| Certificate { bound, level })
            .ok_or(Error::NotCertified {
                bound,
                max_level: max_level as usize,
            })
    }
}

fn independence_certificate(residues: &[u64], modulus: u64, bound: u64) -> bool {
    let n = residues.len();
    let b = bound as i128;
    let m = modulus as i128;
    let mut tail = alloc::vec![-b; n.saturating_sub(1)];
    loop {
        let s: i128 = tail
            .iter()
            .zip(&residues[1..])
            .map(|(&c, &a)| c * a as i128)
            .sum();
        let tail_zero = tail.iter().all(|&c| c == 0);
        for m1 in -b..=b {
            if m1 == 0 && tail_zero {
                continue;
            }
            if (m1 * residues[0] as i128 + s).rem_euclid(m) == 0 {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == tail.len() {
                return true;
            }
            if tail[i] < b {
                tail[i] += 1;
                break;
            }
            tail[i] = -b;
            i += 1;
        }
    }
}

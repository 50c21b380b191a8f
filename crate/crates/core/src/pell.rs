//! Solutions of `u² − 2v² = ±1` as the coefficients of `(1 + √2)^k`.
//!
//! Indices are 1-based: `k = 1` is `1 + √2`. Odd `k` solves the negative
//! equation, even `k` the positive one. There is no index-0 pair.

use num_traits::One;

use crate::arith::Integer;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellPair {
    pub k: u64,
    pub u: Integer,
    pub v: Integer,
}

impl PellPair {
    /// `u² − 2v²`, which is `(−1)^k` for every valid pair.
    pub fn norm(&self) -> Integer {
        &self.u * &self.u - &self.v * &self.v * 2
    }

    pub fn expected_norm(&self) -> Integer {
        if self.k % 2 == 0 {
            Integer::one()
        } else {
            -Integer::one()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.k >= 1 && self.norm() == self.expected_norm()
    }

    /// Multiply by `1 + √2`.
    pub fn next(&self) -> PellPair {
        PellPair {
            k: self.k + 1,
            u: &self.u + &self.v * 2,
            v: &self.u + &self.v,
        }
    }
}

/// Coefficients of `(1 + √2)^k`, by linear iteration from `(1, 1)`.
pub fn pell_pair(k: u64) -> Result<PellPair> {
    if k == 0 {
        return Err(Error::Domain("pell index starts at 1".into()));
    }
    let mut p = first();
    for _ in 1..k {
        p = p.next();
    }
    Ok(p)
}

/// Pairs `1..=count` in order.
pub fn pell_pairs(count: u64) -> impl Iterator<Item = PellPair> {
    std::iter::successors(Some(first()), |p| Some(p.next())).take(count as usize)
}

fn first() -> PellPair {
    PellPair {
        k: 1,
        u: Integer::one(),
        v: Integer::one(),
    }
}

/// Index `t` to index `2t` by squaring.
pub fn pell_double(p: &PellPair) -> PellPair {
    PellPair {
        k: 2 * p.k,
        u: &p.u * &p.u + &p.v * &p.v * 2,
        v: &p.u * &p.v * 2,
    }
}

/// Index `k` to index `k − 1`; undefined at `k = 1`.
pub fn pell_back(p: &PellPair) -> Result<PellPair> {
    if p.k < 2 {
        return Err(Error::Domain("no pell pair below index 1".into()));
    }
    Ok(PellPair {
        k: p.k - 1,
        u: &p.v * 2 - &p.u,
        v: &p.u - &p.v,
    })
}

/// Index `t` to index `2t − 1`.
pub fn pell_odd_from_half(p: &PellPair) -> PellPair {
    let diff = &p.u - &p.v;
    let diff_sq = &diff * &diff;
    PellPair {
        k: 2 * p.k - 1,
        u: &p.u * &p.u - &diff_sq * 2,
        v: diff_sq + &p.v * &p.v,
    }
}

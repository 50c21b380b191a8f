//! Primitive Pythagorean triples from generator pairs, the signed inversion
//! back to generators, and the two Pell-indexed families.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{exact_sqrt, gcd, isqrt, Integer};
use crate::error::{Error, Result};
use crate::pell::{pell_pair, PellPair};

/// Generator pair `(m, n)` of `(m² − n², 2mn, m² + n²)`.
///
/// Signed mode allows either entry negative; both must be nonzero, coprime
/// and of opposite parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorPair {
    pub m: Integer,
    pub n: Integer,
}

impl GeneratorPair {
    pub fn signed(m: Integer, n: Integer) -> Result<Self> {
        let invalid = |reason| Error::InvalidGenerator {
            m: m.to_string(),
            n: n.to_string(),
            reason,
        };
        if m.is_zero() || n.is_zero() {
            return Err(invalid("zero entry"));
        }
        if m.abs() == n.abs() {
            return Err(invalid("|m| = |n|"));
        }
        if !gcd(&m, &n).is_one() {
            return Err(invalid("gcd(m, n) > 1"));
        }
        if (&m + &n).is_even() {
            return Err(invalid("m + n is even"));
        }
        Ok(GeneratorPair { m, n })
    }

    /// Classic mode: additionally `m > n > 0`.
    pub fn classic(m: Integer, n: Integer) -> Result<Self> {
        if !(m > n && n.is_positive()) {
            return Err(Error::InvalidGenerator {
                m: m.to_string(),
                n: n.to_string(),
                reason: "classic mode needs m > n > 0",
            });
        }
        Self::signed(m, n)
    }

    /// `(−m, −n)`, which generates the same triple.
    pub fn negated(&self) -> Self {
        GeneratorPair {
            m: -&self.m,
            n: -&self.n,
        }
    }

    pub fn triple(&self) -> SignedTriple {
        let m2 = &self.m * &self.m;
        let n2 = &self.n * &self.n;
        SignedTriple {
            x: &m2 - &n2,
            y: &self.m * &self.n * 2,
            z: m2 + n2,
        }
    }
}

/// Triple `(X, Y, Z)` where either arm may be negative.
///
/// Only `X² + Y² = Z²` with `Z > 0` is structural; the "not both arms
/// nonpositive" condition is checked where a sum `X + Y` is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedTriple {
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
}

impl SignedTriple {
    pub fn new(x: Integer, y: Integer, z: Integer) -> Self {
        SignedTriple { x, y, z }
    }

    pub fn is_pythagorean(&self) -> bool {
        &self.x * &self.x + &self.y * &self.y == &self.z * &self.z
    }

    pub fn is_primitive(&self) -> bool {
        gcd(&self.x, &self.y).is_one()
    }

    pub fn sum(&self) -> Integer {
        &self.x + &self.y
    }

    /// Recover `(m, n)` with the sign table keyed on the quadrant of `(X, Y)`:
    /// `m` is negative only for `X < 0 < Y`; `n` is positive only for
    /// `X > 0, Y > 0`.
    pub fn generators(&self) -> Result<GeneratorPair> {
        if !self.z.is_positive() {
            return Err(Error::Domain(format!("hypotenuse {} is not positive", self.z)));
        }
        let m_sq = half_exact(&(&self.z + &self.x), "(Z + X)/2")?;
        let n_sq = half_exact(&(&self.z - &self.x), "(Z - X)/2")?;
        let mut m = exact_sqrt(&m_sq, "(Z + X)/2")?;
        let mut n = exact_sqrt(&n_sq, "(Z - X)/2")?;
        let (x_pos, y_pos) = (self.x.is_positive(), self.y.is_positive());
        if self.x.is_negative() && y_pos {
            m = -m;
        }
        if !(x_pos && y_pos) {
            n = -n;
        }
        GeneratorPair::signed(m, n)
    }
}

fn half_exact(n: &Integer, what: &'static str) -> Result<Integer> {
    if n.is_even() {
        Ok(n / 2)
    } else {
        Err(Error::not_square(what, n))
    }
}

/// Generators plus `C = √(X + Y)` and `D = √Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInversion {
    pub generators: GeneratorPair,
    pub c: Integer,
    pub d: Integer,
}

pub fn triple_from_generators(g: &GeneratorPair) -> Result<SignedTriple> {
    // re-validate: fields are public
    let g = GeneratorPair::signed(g.m.clone(), g.n.clone())?;
    Ok(g.triple())
}

pub fn generators_from_triple(t: &SignedTriple) -> Result<GeneratorInversion> {
    let sum = t.sum();
    if sum.is_negative() {
        return Err(Error::Domain(format!("X + Y = {sum} is negative")));
    }
    let generators = t.generators()?;
    let d = exact_sqrt(&t.z, "Z")?;
    let c = exact_sqrt(&sum, "X + Y")?;
    Ok(GeneratorInversion { generators, c, d })
}

/// Which family a [`FamilyRow`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x + y` is a square.
    SumSquare,
    /// `z` is a square.
    HypSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub family: Family,
    pub index: u64,
    pub pell: PellPair,
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
    /// `√(x + y)` or `√z`, depending on the family.
    pub square_value: Integer,
}

impl FamilyRow {
    pub fn is_valid(&self) -> bool {
        let target = match self.family {
            Family::SumSquare => &self.x + &self.y,
            Family::HypSquare => self.z.clone(),
        };
        &self.x * &self.x + &self.y * &self.y == &self.z * &self.z
            && &self.square_value * &self.square_value == target
    }
}

/// Odd leg `x` with `y = (x² − 1)/2`, `z = (x² + 1)/2`.
fn odd_leg_triple(x: Integer) -> (Integer, Integer, Integer) {
    let x2 = &x * &x;
    let y = (&x2 - 1u32) / 2u32;
    let z = (x2 + 1u32) / 2u32;
    (x, y, z)
}

fn family_index(i: u64) -> Result<u64> {
    if i == 0 {
        return Err(Error::Domain("family rows are indexed from 1".into()));
    }
    Ok(2 * i - 1)
}

/// Row `s` of the arm-sum-square family: `x = 2v − 1`, `x + y = u²` with
/// `(u, v)` the Pell pair at index `2s − 1`.
pub fn sum_square_family(s: u64) -> Result<FamilyRow> {
    let pell = pell_pair(family_index(s)?)?;
    let (x, y, z) = odd_leg_triple(&pell.v * 2 - 1);
    Ok(FamilyRow {
        family: Family::SumSquare,
        index: s,
        square_value: pell.u.clone(),
        pell,
        x,
        y,
        z,
    })
}

/// Row `r` of the square-hypotenuse family: `x = u`, `z = v²`.
pub fn hyp_square_family(r: u64) -> Result<FamilyRow> {
    let pell = pell_pair(family_index(r)?)?;
    let (x, y, z) = odd_leg_triple(pell.u.clone());
    Ok(FamilyRow {
        family: Family::HypSquare,
        index: r,
        square_value: pell.v.clone(),
        pell,
        x,
        y,
        z,
    })
}

/// Every `x ≤ bound` with `x² + (x + 1)²` a fourth power `w⁴`, sorted by `x`.
pub fn brute_force_w4(bound: u64) -> Vec<(Integer, Integer)> {
    (0..=bound)
        .into_par_iter()
        .filter_map(|x| {
            let x = Integer::from(x);
            let n = &x * &x + (&x + 1u32) * (&x + 1u32);
            let (root, exact) = isqrt(&n).ok()?;
            if !exact {
                return None;
            }
            match isqrt(&root).ok()? {
                (w, true) => Some((x, w)),
                _ => None,
            }
        })
        .collect()
}

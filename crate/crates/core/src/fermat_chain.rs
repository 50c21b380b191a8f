//! Closed-form rational solutions of the paired system
//!
//! ```text
//! t² + a·t + c² = α²
//! t² + b·t + d² = β²
//! ```
//!
//! and the recurrence that turns one solution of `x² + y² = e⁴, x + y = f²`
//! into the next: read `(m, n, c, d)` off the previous triangle, solve the
//! system with `a = 2(m + n)`, `b = 2m`, substitute `t` back into
//! `((t + m)² − n², 2n(t + m), (t + m)² + n²)` scaled by the denominator of
//! `t`, and divide out `gcd(x, y)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{exact_sqrt, gcd, Integer, Rational};
use crate::error::{Error, Result};
use crate::triples::{generators_from_triple, GeneratorPair, SignedTriple};

/// Which of the two closed-form roots to take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Uses the factors `d + c` and `bc + ad`.
    #[default]
    T1,
    /// Uses the factors `d − c` and `bc − ad`.
    T2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::T1 => "t1",
            Branch::T2 => "t2",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t1" => Ok(Branch::T1),
            "t2" => Ok(Branch::T2),
            _ => Err(Error::Domain(format!("unknown branch {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSystem {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl QuadraticSystem {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, c: impl Into<Integer>, d: impl Into<Integer>) -> Self {
        QuadraticSystem {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    /// `a·d² − b·c²`
    fn cross(&self) -> Integer {
        &self.a * &self.d * &self.d - &self.b * &self.c * &self.c
    }

    /// `d ± c` for the branch.
    fn shift(&self, branch: Branch) -> Integer {
        match branch {
            Branch::T1 => &self.d + &self.c,
            Branch::T2 => &self.d - &self.c,
        }
    }

    fn check_factors(&self, branch: Branch) -> Result<()> {
        let degenerate = |factor| Err(Error::DegenerateSystem { branch, factor });
        let bc = &self.b * &self.c;
        let ad = &self.a * &self.d;
        if self.c.is_zero() {
            return degenerate("c");
        }
        if self.d.is_zero() {
            return degenerate("d");
        }
        match branch {
            Branch::T1 if self.shift(branch).is_zero() => degenerate("d + c"),
            Branch::T1 if (&bc + &ad).is_zero() => degenerate("bc + ad"),
            Branch::T2 if self.shift(branch).is_zero() => degenerate("d - c"),
            Branch::T2 if (&bc - &ad).is_zero() => degenerate("bc - ad"),
            _ => Ok(()),
        }
    }

    /// The branch root, reduced.
    pub fn solve(&self, branch: Branch) -> Result<Rational> {
        self.check_factors(branch)?;
        let cd = &self.c * &self.d;
        let shift = self.shift(branch);
        let cross = self.cross();
        let bc = &self.b * &self.c;
        let ad = &self.a * &self.d;
        let tail = match branch {
            Branch::T1 => bc + ad,
            Branch::T2 => bc - ad,
        };
        let lead = &cd * &shift * 2;
        let num = &cross * &cross - &lead * &lead;
        let den = cd * shift * tail * 4;
        Rational::new(num, den)
    }

    /// `t² + a·t + c²`
    pub fn first_quadratic(&self, t: &Rational) -> Rational {
        t.square() + t * &Rational::from(self.a.clone()) + Rational::from(&self.c * &self.c)
    }

    /// `t² + b·t + d²`
    pub fn second_quadratic(&self, t: &Rational) -> Rational {
        t.square() + t * &Rational::from(self.b.clone()) + Rational::from(&self.d * &self.d)
    }

    /// The linear witnesses `(α, β)` of the branch at `t`:
    /// `α = t + K/(2d(d ± c))`, and `β = t − K/(2c(d + c))` for `t1`,
    /// `β = t + K/(2c(d − c))` for `t2`, where `K = ad² − bc²`.
    pub fn witnesses(&self, t: &Rational, branch: Branch) -> Result<(Rational, Rational)> {
        self.check_factors(branch)?;
        let cross = self.cross();
        let shift = self.shift(branch);
        let alpha_off = Rational::new(cross.clone(), &self.d * &shift * 2)?;
        let beta_off = Rational::new(cross, &self.c * &shift * 2)?;
        let alpha = t + alpha_off;
        let beta = match branch {
            Branch::T1 => t - beta_off,
            Branch::T2 => t + beta_off,
        };
        Ok((alpha, beta))
    }

    /// Check that `t` makes both quadratics rational squares and that the
    /// linear witnesses square to them. Returns `(|α|, |β|)`.
    pub fn verify_root(&self, t: &Rational, branch: Branch) -> Result<(Rational, Rational)> {
        let first = self.first_quadratic(t);
        let second = self.second_quadratic(t);
        let alpha = first.sqrt().map_err(|_| Error::not_square("t² + at + c²", &first))?;
        let beta = second.sqrt().map_err(|_| Error::not_square("t² + bt + d²", &second))?;
        let (wa, wb) = self.witnesses(t, branch)?;
        if wa.square() != first || wb.square() != second {
            return Err(Error::Invariant(format!(
                "branch {branch} witnesses do not square to the quadratics at t = {t}"
            )));
        }
        Ok((alpha, beta))
    }
}

pub fn theorem4_t1(sys: &QuadraticSystem) -> Result<Rational> {
    sys.solve(Branch::T1)
}

pub fn theorem4_t2(sys: &QuadraticSystem) -> Result<Rational> {
    sys.solve(Branch::T2)
}

/// `((t + m)² − n², 2n(t + m), (t + m)² + n²)` scaled by `q²`, `q` the
/// reduced denominator of `t`. The result need not be primitive.
pub fn substitute(t: &Rational, g: &GeneratorPair) -> SignedTriple {
    let q = t.denom();
    let shifted = t.numer() + &g.m * q;
    let nq = &g.n * q;
    let s2 = &shifted * &shifted;
    let n2 = &nq * &nq;
    SignedTriple {
        x: &s2 - &n2,
        y: &nq * &shifted * 2,
        z: s2 + n2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Both arms positive.
    PositivePrimitive,
    /// Exactly one arm negative, `x + y > 0`.
    NegativePrimitive,
    /// An arm is zero, e.g. `(1, 0, 1, 1)`.
    Trivial,
}

impl Classification {
    pub fn of(x: &Integer, y: &Integer) -> Self {
        if x.is_zero() || y.is_zero() {
            Classification::Trivial
        } else if x.is_positive() && y.is_positive() {
            Classification::PositivePrimitive
        } else {
            Classification::NegativePrimitive
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::PositivePrimitive => "positive_primitive",
            Classification::NegativePrimitive => "negative_primitive",
            Classification::Trivial => "trivial",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verified primitive solution of `x² + y² = z² = e⁴`, `x + y = f²`.
///
/// Only constructible through [`FermatSolution::new`], which checks every
/// relation exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FermatSolution {
    x: Integer,
    y: Integer,
    z: Integer,
    e: Integer,
    f: Integer,
    classification: Classification,
    chain_index: u64,
}

impl FermatSolution {
    pub fn new(x: Integer, y: Integer, z: Integer, chain_index: u64) -> Result<Self> {
        let sum = &x + &y;
        if !sum.is_positive() {
            return Err(Error::NonPositiveSum {
                sum: sum.to_string(),
            });
        }
        if &x * &x + &y * &y != &z * &z {
            return Err(Error::Invariant(format!("({x}, {y}, {z}) is not Pythagorean")));
        }
        if !gcd(&x, &y).is_one() {
            return Err(Error::Invariant(format!("gcd({x}, {y}) > 1")));
        }
        let e = exact_sqrt(&z, "z")?;
        let f = exact_sqrt(&sum, "x + y")?;
        let classification = Classification::of(&x, &y);
        Ok(FermatSolution {
            x,
            y,
            z,
            e,
            f,
            classification,
            chain_index,
        })
    }

    /// `(−119, 120, 169)`, `e = 13`, `f = 1`: the negative primitive seed
    /// generated by `(m, n) = (5, 12)`.
    pub fn seed() -> Self {
        Self::new((-119).into(), 120.into(), 169.into(), 0).expect("seed is a solution")
    }

    /// `(4565486027761, 1061652293520, 4687298610289)`, the smallest positive
    /// primitive solution.
    pub fn fermat() -> Self {
        Self::new(
            4565486027761u64.into(),
            1061652293520u64.into(),
            4687298610289u64.into(),
            1,
        )
        .expect("fermat triangle is a solution")
    }

    pub fn x(&self) -> &Integer {
        &self.x
    }
    pub fn y(&self) -> &Integer {
        &self.y
    }
    pub fn z(&self) -> &Integer {
        &self.z
    }
    pub fn e(&self) -> &Integer {
        &self.e
    }
    pub fn f(&self) -> &Integer {
        &self.f
    }
    pub fn classification(&self) -> Classification {
        self.classification
    }
    pub fn chain_index(&self) -> u64 {
        self.chain_index
    }

    pub fn with_index(mut self, chain_index: u64) -> Self {
        self.chain_index = chain_index;
        self
    }

    pub fn triple(&self) -> SignedTriple {
        SignedTriple::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    /// Re-check every relation from scratch.
    pub fn verify(&self) -> Result<()> {
        let again = Self::new(self.x.clone(), self.y.clone(), self.z.clone(), self.chain_index)?;
        if again != *self {
            return Err(Error::Invariant("stored e, f or classification is stale".into()));
        }
        Ok(())
    }
}

/// Divide a raw triple by `λ = gcd(X, Y)`; returns the reduced triple and `λ`.
pub fn reduce(raw: &SignedTriple) -> Result<(SignedTriple, Integer)> {
    let sum = raw.sum();
    if !sum.is_positive() {
        return Err(Error::NonPositiveSum {
            sum: sum.to_string(),
        });
    }
    if !raw.is_pythagorean() {
        return Err(Error::Invariant(format!(
            "raw triple ({}, {}, {}) is not Pythagorean",
            raw.x, raw.y, raw.z
        )));
    }
    let lambda = gcd(&raw.x, &raw.y);
    // λ² | Z², hence λ | Z
    let reduced = SignedTriple::new(&raw.x / &lambda, &raw.y / &lambda, &raw.z / &lambda);
    Ok((reduced, lambda))
}

pub fn reduce_and_classify(raw: &SignedTriple, index: u64) -> Result<FermatSolution> {
    let (t, _) = reduce(raw)?;
    FermatSolution::new(t.x, t.y, t.z, index)
}

/// Everything computed along one chain step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub branch: Branch,
    pub generators: GeneratorPair,
    pub system: QuadraticSystem,
    pub t: Rational,
    pub raw: SignedTriple,
    pub lambda: Integer,
    pub solution: FermatSolution,
    /// `t + m ≤ n`: the substitution did not land in the positive quadrant.
    pub below_threshold: bool,
}

/// The system `(a, b, c, d)` and generators read off a solution.
///
/// Generators follow the signed inversion; a pair with both entries negative
/// is replaced by its positive representative, which yields the same triple.
pub fn system_for(prev: &FermatSolution) -> Result<(GeneratorPair, QuadraticSystem)> {
    let inv = generators_from_triple(&prev.triple())?;
    let mut g = inv.generators;
    if g.m.is_negative() && g.n.is_negative() {
        g = g.negated();
    }
    let sys = QuadraticSystem {
        a: (&g.m + &g.n) * 2,
        b: &g.m * 2,
        c: inv.c,
        d: inv.d,
    };
    Ok((g, sys))
}

pub fn chain_step(prev: &FermatSolution, branch: Branch) -> Result<ChainStep> {
    let (generators, system) = system_for(prev)?;
    let t = system.solve(branch)?;
    system.verify_root(&t, branch)?;
    let raw = substitute(&t, &generators);
    let (reduced, lambda) = reduce(&raw)?;
    let solution = FermatSolution::new(reduced.x, reduced.y, reduced.z, prev.chain_index + 1)?;
    let below_threshold = &t + Rational::from(generators.m.clone()) <= Rational::from(generators.n.clone());
    Ok(ChainStep {
        branch,
        generators,
        system,
        t,
        raw,
        lambda,
        solution,
        below_threshold,
    })
}

/// Both branches of one step, evaluated in parallel.
pub fn chain_step_both(prev: &FermatSolution) -> (Result<ChainStep>, Result<ChainStep>) {
    rayon::join(|| chain_step(prev, Branch::T1), || chain_step(prev, Branch::T2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchPolicy {
    Uniform(Branch),
    PerStep(Vec<Branch>),
}

impl Default for BranchPolicy {
    fn default() -> Self {
        BranchPolicy::Uniform(Branch::T1)
    }
}

impl BranchPolicy {
    fn branch_at(&self, step: usize) -> Branch {
        match self {
            BranchPolicy::Uniform(b) => *b,
            BranchPolicy::PerStep(v) => v[step],
        }
    }
}

/// The verified prefix of a chain, and the error that stopped it, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRun {
    pub steps: Vec<ChainStep>,
    /// 1-based step number and its error.
    pub failure: Option<(usize, Error)>,
}

impl ChainRun {
    pub fn solutions(&self) -> impl Iterator<Item = &FermatSolution> {
        self.steps.iter().map(|s| &s.solution)
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn run_chain(seed: &FermatSolution, steps: usize, policy: &BranchPolicy) -> Result<ChainRun> {
    if steps == 0 {
        return Err(Error::Domain("a chain needs at least one step".into()));
    }
    if let BranchPolicy::PerStep(v) = policy {
        if v.len() != steps {
            return Err(Error::Domain(format!(
                "branch policy has {} entries for {steps} steps",
                v.len()
            )));
        }
    }
    seed.verify()?;

    let mut run = ChainRun {
        steps: Vec::with_capacity(steps),
        failure: None,
    };
    let mut prev = seed.clone();
    for i in 0..steps {
        match chain_step(&prev, policy.branch_at(i)).and_then(|s| s.solution.verify().map(|_| s)) {
            Ok(step) => {
                prev = step.solution.clone();
                run.steps.push(step);
            }
            Err(e) => {
                run.failure = Some((i + 1, e));
                break;
            }
        }
    }
    Ok(run)
}

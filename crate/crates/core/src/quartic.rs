//! Square completion of the arm-sum quartic.
//!
//! With `p = r² − s²`, `q = 2rs`, `x = p² − q²`, `y = 2pq` the hypotenuse is
//! `(r² + s²)²` and `x + y = s⁴·P(r/s)` where
//! `P(t) = t⁴ + 4t³ − 6t² − 4t + 1`. Given a rational `t` with `P(t)` square,
//! shift `t → T + t` and match `P(T + t)` against `(T² − αT − β)²` with
//! `β = √P(t)`, `α = c/(2β)`; the leftover is `T²·((a + 2α)T + b − α² + 2β)`,
//! whose nonzero root gives the next `t`.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_sqrt, gcd, Integer, Rational};
use crate::error::{Error, Result};
use crate::fermat_chain::FermatSolution;

/// Seed `r₁/s₁ = 1469/84`, which carries the smallest positive solution.
pub const SEED_R: u64 = 1469;
pub const SEED_S: u64 = 84;

/// Coefficients of `P(T + r/s) = T⁴ + aT³ + bT² + cT + d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCoeffs {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QuarticCoeffs {
    pub fn eval(&self, t: &Rational) -> Rational {
        // Horner
        let mut acc = t + &self.a;
        acc = acc * t + &self.b;
        acc = acc * t + &self.c;
        acc * t + &self.d
    }
}

pub fn quartic_coeffs(r: &Integer, s: &Integer) -> Result<QuarticCoeffs> {
    if s.is_zero() {
        return Err(Error::Domain("quartic coefficients need s != 0".into()));
    }
    let (r2, s2) = (r * r, s * s);
    let (r3, s3) = (&r2 * r, &s2 * s);
    let rs = r * s;
    let over = |num: Integer, den: &Integer| Rational::new(num, den.clone());
    Ok(QuarticCoeffs {
        a: over((r + s) * 4, s)?,
        b: over(&r2 * 6 + &rs * 12 - &s2 * 6, &s2)?,
        c: over((&r3 + &r2 * s * 3 - r * &s2 * 3 - &s3) * 4, &s3)?,
        d: over(
            &r2 * &r2 + &r3 * s * 4 - &r2 * &s2 * 6 - r * &s3 * 4 + &s2 * &s2,
            &(&s2 * &s2),
        )?,
    })
}

/// The shift `T` together with the completing square's `α` and `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticRoot {
    pub shift: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

impl QuarticRoot {
    /// `(T² − αT − β)²`
    pub fn completed_square(&self) -> Rational {
        let t = &self.shift;
        (t.square() - &self.alpha * t - &self.beta).square()
    }
}

/// `T = (c²/(4d) − b − 2√d) / (a + c/√d)`.
#[allow(non_snake_case)]
pub fn quartic_T(co: &QuarticCoeffs) -> Result<QuarticRoot> {
    if !co.d.is_positive() {
        return Err(Error::not_square("d", &co.d));
    }
    let beta = co.d.sqrt().map_err(|_| Error::not_square("d", &co.d))?;
    let alpha = co.c.checked_div(&(&beta * Rational::from(2)))?;
    let c_over_beta = co.c.checked_div(&beta)?;
    let den = &co.a + &c_over_beta;
    if den.is_zero() {
        return Err(Error::Domain("a + c/sqrt(d) = 0: no shift exists".into()));
    }
    let num = co.c.square().checked_div(&(&co.d * Rational::from(4)))? - &co.b - &beta * Rational::from(2);
    let shift = num.checked_div(&den)?;
    Ok(QuarticRoot { shift, alpha, beta })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticState {
    pub k: u64,
    pub r: Integer,
    pub s: Integer,
    pub t: Rational,
    pub p: Integer,
    pub q: Integer,
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
}

impl QuarticState {
    /// State for `t = r/s`; `t` is reduced so `s > 0`.
    pub fn from_t(k: u64, t: Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Domain("t = 0 gives the zero triple".into()));
        }
        let r = t.numer().clone();
        let s = t.denom().clone();
        let p = &r * &r - &s * &s;
        let q = &r * &s * 2;
        let x = &p * &p - &q * &q;
        let y = &p * &q * 2;
        let z = &p * &p + &q * &q;
        Ok(QuarticState {
            k,
            r,
            s,
            t,
            p,
            q,
            x,
            y,
            z,
        })
    }

    pub fn from_ratio(k: u64, r: Integer, s: Integer) -> Result<Self> {
        Self::from_t(k, Rational::new(r, s)?)
    }

    /// `r₁/s₁ = 1469/84`.
    pub fn seed() -> Self {
        Self::from_ratio(1, SEED_R.into(), SEED_S.into()).expect("seed ratio is valid")
    }

    /// `√z = r² + s²`
    pub fn e(&self) -> Integer {
        &self.r * &self.r + &self.s * &self.s
    }

    /// `√(x + y)`, when it exists.
    pub fn f(&self) -> Result<Integer> {
        exact_sqrt(&(&self.x + &self.y), "x + y")
    }

    pub fn is_primitive(&self) -> bool {
        gcd(&self.x, &self.y).is_one()
    }

    /// Structural relations plus square-ness of `x + y`.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("quartic state k = {}: {what}", self.k)));
        if Rational::new(self.r.clone(), self.s.clone())? != self.t || !self.s.is_positive() {
            return fail("t is not r/s in lowest terms");
        }
        if self.p != &self.r * &self.r - &self.s * &self.s || self.q != &self.r * &self.s * 2 {
            return fail("p, q do not match r, s");
        }
        if &self.x * &self.x + &self.y * &self.y != &self.z * &self.z {
            return fail("x² + y² != z²");
        }
        let e = self.e();
        if self.z != &e * &e {
            return fail("z != (r² + s²)²");
        }
        if gcd(&self.p, &self.q).is_one() && (&self.p + &self.q).is_odd() && !self.is_primitive() {
            return fail("coprime opposite-parity p, q gave a non-primitive triple");
        }
        self.f()?;
        Ok(())
    }

    /// The state as a [`FermatSolution`]; requires a primitive triple with
    /// positive arm sum.
    pub fn to_solution(&self) -> Result<FermatSolution> {
        FermatSolution::new(self.x.clone(), self.y.clone(), self.z.clone(), self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticStep {
    pub coeffs: QuarticCoeffs,
    pub root: QuarticRoot,
    pub state: QuarticState,
    /// `t ≤ 1`; recorded, never fatal.
    pub t_not_above_one: bool,
}

impl QuarticStep {
    /// `β² = d`, `2αβ = c`, and the quartic at `T` equals the completed square.
    pub fn verify(&self) -> Result<()> {
        let QuarticRoot { shift, alpha, beta } = &self.root;
        if beta.square() != self.coeffs.d {
            return Err(Error::Invariant("beta² != d".into()));
        }
        if alpha * beta * Rational::from(2) != self.coeffs.c {
            return Err(Error::Invariant("2·alpha·beta != c".into()));
        }
        if self.coeffs.eval(shift) != self.root.completed_square() {
            return Err(Error::Invariant(format!(
                "quartic at T = {shift} is not (T² − αT − β)²"
            )));
        }
        self.state.verify()
    }
}

pub fn quartic_step(state: &QuarticState) -> Result<QuarticStep> {
    let coeffs = quartic_coeffs(&state.r, &state.s)?;
    let root = quartic_T(&coeffs)?;
    let t = &root.shift + &state.t;
    let next = QuarticState::from_t(state.k + 1, t)?;
    let step = QuarticStep {
        t_not_above_one: next.t <= Rational::one(),
        coeffs,
        root,
        state: next,
    };
    step.verify()?;
    Ok(step)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticRun {
    pub seed: QuarticState,
    pub steps: Vec<QuarticStep>,
    /// Index `k` of the state that could not be produced, and why.
    pub failure: Option<(u64, Error)>,
}

impl QuarticRun {
    pub fn states(&self) -> impl Iterator<Item = &QuarticState> {
        std::iter::once(&self.seed).chain(self.steps.iter().map(|s| &s.state))
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

/// States `k = 1..=count` from the fixed seed `1469/84`.
pub fn run_quartic(count: u64) -> Result<QuarticRun> {
    run_quartic_from(QuarticState::seed(), count)
}

/// States `seed.k ..` (`count` of them, seed included) from any seed.
pub fn run_quartic_from(seed: QuarticState, count: u64) -> Result<QuarticRun> {
    if count == 0 {
        return Err(Error::Domain("run_quartic needs at least one state".into()));
    }
    seed.verify()?;
    let mut run = QuarticRun {
        seed,
        steps: Vec::new(),
        failure: None,
    };
    for _ in 1..count {
        let prev = run.states().last().expect("seed present");
        match quartic_step(prev) {
            Ok(step) => run.steps.push(step),
            Err(e) => {
                run.failure = Some((prev.k + 1, e));
                break;
            }
        }
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> Integer {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn coefficients_at_seed() {
        let co = quartic_coeffs(&1469.into(), &84.into()).unwrap();
        assert_eq!(co.a, rat("1553/21"));
        assert_eq!(co.b, rat("2397697/1176"));
        assert_eq!(co.c, rat("3682162385/148176"));
        assert_eq!(co.d, rat("5627138321281/49787136"));
    }

    #[test]
    fn coefficients_at_three_halves() {
        let co = quartic_coeffs(&3.into(), &2.into()).unwrap();
        assert_eq!(co.a, rat("10/1"));
        assert_eq!(co.b, rat("51/2"));
        assert_eq!(co.c, rat("37/2"));
        assert_eq!(co.d, rat("1/16"));
        assert_eq!(co.eval(&Rational::zero()), co.d);
        assert!(quartic_coeffs(&1.into(), &0.into()).is_err());
    }

    #[test]
    fn shift_at_seed() {
        let co = quartic_coeffs(&1469.into(), &84.into()).unwrap();
        let root = quartic_T(&co).unwrap();
        assert_eq!(root.beta, rat("2372159/7056"));
        assert_eq!(root.alpha, rat("3682162385/99630678"));
        assert_eq!(root.shift, rat("-5632732605275/619105033092"));
        assert_eq!(co.eval(&root.shift), root.completed_square());
    }

    #[test]
    fn three_halves_steps_to_seed() {
        // the negative seed (−119, 120, 169) sits at t = 3/2
        let start = QuarticState::from_ratio(0, 3.into(), 2.into()).unwrap();
        assert_eq!((start.x.clone(), start.y.clone(), start.z.clone()), ((-119).into(), 120.into(), 169.into()));
        let step = quartic_step(&start).unwrap();
        assert_eq!(step.root.alpha, rat("37/1"));
        assert_eq!(step.root.beta, rat("1/4"));
        assert_eq!(step.root.shift, rat("1343/84"));
        assert_eq!(step.state, QuarticState::seed());
    }

    #[test]
    fn seed_state() {
        let s = QuarticState::seed();
        assert_eq!(s.p, 2150905.into());
        assert_eq!(s.q, 246792.into());
        assert_eq!(s.x, 4565486027761u64.into());
        assert_eq!(s.y, 1061652293520u64.into());
        assert_eq!(s.z, 4687298610289u64.into());
        assert_eq!(s.to_solution().unwrap(), FermatSolution::fermat());
    }

    #[test]
    fn second_state() {
        let step = quartic_step(&QuarticState::seed()).unwrap();
        let st = &step.state;
        assert_eq!(st.t, rat("123672266091/14740596026"));
        assert_eq!(st.p, big("15077544228881381427605"));
        assert_eq!(st.q, big("3646005828134818308732"));
        assert_eq!(st.x, big("214038981475081188634947041892245670988588201"));
        assert_eq!(st.y, big("109945628264924023237017010068507003594693720"));
        assert_eq!(st.z, big("240625698472667313160415295005368384723483849"));
        assert!(!step.t_not_above_one);
    }

    #[test]
    fn non_square_constant_breaks_the_chain() {
        // t = 2: P(2) = 16 + 32 − 24 − 8 + 1 = 17
        let co = quartic_coeffs(&2.into(), &1.into()).unwrap();
        assert_eq!(co.d, rat("17/1"));
        assert!(matches!(quartic_T(&co), Err(Error::NotASquare { what: "d", .. })));
        let bad = QuarticState::from_ratio(1, 2.into(), 1.into()).unwrap();
        assert!(bad.verify().is_err());
        assert!(run_quartic_from(bad, 2).is_err());
    }

    #[test]
    fn run_lengths() {
        let run = run_quartic(2).unwrap();
        assert!(run.is_complete());
        let ks: Vec<_> = run.states().map(|s| s.k).collect();
        assert_eq!(ks, [1, 2]);
        assert!(run_quartic(0).is_err());
    }
}

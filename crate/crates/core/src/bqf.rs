//! Integral binary quadratic forms, the modular group action, Gauss
//! reduction, cycles and class-level symmetry predicates.
//!
//! All comparisons against `sqrt(delta)` are done in exact integer
//! arithmetic (square an inequality side, or take the integer square root);
//! no floating point enters the reduction theory.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::psl2::ProjMat;

/// The form `A x^2 + B x y + C y^2` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Whether `d` is a valid indefinite discriminant: positive, congruent to
/// 0 or 1 mod 4, and not a perfect square.
pub(crate) fn is_valid_discriminant(d: &BigInt) -> bool {
    if !d.is_positive() {
        return false;
    }
    let residue = d.mod_floor(&BigInt::from(4));
    if !residue.is_zero() && !residue.is_one() {
        return false;
    }
    let root = d.sqrt();
    &root * &root != *d
}

impl Form {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Self { a, b, c }
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// `B^2 - 4AC`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `gcd(A, B, C) = 1`.
    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Value of the form at an integer point.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    fn require_indefinite(&self) -> Result<()> {
        let d = self.discriminant();
        if is_valid_discriminant(&d) {
            Ok(())
        } else {
            Err(Error::InvalidDiscriminant(d))
        }
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::ImprimitiveForm(
                self.a.clone(),
                self.b.clone(),
                self.c.clone(),
            ))
        }
    }

    /// Change of variables by a determinant-1 matrix: the coefficients of
    /// `f(px + qy, rx + sy)`. The discriminant is invariant.
    pub fn act(&self, u: &ProjMat) -> Form {
        let (p, q, r, s) = u.entries();
        let a = self.eval(p, r);
        let c = self.eval(q, s);
        let b = BigInt::from(2) * (&self.a * p * q + &self.c * r * s) + &self.b * (p * s + q * r);
        Form::new(a, b, c)
    }

    /// Gauss' criterion `|sqrt(D) - 2|A|| < B < sqrt(D)`, evaluated exactly.
    pub fn is_reduced(&self) -> Result<bool> {
        self.require_indefinite()?;
        if !self.b.is_positive() {
            return Ok(false);
        }
        let delta = self.discriminant();
        let b2 = &self.b * &self.b;
        if b2 >= delta {
            return Ok(false);
        }
        // |sqrt(D) - 2|A|| < B  <=>  D + 4A^2 - B^2 < 4|A| sqrt(D)
        let lhs = &delta + BigInt::from(4) * &self.a * &self.a - &b2;
        if lhs.is_negative() {
            return Ok(true);
        }
        Ok(&lhs * &lhs < BigInt::from(16) * &self.a * &self.a * &delta)
    }

    /// The reduction exponent
    /// `t(f) = sgn(C) floor(B / 2|C|)` when `C^2 >= D`, and
    /// `t(f) = sgn(C) floor((floor(sqrt(D)) + B) / 2|C|)` otherwise.
    pub fn t_value(&self) -> Result<BigInt> {
        self.require_indefinite()?;
        // C != 0 follows: C = 0 would force D = B^2, a square
        let delta = self.discriminant();
        let two_abs_c = BigInt::from(2) * self.c.abs();
        let c2 = &self.c * &self.c;
        let t = if c2 >= delta {
            self.b.div_floor(&two_abs_c)
        } else {
            (delta.sqrt() + &self.b).div_floor(&two_abs_c)
        };
        Ok(if self.c.is_negative() { -t } else { t })
    }

    /// One Gauss reduction step: act by `S (RS)^{t(f)}`, giving
    /// `(C, 2Ct - B, Ct^2 - Bt + A)`.
    pub fn rho(&self) -> Result<Form> {
        Ok(self.rho_step()?.0)
    }

    /// Reduction step together with the acting matrix `[0 -1; 1 t]`.
    pub(crate) fn rho_step(&self) -> Result<(Form, ProjMat)> {
        let t = self.t_value()?;
        let a = self.c.clone();
        let b = BigInt::from(2) * &self.c * &t - &self.b;
        let c = &self.c * &t * &t - &self.b * &t + &self.a;
        let step = ProjMat::new(BigInt::zero(), BigInt::from(-1), BigInt::one(), t)
            .expect("rho matrices are unimodular");
        Ok((Form::new(a, b, c), step))
    }

    /// Iterate `rho` until the form is reduced. Returns the reduced form,
    /// the accumulated transformation (so `g = f.act(u)`), and the number
    /// of steps taken.
    pub fn reduce(&self) -> Result<(Form, ProjMat, usize)> {
        self.require_primitive()?;
        self.require_indefinite()?;
        Ok(self.reduce_unchecked())
    }

    pub(crate) fn reduce_unchecked(&self) -> (Form, ProjMat, usize) {
        // generous termination bound; reduction provably descends
        let coeff_bits = self.a.bits().max(self.c.bits());
        let bound = 4 + coeff_bits as usize + self.discriminant().sqrt().bits() as usize;

        let mut g = self.clone();
        let mut u = ProjMat::identity();
        let mut steps = 0usize;
        while !g.is_reduced().expect("domain checked by caller") {
            let (next, step) = g.rho_step().expect("domain checked by caller");
            g = next;
            u = u.multiply(&step);
            steps += 1;
            assert!(
                steps <= bound,
                "reduction exceeded its step bound on {self}"
            );
        }
        (g, u, steps)
    }

    /// The closed `rho`-orbit through the reduction of `f`.
    pub fn cycle(&self) -> Result<Cycle> {
        self.require_primitive()?;
        self.require_indefinite()?;
        Ok(self.cycle_unchecked())
    }

    pub(crate) fn cycle_unchecked(&self) -> Cycle {
        let (start, _, _) = self.reduce_unchecked();
        let mut forms = vec![start.clone()];
        let mut g = start.rho().expect("reduced forms stay in the domain");
        while g != start {
            forms.push(g.clone());
            g = g.rho().expect("reduced forms stay in the domain");
        }
        Cycle::from_orbit(forms)
    }

    /// Same `PSL2(Z)` orbit, decided by comparing canonical cycles.
    pub fn equivalent(&self, other: &Form) -> Result<bool> {
        let (d1, d2) = (self.discriminant(), other.discriminant());
        if d1 != d2 {
            return Err(Error::DiscriminantMismatch(d1, d2));
        }
        Ok(self.cycle()? == other.cycle()?)
    }

    /// The class inverse, realized as `(A, -B, C)`.
    pub fn inverse_class(&self) -> Form {
        Form::new(self.a.clone(), -&self.b, self.c.clone())
    }

    pub(crate) fn negated(&self) -> Form {
        Form::new(-&self.a, -&self.b, -&self.c)
    }

    /// A class equal to its own inverse.
    pub fn is_ambiguous_class(&self) -> Result<bool> {
        self.equivalent(&self.inverse_class())
    }

    /// A class fixed by negation, i.e. whose matrices are conjugate to
    /// their inverses; such classes contain forms with `C = -A`.
    pub fn is_reciprocal_class(&self) -> Result<bool> {
        self.equivalent(&self.negated())
    }

    /// Minimum of `|f(x, y)|` over nonzero integer points, computed as the
    /// least `|A|` along the cycle.
    pub fn minimum(&self) -> Result<BigInt> {
        let cycle = self.cycle()?;
        Ok(cycle
            .members()
            .iter()
            .map(|g| g.a.abs())
            .min()
            .expect("cycles are nonempty"))
    }
}

impl From<(i64, i64, i64)> for Form {
    fn from((a, b, c): (i64, i64, i64)) -> Self {
        Form::new(a.into(), b.into(), c.into())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("form must be \"A,B,C\", got {s:?}")));
        }
        let mut vals = Vec::with_capacity(3);
        for part in parts {
            vals.push(
                BigInt::from_str(part.trim())
                    .map_err(|_| Error::Parse(format!("bad integer {part:?} in form")))?,
            );
        }
        let c = vals.pop().unwrap();
        let b = vals.pop().unwrap();
        let a = vals.pop().unwrap();
        Ok(Form::new(a, b, c))
    }
}

/// The cycle of a class: the finite closed orbit of a reduced form under
/// `rho`, stored starting from its lexicographically least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    forms: Vec<Form>,
}

impl Cycle {
    fn from_orbit(mut forms: Vec<Form>) -> Self {
        let least = forms
            .iter()
            .enumerate()
            .min_by(|(_, f), (_, g)| f.cmp(g))
            .map(|(i, _)| i)
            .expect("cycles are nonempty");
        forms.rotate_left(least);
        Cycle { forms }
    }

    pub fn members(&self) -> &[Form] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// The canonical (least) member.
    pub fn representative(&self) -> &Form {
        &self.forms[0]
    }
}

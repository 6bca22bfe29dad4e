//! The Pell equation `X^2 - delta Y^2 = 4`, automorphism matrices of
//! indefinite forms, and the two directions of the form/matrix dictionary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::bqf::{is_valid_discriminant, Form};
use crate::error::{Error, Result};
use crate::psl2::{ElementClass, ProjMat};

/// A positive solution of `X^2 - delta Y^2 = 4` for some fixed `delta`.
/// The fundamental solution is the one with least `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    x: BigInt,
    y: BigInt,
}

impl PellSolution {
    pub fn new(x: BigInt, y: BigInt) -> Result<Self> {
        if !x.is_positive() || !y.is_positive() {
            return Err(Error::Parse(format!(
                "Pell solutions must be positive, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// `x^2 - delta y^2 = 4` exactly?
    pub fn solves(&self, delta: &BigInt) -> bool {
        &self.x * &self.x - delta * &self.y * &self.y == BigInt::from(4)
    }
}

/// The reduced principal form `(1, b0, (b0^2 - delta)/4)` with `b0` the
/// largest integer below `sqrt(delta)` of the right parity.
fn principal_form(delta: &BigInt) -> Form {
    let mut b0 = delta.sqrt();
    if b0.mod_floor(&BigInt::from(2)) != delta.mod_floor(&BigInt::from(2)) {
        b0 -= 1;
    }
    let c = (&b0 * &b0 - delta) / BigInt::from(4);
    Form::new(BigInt::one(), b0, c)
}

/// The fundamental solution of `X^2 - delta Y^2 = 4`: walk the reduction
/// cycle of the principal form once around, multiply the step matrices,
/// and read the solution off the resulting automorphism.
pub fn pell4_fundamental(delta: &BigInt) -> Result<PellSolution> {
    if !is_valid_discriminant(delta) {
        return Err(Error::InvalidDiscriminant(delta.clone()));
    }
    let start = principal_form(delta);
    debug_assert!(start.is_reduced().unwrap());

    let mut g = start.rho()?;
    let mut aut = start.rho_step()?.1;
    while g != start {
        let (next, step) = g.rho_step()?;
        g = next;
        aut = aut.multiply(&step);
    }

    debug_assert_eq!(aut.classify(), ElementClass::Hyperbolic);
    let x = aut.trace();
    let y = aut.entries().2.abs(); // lower-left entry is A*y with A = 1
    let solution = PellSolution::new(x, y)?;
    assert!(
        solution.solves(delta),
        "cycle automorphism failed the Pell identity for delta = {delta}"
    );
    Ok(solution)
}

/// The automorphism of `f` attached to a solution `(x, y)`:
/// `[(x - By)/2, -Cy; Ay, (x + By)/2]`.
pub fn automorphism_from_solution(f: &Form, s: &PellSolution) -> Result<ProjMat> {
    let delta = f.discriminant();
    if !s.solves(&delta) {
        return Err(Error::NotPellSolution {
            x: s.x.clone(),
            y: s.y.clone(),
            delta,
        });
    }
    let (a, b, c) = f.coefficients();
    let by = b * &s.y;
    // x = By (mod 2) for every solution, so the halves are exact
    let top = (&s.x - &by) / BigInt::from(2);
    let bottom = (&s.x + &by) / BigInt::from(2);
    ProjMat::new(top, -(c * &s.y), a * &s.y, bottom)
}

/// The generator of the automorphism group of `f`, built from the
/// fundamental Pell solution; its lower-left entry is `A y` with `y > 0`.
pub fn fundamental_automorphism(f: &Form) -> Result<ProjMat> {
    let delta = f.discriminant();
    if !is_valid_discriminant(&delta) {
        return Err(Error::InvalidDiscriminant(delta));
    }
    let s = pell4_fundamental(&delta)?;
    automorphism_from_solution(f, &s)
}

/// The primitive indefinite form fixed by a hyperbolic matrix:
/// `f_M = (r, s - p, -q) / gcd(q, s - p, r)` (the stored representative
/// already has positive trace).
pub fn matrix_to_form(m: &ProjMat) -> Result<Form> {
    if m.classify() != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic(m.trace()));
    }
    let (p, q, r, s) = m.entries();
    let sp = s - p;
    let g = q.gcd(&sp).gcd(r);
    Ok(Form::new(r / &g, sp / &g, -q / &g))
}

/// The two mutually inverse hyperbolic matrices mapping onto `f`, built
/// from the fundamental solution `(x, y)` and the two choices
/// `beta = (-yB +/- x) / 2`.
pub fn form_to_matrices(f: &Form) -> Result<(ProjMat, ProjMat)> {
    let delta = f.discriminant();
    if !is_valid_discriminant(&delta) {
        return Err(Error::InvalidDiscriminant(delta));
    }
    let s = pell4_fundamental(&delta)?;
    let (a, b, c) = f.coefficients();
    let yb = b * &s.y;
    let mut out = Vec::with_capacity(2);
    for beta in [
        (-&yb + &s.x) / BigInt::from(2),
        (-&yb - &s.x) / BigInt::from(2),
    ] {
        out.push(ProjMat::new(
            beta.clone(),
            -(c * &s.y),
            a * &s.y,
            &yb + &beta,
        )?);
    }
    let minus = out.pop().unwrap();
    let plus = out.pop().unwrap();
    Ok((plus, minus))
}

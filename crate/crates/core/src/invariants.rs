//! Numeric invariants of a çark: combinatorial spine length, trace,
//! matrix discriminant, hyperbolic spine length, annulus modulus,
//! multiplier, and the Markoff value of a form.
//!
//! Everything upstream of this module is exact; floating point appears
//! only here. Note that `tau^2 - 4` is the discriminant of the matrix,
//! which equals `delta(f) * y^2` for the fundamental automorphism of a
//! form; the two are exposed separately and never conflated.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::bqf::Form;
use crate::error::{Error, Result};
use crate::psl2::{matrix_to_word, ElementClass, ProjMat};

#[derive(Debug, Clone, PartialEq)]
pub struct CarkInvariants {
    /// Combinatorial spine length `l_c`: two spine vertices per Farey
    /// branch, i.e. twice the necklace length.
    pub spine_length: BigUint,
    /// Absolute trace `tau` of the matrix.
    pub trace: BigInt,
    /// `tau^2 - 4`, the discriminant of the matrix.
    pub matrix_discriminant: BigInt,
    /// `l_h = 2 arccosh(tau / 2)`, the length of the closed geodesic.
    pub hyperbolic_length: f64,
    /// The multiplier `alpha = (tau + sqrt(tau^2 - 4)) / 2 > 1`.
    pub multiplier: f64,
    /// The modulus `exp(pi^2 / ln alpha) > 1` of the ambient annulus.
    pub modulus: f64,
}

fn to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

pub fn invariants_of(m: &ProjMat) -> Result<CarkInvariants> {
    if m.classify() != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic(m.trace()));
    }
    let (word, _) = matrix_to_word(m)?;
    let trace = m.trace();
    let matrix_discriminant = &trace * &trace - BigInt::from(4);

    let tau = to_f64(&trace);
    let multiplier = (tau + to_f64(&matrix_discriminant).sqrt()) / 2.0;
    let hyperbolic_length = 2.0 * (tau / 2.0).acosh();
    let modulus = (PI * PI / multiplier.ln()).exp();

    Ok(CarkInvariants {
        spine_length: word.total_exponent() * 2u8,
        trace,
        matrix_discriminant,
        hyperbolic_length,
        multiplier,
        modulus,
    })
}

/// The Markoff value `sqrt(delta) / m(f)` where `m(f)` is the minimum of
/// `|f|` over nonzero integer points.
pub fn markoff_value(f: &Form) -> Result<f64> {
    let min = f.minimum()?;
    Ok(to_f64(&f.discriminant()).sqrt() / to_f64(&min))
}

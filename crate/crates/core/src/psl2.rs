//! Exact arithmetic on elements of the modular group: projective integer
//! matrices, words in the generators, conjugacy normal forms and the trace
//! classification.
//!
//! The group is generated by the order-2 element `S = [0 -1; 1 0]` and the
//! order-3 element `R = [1 -1; 1 0]`. Projectively `R^2 S = [1 0; 1 1]` and
//! `R S = [1 1; 0 1]`, so every hyperbolic conjugacy class has a
//! representative `L^{a_1} T^{b_1} ... L^{a_k} T^{b_k}` with all exponents
//! positive, where `L` and `T` denote those two parabolics. Words are stored
//! in that block form; letter-level words over `{S, R, R^2}` are derived on
//! demand.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rotation::least_rotation_index;

/// A projective 2x2 integer matrix `[p q; r s]` of determinant +1, i.e. an
/// element of the modular group. `M` and `-M` denote the same element; the
/// stored representative has positive trace, and when the trace vanishes the
/// first nonzero entry among `(p, q, r)` is positive. Equality is therefore
/// plain field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjMat {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

/// Conjugacy type of a modular group element, determined by `|trace|`:
/// 0 is order 2, 1 is order 3, 2 is parabolic (or the identity), and
/// anything at least 3 is hyperbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Identity,
    Elliptic2,
    Elliptic3,
    Parabolic,
    Hyperbolic,
}

impl ProjMat {
    /// Build a matrix from row-major entries, checking `ps - qr = 1`.
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let det = &p * &s - &q * &r;
        if !det.is_one() {
            return Err(Error::NonUnitDeterminant(det));
        }
        Ok(Self { p, q, r, s }.normalized())
    }

    fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self::new(p.into(), q.into(), r.into(), s.into()).expect("determinant 1")
    }

    fn normalized(mut self) -> Self {
        let trace = &self.p + &self.s;
        let flip = match trace.sign() {
            Sign::Minus => true,
            Sign::Plus => false,
            Sign::NoSign => {
                let lead = [&self.p, &self.q, &self.r]
                    .into_iter()
                    .find(|v| !v.is_zero())
                    .expect("a determinant-1 matrix has a nonzero entry in (p, q, r)");
                lead.is_negative()
            }
        };
        if flip {
            self.p = -self.p;
            self.q = -self.q;
            self.r = -self.r;
            self.s = -self.s;
        }
        self
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// The order-2 generator `S`, acting as `z -> -1/z`.
    pub fn gen_s() -> Self {
        Self::from_i64(0, -1, 1, 0)
    }

    /// The order-3 generator `R`, acting as `z -> (z-1)/z`.
    pub fn gen_r() -> Self {
        Self::from_i64(1, -1, 1, 0)
    }

    /// `T^n = (RS)^n`, the upper shear `[1 n; 0 1]`.
    pub fn t_power(n: &BigInt) -> Self {
        Self::new(BigInt::one(), n.clone(), BigInt::zero(), BigInt::one()).expect("unit shear")
    }

    /// `L^n = (R^2 S)^n`, the lower shear `[1 0; n 1]`.
    pub fn l_power(n: &BigInt) -> Self {
        Self::new(BigInt::one(), BigInt::zero(), n.clone(), BigInt::one()).expect("unit shear")
    }

    /// Entries of the stored representative, row-major.
    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.p, &self.q, &self.r, &self.s)
    }

    /// Trace of the stored representative; by normalization this equals
    /// `|trace|` of the projective element.
    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn is_identity(&self) -> bool {
        self.q.is_zero() && self.r.is_zero() && self.p.is_one()
    }

    /// Matrix product, normalized.
    pub fn multiply(&self, other: &Self) -> Self {
        Self {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
        .normalized()
    }

    /// Group inverse: `[s -q; -r p]`.
    pub fn inverse(&self) -> Self {
        Self {
            p: self.s.clone(),
            q: -&self.q,
            r: -&self.r,
            s: self.p.clone(),
        }
        .normalized()
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity();
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Conjugacy type from the absolute trace.
    pub fn classify(&self) -> ElementClass {
        let t = self.trace();
        if t.is_zero() {
            ElementClass::Elliptic2
        } else if t.is_one() {
            ElementClass::Elliptic3
        } else if t == BigInt::from(2) {
            if self.is_identity() {
                ElementClass::Identity
            } else {
                ElementClass::Parabolic
            }
        } else {
            ElementClass::Hyperbolic
        }
    }

    pub(crate) fn is_nonnegative(&self) -> bool {
        !self.p.is_negative()
            && !self.q.is_negative()
            && !self.r.is_negative()
            && !self.s.is_negative()
    }
}

impl Mul for &ProjMat {
    type Output = ProjMat;
    fn mul(self, rhs: &ProjMat) -> ProjMat {
        self.multiply(rhs)
    }
}

impl fmt::Display for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p, self.q, self.r, self.s)
    }
}

impl FromStr for ProjMat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "matrix must be \"p,q,r,s\", got {s:?}"
            )));
        }
        let mut vals = Vec::with_capacity(4);
        for part in parts {
            vals.push(
                BigInt::from_str(part.trim())
                    .map_err(|_| Error::Parse(format!("bad integer {part:?} in matrix")))?,
            );
        }
        let s_entry = vals.pop().unwrap();
        let r = vals.pop().unwrap();
        let q = vals.pop().unwrap();
        let p = vals.pop().unwrap();
        ProjMat::new(p, q, r, s_entry).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A cyclic word `(R^2 S)^{a_1} (R S)^{b_1} ... (R^2 S)^{a_k} (R S)^{b_k}`
/// stored as its positive exponent pairs. Rotating the block sequence gives
/// a conjugate element, so equality compares canonical rotations.
#[derive(Debug, Clone, Eq)]
pub struct BlockWord {
    blocks: Vec<(BigUint, BigUint)>,
}

impl BlockWord {
    pub fn new(blocks: Vec<(BigUint, BigUint)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyWord);
        }
        if blocks.iter().any(|(a, b)| a.is_zero() || b.is_zero()) {
            return Err(Error::ZeroExponent);
        }
        Ok(Self { blocks })
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(a, b)| (BigUint::from(a), BigUint::from(b)))
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[(BigUint, BigUint)] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Sum of all exponents; the length of the corresponding necklace.
    pub fn total_exponent(&self) -> BigUint {
        self.blocks
            .iter()
            .fold(BigUint::zero(), |acc, (a, b)| acc + a + b)
    }

    /// Least rotation of the block sequence.
    pub fn canonical_rotation(&self) -> Self {
        let k = least_rotation_index(&self.blocks);
        let mut blocks = self.blocks.clone();
        blocks.rotate_left(k);
        Self { blocks }
    }

    /// True when no proper rotation fixes the block sequence, i.e. the word
    /// is not a positive power of a shorter word.
    pub fn is_aperiodic(&self) -> bool {
        let k = self.blocks.len();
        for d in 1..k {
            if k.is_multiple_of(d) && (0..k).all(|i| self.blocks[i] == self.blocks[(i + d) % k]) {
                return false;
            }
        }
        true
    }

    /// Letter-level rendering over the generators, e.g. `(R^2S)^2(RS)^3`.
    pub fn to_rs_string(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.blocks {
            out.push_str("(R^2S)");
            if !a.is_one() {
                out.push_str(&format!("^{a}"));
            }
            out.push_str("(RS)");
            if !b.is_one() {
                out.push_str(&format!("^{b}"));
            }
        }
        out
    }
}

impl PartialEq for BlockWord {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_rotation().blocks == other.canonical_rotation().blocks
    }
}

impl fmt::Display for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(a, b)| format!("{a},{b}"))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for BlockWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for pair in s.split(';') {
            let mut it = pair.split(',');
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!(
                    "word must be \"a1,b1;a2,b2;...\", got {s:?}"
                )));
            };
            let a = BigUint::from_str(a.trim())
                .map_err(|_| Error::Parse(format!("bad exponent {a:?} in word")))?;
            let b = BigUint::from_str(b.trim())
                .map_err(|_| Error::Parse(format!("bad exponent {b:?} in word")))?;
            blocks.push((a, b));
        }
        Self::new(blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn block_matrix(a: &BigUint, b: &BigUint) -> ProjMat {
    // L^a T^b = [1 b; a ab+1]
    let a = BigInt::from(a.clone());
    let b = BigInt::from(b.clone());
    let ab1 = &a * &b + 1;
    ProjMat::new(BigInt::one(), b, a, ab1).expect("block matrices are unimodular")
}

/// Evaluate a block word to the matrix `L^{a_1} T^{b_1} ... L^{a_k} T^{b_k}`.
/// The result is always hyperbolic.
pub fn word_to_matrix(word: &BlockWord) -> ProjMat {
    let mut acc = ProjMat::identity();
    for (a, b) in word.blocks() {
        acc = acc.multiply(&block_matrix(a, b));
    }
    acc
}

/// Decompose a hyperbolic matrix as a conjugated positive block word:
/// returns `(w, v)` with `word_to_matrix(&w) = v^-1 m v` and `w` in its
/// canonical (least) rotation.
///
/// The conjugator is found by reducing the quadratic form attached to `m`
/// and walking its reduction cycle until the conjugated matrix has
/// nonnegative entries; such a matrix factors uniquely over the positive
/// monoid generated by `L` and `T`, and the factorization is read off by
/// Euclidean peeling.
pub fn matrix_to_word(m: &ProjMat) -> Result<(BlockWord, ProjMat)> {
    if m.classify() != ElementClass::Hyperbolic {
        return Err(Error::NotHyperbolic(m.trace()));
    }

    let form = crate::pell::matrix_to_form(m)?;
    let (mut g, mut v, _) = form.reduce_unchecked();
    let cycle_start = g.clone();
    let mut nonneg = None;
    let mut stepped = false;
    loop {
        let w = v.inverse().multiply(m).multiply(&v);
        if w.is_nonnegative() {
            nonneg = Some(w);
            break;
        }
        if stepped && g == cycle_start {
            break;
        }
        let (next, step) = g.rho_step().expect("reduced forms stay in the domain");
        g = next;
        v = v.multiply(&step);
        stepped = true;
    }
    let w = nonneg.expect("every hyperbolic conjugacy class contains a nonnegative word matrix");

    let (mut blocks, adj) = peel_blocks(&w);
    v = v.multiply(&adj);

    // rotate to the canonical block rotation, conjugating by the skipped prefix
    let k = least_rotation_index(&blocks);
    for (a, b) in blocks.iter().take(k) {
        v = v.multiply(&block_matrix(a, b));
    }
    blocks.rotate_left(k);

    Ok((BlockWord::new(blocks)?, v))
}

/// Factor a nonnegative hyperbolic matrix `w` over the monoid generated by
/// `L` and `T` and regroup the runs cyclically so the word starts with an
/// `L` run and ends with a `T` run. Returns `(blocks, adj)` with
/// `blocks = adj^-1 w adj`.
fn peel_blocks(w: &ProjMat) -> (Vec<(BigUint, BigUint)>, ProjMat) {
    let (p, q, r, s) = w.entries();
    let mut p = p.clone();
    let mut q = q.clone();
    let mut r = r.clone();
    let mut s = s.clone();

    // linear factorization into maximal runs; only the first T run may be empty
    let mut runs: Vec<(bool, BigInt)> = Vec::new(); // (is_t_run, exponent)
    loop {
        if r.is_zero() {
            // remainder is T^q (or the identity)
            if !q.is_zero() {
                runs.push((true, q.clone()));
            }
            break;
        }
        let bt = (&p / &r).min(&q / &s);
        if !bt.is_zero() {
            p -= &bt * &r;
            q -= &bt * &s;
            runs.push((true, bt));
        }
        if q.is_zero() {
            // remainder is L^r
            debug_assert!(!r.is_zero());
            runs.push((false, r.clone()));
            break;
        }
        let al = (&r / &p).min(&s / &q);
        debug_assert!(al.is_positive(), "no runs left yet not the identity");
        r -= &al * &p;
        s -= &al * &q;
        runs.push((false, al));
    }
    debug_assert!(runs.len() >= 2, "hyperbolic words mix L and T runs");

    // cyclic regrouping: move a leading T run to the back, or a trailing L
    // run to the front, conjugating accordingly (at most one move applies)
    let mut adj = ProjMat::identity();
    if runs[0].0 {
        let (_, c0) = runs.remove(0);
        adj = ProjMat::t_power(&c0);
        if let Some((true, b)) = runs.last_mut() {
            *b += &c0;
        } else {
            runs.push((true, c0));
        }
    } else if let Some(&(false, _)) = runs.last() {
        let (_, tail) = runs.pop().expect("nonempty");
        adj = ProjMat::l_power(&-&tail);
        debug_assert!(!runs[0].0);
        runs[0].1 += &tail;
    }

    let blocks: Vec<(BigUint, BigUint)> = runs
        .chunks(2)
        .map(|pair| {
            debug_assert!(!pair[0].0 && pair[1].0, "runs alternate L then T");
            (
                pair[0].1.to_biguint().expect("positive run"),
                pair[1].1.to_biguint().expect("positive run"),
            )
        })
        .collect();
    (blocks, adj)
}

/// True when the matrix is not a positive power of another element, i.e.
/// its block word is aperiodic as a cyclic sequence.
pub fn is_primitive_matrix(m: &ProjMat) -> Result<bool> {
    let (word, _) = matrix_to_word(m)?;
    Ok(word.is_aperiodic())
}

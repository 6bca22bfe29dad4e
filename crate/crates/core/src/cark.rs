//! Çark encodings. A çark is the quotient of the Farey tree by the cyclic
//! group generated by a hyperbolic element: a single cycle (the spine) with
//! Farey branches leaving toward the inner or outer boundary of an annulus.
//! All of its combinatorics fits in a binary cyclic word: branch toward the
//! inner boundary is `1`, toward the outer boundary is `0`. A directed çark
//! is such a word up to rotation (a necklace), an undirected çark is a word
//! up to rotation and reversal (a bracelet).
//!
//! The block `(R^2 S)^a (R S)^b` of a word contributes `1^a 0^b` to the
//! necklace, so runs of `1` mark the Farey components on the inner side and
//! the run boundaries are exactly the reduced edges of the spine.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bqf::Form;
use crate::error::{Error, Result};
use crate::psl2::{matrix_to_word, BlockWord};
use crate::rotation::least_rotation;

/// A binary cyclic word up to rotation; the stored representative is the
/// lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    word: Vec<u8>,
}

impl Necklace {
    /// Canonicalize a word of `0`/`1` symbols.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Parse("necklace words must be nonempty".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("necklace symbols must be 0 or 1".into()));
        }
        Ok(Self {
            word: least_rotation(&bits),
        })
    }

    /// The canonical representative.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.word.iter().all(|&b| b == self.word[0])
    }

    fn require_mixed(&self) -> Result<()> {
        if self.is_constant() {
            Err(Error::ConstantWord)
        } else {
            Ok(())
        }
    }

    /// Mirror image about a line through the center of the spine: word
    /// reversal. An involution; corresponds to class inversion.
    pub fn reverse_r(&self) -> Necklace {
        let mut rev = self.word.clone();
        rev.reverse();
        Necklace {
            word: least_rotation(&rev),
        }
    }

    /// Reflection with respect to the spine: swap the symbols `0` and `1`,
    /// exchanging the two boundary components. An involution.
    pub fn swap_m(&self) -> Necklace {
        let swapped: Vec<u8> = self.word.iter().map(|&b| 1 - b).collect();
        Necklace {
            word: least_rotation(&swapped),
        }
    }

    /// True when the word is aperiodic, i.e. the çark's spine is not
    /// periodic.
    pub fn is_primitive(&self) -> bool {
        let n = self.word.len();
        for d in 1..n {
            if n.is_multiple_of(d) && (0..n).all(|i| self.word[i] == self.word[(i + d) % n]) {
                return false;
            }
        }
        true
    }

    /// The Lyndon word of an aperiodic necklace: its least rotation, which
    /// always starts with `0` and ends with `1` except for the one-letter
    /// words.
    pub fn lyndon_representative(&self) -> Result<Vec<u8>> {
        if !self.is_primitive() {
            return Err(Error::PeriodicWord);
        }
        Ok(self.word.clone())
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.word {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Necklace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Result<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("bad necklace symbol {other:?}"))),
            })
            .collect();
        Self::from_bits(bits?)
    }
}

/// A binary cyclic word up to rotation and reversal; an undirected çark.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracelet {
    word: Vec<u8>,
}

impl Bracelet {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        Ok(Necklace::from_bits(bits)?.into())
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }
}

impl From<Necklace> for Bracelet {
    fn from(n: Necklace) -> Self {
        let rev = n.reverse_r();
        let word = if rev.word < n.word { rev.word } else { n.word };
        Bracelet { word }
    }
}

impl From<&Necklace> for Bracelet {
    fn from(n: &Necklace) -> Self {
        n.clone().into()
    }
}

impl fmt::Display for Bracelet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.word {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Run-length form of a çark: the weights `(n_0, ..., n_{2k-1})` of the
/// alternating symbol runs, plus the symbol the first run consists of.
/// Two weighted çarks are equal when they decode to the same necklace.
#[derive(Debug, Clone, Eq)]
pub struct WeightedCark {
    weights: Vec<u64>,
    exponent: u8,
}

impl WeightedCark {
    pub fn new(weights: Vec<u64>, exponent: u8) -> Result<Self> {
        if weights.is_empty() || !weights.len().is_multiple_of(2) {
            return Err(Error::Parse(
                "weighted çarks need a nonempty, even run list".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::Parse("run lengths must be positive".into()));
        }
        if exponent > 1 {
            return Err(Error::Parse("the exponent must be 0 or 1".into()));
        }
        Ok(Self { weights, exponent })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn exponent(&self) -> u8 {
        self.exponent
    }
}

impl PartialEq for WeightedCark {
    fn eq(&self, other: &Self) -> bool {
        weighted_decode(self) == weighted_decode(other)
    }
}

/// Run-length encode a necklace. The canonical representative of a mixed
/// word starts with `0` and ends with `1`, so the exponent is always 0 and
/// the linear runs are the cyclic runs.
pub fn weighted_encode(n: &Necklace) -> Result<WeightedCark> {
    n.require_mixed()?;
    let mut weights = Vec::new();
    let mut run = 1u64;
    for i in 1..n.word.len() {
        if n.word[i] == n.word[i - 1] {
            run += 1;
        } else {
            weights.push(run);
            run = 1;
        }
    }
    weights.push(run);
    WeightedCark::new(weights, n.word[0])
}

/// Expand a weighted çark back to its necklace.
pub fn weighted_decode(w: &WeightedCark) -> Necklace {
    let mut bits = Vec::new();
    let mut symbol = w.exponent;
    for &run in &w.weights {
        bits.extend(std::iter::repeat_n(symbol, run as usize));
        symbol = 1 - symbol;
    }
    Necklace::from_bits(bits).expect("validated construction")
}

/// The necklace of a block word: `(R^2 S)^a (R S)^b` contributes `1^a 0^b`.
pub fn word_to_necklace(w: &BlockWord) -> Necklace {
    let mut bits = Vec::new();
    for (a, b) in w.blocks() {
        let a = a.to_usize().expect("necklace fits in memory");
        let b = b.to_usize().expect("necklace fits in memory");
        bits.extend(std::iter::repeat_n(1u8, a));
        bits.extend(std::iter::repeat_n(0u8, b));
    }
    Necklace::from_bits(bits).expect("block words are nonempty")
}

/// The block word of a necklace containing both symbols: align on a
/// boundary from `0` to `1` and read off the `1`/`0` run pairs.
pub fn necklace_to_word(n: &Necklace) -> Result<BlockWord> {
    n.require_mixed()?;
    let w = &n.word;
    let len = w.len();
    let start = (0..len)
        .find(|&i| w[i] == 1 && w[(i + len - 1) % len] == 0)
        .expect("mixed words have a 0-to-1 boundary");

    let mut blocks = Vec::new();
    let mut i = 0;
    while i < len {
        let mut a = BigUint::from(0u8);
        while w[(start + i) % len] == 1 {
            a += 1u8;
            i += 1;
        }
        let mut b = BigUint::from(0u8);
        while i < len && w[(start + i) % len] == 0 {
            b += 1u8;
            i += 1;
        }
        blocks.push((a, b));
    }
    Ok(BlockWord::new(blocks)?.canonical_rotation())
}

/// Twice the number of maximal `1`-runs: the number of reduced edges on
/// the spine (each inner Farey component is flanked by two of them).
pub fn reduced_edge_count(n: &Necklace) -> Result<usize> {
    n.require_mixed()?;
    let len = n.word.len();
    let one_runs = (0..len)
        .filter(|&i| n.word[i] == 1 && n.word[(i + len - 1) % len] == 0)
        .count();
    Ok(2 * one_runs)
}

/// Positions where the symbol changes from the cyclic predecessor; these
/// index the reduced edges and there are exactly `reduced_edge_count` of
/// them.
pub fn reduced_edge_positions(n: &Necklace) -> Result<Vec<usize>> {
    n.require_mixed()?;
    let len = n.word.len();
    Ok((0..len)
        .filter(|&i| n.word[i] != n.word[(i + len - 1) % len])
        .collect())
}

/// The number of Farey branches of the çark in its weighted (short) form:
/// consecutive branches toward the same boundary merge into one weighted
/// component, so this is the number of maximal runs — the length of the
/// weight vector, and also the reduced edge count.
pub fn total_branches(n: &Necklace) -> usize {
    let len = n.word.len();
    let boundaries = (0..len)
        .filter(|&i| n.word[i] != n.word[(i + len - 1) % len])
        .count();
    boundaries.max(1)
}

/// The directed çark of a form class: the necklace of the block word of
/// its fundamental automorphism.
pub fn cark_of_form(f: &Form) -> Result<Necklace> {
    let m = crate::pell::fundamental_automorphism(f)?;
    let (word, _) = matrix_to_word(&m)?;
    Ok(word_to_necklace(&word))
}

/// Render a çark as a deterministic DOT digraph. The spine alternates
/// `x{i}` (the 2-valent vertices, drawn as diamonds) and `b{i}` (the
/// 3-valent vertices, drawn as points); each `b{i}` carries one Farey
/// branch stub `t{i}`, drawn bold when it points to the inner boundary
/// (symbol 1) and dashed when it points to the outer one (symbol 0).
/// Branches are truncated binary trees with `depth` levels of 3-valent
/// vertices below the stub.
pub fn to_dot(n: &Necklace, depth: u32) -> String {
    let len = n.word.len();
    let mut out = String::from("digraph cark {\n");

    for i in 0..len {
        out.push_str(&format!("  x{i} [shape=diamond];\n"));
        out.push_str(&format!("  b{i} [shape=point];\n"));
    }
    for i in 0..len {
        out.push_str(&format!("  x{i} -> b{i};\n"));
        out.push_str(&format!("  b{i} -> x{};\n", (i + 1) % len));
    }
    for (i, &sym) in n.word.iter().enumerate() {
        let style = if sym == 1 { "bold" } else { "dashed" };
        out.push_str(&format!("  t{i} [shape=diamond];\n"));
        out.push_str(&format!("  b{i} -> t{i} [style={style}];\n"));
        expand_branch(&mut out, &format!("t{i}"), depth);
    }
    out.push_str("}\n");
    out
}

fn expand_branch(out: &mut String, node: &str, depth: u32) {
    if depth == 0 {
        return;
    }
    let center = format!("{node}v");
    out.push_str(&format!("  {center} [shape=point];\n"));
    out.push_str(&format!("  {node} -> {center};\n"));
    for side in ["0", "1"] {
        let child = format!("{center}{side}");
        out.push_str(&format!("  {child} [shape=diamond];\n"));
        out.push_str(&format!("  {center} -> {child};\n"));
        expand_branch(out, &child, depth - 1);
    }
}

/// The JSON document describing the çark of a form class. Big integers are
/// carried as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarkDocument {
    pub weights: Vec<u64>,
    pub exponent: u8,
    pub trace: String,
    pub discriminant: String,
    pub reduced_edges: Vec<usize>,
}

pub fn cark_document(f: &Form) -> Result<CarkDocument> {
    let m = crate::pell::fundamental_automorphism(f)?;
    let (word, _) = matrix_to_word(&m)?;
    let necklace = word_to_necklace(&word);
    let weighted = weighted_encode(&necklace)?;
    Ok(CarkDocument {
        weights: weighted.weights,
        exponent: weighted.exponent,
        trace: m.trace().to_string(),
        discriminant: f.discriminant().to_string(),
        reduced_edges: reduced_edge_positions(&necklace)?,
    })
}

/// Convenience for tests and the CLI: the trace of the fundamental
/// automorphism of `f`.
pub fn class_trace(f: &Form) -> Result<BigInt> {
    Ok(crate::pell::fundamental_automorphism(f)?.trace())
}

//! Top-degree integrals of finite-dimensional examples, recognized by a
//! chain of derivations that sends the integral to a nonzero scalar.

use braidrack_exact::Scalar;
use serde::Serialize;

use crate::braiding::Cocycle;
use crate::error::NicholsError;
use crate::nichols::words::{derivation_chain, parse_word, GradedVector};

/// An integral word and a derivation chain applied to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralPreset {
    pub name: &'static str,
    pub word: &'static str,
    pub chain: &'static str,
}

pub const INTEGRAL_PRESETS: &[IntegralPreset] = &[
    IntegralPreset { name: "d3char2", word: "aabaabaabbaabbaabbcc", chain: "bbaaccaaccbbcbcbcbcc" },
    IntegralPreset { name: "t-new", word: "aabaabaabbaacbbaacbbaadd", chain: "ccdccdccddccbbddbaddaabb" },
];

pub fn integral_preset(name: &str) -> Result<IntegralPreset, NicholsError> {
    INTEGRAL_PRESETS
        .iter()
        .find(|p| p.name == name)
        .copied()
        .ok_or_else(|| NicholsError::UnknownPreset(name.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainValue {
    pub word: String,
    pub chain: String,
    pub degree: usize,
    /// Scalar left after the chain, in the field's canonical text.
    pub value: String,
    pub nonzero: bool,
}

/// `∂_{chain}(word)`, a scalar when the chain is as long as the word.
pub fn evaluate_chain(c: &Cocycle, word: &str, chain: &str) -> Result<(Scalar, ChainValue), NicholsError> {
    let d = c.size();
    let f = c.field();
    let w = parse_word(word, d)?;
    let ch = parse_word(chain, d)?;
    if w.len() != ch.len() {
        return Err(NicholsError::BadRelation(format!(
            "chain of length {} on a word of length {}",
            ch.len(),
            w.len()
        )));
    }
    let out = derivation_chain(c, &ch, &GradedVector::word(f, &w));
    let value = out.scalar(f).unwrap_or_else(|| f.zero());
    let report = ChainValue {
        word: word.to_string(),
        chain: chain.to_string(),
        degree: w.len(),
        value: f.format(&value),
        nonzero: !f.is_zero(&value),
    };
    Ok((value, report))
}

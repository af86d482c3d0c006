//! Readings of typeset formulas whose binary operators were lost.
//!
//! A *fused boundary* is a place where two terms are typeset side by side
//! with no operator between them. Read literally that is a product; the
//! alternatives are an inserted `+` or `-`. Each formula with fused
//! boundaries gets a reading type built from [`Join`]s, and the errata
//! reconciliation picks the reading that agrees with the trusted path.

use std::fmt;

use serde::Serialize;

/// How the two terms on either side of a fused boundary combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Join {
    /// Literal typesetting: the terms multiply.
    Juxtaposed,
    Plus,
    Minus,
}

impl Join {
    pub const ALL: [Join; 3] = [Join::Juxtaposed, Join::Plus, Join::Minus];
    pub const INSERTED: [Join; 2] = [Join::Plus, Join::Minus];

    /// Combines a signed left term with the right term.
    pub fn fuse(self, left: f64, right: f64) -> f64 {
        match self {
            Join::Juxtaposed => left * right,
            Join::Plus => left + right,
            Join::Minus => left - right,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Join::Juxtaposed => "·",
            Join::Plus => "+",
            Join::Minus => "−",
        }
    }
}

impl fmt::Display for Join {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Join::Juxtaposed => f.write_str("juxtaposed (product)"),
            Join::Plus => f.write_str("inserted +"),
            Join::Minus => f.write_str("inserted −"),
        }
    }
}

/// The cycle distance inside `|i - 1 - ? - h|` for block `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceOffset {
    /// `k(d-1)`, as typeset.
    AsPrinted,
    /// `(k-1)d`, the start of block `k`.
    BlockStart,
}

impl DistanceOffset {
    pub const ALL: [DistanceOffset; 2] = [DistanceOffset::AsPrinted, DistanceOffset::BlockStart];

    pub fn offset(self, k: usize, d: usize) -> f64 {
        match self {
            DistanceOffset::AsPrinted => (k * (d - 1)) as f64,
            DistanceOffset::BlockStart => ((k - 1) * d) as f64,
        }
    }
}

/// A candidate interpretation of one typeset formula.
pub trait Reading: Clone + fmt::Debug {
    /// True for the literal reading of the typeset text.
    fn is_as_printed(&self) -> bool;

    /// Human-readable list of the edits this reading makes to the text.
    fn describe(&self) -> String;
}

/// The single reading of a formula that has no fused boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal;

impl Reading for Literal {
    fn is_as_printed(&self) -> bool {
        true
    }

    fn describe(&self) -> String {
        "as printed".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuse_each_join() {
        assert_eq!(Join::Juxtaposed.fuse(-2.0, 3.0), -6.0);
        assert_eq!(Join::Plus.fuse(-2.0, 3.0), 1.0);
        assert_eq!(Join::Minus.fuse(-2.0, 3.0), -5.0);
    }

    #[test]
    fn offsets() {
        assert_eq!(DistanceOffset::AsPrinted.offset(3, 4), 9.0);
        assert_eq!(DistanceOffset::BlockStart.offset(3, 4), 8.0);
        assert_eq!(DistanceOffset::AsPrinted.offset(1, 1), 0.0);
    }
}

//! Parameter sweeps: the grid of wheels every cross-check runs over.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::wheel::WheelParams;

/// Conductance pairs `(a, c)` every sweep visits.
pub const STANDARD_CONDUCTANCES: [(f64, f64); 3] = [(1.0, 1.0), (2.0, 0.5), (0.3, 1.7)];

/// A sorted grid of parameter points.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    points: Vec<WheelParams>,
}

impl Sweep {
    /// `m ∈ 2..=6`, `d ∈ 1..=5`, and the three standard conductance pairs.
    pub fn standard() -> Sweep {
        Sweep::grid(2..=6, 1..=5).expect("standard ranges are valid")
    }

    pub fn grid(ms: RangeInclusive<usize>, ds: RangeInclusive<usize>) -> Result<Sweep> {
        let mut points = Vec::new();
        for m in ms {
            for d in ds.clone() {
                for (a, c) in STANDARD_CONDUCTANCES {
                    points.push(WheelParams::new(m, d, a, c)?);
                }
            }
        }
        Ok(Sweep::from_points(points))
    }

    /// Points are ordered by `(m, d, a, c)` so output never depends on the
    /// order they were supplied in.
    pub fn from_points(mut points: Vec<WheelParams>) -> Sweep {
        points.sort_by(|x, y| {
            (x.m(), x.d())
                .cmp(&(y.m(), y.d()))
                .then(x.a().total_cmp(&y.a()))
                .then(x.c().total_cmp(&y.c()))
        });
        points.dedup();
        Sweep { points }
    }

    /// Parses `m=LO..HI,d=LO..HI`; a bare number stands for a one-value range.
    pub fn parse(spec: &str) -> Result<Sweep> {
        let mut ms = None;
        let mut ds = None;
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("sweep term `{part}` is not key=range")))?;
            let range = parse_range(value.trim())?;
            let slot = match key.trim() {
                "m" => &mut ms,
                "d" => &mut ds,
                other => return Err(Error::Precondition(format!("unknown sweep key `{other}`"))),
            };
            if slot.replace(range).is_some() {
                return Err(Error::Precondition(format!("sweep key `{}` given twice", key.trim())));
            }
        }
        Sweep::grid(ms.unwrap_or(2..=6), ds.unwrap_or(1..=5))
    }

    pub fn points(&self) -> &[WheelParams] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Precondition(format!("`{text}` is not an integer or LO..HI range"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (text, text),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Precondition(format!("empty range {lo}..{hi}")));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_has_75_sorted_points() {
        let s = Sweep::standard();
        assert_eq!(s.len(), 75);
        assert_eq!((s.points()[0].m(), s.points()[0].d()), (2, 1));
        assert_eq!(s.points()[0].a(), 0.3);
        assert!(s.points().iter().all(|p| p.n() <= 30));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Sweep::parse("m=2..6,d=1..5").unwrap(), Sweep::standard());
        assert_eq!(Sweep::parse("m=3,d=2").unwrap().len(), 3);
        assert_eq!(Sweep::parse(" d = 1..2 ").unwrap().len(), 30);
        assert_eq!(Sweep::parse("m=2..=3,d=1").unwrap().len(), 6);
        assert!(Sweep::parse("m=1..3").is_err());
        assert!(Sweep::parse("m=4..3").is_err());
        assert!(Sweep::parse("x=1").is_err());
        assert!(Sweep::parse("m=2,m=3").is_err());
        assert!(Sweep::parse("m").is_err());
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two maximized objectives of an attack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessPoint {
    pub dari: f64,
    pub dat: f64,
}

impl FitnessPoint {
    pub const ORIGIN: FitnessPoint = FitnessPoint { dari: 0.0, dat: 0.0 };

    pub fn new(dari: f64, dat: f64) -> Self {
        FitnessPoint { dari, dat }
    }

    /// Within budget, i.e. `dat >= 0`.
    pub fn is_feasible(&self) -> bool {
        self.dat >= 0.0
    }
}

/// `a` Pareto-dominates `b` when both objectives are maximized.
pub fn dominates(a: &FitnessPoint, b: &FitnessPoint) -> bool {
    a.dari >= b.dari && a.dat >= b.dat && (a.dari > b.dari || a.dat > b.dat)
}

/// Area dominated by `front` and bounded below by `reference`.
///
/// Points are swept in descending DARI order; each contributes the strip it
/// adds above the best DAT seen so far. Dominated and duplicate points add
/// nothing.
pub fn hypervolume_2d(front: &[FitnessPoint], reference: FitnessPoint) -> Result<f64> {
    for p in front {
        if !(p.dari >= reference.dari && p.dat >= reference.dat) {
            return Err(Error::validation(format!(
                "point ({}, {}) lies below the reference point ({}, {})",
                p.dari, p.dat, reference.dari, reference.dat
            )));
        }
    }
    let mut pts: Vec<&FitnessPoint> = front.iter().collect();
    pts.sort_by(|a, b| b.dari.total_cmp(&a.dari).then(b.dat.total_cmp(&a.dat)));
    let mut area = 0.0;
    let mut ceiling = reference.dat;
    for p in pts {
        if p.dat > ceiling {
            area += (p.dari - reference.dari) * (p.dat - ceiling);
            ceiling = p.dat;
        }
    }
    Ok(area)
}

/// Number of distinct non-dominated points.
pub fn front_diversity(front: &[FitnessPoint]) -> usize {
    let mut distinct: Vec<FitnessPoint> = Vec::new();
    for p in front {
        if !distinct.iter().any(|q| q == p) {
            distinct.push(*p);
        }
    }
    distinct
        .iter()
        .filter(|p| !distinct.iter().any(|q| dominates(q, p)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> FitnessPoint {
        FitnessPoint::new(a, b)
    }

    #[test]
    fn single_rectangle() {
        let hv = hypervolume_2d(&[pt(0.5, 0.5)], FitnessPoint::ORIGIN).unwrap();
        assert!((hv - 0.25).abs() < 1e-15);
    }

    #[test]
    fn two_strips() {
        let hv = hypervolume_2d(&[pt(0.2, 0.8), pt(0.6, 0.4)], FitnessPoint::ORIGIN).unwrap();
        assert!((hv - 0.32).abs() < 1e-12);
    }

    #[test]
    fn dominated_point_adds_nothing() {
        let base = [pt(0.2, 0.8), pt(0.6, 0.4)];
        let mut more = base.to_vec();
        more.push(pt(0.1, 0.3));
        more.push(pt(0.6, 0.4));
        let a = hypervolume_2d(&base, FitnessPoint::ORIGIN).unwrap();
        let b = hypervolume_2d(&more, FitnessPoint::ORIGIN).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn below_reference_is_rejected() {
        assert!(hypervolume_2d(&[pt(0.3, -0.1)], FitnessPoint::ORIGIN).is_err());
        assert_eq!(hypervolume_2d(&[], FitnessPoint::ORIGIN).unwrap(), 0.0);
    }

    #[test]
    fn diversity_counts() {
        assert_eq!(front_diversity(&[]), 0);
        assert_eq!(front_diversity(&[pt(0.2, 0.8), pt(0.6, 0.4)]), 2);
        assert_eq!(front_diversity(&[pt(0.2, 0.8), pt(0.2, 0.8)]), 1);
        assert_eq!(front_diversity(&[pt(0.2, 0.8), pt(0.1, 0.1)]), 1);
    }
}

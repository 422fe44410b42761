use serde::Serialize;

use crate::{Error, Result};

/// Probability vectors on a uniform lattice anchored at the floor.
///
/// The first `dim - 1` coordinates take the values `floor + k·step`; the last
/// one closes the sum to 1 and is kept only if it stays above the floor. With
/// `M = ⌊(1 - dim·floor)/step⌋` this yields `C(M + dim - 1, dim - 1)` points,
/// the triangular number `(M+1)(M+2)/2` for a qutrit. Points are ordered
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexGrid {
    pub dim: usize,
    pub step: f64,
    pub floor: f64,
    pub points: Vec<Vec<f64>>,
}

fn steps_available(free: f64, step: f64) -> usize {
    // the nudge keeps exact multiples such as 0.99 / 0.01 on the lattice
    (free / step + 1e-9).floor() as usize
}

fn check(step: f64, floor: f64) -> Result<()> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Config(format!("grid step must lie in (0, 1], got {step}")));
    }
    if !(floor > 0.0 && floor < 1.0) {
        return Err(Error::Config(format!("grid floor must lie in (0, 1), got {floor}")));
    }
    Ok(())
}

impl SimplexGrid {
    pub fn new(dim: usize, step: f64, floor: f64) -> Result<Self> {
        check(step, floor)?;
        if dim < 2 {
            return Err(Error::Config(format!("simplex dimension must be at least 2, got {dim}")));
        }
        let free = 1.0 - dim as f64 * floor;
        if free < 0.0 {
            return Err(Error::Config(format!("floor {floor} leaves no room for {dim} coordinates")));
        }
        let budget = steps_available(free, step);
        let mut points = Vec::with_capacity(Self::expected_count(dim, budget));
        let mut ks = vec![0usize; dim - 1];
        loop {
            let mut p: Vec<f64> = ks.iter().map(|&k| floor + k as f64 * step).collect();
            let last = 1.0 - p.iter().sum::<f64>();
            p.push(last.max(floor));
            points.push(p);
            // odometer over k with Σk ≤ budget, last index fastest
            let mut level = dim - 2;
            loop {
                ks[level] += 1;
                if ks.iter().sum::<usize>() <= budget {
                    break;
                }
                ks[level] = 0;
                if level == 0 {
                    return Ok(SimplexGrid { dim, step, floor, points });
                }
                level -= 1;
            }
        }
    }

    /// Qutrit points with `p_0` fixed and `p_1` on the floor-anchored lattice.
    pub fn line(step: f64, floor: f64, p0: f64) -> Result<Self> {
        check(step, floor)?;
        if !(p0 >= floor && p0 <= 1.0 - 2.0 * floor) {
            return Err(Error::Config(format!("fixed p0 = {p0} is outside [{floor}, {}]", 1.0 - 2.0 * floor)));
        }
        let budget = steps_available(1.0 - p0 - 2.0 * floor, step);
        let points = (0..=budget)
            .map(|k| {
                let p1 = floor + k as f64 * step;
                vec![p0, p1, (1.0 - p0 - p1).max(floor)]
            })
            .collect();
        Ok(SimplexGrid { dim: 3, step, floor, points })
    }

    /// Explicit points, checked for positivity and normalization.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if dim < 2 {
            return Err(Error::Config("explicit points need at least 2 coordinates".into()));
        }
        let mut floor = f64::INFINITY;
        for p in &points {
            if p.len() != dim {
                return Err(Error::Config(format!("point {p:?} has {} coordinates, expected {dim}", p.len())));
            }
            let s: f64 = p.iter().sum();
            if p.iter().any(|&x| !(x > 0.0)) || (s - 1.0).abs() > 1e-12 {
                return Err(Error::Config(format!("point {p:?} is not a strictly positive distribution")));
            }
            floor = p.iter().copied().fold(floor, f64::min);
        }
        Ok(SimplexGrid { dim, step: 0.0, floor, points })
    }

    /// `C(budget + dim - 1, dim - 1)`.
    pub fn expected_count(dim: usize, budget: usize) -> usize {
        let k = dim - 1;
        let mut c: usize = 1;
        for i in 0..k {
            c = c * (budget + k - i) / (i + 1);
        }
        c
    }

    /// Lattice steps available to the free coordinates.
    pub fn budget(dim: usize, step: f64, floor: f64) -> usize {
        steps_available(1.0 - dim as f64 * floor, step)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

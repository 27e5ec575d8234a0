//! Finite projective planes given purely by incidence.
//!
//! Points are `0..q^2+q+1`. Lines are indexed by points too: line `x` is the
//! point set `line_of[x]`. Join and meet tables are filled in once during
//! validation.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("projective plane axiom violated: {axiom} ({witness})")]
    AxiomViolation { axiom: Axiom, witness: String },
    #[error("join of a point with itself ({0})")]
    EqualPoints(usize),
    #[error("meet of a line with itself ({0})")]
    EqualLines(usize),
    #[error("index {index} out of range for {size} points")]
    IndexOutOfRange { index: usize, size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    PointCount,
    LineSize,
    LinesMeetOnce,
    PointsJoinOnce,
    PointDegree,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::PointCount => "there are q^2+q+1 points",
            Axiom::LineSize => "every line has q+1 points",
            Axiom::LinesMeetOnce => "two distinct lines meet in exactly one point",
            Axiom::PointsJoinOnce => "two distinct points lie on exactly one line",
            Axiom::PointDegree => "every point lies on q+1 lines",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct CombinatorialPlane {
    q: usize,
    n: usize,
    lines: Vec<Vec<usize>>,
    /// `on[x * n + y]`: point `y` lies on line `x`
    on: Vec<bool>,
    /// `join[p * n + p']`: the line through both (unused on the diagonal)
    join: Vec<usize>,
    /// `meet[x * n + x']`: the common point (unused on the diagonal)
    meet: Vec<usize>,
}

impl CombinatorialPlane {
    /// Builds and exhaustively validates a plane of order `q`; `line_of[x]`
    /// is the point set of line `x`.
    pub fn from_lambda(q: usize, line_of: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        let violation = |axiom, witness: String| Err(PlaneError::AxiomViolation { axiom, witness });
        let n = q * q + q + 1;
        if q < 2 || line_of.len() != n {
            return violation(
                Axiom::PointCount,
                format!("q = {q} needs {n} points, got {}", line_of.len()),
            );
        }
        let mut on = vec![false; n * n];
        let mut lines = Vec::with_capacity(n);
        for (x, pts) in line_of.into_iter().enumerate() {
            let mut pts = pts;
            pts.sort_unstable();
            pts.dedup();
            if let Some(&bad) = pts.iter().find(|&&p| p >= n) {
                return Err(PlaneError::IndexOutOfRange {
                    index: bad,
                    size: n,
                });
            }
            if pts.len() != q + 1 {
                return violation(
                    Axiom::LineSize,
                    format!("line {x} has {} points: {pts:?}", pts.len()),
                );
            }
            for &p in &pts {
                on[x * n + p] = true;
            }
            lines.push(pts);
        }

        let mut meet = vec![usize::MAX; n * n];
        for x in 0..n {
            for x2 in x + 1..n {
                let common: Vec<usize> = lines[x]
                    .iter()
                    .copied()
                    .filter(|&p| on[x2 * n + p])
                    .collect();
                if common.len() != 1 {
                    return violation(
                        Axiom::LinesMeetOnce,
                        format!("lines {x} and {x2} share {common:?}"),
                    );
                }
                meet[x * n + x2] = common[0];
                meet[x2 * n + x] = common[0];
            }
        }

        let mut join = vec![usize::MAX; n * n];
        let mut through = vec![Vec::new(); n];
        for (x, pts) in lines.iter().enumerate() {
            for &p in pts {
                through[p].push(x);
            }
        }
        for p in 0..n {
            for p2 in p + 1..n {
                let common: Vec<usize> = through[p]
                    .iter()
                    .copied()
                    .filter(|&x| on[x * n + p2])
                    .collect();
                if common.len() != 1 {
                    return violation(
                        Axiom::PointsJoinOnce,
                        format!("points {p} and {p2} lie on lines {common:?}"),
                    );
                }
                join[p * n + p2] = common[0];
                join[p2 * n + p] = common[0];
            }
        }
        if let Some(p) = (0..n).find(|&p| through[p].len() != q + 1) {
            return violation(
                Axiom::PointDegree,
                format!("point {p} is on {} lines", through[p].len()),
            );
        }

        Ok(CombinatorialPlane {
            q,
            n,
            lines,
            on,
            join,
            meet,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    /// Sorted points of line `x`.
    pub fn line(&self, x: usize) -> Result<&[usize], PlaneError> {
        self.bound(x)?;
        Ok(&self.lines[x])
    }

    fn bound(&self, i: usize) -> Result<(), PlaneError> {
        if i < self.n {
            Ok(())
        } else {
            Err(PlaneError::IndexOutOfRange {
                index: i,
                size: self.n,
            })
        }
    }

    /// Point `y` lies on line `x`.
    pub fn incident(&self, y: usize, x: usize) -> Result<bool, PlaneError> {
        self.bound(y)?;
        self.bound(x)?;
        Ok(self.on[x * self.n + y])
    }

    /// The line through two distinct points.
    pub fn join_points(&self, p: usize, p2: usize) -> Result<usize, PlaneError> {
        self.bound(p)?;
        self.bound(p2)?;
        if p == p2 {
            return Err(PlaneError::EqualPoints(p));
        }
        Ok(self.join[p * self.n + p2])
    }

    /// The common point of two distinct lines.
    pub fn meet_lines(&self, x: usize, x2: usize) -> Result<usize, PlaneError> {
        self.bound(x)?;
        self.bound(x2)?;
        if x == x2 {
            return Err(PlaneError::EqualLines(x));
        }
        Ok(self.meet[x * self.n + x2])
    }

    /// Lines through point `p`.
    pub fn lines_through(&self, p: usize) -> Result<Vec<usize>, PlaneError> {
        self.bound(p)?;
        Ok((0..self.n).filter(|&x| self.on[x * self.n + p]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lines `{x+1, x+2, x+4} mod 7`.
    fn fano() -> Vec<Vec<usize>> {
        (0..7)
            .map(|x| vec![(x + 1) % 7, (x + 2) % 7, (x + 4) % 7])
            .collect()
    }

    #[test]
    fn fano_plane_is_valid() {
        let p = CombinatorialPlane::from_lambda(2, fano()).unwrap();
        assert_eq!(p.num_points(), 7);
        assert!(p.incident(1, 0).unwrap());
        assert!(!p.incident(0, 0).unwrap());
        assert_eq!(p.join_points(1, 2).unwrap(), 0);
        assert_eq!(p.meet_lines(0, 1).unwrap(), 2);
        assert_eq!(p.lines_through(0).unwrap().len(), 3);
    }

    #[test]
    fn short_lines_are_rejected() {
        let mut l = fano();
        l[3].pop();
        let err = CombinatorialPlane::from_lambda(2, l).unwrap_err();
        assert!(matches!(
            err,
            PlaneError::AxiomViolation {
                axiom: Axiom::LineSize,
                ..
            }
        ));
    }

    #[test]
    fn repeated_lines_fail_the_meet_axiom() {
        let mut l = fano();
        l[1] = l[0].clone();
        let err = CombinatorialPlane::from_lambda(2, l).unwrap_err();
        assert!(matches!(
            err,
            PlaneError::AxiomViolation {
                axiom: Axiom::LinesMeetOnce,
                ..
            }
        ));
    }

    #[test]
    fn query_errors() {
        let p = CombinatorialPlane::from_lambda(2, fano()).unwrap();
        assert_eq!(p.join_points(3, 3), Err(PlaneError::EqualPoints(3)));
        assert_eq!(p.meet_lines(4, 4), Err(PlaneError::EqualLines(4)));
        assert!(matches!(
            p.incident(7, 0),
            Err(PlaneError::IndexOutOfRange { index: 7, size: 7 })
        ));
        assert!(CombinatorialPlane::from_lambda(2, fano()[..6].to_vec()).is_err());
    }
}

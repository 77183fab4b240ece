//! Lattice points of dilates by a box scan with exact half-space tests.

use crate::lattice::polytope::LatticePolytope;
use crate::lattice::vector::LatticeVector;
use crate::scalar::Scalar;

impl<T: Scalar> LatticePolytope<T> {
    /// Integral points of `k P` (or of its relative interior), sorted.
    ///
    /// The relative interior of a point is the point itself, so a
    /// 0-dimensional polytope always yields exactly one point.
    pub fn lattice_points(&self, k: u64, interior_only: bool) -> Vec<LatticeVector<T>> {
        let mut out = Vec::new();
        self.for_each_local_point(k, interior_only, |y| {
            out.push(self.dilate_point(k, y));
        });
        out.sort();
        out
    }

    pub fn count_lattice_points(&self, k: u64, interior_only: bool) -> u64 {
        let mut count = 0;
        self.for_each_local_point(k, interior_only, |_| count += 1);
        count
    }

    /// Ambient point `k * base + lift(y)`.
    pub fn dilate_point(&self, k: u64, y: &[T]) -> LatticeVector<T> {
        let lifted = self.frame().lift(y);
        &self.base().scale(&T::from_count(k)) + &lifted
    }

    /// Calls `visit` with the frame coordinates of every point of the dilate.
    pub fn for_each_local_point<F: FnMut(&[T])>(&self, k: u64, interior_only: bool, mut visit: F) {
        let r = self.dim();
        let kk = T::from_count(k);
        let slack = if interior_only { T::one() } else { T::zero() };
        let bounds: Vec<T> = self
            .facets()
            .iter()
            .map(|f| f.offset.clone() * kk.clone() - slack.clone())
            .collect();
        if r == 0 {
            visit(&[]);
            return;
        }
        let mut lo = vec![T::zero(); r];
        let mut hi = vec![T::zero(); r];
        for j in 0..r {
            let col = self.local_vertices().iter().map(|v| v[j].clone());
            lo[j] = col.clone().min().expect("nonempty") * kk.clone();
            hi[j] = col.max().expect("nonempty") * kk.clone();
        }
        let mut y = lo.clone();
        let mut partial: Vec<T> = vec![T::zero(); bounds.len()];
        self.scan(0, &lo, &hi, &bounds, &mut y, &mut partial, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn scan<F: FnMut(&[T])>(
        &self,
        j: usize,
        lo: &[T],
        hi: &[T],
        bounds: &[T],
        y: &mut Vec<T>,
        partial: &mut Vec<T>,
        visit: &mut F,
    ) {
        let r = y.len();
        let facets = self.facets();
        if j + 1 == r {
            // solve the remaining coordinate from the inequalities
            let mut a = lo[j].clone();
            let mut b = hi[j].clone();
            for (i, f) in facets.iter().enumerate() {
                let c = &f.normal[j];
                let s = bounds[i].clone() - partial[i].clone();
                if c.is_zero() {
                    if s.is_negative() {
                        return;
                    }
                } else if c.is_positive() {
                    let ub = s.div_floor(c);
                    if ub < b {
                        b = ub;
                    }
                } else {
                    let lb = s.div_ceil(c);
                    if lb > a {
                        a = lb;
                    }
                }
            }
            let mut x = a;
            while x <= b {
                y[j] = x.clone();
                visit(y);
                x = x + T::one();
            }
            return;
        }
        let mut x = lo[j].clone();
        while x <= hi[j] {
            for (i, f) in facets.iter().enumerate() {
                partial[i] = partial[i].clone() + f.normal[j].clone() * x.clone();
            }
            y[j] = x.clone();
            self.scan(j + 1, lo, hi, bounds, y, partial, visit);
            for (i, f) in facets.iter().enumerate() {
                partial[i] = partial[i].clone() - f.normal[j].clone() * x.clone();
            }
            x = x + T::one();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    fn poly(points: &[&[i64]]) -> LatticePolytope<i64> {
        LatticePolytope::from_int_points(points).unwrap()
    }

    #[test]
    fn segment_points() {
        let seg = poly(&[&[0, 0], &[2, 2]]);
        let pts: Vec<_> = seg.lattice_points(1, false).into_iter().map(|v| v.0).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert_eq!(seg.lattice_points(0, false).len(), 1);
        assert!(seg.lattice_points(0, true).is_empty());
    }

    #[test]
    fn simplex_counts_are_binomial() {
        let s = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for k in 0..5u64 {
            assert_eq!(s.count_lattice_points(k, false), binomial::<i64>(k as i64 + 3, 3) as u64);
        }
    }

    #[test]
    fn interior_of_triangle() {
        let t = poly(&[&[0, 0], &[3, 0], &[2, 2]]);
        let pts: Vec<_> = t.lattice_points(1, true).into_iter().map(|v| v.0).collect();
        assert_eq!(pts, vec![vec![2, 1]]);
    }

    #[test]
    fn point_polytope_dilates() {
        let p = poly(&[&[2, 3]]);
        assert_eq!(p.lattice_points(2, false)[0].0, vec![4, 6]);
        assert_eq!(p.lattice_points(0, true)[0].0, vec![0, 0]);
    }
}

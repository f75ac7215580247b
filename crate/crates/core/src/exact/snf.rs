//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v = d`, with `d` diagonal, nonnegative, and each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|x| !x.is_one()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn row_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let value = m.get(target, j) - factor * m.get(source, j);
                m.set(target, j, value);
            }
        }
    }

    fn col_axpy(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.rows() {
                let value = m.get(i, target) - factor * m.get(i, source);
                m.set(i, target, value);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn negate_row(&mut self, r: usize) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let value = -m.get(r, j);
                m.set(r, j, value);
            }
        }
    }

    /// Position of the smallest nonzero entry (by absolute value) in the trailing block.
    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            loop {
                let Some((i, j)) = self.smallest_entry(t) else {
                    return;
                };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                let pivot = self.a.get(t, t).clone();

                let mut clean = true;
                for i in t + 1..self.a.rows() {
                    let q = self.a.get(i, t).div_floor(&pivot);
                    if !q.is_zero() {
                        self.row_axpy(i, t, &q);
                    }
                    clean &= self.a.get(i, t).is_zero();
                }
                for j in t + 1..self.a.cols() {
                    let q = self.a.get(t, j).div_floor(&pivot);
                    if !q.is_zero() {
                        self.col_axpy(j, t, &q);
                    }
                    clean &= self.a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                // divisibility: fold an offending row into the pivot row and go again
                let offending = (t + 1..self.a.rows()).find(|&i| {
                    (t + 1..self.a.cols()).any(|j| !self.a.get(i, j).is_multiple_of(&pivot))
                });
                match offending {
                    Some(i) => self.row_axpy(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer { a: a.clone(), u: IntMatrix::identity(a.rows()), v: IntMatrix::identity(a.cols()) };
    r.reduce();
    let form = SmithForm { d: r.a, u: r.u, v: r.v };
    let check = form.u.matmul(a).and_then(|ua| ua.matmul(&form.v)).expect("conformable shapes");
    assert_eq!(check, form.d, "Smith form reconstruction failed");
    form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .unwrap()
    }

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).invariant_factors().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn one_by_one() {
        for k in [1, 2, 3, 5, 7] {
            let f = smith_normal_form(&int_matrix(&[&[k]]));
            assert_eq!(f.d, int_matrix(&[&[k]]));
        }
    }

    #[test]
    fn coprime_diagonal_merges() {
        assert_eq!(factors(&int_matrix(&[&[2, 0], &[0, 3]])), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let f = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert!(f.d.is_zero());
        assert!(f.invariant_factors().is_empty());
    }

    #[test]
    fn negative_and_rectangular_inputs() {
        assert_eq!(factors(&int_matrix(&[&[-4, 6, 2]])), vec![2]);
        assert_eq!(factors(&int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![2, 6, 12]);
        assert_eq!(factors(&int_matrix(&[&[0, 0], &[0, 0], &[0, 5]])), vec![5]);
    }
}

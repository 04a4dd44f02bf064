use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d1 | d2 | ...`.
///
/// `u_inv` is carried along so that lifts from the diagonal coordinates back to
/// the original ones need no second inversion.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

struct State {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl State {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.d.cols() {
            self.d[(r, j)] = -&self.d[(r, j)];
        }
        for j in 0..self.u.cols() {
            self.u[(r, j)] = -&self.u[(r, j)];
        }
        for i in 0..self.u_inv.rows() {
            self.u_inv[(i, r)] = -&self.u_inv[(i, r)];
        }
    }

    /// row `dst` += c · row `src`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.d.cols() {
            let t = c * &self.d[(src, j)];
            self.d[(dst, j)] += t;
        }
        for j in 0..self.u.cols() {
            let t = c * &self.u[(src, j)];
            self.u[(dst, j)] += t;
        }
        for i in 0..self.u_inv.rows() {
            let t = c * &self.u_inv[(i, dst)];
            self.u_inv[(i, src)] -= t;
        }
    }

    /// column `dst` += c · column `src`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.d.rows() {
            let t = c * &self.d[(i, src)];
            self.d[(i, dst)] += t;
        }
        for i in 0..self.v.rows() {
            let t = c * &self.v[(i, src)];
            self.v[(i, dst)] += t;
        }
    }
}

/// Smith normal form with the smallest-absolute-value pivot strategy.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = State {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &s.d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(s);
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            let p = s.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if s.d[(i, t)].is_zero() {
                    continue;
                }
                let q = s.d[(i, t)].div_floor(&p);
                s.add_row(i, t, &-q);
                clean &= s.d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s.d[(t, j)].is_zero() {
                    continue;
                }
                let q = s.d[(t, j)].div_floor(&p);
                s.add_col(j, t, &-q);
                clean &= s.d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => s.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if s.d[(t, t)].is_negative() {
            s.negate_row(t);
        }
    }
    finish(s)
}

fn finish(s: State) -> SmithDecomposition {
    SmithDecomposition {
        u: s.u,
        u_inv: s.u_inv,
        v: s.v,
        d: s.d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_lattice() {
        let a = IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
    }

    #[test]
    fn one_by_one() {
        let s = smith_normal_form(&IntMatrix::from_i64(&[vec![-2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }
}

//! Exact linear programming over the rationals.
//!
//! Dense two-phase simplex with Bland's rule; termination is guaranteed and
//! every answer is exact. Desk-scale only.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// m x (n+1), last column is the rhs; basis columns are kept identity.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for j in 0..=self.n {
            self.rows[r][j] = &self.rows[r][j] * &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.n {
                    let t = &self.rows[r][j] * &f;
                    self.rows[i][j] = &self.rows[i][j] - &t;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `obj . x` from the current basic feasible point. Returns
    /// `None` when unbounded. `allowed` masks columns that may enter.
    fn run(&mut self, obj: &[Rational], allowed: &dyn Fn(usize) -> bool) -> Option<()> {
        loop {
            // reduced costs: obj_j - obj_B . col_j
            let mut entering = None;
            'cols: for j in 0..self.n {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut red = obj[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !obj[bi].is_zero() && !self.rows[i][j].is_zero() {
                        red -= &obj[bi] * &self.rows[i][j];
                    }
                }
                if red.is_positive() {
                    entering = Some(j);
                    break 'cols; // Bland: first improving index
                }
            }
            let Some(c) = entering else {
                return Some(());
            };
            // ratio test, Bland tie-break on smallest basis index
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rows[i][self.n] / &self.rows[i][c];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, _)) = leave else {
                return None; // unbounded
            };
            self.pivot(r, c);
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for (i, &bi) in self.basis.iter().enumerate() {
            x[bi] = self.rows[i][self.n].clone();
        }
        x
    }
}

/// Maximises `c . x` subject to `A x = b`, `x >= 0`.
pub fn maximize_standard(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    if m == 0 {
        // no constraints: optimal 0 at origin unless a positive cost exists
        if c.iter().any(|x| x.is_positive()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            x: vec![Rational::zero(); n],
            value: Rational::zero(),
        };
    }
    // normalise rhs >= 0, add artificials
    let total = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(total + 1);
        for j in 0..n {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let basis: Vec<usize> = (n..total).collect();
    let mut t = Tableau { rows, basis, n: total };

    // phase 1: maximise -(sum of artificials)
    let mut phase1 = vec![Rational::zero(); total];
    for j in n..total {
        phase1[j] = -Rational::one();
    }
    t.run(&phase1, &|_| true)
        .expect("phase 1 objective is bounded");
    let p1val: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .map(|(i, _)| t.rows[i][t.n].clone())
        .sum();
    if !p1val.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis (or drop redundant rows)
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c2) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c2);
            } else {
                drop_rows.push(i);
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }

    // phase 2 on the original objective, artificial columns barred
    let mut obj = vec![Rational::zero(); total];
    obj[..n].clone_from_slice(c);
    if t.run(&obj, &|j| j < n).is_none() {
        return LpOutcome::Unbounded;
    }
    let full = t.solution();
    let x: Vec<Rational> = full[..n].to_vec();
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}

/// Feasibility of `A x = b`, `x >= 0`; returns a witness.
pub fn feasible_nonneg(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    match maximize_standard(&vec![Rational::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Minimises `c . x` subject to `A x >= b` with `x` free.
///
/// Splits `x = u - v` and inserts surplus variables.
pub fn minimize_free(c: &[Rational], a_ge: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = a_ge.len();
    let n = c.len();
    let total = 2 * n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(total);
        for j in 0..n {
            row.push(a_ge[i][j].clone());
        }
        for j in 0..n {
            row.push(-&a_ge[i][j]);
        }
        for k in 0..m {
            row.push(if k == i { -Rational::one() } else { Rational::zero() });
        }
        rows.push(row);
    }
    // max of -(c.(u-v))
    let mut obj = vec![Rational::zero(); total];
    for j in 0..n {
        obj[j] = -&c[j];
        obj[n + j] = c[j].clone();
    }
    match maximize_standard(&obj, &rows, b) {
        LpOutcome::Optimal { x, value } => {
            let point: Vec<Rational> = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            LpOutcome::Optimal {
                x: point,
                value: -value,
            }
        }
        other => other,
    }
}

/// Feasibility of `A x >= b` with `x` free; returns a witness.
pub fn feasible_free(a_ge: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = if a_ge.is_empty() { return Some(Vec::new()) } else { a_ge[0].len() };
    match minimize_free(&vec![Rational::zero(); n], a_ge, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        LpOutcome::Infeasible => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn simple_max() {
        // max x+y st x+2y=4, x,y>=0 -> x=4, value 4
        let out = maximize_standard(&rv(&[1, 1]), &[rv(&[1, 2])], &rv(&[4]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(4, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x = -1, x >= 0
        let out = maximize_standard(&rv(&[0]), &[rv(&[1])], &rv(&[-1]));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // max x st x - y = 0
        let out = maximize_standard(&rv(&[1, 0]), &[rv(&[1, -1])], &rv(&[0]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn min_free_over_polytope() {
        // min x+y over the square [0,1]^2 shifted: x>=0,y>=0,-x>=-1,-y>=-1
        let a = alloc::vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[-1, 0]), rv(&[0, -1])];
        let b = rv(&[0, 0, -1, -1]);
        match minimize_free(&rv(&[1, 1]), &a, &b) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, ratio(0, 1));
                assert_eq!(x, rv(&[0, 0]));
            }
            other => panic!("{other:?}"),
        }
        // min -x - y over same square = -2 at (1,1)
        match minimize_free(&rv(&[-1, -1]), &a, &b) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(-2, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_guard() {
        // classic degenerate instance; Bland must terminate
        let a = alloc::vec![rv(&[1, 1, 1]), rv(&[1, 0, 0])];
        let b = rv(&[1, 1]);
        let out = maximize_standard(&rv(&[0, 1, 0]), &a, &b);
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(0, 1)),
            other => panic!("{other:?}"),
        }
    }
}

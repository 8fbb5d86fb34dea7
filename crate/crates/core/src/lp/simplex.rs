//! Integer-preserving primal simplex for `max 1·x  s.t.  A x <= 1, x >= 0`
//! with a 0/1 matrix `A`.
//!
//! The tableau holds integers `T` with a common denominator `D` (the value of
//! the current basis determinant); a pivot on `p = T[r][c]` maps every other
//! row to `(p·T[i][j] - T[i][c]·T[r][j]) / D`, a division that is always exact.
//! The entering column is the most negative reduced cost, except after a
//! degenerate pivot, where Bland's rule takes over until the objective
//! improves; this rules out cycling. All ties break toward the lowest index,
//! so the run is fully determined by the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub(crate) trait Entry: Clone + Ord {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    /// `(a·p - b·c) / d`, or `None` on overflow.
    fn fused(a: &Self, p: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    /// `a·b`, or `None` on overflow.
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn fused(a: &Self, p: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        let lhs = a.checked_mul(*p)?;
        let rhs = b.checked_mul(*c)?;
        let num = lhs.checked_sub(rhs)?;
        debug_assert_eq!(num % d, 0);
        Some(num / d)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn fused(a: &Self, p: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        let num = a * p - b * c;
        debug_assert!(Zero::is_zero(&(&num % d)));
        Some(num / d)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Optimal basis read out as integer numerators over a common denominator.
pub(crate) struct Optimum {
    pub denom: BigInt,
    pub objective: BigInt,
    /// Packing variable numerators, one per column of `A`.
    pub x: Vec<BigInt>,
    /// Covering variable numerators (reduced costs of the slacks), one per row.
    pub y: Vec<BigInt>,
}

/// `rows[i]` lists the columns with a 1 in row `i`.
pub(crate) fn solve_packing(rows: &[Vec<usize>], ncols: usize) -> Optimum {
    run::<i128>(rows, ncols).unwrap_or_else(|| run::<BigInt>(rows, ncols).expect("big integers do not overflow"))
}

fn run<T: Entry>(rows: &[Vec<usize>], ncols: usize) -> Option<Optimum> {
    let nrows = rows.len();
    let width = ncols + nrows + 1;
    let rhs = width - 1;
    let zero = T::from_i64(0);
    let one = T::from_i64(1);

    let mut t: Vec<Vec<T>> = Vec::with_capacity(nrows + 1);
    for (i, cols) in rows.iter().enumerate() {
        let mut row = vec![zero.clone(); width];
        for &c in cols {
            row[c] = one.clone();
        }
        row[ncols + i] = one.clone();
        row[rhs] = one.clone();
        t.push(row);
    }
    let mut obj = vec![zero.clone(); width];
    for v in obj.iter_mut().take(ncols) {
        *v = T::from_i64(-1);
    }
    t.push(obj);
    let obj_row = nrows;

    let mut basis: Vec<usize> = (ncols..ncols + nrows).collect();
    let mut denom = one.clone();

    let mut bland = false;
    loop {
        let negative = |j: &usize| !t[obj_row][*j].is_pos() && !t[obj_row][*j].is_zero();
        let entering = if bland {
            (0..rhs).find(negative)
        } else {
            // Most negative reduced cost, first index on ties.
            (0..rhs).filter(negative).fold(None, |best: Option<usize>, j| match best {
                Some(b) if t[obj_row][b] <= t[obj_row][j] => Some(b),
                _ => Some(j),
            })
        };
        let Some(c) = entering else { break };
        let mut leave: Option<usize> = None;
        for r in 0..nrows {
            if !t[r][c].is_pos() {
                continue;
            }
            leave = Some(match leave {
                None => r,
                Some(b) => {
                    // Compare t[r][rhs]/t[r][c] against t[b][rhs]/t[b][c].
                    let lhs = T::mul(&t[r][rhs], &t[b][c])?;
                    let rhs_v = T::mul(&t[b][rhs], &t[r][c])?;
                    match lhs.cmp(&rhs_v) {
                        std::cmp::Ordering::Less => r,
                        std::cmp::Ordering::Equal if basis[r] < basis[b] => r,
                        _ => b,
                    }
                }
            });
        }
        let r = leave.expect("packing LP is bounded");
        // Degenerate pivots switch to Bland's rule until the objective moves again.
        bland = t[r][rhs].is_zero();
        let pivot_row = t[r].clone();
        let p = pivot_row[c].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = T::fused(cell, &p, &f, &pivot_row[j], &denom)?;
            }
        }
        basis[r] = c;
        denom = p;
    }

    let mut x = vec![BigInt::zero(); ncols];
    for (r, &b) in basis.iter().enumerate() {
        if b < ncols {
            x[b] = t[r][rhs].to_big();
        }
    }
    let y = (0..nrows).map(|i| t[obj_row][ncols + i].to_big()).collect();
    Some(Optimum {
        denom: denom.to_big(),
        objective: t[obj_row][rhs].to_big(),
        x,
        y,
    })
}

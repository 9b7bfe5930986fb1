//! Exact two-phase simplex with Bland's rule.
//!
//! Problems are solved first over `Ratio<i128>` with checked arithmetic and
//! re-solved over big rationals if any operation overflows. Bland's rule makes
//! the pivot sequence a function of the data alone, so both paths agree.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::arith::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// Minimize `objective . x` subject to linear constraints. Variables are
/// nonnegative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    free: Vec<bool>,
    rows: Vec<(Vec<Rat>, Relation, Rat)>,
    objective: Vec<Rat>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            free: vec![false; num_vars],
            rows: Vec::new(),
            objective: vec![Rat::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn all_free(mut self) -> Self {
        self.free.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn constraint(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars());
        self.rows.push((coeffs, rel, rhs));
        self
    }

    pub fn minimize(&mut self, objective: Vec<Rat>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn solve(&self) -> LpOutcome {
        match self.solve_in::<Ratio<i128>>() {
            Some(out) => out,
            None => self.solve_in::<Rat>().expect("big rationals do not overflow"),
        }
    }

    fn solve_in<F: Field>(&self) -> Option<LpOutcome> {
        let n = self.num_vars();
        // Column layout: structural (free vars split in two), slacks, artificials.
        let mut col_of = Vec::with_capacity(n);
        let mut ncols = 0;
        for &free in &self.free {
            col_of.push(ncols);
            ncols += if free { 2 } else { 1 };
        }
        let structural = ncols;
        let slacks = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let m = self.rows.len();
        let first_art = structural + slacks;
        let width = first_art + m;

        let mut tab: Vec<Vec<F>> = Vec::with_capacity(m);
        let mut slack = structural;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![F::f_zero(); width + 1];
            for (j, c) in coeffs.iter().enumerate() {
                let c = F::from_rat(c)?;
                row[col_of[j]] = c.clone();
                if self.free[j] {
                    row[col_of[j] + 1] = c.f_neg()?;
                }
            }
            match rel {
                Relation::Le => {
                    row[slack] = F::f_one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = F::f_one().f_neg()?;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width] = F::from_rat(rhs)?;
            if row[width].f_is_negative() {
                for x in row.iter_mut() {
                    *x = x.f_neg()?;
                }
            }
            tab.push(row);
        }
        for (i, row) in tab.iter_mut().enumerate() {
            row[first_art + i] = F::f_one();
        }
        let mut basis: Vec<usize> = (first_art..first_art + m).collect();

        // Phase one: minimize the sum of artificials.
        let mut cost = vec![F::f_zero(); width + 1];
        for row in &tab {
            for j in 0..first_art {
                cost[j] = cost[j].f_sub(&row[j])?;
            }
            cost[width] = cost[width].f_sub(&row[width])?;
        }
        let phase_one = run_simplex(&mut tab, &mut basis, &mut cost, width)?;
        debug_assert!(phase_one);
        if !cost[width].f_is_zero() {
            return Some(LpOutcome::Infeasible);
        }

        // Drive artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= first_art {
                match (0..first_art).find(|&j| !tab[i][j].f_is_zero()) {
                    Some(j) => pivot(&mut tab, &mut basis, &mut cost, i, j)?,
                    None => {
                        tab.remove(i);
                        basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tab.iter_mut() {
            for x in &mut row[first_art..width] {
                *x = F::f_zero();
            }
        }

        // Phase two.
        let mut cost = vec![F::f_zero(); width + 1];
        for (j, c) in self.objective.iter().enumerate() {
            let c = F::from_rat(c)?;
            cost[col_of[j]] = c.clone();
            if self.free[j] {
                cost[col_of[j] + 1] = c.f_neg()?;
            }
        }
        for (row, &b) in tab.iter().zip(&basis) {
            let cb = cost[b].clone();
            if !cb.f_is_zero() {
                for j in 0..=width {
                    cost[j] = cost[j].f_sub(&cb.f_mul(&row[j])?)?;
                }
            }
        }
        if !run_simplex(&mut tab, &mut basis, &mut cost, first_art)? {
            return Some(LpOutcome::Unbounded);
        }

        let mut values = vec![F::f_zero(); structural];
        for (row, &b) in tab.iter().zip(&basis) {
            if b < structural {
                values[b] = row[width].clone();
            }
        }
        let point: Vec<Rat> = (0..n)
            .map(|j| {
                let v = values[col_of[j]].to_rat();
                if self.free[j] {
                    v - values[col_of[j] + 1].to_rat()
                } else {
                    v
                }
            })
            .collect();
        let value = -cost[width].to_rat();
        Some(LpOutcome::Optimal { point, value })
    }
}

/// Runs Bland pivots with entering columns below `limit`. Returns `Some(false)`
/// when unbounded and `None` on arithmetic overflow.
fn run_simplex<F: Field>(
    tab: &mut [Vec<F>],
    basis: &mut [usize],
    cost: &mut [F],
    limit: usize,
) -> Option<bool> {
    let width = cost.len() - 1;
    loop {
        let Some(enter) = (0..limit).find(|&j| cost[j].f_is_negative()) else {
            return Some(true);
        };
        let mut leave: Option<(usize, F)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].f_is_positive() {
                continue;
            }
            let ratio = row[width].f_div(&row[enter])?;
            leave = match leave {
                None => Some((i, ratio)),
                Some((k, best)) => {
                    let better = ratio.f_lt(&best) || (ratio.eq_val(&best) && basis[i] < basis[k]);
                    if better {
                        Some((i, ratio))
                    } else {
                        Some((k, best))
                    }
                }
            };
        }
        let Some((row, _)) = leave else {
            return Some(false);
        };
        pivot(tab, basis, cost, row, enter)?;
    }
}

fn pivot<F: Field>(
    tab: &mut [Vec<F>],
    basis: &mut [usize],
    cost: &mut [F],
    row: usize,
    col: usize,
) -> Option<()> {
    let width = cost.len() - 1;
    let p = tab[row][col].clone();
    for x in tab[row].iter_mut() {
        *x = x.f_div(&p)?;
    }
    let prow = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].f_is_zero() {
            continue;
        }
        let f = r[col].clone();
        for j in 0..=width {
            if !prow[j].f_is_zero() {
                r[j] = r[j].f_sub(&f.f_mul(&prow[j])?)?;
            }
        }
    }
    if !cost[col].f_is_zero() {
        let f = cost[col].clone();
        for j in 0..=width {
            if !prow[j].f_is_zero() {
                cost[j] = cost[j].f_sub(&f.f_mul(&prow[j])?)?;
            }
        }
    }
    basis[row] = col;
    Some(())
}

/// Exact field operations that may report overflow.
trait Field: Clone {
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn f_is_zero(&self) -> bool;
    fn f_is_positive(&self) -> bool;
    fn f_is_negative(&self) -> bool;
    fn f_lt(&self, other: &Self) -> bool;
    fn eq_val(&self, other: &Self) -> bool;
    fn f_neg(&self) -> Option<Self>;
    fn f_sub(&self, other: &Self) -> Option<Self>;
    fn f_mul(&self, other: &Self) -> Option<Self>;
    fn f_div(&self, other: &Self) -> Option<Self>;
    fn from_rat(x: &Rat) -> Option<Self>;
    fn to_rat(&self) -> Rat;
}

impl Field for Rat {
    fn f_zero() -> Self {
        Zero::zero()
    }
    fn f_one() -> Self {
        One::one()
    }
    fn f_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn f_is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn f_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn f_lt(&self, other: &Self) -> bool {
        self < other
    }
    fn eq_val(&self, other: &Self) -> bool {
        self == other
    }
    fn f_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn f_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn f_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn f_div(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn from_rat(x: &Rat) -> Option<Self> {
        Some(x.clone())
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
}

impl Field for Ratio<i128> {
    fn f_zero() -> Self {
        Zero::zero()
    }
    fn f_one() -> Self {
        One::one()
    }
    fn f_is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn f_is_positive(&self) -> bool {
        *self.numer() > 0
    }
    fn f_is_negative(&self) -> bool {
        *self.numer() < 0
    }
    fn f_lt(&self, other: &Self) -> bool {
        // Ordering cross-multiplies; fall back to exact comparison on overflow.
        match (
            self.numer().checked_mul(other.denom()),
            other.numer().checked_mul(self.denom()),
        ) {
            (Some(a), Some(b)) => a < b,
            _ => self.to_rat() < other.to_rat(),
        }
    }
    fn eq_val(&self, other: &Self) -> bool {
        self == other
    }
    fn f_neg(&self) -> Option<Self> {
        Some(Ratio::new_raw(self.numer().checked_neg()?, *self.denom()))
    }
    fn f_sub(&self, other: &Self) -> Option<Self> {
        CheckedSub::checked_sub(self, other)
    }
    fn f_mul(&self, other: &Self) -> Option<Self> {
        CheckedMul::checked_mul(self, other)
    }
    fn f_div(&self, other: &Self) -> Option<Self> {
        CheckedDiv::checked_div(self, other)
    }
    fn from_rat(x: &Rat) -> Option<Self> {
        Some(Ratio::new(x.numer().to_i128()?, x.denom().to_i128()?))
    }
    fn to_rat(&self) -> Rat {
        Rat::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

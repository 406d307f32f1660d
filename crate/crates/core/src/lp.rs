//! Exact two-phase simplex with Bland's rule.
//!
//! Dense tableau, generic over [`Field`]. Bland's rule guarantees termination,
//! so no perturbation or tolerance is involved anywhere.

use crate::arith::Field;
use crate::linalg::dot;

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T> LpResult<T> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpResult::Optimal { .. })
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    obj: Vec<T>,
    basis: Vec<usize>,
}

impl<T: Field> Tableau<T> {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = T::fone().fdiv(&self.rows[r][col]);
        for x in self.rows[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        let prow = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            if row[col].is_fzero() {
                return;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_fzero() {
                    *x = x.fsub(&f.fmul(p));
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = col;
    }

    /// Minimises the current objective over the first `cols` columns.
    /// Returns false when unbounded.
    fn run(&mut self, cols: usize) -> bool {
        let rhs = self.width();
        loop {
            let Some(enter) = (0..cols).find(|&j| self.obj[j].is_fneg()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_fpos() {
                    continue;
                }
                let ratio = row[rhs].fdiv(&row[enter]);
                let better = match &leave {
                    None => true,
                    Some((l, best)) => match ratio.fcmp(best) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => self.basis[i] < self.basis[*l],
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Minimises `c·x` subject to `Ax = b`, `x ≥ 0`.
pub fn simplex_standard<T: Field>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpResult<T> {
    let n = c.len();
    let m = a.len();
    // Phase one: artificial variable per row, rows sign-normalised to b ≥ 0.
    let mut rows = Vec::with_capacity(m);
    for (row, bi) in a.iter().zip(b) {
        let flip = bi.is_fneg();
        let mut r: Vec<T> = row.iter().map(|x| if flip { x.fneg() } else { x.clone() }).collect();
        r.extend((0..m).map(|_| T::fzero()));
        r.push(if flip { bi.fneg() } else { bi.clone() });
        rows.push(r);
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r[n + i] = T::fone();
    }
    let width = n + m;
    let mut obj = vec![T::fzero(); width + 1];
    for r in &rows {
        for j in 0..n {
            obj[j] = obj[j].fsub(&r[j]);
        }
        obj[width] = obj[width].fsub(&r[width]);
    }
    let mut t = Tableau { rows, obj, basis: (n..n + m).collect() };
    t.run(width);
    if !t.obj[width].is_fzero() {
        return LpResult::Infeasible;
    }
    // Drive artificials out of the basis; rows where that is impossible are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_fzero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // Phase two on the original columns.
    let rows: Vec<Vec<T>> = t
        .rows
        .iter()
        .map(|r| {
            let mut v = r[..n].to_vec();
            v.push(r[width].clone());
            v
        })
        .collect();
    let mut obj: Vec<T> = c.to_vec();
    obj.push(T::fzero());
    for (r, &bj) in rows.iter().zip(&t.basis) {
        let cb = c[bj].clone();
        if cb.is_fzero() {
            continue;
        }
        for (o, x) in obj.iter_mut().zip(r) {
            *o = o.fsub(&cb.fmul(x));
        }
    }
    let mut t = Tableau { rows, obj, basis: t.basis };
    if !t.run(n) {
        return LpResult::Unbounded;
    }
    let mut x = vec![T::fzero(); n];
    for (r, &bj) in t.rows.iter().zip(&t.basis) {
        x[bj] = r[n].clone();
    }
    let value = dot(c, &x);
    LpResult::Optimal { x, value }
}

/// Some `x ≥ 0` with `Ax = b`.
pub fn feasible_nonneg<T: Field>(a: &[Vec<T>], b: &[T], n: usize) -> Option<Vec<T>> {
    match simplex_standard(a, b, &vec![T::fzero(); n]) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Maximises `c·x` over `{x : Ax ≤ b}` with free `x`.
pub fn maximize<T: Field>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpResult<T> {
    let n = c.len();
    let m = a.len();
    // x = x⁺ − x⁻, slack s: A x⁺ − A x⁻ + s = b.
    let rows: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<T> = row.clone();
            r.extend(row.iter().map(Field::fneg));
            r.extend((0..m).map(|k| if k == i { T::fone() } else { T::fzero() }));
            r
        })
        .collect();
    let mut cost: Vec<T> = c.iter().map(Field::fneg).collect();
    cost.extend(c.iter().cloned());
    cost.extend((0..m).map(|_| T::fzero()));
    match simplex_standard(&rows, b, &cost) {
        LpResult::Optimal { x: y, .. } => {
            let x: Vec<T> = (0..n).map(|j| y[j].fsub(&y[n + j])).collect();
            let value = dot(c, &x);
            LpResult::Optimal { x, value }
        }
        LpResult::Infeasible => LpResult::Infeasible,
        LpResult::Unbounded => LpResult::Unbounded,
    }
}

/// Some point of `{x : Ax ≤ b}`.
pub fn feasible_point<T: Field>(a: &[Vec<T>], b: &[T], n: usize) -> Option<Vec<T>> {
    match maximize(a, b, &vec![T::fzero(); n]) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Nonnegative coefficients `λ` with `Σ λ_i gens[i] = target`.
pub fn cone_membership<T: Field>(gens: &[Vec<T>], target: &[T]) -> Option<Vec<T>> {
    let dim = target.len();
    let a: Vec<Vec<T>> = (0..dim).map(|r| gens.iter().map(|g| g[r].clone()).collect()).collect();
    feasible_nonneg(&a, target, gens.len())
}

/// Convex-plus-conic coefficients: `Σ μ_i points[i] + Σ ν_j rays[j] = target`,
/// `μ, ν ≥ 0`, `Σ μ = 1`.
pub fn conv_cone_membership<T: Field>(points: &[Vec<T>], rays: &[Vec<T>], target: &[T]) -> bool {
    let dim = target.len();
    let mut a: Vec<Vec<T>> = (0..dim)
        .map(|r| points.iter().chain(rays).map(|g| g[r].clone()).collect())
        .collect();
    let mut sum_row: Vec<T> = points.iter().map(|_| T::fone()).collect();
    sum_row.extend(rays.iter().map(|_| T::fzero()));
    a.push(sum_row);
    let mut b = target.to_vec();
    b.push(T::fone());
    feasible_nonneg(&a, &b, points.len() + rays.len()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rats, QuadValue, Rational};

    #[test]
    fn triangle_support() {
        // x ≥ 0, 2x1 + 2x2 ≤ 3; max x1 + x2 = 3/2
        let a = vec![rats(&[-1, 0]), rats(&[0, -1]), rats(&[2, 2])];
        let b = rats(&[0, 0, 3]);
        match maximize(&a, &b, &rats(&[1, 1])) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(3, 2)),
            other => panic!("{other:?}"),
        }
        assert!(maximize(&a, &b, &rats(&[-1, 1])).is_optimal());
    }

    #[test]
    fn unbounded_and_infeasible() {
        let a = vec![rats(&[-1, 0]), rats(&[0, -1])];
        assert_eq!(maximize(&a, &rats(&[0, 0]), &rats(&[1, 0])), LpResult::Unbounded);
        let a = vec![rats(&[1]), rats(&[-1])];
        assert_eq!(maximize(&a, &rats(&[0, -1]), &rats(&[1])), LpResult::Infeasible);
    }

    #[test]
    fn degenerate_cycling_instance() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let a = vec![
            vec![rat(1, 4), int(-8), int(-1), int(9)],
            vec![rat(1, 2), int(-12), rat(-1, 2), int(3)],
            rats(&[0, 0, 1, 0]),
            rats(&[-1, 0, 0, 0]),
            rats(&[0, -1, 0, 0]),
            rats(&[0, 0, -1, 0]),
            rats(&[0, 0, 0, -1]),
        ];
        let b = rats(&[0, 0, 1, 0, 0, 0, 0]);
        let c = vec![rat(3, 4), int(-20), rat(1, 2), int(-6)];
        match maximize(&a, &b, &c) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(5, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cone_membership_quadratic() {
        let r2 = QuadValue::new(int(0), int(1), 2).unwrap();
        let gens = vec![vec![QuadValue::one(), QuadValue::zero()], vec![r2.clone(), QuadValue::one()]];
        let target = vec![&r2 + &QuadValue::one(), QuadValue::one()];
        let lam = cone_membership(&gens, &target).unwrap();
        assert_eq!(lam, vec![QuadValue::one(), QuadValue::one()]);
        assert!(cone_membership(&gens, &[QuadValue::zero(), QuadValue::from_int(-1)]).is_none());
    }

    #[test]
    fn convex_membership() {
        let pts: Vec<Vec<Rational>> = vec![rats(&[0, 0]), rats(&[2, 0])];
        let rays = vec![rats(&[0, 1])];
        assert!(conv_cone_membership(&pts, &rays, &rats(&[1, 5])));
        assert!(!conv_cone_membership(&pts, &rays, &rats(&[3, 5])));
    }
}

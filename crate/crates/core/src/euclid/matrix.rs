//! Dense matrices over a Euclidean domain: Smith and Hermite forms built from
//! elementary operations, span membership, and submodule intersection.

use crate::error::{Error, Result};
use crate::rings::EuclideanDomain;

/// Row-major matrix that remembers its width even with no rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    cols: usize,
    rows: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::spec(format!("row of length {} in a matrix of width {cols}", r.len())));
        }
        Ok(Matrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        Matrix { cols, rows: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.cols, "stacking matrices of different widths");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix { cols: self.cols, rows }
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Matrix<E> {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { cols: self.rows.len(), rows }
    }
}

pub fn identity<D: EuclideanDomain>(d: &D, n: usize) -> Matrix<D::Elem> {
    let rows = (0..n).map(|i| (0..n).map(|j| if i == j { d.one() } else { d.zero() }).collect()).collect();
    Matrix { cols: n, rows }
}

pub fn zeros<D: EuclideanDomain>(d: &D, rows: usize, cols: usize) -> Matrix<D::Elem> {
    Matrix { cols, rows: vec![vec![d.zero(); cols]; rows] }
}

pub fn mul<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    assert_eq!(a.cols, b.nrows(), "matrix shapes do not compose");
    let rows = a
        .rows
        .iter()
        .map(|r| {
            (0..b.cols)
                .map(|j| r.iter().zip(&b.rows).fold(d.zero(), |acc, (x, brow)| d.add(&acc, &d.mul(x, &brow[j]))))
                .collect()
        })
        .collect();
    Matrix { cols: b.cols, rows }
}

/// Row vector times matrix.
pub fn vec_mul<D: EuclideanDomain>(d: &D, v: &[D::Elem], a: &Matrix<D::Elem>) -> Vec<D::Elem> {
    assert_eq!(v.len(), a.nrows());
    (0..a.cols).map(|j| v.iter().zip(&a.rows).fold(d.zero(), |acc, (x, r)| d.add(&acc, &d.mul(x, &r[j])))).collect()
}

pub fn scale_vec<D: EuclideanDomain>(d: &D, c: &D::Elem, v: &[D::Elem]) -> Vec<D::Elem> {
    v.iter().map(|x| d.mul(c, x)).collect()
}

pub fn is_zero_vec<D: EuclideanDomain>(d: &D, v: &[D::Elem]) -> bool {
    v.iter().all(|x| d.is_zero(x))
}

/// `row_i -= q * row_j`.
fn row_axpy<D: EuclideanDomain>(d: &D, rows: &mut [Vec<D::Elem>], i: usize, j: usize, q: &D::Elem) {
    if d.is_zero(q) {
        return;
    }
    let src = rows[j].clone();
    for (x, y) in rows[i].iter_mut().zip(&src) {
        *x = d.sub(x, &d.mul(q, y));
    }
}

/// `col_i -= q * col_j`.
fn col_axpy<D: EuclideanDomain>(d: &D, rows: &mut [Vec<D::Elem>], i: usize, j: usize, q: &D::Elem) {
    if d.is_zero(q) {
        return;
    }
    for r in rows.iter_mut() {
        r[i] = d.sub(&r[i], &d.mul(q, &r[j]));
    }
}

fn swap_cols<E>(rows: &mut [Vec<E>], i: usize, j: usize) {
    for r in rows.iter_mut() {
        r.swap(i, j);
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next and unit-normalized. `v_inv` is `V^{-1}`.
#[derive(Clone, Debug)]
pub struct Snf<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    /// Nonzero diagonal entries, in order.
    pub diag: Vec<E>,
}

/// Smallest-size nonzero entry of the lower-right block, ties by row-major position.
fn smallest_entry<D: EuclideanDomain>(d: &D, a: &[Vec<D::Elem>], t: usize, only_cross: bool) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), D::Size)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if only_cross && i != t && j != t {
                continue;
            }
            if d.is_zero(x) {
                continue;
            }
            let s = d.size(x);
            if best.as_ref().is_none_or(|(_, b)| s < *b) {
                best = Some(((i, j), s));
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> Snf<D::Elem> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut x = a.rows.clone();
    let mut u = identity(d, m).rows;
    let mut v = identity(d, n).rows;
    let mut vi = identity(d, n).rows;
    let mut diag = Vec::new();

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(d, &x, t, false) else { break };
        x.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut x, t, pj);
        swap_cols(&mut v, t, pj);
        vi.swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.is_zero(&x[i][t]) {
                    continue;
                }
                let (q, r) = d.div_rem(&x[i][t], &x[t][t]).expect("nonzero pivot");
                row_axpy(d, &mut x, i, t, &q);
                row_axpy(d, &mut u, i, t, &q);
                clean &= d.is_zero(&r);
            }
            for j in t + 1..n {
                if d.is_zero(&x[t][j]) {
                    continue;
                }
                let (q, r) = d.div_rem(&x[t][j], &x[t][t]).expect("nonzero pivot");
                col_axpy(d, &mut x, j, t, &q);
                col_axpy(d, &mut v, j, t, &q);
                // The inverse operation on V^{-1}: row_t += q * row_j.
                let neg = d.neg(&q);
                row_axpy(d, &mut vi, t, j, &neg);
                clean &= d.is_zero(&r);
            }
            if !clean {
                let (pi, pj) = smallest_entry(d, &x, t, true).expect("pivot row or column is nonzero");
                x.swap(t, pi);
                u.swap(t, pi);
                swap_cols(&mut x, t, pj);
                swap_cols(&mut v, t, pj);
                vi.swap(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.divides(&x[t][t], &x[i][j])));
            match bad {
                Some(i) => {
                    let minus_one = d.neg(&d.one());
                    row_axpy(d, &mut x, t, i, &minus_one);
                    row_axpy(d, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        let (c, unit) = d.normalize(&x[t][t]);
        x[t][t] = c.clone();
        for e in u[t].iter_mut() {
            *e = d.mul(&unit, e);
        }
        diag.push(c);
    }
    Snf {
        u: Matrix { cols: m, rows: u },
        d: Matrix { cols: n, rows: x },
        v: Matrix { cols: n, rows: v },
        v_inv: Matrix { cols: n, rows: vi },
        diag,
    }
}

/// Row echelon basis of a row span with the transform from the input rows.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    /// Nonzero rows with strictly increasing pivot columns; pivots are
    /// unit-normalized and entries above them reduced.
    pub basis: Matrix<E>,
    pub pivots: Vec<usize>,
    /// `basis = transform · input`.
    pub transform: Matrix<E>,
    /// Rows `z` with `z · input = 0`; they span all such relations.
    pub syzygies: Matrix<E>,
}

/// Hermite-style echelon form by Euclidean row operations.
pub fn echelon<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> Echelon<D::Elem> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut x = a.rows.clone();
    let mut t = identity(d, m).rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<(usize, D::Size)> = None;
            for (i, row) in x.iter().enumerate().skip(r) {
                if !d.is_zero(&row[c]) {
                    let s = d.size(&row[c]);
                    if best.as_ref().is_none_or(|(_, b)| s < *b) {
                        best = Some((i, s));
                    }
                }
            }
            let Some((p, _)) = best else { break };
            x.swap(r, p);
            t.swap(r, p);
            let mut rest = false;
            for i in r + 1..m {
                if d.is_zero(&x[i][c]) {
                    continue;
                }
                let q = d.div_rem(&x[i][c], &x[r][c]).expect("nonzero pivot").0;
                row_axpy(d, &mut x, i, r, &q);
                row_axpy(d, &mut t, i, r, &q);
                rest |= !d.is_zero(&x[i][c]);
            }
            if rest {
                continue;
            }
            let unit = d.normalize(&x[r][c]).1;
            for e in x[r].iter_mut().chain(t[r].iter_mut()) {
                *e = d.mul(&unit, e);
            }
            for i in 0..r {
                let q = d.div_rem(&x[i][c], &x[r][c]).expect("nonzero pivot").0;
                row_axpy(d, &mut x, i, r, &q);
                row_axpy(d, &mut t, i, r, &q);
            }
            pivots.push(c);
            r += 1;
            break;
        }
    }
    let syz = t.split_off(r);
    x.truncate(r);
    Echelon {
        basis: Matrix { cols: n, rows: x },
        pivots,
        transform: Matrix { cols: m, rows: t },
        syzygies: Matrix { cols: m, rows: syz },
    }
}

impl<E: Clone> Echelon<E> {
    /// Coefficients `c` over the echelon basis with `c · basis = v`, if any.
    pub fn reduce<D: EuclideanDomain<Elem = E>>(&self, d: &D, v: &[E]) -> Option<Vec<E>> {
        let mut w = v.to_vec();
        let mut coeffs = vec![d.zero(); self.pivots.len()];
        for (i, &c) in self.pivots.iter().enumerate() {
            if w[..c].iter().any(|e| !d.is_zero(e)) {
                return None;
            }
            if d.is_zero(&w[c]) {
                continue;
            }
            let (q, r) = d.div_rem(&w[c], &self.basis.rows[i][c]).expect("nonzero pivot");
            if !d.is_zero(&r) {
                return None;
            }
            for (x, y) in w.iter_mut().zip(&self.basis.rows[i]) {
                *x = d.sub(x, &d.mul(&q, y));
            }
            coeffs[i] = q;
        }
        is_zero_vec(d, &w).then_some(coeffs)
    }

    /// Coefficients over the original input rows, if `v` is in their span.
    pub fn solve<D: EuclideanDomain<Elem = E>>(&self, d: &D, v: &[E]) -> Option<Vec<E>> {
        let c = self.reduce(d, v)?;
        Some(if self.transform.nrows() == 0 { Vec::new() } else { vec_mul(d, &c, &self.transform) })
    }

    pub fn contains<D: EuclideanDomain<Elem = E>>(&self, d: &D, v: &[E]) -> bool {
        self.reduce(d, v).is_some()
    }
}

/// Whether `v` lies in the span of the rows of `gens`.
pub fn hermite_membership<D: EuclideanDomain>(d: &D, gens: &Matrix<D::Elem>, v: &[D::Elem]) -> bool {
    echelon(d, gens).contains(d, v)
}

/// Generators of `span(A) ∩ span(B)` (Zassenhaus).
pub fn intersection<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    let k = a.ncols();
    assert_eq!(k, b.ncols());
    let mut rows = Vec::new();
    for r in &a.rows {
        let mut row = r.clone();
        row.extend(r.iter().cloned());
        rows.push(row);
    }
    for r in &b.rows {
        let mut row = r.clone();
        row.extend(std::iter::repeat_n(d.zero(), k));
        rows.push(row);
    }
    let e = echelon(d, &Matrix { cols: 2 * k, rows });
    let out = e.basis.rows.iter().zip(&e.pivots).filter(|(_, &p)| p >= k).map(|(r, _)| r[k..].to_vec()).collect();
    Matrix { cols: k, rows: out }
}

/// Whether every row of `a` lies in the span of `b`.
pub fn span_contains<D: EuclideanDomain>(d: &D, b: &Matrix<D::Elem>, a: &Matrix<D::Elem>) -> bool {
    let e = echelon(d, b);
    a.rows.iter().all(|r| e.contains(d, r))
}

pub fn same_span<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> bool {
    span_contains(d, a, b) && span_contains(d, b, a)
}

/// Determinant by fraction-free elimination.
pub fn det<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> D::Elem {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return d.one();
    }
    let mut x = a.rows.clone();
    let mut sign = d.one();
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&x[k][k]) {
            match (k + 1..n).find(|&i| !d.is_zero(&x[i][k])) {
                Some(i) => {
                    x.swap(k, i);
                    sign = d.neg(&sign);
                }
                None => return d.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = d.sub(&d.mul(&x[i][j], &x[k][k]), &d.mul(&x[i][k], &x[k][j]));
                x[i][j] = d.exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = x[k][k].clone();
    }
    d.mul(&sign, &x[n - 1][n - 1])
}

pub fn is_unimodular<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> bool {
    d.is_unit(&det(d, a))
}

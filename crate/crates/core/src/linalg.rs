//! Dense matrices over a [`PrecisionRing`] and exact linear algebra.
//!
//! With p inverted, a weight-disk ring is `K[w]/(w^M)` over the p-adic
//! field at precision: a local principal ideal ring with maximal ideal (w).
//! Elimination therefore pivots first on w-valuation, then on the
//! p-valuation of the leading coefficient (stripping p-powers is loss-free
//! since denominators are tracked).  Pivot order is deterministic: lowest
//! valuation, then lowest index.

use crate::error::Error;
use crate::ring::{PrecisionRing, RingElem, Val};
use crate::Result;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    ring: PrecisionRing,
    rows: usize,
    cols: usize,
    a: Vec<RingElem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                write!(f, " {:?}", self.at(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(ring: PrecisionRing, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, a: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: PrecisionRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: PrecisionRing, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.ring(), ring);
                a.push(e);
            }
        }
        Matrix { ring, rows, cols, a }
    }

    pub fn from_i64_rows(ring: PrecisionRing, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(ring, r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn ring(&self) -> PrecisionRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElem {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        debug_assert_eq!(v.ring(), self.ring);
        self.a[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    pub fn scale(&self, s: &RingElem) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, self.cols, |i, j| self.at(i, j).mul(s))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&aik.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RingElem]) -> Vec<RingElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self.at(i, j).mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut result = Matrix::identity(self.ring, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|e| e.is_zero())
    }

    pub fn map(&self, mut f: impl FnMut(&RingElem) -> RingElem) -> Matrix {
        let a: Vec<RingElem> = self.a.iter().map(|e| f(e)).collect();
        let ring = a.first().map_or(self.ring, |e| e.ring());
        Matrix { ring, rows: self.rows, cols: self.cols, a }
    }

    /// Map every entry through a fallible function, e.g. specialization.
    pub fn try_map(&self, target: PrecisionRing, mut f: impl FnMut(&RingElem) -> Result<RingElem>) -> Result<Matrix> {
        let mut a = Vec::with_capacity(self.a.len());
        for e in &self.a {
            a.push(f(e)?);
        }
        Ok(Matrix { ring: target, rows: self.rows, cols: self.cols, a })
    }

    pub fn specialize(&self, w0: &RingElem) -> Result<Matrix> {
        self.try_map(self.ring.scalar_ring(), |e| e.specialize(w0))
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_columns(ring: PrecisionRing, rows: usize, cols: &[Vec<RingElem>]) -> Matrix {
        Matrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn submatrix(&self, ri: &[usize], ci: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, ri.len(), ci.len(), |i, j| self.at(ri[i], ci[j]).clone())
    }

    /// Division-free determinant (Berkowitz), valid over any ring including
    /// weight disks.  Cubic-to-quartic cost; intended for small matrices.
    pub fn det(&self) -> RingElem {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let cs = berkowitz_char_coeffs(self, n);
        // det(A) = (-1)^n * charpoly(0) where charpoly(x) = det(xI - A);
        // cs[k] is the coefficient of x^{n-k}, so det = (-1)^n cs[n].
        let d = cs[n].clone();
        if n % 2 == 1 {
            d.neg()
        } else {
            d
        }
    }

    /// Coefficients of `det(1 - T*self)` up to degree `deg` (division-free).
    pub fn rev_char_coeffs(&self, deg: usize) -> Vec<RingElem> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = deg.min(n);
        let cs = berkowitz_char_coeffs(self, d);
        // det(xI - A) = sum cs[k] x^{n-k}; det(1 - TA) = T^n det((1/T)I - A)
        // = sum cs[k] T^k.
        cs.into_iter().take(d + 1).collect()
    }
}

/// Berkowitz iteration returning the first `deg+1` coefficients of
/// `det(xI - A)` ordered from x^n downward: `[1, c1, c2, ...]`.  Truncation
/// at `deg` is sound because lower coefficients never depend on higher ones.
fn berkowitz_char_coeffs(a: &Matrix, deg: usize) -> Vec<RingElem> {
    let ring = a.ring();
    let n = a.rows();
    let keep = deg + 1;
    let mut c: Vec<RingElem> = vec![ring.one()];
    for m in 1..=n {
        let mm = m - 1;
        // Toeplitz column: t[0] = 1, t[1] = -a[mm][mm],
        // t[j+2] = -(row_mm . A_{mm}^j . col_mm); only indices <= keep-1 used
        let t_needed = m.min(keep.saturating_sub(1));
        let mut tvals: Vec<RingElem> = Vec::with_capacity(t_needed + 1);
        tvals.push(ring.one());
        if t_needed >= 1 {
            tvals.push(a.at(mm, mm).neg());
        }
        if mm > 0 && t_needed >= 2 {
            let mut v: Vec<RingElem> = (0..mm).map(|i| a.at(i, mm).clone()).collect();
            while tvals.len() <= t_needed {
                let mut dot = ring.zero();
                for i in 0..mm {
                    if !a.at(mm, i).is_zero() && !v[i].is_zero() {
                        dot = dot.add(&a.at(mm, i).mul(&v[i]));
                    }
                }
                tvals.push(dot.neg());
                if tvals.len() > t_needed {
                    break;
                }
                let mut nv = vec![ring.zero(); mm];
                for i in 0..mm {
                    for k in 0..mm {
                        if !a.at(i, k).is_zero() && !v[k].is_zero() {
                            nv[i] = nv[i].add(&a.at(i, k).mul(&v[k]));
                        }
                    }
                }
                v = nv;
            }
        }
        let target_len = (m + 1).min(keep);
        let mut nc = vec![ring.zero(); target_len];
        for (i, slot) in nc.iter_mut().enumerate() {
            let mut acc = ring.zero();
            for (j, t) in tvals.iter().enumerate().take(i + 1) {
                if i - j < c.len() && !t.is_zero() && !c[i - j].is_zero() {
                    acc = acc.add(&t.mul(&c[i - j]));
                }
            }
            *slot = acc;
        }
        c = nc;
    }
    while c.len() < keep {
        c.push(ring.zero());
    }
    c
}

/// Valuation data used to select pivots: (w-valuation, p-valuation of the
/// leading w-coefficient).  `None` for the zero element.
fn pivot_val(e: &RingElem) -> Option<(u32, i64)> {
    if e.is_zero() {
        return None;
    }
    let res = e.coeff_residues();
    let wv = res.iter().position(|&c| c != 0).unwrap() as u32;
    let lead = e.w_coeff(wv as usize);
    match lead.val_p() {
        Val::Finite(v) => Some((wv, v)),
        Val::Infinite => None,
    }
}

/// Row-echelon data over the local PIR `K[w]/(w^M)`.
pub struct Echelon {
    /// Reduced matrix; each pivot entry equals `p^pv * w^wv` exactly.
    pub mat: Matrix,
    /// (row, col, w-valuation, p-valuation) per pivot, sorted by column.
    pub pivots: Vec<(usize, usize, u32, i64)>,
}

impl Echelon {
    /// Number of pivots with w-valuation zero (the free rank over the ring
    /// with p inverted).
    pub fn unit_rank(&self) -> usize {
        self.pivots.iter().filter(|&&(_, _, wv, _)| wv == 0).count()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Largest p-valuation among pivots (0 if there are none); callers use
    /// this for precision-exhaustion guards.
    pub fn max_pivot_pval(&self) -> i64 {
        self.pivots.iter().map(|&(_, _, _, pv)| pv).max().unwrap_or(0)
    }
}

/// Row reduce `m`, eliminating below and above each pivot.
///
/// Pivots are chosen with minimal (w-val, p-val-of-lead, column, row).  A
/// pivot row is normalized by the inverse of the pivot's *unit part* only,
/// leaving the pivot equal to `p^v w^a`; elimination factors divide by that
/// monomial exactly (w by coefficient shift, p by denominator tracking), so
/// no spurious top digits are ever introduced.
pub fn echelonize(m: &Matrix) -> Echelon {
    echelonize_cols(m, m.cols())
}

/// Like [`echelonize`] but pivots are restricted to the first
/// `pivot_cols` columns (elimination still spans all columns); used for
/// augmented solves.
pub fn echelonize_cols(m: &Matrix, pivot_cols: usize) -> Echelon {
    let mut mat = m.clone();
    let (rows, cols) = (mat.rows(), mat.cols());
    let mut used_rows = vec![false; rows];
    let mut pivots = Vec::new();
    loop {
        // find the best pivot among unused rows
        let mut best: Option<(u32, i64, usize, usize)> = None;
        for i in 0..rows {
            if used_rows[i] {
                continue;
            }
            for j in 0..pivot_cols {
                if let Some((wv, pv)) = pivot_val(mat.at(i, j)) {
                    let cand = (wv, pv, j, i);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((wv, pv, pj, pi)) = best else { break };
        used_rows[pi] = true;
        pivots.push((pi, pj, wv, pv));
        // pivot = w^wv * p^pv * u with u a 1-unit series; normalize the row
        // by u^{-1} so the pivot becomes exactly p^pv w^wv
        let pivot = mat.at(pi, pj).clone();
        let shifted = shift_w_down(&pivot, wv);
        let unit_part = if pv >= 0 { shifted.div_pow_p(pv as u32) } else { shifted.mul_pow_p((-pv) as u32) };
        let uinv = unit_part.inv().expect("unit part must be invertible");
        for j in 0..cols {
            let v = mat.at(pi, j).mul(&uinv);
            mat.set(pi, j, v);
        }
        // eliminate: factor = e / (p^pv w^wv), exact whenever w-val(e) >= wv
        for i in 0..rows {
            if i == pi {
                continue;
            }
            let e = mat.at(i, pj).clone();
            if e.is_zero() {
                continue;
            }
            let evw = pivot_val(&e).map(|(w, _)| w).unwrap_or(0);
            if evw < wv {
                // cannot reduce without dividing by w; leave in place
                // (w-positive pivots make consumers error out anyway)
                continue;
            }
            let mut factor = shift_w_down(&e, wv);
            factor = if pv >= 0 { factor.div_pow_p(pv as u32) } else { factor.mul_pow_p((-pv) as u32) };
            for j in 0..cols {
                let v = mat.at(i, j).sub(&factor.mul(mat.at(pi, j)));
                mat.set(i, j, v);
            }
        }
    }
    pivots.sort_by_key(|&(_, c, _, _)| c);
    Echelon { mat, pivots }
}

/// Divide by w^k by shifting coefficients down; entries below w^k are
/// discarded (callers guarantee divisibility).
fn shift_w_down(e: &RingElem, k: u32) -> RingElem {
    if k == 0 {
        return e.clone();
    }
    let ring = e.ring();
    let res = e.coeff_residues();
    let width = ring.width();
    let mut c = vec![0i64; width];
    for d in (k as usize)..width {
        c[d - k as usize] = res[d] as i64;
    }
    // reconstruct with the same denominator
    let mut out = ring.zero();
    for (d, &cd) in c.iter().enumerate() {
        if cd != 0 {
            let mut mono = vec![0i64; width];
            mono[d] = cd;
            out = out.add(&ring.elem(&mono, e.denom_exp()));
        }
    }
    out
}

/// Free kernel basis of `m` (as columns).  Errors with `RankUnstable` if the
/// kernel has w-torsion contributions, i.e. the solution module is not free.
pub fn kernel(m: &Matrix) -> Result<Matrix> {
    let ech = echelonize(m);
    for &(_, _, wv, _) in &ech.pivots {
        if wv > 0 {
            return Err(Error::RankUnstable("kernel has w-torsion at this precision".into()));
        }
    }
    let ring = m.ring();
    let cols = m.cols();
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c, _, _)| c).collect();
    let mut basis: Vec<Vec<RingElem>> = Vec::new();
    for j in 0..cols {
        if pivot_cols.contains(&j) {
            continue;
        }
        let mut v = vec![ring.zero(); cols];
        v[j] = ring.one();
        for &(pr, pc, _, pv) in &ech.pivots {
            // pivot is p^pv at (pr, pc): x_pc = -mat[pr][j] / p^pv (exact)
            let val = ech.mat.at(pr, j).neg();
            v[pc] = if pv >= 0 { val.div_pow_p(pv as u32) } else { val.mul_pow_p((-pv) as u32) };
        }
        basis.push(v);
    }
    Ok(Matrix::from_columns(ring, cols, &basis))
}

/// Solve `m x = b` for each column of `b`.  Returns `None` if inconsistent.
pub fn solve(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    assert_eq!(m.rows(), b.rows());
    let aug = m.hstack(b);
    let ech = echelonize_cols(&aug, m.cols());
    let ring = m.ring();
    for &(_, _, wv, _) in &ech.pivots {
        if wv > 0 {
            return Err(Error::RankUnstable("solve requires unit pivots at this precision".into()));
        }
    }
    let mut x = Matrix::zero(ring, m.cols(), b.cols());
    let mut loss: i64 = 0;
    for &(pr, pc, _, pv) in &ech.pivots {
        if pv > 0 {
            loss += 2 * pv;
        }
        for k in 0..b.cols() {
            let val = ech.mat.at(pr, m.cols() + k).clone();
            let val = if pv >= 0 { val.div_pow_p(pv as u32) } else { val.mul_pow_p((-pv) as u32) };
            x.set(pc, k, val);
        }
    }
    // Verification: with unit pivots the solve is exact; each p^v pivot can
    // cost up to 2v digits of absolute precision, so compare at the
    // guaranteed number of digits.
    let guaranteed = ring.cap_p() as i64 - loss;
    if guaranteed < 2 {
        return Err(Error::PrecisionExhausted(format!("solve lost {loss} of {} digits", ring.cap_p())));
    }
    let check = m.mul(&x).sub(b);
    let ok = (0..check.rows()).all(|i| {
        (0..check.cols()).all(|j| match check.at(i, j).val_p() {
            Val::Infinite => true,
            Val::Finite(v) => v >= guaranteed,
        })
    });
    if !ok {
        return Ok(None);
    }
    Ok(Some(x))
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    assert_eq!(m.rows(), m.cols());
    match solve(m, &Matrix::identity(m.ring(), m.rows()))? {
        Some(x) => Ok(x),
        None => Err(Error::NonUnit),
    }
}

/// Rank over the fraction-field-like localization (unit pivots only).
pub fn rank(m: &Matrix) -> usize {
    echelonize(m).unit_rank()
}

/// Exact determinant of a scalar-ring matrix in factored form
/// `(p-valuation, unit)` computed by valuation-stripped elimination, so the
/// total valuation may exceed the ring's p-cap without overflow.
/// Errors with `PrecisionExhausted` if some pivot alone exhausts precision.
pub fn det_val_factored(m: &Matrix) -> Result<(i64, RingElem)> {
    assert_eq!(m.rows(), m.cols());
    let ring = m.ring();
    assert!(ring.is_scalar(), "factored determinant needs a scalar ring");
    let n = m.rows();
    let mut a = m.clone();
    let mut total_val: i64 = 0;
    let mut unit = ring.one();
    let mut sign = 1i64;
    let margin = 2;
    for col in 0..n {
        // choose min-valuation pivot in rows >= col
        let mut best: Option<(i64, usize)> = None;
        for i in col..n {
            match a.at(i, col).val_p() {
                Val::Finite(v) => {
                    if best.map_or(true, |(bv, bi)| (v, i) < (bv, bi)) {
                        best = Some((v, i));
                    }
                }
                Val::Infinite => {}
            }
        }
        let Some((v, pi)) = best else {
            return Err(Error::PrecisionExhausted(format!("zero column {col} in determinant")));
        };
        if v + margin >= ring.cap_p() as i64 {
            return Err(Error::PrecisionExhausted(format!("pivot valuation {v} at cap {}", ring.cap_p())));
        }
        if pi != col {
            for j in 0..n {
                let x = a.at(col, j).clone();
                let y = a.at(pi, j).clone();
                a.set(col, j, y);
                a.set(pi, j, x);
            }
            sign = -sign;
        }
        let pivot = a.at(col, col).clone();
        // strip valuation; eliminate with exact stripped factors so no
        // spurious digits enter later pivots
        total_val += v;
        let pivot_unit = if v >= 0 { pivot.div_pow_p(v as u32) } else { pivot.mul_pow_p((-v) as u32) };
        unit = unit.mul(&pivot_unit);
        let uinv = pivot_unit.inv().map_err(|_| Error::PrecisionExhausted("pivot not invertible".into()))?;
        for i in (col + 1)..n {
            let e = a.at(i, col).clone();
            if e.is_zero() {
                continue;
            }
            let stripped = if v >= 0 { e.div_pow_p(v as u32) } else { e.mul_pow_p((-v) as u32) };
            let f = stripped.mul(&uinv);
            for j in col..n {
                let x = a.at(i, j).sub(&f.mul(a.at(col, j)));
                a.set(i, j, x);
            }
        }
    }
    Ok((total_val, unit.mul_i64(sign)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PrecisionRing {
        PrecisionRing::scalar(3, 10)
    }

    #[test]
    fn det_2x2() {
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![2, 3], vec![5, 7]]);
        assert_eq!(m.det(), r.from_i64(-1));
    }

    #[test]
    fn det_3x3_berkowitz() {
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![1, 2, 0], vec![0, 1, 4], vec![5, 0, 1]]);
        // det = 1*(1-0) - 2*(0-20) + 0 = 41
        assert_eq!(m.det(), r.from_i64(41));
    }

    #[test]
    fn rev_char_coeffs_diag() {
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![3, 0], vec![0, 9]]);
        let cs = m.rev_char_coeffs(2);
        assert_eq!(cs[0], r.one());
        assert_eq!(cs[1], r.from_i64(-12));
        assert_eq!(cs[2], r.from_i64(27));
    }

    #[test]
    fn kernel_simple() {
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![1, 2, 3]]);
        let k = kernel(&m).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(r, 2));
    }

    #[test]
    fn solve_with_p_valuation_pivot() {
        // one pivot of valuation 1 costs two digits: the solution is exact
        // only mod p^{cap-2}
        let r = ring();
        let m = Matrix::from_i64_rows(r, &[vec![3, 1], vec![0, 3]]);
        let b = Matrix::from_i64_rows(r, &[vec![1], vec![1]]);
        let x = solve(&m, &b).unwrap().unwrap();
        let diff = m.mul(&x).sub(&b);
        for i in 0..2 {
            assert!(diff.at(i, 0).val_p() >= Val::Finite(8), "{:?}", diff);
        }
    }

    #[test]
    fn kernel_over_disk_ring() {
        let r = PrecisionRing::weight_disk(3, 8, 3);
        // [1, 1+w] has kernel spanned by (-(1+w), 1)
        let m = Matrix::from_fn(r, 1, 2, |_, j| if j == 0 { r.one() } else { r.one().add(&r.w()) });
        let k = kernel(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn kernel_torsion_detected() {
        let r = PrecisionRing::weight_disk(3, 8, 3);
        let m = Matrix::from_fn(r, 1, 1, |_, _| r.w());
        assert!(matches!(kernel(&m), Err(Error::RankUnstable(_))));
    }

    #[test]
    fn det_val_factored_large_valuation() {
        // total det valuation 12 > representable comfortably, per-pivot small
        let r = PrecisionRing::scalar(3, 8);
        let units = [1i64, 2, 4, 5];
        let m = Matrix::from_fn(r, 4, 4, |i, j| {
            if i == j {
                r.from_i64(3i64.pow(3) * units[i])
            } else {
                r.zero()
            }
        });
        let (v, u) = det_val_factored(&m).unwrap();
        assert_eq!(v, 12);
        assert_eq!(u, r.from_i64(40));
    }
}

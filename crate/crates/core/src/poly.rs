//! Truncated multivariate polynomials over a [`PrecisionRing`].
//!
//! Chart expansions live in `R[c_1..c_d]` truncated by a total-degree cap
//! per variable block (one block for function expansions, two blocks for
//! pairing kernels).  Since every positive-degree element is nilpotent in
//! the truncated ring, geometric and binomial series terminate exactly.

use crate::error::Error;
use crate::ring::{PrecisionRing, RingElem};
use crate::Result;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Exponent vector.
pub type Midx = Vec<u8>;

/// Variable layout: contiguous blocks, each with its own total-degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpace {
    nvars: usize,
    /// (start, len, cap) per block, covering 0..nvars
    blocks: Vec<(usize, usize, usize)>,
}

impl PolySpace {
    pub fn single_block(nvars: usize, cap: usize) -> Arc<Self> {
        Arc::new(PolySpace { nvars, blocks: vec![(0, nvars, cap)] })
    }

    pub fn two_blocks(n1: usize, cap1: usize, n2: usize, cap2: usize) -> Arc<Self> {
        Arc::new(PolySpace { nvars: n1 + n2, blocks: vec![(0, n1, cap1), (n1, n2, cap2)] })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn admits(&self, idx: &[u8]) -> bool {
        self.blocks.iter().all(|&(s, l, cap)| {
            let d: usize = idx[s..s + l].iter().map(|&e| e as usize).sum();
            d <= cap
        })
    }

    /// Total degree bound (sum of block caps), the nilpotency order bound.
    pub fn total_cap(&self) -> usize {
        self.blocks.iter().map(|&(_, _, c)| c).sum()
    }

    /// Enumerate all admissible exponent vectors in graded lexicographic
    /// order (total degree first, then lexicographic).
    pub fn monomials(&self) -> Vec<Midx> {
        let mut out: Vec<Midx> = vec![vec![0; self.nvars]];
        let mut frontier: Vec<Midx> = out.clone();
        while !frontier.is_empty() {
            let mut next: Vec<Midx> = Vec::new();
            for m in &frontier {
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..self.nvars {
                    let mut n = m.clone();
                    n[v] += 1;
                    if self.admits(&n) {
                        next.push(n);
                    }
                }
            }
            next.sort();
            next.dedup();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by_key(|m| (m.iter().map(|&e| e as usize).sum::<usize>(), m.clone()));
        out
    }
}

/// Sparse truncated polynomial.
#[derive(Clone)]
pub struct MultiPoly {
    ring: PrecisionRing,
    space: Arc<PolySpace>,
    terms: BTreeMap<Midx, RingElem>,
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (v, &e) in m.iter().enumerate() {
                if e == 1 {
                    write!(f, "*c{v}")?;
                } else if e > 1 {
                    write!(f, "*c{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(ring: PrecisionRing, space: Arc<PolySpace>) -> Self {
        MultiPoly { ring, space, terms: BTreeMap::new() }
    }

    pub fn constant(ring: PrecisionRing, space: Arc<PolySpace>, c: RingElem) -> Self {
        let mut p = Self::zero(ring, space);
        if !c.is_zero() {
            let nvars = p.space.nvars();
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(ring: PrecisionRing, space: Arc<PolySpace>) -> Self {
        let one = ring.one();
        Self::constant(ring, space, one)
    }

    pub fn var(ring: PrecisionRing, space: Arc<PolySpace>, v: usize) -> Self {
        let mut idx = vec![0u8; space.nvars()];
        idx[v] = 1;
        let mut p = Self::zero(ring, space);
        assert!(p.space.admits(&idx), "variable exceeds degree cap");
        p.terms.insert(idx, ring.one());
        p
    }

    pub fn ring(&self) -> PrecisionRing {
        self.ring
    }

    pub fn space(&self) -> &Arc<PolySpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Midx, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> RingElem {
        self.terms.get(idx).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> RingElem {
        self.coeff(&vec![0; self.space.nvars()])
    }

    fn insert(&mut self, idx: Midx, c: RingElem) {
        if c.is_zero() || !self.space.admits(&idx) {
            return;
        }
        self.terms.insert(idx, c);
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let cur = out.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero());
            let s = cur.add(c);
            if s.is_zero() {
                out.terms.remove(m);
            } else {
                out.terms.insert(m.clone(), s);
            }
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for (_, c) in out.terms.iter_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, s: &RingElem) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring, self.space.clone());
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.space, other.space);
        let mut acc: BTreeMap<Midx, RingElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                for (i, &e) in mb.iter().enumerate() {
                    m[i] += e;
                }
                if !self.space.admits(&m) {
                    continue;
                }
                let prod = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(cur) => *cur = cur.add(&prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { ring: self.ring, space: self.space.clone(), terms: acc }
    }

    /// Inverse of a polynomial with invertible constant term, by geometric
    /// series in the nilpotent positive-degree part.
    pub fn inv(&self) -> Result<MultiPoly> {
        let c0 = self.constant_term();
        let c0inv = c0.inv().map_err(|_| Error::NonUnit)?;
        let normalized = self.scale(&c0inv);
        let z = normalized.sub(&MultiPoly::one(self.ring, self.space.clone()));
        // sum (-z)^k, k = 0..=total_cap
        let mut acc = MultiPoly::one(self.ring, self.space.clone());
        let mut pow = MultiPoly::one(self.ring, self.space.clone());
        for _ in 0..self.space.total_cap() {
            pow = pow.mul(&z).neg();
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc.scale(&c0inv))
    }

    pub fn pow_i64(&self, k: i64) -> Result<MultiPoly> {
        if k < 0 {
            return self.inv()?.pow_i64(-k);
        }
        let mut result = MultiPoly::one(self.ring, self.space.clone());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(result)
    }

    /// `self^s` for a ring-element exponent, where `self = 1 + z` with `z`
    /// of positive degree.  The binomial series terminates exactly at the
    /// truncation order.
    pub fn binom_pow(&self, s: &RingElem) -> Result<MultiPoly> {
        let one = MultiPoly::one(self.ring, self.space.clone());
        let z = self.sub(&one);
        if !z.constant_term().is_zero() {
            return Err(Error::Divergent("binomial power needs constant term 1".into()));
        }
        let mut acc = one.clone();
        let mut coef = self.ring.one(); // C(s, n)
        let mut zpow = one;
        for n in 0..self.space.total_cap() {
            let num = s.sub(&self.ring.from_i64(n as i64));
            coef = coef.mul(&num);
            coef = coef.mul(&self.ring.from_i64((n + 1) as i64).inv()?);
            zpow = zpow.mul(&z);
            if zpow.is_zero() || coef.is_zero() {
                break;
            }
            acc = acc.add(&zpow.scale(&coef));
        }
        Ok(acc)
    }

    /// Evaluate at ring-element arguments.
    pub fn eval(&self, args: &[RingElem]) -> RingElem {
        assert_eq!(args.len(), self.space.nvars());
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&args[v]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Map coefficients through a fallible function (e.g. specialization),
    /// producing a polynomial over the target ring.
    pub fn try_map_coeffs(
        &self,
        target: PrecisionRing,
        mut f: impl FnMut(&RingElem) -> Result<RingElem>,
    ) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target, self.space.clone());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// True when every coefficient has denominator zero (p-integral).
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom_exp() == 0)
    }

    /// True when every coefficient is divisible by p.
    pub fn is_p_divisible(&self) -> bool {
        use crate::ring::Val;
        self.terms.values().all(|c| c.val_p() >= Val::Finite(1))
    }

    /// Drop all terms whose block degrees exceed the caps of `space`
    /// (used to compare computations at different truncations).
    pub fn truncate_to(&self, space: Arc<PolySpace>) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring, space);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

/// Square matrix of truncated polynomials; the symbolic workhorse for chart
/// computations.
#[derive(Clone, Debug)]
pub struct PolyMat {
    pub n: usize,
    pub a: Vec<MultiPoly>,
}

impl PolyMat {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(i, j));
            }
        }
        PolyMat { n, a }
    }

    pub fn identity(ring: PrecisionRing, space: Arc<PolySpace>, n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                MultiPoly::one(ring, space.clone())
            } else {
                MultiPoly::zero(ring, space.clone())
            }
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &MultiPoly {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.n, other.n);
        PolyMat::from_fn(self.n, |i, j| {
            let mut acc = self.at(i, 0).mul(other.at(0, j));
            for k in 1..self.n {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &PolyMat) -> PolyMat {
        PolyMat::from_fn(self.n, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn transpose(&self) -> PolyMat {
        PolyMat::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&MultiPoly) -> MultiPoly) -> PolyMat {
        PolyMat { n: self.n, a: self.a.iter().map(|x| f(x)).collect() }
    }

    /// Leading principal minor of size k (cofactor expansion; small k only).
    pub fn leading_minor(&self, k: usize) -> MultiPoly {
        assert!(k >= 1 && k <= self.n);
        let idx: Vec<usize> = (0..k).collect();
        self.minor(&idx, &idx)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        let k = rows.len();
        if k == 1 {
            return self.at(rows[0], cols[0]).clone();
        }
        let (ring, space) = {
            let p = self.at(rows[0], cols[0]);
            (p.ring(), p.space().clone())
        };
        let mut acc = MultiPoly::zero(ring, space);
        for (j, &cj) in cols.iter().enumerate() {
            let sub_rows: Vec<usize> = rows[1..].to_vec();
            let sub_cols: Vec<usize> =
                cols.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &c)| c).collect();
            let term = self.at(rows[0], cj).mul(&self.minor(&sub_rows, &sub_cols));
            if j % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    /// LDU factorization with unit pivots: `self = L * D * U` with L lower
    /// unipotent, D diagonal, U upper unipotent.  Requires every pivot to
    /// have an invertible constant term.
    pub fn ldu(&self) -> Result<(PolyMat, PolyMat, PolyMat)> {
        let n = self.n;
        let (ring, space) = (self.at(0, 0).ring(), self.at(0, 0).space().clone());
        let mut work = self.clone();
        let mut l = PolyMat::identity(ring, space.clone(), n);
        let mut u = PolyMat::identity(ring, space.clone(), n);
        let mut d = PolyMat::identity(ring, space, n);
        for k in 0..n {
            let pivot = work.at(k, k).clone();
            let pinv = pivot.inv().map_err(|_| Error::NonUnitPivot)?;
            d.set(k, k, pivot.clone());
            for i in (k + 1)..n {
                let f = work.at(i, k).mul(&pinv);
                l.set(i, k, f.clone());
                for j in k..n {
                    let v = work.at(i, j).sub(&f.mul(work.at(k, j)));
                    work.set(i, j, v);
                }
            }
            for j in (k + 1)..n {
                let f = work.at(k, j).mul(&pinv);
                u.set(k, j, f);
            }
        }
        Ok((l, d, u))
    }

    /// Inverse of a unipotent (lower or upper) matrix via Neumann series.
    pub fn unipotent_inv(&self) -> PolyMat {
        let n = self.n;
        let (ring, space) = (self.at(0, 0).ring(), self.at(0, 0).space().clone());
        let id = PolyMat::identity(ring, space.clone(), n);
        let nmat = PolyMat::from_fn(n, |i, j| {
            if i == j {
                MultiPoly::zero(ring, space.clone())
            } else {
                self.at(i, j).clone()
            }
        });
        let mut acc = id.clone();
        let mut pow = id;
        for _ in 0..n {
            pow = pow.mul(&nmat);
            pow = pow.map(|x| x.neg());
            acc = acc.add(&pow);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Val;

    fn setup() -> (PrecisionRing, Arc<PolySpace>) {
        (PrecisionRing::scalar(3, 8), PolySpace::single_block(2, 4))
    }

    #[test]
    fn monomial_enumeration_counts() {
        let sp = PolySpace::single_block(2, 4);
        // C(4+2, 2) = 15 monomials of total degree <= 4 in 2 vars
        assert_eq!(sp.monomials().len(), 15);
        let sp2 = PolySpace::two_blocks(1, 6, 1, 6);
        assert_eq!(sp2.monomials().len(), 49);
    }

    #[test]
    fn mul_truncates() {
        let (r, sp) = setup();
        let x = MultiPoly::var(r, sp, 0);
        let p = x.pow_i64(3).unwrap();
        assert!(!p.is_zero());
        assert!(p.mul(&p).is_zero()); // degree 6 > cap 4
    }

    #[test]
    fn inv_geometric() {
        let (r, sp) = setup();
        let one = MultiPoly::one(r, sp.clone());
        let x = MultiPoly::var(r, sp, 0).scale(&r.from_i64(3));
        let f = one.add(&x);
        let g = f.inv().unwrap();
        assert!(f.mul(&g).sub(&one).is_zero());
    }

    #[test]
    fn binom_pow_integral_on_p_divisible() {
        let (r, sp) = setup();
        let one = MultiPoly::one(r, sp.clone());
        let z = MultiPoly::var(r, sp, 1).scale(&r.from_i64(3));
        let f = one.add(&z);
        let s = r.from_i64(2).inv().unwrap();
        let g = f.binom_pow(&s).unwrap();
        let sq = g.mul(&g);
        // (1+3c)^{1/2} squared = 1 + 3c up to terms beyond the cap, whose
        // coefficients carry at least cap-1 powers of p
        let diff = sq.sub(&f);
        for (_, c) in diff.terms() {
            assert!(c.val_p() >= Val::Finite(4), "{:?}", c);
        }
        assert!(g.is_integral());
    }

    #[test]
    fn binom_pow_integer_exponent_exact() {
        let (r, sp) = setup();
        let one = MultiPoly::one(r, sp.clone());
        let z = MultiPoly::var(r, sp, 0).scale(&r.from_i64(6));
        let f = one.add(&z);
        let g = f.binom_pow(&r.from_i64(3)).unwrap();
        let expected = f.pow_i64(3).unwrap();
        assert!(g.sub(&expected).is_zero());
    }

    #[test]
    fn ldu_roundtrip() {
        let (r, sp) = setup();
        let c0 = MultiPoly::var(r, sp.clone(), 0).scale(&r.from_i64(3));
        let c1 = MultiPoly::var(r, sp.clone(), 1).scale(&r.from_i64(3));
        let one = MultiPoly::one(r, sp.clone());
        let m = PolyMat::from_fn(2, |i, j| match (i, j) {
            (0, 0) => one.add(&c0),
            (0, 1) => c1.clone(),
            (1, 0) => c0.clone(),
            (1, 1) => one.add(&c1.mul(&c0)),
            _ => unreachable!(),
        });
        let (l, d, u) = m.ldu().unwrap();
        let back = l.mul(&d).mul(&u);
        for i in 0..2 {
            for j in 0..2 {
                assert!(back.at(i, j).sub(m.at(i, j)).is_zero());
            }
        }
        assert!(l.at(0, 1).is_zero());
        assert!(l.at(0, 0).sub(&one).is_zero());
        assert!(u.at(1, 0).is_zero());
    }

    #[test]
    fn unipotent_inverse() {
        let (r, sp) = setup();
        let one = MultiPoly::one(r, sp.clone());
        let z = MultiPoly::var(r, sp.clone(), 0);
        let m = PolyMat::from_fn(2, |i, j| {
            if i == j {
                one.clone()
            } else if i > j {
                z.clone()
            } else {
                MultiPoly::zero(r, sp.clone())
            }
        });
        let inv = m.unipotent_inv();
        let prod = m.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { one.clone() } else { MultiPoly::zero(r, sp.clone()) };
                assert!(prod.at(i, j).sub(&expected).is_zero());
            }
        }
    }

    #[test]
    fn leading_minors() {
        let (r, sp) = setup();
        let c = |k: i64| MultiPoly::constant(r, sp.clone(), r.from_i64(k));
        let m = PolyMat::from_fn(2, |i, j| c((2 * i + j + 1) as i64));
        // [[1,2],[3,4]]: minor1 = 1, minor2 = -2
        assert!(m.leading_minor(1).sub(&c(1)).is_zero());
        assert!(m.leading_minor(2).sub(&c(-2)).is_zero());
    }
}

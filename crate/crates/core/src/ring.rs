//! Truncated coefficient rings: p-adic scalars mod `p^N` and one-variable
//! weight-disk rings `Q_p[[w]]` mod `(p^N, w^M)`, both with bounded
//! denominators so that elements of the Tate ring (p inverted) are
//! representable.
//!
//! An element is stored as `coeffs / p^denom` where `coeffs[d]` is the
//! residue mod `p^cap_p` of the w-degree-`d` coefficient.  Canonical form
//! strips any common power of p between the numerator and the denominator.

use crate::error::Error;
use crate::Result;
use std::cmp::Ordering;
use std::fmt;

/// Rational number used for norm exponents and Newton slopes.
pub type Rat = num::rational::Ratio<i64>;

/// p-adic valuation, with `Infinite` reserved for the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinite)
    }

    pub fn min(self, other: Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a.min(b)),
            (Val::Finite(a), Val::Infinite) | (Val::Infinite, Val::Finite(a)) => Val::Finite(a),
            _ => Val::Infinite,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
            (Val::Infinite, _) => Ordering::Greater,
            (_, Val::Infinite) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

/// Descriptor of a truncated coefficient ring.
///
/// `cap_w == 0` is the scalar ring `Q_p` at precision `p^cap_p`; `cap_w >= 1`
/// is the weight-disk ring `Q_p[[w]]/(w^cap_w)` at the same p-precision.
/// The pseudouniformizer is p itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionRing {
    p: u64,
    cap_p: u32,
    cap_w: u32,
    pmod: u64,
}

impl fmt::Debug for PrecisionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cap_w == 0 {
            write!(f, "Z/{}^{}", self.p, self.cap_p)
        } else {
            write!(f, "Z/{}^{}[w]/w^{}", self.p, self.cap_p, self.cap_w)
        }
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrecisionRing {
    /// Scalar ring `Q_p` at precision `p^cap_p`.  Panics on invalid input;
    /// use [`PrecisionRing::validated`] for fallible construction.
    pub fn scalar(p: u64, cap_p: u32) -> Self {
        Self::validated(p, cap_p, 0).expect("invalid scalar ring parameters")
    }

    /// Weight-disk ring `Q_p[[w]]/(w^cap_w)` at precision `p^cap_p`.
    pub fn weight_disk(p: u64, cap_p: u32, cap_w: u32) -> Self {
        assert!(cap_w >= 1, "weight disk needs cap_w >= 1");
        Self::validated(p, cap_p, cap_w).expect("invalid weight-disk ring parameters")
    }

    pub fn validated(p: u64, cap_p: u32, cap_w: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::Invalid(format!("p = {p} is not an odd prime")));
        }
        if cap_p == 0 {
            return Err(Error::Invalid("cap_p must be >= 1".into()));
        }
        let mut pmod: u64 = 1;
        for _ in 0..cap_p {
            pmod = pmod
                .checked_mul(p)
                .ok_or_else(|| Error::Invalid(format!("p^cap_p overflows u64 for p={p}, cap={cap_p}")))?;
        }
        // products of residues must fit in u128
        if (pmod as u128).checked_mul(pmod as u128).is_none() {
            return Err(Error::Invalid("p^cap_p too large for exact products".into()));
        }
        Ok(PrecisionRing { p, cap_p, cap_w, pmod })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cap_p(&self) -> u32 {
        self.cap_p
    }

    pub fn cap_w(&self) -> u32 {
        self.cap_w
    }

    pub fn is_scalar(&self) -> bool {
        self.cap_w == 0
    }

    /// Number of stored w-coefficients (1 for scalar rings).
    pub fn width(&self) -> usize {
        self.cap_w.max(1) as usize
    }

    pub fn modulus(&self) -> u64 {
        self.pmod
    }

    /// The scalar ring with the same p-precision (fiber ring of a disk).
    pub fn scalar_ring(&self) -> Self {
        PrecisionRing { p: self.p, cap_p: self.cap_p, cap_w: 0, pmod: self.pmod }
    }

    fn reduce_i128(&self, x: i128) -> u64 {
        let m = self.pmod as i128;
        (((x % m) + m) % m) as u64
    }

    pub fn zero(&self) -> RingElem {
        RingElem { ring: *self, coeffs: vec![0; self.width()], denom: 0 }
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> RingElem {
        let mut coeffs = vec![0; self.width()];
        coeffs[0] = self.reduce_i128(x as i128);
        RingElem { ring: *self, coeffs, denom: 0 }
    }

    pub fn from_u64(&self, x: u64) -> RingElem {
        let mut coeffs = vec![0; self.width()];
        coeffs[0] = x % self.pmod;
        RingElem { ring: *self, coeffs, denom: 0 }
    }

    /// The disk coordinate w.  Panics on scalar rings.
    pub fn w(&self) -> RingElem {
        assert!(!self.is_scalar(), "scalar ring has no disk coordinate");
        let mut coeffs = vec![0; self.width()];
        if self.width() > 1 {
            coeffs[1] = 1;
        }
        RingElem { ring: *self, coeffs, denom: 0 }
    }

    /// Build an element from w-coefficients (low degree first) over p^denom.
    pub fn elem(&self, coeffs: &[i64], denom: u32) -> RingElem {
        let mut c = vec![0u64; self.width()];
        for (d, &x) in coeffs.iter().enumerate().take(self.width()) {
            c[d] = self.reduce_i128(x as i128);
        }
        let mut e = RingElem { ring: *self, coeffs: c, denom };
        e.canonicalize();
        e
    }

    /// v_p of a residue representative (cap if the residue is 0).
    fn vp_residue(&self, x: u64) -> u32 {
        if x == 0 {
            return self.cap_p;
        }
        let mut v = 0;
        let mut x = x;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, k: u32) -> u64 {
        let mut r: u64 = 1;
        for _ in 0..k.min(self.cap_p) {
            r = r.wrapping_mul(self.p) % self.pmod;
        }
        if k >= self.cap_p {
            0
        } else {
            r
        }
    }
}

/// Element of a [`PrecisionRing`]: `(sum coeffs[d] w^d) / p^denom`.
#[derive(Clone)]
pub struct RingElem {
    ring: PrecisionRing,
    coeffs: Vec<u64>,
    denom: u32,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 && !(d == 0 && self.coeffs.iter().all(|&x| x == 0)) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{c}")?;
            } else if d == 1 {
                write!(f, "{c}*w")?;
            } else {
                write!(f, "{c}*w^{d}")?;
            }
        }
        if self.denom > 0 {
            write!(f, " / {}^{}", self.ring.p, self.denom)?;
        }
        Ok(())
    }
}

impl RingElem {
    pub fn ring(&self) -> PrecisionRing {
        self.ring
    }

    pub fn coeff_residues(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom
    }

    fn assert_same_ring(&self, other: &RingElem) {
        assert_eq!(self.ring, other.ring, "ring mismatch in arithmetic");
    }

    fn canonicalize(&mut self) {
        if self.denom == 0 {
            return;
        }
        let mut minv = self.ring.cap_p;
        for &c in &self.coeffs {
            minv = minv.min(self.ring.vp_residue(c));
            if minv == 0 {
                return;
            }
        }
        let strip = minv.min(self.denom);
        if strip == 0 {
            return;
        }
        let pk = {
            let mut r: u64 = 1;
            for _ in 0..strip {
                r *= self.ring.p;
            }
            r
        };
        for c in &mut self.coeffs {
            *c /= pk;
        }
        self.denom -= strip;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// p-adic valuation with |w| = 1 (minimum over w-coefficients).
    pub fn val_p(&self) -> Val {
        let mut best: Option<i64> = None;
        for &c in &self.coeffs {
            if c != 0 {
                let v = self.ring.vp_residue(c) as i64 - self.denom as i64;
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
        match best {
            Some(v) => Val::Finite(v),
            None => Val::Infinite,
        }
    }

    /// Gauss valuation with |w| = 1/p (w counts as one power of p).
    pub fn val_gauss(&self) -> Val {
        let mut best: Option<i64> = None;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let v = self.ring.vp_residue(c) as i64 + d as i64 - self.denom as i64;
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
        match best {
            Some(v) => Val::Finite(v),
            None => Val::Infinite,
        }
    }

    /// True when the element is invertible at working precision.
    pub fn is_invertible(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn is_one(&self) -> bool {
        self == &self.ring.one()
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.assert_same_ring(other);
        let denom = self.denom.max(other.denom);
        let pa = self.ring.pow_p(denom - self.denom);
        let pb = self.ring.pow_p(denom - other.denom);
        let m = self.ring.pmod as u128;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (((a as u128) * (pa as u128) + (b as u128) * (pb as u128)) % m) as u64)
            .collect();
        let mut r = RingElem { ring: self.ring, coeffs, denom };
        r.canonicalize();
        r
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElem {
        let m = self.ring.pmod;
        let coeffs = self.coeffs.iter().map(|&a| if a == 0 { 0 } else { m - a }).collect();
        RingElem { ring: self.ring, coeffs, denom: self.denom }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.assert_same_ring(other);
        let w = self.ring.width();
        let m = self.ring.pmod as u128;
        let mut coeffs = vec![0u64; w];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= w || b == 0 {
                    continue;
                }
                let prod = (a as u128) * (b as u128) % m;
                coeffs[i + j] = (((coeffs[i + j] as u128) + prod) % m) as u64;
            }
        }
        let mut r = RingElem { ring: self.ring, coeffs, denom: self.denom + other.denom };
        r.canonicalize();
        r
    }

    pub fn mul_i64(&self, k: i64) -> RingElem {
        self.mul(&self.ring.from_i64(k))
    }

    /// Divide by p^k (always possible in the Tate ring).
    pub fn div_pow_p(&self, k: u32) -> RingElem {
        let mut r = RingElem { ring: self.ring, coeffs: self.coeffs.clone(), denom: self.denom + k };
        r.canonicalize();
        r
    }

    pub fn mul_pow_p(&self, k: u32) -> RingElem {
        self.mul(&self.ring.from_u64(self.ring.pow_p(k)))
    }

    /// Multiplicative inverse.  Works for any element whose constant
    /// w-coefficient is nonzero at precision (including p-multiples, which
    /// produce denominators).
    pub fn inv(&self) -> Result<RingElem> {
        if self.coeffs[0] == 0 {
            return Err(Error::NonUnit);
        }
        let ring = self.ring;
        // strip the p-part of the constant coefficient
        let v0 = ring.vp_residue(self.coeffs[0]);
        // scalar inverse of the unit part of coeffs[0] mod p^cap
        let unit0 = self.coeffs[0] / {
            let mut r: u64 = 1;
            for _ in 0..v0 {
                r *= ring.p;
            }
            r
        };
        let inv0 = mod_inverse(unit0, ring.pmod).ok_or(Error::NonUnit)?;
        // y0 = inverse of coeffs[0] in the Tate ring: inv0 / p^{v0}
        let mut y = {
            let mut c = vec![0u64; ring.width()];
            c[0] = inv0;
            let mut e = RingElem { ring, coeffs: c, denom: v0 };
            e.canonicalize();
            e
        };
        if ring.width() > 1 {
            // Newton iteration y <- y(2 - uy) on the numerator series
            let u = RingElem { ring, coeffs: self.coeffs.clone(), denom: 0 };
            let two = ring.from_i64(2);
            let mut steps = 0;
            loop {
                let uy = u.mul(&y);
                let corr = two.sub(&uy);
                let y_next = y.mul(&corr);
                steps += 1;
                if y_next == y || steps > ring.width() + 2 {
                    y = y_next;
                    break;
                }
                y = y_next;
            }
        }
        // account for the original denominator: (num/p^e)^{-1} = p^e * num^{-1}
        let mut r = y;
        r = r.mul(&ring.from_u64(ring.pow_p(self.denom)));
        // verify
        if !(r.mul(self)).is_one() {
            return Err(Error::NonUnit);
        }
        Ok(r)
    }

    pub fn pow_i64(&self, k: i64) -> Result<RingElem> {
        if k < 0 {
            return self.inv()?.pow_i64(-k);
        }
        let mut result = self.ring.one();
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

    /// Substitute `w := w0` (a topologically nilpotent scalar) and return a
    /// scalar-ring element.  This is a ring homomorphism.
    pub fn specialize(&self, w0: &RingElem) -> Result<RingElem> {
        let target = self.ring.scalar_ring();
        if self.ring.is_scalar() {
            return Ok(self.clone());
        }
        if w0.ring() != target {
            return Err(Error::RingMismatch);
        }
        if !w0.is_zero() && w0.val_p() < Val::Finite(1) {
            return Err(Error::Divergent("specialization point must satisfy |w0| <= 1/p".into()));
        }
        let mut acc = target.zero();
        // Horner from the top degree
        for d in (0..self.ring.width()).rev() {
            let c = RingElem { ring: target, coeffs: vec![self.coeffs[d]], denom: 0 };
            acc = acc.mul(w0).add(&c);
        }
        Ok(RingElem { ring: target, coeffs: acc.coeffs, denom: acc.denom + self.denom }.canonical())
    }

    fn canonical(mut self) -> RingElem {
        self.canonicalize();
        self
    }

    /// Coefficient of w^d as a scalar-ring element.
    pub fn w_coeff(&self, d: usize) -> RingElem {
        let target = self.ring.scalar_ring();
        let c = if d < self.coeffs.len() { self.coeffs[d] } else { 0 };
        RingElem { ring: target, coeffs: vec![c], denom: self.denom }.canonical()
    }

    /// Lift a scalar element into a disk ring (constant series).
    pub fn lift_to(&self, ring: PrecisionRing) -> RingElem {
        assert!(self.ring.is_scalar() && self.ring == ring.scalar_ring(), "incompatible lift");
        let mut coeffs = vec![0u64; ring.width()];
        coeffs[0] = self.coeffs[0];
        RingElem { ring, coeffs, denom: self.denom }.canonical()
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.denom == other.denom && self.coeffs == other.coeffs
    }
}

impl Eq for RingElem {}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // extended Euclid on (a, m)
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    let m = m as i128;
    Some((((t0 % m) + m) % m) as u64)
}

/// Binomial coefficient series `sum_{n=0..=degree} C(s, n) z^n`, where
/// `C(s, n) = s(s-1)...(s-n+1)/n!`, together with a guaranteed Gauss
/// valuation of the omitted tail (`Val::Infinite` when the tail vanishes
/// identically at this truncation).
///
/// Requires `z` topologically nilpotent: Gauss valuation >= 1.
pub fn binom_series(s: &RingElem, z: &RingElem, degree: usize) -> Result<(RingElem, Val)> {
    let ring = s.ring();
    if z.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let vz = match z.val_gauss() {
        Val::Infinite => {
            return Ok((ring.one(), Val::Infinite));
        }
        Val::Finite(v) => v,
    };
    if vz < 1 {
        return Err(Error::Divergent(format!("|z| = p^{} > 1/p", -vz)));
    }
    let mut sum = ring.one();
    let mut coef = ring.one(); // C(s, n)
    let mut zpow = ring.one();
    let mut truncated_tail = false;
    for n in 0..degree {
        // C(s, n+1) = C(s, n) * (s - n) / (n + 1)
        let num = s.sub(&ring.from_i64(n as i64));
        coef = coef.mul(&num);
        let inv_np1 = ring.from_i64((n + 1) as i64).inv().map_err(|_| Error::NonUnit)?;
        coef = coef.mul(&inv_np1);
        zpow = zpow.mul(z);
        let term = coef.mul(&zpow);
        if term.is_zero() && coef.is_zero() {
            // binomial coefficients of an integer exponent vanish for good
            return Ok((sum, Val::Infinite));
        }
        sum = sum.add(&term);
        if n + 1 == degree {
            // peek at whether anything remains
            let next_num = s.sub(&ring.from_i64((n + 1) as i64));
            let c_next = coef.mul(&next_num);
            if !c_next.is_zero() && !zpow.mul(z).is_zero() {
                truncated_tail = true;
            }
        }
    }
    if degree == 0 {
        let c1 = s.clone();
        if !c1.is_zero() && !z.is_zero() {
            truncated_tail = true;
        }
    }
    if !truncated_tail {
        return Ok((sum, Val::Infinite));
    }
    // tail bound: min over n > degree of n*vz - v_p(n!), scanned over a
    // window wide enough that the linear lower bound exceeds the window min
    let p = ring.p() as i64;
    let vp_factorial = |n: i64| -> i64 {
        let mut v = 0;
        let mut q = p;
        while q <= n {
            v += n / q;
            q = q.saturating_mul(p);
        }
        v
    };
    let mut bound = i64::MAX;
    for n in (degree as i64 + 1)..(degree as i64 + 64) {
        bound = bound.min(n * vz - vp_factorial(n));
    }
    Ok((sum, Val::Finite(bound)))
}

/// Teichmueller lift of a p-adic unit: the (p-1)-st root of unity congruent
/// to `x` mod p, computed by iterating `x -> x^p` to stability.
pub fn teichmuller(x: &RingElem) -> Result<RingElem> {
    let ring = x.ring();
    if x.val_p() != Val::Finite(0) {
        return Err(Error::NonUnit);
    }
    let mut t = x.clone();
    for _ in 0..(ring.cap_p() + 2) {
        let next = t.pow_i64(ring.p() as i64)?;
        if next == t {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

/// Principal-unit part `<x> = x / teichmuller(x)` of a unit.
pub fn principal_unit(x: &RingElem) -> Result<RingElem> {
    let t = teichmuller(x)?;
    Ok(x.mul(&t.inv()?))
}

/// p-adic logarithm of a principal unit (Gauss valuation of `x - 1` >= 1).
pub fn log_unit(x: &RingElem) -> Result<RingElem> {
    let ring = x.ring();
    let z = x.sub(&ring.one());
    let vz = match z.val_gauss() {
        Val::Infinite => return Ok(ring.zero()),
        Val::Finite(v) => v,
    };
    if vz < 1 {
        return Err(Error::Divergent("log requires |x - 1| <= 1/p".into()));
    }
    // sum_{n>=1} (-1)^{n+1} z^n / n; z^n dies at precision once n*vz >= cap
    let _ = vz;
    let cap = ring.cap_p() as i64 + ring.cap_w() as i64;
    let mut acc = ring.zero();
    let mut zpow = ring.one();
    for n in 1..=(4 * cap + 16) {
        zpow = zpow.mul(&z);
        if zpow.is_zero() {
            break;
        }
        let inv_n = ring.from_i64(n).inv()?;
        let term = zpow.mul(&inv_n);
        if n % 2 == 1 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    Ok(acc)
}

/// Exponent e with `<x> = (1+p)^e`, i.e. `log<x> / log(1+p)`.
pub fn one_plus_p_exponent(x: &RingElem) -> Result<RingElem> {
    let ring = x.ring();
    let px = principal_unit(x)?;
    let num = log_unit(&px)?;
    let den = log_unit(&ring.from_i64(1 + ring.p() as i64))?;
    Ok(num.mul(&den.inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r34() -> PrecisionRing {
        PrecisionRing::scalar(3, 4)
    }

    #[test]
    fn inverse_mod_p4() {
        // inv(2) = 41 mod 81 since 2*41 = 82 = 81 + 1
        let r = r34();
        let x = r.from_i64(2).inv().unwrap();
        assert_eq!(x, r.from_i64(41));
    }

    #[test]
    fn mul_identity_random() {
        let r = PrecisionRing::scalar(5, 6);
        let one = r.one();
        for k in [0i64, 1, 2, 17, -44, 12344] {
            let x = r.from_i64(k);
            assert_eq!(x.mul(&one), x);
        }
    }

    #[test]
    fn disk_inverse_geometric() {
        // inv(1 + w) = 1 - w + w^2 mod w^3
        let r = PrecisionRing::weight_disk(3, 4, 3);
        let x = r.one().add(&r.w());
        let inv = x.inv().unwrap();
        let expected = r.elem(&[1, -1, 1], 0);
        assert_eq!(inv, expected);
    }

    #[test]
    fn inverse_of_p_multiple() {
        let r = r34();
        let x = r.from_i64(6); // 2 * 3
        let y = x.inv().unwrap();
        assert!(y.mul(&x).is_one());
        assert_eq!(y.denom_exp(), 1);
    }

    #[test]
    fn binom_integer_exponent_terminates() {
        // s = 2, z = 3c: (1+z)^2 = 1 + 6c + 9c^2 exactly, higher terms 0
        let r = PrecisionRing::scalar(3, 6);
        let s = r.from_i64(2);
        let z = r.from_i64(3 * 5);
        let (val, tail) = binom_series(&s, &z, 4).unwrap();
        let expected = r.from_i64(1 + 6 * 5 + 9 * 25);
        assert_eq!(val, expected);
        assert_eq!(tail, Val::Infinite);
    }

    #[test]
    fn binom_zero_exponent() {
        let r = PrecisionRing::scalar(5, 5);
        let (val, _) = binom_series(&r.zero(), &r.from_i64(5), 7).unwrap();
        assert!(val.is_one());
    }

    #[test]
    fn binom_half_squares_to_four() {
        // s = 1/2 mod 3^5, z = 3: X = (1+3)^{1/2}, X^2 = 4 mod 3^5
        let r = PrecisionRing::scalar(3, 5);
        let half = r.from_i64(2).inv().unwrap();
        let z = r.from_i64(3);
        // choose degree high enough that the tail vanishes below cap
        let (x, tail) = binom_series(&half, &z, 12).unwrap();
        let sq = x.mul(&x);
        assert_eq!(sq, r.from_i64(4));
        match tail {
            Val::Finite(b) => assert!(b >= 5, "tail bound {b} too weak"),
            Val::Infinite => {}
        }
    }

    #[test]
    fn binom_tail_bound_consistent() {
        let r = PrecisionRing::scalar(3, 8);
        let s = r.from_i64(7).mul(&r.from_i64(5).inv().unwrap());
        let z = r.from_i64(6);
        let (a, tail) = binom_series(&s, &z, 4).unwrap();
        let (b, _) = binom_series(&s, &z, 9).unwrap();
        let diff = a.sub(&b);
        match tail {
            Val::Infinite => assert!(diff.is_zero()),
            Val::Finite(t) => assert!(diff.val_gauss() >= Val::Finite(t), "diff {:?} vs bound {}", diff.val_gauss(), t),
        }
    }

    #[test]
    fn binom_divergent_rejected() {
        let r = PrecisionRing::scalar(3, 4);
        let s = r.from_i64(2).inv().unwrap();
        assert!(matches!(binom_series(&s, &r.from_i64(1), 3), Err(Error::Divergent(_))));
    }

    #[test]
    fn specialize_basic() {
        let r = PrecisionRing::weight_disk(3, 6, 4);
        let x = r.w().mul(&r.w()); // w^2
        let got = x.specialize(&r.scalar_ring().from_i64(3)).unwrap();
        assert_eq!(got, r.scalar_ring().from_i64(9));
    }

    #[test]
    fn specialize_is_ring_hom() {
        // At w0 = 0 specialization is an exact ring homomorphism; at
        // |w0| = 1/p it is one modulo p^{cap_w * v(w0) - denominators},
        // the truncation products dropped from degrees >= cap_w.
        let r = PrecisionRing::weight_disk(3, 6, 4);
        let s = r.scalar_ring();
        let x = r.elem(&[2, 5, 1, 7], 0);
        let y = r.elem(&[4, 1, 0, 2], 1);
        for w0 in [s.zero(), s.from_i64(3)] {
            let lhs = x.add(&y).specialize(&w0).unwrap();
            let rhs = x.specialize(&w0).unwrap().add(&y.specialize(&w0).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = x.mul(&y).specialize(&w0).unwrap();
            let rhs = x.specialize(&w0).unwrap().mul(&y.specialize(&w0).unwrap());
            if w0.is_zero() {
                assert_eq!(lhs, rhs);
            } else {
                let bound = 4 - 1; // cap_w * v(w0) - total denom_exp
                assert!(lhs.sub(&rhs).val_p() >= Val::Finite(bound), "{:?}", lhs.sub(&rhs));
            }
        }
    }

    #[test]
    fn specialize_commutes_with_inverse() {
        // specialize(inv(1+w), 3) = inv(4) up to the w-truncation tail p^cap_w
        let r = PrecisionRing::weight_disk(3, 6, 4);
        let s = r.scalar_ring();
        let x = r.one().add(&r.w()).inv().unwrap();
        let got = x.specialize(&s.from_i64(3)).unwrap();
        let diff = got.sub(&s.from_i64(4).inv().unwrap());
        assert!(diff.val_p() >= Val::Finite(4), "{:?}", diff);
        // at the disk center the identity is exact
        let got0 = x.specialize(&s.zero()).unwrap();
        assert_eq!(got0, s.one());
    }

    #[test]
    fn norm_multiplicative_on_p_power_units() {
        let r = PrecisionRing::scalar(3, 8);
        let x = r.from_i64(9 * 5); // val 2
        let y = r.from_i64(3 * 7); // val 1
        assert_eq!(x.val_p(), Val::Finite(2));
        assert_eq!(y.val_p(), Val::Finite(1));
        assert_eq!(x.mul(&y).val_p(), Val::Finite(3));
        let z = x.inv().unwrap();
        assert_eq!(z.val_p(), Val::Finite(-2));
    }

    #[test]
    fn teichmuller_root_of_unity() {
        let r = PrecisionRing::scalar(7, 8);
        let t = teichmuller(&r.from_i64(3)).unwrap();
        assert!(t.pow_i64(6).unwrap().is_one());
        // congruent to 3 mod 7
        let diff = t.sub(&r.from_i64(3));
        assert!(diff.val_p() >= Val::Finite(1));
    }

    #[test]
    fn log_one_plus_p_has_valuation_one() {
        let r = PrecisionRing::scalar(5, 10);
        let l = log_unit(&r.from_i64(6)).unwrap();
        assert_eq!(l.val_p(), Val::Finite(1));
    }

    #[test]
    fn exponent_recovers_integer_powers() {
        let r = PrecisionRing::scalar(3, 10);
        let x = r.from_i64(4).pow_i64(5).unwrap();
        let e = one_plus_p_exponent(&x).unwrap();
        // e should be 5 up to the digits lost dividing by log(1+p) (val 1)
        // and the v_p(n) denominators inside the log partial sums
        let diff = e.sub(&r.from_i64(5));
        assert!(diff.val_p() >= Val::Finite(7), "{:?}", diff);
    }
}

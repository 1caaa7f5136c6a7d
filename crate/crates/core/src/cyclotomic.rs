//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `zeta_N^0 .. zeta_N^{phi(N)-1}`
//! reduced modulo the N-th cyclotomic polynomial, with the conductor always
//! minimized: a value lying in a subfield `Q(zeta_d)`, `d | N`, is re-expressed
//! there.  This makes the representation canonical, so equality and hashing
//! are plain coefficient comparisons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

pub type Rat = BigRational;

/// Default ceiling on conductors produced by promotion.
pub const DEFAULT_CONDUCTOR_BOUND: u64 = 360;

static CONDUCTOR_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_CONDUCTOR_BOUND);

/// Change the global conductor bound.  Operations whose promoted conductor
/// would exceed the bound fail with [`CycError::ConductorOverflow`].
pub fn set_conductor_bound(bound: u64) {
    CONDUCTOR_BOUND.store(bound, Ordering::SeqCst);
}

pub fn conductor_bound() -> u64 {
    CONDUCTOR_BOUND.load(Ordering::SeqCst)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("conductor {required} exceeds configured bound {bound}")]
    ConductorOverflow { required: u64, bound: u64 },
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn rat_zero() -> Rat {
    Rat::zero()
}

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Dense univariate polynomial over Q, little-endian coefficients.
/// Only used internally for cyclotomic polynomials and basis reduction.
fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    // Exact division, used where divisibility is guaranteed.
    let mut rem: Vec<Rat> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quot = vec![rat_zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / lead;
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                let v = &rem[i + j] - &c * dc;
                rem[i + j] = v;
            }
        }
        quot[i] = c;
    }
    for r in &rem {
        debug_assert!(r.is_zero(), "non-exact polynomial division");
    }
    poly_trim(&mut quot);
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, monic, little-endian.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    table(n).phi_poly.clone()
}

struct CycTable {
    n: u64,
    phi: usize,
    /// Monic Phi_N, little-endian, length phi+1.
    phi_poly: Vec<Rat>,
    /// x^k mod Phi_N for k in 0..max(n, 2*phi-1), each of length phi.
    powers: Vec<Vec<Rat>>,
}

static TABLES: Lazy<Mutex<HashMap<u64, Arc<CycTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn compute_phi_poly(n: u64) -> Vec<Rat> {
    if n == 1 {
        return vec![rat_int(-1), rat_int(1)];
    }
    // (x^n - 1) / prod_{d|n, d<n} Phi_d
    let mut num = vec![rat_zero(); n as usize + 1];
    num[0] = rat_int(-1);
    num[n as usize] = rat_int(1);
    let mut result = num;
    for d in divisors(n) {
        if d < n {
            let phi_d = compute_phi_poly(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

fn table(n: u64) -> Arc<CycTable> {
    let mut map = TABLES.lock().unwrap();
    if let Some(t) = map.get(&n) {
        return Arc::clone(t);
    }
    let phi_poly = compute_phi_poly(n);
    let phi = phi_poly.len() - 1;
    let max_pow = std::cmp::max(n as usize, 2 * phi.max(1));
    let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(max_pow);
    // x^k for k < phi is just a unit vector; beyond that reduce using
    // x^phi = -(lower part of Phi_N).
    for k in 0..max_pow {
        if k < phi {
            let mut v = vec![rat_zero(); phi];
            v[k] = Rat::one();
            powers.push(v);
        } else {
            let prev = &powers[k - 1];
            // multiply by x, then reduce the overflow coefficient
            let carry = prev[phi - 1].clone();
            let mut v = vec![rat_zero(); phi];
            for i in 1..phi {
                v[i] = prev[i - 1].clone();
            }
            if !carry.is_zero() {
                for i in 0..phi {
                    let adj = &carry * &phi_poly[i];
                    v[i] = &v[i] - adj;
                }
            }
            powers.push(v);
        }
    }
    let t = Arc::new(CycTable {
        n,
        phi,
        phi_poly,
        powers,
    });
    map.insert(n, Arc::clone(&t));
    t
}

impl CycTable {
    fn power(&self, k: u64) -> &[Rat] {
        let k = (k % self.n) as usize;
        &self.powers[k]
    }
}

/// An exact element of a cyclotomic field, in canonical form: minimal
/// conductor, coefficients in the power basis modulo `Phi_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![rat_zero()],
        }
    }

    pub fn one() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rational(r: Rat) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(rat_int(v))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator in rational literal");
        Self::from_rational(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `zeta_N^k` in canonical form (conductor minimized).
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CycError> {
        check_bound(n)?;
        let k = k.rem_euclid(n as i64) as u64;
        let t = table(n);
        let mut z = CycNum {
            conductor: n,
            coeffs: t.power(k).to_vec(),
        };
        z.minimize();
        Ok(z)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the Galois automorphism `zeta_N -> zeta_N^j`; requires
    /// `gcd(j, N) = 1`.
    pub fn galois_image(&self, j: u64) -> CycNum {
        let n = self.conductor;
        assert_eq!(num_integer::gcd(j, n), 1, "automorphism index not coprime");
        let t = table(n);
        let mut acc = vec![rat_zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = t.power((i as u64 * j) % n);
            for (a, b) in acc.iter_mut().zip(p) {
                *a += c * b;
            }
        }
        let mut z = CycNum {
            conductor: n,
            coeffs: acc,
        };
        z.minimize();
        z
    }

    /// Checks Galois invariance directly: the element equals its image under
    /// every automorphism `zeta_N -> zeta_N^j` with `gcd(j,N)=1`.
    pub fn is_galois_invariant(&self) -> bool {
        let n = self.conductor;
        (1..n).filter(|j| num_integer::gcd(*j, n) == 1).all(|j| {
            let mut img = self.clone();
            img = img.galois_image(j);
            img == *self
        }) || n == 1
    }

    /// Complex conjugate (`zeta -> zeta^{-1}`).
    pub fn conj(&self) -> CycNum {
        if self.conductor == 1 {
            self.clone()
        } else {
            self.galois_image(self.conductor - 1)
        }
    }

    fn promote(&self, n: u64) -> Vec<Rat> {
        // coefficients of self viewed in Q(zeta_n); self.conductor | n
        let d = self.conductor;
        debug_assert_eq!(n % d, 0);
        let t = table(n);
        if d == n {
            return self.coeffs.clone();
        }
        let step = n / d;
        let mut acc = vec![rat_zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = t.power(i as u64 * step);
            for (a, b) in acc.iter_mut().zip(p) {
                *a += c * b;
            }
        }
        acc
    }

    /// Re-express at the smallest conductor: repeatedly drop primes `p | N`
    /// whenever the element lies in `Q(zeta_{N/p})`.
    fn minimize(&mut self) {
        'outer: loop {
            let n = self.conductor;
            if n == 1 {
                return;
            }
            for p in prime_factors(n) {
                let d = n / p;
                if let Some(coeffs) = subfield_coords(n, d, &self.coeffs) {
                    self.conductor = d;
                    self.coeffs = coeffs;
                    continue 'outer;
                }
            }
            return;
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, CycError> {
        let n = lcm_checked(self.conductor, other.conductor)?;
        let mut a = self.promote(n);
        let b = other.promote(n);
        for (x, y) in a.iter_mut().zip(&b) {
            *x += y;
        }
        let mut z = CycNum {
            conductor: n,
            coeffs: a,
        };
        z.minimize();
        Ok(z)
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, CycError> {
        self.checked_add(&(-other))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, CycError> {
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum::zero());
        }
        if self.conductor == 1 {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.conductor == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let n = lcm_checked(self.conductor, other.conductor)?;
        let t = table(n);
        let a = self.promote(n);
        let b = other.promote(n);
        let phi = t.phi;
        // convolution, then reduce powers >= phi via the table
        let mut conv = vec![rat_zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        let mut acc: Vec<Rat> = conv[..phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let p = &t.powers[k];
            for (x, y) in acc.iter_mut().zip(p) {
                *x += c * y;
            }
        }
        let mut z = CycNum {
            conductor: n,
            coeffs: acc,
        };
        z.minimize();
        Ok(z)
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    pub fn inverse(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.conductor));
        }
        if self.conductor == 1 {
            return Ok(CycNum::from_rational(self.coeffs[0].recip()));
        }
        let t = table(self.conductor);
        // extended Euclid in Q[x] for gcd(self, Phi_N) = 1
        let mut a: Vec<Rat> = self.coeffs.clone();
        poly_trim(&mut a);
        let inv = poly_inverse_mod(&a, &t.phi_poly);
        let mut coeffs = inv;
        coeffs.resize(t.phi, rat_zero());
        let mut z = CycNum {
            conductor: self.conductor,
            coeffs,
        };
        z.minimize();
        Ok(z)
    }

    fn scale(&self, r: &Rat) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Nonnegative-rational test, meaningful only for rational values.
    pub fn is_nonneg_rational(&self) -> bool {
        self.to_rational().map_or(false, |r| !r.is_negative())
    }
}

fn check_bound(n: u64) -> Result<(), CycError> {
    let bound = conductor_bound();
    if n > bound {
        Err(CycError::ConductorOverflow { required: n, bound })
    } else {
        Ok(())
    }
}

fn lcm_checked(a: u64, b: u64) -> Result<u64, CycError> {
    let l = num_integer::lcm(a, b);
    check_bound(l)?;
    Ok(l)
}

/// Solve for the coordinates of `coeffs` (at conductor n) in the power basis
/// of `Q(zeta_d)`, `d | n`.  Returns `None` if the element is not in the
/// subfield.
fn subfield_coords(n: u64, d: u64, coeffs: &[Rat]) -> Option<Vec<Rat>> {
    let tn = table(n);
    let phi_d = euler_phi(d) as usize;
    let step = n / d;
    // columns: zeta_d^i expressed at conductor n
    let cols: Vec<&[Rat]> = (0..phi_d)
        .map(|i| tn.power(i as u64 * step))
        .collect();
    // Gaussian elimination on the phi(n) x phi_d system
    let rows = tn.phi;
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(coeffs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..phi_d {
        let mut sel = None;
        for r in pivot_row..rows {
            if !m[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let sel = sel?;
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for c in col..=phi_d {
            let v = &m[pivot_row][c] * &inv;
            m[pivot_row][c] = v;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=phi_d {
                    let v = &m[r][c] - &f * &m[pivot_row][c];
                    m[r][c] = v;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // consistency: rows below the pivots must have zero rhs
    for r in pivot_row..rows {
        if !m[r][phi_d].is_zero() {
            return None;
        }
    }
    let mut sol = vec![rat_zero(); phi_d];
    for (r, c) in pivots {
        sol[c] = m[r][phi_d].clone();
    }
    Some(sol)
}

/// Inverse of `a` modulo the monic polynomial `m`, both little-endian over Q.
fn poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    // extended Euclid: r0 = m, r1 = a
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    let mut s0: Vec<Rat> = vec![rat_zero()];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant gcd (Phi_N is irreducible over Q)
    debug_assert_eq!(r0.len(), 1);
    let inv = r0[0].recip();
    s0.iter().map(|c| c * &inv).collect()
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dd = den.len() - 1;
    if rem.len() <= dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![rat_zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![rat_zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                let v = &rem[i + j] - &c * dc;
                rem[i + j] = v;
            }
        }
        quot[i] = c;
    }
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![rat_zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![rat_zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs)
                    .expect("cyclotomic arithmetic exceeded the conductor bound")
            }
        }
        impl std::ops::$trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.conductor, i)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.conductor, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A [`Scalar`] is stored in the power basis `1, zeta, ..., zeta^{phi(n)-1}`
//! of Q(zeta_n), reduced modulo the n-th cyclotomic polynomial, so equality
//! of canonical coefficient vectors decides equality in the field. All
//! coefficients are arbitrary-precision rationals; no floating point enters
//! anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x), by exact division.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_exact_div_int(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn poly_exact_div_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(lead.is_one(), "cyclotomic polynomials are monic");
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("invalid scalar data: {0}")]
    Invalid(String),
}

/// An element of Q(zeta_n) in canonical form.
#[derive(Clone)]
pub struct Scalar {
    conductor: u64,
    /// Length phi(conductor); coefficient of zeta^k at index k.
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Scalar { conductor: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar { conductor: 1, coeffs: vec![q(n, 1)] }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Scalar { conductor: 1, coeffs: vec![q(n, d)] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { conductor: 1, coeffs: vec![r] }
    }

    /// zeta_n^k as a canonical scalar.
    pub fn root_of_unity(n: u64, k: u64) -> Self {
        assert!(n > 0);
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[(k % n) as usize] = BigRational::one();
        Scalar::reduce(n, raw)
    }

    /// Builds a canonical scalar from raw coefficients of zeta_n^0..zeta_n^{len-1}.
    pub fn reduce(conductor: u64, raw: Vec<BigRational>) -> Self {
        assert!(conductor > 0);
        let phi = cyclotomic_poly(conductor);
        let deg = phi.len() - 1; // = euler_phi(conductor)
        let mut rem = raw;
        // First fold exponents >= conductor using zeta^n = 1.
        if rem.len() > conductor as usize {
            let n = conductor as usize;
            for i in (n..rem.len()).rev() {
                let c = std::mem::replace(&mut rem[i], BigRational::zero());
                rem[i - n] += c;
            }
            rem.truncate(n);
        }
        // Then reduce modulo Phi_n.
        for i in (deg..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                rem[i - deg + j] -= &c * pj;
            }
        }
        rem.resize(deg, BigRational::zero());
        Scalar { conductor, coeffs: rem }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the scalar is rational, else None.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the scalar in Q(zeta_m) for conductor m divisible by the
    /// current one.
    pub fn lift(&self, m: u64) -> Scalar {
        assert!(m % self.conductor == 0, "conductor lift must be to a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); (m as usize).max(self.coeffs.len() * step)];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] += c;
        }
        Scalar::reduce(m, raw)
    }

    fn lift_pair(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        let m = lcm(a.conductor, b.conductor);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let (mut a, b) = Scalar::lift_pair(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        let (mut a, b) = Scalar::lift_pair(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Scalar {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let (a, b) = Scalar::lift_pair(self, other);
        let mut raw = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x * y;
            }
        }
        Scalar::reduce(a.conductor, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.conductor;
        let phi: Vec<BigRational> = cyclotomic_poly(n)
            .into_iter()
            .map(|c| BigRational::from_integer(c))
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        // Bezout: u*a + v*phi = gcd = const; then inv = u / const.
        let (g, u) = poly_ext_gcd(&a, &phi);
        // g must be a nonzero constant since Phi_n is irreducible over Q.
        assert!(g.len() == 1 && !g[0].is_zero(), "cyclotomic polynomial not coprime to nonzero element");
        let ginv = g[0].recip();
        let coeffs: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        Ok(Scalar::reduce(n, coeffs))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Galois conjugation zeta -> zeta^k for gcd(k, conductor) = 1. Used by
    /// tests as an independent consistency probe.
    pub fn galois(&self, k: u64) -> Scalar {
        assert!(gcd(k, self.conductor) == 1);
        let n = self.conductor;
        let mut raw = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[((i as u64 * k) % n) as usize] += c;
        }
        Scalar::reduce(n, raw)
    }
}

/// Returns (gcd, u) with u*a = gcd modulo m, both as coefficient vectors.
fn poly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let trim = |mut p: Vec<BigRational>| -> Vec<BigRational> {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    };
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut u0: Vec<BigRational> = vec![BigRational::zero()];
    let mut u1: Vec<BigRational> = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (quot, rem) = poly_divmod(&r0, &r1);
        let new_u = poly_sub(&u0, &poly_mul(&quot, &u1));
        r0 = r1;
        r1 = trim(rem);
        u0 = u1;
        u1 = trim(new_u);
    }
    (r0, u0)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() <= dd {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let t = &c * dj;
            rem[i - dd + j] -= t;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Scalar::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if k == 0 {
                format!("{}", c)
            } else if c.is_one() {
                format!("z{}^{}", self.conductor, k)
            } else if (-c).is_one() {
                format!("-z{}^{}", self.conductor, k)
            } else {
                format!("{}*z{}^{}", c, self.conductor, k)
            };
            parts.push(mag);
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        write!(f, "{}", s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            conductor: u64,
            coeffs: Vec<[String; 2]>,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        Repr { conductor: self.conductor, coeffs, _p: std::marker::PhantomData }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Full { conductor: u64, coeffs: Vec<[String; 2]> },
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Scalar::from_integer(n)),
            Repr::Full { conductor, coeffs } => {
                if conductor == 0 {
                    return Err(D::Error::custom("conductor must be positive"));
                }
                let mut raw = Vec::with_capacity(coeffs.len());
                for [n, d] in &coeffs {
                    let n: BigInt = n.parse().map_err(|_| D::Error::custom("bad numerator"))?;
                    let d: BigInt = d.parse().map_err(|_| D::Error::custom("bad denominator"))?;
                    if d.is_zero() {
                        return Err(D::Error::custom("zero denominator"));
                    }
                    raw.push(BigRational::new(n, d));
                }
                Ok(Scalar::reduce(conductor, raw))
            }
        }
    }
}

/// Euler phi, exposed for loaders that size coefficient vectors.
pub fn phi(n: u64) -> u64 {
    euler_phi(n)
}

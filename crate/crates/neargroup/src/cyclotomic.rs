//! Exact arithmetic in the ring of cyclotomic integers Z[zeta_N].
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1)
//! after reduction modulo the N-th cyclotomic polynomial Phi_N, with
//! exact rational coefficients. Two values are equal iff their
//! coefficient vectors are equal, so identities like
//! `nu_3 = 2^n * e^(-2*pi*i*l/3)` are decided with zero rounding error.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduction data for a fixed root-of-unity order `N`: the cyclotomic
/// polynomial Phi_N and the expansions of zeta^j in the power basis.
struct Basis {
    modulus: u32,
    degree: usize,
    /// zeta^j in the power basis for j = 0 .. max(N, 2*degree) - 1.
    powers: Vec<Vec<BigInt>>,
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is not
/// exact or the divisor is not monic (both hold for cyclotomic factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    assert!(rem.len() > dn);
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (i, di) in den.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
        }
        quot[k] = c;
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "non-exact polynomial division"
    );
    quot
}

/// Coefficients of Phi_n, computed by the recursive quotient
/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut table: HashMap<u32, Vec<BigInt>> = HashMap::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for (e, phi_e) in &table {
            if d % e == 0 {
                den = poly_mul(&den, phi_e);
            }
        }
        table.insert(d, poly_div_exact(&num, &den));
    }
    table.remove(&n).unwrap()
}

impl Basis {
    fn new(modulus: u32) -> Basis {
        assert!(modulus >= 1, "root-of-unity order must be positive");
        let phi = cyclotomic_polynomial(modulus);
        let degree = phi.len() - 1;
        let count = (modulus as usize).max(2 * degree.max(1));
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(count);
        for j in 0..count {
            if j < degree {
                let mut v = vec![BigInt::zero(); degree.max(1)];
                v[j] = BigInt::one();
                powers.push(v);
            } else {
                // zeta^j = zeta * zeta^(j-1), then fold the overflow
                // coefficient back with x^degree = -(lower part of Phi).
                let prev = &powers[j - 1];
                let mut v = vec![BigInt::zero(); degree.max(1)];
                let lead = prev[degree - 1].clone();
                v[1..degree].clone_from_slice(&prev[..degree - 1]);
                if !lead.is_zero() {
                    for i in 0..degree {
                        v[i] -= &lead * &phi[i];
                    }
                }
                powers.push(v);
            }
        }
        // Degenerate ring Z (modulus 1): zeta = 1.
        if degree == 0 {
            for p in powers.iter_mut() {
                *p = vec![BigInt::one()];
            }
        }
        Basis {
            modulus,
            degree: degree.max(1),
            powers,
        }
    }

    fn power(&self, k: i64) -> &[BigInt] {
        let k = k.rem_euclid(self.modulus as i64) as usize;
        &self.powers[k]
    }
}

fn basis_for(modulus: u32) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(modulus)
        .or_insert_with(|| Arc::new(Basis::new(modulus)))
        .clone()
}

/// An element of Z[zeta_N] (rational coefficients are allowed transiently,
/// e.g. while dividing an indicator sum by a stabilizer order; integrality
/// is checked where it matters).
#[derive(Clone, PartialEq, Eq)]
pub struct CycInt {
    modulus: u32,
    coeffs: Vec<BigRational>,
}

impl CycInt {
    fn from_int_coeffs(modulus: u32, ints: &[BigInt]) -> CycInt {
        CycInt {
            modulus,
            coeffs: ints
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn zero(modulus: u32) -> CycInt {
        let b = basis_for(modulus);
        CycInt {
            modulus,
            coeffs: vec![BigRational::zero(); b.degree],
        }
    }

    pub fn one(modulus: u32) -> CycInt {
        CycInt::from_integer(modulus, 1)
    }

    pub fn from_integer(modulus: u32, value: i64) -> CycInt {
        let mut out = CycInt::zero(modulus);
        out.coeffs[0] = BigRational::from_integer(BigInt::from(value));
        out
    }

    /// Canonical form of zeta_N^k, for any integer exponent.
    pub fn root_of_unity(modulus: u32, k: i64) -> CycInt {
        let b = basis_for(modulus);
        CycInt::from_int_coeffs(modulus, b.power(k))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &CycInt) {
        assert_eq!(
            self.modulus, other.modulus,
            "cyclotomic arithmetic requires a common root-of-unity order"
        );
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        self.check_same(other);
        let b = basis_for(self.modulus);
        let mut out = vec![BigRational::zero(); b.degree];
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let prod = ai * bj;
                if i + j < b.degree {
                    out[i + j] += prod;
                } else {
                    for (t, pt) in b.powers[i + j].iter().enumerate() {
                        if !pt.is_zero() {
                            out[t] += &prod * pt;
                        }
                    }
                }
            }
        }
        CycInt {
            modulus: self.modulus,
            coeffs: out,
        }
    }

    /// Complex conjugation, zeta^k -> zeta^(N-k).
    pub fn conj(&self) -> CycInt {
        let b = basis_for(self.modulus);
        let mut out = CycInt::zero(self.modulus);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = b.power(-(j as i64));
            for (t, pt) in img.iter().enumerate() {
                if !pt.is_zero() {
                    out.coeffs[t] += c * pt;
                }
            }
        }
        out
    }

    pub fn scaled(&self, num: i64, den: u64) -> CycInt {
        assert!(den != 0);
        let factor = BigRational::new(BigInt::from(num), BigInt::from(den));
        CycInt {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * &factor).collect(),
        }
    }

    /// True when every coefficient is a (rational) integer, i.e. the value
    /// lies in Z[zeta_N] and not merely in Q(zeta_N).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// The value as a plain integer, if all non-constant coefficients
    /// vanish and the constant one is integral.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) && self.coeffs[0].denom().is_one() {
            Some(self.coeffs[0].numer().clone())
        } else {
            None
        }
    }

    /// Floating-point approximation, for display only; never used for
    /// equality decisions.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.modulus as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    pub fn approx_string(&self) -> String {
        let (re, im) = self.approx();
        format!("{:.6}{:+.6}i", re, im)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "zeta{}^{}", self.modulus, j)?;
            } else {
                write!(f, "{}*zeta{}^{}", mag, self.modulus, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt({})", self)
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        CycInt::add(self, rhs)
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        CycInt::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        CycInt::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: u32 = 36;

    #[test]
    fn phi_36_is_x12_minus_x6_plus_1() {
        let phi = cyclotomic_polynomial(36);
        let expect: Vec<i64> = vec![1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1];
        assert_eq!(
            phi,
            expect.into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn root_of_unity_basics() {
        assert_eq!(CycInt::root_of_unity(N, 0), CycInt::one(N));
        assert_eq!(CycInt::root_of_unity(N, 18), CycInt::from_integer(N, -1));
        // 1 + zeta^12 + zeta^24 = 0  (the Phi_3 relation inside Z[zeta_36])
        let sum = CycInt::one(N)
            .add(&CycInt::root_of_unity(N, 12))
            .add(&CycInt::root_of_unity(N, 24));
        assert!(sum.is_zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycInt::root_of_unity(N, 9);
        assert_eq!(i.mul(&i), CycInt::from_integer(N, -1));
    }

    #[test]
    fn roots_multiply_additively_exhaustive() {
        for a in 0..N as i64 {
            for b in 0..N as i64 {
                let prod = CycInt::root_of_unity(N, a).mul(&CycInt::root_of_unity(N, b));
                assert_eq!(prod, CycInt::root_of_unity(N, a + b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn conjugation() {
        let v = CycInt::root_of_unity(N, 24).scaled(2, 1);
        assert_eq!(v.conj(), CycInt::root_of_unity(N, 12).scaled(2, 1));
        // approx of 2*zeta^24 = 2 e^{-2 pi i/3} is -1 - sqrt(3) i
        let (re, im) = v.approx();
        assert!((re + 1.0).abs() < 1e-9);
        assert!((im + 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rational_integer_extraction() {
        assert_eq!(CycInt::one(N).as_rational_integer(), Some(BigInt::from(1)));
        assert_eq!(CycInt::root_of_unity(N, 12).as_rational_integer(), None);
        let v = CycInt::root_of_unity(N, 24).scaled(2, 1);
        assert_eq!(v.as_rational_integer(), None);
        let half = CycInt::one(N).scaled(1, 2);
        assert_eq!(half.as_rational_integer(), None);
        assert!(!half.is_integral());
    }

    #[test]
    fn reduction_is_idempotent() {
        // Reducing a canonical element (multiplying by one) changes nothing.
        for k in 0..N as i64 {
            let v = CycInt::root_of_unity(N, k);
            assert_eq!(v.mul(&CycInt::one(N)), v);
        }
    }

    #[test]
    fn display_rendering() {
        assert_eq!(CycInt::zero(N).to_string(), "0");
        assert_eq!(CycInt::from_integer(N, -3).to_string(), "-3");
        // zeta^24 reduces to -zeta^6 in the power basis (Phi_36 = x^12 - x^6 + 1)
        let v = CycInt::root_of_unity(N, 24).scaled(2, 1);
        assert_eq!(v.to_string(), "-2*zeta36^6");
        assert_eq!(CycInt::root_of_unity(N, 1).to_string(), "zeta36^1");
    }

    #[test]
    #[should_panic(expected = "common root-of-unity order")]
    fn mixed_modulus_rejected() {
        let _ = CycInt::one(36).add(&CycInt::one(12));
    }

    fn arb_cyc() -> impl Strategy<Value = CycInt> {
        (proptest::collection::vec(-8i64..=8, 12), 0u32..3).prop_map(|(cs, _)| {
            let mut v = CycInt::zero(N);
            for (j, c) in cs.into_iter().enumerate() {
                v = v.add(&CycInt::root_of_unity(N, j as i64).scaled(c, 1));
            }
            v
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in (arb_cyc(), arb_cyc(), arb_cyc())) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn conj_gives_square_modulus(a in arb_cyc()) {
            let norm = a.mul(&a.conj());
            let (re, im) = norm.approx();
            let (ar, ai) = a.approx();
            prop_assert!((re - (ar * ar + ai * ai)).abs() < 1e-9);
            prop_assert!(im.abs() < 1e-9);
        }
    }
}

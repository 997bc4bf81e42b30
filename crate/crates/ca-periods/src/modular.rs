//! Arithmetic in Z_n, Z_n[i] (Gaussian) and Z_n[omega] (Eisenstein),
//! with element orders, brute-force group exponents and roots-of-unity
//! censuses. Eisenstein reduction uses omega^2 = -1 - omega; elements are
//! always (a, b) residue pairs, never floating point.

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, lcm, Factorization};

/// Which quadratic ring the pair (a, b) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Plain Z_n; b is fixed to 0.
    Integers,
    /// Z_n[i], i^2 = -1.
    Gaussian,
    /// Z_n[omega], omega^2 = -1 - omega.
    Eisenstein,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Integers => "integers",
            Ring::Gaussian => "gaussian",
            Ring::Eisenstein => "eisenstein",
        }
    }
}

/// a + b*i or a + b*omega (or plain a) with residues mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KummerElement {
    pub ring: Ring,
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

impl KummerElement {
    pub fn new(ring: Ring, n: u64, a: u64, b: u64) -> Self {
        assert!(n >= 2);
        let b = b % n;
        assert!(
            !(ring == Ring::Integers && b != 0),
            "integer ring elements carry no second component"
        );
        KummerElement {
            ring,
            n,
            a: a % n,
            b,
        }
    }

    pub fn one(ring: Ring, n: u64) -> Self {
        KummerElement::new(ring, n, 1, 0)
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// Norm form evaluated mod n: a (integers), a^2 + b^2 (Gaussian),
    /// a^2 + b^2 - ab (Eisenstein).
    pub fn norm(&self) -> u64 {
        let n = self.n as u128;
        let (a, b) = (self.a as u128, self.b as u128);
        let v = match self.ring {
            Ring::Integers => a,
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a + b * b + (n - b % n) % n * a, // a^2 + b^2 - ab mod n
        };
        (v % n) as u64
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.norm(), self.n) == 1
    }
}

/// Product of two elements of the same ring and modulus.
pub fn mul(x: &KummerElement, y: &KummerElement) -> Result<KummerElement> {
    if x.ring != y.ring || x.n != y.n {
        return Err(Error::RingMismatch(format!(
            "{}/{} mod {}/{}",
            x.ring.name(),
            y.ring.name(),
            x.n,
            y.n
        )));
    }
    let n = x.n as u128;
    let (a, b, c, d) = (x.a as u128, x.b as u128, y.a as u128, y.b as u128);
    let (ra, rb) = match x.ring {
        Ring::Integers => (a * c % n, 0),
        // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
        Ring::Gaussian => ((a * c + (n - b * d % n) % n) % n, (a * d + b * c) % n),
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
        Ring::Eisenstein => {
            let bd = b * d % n;
            (
                (a * c % n + (n - bd)) % n,
                (a * d % n + b * c % n + (n - bd)) % n,
            )
        }
    };
    Ok(KummerElement {
        ring: x.ring,
        n: x.n,
        a: ra as u64,
        b: rb as u64,
    })
}

pub fn pow(x: &KummerElement, mut e: u64) -> KummerElement {
    let mut base = *x;
    let mut acc = KummerElement::one(x.ring, x.n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base).unwrap();
        }
        base = mul(&base, &base).unwrap();
        e >>= 1;
    }
    acc
}

/// Multiplicative order of a unit; non-units get order 1 by convention so
/// lcm aggregation over all elements is well defined.
pub fn order(x: &KummerElement) -> u64 {
    if !x.is_unit() {
        return 1;
    }
    let mut acc = *x;
    let mut t = 1;
    while !acc.is_one() {
        acc = mul(&acc, x).unwrap();
        t += 1;
    }
    t
}

/// Order of a unit known to divide `group_order`, by divisor descent.
fn order_dividing(x: &KummerElement, group_order: u64, factored: &Factorization) -> u64 {
    let mut t = group_order;
    for &(q, _) in &factored.factors {
        while t.is_multiple_of(q) && pow(x, t / q).is_one() {
            t /= q;
        }
    }
    t
}

/// Exponent of the unit group together with a witness of that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupExponentResult {
    pub value: u64,
    pub witness: KummerElement,
}

fn elements(ring: Ring, n: u64) -> Vec<KummerElement> {
    match ring {
        Ring::Integers => (0..n).map(|a| KummerElement::new(ring, n, a, 0)).collect(),
        _ => (0..n)
            .flat_map(|a| (0..n).map(move |b| KummerElement::new(ring, n, a, b)))
            .collect(),
    }
}

/// Exponent (lcm of unit orders) by full enumeration. In a finite abelian
/// group the maximal element order equals the exponent, so the witness is
/// the first element attaining the running maximum.
pub fn exponent_brute(ring: Ring, n: u64) -> GroupExponentResult {
    let units: Vec<_> = elements(ring, n)
        .into_iter()
        .filter(|x| x.is_unit())
        .collect();
    let group_order = units.len() as u64;
    let factored = factorize(group_order);
    let mut best = GroupExponentResult {
        value: 1,
        witness: KummerElement::one(ring, n),
    };
    for u in &units {
        let ord = order_dividing(u, group_order, &factored);
        if ord > best.value {
            best = GroupExponentResult {
                value: ord,
                witness: *u,
            };
        }
    }
    best
}

fn lambda2_prime_power(p: u64, m: u32) -> u64 {
    if p == 2 {
        if m <= 2 {
            1 << (m - 1)
        } else {
            1 << (m - 2)
        }
    } else {
        p.pow(m - 1) * (p - 1)
    }
}

fn lambda3_prime_power(p: u64, m: u32) -> u64 {
    if p == 3 {
        if m == 1 {
            6
        } else {
            2 * 3u64.pow(m - 1)
        }
    } else if p % 3 == 1 {
        p.pow(m - 1) * (p - 1)
    } else {
        p.pow(m - 1) * (p * p - 1)
    }
}

fn lambda4_prime_power(p: u64, m: u32) -> u64 {
    if p == 2 {
        if m <= 2 {
            1 << m
        } else {
            1 << (m - 1)
        }
    } else if p % 4 == 1 {
        p.pow(m - 1) * (p - 1)
    } else {
        p.pow(m - 1) * (p * p - 1)
    }
}

/// lambda_sigma(n): exponent of Z_n^x (sigma=2), Z_n[omega]^x (sigma=3) or
/// Z_n[i]^x (sigma=4), assembled as an lcm over prime powers.
pub fn lambda_formula(sigma: u64, n: u64) -> Result<u64> {
    assert!(n >= 2);
    let per_prime_power: fn(u64, u32) -> u64 = match sigma {
        2 => lambda2_prime_power,
        3 => lambda3_prime_power,
        4 => lambda4_prime_power,
        _ => return Err(Error::UnsupportedSigma(sigma, "{2, 3, 4}")),
    };
    Ok(factorize(n)
        .factors
        .iter()
        .fold(1, |acc, &(p, m)| lcm(acc, per_prime_power(p, m))))
}

/// Number of ring elements x with x^e = 1 (full enumeration).
pub fn unity_root_census(ring: Ring, n: u64, e: u64) -> u64 {
    assert!(e >= 1);
    elements(ring, n)
        .iter()
        .filter(|x| pow(x, e).is_one())
        .count() as u64
}

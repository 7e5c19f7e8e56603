//! Dense univariate polynomials over the rationals.

use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly1 {
    c: Vec<Q>,
}

/// Divisor enumeration in the rational root search is capped at this magnitude.
const ROOT_SEARCH_LIMIT: u64 = 1 << 40;

impl Poly1 {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly1 { c }
    }

    pub fn zero() -> Self {
        Poly1 { c: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Q)>>(terms: I) -> Self {
        let mut c: Vec<Q> = Vec::new();
        for (e, v) in terms {
            if c.len() <= e {
                c.resize(e + 1, Q::zero());
            }
            c[e] += v;
        }
        Poly1::new(c)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Q> {
        self.c.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly1 {
        match self.lead() {
            None => Poly1::zero(),
            Some(l) => {
                let l = l.clone();
                Poly1::new(self.c.iter().map(|a| a / &l).collect())
            }
        }
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        let lead = d.c[dd].clone();
        let mut qt = vec![Q::zero(); self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = &r[r.len() - 1] / &lead;
            for (i, a) in d.c.iter().enumerate() {
                r[k + i] -= &f * a;
            }
            qt[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly1::new(qt), Poly1::new(r))
    }

    /// Monic greatest common divisor; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Removes the factor `x^k` of highest order.
    pub fn strip_x(&self) -> Poly1 {
        let k = self.c.iter().take_while(|a| a.is_zero()).count();
        Poly1::new(self.c[k..].to_vec())
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly1::new(c)
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Q) -> usize {
        let mut p = self.clone();
        let lin = Poly1::new(vec![-r.clone(), Q::one()]);
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.div_rem(&lin).0;
            m += 1;
        }
        m
    }

    /// All distinct rational roots, sorted ascending. `None` if the search
    /// would exceed the divisor enumeration limit.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut out = Vec::new();
        if self.c[0].is_zero() {
            out.push(Q::zero());
        }
        let p = self.strip_x();
        if p.degree() == Some(0) {
            return Some(out);
        }
        // Clear denominators to a primitive integer polynomial.
        let den = p.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = p.c.iter().map(|a| (a * Q::from_integer(den.clone())).to_integer()).collect();
        let cont = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        let ints: Vec<BigInt> = ints.iter().map(|a| a / &cont).collect();
        let a0 = ints[0].abs().to_u64()?;
        let an = ints[ints.len() - 1].abs().to_u64()?;
        if a0 > ROOT_SEARCH_LIMIT || an > ROOT_SEARCH_LIMIT {
            return None;
        }
        let ps = divisors(a0);
        let qs = divisors(an);
        for pp in &ps {
            for qq in &qs {
                if pp.gcd(qq) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = Q::new(BigInt::from(*pp) * sign, BigInt::from(*qq));
                    if p.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

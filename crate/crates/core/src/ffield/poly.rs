//! Dense polynomials over the prime field Z_p, in canonical form: every
//! coefficient lies in `[0, p-1]` and there are no trailing zeros, the zero
//! polynomial being the empty coefficient vector.
//!
//! Coefficient index `i` holds the coefficient of `x^i`. Human-readable
//! strings go high-degree-first (`"x^4+2x+2"`); JSON serialization is the
//! low-degree-first coefficient list (`[2,2,0,0,1]`).

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("irreducibility is undefined for constant polynomials")]
    ConstantPolynomial,
    #[error("characteristic must be a prime, got {0}")]
    NonPrimeCharacteristic(u64),
    #[error("cannot parse polynomial from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A polynomial over Z_p in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from low-degree-first coefficients, reducing each
    /// mod `p` and trimming trailing zeros.
    ///
    /// Panics if `p` is not prime; characteristic is a structural parameter,
    /// not data.
    pub fn new(p: u32, coeffs: &[u32]) -> Poly {
        assert!(arith::is_prime(p as u64), "characteristic {p} is not prime");
        let mut c: Vec<u32> = coeffs.iter().map(|&v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, coeffs: c }
    }

    pub fn zero(p: u32) -> Poly {
        Poly::new(p, &[])
    }

    pub fn one(p: u32) -> Poly {
        Poly::new(p, &[1])
    }

    pub fn x(p: u32) -> Poly {
        Poly::new(p, &[0, 1])
    }

    pub fn monomial(p: u32, coeff: u32, degree: usize) -> Poly {
        let mut c = vec![0; degree + 1];
        c[degree] = coeff;
        Poly::new(p, &c)
    }

    /// Decodes a base-p integer into a polynomial: digit `i` of `enc` is the
    /// coefficient of `x^i`.
    pub fn from_encoding(p: u32, mut enc: u64) -> Poly {
        let mut coeffs = Vec::new();
        while enc != 0 {
            coeffs.push((enc % p as u64) as u32);
            enc /= p as u64;
        }
        Poly { p, coeffs }
    }

    /// The inverse of [`Poly::from_encoding`]. Returns `None` when the value
    /// does not fit in a `u64`.
    pub fn encoding(&self) -> Option<u64> {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(self.p as u64)?.checked_add(c as u64)?;
        }
        Some(acc)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn same_char(&self, other: &Poly) {
        assert_eq!(
            self.p, other.p,
            "mixed characteristics: {} vs {}",
            self.p, other.p
        );
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.same_char(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs: Vec<u32> = (0..n)
            .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p)
            .collect();
        Poly::new(self.p, &coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs: Vec<u32> = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        Poly::new(self.p, &coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.same_char(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.p);
        }
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % self.p as u64;
            }
        }
        let coeffs: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
        Poly::new(self.p, &coeffs)
    }

    pub fn scale(&self, k: u32) -> Poly {
        let coeffs: Vec<u32> = self
            .coeffs
            .iter()
            .map(|&c| ((c as u64 * k as u64) % self.p as u64) as u32)
            .collect();
        Poly::new(self.p, &coeffs)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same_char(divisor);
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = mod_inverse(divisor.coeffs[dd], self.p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = ((rem[rem.len() - 1] as u64 * lead_inv as u64) % self.p as u64) as u32;
            if factor != 0 {
                quot[k] = factor;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = (factor as u64 * dc as u64) % self.p as u64;
                    let cur = rem[k + i] as u64;
                    rem[k + i] = ((cur + self.p as u64 - sub) % self.p as u64) as u32;
                }
            }
            rem.pop();
        }
        Ok((Poly::new(self.p, &quot), Poly::new(self.p, &rem)))
    }

    /// Remainder of `self` mod `m` in canonical form.
    pub fn rem(&self, m: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(m)?.1)
    }

    /// Monic associate (scaled by the inverse of the leading coefficient).
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => self.scale(mod_inverse(lead, self.p)),
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.same_char(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, m: &Poly) -> Result<Poly, PolyError> {
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.p).rem(m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over Z_p by the Rabin criterion: with `n = deg(m)`,
    /// `m` is irreducible iff `x^(p^n) ≡ x (mod m)` and
    /// `gcd(x^(p^(n/r)) - x, m) = 1` for every prime `r | n`.
    ///
    /// Constant input (degree < 1) is rejected.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        let n = match self.degree() {
            None | Some(0) => return Err(PolyError::ConstantPolynomial),
            Some(n) => n,
        };
        let m = self.monic();
        if n == 1 {
            return Ok(true);
        }
        let x = Poly::x(self.p);
        // frob[k] = x^(p^k) mod m, built by iterated p-th powers
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&m)?);
        for k in 0..n {
            frob.push(frob[k].pow_mod(self.p as u64, &m)?);
        }
        if frob[n] != x.rem(&m)? {
            return Ok(false);
        }
        for (r, _) in arith::factorize(n as u64) {
            let g = frob[n / r as usize].sub(&x).gcd(&m);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses either the human string form (`"x^4+2x+2"`, `x^4-x-1` also
    /// accepted, coefficients reduced mod p) or a low-degree-first JSON-style
    /// list (`"[2,2,0,0,1]"`).
    pub fn parse(p: u32, input: &str) -> Result<Poly, PolyError> {
        if !arith::is_prime(p as u64) {
            return Err(PolyError::NonPrimeCharacteristic(p as u64));
        }
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: &str| PolyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(fail("empty input"));
        }
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| fail("unterminated coefficient list"))?;
            if inner.is_empty() {
                return Ok(Poly::zero(p));
            }
            let coeffs = inner
                .split(',')
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|e| fail(&format!("bad coefficient: {e}")))?;
            return Ok(Poly::new(p, &coeffs));
        }
        let mut acc = Poly::zero(p);
        // split into signed terms
        let mut rest: &str = &s;
        while !rest.is_empty() {
            let term_end = rest[1..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(rest.len());
            let (term, tail) = rest.split_at(term_end);
            let (term, neg) = match term.strip_prefix('-') {
                Some(t) => (t, true),
                None => (term.strip_prefix('+').unwrap_or(term), false),
            };
            if term.is_empty() {
                return Err(fail("empty term"));
            }
            let (coeff_str, var_part) = match term.find('x') {
                Some(i) => (&term[..i], &term[i..]),
                None => (term, ""),
            };
            let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
            let coeff: u64 = if coeff_str.is_empty() {
                if var_part.is_empty() {
                    return Err(fail("term with neither coefficient nor variable"));
                }
                1
            } else {
                coeff_str
                    .parse()
                    .map_err(|e| fail(&format!("bad coefficient: {e}")))?
            };
            let degree: usize = match var_part {
                "" => 0,
                "x" => 1,
                _ => var_part
                    .strip_prefix("x^")
                    .ok_or_else(|| fail("expected x^<k>"))?
                    .parse()
                    .map_err(|e| fail(&format!("bad exponent: {e}")))?,
            };
            if degree > 64 {
                return Err(fail("exponent too large"));
            }
            let coeff = (coeff % p as u64) as u32;
            let signed = if neg { (p - coeff) % p } else { coeff };
            acc = acc.add(&Poly::monomial(p, signed, degree));
            rest = tail;
        }
        Ok(acc)
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // p is prime and a != 0, so a^(p-2) works
    debug_assert!(!a.is_multiple_of(p));
    let mut acc: u64 = 1;
    let mut base = (a % p) as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl fmt::Display for Poly {
    /// High-degree-first rendering: `x^4+2x+2`, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, i) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (c, 1) => write!(f, "{c}x")?,
                (1, i) => write!(f, "x^{i}")?,
                (c, i) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[p={}]({})", self.p, self)
    }
}

impl Serialize for Poly {
    /// Low-degree-first coefficient list.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

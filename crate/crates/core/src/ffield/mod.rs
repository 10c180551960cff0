//! Construction of GF(p^n) as the polynomial ring over Z_p modulo a monic
//! irreducible polynomial, with precomputed log/antilog tables over a fixed
//! primitive root.
//!
//! Elements are encoded as base-p integers in `[0, q)`: digit `i` of the
//! encoding is the coefficient of `x^i`. Low degree = low digit, so table
//! indexing is O(1); renderings that want high-degree-first order (polynomial
//! strings, card codes) reverse at the boundary.
//!
//! A [`FieldCtx`] is immutable once built and every operation on it is a pure
//! function, so contexts can be shared freely across threads.

mod poly;

use std::sync::atomic::{AtomicU32, Ordering};

use crate::arith;

pub use poly::{Poly, PolyError};

/// Hard ceiling on the field size q = p^n.
pub const HARD_Q_BOUND: u64 = 1 << 31;

/// Default ceiling for log/antilog table construction; raise it explicitly
/// via [`FieldCtx::build_with_limit`] when a larger field is really wanted.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {modulus} has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        modulus: String,
        expected: u32,
        found: Option<usize>,
    },
    #[error("modulus {0} is not monic")]
    NotMonic(String),
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(String),
    #[error("modulus characteristic {found} does not match field characteristic {expected}")]
    CharacteristicMismatch { expected: u32, found: u32 },
    #[error("field size {q} exceeds the bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("encoding {enc} is out of range for a field of size {q}")]
    EncodingOutOfRange { enc: u64, q: u64 },
    #[error("the zero element has no {0}")]
    ZeroElement(&'static str),
}

/// A validated description of GF(p^n): characteristic, degree, and a monic
/// irreducible modulus polynomial of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    modulus: Poly,
}

impl FieldSpec {
    pub fn new(p: u32, n: u32, modulus: Poly) -> Result<FieldSpec, FieldError> {
        if !arith::is_prime(p as u64) {
            return Err(FieldError::NonPrime(p as u64));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if modulus.p() != p {
            return Err(FieldError::CharacteristicMismatch {
                expected: p,
                found: modulus.p(),
            });
        }
        if modulus.degree() != Some(n as usize) {
            return Err(FieldError::DegreeMismatch {
                modulus: modulus.to_string(),
                expected: n,
                found: modulus.degree(),
            });
        }
        if !modulus.is_monic() {
            return Err(FieldError::NotMonic(modulus.to_string()));
        }
        let q = checked_q(p, n)?;
        if q > HARD_Q_BOUND {
            return Err(FieldError::FieldTooLarge {
                q,
                bound: HARD_Q_BOUND,
            });
        }
        if !modulus.is_irreducible()? {
            return Err(FieldError::NotIrreducible(modulus.to_string()));
        }
        Ok(FieldSpec { p, n, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

fn checked_q(p: u32, n: u32) -> Result<u64, FieldError> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q
            .checked_mul(p as u64)
            .filter(|&v| v <= HARD_Q_BOUND)
            .ok_or(FieldError::FieldTooLarge {
                q: u64::MAX,
                bound: HARD_Q_BOUND,
            })?;
    }
    Ok(q)
}

/// A field element: its base-p encoding plus the id of the context it
/// belongs to. Mixing elements of different contexts is a programming error
/// and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    enc: u32,
    ctx_id: u32,
}

impl Element {
    pub fn encoding(&self) -> u32 {
        self.enc
    }
}

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

/// An immutable GF(p^n) with its generator and full log/antilog tables.
pub struct FieldCtx {
    spec: FieldSpec,
    q: u32,
    ctx_id: u32,
    generator_enc: u32,
    /// `antilog[k]` encodes `g^k`, for `k` in `[0, q-2]`.
    antilog: Vec<u32>,
    /// `log[e]` is the exponent of the nonzero encoding `e`; `log[0]` is a
    /// sentinel.
    log: Vec<u32>,
}

const LOG_SENTINEL: u32 = u32::MAX;

impl FieldCtx {
    /// Builds the context under the default table-size limit.
    pub fn build(spec: FieldSpec) -> Result<FieldCtx, FieldError> {
        Self::build_with_limit(spec, DEFAULT_TABLE_LIMIT)
    }

    /// Builds the context, allowing tables up to `limit` entries
    /// (clamped to [`HARD_Q_BOUND`]).
    pub fn build_with_limit(spec: FieldSpec, limit: u64) -> Result<FieldCtx, FieldError> {
        let q = spec.q();
        let limit = limit.min(HARD_Q_BOUND);
        if q > limit {
            return Err(FieldError::FieldTooLarge { q, bound: limit });
        }
        let generator = find_generator(&spec);
        let q = q as u32;
        let mut antilog = vec![0u32; (q - 1) as usize];
        let mut log = vec![LOG_SENTINEL; q as usize];
        let mut cur = Poly::one(spec.p);
        for (k, slot) in antilog.iter_mut().enumerate() {
            let enc = cur.encoding().expect("encoding fits") as u32;
            debug_assert!(enc < q && enc != 0);
            *slot = enc;
            debug_assert_eq!(log[enc as usize], LOG_SENTINEL, "generator order too small");
            log[enc as usize] = k as u32;
            cur = cur.mul(&generator).rem(spec.modulus()).expect("modulus nonzero");
        }
        Ok(FieldCtx {
            q,
            ctx_id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            generator_enc: generator.encoding().expect("fits") as u32,
            antilog,
            log,
            spec,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &Poly {
        self.spec.modulus()
    }

    pub fn ctx_id(&self) -> u32 {
        self.ctx_id
    }

    // ---- element constructors ----

    pub fn element(&self, enc: u32) -> Result<Element, FieldError> {
        if enc >= self.q {
            return Err(FieldError::EncodingOutOfRange {
                enc: enc as u64,
                q: self.q as u64,
            });
        }
        Ok(Element {
            enc,
            ctx_id: self.ctx_id,
        })
    }

    pub fn zero(&self) -> Element {
        Element {
            enc: 0,
            ctx_id: self.ctx_id,
        }
    }

    pub fn one(&self) -> Element {
        Element {
            enc: 1,
            ctx_id: self.ctx_id,
        }
    }

    pub fn generator(&self) -> Element {
        Element {
            enc: self.generator_enc,
            ctx_id: self.ctx_id,
        }
    }

    /// Embeds a polynomial over the same prime field, reducing mod the
    /// modulus.
    pub fn element_from_poly(&self, poly: &Poly) -> Result<Element, FieldError> {
        if poly.p() != self.p() {
            return Err(FieldError::CharacteristicMismatch {
                expected: self.p(),
                found: poly.p(),
            });
        }
        let reduced = poly.rem(self.modulus())?;
        let enc = reduced.encoding().expect("reduced encoding fits") as u32;
        self.element(enc)
    }

    /// Coefficient-vector rendering of an encoding, as a polynomial.
    pub fn poly_of_enc(&self, enc: u32) -> Poly {
        Poly::from_encoding(self.p(), enc as u64)
    }

    pub fn poly_string(&self, enc: u32) -> String {
        self.poly_of_enc(enc).to_string()
    }

    #[inline]
    fn check(&self, a: Element) -> u32 {
        assert_eq!(
            a.ctx_id, self.ctx_id,
            "element belongs to a different field context"
        );
        a.enc
    }

    #[inline]
    fn wrap(&self, enc: u32) -> Element {
        Element {
            enc,
            ctx_id: self.ctx_id,
        }
    }

    // ---- arithmetic on Element ----

    pub fn add(&self, a: Element, b: Element) -> Element {
        self.wrap(self.add_enc(self.check(a), self.check(b)))
    }

    pub fn neg(&self, a: Element) -> Element {
        self.wrap(self.neg_enc(self.check(a)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.wrap(self.mul_enc(self.check(a), self.check(b)))
    }

    pub fn inv(&self, a: Element) -> Result<Element, FieldError> {
        self.inv_enc(self.check(a))
            .map(|e| self.wrap(e))
            .ok_or(FieldError::ZeroElement("multiplicative inverse"))
    }

    pub fn pow(&self, a: Element, k: u64) -> Element {
        self.wrap(self.pow_enc(self.check(a), k))
    }

    /// Discrete log with respect to the context generator.
    pub fn log(&self, a: Element) -> Result<u32, FieldError> {
        self.log_enc(self.check(a))
            .ok_or(FieldError::ZeroElement("discrete logarithm"))
    }

    /// `g^k`, with `k` reduced mod `q-1`.
    pub fn antilog(&self, k: u64) -> Element {
        self.wrap(self.antilog_enc(k))
    }

    /// Least m >= 1 with `a^m = 1`; divides q-1.
    pub fn element_order(&self, a: Element) -> Result<u64, FieldError> {
        let k = self.log(a)? as u64;
        let group = (self.q - 1) as u64;
        Ok(group / arith::gcd(k, group))
    }

    // ---- arithmetic on raw encodings (the fast path) ----

    #[inline]
    pub fn add_enc(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        let p = self.spec.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg_enc(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a != 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn mul_enc(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = (self.q - 1) as u64;
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % group;
        self.antilog[k as usize]
    }

    #[inline]
    pub fn inv_enc(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let group = (self.q - 1) as u64;
        let k = (group - self.log[a as usize] as u64) % group;
        Some(self.antilog[k as usize])
    }

    pub fn pow_enc(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let group = (self.q - 1) as u64;
        let e = self.log[a as usize] as u64 * (k % group) % group;
        self.antilog[e as usize]
    }

    #[inline]
    pub fn log_enc(&self, a: u32) -> Option<u32> {
        match self.log[a as usize] {
            LOG_SENTINEL => None,
            k => Some(k),
        }
    }

    #[inline]
    pub fn antilog_enc(&self, k: u64) -> u32 {
        self.antilog[(k % (self.q - 1) as u64) as usize]
    }
}

/// Multiplicative order of a nonzero residue mod `m`, computed by prime-wise
/// exponent reduction; used before any log table exists.
fn poly_order(elem: &Poly, modulus: &Poly, group_order: u64) -> u64 {
    let mut order = group_order;
    for (prime, _) in arith::factorize(group_order) {
        while order.is_multiple_of(prime)
            && elem
                .pow_mod(order / prime, modulus)
                .expect("modulus nonzero")
                == Poly::one(elem.p())
        {
            order /= prime;
        }
    }
    order
}

/// Picks a primitive root for the field: `x` itself when primitive,
/// otherwise the element with the smallest encoding.
fn find_generator(spec: &FieldSpec) -> Poly {
    let group_order = spec.q() - 1;
    let x = Poly::x(spec.p).rem(spec.modulus()).expect("modulus nonzero");
    if !x.is_zero() && poly_order(&x, spec.modulus(), group_order) == group_order {
        return x;
    }
    for enc in 1..spec.q() {
        let cand = Poly::from_encoding(spec.p, enc);
        if poly_order(&cand, spec.modulus(), group_order) == group_order {
            return cand;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// The lexicographically smallest monic irreducible polynomial of degree `n`
/// over Z_p whose root `x` generates the full multiplicative group. Ordering
/// compares coefficient vectors from degree n-1 down to the constant term,
/// so the scan is a plain counter over base-p digit strings.
pub fn find_primitive_polynomial(p: u32, n: u32) -> Result<Poly, FieldError> {
    if !arith::is_prime(p as u64) {
        return Err(FieldError::NonPrime(p as u64));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = checked_q(p, n)?;
    let group_order = q - 1;
    for counter in 0..q {
        // digit j of the counter (from the most significant end) is the
        // coefficient of x^(n-1-j)
        let mut low = Poly::zero(p);
        let mut rest = counter;
        for j in 0..n {
            let digit = (rest % p as u64) as u32;
            rest /= p as u64;
            low = low.add(&Poly::monomial(p, digit, j as usize));
        }
        let candidate = low.add(&Poly::monomial(p, 1, n as usize));
        if !candidate.is_irreducible()? {
            continue;
        }
        let x = Poly::x(p).rem(&candidate)?;
        if x.is_zero() {
            continue;
        }
        if poly_order(&x, &candidate, group_order) == group_order {
            return Ok(candidate);
        }
    }
    unreachable!("a primitive polynomial exists for every prime power")
}

/// The modulus used when none is supplied: the published deck polynomials
/// for F_81, F_243 and F_64, and the deterministic primitive-polynomial scan
/// everywhere else.
pub fn default_modulus(p: u32, n: u32) -> Result<Poly, FieldError> {
    match (p, n) {
        (3, 4) => Ok(Poly::new(3, &[2, 2, 0, 0, 1])), // x^4+2x+2
        (3, 5) => Ok(Poly::new(3, &[1, 2, 0, 0, 0, 1])), // x^5+2x+1
        (2, 6) => Ok(Poly::new(2, &[1, 1, 0, 0, 0, 0, 1])), // x^6+x+1
        _ => find_primitive_polynomial(p, n),
    }
}

/// Builds GF(p^n) with the default modulus.
///
/// ```
/// let ctx = gfcaps::ffield::default_field(3, 4).unwrap();
/// assert_eq!(ctx.q(), 81);
/// assert_eq!(ctx.modulus().to_string(), "x^4+2x+2");
/// assert_eq!(ctx.element_order(ctx.generator()).unwrap(), 80);
/// ```
pub fn default_field(p: u32, n: u32) -> Result<FieldCtx, FieldError> {
    FieldCtx::build(FieldSpec::new(p, n, default_modulus(p, n)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f81() -> FieldCtx {
        default_field(3, 4).unwrap()
    }

    fn f243() -> FieldCtx {
        default_field(3, 5).unwrap()
    }

    fn f64_() -> FieldCtx {
        default_field(2, 6).unwrap()
    }

    #[test]
    fn build_ctx_examples() {
        let ctx = f81();
        assert_eq!(ctx.q(), 81);
        assert_eq!(ctx.generator().encoding(), 3); // the element x

        let ctx2 = FieldCtx::build(FieldSpec::new(2, 1, Poly::new(2, &[1, 1])).unwrap()).unwrap();
        assert_eq!(ctx2.q(), 2);
        assert_eq!(ctx2.generator().encoding(), 1);

        let ctx3 = f64_();
        assert_eq!(ctx3.q(), 64);
        assert_eq!(ctx3.generator().encoding(), 2);
    }

    #[test]
    fn build_rejects_bad_specs() {
        // x^2+1 is reducible over F_2
        assert!(matches!(
            FieldSpec::new(2, 2, Poly::new(2, &[1, 0, 1])),
            Err(FieldError::NotIrreducible(_))
        ));
        assert!(matches!(
            FieldSpec::new(4, 1, Poly::new(2, &[1, 1])),
            Err(FieldError::NonPrime(4))
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Poly::new(3, &[1, 1])),
            Err(FieldError::DegreeMismatch { .. })
        ));
        // 2x^2+1 is irreducible but not monic
        assert!(matches!(
            FieldSpec::new(3, 2, Poly::new(3, &[1, 0, 2])),
            Err(FieldError::NotMonic(_))
        ));
        // q over the hard bound
        assert!(matches!(
            checked_q(2, 32),
            Err(FieldError::FieldTooLarge { .. })
        ));
        // q over the soft table limit
        let spec = FieldSpec::new(2, 21, find_primitive_polynomial(2, 21).unwrap()).unwrap();
        assert!(matches!(
            FieldCtx::build(spec),
            Err(FieldError::FieldTooLarge { q: 2097152, .. })
        ));
    }

    #[test]
    fn element_order_examples() {
        let ctx = f243();
        assert_eq!(ctx.element_order(ctx.generator()).unwrap(), 242);
        assert_eq!(ctx.element_order(ctx.one()).unwrap(), 1);
        let ctx81 = f81();
        assert_eq!(ctx81.element_order(ctx81.generator()).unwrap(), 80);
        assert!(matches!(
            ctx81.element_order(ctx81.zero()),
            Err(FieldError::ZeroElement(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let ctx = f81();
        let g = ctx.generator();
        // g^4 = g + 1 under the x^4+2x+2 modulus
        assert_eq!(ctx.pow(g, 4), ctx.add(g, ctx.one()));

        let ctx64 = f64_();
        let g = ctx64.generator();
        // g^7 = g^2 + g under the x^6+x+1 modulus
        assert_eq!(ctx64.pow(g, 7), ctx64.add(ctx64.mul(g, g), g));
    }

    #[test]
    fn characteristic_three_triples_vanish() {
        let ctx = f243();
        for enc in [0u32, 1, 7, 100, 242] {
            let a = ctx.element(enc).unwrap();
            assert_eq!(ctx.add(a, ctx.add(a, a)), ctx.zero());
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let ctx = f81();
        assert!(ctx.inv(ctx.zero()).is_err());
        assert_eq!(ctx.inv(ctx.one()).unwrap(), ctx.one());
    }

    #[test]
    fn log_antilog_round_trip() {
        for ctx in [f81(), f64_()] {
            for k in 0..(ctx.q() - 1) as u64 {
                let e = ctx.antilog(k);
                assert_eq!(ctx.log(e).unwrap() as u64, k);
            }
            for enc in 1..ctx.q() {
                let k = ctx.log_enc(enc).unwrap();
                assert_eq!(ctx.antilog_enc(k as u64), enc);
            }
            assert_eq!(ctx.antilog(0), ctx.one());
        }
    }

    #[test]
    fn element_from_poly_round_trip() {
        let ctx = f81();
        for enc in 0..81 {
            let poly = ctx.poly_of_enc(enc);
            assert_eq!(ctx.element_from_poly(&poly).unwrap().encoding(), enc);
        }
        // reduction happens: x^4 maps to x+1, encoding 4
        let e = ctx.element_from_poly(&Poly::monomial(3, 1, 4)).unwrap();
        assert_eq!(e.encoding(), 4);
    }

    #[test]
    fn encoding_out_of_range_rejected() {
        let ctx = f81();
        assert!(ctx.element(80).is_ok());
        assert!(matches!(
            ctx.element(81),
            Err(FieldError::EncodingOutOfRange { enc: 81, q: 81 })
        ));
    }

    #[test]
    #[should_panic(expected = "different field context")]
    fn cross_context_mixing_panics() {
        let a = f81();
        let b = f243();
        let _ = a.add(a.one(), b.one());
    }

    #[test]
    fn primitive_polynomial_degree_one() {
        // over F_3 the scan must land on x+1, whose root is the primitive
        // residue 2
        let m = find_primitive_polynomial(3, 1).unwrap();
        assert_eq!(m, Poly::new(3, &[1, 1]));
    }

    /// Exhaustive oracle: every monic candidate of the given degree, filtered
    /// by irreducibility and the order of x.
    fn primitive_candidates(p: u32, n: u32) -> Vec<Poly> {
        let q = (p as u64).pow(n);
        let mut found = Vec::new();
        for counter in 0..q {
            let mut low = Poly::zero(p);
            let mut rest = counter;
            for j in 0..n {
                low = low.add(&Poly::monomial(p, (rest % p as u64) as u32, j as usize));
                rest /= p as u64;
            }
            let cand = low.add(&Poly::monomial(p, 1, n as usize));
            if !cand.is_irreducible().unwrap() {
                continue;
            }
            let ctx = FieldCtx::build(FieldSpec::new(p, n, cand.clone()).unwrap()).unwrap();
            let x = ctx.element_from_poly(&Poly::x(p)).unwrap();
            if x.encoding() != 0 && ctx.element_order(x).unwrap() == q - 1 {
                found.push(cand);
            }
        }
        found
    }

    #[test]
    fn primitive_polynomial_matches_exhaustive_scan() {
        for (p, n) in [(2u32, 6u32), (3, 6)] {
            let all = primitive_candidates(p, n);
            assert!(!all.is_empty());
            let m = find_primitive_polynomial(p, n).unwrap();
            assert_eq!(m, all[0], "scan must return the first candidate");
            let ctx = FieldCtx::build(FieldSpec::new(p, n, m).unwrap()).unwrap();
            let x = ctx.element_from_poly(&Poly::x(p)).unwrap();
            let expect = (p as u64).pow(n) - 1;
            assert_eq!(ctx.element_order(x).unwrap(), expect);
        }
    }

    #[test]
    fn default_moduli_are_the_published_ones() {
        assert_eq!(default_modulus(3, 4).unwrap().to_string(), "x^4+2x+2");
        assert_eq!(default_modulus(3, 5).unwrap().to_string(), "x^5+2x+1");
        assert_eq!(default_modulus(2, 6).unwrap().to_string(), "x^6+x+1");
    }

    #[test]
    fn contexts_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FieldCtx>();
        assert_send_sync::<Element>();
        assert_send_sync::<crate::groups::SubgroupHandle>();
        assert_send_sync::<crate::groups::CosetFamily>();
    }

    #[test]
    fn generator_order_is_group_order() {
        for ctx in [f81(), f243(), f64_(), default_field(2, 4).unwrap()] {
            let expect = (ctx.q() - 1) as u64;
            assert_eq!(ctx.element_order(ctx.generator()).unwrap(), expect);
        }
    }
}

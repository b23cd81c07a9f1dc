use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient type the sparse eliminator can run over.
///
/// Arithmetic is fallible so that the fast `i64` path can bail out on
/// overflow and let the caller rerun over `BigInt`.
pub(crate) trait Scalar: Clone + std::fmt::Debug + Send + Sync {
    fn is_unit(&self) -> bool;
    /// Pivot preference; smaller is better.
    fn magnitude(&self) -> u64;
    /// `a / p` when `p` divides `a` exactly.
    fn exact_quotient(a: &Self, p: &Self) -> Option<Self>;
    fn divides(p: &Self, a: &Self) -> bool;
    /// `mx * x - my * y`.
    fn mul_sub(x: &Self, mx: &Self, y: &Self, my: &Self) -> Option<Self>;
    fn scale(x: &Self, m: &Self) -> Option<Self>;
    fn neg_scale(y: &Self, m: &Self) -> Option<Self>;
    fn vanishes(&self) -> bool;
    fn unit() -> Self;
    /// Divides a line by the gcd of its entries (no-op over a field).
    fn remove_content(line: &mut [(u32, Self)]);
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }
    fn exact_quotient(a: &Self, p: &Self) -> Option<Self> {
        a.checked_div(*p)
    }
    fn divides(p: &Self, a: &Self) -> bool {
        *p != 0 && a.checked_rem(*p) == Some(0)
    }
    fn mul_sub(x: &Self, mx: &Self, y: &Self, my: &Self) -> Option<Self> {
        x.checked_mul(*mx)?.checked_sub(y.checked_mul(*my)?)
    }
    fn scale(x: &Self, m: &Self) -> Option<Self> {
        x.checked_mul(*m)
    }
    fn neg_scale(y: &Self, m: &Self) -> Option<Self> {
        y.checked_mul(*m)?.checked_neg()
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn unit() -> Self {
        1
    }
    fn remove_content(line: &mut [(u32, Self)]) {
        let g = line.iter().fold(0i64, |g, (_, v)| g.gcd(v));
        if g > 1 {
            for (_, v) in line.iter_mut() {
                *v /= g;
            }
        }
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude(&self) -> u64 {
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn exact_quotient(a: &Self, p: &Self) -> Option<Self> {
        Some(a / p)
    }
    fn divides(p: &Self, a: &Self) -> bool {
        !p.is_zero() && (a % p).is_zero()
    }
    fn mul_sub(x: &Self, mx: &Self, y: &Self, my: &Self) -> Option<Self> {
        Some(x * mx - y * my)
    }
    fn scale(x: &Self, m: &Self) -> Option<Self> {
        Some(x * m)
    }
    fn neg_scale(y: &Self, m: &Self) -> Option<Self> {
        Some(-(y * m))
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit() -> Self {
        One::one()
    }
    fn remove_content(line: &mut [(u32, Self)]) {
        let g = line.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g > BigInt::one() {
            for (_, v) in line.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Element of GF(2). Only `Gf2(true)` is ever stored in a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Gf2(pub bool);

impl Scalar for Gf2 {
    fn is_unit(&self) -> bool {
        self.0
    }
    fn magnitude(&self) -> u64 {
        1
    }
    fn exact_quotient(a: &Self, _: &Self) -> Option<Self> {
        Some(*a)
    }
    fn divides(p: &Self, _: &Self) -> bool {
        p.0
    }
    fn mul_sub(x: &Self, mx: &Self, y: &Self, my: &Self) -> Option<Self> {
        Some(Gf2((x.0 && mx.0) ^ (y.0 && my.0)))
    }
    fn scale(x: &Self, m: &Self) -> Option<Self> {
        Some(Gf2(x.0 && m.0))
    }
    fn neg_scale(y: &Self, m: &Self) -> Option<Self> {
        Some(Gf2(y.0 && m.0))
    }
    fn vanishes(&self) -> bool {
        !self.0
    }
    fn unit() -> Self {
        Gf2(true)
    }
    fn remove_content(_: &mut [(u32, Self)]) {}
    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0 as u8)
    }
}

use std::fmt;

use num::{BigRational, One, Signed, Zero};

/// Exact coefficient field used by the linear algebra and cohomology code.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// Short name used in reports ("Q", "Z2", ...).
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// The rationals, backed by arbitrary precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(pub BigRational);

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(v.into()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        // ±1 entries dominate boundary matrices
        if self.0.is_one() {
            return other.clone();
        }
        if other.0.is_one() {
            return self.clone();
        }
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        if self.0.abs().is_one() {
            return self.clone();
        }
        Q(self.0.recip())
    }
    fn name() -> String {
        "Q".to_string()
    }
}

/// The prime field ℤ/P.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(P-2)
        let mut base = *self;
        let mut exp = P - 2;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }
    fn name() -> String {
        format!("Z{P}")
    }
}

/// Runtime selection of coefficients for the public entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Z2")]
    Mod2,
}

impl Coefficients {
    pub fn label(self) -> &'static str {
        match self {
            Coefficients::Rational => "Q",
            Coefficients::Mod2 => "Z2",
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" | "QQ" => Ok(Coefficients::Rational),
            "Z2" | "z2" | "F2" => Ok(Coefficients::Mod2),
            other => Err(format!("unknown field `{other}` (expected Q or Z2)")),
        }
    }
}

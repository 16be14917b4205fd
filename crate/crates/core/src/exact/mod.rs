//! Exact rational linear algebra used by vertex certification.

pub mod dd;
pub mod lp;

pub type Rational = num_rational::BigRational;

pub fn rational(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

//! Arbitrary-precision arithmetic and digit-level p-adic primitives.
//!
//! Everything here is a pure function of its inputs. Integers are
//! [`num_bigint::BigInt`] throughout; the digit-level helpers take `u64`
//! indices because every index the rest of the crate feeds them fits in a
//! machine word, while the values they describe (factorials, binomials)
//! do not.

mod digits;
mod prime;
mod rational;
mod valuation;

pub use digits::{
    binomial, binomial_valuation_digits, digit_sum, digit_sum_big, digits_msb_first,
    factorial_valuation_digits, factorial_valuation_floor, kummer_carries,
};
pub use prime::{is_prime_u64, Prime};
pub use rational::ExactRational;
pub use valuation::{vp_int, vp_rat, vp_u64, PadicVal};

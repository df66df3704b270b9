//! Exact arithmetic for Babel buildings.
//!
//! The crate has two layers. The apartment layer ([`lexring`], [`rootsystem`],
//! [`weyl`], [`apartment`]) is generic over a [`Scalar`] coefficient type and
//! models the hyper-real line by the ordered ring `S[ω₂, …, ω_n]`. The group
//! layer ([`hlf`], [`sl2`]) works in `SL₂` over the two-dimensional local field
//! `𝔽_q((t₁))((t₂))` with truncated series.

pub mod apartment;
pub mod hlf;
pub mod lexring;
pub mod render;
pub mod rootsystem;
pub mod scalar;
pub mod sl2;
pub mod suite;
pub mod weyl;

pub use scalar::Scalar;

/// Exact rationals, the default coefficient type.
pub type Q = num_rational::BigRational;
pub type LexPoly = lexring::LexPoly<Q>;
pub type LinLex = lexring::LinLex<Q>;
pub type SqrtExpr = lexring::SqrtExpr<Q>;
pub type Point = apartment::Point<Q>;

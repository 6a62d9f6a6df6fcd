//! Exact efficiency certificates for outcomes of finite games with
//! incomplete information, plus the persuasion, cheap-talk and allocation
//! applications built on them.
//!
//! All arithmetic is over arbitrary-precision rationals; no floating point
//! enters any verdict.

pub mod allocation;
pub mod cheaptalk;
pub mod efficiency;
pub mod error;
pub mod examples;
pub mod game;
pub mod geometry2d;
pub mod io;
pub mod lp;
pub mod persuasion;
pub mod rational;
pub mod rule;
pub mod sample;
pub mod sweep;

pub use error::{Error, Result};
pub use game::{Game, Outcome, PayoffVector};
pub use rational::Rational;

//! Lauricella hypergeometric period matrices, generalized associators and the
//! local motivic coaction.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncalg`]: truncated noncommutative and commutative power series over a
//!   generic coefficient ring ([`ring::Coeff`]).
//! * [`hyperlog`]: numeric regularized iterated integrals and generalized
//!   associators for a [`config::Configuration`].
//! * [`lauricella`]: the period matrix `L`, its single-valued version, their
//!   Taylor expansions and the `FL` matrices built from beta quotients.
//! * [`periods`] and [`coaction`]: symbolic motivic / de Rham period symbols and
//!   the exact coaction checks.
//! * [`hyp2f1`]: the Gauss hypergeometric specialization.
//! * [`cli`]: the `periodlab` command-line frontend.

pub mod cli;
pub mod coaction;
pub mod config;
pub mod cubature;
pub mod error;
pub mod gamma;
pub mod hyp2f1;
pub mod hyperlog;
pub mod lauricella;
pub mod ncalg;
pub mod path;
pub mod periods;
pub mod quad;
pub mod report;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use ring::{Coeff, Q};

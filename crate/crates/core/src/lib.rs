//! Bounded-precision computations with p-adic analytic distributions on
//! symplectic similitude groups.
//!
//! The crate provides, bottom up:
//!
//! * [`ring`] — truncated p-adic scalars and one-variable weight-disk
//!   coefficient rings (`Q_p` mod `p^N`, `Q_p[[w]]` mod `(p^N, w^M)`),
//! * [`linalg`] — exact linear algebra over those rings with valuation
//!   pivoting,
//! * [`poly`] — truncated multivariate polynomials used for symbolic
//!   expansions in chart coordinates,
//! * [`groups`] — matrix arithmetic for `GSp_2g`: similitude certificates,
//!   strict-Iwahori factorization, the big-cell manifold of pairs and its
//!   chart,
//! * [`weights`] — p-adic weights (algebraic, tame, wild, one-parameter
//!   disk families),
//! * [`dist`] — truncated moment models of analytic distributions with the
//!   semigroup and dilation actions,
//! * [`pairing`] — the highest-weight kernel pairing on distributions and
//!   its restriction to algebraic models,
//! * [`fredholm`] — characteristic series, Newton polygons, slope
//!   factorizations, Riesz projectors,
//! * [`modsym`] — genus-1 parabolic cohomology via Manin symbols, Hecke
//!   operators, the cup-product pairing, and the small-slope control
//!   comparison,
//! * [`eigen`] — finite flat algebras over weight disks: Noether different,
//!   Fitting ideals, adjoint L-ideals, ramification reports.

pub mod error;
pub mod ring;
pub mod linalg;
pub mod poly;
pub mod groups;
pub mod weights;
pub mod dist;
pub mod pairing;
pub mod fredholm;
pub mod modsym;
pub mod eigen;
pub mod sample;
pub mod serial;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Library version string embedded in machine-readable reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

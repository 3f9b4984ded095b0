//! Billiard knots in cylinders, flat solid tori and cubes.
//!
//! A billiard knot is the closed trajectory of a ball bouncing inside a
//! three-dimensional domain. This crate constructs the piecewise-linear
//! trajectories of three such families, enumerates the crossings of their
//! projections exactly, computes knot invariants (Alexander polynomial and
//! determinant) and analyses how cylinder knots deform when the cylinder
//! is replaced by ever thinner slices.
//!
//! The three families are written `Z(s,n,m)` (cylinder), `T(s,n,m)` (flat
//! solid torus, a cube with identified front and back face) and
//! `R(n1,n2,n3)` (cube). See the guide in `book/` for a tour.

pub mod deformation;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod symunion;
pub mod trajectory;

pub use error::{Error, Result};
pub use trajectory::{BilliardParams, Geometry, Point3, Rational};

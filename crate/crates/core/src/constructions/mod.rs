//! Explicit objects: the constants κ and κ′, the Croke–Kleiner geodesic γ
//! with the quasi-geodesic β built along it, contraction and divergence
//! checks, and the small-cancellation graph with two base points.

pub mod beta;
pub mod contracting;
pub mod croke_kleiner;
pub mod example23;
pub mod kappa;
pub mod quasi;
pub mod small_cancellation;

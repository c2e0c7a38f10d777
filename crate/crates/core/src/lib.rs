//! Exact computation of the leading constants governing counts of primitive
//! integral solutions to spherical generalized Fermat equations, together
//! with the brute-force enumeration oracles used to verify them.

pub mod factor;
pub mod belyi;
pub mod constants;
pub mod defects;
pub mod enumerate;
pub mod forms;
pub mod points;
pub mod simplify;
pub mod volume;

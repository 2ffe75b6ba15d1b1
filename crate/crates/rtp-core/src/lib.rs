//! Exact computations on rational triple trees: intersection forms, Artin
//! cycles, triple and quasi-determinantal root systems, quiver reflections and
//! linear free divisor certificates.

pub mod poly;
pub mod tree;
pub mod cycle;
pub mod roots;
pub mod quiver;
pub mod lfd;
pub mod verify;

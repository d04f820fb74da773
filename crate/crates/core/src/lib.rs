//! Spanning-tree counts of planar graphs via alternating continued fractions,
//! thin semigroup orbits, and certified Hausdorff-dimension bounds for the
//! associated continued-fraction Cantor sets.

pub mod census;
pub mod cfrac;
mod decimal;
pub mod dimension;
pub mod orbit;
pub mod treegraph;

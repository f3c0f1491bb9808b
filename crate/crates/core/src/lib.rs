//! Heptagon-relation invariants of closed PL 5-manifolds equipped with a class in
//! third cohomology, computed exactly over finite fields.

pub mod algebra;
pub mod cohomology;
pub mod coloring;
pub mod error;
pub mod heptagon;
pub mod invariant;
pub mod manifolds;
pub mod pachner;
pub mod pentagon;
pub mod simplicial;
pub mod verify;

pub use algebra::field::{Field, Gf};
pub use error::{Error, Result};

pub type Gf2 = Gf<2, 1>;
pub type Gf3 = Gf<3, 1>;
pub type Gf2_2 = Gf<2, 2>;
pub type Gf2_4 = Gf<2, 4>;
pub type Gf2_8 = Gf<2, 8>;
pub type Gf2_15 = Gf<2, 15>;
pub type Gf2_16 = Gf<2, 16>;
pub type Gf3_2 = Gf<3, 2>;
pub type Gf3_9 = Gf<3, 9>;

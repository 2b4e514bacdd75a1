//! Exact arithmetic in Num(Y) ≅ U ⊕ E8(−1).

mod class;
mod gram;
mod phi;
mod shortvec;

pub const RANK: usize = 10;

pub use class::{NumClass, RationalNumClass};
pub use gram::GramSpec;
pub use phi::{enumerate_bounded_isotropic, is_nef_class, is_positive, phi, reflected_form, IsotropicWitness, Phi};
pub use shortvec::PositiveForm;

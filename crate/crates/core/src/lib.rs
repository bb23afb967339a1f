//! Exact and certified computations for two-generator Kleinian groups `⟨f, g⟩` with
//! `f`, `g` elliptic of orders `p`, `q` (or parabolic).
//!
//! * [`algebraic`], [`field`], [`poly`], [`interval`]: algebraic numbers with
//!   refinable enclosures, number fields, polynomials and interval arithmetic.
//! * [`criterion`]: the arithmeticity test on the commutator parameter `γ`.
//! * [`farey`]: Farey words, their traces and the relator search.
//! * [`slope_half`]: the table of arithmetic groups with a slope-1/2 relator.
//! * [`search`]: lattice scans for candidate `γ` and `ρ`.
//!
//! The [`book`] module holds the user guide; its examples run as doctests.

pub mod dyadic;
pub mod error;
pub mod interval;
pub mod poly;
pub mod precision;
pub mod serde_util;
pub mod sturm;
pub mod factor;
pub mod intfactor;
pub mod roots;
pub mod algebraic;
pub mod field;
pub mod discriminant;
pub mod criterion;
pub mod farey;
pub mod slope_half;
pub mod search;

/// Chapters of the user guide under `book/src`.
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebraic.md")]
    pub mod algebraic {}
    #[doc = include_str!("../../../book/src/criterion.md")]
    pub mod criterion {}
    #[doc = include_str!("../../../book/src/farey.md")]
    pub mod farey {}
    #[doc = include_str!("../../../book/src/slope_half.md")]
    pub mod slope_half {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/precision.md")]
    pub mod precision {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

//! Specht and permutation modules of symmetric groups over GF(p), restricted
//! to the elementary abelian subgroup E_n generated by n disjoint p-cycles.
//!
//! The crate computes Jordan types of the operators `u_α - 1`, generic Jordan
//! types, the locus of points where the restriction is not free, and matches
//! that locus against a small catalogue of varieties. Supporting layers cover
//! finite-field linear algebra, partition combinatorics and the node-moving
//! map φ.
//!
//! ```
//! use spechtvar::partitions::{dim_specht, Partition};
//! use spechtvar::phimap::phi_limit;
//!
//! let mu: Partition = "(4,3,2)".parse().unwrap();
//! assert_eq!(dim_specht(&mu), 168);
//! assert_eq!(phi_limit(&mu, 3).unwrap().to_string(), "(6,3)");
//! ```

pub mod checks;
pub mod error;
pub mod ffalg;
pub mod jordan;
pub mod partitions;
pub mod phimap;
pub mod spechtmod;
pub mod variety;
pub mod youngdec;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/phi.md")]
    mod phi {}
    #[doc = include_str!("../../../book/src/jordan.md")]
    mod jordan {}
    #[doc = include_str!("../../../book/src/varieties.md")]
    mod varieties {}
    #[doc = include_str!("../../../book/src/young.md")]
    mod young {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

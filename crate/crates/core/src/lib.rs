//! Exact construction of Pell and Gauss units in quaternion orders over
//! imaginary quadratic fields, and machine-checked freeness certificates for
//! pairs of them: Ping-Pong tables for free groups, the invariant-set
//! criterion for free semigroups, and a brute-force word oracle.

pub mod error;
pub mod exactnum;
pub mod mobius;
pub mod oracle;
pub mod par;
pub mod pell;
pub mod pingpong;
pub mod quaternion;
pub mod semigroup;
pub mod sweep;

pub use error::{Error, Result};

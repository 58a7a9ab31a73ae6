//! Characterization theorems for independent random variables on finite
//! Abelian groups: symmetry of the conditional distribution of one linear
//! form given another, checked numerically and exactly.

pub mod classes;
pub mod counterexamples;
pub mod distribution;
pub mod error;
pub mod finite_difference;
pub mod group;
pub mod heyde;
pub mod json;
pub mod oracle;
pub mod subgroup;
pub mod tolerance;

mod sweep;

pub use classes::{classify, ClassMembership};
pub use distribution::{CharFunction, Distribution};
pub use error::{Error, Result};
pub use finite_difference::GroupFunction;
pub use group::{Character, Element, Group};
pub use heyde::LinearFormsSpec;
pub use subgroup::Subgroup;
pub use tolerance::Tolerances;

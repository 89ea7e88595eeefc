//! Finite-scale workbench for purity of morphisms, very weak (co)limits and
//! quasi-exact morphism classes in small categories and categories of finite modules.

pub mod category;
pub mod concrete;
pub mod dirsys;
pub mod error;
pub mod limits;
pub mod orbits;
pub mod purity;
pub mod qe;

pub use category::{Category, FiniteCategory};
pub use concrete::{ModCategory, ModMorphism, ModObject};
pub use error::{CatError, Result};

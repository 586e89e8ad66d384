//! Finite incidence structures: configurations, designs, finite geometries,
//! symplectic GF(2) structures, exact realizations and symmetry groups.

pub mod canon;
pub mod catalog;
pub mod design;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod field;
pub mod geometry;
pub mod group;
pub mod incidence;
pub mod io;
pub mod report;
pub mod symmetry;
pub mod symplectic;

pub use error::{Error, Result};
pub use incidence::{ConfigParams, IncidenceStructure};

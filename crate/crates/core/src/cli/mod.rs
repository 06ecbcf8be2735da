pub mod catalog;
pub mod commands;
pub mod grammar;

pub use catalog::{load_catalog, CatalogEntry, KnownStatus};
pub use commands::{cmd_catalog, cmd_certify, cmd_cf, cmd_classify, cmd_det, DetMethod};
pub use grammar::{parse_fraction, parse_presentation};

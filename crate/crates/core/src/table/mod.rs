//! The classification table: dataset, verifier, classification and enumeration.

pub mod classify;
pub mod dataset;
pub mod enumerate;
pub mod expr;
pub mod verify;

pub use classify::{exceptionality, ke_status, BranchReport, ClassificationReport, Exceptionality, KeStatus, Mismatch};
pub use dataset::{Dataset, DatasetError, RowInstance, TableRow, DATASET_ENV};
pub use enumerate::enumerate_candidates;
pub use verify::{classify_instance, instances, verify_table};

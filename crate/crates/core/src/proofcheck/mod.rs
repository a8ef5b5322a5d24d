//! Mechanical checks of the block-type and discharging analysis for Goldberg snarks.

pub mod audit;
pub mod block;
pub mod catalog;
pub mod discharge;
pub mod endtoend;

pub use catalog::{
    catalog_diff, enumerate_block_types, enumerate_configurations, BlockType, Catalog, ConfigurationClass, RuleSet,
    CATALOG_SHA256,
};
pub use discharge::{block_type_of, detect_boundaries, discharge, discharge_abstract, BlockMatch, Boundaries, ChargeLedger, Side, Transfer};
pub use audit::{audit_sequences, compatible_sequences, inspect_sequence, receive_bound_audit, ReceiveBoundReport, SequenceAudit};
pub use endtoend::{end_to_end_check, EndToEndReport};

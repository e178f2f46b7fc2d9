//! JSON Schema (draft-07) for the results document.
//!
//! The schema covers the document's structure and types. Two cross-field
//! rules have no draft-07 encoding and are checked only by
//! [`parse_dataset`](crate::parse_dataset): component arrays must have one
//! value per instance, and label indices must be below the number of labels.
//! Unknown top-level keys are allowed by both (the parser warns).

const SCHEMA: &str = include_str!("../assets/results.schema.json");

/// The schema document, byte-for-byte as embedded at build time.
pub fn emit_schema() -> &'static str {
    SCHEMA
}

//! Command-line front end for `clspace`: JSON descriptors in, JSON, CSV
//! and plain-text reports out, plus the reproducibility suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod descriptor;
pub mod error;
pub mod jobs;
pub mod lemma;
pub mod report;
pub mod suite;

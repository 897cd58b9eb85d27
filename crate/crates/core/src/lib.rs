pub mod cli;
pub mod conditions;
pub mod constructive;
pub mod format;
pub mod graph;
pub mod harness;
pub mod instances;
pub mod oracle;
pub mod rational;

//! Command-line front end: a text document format for finite simplicial,
//! bisimplicial and categorical data, and the `segalkit` commands.

pub mod builtin;
pub mod document;
pub mod report;
pub mod run;

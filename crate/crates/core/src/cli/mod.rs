//! Input documents, reports and the command surface.

mod document;
mod report;

pub use document::{EdgeRecord, ExplicitFamily, FamilySpec, GeneratedFamily, GraphDocument, Options};
pub use report::{run, Command, Configuration, Overrides, Report, EXIT_INVALID, EXIT_PASS, EXIT_VIOLATION};

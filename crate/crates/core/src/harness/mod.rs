//! Enumeration of small semigroups and exhaustive verification suites.

pub mod enumerate;
pub mod verify;

pub use enumerate::{enumerate, enumerate_up_to, Dedup, EnumerationJob, Filter};
pub use verify::{verify, Suite, VerificationReport, VerifyConfig};

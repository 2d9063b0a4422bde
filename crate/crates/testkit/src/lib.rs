//! Test support: a memo-free reference solver written against a plain string
//! list, seeded samplers of positions, and the property checks run by the
//! integration and acceptance suites.

pub mod oracle;
pub mod sample;
pub mod suites;

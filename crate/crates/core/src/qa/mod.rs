//! Quasi-alternating machinery: certificate search, the replacement
//! determinant law, family generation and the Montesinos classifier.

pub mod certify;
pub mod symbolic;

pub use certify::{certify, certify_at, certify_diagram, certify_form, certify_presentation, verify_certificate, CertNode, CertRule, CertifyOutcome, UnknownReason, DEFAULT_BUDGET};
pub mod classify;

pub use classify::{classify, pretzel_qa, QAVerdict, Rule, Status};
pub mod family;

pub use family::{generate_family, replacement_det, FamilyCertificate, FamilyMember};

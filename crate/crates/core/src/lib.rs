//! Partial difference sets and amorphic association schemes over finite
//! abelian groups, built from quadratic forms over finite fields and their
//! Galois-ring lifts, and certified by exact exhaustive computation.

#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod galois_ring;
pub mod group;
pub mod pds;
pub mod quadratic;
pub mod report;
pub mod scheme;
pub mod schemefile;

pub use cyclotomic::CyclotomicInt;
pub use error::{Error, Result};
pub use galois_ring::{GaloisRing, LiftedSpace, RingElement, TEICHMULLER};
pub use field::{FieldElement, FieldSpec, Subfield};
pub use group::{GroupElement, GroupSpec, SubsetIndicator};
pub use pds::{classify_latin_type, LatinType, PdsCertificate, PdsParameters, PdsRejection};
pub use quadratic::{FormType, FormTypeTag, QuadraticForm};
pub use scheme::{AmorphyCertificate, FusionPartition, IntersectionNumbers, TranslationScheme};
pub use constructions::{Construction, ConstructionDescriptor, Constructed};
pub use report::{verify, AmorphyMode, PdsMode, VerificationReport, VerifyOptions};
pub use schemefile::SchemeFile;

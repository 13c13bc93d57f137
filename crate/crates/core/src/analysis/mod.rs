//! Sectional nonassociativity, associativity predicates, idempotents and spectra.

pub mod derivations;
pub mod extremize;
pub mod idempotents;
pub mod sect;

pub use derivations::derivations;
pub use extremize::{sect_extremize, BoundEstimate};
pub use idempotents::{
    newton_idempotents, orth_spectrum, simplicial_idempotents, talg_idempotents, IdempotentRecord, NewtonSearch,
    RecordKind,
};
pub use sect::{
    complexified_special_elements_sect, conformal_tensor, constant_sect_check, deunit_sect_shift_check,
    is_conformally_associative, is_projectively_associative, isect, norton_value, sect, sect_with,
    triple_sect_relations_check, ConformalTensor, SectValue, SpecialKind,
};

//! Stabilizer codes, syndromes, decoders and the syndrome wiring `π`.

mod code;
mod decoder;
mod pi;

pub use code::{
    css_from_parity_checks, paulis_of_weight, product_steane, steane_code, ParityChecks,
    StabilizerCode, Syndrome, HAMMING_CHECKS,
};
pub use decoder::{check_surjective, min_weight_decoder, Decoder, DecoderReport, SurjectivityReport, SyndromeChoice};
pub use pi::{build_pi, reset_syndrome, PiMap};

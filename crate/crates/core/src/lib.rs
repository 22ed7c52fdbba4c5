pub mod bits;
pub mod channel;
pub mod clifford;
pub mod error;
pub mod gf2;
pub mod qec;
pub mod hidden;
pub mod lrb;
pub mod pauli;
pub mod rng;
pub mod shield;
pub mod state;
pub mod witness;
pub mod curve;
pub mod fit;
pub mod rb;

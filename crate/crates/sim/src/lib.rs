//! Monte-Carlo simulation of polar decoders over BPSK/AWGN.
//!
//! [`harness::Simulation`] measures FER, BER, decoding complexity and
//! throughput per Eb/N0 point; [`csv`] writes the results; [`golden`] and
//! [`differential`] hold the self-check modes of the `polar-sim` binary.

pub mod channel;
pub mod csv;
pub mod differential;
pub mod golden;
pub mod harness;

pub use channel::{ebno_to_sigma, ChannelParams};
pub use harness::{Simulation, StopRule, TrialRecord};

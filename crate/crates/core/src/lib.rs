//! End-to-end toolkit for studying how handheld micromobility leaks
//! application identity through the received-signal-strength of a
//! narrow-beam (sub-THz) link, and for adapting the beam-tracking
//! interval to the detected traffic class.
//!
//! The pipeline, bottom to top:
//!
//! * [`mobility`] - synthetic beam-center walks for four application
//!   profiles (video, call, vr, racing), plus a 2D grid Markov model
//!   fitted from traces and decomposed per-axis generators.
//! * [`channel`] - maps angular misalignment to received power through a
//!   parabolic-in-dB beam shape, and calibrates beamwidth / plane-to-angle
//!   scales against reference fall-time statistics.
//! * [`features`] - windowed trace features (slope, mean, variance, 100 ms
//!   value, STFT magnitude sum, lag-1 autocorrelation), ensemble
//!   statistics, fall-time summaries and a 2-component PCA.
//! * [`stattest`] - Mann-Whitney U (exact and normal-approximation paths)
//!   and labeled pairwise p-value matrices.
//! * [`classify`] - from-scratch decision tree, random forest, k-NN and
//!   Gaussian naive Bayes with evaluation metrics and impurity-based
//!   feature importance.
//! * [`tracker`] - the adaptive beam-realignment interval controller
//!   (warmup -> detect -> active monitor loop) and its closed-loop
//!   simulator.
//! * [`config`] / [`pipeline`] - a TOML experiment config and the staged,
//!   deterministic file-emitting pipeline behind the `beamtrack` binary.
//!
//! Every random quantity is a pure function of explicit inputs and a
//! `u64` seed; two runs with the same config and seed produce
//! byte-identical outputs.
//!
//! Each major capability has a runnable demo under `examples/`:
//! `cargo run --example synth_walks`, `power_traces`, `markov_grid`,
//! `calibrate_channel`, `extract_features`, `mann_whitney`,
//! `classify_apps`, `track_intervals`, `full_pipeline`.

pub mod channel;
pub mod classify;
pub mod config;
pub mod error;
pub mod features;
pub mod io;
pub mod mobility;
pub mod pipeline;
pub mod seed;
pub mod stattest;
pub mod tracker;

pub use error::{Error, Result};

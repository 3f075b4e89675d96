use thiserror::Error;

/// Errors raised by the persuasion model.
///
/// Every message starts with the name of the violated invariant so that
/// front ends can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonFiniteCell: cell {cell} is {value}")]
    NonFiniteCell { cell: &'static str, value: f64 },

    #[error("NegativeCell: cell {cell} = {value} is outside [0, 1]")]
    NegativeCell { cell: &'static str, value: f64 },

    #[error("SumNotOne: cells sum to {sum}, expected 1 within {tolerance:e}")]
    SumNotOne { sum: f64, tolerance: f64 },

    #[error("DefaultActionViolated: mu(rho1) = {rho1} must be strictly below 1/2")]
    DefaultActionViolated { rho1: f64 },

    #[error("ZeroMarginal: marginal {marginal} is zero")]
    ZeroMarginal { marginal: &'static str },

    #[error("InvalidMarginal: {name} = {value} is outside {range}")]
    InvalidMarginal {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("GapOutOfRange: gap c = {gap} pushes cell {cell} to {value}")]
    GapOutOfRange {
        gap: f64,
        cell: &'static str,
        value: f64,
    },

    #[error("ZeroProbabilityMessage: message {message} is never sent")]
    ZeroProbabilityMessage { message: u8 },

    #[error("ZeroDenominator: cell mu10 is zero")]
    ZeroDenominator,

    #[error("InvalidSignal: component {component} = {value} is outside [0, 1]")]
    InvalidSignal { component: &'static str, value: f64 },

    #[error("ResolutionTooLow: grid resolution {resolution} is below {minimum}")]
    ResolutionTooLow { resolution: usize, minimum: usize },

    #[error("InvalidSampleCount: at least one sample is required")]
    InvalidSampleCount,

    #[error("InvalidRange: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Device, cell and array models for leakage-free volatile memory built on
//! anti-ferroelectric FETs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array;
pub mod calibration;
pub mod cell;
pub mod cli;
pub mod config;
pub mod device;
pub mod error;
pub mod lgd;
pub mod poly;
pub mod reliability;

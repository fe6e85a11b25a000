//! Implementation of the `hydroshannon` binary: the output record shape,
//! the three subcommands, and the built-in verification suites. The binary
//! itself only parses arguments and maps failures to exit codes.


// `!(x > 0.0)`-style guards reject NaN along with the out-of-range values;
// the partial_cmp rewrite clippy suggests would hide that intent.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod record;
pub mod verify;

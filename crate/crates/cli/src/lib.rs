//! Library side of `tscalc`: each subcommand is a function returning
//! ordered records, rendered by [`output`].

pub mod commands;
pub mod output;

pub use commands::{
    cmd_diff, cmd_identity_check, cmd_integrate, cmd_scale, cmd_table, resolve_points, DiffMethod, DiffOptions,
    IntegrateOptions, Report,
};
pub use output::{format_g17, write_records, Field, Format, Record};

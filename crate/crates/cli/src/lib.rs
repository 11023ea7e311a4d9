//! Expression grammar, session evaluation, and subcommand logic behind the
//! `gakit` binary. Split out as a library so the grammar round-trip and
//! evaluation behavior are testable without spawning processes.

pub mod ast;
pub mod commands;
pub mod parse;
pub mod session;

//! Support library for the `ct` command-line tool: the workspace file
//! format and the table renderer it shares with the test suites.

pub mod tables;
pub mod workspace;

pub use tables::{gct_table, team_table};
pub use workspace::{TeamEntry, Workspace, WorkspaceError};

//! Configuration, subcommands and output formats of the `phasebench` tool.

pub mod commands;
pub mod config;
pub mod output;
pub mod table_file;

use phasebench_core::Error as CoreError;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    Usage = 2,
    Infeasible = 3,
}

impl Status {
    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Violation
        }
    }

    pub fn of_error(err: &anyhow::Error) -> Self {
        let infeasible = err
            .chain()
            .any(|c| matches!(c.downcast_ref::<CoreError>(), Some(CoreError::Infeasible { .. })));
        if infeasible {
            Status::Infeasible
        } else {
            Status::Usage
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

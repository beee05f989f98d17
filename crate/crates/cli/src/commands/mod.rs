pub mod code;
pub mod fourier;
pub mod info;
pub mod learn;
pub mod pgm;
pub mod verify;

/// Exit codes: 0 success, 1 usage error, 2 bound violation, 3 resource guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Usage,
    Violation,
    Resource,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Usage => 1,
            Status::Violation => 2,
            Status::Resource => 3,
        }
    }
}

/// Rendered output plus the exit status derived from row-level results.
pub struct CommandOutput {
    pub text: String,
    pub status: Status,
}

/// Fold per-row flags into the final status: a bound violation dominates,
/// then a tripped resource guard, then any other row error.
pub fn combine_row_statuses(violation: bool, resource: bool, usage: bool) -> Status {
    if violation {
        Status::Violation
    } else if resource {
        Status::Resource
    } else if usage {
        Status::Usage
    } else {
        Status::Ok
    }
}

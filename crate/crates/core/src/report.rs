//! Verdicts shared by all verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Mismatch
        }
    }

    /// The worse of two verdicts; inconclusive outranks mismatch only when
    /// nothing has failed outright.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Mismatch, _) | (_, Status::Mismatch) => Status::Mismatch,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Verified,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Mismatch => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn is_verified(self) -> bool {
        self == Status::Verified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combining() {
        use Status::*;
        assert_eq!(Verified.and(Verified), Verified);
        assert_eq!(Verified.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Mismatch), Mismatch);
        assert_eq!(Mismatch.exit_code(), 1);
    }
}

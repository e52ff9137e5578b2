//! Three-valued verdicts for fuel-bounded decisions.

use std::fmt;

/// Outcome of a semi-decision run under a fuel budget.
///
/// `Confirmed` and `Refuted` are statements about the mathematical objects
/// and never flip when fuel grows. `Unknown` only records the search effort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trilean {
    Confirmed,
    Refuted,
    Unknown { fuel_spent: usize },
}

pub use Trilean::{Confirmed, Refuted};

impl Trilean {
    pub fn unknown(fuel_spent: usize) -> Self {
        Trilean::Unknown { fuel_spent }
    }

    pub fn is_confirmed(self) -> bool {
        self == Confirmed
    }

    pub fn is_refuted(self) -> bool {
        self == Refuted
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Trilean::Unknown { .. })
    }

    pub fn is_decided(self) -> bool {
        !self.is_unknown()
    }

    /// Conjunction: Refuted dominates, then Unknown.
    pub fn and(self, other: Trilean) -> Trilean {
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Trilean::Unknown { fuel_spent: a }, Trilean::Unknown { fuel_spent: b }) => Trilean::unknown(a.max(b)),
            (u @ Trilean::Unknown { .. }, _) | (_, u @ Trilean::Unknown { .. }) => u,
            (Confirmed, Confirmed) => Confirmed,
        }
    }

    /// Disjunction: Confirmed dominates, then Unknown.
    pub fn or(self, other: Trilean) -> Trilean {
        match (self, other) {
            (Confirmed, _) | (_, Confirmed) => Confirmed,
            (Trilean::Unknown { fuel_spent: a }, Trilean::Unknown { fuel_spent: b }) => Trilean::unknown(a.max(b)),
            (u @ Trilean::Unknown { .. }, _) | (_, u @ Trilean::Unknown { .. }) => u,
            (Refuted, Refuted) => Refuted,
        }
    }

    /// One-letter code used by signature strings.
    pub fn code(self) -> char {
        match self {
            Confirmed => 'C',
            Refuted => 'R',
            Trilean::Unknown { .. } => 'U',
        }
    }

    pub fn from_code(c: char) -> Option<Self> {
        match c {
            'C' => Some(Confirmed),
            'R' => Some(Refuted),
            'U' => Some(Trilean::unknown(0)),
            _ => None,
        }
    }
}

impl std::ops::Not for Trilean {
    type Output = Trilean;

    fn not(self) -> Trilean {
        match self {
            Confirmed => Refuted,
            Refuted => Confirmed,
            u => u,
        }
    }
}

impl fmt::Display for Trilean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confirmed => "Confirmed",
            Refuted => "Refuted",
            Trilean::Unknown { .. } => "Unknown",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_table() {
        let u = Trilean::unknown(3);
        assert_eq!(Confirmed.and(Confirmed), Confirmed);
        assert_eq!(Confirmed.and(u), u);
        assert_eq!(u.and(Refuted), Refuted);
        assert_eq!(Refuted.and(Confirmed), Refuted);
        assert_eq!(u.and(Trilean::unknown(7)), Trilean::unknown(7));
    }

    #[test]
    fn disjunction_table() {
        let u = Trilean::unknown(2);
        assert_eq!(Refuted.or(Refuted), Refuted);
        assert_eq!(Refuted.or(u), u);
        assert_eq!(u.or(Confirmed), Confirmed);
    }

    #[test]
    fn rendering() {
        assert_eq!(Confirmed.to_string(), "Confirmed");
        assert_eq!(Trilean::unknown(9).to_string(), "Unknown");
        let codes: String = [Confirmed, Refuted, Trilean::unknown(1)]
            .iter()
            .map(|t| t.code())
            .collect();
        assert_eq!(codes, "CRU");
    }
}

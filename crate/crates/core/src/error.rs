use std::fmt;

use thiserror::Error;

/// One of the open conditions a Step-2 coordinate system has to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Condition {
    /// Degree of the cone in `z_i` alone equals its total degree.
    A,
    /// `z_n` and `z_j^d - z_j z_n^(d-1)` (j != i, n) are nonzero at the point.
    B,
    /// The additive multiple has nonzero constant coefficient.
    C,
    /// The additive multiple is nonzero at the point.
    D,
    /// The image point avoids the pushed-forward branch cone.
    E,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::A,
        Condition::B,
        Condition::C,
        Condition::D,
        Condition::E,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
            Condition::D => "d",
            Condition::E => "e",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Failure counts per condition, reported when a coordinate search gives up.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionTally(pub [u64; 5]);

impl ConditionTally {
    pub fn record(&mut self, c: Condition) {
        self.0[c as usize] += 1;
    }

    pub fn count(&self, c: Condition) -> u64 {
        self.0[c as usize]
    }

    pub fn merge(&mut self, other: &ConditionTally) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The condition that failed most often (ties broken by label order).
    pub fn dominant(&self) -> Option<Condition> {
        let mut best: Option<(Condition, u64)> = None;
        for c in Condition::ALL {
            let n = self.count(c);
            if n > 0 && best.is_none_or(|(_, b)| n > b) {
                best = Some((c, n));
            }
        }
        best.map(|(c, _)| c)
    }
}

impl fmt::Display for ConditionTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Condition::ALL
            .iter()
            .map(|c| format!("{}={}", c.label(), self.count(*c)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("no embedding between {from} and {to}")]
    IncompatibleTower { from: String, to: String },
    #[error("operands live in different polynomial rings")]
    MixedRings,
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeTooLarge { degree: u64, cap: u64 },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("leading coefficient is not a nonzero constant")]
    NonConstantLeadingCoeff,
    #[error("no splitting field found within the escalation cap")]
    SplittingNotFound,
    #[error("search exhausted after {0} trials")]
    Exhausted(u64),
    #[error("condition ({0}) failed")]
    ConditionFailed(Condition),
    #[error("forms are not in general position")]
    NotInGeneralPosition,
    #[error("point is a base point of the map")]
    BasePointHit,
    #[error("Jacobian vanishes identically")]
    DegenerateJacobian,
    #[error("containment test against the zero polynomial")]
    ZeroDivisor,
    #[error("enumeration of {0} points exceeds the cap")]
    EnumerationCapExceeded(u64),
    #[error("point lies on the divisor")]
    PointOnDivisor,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("coordinate search failed (tally {tally})")]
    SearchFailed { tally: ConditionTally },
    #[error("certification failed at {0}")]
    CertificationFailed(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Similarity scores between two fingerprints.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::fingerprint::Fingerprint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Shared chunk bytes over the larger byte total.
    #[default]
    GitBytes,
    /// Shared lines over the smaller line count.
    Lines,
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "git-bytes" => Ok(Metric::GitBytes),
            "lines" => Ok(Metric::Lines),
            other => Err(format!("unknown metric {other:?} (expected git-bytes or lines)")),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::GitBytes => "git-bytes",
            Metric::Lines => "lines",
        })
    }
}

/// An unreduced ratio; `8/10` stays `8/10`.
///
/// Equality and ordering compare values, so `1/2 == 5/10`. Use
/// [`SimilarityScore::parts`] for exact representation checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SimilarityScore {
    numerator: u64,
    denominator: u64,
}

impl SimilarityScore {
    pub const ONE: SimilarityScore = SimilarityScore {
        numerator: 1,
        denominator: 1,
    };

    /// `numerator` must not exceed `denominator`, which must be nonzero.
    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0 && numerator <= denominator, "invalid score {numerator}/{denominator}");
        SimilarityScore {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn parts(&self) -> (u64, u64) {
        (self.numerator, self.denominator)
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Whether the score reaches `percent`%.
    pub fn meets(&self, percent: u8) -> bool {
        u128::from(self.numerator) * 100 >= u128::from(percent) * u128::from(self.denominator)
    }
}

impl PartialEq for SimilarityScore {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SimilarityScore {}

impl PartialOrd for SimilarityScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimilarityScore {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = u128::from(self.numerator) * u128::from(other.denominator);
        let r = u128::from(other.numerator) * u128::from(self.denominator);
        l.cmp(&r)
    }
}

impl fmt::Display for SimilarityScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Score two fingerprints. Two empty inputs score 1.
pub fn similarity(a: &Fingerprint, b: &Fingerprint, metric: Metric) -> SimilarityScore {
    match metric {
        Metric::GitBytes => {
            let den = a.total_bytes().max(b.total_bytes());
            if den == 0 {
                return SimilarityScore::ONE;
            }
            SimilarityScore::new(a.common_bytes(b), den)
        }
        Metric::Lines => {
            let (la, lb) = (a.line_count(), b.line_count());
            if la == 0 && lb == 0 {
                return SimilarityScore::ONE;
            }
            // One side empty: nothing shared out of the other's lines.
            let den = if la == 0 || lb == 0 { la.max(lb) } else { la.min(lb) };
            SimilarityScore::new(a.common_lines(b), den)
        }
    }
}

pub fn similarity_of(a: &[u8], b: &[u8], metric: Metric) -> SimilarityScore {
    similarity(&Fingerprint::new(a), &Fingerprint::new(b), metric)
}

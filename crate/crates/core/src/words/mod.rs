//! Words in the free product of three copies of `Z/2` and their images under
//! a representation.

mod lambda;
pub(crate) mod search;

pub use lambda::{lambda_condition_check, lambda_orbit_norm, lambda_orbit_point, LambdaCheck, LambdaElement};
pub use search::{detect_finite_order, search_elliptic_infinite_order, EllipticWitness, FiniteOrderTest, MAX_WORD_LEN};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::Isometry;
use crate::triangle::TriangleRep;

/// A word over the generators `1, 2, 3`, not necessarily reduced.
///
/// Ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| !(1..=3).contains(&l)) {
            return Err(Error::InvalidLetter(bad));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1])
    }

    /// Cancel adjacent equal letters until none remain.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<u8> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The inverse: every generator is an involution, so this is the reversal.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Reduced with first and last letters distinct (or length at most one).
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.0.len() < 2 || self.0.first() != self.0.last())
    }

    /// Whether the word is `v^n` for some shorter `v`.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        (1..n).any(|p| n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]))
    }

    /// Whether the word is the lexicographically least among its cyclic
    /// rotations and those of its inverse. Such words represent each
    /// conjugacy class of cyclically reduced words once, up to inversion.
    pub fn is_conjugacy_representative(&self) -> bool {
        let n = self.0.len();
        let rev: Vec<u8> = self.0.iter().rev().copied().collect();
        let beats = |src: &[u8], shift: usize| -> bool {
            for i in 0..n {
                match src[(i + shift) % n].cmp(&self.0[i]) {
                    Ordering::Less => return true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            false
        };
        !(0..n).any(|s| beats(&self.0, s) || beats(&rev, s))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `I_a I_b ...` for the word `a b ...`; the empty word gives the identity.
pub fn evaluate(word: &Word, rep: &TriangleRep) -> Result<Isometry> {
    word.0.iter().try_fold(Isometry::IDENTITY, |acc, &l| Ok(acc.compose(rep.generator(l)?)))
}

/// `w_A^(l) = I1 (I2 I1)^l I3`, reduced.
pub fn word_wa(ell: i64) -> Word {
    let block: [u8; 2] = if ell >= 0 { [2, 1] } else { [1, 2] };
    let mut v = vec![1u8];
    for _ in 0..ell.unsigned_abs() {
        v.extend_from_slice(&block);
    }
    v.push(3);
    Word(v).reduce()
}

/// `w_B = I1 I2 I3`.
pub fn word_wb() -> Word {
    Word(vec![1, 2, 3])
}

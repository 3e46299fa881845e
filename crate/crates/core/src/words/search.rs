//! Search for regular elliptic words that do not look like they have finite
//! order.
//!
//! A regular elliptic element of infinite order forces the group to be
//! non-discrete. Infinite order cannot be certified in floating point, so a
//! witness only records that no power up to `max_order` came back to the
//! identity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};
use crate::hermitian::{classify_trace, rotation_angles, Isometry, IsometryTag};
use crate::triangle::TriangleRep;

/// Longest word length accepted by [`search_elliptic_infinite_order`].
pub const MAX_WORD_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipticWitness {
    pub word: Word,
    pub trace: Complex64,
    pub discriminant: f64,
    pub min_order_tested: u64,
    /// Always `None` for emitted witnesses.
    pub finite_order_detected: Option<u64>,
    /// Smallest deviation from the identity over the powers tested, with the
    /// power attaining it.
    pub closest_return: (u64, f64),
    pub rotation_angles: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteOrderTest {
    pub order: Option<u64>,
    pub closest_return: (u64, f64),
    /// Whether the eigenvalue angles were used rather than matrix powers.
    pub via_angles: bool,
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    y.min(TAU - y)
}

/// Look for `n` in `2..=max_order` with `m^n` projectively the identity.
///
/// With rotation angles `a_i`, that means `n (a_i - a_j) = 0 mod 2 pi` for
/// all pairs; the deviation is compared with `tol`. When the eigenvalues are
/// not reliably unimodular, matrix powers by repeated squaring are compared
/// entrywise with the identity instead.
pub fn detect_finite_order(m: &Isometry, max_order: u64, tol: f64) -> FiniteOrderTest {
    let mut closest = (0u64, f64::INFINITY);
    if let Some(a) = rotation_angles(m.trace()) {
        let diffs = [a[0] - a[1], a[1] - a[2], a[0] - a[2]];
        for n in 1..=max_order {
            let dev = diffs.iter().map(|d| wrap(n as f64 * d)).fold(0.0, f64::max);
            if dev < closest.1 {
                closest = (n, dev);
            }
            if dev < tol {
                return FiniteOrderTest {
                    order: Some(n),
                    closest_return: (n, dev),
                    via_angles: true,
                };
            }
        }
        return FiniteOrderTest {
            order: None,
            closest_return: closest,
            via_angles: true,
        };
    }
    for n in 1..=max_order {
        let p = m.pow(n);
        let dev = p.projective_identity_defect() / p.max_abs().max(1.0);
        if dev < closest.1 {
            closest = (n, dev);
        }
        if dev < tol {
            return FiniteOrderTest {
                order: Some(n),
                closest_return: (n, dev),
                via_angles: false,
            };
        }
    }
    FiniteOrderTest {
        order: None,
        closest_return: closest,
        via_angles: false,
    }
}

/// Test one word; `Some` when it is regular elliptic and no finite order was
/// found.
pub(crate) fn witness_for(word: &Word, m: &Isometry, max_order: u64, tol: f64) -> Option<EllipticWitness> {
    if word.is_empty() {
        return None;
    }
    let trace = m.trace();
    let class = classify_trace(trace);
    if class.tag != IsometryTag::RegularElliptic {
        return None;
    }
    let test = detect_finite_order(m, max_order, tol);
    if test.order.is_some() {
        return None;
    }
    Some(EllipticWitness {
        word: word.clone(),
        trace,
        discriminant: class.discriminant,
        min_order_tested: max_order,
        finite_order_detected: None,
        closest_return: test.closest_return,
        rotation_angles: rotation_angles(trace),
    })
}

fn dfs(
    rep: &TriangleRep,
    prefix: &mut Vec<u8>,
    acc: Isometry,
    max_len: usize,
    max_order: u64,
    tol: f64,
    out: &mut Vec<EllipticWitness>,
) {
    let word = Word(prefix.clone());
    if word.is_cyclically_reduced() && !word.is_proper_power() && word.is_conjugacy_representative() {
        if let Some(w) = witness_for(&word, &acc, max_order, tol) {
            out.push(w);
        }
    }
    if prefix.len() == max_len {
        return;
    }
    for l in 1..=3u8 {
        if prefix.last() == Some(&l) {
            continue;
        }
        let next = acc.compose(rep.generator(l).expect("letter in range"));
        prefix.push(l);
        dfs(rep, prefix, next, max_len, max_order, tol, out);
        prefix.pop();
    }
}

/// Regular elliptic words of length at most `max_len` for which no power up
/// to `max_order` is within `tol` of the identity.
///
/// Only one word per conjugacy class (up to inversion) is tested: cyclically
/// reduced, not a proper power, and least in length-lexicographic order among
/// its rotations and those of its inverse. Output is sorted by that order and
/// does not depend on the number of worker threads.
pub fn search_elliptic_infinite_order(
    rep: &TriangleRep,
    max_len: usize,
    max_order: u64,
    tol: f64,
) -> Result<Vec<EllipticWitness>> {
    if max_len > MAX_WORD_LEN {
        return Err(Error::ParameterOutOfRange {
            name: "max_len",
            value: max_len as f64,
            bound: "at most 20",
        });
    }
    if max_order < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "max_order",
            value: max_order as f64,
            bound: "at least 2",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "tol",
            value: tol,
            bound: "positive",
        });
    }
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<EllipticWitness> = (1..=3u8)
        .filter_map(|a| witness_for(&Word(vec![a]), rep.generator(a).expect("letter in range"), max_order, tol))
        .collect();
    // workers take disjoint two-letter prefixes
    let pairs: Vec<[u8; 2]> = (1..=3u8)
        .flat_map(|a| (1..=3u8).filter(move |&b| b != a).map(move |b| [a, b]))
        .collect();
    let deeper: Vec<EllipticWitness> = pairs
        .par_iter()
        .flat_map_iter(|&[a, b]| {
            let mut found = Vec::new();
            if max_len >= 2 {
                let m = rep.generator(a).expect("letter").compose(rep.generator(b).expect("letter"));
                let mut prefix = vec![a, b];
                dfs(rep, &mut prefix, m, max_len, max_order, tol, &mut found);
            }
            found
        })
        .collect();
    out.extend(deeper);
    out.sort_by(|x, y| x.word.cmp(&y.word));
    Ok(out)
}

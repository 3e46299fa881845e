//! Combine every criterion into one verdict.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::heisenberg::{shimizu_test, ShimizuReport, ShimizuVerdict};
use crate::triangle::{build_rep_from, TriangleParams};
use crate::words::{evaluate, search_elliptic_infinite_order, word_wa, word_wb, EllipticWitness, Word};

use super::{
    all_alpha_discrete, classify_region, conditions_star, simple_sine_test, trace_wa, trace_wb, RegionVerdict,
    StarCheck,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Discrete,
    DiscreteAndFaithful,
    NonDiscrete,
    Undetermined,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Discrete => "discrete",
            Verdict::DiscreteAndFaithful => "discrete-and-faithful",
            Verdict::NonDiscrete => "non-discrete",
            Verdict::Undetermined => "undetermined",
        }
    }
}

/// One evaluated criterion. `residual` is signed so that `holds` iff
/// `residual >= 0` up to tolerance, where that makes sense.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub criterion: String,
    pub holds: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

impl Evidence {
    fn new(criterion: &str, holds: bool, residual: Option<f64>, detail: impl Into<String>) -> Self {
        Evidence {
            criterion: criterion.to_string(),
            holds,
            residual,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecideOptions {
    /// Run the full word search up to this length as well as the named
    /// candidate words.
    pub search_len: Option<usize>,
    pub max_order: u64,
    pub tol: f64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            search_len: None,
            max_order: 2000,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub params: TriangleParams,
    pub verdict: Verdict,
    /// Set when the verdict rests on a numerical elliptic witness alone.
    pub numerical_witness: bool,
    /// Discrete and non-discrete criteria both fired.
    pub conflict: bool,
    pub region: RegionVerdict,
    pub star: StarCheck,
    pub shimizu: ShimizuReport,
    pub trace_wb: Complex64,
    /// `trace(w_A^(k))` for the type A index `k`, when there is one.
    pub trace_wa_k: Option<f64>,
    pub witnesses: Vec<EllipticWitness>,
    pub evidence: Vec<Evidence>,
}

impl Decision {
    /// Human-readable verdict, marking witness-only non-discreteness.
    pub fn label(&self) -> String {
        if self.verdict == Verdict::NonDiscrete && self.numerical_witness {
            "non-discrete (numerical witness)".to_string()
        } else {
            self.verdict.as_str().to_string()
        }
    }
}

fn candidate_words(star: &StarCheck) -> Vec<Word> {
    let mut ells: Vec<i64> = (-6..=6).filter(|&l| l != 0 && l != -1).collect();
    if !ells.contains(&star.argmax_l) {
        ells.push(star.argmax_l);
    }
    let mut words: Vec<Word> = ells.into_iter().map(word_wa).collect();
    words.push(word_wb());
    words.sort();
    words
}

pub fn decide(p: &TriangleParams, opts: &DecideOptions) -> Result<Decision> {
    let rep = build_rep_from(*p)?;
    let region = classify_region(p.r1, p.r2);
    let star = conditions_star(p);
    let shimizu = shimizu_test(p);
    let twb = trace_wb(p);
    let mut evidence = Vec::new();

    evidence.push(Evidence::new(
        "conditions-star",
        star.holds,
        Some(star.margin()),
        format!(
            "4 r1 r2 sin^2(alpha/2) = {:.17e}; sup f_A = {:.17e} at l = {}; f_B = {:.17e}",
            star.lhs, star.sup_fa, star.argmax_l, star.f_b
        ),
    ));
    let sine = simple_sine_test(p);
    evidence.push(Evidence::new(
        "simple-sine",
        sine,
        Some((p.alpha / 2.0).sin() - 1.0 / (p.r1 + p.r2)),
        "sin(alpha/2) >= 1/(r1 + r2)",
    ));
    let all_alpha = all_alpha_discrete(p.r1, p.r2);
    evidence.push(Evidence::new(
        "all-alpha-region",
        all_alpha,
        None,
        "(r1, r2) in a region where every alpha gives a discrete group",
    ));

    let type_b = region.tag.is_type_b_like();
    let wb_bound = type_b && twb.re <= -5.0;
    evidence.push(Evidence::new(
        "type-b-trace-wb",
        wb_bound,
        Some(-5.0 - twb.re),
        format!("type B region: {type_b}; Re trace(w_B) = {:.17e}", twb.re),
    ));

    // the if-and-only-if statement needs r2 > 1
    let type_a_k = region.k.filter(|_| region.point.defined);
    let mut trace_wa_k = None;
    let mut faithful = false;
    if let Some(k) = type_a_k {
        let t = trace_wa(k as i64, p);
        trace_wa_k = Some(t);
        faithful = t >= 3.0 - crate::tolerance::get().star;
        evidence.push(Evidence::new(
            "type-a-trace-wak",
            faithful,
            Some(t - 3.0),
            format!(
                "type A region k = {k}: trace(w_A^({k})) = {t:.17e}; below 3 means not both discrete and faithful"
            ),
        ));
    }

    let shimizu_fires = shimizu.verdict == ShimizuVerdict::NonDiscrete;
    evidence.push(Evidence::new(
        "shimizu",
        shimizu_fires,
        Some(shimizu.lhs - shimizu.rhs),
        format!("branch {:?}; X = {:.17e}; d = {:.17e}", shimizu.branch, shimizu.x, shimizu.d),
    ));

    let mut witnesses: Vec<EllipticWitness> = Vec::new();
    for w in candidate_words(&star) {
        let m = evaluate(&w, &rep)?;
        if let Some(found) = crate::words::search::witness_for(&w, &m, opts.max_order, opts.tol) {
            witnesses.push(found);
        }
    }
    if let Some(len) = opts.search_len {
        for found in search_elliptic_infinite_order(&rep, len, opts.max_order, opts.tol)? {
            if !witnesses.iter().any(|w| w.word == found.word) {
                witnesses.push(found);
            }
        }
    }
    witnesses.sort_by(|a, b| a.word.cmp(&b.word));
    evidence.push(Evidence::new(
        "elliptic-witness",
        !witnesses.is_empty(),
        witnesses.first().map(|w| w.discriminant),
        match witnesses.first() {
            Some(w) => format!("{} witness(es), first {}", witnesses.len(), w.word),
            None => "no regular elliptic word of apparently infinite order".to_string(),
        },
    ));

    let discrete = star.holds || sine || all_alpha || wb_bound || (type_a_k.is_some() && faithful);
    let non_discrete = shimizu_fires || !witnesses.is_empty();
    let conflict = discrete && non_discrete;
    let verdict = if conflict {
        Verdict::Undetermined
    } else if type_a_k.is_some() && faithful {
        Verdict::DiscreteAndFaithful
    } else if discrete {
        Verdict::Discrete
    } else if non_discrete {
        Verdict::NonDiscrete
    } else {
        Verdict::Undetermined
    };

    Ok(Decision {
        params: *p,
        verdict,
        numerical_witness: verdict == Verdict::NonDiscrete && !shimizu_fires,
        conflict,
        region,
        star,
        shimizu,
        trace_wb: twb,
        trace_wa_k,
        witnesses,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn run(r1: f64, r2: f64, alpha: f64) -> Decision {
        decide(&TriangleParams::new(r1, r2, alpha).unwrap(), &DecideOptions::default()).unwrap()
    }

    #[test]
    fn ideal_at_pi() {
        let d = run(1.0, 1.0, PI);
        assert_eq!(d.verdict, Verdict::Discrete);
        assert!(d.evidence.iter().any(|e| e.criterion == "simple-sine" && e.holds));
        assert!(!d.conflict);
    }

    #[test]
    fn example_window_is_non_discrete() {
        let d = run(3.0, 2.0, 2.0 * (1.0f64 / 25.0).asin());
        assert_eq!(d.verdict, Verdict::NonDiscrete);
        assert!(d.numerical_witness);
        assert_eq!(d.label(), "non-discrete (numerical witness)");
        assert!(d.witnesses.iter().any(|w| w.word == word_wa(2)));
        let t = d.trace_wa_k.unwrap();
        assert!((t - (-1.0 + 576.0 / 625.0)).abs() < 1e-12);
    }

    #[test]
    fn all_alpha_region() {
        for alpha in [0.01, 1.0, 3.0, 6.0] {
            assert_eq!(run(3.5, 1.0, alpha).verdict, Verdict::Discrete, "alpha={alpha}");
        }
    }

    #[test]
    fn type_a_above_threshold_is_faithful() {
        let d = run(3.0, 2.0, 1.0);
        assert_eq!(d.region.k, Some(2));
        assert_eq!(d.verdict, Verdict::DiscreteAndFaithful);
    }

    #[test]
    fn isosceles_below_shimizu_threshold() {
        let s = crate::heisenberg::isosceles_shimizu_threshold(1.0);
        let d = run(1.0, 1.0, 2.0 * (0.5 * s).sqrt().asin());
        assert_eq!(d.verdict, Verdict::NonDiscrete);
        assert!(!d.numerical_witness);
    }
}

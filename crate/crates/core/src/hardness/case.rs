use serde::Serialize;

use crate::lp::{support_classes, ExactCover};
use crate::scalar::{int, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `|F₁| > (δ + β²/800)·m/2`
    Case1,
    /// `|F₀| < (1 − 3β²/800)·m/4`
    Case2,
    /// Neither: `F₀` large and `F₁` small.
    Case3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseLabel {
    pub case: Case,
    pub zero_count: usize,
    pub one_count: usize,
    pub m: usize,
    #[serde(with = "serde_rational::decimal")]
    pub ones_threshold: Rational,
    #[serde(with = "serde_rational::decimal")]
    pub zeros_threshold: Rational,
    pub case1_holds: bool,
    pub case2_holds: bool,
}

/// Splits on `|F₀|` and `|F₁|` of an optimal triangle cover. The first
/// matching case wins; Case 3 is the complement of the other two.
pub fn classify_case(cover: &ExactCover, beta: &Rational, delta: &Rational) -> CaseLabel {
    let m = cover.weights.len();
    let classes = support_classes(cover, int(1)).expect("1 is a valid threshold");
    let beta_sq = beta.clone() * beta.clone();
    let ones_threshold = (delta.clone() + beta_sq.clone() / int(800)) * int(m) / int(2);
    let zeros_threshold = (int(1) - int(3) * beta_sq / int(800)) * int(m) / int(4);
    let case1_holds = int(classes.at_least.len()) > ones_threshold;
    let case2_holds = int(classes.zero.len()) < zeros_threshold;
    let case = if case1_holds {
        Case::Case1
    } else if case2_holds {
        Case::Case2
    } else {
        Case::Case3
    };
    CaseLabel {
        case,
        zero_count: classes.zero.len(),
        one_count: classes.at_least.len(),
        m,
        ones_threshold,
        zeros_threshold,
        case1_holds,
        case2_holds,
    }
}

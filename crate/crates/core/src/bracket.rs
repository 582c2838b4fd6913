//! Kauffman bracket, normalized Jones polynomial and the a-variable
//! polynomial X, all from the state sum. A recursive skein evaluator that
//! never builds a state cube is kept alongside as an independent check.

use serde::Serialize;

use crate::code::{EndRole, Sign, VirtualLinkDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::state::{StateSumSummary, DEFAULT_CROSSING_CAP};

/// Σ_s (−q)^β(s) (q+q⁻¹)^γ(s).
pub fn kauffman_bracket(d: &VirtualLinkDiagram) -> Result<LaurentPolynomial> {
    kauffman_bracket_capped(d, DEFAULT_CROSSING_CAP)
}

pub fn kauffman_bracket_capped(d: &VirtualLinkDiagram, cap: usize) -> Result<LaurentPolynomial> {
    let summary = StateSumSummary::compute(d, cap)?;
    Ok(bracket_from_summary(&summary))
}

fn bracket_from_summary(summary: &StateSumSummary) -> LaurentPolynomial {
    let l = LaurentPolynomial::loop_value();
    let mut out = LaurentPolynomial::zero();
    for (&h, gammas) in &summary.rows {
        let sign = if h % 2 == 0 { 1 } else { -1 };
        for &g in gammas {
            out += &l.pow(g as u32).shift(h as i32).scale(sign);
        }
    }
    out
}

/// (−1)^{n₋} q^{n₊−2n₋} ⟨d⟩.
pub fn normalize(d: &VirtualLinkDiagram, bracket: &LaurentPolynomial) -> LaurentPolynomial {
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    bracket.shift(np - 2 * nm).scale(sign)
}

pub fn jones_hat(d: &VirtualLinkDiagram) -> Result<LaurentPolynomial> {
    Ok(normalize(d, &kauffman_bracket(d)?))
}

/// Ĵ/(q+q⁻¹) when the division is exact.
pub fn jones_from_hat(hat: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    hat.div_exact(&LaurentPolynomial::loop_value())
}

/// (−a)^{−3w} Σ_s a^{α(s)−β(s)} (−a²−a⁻²)^{γ(s)−1}.
pub fn kauffman_x(d: &VirtualLinkDiagram) -> Result<LaurentPolynomial> {
    kauffman_x_capped(d, DEFAULT_CROSSING_CAP)
}

pub fn kauffman_x_capped(d: &VirtualLinkDiagram, cap: usize) -> Result<LaurentPolynomial> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let summary = StateSumSummary::compute(d, cap)?;
    Ok(x_from_summary(d, &summary))
}

fn x_from_summary(d: &VirtualLinkDiagram, summary: &StateSumSummary) -> LaurentPolynomial {
    let n = d.crossing_count() as i32;
    let delta = LaurentPolynomial::from_terms([(-1, 2), (-1, -2)]);
    let mut sum = LaurentPolynomial::zero();
    for (&beta, gammas) in &summary.rows {
        let alpha = n - beta as i32;
        for &g in gammas {
            sum += &delta.pow(g as u32 - 1).shift(alpha - beta as i32);
        }
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    sum.shift(-3 * w).scale(sign)
}

/// Maps X(a) to Ĵ(q) via a² = −q⁻¹, times the unknot value.
pub fn x_to_jones_hat(x: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    if !x.is_even() {
        return None;
    }
    let in_q = LaurentPolynomial::from_terms(x.terms().map(|(e, c)| {
        let k = e / 2;
        (if k % 2 == 0 { c } else { -c }, -k)
    }));
    Some(&in_q * &LaurentPolynomial::loop_value())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JonesResult {
    pub bracket: LaurentPolynomial,
    pub jones_hat: LaurentPolynomial,
    /// Ĵ/(q+q⁻¹), absent when not exact.
    pub jones: Option<LaurentPolynomial>,
    /// Absent for the empty diagram.
    pub kauffman_x: Option<LaurentPolynomial>,
    pub writhe: i32,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl JonesResult {
    pub fn compute(d: &VirtualLinkDiagram, cap: usize) -> Result<Self> {
        let summary = StateSumSummary::compute(d, cap)?;
        let bracket = bracket_from_summary(&summary);
        let jones_hat = normalize(d, &bracket);
        Ok(Self {
            jones: jones_from_hat(&jones_hat),
            kauffman_x: (!d.is_empty()).then(|| x_from_summary(d, &summary)),
            bracket,
            jones_hat,
            writhe: d.writhe(),
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
        })
    }
}

/// ⟨L⟩ = ⟨L_A⟩ − q⟨L_B⟩ evaluated recursively on an end-matching table.
pub fn bracket_by_skein(d: &VirtualLinkDiagram) -> LaurentPolynomial {
    let n = d.crossing_count();
    let idx = |c: usize, r: EndRole| 4 * c + r.index();
    let mut link = vec![usize::MAX; 4 * n];
    for a in d.arcs() {
        let (x, y) = (idx(a.from.crossing, a.from.role), idx(a.to.crossing, a.to.role));
        link[x] = y;
        link[y] = x;
    }
    let signs = d.signs();
    let l = LaurentPolynomial::loop_value();
    skein(&link, &signs, 0, d.free_loops(), &l)
}

fn skein(link: &[usize], signs: &[Sign], k: usize, loops: usize, l: &LaurentPolynomial) -> LaurentPolynomial {
    if k == signs.len() {
        return l.pow(loops as u32);
    }
    use EndRole::*;
    // joining the over-in end to the under-out end follows the orientation
    let along = [(OverIn, UnderOut), (UnderIn, OverOut)];
    let across = [(OverIn, UnderIn), (OverOut, UnderOut)];
    let (a, b) = match signs[k] {
        Sign::Positive => (along, across),
        Sign::Negative => (across, along),
    };
    let mut out = LaurentPolynomial::zero();
    for (pairs, weight) in [(a, LaurentPolynomial::one()), (b, LaurentPolynomial::monomial(-1, 1))] {
        let mut next = link.to_vec();
        let mut closed = loops;
        for (x, y) in pairs {
            let (x, y) = (4 * k + x.index(), 4 * k + y.index());
            let (p, q) = (next[x], next[y]);
            if p == y {
                closed += 1;
            } else {
                next[p] = q;
                next[q] = p;
            }
        }
        out += &(&weight * &skein(&next, signs, k + 1, closed, l));
    }
    out
}

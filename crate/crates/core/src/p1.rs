//! Jet line bundles `O(d)_n` on the jet space of `P^1`.
//!
//! `P^1` is covered by `U_0 = Spec k[t0]` and `U_1 = Spec k[t1]` with
//! `t1 = 1/t0` on the overlap, and `O(d)` is glued by `e_0 = t1^d e_1`.
//! On level-`n` jets the frame `e_0^{(j)}` maps to the twisted action of
//! `t1^d` on `e_1^{(j)}`, so the transition matrix is `T(t1^d)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::local::LocalPoly;
use crate::module::basis_label;
use crate::poly::{JetVar, Poly, Symbol};
use crate::ring::RingElement;
use crate::scalar::Field;
use crate::series::TruncSeries;

/// Coordinates the transition entries are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartMode {
    /// Jets of `t1`, localized at `t1^{(0)}`.
    Chart1,
    /// Jets of `t0`, localized at `t0^{(0)}`, via `t1 = 1/t0`.
    Overlap,
}

pub fn chart_symbol(chart: usize) -> Symbol {
    match chart {
        0 => Symbol::new(0, "t0"),
        _ => Symbol::new(1, "t1"),
    }
}

/// `sum_i t^{(i)} s^i` for the coordinate of a chart, localized at `t^{(0)}`.
fn coordinate_series(chart: usize, n: u32, field: Field) -> TruncSeries<LocalPoly> {
    let t = chart_symbol(chart);
    let unit = JetVar::jet(&t, 0);
    TruncSeries::new(
        (0..=n).map(|i| LocalPoly::from_poly(Poly::var(JetVar::jet(&t, i), field), unit.clone())).collect(),
    )
}

/// `x^d`, with negative powers through series inversion.
fn power(x: &TruncSeries<LocalPoly>, d: i64) -> TruncSeries<LocalPoly> {
    let unit = x.coeff(0).unit().clone();
    let field = x.coeff(0).numerator().field().unwrap_or(Field::Rational);
    let one = TruncSeries::constant(x.level(), LocalPoly::from_poly(Poly::one(field), unit));
    let positive = x.pow_ref(&one, d.unsigned_abs() as u32);
    if d >= 0 {
        positive
    } else {
        positive.invert().expect("constant term is a power of the unit")
    }
}

/// Square matrix of localized polynomials with a labelled source and target
/// frame: column `j` holds the coordinates of `from[j]` over `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    entries: Vec<Vec<LocalPoly>>,
    from: Vec<String>,
    to: Vec<String>,
}

impl TransitionMatrix {
    /// Upper-triangular `(i, j) -> c_{j-i}` from series coefficients.
    fn twisted(c: &TruncSeries<LocalPoly>, from_chart: usize, to_chart: usize) -> TransitionMatrix {
        let size = c.coeffs().len();
        let zero = c.coeff(0).zero_like();
        let entries = (0..size)
            .map(|i| (0..size).map(|j| if i <= j { c.coeff(j - i).clone() } else { zero.clone() }).collect())
            .collect();
        let labels = |chart: usize| (0..size).map(|j| frame_label(chart, j as u32)).collect();
        TransitionMatrix { entries, from: labels(from_chart), to: labels(to_chart) }
    }

    pub fn entry(&self, i: usize, j: usize) -> &LocalPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<LocalPoly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<LocalPoly> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn basis_from(&self) -> &[String] {
        &self.from
    }

    pub fn basis_to(&self) -> &[String] {
        &self.to
    }

    pub fn mul(&self, rhs: &TransitionMatrix) -> Result<TransitionMatrix, Error> {
        let size = self.entries.len();
        if rhs.entries.len() != size {
            return Err(Error::ShapeMismatch("transition matrices of different levels"));
        }
        let mut entries = Vec::with_capacity(size);
        for r in 0..size {
            let mut row = Vec::with_capacity(size);
            for c in 0..size {
                let mut acc = self.entries[r][0].zero_like();
                for k in 0..size {
                    acc = acc.checked_add(&self.entries[r][k].checked_mul(&rhs.entries[k][c])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(TransitionMatrix { entries, from: rhs.from.clone(), to: self.to.clone() })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, e)| {
                let want = if r == c { e.numerator().field().map(Poly::one) } else { None };
                match want {
                    Some(one) => e.as_poly() == Some(&one),
                    None => r != c && e.is_zero_elem(),
                }
            })
        })
    }
}

/// `e{chart}_{j}` for the frame element `e_chart^{(j)}`.
pub fn frame_label(chart: usize, j: u32) -> String {
    // same shape as module basis labels, with the chart as generator index
    let mut s = basis_label(chart, j);
    s.replace_range(1..2, if chart == 0 { "0" } else { "1" });
    s
}

/// Coordinates of `e_0^{(j)}` over `e_1^{(i)}`.
pub fn p1_transition(d: i64, n: u32, mode: ChartMode) -> TransitionMatrix {
    let field = Field::Rational;
    let t1 = match mode {
        ChartMode::Chart1 => coordinate_series(1, n, field),
        ChartMode::Overlap => {
            let t0 = coordinate_series(0, n, field);
            // t1 = 1/t0 on the overlap
            let inv = t0.invert().expect("t0^{(0)} is a unit on the overlap");
            TruncSeries::new(inv.into_coeffs())
        }
    };
    TransitionMatrix::twisted(&power(&t1, d), 0, 1)
}

/// Coordinates of `e_1^{(j)}` over `e_0^{(i)}` in chart-0 jets: `e_1 = t0^d e_0`.
pub fn p1_reverse_transition(d: i64, n: u32) -> TransitionMatrix {
    let t0 = coordinate_series(0, n, Field::Rational);
    TransitionMatrix::twisted(&power(&t0, d), 1, 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub holds: bool,
    /// `e_0 -> e_1` in overlap coordinates.
    pub forward: TransitionMatrix,
    /// `e_1 -> e_0` in overlap coordinates.
    pub backward: TransitionMatrix,
}

/// Both composites of the two chart changes are the identity over the
/// localized overlap ring.
pub fn cocycle_check(d: i64, n: u32) -> CocycleReport {
    let forward = p1_transition(d, n, ChartMode::Overlap);
    let backward = p1_reverse_transition(d, n);
    let holds = [forward.mul(&backward), backward.mul(&forward)]
        .iter()
        .all(|p| p.as_ref().is_ok_and(TransitionMatrix::is_identity));
    CocycleReport { holds, forward, backward }
}

/// A frame element of one chart written in the other chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionDescriptor {
    pub label: String,
    pub chart: usize,
    /// Coordinates over the other chart's frame.
    pub in_other_chart: Vec<LocalPoly>,
    /// Denominator-free in both charts.
    pub global: bool,
}

/// Expresses every frame element `e_i^{(j)}` in the opposite chart.
pub fn frame_in_other_charts(d: i64, n: u32) -> Vec<SectionDescriptor> {
    let to_chart1 = p1_transition(d, n, ChartMode::Chart1);
    let to_chart0 = p1_reverse_transition(d, n);
    let mut out = Vec::new();
    for (chart, m) in [(0usize, &to_chart1), (1, &to_chart0)] {
        for j in 0..=n as usize {
            let in_other_chart = m.column(j);
            // in its own chart e_chart^{(j)} is a frame element, hence regular
            let global = in_other_chart.iter().all(|e| e.denom_exp() == 0);
            out.push(SectionDescriptor { label: frame_label(chart, j as u32), chart, in_other_chart, global });
        }
    }
    out
}

/// Generators `e_i^{(j)}`, `i = 0, 1`, `j <= n`, of the global sections of
/// `O(1)_n`, each checked to be regular on both charts.
pub fn global_sections(d: i64, n: u32) -> Result<Vec<SectionDescriptor>, Error> {
    if d != 1 {
        return Err(Error::UnsupportedTwist(d));
    }
    Ok(frame_in_other_charts(d, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::twisted_action_matrix;
    use alloc::string::ToString;

    #[test]
    fn chart1_transition_degree_one() {
        let m = p1_transition(1, 1, ChartMode::Chart1);
        assert_eq!(m.entry(0, 0).to_string(), "t1_0");
        assert_eq!(m.entry(0, 1).to_string(), "t1_1");
        assert_eq!(m.entry(1, 1).to_string(), "t1_0");
        assert!(m.entry(1, 0).is_zero_elem());
        assert_eq!(m.basis_from(), ["e0_0", "e0_1"]);
        assert_eq!(m.basis_to(), ["e1_0", "e1_1"]);
    }

    #[test]
    fn trivial_bundle_is_identity() {
        for n in 0..=3 {
            assert!(p1_transition(0, n, ChartMode::Chart1).is_identity());
            assert!(p1_transition(0, n, ChartMode::Overlap).is_identity());
        }
    }

    #[test]
    fn overlap_transition_degree_one() {
        let m = p1_transition(1, 1, ChartMode::Overlap);
        assert_eq!(m.entry(0, 0).to_string(), "1/t0_0");
        assert_eq!(m.entry(0, 1).to_string(), "-t0_1/t0_0^2");
        assert_eq!(m.entry(1, 1).to_string(), "1/t0_0");
    }

    #[test]
    fn cocycles() {
        let r = cocycle_check(1, 1);
        assert!(r.holds);
        assert_eq!(r.backward.entry(0, 1).to_string(), "t0_1");
        assert!(cocycle_check(0, 2).holds);
        assert!(cocycle_check(2, 2).holds);
        assert!(cocycle_check(-2, 3).holds);
    }

    #[test]
    fn transition_is_twisted_matrix() {
        let t1 = chart_symbol(1);
        for d in 0..=3i64 {
            let p = Poly::var(JetVar::base(&t1), Field::Rational).pow(d as u32);
            let t = twisted_action_matrix(&p, 3).unwrap();
            let m = p1_transition(d, 3, ChartMode::Chart1);
            for i in 0..4 {
                for j in 0..4 {
                    let want = t.entry(i, j).rename(|v| JetVar::jet(&v.base, v.order));
                    assert_eq!(m.entry(i, j).as_poly(), Some(&want));
                }
            }
        }
    }

    #[test]
    fn sections_of_o1() {
        for n in 0..=3 {
            let s = global_sections(1, n).unwrap();
            assert_eq!(s.len(), 2 * (n as usize + 1));
            assert!(s.iter().all(|d| d.global));
        }
        let labels: Vec<_> = global_sections(1, 2).unwrap().into_iter().map(|d| d.label).collect();
        assert_eq!(labels, ["e0_0", "e0_1", "e0_2", "e1_0", "e1_1", "e1_2"]);
        assert_eq!(global_sections(2, 1), Err(Error::UnsupportedTwist(2)));
    }

    #[test]
    fn negative_twist_frames_are_not_global() {
        assert!(frame_in_other_charts(-1, 1).iter().all(|d| !d.global));
    }
}

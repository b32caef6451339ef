//! Exact polynomial and quasi-polynomial fits of stretch counts.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{Extreme, GtFamily};
use crate::pattern::GtPattern;

/// Extra points an accepted fit must reproduce beyond the ones that
/// determine it.
pub const VERIFICATION_MARGIN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no fit of degree at most {degree_cap} with any tested period over {points} points")]
    NoFit { degree_cap: usize, points: usize },
}

/// A polynomial in `k`, or one polynomial per residue class of `k` modulo
/// the quasi-period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StretchPolynomial {
    /// `pieces[r]` holds ascending coefficients used when `k % quasi_period == r`.
    pub pieces: Vec<Vec<BigRational>>,
    pub quasi_period: usize,
    /// Points that determine the pieces.
    pub fit_points: Vec<(u64, BigUint)>,
    /// Remaining points, each with the predicted value.
    pub verification_points: Vec<(u64, BigUint, BigRational)>,
}

impl StretchPolynomial {
    pub fn piece(&self, k: u64) -> &[BigRational] {
        &self.pieces[(k % self.quasi_period as u64) as usize]
    }

    /// Coefficients of a genuine polynomial; empty for a quasi-period above 1.
    pub fn coeffs(&self) -> &[BigRational] {
        if self.quasi_period == 1 {
            &self.pieces[0]
        } else {
            &[]
        }
    }

    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn eval(&self, k: u64) -> BigRational {
        eval(self.piece(k), &BigRational::from_integer(BigInt::from(k)))
    }

    pub fn to_json(&self, violations: &[NegativeCoefficient]) -> serde_json::Value {
        let strs = |p: &[BigRational]| p.iter().map(ToString::to_string).collect::<Vec<_>>();
        serde_json::json!({
            "coeffs": strs(self.coeffs()),
            "quasi_period": self.quasi_period,
            "pieces": self.pieces.iter().map(|p| strs(p)).collect::<Vec<_>>(),
            "degree": self.degree(),
            "violations": violations,
        })
    }
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Ascending monomial coefficients of the interpolating polynomial.
fn interpolate(points: &[(u64, BigUint)]) -> Vec<BigRational> {
    let xs: Vec<BigRational> = points.iter().map(|(k, _)| BigRational::from_integer(BigInt::from(*k))).collect();
    let mut table: Vec<BigRational> = points
        .iter()
        .map(|(_, v)| BigRational::from_integer(BigInt::from(v.clone())))
        .collect();
    let len = points.len();
    // divided differences in place: table[i] becomes f[x_0..x_i]
    for level in 1..len {
        for i in (level..len).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand the Newton form from the innermost term outwards
    let mut poly: Vec<BigRational> = vec![table[len - 1].clone()];
    for i in (0..len - 1).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &xs[i];
        }
        next[0] += &table[i];
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    poly
}

/// Smallest-degree polynomial through `points` that reproduces all of them,
/// leaving at least [`VERIFICATION_MARGIN`] points unused by the fit.
fn fit_class(points: &[(u64, BigUint)], degree_cap: usize) -> Option<Vec<BigRational>> {
    let max_degree = degree_cap.min(points.len().checked_sub(1 + VERIFICATION_MARGIN)?);
    (0..=max_degree).find_map(|d| {
        let poly = interpolate(&points[..=d]);
        let reproduces = points.iter().all(|(k, v)| {
            eval(&poly, &BigRational::from_integer(BigInt::from(*k))) == BigRational::from_integer(BigInt::from(v.clone()))
        });
        reproduces.then_some(poly)
    })
}

/// Fits `values` (consecutive `k` from 1) by a polynomial of degree at most
/// `degree_cap`, falling back to quasi-periods 2, 3, ...
pub fn fit(values: &[(u64, BigUint)], degree_cap: usize) -> Result<StretchPolynomial, PolyError> {
    let no_fit = PolyError::NoFit {
        degree_cap,
        points: values.len(),
    };
    let max_period = values.len() / (1 + VERIFICATION_MARGIN);
    for q in 1..=max_period {
        let classes: Vec<Vec<(u64, BigUint)>> = (0..q)
            .map(|r| values.iter().filter(|(k, _)| (*k % q as u64) as usize == r).cloned().collect())
            .collect();
        let pieces: Option<Vec<Vec<BigRational>>> = classes.iter().map(|c| fit_class(c, degree_cap)).collect();
        let Some(pieces) = pieces else { continue };
        let mut fit_points = Vec::new();
        let mut verification_points = Vec::new();
        for (class, piece) in classes.iter().zip(&pieces) {
            let used = piece.len();
            for (idx, (k, v)) in class.iter().enumerate() {
                if idx < used {
                    fit_points.push((*k, v.clone()));
                } else {
                    let predicted = eval(piece, &BigRational::from_integer(BigInt::from(*k)));
                    verification_points.push((*k, v.clone(), predicted));
                }
            }
        }
        fit_points.sort();
        verification_points.sort_by_key(|(k, _, _)| *k);
        return Ok(StretchPolynomial {
            pieces,
            quasi_period: q,
            fit_points,
            verification_points,
        });
    }
    Err(no_fit)
}

/// A negative coefficient of an accepted fit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeCoefficient {
    pub residue: usize,
    pub degree: usize,
    pub value: String,
}

pub fn check_nonnegativity(p: &StretchPolynomial) -> Vec<NegativeCoefficient> {
    let mut out = Vec::new();
    for (residue, piece) in p.pieces.iter().enumerate() {
        for (degree, c) in piece.iter().enumerate() {
            if c.is_negative() {
                out.push(NegativeCoefficient {
                    residue,
                    degree,
                    value: c.to_string(),
                });
            }
        }
    }
    out
}

/// Default degree cap for a family: one more than its number of interior
/// entries.
pub fn default_degree_cap(family: &GtFamily) -> usize {
    family.n() * family.m().saturating_sub(2) + 1
}

/// `K` of the `k`-stretched family for `k = 1..=k_max`.
pub fn kostka_values(family: &GtFamily, k_max: u64) -> Vec<(u64, BigUint)> {
    (1..=k_max)
        .map(|k| (k, family.stretch(k).expect("small stretch factors do not overflow").count_dp()))
        .collect()
}

/// `p_G(k)` for `k = 1..=k_max`.
pub fn p_g_values(g: &GtPattern, k_max: u64) -> Vec<(u64, BigUint)> {
    (1..=k_max)
        .map(|k| (k, GtFamily::p_g(g, k as i64).expect("g belongs to its own family")))
        .collect()
}

/// One row of a `p_G` sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub pattern: GtPattern,
    pub fit: Result<StretchPolynomial, PolyError>,
    pub negative: Vec<NegativeCoefficient>,
    /// Fitted degree above the number of interior entries.
    pub degree_anomaly: bool,
    pub is_lex_max: bool,
}

impl SweepEntry {
    /// Accepted with quasi-period 1 and no negative coefficient.
    pub fn is_clean(&self) -> bool {
        matches!(&self.fit, Ok(p) if p.quasi_period == 1) && self.negative.is_empty() && !self.degree_anomaly
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match &self.fit {
            Ok(p) => p.to_json(&self.negative),
            Err(e) => serde_json::json!({"coeffs": [], "quasi_period": null, "violations": [], "error": e.to_string()}),
        };
        v["pattern"] = serde_json::json!(self.pattern.rows_top_down());
        v["lex_max"] = serde_json::json!(self.is_lex_max);
        v["degree_anomaly"] = serde_json::json!(self.degree_anomaly);
        v
    }
}

/// Fits `p_G` for every member of `family`, in lexicographic order.
pub fn pg_sweep(family: &GtFamily, k_max: u64) -> Vec<SweepEntry> {
    let cap = default_degree_cap(family);
    let interior = family.n() * family.m().saturating_sub(2);
    let top = family.lex_extreme(Extreme::Max);
    let members: Vec<GtPattern> = family.iter().collect();
    members
        .into_par_iter()
        .map(|g| {
            let fit = fit(&p_g_values(&g, k_max), cap);
            let negative = fit.as_ref().map(check_nonnegativity).unwrap_or_default();
            let degree_anomaly = fit.as_ref().is_ok_and(|p| p.degree() > interior);
            SweepEntry {
                is_lex_max: top.as_ref() == Some(&g),
                pattern: g,
                fit,
                negative,
                degree_anomaly,
            }
        })
        .collect()
}

/// Rational from an integer.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Whether every coefficient is an integer.
pub fn has_integer_coefficients(p: &StretchPolynomial) -> bool {
    p.pieces.iter().flatten().all(|c| c.denom().is_one())
}

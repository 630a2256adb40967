//! Exact Kirchhoff indices and coherence of the pseudofractal web `F_g` and
//! the 4-clique motif network `T_g`.
//!
//! The expressions mix `2^g`, `3^g` and `6^g` terms that cancel heavily, so
//! everything is evaluated over big rationals and only rounded at the edge.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::Clique4Growth;
use crate::spectral::ResistanceMatrix;

/// An exact rational together with its nearest `f64`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactValue {
    value: BigRational,
}

impl ExactValue {
    pub fn new(value: BigRational) -> ExactValue {
        ExactValue { value }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> ExactValue {
        ExactValue::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn float_view(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs_diff(&self, other: &ExactValue) -> ExactValue {
        ExactValue::new((&self.value - &other.value).abs())
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn pow(base: i64, exp: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(base), exp as usize))
}

fn frac(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

/// `N_g` of `F_g` as a rational.
fn pseudofractal_n(g: u32) -> BigRational {
    (pow(3, g + 1) + int(3)) / int(2)
}

/// `N_g = (2/5)(6^{g+1} + 4)` of `T_g`.
fn clique4_n(g: u32) -> BigRational {
    frac(2, 5) * (pow(6, g + 1) + int(4))
}

fn clique4_m(g: u32) -> BigRational {
    pow(6, g + 1)
}

/// Bracketed polynomial shared by `R(F_g)` and the printed coherence.
fn pseudofractal_bracket(g: u32) -> BigRational {
    int(50) * pow(3, 3 * g + 3) - int(35) * pow(3, 2 * g + 2) * pow(2, g + 1)
        + int(48) * pow(3, 2 * g + 2)
        + int(30) * pow(3, g + 2) * pow(2, g + 1)
        - int(14) * pow(3, g + 2)
        + int(225) * pow(2, g + 1)
}

/// Kirchhoff index `R(F_g)`.
pub fn pseudofractal_kirchhoff(g: u32) -> ExactValue {
    ExactValue::new(pseudofractal_bracket(g) / (int(112) * pow(3, g + 2)))
}

/// `H_FO(F_g) = R(F_g) / (2 N_g^2)`.
pub fn pseudofractal_coherence(g: u32) -> ExactValue {
    let n = pseudofractal_n(g);
    ExactValue::new(pseudofractal_kirchhoff(g).value / (int(2) * &n * &n))
}

/// The closed-form coherence expression in its commonly quoted form,
/// `bracket / (112 * 3^{g+2} * (3^{g+1} + 3)^2)`. It is exactly half of
/// [`pseudofractal_coherence`] and is kept for diagnostics only.
pub fn pseudofractal_coherence_as_printed(g: u32) -> ExactValue {
    let base = pow(3, g + 1) + int(3);
    ExactValue::new(pseudofractal_bracket(g) / (int(112) * pow(3, g + 2) * &base * &base))
}

/// `lim H_FO(F_g) = 25/84`.
pub fn pseudofractal_limit() -> ExactValue {
    ExactValue::from_ratio(25, 84)
}

/// The three Kirchhoff-type indices of `T_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clique4Indices {
    /// `R(T_g)`
    pub kirchhoff: ExactValue,
    /// `R*(T_g)`
    pub multiplicative: ExactValue,
    /// `R+(T_g)`
    pub additive: ExactValue,
}

/// Closed forms for `R(T_g)`, `R*(T_g)` and `R+(T_g)`.
pub fn clique4_kirchhoff_indices(g: u32) -> Clique4Indices {
    let multiplicative = frac(1, 5)
        * pow(2, g)
        * pow(3, g + 2)
        * (int(13) * pow(2, g + 1) * pow(3, g) - int(5) * pow(3, g + 1) + int(4));
    let additive = frac(9, 275)
        * (int(169) * pow(2, 2 * g + 2) * pow(3, 2 * g)
            - int(55) * pow(2, g + 1) * pow(3, 2 * g + 1)
            + int(11) * pow(2, g + 3) * pow(3, g)
            + int(35) * pow(3, g + 1)
            + int(11));
    let kirchhoff = frac(3, 275) * clique4_bracket(g);
    Clique4Indices {
        kirchhoff: ExactValue::new(kirchhoff),
        multiplicative: ExactValue::new(multiplicative),
        additive: ExactValue::new(additive),
    }
}

fn clique4_bracket(g: u32) -> BigRational {
    int(13) * pow(2, 2 * g + 1) * pow(3, 2 * g + 2) - int(11) * pow(2, g) * pow(3, 2 * g + 2)
        + int(13) * pow(2, g + 2) * pow(3, g)
        + int(7) * pow(3, g + 2)
        - int(11)
        + int(36) / pow(2, g)
}

/// Advances `(R, R*, R+)` of `T_g` to `T_{g+1}` with the coupled recursions
/// driven by `N_g` and `M_g`.
pub fn clique4_kirchhoff_recursion_step(prev: &Clique4Indices, g: u32) -> Clique4Indices {
    let n = clique4_n(g);
    let m = clique4_m(g);
    let (r, r_mul, r_add) = (
        &prev.kirchhoff.value,
        &prev.multiplicative.value,
        &prev.additive.value,
    );
    let one = BigRational::one();

    let kirchhoff = frac(3, 2) * &m * &m - frac(1, 4) * &n * (&n - &one)
        + frac(1, 4) * &m * (&n - int(2))
        + frac(1, 2) * (r + r_add + r_mul);
    let multiplicative = int(9) * (int(3) * &m * &m - &m * &n) + int(18) * r_mul;
    let additive = frac(27, 2) * &m * &m
        - frac(3, 2) * &m
        - frac(3, 4) * &n * (&n - &one)
        - frac(9, 4) * &m * &n
        + (int(3) * r_add + int(6) * r_mul);
    Clique4Indices {
        kirchhoff: ExactValue::new(kirchhoff),
        multiplicative: ExactValue::new(multiplicative),
        additive: ExactValue::new(additive),
    }
}

/// `H_FO(T_g) = R(T_g) / (2 N_g^2)`.
pub fn clique4_coherence(g: u32) -> ExactValue {
    let n = clique4_n(g);
    ExactValue::new(clique4_kirchhoff_indices(g).kirchhoff.value / (int(2) * &n * &n))
}

/// `lim H_FO(T_g) = 39/176`.
pub fn clique4_limit() -> ExactValue {
    ExactValue::from_ratio(39, 176)
}

/// Resistance matrix of `T_{g+1}` from that of `T_g`.
///
/// Old pairs halve; twins sit at `1/2`; a new vertex `i` with parent edge
/// `(k, l)` and an old vertex `j` are at `(3 + 2Ω_jl + 2Ω_jk - Ω_kl) / 8`; two
/// non-adjacent new vertices with parents `(k, l)` and `(p, q)` are at
/// `(6 + Ω_kq + Ω_kp + Ω_lp + Ω_lq - Ω_kl - Ω_pq) / 8`.
pub fn resistance_recursion_step(
    omega: &ResistanceMatrix,
    growth: &Clique4Growth,
) -> Result<ResistanceMatrix> {
    if omega.n() != growth.old_n {
        return Err(Error::DimensionMismatch {
            expected: growth.old_n,
            found: omega.n(),
        });
    }
    let old_n = growth.old_n;
    let n = growth.new_n();
    let mut next = vec![0.0; n * n];
    let w = |a: usize, b: usize| omega.get(a, b);
    for i in 0..n {
        for j in i + 1..n {
            let value = match (growth.parent_of(i), growth.parent_of(j)) {
                (None, None) => 0.5 * w(i, j),
                (Some((k, l)), None) => (3.0 + 2.0 * w(j, l) + 2.0 * w(j, k) - w(k, l)) / 8.0,
                (None, Some((k, l))) => (3.0 + 2.0 * w(i, l) + 2.0 * w(i, k) - w(k, l)) / 8.0,
                (Some(_), Some(_)) if growth.twin_of(i) == Some(j) => 0.5,
                (Some((k, l)), Some((p, q))) => {
                    (6.0 + w(k, q) + w(k, p) + w(l, p) + w(l, q) - w(k, l) - w(p, q)) / 8.0
                }
            };
            next[i * n + j] = value;
            next[j * n + i] = value;
        }
    }
    debug_assert!(old_n <= n);
    ResistanceMatrix::from_row_major(n, next)
}

/// Which deterministic family a closed-form table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormFamily {
    Pseudofractal,
    Clique4,
}

/// One row of the closed-form table.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormRow {
    pub g: u32,
    pub n: u128,
    pub m: u128,
    pub kirchhoff: ExactValue,
    pub multiplicative: Option<ExactValue>,
    pub additive: Option<ExactValue>,
    pub coherence: ExactValue,
    pub limit: ExactValue,
    pub gap_to_limit: ExactValue,
}

pub fn closed_form_table(family: ClosedFormFamily, g_max: u32) -> Vec<ClosedFormRow> {
    (0..=g_max)
        .map(|g| match family {
            ClosedFormFamily::Pseudofractal => {
                let coherence = pseudofractal_coherence(g);
                let limit = pseudofractal_limit();
                ClosedFormRow {
                    g,
                    n: crate::generators::pseudofractal_order(g),
                    m: crate::generators::pseudofractal_size(g),
                    kirchhoff: pseudofractal_kirchhoff(g),
                    multiplicative: None,
                    additive: None,
                    gap_to_limit: coherence.abs_diff(&limit),
                    coherence,
                    limit,
                }
            }
            ClosedFormFamily::Clique4 => {
                let indices = clique4_kirchhoff_indices(g);
                let coherence = clique4_coherence(g);
                let limit = clique4_limit();
                ClosedFormRow {
                    g,
                    n: crate::generators::clique4_order(g),
                    m: crate::generators::clique4_size(g),
                    kirchhoff: indices.kirchhoff,
                    multiplicative: Some(indices.multiplicative),
                    additive: Some(indices.additive),
                    gap_to_limit: coherence.abs_diff(&limit),
                    coherence,
                    limit,
                }
            }
        })
        .collect()
}

impl ExactValue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

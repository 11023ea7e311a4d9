//! Dense multivectors over an n-dimensional real vector space (n <= 12).
//!
//! Storage is one `f64` per basis blade, indexed by blade mask, so a
//! multivector in dimension n owns exactly 2^n coefficients. Dense indexing
//! keeps every product kernel a flat double loop with no hashing and no
//! allocation surprises; at the supported ceiling (n = 12) that is 4096
//! coefficients, 32 KiB, still comfortably cache-resident.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::blade::{
    self, conjugation_sign, grade, grade_involution_sign, reversion_sign, BladeMask, MAX_DIM,
};
use crate::error::{GaError, Result};

/// Set of grades, encoded as a bitmask over 0..=n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GradeSet(u16);

impl GradeSet {
    pub const EMPTY: GradeSet = GradeSet(0);

    pub fn single(k: u32) -> GradeSet {
        GradeSet(1 << k)
    }

    pub fn from_grades(grades: &[u32]) -> GradeSet {
        let mut s = GradeSet(0);
        for &k in grades {
            s = s.with(k);
        }
        s
    }

    /// All grades 0..=n.
    pub fn all(n: usize) -> GradeSet {
        GradeSet(((1u32 << (n + 1)) - 1) as u16)
    }

    pub fn with(self, k: u32) -> GradeSet {
        GradeSet(self.0 | (1 << k))
    }

    pub fn contains(self, k: u32) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..16u32).filter(move |&k| self.contains(k))
    }
}

/// Dense multivector: 2^dim blade coefficients in mask order.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    /// Zero multivector in dimension `dim`. Panics outside 1..=12; use
    /// [`Multivector::try_zero`] for fallible construction from user input.
    pub fn zero(dim: usize) -> Multivector {
        Self::try_zero(dim).expect("dimension out of range")
    }

    pub fn try_zero(dim: usize) -> Result<Multivector> {
        if dim == 0 || dim > MAX_DIM {
            return Err(GaError::DimensionOutOfRange(dim));
        }
        Ok(Multivector {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Multivector {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = value;
        mv
    }

    /// Basis vector e_j with 1-based index j.
    pub fn basis_vector(dim: usize, j: usize) -> Multivector {
        assert!(j >= 1 && j <= dim, "basis index {} out of 1..={}", j, dim);
        Self::basis_blade(dim, 1 << (j - 1))
    }

    /// Unit basis blade for a mask.
    pub fn basis_blade(dim: usize, mask: BladeMask) -> Multivector {
        assert!(
            (mask as usize) < (1usize << dim),
            "blade mask {:#x} out of range for dimension {}",
            mask,
            dim
        );
        let mut mv = Self::zero(dim);
        mv.coeffs[mask as usize] = 1.0;
        mv
    }

    /// Grade-1 multivector with the given fiducial coordinates.
    pub fn vector(dim: usize, coords: &[f64]) -> Multivector {
        assert_eq!(coords.len(), dim, "coordinate count must equal dimension");
        let mut mv = Self::zero(dim);
        for (j, &c) in coords.iter().enumerate() {
            mv.coeffs[1 << j] = c;
        }
        mv
    }

    /// Builds from (mask, coefficient) pairs; repeated masks accumulate.
    pub fn from_terms(dim: usize, terms: &[(BladeMask, f64)]) -> Multivector {
        let mut mv = Self::zero(dim);
        for &(mask, c) in terms {
            assert!((mask as usize) < mv.coeffs.len(), "mask out of range");
            mv.coeffs[mask as usize] += c;
        }
        mv
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: BladeMask) -> f64 {
        self.coeffs[mask as usize]
    }

    pub fn set_coeff(&mut self, mask: BladeMask, value: f64) {
        self.coeffs[mask as usize] = value;
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Fiducial coordinates of the grade-1 part.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.dim).map(|j| self.coeffs[1 << j]).collect()
    }

    /// Nonzero (mask, coefficient) pairs in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(m, &c)| (m as BladeMask, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Largest absolute coefficient.
    pub fn norm_max(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()))
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Grades with at least one coefficient above `threshold` in magnitude.
    pub fn grades_above(&self, threshold: f64) -> GradeSet {
        let mut s = GradeSet::EMPTY;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.abs() > threshold {
                s = s.with(grade(m as BladeMask));
            }
        }
        s
    }

    /// Grade-k part.
    pub fn grade_project(&self, k: u32) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        if k as usize > self.dim {
            return out;
        }
        for (m, &c) in self.coeffs.iter().enumerate() {
            if grade(m as BladeMask) == k {
                out.coeffs[m] = c;
            }
        }
        out
    }

    /// Projection onto a set of grades. Empty set gives zero; the full set
    /// gives the multivector back unchanged.
    pub fn grade_select(&self, grades: GradeSet) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for (m, &c) in self.coeffs.iter().enumerate() {
            if grades.contains(grade(m as BladeMask)) {
                out.coeffs[m] = c;
            }
        }
        out
    }

    /// Grade involution: blade of grade k scales by (-1)^k.
    pub fn grade_involution(&self) -> Multivector {
        self.signed_by_grade(grade_involution_sign)
    }

    /// Reversion: blade of grade k scales by (-1)^(k(k-1)/2).
    pub fn reverse(&self) -> Multivector {
        self.signed_by_grade(reversion_sign)
    }

    /// Clifford conjugation: composition of reversion and grade involution.
    pub fn conjugate(&self) -> Multivector {
        self.signed_by_grade(conjugation_sign)
    }

    fn signed_by_grade(&self, sign: fn(u32) -> i32) -> Multivector {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            if sign(grade(m as BladeMask)) < 0 {
                *c = -*c;
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Multivector {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= s;
        }
        out
    }

    /// Renders with the given significant-digit count, suppressing
    /// coefficients below 1e-13 in magnitude. Suppression is display-only;
    /// stored values are never rounded.
    pub fn display_with(&self, sig_digits: usize) -> String {
        let mut parts: Vec<(u32, BladeMask, f64)> = self
            .terms()
            .filter(|(_, c)| c.abs() >= DISPLAY_FLOOR)
            .map(|(m, c)| (grade(m), m, c))
            .collect();
        parts.sort_by_key(|&(g, m, _)| (g, m));
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &(_, mask, c)) in parts.iter().enumerate() {
            let mag = format_significant(c.abs(), sig_digits);
            if i == 0 {
                if c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0.0 { " - " } else { " + " });
            }
            let blade_str = blade_symbol(mask);
            if blade_str.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&blade_str);
            } else {
                out.push_str(&mag);
                out.push(' ');
                out.push_str(&blade_str);
            }
        }
        out
    }
}

/// Coefficients below this magnitude are hidden by display formatting.
pub const DISPLAY_FLOOR: f64 = 1e-13;

/// Default number of significant digits in rendered coefficients.
pub const DISPLAY_SIG_DIGITS: usize = 12;

/// Rounds to `sig` significant digits and prints the shortest decimal form.
pub fn format_significant(value: f64, sig: usize) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{:.*e}", sig.saturating_sub(1), value)
        .parse()
        .expect("self-produced float literal");
    let s = format!("{}", rounded);
    s
}

/// Caret-joined factor list, e.g. "e1^e2^e4"; empty string for the scalar.
fn blade_symbol(mask: BladeMask) -> String {
    blade::indices_from_mask(mask)
        .iter()
        .map(|i| format!("e{}", i))
        .collect::<Vec<_>>()
        .join("^")
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(DISPLAY_SIG_DIGITS))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[n={}]({})", self.dim, self)
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

/// Serialized shape: `{"n": 3, "terms": [{"blade": [1, 2], "coeff": 1.5}]}`.
/// Blade index lists are strictly ascending and duplicate-free.
#[derive(Serialize, Deserialize)]
struct MultivectorForm {
    n: usize,
    terms: Vec<TermForm>,
}

#[derive(Serialize, Deserialize)]
struct TermForm {
    blade: Vec<usize>,
    coeff: f64,
}

impl Multivector {
    pub fn to_json(&self) -> String {
        let mut terms: Vec<(u32, BladeMask, f64)> =
            self.terms().map(|(m, c)| (grade(m), m, c)).collect();
        terms.sort_by_key(|&(g, m, _)| (g, m));
        let form = MultivectorForm {
            n: self.dim,
            terms: terms
                .into_iter()
                .map(|(_, m, c)| TermForm {
                    blade: blade::indices_from_mask(m),
                    coeff: c,
                })
                .collect(),
        };
        serde_json::to_string(&form).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Multivector> {
        let form: MultivectorForm =
            serde_json::from_str(text).map_err(|e| GaError::InvalidForm(e.to_string()))?;
        let mut mv = Multivector::try_zero(form.n)?;
        for term in &form.terms {
            let mask = blade::mask_from_indices(&term.blade, form.n)?;
            if mv.coeffs[mask as usize] != 0.0 {
                return Err(GaError::InvalidForm(format!(
                    "duplicate blade {:?}",
                    term.blade
                )));
            }
            if !term.coeff.is_finite() {
                return Err(GaError::InvalidForm("non-finite coefficient".into()));
            }
            mv.coeffs[mask as usize] = term.coeff;
        }
        Ok(mv)
    }
}

//! Truncated integer power series and mod-2 binomial coefficients.
//!
//! Dimension-counting series are represented densely: `coeffs[d]` is the
//! coefficient of `t^d`, and every series carries its truncation order
//! (`maxdeg = coeffs.len() - 1`). Coefficients are signed machine integers so
//! that inversion can run through intermediate signed values; all arithmetic
//! is overflow-checked.
//!
//! Invariants:
//! - `coeffs.len() >= 1` (a series always has a constant term);
//! - products are truncated to the smaller truncation order of the factors;
//! - series exported as dimension counts are validated nonnegative at the
//!   exporting call site (`AlgebraPresentation::poincare`), not here.

use crate::presentations::{AlgebraPresentation, FamilyKind};
use thiserror::Error;

/// Default degree bound for [`dim_by_enumeration`].
pub const ENUMERATION_BOUND: u32 = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires constant term exactly 1.
    #[error("series has constant term {0}, expected 1; not invertible over the integers")]
    NonUnitConstantTerm(i64),
    /// The enumeration oracle refuses degrees above its bound.
    #[error("degree {degree} exceeds the enumeration bound {bound}")]
    BoundExceeded { degree: u32, bound: u32 },
}

/// `C(j+k, j) mod 2` by Lucas' theorem: odd exactly when the binary
/// expansions of `j` and `k` are disjoint.
#[inline]
pub const fn binom_mod2(j: u64, k: u64) -> bool {
    j & k == 0
}

/// A power series truncated at a fixed degree, with `i64` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    coeffs: Vec<i64>,
}

impl PoincareSeries {
    /// The constant series 1, truncated at `maxdeg`.
    pub fn one(maxdeg: u32) -> Self {
        let mut coeffs = vec![0; maxdeg as usize + 1];
        coeffs[0] = 1;
        Self { coeffs }
    }

    /// Build from explicit coefficients (`coeffs[d]` is the `t^d` term).
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Self { coeffs }
    }

    /// `1 + t^d`, truncated at `maxdeg`. A degree-`d` exterior generator
    /// contributes this factor to a dimension series.
    pub fn exterior_factor(d: u32, maxdeg: u32) -> Self {
        let mut s = Self::one(maxdeg);
        if d <= maxdeg && d > 0 {
            s.coeffs[d as usize] = 1;
        }
        s
    }

    /// `(1 - t^d)^{-1} = 1 + t^d + t^{2d} + ...`, truncated at `maxdeg`.
    /// A degree-`d` polynomial generator contributes this factor.
    pub fn geometric(d: u32, maxdeg: u32) -> Self {
        assert!(d > 0, "geometric factor needs positive degree");
        let mut s = Self::one(maxdeg);
        let mut m = d;
        while m <= maxdeg {
            s.coeffs[m as usize] = 1;
            m += d;
        }
        s
    }

    /// Truncation order: the largest degree this series carries.
    pub fn maxdeg(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient of `t^d`. Panics beyond the truncation order, because a
    /// truncated series carries no information there.
    pub fn coeff(&self, d: u32) -> i64 {
        assert!(
            d <= self.maxdeg(),
            "coefficient {d} requested beyond truncation order {}",
            self.maxdeg()
        );
        self.coeffs[d as usize]
    }

    /// All coefficients in degree order.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Cauchy product, truncated to the smaller truncation order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                let prod = a.checked_mul(b).expect("series coefficient overflow");
                out[i + j] = out[i + j].checked_add(prod).expect("series coefficient overflow");
            }
        }
        Self { coeffs: out }
    }

    /// Coefficient-wise sum, truncated to the smaller truncation order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].checked_add(other.coeffs[i]).expect("series coefficient overflow"))
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse, truncated at the same order. Requires constant
    /// term exactly 1; intermediate coefficients may be negative.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != 1 {
            return Err(SeriesError::NonUnitConstantTerm(self.coeffs[0]));
        }
        let n = self.coeffs.len();
        let mut inv = vec![0i64; n];
        inv[0] = 1;
        for d in 1..n {
            let mut acc: i64 = 0;
            for k in 1..=d {
                let prod = self.coeffs[k].checked_mul(inv[d - k]).expect("series coefficient overflow");
                acc = acc.checked_add(prod).expect("series coefficient overflow");
            }
            inv[d] = acc.checked_neg().expect("series coefficient overflow");
        }
        Ok(Self { coeffs: inv })
    }

    /// True when every coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// Count basis monomials of total degree `d` in a presented algebra by
/// direct enumeration: polynomial generators may repeat (multisets),
/// exterior generators appear at most once (subsets). The group-like part
/// contributes only in degree 0. This is the independent cross-check for
/// [`AlgebraPresentation::poincare`], so it deliberately walks exponent
/// choices one generator at a time instead of multiplying series.
pub fn dim_by_enumeration(pres: &AlgebraPresentation, d: u32) -> Result<u64, SeriesError> {
    if d > ENUMERATION_BOUND {
        return Err(SeriesError::BoundExceeded { degree: d, bound: ENUMERATION_BOUND });
    }
    let mut gens: Vec<(FamilyKind, u32)> = Vec::new();
    for family in pres.families() {
        for degree in family.degrees_up_to(d) {
            gens.push((family.kind(), degree));
        }
    }
    // Largest degrees first so the recursion prunes quickly.
    gens.sort_by_key(|g| std::cmp::Reverse(g.1));
    Ok(count_monomials(&gens, d))
}

fn count_monomials(gens: &[(FamilyKind, u32)], remaining: u32) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let Some(&(kind, g)) = gens.first() else {
        return 0;
    };
    let rest = &gens[1..];
    let mut total = count_monomials(rest, remaining);
    match kind {
        FamilyKind::Exterior => {
            if g <= remaining {
                total += count_monomials(rest, remaining - g);
            }
        }
        FamilyKind::Polynomial => {
            let mut used = g;
            while used <= remaining {
                total += count_monomials(rest, remaining - used);
                used += g;
            }
        }
    }
    total
}

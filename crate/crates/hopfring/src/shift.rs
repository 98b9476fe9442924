//! Formal words in the invertible / torsion homotopy classes that dress
//! generators: η (degree 1), η² (degree 2), β (degree 4), λ^{±1} (degree ±8),
//! ν^{±1} (degree ±2).
//!
//! A word is a formal product with no relations applied; the rewrite rules
//! that consume specific words live in the circle calculus. Words render in
//! compact ASCII letters inside brackets: η→`h`, η²→`h2`, β→`b`, λ→`l`,
//! ν→`n`, e.g. `[bl^-1]` for βλ⁻¹.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A single dressing class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftClass {
    Eta,
    EtaSq,
    Beta,
    Lambda,
    LambdaInv,
    Nu,
    NuInv,
}

impl ShiftClass {
    /// Homotopy degree of the class.
    pub const fn degree(self) -> i64 {
        match self {
            ShiftClass::Eta => 1,
            ShiftClass::EtaSq => 2,
            ShiftClass::Beta => 4,
            ShiftClass::Lambda => 8,
            ShiftClass::LambdaInv => -8,
            ShiftClass::Nu => 2,
            ShiftClass::NuInv => -2,
        }
    }
}

/// A formal product of dressing classes, stored as multiplicities
/// (λ and ν powers may be negative).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ShiftWord {
    pub eta: u32,
    pub eta_sq: u32,
    pub beta: u32,
    pub lambda: i64,
    pub nu: i64,
}

impl ShiftWord {
    pub const EMPTY: ShiftWord = ShiftWord { eta: 0, eta_sq: 0, beta: 0, lambda: 0, nu: 0 };

    pub const fn single(class: ShiftClass) -> Self {
        let mut w = ShiftWord::EMPTY;
        match class {
            ShiftClass::Eta => w.eta = 1,
            ShiftClass::EtaSq => w.eta_sq = 1,
            ShiftClass::Beta => w.beta = 1,
            ShiftClass::Lambda => w.lambda = 1,
            ShiftClass::LambdaInv => w.lambda = -1,
            ShiftClass::Nu => w.nu = 1,
            ShiftClass::NuInv => w.nu = -1,
        }
        w
    }

    /// βλ⁻¹, the degree −4 dressing.
    pub const fn beta_lambda_inv() -> Self {
        ShiftWord { eta: 0, eta_sq: 0, beta: 1, lambda: -1, nu: 0 }
    }

    pub const fn is_empty(&self) -> bool {
        self.eta == 0 && self.eta_sq == 0 && self.beta == 0 && self.lambda == 0 && self.nu == 0
    }

    /// Total homotopy degree of the word.
    pub fn degree(&self) -> i64 {
        i64::from(self.eta)
            + 2 * i64::from(self.eta_sq)
            + 4 * i64::from(self.beta)
            + 8 * self.lambda
            + 2 * self.nu
    }

    /// Concatenate two words.
    pub fn compose(&self, other: &ShiftWord) -> ShiftWord {
        ShiftWord {
            eta: self.eta + other.eta,
            eta_sq: self.eta_sq + other.eta_sq,
            beta: self.beta + other.beta,
            lambda: self.lambda + other.lambda,
            nu: self.nu + other.nu,
        }
    }

    /// Multiply by λ^k (the periodicity relabel).
    pub fn with_lambda(&self, k: i64) -> ShiftWord {
        let mut w = *self;
        w.lambda += k;
        w
    }

    /// Multiply by ν^k.
    pub fn with_nu(&self, k: i64) -> ShiftWord {
        let mut w = *self;
        w.nu += k;
        w
    }

    /// Letters without brackets, e.g. `bl^-1`; empty word renders as `1`.
    pub fn render_bare(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        let power = |s: &mut String, letter: &str, p: i64| {
            if p == 0 {
                return;
            }
            s.push_str(letter);
            if p != 1 {
                s.push_str(&format!("^{p}"));
            }
        };
        power(&mut s, "h", i64::from(self.eta));
        power(&mut s, "h2", i64::from(self.eta_sq));
        power(&mut s, "b", i64::from(self.beta));
        power(&mut s, "l", self.lambda);
        power(&mut s, "n", self.nu);
        s
    }
}

impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render_bare())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(ShiftWord::beta_lambda_inv().degree(), -4);
        assert_eq!(ShiftWord::single(ShiftClass::EtaSq).with_lambda(-1).degree(), -6);
        assert_eq!(ShiftWord::single(ShiftClass::NuInv).degree(), -2);
    }

    #[test]
    fn rendering() {
        assert_eq!(ShiftWord::beta_lambda_inv().to_string(), "[bl^-1]");
        assert_eq!(ShiftWord::single(ShiftClass::Eta).with_lambda(-1).to_string(), "[hl^-1]");
        assert_eq!(ShiftWord::EMPTY.to_string(), "[1]");
        assert_eq!(ShiftWord::beta_lambda_inv().with_lambda(-1).to_string(), "[bl^-2]");
    }
}

//! Presented graded algebras over F₂ and the registry of homology algebras
//! for the delooping spaces of KO and KU.
//!
//! A presentation is a group-like part (the component ring: F₂[Z], F₂[Z/2],
//! or nothing) together with finitely many generator families. A family is
//! polynomial or exterior and has degrees along an arithmetic progression
//! `a*i + b` for `i >= i0`.
//!
//! Invariants:
//! - family strides are positive, so degrees strictly increase;
//! - every produced degree is positive (no degree-0 generator families);
//! - `parse_presentation` ∘ [`AlgebraPresentation::canonical`] is the
//!   identity on the underlying shape (group part and degree rules);
//! - dimension series from [`AlgebraPresentation::poincare`] have
//!   nonnegative coefficients.
//!
//! The registry reduces the space index by periodicity (mod 8 for KO, mod 2
//! for KU) and dresses generator names with the corresponding λ- or ν-power
//! relabel, so index 8 comes back to the index-0 shape with a `[l^-1]` tag.

use crate::series::PoincareSeries;
use crate::shift::ShiftWord;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Which periodic spectrum a space index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spectrum {
    #[serde(rename = "KO")]
    Ko,
    #[serde(rename = "KU")]
    Ku,
}

impl Spectrum {
    /// Length of the delooping cycle: 8 for KO, 2 for KU.
    pub const fn period(self) -> i64 {
        match self {
            Spectrum::Ko => 8,
            Spectrum::Ku => 2,
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spectrum::Ko => write!(f, "KO"),
            Spectrum::Ku => write!(f, "KU"),
        }
    }
}

impl std::str::FromStr for Spectrum {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ko" => Ok(Spectrum::Ko),
            "ku" => Ok(Spectrum::Ku),
            other => Err(format!("unknown spectrum `{other}` (expected `ko` or `ku`)")),
        }
    }
}

/// The group-like part of a presentation: the coefficient ring of π₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupPart {
    Z,
    Z2,
    Trivial,
}

impl GroupPart {
    fn token(self) -> &'static str {
        match self {
            GroupPart::Z => "Z",
            GroupPart::Z2 => "Z2",
            GroupPart::Trivial => "1",
        }
    }
}

/// Polynomial (every exponent) or exterior (exponents 0 and 1) generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Polynomial,
    Exterior,
}

impl FamilyKind {
    fn token(self) -> &'static str {
        match self {
            FamilyKind::Polynomial => "P",
            FamilyKind::Exterior => "E",
        }
    }
}

/// How a family's generators print: which carrier symbol the subscript
/// attaches to. `EZed(k)` is an e-suspension form `e^k∘z_{d-k}` in degree d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyPattern {
    Olz,
    Zed,
    EZed(u32),
    Var,
}

/// One arithmetic progression of generators: degrees `stride*i + offset`
/// for `i >= start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFamily {
    kind: FamilyKind,
    stride: u32,
    offset: u32,
    start: u32,
    body: BodyPattern,
    shift: ShiftWord,
}

impl GeneratorFamily {
    /// Build a family with a plain display body and no dressing.
    /// Fails if the stride is zero or the first degree would be zero.
    pub fn new(
        kind: FamilyKind,
        stride: u32,
        offset: u32,
        start: u32,
    ) -> Result<Self, ParseError> {
        Self::with_display(kind, stride, offset, start, BodyPattern::Olz, ShiftWord::EMPTY)
    }

    /// Build a family with explicit display data.
    pub fn with_display(
        kind: FamilyKind,
        stride: u32,
        offset: u32,
        start: u32,
        body: BodyPattern,
        shift: ShiftWord,
    ) -> Result<Self, ParseError> {
        if stride == 0 {
            return Err(ParseError::ZeroStride { position: 0 });
        }
        if stride * start + offset == 0 {
            return Err(ParseError::DegreeZeroFamily { position: 0 });
        }
        Ok(Self { kind, stride, offset, start, body, shift })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn stride(&self) -> u32 {
        self.stride
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn shift(&self) -> &ShiftWord {
        &self.shift
    }

    pub fn body(&self) -> BodyPattern {
        self.body
    }

    /// Degree of the generator at family index `i` (requires `i >= start`).
    pub fn degree(&self, i: u32) -> u32 {
        debug_assert!(i >= self.start);
        self.stride * i + self.offset
    }

    /// All generator degrees `<= maxdeg`, ascending.
    pub fn degrees_up_to(&self, maxdeg: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut i = self.start;
        loop {
            let d = self.stride * i + self.offset;
            if d > maxdeg {
                return out;
            }
            out.push(d);
            i += 1;
        }
    }

    /// Same kind and degree rule, ignoring display dressing.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.stride == other.stride
            && self.offset == other.offset
            && self.start == other.start
    }

    fn subscript_rule(&self) -> String {
        // The symbolic subscript: for e^k∘z bodies the z-subscript runs
        // k below the degree rule.
        let (a, b) = match self.body {
            BodyPattern::EZed(k) => (self.stride, self.offset - k),
            _ => (self.stride, self.offset),
        };
        linear_term(a, b)
    }

    /// Symbolic display, e.g. `olz_{4i}∘[bl^-1]` or `e^3∘z_{4i}`.
    pub fn display_name(&self) -> String {
        let sub = self.subscript_rule();
        let mut s = match self.body {
            BodyPattern::Olz => format!("olz_{{{sub}}}"),
            BodyPattern::Zed => format!("z_{{{sub}}}"),
            BodyPattern::EZed(1) => format!("e∘z_{{{sub}}}"),
            BodyPattern::EZed(k) => format!("e^{k}∘z_{{{sub}}}"),
            BodyPattern::Var => format!("x_{{{sub}}}"),
        };
        if !self.shift.is_empty() {
            s.push('∘');
            s.push_str(&self.shift.to_string());
        }
        s
    }

    /// Concrete name of the degree-`d` generator, e.g. `olz_{8}∘[bl^-1]`.
    pub fn instance_name(&self, d: u32) -> String {
        let mut s = match self.body {
            BodyPattern::Olz => format!("olz_{{{d}}}"),
            BodyPattern::Zed => format!("z_{{{d}}}"),
            BodyPattern::EZed(1) => format!("e∘z_{{{}}}", d - 1),
            BodyPattern::EZed(k) => format!("e^{k}∘z_{{{}}}", d - k),
            BodyPattern::Var => format!("x_{{{d}}}"),
        };
        if !self.shift.is_empty() {
            s.push('∘');
            s.push_str(&self.shift.to_string());
        }
        s
    }

    fn with_lambda(&self, k: i64) -> Self {
        let mut f = self.clone();
        f.shift = f.shift.with_lambda(k);
        f
    }

    fn with_nu(&self, k: i64) -> Self {
        let mut f = self.clone();
        f.shift = f.shift.with_nu(k);
        f
    }
}

fn linear_term(a: u32, b: u32) -> String {
    match (a, b) {
        (1, 0) => "i".to_string(),
        (a, 0) => format!("{a}i"),
        (1, b) => format!("i+{b}"),
        (a, b) => format!("{a}i+{b}"),
    }
}

/// Display data for the group-like part: the generating invertible class,
/// possibly negated (`[-bl^-1]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord {
    pub negated: bool,
    pub shift: ShiftWord,
}

impl GroupWord {
    pub fn render(&self) -> String {
        let sign = if self.negated { "-" } else { "" };
        format!("[{}{}]", sign, self.shift.render_bare())
    }
}

/// A presented algebra: group-like part ⊗ the listed generator families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    group: GroupPart,
    group_word: Option<GroupWord>,
    families: Vec<GeneratorFamily>,
    label: String,
}

impl AlgebraPresentation {
    pub fn new(group: GroupPart, families: Vec<GeneratorFamily>, label: &str) -> Self {
        Self { group, group_word: None, families, label: label.to_string() }
    }

    pub fn with_group_word(mut self, negated: bool, shift: ShiftWord) -> Self {
        self.group_word = Some(GroupWord { negated, shift });
        self
    }

    pub fn group(&self) -> GroupPart {
        self.group
    }

    pub fn group_word(&self) -> Option<&GroupWord> {
        self.group_word.as_ref()
    }

    pub fn families(&self) -> &[GeneratorFamily] {
        &self.families
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same group part and family shapes, ignoring display dressing.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.group == other.group
            && self.families.len() == other.families.len()
            && self.families.iter().zip(&other.families).all(|(a, b)| a.same_shape(b))
    }

    /// Dimension series of the connected part (the group-like part counts
    /// only through its unit). Polynomial generators contribute geometric
    /// factors, exterior generators `1 + t^d`.
    pub fn poincare(&self, maxdeg: u32) -> PoincareSeries {
        let mut p = PoincareSeries::one(maxdeg);
        for family in &self.families {
            for d in family.degrees_up_to(maxdeg) {
                let factor = match family.kind {
                    FamilyKind::Polynomial => PoincareSeries::geometric(d, maxdeg),
                    FamilyKind::Exterior => PoincareSeries::exterior_factor(d, maxdeg),
                };
                p = p.mul(&factor);
            }
        }
        assert!(p.is_nonnegative(), "dimension series went negative");
        p
    }

    /// Canonical grammar form, e.g. `Z; P(deg=1*i+0, i>=1)`.
    pub fn canonical(&self) -> String {
        let mut s = String::from(self.group.token());
        for f in &self.families {
            s.push_str("; ");
            s.push_str(&format!(
                "{}(deg={}*i+{}, i>={})",
                f.kind.token(),
                f.stride,
                f.offset,
                f.start
            ));
        }
        s
    }

    /// Reader-facing form, e.g. `P(olz_{4i}∘[bl^-1], [-bl^-1])`.
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for f in &self.families {
            parts.push(f.display_name());
        }
        if let Some(w) = &self.group_word {
            parts.push(w.render());
        }
        let kind = self
            .families
            .first()
            .map(|f| f.kind.token())
            .unwrap_or("P");
        format!("{kind}({})", parts.join(", "))
    }
}

/// Errors from [`parse_presentation`] and family construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at byte {position}: expected {expected}, found `{found}`")]
    Unexpected { position: usize, expected: String, found: String },
    #[error("parse error at byte {position}: family stride must be positive")]
    ZeroStride { position: usize },
    #[error("parse error at byte {position}: family would produce a degree-0 generator")]
    DegreeZeroFamily { position: usize },
}

/// Parse the canonical grammar: `group ; family ; family ...` with
/// `group ∈ {Z, Z2, 1}` and `family = P|E(deg=A*i+B, i>=I0)`.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation, ParseError> {
    Parser { text, pos: 0 }.presentation()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn presentation(&mut self) -> Result<AlgebraPresentation, ParseError> {
        self.skip_ws();
        let group = self.group()?;
        let mut families = Vec::new();
        self.skip_ws();
        while !self.rest().is_empty() {
            self.expect(";")?;
            self.skip_ws();
            families.push(self.family()?);
            self.skip_ws();
        }
        if families.is_empty() {
            return Err(self.err("at least one generator family"));
        }
        Ok(AlgebraPresentation::new(group, families, "parsed"))
    }

    fn group(&mut self) -> Result<GroupPart, ParseError> {
        // Z2 must be tried before Z.
        for (tok, g) in [("Z2", GroupPart::Z2), ("Z", GroupPart::Z), ("1", GroupPart::Trivial)] {
            if self.rest().starts_with(tok) {
                self.pos += tok.len();
                return Ok(g);
            }
        }
        Err(self.err("group part `Z`, `Z2`, or `1`"))
    }

    fn family(&mut self) -> Result<GeneratorFamily, ParseError> {
        let start_pos = self.pos;
        let kind = if self.rest().starts_with('P') {
            FamilyKind::Polynomial
        } else if self.rest().starts_with('E') {
            FamilyKind::Exterior
        } else {
            return Err(self.err("family kind `P` or `E`"));
        };
        self.pos += 1;
        self.expect("(")?;
        self.skip_ws();
        self.expect("deg")?;
        self.skip_ws();
        self.expect("=")?;
        self.skip_ws();
        let stride = self.number()?;
        self.skip_ws();
        self.expect("*")?;
        self.skip_ws();
        self.expect("i")?;
        self.skip_ws();
        self.expect("+")?;
        self.skip_ws();
        let offset = self.number()?;
        self.skip_ws();
        self.expect(",")?;
        self.skip_ws();
        self.expect("i")?;
        self.skip_ws();
        self.expect(">=")?;
        self.skip_ws();
        let start = self.number()?;
        self.skip_ws();
        self.expect(")")?;
        GeneratorFamily::with_display(kind, stride, offset, start, BodyPattern::Var, ShiftWord::EMPTY)
            .map_err(|e| match e {
                ParseError::ZeroStride { .. } => ParseError::ZeroStride { position: start_pos },
                ParseError::DegreeZeroFamily { .. } => {
                    ParseError::DegreeZeroFamily { position: start_pos }
                }
                other => other,
            })
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err("a number"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("a number within range"))
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.err(&format!("`{tok}`")))
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn err(&self, expected: &str) -> ParseError {
        let found: String = self.rest().chars().take(12).collect();
        ParseError::Unexpected {
            position: self.pos,
            expected: expected.to_string(),
            found: if found.is_empty() { "end of input".to_string() } else { found },
        }
    }
}

/// Net λ- (KO) or ν- (KU) power relabel applied when `n` is reduced into the
/// base range by periodicity; 0 when `n` is already a base index.
pub fn registry_relabel(spectrum: Spectrum, n: i64) -> i64 {
    let period = spectrum.period();
    -(n - n.rem_euclid(period)) / period
}

/// The homology algebra of the `n`-th delooping, reduced by periodicity.
///
/// Base shapes (`n` reduced mod 8 for KO, mod 2 for KU):
///
/// | space | group | connected part       |
/// |-------|-------|----------------------|
/// | KO₀   | Z     | P, deg i,    i ≥ 1   |
/// | KO₁   | 1     | P, deg 2i+1, i ≥ 0   |
/// | KO₂   | 1     | P, deg 4i+2, i ≥ 0   |
/// | KO₃   | 1     | E, deg 4i+3, i ≥ 0   |
/// | KO₄   | Z     | P, deg 4i,   i ≥ 1   |
/// | KO₅   | 1     | E, deg 4i+1, i ≥ 0   |
/// | KO₆   | Z2    | E, deg 2i+2, i ≥ 0   |
/// | KO₇   | Z2    | E, deg i,    i ≥ 1   |
/// | KU₀   | Z     | P, deg 2i,   i ≥ 1   |
/// | KU₁   | 1     | E, deg 2i+1, i ≥ 0   |
///
/// Out-of-range indices pick up a λ^k / ν^k dressing on every display name,
/// so index 8 returns the KO₀ shape labelled `olz_{i}∘[l^-1]`.
pub fn registry_lookup(spectrum: Spectrum, n: i64) -> AlgebraPresentation {
    let base = n.rem_euclid(spectrum.period());
    let relabel = registry_relabel(spectrum, n);
    let fam = |kind, stride, offset, start, body, shift| {
        GeneratorFamily::with_display(kind, stride, offset, start, body, shift)
            .expect("registry families are well-formed")
    };
    let (group, group_word, families, name) = match (spectrum, base) {
        (Spectrum::Ko, 0) => (
            GroupPart::Z,
            Some(GroupWord { negated: true, shift: ShiftWord::EMPTY }),
            vec![fam(FamilyKind::Polynomial, 1, 0, 1, BodyPattern::Olz, ShiftWord::EMPTY)],
            "Z×BO",
        ),
        (Spectrum::Ko, 1) => (
            GroupPart::Trivial,
            None,
            vec![fam(FamilyKind::Polynomial, 2, 1, 0, BodyPattern::EZed(1), ShiftWord::EMPTY)],
            "U/O",
        ),
        (Spectrum::Ko, 2) => (
            GroupPart::Trivial,
            None,
            vec![fam(FamilyKind::Polynomial, 4, 2, 0, BodyPattern::EZed(2), ShiftWord::EMPTY)],
            "Sp/U",
        ),
        (Spectrum::Ko, 3) => (
            GroupPart::Trivial,
            None,
            vec![fam(FamilyKind::Exterior, 4, 3, 0, BodyPattern::EZed(3), ShiftWord::EMPTY)],
            "Sp",
        ),
        (Spectrum::Ko, 4) => (
            GroupPart::Z,
            Some(GroupWord { negated: true, shift: ShiftWord::beta_lambda_inv() }),
            vec![fam(
                FamilyKind::Polynomial,
                4,
                0,
                1,
                BodyPattern::Olz,
                ShiftWord::beta_lambda_inv(),
            )],
            "Z×BSp",
        ),
        (Spectrum::Ko, 5) => (
            GroupPart::Trivial,
            None,
            vec![fam(
                FamilyKind::Exterior,
                4,
                1,
                0,
                BodyPattern::EZed(1),
                ShiftWord::beta_lambda_inv(),
            )],
            "U/Sp",
        ),
        (Spectrum::Ko, 6) => {
            let w = ShiftWord { eta: 0, eta_sq: 1, beta: 0, lambda: -1, nu: 0 };
            (
                GroupPart::Z2,
                Some(GroupWord { negated: false, shift: w }),
                vec![fam(FamilyKind::Exterior, 2, 2, 0, BodyPattern::Olz, w)],
                "O/U",
            )
        }
        (Spectrum::Ko, 7) => {
            let w = ShiftWord { eta: 1, eta_sq: 0, beta: 0, lambda: -1, nu: 0 };
            (
                GroupPart::Z2,
                Some(GroupWord { negated: false, shift: w }),
                vec![fam(FamilyKind::Exterior, 1, 0, 1, BodyPattern::Olz, w)],
                "O",
            )
        }
        (Spectrum::Ku, 0) => (
            GroupPart::Z,
            Some(GroupWord { negated: true, shift: ShiftWord::EMPTY }),
            vec![fam(FamilyKind::Polynomial, 2, 0, 1, BodyPattern::Zed, ShiftWord::EMPTY)],
            "Z×BU",
        ),
        (Spectrum::Ku, 1) => (
            GroupPart::Trivial,
            None,
            vec![fam(FamilyKind::Exterior, 2, 1, 0, BodyPattern::EZed(1), ShiftWord::EMPTY)],
            "U",
        ),
        _ => unreachable!("base index is reduced mod the period"),
    };
    let (families, group_word) = if relabel != 0 {
        let relabeled = families
            .into_iter()
            .map(|f| match spectrum {
                Spectrum::Ko => f.with_lambda(relabel),
                Spectrum::Ku => f.with_nu(relabel),
            })
            .collect();
        let gw = group_word.map(|w| GroupWord {
            negated: w.negated,
            shift: match spectrum {
                Spectrum::Ko => w.shift.with_lambda(relabel),
                Spectrum::Ku => w.shift.with_nu(relabel),
            },
        });
        (relabeled, gw)
    } else {
        (families, group_word)
    };
    let mut pres =
        AlgebraPresentation::new(group, families, &format!("{spectrum}_{n} = {name}"));
    pres.group_word = group_word;
    pres
}

//! Symbolic mod-2 Hopf ring calculus for the periodic real and complex
//! K-theory spectra.
//!
//! The crate works inside the degree-0 homology carriers — polynomial
//! algebras on the classes `olz_i` over the group ring of the components —
//! and exposes both products (star and circle), the full Hopf structure
//! (coproduct, counit, antipode, Frobenius, Verschiebung), suspension and
//! dressing operators with per-space normal forms, presentations of every
//! space in the periodicity cycle, and the bar-construction ledger that
//! rebuilds each space from the previous one and compares dimensions.
//!
//! Module map:
//! - [`series`]: truncated Poincaré series over `i64`, mod-2 binomials,
//!   and enumeration-based dimension counts;
//! - [`shift`]: the composable dressing words `[η^a η²^b β^c λ^d ν^e]`;
//! - [`presentations`]: presented algebras (`P`/`E` families ⊗ group
//!   part), their registry over the periodicity cycle, parsing, and
//!   Poincaré series;
//! - [`elements`]: the degree-0 carriers — monomials, star product,
//!   coproduct, counit, antipode, Frobenius, Verschiebung;
//! - [`circle`]: the circle product, integer action, suspension, normal
//!   forms, dressing actions, and the relation table;
//! - [`bar`]: Tor generators, collapse classification, delooping reports,
//!   the periodicity cycle, and multiplicative-structure checks;
//! - [`sampling`]: seeded random elements for the law suites.

pub mod bar;
pub mod circle;
pub mod elements;
pub mod presentations;
pub mod sampling;
pub mod series;
pub mod shift;

pub use bar::{
    collapse_mode, deloop, run_cycle, tor, tor_poincare, verify_extensions, BarError,
    CollapseMode, CycleReport, DeloopReport, ExtensionCheck, ExtensionReport, TorGenerator,
};
pub use circle::{
    circle0, circle_int, e_suspend, normalize, normalize_sum, shift_by,
    verify_rewrite_chain_rel5, CircleError, Element, Mechanism, RelationCheck, RelationTable,
    ShiftedElement, SuspendedForm, SuspendedSum,
};
pub use elements::{ElementError, HopfElement, Monomial, Space, TensorElement};
pub use presentations::{
    parse_presentation, registry_lookup, AlgebraPresentation, BodyPattern, FamilyKind,
    GeneratorFamily, GroupPart, ParseError, Spectrum,
};
pub use sampling::ElementSampler;
pub use series::{binom_mod2, dim_by_enumeration, PoincareSeries, SeriesError, ENUMERATION_BOUND};
pub use shift::{ShiftClass, ShiftWord};

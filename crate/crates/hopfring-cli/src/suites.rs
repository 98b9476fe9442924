//! The `verify` suites: relation checks, Hopf-algebra axioms on seeded
//! random elements, and per-space multiplicative-structure checks.

use hopfring::{
    binom_mod2, circle0, verify_extensions, verify_rewrite_chain_rel5, ElementSampler,
    HopfElement, Monomial, RelationTable, Space, Spectrum,
};
use std::collections::BTreeSet;

/// One pass/fail line of a verification suite.
pub struct CheckLine {
    pub name: String,
    pub holds: bool,
    pub instances: u64,
    pub detail: String,
}

impl CheckLine {
    fn pass(name: &str, instances: u64, detail: String) -> Self {
        Self { name: name.to_string(), holds: true, instances, detail }
    }

    fn fail(name: &str, instances: u64, detail: String) -> Self {
        Self { name: name.to_string(), holds: false, instances, detail }
    }
}

/// The builtin relation table, the four-fold rewrite chain, and the
/// binomial-parity oracle (bitwise rule against an exact Pascal triangle).
pub fn relations_suite() -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let table = RelationTable::build();
    for check in &table.checks {
        let name = format!("rel{}", check.id);
        let instances = check.instances as u64;
        if check.holds {
            lines.push(CheckLine::pass(&name, instances, format!("{} — {}", check.mechanism, check.statement)));
        } else {
            lines.push(CheckLine::fail(&name, instances, format!("witness: {}", check.witness)));
        }
    }
    let chain_ok = verify_rewrite_chain_rel5();
    let chain_detail = "olz1 \u{2218} olz1 \u{2218} olz2 \u{2218} olz4 = olz1^{*8} \u{2260} 0".to_string();
    lines.push(if chain_ok {
        CheckLine::pass("rel5-chain", 1, chain_detail)
    } else {
        CheckLine::fail("rel5-chain", 1, chain_detail)
    });
    lines.push(lucas_check());
    lines
}

/// Compare the bitwise binomial-parity rule against Pascal's triangle
/// computed exactly in `u128` for all `j, k <= 64`.
fn lucas_check() -> CheckLine {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for r in 1..=128usize {
        let prev = &rows[r - 1];
        let mut row = vec![1u128; r + 1];
        for c in 1..r {
            row[c] = prev[c - 1].checked_add(prev[c]).expect("Pascal row fits in u128");
        }
        rows.push(row);
    }
    let mut instances = 0u64;
    for j in 0..=64u64 {
        for k in 0..=64u64 {
            instances += 1;
            let exact = rows[(j + k) as usize][k as usize] % 2 == 1;
            if binom_mod2(j, k) != exact {
                return CheckLine::fail(
                    "lucas-oracle",
                    instances,
                    format!("bitwise rule disagrees with Pascal's triangle at j={j}, k={k}"),
                );
            }
        }
    }
    CheckLine::pass("lucas-oracle", instances, "bitwise rule vs u128 Pascal triangle, j,k <= 64".to_string())
}

/// A law that is tested sample by sample; remembers the first failure.
struct LawTally {
    name: &'static str,
    instances: u64,
    first_failure: Option<String>,
}

impl LawTally {
    fn new(name: &'static str) -> Self {
        Self { name, instances: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(witness());
        }
    }

    fn into_line(self, pass_detail: String) -> CheckLine {
        match self.first_failure {
            None => CheckLine::pass(self.name, self.instances, pass_detail),
            Some(w) => CheckLine::fail(self.name, self.instances, w),
        }
    }
}

fn single(space: Space, mono: &Monomial) -> HopfElement {
    HopfElement::from_monomials(space, [mono.clone()])
}

/// Coassociativity, the bialgebra law, antipode involutivity, the antipode
/// convolution identity, and the halving/squaring interaction laws, all on
/// seeded random elements of both carrier algebras.
pub fn hopf_axioms_suite(seed: u64) -> Vec<CheckLine> {
    type Triple = (Monomial, Monomial, Monomial);
    fn toggle(set: &mut BTreeSet<Triple>, t: Triple) {
        if !set.remove(&t) {
            set.insert(t);
        }
    }

    let mut coassoc = LawTally::new("coassociativity");
    let mut bialgebra = LawTally::new("bialgebra-compatibility");
    let mut involution = LawTally::new("antipode-involution");
    let mut convolution = LawTally::new("antipode-convolution");
    let mut halving = LawTally::new("halving-squaring-laws");

    for (offset, space) in [(0u64, Space::Ko0), (1, Space::Ku0)] {
        let mut sampler = ElementSampler::new(seed.wrapping_add(offset), space, 12);
        for _ in 0..120 {
            let a = sampler.element();
            let b = sampler.element();

            // (psi (x) id) psi = (id (x) psi) psi, compared as symmetric
            // differences of monomial triples.
            let mut diff: BTreeSet<Triple> = BTreeSet::new();
            for (m1, m2) in a.coproduct().terms() {
                for (x, y) in single(space, m1).coproduct().terms() {
                    toggle(&mut diff, (x.clone(), y.clone(), m2.clone()));
                }
                for (x, y) in single(space, m2).coproduct().terms() {
                    toggle(&mut diff, (m1.clone(), x.clone(), y.clone()));
                }
            }
            coassoc.record(diff.is_empty(), || format!("coassociativity fails on {a}"));

            // psi(a*b) = psi(a) * psi(b) in the tensor square.
            let lhs = a.star(&b).map(|p| p.coproduct());
            let rhs = a.coproduct().star(&b.coproduct());
            let ok = match (&lhs, &rhs) {
                (Ok(l), Ok(r)) => {
                    l.terms().collect::<BTreeSet<_>>() == r.terms().collect::<BTreeSet<_>>()
                }
                _ => false,
            };
            bialgebra.record(ok, || format!("bialgebra law fails on {a} and {b}"));

            // chi is an involution.
            involution
                .record(a.antipode().antipode() == a, || format!("chi(chi(x)) != x for {a}"));

            // sum a' * chi(a'') = eps(a) [0].
            let mut acc = Ok(HopfElement::zero(space));
            for (m1, m2) in a.coproduct().terms() {
                acc = acc.and_then(|acc| {
                    single(space, m1)
                        .star(&single(space, m2).antipode())
                        .and_then(|p| acc.add(&p))
                });
            }
            let expected = if a.counit() { HopfElement::one(space) } else { HopfElement::zero(space) };
            convolution.record(acc.as_ref() == Ok(&expected), || {
                format!("convolution of identity and antipode misses eps on {a}")
            });
        }

        let mut pairs = ElementSampler::new(seed.wrapping_add(offset + 2), space, 10);
        for _ in 0..120 {
            let a = pairs.element();
            let b = pairs.element();
            checked_pair_laws(&mut halving, &a, &b);
        }
    }

    let detail = format!("240 seeded elements of degree <= 12 per law (seed {seed})");
    vec![
        coassoc.into_line(detail.clone()),
        bialgebra.into_line(detail.clone()),
        involution.into_line(detail.clone()),
        convolution.into_line(detail),
        halving.into_line(format!("240 seeded pairs of degree <= 10 (seed {seed})")),
    ]
}

/// VF = FV, V(a\u{2218}b) = V(a)\u{2218}V(b), and F(a\u{2218}V(b)) = F(a)\u{2218}b on one pair.
fn checked_pair_laws(tally: &mut LawTally, a: &HopfElement, b: &HopfElement) {
    let vf = a.frobenius().verschiebung() == a.verschiebung().frobenius();
    let v_circle = match (circle0(a, b), circle0(&a.verschiebung(), &b.verschiebung())) {
        (Ok(ab), Ok(vavb)) => ab.verschiebung() == vavb,
        _ => false,
    };
    let f_circle = match (circle0(a, &b.verschiebung()), circle0(&a.frobenius(), b)) {
        (Ok(avb), Ok(fab)) => avb.frobenius() == fab,
        _ => false,
    };
    tally.record(vf && v_circle && f_circle, || {
        format!("halving/squaring law fails on {a} and {b}")
    });
}

/// Per-space multiplicative-structure reports for every delooping target.
pub fn extensions_suite(bound: u32) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    for spectrum in [Spectrum::Ko, Spectrum::Ku] {
        for n in 1..=spectrum.period() {
            let name = format!("{spectrum}_{n}");
            match verify_extensions(spectrum, n, bound) {
                Ok(report) => {
                    let instances: u64 = report.checks.iter().map(|c| c.instances as u64).sum();
                    let detail = report
                        .checks
                        .iter()
                        .map(|c| format!("{}({})", c.label, c.instances))
                        .collect::<Vec<_>>()
                        .join("; ");
                    lines.push(CheckLine::pass(&name, instances, detail));
                }
                Err(e) => lines.push(CheckLine::fail(&name, 0, e.to_string())),
            }
        }
    }
    lines
}

//! The gate suite: one test per published guarantee, each printing a
//! single PASS line. Every check recomputes its claim from the engine's
//! base rules and compares against an independent oracle (closed-form
//! arithmetic, big-integer binomials, brute-force enumeration, or the
//! registry tables).

use hopfring::{
    circle0, collapse_mode, dim_by_enumeration, registry_lookup, run_cycle, tor,
    verify_extensions, CollapseMode, ElementSampler, HopfElement, Monomial, Space, Spectrum,
};
use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::time::Instant;

fn ko() -> Space {
    Space::Ko0
}

fn olz(i: u32) -> HopfElement {
    HopfElement::olz(ko(), i)
}

#[test]
fn c01_every_delooping_step_reproduces_its_target_dimensions() {
    let clock = Instant::now();
    let mut steps = 0;
    for spectrum in [Spectrum::Ko, Spectrum::Ku] {
        let cycle = run_cycle(spectrum, 40).expect("cycle runs");
        for step in &cycle.steps {
            assert!(
                step.dimension_match,
                "{spectrum} step {} mismatches first at degree {:?}",
                step.n, step.first_mismatch
            );
            assert_eq!(step.first_mismatch, None);
            steps += 1;
        }
    }
    let elapsed = clock.elapsed();
    assert_eq!(steps, 10);
    assert!(elapsed.as_secs_f64() < 5.0, "cycle took {elapsed:?}");
    println!("[PASS] all 10 delooping steps match their targets through degree 40 ({elapsed:?})");
}

#[test]
fn c02_the_cycle_closes_onto_its_start() {
    let clock = Instant::now();
    for (spectrum, period) in [(Spectrum::Ko, 8), (Spectrum::Ku, 2)] {
        let far = registry_lookup(spectrum, period);
        let start = registry_lookup(spectrum, 0);
        assert!(far.same_shape(&start), "{spectrum} period end differs from start");
        assert_eq!(
            far.poincare(40).coeffs().to_vec(),
            start.poincare(40).coeffs().to_vec()
        );
        let cycle = run_cycle(spectrum, 40).expect("cycle runs");
        assert!(cycle.closure);
    }
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "closure check took {elapsed:?}");
    println!("[PASS] both periodicity cycles close onto their starting presentation ({elapsed:?})");
}

#[test]
fn c03_the_odd_index_reduction_holds_across_the_range() {
    let olz1_sq = olz(1).frobenius();
    for i in 0..=12u32 {
        let lhs = circle0(&olz(1), &olz(2 * i + 1)).expect("same space");
        let right = if i == 0 { HopfElement::z(ko(), 0) } else { olz(2 * i) };
        let rhs = circle0(&olz1_sq, &right).expect("same space");
        assert_eq!(lhs, rhs, "odd-index reduction fails at i = {i}");
    }
    println!("[PASS] olz_1∘olz_(2i+1) = olz_1^2∘olz_(2i) recomputed from base rules for i ≤ 12");
}

#[test]
fn c04_the_four_fold_chain_is_a_nonzero_eighth_power() {
    let step1 = circle0(&olz(1), &olz(1)).expect("same space");
    let step2 = circle0(&step1, &olz(2)).expect("same space");
    let chain = circle0(&step2, &olz(4)).expect("same space");
    assert!(!chain.is_zero());
    assert_eq!(chain, olz(1).star_pow(8));
    assert!(hopfring::verify_rewrite_chain_rel5());
    println!("[PASS] olz_1∘olz_1∘olz_2∘olz_4 = olz_1^(*8) ≠ 0, with its supporting identities");
}

fn basis_monomials_up_to(space: Space, max_degree: u32) -> Vec<Monomial> {
    // All exponent patterns Σ i·e_i ≤ max_degree (indices respecting the
    // carrier), crossed with a small component sweep.
    fn extend(
        space: Space,
        min_index: u32,
        budget: u32,
        stem: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        out.push(stem.clone());
        let mut i = min_index;
        while i <= budget {
            if space.admits_index(i) {
                let max_e = budget / i;
                for e in 1..=max_e {
                    stem.push((i, e));
                    extend(space, i + 1, budget - i * e, stem, out);
                    stem.pop();
                }
            }
            i += 1;
        }
    }
    let mut patterns = Vec::new();
    extend(space, 1, max_degree, &mut Vec::new(), &mut patterns);
    let mut monomials = Vec::new();
    for pattern in patterns {
        for component in -2..=2i64 {
            monomials.push(Monomial::from_parts(component, pattern.iter().copied()));
        }
    }
    monomials
}

#[test]
fn c05_the_antipode_is_the_convolution_inverse_of_the_identity() {
    let chi_z1 = HopfElement::z(ko(), 1).antipode();
    assert_eq!(
        chi_z1,
        HopfElement::z(ko(), 1)
            .star(&HopfElement::grouplike(ko(), -2))
            .unwrap()
    );
    let mut checked = 0;
    for space in [Space::Ko0, Space::Ku0] {
        for mono in basis_monomials_up_to(space, 12) {
            let a = HopfElement::from_monomials(space, [mono.clone()]);
            if a.is_zero() {
                continue;
            }
            let mut convolution = HopfElement::zero(space);
            for (m1, m2) in a.coproduct().terms() {
                let left = HopfElement::from_monomials(space, [m1.clone()]);
                let right = HopfElement::from_monomials(space, [m2.clone()]).antipode();
                convolution = convolution.add(&left.star(&right).unwrap()).unwrap();
            }
            let expected = if a.counit() {
                HopfElement::one(space)
            } else {
                HopfElement::zero(space)
            };
            assert_eq!(convolution, expected, "antipode axiom fails on {mono}");
            checked += 1;
        }
    }
    println!(
        "[PASS] χz_1 = z_1*[-2] and Σ a'*χ(a'') = ε(a)[0] on all {checked} basis monomials of degree ≤ 12"
    );
}

#[test]
fn c06_mod2_binomials_match_exact_factorials() {
    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
    }
    let mut checked = 0;
    for j in 0..=64u32 {
        for k in 0..=64u32 {
            let exact = factorial(j + k) / (factorial(j) * factorial(k));
            let exact_odd = exact % BigUint::from(2u32) == BigUint::from(1u32);
            assert_eq!(
                hopfring::binom_mod2(u64::from(j), u64::from(k)),
                exact_odd,
                "binomial parity disagrees at ({j}, {k})"
            );
            checked += 1;
        }
    }
    println!("[PASS] binom_mod2 agrees with exact factorial quotients on {checked} pairs (j,k ≤ 64)");
}

#[test]
fn c07_dimension_enumeration_matches_the_product_formula() {
    let mut spaces = 0;
    for (spectrum, period) in [(Spectrum::Ko, 8i64), (Spectrum::Ku, 2i64)] {
        for n in 0..period {
            let pres = registry_lookup(spectrum, n);
            let series = pres.poincare(24);
            for d in 0..=24u32 {
                let counted = dim_by_enumeration(&pres, d).expect("within the enumeration bound");
                assert_eq!(
                    counted,
                    u64::try_from(series.coeff(d)).expect("dimensions are nonnegative"),
                    "{spectrum} space {n} disagrees in degree {d}"
                );
            }
            spaces += 1;
        }
    }
    println!("[PASS] brute-force monomial enumeration matches the product formula for {spaces} spaces, degree ≤ 24");
}

#[test]
fn c08_frobenius_verschiebung_laws_hold_on_seeded_pairs() {
    let clock = Instant::now();
    let mut checked = 0;
    for (seed, space) in [(101u64, Space::Ko0), (202, Space::Ku0)] {
        let mut sampler = ElementSampler::new(seed, space, 10);
        for _ in 0..120 {
            let a = sampler.element();
            let b = sampler.element();
            assert_eq!(a.frobenius().verschiebung(), a.verschiebung().frobenius());
            let ab = circle0(&a, &b).expect("same space");
            assert_eq!(
                ab.verschiebung(),
                circle0(&a.verschiebung(), &b.verschiebung()).expect("same space")
            );
            assert_eq!(
                circle0(&a, &b.verschiebung()).expect("same space").frobenius(),
                circle0(&a.frobenius(), &b).expect("same space")
            );
            checked += 1;
        }
    }
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "law suite took {elapsed:?}");
    println!("[PASS] halving/squaring laws hold on {checked} seeded pairs of degree ≤ 10 ({elapsed:?})");
}

#[test]
fn c09_hopf_axioms_hold_on_seeded_elements() {
    type Triple = (Monomial, Monomial, Monomial);
    fn toggle(set: &mut BTreeSet<Triple>, t: Triple) {
        if !set.remove(&t) {
            set.insert(t);
        }
    }
    let mut checked = 0;
    for (seed, space) in [(303u64, Space::Ko0), (404, Space::Ku0)] {
        let mut sampler = ElementSampler::new(seed, space, 12);
        for _ in 0..120 {
            let a = sampler.element();
            // Coassociativity: (ψ⊗id)ψ = (id⊗ψ)ψ.
            let mut left: BTreeSet<Triple> = BTreeSet::new();
            let mut right: BTreeSet<Triple> = BTreeSet::new();
            for (m1, m2) in a.coproduct().terms() {
                for (x, y) in HopfElement::from_monomials(space, [m1.clone()])
                    .coproduct()
                    .terms()
                {
                    toggle(&mut left, (x.clone(), y.clone(), m2.clone()));
                }
                for (x, y) in HopfElement::from_monomials(space, [m2.clone()])
                    .coproduct()
                    .terms()
                {
                    toggle(&mut right, (m1.clone(), x.clone(), y.clone()));
                }
            }
            assert_eq!(left, right, "coassociativity fails on {a}");
            // Bialgebra: ψ(a*b) = ψ(a)·ψ(b).
            let b = sampler.element();
            let lhs = a.star(&b).expect("same space").coproduct();
            let rhs = a
                .coproduct()
                .star(&b.coproduct())
                .expect("same space");
            assert_eq!(
                lhs.terms().cloned().collect::<BTreeSet<_>>(),
                rhs.terms().cloned().collect::<BTreeSet<_>>(),
                "bialgebra law fails on {a}, {b}"
            );
            // The antipode is an involution.
            assert_eq!(a.antipode().antipode(), a, "antipode involution fails on {a}");
            checked += 1;
        }
    }
    println!("[PASS] coassociativity, the bialgebra law, and antipode involutivity hold on {checked} seeded elements of degree ≤ 12");
}

#[test]
fn c10_multiplicative_structure_checks_pass_for_every_space() {
    let mut spaces = 0;
    for (spectrum, period) in [(Spectrum::Ko, 8i64), (Spectrum::Ku, 2i64)] {
        for n in 1..=period {
            let report = verify_extensions(spectrum, n, 32)
                .unwrap_or_else(|e| panic!("{spectrum} space {n}: {e}"));
            assert!(!report.checks.is_empty());
            spaces += 1;
        }
    }
    println!("[PASS] multiplicative-structure checks pass for all {spaces} spaces at bound 32");
}

#[test]
fn c11_collapse_classification_is_exactly_as_recorded() {
    let reflection = "comparison with the reflection-map bar spectral sequence";
    let orthogonal = "comparison with the O(1) bar spectral sequence";
    let expected: [(Spectrum, i64, CollapseMode); 10] = [
        (Spectrum::Ko, 0, CollapseMode::Filtration1),
        (Spectrum::Ko, 1, CollapseMode::Filtration1),
        (Spectrum::Ko, 2, CollapseMode::Filtration1),
        (Spectrum::Ko, 3, CollapseMode::EvenTotalDegree),
        (Spectrum::Ko, 4, CollapseMode::Filtration1),
        (Spectrum::Ko, 5, CollapseMode::EvenTotalDegree),
        (Spectrum::Ko, 6, CollapseMode::Assumed { citation: reflection.to_string() }),
        (Spectrum::Ko, 7, CollapseMode::Assumed { citation: orthogonal.to_string() }),
        (Spectrum::Ku, 0, CollapseMode::Filtration1),
        (Spectrum::Ku, 1, CollapseMode::EvenTotalDegree),
    ];
    for (spectrum, n, want) in expected {
        let gens = tor(&registry_lookup(spectrum, n), 40);
        let got = collapse_mode(&gens, spectrum, n).expect("classification succeeds");
        assert_eq!(got, want, "{spectrum} step {n}");
    }
    println!("[PASS] all 10 steps classify exactly as recorded (filtration-1 / even-total / assumed)");
}

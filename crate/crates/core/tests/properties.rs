use num_bigint::BigUint;
use proptest::prelude::*;

use equivar::cas_cat::{compose, random_morphism, CasMorphism};
use equivar::combinat::{
    count_injections, factorial, induce_character, injections, inner_product, partitions, specht_dimension,
    frobenius_char, ClassFunction, Partition,
};
use equivar::equivariant::{build_p, build_q, module_from_json, module_to_json};
use equivar::groth::{p_class_in_q_basis, KGenClass, Tag};
use equivar::homcalc::{hom_generic, hom_mapping_property, HomSource};
use equivar::linalg::Rational;
use equivar::truncated_ring::{multiply, Monomial, RingConfig};

fn monomial(n: usize, s: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=s, n).prop_map(Monomial)
}

#[test]
fn specht_dimensions_square_sum() {
    for n in 0..=6 {
        let total: BigUint = partitions(n).iter().map(|l| specht_dimension(l).pow(2)).sum();
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn characters_orthonormal() {
    for n in 0..=6 {
        let ps = partitions(n);
        for a in &ps {
            for b in &ps {
                let ip = inner_product(&ClassFunction::irreducible(a), &ClassFunction::irreducible(b)).unwrap();
                assert_eq!(ip, Rational::from_integer((a == b).into()));
            }
        }
    }
}

#[test]
fn induction_is_frobenius_product() {
    for n in 0..=3 {
        for m in 0..=3 {
            for a in partitions(n) {
                for b in partitions(m) {
                    let (fa, fb) = (ClassFunction::irreducible(&a), ClassFunction::irreducible(&b));
                    let ind = induce_character(&[fa.clone(), fb.clone()]);
                    assert_eq!(frobenius_char(&ind), frobenius_char(&fa).mul(&frobenius_char(&fb)));
                }
            }
        }
    }
}

#[test]
fn p_is_filtered_by_q() {
    for s in 0..=2 {
        for n in 0..=2 {
            for nv in n.max(1)..=4 {
                let p = build_p(s, n, nv).unwrap();
                let q = build_q(s, n, nv).unwrap();
                let k = Rational::from_integer(((s + 1).pow(n as u32) as i64).into());
                assert_eq!(p.dim(), (s + 1).pow(n as u32) * q.dim());
                assert_eq!(p.character(), q.character().scale(&k));
            }
        }
    }
}

#[test]
fn p_class_total_multiplicity() {
    for s in 0..=2 {
        for n in 0..=4 {
            for l in partitions(n) {
                let c = p_class_in_q_basis(&l, s).unwrap();
                // Weight each Q_{s,ν} by dim S^ν to compare with (s+1)^n dim S^λ.
                let total: Rational = c
                    .terms()
                    .iter()
                    .map(|((_, _, nu), x)| x * Rational::from_integer(specht_dimension(nu).into()))
                    .sum();
                let want = Rational::from_integer(
                    (specht_dimension(&l) * BigUint::from((s + 1).pow(n as u32))).into(),
                );
                assert_eq!(total, want);
            }
        }
    }
}

#[test]
fn hom_solvers_agree() {
    for s in 0..=2 {
        for n in 0..=2 {
            for m in 0..=2 {
                for nv in n.max(m).max(1)..=3 {
                    let t = build_q(s, m, nv).unwrap();
                    let src = HomSource::Q { r: s, n };
                    let direct = hom_generic(&src.build(nv).unwrap(), &t).unwrap().len();
                    assert_eq!(direct, hom_mapping_property(&src, &t).unwrap().dim(), "s={s} n={n} m={m} N={nv}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn injection_count(n in 0usize..=5, m in 0usize..=5) {
        let listed = injections(n, m).len();
        prop_assert_eq!(Some(listed), count_injections(n, m));
        if n <= m {
            prop_assert_eq!(BigUint::from(listed), factorial(m) / factorial(m - n));
        }
    }

    #[test]
    fn ring_product_laws(
        (a, b, c, s) in (1usize..=3, 0usize..=2).prop_flat_map(|(n, s)| (monomial(n, s), monomial(n, s), monomial(n, s), Just(s)))
    ) {
        let cfg = RingConfig::new(a.len(), s);
        let mul = |x: &Option<Monomial>, y: &Monomial| x.as_ref().and_then(|x| multiply(x, y, &cfg).unwrap());
        prop_assert_eq!(multiply(&a, &b, &cfg).unwrap(), multiply(&b, &a, &cfg).unwrap());
        let left = mul(&multiply(&a, &b, &cfg).unwrap(), &c);
        let right = multiply(&b, &c, &cfg).unwrap().and_then(|bc| multiply(&a, &bc, &cfg).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn constructed_modules_satisfy_axioms(s in 0usize..=2, n in 0usize..=3, extra in 0usize..=1, p in any::<bool>()) {
        let nv = n.max(1) + extra;
        let m = if p { build_p(s, n, nv).unwrap() } else { build_q(s, n, nv).unwrap() };
        prop_assert!(m.check_axioms().is_ok());
        let back = module_from_json(&module_to_json(&m).unwrap()).unwrap();
        prop_assert_eq!(back.character(), m.character());
    }

    #[test]
    fn cas_associative(seed in any::<u64>(), s in 0usize..=2) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let f = random_morphism(&mut rng, 1, 2, s, 3).unwrap();
        let g = random_morphism(&mut rng, 2, 2, s, 3).unwrap();
        let h = random_morphism(&mut rng, 2, 3, s, 3).unwrap();
        prop_assert_eq!(
            compose(&h, &compose(&g, &f).unwrap()).unwrap(),
            compose(&compose(&h, &g).unwrap(), &f).unwrap()
        );
        prop_assert_eq!(compose(&CasMorphism::identity(2, s), &f).unwrap(), f);
    }

    #[test]
    fn lambda_action_on_p_basis(s in 0usize..=2, a in 0usize..=2, b in 1usize..=2) {
        for l in partitions(a) {
            for mu in partitions(b) {
                let c = KGenClass::basis(Tag::P, s, l.clone());
                let f = equivar::combinat::SymFunc::schur(mu.clone());
                let got = c.lambda_action(&f).unwrap();
                let prod = equivar::combinat::SymFunc::schur(l.clone()).mul(&f);
                for (nu, x) in prod.terms() {
                    prop_assert_eq!(&got.coeff(Tag::P, s, nu), x);
                }
                prop_assert_eq!(got.terms().len(), prod.terms().len());
            }
        }
    }
}

#[test]
fn partitions_parse_like_display() {
    for n in 0..=6 {
        for l in partitions(n) {
            assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }
    }
}

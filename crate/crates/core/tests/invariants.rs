use std::sync::{Arc, OnceLock};

use fellcoact::balgebra::{build_algebra, convolve, involute, BundleAlgebra, Section};
use fellcoact::coaction::{coefficient_identities_check, dual_coaction, Coaction};
use fellcoact::fixtures::{all_fixtures, build, fixture_group, FixtureId, GROUPS};
use fellcoact::groups::{dual_group, FiniteGroup};
use fellcoact::harmonic::{is_positive_definite, OperatorFunction, PlancherelWeight};
use fellcoact::io::{bundle_to_json, operator_function_to_json, parse_bundle, parse_operator_function, parse_section, section_to_json};
use fellcoact::linalg::{is_psd, C64, ONE, ZERO};
use fellcoact::sampling::Sampler;
use fellcoact::suites::{run, Config, Suite, Target};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

struct Built {
    id: FixtureId,
    ba: BundleAlgebra,
    c: Coaction,
}

/// Fixtures whose regular representation is small enough for dense products.
fn small() -> &'static [Built] {
    static CELL: OnceLock<Vec<Built>> = OnceLock::new();
    CELL.get_or_init(|| {
        all_fixtures()
            .into_iter()
            .filter_map(|id| {
                let ba = build_algebra(Arc::new(build(id).unwrap())).unwrap();
                if ba.rep_dim() > 32 {
                    return None;
                }
                let c = dual_coaction(&ba).unwrap();
                Some(Built { id, ba, c })
            })
            .collect()
    })
}

fn group(i: usize) -> Arc<FiniteGroup> {
    fixture_group(GROUPS[i % GROUPS.len()]).unwrap()
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn group_laws_hold(gi in 0usize..7, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let g = group(gi);
        let (s, t, u) = (a % g.order(), b % g.order(), c % g.order());
        prop_assert_eq!(g.mul(g.mul(s, t), u), g.mul(s, g.mul(t, u)));
        prop_assert_eq!(g.mul(s, g.inv(s)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), s), s);
        let l = g.lambda(s).matmul(&g.lambda(t));
        prop_assert!(l.dist(&g.lambda(g.mul(s, t))) == 0.0);
    }

    #[test]
    fn characters_are_multiplicative(gi in 0usize..4, a in 0usize..8, b in 0usize..8, x in 0usize..8) {
        let g = group(gi);
        prop_assume!(g.is_abelian());
        let d = dual_group(&g).unwrap();
        let (s, t, x) = (a % g.order(), b % g.order(), x % d.order());
        let lhs = d.pairing(x, g.mul(s, t));
        prop_assert!((lhs - d.pairing(x, s) * d.pairing(x, t)).norm() < TOL);
        prop_assert!(d.orthogonality_defect() < TOL);
        prop_assert!(d.homomorphism_defect() < TOL);
    }

    #[test]
    fn convolution_is_associative_and_involutive(k in 0usize..64, seed in any::<u64>()) {
        let b = &small()[k % small().len()];
        let mut rng = Sampler::new(seed);
        let (x, y, z) = (b.ba.random_section(&mut rng), b.ba.random_section(&mut rng), b.ba.random_section(&mut rng));
        let left = convolve(&convolve(&x, &y).unwrap(), &z).unwrap();
        let right = convolve(&x, &convolve(&y, &z).unwrap()).unwrap();
        prop_assert!(left.dist(&right) < TOL * (1.0 + left.dist(&Section::zero(x.bundle().clone()))), "{}", b.id);
        let lhs = involute(&convolve(&x, &y).unwrap()).unwrap();
        let rhs = convolve(&involute(&y).unwrap(), &involute(&x).unwrap()).unwrap();
        prop_assert!(lhs.dist(&rhs) < TOL * 1e2);
        prop_assert!(involute(&involute(&x).unwrap()).unwrap().dist(&x) < TOL);
    }

    #[test]
    fn rho_is_a_star_homomorphism(k in 0usize..64, seed in any::<u64>()) {
        let b = &small()[k % small().len()];
        let mut rng = Sampler::new(seed);
        let (x, y) = (b.ba.random_section(&mut rng), b.ba.random_section(&mut rng));
        let (rx, ry) = (b.ba.embed(&x), b.ba.embed(&y));
        let prod = rx.matmul(&ry);
        prop_assert!(b.ba.embed(&convolve(&x, &y).unwrap()).dist(&prod) < TOL * (1.0 + prod.frobenius()));
        prop_assert!(b.ba.embed(&involute(&x).unwrap()).dist(&rx.adjoint()) < TOL * (1.0 + rx.frobenius()));
        prop_assert!(b.ba.section_of(&rx).unwrap().dist(&x) < TOL);
    }

    #[test]
    fn plancherel_weight_reads_the_identity_coefficient(gi in 0usize..7, seed in any::<u64>()) {
        let g = group(gi);
        let phi = PlancherelWeight::new(g.clone());
        let mut rng = Sampler::new(seed);
        let (f, h) = (rng.vector(g.order()), rng.vector(g.order()));
        let (x, y) = (g.lambda_of(&f), g.lambda_of(&h));
        let scale = 1.0 + vec_norm(&f) * vec_norm(&h);
        prop_assert!((phi.eval(&x).unwrap() - f[g.identity()]).norm() < 1e-12 * scale);
        let ip: C64 = f.iter().zip(&h).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((phi.eval(&x.adjoint().matmul(&y)).unwrap() - ip).norm() < 1e-12 * scale);
    }

    #[test]
    fn coefficient_identities_hold(k in 0usize..64, seed in any::<u64>()) {
        let b = &small()[k % small().len()];
        let g = b.c.group();
        let mut rng = Sampler::new(seed);
        let (s, t) = (rng.index(g.order()), rng.index(g.order()));
        let ms = b.c.spectral_subspace(s).unwrap();
        prop_assume!(ms.dim() > 0);
        let m = ms.combine(&rng.vector(ms.dim()));
        let a = b.c.algebra().element(&b.c.random_coords(&mut rng));
        let bb = b.c.algebra().element(&b.c.random_coords(&mut rng));
        let cert = coefficient_identities_check(&b.c, &a, &bb, &m, s, t, TOL).unwrap();
        prop_assert!(cert.passed(), "{}: {:?}", b.id, cert.failures());
    }

    #[test]
    fn positivity_tests_agree(gi in 0usize..7, seed in any::<u64>(), square in any::<bool>()) {
        let g = group(gi);
        let mut rng = Sampler::new(seed);
        let values = g.elements().map(|_| rng.matrix(2, 2)).collect();
        let h = OperatorFunction::new(g.clone(), 2, values).unwrap();
        let f = if square {
            h.adjoint().mul(&h)
        } else {
            let mut f = h.clone();
            f.axpy(ONE, &h.adjoint());
            f
        };
        let by_gram = is_positive_definite(&f, TOL).unwrap();
        prop_assert_eq!(is_psd(&f.lambda_op(), TOL).unwrap(), by_gram);
        if square {
            prop_assert!(by_gram);
        }
    }

    #[test]
    fn documents_round_trip(k in 0usize..21, seed in any::<u64>()) {
        let id = all_fixtures()[k];
        let bundle = build(id).unwrap();
        let doc = bundle_to_json(&bundle);
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_bundle(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.fiber_dims(), bundle.fiber_dims());
        for t in bundle.group().elements() {
            prop_assert!(back.fiber(t).equality_defect(bundle.fiber(t)).unwrap() < 1e-12);
        }

        let mut rng = Sampler::new(seed);
        let xi = Section::random(Arc::new(bundle), &mut rng);
        let sj = section_to_json(&xi);
        let parsed = parse_section(&serde_json::from_str(&sj.to_string()).unwrap(), |_| unreachable!()).unwrap();
        prop_assert!(parsed.dist(&xi) < 1e-12);

        let g = xi.group().clone();
        let f = OperatorFunction::new(g.clone(), 2, g.elements().map(|_| rng.matrix(2, 2)).collect()).unwrap();
        let fj = operator_function_to_json(&f);
        let back = parse_operator_function(&serde_json::from_str(&fj.to_string()).unwrap()).unwrap();
        prop_assert!(back.dist(&f) == 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn certificates_are_deterministic(gi in 0usize..7, seed in any::<u64>()) {
        let target = Target::named(&format!("{}-group", GROUPS[gi])).unwrap();
        let cfg = Config { seed, samples: 5, ..Config::default() };
        for suite in [Suite::Plancherel, Suite::CoefficientIdentities, Suite::Inversion] {
            let a = run(suite, &target, &cfg).unwrap();
            let b = run(suite, &target, &cfg).unwrap();
            prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        }
    }
}

#[test]
fn spectral_subspaces_split_every_small_algebra() {
    for b in small() {
        let total: usize = b.c.group().elements().map(|t| b.c.spectral_subspace(t).unwrap().dim()).sum();
        assert_eq!(total, b.c.dim(), "{}", b.id);
        let zero = vec![ZERO; b.c.dim()];
        assert!(b.c.fourier_coeff_coords(&zero, 0).iter().all(|z| *z == ZERO));
    }
}

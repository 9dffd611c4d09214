use espectra::echar::{
    build_even_system, build_odd_system, expected_count, find_deficit_solution, is_irregular,
};
use espectra::generate::{irregular_tensor, random_tensor, tangent_cubic, tangent_tensor};
use espectra::invariants::{exponents, gradient_resultant};
use espectra::resultant::modular::{degree_of, PrimeField};
use espectra::resultant::MacaulaySystem;
use espectra::{e_char_poly, ExactScalar, MultiPoly, Parity, SymmetricTensor, UniPoly};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

fn c(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn count(n: usize, d: u32) -> usize {
    expected_count(n, d).to_usize().unwrap()
}

#[test]
fn even_system_examples() {
    let q = SymmetricTensor::quadric_power(3, 1).unwrap();
    let sys = build_even_system(&q).unwrap();
    for (i, form) in sys.at(&ExactScalar::ratio(1, 3)).iter().enumerate() {
        assert_eq!(*form, MultiPoly::var(3, i).scale(&ExactScalar::ratio(2, 3)));
    }

    let f = SymmetricTensor::fermat(&[c(3), c(-2)], 4).unwrap();
    let sys = build_even_system(&f).unwrap();
    let lambda = c(5);
    let x1 = MultiPoly::var(2, 0);
    let norm = MultiPoly::quadric(2);
    let expected = &x1.pow(3).scale(&c(3)) - &(&norm * &x1).scale(&lambda);
    assert_eq!(sys.at(&lambda)[0], expected);

    let f = random_tensor(2, 4, 1).unwrap();
    let sys = build_even_system(&f).unwrap();
    assert_eq!(sys.degrees(), &[3, 3, 3]);
    assert!(sys
        .at(&c(7))
        .iter()
        .all(|p| p.homogeneous_degree() == Some(3)));
}

#[test]
fn odd_system_examples() {
    let f = SymmetricTensor::fermat(&[c(1)], 3).unwrap();
    let forms = build_odd_system(&f).unwrap().at(&c(2));
    let x0x0 = &MultiPoly::var(2, 0) * &MultiPoly::var(2, 0);
    let x1x1 = &MultiPoly::var(2, 1) * &MultiPoly::var(2, 1);
    assert_eq!(forms[0], &x0x0 - &x1x1);
    assert_eq!(
        forms[1],
        &x1x1 - &(&MultiPoly::var(2, 0) * &MultiPoly::var(2, 1)).scale(&c(2))
    );

    let sys = build_odd_system(&tangent_cubic()).unwrap();
    assert_eq!(sys.degrees(), &[2, 2, 2, 2]);
    let mac = MacaulaySystem::with_degrees(sys.at(&c(1)), sys.degrees().to_vec()).unwrap();
    assert_eq!(mac.critical_degree(), 5);
    assert_eq!(mac.size(), 56);

    let binary = random_tensor(1, 3, 2).unwrap();
    assert_eq!(build_odd_system(&binary).unwrap().degrees(), &[2, 2, 2]);
}

#[test]
fn charpoly_examples() {
    let psi = e_char_poly(&SymmetricTensor::quadric_power(3, 2).unwrap()).unwrap();
    assert!(psi.identically_zero && psi.deficient);

    // a = 2, b = -1, c = 4: det(A - λI) = λ^2 - 6λ + 7
    let f = SymmetricTensor::from_binomial_coeffs(&[c(2), c(-1), c(4)]).unwrap();
    let psi = e_char_poly(&f).unwrap();
    assert_eq!(psi.psi, UniPoly::from_coeffs(vec![c(7), c(-6), c(1)]));

    let psi = e_char_poly(&tangent_cubic()).unwrap();
    assert_eq!((psi.degree(), psi.n_expected), (Some(12), 14));
    assert!(psi.deficient && !psi.identically_zero);
}

#[test]
fn quadric_charpoly_is_power_of_linear() {
    for n in 1..=3 {
        let psi = e_char_poly(&SymmetricTensor::quadric_power(n + 1, 1).unwrap()).unwrap();
        let linear = UniPoly::from_coeffs(vec![c(1), c(-1)]);
        let mut expected = UniPoly::constant(c(1));
        for _ in 0..=n {
            expected = &expected * &linear;
        }
        assert_eq!(psi.psi, expected);
    }
}

#[test]
fn odd_degree_has_only_even_powers() {
    let shapes = [(1, 3), (1, 5), (2, 3)];
    let samples: Vec<(usize, u32, u64)> = (0..21u64)
        .map(|k| {
            let (n, d) = shapes[k as usize % 3];
            (n, d, k)
        })
        .collect();
    samples.par_iter().for_each(|&(n, d, seed)| {
        let psi = e_char_poly(&random_tensor(n, d, seed).unwrap()).unwrap();
        assert_eq!(psi.parity, Parity::Odd);
        for k in (1..=psi.n_expected).step_by(2) {
            assert!(
                psi.coeff(k).is_zero(),
                "n = {n}, d = {d}, seed {seed}: odd coefficient {k}"
            );
        }
        let minus = UniPoly::from_coeffs(
            psi.psi
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, v)| if k % 2 == 1 { -v } else { v.clone() })
                .collect(),
        );
        assert_eq!(minus, psi.psi);
    });
}

#[test]
fn deficiency_iff_certificate() {
    let mut corpus: Vec<SymmetricTensor> = Vec::new();
    let shapes = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4)];
    for k in 0..50u64 {
        let (n, d) = shapes[k as usize % shapes.len()];
        corpus.push(random_tensor(n, d, 1000 + k).unwrap());
    }
    for k in 0..10u64 {
        let (n, d) = shapes[k as usize % shapes.len()];
        corpus.push(tangent_tensor(n, d, k).unwrap());
    }
    let outcomes: Vec<(bool, bool)> = corpus
        .par_iter()
        .map(|f| {
            let psi = e_char_poly(f).unwrap();
            let cert = find_deficit_solution(f).unwrap();
            if let Some(cert) = &cert {
                assert!(
                    cert.residual <= 1e-8,
                    "certificate residual {}",
                    cert.residual
                );
            }
            (psi.deficient, cert.is_some())
        })
        .collect();
    for (k, (deficient, certified)) in outcomes.iter().enumerate() {
        assert_eq!(deficient, certified, "corpus entry {k}");
    }
    assert_eq!(outcomes.iter().filter(|o| o.0).count(), 10);
}

#[test]
fn generic_forms_have_full_degree() {
    let shapes = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4)];
    let jobs: Vec<(usize, u32, u64)> = shapes
        .iter()
        .flat_map(|&(n, d)| (0..3).map(move |s| (n, d, 50 + s)))
        .collect();
    jobs.par_iter().for_each(|&(n, d, seed)| {
        let psi = e_char_poly(&random_tensor(n, d, seed).unwrap()).unwrap();
        assert_eq!(
            psi.degree(),
            Some(psi.n_expected),
            "n = {n}, d = {d}, seed {seed}"
        );
        assert!(!psi.deficient);
    });
}

/// `(2, 5)` through the image of `ψ` modulo a large prime: a nonzero top
/// coefficient mod p forces a nonzero exact top coefficient.
#[test]
fn generic_ternary_quintics_have_full_degree_mod_p() {
    let field = PrimeField::nth_large(0);
    let bound = 2 * count(2, 5);
    (0..3u64).into_par_iter().for_each(|seed| {
        let sys = build_odd_system(&random_tensor(2, 5, 50 + seed).unwrap()).unwrap();
        let image = field.parametric_resultant(&sys, bound).unwrap();
        assert_eq!(degree_of(&image), Some(bound), "seed {seed}");
        assert!(image.iter().skip(1).step_by(2).all(|&v| v == 0));
    });
}

#[test]
fn constant_term_is_fixed_multiple_of_resultant() {
    for (n, d) in [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4)] {
        let (k_res, _) = exponents(d);
        let ratios: Vec<ExactScalar> = (0..20u64)
            .into_par_iter()
            .map(|seed| {
                let f = random_tensor(n, d, 300 + seed).unwrap();
                let c0 = e_char_poly(&f).unwrap().constant_term();
                &c0 / &gradient_resultant(&f).unwrap().pow(k_res)
            })
            .collect();
        assert!(
            ratios.iter().all(|r| *r == ratios[0]),
            "n = {n}, d = {d}: {ratios:?}"
        );
        assert!(!ratios[0].is_zero());
    }
}

#[test]
fn irregular_forms_have_vanishing_charpoly() {
    for (n, d) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
        for seed in 0..3 {
            let f = irregular_tensor(n, d, seed).unwrap();
            assert!(is_irregular(&f).unwrap());
            let psi = e_char_poly(&f).unwrap();
            assert!(psi.identically_zero, "n = {n}, d = {d}, seed {seed}");
        }
    }
}

#[test]
fn irregularity_examples() {
    let l = &MultiPoly::var(3, 0) + &MultiPoly::var(3, 1).scale(&ExactScalar::i());
    let x3 = MultiPoly::var(3, 2);
    let f = SymmetricTensor::new(&(&l * &l) + &(&x3 * &x3)).unwrap();
    assert!(is_irregular(&f).unwrap());
    let fermat = SymmetricTensor::fermat(&[c(2), c(-3), c(5)], 5).unwrap();
    assert!(!is_irregular(&fermat).unwrap());
    assert!(!is_irregular(&tangent_cubic()).unwrap());
}

#[test]
fn tangent_cubic_certificate() {
    let cert = find_deficit_solution(&tangent_cubic()).unwrap().unwrap();
    assert!(cert.residual <= 1e-8);
    let expected = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let k = cert.x[1];
    assert!(cert
        .x
        .iter()
        .zip(expected)
        .all(|(x, e)| (x - k * e).norm() < 1e-10));
}

#[test]
fn binary_tangent_forms_are_certified_at_the_isotropic_point() {
    for d in 3..=6 {
        let f = tangent_tensor(1, d, 7).unwrap();
        assert!(f.evaluate_exact(&[c(1), ExactScalar::i()]).is_zero());
        let cert = find_deficit_solution(&f).unwrap().unwrap();
        assert!(cert.residual <= 1e-8);
        let ratio = cert.x[1] / cert.x[0];
        assert!((ratio - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(e_char_poly(&f).unwrap().deficient);
    }
}

#[test]
fn binary_fermat_certificate_condition() {
    for d in 3..=6u32 {
        for (a1, a2) in [(1, 2), (2, -3), (1, 1), (1, -1)] {
            let f = SymmetricTensor::fermat(&[c(a1), c(a2)], d).unwrap();
            // a1^2 + (1 + (-1)^d) i^d a1 a2 + a2^2
            let i_d = ExactScalar::i().pow(d);
            let sign = if d % 2 == 0 { c(2) } else { c(0) };
            let cond = &(&c(a1 * a1) + &c(a2 * a2)) + &(&(&sign * &i_d) * &c(a1 * a2));
            let cert = find_deficit_solution(&f).unwrap();
            assert_eq!(cert.is_none(), !cond.is_zero(), "d = {d}, a = ({a1}, {a2})");
        }
    }
}

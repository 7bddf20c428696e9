use chainspec::bipartite::{
    chain_from_degrees, conjugate_profile, dominates, ferrers_profile, is_complete_pattern,
    DegreeSequence, FerrersProfile, RepresentationMatrix,
};
use chainspec::cmatrix::{
    bound_est1, bound_maxest, build_cmatrix, build_cmatrix_int, cmatrix_eigenvalues,
    cmatrix_numerical_rank, cmatrix_rank, convex_decomposition, trace_identities, CVector,
};
use chainspec::compound::{
    compound_rayleigh_quotient, omega, omega_denominator, omega_numerator, omega_prime,
    second_compound,
};
use chainspec::extremal::{auxmin, chain_lambda_sq, min_omega_continuous, min_omega_integer};
use chainspec::spectra::{
    adjacency_eigenvalues, dominant_left_vector, sigma1, sigma_pair, squared_singular_values,
};
use chainspec::Rational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

/// Power iteration on `A^T A`, as an oracle for `sigma_1^2`.
#[allow(clippy::needless_range_loop)]
fn power_sigma_sq(a: &RepresentationMatrix) -> f64 {
    let (m, n) = (a.rows(), a.cols());
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let mut av = vec![0.0; m];
        for i in 0..m {
            for j in 0..n {
                av[i] += a.get(i, j) as f64 * v[j];
            }
        }
        let mut w = vec![0.0; n];
        for j in 0..n {
            for i in 0..m {
                w[j] += a.get(i, j) as f64 * av[i];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= norm;
        }
        let done = (next - lambda).abs() < 1e-15 * next;
        lambda = next;
        v = w;
        if done {
            break;
        }
    }
    lambda
}

fn covered_matrix() -> impl Strategy<Value = RepresentationMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| {
        prop::collection::vec(any::<bool>(), m * n).prop_map(move |bits| {
            let mut e: Vec<u8> = bits.into_iter().map(u8::from).collect();
            for i in 0..m {
                e[i * n + i % n] = 1;
            }
            for j in 0..n {
                e[(j % m) * n + j] = 1;
            }
            RepresentationMatrix::new(m, n, e).unwrap()
        })
    })
}

fn degrees(max_len: usize, max_deg: usize) -> impl Strategy<Value = DegreeSequence> {
    prop::collection::vec(1..=max_deg, 1..=max_len)
        .prop_map(|v| DegreeSequence::from_unsorted(v).unwrap())
}

fn nonconstant_degrees(max_len: usize, max_deg: usize) -> impl Strategy<Value = DegreeSequence> {
    degrees(max_len, max_deg).prop_filter("needs two distinct degrees", |d| !d.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chain_matrix_has_the_requested_sums(d in degrees(7, 7)) {
        let a = chain_from_degrees(&d);
        prop_assert_eq!(a.row_sums(), d.degrees().to_vec());
        prop_assert_eq!(a.col_sums(), d.conjugate().degrees().to_vec());
        prop_assert!(!a.has_zero_row() && !a.has_zero_col());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert_eq!(a.get(i, j), u8::from(j < d.degrees()[i]));
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution(d in degrees(7, 7)) {
        prop_assert_eq!(d.conjugate().conjugate(), d.clone());
        let f = ferrers_profile(&d);
        prop_assert_eq!(conjugate_profile(&conjugate_profile(&f)), f.clone());
        prop_assert_eq!(conjugate_profile(&f).to_degrees(), d.conjugate());
        prop_assert_eq!(f.to_degrees(), d);
    }

    #[test]
    fn dominance_is_a_strict_partial_order(
        a in degrees(5, 5), b in degrees(5, 5), c in degrees(5, 5)
    ) {
        prop_assert!(!dominates(&a, &a));
        prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        if dominates(&a, &b) && dominates(&b, &c) {
            prop_assert!(dominates(&a, &c));
        }
        if dominates(&a, &b) {
            prop_assert!(a.len() >= b.len());
            prop_assert!(a.edges() > b.edges());
            prop_assert!(chain_lambda_sq(&a) > chain_lambda_sq(&b) + TOL);
        }
    }

    #[test]
    fn sigma1_against_power_iteration(a in covered_matrix()) {
        let s = sigma1(&a).unwrap();
        let oracle = power_sigma_sq(&a).sqrt();
        prop_assert!((s - oracle).abs() < 1e-7, "jacobi {} power {}", s, oracle);
        prop_assert!((s - sigma1(&a.transpose()).unwrap()).abs() < TOL);
    }

    #[test]
    fn sigma1_at_most_sqrt_e(a in covered_matrix()) {
        let s = sigma1(&a).unwrap();
        let root = (a.edges() as f64).sqrt();
        prop_assert!(s <= root + TOL);
        let complete = is_complete_pattern(&a).unwrap();
        prop_assert_eq!(complete, (root - s).abs() < TOL);
    }

    #[test]
    fn top_two_squared_singular_values_at_most_e(a in covered_matrix()) {
        let (s1, s2) = sigma_pair(&a).unwrap();
        let e = a.edges() as f64;
        prop_assert!(s1 * s1 + s2 * s2 <= e + TOL);
        let sv = squared_singular_values(&a);
        prop_assert!((sv.iter().sum::<f64>() - e).abs() < 1e-8);
        let rank = sv.iter().filter(|&&x| x > 1e-9).count();
        if rank <= 2 {
            prop_assert!((s1 * s1 + s2 * s2 - e).abs() < 1e-8);
        }
    }

    #[test]
    fn adjacency_spectrum_is_symmetric(a in covered_matrix()) {
        let ev = adjacency_eigenvalues(&a);
        prop_assert_eq!(ev.len(), a.rows() + a.cols());
        let mut neg: Vec<f64> = ev.iter().map(|x| -x).collect();
        neg.reverse();
        for (x, y) in ev.iter().zip(&neg) {
            prop_assert!((x - y).abs() < 1e-8);
        }
        prop_assert!((ev[0] - sigma1(&a).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn chain_perron_vector_is_positive_and_ordered(d in degrees(6, 6)) {
        let v = dominant_left_vector(&chain_from_degrees(&d)).unwrap();
        prop_assert!(v.iter().all(|&x| x > 0.0));
        for (i, w) in v.windows(2).enumerate() {
            if d.degrees()[i] > d.degrees()[i + 1] {
                prop_assert!(w[0] > w[1]);
            } else {
                prop_assert!((w[0] - w[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn omega_bounds_sigma_product(d in degrees(6, 7)) {
        let f = ferrers_profile(&d);
        let (s1, s2) = sigma_pair(&chain_from_degrees(&d)).unwrap();
        let prod = (s1 * s2).powi(2);
        prop_assert!(omega(&f).to_f64().unwrap() <= prod + 1e-7);
        prop_assert!(omega_prime(&f).to_f64().unwrap() <= prod + 1e-7);
        if f.h() == 2 {
            prop_assert!((omega(&f).to_f64().unwrap() - prod).abs() < 1e-7);
            prop_assert_eq!(omega(&f), omega_prime(&f));
        }
        if f.h() == 1 {
            prop_assert_eq!(omega(&f), Rational::from_integer(0));
        }
    }

    #[test]
    fn chain_compound_structure(d in degrees(6, 6)) {
        let a = chain_from_degrees(&d);
        prop_assume!(a.rows() >= 2 && a.cols() >= 2);
        let c = second_compound(&a).unwrap();
        for i in 0..c.rows {
            for j in 0..c.cols {
                prop_assert!(c.get(i, j) == 0 || c.get(i, j) == -1);
            }
        }
        let f = ferrers_profile(&d);
        prop_assert_eq!(c.nonzero_columns().len() as i128, omega_denominator(&f));
        let q = compound_rayleigh_quotient(&c);
        prop_assert_eq!(q, omega(&f));
        if omega_denominator(&f) > 0 {
            prop_assert_eq!(q * Rational::from_integer(omega_denominator(&f)),
                Rational::from_integer(omega_numerator(&f)));
        }
    }

    #[test]
    fn cmatrix_is_gram_of_chain(d in degrees(6, 8)) {
        let a = chain_from_degrees(&d);
        prop_assert_eq!(a.gram(), build_cmatrix_int(&d));
        let c = CVector::from_degrees(&d);
        let ev = cmatrix_eigenvalues(&c);
        prop_assert!(ev.iter().all(|&x| x > -1e-9));
        prop_assert!((ev[0] - chain_lambda_sq(&d)).abs() < 1e-8);
        prop_assert_eq!(cmatrix_rank(&c), cmatrix_numerical_rank(&c, 1e-8));
        let t = trace_identities(&c);
        prop_assert!((ev.iter().sum::<f64>() - t.e).abs() < 1e-8);
        prop_assert!((ev.iter().map(|x| x * x).sum::<f64>() - t.s2).abs() < 1e-8);
        let mut e2 = 0.0;
        for i in 0..ev.len() {
            for j in i + 1..ev.len() {
                e2 += ev[i] * ev[j];
            }
        }
        prop_assert!((e2 - t.beta).abs() < 1e-7);
    }

    #[test]
    fn real_cmatrix_is_psd(raw in prop::collection::vec(0.0f64..10.0, 1..7)) {
        let mut x = raw;
        x.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let c = CVector::new(x.clone()).unwrap();
        let m = build_cmatrix(&c);
        let n = x.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m[i * n + j], x[i.max(j)]);
            }
        }
        prop_assert!(cmatrix_eigenvalues(&c).iter().all(|&v| v > -1e-9));
    }

    #[test]
    fn estimate_chain(d in degrees(6, 8)) {
        let c = CVector::from_degrees(&d);
        let lam = cmatrix_eigenvalues(&c)[0];
        let est1 = bound_est1(&c);
        prop_assert!(lam <= est1 + TOL);
        if c.distinct_positive() >= 2 {
            let maxest = bound_maxest(&c).unwrap();
            prop_assert!(lam <= maxest + TOL);
            prop_assert!(maxest <= est1 + TOL);
            if c.distinct_positive() == 2 {
                prop_assert!((lam - maxest).abs() < TOL);
            }
        }
    }

    #[test]
    fn vertex_decomposition_bounds(d in nonconstant_degrees(6, 8)) {
        let dec = convex_decomposition(&d).unwrap();
        let target: Vec<Rational> = d.degrees().iter().map(|&x| Rational::from_integer(x as i128)).collect();
        prop_assert_eq!(dec.recombine(), target);
        let total: Rational = dec.coefficients.iter().sum();
        prop_assert_eq!(total, Rational::from_integer(1));
        let lam = chain_lambda_sq(&d);
        let best = dec.vertex_eigenvalues().into_iter().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(lam <= best + TOL);
    }

    #[test]
    fn lambda_is_convex_in_c(
        a in prop::collection::vec(0.0f64..5.0, 4),
        b in prop::collection::vec(0.0f64..5.0, 4),
        t in 0.0f64..1.0,
    ) {
        let sorted = |mut v: Vec<f64>| { v.sort_by(|x, y| y.partial_cmp(x).unwrap()); v };
        let (a, b) = (sorted(a), sorted(b));
        let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| t * x + (1.0 - t) * y).collect();
        let la = cmatrix_eigenvalues(&CVector::new(a).unwrap())[0];
        let lb = cmatrix_eigenvalues(&CVector::new(b).unwrap())[0];
        let lm = cmatrix_eigenvalues(&CVector::new(mix).unwrap())[0];
        prop_assert!(lm <= la.max(lb) + TOL);
        prop_assert!(lm <= t * la + (1.0 - t) * lb + 1e-8);
    }

    #[test]
    fn auxmin_matches_grid(a in 0.5f64..5.0, b in 0.5f64..5.0, extra in 0.5f64..20.0) {
        let e = a + b + extra;
        let got = auxmin(a, b, e).unwrap();
        prop_assert!((a * got.x + b * got.y - e).abs() < 1e-9);
        let x_max = (e - b) / a;
        let mut best = f64::INFINITY;
        let steps = 4000;
        for s in 0..=steps {
            let x = 1.0 + (x_max - 1.0) * s as f64 / steps as f64;
            let y = (e - a * x) / b;
            best = best.min(x * y);
        }
        prop_assert!((got.value - best).abs() < 1e-9 * best.max(1.0));
    }

    #[test]
    fn integer_minimum_dominates_continuous(r in 2usize..5, extra in 1usize..20) {
        let e = r * r + extra;
        let cont = min_omega_continuous(r, e).unwrap();
        let int = min_omega_integer(e as u64, r as u64, e as u64, e as u64).unwrap();
        let iv = Rational::from_integer(int.value as i128);
        prop_assert!(iv >= cont.value);
        if (e - r + 1) % r == 0 {
            prop_assert_eq!(iv, cont.value);
        }
        if !cont.value.is_integer() {
            prop_assert!(iv > cont.value);
        }
        for s in &int.argmins {
            prop_assert_eq!(s.edges(), e as u64);
            prop_assert_eq!(s.omega(), int.value);
        }
    }
}

#[test]
fn two_distinct_degrees_give_a_two_block_profile() {
    let f = FerrersProfile::new(vec![5, 4], vec![2, 1]).unwrap();
    assert_eq!(f.to_degrees().to_string(), "5,5,4");
    assert_eq!(omega(&f), Rational::from_integer(8));
}

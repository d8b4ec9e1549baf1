//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers. All comparisons are exact; the only
//! tolerance anywhere is the fixed 1e-8 singular-value threshold inside
//! the floating-point rank oracle of criterion 7.

use hrank::index_sets::{
    classify_monomial, enumerate_pivot_set, pivot_verify, structure_check, MonomialClass,
    StructureMode,
};
use hrank::jet::{jet_times_power, AnalyticJet};
use hrank::matrix::{
    binomial, build_matrix, exact_rank, exact_rank_entries, multinomial_bound, rank_factorize,
    rank_of, signature_decompose, MonomialOrder,
};
use hrank::monomial::PolarizedMonomial;
use hrank::poly::PolarizedPolynomial;
use hrank::random::{random_instance, Instance, InstanceShape};
use hrank::scalar::Scalar;
use hrank::verify::{verify_theorem, Verdict, VerifyOptions};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

fn criterion_1_seed(n: usize, d: u32, k: u64) -> u64 {
    1_000_000 + (n as u64) * 10_000 + (d as u64) * 100 + k
}

fn criterion_2_instance(seed: u64) -> (Instance, u32) {
    let n = 1 + (seed % 3) as usize;
    let d = (seed % 5) as u32;
    let shape = if seed % 2 == 0 {
        InstanceShape::WithPolynomialQ
    } else {
        InstanceShape::FullNormalFormWithTail
    };
    (random_instance(2_000_000 + seed, n, d, shape), d)
}

fn small_gaussian(rng: &mut ChaCha20Rng) -> Scalar {
    let re = Scalar::from_ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=4));
    let im = Scalar::from_ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=4));
    re.add(&Scalar::i().mul(&im))
}

/// Sparse random polynomial of bidegree `(j, k)` with `j + k <= total`.
fn random_poly_total_degree(rng: &mut ChaCha20Rng, n: usize, total: u32) -> PolarizedPolynomial {
    let order = MonomialOrder::new(n, total);
    let mut out = PolarizedPolynomial::zero(n);
    for holo in order.monomials() {
        for anti in order.monomials() {
            if holo.degree() + anti.degree() > total {
                continue;
            }
            if rng.gen_bool(0.22) {
                out.add_term(
                    PolarizedMonomial::from_holo_pair(holo, anti),
                    small_gaussian(rng),
                );
            }
        }
    }
    out
}

fn random_bidegree11(rng: &mut ChaCha20Rng, n: usize) -> PolarizedPolynomial {
    let order = MonomialOrder::new(n, 1);
    let mut out = PolarizedPolynomial::zero(n);
    for holo in order.monomials() {
        for anti in order.monomials() {
            if rng.gen_bool(0.55) {
                out.add_term(
                    PolarizedMonomial::from_holo_pair(holo, anti),
                    small_gaussian(rng),
                );
            }
        }
    }
    out
}

/// Random invertible matrix: unit lower triangular times a diagonal of
/// units times a permutation.
fn random_invertible(rng: &mut ChaCha20Rng, n: usize) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    let units = [
        Scalar::one(),
        Scalar::i(),
        Scalar::from_int(-1),
        Scalar::from_ratio(1, 2),
        Scalar::from_int(2),
    ];
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[perm[i]] = units[rng.gen_range(0..units.len())].clone();
        for (j, entry) in row.iter_mut().enumerate() {
            if perm[i] != j && rng.gen_bool(0.3) {
                *entry = small_gaussian(rng);
            }
        }
    }
    if hrank::linalg::invert(&m).is_none() {
        // the random fill made it singular; retry
        return random_invertible(rng, n);
    }
    m
}

#[test]
fn acceptance_1_rank_formula() {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 1..=4usize {
        for d in 0..=5u32 {
            for k in 0..20u64 {
                let inst = random_instance(
                    criterion_1_seed(n, d, k),
                    n,
                    d,
                    InstanceShape::FullNormalFormWithTail,
                );
                let expected = binomial((n as u32 + d) as u64, d as u64) as usize;
                let got = rank_of(&inst.p.pow(d));
                assert_eq!(
                    got, expected,
                    "rank of P^{d} for n={n} seed={k} expected {expected}"
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 1 exceeded its runtime budget: {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 1 (rank formula rank P^d = C(n+d,d)): PASS — {checked} instances in {elapsed:?}"
    );
}

#[test]
fn acceptance_2_main_theorem_suite() {
    let start = Instant::now();
    let trials = 500u64;
    for seed in 0..trials {
        let (inst, d) = criterion_2_instance(seed);
        let rep = verify_theorem(
            &inst.p,
            &inst.q,
            d,
            inst.base_point.clone(),
            VerifyOptions::default(),
        );
        assert_eq!(
            rep.verdict,
            Verdict::Holds,
            "seed {seed}: d={d} P={} -> {:?}",
            inst.p,
            rep.verdict
        );
        let bound = rep.qpd_lower_bound.expect("bound computed") as u128;
        let target = rep.target.expect("target computed");
        assert!(bound >= target, "seed {seed}: bound {bound} < target {target}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "criterion 2 exceeded its runtime budget: {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 2 (main theorem suite): PASS — {trials} seeded instances hold in {elapsed:?}"
    );
}

#[test]
fn acceptance_3_gallery_exactness() {
    let cases = hrank::gallery::run_gallery();
    for c in &cases {
        assert!(c.pass, "gallery case {} failed: {:?}", c.id, c.observed);
    }
    let find = |id: &str| -> &hrank::gallery::GalleryCase {
        cases.iter().find(|c| c.id == id).expect("case present")
    };
    let value = |c: &hrank::gallery::GalleryCase, key: &str| -> String {
        c.observed
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .expect("key present")
    };
    // bidegree-(2,2) example: ranks (3, 2)
    let d_case = find("d-bidegree-2-2");
    assert_eq!(value(d_case, "rank_p"), "3");
    assert_eq!(value(d_case, "rank_qp"), "2");
    // no-zero-set example: ranks (C(n+d,d), 1) = (6, 1) at n = d = 2
    let b_case = find("b-no-zero-set");
    assert_eq!(value(b_case, "rank_pd"), "6");
    assert_eq!(value(b_case, "rank_qpd"), "1");
    // |z1|^4 - |z2|^4 has rank 2
    let e_case = find("e-rank-two-product");
    assert_eq!(value(e_case, "rank_product"), "2");
    // norm-form lower bound >= n
    let f_case = find("f-norm-form-lower-bound");
    assert!(f_case.pass);
    println!(
        "ACCEPTANCE 3 (gallery exactness): PASS — {} cases, all exact",
        cases.len()
    );
}

#[test]
fn acceptance_4_power_structure() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(44);
    let mut pairs = 0usize;
    for n in 1..=3usize {
        for d in 0..=4u32 {
            for k in 0..50u64 {
                let inst = random_instance(
                    4_000_000 + (n as u64) * 10_000 + (d as u64) * 100 + k,
                    n,
                    d,
                    InstanceShape::FullNormalFormWithTail,
                );
                let pd = inst.p.pow(d);
                // every N_d coefficient of P^d is exactly zero and every
                // P_d coefficient is a positive rational
                let rep = structure_check(&pd, d, &StructureMode::PowerOnly);
                assert!(rep.ok, "n={n} d={d} k={k}: {:?}", rep.violations);
                for z in enumerate_pivot_set(n, d) {
                    let c = pd.coefficient(&z);
                    assert!(c.is_rational(), "pivot coefficient must be rational");
                    assert!(c.real_sign() > 0, "pivot coefficient must be positive");
                }
                // random Q with Q(0) != 0: truncated Q P^d carries Q(0)
                // times the P^d values on P_d and zeros on N_d
                let q_poly = {
                    let mut q = random_poly_total_degree(&mut rng, n, 2);
                    let c0 = q.constant_term();
                    if c0.is_zero() {
                        q = q
                            .add(&PolarizedPolynomial::constant(n, Scalar::from_int(1)))
                            .unwrap();
                    }
                    q
                };
                let q0 = q_poly.constant_term();
                let qpd = q_poly.mul(&pd).unwrap().truncate_bidegree(d);
                for z in enumerate_pivot_set(n, d) {
                    assert_eq!(
                        qpd.coefficient(&z),
                        q0.mul(&pd.coefficient(&z)),
                        "pivot value must scale by Q(0), n={n} d={d} k={k}"
                    );
                }
                let order = MonomialOrder::new(n, d);
                for holo in order.monomials() {
                    for anti in order.monomials() {
                        let m = PolarizedMonomial::from_holo_pair(holo, anti);
                        if classify_monomial(&m, d) == MonomialClass::InNd {
                            assert!(
                                qpd.coefficient(&m).is_zero(),
                                "N_d coefficient of QP^d must vanish"
                            );
                        }
                    }
                }
                let repq = structure_check(&qpd, d, &StructureMode::WithQ(q0));
                assert!(repq.ok, "n={n} d={d} k={k}: {:?}", repq.violations);
                pairs += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 4 (structure of P^d and QP^d): PASS — {pairs} instances in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_5_pivot_certification() {
    let start = Instant::now();
    let mut certified = 0usize;

    // instances of criterion 1
    for n in 1..=4usize {
        for d in 0..=5u32 {
            for k in 0..20u64 {
                let inst = random_instance(
                    criterion_1_seed(n, d, k),
                    n,
                    d,
                    InstanceShape::FullNormalFormWithTail,
                );
                let m = build_matrix(&inst.p.pow(d), d);
                let rep = pivot_verify(&m, d);
                assert!(rep.ok, "n={n} d={d} k={k}: {:?}", rep.violation);
                assert_eq!(rep.rank, Some(exact_rank(&m)), "n={n} d={d} k={k}");
                certified += 1;
            }
        }
    }

    // instances of criterion 2: the pipeline certifies both matrices and
    // the independent elimination rank must agree
    for seed in 0..500u64 {
        let (inst, d) = criterion_2_instance(seed);
        let rep = verify_theorem(
            &inst.p,
            &inst.q,
            d,
            inst.base_point.clone(),
            VerifyOptions::default(),
        );
        if let (Some(pivot_rank), Some(matrix_rank)) =
            (rep.pivot_certified_rank, rep.pd_matrix_rank)
        {
            assert_eq!(rep.pivots_ok, Some(true), "seed {seed}");
            assert_eq!(pivot_rank, matrix_rank, "seed {seed}");
            assert_eq!(
                Some(pivot_rank),
                rep.qpd_lower_bound,
                "seed {seed}: both matrices certify the same full rank"
            );
            certified += 1;
        } else {
            // rank <= 1 instances take the trivial branch without pivots
            assert!(rep.rank_p.unwrap() <= 1, "seed {seed} skipped pivots");
        }
    }

    // instances of criterion 3: the gallery's full-rank power matrices
    {
        let n = 2;
        let d = 2;
        let p = PolarizedPolynomial::var_w(n)
            .add(&PolarizedPolynomial::var_eta(n))
            .unwrap()
            .add(
                &PolarizedPolynomial::var_z(n, 0)
                    .mul(&PolarizedPolynomial::var_zeta(n, 0))
                    .unwrap(),
            )
            .unwrap();
        let m = build_matrix(&p.pow(d), d);
        let rep = pivot_verify(&m, d);
        assert!(rep.ok);
        assert_eq!(rep.rank, Some(exact_rank(&m)));
        certified += 1;
    }

    // instances of criterion 4
    for n in 1..=3usize {
        for d in 0..=4u32 {
            for k in 0..50u64 {
                let inst = random_instance(
                    4_000_000 + (n as u64) * 10_000 + (d as u64) * 100 + k,
                    n,
                    d,
                    InstanceShape::FullNormalFormWithTail,
                );
                let m = build_matrix(&inst.p.pow(d), d);
                let rep = pivot_verify(&m, d);
                assert!(rep.ok, "n={n} d={d} k={k}: {:?}", rep.violation);
                assert_eq!(rep.rank, Some(exact_rank(&m)));
                certified += 1;
            }
        }
    }

    println!(
        "ACCEPTANCE 5 (pivot certification matches elimination): PASS — {certified} matrices in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_6_decomposition_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(66);
    let mut general = 0usize;
    let mut real_valued = 0usize;
    for k in 0..200u64 {
        let n = 1 + (k % 3) as usize;
        if k % 2 == 0 {
            let r = random_poly_total_degree(&mut rng, n, 4);
            let fact = rank_factorize(&r);
            assert_eq!(fact.rank, rank_of(&r), "trial {k}");
            assert_eq!(fact.phi.len(), fact.rank);
            assert_eq!(fact.reconstruct(n), r, "trial {k}");
            general += 1;
        } else {
            // real-valued by construction: S + conjugate_swap(S)
            let s = random_poly_total_degree(&mut rng, n, 4).truncate_bidegree(2);
            let r = s.add(&s.conjugate_swap()).unwrap();
            assert!(r.is_real_valued());
            let sig = signature_decompose(&r).unwrap();
            assert_eq!(sig.square_count(), rank_of(&r), "trial {k}");
            assert_eq!(sig.reconstruct(n), r, "trial {k}");
            let fact = rank_factorize(&r);
            assert_eq!(fact.rank, rank_of(&r));
            assert_eq!(fact.reconstruct(n), r);
            real_valued += 1;
        }
    }
    println!(
        "ACCEPTANCE 6 (decomposition round-trips): PASS — {general} general + {real_valued} real-valued in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_7_oracle_equivalence() {
    use nalgebra::{Complex, DMatrix};
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(77);
    let mut disagreements = 0usize;
    for trial in 0..200u64 {
        let size = 1 + (trial as usize % 12);
        let mut entries = vec![vec![Scalar::zero(); size]; size];
        let mut floats = DMatrix::<Complex<f64>>::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                let re = rng.gen_range(-2i64..=2);
                let im = rng.gen_range(-2i64..=2);
                entries[i][j] = Scalar::from_int(re).add(&Scalar::i().mul(&Scalar::from_int(im)));
                floats[(i, j)] = Complex::new(re as f64, im as f64);
            }
        }
        let exact = exact_rank_entries(&entries);
        let svd = floats.svd(false, false);
        let float_rank = svd
            .singular_values
            .iter()
            .filter(|s| **s > 1e-8)
            .count();
        if exact != float_rank {
            disagreements += 1;
            eprintln!("trial {trial}: exact {exact} vs float {float_rank}");
        }
    }
    assert_eq!(disagreements, 0, "exact and floating ranks must agree");
    println!(
        "ACCEPTANCE 7 (elimination vs singular-value oracle): PASS — 200 matrices, 0 disagreements in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_8_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(88);
    let mut checked = 0usize;
    // three instance classes: bidegree-(1,1), their squares, general sparse
    for class in 0..3usize {
        let n = 2 + class % 2;
        let base = match class {
            0 => random_bidegree11(&mut rng, n),
            1 => random_bidegree11(&mut rng, n).pow(2),
            _ => random_poly_total_degree(&mut rng, n, 3),
        };
        let base_rank = rank_of(&base);
        for _ in 0..100 {
            let a = random_invertible(&mut rng, n);
            let b = random_invertible(&mut rng, n);
            let p0: Vec<Scalar> = (0..n).map(|_| small_gaussian(&mut rng)).collect();
            let q0: Vec<Scalar> = (0..n).map(|_| small_gaussian(&mut rng)).collect();
            let moved = base.linear_change(&a, &b).unwrap().translate(&p0, &q0);
            assert_eq!(rank_of(&moved), base_rank, "class {class}");
            checked += 1;
        }
    }
    println!(
        "ACCEPTANCE 8 (rank invariance under affine pair changes): PASS — {checked} changes in {:?}",
        start.elapsed()
    );
}

#[test]
fn acceptance_9_upper_bound() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(99);
    for trial in 0..200u64 {
        let n = 1 + (trial as usize % 3);
        let d = (trial % 4) as u32 + 1;
        let p = random_bidegree11(&mut rng, n);
        let bound = multinomial_bound(rank_of(&p), d);
        let got = rank_of(&p.pow(d)) as u128;
        assert!(
            got <= bound,
            "trial {trial}: rank {got} exceeds multinomial bound {bound}"
        );
    }
    println!(
        "ACCEPTANCE 9 (multinomial upper bound on powers): PASS — 200 instances in {:?}",
        start.elapsed()
    );
}

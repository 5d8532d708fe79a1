mod common;

use common::{arrangement_tau, random_curve};
use freeness::analysis::{analyze, AnalysisOptions};
use freeness::arrangement::{lattice_isomorphic, LineArrangement};
use freeness::classify::{cuspidal_guarantee, GuaranteeTag};
use freeness::geometry::rational_roots;
use freeness::linalg::{complete_kernel, rank, DenseMatrix, IntVec, PrimeStream, SparseIntMatrix};
use freeness::parse::parse_poly;
use freeness::poly::{HomogeneousPoly, Monomial, UniPoly};
use freeness::report::{to_json, CurveReport};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn poly_strategy() -> impl Strategy<Value = HomogeneousPoly> {
    (1u32..=4).prop_flat_map(|d| {
        let n = ((d + 1) * (d + 2) / 2) as usize;
        proptest::collection::vec(-4i64..=4, n).prop_map(move |c| {
            let coeffs: Vec<BigRational> = c.into_iter().map(q).collect();
            HomogeneousPoly::from_dense(d, &coeffs)
        })
    })
}

/// Matrices of rank at most `r`, as products of random factors.
fn low_rank_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=7, 1usize..=7, 0usize..=4).prop_flat_map(|(m, n, r)| {
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, r), m),
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), r),
        )
            .prop_map(move |(a, b)| {
                (0..m)
                    .map(|i| (0..n).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect())
                    .collect()
            })
    })
}

fn line_strategy() -> impl Strategy<Value = Vec<[i64; 3]>> {
    proptest::collection::vec(proptest::array::uniform3(-2i64..=2), 3..=7)
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certified_kernel_matches_fraction_free_rank(rows in low_rank_matrix(), seed in any::<u64>()) {
        let n = rows[0].len();
        let dense = DenseMatrix::from_i64_rows(&rows);
        let columns = (0..n)
            .map(|j| IntVec::from_dense(&rows.iter().map(|r| BigInt::from(r[j])).collect::<Vec<_>>()))
            .collect();
        let sparse = SparseIntMatrix::from_columns(rows.len(), columns);
        let kc = complete_kernel(&sparse, &SparseIntMatrix::new(n), &mut PrimeStream::new(seed)).unwrap();
        prop_assert_eq!(kc.rank, rank(&dense));
        prop_assert_eq!(kc.kernel_dim, n - kc.rank);
        prop_assert_eq!(kc.new_vectors.len(), kc.kernel_dim);
        for v in &kc.new_vectors {
            let v: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            prop_assert!(dense.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn display_parses_back(f in poly_strategy()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn euler_identity(f in poly_strategy()) {
        let p = f.partials().unwrap();
        let sum = (0..3).fold(HomogeneousPoly::zero(f.degree()), |acc, i| acc.add(&HomogeneousPoly::var(i).mul(&p[i])));
        prop_assert_eq!(sum, f.scale(&q(f.degree() as i64)));
    }

    #[test]
    fn product_is_commutative(f in poly_strategy(), g in poly_strategy()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        let m = Monomial::from_exponents([0, 0, f.degree() + g.degree()]);
        prop_assert_eq!(f.mul(&g).coeff(&m), f.coeff(&Monomial::from_exponents([0, 0, f.degree()])) * g.coeff(&Monomial::from_exponents([0, 0, g.degree()])));
    }

    #[test]
    fn arrangement_tau_matches_brute_force(lines in line_strategy()) {
        if let Ok(arr) = LineArrangement::from_i64(&lines) {
            prop_assert_eq!(arr.tau_combinatorial() as i64, arrangement_tau(&arr));
            prop_assert_eq!(arr.weak_combinatorics().pair_count(), arr.degree() * (arr.degree() - 1) / 2);
        }
    }

    #[test]
    fn lattice_survives_projectivities_and_relabeling(
        lines in line_strategy(),
        m in proptest::array::uniform3(proptest::array::uniform3(-3i64..=3)),
        shuffle in any::<u64>(),
    ) {
        prop_assume!(det3(&m) != 0);
        let Ok(arr) = LineArrangement::from_i64(&lines) else { return Ok(()) };
        let mut moved: Vec<[i64; 3]> = arr
            .lines
            .iter()
            .map(|l| {
                let l: Vec<i64> = l.iter().map(|c| i64::try_from(c).unwrap()).collect();
                std::array::from_fn(|j| (0..3).map(|i| l[i] * m[i][j]).sum())
            })
            .collect();
        use rand::seq::SliceRandom;
        moved.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let other = LineArrangement::from_i64(&moved).unwrap();
        prop_assert!(lattice_isomorphic(&arr, &other).unwrap());
        prop_assert_eq!(arr.lattice_fingerprint(), other.lattice_fingerprint());
        prop_assert_eq!(arr.tau_combinatorial(), other.tau_combinatorial());
    }

    #[test]
    fn planted_rational_roots_are_found(roots in proptest::collection::vec((-12i64..=12, 1i64..=6), 1..=4)) {
        let mut p = UniPoly::from_i64(&[1, 0, 1]);
        for &(a, b) in &roots {
            p = p.mul(&UniPoly::from_i64(&[-a, b]));
        }
        let found = rational_roots(&p, 100);
        for &(a, b) in &roots {
            prop_assert!(found.contains(&BigRational::new(a.into(), b.into())));
        }
        for r in &found {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn cuspidal_guarantee_is_total(d in 2u32..=120, r in 0u32..=60) {
        match cuspidal_guarantee(d, r) {
            Ok(s) if d % 2 == 0 => prop_assert_eq!(s.tag, GuaranteeTag::EvenDegree),
            Ok(s) => {
                prop_assert!(r <= (d - 1) / 2);
                let open = matches!(s.tag, GuaranteeTag::OpenCase | GuaranteeTag::ListedException | GuaranteeTag::None);
                prop_assert_eq!(s.guaranteed, !open);
            }
            Err(_) => prop_assert!(d % 2 == 1 && r > (d - 1) / 2),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_round_trip_byte_for_byte(seed in any::<u64>(), d in 3u32..=5) {
        let curve = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), d);
        let f = parse_poly(&curve.text).unwrap();
        if let Ok(a) = analyze(&f, &AnalysisOptions { seed, ..Default::default() }) {
            let json = to_json(&CurveReport::new(&curve.text, seed, &a, false));
            let back: CurveReport = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(to_json(&back), json);
        }
    }
}

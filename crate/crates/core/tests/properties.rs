use h90_core::backends::hilbert_symbol_int;
use h90_core::checks::{criterion_p2, criterion_podd, h90_holds, small_h90};
use h90_core::format::{model_from_text, model_to_text};
use h90_core::gfp::{Fp, Matrix};
use h90_core::synth::{gen_realizable, random_block_sizes, random_module, random_realizable_spec};
use h90_core::{validate_model, Subspace};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (prime(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p as i64, r * c)
            .prop_map(move |flat| Matrix::from_flat(Fp::new(p).unwrap(), r, c, &flat).unwrap())
    })
}

fn invertible(field: Fp, n: usize, seed: u64) -> Matrix {
    use rand::Rng;
    let mut rng = h90_core::synth::rng_from_seed(seed);
    loop {
        let flat: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..field.p() as i64)).collect();
        let m = Matrix::from_flat(field, n, n, &flat).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(m in matrix(6, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn row_rank_equals_column_rank(m in matrix(7, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in matrix(6, 7)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(4, 6), seed in any::<u64>()) {
        let field = a.field();
        let b = Matrix::from_flat(
            field,
            3,
            a.cols(),
            &(0..3 * a.cols())
                .map(|k| (seed.rotate_left(k as u32) % field.p() as u64) as i64)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let u = Subspace::span(field, a.cols(), &a.row_vectors());
        let w = Subspace::span(field, a.cols(), &b.row_vectors());
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && u.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn profile_accounts_for_dimension(p in prime(), seed in any::<u64>()) {
        let sizes = random_block_sizes(p, 12, seed);
        let module = random_module(p, &sizes, seed).unwrap();
        let profile = module.profile();
        prop_assert_eq!(profile.dim(), module.dim());
        prop_assert_eq!(module.decompose().profile, profile.clone());
        let fixed = module.fixed_part().dim();
        prop_assert_eq!(fixed, profile.block_count());
    }

    #[test]
    fn generation_is_deterministic(p in prime(), seed in any::<u64>()) {
        let spec = random_realizable_spec(p, 12, seed);
        let a = gen_realizable(&spec).unwrap();
        let b = gen_realizable(&spec).unwrap();
        prop_assert_eq!(model_to_text(&a), model_to_text(&b));
        prop_assert_eq!(model_from_text(&model_to_text(&a)).unwrap().fingerprint(), a.fingerprint());
    }

    #[test]
    fn realizable_models_closed_under_direct_sum(p in prime(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = gen_realizable(&random_realizable_spec(p, 8, s1)).unwrap();
        let b = gen_realizable(&random_realizable_spec(p, 8, s2)).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        prop_assert!(validate_model(&sum, true).passed());
        let both = h90_holds(&a).unwrap().passed() && h90_holds(&b).unwrap().passed();
        prop_assert_eq!(h90_holds(&sum).unwrap().passed(), both);
    }

    #[test]
    fn verdicts_survive_change_of_basis(p in prime(), seed in any::<u64>()) {
        let m = gen_realizable(&random_realizable_spec(p, 10, seed)).unwrap();
        let pa = invertible(m.field(), m.a_dim(), seed ^ 1);
        let rb = invertible(m.field(), m.b_dim(), seed ^ 2);
        let moved = m.change_basis(&pa, &rb).unwrap();
        prop_assert!(validate_model(&moved, true).passed());
        let h90 = h90_holds(&m).unwrap().verdict;
        prop_assert_eq!(h90_holds(&moved).unwrap().verdict, h90);
        prop_assert_eq!(small_h90(&moved).unwrap().verdict, h90);
        let crit = if p == 2 { criterion_p2(&moved) } else { criterion_podd(&moved) };
        prop_assert_eq!(crit.unwrap().verdict, h90);
    }

    #[test]
    fn hilbert_symbol_is_bimultiplicative(
        ell in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        a in 1i64..200,
        b in 1i64..200,
        c in 1i64..200,
        sa in any::<bool>(),
        sb in any::<bool>(),
    ) {
        let a = if sa { -a } else { a };
        let b = if sb { -b } else { b };
        let h = |x, y| hilbert_symbol_int(x, y, ell).unwrap();
        prop_assert_eq!(h(a, b * c), h(a, b) * h(a, c));
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a, -a), 1);
        if a != 1 {
            prop_assert_eq!(h(a, 1 - a), 1);
        }
    }
}

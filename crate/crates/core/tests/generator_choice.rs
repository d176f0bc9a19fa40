//! Replacing the generator `sigma` by `sigma^c` (`c` prime to `p`) must not
//! change any verdict: `(sigma^c - 1)A = (sigma - 1)A`, the norm is the same
//! sum, and `K_xi` is the kernel of a cup map scaled by `c`.

use h90_core::backends::{ff_build_tower, local_build_tower, AChoice};
use h90_core::checks::{
    check_length_lemma_all, check_sigmamin1, criterion_p2, criterion_podd, h90_holds,
    hs_equivalences, small_h90, summand_condition,
};
use h90_core::synth::{gen_freeform, gen_realizable, random_freeform_spec, random_realizable_spec, subseed};
use h90_core::{validate_model, CyclicModule, ExtensionModel, Verdict};

fn with_generator_power(m: &ExtensionModel, c: usize) -> ExtensionModel {
    ExtensionModel::new(
        CyclicModule::new(m.sigma().pow(c)).unwrap(),
        m.b_dim(),
        m.i().clone(),
        m.n().clone(),
        m.k_a().clone(),
        m.k_xi().clone(),
        m.flags(),
        format!("{} sigma^{}", m.provenance(), c),
    )
    .unwrap()
}

fn verdicts(m: &ExtensionModel) -> Vec<Verdict> {
    let opt = |r: h90_core::Result<h90_core::TheoremReport>| r.map(|r| r.verdict).unwrap_or(Verdict::Skipped);
    let crit = if m.p() == 2 { criterion_p2(m) } else { criterion_podd(m) };
    vec![
        validate_model(m, true).verdict,
        opt(h90_holds(m)),
        opt(small_h90(m)),
        opt(crit),
        opt(check_sigmamin1(m)),
        opt(check_length_lemma_all(m)),
        opt(summand_condition(m)),
        hs_equivalences(m.module()).verdict,
    ]
}

fn assert_invariant(m: &ExtensionModel) {
    let base = verdicts(m);
    for c in 2..m.p() as usize {
        let moved = with_generator_power(m, c);
        assert_eq!(moved.module().profile(), m.module().profile());
        assert_eq!(verdicts(&moved), base, "{} with sigma^{}", m.provenance(), c);
    }
}

#[test]
fn verdicts_do_not_depend_on_the_generator() {
    for p in [3u32, 5, 7] {
        for t in 0..60 {
            let seed = subseed(0x5eed ^ p as u64, t);
            assert_invariant(&gen_realizable(&random_realizable_spec(p, 14, seed)).unwrap());
            assert_invariant(&gen_freeform(&random_freeform_spec(p, 10, seed)).unwrap());
        }
    }
    for (p, q) in [(3, 7), (5, 11), (7, 8)] {
        for m in &ff_build_tower(p, q, 2).unwrap().models {
            assert_invariant(m);
        }
    }
    // p = 2 has no other generator; the map is the identity
    let t = local_build_tower(5, AChoice::U, 2, 6).unwrap();
    assert_eq!(verdicts(&with_generator_power(&t.models[0], 1)), verdicts(&t.models[0]));
}

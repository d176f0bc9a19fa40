use h90_core::backends::hilbert::norm_form_solvable;
use h90_core::backends::local::LocalExtension;
use h90_core::backends::padic::{is_prime, least_nonresidue};
use h90_core::backends::{
    cd_forward_check, ff_build_tower, hereditary_check, hilbert_symbol_int, hs_p2_ann_check,
    local_build_tower, real_build_tower, tower_consistency, AChoice, DegreeTower,
};
use h90_core::checks::{check_length_lemma_all, check_sigmamin1, criterion_p2, criterion_podd, h90_holds};
use h90_core::Subspace;

fn full_suite(t: &DegreeTower) {
    let consistency = tower_consistency(t);
    assert!(consistency.passed(), "{}: {}", t.descriptor, consistency);
    assert!(hereditary_check(t).unwrap().passed(), "{}", t.descriptor);
    let cd = cd_forward_check(t).unwrap();
    assert!(!cd.verdict.is_fail(), "{}: {}", t.descriptor, cd);
    for m in &t.models {
        let h90 = h90_holds(m).unwrap().verdict;
        assert!(check_sigmamin1(m).unwrap().passed(), "{}", m.provenance());
        assert!(check_length_lemma_all(m).unwrap().passed(), "{}", m.provenance());
        let crit = if m.p() == 2 {
            criterion_p2(m).unwrap()
        } else {
            criterion_podd(m).unwrap()
        };
        assert_eq!(crit.verdict, h90, "{}", m.provenance());
    }
}

#[test]
fn finite_field_towers() {
    for (p, q) in [(2, 3), (2, 5), (2, 9), (3, 7), (3, 4), (3, 13), (5, 11), (7, 8), (2, 49)] {
        let t = ff_build_tower(p, q, 3).unwrap();
        full_suite(&t);
        assert!(t.h90_verdicts().unwrap().iter().all(|v| v.is_pass()));
        if p == 2 {
            for n in 1..=3 {
                assert!(hs_p2_ann_check(&t, n).unwrap().passed());
            }
        }
    }
}

#[test]
fn real_tower() {
    let t = real_build_tower(5).unwrap();
    full_suite(&t);
    for n in 1..=5 {
        assert!(hs_p2_ann_check(&t, n).unwrap().passed());
        let m = t.model(n).unwrap();
        let rhs = m.norm_range().sum(m.k_a()).unwrap();
        assert!(rhs.is_full());
    }
}

#[test]
fn local_towers_all_small_primes() {
    for ell in (3..=97).filter(|&l| is_prime(l)) {
        for c in [AChoice::U, AChoice::Ell, AChoice::UEll] {
            let t = local_build_tower(ell, c, 3, 6).unwrap();
            full_suite(&t);
            for n in 1..=3 {
                let r = hs_p2_ann_check(&t, n).unwrap();
                assert!(r.passed(), "{} n={}: {}", t.descriptor, n, r);
            }
        }
    }
}

#[test]
fn local_norm_group_law() {
    // image of N on degree 1 = {b : (a, b) = 1}
    for ell in [3u64, 5, 7, 11, 13] {
        for c in [AChoice::U, AChoice::Ell, AChoice::UEll] {
            let t = local_build_tower(ell, c, 1, 6).unwrap();
            let m = &t.models[0];
            let a = c.value(ell);
            let u = least_nonresidue(ell) as i64;
            let l = ell as i64;
            let mut norms = Vec::new();
            for (b, class) in [(1, [0, 0]), (u, [1, 0]), (l, [0, 1]), (u * l, [1, 1])] {
                if hilbert_symbol_int(a, b, ell).unwrap() == 1 {
                    norms.push(class.to_vec());
                }
            }
            let expected = Subspace::span(m.field(), 2, &norms);
            assert_eq!(m.norm_range(), expected, "ell={} a={}", ell, a);
        }
    }
}

#[test]
fn local_degree_two_generators_span() {
    for ell in [3u64, 5, 7, 13, 97] {
        for c in [AChoice::U, AChoice::Ell, AChoice::UEll] {
            let x = LocalExtension::new(ell, c, 6).unwrap();
            let (e, f) = x.a2_gen;
            assert_eq!(x.k2e_class(&e, &x.e.from_int(f)).unwrap(), 1);
        }
    }
}

#[test]
fn hilbert_symbol_oracle_all_square_classes() {
    for (ell, k) in [(3u64, 6u32), (5, 6), (13, 4)] {
        let u = least_nonresidue(ell) as i64;
        let l = ell as i64;
        let classes = [1, u, l, u * l];
        for &a in &classes {
            for &b in &classes {
                let s = hilbert_symbol_int(a, b, ell).unwrap();
                assert_eq!(s == 1, norm_form_solvable(a, b, ell, k), "({}, {})_{}", a, b, ell);
            }
        }
    }
}

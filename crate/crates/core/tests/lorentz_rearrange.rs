use besovlab_core::corpus::CATALOG;
use besovlab_core::rearrange::hardy_identity_constant;
use besovlab_core::{
    corpus_entry, corpus_entry_shifted, distribution_value, equimeasurable, lorentz_norm, lp_norm, rearrange,
    riesz_pairing, weak_norm, weighted_integral, Content, GeometricSet, GridFunction, LevelPartition, LorentzParams,
};

fn grid_lorentz(f: &GridFunction, p0: f64, q0: f64, nu: &Content) -> f64 {
    lorentz_norm(f, &LorentzParams::new(p0, q0).unwrap(), nu, &LevelPartition::grid_values(f)).unwrap()
}

/// 2·1_A + 1_B with |A| = |B| = 1 on a 1-D grid.
fn two_step() -> GridFunction {
    GridFunction::sample(0.125, &[-1.0], &[3.0], |x| {
        if (0.0..1.0).contains(&x[0]) {
            2.0
        } else if (1.0..2.0).contains(&x[0]) {
            1.0
        } else {
            0.0
        }
    })
    .unwrap()
}

#[test]
fn layer_cake_is_exact_on_the_corpus() {
    for dim in 1..=2 {
        for name in CATALOG {
            let f = corpus_entry(name, dim, 32).unwrap();
            for p in [0.8, 1.0, 2.0, 3.5] {
                let l = grid_lorentz(&f, p, p, &Content::LebesgueVolume);
                let direct = lp_norm(&f, p).unwrap();
                assert!((l / direct - 1.0).abs() < 1e-10, "{name} n={dim} p={p}: {l} vs {direct}");
            }
        }
    }
}

#[test]
fn two_step_function_values() {
    let f = two_step();
    let leb = Content::LebesgueVolume;
    for (t, v) in [(0.5, 2.0), (1.5, 1.0), (2.5, 0.0)] {
        assert!((distribution_value(&f, t, &leb).unwrap() - v).abs() < 1e-12);
    }
    assert!((grid_lorentz(&f, 1.0, 1.0, &leb) - 3.0).abs() < 1e-12);
    assert!((weak_norm(&f, 1.0, &leb).unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn indicator_norms_are_content_powers() {
    // |E| = 4 with a 2 x 2 square
    let e = GeometricSet::axis_box(&[0.0, 0.0], &[2.0, 2.0]).unwrap();
    let f = GridFunction::indicator(&e, 0.125, &[-0.5, -0.5], &[2.5, 2.5]).unwrap();
    assert!((grid_lorentz(&f, 2.0, 3.0, &Content::LebesgueVolume) - 2.0).abs() < 1e-12);
    assert!((weak_norm(&f, 2.0, &Content::LebesgueVolume).unwrap() - 2.0).abs() < 1e-12);
    assert!((distribution_value(&f, 0.5, &Content::LebesgueVolume).unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(distribution_value(&f, 1.2, &Content::LebesgueVolume).unwrap(), 0.0);
}

#[test]
fn radial_weight_of_the_unit_plateau() {
    // μ_{1/2}([−1, 1]) = 2 R^{1−γ}/(1−γ) = 4
    let f = corpus_entry("plateau", 1, 64).unwrap();
    let nu = Content::RadialWeight { gamma: 0.5 };
    let v = distribution_value(&f, 1e-9, &nu).unwrap();
    assert!((v / 4.0 - 1.0).abs() < 0.02, "{v}");
    let unit = GridFunction::indicator(&GeometricSet::axis_box(&[-1.0], &[1.0]).unwrap(), 1.0 / 64.0, &[-1.5], &[1.5]).unwrap();
    let w = weighted_integral(&unit, 1.0, 0.5).unwrap();
    assert!((w / 4.0 - 1.0).abs() < 0.02, "{w}");
}

#[test]
fn weak_norm_never_exceeds_lorentz_norm() {
    for dim in 1..=2 {
        for name in CATALOG {
            let f = corpus_entry(name, dim, 32).unwrap();
            for nu in [Content::LebesgueVolume, Content::RadialWeight { gamma: 0.5 }] {
                for p0 in [1.0, 2.0] {
                    let weak = weak_norm(&f, p0, &nu).unwrap();
                    for r in [2.0, 4.0] {
                        let strong = grid_lorentz(&f, p0, r, &nu);
                        assert!(weak <= strong * (1.0 + 1e-12), "{name} {nu:?} p0={p0} r={r}");
                    }
                }
            }
        }
    }
}

#[test]
fn equimeasurable_within_a_cell_at_resolution_64() {
    for dim in 1..=2 {
        for name in CATALOG {
            let f = corpus_entry(name, dim, 64).unwrap();
            let eq = equimeasurable(&f, &rearrange(&f)).unwrap();
            assert!(eq.holds && eq.max_deviation <= f.cell_volume(), "{name} n={dim}: {eq:?}");
        }
    }
}

#[test]
fn rearranged_tent_is_its_own_trace() {
    let f = corpus_entry("tent", 1, 64).unwrap();
    let prof = rearrange(&f);
    let h = f.spacing();
    for (i, v) in f.values().iter().enumerate() {
        let x = f.center(i)[0];
        // compare away from the jump points of the profile
        let r = x.abs();
        if *v > 0.0 {
            assert!((prof.value_at(r + 0.25 * h) - v).abs() < 1e-12 || (prof.value_at(r - 0.25 * h) - v).abs() < 1e-12);
        }
    }
}

#[test]
fn riesz_pairs_and_radial_equality() {
    let names = CATALOG;
    let mut count = 0;
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let f = corpus_entry(a, 1, 64).unwrap();
            let g = corpus_entry(b, 1, 64).unwrap();
            let (direct, sharp) = riesz_pairing(&f, &g).unwrap();
            assert!(direct <= sharp * (1.0 + 1e-12), "{a}+{b}");
            if besovlab_core::corpus::is_radial(a) && besovlab_core::corpus::is_radial(b) {
                assert!((direct / sharp - 1.0).abs() < 1e-9, "{a}+{b}: {direct} vs {sharp}");
            }
            count += 1;
        }
    }
    let f = corpus_entry("two_bump", 1, 64).unwrap();
    let g = corpus_entry_shifted("plateau", 1, 64, &[0.125]).unwrap();
    let (direct, sharp) = riesz_pairing(&f, &g).unwrap();
    assert!(direct <= sharp);
    assert!(count + 1 >= 10);
    let zero = f.zeros_like();
    assert_eq!(riesz_pairing(&f, &zero).unwrap(), (0.0, 0.0));
}

#[test]
fn hardy_identity_for_the_bump() {
    // ∫ (f^#)^p |x|^{−pβ} = C ‖f‖^p_{L^{np/(n−pβ), p}}, C = n ω_n^{pβ/n}/(n − pβ), ω_1 = 2
    let (n, p, beta) = (1.0, 1.0, 0.3);
    let c = n * 2f64.powf(p * beta / n) / (n - p * beta);
    assert!((c / hardy_identity_constant(1, p, beta) - 1.0).abs() < 1e-14);
    let f = corpus_entry("bump", 1, 64).unwrap();
    let lhs = weighted_integral(&rearrange(&f), p, p * beta).unwrap();
    let rhs = c * grid_lorentz(&f, n * p / (n - p * beta), p, &Content::LebesgueVolume).powf(p);
    assert!((lhs / rhs - 1.0).abs() < 0.03, "{lhs} vs {rhs}");
}

#[test]
fn hardy_identity_constant_in_two_dimensions() {
    // for the unit disc: ∫_{B_1} |x|^{−s} = 2π/(2 − s), and ‖1_B‖_{L^{a,p}} = π^{1/a}
    let (p, beta) = (1.5_f64, 0.4_f64);
    let s = p * beta;
    let a = 2.0 * p / (2.0 - s);
    let lhs = 2.0 * std::f64::consts::PI / (2.0 - s);
    let rhs = hardy_identity_constant(2, p, beta) * std::f64::consts::PI.powf(p / a);
    assert!((lhs / rhs - 1.0).abs() < 1e-12);
}

#[test]
fn rearranging_increases_the_hardy_integral() {
    for name in CATALOG {
        let f = corpus_entry(name, 2, 32).unwrap();
        let direct = weighted_integral(&f, 1.0, 0.6).unwrap();
        let sharp = weighted_integral(&rearrange(&f), 1.0, 0.6).unwrap();
        assert!(direct <= sharp * (1.0 + 1e-9), "{name}: {direct} > {sharp}");
    }
}

#[test]
fn profile_of_scaled_function_dominates() {
    let f = corpus_entry("two_bump", 2, 32).unwrap();
    let a = rearrange(&f);
    let b = rearrange(&f.scaled(2.0));
    for r in [0.0, 0.1, 0.3, 0.6, 0.9, 1.2] {
        assert!(a.value_at(r) <= b.value_at(r));
    }
}

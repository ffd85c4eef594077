use proptest::prelude::*;

use besovlab_core::{
    besov_seminorm, dilate, distribution_value, equimeasurable, lorentz_norm, lp_norm, rearrange, riesz_pairing,
    weak_norm, BesovParams, BesovQuadConfig, Content, GeometricSet, GridFunction, LevelPartition, LorentzParams,
};

/// A grid function with the given interior values surrounded by one layer of zeros.
fn padded(dim: usize, side: usize, spacing: f64, interior: &[f64]) -> GridFunction {
    let full = side + 2;
    let shape = vec![full; dim];
    let total = full.pow(dim as u32);
    let mut values = vec![0.0; total];
    let mut k = 0;
    for lin in 0..total {
        let (i, rest) = (lin % full, lin / full);
        let (j, l) = (rest % full, rest / full);
        let inner = |c: usize| (1..=side).contains(&c);
        let ok = inner(i) && (dim < 2 || inner(j)) && (dim < 3 || inner(l));
        if ok {
            values[lin] = interior[k];
            k += 1;
        }
    }
    let origin = vec![-(full as f64) * spacing / 2.0; dim];
    GridFunction::new(dim, spacing, &origin, &shape, values).unwrap()
}

fn grid_function() -> impl Strategy<Value = GridFunction> {
    (1usize..=2, 0.02f64..0.5).prop_flat_map(|(dim, spacing)| {
        let side_range = if dim == 1 { 3usize..40 } else { 3usize..9 };
        side_range.prop_flat_map(move |side| {
            let cells = side.pow(dim as u32);
            // snap values to a coarse lattice so ties and zeros occur
            prop::collection::vec((-8i32..=8).prop_map(|v| v as f64 / 4.0), cells)
                .prop_map(move |vals| padded(dim, side, spacing, &vals))
        })
    })
}

fn nonzero_grid_function() -> impl Strategy<Value = GridFunction> {
    grid_function().prop_filter("nonzero", |f| !f.is_zero())
}

fn small_quad(dim: usize) -> BesovQuadConfig {
    BesovQuadConfig {
        radial_points: 24,
        angular_points: if dim == 1 { 2 } else { 8 },
        ..BesovQuadConfig::for_dim(dim)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn besov_is_absolutely_homogeneous(f in nonzero_grid_function(), c in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0]) {
        let dim = f.dim();
        for (b, p, q) in [(0.3, 1.0, 1.0), (0.2, 2.0, 1.5)] {
            let params = BesovParams::new(b, p, q, dim).unwrap();
            let a = besov_seminorm(&f, &params, &small_quad(dim)).unwrap();
            let s = besov_seminorm(&f.scaled(c), &params, &small_quad(dim)).unwrap();
            prop_assert!(close(s, c.abs() * a, 1e-10), "{} vs {}", s, c.abs() * a);
        }
    }

    #[test]
    fn quasi_norm_homogeneity_below_one(f in nonzero_grid_function(), c in 0.1f64..3.0) {
        let dim = f.dim();
        let params = BesovParams::new(0.5, 0.9, 0.9, dim)
            .or_else(|_| BesovParams::new(0.7, 0.9, 0.9, dim)).unwrap();
        let a = besov_seminorm(&f, &params, &small_quad(dim)).unwrap();
        let s = besov_seminorm(&f.scaled(c), &params, &small_quad(dim)).unwrap();
        prop_assert!(close(s, c * a, 1e-10));
    }

    #[test]
    fn besov_dilation_is_exactly_covariant(f in nonzero_grid_function(), lambda in prop_oneof![Just(0.5), Just(2.0), Just(3.0)]) {
        let dim = f.dim();
        let params = BesovParams::new(0.3, 1.0, 1.0, dim).unwrap();
        let a = besov_seminorm(&f, &params, &small_quad(dim)).unwrap();
        let b = besov_seminorm(&dilate(&f, lambda).unwrap(), &params, &small_quad(dim)).unwrap();
        let expected = lambda.powf(0.3 - dim as f64);
        prop_assert!(close(b / a, expected, 1e-9), "{} vs {}", b / a, expected);
    }

    #[test]
    fn superlevel_sets_are_nested(f in grid_function(), t1 in 0.0f64..2.0, dt in 0.0f64..1.0) {
        let t2 = t1 + dt;
        let lower = f.superlevel_cells(t1);
        let upper = f.superlevel_cells(t2);
        prop_assert!(upper.cells.iter().all(|c| lower.cells.binary_search(c).is_ok()));
        prop_assert!(upper.volume <= lower.volume);
    }

    #[test]
    fn distribution_is_nonincreasing(f in nonzero_grid_function(), gamma in 0.0f64..0.9) {
        let part = LevelPartition::grid_values(&f);
        for nu in [Content::LebesgueVolume, Content::RadialWeight { gamma }] {
            let mut prev = f64::INFINITY;
            for t in std::iter::once(1e-12).chain(part.levels.iter().copied()) {
                let v = distribution_value(&f, t, &nu).unwrap();
                prop_assert!(v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn weak_norm_bounded_by_lorentz(f in nonzero_grid_function(), p0 in 0.5f64..3.0, r in 0.5f64..6.0, gamma in 0.0f64..0.9) {
        let part = LevelPartition::grid_values(&f);
        for nu in [Content::LebesgueVolume, Content::RadialWeight { gamma }] {
            let weak = weak_norm(&f, p0, &nu).unwrap();
            let strong = lorentz_norm(&f, &LorentzParams::new(p0, r).unwrap(), &nu, &part).unwrap();
            prop_assert!(weak <= strong * (1.0 + 1e-12), "{} > {}", weak, strong);
        }
    }

    #[test]
    fn layer_cake(f in nonzero_grid_function(), p in 0.5f64..4.0) {
        let l = lorentz_norm(&f, &LorentzParams::new(p, p).unwrap(), &Content::LebesgueVolume, &LevelPartition::grid_values(&f)).unwrap();
        prop_assert!(close(l, lp_norm(&f, p).unwrap(), 1e-10));
    }

    #[test]
    fn lorentz_is_homogeneous(f in nonzero_grid_function(), c in 0.1f64..5.0, p0 in 0.5f64..3.0, q0 in 0.5f64..3.0) {
        let lp = LorentzParams::new(p0, q0).unwrap();
        let a = lorentz_norm(&f, &lp, &Content::LebesgueVolume, &LevelPartition::grid_values(&f)).unwrap();
        let g = f.scaled(c);
        let b = lorentz_norm(&g, &lp, &Content::LebesgueVolume, &LevelPartition::grid_values(&g)).unwrap();
        prop_assert!(close(b, c * a, 1e-10));
    }

    #[test]
    fn rearrangement_is_equimeasurable(f in grid_function()) {
        let eq = equimeasurable(&f, &rearrange(&f)).unwrap();
        prop_assert!(eq.holds, "{:?}", eq);
    }

    #[test]
    fn riesz_inequality(f in grid_function(), shift in 1usize..50) {
        // g: the interior magnitudes of f, rotated
        let interior: Vec<usize> = (0..f.values().len()).filter(|i| is_interior(&f, *i)).collect();
        let mut vals = vec![0.0; f.values().len()];
        for (k, i) in interior.iter().enumerate() {
            vals[*i] = f.values()[interior[(k + shift) % interior.len()]].abs();
        }
        let g = GridFunction::new(f.dim(), f.spacing(), f.origin(), f.shape(), vals).unwrap();
        let (direct, sharp) = riesz_pairing(&f, &g).unwrap();
        prop_assert!(direct <= sharp * (1.0 + 1e-12), "{} > {}", direct, sharp);
    }

    #[test]
    fn rearrangement_preserves_order(f in grid_function(), c in 1.0f64..3.0) {
        let a = rearrange(&f);
        let b = rearrange(&f.scaled(c));
        for r in [0.0, 0.05, 0.2, 0.5, 1.0, 2.0] {
            prop_assert!(a.value_at(r) <= b.value_at(r));
        }
    }

    #[test]
    fn disjoint_union_volume_is_additive(x in -3.0f64..3.0, r1 in 0.1f64..1.0, r2 in 0.1f64..1.0, gap in 0.01f64..1.0) {
        let a = GeometricSet::ball(&[x, 0.0], r1).unwrap();
        let b = GeometricSet::ball(&[x + r1 + r2 + gap, 0.0], r2).unwrap();
        let u = GeometricSet::disjoint_union(vec![a.clone(), b.clone()]).unwrap();
        prop_assert!(close(u.volume(), a.volume() + b.volume(), 1e-14));
        let leb = Content::LebesgueVolume;
        prop_assert!(close(leb.evaluate_set(&u).unwrap(), leb.evaluate_set(&a).unwrap() + leb.evaluate_set(&b).unwrap(), 1e-14));
        let mu = Content::RadialWeight { gamma: 0.5 };
        let sum = mu.evaluate_set(&a).unwrap() + mu.evaluate_set(&b).unwrap();
        prop_assert!(close(mu.evaluate_set(&u).unwrap(), sum, 1e-9));
    }
}

fn is_interior(f: &GridFunction, i: usize) -> bool {
    let idx = f.multi_index(i);
    (0..f.dim()).all(|a| idx[a] > 0 && idx[a] + 1 < f.shape()[a])
}

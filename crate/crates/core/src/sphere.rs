//! Unit-sphere constants and angular quadrature rules.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Volume of the unit ball in ℝⁿ.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => panic!("unsupported dimension {n}"),
    }
}

/// Surface measure of the unit sphere Sⁿ⁻¹ (counting measure for n = 1).
pub fn sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Radius of the origin-centred ball with the given volume.
pub fn ball_radius_for_volume(n: usize, volume: f64) -> f64 {
    (volume / unit_ball_volume(n)).powf(1.0 / n as f64)
}

/// A set of unit directions with quadrature weights summing to |Sⁿ⁻¹|.
#[derive(Debug, Clone)]
pub struct AngularRule {
    pub directions: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl AngularRule {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

const GOLDEN: f64 = 1.618_033_988_749_895;

/// Equal-weight direction sets used by the Besov quadrature.
///
/// n = 1 always uses {−1, +1}. n = 2 uses `points` equispaced angles. n = 3
/// uses the octahedron (6), icosahedron (12) or dodecahedron (20) vertex
/// designs; any other count falls back to a spherical Fibonacci lattice.
pub fn equal_weight_directions(n: usize, points: usize) -> Result<AngularRule> {
    if points == 0 {
        return Err(Error::InvalidParams("angular_points must be >= 1".into()));
    }
    let directions: Vec<[f64; 3]> = match n {
        1 => vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        2 => (0..points)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / points as f64;
                [t.cos(), t.sin(), 0.0]
            })
            .collect(),
        3 => match points {
            6 => octahedron(),
            12 => icosahedron(),
            20 => dodecahedron(),
            m => fibonacci_sphere(m),
        },
        _ => return Err(Error::InvalidParams(format!("dimension {n} not in 1..=3"))),
    };
    let w = sphere_area(n) / directions.len() as f64;
    let weights = vec![w; directions.len()];
    Ok(AngularRule { directions, weights })
}

fn normalized(v: [f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

fn octahedron() -> Vec<[f64; 3]> {
    vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
}

fn icosahedron() -> Vec<[f64; 3]> {
    let mut v = Vec::with_capacity(12);
    for &a in &[1.0, -1.0] {
        for &b in &[GOLDEN, -GOLDEN] {
            v.push(normalized([0.0, a, b]));
            v.push(normalized([a, b, 0.0]));
            v.push(normalized([b, 0.0, a]));
        }
    }
    v
}

fn dodecahedron() -> Vec<[f64; 3]> {
    let mut v = Vec::with_capacity(20);
    for &a in &[1.0, -1.0] {
        for &b in &[1.0, -1.0] {
            for &c in &[1.0, -1.0] {
                v.push(normalized([a, b, c]));
            }
        }
    }
    let inv = 1.0 / GOLDEN;
    for &a in &[inv, -inv] {
        for &b in &[GOLDEN, -GOLDEN] {
            v.push(normalized([0.0, a, b]));
            v.push(normalized([a, b, 0.0]));
            v.push(normalized([b, 0.0, a]));
        }
    }
    v
}

fn fibonacci_sphere(m: usize) -> Vec<[f64; 3]> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Product rule over the sphere for integrands that may be sharply peaked.
///
/// n = 1: {±1}. n = 2: composite Gauss–Legendre in the angle with `level`
/// panels of 8 nodes. n = 3: Gauss–Legendre in cos φ (8·level nodes) times
/// 16·level equispaced azimuths.
pub fn product_rule(n: usize, level: usize) -> AngularRule {
    let level = level.max(1);
    match n {
        1 => AngularRule {
            directions: vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
            weights: vec![1.0, 1.0],
        },
        2 => {
            let (gx, gw) = gauss_legendre(8);
            let panel = 2.0 * PI / level as f64;
            let mut directions = Vec::with_capacity(8 * level);
            let mut weights = Vec::with_capacity(8 * level);
            for k in 0..level {
                let a = panel * k as f64;
                for (x, w) in gx.iter().zip(&gw) {
                    let t = a + 0.5 * panel * (x + 1.0);
                    directions.push([t.cos(), t.sin(), 0.0]);
                    weights.push(0.5 * panel * w);
                }
            }
            AngularRule { directions, weights }
        }
        3 => {
            let (zx, zw) = gauss_legendre(8 * level);
            let naz = 16 * level;
            let mut directions = Vec::with_capacity(zx.len() * naz);
            let mut weights = Vec::with_capacity(zx.len() * naz);
            for (z, wz) in zx.iter().zip(&zw) {
                let r = (1.0 - z * z).sqrt();
                for j in 0..naz {
                    let phi = 2.0 * PI * (j as f64 + 0.5) / naz as f64;
                    directions.push([r * phi.cos(), r * phi.sin(), *z]);
                    weights.push(wz * 2.0 * PI / naz as f64);
                }
            }
            AngularRule { directions, weights }
        }
        _ => panic!("unsupported dimension {n}"),
    }
}

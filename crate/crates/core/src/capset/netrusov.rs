//! Upper bounds on the Netrusov content
//!
//! ```text
//! H^{(ε)}_{d,θ}(E) = inf ( Σ_i (m_i 2^{−id})^θ )^{1/θ}
//! ```
//!
//! over coverings of E by balls of dyadic radii 2^{−i} ≤ min(ε, 1), m_i the
//! number of balls of radius 2^{−i}. The bound returned is the minimum over a
//! finite, deterministic family of coverings:
//!
//! * one ball around the whole set;
//! * one ball per component;
//! * cube lattices of side 2r/√n (each cube sits in the radius-r ball about its
//!   centre), for the whole set and for each component separately;
//! * per-component mixtures of the above, searched exhaustively when there are
//!   at most 10⁵ combinations and by coordinate descent otherwise.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{norm, sub, GeometricSet, Point, Shape};

/// Cap on the number of balls in a single lattice covering.
pub const MAX_LATTICE_BALLS: f64 = 1e6;

const MAX_COMBINATIONS: usize = 100_000;

/// Ball counts per dyadic index i.
type Counts = BTreeMap<u32, u64>;

fn content(counts: &Counts, d: f64, theta: f64) -> f64 {
    counts
        .iter()
        .map(|(i, m)| (*m as f64 * 2f64.powf(-(*i as f64) * d)).powf(theta))
        .sum::<f64>()
        .powf(1.0 / theta)
}

fn merge(a: &Counts, b: &Counts) -> Counts {
    let mut out = a.clone();
    for (i, m) in b {
        *out.entry(*i).or_insert(0) += m;
    }
    out
}

/// Smallest admissible dyadic index: 2^{−i} ≤ min(eps, 1).
fn first_index(eps: Option<f64>) -> u32 {
    match eps {
        None => 0,
        Some(e) if e >= 1.0 => 0,
        Some(e) => (-e.log2()).ceil().max(0.0) as u32,
    }
}

/// Dyadic index of the single ball of radius ≥ `radius`, if admissible.
fn single_ball(radius: f64, i_min: u32) -> Option<Counts> {
    if radius > 2f64.powi(-(i_min as i32)) {
        return None;
    }
    // largest i with 2^{−i} ≥ radius
    let i = if radius > 0.0 { (-radius.log2()).floor().max(i_min as f64) as u32 } else { i_min };
    Some(Counts::from([(i, 1)]))
}

/// Radius of the smallest ball about `center` containing `shape`.
fn reach(center: &Point, shape: &Shape) -> f64 {
    match shape {
        Shape::Ball(b) => norm(&sub(center, &b.center), b.dim) + b.radius,
        Shape::AxisBox(b) => (0..b.dim)
            .map(|a| {
                let e = (center[a] - b.lo[a]).abs().max((b.hi[a] - center[a]).abs());
                e * e
            })
            .sum::<f64>()
            .sqrt(),
    }
}

fn box_center(lo: &Point, hi: &Point) -> Point {
    [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])]
}

/// Number of lattice cubes (side 2r/√n) whose centre lies within r of the set.
fn lattice_count(shapes: &[Shape], dim: usize, r: f64) -> Result<u64> {
    let side = 2.0 * r / (dim as f64).sqrt();
    let mut lo = [0.0; 3];
    let mut hi = [0.0; 3];
    for a in 0..dim {
        lo[a] = f64::INFINITY;
        hi[a] = f64::NEG_INFINITY;
    }
    for s in shapes {
        let (l, h) = s.bounding_box();
        for a in 0..dim {
            lo[a] = lo[a].min(l[a]);
            hi[a] = hi[a].max(h[a]);
        }
    }
    let mut from = [0i64; 3];
    let mut to = [0i64; 3];
    let mut total = 1.0;
    for a in 0..dim {
        from[a] = ((lo[a] - r) / side).floor() as i64;
        to[a] = ((hi[a] + r) / side).ceil() as i64;
        total *= (to[a] - from[a] + 1) as f64;
    }
    if total > MAX_LATTICE_BALLS * 4.0 {
        return Err(Error::TooCoarse(format!(
            "a lattice covering of radius {r} would scan {total:.0} cells (limit {})",
            MAX_LATTICE_BALLS * 4.0
        )));
    }
    let mut count = 0u64;
    for j2 in from[2]..=to[2] {
        for j1 in from[1]..=to[1] {
            for j0 in from[0]..=to[0] {
                let c = [
                    (j0 as f64 + 0.5) * side,
                    if dim > 1 { (j1 as f64 + 0.5) * side } else { 0.0 },
                    if dim > 2 { (j2 as f64 + 0.5) * side } else { 0.0 },
                ];
                if shapes.iter().any(|s| s.distance(&c) <= r) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Lattice coverings of `shapes` for every admissible radius whose cell scan
/// stays within the limit.
fn lattice_options(shapes: &[Shape], dim: usize, i_min: u32, span: f64) -> Vec<Counts> {
    let mut out = Vec::new();
    let mut i = i_min;
    loop {
        let r = 2f64.powi(-(i as i32));
        match lattice_count(shapes, dim, r) {
            Ok(m) => out.push(Counts::from([(i, m)])),
            Err(_) => break,
        }
        // once the lattice is much finer than the set, further refinement only adds balls
        if r < span / 64.0 || i > i_min + 40 {
            break;
        }
        i += 1;
    }
    out
}

/// An upper bound on H^{(eps)}_{d,θ}(E); `eps = None` means ε = ∞.
pub fn netrusov_upper(set: &GeometricSet, d: f64, theta: f64, eps: Option<f64>) -> Result<f64> {
    if !(d > 0.0 && d.is_finite() && theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidParams(format!("d = {d} and theta = {theta} must be positive")));
    }
    if let Some(e) = eps {
        if !(e > 0.0) {
            return Err(Error::InvalidParams(format!("eps = {e} must be positive")));
        }
    }
    let shapes = set.members();
    if shapes.is_empty() {
        return Ok(0.0);
    }
    let dim = set.dim();
    let i_min = first_index(eps);
    let span = set.diameter();

    let mut best = f64::INFINITY;
    let mut consider = |c: &Counts| {
        let v = content(c, d, theta);
        if v < best {
            best = v;
        }
    };

    let (lo, hi) = set.bounding_box().expect("nonempty");
    let center = box_center(&lo, &hi);
    let whole = match shapes.as_slice() {
        [Shape::Ball(b)] => b.radius,
        _ => shapes.iter().map(|s| reach(&center, s)).fold(0.0, f64::max),
    };
    if let Some(c) = single_ball(whole, i_min) {
        consider(&c);
    }
    for c in lattice_options(&shapes, dim, i_min, span) {
        consider(&c);
    }

    let per_component: Vec<Vec<Counts>> = shapes
        .iter()
        .map(|s| {
            let (l, h) = s.bounding_box();
            let mut opts = Vec::new();
            let own = match s {
                Shape::Ball(b) => b.radius,
                Shape::AxisBox(_) => reach(&box_center(&l, &h), s),
            };
            if let Some(c) = single_ball(own, i_min) {
                opts.push(c);
            }
            let own_span = norm(&sub(&h, &l), dim);
            opts.extend(lattice_options(std::slice::from_ref(s), dim, i_min, own_span));
            opts
        })
        .collect();
    if per_component.iter().all(|o| !o.is_empty()) && shapes.len() > 1 {
        let combos = per_component
            .iter()
            .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
            .unwrap_or(usize::MAX);
        if combos <= MAX_COMBINATIONS {
            let mut choice = vec![0usize; shapes.len()];
            loop {
                let total = choice
                    .iter()
                    .enumerate()
                    .fold(Counts::new(), |acc, (k, j)| merge(&acc, &per_component[k][*j]));
                consider(&total);
                // odometer increment
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < per_component[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        } else {
            let mut choice = vec![0usize; shapes.len()];
            let eval = |ch: &[usize]| {
                let total = ch
                    .iter()
                    .enumerate()
                    .fold(Counts::new(), |acc, (k, j)| merge(&acc, &per_component[k][*j]));
                (content(&total, d, theta), total)
            };
            let (mut current, mut counts) = eval(&choice);
            loop {
                let mut improved = false;
                for k in 0..choice.len() {
                    for j in 0..per_component[k].len() {
                        let old = choice[k];
                        choice[k] = j;
                        let (v, c) = eval(&choice);
                        if v < current {
                            current = v;
                            counts = c;
                            improved = true;
                        } else {
                            choice[k] = old;
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
            consider(&counts);
        }
    } else if shapes.len() == 1 {
        for c in &per_component[0] {
            consider(c);
        }
    }

    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::TooCoarse(format!(
            "no covering with radius <= {} fits within {MAX_LATTICE_BALLS:.0} balls",
            2f64.powi(-(i_min as i32))
        )))
    }
}

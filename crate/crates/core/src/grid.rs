//! Piecewise-constant functions on uniform grids and their superlevel sets.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{norm, sub, GeometricSet, Point};
use crate::sphere::ball_radius_for_volume;

/// A compactly supported function sampled at cell centres of a uniform grid.
///
/// The function is read as constant on each cell. Axis 0 varies fastest in
/// `values`. Every nonzero sample sits strictly inside the box: the outermost
/// layer of cells on each face is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    dim: usize,
    spacing: f64,
    origin: Point,
    shape: [usize; 3],
    values: Vec<f64>,
}

impl GridFunction {
    /// `origin` is the centre of the first cell; `shape` lists cells per axis.
    pub fn new(dim: usize, spacing: f64, origin: &[f64], shape: &[usize], values: Vec<f64>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        if origin.len() != dim || shape.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "origin/shape lengths {}/{} for dimension {dim}",
                origin.len(),
                shape.len()
            )));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacing {spacing} must be positive")));
        }
        let mut sh = [1usize; 3];
        sh[..dim].copy_from_slice(shape);
        if sh[..dim].iter().any(|&s| s < 3) {
            return Err(Error::InvalidGrid("need at least 3 cells per axis".into()));
        }
        let len: usize = sh.iter().product();
        if values.len() != len {
            return Err(Error::InvalidGrid(format!("{} values for {len} cells", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("sample value {v}")));
        }
        let mut o = [0.0; 3];
        o[..dim].copy_from_slice(origin);
        let g = Self {
            dim,
            spacing,
            origin: o,
            shape: sh,
            values,
        };
        for (i, v) in g.values.iter().enumerate() {
            if *v != 0.0 && g.on_boundary(i) {
                return Err(Error::InvalidGrid(format!(
                    "nonzero sample at boundary cell {:?}; a zero padding layer is required",
                    g.multi_index(i)
                )));
            }
        }
        Ok(g)
    }

    /// Samples `f` at the cell centres of the grid covering `[lo, hi]` with
    /// cells of size `spacing` whose edges start at `lo`.
    pub fn sample<F: Fn(&Point) -> f64>(spacing: f64, lo: &[f64], hi: &[f64], f: F) -> Result<Self> {
        let dim = lo.len();
        if hi.len() != dim {
            return Err(Error::DimensionMismatch("lo/hi length mismatch".into()));
        }
        let shape: Vec<usize> = lo
            .iter()
            .zip(hi)
            .map(|(a, b)| ((b - a) / spacing - 1e-9).ceil().max(1.0) as usize)
            .collect();
        let origin: Vec<f64> = lo.iter().map(|a| a + 0.5 * spacing).collect();
        let mut sh = [1usize; 3];
        sh[..dim].copy_from_slice(&shape);
        let mut o = [0.0; 3];
        o[..dim].copy_from_slice(&origin);
        let len: usize = sh.iter().product();
        let mut values = Vec::with_capacity(len);
        for i2 in 0..sh[2] {
            for i1 in 0..sh[1] {
                for i0 in 0..sh[0] {
                    let x = [
                        o[0] + i0 as f64 * spacing,
                        if dim > 1 { o[1] + i1 as f64 * spacing } else { 0.0 },
                        if dim > 2 { o[2] + i2 as f64 * spacing } else { 0.0 },
                    ];
                    values.push(f(&x));
                }
            }
        }
        Self::new(dim, spacing, &origin, &shape, values)
    }

    /// Grid with `2·half_cells + 1` cells per axis, one cell centred on the origin.
    pub fn sample_centered<F: Fn(&Point) -> f64>(dim: usize, spacing: f64, half_cells: usize, f: F) -> Result<Self> {
        let a = (half_cells as f64 + 0.5) * spacing;
        let lo = vec![-a; dim];
        let hi = vec![a; dim];
        Self::sample(spacing, &lo, &hi, f)
    }

    /// Digitised indicator of `set` (cell-centre membership).
    pub fn indicator(set: &GeometricSet, spacing: f64, lo: &[f64], hi: &[f64]) -> Result<Self> {
        Self::sample(spacing, lo, hi, |x| if set.contains(x) { 1.0 } else { 0.0 })
    }

    pub fn zeros_like(&self) -> Self {
        Self {
            values: vec![0.0; self.values.len()],
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin[..self.dim]
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape[..self.dim]
    }

    pub(crate) fn shape3(&self) -> [usize; 3] {
        self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dim as i32)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    pub fn multi_index(&self, i: usize) -> [usize; 3] {
        let i0 = i % self.shape[0];
        let r = i / self.shape[0];
        [i0, r % self.shape[1], r / self.shape[1]]
    }

    pub fn linear_index(&self, m: [usize; 3]) -> usize {
        m[0] + self.shape[0] * (m[1] + self.shape[1] * m[2])
    }

    /// Centre of cell `i`.
    pub fn center(&self, i: usize) -> Point {
        let m = self.multi_index(i);
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.origin[a] + m[a] as f64 * self.spacing;
        }
        x
    }

    fn on_boundary(&self, i: usize) -> bool {
        let m = self.multi_index(i);
        (0..self.dim).any(|a| m[a] == 0 || m[a] + 1 == self.shape[a])
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.dim == other.dim
            && self.spacing == other.spacing
            && self.origin == other.origin
            && self.shape == other.shape
    }

    /// Pointwise map; the result must keep the zero padding (true whenever `f(0) = 0`).
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        Self::new(
            self.dim,
            self.spacing,
            self.origin(),
            self.shape(),
            self.values.iter().map(|v| f(*v)).collect(),
        )
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| c * v).collect(),
            ..self.clone()
        }
    }

    /// Number of nonzero cells.
    pub fn support_cells(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    /// Per-axis inclusive index range of the nonzero cells, `None` for the zero function.
    pub fn support_index_box(&self) -> Option<([usize; 3], [usize; 3])> {
        let mut lo = [usize::MAX; 3];
        let mut hi = [0usize; 3];
        let mut any = false;
        for (i, v) in self.values.iter().enumerate() {
            if *v != 0.0 {
                any = true;
                let m = self.multi_index(i);
                for a in 0..3 {
                    lo[a] = lo[a].min(m[a]);
                    hi[a] = hi[a].max(m[a]);
                }
            }
        }
        any.then_some((lo, hi))
    }

    /// Diagonal of the box of nonzero cells (cell extents included).
    pub fn support_diameter(&self) -> f64 {
        match self.support_index_box() {
            None => 0.0,
            Some((lo, hi)) => (0..self.dim)
                .map(|a| {
                    let e = (hi[a] - lo[a] + 1) as f64 * self.spacing;
                    e * e
                })
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// The set `{|f| > t}` as cells, with its volume and, when recognisable,
    /// a ball/box (or disjoint union of those) approximation.
    pub fn superlevel_set(&self, t: f64) -> SuperlevelSet {
        let mut s = self.superlevel_cells(t);
        s.approx = if s.cells.is_empty() {
            Some(GeometricSet::empty(self.dim))
        } else {
            recognize(self, &s.cells)
        };
        s
    }

    /// Like [`superlevel_set`](Self::superlevel_set) without the geometric recognition.
    pub fn superlevel_cells(&self, t: f64) -> SuperlevelSet {
        let cells: Vec<usize> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > t)
            .map(|(i, _)| i)
            .collect();
        let volume = cells.len() as f64 * self.cell_volume();
        SuperlevelSet {
            dim: self.dim,
            threshold: t,
            cells,
            volume,
            approx: None,
        }
    }
}

/// x ↦ f(λx), sampled on the grid whose cell centres are the original
/// centres divided by λ.
///
/// Every new sample point is the image of an old one, so nearest-sample
/// resampling is exact and the values are copied unchanged; only the spacing
/// and origin are rescaled by 1/λ.
pub fn dilate(f: &GridFunction, lambda: f64) -> Result<GridFunction> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParams(format!("dilation factor {lambda} must be positive")));
    }
    let mut g = f.clone();
    g.spacing = f.spacing / lambda;
    for a in 0..f.dim {
        g.origin[a] = f.origin[a] / lambda;
    }
    Ok(g)
}

/// Cells of a superlevel set `{|f| > t}`.
#[derive(Debug, Clone)]
pub struct SuperlevelSet {
    pub dim: usize,
    pub threshold: f64,
    /// Linear indices into the source grid, ascending.
    pub cells: Vec<usize>,
    /// Lebesgue volume: cell count × spacingⁿ.
    pub volume: f64,
    /// Geometric stand-in for capacity and perimeter evaluation.
    pub approx: Option<GeometricSet>,
}

impl SuperlevelSet {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_subset_of(&self, other: &SuperlevelSet) -> bool {
        // both sorted
        let mut j = 0;
        for c in &self.cells {
            while j < other.cells.len() && other.cells[j] < *c {
                j += 1;
            }
            if j == other.cells.len() || other.cells[j] != *c {
                return false;
            }
        }
        true
    }
}

fn components(f: &GridFunction, cells: &[usize]) -> Vec<Vec<usize>> {
    let mut member = vec![false; f.len()];
    for &c in cells {
        member[c] = true;
    }
    let mut seen = vec![false; f.len()];
    let mut out = Vec::new();
    let sh = f.shape;
    for &start in cells {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(c) = queue.pop_front() {
            comp.push(c);
            let m = f.multi_index(c);
            for a in 0..f.dim {
                for delta in [-1i64, 1] {
                    let v = m[a] as i64 + delta;
                    if v < 0 || v >= sh[a] as i64 {
                        continue;
                    }
                    let mut nm = m;
                    nm[a] = v as usize;
                    let nb = f.linear_index(nm);
                    if member[nb] && !seen[nb] {
                        seen[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn recognize(f: &GridFunction, cells: &[usize]) -> Option<GeometricSet> {
    let comps = components(f, cells);
    let mut parts = Vec::with_capacity(comps.len());
    for comp in &comps {
        parts.push(recognize_component(f, comp)?);
    }
    if parts.len() == 1 {
        parts.pop()
    } else {
        GeometricSet::disjoint_union(parts).ok()
    }
}

fn recognize_component(f: &GridFunction, comp: &[usize]) -> Option<GeometricSet> {
    let s = f.spacing;
    let dim = f.dim;
    let mut lo = [usize::MAX; 3];
    let mut hi = [0usize; 3];
    for &c in comp {
        let m = f.multi_index(c);
        for a in 0..dim {
            lo[a] = lo[a].min(m[a]);
            hi[a] = hi[a].max(m[a]);
        }
    }
    let box_cells: usize = (0..dim).map(|a| hi[a] - lo[a] + 1).product();
    if box_cells == comp.len() {
        let l: Vec<f64> = (0..dim).map(|a| f.origin[a] + (lo[a] as f64 - 0.5) * s).collect();
        let h: Vec<f64> = (0..dim).map(|a| f.origin[a] + (hi[a] as f64 + 0.5) * s).collect();
        return GeometricSet::axis_box(&l, &h).ok();
    }
    // digitised ball: volume-matched radius about the centroid
    let mut c = [0.0; 3];
    for &i in comp {
        let x = f.center(i);
        for a in 0..dim {
            c[a] += x[a];
        }
    }
    for v in c.iter_mut().take(dim) {
        *v /= comp.len() as f64;
    }
    let volume = comp.len() as f64 * f.cell_volume();
    let r = ball_radius_for_volume(dim, volume);
    let tol = (dim as f64).sqrt() * s;
    if comp.iter().any(|&i| norm(&sub(&f.center(i), &c), dim) > r + tol) {
        return None;
    }
    // every cell well inside the ball must belong to the component
    for i in 0..f.len() {
        if norm(&sub(&f.center(i), &c), dim) < r - tol && comp.binary_search(&i).is_err() {
            return None;
        }
    }
    GeometricSet::ball(&c[..dim], r).ok()
}

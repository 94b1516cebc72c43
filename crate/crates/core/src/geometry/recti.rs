//! Smallest separately convex superset of a finite point set in `R^d`.
//!
//! Every distinct input coordinate becomes a grid line on its axis. Each axis
//! is then split into cells alternating between lines (even indices) and the
//! open gaps between them (odd indices), and a product of such cells is a
//! grid cell. Row filling never needs coordinates outside this grid, so the
//! fixpoint of "fill every axis-parallel row between its first and last
//! occupied cell" is exactly the rectilinear hull.

use crate::GeometryError;

/// Input coordinates closer than this fraction of the axis span share a line.
pub const SNAP_REL: f64 = 1e-12;
/// Default absolute per-axis tolerance for [`box_union_contains`].
pub const DEFAULT_BOX_TOL: f64 = 1e-9;
/// Largest grid [`recti_hull`] will allocate.
pub const MAX_GRID_CELLS: usize = 1 << 26;

/// Grid lines of one axis after snapping.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisLines {
    /// Inclusive `[min, max]` range of the raw values merged into each line.
    clusters: Vec<(f64, f64)>,
    tol: f64,
}

impl AxisLines {
    pub fn new(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let span = match (sorted.first(), sorted.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        };
        let tol = SNAP_REL * span;
        let mut clusters: Vec<(f64, f64)> = Vec::new();
        for v in sorted {
            match clusters.last_mut() {
                Some(last) if v - last.1 <= tol => last.1 = v,
                _ => clusters.push((v, v)),
            }
        }
        AxisLines { clusters, tol }
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Coordinate of line `i` (the smallest value merged into it).
    pub fn line(&self, i: usize) -> f64 {
        self.clusters[i].0
    }

    /// Number of cells along this axis.
    pub fn cells(&self) -> usize {
        2 * self.clusters.len() - 1
    }

    /// Cell index of `x`, or `None` outside the outermost lines.
    pub fn locate(&self, x: f64) -> Option<usize> {
        let idx = self.clusters.partition_point(|&(_, hi)| hi + self.tol < x);
        if idx == self.clusters.len() {
            return None;
        }
        let (lo, _) = self.clusters[idx];
        if x >= lo - self.tol {
            Some(2 * idx)
        } else if idx == 0 {
            None
        } else {
            Some(2 * idx - 1)
        }
    }

    /// Closed real interval covered by cells `first..=last`.
    fn interval(&self, first: usize, last: usize) -> (f64, f64) {
        let lo = self.line(first / 2);
        let hi = self.line(last.div_ceil(2));
        (lo, hi)
    }
}

/// Closed axis-aligned box; any axis may be degenerate (`lo == hi`).
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl AxisBox {
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&x, (&lo, &hi))| x >= lo - tol && x <= hi + tol)
    }

    fn intersects(&self, other: &AxisBox) -> bool {
        (0..self.lo.len()).all(|j| self.lo[j] <= other.hi[j] && other.lo[j] <= self.hi[j])
    }
}

/// Finite union of closed boxes in `R^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxUnion {
    pub dim: usize,
    pub boxes: Vec<AxisBox>,
}

impl BoxUnion {
    /// All `2^dim` corners of every box (duplicates kept).
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        for b in &self.boxes {
            for mask in 0..1usize << self.dim {
                out.push(
                    (0..self.dim)
                        .map(|j| if mask >> j & 1 == 1 { b.hi[j] } else { b.lo[j] })
                        .collect(),
                );
            }
        }
        out
    }

    /// Number of connected components of the union.
    pub fn component_count(&self) -> usize {
        let n = self.boxes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.boxes[i].intersects(&self.boxes[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }
}

/// `true` iff `p` is within per-axis distance `tol` of some box.
pub fn box_union_contains(bu: &BoxUnion, p: &[f64], tol: f64) -> Result<bool, GeometryError> {
    if p.len() != bu.dim {
        return Err(GeometryError::DimensionMismatch {
            expected: bu.dim,
            found: p.len(),
        });
    }
    Ok(bu.boxes.iter().any(|b| b.contains(p, tol)))
}

/// Occupancy of the compressed cell grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RectiGrid {
    axes: Vec<AxisLines>,
    shape: Vec<usize>,
    strides: Vec<usize>,
    occupied: Vec<bool>,
}

impl RectiGrid {
    /// Grid with one occupied cell per input point; no filling yet.
    pub fn rasterize(points: &[Vec<f64>], dim: usize) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::Empty);
        }
        if dim == 0 {
            return Err(GeometryError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for p in points {
            if p.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite);
            }
        }
        let axes: Vec<AxisLines> = (0..dim)
            .map(|j| AxisLines::new(&points.iter().map(|p| p[j]).collect::<Vec<_>>()))
            .collect();
        let shape: Vec<usize> = axes.iter().map(AxisLines::cells).collect();
        let total = shape
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s))
            .filter(|&t| t <= MAX_GRID_CELLS)
            .ok_or(GeometryError::TooLarge(usize::MAX))?;
        let mut strides = vec![1; dim];
        for j in (0..dim.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * shape[j + 1];
        }
        let mut grid = RectiGrid {
            axes,
            shape,
            strides,
            occupied: vec![false; total],
        };
        for p in points {
            let cell = grid.locate(p).expect("input points lie on their own grid");
            let idx = grid.flat(&cell);
            grid.occupied[idx] = true;
        }
        Ok(grid)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisLines] {
        &self.axes
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn occupied(&self) -> &[bool] {
        &self.occupied
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.iter().filter(|&&o| o).count()
    }

    pub fn flat(&self, cell: &[usize]) -> usize {
        cell.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn unflat(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = idx / s;
                idx %= s;
                c
            })
            .collect()
    }

    /// Cell containing `p`, if `p` lies within the grid's extent.
    pub fn locate(&self, p: &[f64]) -> Option<Vec<usize>> {
        p.iter()
            .zip(&self.axes)
            .map(|(&x, a)| a.locate(x))
            .collect()
    }

    pub fn is_occupied(&self, cell: &[usize]) -> bool {
        self.occupied[self.flat(cell)]
    }

    pub fn set(&mut self, cell: &[usize], value: bool) {
        let idx = self.flat(cell);
        self.occupied[idx] = value;
    }

    /// Start indices of every axis-parallel row along `axis`.
    fn row_starts(&self, axis: usize) -> impl Iterator<Item = usize> + '_ {
        let (stride, len) = (self.strides[axis], self.shape[axis]);
        (0..self.occupied.len()).filter(move |&i| (i / stride) % len == 0)
    }

    /// One filling pass over every axis; returns whether anything changed.
    pub fn sweep(&mut self) -> bool {
        let mut changed = false;
        for axis in 0..self.dim() {
            let (stride, len) = (self.strides[axis], self.shape[axis]);
            let starts: Vec<usize> = self.row_starts(axis).collect();
            for start in starts {
                let row = |k: usize| start + k * stride;
                let first = (0..len).find(|&k| self.occupied[row(k)]);
                let last = (0..len).rev().find(|&k| self.occupied[row(k)]);
                if let (Some(first), Some(last)) = (first, last) {
                    for k in first..=last {
                        let idx = row(k);
                        if !self.occupied[idx] {
                            self.occupied[idx] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        changed
    }

    /// Sweeps until nothing changes; returns the number of sweeps made,
    /// counting the final unchanged one.
    pub fn fill_to_fixpoint(&mut self) -> usize {
        let mut sweeps = 1;
        while self.sweep() {
            sweeps += 1;
        }
        sweeps
    }

    /// Every axis-parallel row meets the occupied set in one contiguous run.
    pub fn is_separately_convex(&self) -> bool {
        (0..self.dim()).all(|axis| {
            let (stride, len) = (self.strides[axis], self.shape[axis]);
            self.row_starts(axis).all(|start| {
                let runs = (0..len)
                    .filter(|&k| {
                        self.occupied[start + k * stride]
                            && (k == 0 || !self.occupied[start + (k - 1) * stride])
                    })
                    .count();
                runs <= 1
            })
        })
    }

    /// Cells covered by the closed boxes of `bu`.
    pub fn rasterize_boxes(&self, bu: &BoxUnion) -> Vec<bool> {
        let mut out = vec![false; self.occupied.len()];
        for (idx, slot) in out.iter_mut().enumerate() {
            let cell = self.unflat(idx);
            let sample: Vec<f64> = cell
                .iter()
                .zip(&self.axes)
                .map(|(&c, a)| {
                    if c % 2 == 0 {
                        a.line(c / 2)
                    } else {
                        0.5 * (a.line(c / 2) + a.line(c / 2 + 1))
                    }
                })
                .collect();
            *slot = bu.boxes.iter().any(|b| b.contains(&sample, 0.0));
        }
        out
    }

    /// Greedy decomposition of the occupied cells into maximal boxes.
    pub fn to_boxes(&self) -> BoxUnion {
        let dim = self.dim();
        let mut claimed = vec![false; self.occupied.len()];
        let mut boxes = Vec::new();
        for start in 0..self.occupied.len() {
            if !self.occupied[start] || claimed[start] {
                continue;
            }
            let lo = self.unflat(start);
            let mut hi = lo.clone();
            for axis in 0..dim {
                while hi[axis] + 1 < self.shape[axis] {
                    let mut slab_lo = lo.clone();
                    let mut slab_hi = hi.clone();
                    slab_lo[axis] = hi[axis] + 1;
                    slab_hi[axis] = hi[axis] + 1;
                    let free = self
                        .cells_in(&slab_lo, &slab_hi)
                        .all(|i| self.occupied[i] && !claimed[i]);
                    if !free {
                        break;
                    }
                    hi[axis] += 1;
                }
            }
            for i in self.cells_in(&lo, &hi).collect::<Vec<_>>() {
                claimed[i] = true;
            }
            let (lo_r, hi_r) = (0..dim)
                .map(|j| self.axes[j].interval(lo[j], hi[j]))
                .unzip();
            boxes.push(AxisBox { lo: lo_r, hi: hi_r });
        }
        BoxUnion { dim, boxes }
    }

    /// Flat indices of the cells in the index box `lo..=hi`.
    fn cells_in<'a>(
        &'a self,
        lo: &'a [usize],
        hi: &'a [usize],
    ) -> impl Iterator<Item = usize> + 'a {
        let count: usize = lo.iter().zip(hi).map(|(l, h)| h - l + 1).product();
        (0..count).map(move |mut n| {
            let mut idx = 0;
            for j in (0..lo.len()).rev() {
                let extent = hi[j] - lo[j] + 1;
                idx += (lo[j] + n % extent) * self.strides[j];
                n /= extent;
            }
            idx
        })
    }
}

/// Filled grid whose occupied cells are exactly the rectilinear hull.
pub fn recti_hull_grid(points: &[Vec<f64>], dim: usize) -> Result<RectiGrid, GeometryError> {
    let mut grid = RectiGrid::rasterize(points, dim)?;
    grid.fill_to_fixpoint();
    Ok(grid)
}

/// Rectilinear (separately convex in `R^dim`) hull of `points` as a union of
/// maximal boxes.
pub fn recti_hull(points: &[Vec<f64>], dim: usize) -> Result<BoxUnion, GeometryError> {
    Ok(recti_hull_grid(points, dim)?.to_boxes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hull(raw: &[(f64, f64)]) -> BoxUnion {
        let pts: Vec<Vec<f64>> = raw.iter().map(|&(x, y)| vec![x, y]).collect();
        recti_hull(&pts, 2).unwrap()
    }

    fn same_set(a: &BoxUnion, b: &BoxUnion, probes: &[Vec<f64>]) -> bool {
        probes.iter().all(|p| {
            a.boxes.iter().any(|x| x.contains(p, 0.0)) == b.boxes.iter().any(|x| x.contains(p, 0.0))
        })
    }

    #[test]
    fn example_cubic_roots_give_two_segments() {
        let bu = hull(&[(0.0, 1.0), (0.0, -1.0), (2.0, 0.0)]);
        let expected = BoxUnion {
            dim: 2,
            boxes: vec![
                AxisBox {
                    lo: vec![0.0, -1.0],
                    hi: vec![0.0, 1.0],
                },
                AxisBox {
                    lo: vec![0.0, 0.0],
                    hi: vec![2.0, 0.0],
                },
            ],
        };
        let probes: Vec<Vec<f64>> = (-8..=8)
            .flat_map(|i| (-8..=8).map(move |j| vec![i as f64 * 0.25, j as f64 * 0.25]))
            .collect();
        assert!(same_set(&bu, &expected, &probes));
        assert_eq!(bu.component_count(), 1);
        assert!(box_union_contains(&bu, &[0.0, 0.5], DEFAULT_BOX_TOL).unwrap());
        let s2 = 2f64.sqrt() / 3.0;
        assert!(!box_union_contains(&bu, &[1.0 / 3.0, s2], DEFAULT_BOX_TOL).unwrap());
    }

    #[test]
    fn unaligned_pair_is_two_points() {
        let bu = hull(&[(1.0, 2.0), (3.0, 5.0)]);
        assert_eq!(bu.boxes.len(), 2);
        assert!(bu.boxes.iter().all(|b| b.lo == b.hi));
        assert_eq!(bu.component_count(), 2);
        assert!(!box_union_contains(&bu, &[2.0, 3.5], DEFAULT_BOX_TOL).unwrap());
    }

    #[test]
    fn four_corners_fill_the_square() {
        let bu = hull(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(
            bu.boxes,
            vec![AxisBox {
                lo: vec![0.0, 0.0],
                hi: vec![1.0, 1.0]
            }]
        );
    }

    #[test]
    fn plus_shape_hull() {
        let pts: Vec<Vec<f64>> = vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![1.0, 1.0],
            vec![1.0, -1.0],
        ];
        let grid = recti_hull_grid(&pts, 2).unwrap();
        assert!(grid.is_separately_convex());
        let bu = grid.to_boxes();
        assert_eq!(grid.rasterize_boxes(&bu), grid.occupied());
        assert!(box_union_contains(&bu, &[1.0, 0.0], 0.0).unwrap());
        assert!(!box_union_contains(&bu, &[0.5, 0.5], 0.0).unwrap());
    }

    #[test]
    fn generators_are_contained() {
        let raw = [
            (0.3, 1.7),
            (0.3, -2.0),
            (4.0, 1.7),
            (-1.0, 0.0),
            (2.2, -2.0),
        ];
        let bu = hull(&raw);
        for (x, y) in raw {
            assert!(box_union_contains(&bu, &[x, y], 0.0).unwrap());
        }
    }

    #[test]
    fn snapping_merges_near_duplicates_only() {
        let axis = AxisLines::new(&[0.0, 1e-15, 1.0]);
        assert_eq!(axis.len(), 2);
        let axis = AxisLines::new(&[0.0, 1e-9, 1.0]);
        assert_eq!(axis.len(), 3);
        assert_eq!(axis.locate(0.5), Some(3));
        assert_eq!(axis.locate(1e-9), Some(2));
        assert_eq!(axis.locate(-0.1), None);
        assert_eq!(axis.locate(1.1), None);
    }

    #[test]
    fn one_dimensional_hull_is_an_interval() {
        let pts = vec![vec![3.0], vec![-1.0], vec![0.5]];
        let bu = recti_hull(&pts, 1).unwrap();
        assert_eq!(
            bu.boxes,
            vec![AxisBox {
                lo: vec![-1.0],
                hi: vec![3.0]
            }]
        );
    }

    #[test]
    fn errors() {
        assert_eq!(recti_hull(&[], 2), Err(GeometryError::Empty));
        assert!(recti_hull(&[vec![1.0]], 2).is_err());
        assert_eq!(
            recti_hull(&[vec![f64::INFINITY, 0.0]], 2),
            Err(GeometryError::NonFinite)
        );
        let bu = hull(&[(0.0, 0.0)]);
        assert!(box_union_contains(&bu, &[0.0], 0.0).is_err());
    }
}

//! Level-set extraction from rectangular grids by marching squares.
//!
//! Crossing points are linearly interpolated along cell edges and keyed by
//! the edge they sit on, so segment chaining joins on exact edge identity
//! rather than floating-point coordinates. Cells are scanned in row-major
//! order and paths are seeded in first-emission order, which makes the
//! output ordering a pure function of the input grid.

use std::collections::BTreeMap;

/// A chained level-set path in data coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// First and last point coincide (a loop rather than a
    /// boundary-terminated arc).
    pub closed: bool,
}

/// Identity of a grid edge: the lattice point it starts at plus its
/// orientation. Horizontal edges run from (ix, iy) to (ix+1, iy),
/// vertical ones from (ix, iy) to (ix, iy+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct EdgeId {
    ix: usize,
    iy: usize,
    vertical: bool,
}

struct Grid<'a> {
    xs: &'a [f64],
    ys: &'a [f64],
    values: &'a dyn Fn(usize, usize) -> f64,
}

impl Grid<'_> {
    fn v(&self, ix: usize, iy: usize) -> f64 {
        (self.values)(ix, iy)
    }

    /// Interpolated crossing point of `level` on an edge known to cross.
    fn crossing(&self, edge: EdgeId, level: f64) -> (f64, f64) {
        let (ix, iy) = (edge.ix, edge.iy);
        let (v0, v1) = if edge.vertical {
            (self.v(ix, iy), self.v(ix, iy + 1))
        } else {
            (self.v(ix, iy), self.v(ix + 1, iy))
        };
        let t = if v1 == v0 { 0.5 } else { ((level - v0) / (v1 - v0)).clamp(0.0, 1.0) };
        if edge.vertical {
            let y = self.ys[iy] + t * (self.ys[iy + 1] - self.ys[iy]);
            (self.xs[ix], y)
        } else {
            let x = self.xs[ix] + t * (self.xs[ix + 1] - self.xs[ix]);
            (x, self.ys[iy])
        }
    }
}

/// Extract the `level` set of a grid function as chained polylines.
///
/// `xs` and `ys` are the axis coordinates and `values(ix, iy)` the field
/// at (xs[ix], ys[iy]). A point is "inside" when its value exceeds the
/// level, so a constant grid yields no contours at any level.
pub fn march(
    xs: &[f64],
    ys: &[f64],
    values: impl Fn(usize, usize) -> f64,
    level: f64,
) -> Vec<Polyline> {
    if xs.len() < 2 || ys.len() < 2 {
        return Vec::new();
    }
    let grid = Grid {
        xs,
        ys,
        values: &values,
    };
    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for iy in 0..ys.len() - 1 {
        for ix in 0..xs.len() - 1 {
            let bl = grid.v(ix, iy) > level;
            let br = grid.v(ix + 1, iy) > level;
            let tr = grid.v(ix + 1, iy + 1) > level;
            let tl = grid.v(ix, iy + 1) > level;
            let case = (bl as u8) | (br as u8) << 1 | (tr as u8) << 2 | (tl as u8) << 3;

            let bottom = EdgeId { ix, iy, vertical: false };
            let top = EdgeId { ix, iy: iy + 1, vertical: false };
            let left = EdgeId { ix, iy, vertical: true };
            let right = EdgeId { ix: ix + 1, iy, vertical: true };

            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((top, left)),
                5 | 10 => {
                    // saddle: disambiguate with the cell-center average
                    let center = 0.25
                        * (grid.v(ix, iy)
                            + grid.v(ix + 1, iy)
                            + grid.v(ix + 1, iy + 1)
                            + grid.v(ix, iy + 1));
                    let center_inside = center > level;
                    if (case == 5) == center_inside {
                        segments.push((left, bottom));
                        segments.push((right, top));
                    } else {
                        segments.push((left, top));
                        segments.push((right, bottom));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    chain(&grid, level, segments)
}

fn chain(grid: &Grid<'_>, level: f64, segments: Vec<(EdgeId, EdgeId)>) -> Vec<Polyline> {
    // adjacency: each edge point belongs to at most two segments
    let mut adj: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in segments.iter().enumerate() {
        adj.entry(a).or_default().push(i);
        adj.entry(b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut paths = Vec::new();

    let next_from = |adj: &BTreeMap<EdgeId, Vec<usize>>, used: &[bool], at: EdgeId| -> Option<usize> {
        adj.get(&at)
            .into_iter()
            .flatten()
            .copied()
            .find(|&i| !used[i])
    };

    for seed in 0..segments.len() {
        if used[seed] {
            continue;
        }
        used[seed] = true;
        let (a, b) = segments[seed];
        let mut chain: std::collections::VecDeque<EdgeId> = [a, b].into_iter().collect();
        // extend forward from the tail
        loop {
            let tail = *chain.back().expect("chain is never empty");
            let Some(i) = next_from(&adj, &used, tail) else { break };
            used[i] = true;
            let (p, q) = segments[i];
            chain.push_back(if p == tail { q } else { p });
        }
        // extend backward from the head
        loop {
            let head = *chain.front().expect("chain is never empty");
            let Some(i) = next_from(&adj, &used, head) else { break };
            used[i] = true;
            let (p, q) = segments[i];
            chain.push_front(if p == head { q } else { p });
        }
        let closed = chain.len() > 2 && chain.front() == chain.back();
        let points = chain.iter().map(|&e| grid.crossing(e, level)).collect();
        paths.push(Polyline { points, closed });
    }
    paths
}

/// True when the point sits on the rectangular hull of the axes.
pub fn on_boundary(xs: &[f64], ys: &[f64], point: (f64, f64)) -> bool {
    let eps = 1e-9;
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let (y0, y1) = (ys[0], ys[ys.len() - 1]);
    (point.0 - x0).abs() < eps
        || (point.0 - x1).abs() < eps
        || (point.1 - y0).abs() < eps
        || (point.1 - y1).abs() < eps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64).collect()
    }

    #[test]
    fn constant_surface_has_no_contours() {
        let xs = axes(5);
        let ys = axes(4);
        for level in [-1.0, 0.0, 0.7, 2.0] {
            assert!(march(&xs, &ys, |_, _| 0.7, level).is_empty());
        }
    }

    #[test]
    fn linear_ramp_gives_straight_line() {
        let xs = axes(11);
        let ys = axes(6);
        // plane rising in x: level 4.25 crosses at x = 4.25 exactly
        let paths = march(&xs, &ys, |ix, _| ix as f64, 4.25);
        assert_eq!(paths.len(), 1);
        let p = &paths[0];
        assert!(!p.closed);
        for &(x, _) in &p.points {
            assert!((x - 4.25).abs() < 1e-12, "x = {x}");
        }
        // spans the full y range
        let ymin = p.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let ymax = p.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((ymin, ymax), (0.0, 5.0));
    }

    #[test]
    fn bump_gives_single_closed_loop() {
        let xs = axes(21);
        let ys = axes(21);
        let f = |ix: usize, iy: usize| {
            let dx = ix as f64 - 10.0;
            let dy = iy as f64 - 10.0;
            (-(dx * dx + dy * dy) / 18.0).exp()
        };
        let paths = march(&xs, &ys, f, 0.5);
        assert_eq!(paths.len(), 1);
        assert!(paths[0].closed);
        // every point is interior
        for &pt in &paths[0].points {
            assert!(!on_boundary(&xs, &ys, pt));
        }
    }

    #[test]
    fn paths_close_or_terminate_on_boundary() {
        let xs = axes(15);
        let ys = axes(12);
        // wavy field with several crossings of the level
        let f = |ix: usize, iy: usize| {
            ((ix as f64) * 0.8).sin() + ((iy as f64) * 0.6).cos()
        };
        for level in [-0.8, -0.2, 0.1, 0.6, 1.2] {
            for p in march(&xs, &ys, f, level) {
                if !p.closed {
                    let first = p.points[0];
                    let last = *p.points.last().unwrap();
                    assert!(
                        on_boundary(&xs, &ys, first) && on_boundary(&xs, &ys, last),
                        "open path ends off-boundary at level {level}: {first:?} {last:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let xs = axes(9);
        let ys = axes(9);
        let f = |ix: usize, iy: usize| ((ix * 3 + iy * 5) % 7) as f64;
        let a = march(&xs, &ys, f, 3.5);
        let b = march(&xs, &ys, f, 3.5);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}

//! Grid-point enumeration in lexicographic order: the first listed axis is
//! the outermost (slowest) loop.

use crate::config::{Coordinate, GridSpec};

/// Coordinates of one grid point, resolved to the four envelope arguments.
#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub tau: f64,
}

pub fn total_points(grid: &GridSpec) -> usize {
    grid.axes.iter().map(|a| a.count).product()
}

/// Grid point for a flat row index, decoding the index with the first axis
/// most significant. The sampled value of axis j at index i is
/// `min + i * (max - min) / (count - 1)`.
pub fn point_at(grid: &GridSpec, flat: usize) -> GridPoint {
    let mut remainder = flat;
    let mut strides = vec![1usize; grid.axes.len()];
    for i in (0..grid.axes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * grid.axes[i + 1].count;
    }

    let mut point = GridPoint {
        xi1: 0.0,
        xi2: 0.0,
        xi3: 0.0,
        tau: 0.0,
    };
    for (coord, value) in &grid.fixed {
        assign(&mut point, *coord, *value);
    }
    for (axis, stride) in grid.axes.iter().zip(&strides) {
        let index = remainder / stride;
        remainder %= stride;
        let step = (axis.max - axis.min) / (axis.count - 1) as f64;
        assign(&mut point, axis.coord, axis.min + step * index as f64);
    }
    point
}

fn assign(point: &mut GridPoint, coord: Coordinate, value: f64) {
    match coord {
        Coordinate::Xi1 => point.xi1 = value,
        Coordinate::Xi2 => point.xi2 = value,
        Coordinate::Xi3 => point.xi3 = value,
        Coordinate::Tau => point.tau = value,
        // `s` fixes the light-cone coordinate directly: xi3 = s, tau = 0.
        Coordinate::S => {
            point.xi3 = value;
            point.tau = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AxisRange;

    fn axis(coord: Coordinate, min: f64, max: f64, count: usize) -> AxisRange {
        AxisRange {
            coord,
            min,
            max,
            count,
        }
    }

    #[test]
    fn first_axis_is_outermost() {
        let grid = GridSpec {
            axes: vec![
                axis(Coordinate::Xi1, 0.0, 1.0, 2),
                axis(Coordinate::Xi2, 0.0, 2.0, 3),
            ],
            fixed: vec![(Coordinate::Tau, 0.5)],
        };
        assert_eq!(total_points(&grid), 6);
        let expect = [
            (0.0, 0.0),
            (0.0, 1.0),
            (0.0, 2.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (1.0, 2.0),
        ];
        for (i, (xi1, xi2)) in expect.iter().enumerate() {
            let p = point_at(&grid, i);
            assert_eq!((p.xi1, p.xi2), (*xi1, *xi2), "row {i}");
            assert_eq!(p.tau, 0.5);
            assert_eq!(p.xi3, 0.0);
        }
    }

    #[test]
    fn s_axis_sets_xi3_with_zero_tau() {
        let grid = GridSpec {
            axes: vec![axis(Coordinate::S, -2.0, 2.0, 5)],
            fixed: vec![],
        };
        let p = point_at(&grid, 1);
        assert_eq!(p.xi3, -1.0);
        assert_eq!(p.tau, 0.0);
    }
}

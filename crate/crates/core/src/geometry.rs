//! Simplex lattices and the cube density check.
//!
//! Evenly spaced points of degree `l` on an n-simplex are the points whose
//! barycentric coordinates are `(k_1/l, ..., k_{n+1}/l)` with nonnegative
//! integers summing to `l`; there are exactly `binomial(n + l, n)` of them
//! and they form a determining set for degree-`l` polynomials.

use nalgebra::{DMatrix, DVector};
use std::collections::HashSet;

use crate::error::{require_positive, Error, Result};

/// An n-simplex given by its n+1 affinely independent vertices in R^n.
#[derive(Debug, Clone)]
pub struct Simplex {
    vertices: Vec<Vec<f64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Domain(
                "a simplex needs at least 2 vertices".to_string(),
            ));
        }
        let dimension = vertices.len() - 1;
        for v in &vertices {
            if v.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: v.len(),
                });
            }
        }
        let simplex = Self { vertices };
        // full-rank edge matrix <=> affine independence
        let edges = simplex.edge_matrix();
        let scale = edges.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let svd = edges.svd(false, false);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > scale.max(1.0) * dimension as f64 * f64::EPSILON)
            .count();
        if rank < dimension {
            return Err(Error::DegenerateSimplex);
        }
        Ok(simplex)
    }

    /// The simplex with vertices `0, scale * e_1, ..., scale * e_n`.
    pub fn standard(dimension: usize, scale: f64) -> Result<Self> {
        require_positive("scale", scale)?;
        if dimension == 0 {
            return Err(Error::Domain("dimension must be at least 1".to_string()));
        }
        let mut vertices = vec![vec![0.0; dimension]];
        for i in 0..dimension {
            let mut v = vec![0.0; dimension];
            v[i] = scale;
            vertices.push(v);
        }
        Self::new(vertices)
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Columns `v_i - v_{n+1}`, i = 1..n.
    fn edge_matrix(&self) -> DMatrix<f64> {
        let n = self.dimension();
        let last = &self.vertices[n];
        DMatrix::from_fn(n, n, |row, col| self.vertices[col][row] - last[row])
    }
}

/// The evenly spaced lattice of a simplex: exact barycentric numerators
/// `k_i` over the common denominator `degree`, plus cartesian images.
#[derive(Debug, Clone)]
pub struct NodeSet {
    degree: u32,
    lattice: Vec<Vec<u32>>,
    cartesian: Vec<Vec<f64>>,
}

impl NodeSet {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Exact barycentric numerators of node `i` (denominator [`Self::degree`]).
    pub fn barycentric_numerators(&self) -> &[Vec<u32>] {
        &self.lattice
    }

    /// Barycentric coordinates of node `i` as floats `k_j / l`.
    pub fn barycentric(&self, i: usize) -> Vec<f64> {
        self.lattice[i]
            .iter()
            .map(|&k| k as f64 / self.degree as f64)
            .collect()
    }

    pub fn cartesian(&self) -> &[Vec<f64>] {
        &self.cartesian
    }
}

/// Enumerates the evenly spaced points of degree `l` on `simplex`, in
/// ascending lexicographic order of the numerator tuples `(k_1, ..., k_{n+1})`.
pub fn evenly_spaced_nodes(simplex: &Simplex, degree: u32) -> Result<NodeSet> {
    if degree == 0 {
        return Err(Error::Domain("degree must be at least 1".to_string()));
    }
    let parts = simplex.dimension() + 1;
    let mut lattice = Vec::new();
    let mut current = vec![0u32; parts];
    compositions(degree, 0, &mut current, &mut lattice);

    let dim = simplex.dimension();
    let cartesian = lattice
        .iter()
        .map(|ks| {
            let mut point = vec![0.0; dim];
            for (k, vertex) in ks.iter().zip(simplex.vertices()) {
                let weight = *k as f64 / degree as f64;
                for (p, v) in point.iter_mut().zip(vertex) {
                    *p += weight * v;
                }
            }
            point
        })
        .collect();

    Ok(NodeSet {
        degree,
        lattice,
        cartesian,
    })
}

fn compositions(remaining: u32, index: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if index == current.len() - 1 {
        current[index] = remaining;
        out.push(current.clone());
        return;
    }
    for k in 0..=remaining {
        current[index] = k;
        compositions(remaining - k, index + 1, current, out);
    }
}

/// Barycentric coordinates of `x` with respect to `simplex`. Entries sum to
/// one; `x` lies inside iff all entries are >= -1e-12.
pub fn barycentric_of(simplex: &Simplex, x: &[f64]) -> Result<Vec<f64>> {
    let n = simplex.dimension();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let last = &simplex.vertices()[n];
    let rhs = DVector::from_fn(n, |i, _| x[i] - last[i]);
    let lu = simplex.edge_matrix().lu();
    let head = lu.solve(&rhs).ok_or(Error::DegenerateSimplex)?;
    let mut coords: Vec<f64> = head.iter().copied().collect();
    let tail = 1.0 - coords.iter().sum::<f64>();
    coords.push(tail);
    Ok(coords)
}

/// Grid density check for a cube: partitions `[corner, corner + side]^n`
/// into `ceil(side/delta)^n` axis-aligned cells of side at most `delta`
/// (last row truncated) and reports whether every cell contains a point of
/// `points` (closed-cell membership).
pub fn check_density(
    cube_corner: &[f64],
    side: f64,
    points: &[Vec<f64>],
    delta: f64,
) -> Result<bool> {
    require_positive("side", side)?;
    require_positive("delta", delta)?;
    let n = cube_corner.len();
    if n == 0 {
        return Err(Error::Domain("cube dimension must be at least 1".to_string()));
    }
    // guard against ratios like 1/0.1 landing just above an integer
    let cells_per_axis = ((side / delta) - 1e-12).ceil().max(1.0) as u64;
    let total = (cells_per_axis as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1u128 << 40)
        .ok_or_else(|| {
            Error::Domain(format!(
                "density grid of {cells_per_axis}^{n} cells is too large to enumerate"
            ))
        })?;

    let mut covered: HashSet<Vec<u64>> = HashSet::new();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let mut axis_cells: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut inside = true;
        for (coordinate, corner) in p.iter().zip(cube_corner) {
            let t = coordinate - corner;
            if !(0.0..=side).contains(&t) {
                inside = false;
                break;
            }
            let j = ((t / delta).floor() as u64).min(cells_per_axis - 1);
            let mut cells = vec![j];
            // a point exactly on a cell boundary belongs to both closed cells
            if j > 0 && t <= j as f64 * delta {
                cells.push(j - 1);
            }
            axis_cells.push(cells);
        }
        if !inside {
            continue;
        }
        let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
        for cells in &axis_cells {
            combos = combos
                .iter()
                .flat_map(|prefix| {
                    cells.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        covered.extend(combos);
        if covered.len() as u128 == total {
            return Ok(true);
        }
    }
    Ok(covered.len() as u128 == total)
}

/// Integer degrees `l` admissible for the evenly-spaced hypothesis at scale
/// `b0` and density `delta`: `ceil(b0/delta) <= l <= floor(2 b0/delta)`.
/// Experiments use the smallest one, with centers of degree `l - 1`.
pub fn admissible_degree_range(b0: f64, delta: f64) -> Result<(u64, u64)> {
    require_positive("b0", b0)?;
    require_positive("delta", delta)?;
    let lo = ((b0 / delta) - 1e-12).ceil().max(1.0) as u64;
    let hi = ((2.0 * b0 / delta) + 1e-12).floor() as u64;
    if hi < lo {
        return Err(Error::Infeasible {
            quantity: "delta",
            value: delta,
            bound_name: "2*b0",
            bound: 2.0 * b0,
        });
    }
    Ok((lo, hi))
}

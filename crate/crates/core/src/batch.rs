//! Batch evaluation over slices and structure-of-arrays columns.
//!
//! Every element is computed by the same scalar kernel, so batch results are
//! bit-identical to scalar calls and independent of the execution mode.
//! Without the `parallel` feature, [`Exec::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::barycentric::{bary_tetrahedron, bary_triangle, ProjBary3, ProjBary4};
use crate::error::{KernelError, Result};
use crate::hcoords::{HLine2, HPlane, HPoint2, HPoint3};
use crate::interp::{lerp_monotonic, lerp_rational, HSegment};
use crate::joinmeet::{join_points, meet_lines, meet_three_planes, plane_from_points};
use crate::xprod::{cross3, cross3_matrix, cross4, cross4_matrix, cross5, cross5_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Which of the two equivalent cross-product evaluations to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Form {
    #[default]
    Cofactor,
    Matrix,
}

/// Applies `f` to every element, preserving order.
pub fn map<I, O, F>(exec: Exec, inputs: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => inputs.par_iter().map(f).collect(),
        _ => inputs.iter().map(f).collect(),
    }
}

fn map_index<O, F>(exec: Exec, n: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// `N` equally long coordinate columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SoA<const N: usize> {
    cols: [Vec<f64>; N],
}

impl<const N: usize> SoA<N> {
    pub fn new(cols: [Vec<f64>; N]) -> Result<Self> {
        let n = cols[0].len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(KernelError::ArityMismatch);
        }
        Ok(SoA { cols })
    }

    pub fn from_rows(rows: &[[f64; N]]) -> Self {
        let mut cols: [Vec<f64>; N] = std::array::from_fn(|_| Vec::with_capacity(rows.len()));
        for r in rows {
            for (c, &v) in cols.iter_mut().zip(r) {
                c.push(v);
            }
        }
        SoA { cols }
    }

    pub fn len(&self) -> usize {
        self.cols[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn col(&self, k: usize) -> &[f64] {
        &self.cols[k]
    }

    #[inline]
    pub fn row(&self, i: usize) -> [f64; N] {
        std::array::from_fn(|k| self.cols[k][i])
    }

    pub fn to_rows(&self) -> Vec<[f64; N]> {
        (0..self.len()).map(|i| self.row(i)).collect()
    }
}

fn same_len<const N: usize>(cols: &[&SoA<N>]) -> Result<usize> {
    let n = cols[0].len();
    if cols.iter().any(|c| c.len() != n) {
        return Err(KernelError::ArityMismatch);
    }
    Ok(n)
}

pub fn cross3_soa(exec: Exec, form: Form, a: &SoA<3>, b: &SoA<3>) -> Result<SoA<3>> {
    let n = same_len(&[a, b])?;
    let k = match form {
        Form::Cofactor => cross3,
        Form::Matrix => cross3_matrix,
    };
    Ok(SoA::from_rows(&map_index(exec, n, |i| k(&a.row(i), &b.row(i)))))
}

pub fn cross4_soa(exec: Exec, form: Form, a: &SoA<4>, b: &SoA<4>, c: &SoA<4>) -> Result<SoA<4>> {
    let n = same_len(&[a, b, c])?;
    let k = match form {
        Form::Cofactor => cross4,
        Form::Matrix => cross4_matrix,
    };
    Ok(SoA::from_rows(&map_index(exec, n, |i| k(&a.row(i), &b.row(i), &c.row(i)))))
}

pub fn cross5_soa(
    exec: Exec,
    form: Form,
    a: &SoA<5>,
    b: &SoA<5>,
    c: &SoA<5>,
    d: &SoA<5>,
) -> Result<SoA<5>> {
    let n = same_len(&[a, b, c, d])?;
    let k = match form {
        Form::Cofactor => cross5,
        Form::Matrix => cross5_matrix,
    };
    Ok(SoA::from_rows(&map_index(exec, n, |i| {
        k(&a.row(i), &b.row(i), &c.row(i), &d.row(i))
    })))
}

pub fn meet_lines_batch(exec: Exec, pairs: &[(HLine2, HLine2)]) -> Vec<Result<HPoint2>> {
    map(exec, pairs, |&(a, b)| meet_lines(a, b))
}

pub fn join_points_batch(exec: Exec, pairs: &[(HPoint2, HPoint2)]) -> Vec<Result<HLine2>> {
    map(exec, pairs, |&(a, b)| join_points(a, b))
}

pub fn plane_from_points_batch(
    exec: Exec,
    triples: &[(HPoint3, HPoint3, HPoint3)],
) -> Vec<Result<HPlane>> {
    map(exec, triples, |&(a, b, c)| plane_from_points(a, b, c))
}

pub fn meet_three_planes_batch(
    exec: Exec,
    triples: &[(HPlane, HPlane, HPlane)],
) -> Vec<Result<HPoint3>> {
    map(exec, triples, |&(a, b, c)| meet_three_planes(a, b, c))
}

pub fn bary_triangle_batch(exec: Exec, items: &[[HPoint2; 4]]) -> Vec<Result<ProjBary3>> {
    map(exec, items, |&[a, b, c, q]| bary_triangle(a, b, c, q))
}

pub fn bary_tetrahedron_batch(exec: Exec, items: &[[HPoint3; 5]]) -> Vec<Result<ProjBary4>> {
    map(exec, items, |&[a, b, c, d, q]| bary_tetrahedron(a, b, c, d, q))
}

pub fn lerp_rational_batch(
    exec: Exec,
    items: &[(HSegment<HPoint3>, f64)],
) -> Vec<Result<HPoint3>> {
    map(exec, items, |(s, t)| lerp_rational(s, *t))
}

pub fn lerp_monotonic_batch(
    exec: Exec,
    items: &[(HSegment<HPoint3>, f64)],
) -> Vec<Result<HPoint3>> {
    map(exec, items, |(s, t)| lerp_monotonic(s, *t))
}

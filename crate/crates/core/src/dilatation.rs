//! Dilatation quotients of differentiable maps and moduli of annuli.
//!
//! At a point where `f = u + iv` has an orientation-preserving
//! differential, an infinitesimal circle goes to an ellipse whose axis ratio
//! is the dilatation quotient
//!
//! ```text
//! 𝒦 = ½ (u_x² + u_y² + v_x² + v_y²) / (u_x v_y − v_x u_y),   D = 𝒦 + √(𝒦² − 1).
//! ```

use num_traits::Float;
use rayon::prelude::*;

use crate::{Error, Result};

/// Partial derivatives of `x + iy ↦ u + iv` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianSample<T> {
    pub ux: T,
    pub uy: T,
    pub vx: T,
    pub vy: T,
}

impl<T: Float> JacobianSample<T> {
    pub fn new(ux: T, uy: T, vx: T, vy: T) -> Self {
        JacobianSample { ux, uy, vx, vy }
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        JacobianSample::new(o, z, z, o)
    }

    /// Rotation by `theta`.
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        JacobianSample::new(c, -s, s, c)
    }

    pub fn determinant(&self) -> T {
        self.ux * self.vy - self.vx * self.uy
    }

    /// The matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        JacobianSample::new(
            self.ux * other.ux + self.uy * other.vx,
            self.ux * other.uy + self.uy * other.vy,
            self.vx * other.ux + self.vy * other.vx,
            self.vx * other.uy + self.vy * other.vy,
        )
    }

    pub fn scaled(&self, c: T) -> Self {
        JacobianSample::new(self.ux * c, self.uy * c, self.vx * c, self.vy * c)
    }

    /// `𝒦`, half the squared Frobenius norm over the determinant.
    pub fn k_value(&self) -> T {
        let two = T::one() + T::one();
        (self.ux * self.ux + self.uy * self.uy + self.vx * self.vx + self.vy * self.vy)
            / (two * self.determinant())
    }
}

fn quotient_at<T: Float>(j: &JacobianSample<T>, location: impl FnOnce() -> String) -> Result<T> {
    let det = j.determinant();
    if det.is_nan() || det <= T::zero() {
        return Err(Error::DegenerateJacobian {
            determinant: det.to_f64().unwrap_or(f64::NAN),
            location: location(),
        });
    }
    // 𝒦 + √(𝒦² − 1) = (|f_z| + |f_z̄|) / (|f_z| − |f_z̄|); this form keeps
    // D = 1 exact where f_z̄ vanishes, which the square root would not
    let half = T::from(0.5).unwrap();
    let a = (half * (j.ux + j.vy)).hypot(half * (j.vx - j.uy));
    let b = (half * (j.ux - j.vy)).hypot(half * (j.vx + j.uy));
    Ok((a + b) / (a - b))
}

/// Dilatation quotient `D ≥ 1`; `D = 1` exactly for similarities.
/// Fails on samples that are not orientation preserving.
pub fn dilatation_quotient<T: Float>(j: &JacobianSample<T>) -> Result<T> {
    quotient_at(j, || "sample".to_string())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridDilatation<T> {
    pub max_d: T,
    /// `(row, column)` of the first cell attaining `max_d`.
    pub argmax: (usize, usize),
    pub field: Vec<Vec<T>>,
}

/// Dilatation over a grid of samples. The map is `K`-quasiconformal on the
/// grid for `K = max_d`.
pub fn grid_dilatation<T: Float + Send + Sync>(
    grid: &[Vec<JacobianSample<T>>],
) -> Result<GridDilatation<T>> {
    if grid.is_empty() || grid.iter().all(Vec::is_empty) {
        return Err(Error::Precondition("empty sample grid".into()));
    }
    let field: Vec<Vec<T>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| quotient_at(s, || format!("row {i}, column {j}")))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    let mut max_d = T::neg_infinity();
    let mut argmax = (0, 0);
    for (i, row) in field.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d > max_d {
                max_d = d;
                argmax = (i, j);
            }
        }
    }
    Ok(GridDilatation {
        max_d,
        argmax,
        field,
    })
}

/// The round annulus `r1 < |z| < r2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusSpec<T> {
    r1: T,
    r2: T,
}

impl<T: Float> AnnulusSpec<T> {
    pub fn new(r1: T, r2: T) -> Result<Self> {
        if r1 > T::zero() && r1 < r2 && r2.is_finite() {
            Ok(AnnulusSpec { r1, r2 })
        } else {
            Err(Error::InvalidAnnulus)
        }
    }

    pub fn r1(&self) -> T {
        self.r1
    }

    pub fn r2(&self) -> T {
        self.r2
    }
}

/// Conformal modulus `log(r2/r1) / 2π`.
pub fn annulus_modulus<T: Float>(a: &AnnulusSpec<T>) -> T {
    let two_pi = T::from(std::f64::consts::TAU).unwrap();
    (a.r2 / a.r1).ln() / two_pi
}

#[derive(Clone, Debug, PartialEq)]
pub struct DemoRow<T> {
    pub k: usize,
    pub annulus: AnnulusSpec<T>,
    pub modulus: T,
    /// `K · M`: the most a `K`-quasiconformal image in the disc allows.
    pub allowed: T,
}

impl<T: Float> DemoRow<T> {
    pub fn exceeds(&self) -> bool {
        self.modulus > self.allowed
    }
}

/// Numeric form of the argument that the plane is not quasiconformally
/// equivalent to the disc.
///
/// A `K`-quasiconformal map of the plane into the disc would send each
/// annulus `r1 < |z| < r2` around a fixed disc `|z| ≤ r1` to a ring domain
/// of modulus at most `disc_bound`, so the annulus would have modulus at
/// most `K · disc_bound`. Row `k` takes `r2 = r1·e^{2π·K·(disc_bound + k)}`,
/// whose modulus `K·(disc_bound + k)` exceeds that for every `k ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Demonstration<T> {
    pub k_qc: T,
    pub disc_bound: T,
    pub rows: Vec<DemoRow<T>>,
}

pub fn plane_vs_disc_demo<T: Float>(
    k_qc: T,
    disc_bound: T,
    r1: T,
    rows: usize,
) -> Result<Demonstration<T>> {
    if !(k_qc >= T::one()) || !(disc_bound >= T::zero()) {
        return Err(Error::Precondition(
            "need K ≥ 1 and a non-negative disc bound".into(),
        ));
    }
    let two_pi = T::from(std::f64::consts::TAU).unwrap();
    let rows = (1..=rows)
        .map(|k| {
            let target = k_qc * (disc_bound + T::from(k).unwrap());
            let annulus = AnnulusSpec::new(r1, r1 * (two_pi * target).exp())?;
            Ok(DemoRow {
                k,
                modulus: annulus_modulus(&annulus),
                allowed: k_qc * disc_bound,
                annulus,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Demonstration {
        k_qc,
        disc_bound,
        rows,
    })
}

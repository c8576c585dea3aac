//! Hyperbolic geometry: closed-form geodesic length minima, the
//! face-count constraint, triangle-group generator matrices, and isometry
//! classification.
//!
//! Geometry lives in the unit-disk model internally (Mobius maps in
//! SU(1,1) form); public matrices are real 2x2 with determinant 1, obtained
//! by the exact Cayley conjugation, and compare up to global sign.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance for closed-form identities (exact in real arithmetic).
pub const TOL_IDENTITY: f64 = 1e-12;
/// Tolerance for matrix relation residuals.
pub const TOL_MATRIX: f64 = 1e-9;
/// Half-width of the trace band around 2 separating the isometry kinds.
pub const TOL_TRACE: f64 = 1e-7;

fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        x
    } else {
        format!("{x:.14e}").parse().expect("round-trip of a finite float")
    }
}

fn ser_sig15<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(sig15(*x))
}

/// Minimal total geodesic length of a multicurve with the given data, plus
/// the per-edge unit it decomposes into.
///
/// JSON output echoes the inputs and prints reals with 15 significant
/// digits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthReport {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(serialize_with = "ser_sig15")]
    pub edge_length: f64,
    #[serde(serialize_with = "ser_sig15")]
    pub total: f64,
    pub formula_used: FormulaUsed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaUsed {
    Clean,
    Bipartite,
}

/// The strict upper bound on the length minimum over non-uniform fillings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonuniformBound {
    pub m: usize,
    pub k: usize,
    pub d: usize,
    #[serde(serialize_with = "ser_sig15")]
    pub bound: f64,
    pub strict: bool,
}

/// Whether the triple `(a, b, c)` is hyperbolic: `1/a + 1/b + 1/c < 1`,
/// checked in integers.
pub fn is_hyperbolic_triple(a: usize, b: usize, c: usize) -> bool {
    let (a, b, c) = (a as u128, b as u128, c as u128);
    b * c + a * c + a * b < a * b * c
}

fn require_positive(name: &'static str, value: usize) -> Result<()> {
    if value < 1 {
        return Err(Error::ParameterRange {
            name,
            value,
            min: 1,
        });
    }
    Ok(())
}

/// Minimal length for a clean uniform dessin of type `(2, 2m, k)` whose
/// curve has `d` arcs: `d * acosh((cos^2(pi/2m) + cos(2pi/k)) / sin^2(pi/2m))`,
/// equal to `2d * acosh(cos(pi/k) / sin(pi/2m))`.
///
/// Both closed forms are evaluated; they must agree to [`TOL_IDENTITY`]
/// relative error (a failure is a formula bug, not noise, so it panics).
pub fn min_length_clean(m: usize, k: usize, d: usize) -> Result<LengthReport> {
    require_positive("m", m)?;
    require_positive("k", k)?;
    require_positive("d", d)?;
    if !is_hyperbolic_triple(2, 2 * m, k) {
        return Err(Error::NotHyperbolic(2, 2 * m, k));
    }
    let mf = m as f64;
    let kf = k as f64;
    let cos_half = (PI / (2.0 * mf)).cos();
    let sin_half = (PI / (2.0 * mf)).sin();
    let arg_long = (cos_half * cos_half + (2.0 * PI / kf).cos()) / (sin_half * sin_half);
    let total = d as f64 * arg_long.acosh();
    let edge_length = ((PI / kf).cos() / sin_half).acosh();
    let rewritten = 2.0 * d as f64 * edge_length;
    assert!(
        (total - rewritten).abs() <= TOL_IDENTITY * total.abs().max(1.0),
        "closed forms disagree for (m={m}, k={k}, d={d}): {total} vs {rewritten}"
    );
    Ok(LengthReport {
        m,
        k: Some(k),
        d,
        l: None,
        j: None,
        edge_length,
        total,
        formula_used: FormulaUsed::Clean,
    })
}

/// Minimal length for a bipartite uniform curve dessin of type
/// `(2l, 2m, j)` with `d` arcs:
/// `d * acosh((cos(pi/2m) cos(pi/2l) + cos(pi/j)) / (sin(pi/2m) sin(pi/2l)))`.
///
/// With `l == m` and `j == k/2` this equals [`min_length_clean`]`(m, k, d)`.
pub fn min_length_bipartite(l: usize, m: usize, j: usize, d: usize) -> Result<LengthReport> {
    require_positive("l", l)?;
    require_positive("m", m)?;
    require_positive("j", j)?;
    require_positive("d", d)?;
    if !is_hyperbolic_triple(2 * l, 2 * m, j) {
        return Err(Error::NotHyperbolic(2 * l, 2 * m, j));
    }
    let half_m = PI / (2.0 * m as f64);
    let half_l = PI / (2.0 * l as f64);
    let arg = (half_m.cos() * half_l.cos() + (PI / j as f64).cos()) / (half_m.sin() * half_l.sin());
    let edge_length = arg.acosh();
    Ok(LengthReport {
        m,
        k: None,
        d,
        l: Some(l),
        j: Some(j),
        edge_length,
        total: d as f64 * edge_length,
        formula_used: FormulaUsed::Bipartite,
    })
}

/// Face degree forced by genus and face count for general-position uniform
/// curves: `8g - 8 = n(k - 4)`, so `k = (8g - 8)/n + 4` when integral.
pub fn face_constraint(genus: usize, n: usize) -> Result<usize> {
    if genus < 2 {
        return Err(Error::ParameterRange {
            name: "genus",
            value: genus,
            min: 2,
        });
    }
    require_positive("n", n)?;
    let numerator = 8 * genus - 8;
    if numerator % n != 0 {
        return Err(Error::NonIntegralFaceDegree { genus, n });
    }
    Ok(numerator / n + 4)
}

/// The strict upper bound for non-uniform filling dessins: numerically the
/// same value as [`min_length_clean`], but only an upper bound, never
/// attained.
pub fn nonuniform_upper_bound(m: usize, k: usize, d: usize) -> Result<NonuniformBound> {
    let report = min_length_clean(m, k, d)?;
    Ok(NonuniformBound {
        m,
        k,
        d,
        bound: report.total,
        strict: true,
    })
}

// ---------------------------------------------------------------------------
// Disk-model Mobius maps.

/// Orientation-preserving disk automorphism `z -> (az + b)/(conj(b) z + conj(a))`
/// with `|a|^2 - |b|^2 = 1` (an SU(1,1) matrix `[[a, b], [conj(b), conj(a)]]`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
}

impl Mobius {
    pub fn identity() -> Mobius {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Rotation by `theta` (counterclockwise) about the origin.
    pub fn rotation(theta: f64) -> Mobius {
        Mobius {
            a: Complex64::from_polar(1.0, theta / 2.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// The map taking 0 to `w` along the diameter through `w`.
    pub fn translation_to(w: Complex64) -> Mobius {
        let s = (1.0 - w.norm_sqr()).sqrt();
        Mobius { a: Complex64::new(1.0, 0.0) / s, b: w / s }
    }

    /// Rotation by `theta` about the disk point `w`.
    pub fn rotation_about(w: Complex64, theta: f64) -> Mobius {
        let t = Mobius::translation_to(w);
        t.mul(&Mobius::rotation(theta)).mul(&t.inverse())
    }

    /// Matrix product `self * rhs`: applies `rhs` first.
    pub fn mul(&self, rhs: &Mobius) -> Mobius {
        Mobius {
            a: self.a * rhs.a + self.b * rhs.b.conj(),
            b: self.a * rhs.b + self.b * rhs.a.conj(),
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    #[cfg(test)]
    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    /// Distance to the identity up to projective sign, as the max-norm of
    /// the smaller of `M - I` and `M + I`.
    #[cfg(test)]
    pub fn distance_to_identity(&self) -> f64 {
        let plus = (self.a - 1.0).norm().max(self.b.norm());
        let minus = (self.a + 1.0).norm().max(self.b.norm());
        plus.min(minus)
    }

    /// The corresponding real matrix acting on the upper half-plane,
    /// conjugated through the Cayley transform. The conjugation is exact:
    /// `[[Re a + Re b, Im a - Im b], [-Im a - Im b, Re a - Re b]]`.
    pub fn to_real(&self) -> [[f64; 2]; 2] {
        [
            [self.a.re + self.b.re, self.a.im - self.b.im],
            [-self.a.im - self.b.im, self.a.re - self.b.re],
        ]
    }

    pub fn to_isometry(&self) -> Isometry {
        classify_isometry(self.to_real()).expect("SU(1,1) maps have determinant 1")
    }
}

/// Hyperbolic distance between two points of the unit disk.
#[cfg(test)]
pub(crate) fn disk_distance(z1: Complex64, z2: Complex64) -> f64 {
    let num = 2.0 * (z1 - z2).norm_sqr();
    let den = (1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr());
    (1.0 + num / den).acosh()
}

// ---------------------------------------------------------------------------
// Triangle groups.

/// The rotation group of a hyperbolic triangle with angles
/// `pi/a, pi/b, pi/c`, kept in disk-model form for tiling work.
///
/// The triangle is placed with the `c`-vertex at the origin, the `a`-vertex
/// on the positive real axis and the `b`-vertex at argument `pi/c`
/// (counterclockwise orientation). The generators `x`, `y`, `z` are the
/// clockwise rotations by `2pi/a`, `2pi/b`, `2pi/c` about the respective
/// vertices, so applying `x`, then `y`, then `z` is the identity.
#[derive(Debug, Clone)]
pub(crate) struct TriangleGroup {
    pub x: Mobius,
    pub y: Mobius,
    pub z: Mobius,
    pub vertex_a: Complex64,
    pub vertex_b: Complex64,
    pub vertex_c: Complex64,
}

impl TriangleGroup {
    pub fn new(a: usize, b: usize, c: usize) -> Result<TriangleGroup> {
        if !is_hyperbolic_triple(a, b, c) {
            return Err(Error::NotHyperbolic(a, b, c));
        }
        let alpha = PI / a as f64;
        let beta = PI / b as f64;
        let gamma = PI / c as f64;
        // Side lengths opposite each angle, from the dual cosine rule.
        let dist_ca = ((alpha.cos() * gamma.cos() + beta.cos()) / (alpha.sin() * gamma.sin()))
            .acosh();
        let dist_cb = ((beta.cos() * gamma.cos() + alpha.cos()) / (beta.sin() * gamma.sin()))
            .acosh();
        let vertex_c = Complex64::new(0.0, 0.0);
        let vertex_a = Complex64::new((dist_ca / 2.0).tanh(), 0.0);
        let vertex_b = Complex64::from_polar((dist_cb / 2.0).tanh(), gamma);
        let x = Mobius::rotation_about(vertex_a, -2.0 * PI / a as f64);
        let y = Mobius::rotation_about(vertex_b, -2.0 * PI / b as f64);
        let z = Mobius::rotation_about(vertex_c, -2.0 * PI / c as f64);
        Ok(TriangleGroup {
            x,
            y,
            z,
            vertex_a,
            vertex_b,
            vertex_c,
        })
    }
}

/// Real unit-determinant generator matrices `(x, y, z)` for the triangle
/// group of signature `(a, b, c)`: rotations by `2pi/a`, `2pi/b`, `2pi/c`
/// about the vertices of a triangle with angles `pi/a`, `pi/b`, `pi/c`.
/// Scanning `x`, then `y`, then `z` composes to the identity up to sign;
/// `x^a`, `y^b`, `z^c` likewise.
pub fn triangle_group_matrices(a: usize, b: usize, c: usize) -> Result<(Isometry, Isometry, Isometry)> {
    let group = TriangleGroup::new(a, b, c)?;
    Ok((
        group.x.to_isometry(),
        group.y.to_isometry(),
        group.z.to_isometry(),
    ))
}

// ---------------------------------------------------------------------------
// Isometry classification.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// A classified orientation-preserving isometry of the hyperbolic plane as
/// a real matrix with determinant 1, canonical up to global sign (the first
/// entry of magnitude above 1e-9 is made positive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Isometry {
    pub matrix: [[f64; 2]; 2],
    pub kind: IsometryKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translation_length: Option<f64>,
}

/// Classifies a real matrix with `|det - 1| < 1e-9` by its trace: within
/// [`TOL_TRACE`] of (+/-)2 is parabolic (or the identity when the whole
/// matrix is (+/-)I), below is elliptic, above is hyperbolic with
/// translation length `2 acosh(|tr|/2)`.
pub fn classify_isometry(matrix: [[f64; 2]; 2]) -> Result<Isometry> {
    let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    if (det - 1.0).abs() >= TOL_MATRIX {
        return Err(Error::NotUnimodular(det));
    }
    let normalized = sign_normalize(matrix);
    let trace = matrix[0][0] + matrix[1][1];
    let is_identity = (normalized[0][0] - 1.0).abs() <= TOL_TRACE
        && normalized[0][1].abs() <= TOL_TRACE
        && normalized[1][0].abs() <= TOL_TRACE
        && (normalized[1][1] - 1.0).abs() <= TOL_TRACE;
    let (kind, translation_length) = if is_identity {
        (IsometryKind::Identity, None)
    } else if (trace.abs() - 2.0).abs() <= TOL_TRACE {
        (IsometryKind::Parabolic, None)
    } else if trace.abs() < 2.0 {
        (IsometryKind::Elliptic, None)
    } else {
        (
            IsometryKind::Hyperbolic,
            Some(2.0 * (trace.abs() / 2.0).acosh()),
        )
    };
    Ok(Isometry {
        matrix: normalized,
        kind,
        translation_length,
    })
}

fn sign_normalize(matrix: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    for row in matrix {
        for entry in row {
            if entry.abs() > 1e-9 {
                if entry < 0.0 {
                    return [
                        [-matrix[0][0], -matrix[0][1]],
                        [-matrix[1][0], -matrix[1][1]],
                    ];
                }
                return matrix;
            }
        }
    }
    matrix
}

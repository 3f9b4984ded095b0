//! Piecewise-linear billiard trajectories in three domains: a cylinder,
//! a flat solid torus (cube with identified front and back face) and a cube.
//!
//! All parameter arithmetic is exact over rationals; floating point enters
//! only through the slice angle `beta` of the cylinder geometry.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact carrier for curve parameters, phases and heights.
pub type Rational = num_rational::Rational64;

/// Shorthand constructor, `rat(p, q) = p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: Rational) -> Rational {
    q - q.floor()
}

/// The sawtooth `g(t) = 2|t - floor(t) - 1/2|`, the piecewise-linear
/// analogue of `(cos(2 pi t) + 1)/2`. It is 1-periodic with `g(0) = 1`,
/// `g(1/2) = 0` and satisfies `g(t + 1/2) = 1 - g(t)`.
pub fn sawtooth(t: Rational) -> Rational {
    let f = frac(t) - rat(1, 2);
    f.abs() * 2
}

/// Floating point sawtooth for plotting and slice-angle evaluation.
pub fn sawtooth_f64(t: f64) -> f64 {
    2.0 * (t - t.floor() - 0.5).abs()
}

/// Sign of the slope of `t -> g(t)` at a non-vertex point:
/// `-1` on the descending half, `+1` on the ascending half.
pub fn sawtooth_slope_sign(t: Rational) -> i8 {
    let f = frac(t);
    debug_assert!(!f.is_zero() && f != rat(1, 2), "slope queried at a vertex");
    if f < rat(1, 2) {
        -1
    } else {
        1
    }
}

/// The billiard domain a curve lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// Solid cylinder; the projected curve is a star polygon in a disk
    /// slice of angle `beta` with identified radial faces.
    Cylinder,
    /// Cube with identified front and back face.
    FlatTorus,
    /// Plain cube; curves are piecewise-linear Lissajous trajectories.
    Cube,
}

/// Parameters of one billiard curve.
///
/// For the cylinder and the flat solid torus, `s` counts rotations
/// (strings), `n` reflections in the first transverse direction and `m`
/// reflections in the height direction. For the cube the three fields are
/// the frequencies of the x, y and z sawtooth components.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardParams {
    pub geometry: Geometry,
    pub s: u32,
    pub n: u32,
    pub m: u32,
    /// Height phase (`gamma` for the cube), in `[0, 1)`.
    pub phase: Rational,
    /// Slice angle in `(0, 2*pi]`; only the cylinder geometry reads it.
    pub beta: f64,
}

impl BilliardParams {
    /// Cylinder knot parameters at the full angle `beta = 2*pi`.
    pub fn cylinder(s: u32, n: u32, m: u32) -> Result<Self> {
        Self::cylinder_slice(s, n, m, std::f64::consts::TAU)
    }

    /// Cylinder slice of angle `beta` with identified radial faces.
    pub fn cylinder_slice(s: u32, n: u32, m: u32, beta: f64) -> Result<Self> {
        let p = BilliardParams {
            geometry: Geometry::Cylinder,
            s,
            n,
            m,
            phase: Rational::zero(),
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn flat_torus(s: u32, n: u32, m: u32) -> Result<Self> {
        let p = BilliardParams {
            geometry: Geometry::FlatTorus,
            s,
            n,
            m,
            phase: Rational::zero(),
            beta: std::f64::consts::TAU,
        };
        p.validate()?;
        Ok(p)
    }

    /// Cube curve `t -> (g(n1 t + 1/4), g(n2 t), g(n3 t + gamma))`.
    pub fn cube(n1: u32, n2: u32, n3: u32) -> Result<Self> {
        let p = BilliardParams {
            geometry: Geometry::Cube,
            s: n1,
            n: n2,
            m: n3,
            phase: Rational::zero(),
            beta: std::f64::consts::TAU,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_phase(mut self, phase: Rational) -> Self {
        self.phase = frac(phase);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.n == 0 || self.m == 0 {
            return Err(Error::InvalidParameters(
                "all frequencies must be positive".into(),
            ));
        }
        if self.phase < Rational::zero() || self.phase >= Rational::from_integer(1) {
            return Err(Error::InvalidParameters(format!(
                "phase {} outside [0, 1)",
                self.phase
            )));
        }
        match self.geometry {
            Geometry::Cylinder => {
                check_coprime("s", self.s, "n", self.n)?;
                if !(self.beta > 0.0 && self.beta <= std::f64::consts::TAU + 1e-12) {
                    return Err(Error::InvalidParameters(format!(
                        "slice angle {} outside (0, 2*pi]",
                        self.beta
                    )));
                }
            }
            Geometry::FlatTorus => {
                check_coprime("s", self.s, "n", self.n)?;
                check_coprime("s", self.s, "m", self.m)?;
            }
            Geometry::Cube => {
                check_coprime("n1", self.s, "n2", self.n)?;
                check_coprime("n2", self.n, "n3", self.m)?;
                check_coprime("n1", self.s, "n3", self.m)?;
                if self.n % 2 == 0 {
                    return Err(Error::InvalidParameters(format!(
                        "cube frequency n2 = {} must be odd",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when the classical star-polygon picture exists for this
    /// cylinder: every chord then meets only non-adjacent chords.
    pub fn cylinder_classical(&self) -> bool {
        self.n >= 2 * self.s + 1
    }
}

fn check_coprime(an: &str, a: u32, bn: &str, b: u32) -> Result<()> {
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidParameters(format!(
            "gcd({an}, {bn}) = gcd({a}, {b}) > 1"
        )));
    }
    Ok(())
}

/// A point of the billiard domain. Cube and flat-torus coordinates lie in
/// `[0, 1]^3`; the cylinder slice reports `(angle/beta, radius, height)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Point of the closed billiard curve at parameter `t` (taken mod 1).
pub fn curve_point(params: &BilliardParams, t: Rational) -> Point3 {
    let t = frac(t);
    let s = params.s as i64;
    let n = params.n as i64;
    let m = params.m as i64;
    match params.geometry {
        Geometry::FlatTorus => Point3 {
            x: to_f64(frac(t * s)),
            y: to_f64(sawtooth(t * n)),
            z: to_f64(sawtooth(t * m + params.phase)),
        },
        Geometry::Cube => Point3 {
            x: to_f64(sawtooth(t * s + rat(1, 4))),
            y: to_f64(sawtooth(t * n)),
            z: to_f64(sawtooth(t * m + params.phase)),
        },
        Geometry::Cylinder => {
            let beta = params.beta;
            let step = params.s as f64 * beta / params.n as f64;
            // chord floor(n t), fraction u along it
            let nt = t * n;
            let j = nt.floor().to_integer();
            let u = to_f64(nt - Rational::from_integer(j));
            let a0 = j as f64 * step;
            let a1 = a0 + step;
            let (px, py) = (
                (1.0 - u) * a0.cos() + u * a1.cos(),
                (1.0 - u) * a0.sin() + u * a1.sin(),
            );
            let r = px.hypot(py);
            let theta = py.atan2(px).rem_euclid(beta);
            Point3 {
                x: theta / beta,
                y: r,
                z: to_f64(sawtooth(t * m + params.phase)),
            }
        }
    }
}

/// The `n` reflection points of the projected cylinder curve on the
/// boundary arc of the `beta`-slice, in traversal order. Consecutive
/// vertices subtend the angle `s*beta/n`.
pub fn star_polygon_vertices(s: u32, n: u32, beta: f64) -> Result<Vec<(f64, f64)>> {
    if s.gcd(&n) != 1 {
        return Err(Error::InvalidParameters(format!(
            "gcd(s, n) = gcd({s}, {n}) > 1"
        )));
    }
    if !(beta > 0.0 && beta <= std::f64::consts::TAU + 1e-12) {
        return Err(Error::InvalidParameters(format!(
            "slice angle {beta} outside (0, 2*pi]"
        )));
    }
    let step = s as f64 * beta / n as f64;
    Ok((0..n)
        .map(|j| {
            let a = (j as f64 * step).rem_euclid(beta);
            (a.cos(), a.sin())
        })
        .collect())
}

pub(crate) fn to_f64(q: Rational) -> f64 {
    q.to_f64().expect("rational fits in f64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(rat(0, 1)), rat(1, 1));
        assert_eq!(sawtooth(rat(1, 4)), rat(1, 2));
        assert_eq!(sawtooth(rat(1, 2)), rat(0, 1));
        assert_eq!(sawtooth(rat(3, 10)), rat(2, 5)); // g(0.3) = 0.4
        assert_eq!(sawtooth(rat(-17, 4)), sawtooth(rat(3, 4)));
    }

    #[test]
    fn sawtooth_half_period_flip() {
        for p in -20..40i64 {
            let t = rat(p, 17);
            assert_eq!(sawtooth(t + rat(1, 2)), rat(1, 1) - sawtooth(t));
        }
    }

    #[test]
    fn flat_torus_base_point() {
        let p = BilliardParams::flat_torus(3, 7, 5).unwrap();
        let q = curve_point(&p, rat(0, 1));
        assert_eq!((q.x, q.y, q.z), (0.0, 1.0, 1.0));
        assert_eq!(curve_point(&p, rat(1, 1)), q);
    }

    #[test]
    fn cube_projection_starts_on_symmetry_axis() {
        let p = BilliardParams::cube(2, 11, 35).unwrap();
        let q = curve_point(&p, rat(0, 1));
        assert_eq!(q.x, 0.5); // g(1/4) = 1/2
    }

    #[test]
    fn flat_torus_half_shift_symmetry() {
        // t -> t + 1/2 sends (x, y, z) to (x + s/2 mod 1, 1 - y, 1 - z).
        let p = BilliardParams::flat_torus(3, 7, 5).unwrap();
        for k in 0..40i64 {
            let t = rat(k, 41);
            let a = curve_point(&p, t);
            let b = curve_point(&p, t + rat(1, 2));
            assert!((b.x - (a.x + 1.5).rem_euclid(1.0)).abs() < 1e-12);
            assert!((b.y - (1.0 - a.y)).abs() < 1e-12);
            assert!((b.z - (1.0 - a.z)).abs() < 1e-12);
        }
    }

    #[test]
    fn star_polygon_rejects_bad_angles() {
        assert!(star_polygon_vertices(2, 5, 0.0).is_err());
        assert!(star_polygon_vertices(2, 5, 7.0).is_err());
        assert!(star_polygon_vertices(2, 4, 1.0).is_err());
    }

    #[test]
    fn pentagram_vertices() {
        let v = star_polygon_vertices(2, 5, std::f64::consts::TAU).unwrap();
        for (j, (x, y)) in v.iter().enumerate() {
            let a = std::f64::consts::TAU * (2 * j) as f64 / 5.0;
            assert!((x - a.cos()).abs() < 1e-12);
            assert!((y - a.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn params_validation() {
        assert!(BilliardParams::cylinder(2, 4, 3).is_err());
        assert!(BilliardParams::flat_torus(2, 5, 4).is_err()); // gcd(s, m) = 2
        assert!(BilliardParams::cube(2, 4, 5).is_err()); // n2 even
        assert!(BilliardParams::cube(2, 11, 35).is_ok());
        assert!(BilliardParams::cylinder_slice(2, 5, 3, -1.0).is_err());
    }
}

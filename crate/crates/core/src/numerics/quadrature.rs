use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for path integrals.
pub const DEFAULT_TOLERANCE: f64 = 1e-11;

const MAX_PANELS: usize = 20_000;
const MIN_PANEL: f64 = 1e-13;

// 15-point Kronrod abscissae on [-1, 1] (positive half, descending) with the
// embedded 7-point Gauss rule at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// A polyline in the complex plane with an absolute error target.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationPath {
    points: Vec<Complex64>,
    pub tolerance: f64,
}

impl IntegrationPath {
    pub fn straight(from: Complex64, to: Complex64) -> Self {
        Self {
            points: vec![from, to],
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// A polyline through `points`; needs at least two.
    pub fn polyline(points: Vec<Complex64>) -> Self {
        assert!(points.len() >= 2, "a path needs at least two points");
        Self {
            points,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// A closed polygon through `n` equally spaced points of a circle.
    pub fn circle_loop(center: Complex64, radius: f64, n: usize) -> Self {
        let mut points: Vec<_> = (0..n)
            .map(|k| center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        points.push(points[0]);
        Self::polyline(points)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.points.last().unwrap()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|s| (s[1] - s[0]).norm()).sum()
    }

    /// Reroutes the path around branch-cut segments and isolated singular
    /// points.
    ///
    /// A segment passing within `1e-6 · scale` of a singular point gets a
    /// waypoint offset perpendicular to it by `0.1 · scale`. A segment crossing
    /// a cut goes around the nearer cut endpoint at clearance `0.1 · half-length`.
    pub fn avoiding(
        self,
        cuts: &[(Complex64, Complex64)],
        singular: &[Complex64],
        scale: f64,
    ) -> Self {
        let mut points = vec![self.points[0]];
        for seg in self.points.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let mut waypoints = Vec::new();
            for &(c0, c1) in cuts {
                if let Some(t) = segment_crossing(a, b, c0, c1) {
                    let crossing = a + (b - a) * t;
                    let (near, far) = if (crossing - c0).norm() < (crossing - c1).norm() {
                        (c0, c1)
                    } else {
                        (c1, c0)
                    };
                    let along = (near - far) / (near - far).norm();
                    let clearance = 0.05 * (c1 - c0).norm();
                    let normal = Complex64::i() * along;
                    let side = if ((a - crossing) * normal.conj()).re >= 0.0 { 1.0 } else { -1.0 };
                    waypoints.push(near + normal * side * clearance + along * clearance);
                    waypoints.push(near - normal * side * clearance + along * clearance);
                }
            }
            for &s in singular {
                let dir = b - a;
                let len = dir.norm();
                if len == 0.0 {
                    continue;
                }
                let t = ((s - a) * dir.conj()).re / (len * len);
                if t > 0.0 && t < 1.0 {
                    let foot = a + dir * t;
                    if (foot - s).norm() < 1e-6 * scale {
                        let normal = Complex64::i() * dir / len;
                        waypoints.push(s + normal * 0.1 * scale);
                    }
                }
            }
            points.extend(waypoints);
            points.push(b);
        }
        Self {
            points,
            tolerance: self.tolerance,
        }
    }
}

/// Parameter `t ∈ (0, 1)` where segment `a→b` crosses the open segment `c0→c1`.
fn segment_crossing(a: Complex64, b: Complex64, c0: Complex64, c1: Complex64) -> Option<f64> {
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let r = b - a;
    let s = c1 - c0;
    let denom = cross(r, s);
    if denom.abs() < 1e-300 {
        return None;
    }
    let t = cross(c0 - a, s) / denom;
    let u = cross(c0 - a, r) / denom;
    (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0).then_some(t)
}

/// Value of a path integral with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error_bound: f64,
    pub evaluations: usize,
}

/// `∫ f(z) dz` along `path`.
pub fn integrate_path<F>(f: F, path: &IntegrationPath) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    integrate_path_detailed(f, path).map(|q| q.value)
}

/// Adaptive 7/15-point Gauss–Kronrod quadrature over every segment of `path`.
///
/// Panels are bisected depth-first until each one's `|K15 − G7|` drops below
/// its share of the tolerance, so the result is deterministic.
pub fn integrate_path_detailed<F>(mut f: F, path: &IntegrationPath) -> Result<Quadrature>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let total_len = path.length();
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_bound = 0.0;
    let mut evaluations = 0;
    let mut panels = 0;
    let mut failed = false;
    if total_len == 0.0 {
        return Ok(Quadrature {
            value,
            error_bound,
            evaluations,
        });
    }
    for seg in path.points.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let seg_len = (b - a).norm();
        if seg_len == 0.0 {
            continue;
        }
        let mut stack = vec![(0.0f64, 1.0f64)];
        while let Some((lo, hi)) = stack.pop() {
            let panel = kronrod_panel(&mut f, a, b, lo, hi)?;
            evaluations += 15;
            panels += 1;
            let local_tol = path.tolerance * seg_len * (hi - lo) / total_len;
            let roundoff = 50.0 * f64::EPSILON * panel.abs_integral;
            if panel.error <= local_tol.max(roundoff) {
                value += panel.value;
                error_bound += panel.error;
            } else if panels >= MAX_PANELS || (hi - lo) * seg_len < MIN_PANEL * total_len.max(1.0) {
                value += panel.value;
                error_bound += panel.error;
                failed = true;
            } else {
                let mid = 0.5 * (lo + hi);
                // push the right half first so the left half is finished first
                stack.push((mid, hi));
                stack.push((lo, mid));
            }
        }
    }
    if failed {
        return Err(Error::ToleranceNotMet {
            estimate: value,
            error_bound,
        });
    }
    Ok(Quadrature {
        value,
        error_bound,
        evaluations,
    })
}

struct Panel {
    value: Complex64,
    error: f64,
    abs_integral: f64,
}

fn kronrod_panel<F>(f: &mut F, a: Complex64, b: Complex64, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let dz = b - a;
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |s: f64| -> Result<Complex64> {
        let node = a + dz * s;
        let v = f(node).map_err(|e| Error::SingularPanel {
            node,
            reason: e.to_string(),
        })?;
        if !v.is_finite() {
            return Err(Error::SingularPanel {
                node,
                reason: "non-finite integrand".into(),
            });
        }
        Ok(v)
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = eval(center - x)?;
        let f2 = eval(center + x)?;
        let pair = f1 + f2;
        kronrod += pair * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let scale = dz * half;
    Ok(Panel {
        value: kronrod * scale,
        error: ((kronrod - gauss) * scale).norm(),
        abs_integral: abs_sum * scale.norm(),
    })
}

//! Frame distances: euclidean on the model surface, minimal over the groupset
//! in R⁴, and a polynomial oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::DistError;
use crate::forms::{octa_forms, SurfacePoint};
use crate::groups::binary_octahedral;
use crate::quat::{to_su2_frame, Quaternion, AXIS_TOL};
use crate::Vec3;

/// Number of sphere samples used by [`poly_frame_distance`].
pub const POLY_SAMPLES: usize = 242;

/// `√Σ|dh_i|²`.
pub fn c3_distance(a: &SurfacePoint, b: &SurfacePoint) -> f64 {
    a.components()
        .iter()
        .zip(b.components().iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn check_unit(q: Quaternion) -> Result<(), DistError> {
    if !q.is_unit(AXIS_TOL) {
        return Err(DistError::Quat(crate::error::QuatError::NonUnit { norm: q.norm() }));
    }
    Ok(())
}

/// `min_ô |qa - qb ô|` over the binary octahedral group.
pub fn r4_frame_distance(qa: Quaternion, qb: Quaternion) -> Result<f64, DistError> {
    check_unit(qa)?;
    check_unit(qb)?;
    Ok(binary_octahedral()
        .iter()
        .map(|o| qa.distance(qb * *o))
        .fold(f64::INFINITY, f64::min))
}

/// Deterministic, nearly uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * i as f64).sin_cos();
            [r * c, r * s, z]
        })
        .collect()
}

fn sphere() -> &'static [Vec3] {
    static CELL: OnceLock<Vec<Vec3>> = OnceLock::new();
    CELL.get_or_init(|| fibonacci_sphere(POLY_SAMPLES))
}

/// `x⁴ + y⁴ + z⁴` of `x` expressed in the frame of `q`.
pub fn frame_polynomial(q: Quaternion, x: Vec3) -> Result<f64, DistError> {
    let y = q.conjugate().rotate_vector(x)?;
    Ok(y.iter().map(|c| c.powi(4)).sum())
}

/// RMS difference of the two frame polynomials over [`POLY_SAMPLES`] points.
pub fn poly_frame_distance(qa: Quaternion, qb: Quaternion) -> Result<f64, DistError> {
    check_unit(qa)?;
    check_unit(qb)?;
    let pts = sphere();
    let mut acc = 0.0;
    for x in pts {
        let d = frame_polynomial(qa, *x)? - frame_polynomial(qb, *x)?;
        acc += d * d;
    }
    Ok((acc / pts.len() as f64).sqrt())
}

/// One row of a distance experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRecord {
    pub index: usize,
    /// Rotation angle for sweeps.
    pub alpha: Option<f64>,
    pub d_c3: f64,
    pub d_r4: f64,
    pub d_poly: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::I, Axis::J, Axis::K];

    pub fn vector(self) -> Vec3 {
        match self {
            Axis::I => [1.0, 0.0, 0.0],
            Axis::J => [0.0, 1.0, 0.0],
            Axis::K => [0.0, 0.0, 1.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::I => "i",
            Axis::J => "j",
            Axis::K => "k",
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = DistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "i" | "x" => Ok(Axis::I),
            "j" | "y" => Ok(Axis::J),
            "k" | "z" => Ok(Axis::K),
            other => Err(DistError::InvalidArgument(format!("unknown axis '{other}'"))),
        }
    }
}

fn record(index: usize, alpha: Option<f64>, q: Quaternion) -> Result<DistanceRecord, DistError> {
    let cartesian = SurfacePoint::octa_real(1.0, 0.0, 0.0);
    Ok(DistanceRecord {
        index,
        alpha,
        d_c3: c3_distance(&octa_forms(to_su2_frame(q)), &cartesian),
        d_r4: r4_frame_distance(Quaternion::ONE, q)?,
        d_poly: Some(poly_frame_distance(Quaternion::ONE, q)?),
    })
}

/// Distances from the cartesian frame of frames rotated about `axis` by `α`
/// uniform on `[0, π/2]`.
pub fn axis_sweep(axis: Axis, samples: usize) -> Result<Vec<DistanceRecord>, DistError> {
    if samples < 2 {
        return Err(DistError::InvalidArgument(format!("samples must be at least 2, got {samples}")));
    }
    (0..samples)
        .map(|s| {
            let alpha = FRAC_PI_2 * s as f64 / (samples - 1) as f64;
            let q = Quaternion::from_axis_angle(axis.vector(), alpha)?;
            record(s, Some(alpha), q)
        })
        .collect()
}

/// `count` uniformly random unit quaternions from a ChaCha8 stream seeded
/// with `seed`.
pub fn random_unit_quaternions(count: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count.min(1 << 20));
    while out.len() < count {
        let a: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let q = Quaternion::from_array(a);
        if let Ok(u) = q.normalized() {
            if u.norm_squared() > 0.0 {
                out.push(u);
            }
        }
    }
    out
}

/// Distances from the cartesian frame of `count` random frames.
pub fn random_study(count: usize, seed: u64) -> Result<Vec<DistanceRecord>, DistError> {
    if count == 0 {
        return Err(DistError::InvalidArgument("count must be at least 1".into()));
    }
    random_unit_quaternions(count, seed)
        .into_par_iter()
        .enumerate()
        .map(|(i, q)| record(i, None, q))
        .collect()
}

/// A pair of records with nearly equal `d_r4` but very different `d_c3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InconsistentPair {
    pub first: usize,
    pub second: usize,
    /// `max(d_c3) / min(d_c3)`.
    pub ratio: f64,
    pub d_r4_gap: f64,
}

/// The pair maximizing the `d_c3` ratio among pairs whose `d_r4` differ by at
/// most `window`.
pub fn most_inconsistent_pair(records: &[DistanceRecord], window: f64) -> Option<InconsistentPair> {
    let mut order: Vec<usize> = (0..records.len()).filter(|&i| records[i].d_c3 > 0.0).collect();
    order.sort_by(|&a, &b| records[a].d_r4.total_cmp(&records[b].d_r4));
    let mut best: Option<InconsistentPair> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            let gap = records[j].d_r4 - records[i].d_r4;
            if gap > window {
                break;
            }
            let (x, y) = (records[i].d_c3, records[j].d_c3);
            let ratio = x.max(y) / x.min(y);
            if best.is_none_or(|b| ratio > b.ratio) {
                best = Some(InconsistentPair { first: i, second: j, ratio, d_r4_gap: gap });
            }
        }
    }
    best
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut s = 0;
    while s < idx.len() {
        let mut e = s;
        while e + 1 < idx.len() && xs[idx[e + 1]] == xs[idx[s]] {
            e += 1;
        }
        let avg = (s + e) as f64 / 2.0 + 1.0;
        for &k in &idx[s..=e] {
            r[k] = avg;
        }
        s = e + 1;
    }
    r
}

/// Spearman rank correlation with averaged ties; `None` for fewer than two
/// samples or a constant series.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(ry.iter()) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

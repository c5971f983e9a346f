//! Finite quaternion groups generated by `(p; q; 2)` presentations.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::quat::Quaternion;

/// Componentwise tolerance of the presentation relations.
pub const PRESENTATION_TOL: f64 = 1e-10;

/// Tolerance used to identify two group elements during closure.
pub const DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Vierer,
    BinaryTetrahedral,
    BinaryOctahedral,
}

impl GroupKind {
    pub const ALL: [GroupKind; 3] =
        [GroupKind::Vierer, GroupKind::BinaryTetrahedral, GroupKind::BinaryOctahedral];

    /// The `(p, q)` of the `(p; q; 2)` triplet.
    pub fn presentation(self) -> (u32, u32) {
        match self {
            GroupKind::Vierer => (2, 2),
            GroupKind::BinaryTetrahedral => (3, 3),
            GroupKind::BinaryOctahedral => (4, 3),
        }
    }

    /// Number of unit quaternions in the group.
    pub fn order(self) -> usize {
        match self {
            GroupKind::Vierer => 8,
            GroupKind::BinaryTetrahedral => 24,
            GroupKind::BinaryOctahedral => 48,
        }
    }

    /// Number of distinct rotations (half the quaternion count).
    pub fn rotation_count(self) -> usize {
        self.order() / 2
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Vierer => "vierer",
            GroupKind::BinaryTetrahedral => "binary tetrahedral",
            GroupKind::BinaryOctahedral => "binary octahedral",
        }
    }
}

/// The three generators `â = cos(π/p) + a sin(π/p)`, `b̂`, `ĉ = c`.
///
/// For the octahedral triple `c = (i + k)/√2`: with `a = i` and
/// `b = (i + j + k)/√3` it is the only half-turn axis giving `a b c = -1`.
pub fn generators(kind: GroupKind) -> [Quaternion; 3] {
    let s3 = 1.0 / 3f64.sqrt();
    let s2 = 1.0 / 2f64.sqrt();
    let (a, b, c) = match kind {
        GroupKind::Vierer => ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
        GroupKind::BinaryTetrahedral => ([s3, s3, s3], [-s3, s3, s3], [0.0, 0.0, 1.0]),
        GroupKind::BinaryOctahedral => ([1.0, 0.0, 0.0], [s3, s3, s3], [s2, 0.0, s2]),
    };
    let (p, q) = kind.presentation();
    [rotor(a, PI / p as f64), rotor(b, PI / q as f64), rotor(c, PI / 2.0)]
}

fn rotor(axis: [f64; 3], half_angle: f64) -> Quaternion {
    let (s, c) = half_angle.sin_cos();
    Quaternion::new(c, s * axis[0], s * axis[1], s * axis[2])
}

/// Checks `a^p = b^q = c² = a b c = -1` componentwise.
pub fn verify_presentation(a: Quaternion, b: Quaternion, c: Quaternion, p: u32, q: u32) -> bool {
    let minus_one = -Quaternion::ONE;
    [a.powi(p), b.powi(q), c.powi(2), a * b * c]
        .iter()
        .all(|x| x.max_abs_diff(minus_one) <= PRESENTATION_TOL)
}

/// A finite group of unit quaternions: all quaternions describing one frame
/// are `r ô` for `ô` in the binary octahedral groupset.
#[derive(Debug, Clone, PartialEq)]
pub struct Groupset {
    pub kind: GroupKind,
    pub elements: Vec<Quaternion>,
}

impl Groupset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, q: Quaternion, tol: f64) -> bool {
        self.elements.iter().any(|e| e.max_abs_diff(q) <= tol)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.elements.iter()
    }
}

/// Closure of the generators under multiplication, sorted lexicographically.
pub fn elements(kind: GroupKind) -> Groupset {
    let gens = generators(kind);
    let mut elems = vec![Quaternion::ONE];
    let mut frontier = vec![Quaternion::ONE];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = *x * *g;
                if !elems.iter().any(|e| e.max_abs_diff(y) <= DEDUP_TOL) {
                    elems.push(y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    elems.sort_by(|a, b| sort_key(a).partial_cmp(&sort_key(b)).unwrap_or(std::cmp::Ordering::Equal));
    Groupset { kind, elements: elems }
}

fn sort_key(q: &Quaternion) -> [f64; 4] {
    // +0.0 folds -0.0 into 0.0
    q.to_array().map(|x| (x * 1e12).round() / 1e12 + 0.0)
}

/// Cached binary octahedral group.
pub fn binary_octahedral() -> &'static Groupset {
    static CELL: OnceLock<Groupset> = OnceLock::new();
    CELL.get_or_init(|| elements(GroupKind::BinaryOctahedral))
}

/// Cached group of the given kind.
pub fn cached(kind: GroupKind) -> &'static Groupset {
    static V: OnceLock<Groupset> = OnceLock::new();
    static T: OnceLock<Groupset> = OnceLock::new();
    match kind {
        GroupKind::Vierer => V.get_or_init(|| elements(kind)),
        GroupKind::BinaryTetrahedral => T.get_or_init(|| elements(kind)),
        GroupKind::BinaryOctahedral => binary_octahedral(),
    }
}

/// True when rotating `{±i, ±j, ±k}` by `q` gives back the same set.
pub fn preserves_cartesian_frame(q: Quaternion, tol: f64) -> bool {
    let axes: [[f64; 3]; 6] = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    axes.iter().all(|e| match q.rotate_vector(*e) {
        Ok(y) => axes.iter().any(|f| (0..3).all(|i| (y[i] - f[i]).abs() <= tol)),
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_match_canonical_axes() {
        let [a, b, c] = generators(GroupKind::Vierer);
        assert!(a.max_abs_diff(Quaternion::I) < 1e-15);
        assert!(b.max_abs_diff(Quaternion::J) < 1e-15);
        assert!(c.max_abs_diff(Quaternion::K) < 1e-15);

        let [a, _, _] = generators(GroupKind::BinaryTetrahedral);
        let s = (PI / 3.0).sin() / 3f64.sqrt();
        assert!(a.max_abs_diff(Quaternion::new(0.5, s, s, s)) < 1e-15);

        let [a, _, _] = generators(GroupKind::BinaryOctahedral);
        let h = 0.5f64.sqrt();
        assert!(a.max_abs_diff(Quaternion::new(h, h, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn presentations_hold() {
        for kind in GroupKind::ALL {
            let [a, b, c] = generators(kind);
            let (p, q) = kind.presentation();
            assert!(verify_presentation(a, b, c, p, q), "{kind:?}");
        }
        assert!(!verify_presentation(Quaternion::I, Quaternion::I, Quaternion::K, 3, 3));
        let [a, b, _] = generators(GroupKind::BinaryOctahedral);
        let h = 0.5f64.sqrt();
        assert!(!verify_presentation(a, b, Quaternion::new(0.0, 0.0, h, -h), 4, 3));
    }

    #[test]
    fn vierer_listing() {
        let g = elements(GroupKind::Vierer);
        assert_eq!(g.len(), 8);
        for q in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K] {
            assert!(g.contains(q, 1e-12));
            assert!(g.contains(-q, 1e-12));
        }
    }

    #[test]
    fn tetrahedral_and_octahedral_listings() {
        let t = elements(GroupKind::BinaryTetrahedral);
        assert_eq!(t.len(), 24);
        assert!(t.contains(Quaternion::new(0.5, 0.5, 0.5, 0.5), 1e-12));
        assert!(t.contains(Quaternion::new(0.5, -0.5, 0.5, -0.5), 1e-12));
        let o = elements(GroupKind::BinaryOctahedral);
        assert_eq!(o.len(), 48);
        let h = 0.5f64.sqrt();
        assert!(o.contains(Quaternion::new(h, h, 0.0, 0.0), 1e-12));
        assert!(o.contains(Quaternion::new(0.0, 0.0, h, -h), 1e-12));
    }

    #[test]
    fn elements_are_sorted() {
        let o = elements(GroupKind::BinaryOctahedral);
        for w in o.elements.windows(2) {
            assert!(sort_key(&w[0]) <= sort_key(&w[1]));
        }
    }

    #[test]
    fn octahedral_elements_preserve_the_cartesian_frame() {
        for o in binary_octahedral().iter() {
            assert!(preserves_cartesian_frame(*o, 1e-12));
        }
        let q = Quaternion::from_axis_angle([0.0, 0.0, 1.0], 0.3).unwrap();
        assert!(!preserves_cartesian_frame(q, 1e-12));
    }
}

//! Static geometry of the golden L translation surface.
//!
//! The L is the union of three rectangles: the φ×φ square `[0,φ]×[0,φ]`, the
//! 1-high strip on top of it `[0,φ]×[φ,φ²]` and the 1-wide strip to its right
//! `[φ,φ²]×[0,φ]`. Opposite parallel sides are glued by translation:
//!
//! | edge | segments                                   | translation |
//! |------|--------------------------------------------|-------------|
//! | a    | `x=0, φ≤y≤φ²` ↔ `x=φ, φ≤y≤φ²`              | `(φ, 0)`    |
//! | b    | `x=0, 0≤y≤φ` ↔ `x=φ², 0≤y≤φ`               | `(φ², 0)`   |
//! | c    | `y=0, 0≤x≤φ` ↔ `y=φ², 0≤x≤φ`               | `(0, φ²)`   |
//! | d    | `y=0, φ≤x≤φ²` ↔ `y=φ, φ≤x≤φ²`              | `(0, φ)`    |
//!
//! All eight corners of the three rectangles are one cone point of angle 6π.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden_field::{GoldenMatrix, GoldenNumber, GoldenVector, PHI_F64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("sector index {0} out of range (expected 0..=3)")]
    LetterOutOfRange(u32),
    #[error("midpoint label {0} out of range (expected 1..=5)")]
    MidpointOutOfRange(u32),
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("vector {0} is outside the closed first quadrant")]
    OutsideFirstQuadrant(String),
    #[error("not a permutation of 1..=5: {0:?}")]
    NotAPermutation(Vec<u8>),
}

/// A sector index, i.e. a letter of a tree word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const ALL: [Letter; 4] = [Letter(0), Letter(1), Letter(2), Letter(3)];

    pub fn new(k: u32) -> Result<Letter, SurfaceError> {
        if k <= 3 {
            Ok(Letter(k as u8))
        } else {
            Err(SurfaceError::LetterOutOfRange(k))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn digit(self) -> char {
        char::from(b'0' + self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Label of a Weierstrass point / pentagon edge midpoint, in `1..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Midpoint(u8);

impl Midpoint {
    pub const ALL: [Midpoint; 5] = [Midpoint(1), Midpoint(2), Midpoint(3), Midpoint(4), Midpoint(5)];

    pub fn new(label: u32) -> Result<Midpoint, SurfaceError> {
        if (1..=5).contains(&label) {
            Ok(Midpoint(label as u8))
        } else {
            Err(SurfaceError::MidpointOutOfRange(label))
        }
    }

    pub fn label(self) -> u8 {
        self.0
    }

    fn slot(self) -> usize {
        self.0 as usize - 1
    }
}

impl TryFrom<u32> for Midpoint {
    type Error = SurfaceError;
    fn try_from(v: u32) -> Result<Self, Self::Error> {
        Midpoint::new(v)
    }
}

impl From<Midpoint> for u32 {
    fn from(m: Midpoint) -> u32 {
        m.0 as u32
    }
}

impl fmt::Display for Midpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A bijection of the five Weierstrass labels. `image[j-1]` is where `j` goes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation5 {
    image: [u8; 5],
}

impl Permutation5 {
    pub fn identity() -> Self {
        Permutation5 { image: [1, 2, 3, 4, 5] }
    }

    pub fn from_images(image: [u8; 5]) -> Result<Self, SurfaceError> {
        let mut seen = [false; 5];
        for &j in &image {
            if !(1..=5).contains(&j) || seen[j as usize - 1] {
                return Err(SurfaceError::NotAPermutation(image.to_vec()));
            }
            seen[j as usize - 1] = true;
        }
        Ok(Permutation5 { image })
    }

    /// Product of disjoint cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self, SurfaceError> {
        let mut image = [1, 2, 3, 4, 5];
        for cycle in cycles {
            for (i, &j) in cycle.iter().enumerate() {
                if !(1..=5).contains(&j) {
                    return Err(SurfaceError::NotAPermutation(cycle.to_vec()));
                }
                image[j as usize - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation5::from_images(image)
    }

    pub fn images(&self) -> [u8; 5] {
        self.image
    }

    pub fn apply(&self, m: Midpoint) -> Midpoint {
        Midpoint(self.image[m.slot()])
    }

    /// `(self ∘ inner)(j) = self(inner(j))`: the right factor acts first.
    pub fn compose(&self, inner: &Permutation5) -> Permutation5 {
        let mut image = [0; 5];
        for (j, slot) in image.iter_mut().enumerate() {
            *slot = self.image[inner.image[j] as usize - 1];
        }
        Permutation5 { image }
    }

    pub fn inverse(&self) -> Permutation5 {
        let mut image = [0; 5];
        for (j, &t) in self.image.iter().enumerate() {
            image[t as usize - 1] = j as u8 + 1;
        }
        Permutation5 { image }
    }

    pub fn is_identity(&self) -> bool {
        *self == Permutation5::identity()
    }

    /// Nontrivial cycles in canonical order (each starting at its smallest label).
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 5];
        let mut out = Vec::new();
        for start in 1..=5u8 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut j = self.image[start as usize - 1];
            while j != start {
                seen[j as usize - 1] = true;
                cycle.push(j);
                j = self.image[j as usize - 1];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Free-function form of [`Permutation5::compose`].
pub fn perm_compose(outer: &Permutation5, inner: &Permutation5) -> Permutation5 {
    outer.compose(inner)
}

/// Cycle notation, `(1 5 2 3 4)`; the identity prints as `()`.
impl fmt::Display for Permutation5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|j| j.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation5{self}")
    }
}

impl Serialize for Permutation5 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.image.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation5 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let image = <[u8; 5]>::deserialize(d)?;
        Permutation5::from_images(image).map_err(serde::de::Error::custom)
    }
}

/// The Veech group generator `σₖ`.
pub fn sigma(k: Letter) -> GoldenMatrix {
    static SIGMAS: OnceLock<[GoldenMatrix; 4]> = OnceLock::new();
    let table = SIGMAS.get_or_init(|| {
        let m = [
            GoldenMatrix::from_ints([[(1, 0), (0, 1)], [(0, 0), (1, 0)]]),
            GoldenMatrix::from_ints([[(0, 1), (0, 1)], [(1, 0), (0, 1)]]),
            GoldenMatrix::from_ints([[(0, 1), (1, 0)], [(0, 1), (0, 1)]]),
            GoldenMatrix::from_ints([[(1, 0), (0, 0)], [(0, 1), (1, 0)]]),
        ];
        for s in &m {
            assert_eq!(s.det(), GoldenNumber::one(), "sigma must have determinant 1");
        }
        m
    });
    table[k.index()].clone()
}

/// `σₖ⁻¹`, exact.
pub fn sigma_inverse(k: Letter) -> GoldenMatrix {
    static INVERSES: OnceLock<[GoldenMatrix; 4]> = OnceLock::new();
    let table = INVERSES.get_or_init(|| {
        Letter::ALL.map(|k| sigma(k).inverse().expect("unimodular"))
    });
    table[k.index()].clone()
}

/// The permutation `τₖ` of Weierstrass points induced by `σₖ`.
pub fn tau(k: Letter) -> Permutation5 {
    let cycles: [&[&[u8]]; 4] = [
        &[&[1, 2], &[3, 4]],
        &[&[1, 3], &[2, 5]],
        &[&[1, 4], &[3, 5]],
        &[&[2, 3], &[4, 5]],
    ];
    Permutation5::from_cycles(cycles[k.index()]).expect("static table")
}

/// Relabeling of Weierstrass points induced by the reflection `(x, y) ↦ (y, x)`
/// of the golden L: `(1 5)(2 4)`, 3 fixed.
pub fn diagonal_reflection() -> Permutation5 {
    Permutation5::from_cycles(&[&[1, 5], &[2, 4]]).expect("static table")
}

/// Where a first-quadrant direction falls in the sector decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorClass {
    Horizontal,
    Vertical,
    Sector(Letter),
}

/// The cone spanned by `σₖ(1,0)` and `σₖ(0,1)`, as a half-open slope interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorCone {
    pub index: Letter,
    /// Slope of the lower boundary; belongs to the cone (except slope 0).
    pub lower: GoldenNumber,
    /// Slope of the upper boundary, `None` for the vertical. Excluded.
    pub upper: Option<GoldenNumber>,
}

pub fn sector_cones() -> [SectorCone; 4] {
    let inv_phi = GoldenNumber::from_ints(-1, 1);
    let bounds = [
        GoldenNumber::zero(),
        inv_phi,
        GoldenNumber::one(),
        GoldenNumber::phi(),
    ];
    Letter::ALL.map(|k| SectorCone {
        index: k,
        lower: bounds[k.index()].clone(),
        upper: bounds.get(k.index() + 1).cloned(),
    })
}

fn check_first_quadrant(v: &GoldenVector) -> Result<(), SurfaceError> {
    if v.is_zero() {
        return Err(SurfaceError::ZeroVector);
    }
    if v.x.is_negative() || v.y.is_negative() {
        return Err(SurfaceError::OutsideFirstQuadrant(format!("{v:?}")));
    }
    Ok(())
}

/// Sector containing the slope `y/x`.
///
/// Shared boundaries belong to the higher sector, which is what makes the
/// inverse-sector peeling in [`crate::tree_word::vector_to_word`]
/// terminate: `σ₁⁻¹(φ,1) = (1,0)` while `σ₀⁻¹(φ,1) = (0,1)`.
pub fn sector_of(v: &GoldenVector) -> Result<SectorClass, SurfaceError> {
    check_first_quadrant(v)?;
    if v.y.is_zero() {
        return Ok(SectorClass::Horizontal);
    }
    if v.x.is_zero() {
        return Ok(SectorClass::Vertical);
    }
    // slope >= c  <=>  y >= c·x, since x > 0.
    let at_least = |c: &GoldenNumber| v.y >= c * &v.x;
    let cones = sector_cones();
    let k = cones
        .iter()
        .rev()
        .find(|cone| at_least(&cone.lower))
        .map(|cone| cone.index)
        .expect("slope > 0 lies in sector 0 or above");
    Ok(SectorClass::Sector(k))
}

/// A labeled Weierstrass point on the golden L.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassPoint {
    pub label: Midpoint,
    pub position: GoldenVector,
}

/// One gluing of the L boundary: `from + translation = to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeIdentification {
    pub label: char,
    pub from: [GoldenVector; 2],
    pub to: [GoldenVector; 2],
    pub translation: GoldenVector,
}

/// The golden L: boundary, gluings and marked points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenL {
    /// Boundary vertices counterclockwise from the origin.
    pub vertices: Vec<GoldenVector>,
    pub identifications: Vec<EdgeIdentification>,
    pub weierstrass_points: Vec<WeierstrassPoint>,
    /// Boundary points each representing the single cone point.
    pub cone_points: Vec<GoldenVector>,
    /// Vertices of the inscribed pentagon through the Weierstrass points.
    pub inscribed_pentagon: Vec<GoldenVector>,
}

fn gv(x: GoldenNumber, y: GoldenNumber) -> GoldenVector {
    GoldenVector::new(x, y)
}

impl GoldenL {
    pub fn get() -> &'static GoldenL {
        static L: OnceLock<GoldenL> = OnceLock::new();
        L.get_or_init(GoldenL::build)
    }

    fn build() -> GoldenL {
        let z = GoldenNumber::zero;
        let phi = GoldenNumber::phi;
        let phi2 = GoldenNumber::phi_squared;
        let vertices = vec![
            gv(z(), z()),
            gv(phi(), z()),
            gv(phi2(), z()),
            gv(phi2(), phi()),
            gv(phi(), phi()),
            gv(phi(), phi2()),
            gv(z(), phi2()),
            gv(z(), phi()),
        ];
        let ident = |label, from: [GoldenVector; 2], translation: GoldenVector| {
            let to = [&from[0] + &translation, &from[1] + &translation];
            EdgeIdentification {
                label,
                from,
                to,
                translation,
            }
        };
        let identifications = vec![
            ident('a', [gv(z(), phi()), gv(z(), phi2())], gv(phi(), z())),
            ident('b', [gv(z(), z()), gv(z(), phi())], gv(phi2(), z())),
            ident('c', [gv(z(), z()), gv(phi(), z())], gv(z(), phi2())),
            ident('d', [gv(phi(), z()), gv(phi2(), z())], gv(z(), phi())),
        ];
        let half_phi = GoldenNumber::from_fractions(0, 1, 1, 2);
        let phi_half = GoldenNumber::from_fractions(1, 2, 1, 1);
        let positions = [
            gv(z(), phi_half.clone()),
            gv(half_phi.clone(), phi_half.clone()),
            gv(half_phi.clone(), half_phi.clone()),
            gv(phi_half.clone(), half_phi),
            gv(phi_half, z()),
        ];
        let weierstrass_points = Midpoint::ALL
            .iter()
            .zip(positions)
            .map(|(&label, position)| WeierstrassPoint { label, position })
            .collect();
        let inscribed_pentagon = vec![
            gv(phi(), z()),
            gv(phi2(), z()),
            gv(phi(), phi()),
            gv(z(), phi2()),
            gv(z(), phi()),
        ];
        GoldenL {
            cone_points: vertices.clone(),
            vertices,
            identifications,
            weierstrass_points,
            inscribed_pentagon,
        }
    }

    pub fn weierstrass(&self, m: Midpoint) -> &GoldenVector {
        &self.weierstrass_points[m.slot()].position
    }

    pub fn is_cone_point(&self, p: &GoldenVector) -> bool {
        self.cone_points.iter().any(|c| c == p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("surface serializes")
    }
}

/// The shear `P` taking the golden L to the double pentagon, and its inverse.
///
/// `sin π/5` is not in `Q[φ]`, so `P` is float-only and never enters a
/// classification decision.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonTransfer {
    pub p: [[f64; 2]; 2],
    pub p_inv: [[f64; 2]; 2],
    /// `cos π/5 = φ/2`, exact.
    pub cos_exact: GoldenNumber,
}

impl PentagonTransfer {
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        mat2_apply(&self.p, v)
    }

    pub fn apply_inverse(&self, v: [f64; 2]) -> [f64; 2] {
        mat2_apply(&self.p_inv, v)
    }
}

pub(crate) fn mat2_apply(m: &[[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub fn pentagon_transfer() -> PentagonTransfer {
    let cos_exact = GoldenNumber::from_fractions(0, 1, 1, 2);
    let c = cos_exact.to_f64();
    let s = (1.0 - c * c).sqrt();
    debug_assert!((c - PHI_F64 / 2.0).abs() < 1e-15);
    PentagonTransfer {
        p: [[1.0, c], [0.0, s]],
        p_inv: [[1.0, -c / s], [0.0, 1.0 / s]],
        cos_exact,
    }
}

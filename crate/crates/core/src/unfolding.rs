//! Exact transport of golden-L trajectories to the pentagon billiard.
//!
//! The shear `P` maps the pentagon inscribed in the golden L (through the
//! five Weierstrass points) onto a regular pentagon, and the rest of the L
//! onto the other half of the double pentagon after cutting and pasting. So
//! each crossing of an inscribed-pentagon side on the L is one bounce of the
//! billiard ball. The five sides are the glued edges `a` (side 1) and `d`
//! (side 5) and the anti-diagonals of the three rectangles (sides 2, 3, 4).
//!
//! The double pentagon forgets the rotational part of the billiard
//! direction. Each bounce off a side multiplies the accumulated linear part
//! by the reflection in that side's direction, so after one closed loop on
//! the surface the billiard has rotated by an element `g` of the dihedral
//! group of order 10, and the billiard itself closes after `ord(g)` loops.

use std::fmt;

use crate::flow::{FlowError, Trajectory};
use crate::golden_field::{GoldenMatrix, GoldenNumber, GoldenVector};
use crate::surface::{GoldenL, Midpoint};

/// An element of the symmetry group of the pentagon's side directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dihedral {
    /// Rotation by `72°·m`.
    Rotation(u8),
    /// Reflection across the line at angle `36°·a`.
    Reflection(u8),
}

impl Dihedral {
    pub fn identity() -> Dihedral {
        Dihedral::Rotation(0)
    }

    /// Reflection across the line carrying pentagon side `m`.
    pub fn side_reflection(m: Midpoint) -> Dihedral {
        Dihedral::Reflection(side_angle_units(m))
    }

    /// `self ∘ rhs`, with `rhs` applied first.
    pub fn compose(self, rhs: Dihedral) -> Dihedral {
        use Dihedral::*;
        let m5 = |x: i32| x.rem_euclid(5) as u8;
        match (self, rhs) {
            (Rotation(m), Rotation(n)) => Rotation(m5(m as i32 + n as i32)),
            (Reflection(a), Reflection(b)) => Rotation(m5(a as i32 - b as i32)),
            (Reflection(a), Rotation(m)) => Reflection(m5(a as i32 - m as i32)),
            (Rotation(m), Reflection(a)) => Reflection(m5(a as i32 + m as i32)),
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Dihedral::Rotation(0) => 1,
            Dihedral::Rotation(_) => 5,
            Dihedral::Reflection(_) => 2,
        }
    }

    pub fn matrix(self) -> [[f64; 2]; 2] {
        let deg = std::f64::consts::PI / 180.0;
        match self {
            Dihedral::Rotation(m) => {
                let t = 72.0 * m as f64 * deg;
                [[t.cos(), -t.sin()], [t.sin(), t.cos()]]
            }
            Dihedral::Reflection(a) => {
                let t = 72.0 * a as f64 * deg;
                [[t.cos(), t.sin()], [t.sin(), -t.cos()]]
            }
        }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dihedral::Rotation(m) => write!(f, "rotation by {}°", 72 * *m as u32),
            Dihedral::Reflection(a) => write!(f, "reflection across {}°", 36 * *a as u32),
        }
    }
}

/// Direction of pentagon side `m` in units of 36° (mod 180°).
pub fn side_angle_units(m: Midpoint) -> u8 {
    match m.label() {
        5 => 0,
        1 => 1,
        4 => 2,
        3 => 3,
        _ => 4,
    }
}

/// The three inscribed-pentagon sides that cut through rectangle interiors.
fn diagonal_sides() -> [(Midpoint, GoldenVector, GoldenVector); 3] {
    let v = GoldenVector::from_ints;
    let m = |j| Midpoint::new(j).expect("label");
    [
        (m(3), v(0, 1, 0, 0), v(0, 0, 0, 1)),
        (m(2), v(0, 1, 0, 1), v(0, 0, 1, 1)),
        (m(4), v(1, 1, 0, 0), v(0, 1, 0, 1)),
    ]
}

fn on_open_segment(p: &GoldenVector, a: &GoldenVector, b: &GoldenVector) -> bool {
    let ab = b - a;
    let ap = p - a;
    ab.cross(&ap).is_zero() && ap.dot(&ab).is_positive() && ap.dot(&ab) < ab.dot(&ab)
}

/// Pentagon side (1 or 5) that a point of a glued edge lies on, if any.
fn glued_side_at(p: &GoldenVector) -> Option<Midpoint> {
    for id in &GoldenL::get().identifications {
        let side = match id.label {
            'a' => 1,
            'd' => 5,
            _ => continue,
        };
        if on_open_segment(p, &id.from[0], &id.from[1]) || on_open_segment(p, &id.to[0], &id.to[1]) {
            return Midpoint::new(side).ok();
        }
    }
    None
}

/// Pentagon sides crossed by a trajectory, in order.
///
/// The start point is not counted as a crossing; for a closed trajectory the
/// return to it is.
pub fn pentagon_crossings(t: &Trajectory) -> Vec<Midpoint> {
    let mut out = Vec::new();
    for (i, seg) in t.segments.iter().enumerate() {
        let d = seg.displacement();
        let mut events: Vec<(GoldenNumber, Midpoint)> = Vec::new();
        for (side, a, b) in diagonal_sides() {
            let e = &b - &a;
            let denom = d.cross(&e);
            if denom.is_zero() {
                continue;
            }
            let inv = denom.inverse().expect("nonzero");
            let ap = &a - &seg.entry;
            let s = ap.cross(&e) * &inv;
            let u = ap.cross(&d) * &inv;
            let in_chord = s.is_positive() && s <= GoldenNumber::one();
            let in_side = u.is_positive() && u < GoldenNumber::one();
            if in_chord && in_side {
                events.push((s, side));
            }
        }
        events.sort_by(|x, y| x.0.cmp(&y.0));
        out.extend(events.into_iter().map(|(_, side)| side));
        let last = i + 1 == t.segments.len();
        if seg.exit_edge.is_some() || (last && t.is_closed()) {
            if let Some(side) = glued_side_at(&seg.exit) {
                out.push(side);
            }
        }
    }
    out
}

/// What one closed loop on the golden L becomes on the pentagon table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PentagonLoop {
    /// Sides hit during one loop on the surface.
    pub crossings: Vec<Midpoint>,
    /// Linear part picked up by the billiard direction over one loop.
    pub rotation: Dihedral,
    /// Loops needed for the lift to the 10-pentagon unfolding to close.
    pub period_factor: u32,
    /// Side crossings of the closed lift: `crossings.len() * period_factor`.
    pub bounces: usize,
    /// The direction is parallel to a side. A reflection of the table then
    /// fixes the billiard direction and the lift may cover the billiard
    /// path twice.
    pub side_parallel: bool,
}

impl PentagonLoop {
    /// Whether an exact billiard bounce count is compatible with this loop.
    pub fn admits_bounces(&self, bounces: usize) -> bool {
        bounces == self.bounces || (self.side_parallel && 2 * bounces == self.bounces)
    }
}

fn is_side_parallel(v: &GoldenVector) -> bool {
    let (vs, _) = sheared_table();
    (0..5).any(|i| (&vs[(i + 1) % 5] - &vs[i]).cross(v).is_zero())
}

/// `None` unless the trajectory is closed.
pub fn transport(t: &Trajectory) -> Option<PentagonLoop> {
    if !t.is_closed() {
        return None;
    }
    let crossings = pentagon_crossings(t);
    let rotation = crossings.iter().fold(Dihedral::identity(), |g, &side| {
        Dihedral::side_reflection(side).compose(g)
    });
    let period_factor = rotation.order();
    Some(PentagonLoop {
        bounces: crossings.len() * period_factor as usize,
        crossings,
        rotation,
        period_factor,
        side_parallel: is_side_parallel(&t.direction),
    })
}

/// The pentagon table in golden-L coordinates (the inscribed pentagon,
/// counterclockwise) and the label of side `i`, which runs from vertex `i`
/// to vertex `i + 1` and has Weierstrass point `label` as its midpoint.
pub fn sheared_table() -> (Vec<GoldenVector>, [Midpoint; 5]) {
    let vs = GoldenL::get().inscribed_pentagon.clone();
    (vs, [5, 4, 2, 1, 3].map(|j| Midpoint::new(j).expect("label")))
}

/// Reflection in side `i` of the sheared table, conjugated into golden-L
/// coordinates: it fixes the side and negates the direction from the side's
/// midpoint to the opposite vertex.
fn sheared_reflection(vs: &[GoldenVector], i: usize) -> GoldenMatrix {
    let e = &vs[(i + 1) % 5] - &vs[i];
    let mid = (&vs[i] + &vs[(i + 1) % 5]).scale(&GoldenNumber::half());
    let u = &vs[(i + 3) % 5] - &mid;
    let basis = GoldenMatrix::new(e.x.clone(), u.x.clone(), e.y.clone(), u.y.clone());
    let image = GoldenMatrix::new(e.x, -u.x, e.y, -u.y);
    image.mul(&basis.inverse().expect("independent"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilliardEnd {
    Closed,
    Corner,
}

/// A billiard path computed exactly in golden-L coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBilliard {
    /// Side label at each bounce; a final corner hit is not included.
    pub sides: Vec<Midpoint>,
    pub end: BilliardEnd,
}

impl ExactBilliard {
    pub fn bounces(&self) -> usize {
        self.sides.len()
    }
}

/// Pentagon billiard from midpoint `start` in direction `v` (golden-L
/// coordinates), in exact arithmetic. A direction pointing out of the table
/// is reflected at the start first.
pub fn exact_billiard(start: Midpoint, v: &GoldenVector, cap: usize) -> Result<ExactBilliard, FlowError> {
    if v.is_zero() {
        return Err(FlowError::ZeroDirection);
    }
    let (vs, labels) = sheared_table();
    let reflections: Vec<GoldenMatrix> = (0..5).map(|i| sheared_reflection(&vs, i)).collect();
    let start_side = labels.iter().position(|&l| l == start).expect("label");
    let origin = (&vs[start_side] + &vs[(start_side + 1) % 5]).scale(&GoldenNumber::half());
    let edge = &vs[(start_side + 1) % 5] - &vs[start_side];
    let mut w = v.clone();
    if edge.cross(&w).is_negative() {
        w = reflections[start_side].apply(&w);
    }
    let w0 = w.clone();
    let mut pos = origin.clone();
    let mut current = start_side;
    let mut sides = Vec::new();
    let one = GoldenNumber::one();
    loop {
        if sides.len() >= cap {
            return Err(FlowError::CapExceeded(cap));
        }
        let mut hit = None;
        for i in (0..5).filter(|&i| i != current) {
            let a = &vs[i];
            let e = &vs[(i + 1) % 5] - a;
            let denom = w.cross(&e);
            if denom.is_zero() {
                continue;
            }
            let inv = denom.inverse().expect("nonzero");
            let ap = a - &pos;
            let t = ap.cross(&e) * &inv;
            let u = ap.cross(&w) * &inv;
            if t.is_positive() && !u.is_negative() && u <= one {
                hit = Some((i, t, u));
                break;
            }
        }
        let (i, t, u) = hit.ok_or_else(|| FlowError::Structural("billiard ray left the table".into()))?;
        if u.is_zero() || u == one {
            return Ok(ExactBilliard {
                sides,
                end: BilliardEnd::Corner,
            });
        }
        pos = &pos + &w.scale(&t);
        w = reflections[i].apply(&w);
        sides.push(labels[i]);
        current = i;
        if i == start_side && pos == origin && w == w0 {
            return Ok(ExactBilliard {
                sides,
                end: BilliardEnd::Closed,
            });
        }
    }
}

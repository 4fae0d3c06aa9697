//! Exact straight-line flow on the golden L.
//!
//! This is the brute-force oracle for the classifier: it launches a ray from
//! a Weierstrass point and follows it across edge identifications, in exact
//! `Q[φ]` arithmetic, until it either closes up or runs into the cone point.
//!
//! Internally the L is cut into three closed rectangles (the square, the top
//! strip and the right strip). Every rectangle corner is a representative of
//! the cone point, so the walk only needs rectangle-wall crossings and the
//! gluing table below.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classifier::Classification;
use crate::golden_field::{GoldenNumber, GoldenVector};
use crate::surface::{GoldenL, Midpoint};
use crate::tree_word::{word_to_vector, TreeWord};

/// Default number of rectangle steps before [`trace`] gives up.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("start point {0:?} is not in the golden L or is the cone point")]
    BadStart(Box<GoldenVector>),
    #[error("trajectory neither closed nor hit the cone point within {0} steps")]
    CapExceeded(usize),
    #[error("oracle structure violated: {0}")]
    Structural(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Square,
    Top,
    Right,
}

const PIECES: [Piece; 3] = [Piece::Square, Piece::Top, Piece::Right];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wall {
    Left,
    Right,
    Bottom,
    Top,
}

struct Rect {
    x0: GoldenNumber,
    x1: GoldenNumber,
    y0: GoldenNumber,
    y1: GoldenNumber,
}

/// What lies across a wall: the next piece, the gluing translation to apply
/// (zero for internal walls) and the identification label.
struct Across {
    piece: Piece,
    shift: GoldenVector,
    edge: Option<char>,
}

struct Geometry {
    rects: [Rect; 3],
    across: [[Across; 4]; 3],
}

fn geometry() -> &'static Geometry {
    static G: OnceLock<Geometry> = OnceLock::new();
    G.get_or_init(|| {
        let z = GoldenNumber::zero;
        let phi = GoldenNumber::phi;
        let phi2 = GoldenNumber::phi_squared;
        let rect = |x0, x1, y0, y1| Rect { x0, x1, y0, y1 };
        let v = |xa, xb, ya, yb| GoldenVector::from_ints(xa, xb, ya, yb);
        let inner = |piece| Across {
            piece,
            shift: GoldenVector::default(),
            edge: None,
        };
        let glued = |piece, shift, edge| Across {
            piece,
            shift,
            edge: Some(edge),
        };
        use Piece::*;
        Geometry {
            rects: [
                rect(z(), phi(), z(), phi()),
                rect(z(), phi(), phi(), phi2()),
                rect(phi(), phi2(), z(), phi()),
            ],
            // Indexed by [piece][Left, Right, Bottom, Top].
            across: [
                [
                    glued(Right, v(1, 1, 0, 0), 'b'),
                    inner(Right),
                    glued(Top, v(0, 0, 1, 1), 'c'),
                    inner(Top),
                ],
                [
                    glued(Top, v(0, 1, 0, 0), 'a'),
                    glued(Top, v(0, -1, 0, 0), 'a'),
                    inner(Square),
                    glued(Square, v(0, 0, -1, -1), 'c'),
                ],
                [
                    inner(Square),
                    glued(Square, v(-1, -1, 0, 0), 'b'),
                    glued(Right, v(0, 0, 0, 1), 'd'),
                    glued(Right, v(0, 0, 0, -1), 'd'),
                ],
            ],
        }
    })
}

fn piece_index(p: Piece) -> usize {
    match p {
        Piece::Square => 0,
        Piece::Top => 1,
        Piece::Right => 2,
    }
}

fn wall_index(w: Wall) -> usize {
    match w {
        Wall::Left => 0,
        Wall::Right => 1,
        Wall::Bottom => 2,
        Wall::Top => 3,
    }
}

/// The piece in which the ray `p + t·v` lies for small `t > 0`.
fn locate(p: &GoldenVector, v: &GoldenVector) -> Option<Piece> {
    let g = geometry();
    PIECES.into_iter().find(|&piece| {
        let r = &g.rects[piece_index(piece)];
        let fits = |c: &GoldenNumber, lo: &GoldenNumber, hi: &GoldenNumber, dir: &GoldenNumber| {
            c >= lo && c <= hi && (c < hi || !dir.is_positive()) && (c > lo || !dir.is_negative())
        };
        fits(&p.x, &r.x0, &r.x1, &v.x) && fits(&p.y, &r.y0, &r.y1, &v.y)
    })
}

/// Like [`locate`], but a boundary point whose ray leaves the L is first
/// moved to its glued copy.
fn enter(p: &GoldenVector, v: &GoldenVector) -> Option<(Piece, GoldenVector)> {
    if let Some(piece) = locate(p, v) {
        return Some((piece, p.clone()));
    }
    for id in &GoldenL::get().identifications {
        for q in [p + &id.translation, p - &id.translation] {
            if let Some(piece) = locate(&q, v) {
                return Some((piece, q));
            }
        }
    }
    None
}

fn on_segment_interior(p: &GoldenVector, a: &GoldenVector, b: &GoldenVector) -> bool {
    let ab = b - a;
    let ap = p - a;
    if !ab.cross(&ap).is_zero() {
        return false;
    }
    let t = ab.dot(&ap);
    t.is_positive() && t < ab.dot(&ab)
}

/// Canonical representative of a point of the closed L: points on the right
/// or top copy of a glued edge are moved to the left or bottom copy.
pub fn canonicalize(p: &GoldenVector) -> GoldenVector {
    for id in &GoldenL::get().identifications {
        if on_segment_interior(p, &id.to[0], &id.to[1]) {
            return p - &id.translation;
        }
    }
    p.clone()
}

/// All planar representatives of a surface point inside the closed L.
fn representatives(p: &GoldenVector) -> Vec<GoldenVector> {
    let c = canonicalize(p);
    let mut reps = vec![c.clone()];
    for id in &GoldenL::get().identifications {
        if on_segment_interior(&c, &id.from[0], &id.from[1]) {
            reps.push(&c + &id.translation);
        }
    }
    reps
}

/// One straight piece of a trajectory between two crossings of glued edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub entry: GoldenVector,
    pub exit: GoldenVector,
    /// Label of the glued edge crossed at `exit`, if any.
    pub exit_edge: Option<char>,
}

impl Segment {
    pub fn displacement(&self) -> GoldenVector {
        &self.exit - &self.entry
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Closed,
    HitConePoint(GoldenVector),
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Closed => "closed",
            Outcome::HitConePoint(_) => "cone_point",
        }
    }
}

/// Result of flowing to the next glued-edge crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Advance {
    Crossing {
        exit: GoldenVector,
        reentry: GoldenVector,
        edge: char,
    },
    ConePointHit {
        at: GoldenVector,
        displacement: GoldenVector,
    },
}

struct Walker<'a> {
    v: &'a GoldenVector,
    inv_x: Option<GoldenNumber>,
    inv_y: Option<GoldenNumber>,
    steps: usize,
}

enum Step {
    /// Reached a closure target at the given point, after moving `t`.
    Target(GoldenVector),
    Cone(GoldenVector),
    Wall {
        exit: GoldenVector,
        across: &'static Across,
    },
}

impl<'a> Walker<'a> {
    fn new(v: &'a GoldenVector) -> Result<Self, FlowError> {
        if v.is_zero() {
            return Err(FlowError::ZeroDirection);
        }
        let inv = |c: &GoldenNumber| c.inverse().ok();
        Ok(Walker {
            v,
            inv_x: inv(&v.x),
            inv_y: inv(&v.y),
            steps: 0,
        })
    }

    /// Parameter `t` with `p + t·v` on the line through `q` (q assumed on the ray).
    fn param(&self, p: &GoldenVector, q: &GoldenVector) -> GoldenNumber {
        match &self.inv_x {
            Some(ix) => (&q.x - &p.x) * ix,
            None => (&q.y - &p.y) * self.inv_y.as_ref().expect("nonzero direction"),
        }
    }

    /// Moves from `p` to the wall of `piece`, stopping early at any target.
    fn step(&mut self, piece: Piece, p: &GoldenVector, targets: &[GoldenVector]) -> Step {
        self.steps += 1;
        let g = geometry();
        let r = &g.rects[piece_index(piece)];
        let v = self.v;
        let tx = self.inv_x.as_ref().map(|ix| {
            let wall = if v.x.is_positive() { &r.x1 } else { &r.x0 };
            (wall - &p.x) * ix
        });
        let ty = self.inv_y.as_ref().map(|iy| {
            let wall = if v.y.is_positive() { &r.y1 } else { &r.y0 };
            (wall - &p.y) * iy
        });
        let (t, wall) = match (tx, ty) {
            (Some(tx), Some(ty)) => {
                if tx == ty {
                    let corner = p + &v.scale(&tx);
                    return self.target_or(p, &tx, targets, Step::Cone(corner));
                }
                if tx < ty {
                    (tx, if v.x.is_positive() { Wall::Right } else { Wall::Left })
                } else {
                    (ty, if v.y.is_positive() { Wall::Top } else { Wall::Bottom })
                }
            }
            (Some(tx), None) => (tx, if v.x.is_positive() { Wall::Right } else { Wall::Left }),
            (None, Some(ty)) => (ty, if v.y.is_positive() { Wall::Top } else { Wall::Bottom }),
            (None, None) => unreachable!("nonzero direction"),
        };
        let exit = p + &v.scale(&t);
        let fallback = if GoldenL::get().is_cone_point(&exit) {
            Step::Cone(exit)
        } else {
            Step::Wall {
                exit,
                across: &g.across[piece_index(piece)][wall_index(wall)],
            }
        };
        self.target_or(p, &t, targets, fallback)
    }

    fn target_or(
        &self,
        p: &GoldenVector,
        t_max: &GoldenNumber,
        targets: &[GoldenVector],
        otherwise: Step,
    ) -> Step {
        for q in targets {
            if !(q - p).cross(self.v).is_zero() {
                continue;
            }
            let t = self.param(p, q);
            if t.is_positive() && &t <= t_max {
                return Step::Target(q.clone());
            }
        }
        otherwise
    }
}

/// Flows from `p` in direction `v` to the first crossing of a glued edge.
///
/// Internal walls between the three rectangles are crossed silently. Any
/// nonzero direction is accepted; `p` must be a non-singular point of the
/// closed L.
pub fn advance(p: &GoldenVector, v: &GoldenVector) -> Result<Advance, FlowError> {
    let mut walker = Walker::new(v)?;
    let surface = GoldenL::get();
    if surface.is_cone_point(p) {
        return Err(FlowError::BadStart(Box::new(p.clone())));
    }
    let (mut piece, mut pos) = enter(p, v).ok_or_else(|| FlowError::BadStart(Box::new(p.clone())))?;
    let origin = pos.clone();
    loop {
        match walker.step(piece, &pos, &[]) {
            Step::Target(_) => unreachable!("no targets"),
            Step::Cone(at) => {
                let displacement = &at - &origin;
                return Ok(Advance::ConePointHit { at, displacement });
            }
            Step::Wall { exit, across } => match across.edge {
                Some(edge) => {
                    return Ok(Advance::Crossing {
                        reentry: &exit + &across.shift,
                        exit,
                        edge,
                    })
                }
                None => {
                    piece = across.piece;
                    pos = exit;
                }
            },
        }
    }
}

/// A traced trajectory from a Weierstrass point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub start: Midpoint,
    pub start_point: GoldenVector,
    pub direction: GoldenVector,
    pub segments: Vec<Segment>,
    pub outcome: Outcome,
    /// Sum of the segment displacements.
    pub holonomy: GoldenVector,
    /// Rectangle steps taken.
    pub steps: usize,
}

impl Trajectory {
    pub fn is_closed(&self) -> bool {
        self.outcome == Outcome::Closed
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trajectory serializes")
    }
}

impl Serialize for Trajectory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct SegmentRepr {
            entry: [String; 4],
            exit: [String; 4],
            #[serde(skip_serializing_if = "Option::is_none")]
            edge: Option<char>,
        }
        #[derive(Serialize)]
        struct Repr {
            start: Midpoint,
            start_point: [String; 4],
            direction: [String; 4],
            outcome: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            cone_point: Option<[String; 4]>,
            holonomy: [String; 4],
            segment_count: usize,
            segments: Vec<SegmentRepr>,
        }
        Repr {
            start: self.start,
            start_point: self.start_point.coefficients(),
            direction: self.direction.coefficients(),
            outcome: self.outcome.as_str(),
            cone_point: match &self.outcome {
                Outcome::HitConePoint(p) => Some(p.coefficients()),
                Outcome::Closed => None,
            },
            holonomy: self.holonomy.coefficients(),
            segment_count: self.segments.len(),
            segments: self
                .segments
                .iter()
                .map(|seg| SegmentRepr {
                    entry: seg.entry.coefficients(),
                    exit: seg.exit.coefficients(),
                    edge: seg.exit_edge,
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Traces the trajectory from Weierstrass point `start` in the direction of `word`.
pub fn trace(start: Midpoint, word: &TreeWord, cap: usize) -> Result<Trajectory, FlowError> {
    trace_direction(start, &word_to_vector(word), cap)
}

/// Traces from a Weierstrass point in an arbitrary nonzero direction.
pub fn trace_direction(
    start: Midpoint,
    v: &GoldenVector,
    cap: usize,
) -> Result<Trajectory, FlowError> {
    let surface = GoldenL::get();
    let start_point = surface.weierstrass(start).clone();
    let mut walker = Walker::new(v)?;
    let targets = representatives(&start_point);
    let (mut piece, mut pos) =
        enter(&start_point, v).ok_or_else(|| FlowError::BadStart(Box::new(start_point.clone())))?;
    let mut segments = Vec::new();
    let mut entry = pos.clone();
    let mut holonomy = GoldenVector::default();
    let outcome = loop {
        if walker.steps >= cap {
            return Err(FlowError::CapExceeded(cap));
        }
        match walker.step(piece, &pos, &targets) {
            Step::Target(q) => {
                holonomy += &(&q - &pos);
                segments.push(Segment {
                    entry: entry.clone(),
                    exit: q,
                    exit_edge: None,
                });
                break Outcome::Closed;
            }
            Step::Cone(at) => {
                holonomy += &(&at - &pos);
                segments.push(Segment {
                    entry: entry.clone(),
                    exit: at.clone(),
                    exit_edge: None,
                });
                break Outcome::HitConePoint(at);
            }
            Step::Wall { exit, across } => {
                holonomy += &(&exit - &pos);
                piece = across.piece;
                if let Some(edge) = across.edge {
                    pos = &exit + &across.shift;
                    segments.push(Segment {
                        entry: std::mem::replace(&mut entry, pos.clone()),
                        exit,
                        exit_edge: Some(edge),
                    });
                } else {
                    pos = exit;
                }
            }
        }
    };
    Ok(Trajectory {
        start,
        start_point,
        direction: v.clone(),
        segments,
        outcome,
        holonomy,
        steps: walker.steps,
    })
}

/// Oracle verdicts for all five midpoints together with the evidence.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub verdicts: [Classification; 5],
    pub trajectories: Vec<Trajectory>,
    pub short_holonomy: GoldenVector,
    pub long_holonomy: GoldenVector,
}

impl OracleReport {
    pub fn verdict(&self, m: Midpoint) -> Classification {
        self.verdicts[m.label() as usize - 1]
    }
}

/// Classifies all five midpoints by direct simulation.
///
/// Exactly one trajectory must hit the cone point. The four closed ones must
/// have holonomies parallel to the direction with exactly two values, the
/// larger equal to φ times the smaller.
pub fn oracle_classify(word: &TreeWord, cap: usize) -> Result<OracleReport, FlowError> {
    oracle_classify_direction(&word_to_vector(word), cap)
}

pub fn oracle_classify_direction(v: &GoldenVector, cap: usize) -> Result<OracleReport, FlowError> {
    let trajectories = Midpoint::ALL
        .par_iter()
        .map(|&m| trace_direction(m, v, cap))
        .collect::<Result<Vec<_>, _>>()?;
    let structural = |msg: String| Err(FlowError::Structural(msg));
    let cone_hits = trajectories.iter().filter(|t| !t.is_closed()).count();
    if cone_hits != 1 {
        return structural(format!("{cone_hits} trajectories hit the cone point, expected 1"));
    }
    // Compare holonomies through one nonzero coordinate of the direction.
    let coord = |h: &GoldenVector| {
        if v.x.is_zero() {
            h.y.clone()
        } else {
            h.x.clone()
        }
    };
    let mut magnitudes: Vec<GoldenNumber> = Vec::new();
    for t in trajectories.iter().filter(|t| t.is_closed()) {
        if !t.holonomy.is_positive_multiple_of(v) {
            return structural(format!(
                "holonomy {:?} from midpoint {} is not along {:?}",
                t.holonomy, t.start, v
            ));
        }
        let c = coord(&t.holonomy);
        if !magnitudes.contains(&c) {
            magnitudes.push(c);
        }
    }
    if magnitudes.len() != 2 {
        return structural(format!(
            "{} distinct closed holonomies, expected 2",
            magnitudes.len()
        ));
    }
    magnitudes.sort();
    let (short, long) = (&magnitudes[0], &magnitudes[1]);
    if &(short * &GoldenNumber::phi()) != long {
        return structural(format!(
            "long/short holonomy ratio is not phi: {} vs {}",
            long.to_pretty(),
            short.to_pretty()
        ));
    }
    let mut verdicts = [Classification::SaddleConnection; 5];
    let mut short_holonomy = None;
    let mut long_holonomy = None;
    for (slot, t) in verdicts.iter_mut().zip(&trajectories) {
        if !t.is_closed() {
            continue;
        }
        if &coord(&t.holonomy) == short {
            *slot = Classification::Short;
            short_holonomy = Some(t.holonomy.clone());
        } else {
            *slot = Classification::Long;
            long_holonomy = Some(t.holonomy.clone());
        }
    }
    Ok(OracleReport {
        verdicts,
        trajectories,
        short_holonomy: short_holonomy.expect("two magnitudes"),
        long_holonomy: long_holonomy.expect("two magnitudes"),
    })
}

//! Exact segment predicates over a generic scalar.
//!
//! Everything here is written against [`Scalar`], which is implemented for
//! `f64` and for [`BigRational`]. Verification code always runs on the
//! rational instantiation ([`ExactScalar`]); the float instantiation exists for
//! filters and quick experiments.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;

/// Number type usable by the predicates.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + PartialOrd + Signed + num_traits::NumRef + num_traits::NumAssignRef + Send + Sync + 'static
{
    /// `num / den` in this scalar type.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// Lossy conversion used for rendering.
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Point in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Point::new(S::from_ratio(x.0, x.1), S::from_ratio(y.0, y.1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(self.x.clone() - &other.x, self.y.clone() - &other.y)
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(self.x.clone() + &other.x, self.y.clone() + &other.y)
    }

    pub fn scale(&self, k: &S) -> Self {
        Point::new(self.x.clone() * k, self.y.clone() * k)
    }

    /// `self + t * (other - self)`
    pub fn lerp(&self, other: &Self, t: &S) -> Self {
        self.add(&other.sub(self).scale(t))
    }
}

pub fn cross<S: Scalar>(u: &Point<S>, v: &Point<S>) -> S {
    u.x.clone() * &v.y - u.y.clone() * &v.x
}

pub fn dot<S: Scalar>(u: &Point<S>, v: &Point<S>) -> S {
    u.x.clone() * &v.x + u.y.clone() * &v.y
}

/// Exact rational scalar.
pub type ExactScalar = BigRational;
/// Point with exact rational coordinates.
pub type ExactPoint = Point<ExactScalar>;
/// Floating point instantiation.
pub type FloatPoint = Point<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::CounterClockwise => 1,
            Orientation::Collinear => 0,
        }
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Orientation {
    let det = cross(&q.sub(p), &r.sub(p));
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentRelation<S> {
    Disjoint,
    /// Single interior point shared by both segments.
    ProperCrossing(Point<S>),
    /// Endpoint `.0` of the first segment equals endpoint `.1` of the second,
    /// and that is the only common point.
    SharedEndpoint(usize, usize),
    /// An endpoint of one segment lies on the other in some way that is not a
    /// clean shared endpoint.
    Touch,
    /// Collinear with a common subsegment of positive length.
    Overlap,
}

impl<S> SegmentRelation<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            SegmentRelation::Disjoint => "disjoint",
            SegmentRelation::ProperCrossing(_) => "proper-crossing",
            SegmentRelation::SharedEndpoint(..) => "shared-endpoint",
            SegmentRelation::Touch => "touch",
            SegmentRelation::Overlap => "overlap",
        }
    }
}

/// `p` on the closed segment `a b`, assuming the three are collinear.
fn within_collinear<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lo_x <= &p.x && &p.x <= hi_x && lo_y <= &p.y && &p.y <= hi_y
}

/// `p` on the closed segment `a b`.
pub fn on_segment<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    orientation(a, b, p) == Orientation::Collinear && within_collinear(a, b, p)
}

/// `p` strictly inside segment `a b` (not at an endpoint).
pub fn in_segment_interior<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

/// Parameter `t` with `a1 + t (a2 - a1)` on the line through `b1 b2`.
/// Lines must not be parallel.
pub fn line_parameter<S: Scalar>(a1: &Point<S>, a2: &Point<S>, b1: &Point<S>, b2: &Point<S>) -> S {
    let da = a2.sub(a1);
    let db = b2.sub(b1);
    cross(&b1.sub(a1), &db) / cross(&da, &db)
}

/// Classify how segment `a1 a2` meets segment `b1 b2`.
pub fn relate_segments<S: Scalar>(
    a1: &Point<S>,
    a2: &Point<S>,
    b1: &Point<S>,
    b2: &Point<S>,
) -> Result<SegmentRelation<S>, GeometryError> {
    if a1 == a2 || b1 == b2 {
        return Err(GeometryError::DegenerateSegment);
    }
    let o1 = orientation(a1, a2, b1);
    let o2 = orientation(a1, a2, b2);
    let o3 = orientation(b1, b2, a1);
    let o4 = orientation(b1, b2, a2);

    let a = [a1, a2];
    let b = [b1, b2];
    let shared: Vec<(usize, usize)> = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .filter(|&(i, j)| a[i] == b[j])
        .collect();

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        // Same supporting line: compare along the dominant axis.
        let d = a2.sub(a1);
        let use_x = d.x.abs() >= d.y.abs();
        let key = |p: &Point<S>| if use_x { p.x.clone() } else { p.y.clone() };
        let (a_lo, a_hi) = order(key(a1), key(a2));
        let (b_lo, b_hi) = order(key(b1), key(b2));
        let lo = if a_lo > b_lo { a_lo } else { b_lo };
        let hi = if a_hi < b_hi { a_hi } else { b_hi };
        return Ok(if lo < hi {
            SegmentRelation::Overlap
        } else if lo == hi {
            match shared.first() {
                Some(&(i, j)) => SegmentRelation::SharedEndpoint(i, j),
                None => SegmentRelation::Touch,
            }
        } else {
            SegmentRelation::Disjoint
        });
    }

    if let Some(&(i, j)) = shared.first() {
        // Two distinct lines meet in at most one point.
        return Ok(SegmentRelation::SharedEndpoint(i, j));
    }

    if o1.sign() * o2.sign() < 0 && o3.sign() * o4.sign() < 0 {
        let t = line_parameter(a1, a2, b1, b2);
        return Ok(SegmentRelation::ProperCrossing(a1.lerp(a2, &t)));
    }

    let touches = (o1 == Orientation::Collinear && within_collinear(a1, a2, b1))
        || (o2 == Orientation::Collinear && within_collinear(a1, a2, b2))
        || (o3 == Orientation::Collinear && within_collinear(b1, b2, a1))
        || (o4 == Orientation::Collinear && within_collinear(b1, b2, a2));
    Ok(if touches {
        SegmentRelation::Touch
    } else {
        SegmentRelation::Disjoint
    })
}

fn order<S: Scalar>(a: S, b: S) -> (S, S) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Quadrant-then-cross comparison of direction vectors by angle in `[0, 2pi)`.
pub fn angle_cmp<S: Scalar>(u: &Point<S>, v: &Point<S>) -> std::cmp::Ordering {
    fn half<S: Scalar>(p: &Point<S>) -> u8 {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross(u, v);
        if c.is_positive() {
            std::cmp::Ordering::Less
        } else if c.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    })
}

/// Rational literal: `"p"` or `"p/q"` with an optional minus on `p` only.
pub fn parse_rational(text: &str) -> Result<ExactScalar, GeometryError> {
    let bad = || GeometryError::BadRational(text.to_string());
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical literal form: lowest terms, `"p"` when the denominator is one.
pub fn format_rational(q: &ExactScalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Six significant digits, as printed next to exact ratios.
pub fn format_decimal(q: &ExactScalar) -> String {
    let v = q.to_f64();
    if v == 0.0 {
        return "0".into();
    }
    let digits = 6 - 1 - v.abs().log10().floor() as i32;
    if digits >= 0 {
        format!("{:.*}", digits as usize, v)
    } else {
        format!("{:.0}", v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> ExactPoint {
        Point::new(ExactScalar::from_i64(x), ExactScalar::from_i64(y))
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Clockwise);
    }

    #[test]
    fn relate_examples() {
        let r = relate_segments(&p(0, 0), &p(1, 1), &p(0, 1), &p(1, 0)).unwrap();
        assert_eq!(
            r,
            SegmentRelation::ProperCrossing(Point::from_ratios((1, 2), (1, 2)))
        );
        let r = relate_segments(&p(0, 0), &p(1, 0), &p(0, 0), &p(0, 1)).unwrap();
        assert_eq!(r, SegmentRelation::SharedEndpoint(0, 0));
        let r = relate_segments(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, -1)).unwrap();
        assert_eq!(r, SegmentRelation::Touch);
        let r = relate_segments(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)).unwrap();
        assert_eq!(r, SegmentRelation::Overlap);
    }

    #[test]
    fn collinear_edge_cases() {
        // opposite directions from a shared endpoint
        let r = relate_segments(&p(0, 0), &p(1, 0), &p(0, 0), &p(-1, 0)).unwrap();
        assert_eq!(r, SegmentRelation::SharedEndpoint(0, 0));
        let r = relate_segments(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)).unwrap();
        assert_eq!(r, SegmentRelation::Disjoint);
        let r = relate_segments(&p(0, 0), &p(2, 0), &p(0, 0), &p(1, 0)).unwrap();
        assert_eq!(r, SegmentRelation::Overlap);
        let r = relate_segments(&p(0, 0), &p(1, 1), &p(1, 1), &p(0, 0)).unwrap();
        assert_eq!(r, SegmentRelation::Overlap);
        // T-junction at the other segment's endpoint
        let r = relate_segments(&p(0, 0), &p(2, 0), &p(2, 0), &p(2, 5)).unwrap();
        assert_eq!(r, SegmentRelation::SharedEndpoint(1, 0));
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert_eq!(
            relate_segments(&p(0, 0), &p(0, 0), &p(1, 0), &p(1, 1)),
            Err(GeometryError::DegenerateSegment)
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-6/4").unwrap(), ExactScalar::from_ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), ExactScalar::from_i64(7));
        for bad in ["", "1/0", "1/-2", "+3", "a", "1.5", "-", "3/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&ExactScalar::from_ratio(14, 20)), "7/10");
        assert_eq!(format_rational(&ExactScalar::from_ratio(-4, 2)), "-2");
        assert_eq!(format_decimal(&ExactScalar::from_ratio(7, 10)), "0.700000");
        assert_eq!(format_decimal(&ExactScalar::from_ratio(57, 110)), "0.518182");
    }

    #[test]
    fn angle_order() {
        let mut dirs = vec![p(0, -1), p(-1, 0), p(1, 1), p(1, 0), p(0, 1)];
        dirs.sort_by(angle_cmp);
        assert_eq!(dirs, vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1)]);
    }
}

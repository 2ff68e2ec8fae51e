//! Exact rational geometry: orientation, segment intersection, angular order,
//! signed area and winding numbers. No floating point is used anywhere here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Q = BigRational;

/// An exact point in the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Pt {
            x: Q::from_integer(BigInt::from(x)),
            y: Q::from_integer(BigInt::from(y)),
        }
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn midpoint(&self, o: &Pt) -> Pt {
        let two = Q::from_integer(BigInt::from(2));
        Pt::new((&self.x + &o.x) / &two, (&self.y + &o.y) / &two)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.x), q_to_f64(&self.y))
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

pub fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(0.0)
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

/// Sign of the turn a -> b -> c: `Greater` for a left (counterclockwise) turn.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegHit {
    None,
    Point(Pt),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

fn on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Exact intersection of closed segments `ab` and `cd` (both non-degenerate).
pub fn segment_intersection(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> SegHit {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = cross(&r, &s);
    let ca = c.sub(a);
    if denom.is_zero() {
        if !cross(&ca, &r).is_zero() {
            return SegHit::None;
        }
        // Collinear: project on r.
        let rr = &r.x * &r.x + &r.y * &r.y;
        let t0 = (&ca.x * &r.x + &ca.y * &r.y) / &rr;
        let da = d.sub(a);
        let t1 = (&da.x * &r.x + &da.y * &r.y) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(Q::zero());
        let hi = hi.min(Q::one());
        return match lo.cmp(&hi) {
            Ordering::Greater => SegHit::None,
            Ordering::Equal => SegHit::Point(Pt::new(&a.x + &r.x * &lo, &a.y + &r.y * &lo)),
            Ordering::Less => SegHit::Overlap,
        };
    }
    let t = cross(&ca, &s) / &denom;
    let u = cross(&ca, &r) / &denom;
    let zero = Q::zero();
    let one = Q::one();
    if t < zero || t > one || u < zero || u > one {
        return SegHit::None;
    }
    SegHit::Point(Pt::new(&a.x + &r.x * &t, &a.y + &r.y * &t))
}

/// Position of `p` along segment `ab` as a parameter in [0, 1]. Assumes `p` lies on it.
pub fn param_along(a: &Pt, b: &Pt, p: &Pt) -> Q {
    let r = b.sub(a);
    if !r.x.is_zero() {
        (&p.x - &a.x) / &r.x
    } else {
        (&p.y - &a.y) / &r.y
    }
}

/// Compares the directions of two nonzero vectors by counterclockwise angle
/// measured from the positive x axis, in [0, 2π).
pub fn cmp_direction(u: &Pt, v: &Pt) -> Ordering {
    fn half(p: &Pt) -> u8 {
        let zero = Q::zero();
        if p.y > zero || (p.y.is_zero() && p.x > zero) {
            0
        } else {
            1
        }
    }
    half(u).cmp(&half(v)).then_with(|| Q::zero().cmp(&cross(u, v)))
}

/// Twice the signed area of a closed polygon; positive when counterclockwise.
pub fn signed_area2(poly: &[Pt]) -> Q {
    let mut acc = Q::zero();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

/// Winding number of a closed polygon around `p`. `p` must not lie on the polygon.
pub fn winding_number(poly: &[Pt], p: &Pt) -> i64 {
    let mut w = 0;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Ordering::Greater {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Ordering::Less {
            w -= 1;
        }
    }
    w
}

pub fn point_on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    on_segment(p, a, b)
}

pub fn abs_q(q: &Q) -> Q {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_segments_meet_at_exact_point() {
        let hit = segment_intersection(&Pt::int(0, 0), &Pt::int(4, 4), &Pt::int(0, 4), &Pt::int(4, 0));
        assert_eq!(hit, SegHit::Point(Pt::int(2, 2)));
        let hit = segment_intersection(&Pt::int(0, 0), &Pt::int(3, 1), &Pt::int(0, 1), &Pt::int(3, 0));
        assert_eq!(
            hit,
            SegHit::Point(Pt::new(Q::new(3.into(), 2.into()), Q::new(1.into(), 2.into())))
        );
    }

    #[test]
    fn collinear_cases() {
        let o = |a, b, c, d| segment_intersection(&Pt::int(a, 0), &Pt::int(b, 0), &Pt::int(c, 0), &Pt::int(d, 0));
        assert_eq!(o(0, 2, 1, 3), SegHit::Overlap);
        assert_eq!(o(0, 2, 2, 3), SegHit::Point(Pt::int(2, 0)));
        assert_eq!(o(0, 2, 3, 4), SegHit::None);
    }

    #[test]
    fn directions_sort_counterclockwise() {
        let mut v = vec![
            Pt::int(0, -1),
            Pt::int(-1, 0),
            Pt::int(1, 1),
            Pt::int(1, 0),
            Pt::int(0, 1),
        ];
        v.sort_by(cmp_direction);
        assert_eq!(
            v,
            vec![
                Pt::int(1, 0),
                Pt::int(1, 1),
                Pt::int(0, 1),
                Pt::int(-1, 0),
                Pt::int(0, -1)
            ]
        );
    }

    #[test]
    fn area_and_winding() {
        let sq = [Pt::int(0, 0), Pt::int(2, 0), Pt::int(2, 2), Pt::int(0, 2)];
        assert_eq!(signed_area2(&sq), q_int(8));
        assert_eq!(winding_number(&sq, &Pt::int(1, 1)), 1);
        assert_eq!(winding_number(&sq, &Pt::int(3, 1)), 0);
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["3", "-7/2", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
    }
}

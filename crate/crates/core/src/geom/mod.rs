//! Exact rational geometry: points, lines, planes, segment predicates and the
//! drawing validators every other module relies on.
//!
//! Predicates are generic over [`Scalar`] so that search code can run them on
//! machine integers while certificates are always re-checked over [`Rat`].

mod cover;
mod drawing;
mod drawing3;
pub mod io;
mod segment;
pub mod svg;

pub use cover::{
    cover_by_lines, min_line_cover, pair_spanned_lines, singleton_line, LineCover, MAX_COVER_POINTS,
};
pub use drawing::{validate_drawing2, AffineMap, Drawing2, DrawingReport, Violation};
pub use drawing3::{
    validate_drawing3, Drawing3Report, EdgePlane, PlaneFrame, Segment3Index, Violation3,
};
pub use segment::{classify_segments, on_open_segment, seg_classify, SegmentRelation};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Numeric types the predicates accept.
pub trait Scalar: Clone + Ord + Num + Signed + fmt::Debug {}
impl<T: Clone + Ord + Num + Signed + fmt::Debug> Scalar for T {}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or a plain integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("`{s}` is not a rational"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always prints `num/den`, including `n/1` for integers.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct P2<T> {
    pub x: T,
    pub y: T,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct P3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type Point2 = P2<Rat>;
pub type Point3 = P3<Rat>;

impl<T> P2<T> {
    pub fn new(x: T, y: T) -> Self {
        P2 { x, y }
    }
}

impl<T> P3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        P3 { x, y, z }
    }
}

impl Point2 {
    pub fn int(x: i64, y: i64) -> Self {
        P2::new(rat(x), rat(y))
    }
}

impl Point3 {
    pub fn int(x: i64, y: i64, z: i64) -> Self {
        P3::new(rat(x), rat(y), rat(z))
    }
}

impl<T: Scalar> P2<T> {
    pub fn cross(&self, other: &Self) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }
}

impl<T: Scalar> Sub for &P2<T> {
    type Output = P2<T>;
    fn sub(self, rhs: Self) -> P2<T> {
        P2::new(
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
        )
    }
}

impl<T: Scalar> Add for &P2<T> {
    type Output = P2<T>;
    fn add(self, rhs: Self) -> P2<T> {
        P2::new(
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
        )
    }
}

impl<T: Scalar> P2<T> {
    pub fn scale(&self, k: &T) -> P2<T> {
        P2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }
}

impl<T: Scalar> P3<T> {
    pub fn cross(&self, o: &Self) -> P3<T> {
        P3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &T) -> P3<T> {
        P3::new(
            self.x.clone() * k.clone(),
            self.y.clone() * k.clone(),
            self.z.clone() * k.clone(),
        )
    }
}

impl<T: Scalar> Sub for &P3<T> {
    type Output = P3<T>;
    fn sub(self, rhs: Self) -> P3<T> {
        P3::new(
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<T: Scalar> Add for &P3<T> {
    type Output = P3<T>;
    fn add(self, rhs: Self) -> P3<T> {
        P3::new(
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<'a, T: Scalar> Mul<&'a T> for &'a P3<T> {
    type Output = P3<T>;
    fn mul(self, k: &'a T) -> P3<T> {
        self.scale(k)
    }
}

/// Sign of the turn `p -> q -> r`: `Greater` for counter-clockwise.
pub fn orient<T: Scalar>(p: &P2<T>, q: &P2<T>, r: &P2<T>) -> Ordering {
    (q - p).cross(&(r - p)).cmp(&T::zero())
}

/// Line `a x + b y = c`, normalized so that the first nonzero of `(a, b)`
/// is one. The normalization makes equal lines compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line2 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Line2 {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(Error::InvalidInput("line with a = b = 0".into()));
        };
        Ok(Line2 {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateSegment);
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line2::new(a, b, c)
    }

    /// `y = 0`.
    pub fn x_axis() -> Self {
        Line2::new(rat(0), rat(1), rat(0)).expect("nonzero")
    }

    /// `x = 0`.
    pub fn y_axis() -> Self {
        Line2::new(rat(1), rat(0), rat(0)).expect("nonzero")
    }

    pub fn horizontal(y: Rat) -> Self {
        Line2::new(rat(0), rat(1), y).expect("nonzero")
    }

    pub fn eval(&self, p: &Point2) -> Rat {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.eval(p).is_zero()
    }

    pub fn side(&self, p: &Point2) -> Ordering {
        self.eval(p).cmp(&Rat::zero())
    }

    pub fn is_parallel(&self, other: &Line2) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    pub fn intersection(&self, other: &Line2) -> Option<Point2> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &self.b * &other.c) / &det;
        let y = (&self.a * &other.c - &self.c * &other.a) / &det;
        Some(P2::new(x, y))
    }

    /// A direction vector along the line.
    pub fn direction(&self) -> Point2 {
        P2::new(self.b.clone(), -self.a.clone())
    }

    /// Some point on the line.
    pub fn anchor(&self) -> Point2 {
        if !self.b.is_zero() {
            P2::new(rat(0), &self.c / &self.b)
        } else {
            P2::new(&self.c / &self.a, rat(0))
        }
    }
}

impl fmt::Display for Line2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            format_rat(&self.a),
            format_rat(&self.b),
            format_rat(&self.c)
        )
    }
}

/// Plane `a x + b y + c z = d`, normalized like [`Line2`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Plane3 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Plane3 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let lead = [&a, &b, &c]
            .into_iter()
            .find(|v| !v.is_zero())
            .cloned()
            .ok_or_else(|| Error::InvalidInput("plane with zero normal".into()))?;
        Ok(Plane3 {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
            d: d / &lead,
        })
    }

    /// `z = 0`.
    pub fn xy() -> Self {
        Plane3::new(rat(0), rat(0), rat(1), rat(0)).expect("nonzero")
    }

    /// `y = 0`.
    pub fn xz() -> Self {
        Plane3::new(rat(0), rat(1), rat(0), rat(0)).expect("nonzero")
    }

    pub fn through(p: &Point3, q: &Point3, r: &Point3) -> Result<Self> {
        let n = (q - p).cross(&(r - p));
        if n.is_zero() {
            return Err(Error::InvalidInput("collinear points span no plane".into()));
        }
        let d = n.dot(p);
        Plane3::new(n.x, n.y, n.z, d)
    }

    pub fn normal(&self) -> Point3 {
        P3::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn eval(&self, p: &Point3) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c * &p.z - &self.d
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.eval(p).is_zero()
    }

    pub fn is_parallel(&self, other: &Plane3) -> bool {
        self.normal().cross(&other.normal()).is_zero()
    }
}

impl fmt::Display for Plane3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            format_rat(&self.a),
            format_rat(&self.b),
            format_rat(&self.c),
            format_rat(&self.d)
        )
    }
}

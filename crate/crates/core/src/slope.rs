//! Slopes on the boundary torus in the (longitude, meridian) basis, their
//! intersection numbers, the Fibonacci slope sequence and flips of one-vertex
//! torus triangulations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::golden::QSqrt5;

/// An oriented integer homology class `(x, y)` on the boundary torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Vec2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        Vec2::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn det(&self, other: &Vec2) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn add(&self, o: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn sub(&self, o: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Vec2 {
        Vec2 {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn neg(&self) -> Vec2 {
        Vec2 {
            x: -&self.x,
            y: -&self.y,
        }
    }

    /// Gcd of the coordinates.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }
}

/// An unoriented slope: a primitive vector up to sign, normalized so that
/// `x ≥ 0`, with `(0, 1)` for the meridian.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    x: BigInt,
    y: BigInt,
}

impl Slope {
    /// Normalized slope of `(x, y)`; `None` unless the pair is primitive.
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Option<Self> {
        Slope::from_vec(&Vec2::new(x, y))
    }

    pub fn from_vec(v: &Vec2) -> Option<Self> {
        if !v.content().is_one() {
            return None;
        }
        let flip = v.x.is_negative() || (v.x.is_zero() && v.y.is_negative());
        Some(if flip {
            Slope {
                x: -&v.x,
                y: -&v.y,
            }
        } else {
            Slope {
                x: v.x.clone(),
                y: v.y.clone(),
            }
        })
    }

    /// The slope of a nonzero class, dividing out its content.
    pub fn of_class(v: &Vec2) -> Option<Self> {
        let g = v.content();
        if g.is_zero() {
            return None;
        }
        Slope::from_vec(&Vec2::new(&v.x / &g, &v.y / &g))
    }

    pub fn meridian() -> Self {
        Slope::new(0, 1).unwrap()
    }

    pub fn longitude() -> Self {
        Slope::new(1, 0).unwrap()
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn as_vec(&self) -> Vec2 {
        Vec2 {
            x: self.x.clone(),
            y: self.y.clone(),
        }
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.x.to_i64()?, self.y.to_i64()?))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.x, &self.y).cmp(&(&other.x, &other.y))
    }
}

/// Integers that fit in 64 bits serialize as JSON numbers, larger ones as strings.
pub fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        struct Big<'a>(&'a BigInt);
        impl Serialize for Big<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Big(&self.x))?;
        seq.serialize_element(&Big(&self.y))?;
        seq.end()
    }
}

/// Geometric intersection number `|a.x·b.y − a.y·b.x|`.
pub fn intersection(a: &Slope, b: &Slope) -> BigInt {
    a.as_vec().det(&b.as_vec()).abs()
}

/// `y_i` with `y_0 = 0`, `y_1 = 1`, `y_{i+2} = y_i + y_{i+1}`.
pub fn fibonacci(i: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..i {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `s_i`, built from `s_0 = (1,0)`, `s_1 = (1,1)` by `s_{i+2} = s_i + s_{i+1}`.
pub fn slope_seq(i: usize) -> Slope {
    let mut a = Vec2::new(1, 0);
    let mut b = Vec2::new(1, 1);
    for _ in 0..i {
        let next = a.add(&b);
        a = std::mem::replace(&mut b, next);
    }
    Slope::from_vec(&a).expect("consecutive Farey neighbours are primitive")
}

/// `x_i`, the longitude coordinate of `s_i`.
pub fn x_seq(i: usize) -> BigInt {
    slope_seq(i).x
}

/// Checks `y_i` from the recursion against the closed form: the two-term
/// formula exactly in `Q(√5)`, and the one-term formula rounded.
pub fn binet_check(i: usize) -> bool {
    let y = slope_seq(i).y;
    let k = i as u32;
    let phi_i = QSqrt5::phi().pow(k);
    let psi_i = QSqrt5::phi_conjugate().pow(k);
    let diff = &phi_i - &psi_i;
    // (φ^i − ψ^i) is a rational multiple of √5; dividing by √5 leaves it.
    let exact_ok = diff.rational.is_zero() && diff.irrational == BigRational::from_integer(y.clone());
    // φ^i/√5 = (a + b√5)/√5 = b + (a/5)√5
    let one_term = QSqrt5::new(
        phi_i.irrational.clone(),
        &phi_i.rational / BigRational::from_integer(5.into()),
    );
    let half = QSqrt5::from_ratio(BigRational::new(1.into(), 2.into()));
    let rounded = (&one_term + &half).floor();
    exact_ok && rounded == y
}

/// The three boundary edge slopes of a one-vertex torus triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeTriple([Slope; 3]);

impl SlopeTriple {
    /// Validates pairwise intersection 1 and that one slope is the sum or
    /// difference of the other two.
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<Self> {
        let mut s = [a, b, c];
        s.sort();
        let t = SlopeTriple(s);
        if !t.is_valid() {
            return Err(Error::Invalid(format!(
                "{} {} {} is not a Farey triangle",
                t.0[0], t.0[1], t.0[2]
            )));
        }
        Ok(t)
    }

    fn is_valid(&self) -> bool {
        let [a, b, c] = &self.0;
        let one = BigInt::one();
        if intersection(a, b) != one || intersection(a, c) != one || intersection(b, c) != one {
            return false;
        }
        let (va, vb, vc) = (a.as_vec(), b.as_vec(), c.as_vec());
        [(&va, &vb, &vc), (&va, &vc, &vb), (&vb, &vc, &va)]
            .iter()
            .any(|(p, q, r)| {
                Slope::from_vec(&p.add(q)).as_ref() == Slope::from_vec(r).as_ref()
                    || Slope::from_vec(&p.sub(q)).as_ref() == Slope::from_vec(r).as_ref()
            })
    }

    pub fn slopes(&self) -> &[Slope; 3] {
        &self.0
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.0.contains(s)
    }

    /// Sum of intersections of `s` with the three edge slopes.
    pub fn intersection_sum(&self, s: &Slope) -> BigInt {
        self.0.iter().map(|e| intersection(s, e)).sum()
    }
}

impl fmt::Display for SlopeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Flips the edge with slope `removed`: the two triangles adjacent to it form
/// a square whose other diagonal is inserted.
///
/// With the remaining slopes `a`, `b`, the two diagonals of the square are
/// `a + b` and `a − b`; the inserted one is whichever is not `removed`.
pub fn elementary_move(t: &SlopeTriple, removed: &Slope) -> Result<SlopeTriple> {
    if !t.contains(removed) {
        return Err(Error::SlopeNotInTriple(removed.to_string()));
    }
    let rest: Vec<&Slope> = t.0.iter().filter(|s| *s != removed).collect();
    let (a, b) = (rest[0].as_vec(), rest[1].as_vec());
    let sum = Slope::from_vec(&a.add(&b)).expect("Farey neighbours");
    let inserted = if &sum == removed {
        Slope::from_vec(&a.sub(&b)).expect("Farey neighbours")
    } else {
        sum
    };
    SlopeTriple::new(rest[0].clone(), rest[1].clone(), inserted)
}

/// The slope that `elementary_move` would insert.
pub fn flip_insert(t: &SlopeTriple, removed: &Slope) -> Result<Slope> {
    let after = elementary_move(t, removed)?;
    Ok(after
        .0
        .iter()
        .find(|s| !t.contains(s))
        .cloned()
        .unwrap_or_else(|| removed.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64, y: i64) -> Slope {
        Slope::new(x, y).unwrap()
    }

    fn triple(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> SlopeTriple {
        SlopeTriple::new(s(a.0, a.1), s(b.0, b.1), s(c.0, c.1)).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection(&s(1, 0), &s(0, 1)), BigInt::from(1));
        assert_eq!(intersection(&s(2, 1), &s(0, 1)), BigInt::from(2));
        for n in -5i64..=5 {
            let (x, y) = (5i64, 3i64);
            assert_eq!(
                intersection(&s(1, n), &s(x, y)),
                BigInt::from((n * x - y).abs())
            );
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(s(-2, -1), s(2, 1));
        assert_eq!(s(0, -1), Slope::meridian());
        assert!(Slope::new(2, 4).is_none());
        assert_eq!(s(-3, 2).to_string(), "(3,-2)");
    }

    #[test]
    fn sequence_values() {
        assert_eq!(slope_seq(0), s(1, 0));
        assert_eq!(slope_seq(1), s(1, 1));
        assert_eq!(slope_seq(3), s(3, 2));
        assert_eq!(slope_seq(4), s(5, 3));
        for i in 0..40 {
            let next = slope_seq(i).as_vec().add(&slope_seq(i + 1).as_vec());
            assert_eq!(slope_seq(i + 2).as_vec(), next);
            assert_eq!(x_seq(i), fibonacci(i + 1));
        }
        // Past 64 bits.
        assert_eq!(slope_seq(100).y().to_string(), "354224848179261915075");
    }

    #[test]
    fn binet_agrees() {
        assert!(binet_check(0));
        assert!(binet_check(10));
        assert_eq!(fibonacci(10), BigInt::from(55));
        assert!((1..=40).all(binet_check));
    }

    #[test]
    fn flips() {
        let t0 = triple((1, 0), (1, 1), (2, 1));
        assert_eq!(
            elementary_move(&t0, &s(1, 0)).unwrap(),
            triple((1, 1), (2, 1), (3, 2))
        );
        // (2,1) is already the sum of the others, so its flip goes toward the
        // root of the tree and inserts the difference.
        assert_eq!(
            elementary_move(&t0, &s(2, 1)).unwrap(),
            triple((1, 0), (1, 1), (0, 1))
        );
        assert!(elementary_move(&t0, &s(3, 2)).is_err());
        let mut t = t0.clone();
        for i in 0..5 {
            t = elementary_move(&t, &slope_seq(i)).unwrap();
        }
        assert_eq!(
            t,
            SlopeTriple::new(slope_seq(5), slope_seq(6), slope_seq(7)).unwrap()
        );
    }

    #[test]
    fn rejects_non_farey_triples() {
        assert!(SlopeTriple::new(s(1, 0), s(0, 1), s(1, 2)).is_err());
        assert!(SlopeTriple::new(s(1, 0), s(1, 1), s(1, 2)).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(1000))]

        #[test]
        fn intersection_symmetric(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            if let (Some(p), Some(q)) = (Slope::new(a, b), Slope::new(c, d)) {
                proptest::prop_assert_eq!(intersection(&p, &q), intersection(&q, &p));
                proptest::prop_assert_eq!(intersection(&p, &q).is_zero(), p == q);
            }
        }

        #[test]
        fn flips_preserve_farey_triangles(walk in proptest::collection::vec(0usize..3, 1..40)) {
            let mut t = triple((1, 0), (1, 1), (2, 1));
            for k in walk {
                let removed = t.slopes()[k].clone();
                let next = elementary_move(&t, &removed).unwrap();
                // Flipping the inserted edge undoes the move.
                let inserted = flip_insert(&t, &removed).unwrap();
                proptest::prop_assert_eq!(elementary_move(&next, &inserted).unwrap(), t.clone());
                t = next;
            }
        }
    }
}

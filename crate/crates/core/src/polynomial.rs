//! Exact counting and indicator polynomials of fractions.
//!
//! A fraction of the full design has a unique square-free polynomial
//! F = sum_alpha b_alpha x^alpha whose value at a run is that run's
//! multiplicity (1/0 for plain subsets). Every coefficient is a dyadic
//! rational with denominator 2^m, so the whole module works on integer
//! numerators over the fixed denominator. No floating point anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::gf2::{MultiIndex, Point, Sign};
use crate::regular::RegularSpec;

/// A multiset of runs of the full design in m factors.
///
/// Multiplicities above 1 are allowed (projections of larger designs may
/// replicate runs); plain fractions keep every multiplicity at 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fraction {
    m: u8,
    counts: BTreeMap<Point, u32>,
}

impl Fraction {
    /// The empty fraction.
    pub fn new(m: usize) -> Fraction {
        let _ = Point::identity(m); // validate m
        Fraction { m: m as u8, counts: BTreeMap::new() }
    }

    /// Fraction holding each point of an iterator once per occurrence.
    pub fn from_points(m: usize, points: impl IntoIterator<Item = Point>) -> Fraction {
        let mut f = Fraction::new(m);
        for p in points {
            f.insert(p);
        }
        f
    }

    /// The full design: all 2^m runs once.
    pub fn full(m: usize) -> Fraction {
        Fraction::from_points(m, (0..1u32 << m).map(|bits| Point::new(m, bits)))
    }

    /// Add one occurrence of a run.
    pub fn insert(&mut self, p: Point) {
        self.insert_with_multiplicity(p, 1);
    }

    /// Add `count` occurrences of a run.
    pub fn insert_with_multiplicity(&mut self, p: Point, count: u32) {
        assert_eq!(p.m(), self.m(), "dimension mismatch");
        if count > 0 {
            *self.counts.entry(p).or_insert(0) += count;
        }
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Total number of runs, multiplicities included.
    pub fn total_runs(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }

    /// Number of distinct runs.
    pub fn distinct_runs(&self) -> usize {
        self.counts.len()
    }

    /// Multiplicity of a run (0 when absent).
    pub fn multiplicity(&self, p: Point) -> u32 {
        assert_eq!(p.m(), self.m(), "dimension mismatch");
        self.counts.get(&p).copied().unwrap_or(0)
    }

    /// True when the run occurs at least once.
    pub fn contains(&self, p: Point) -> bool {
        self.multiplicity(p) > 0
    }

    /// True when no run occurs.
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// True when every multiplicity is 1, i.e. the fraction is a plain set.
    pub fn is_unreplicated(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }

    /// Distinct runs with their multiplicities, ascending by point mask.
    pub fn points(&self) -> impl Iterator<Item = (Point, u32)> + '_ {
        self.counts.iter().map(|(&p, &c)| (p, c))
    }

    /// Multiset intersection (pointwise minimum of multiplicities).
    pub fn intersection(&self, other: &Fraction) -> Fraction {
        assert_eq!(self.m, other.m, "dimension mismatch");
        let mut out = Fraction::new(self.m());
        for (p, c) in self.points() {
            let k = c.min(other.multiplicity(p));
            out.insert_with_multiplicity(p, k);
        }
        out
    }

    /// True when every run of `self` occurs in `other` at least as often.
    pub fn is_subset(&self, other: &Fraction) -> bool {
        assert_eq!(self.m, other.m, "dimension mismatch");
        self.points().all(|(p, c)| other.multiplicity(p) >= c)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.points().map(|(p, c)| (p, c))).finish()
    }
}

/// In-place Walsh-Hadamard transform: out[s] = sum_t v[t] * (-1)^popcount(s & t).
/// Self-inverse up to the factor 2^m. Length must be a power of two.
fn wht(v: &mut [i64]) {
    debug_assert!(v.len().is_power_of_two());
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for i in 0..h {
                let (a, b) = (lo[i], hi[i]);
                lo[i] = a + b;
                hi[i] = a - b;
            }
        }
        h *= 2;
    }
}

fn wht_i128(v: &mut [i128]) {
    debug_assert!(v.len().is_power_of_two());
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for i in 0..h {
                let (a, b) = (lo[i], hi[i]);
                lo[i] = a + b;
                hi[i] = a - b;
            }
        }
        h *= 2;
    }
}

/// The counting polynomial of a fraction: exact coefficients b_alpha stored as
/// integer numerators over the implicit denominator 2^m. Zero coefficients are
/// not stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountingPolynomial {
    m: u8,
    num: BTreeMap<MultiIndex, i64>,
}

impl CountingPolynomial {
    /// The zero polynomial.
    pub fn zero(m: usize) -> CountingPolynomial {
        let _ = MultiIndex::zero(m); // validate m
        CountingPolynomial { m: m as u8, num: BTreeMap::new() }
    }

    /// The constant 1 (indicator of the full design).
    pub fn one(m: usize) -> CountingPolynomial {
        CountingPolynomial::from_numerators(m, [(MultiIndex::zero(m), 1i64 << m)])
    }

    /// Polynomial from raw numerators over 2^m. Zero entries are dropped;
    /// repeated indices accumulate.
    pub fn from_numerators(
        m: usize,
        entries: impl IntoIterator<Item = (MultiIndex, i64)>,
    ) -> CountingPolynomial {
        let mut p = CountingPolynomial::zero(m);
        for (alpha, n) in entries {
            assert_eq!(alpha.m(), m, "dimension mismatch");
            let slot = p.num.entry(alpha).or_insert(0);
            *slot += n;
            if *slot == 0 {
                p.num.remove(&alpha);
            }
        }
        p
    }

    /// Counting polynomial of a fraction via the fast transform,
    /// O(m 2^m): b_alpha = 2^-m sum_t count(t) X^alpha(t).
    pub fn from_fraction(f: &Fraction) -> CountingPolynomial {
        let m = f.m();
        let mut v = vec![0i64; 1 << m];
        for (p, c) in f.points() {
            v[p.bits() as usize] = c as i64;
        }
        wht(&mut v);
        CountingPolynomial::from_dense(m, &v)
    }

    /// Reference transform, O(4^m): the defining sum evaluated term by term.
    /// Kept as an independent cross-check for the butterfly.
    pub fn from_fraction_naive(f: &Fraction) -> CountingPolynomial {
        let m = f.m();
        let mut entries = Vec::new();
        for abits in 0..1u32 << m {
            let alpha = MultiIndex::new(m, abits);
            let mut sum = 0i64;
            for (p, c) in f.points() {
                sum += alpha.sign_at(p).value() * c as i64;
            }
            entries.push((alpha, sum));
        }
        CountingPolynomial::from_numerators(m, entries)
    }

    fn from_dense(m: usize, numerators: &[i64]) -> CountingPolynomial {
        let entries = numerators
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(bits, &n)| (MultiIndex::new(m, bits as u32), n));
        CountingPolynomial::from_numerators(m, entries)
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// The common denominator 2^m.
    pub fn denominator(&self) -> i64 {
        1i64 << self.m
    }

    /// Numerator of b_alpha over 2^m (0 when the term is absent).
    pub fn numerator(&self, alpha: MultiIndex) -> i64 {
        assert_eq!(alpha.m(), self.m(), "dimension mismatch");
        self.num.get(&alpha).copied().unwrap_or(0)
    }

    /// Coefficient b_alpha as a reduced rational.
    pub fn coefficient(&self, alpha: MultiIndex) -> Rational64 {
        Rational64::new(self.numerator(alpha), self.denominator())
    }

    /// Nonzero terms ordered by (weight, mask): the canonical print order.
    pub fn terms(&self) -> Vec<(MultiIndex, Rational64)> {
        let mut out: Vec<(MultiIndex, Rational64)> = self
            .num
            .iter()
            .map(|(&a, &n)| (a, Rational64::new(n, self.denominator())))
            .collect();
        out.sort_by_key(|(a, _)| (a.weight(), a.bits()));
        out
    }

    /// Multi-indices with nonzero coefficient, ascending by mask.
    pub fn support(&self) -> Vec<MultiIndex> {
        self.num.keys().copied().collect()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.num.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Total number of runs, sum_t F(t) = 2^m b_0.
    pub fn run_count(&self) -> i64 {
        self.numerator(MultiIndex::zero(self.m()))
    }

    fn dense_numerators(&self) -> Vec<i64> {
        let mut v = vec![0i64; 1 << self.m];
        for (&a, &n) in &self.num {
            v[a.bits() as usize] = n;
        }
        v
    }

    /// 2^m * F(t) for every t, indexed by point mask. Always integral.
    fn scaled_values(&self) -> Vec<i64> {
        let mut v = self.dense_numerators();
        wht(&mut v);
        v
    }

    /// Exact value of the polynomial at a run.
    pub fn evaluate(&self, p: Point) -> Rational64 {
        assert_eq!(p.m(), self.m(), "dimension mismatch");
        let sum: i64 = self
            .num
            .iter()
            .map(|(&a, &n)| a.sign_at(p).value() * n)
            .sum();
        Rational64::new(sum, self.denominator())
    }

    /// True when the polynomial takes only the values 0 and 1 on the design,
    /// i.e. it is the indicator of a plain (unreplicated) fraction.
    pub fn is_indicator(&self) -> bool {
        let full = self.denominator();
        self.scaled_values().iter().all(|&v| v == 0 || v == full)
    }

    /// The fraction whose counting polynomial this is.
    ///
    /// Fails when some value is negative or not an integer, i.e. when the
    /// polynomial does not count any multiset of runs.
    pub fn to_fraction(&self) -> Result<Fraction> {
        let m = self.m();
        let full = self.denominator();
        let mut f = Fraction::new(m);
        for (bits, &v) in self.scaled_values().iter().enumerate() {
            if v % full != 0 {
                return Err(Error::NonIntegerValue { point: bits as u32 });
            }
            let count = v / full;
            if count < 0 {
                return Err(Error::NegativeValue { point: bits as u32, value: count });
            }
            f.insert_with_multiplicity(Point::new(m, bits as u32), count as u32);
        }
        Ok(f)
    }

    /// Largest s such that b_alpha = 0 for all 1 <= |alpha| <= s; the fraction
    /// is then an orthogonal array of strength s. Returns m when only b_0 is
    /// nonzero (the full design).
    pub fn orthogonal_strength(&self) -> Result<usize> {
        if !self.is_indicator() {
            return Err(Error::NotIndicator);
        }
        let min_weight = self
            .num
            .keys()
            .filter(|a| !a.is_zero())
            .map(|a| a.weight() as usize)
            .min();
        Ok(match min_weight {
            Some(w) => w - 1,
            None => self.m(),
        })
    }

    /// Recognize a regular fraction from its indicator coefficients.
    ///
    /// Returns the defining generators and signs when the support is a
    /// subgroup, every coefficient has modulus 1/|support|, and the
    /// normalized signs form a group homomorphism into {-1,+1}; returns
    /// `None` otherwise. The returned generators are canonical.
    pub fn regularity(&self) -> Result<Option<RegularSpec>> {
        if !self.is_indicator() {
            return Err(Error::NotIndicator);
        }
        if self.is_zero() {
            return Err(Error::EmptyFraction);
        }
        let m = self.m();
        let support = self.support();
        if !support.len().is_power_of_two() {
            return Ok(None);
        }
        // the support must be a subgroup of L
        let basis = crate::gf2::rref(support.iter().map(|a| a.bits()));
        if 1usize << basis.len() != support.len() {
            return Ok(None);
        }
        let generators: Vec<MultiIndex> =
            basis.into_iter().map(|b| MultiIndex::new(m, b)).collect();
        let subgroup = crate::gf2::Subgroup::new(m, &generators).expect("rref basis independent");
        let span = subgroup.span();
        if span != support {
            return Ok(None);
        }
        // all coefficients must be +-1/l with l = |support|
        let magnitude = self.denominator() / support.len() as i64;
        if support.iter().any(|&a| self.numerator(a).abs() != magnitude) {
            return Ok(None);
        }
        // e(alpha) = l * b_alpha must multiply along the group
        let signs: Vec<Sign> = generators
            .iter()
            .map(|&g| Sign::of(self.numerator(g)))
            .collect();
        for (alpha, subset) in subgroup.subset_spans() {
            let expected = Sign::from_parity(
                (0..generators.len())
                    .filter(|&i| subset >> i & 1 == 1)
                    .filter(|&i| signs[i] == Sign::Minus)
                    .count() as u32,
            );
            if Sign::of(self.numerator(alpha)) != expected {
                return Ok(None);
            }
        }
        let spec = RegularSpec::new(m, generators, signs).expect("independent by construction");
        Ok(Some(spec))
    }
}

impl Add for &CountingPolynomial {
    type Output = CountingPolynomial;
    fn add(self, rhs: &CountingPolynomial) -> CountingPolynomial {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        CountingPolynomial::from_numerators(
            self.m(),
            self.num
                .iter()
                .map(|(&a, &n)| (a, n))
                .chain(rhs.num.iter().map(|(&a, &n)| (a, n))),
        )
    }
}

impl Sub for &CountingPolynomial {
    type Output = CountingPolynomial;
    fn sub(self, rhs: &CountingPolynomial) -> CountingPolynomial {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        CountingPolynomial::from_numerators(
            self.m(),
            self.num
                .iter()
                .map(|(&a, &n)| (a, n))
                .chain(rhs.num.iter().map(|(&a, &n)| (a, -n))),
        )
    }
}

impl Mul for &CountingPolynomial {
    type Output = CountingPolynomial;

    /// Product in the quotient ring with x_j^2 = 1: an XOR convolution of the
    /// coefficients, computed exactly through point values.
    ///
    /// Panics when the product has no representation over the denominator
    /// 2^m; this cannot happen when both factors take integer values at every
    /// design point (true for every polynomial obtained from a fraction).
    fn mul(self, rhs: &CountingPolynomial) -> CountingPolynomial {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        let m = self.m();
        let mut a: Vec<i128> = self.dense_numerators().iter().map(|&x| x as i128).collect();
        let mut b: Vec<i128> = rhs.dense_numerators().iter().map(|&x| x as i128).collect();
        wht_i128(&mut a);
        wht_i128(&mut b);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        wht_i128(&mut a);
        let scale = 1i128 << (2 * m); // one 2^m per forward transform
        let entries = a.iter().enumerate().filter(|(_, &n)| n != 0).map(|(bits, &n)| {
            assert!(
                n % scale == 0,
                "product is not representable over denominator 2^m"
            );
            (
                MultiIndex::new(m, bits as u32),
                i64::try_from(n / scale).expect("coefficient overflow"),
            )
        });
        CountingPolynomial::from_numerators(m, entries)
    }
}

impl Add for CountingPolynomial {
    type Output = CountingPolynomial;
    fn add(self, rhs: CountingPolynomial) -> CountingPolynomial {
        &self + &rhs
    }
}

impl Sub for CountingPolynomial {
    type Output = CountingPolynomial;
    fn sub(self, rhs: CountingPolynomial) -> CountingPolynomial {
        &self - &rhs
    }
}

impl Mul for CountingPolynomial {
    type Output = CountingPolynomial;
    fn mul(self, rhs: CountingPolynomial) -> CountingPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for CountingPolynomial {
    /// Terms ordered by (weight, mask), coefficients as reduced fractions:
    /// `3/4 - 1/4 X1 - 1/4 X2 - 1/4 X12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, coeff)) in terms.iter().enumerate() {
            let negative = coeff < &Rational64::from_integer(0);
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let magnitude = if negative { -coeff } else { *coeff };
            if alpha.is_zero() {
                write!(f, "{magnitude}")?;
            } else if magnitude == Rational64::from_integer(1) {
                write!(f, "{alpha}")?;
            } else {
                write!(f, "{magnitude} {alpha}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::MultiIndex as Mi;
    use proptest::prelude::*;

    fn mi(m: usize, factors: &[usize]) -> Mi {
        Mi::from_factors(m, factors)
    }

    /// The three-point fraction {(-1,-1),(-1,+1),(+1,-1)} of m = 2.
    pub(crate) fn three_point_fraction() -> Fraction {
        Fraction::from_points(
            2,
            [
                Point::from_levels(&[-1, -1]),
                Point::from_levels(&[-1, 1]),
                Point::from_levels(&[1, -1]),
            ],
        )
    }

    #[test]
    fn three_point_example_coefficients() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(f.coefficient(mi(2, &[])), Rational64::new(3, 4));
        assert_eq!(f.coefficient(mi(2, &[1])), Rational64::new(-1, 4));
        assert_eq!(f.coefficient(mi(2, &[2])), Rational64::new(-1, 4));
        assert_eq!(f.coefficient(mi(2, &[1, 2])), Rational64::new(-1, 4));
        assert_eq!(f.term_count(), 4);
    }

    #[test]
    fn single_point_product_form() {
        // {(-1,-1)}: 1/4 (1 - x1)(1 - x2)
        let f = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::from_levels(&[-1, -1])],
        ));
        assert_eq!(f.coefficient(mi(2, &[])), Rational64::new(1, 4));
        assert_eq!(f.coefficient(mi(2, &[1])), Rational64::new(-1, 4));
        assert_eq!(f.coefficient(mi(2, &[2])), Rational64::new(-1, 4));
        assert_eq!(f.coefficient(mi(2, &[1, 2])), Rational64::new(1, 4));
    }

    #[test]
    fn full_design_is_constant_one() {
        let f = CountingPolynomial::from_fraction(&Fraction::full(3));
        assert_eq!(f, CountingPolynomial::one(3));
        assert_eq!(f.orthogonal_strength().unwrap(), 3);
    }

    #[test]
    fn evaluation_matches_membership() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(f.evaluate(Point::from_levels(&[-1, -1])), Rational64::from_integer(1));
        assert_eq!(f.evaluate(Point::from_levels(&[1, 1])), Rational64::from_integer(0));
        let zero = CountingPolynomial::zero(2);
        assert_eq!(zero.evaluate(Point::identity(2)), Rational64::from_integer(0));
    }

    #[test]
    fn union_formula_reproduces_three_point_polynomial() {
        // F1 = 1/4 (1-x1)(1-x2), F2 = 1/2 (1 - x1 x2); F1 + F2 - F1 F2
        let f1 = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::from_levels(&[-1, -1])],
        ));
        let f2 = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::from_levels(&[-1, 1]), Point::from_levels(&[1, -1])],
        ));
        let union = &(&f1 + &f2) - &(&f1 * &f2);
        assert_eq!(union, CountingPolynomial::from_fraction(&three_point_fraction()));
    }

    #[test]
    fn indicator_product_is_idempotent() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(&f * &f, f);
    }

    #[test]
    fn is_indicator_examples() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert!(f.is_indicator());
        let doubled = &f + &f;
        assert!(!doubled.is_indicator());
        // constant 1/2
        let half = CountingPolynomial::from_numerators(2, [(mi(2, &[]), 2)]);
        assert!(!half.is_indicator());
    }

    #[test]
    fn strength_of_three_point_fraction_is_zero() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(f.orthogonal_strength().unwrap(), 0);
    }

    #[test]
    fn strength_rejects_non_indicators() {
        let half = CountingPolynomial::from_numerators(2, [(mi(2, &[]), 2)]);
        assert_eq!(half.orthogonal_strength(), Err(Error::NotIndicator));
    }

    #[test]
    fn regularity_of_half_fraction() {
        // 1/2 (1 - x1 x2) is regular with L = {0, {12}}, e({12}) = -1
        let f = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::from_levels(&[-1, 1]), Point::from_levels(&[1, -1])],
        ));
        let spec = f.regularity().unwrap().expect("regular");
        assert_eq!(spec.generators(), &[mi(2, &[1, 2])]);
        assert_eq!(spec.signs(), &[Sign::Minus]);
        assert_eq!(spec.indicator(), f);
    }

    #[test]
    fn three_point_fraction_is_not_regular() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(f.regularity().unwrap(), None);
    }

    #[test]
    fn regularity_rejects_empty_and_non_indicator() {
        assert_eq!(CountingPolynomial::zero(2).regularity(), Err(Error::EmptyFraction));
        let half = CountingPolynomial::from_numerators(2, [(mi(2, &[]), 2)]);
        assert_eq!(half.regularity(), Err(Error::NotIndicator));
    }

    #[test]
    fn to_fraction_roundtrip_with_replication() {
        let mut f = Fraction::new(3);
        f.insert_with_multiplicity(Point::new(3, 0b101), 2);
        f.insert(Point::new(3, 0b010));
        let poly = CountingPolynomial::from_fraction(&f);
        assert_eq!(poly.to_fraction().unwrap(), f);
        assert_eq!(poly.run_count(), 3);
        assert!(!poly.is_indicator());
    }

    #[test]
    fn to_fraction_rejects_negative_values() {
        let a = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::new(2, 0)],
        ));
        let b = CountingPolynomial::from_fraction(&Fraction::from_points(
            2,
            [Point::new(2, 1)],
        ));
        let diff = &a - &b;
        assert!(matches!(diff.to_fraction(), Err(Error::NegativeValue { .. })));
    }

    #[test]
    fn display_layout() {
        let f = CountingPolynomial::from_fraction(&three_point_fraction());
        assert_eq!(f.to_string(), "3/4 - 1/4 X1 - 1/4 X2 - 1/4 X12");
        assert_eq!(CountingPolynomial::zero(2).to_string(), "0");
        assert_eq!(CountingPolynomial::one(2).to_string(), "1");
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn mixed_dimensions_panic() {
        let a = CountingPolynomial::one(2);
        let b = CountingPolynomial::one(3);
        let _ = &a + &b;
    }

    prop_compose! {
        /// Random multiset of runs at small m, multiplicities 1..=3.
        fn arb_fraction(max_m: usize)
            (m in 1..=max_m)
            (m in Just(m), counts in proptest::collection::btree_map(0u32..(1u32 << m), 1u32..=3, 0..=(1usize << m)))
            -> Fraction
        {
            let mut f = Fraction::new(m);
            for (bits, c) in counts {
                f.insert_with_multiplicity(Point::new(m, bits), c);
            }
            f
        }
    }

    proptest! {
        #[test]
        fn transform_roundtrip(f in arb_fraction(5)) {
            let poly = CountingPolynomial::from_fraction(&f);
            for bits in 0..1u32 << f.m() {
                let p = Point::new(f.m(), bits);
                prop_assert_eq!(
                    poly.evaluate(p),
                    Rational64::from_integer(f.multiplicity(p) as i64)
                );
            }
            prop_assert_eq!(poly.run_count() as u64, f.total_runs());
        }

        #[test]
        fn fast_equals_naive(f in arb_fraction(5)) {
            prop_assert_eq!(
                CountingPolynomial::from_fraction(&f),
                CountingPolynomial::from_fraction_naive(&f)
            );
        }

        #[test]
        fn product_is_intersection_for_plain_fractions(
            abits in proptest::collection::btree_set(0u32..16, 0..=16),
            bbits in proptest::collection::btree_set(0u32..16, 0..=16),
        ) {
            let a = Fraction::from_points(4, abits.iter().map(|&b| Point::new(4, b)));
            let b = Fraction::from_points(4, bbits.iter().map(|&b| Point::new(4, b)));
            let product = &CountingPolynomial::from_fraction(&a) * &CountingPolynomial::from_fraction(&b);
            prop_assert_eq!(product, CountingPolynomial::from_fraction(&a.intersection(&b)));
        }
    }
}

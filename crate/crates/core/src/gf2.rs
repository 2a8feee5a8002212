//! Bit-level arithmetic for design points and multi-indices, and enumeration
//! of the subgroups of Z2^m.
//!
//! A run of the full two-level design in m factors is a vector in {-1,+1}^m,
//! stored as an m-bit mask with bit j set when factor j+1 sits at level -1.
//! The all-plus run is therefore mask 0, and the componentwise product of two
//! runs is the XOR of their masks. Multi-indices (exponent vectors of the
//! square-free monomials) live in Z2^m and use the same encoding.

use std::fmt;
use std::ops::{BitXor, Mul, Neg};

use crate::error::{Error, Result};

/// Upper bound on the number of factors. Dense tables have 2^m entries, so
/// 16 keeps every full-design-sized vector comfortably in memory.
pub const MAX_FACTORS: usize = 16;

fn check_dims(m: usize, bits: u32) {
    assert!(
        (1..=MAX_FACTORS).contains(&m),
        "factor count {m} outside 1..={MAX_FACTORS}"
    );
    assert!(
        bits < (1u32 << m),
        "mask {bits:#b} has bits above factor count {m}"
    );
}

/// A level, or a generator sign: an element of the multiplicative group {-1,+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// +1
    Plus,
    /// -1
    Minus,
}

impl Sign {
    /// The numeric value, +1 or -1.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of a nonzero integer.
    pub fn of(v: i64) -> Sign {
        assert!(v != 0, "sign of zero");
        if v > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// (-1)^parity.
    pub fn from_parity(ones: u32) -> Sign {
        if ones & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A run of the full design: an element of {-1,+1}^m.
///
/// Bit j of `bits` is set exactly when factor j+1 is at level -1, so mask 0 is
/// the all-plus run (the identity of the multiplicative group D).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    bits: u32,
    m: u8,
}

impl Point {
    /// Point from a raw mask. Panics if `m` or `bits` are out of range.
    pub fn new(m: usize, bits: u32) -> Point {
        check_dims(m, bits);
        Point { bits, m: m as u8 }
    }

    /// The all-plus run, the group identity of D.
    pub fn identity(m: usize) -> Point {
        Point::new(m, 0)
    }

    /// Point from explicit levels, each -1 or +1.
    pub fn from_levels(levels: &[i8]) -> Point {
        let m = levels.len();
        let mut bits = 0u32;
        for (j, &l) in levels.iter().enumerate() {
            match l {
                1 => {}
                -1 => bits |= 1 << j,
                other => panic!("level {other} is not -1 or +1"),
            }
        }
        Point::new(m, bits)
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// The raw mask.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Level of `factor` (1-based), as -1 or +1.
    pub fn level(&self, factor: usize) -> i8 {
        assert!((1..=self.m()).contains(&factor), "factor {factor} out of range");
        if self.bits >> (factor - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// All m levels in factor order.
    pub fn levels(&self) -> Vec<i8> {
        (1..=self.m()).map(|j| self.level(j)).collect()
    }

    /// Componentwise product of two runs (the group operation of D).
    pub fn product(&self, other: Point) -> Point {
        assert_eq!(self.m, other.m, "dimension mismatch");
        Point { bits: self.bits ^ other.bits, m: self.m }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point(")?;
        for (j, l) in self.levels().iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l:+}")?;
        }
        write!(f, ")")
    }
}

/// An exponent vector alpha in L = Z2^m, identifying the monomial X^alpha.
///
/// Bit j of `bits` is set exactly when alpha_{j+1} = 1. Group addition in L is
/// bitwise XOR.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    bits: u32,
    m: u8,
}

impl MultiIndex {
    /// Multi-index from a raw mask. Panics if `m` or `bits` are out of range.
    pub fn new(m: usize, bits: u32) -> MultiIndex {
        check_dims(m, bits);
        MultiIndex { bits, m: m as u8 }
    }

    /// The zero index (constant monomial).
    pub fn zero(m: usize) -> MultiIndex {
        MultiIndex::new(m, 0)
    }

    /// Multi-index from 1-based factor numbers, e.g. `[1,3,5]` for X_{135}.
    pub fn from_factors(m: usize, factors: &[usize]) -> MultiIndex {
        let mut bits = 0u32;
        for &j in factors {
            assert!((1..=m).contains(&j), "factor {j} out of range 1..={m}");
            bits |= 1 << (j - 1);
        }
        MultiIndex::new(m, bits)
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// The raw mask.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The weight |alpha|: the order of the interaction.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// True for the zero index.
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// 1-based factor numbers with alpha_j = 1, ascending.
    pub fn factors(&self) -> Vec<usize> {
        (1..=self.m()).filter(|j| self.bits >> (j - 1) & 1 == 1).collect()
    }

    /// Value of the monomial X^alpha at a run: (-1)^(number of shared -1 slots).
    pub fn sign_at(&self, p: Point) -> Sign {
        assert_eq!(self.m, p.m, "dimension mismatch");
        Sign::from_parity((self.bits & p.bits).count_ones())
    }
}

impl BitXor for MultiIndex {
    type Output = MultiIndex;
    fn bitxor(self, rhs: MultiIndex) -> MultiIndex {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        MultiIndex { bits: self.bits ^ rhs.bits, m: self.m }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    /// Compact monomial name: `X345` for alpha = {3,4,5}, `1` for alpha = 0.
    /// Factor numbers above 9 are dot-separated to stay unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("1");
        }
        f.write_str("X")?;
        let sep = if self.m() > 9 { "." } else { "" };
        let mut first = true;
        for j in self.factors() {
            if !first {
                f.write_str(sep)?;
            }
            write!(f, "{j}")?;
            first = false;
        }
        Ok(())
    }
}

/// Reduced row echelon basis over GF(2), pivots on the highest set bit.
///
/// Feeding the rows of any generating set through this produces the unique
/// canonical basis of the spanned subspace, sorted ascending by mask.
pub(crate) fn rref(rows: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for row in rows {
        let mut v = row;
        for &b in &basis {
            let pivot = 31 - b.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let pivot = 31 - v.leading_zeros();
            for b in &mut basis {
                if *b >> pivot & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_unstable();
    basis
}

/// A subgroup of L = Z2^m, held by its canonical reduced-echelon generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    m: u8,
    generators: Vec<MultiIndex>,
}

impl Subgroup {
    /// Subgroup spanned by independent generators.
    ///
    /// The stored basis is canonicalized, so two calls with different bases of
    /// the same subspace yield equal values. Dependent input is rejected.
    pub fn new(m: usize, generators: &[MultiIndex]) -> Result<Subgroup> {
        for g in generators {
            assert_eq!(g.m(), m, "dimension mismatch");
        }
        let basis = rref(generators.iter().map(|g| g.bits()));
        if basis.len() != generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(Subgroup {
            m: m as u8,
            generators: basis.into_iter().map(|b| MultiIndex::new(m, b)).collect(),
        })
    }

    /// The trivial subgroup {0}.
    pub fn trivial(m: usize) -> Subgroup {
        check_dims(m, 0);
        Subgroup { m: m as u8, generators: Vec::new() }
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Dimension k; the subgroup has 2^k elements.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u64 {
        1u64 << self.k()
    }

    /// Canonical generators, ascending by mask.
    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    /// All 2^k elements, sorted ascending by mask. Always contains 0.
    pub fn span(&self) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = self
            .subset_spans()
            .into_iter()
            .map(|(alpha, _)| alpha)
            .collect();
        out.sort_unstable();
        out
    }

    /// Span elements paired with the generator subset producing them.
    /// Bit i of the subset refers to `generators()[i]`.
    pub(crate) fn subset_spans(&self) -> Vec<(MultiIndex, u32)> {
        let k = self.k();
        let mut out = Vec::with_capacity(1 << k);
        for subset in 0u32..(1 << k) {
            let mut bits = 0u32;
            for (i, g) in self.generators.iter().enumerate() {
                if subset >> i & 1 == 1 {
                    bits ^= g.bits();
                }
            }
            out.push((MultiIndex::new(self.m(), bits), subset));
        }
        out
    }

    /// Membership test against the canonical basis.
    pub fn contains(&self, alpha: MultiIndex) -> bool {
        assert_eq!(alpha.m(), self.m(), "dimension mismatch");
        let mut v = alpha.bits();
        for g in &self.generators {
            let pivot = 31 - g.bits().leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= g.bits();
            }
        }
        v == 0
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Number of k-dimensional subspaces of GF(2)^m (the Gaussian binomial at q=2).
pub fn gaussian_binomial(m: usize, k: usize) -> u128 {
    assert!(m <= MAX_FACTORS && k <= MAX_FACTORS);
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (m - i)) - 1;
        den *= (1u128 << (k - i)) - 1;
    }
    num / den
}

/// Every subgroup of Z2^m of order 2^k, each exactly once in canonical form.
///
/// Enumeration walks the reduced echelon bases directly: a choice of pivot
/// bits plus an assignment of the free positions below each pivot is in
/// bijection with the subspaces. The result is sorted lexicographically on
/// the concatenated canonical generators, so the order is reproducible.
pub fn enumerate_subgroups(m: usize, k: usize) -> Result<Vec<Subgroup>> {
    check_dims(m, 0);
    if k > m {
        return Err(Error::DimensionTooLarge { m, k });
    }
    if k == 0 {
        return Ok(vec![Subgroup::trivial(m)]);
    }

    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    pick_pivots(m, k, 0, &mut pivots, &mut out);

    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|rows| Subgroup {
            m: m as u8,
            generators: rows.into_iter().map(|b| MultiIndex::new(m, b)).collect(),
        })
        .collect())
}

fn pick_pivots(m: usize, k: usize, next: usize, pivots: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
    if pivots.len() == k {
        emit_bases(m, pivots, out);
        return;
    }
    let remaining = k - pivots.len();
    for p in next..=(m - remaining) {
        pivots.push(p);
        pick_pivots(m, k, p + 1, pivots, out);
        pivots.pop();
    }
}

/// All reduced bases for one ascending pivot set: row i owns pivot bit
/// pivots[i]; its free bits are the non-pivot positions below that pivot.
fn emit_bases(m: usize, pivots: &[usize], out: &mut Vec<Vec<u32>>) {
    let _ = m;
    let pivot_mask: u32 = pivots.iter().fold(0, |acc, &p| acc | 1 << p);
    let free_masks: Vec<u32> = pivots
        .iter()
        .map(|&p| !pivot_mask & ((1u32 << p) - 1))
        .collect();
    let free_counts: Vec<u32> = free_masks.iter().map(|f| f.count_ones()).collect();
    let total_free: u32 = free_counts.iter().sum();

    for assid in 0u64..(1u64 << total_free) {
        let mut rows = Vec::with_capacity(pivots.len());
        let mut consumed = 0u32;
        for (i, &p) in pivots.iter().enumerate() {
            let mut row = 1u32 << p;
            let mut fm = free_masks[i];
            let mut bit_index = 0;
            while fm != 0 {
                let low = fm.trailing_zeros();
                if assid >> (consumed + bit_index) & 1 == 1 {
                    row |= 1 << low;
                }
                fm &= fm - 1;
                bit_index += 1;
            }
            consumed += free_counts[i];
            rows.push(row);
        }
        // Rows are already sorted: the pivot is the top bit of each row and
        // pivots ascend.
        out.push(rows);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn monomial_sign_basics() {
        // (-1,-1) under X_{12}: (-1)(-1) = +1
        let p = Point::from_levels(&[-1, -1]);
        let a = MultiIndex::from_factors(2, &[1, 2]);
        assert_eq!(a.sign_at(p).value(), 1);

        // empty product is +1 at any point
        let zero = MultiIndex::zero(2);
        for bits in 0..4 {
            assert_eq!(zero.sign_at(Point::new(2, bits)).value(), 1);
        }

        // X_1 reads coordinate 1
        let p = Point::from_levels(&[-1, 1]);
        let a = MultiIndex::from_factors(2, &[1]);
        assert_eq!(a.sign_at(p).value(), -1);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn monomial_sign_dimension_mismatch() {
        let p = Point::identity(3);
        let a = MultiIndex::zero(2);
        let _ = a.sign_at(p);
    }

    #[test]
    fn span_of_full_group_z2_squared() {
        let s = Subgroup::new(
            2,
            &[MultiIndex::from_factors(2, &[1]), MultiIndex::from_factors(2, &[2])],
        )
        .unwrap();
        let masks: Vec<u32> = s.span().iter().map(|a| a.bits()).collect();
        assert_eq!(masks, vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn span_of_trivial_subgroup() {
        let s = Subgroup::trivial(4);
        assert_eq!(s.span(), vec![MultiIndex::zero(4)]);
    }

    #[test]
    fn span_closure_by_hand_m5() {
        // generators {4},{12},{135}: the span worked out by XOR closure
        let gens = [
            MultiIndex::from_factors(5, &[4]),
            MultiIndex::from_factors(5, &[1, 2]),
            MultiIndex::from_factors(5, &[1, 3, 5]),
        ];
        let s = Subgroup::new(5, &gens).unwrap();
        let got: Vec<u32> = s.span().iter().map(|a| a.bits()).collect();
        let mut expect: Vec<u32> = vec![
            0,
            MultiIndex::from_factors(5, &[4]).bits(),
            MultiIndex::from_factors(5, &[1, 2]).bits(),
            MultiIndex::from_factors(5, &[1, 3, 5]).bits(),
            MultiIndex::from_factors(5, &[1, 2, 4]).bits(),
            MultiIndex::from_factors(5, &[1, 3, 4, 5]).bits(),
            MultiIndex::from_factors(5, &[2, 3, 5]).bits(),
            MultiIndex::from_factors(5, &[2, 3, 4, 5]).bits(),
        ];
        expect.sort_unstable();
        assert_eq!(got, expect);
        assert!(s.contains(MultiIndex::from_factors(5, &[1, 2, 4, 5]) ^ MultiIndex::from_factors(5, &[5])));
    }

    #[test]
    fn monomial_names() {
        assert_eq!(MultiIndex::from_factors(5, &[3, 4, 5]).to_string(), "X345");
        assert_eq!(MultiIndex::zero(5).to_string(), "1");
        // double-digit factors separate with dots
        assert_eq!(MultiIndex::from_factors(12, &[3, 11]).to_string(), "X3.11");
    }

    #[test]
    fn dependent_generators_rejected() {
        let gens = [
            MultiIndex::from_factors(3, &[1]),
            MultiIndex::from_factors(3, &[2]),
            MultiIndex::from_factors(3, &[1, 2]),
        ];
        assert_eq!(Subgroup::new(3, &gens), Err(Error::DependentGenerators));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        // <{1},{12}> and <{2},{1}> are the same subgroup of Z2^2
        let a = Subgroup::new(
            2,
            &[MultiIndex::from_factors(2, &[1]), MultiIndex::from_factors(2, &[1, 2])],
        )
        .unwrap();
        let b = Subgroup::new(
            2,
            &[MultiIndex::from_factors(2, &[2]), MultiIndex::from_factors(2, &[1])],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subgroup_counts_match_gaussian_binomials() {
        for m in 1..=6 {
            for k in 0..=m {
                let got = enumerate_subgroups(m, k).unwrap();
                assert_eq!(
                    got.len() as u128,
                    gaussian_binomial(m, k),
                    "count mismatch at m={m} k={k}"
                );
                // canonical + sorted means strictly increasing, hence no duplicates
                for w in got.windows(2) {
                    assert!(w[0] < w[1], "unsorted or duplicate at m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn the_155_subgroups_of_order_eight() {
        assert_eq!(enumerate_subgroups(5, 3).unwrap().len(), 155);
    }

    #[test]
    fn order_two_subgroup_count_is_two_to_m_minus_one() {
        for m in 1..=6 {
            assert_eq!(enumerate_subgroups(m, 1).unwrap().len(), (1 << m) - 1);
        }
    }

    #[test]
    fn k_above_m_is_an_error() {
        assert_eq!(
            enumerate_subgroups(3, 4),
            Err(Error::DimensionTooLarge { m: 3, k: 4 })
        );
    }

    /// Brute-force oracle: every XOR-closed subset of Z2^m containing 0,
    /// collected by size. Feasible through m = 4.
    fn subgroups_by_closure(m: usize) -> Vec<Vec<u32>> {
        let n = 1usize << m;
        let mut found = Vec::new();
        for set in 0u32..(1 << n) {
            if set & 1 == 0 {
                continue; // must contain 0
            }
            let members: Vec<u32> = (0..n as u32).filter(|&e| set >> e & 1 == 1).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| set >> (a ^ b) & 1 == 1));
            if closed {
                found.push(members);
            }
        }
        found
    }

    #[test]
    fn enumeration_matches_closure_oracle_up_to_m4() {
        for m in 1..=4 {
            let mut oracle = subgroups_by_closure(m);
            oracle.sort();
            let mut ours: Vec<Vec<u32>> = (0..=m)
                .flat_map(|k| enumerate_subgroups(m, k).unwrap())
                .map(|s| s.span().iter().map(|a| a.bits()).collect())
                .collect();
            ours.sort();
            assert_eq!(ours, oracle, "subgroup sets differ at m={m}");
        }
    }

    proptest! {
        #[test]
        fn character_property(pbits in 0u32..(1 << 6), abits in 0u32..(1 << 6), bbits in 0u32..(1 << 6)) {
            let p = Point::new(6, pbits);
            let a = MultiIndex::new(6, abits);
            let b = MultiIndex::new(6, bbits);
            prop_assert_eq!((a ^ b).sign_at(p), a.sign_at(p) * b.sign_at(p));
        }

        #[test]
        fn span_is_xor_closed(rows in proptest::collection::vec(0u32..(1 << 5), 0..=3)) {
            let basis = rref(rows.iter().copied());
            let gens: Vec<MultiIndex> = basis.iter().map(|&b| MultiIndex::new(5, b)).collect();
            let s = Subgroup::new(5, &gens).unwrap();
            let span = s.span();
            prop_assert!(span.contains(&MultiIndex::zero(5)));
            for &a in &span {
                for &b in &span {
                    prop_assert!(span.binary_search(&(a ^ b)).is_ok());
                }
            }
            prop_assert_eq!(span.len() as u64, s.order());
        }
    }
}

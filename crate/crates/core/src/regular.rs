//! Regular fractions: defining specifications, their indicators, and the
//! coefficient test for embedding a regular fraction in an arbitrary one.
//!
//! A regular fraction in m factors is cut out by equations X^alpha = e(alpha)
//! over a subgroup of Z2^m, with e a homomorphism into {-1,+1}. Fixing
//! independent generators alpha_1..alpha_k with signs e_1..e_k pins the
//! fraction down to 2^(m-k) runs and gives its indicator the product form
//! 2^-k (1 + e_1 X^a1) ... (1 + e_k X^ak).
//!
//! Whether such a fraction sits inside a given fraction F = sum b_alpha
//! X^alpha is decided exactly by one signed sum of coefficients of F over the
//! generated subgroup: the sum equals 1 precisely for embedded fractions.

use rayon::prelude::*;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{enumerate_subgroups, MultiIndex, Point, Sign, Subgroup};
use crate::polynomial::{CountingPolynomial, Fraction};

/// Generators and signs defining a regular fraction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegularSpec {
    m: u8,
    generators: Vec<MultiIndex>,
    signs: Vec<Sign>,
}

impl RegularSpec {
    /// Spec from independent generators and one sign per generator.
    ///
    /// Generators are stored as given; use [`RegularSpec::canonical`] to
    /// normalize. Dependent generators are rejected: with them the induced
    /// sign map need not be well defined.
    pub fn new(m: usize, generators: Vec<MultiIndex>, signs: Vec<Sign>) -> Result<RegularSpec> {
        if generators.len() != signs.len() {
            return Err(Error::SignCountMismatch {
                generators: generators.len(),
                signs: signs.len(),
            });
        }
        // validates m, dimensions and independence
        Subgroup::new(m, &generators)?;
        Ok(RegularSpec { m: m as u8, generators, signs })
    }

    /// The k = 0 spec: no constraints, the full design.
    pub fn full_design(m: usize) -> RegularSpec {
        RegularSpec::new(m, Vec::new(), Vec::new()).expect("empty generating set")
    }

    /// Number of factors.
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Number of generators.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// Number of runs of the fraction, 2^(m-k).
    pub fn size(&self) -> u64 {
        1u64 << (self.m() - self.k())
    }

    /// The defining generators, in stored order.
    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    /// The generator signs, parallel to `generators()`.
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// The subgroup of Z2^m generated by the generators, in canonical form.
    pub fn subgroup(&self) -> Subgroup {
        Subgroup::new(self.m(), &self.generators).expect("validated at construction")
    }

    /// The induced homomorphism over the whole subgroup: every span element
    /// paired with its sign, ascending by mask.
    pub fn span_signs(&self) -> Vec<(MultiIndex, Sign)> {
        let mut out = Vec::with_capacity(1 << self.k());
        for subset in 0u32..(1 << self.k()) {
            let mut alpha = MultiIndex::zero(self.m());
            let mut sign = Sign::Plus;
            for (i, (&g, &e)) in self.generators.iter().zip(&self.signs).enumerate() {
                if subset >> i & 1 == 1 {
                    alpha = alpha ^ g;
                    sign = sign * e;
                }
            }
            out.push((alpha, sign));
        }
        out.sort_unstable();
        out
    }

    /// Same fraction, expressed over the canonical subgroup generators.
    pub fn canonical(&self) -> RegularSpec {
        let span = self.span_signs();
        let subgroup = self.subgroup();
        let signs = subgroup
            .generators()
            .iter()
            .map(|g| {
                span.iter()
                    .find(|(a, _)| a == g)
                    .expect("generator lies in span")
                    .1
            })
            .collect();
        RegularSpec {
            m: self.m,
            generators: subgroup.generators().to_vec(),
            signs,
        }
    }

    /// The indicator polynomial: expansion of the product form. Every span
    /// element carries coefficient e(alpha)/2^k.
    pub fn indicator(&self) -> CountingPolynomial {
        let scale = 1i64 << (self.m() - self.k());
        CountingPolynomial::from_numerators(
            self.m(),
            self.span_signs()
                .into_iter()
                .map(|(alpha, sign)| (alpha, sign.value() * scale)),
        )
    }

    /// The runs satisfying every defining equation, as a fraction of size
    /// 2^(m-k).
    pub fn points(&self) -> Fraction {
        let m = self.m();
        Fraction::from_points(
            m,
            (0..1u32 << m).map(|bits| Point::new(m, bits)).filter(|&p| {
                self.generators
                    .iter()
                    .zip(&self.signs)
                    .all(|(&g, &e)| g.sign_at(p) == e)
            }),
        )
    }
}

impl fmt::Display for RegularSpec {
    /// Product form: `1/8 (1 - X4) (1 + X12) (1 - X235)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 0 {
            return f.write_str("1");
        }
        write!(f, "1/{}", 1u64 << self.k())?;
        for (g, e) in self.generators.iter().zip(&self.signs) {
            write!(f, " (1 {} {})", e, g)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RegularSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Signed coefficient sum of condition (*) for one sign assignment.
///
/// `span` pairs each subgroup element's numerator in `f` with the generator
/// subset producing it; bit i of `sign_bits` flips generator i to -1.
fn condition_sum(span: &[(i64, u32)], sign_bits: u32) -> i64 {
    span.iter()
        .map(|&(num, subset)| {
            if (subset & sign_bits).count_ones() & 1 == 1 {
                -num
            } else {
                num
            }
        })
        .sum()
}

/// Exact inclusion test: does the regular fraction of `spec` lie inside the
/// fraction with indicator `f`?
///
/// Evaluates b_0 + e_1 b_{a1} + ... + e_1...e_k b_{a1+...+ak} over the
/// subgroup generated by the spec and compares with 1. Equivalent to
/// pointwise containment of the spec's runs, at O(2^k) coefficient lookups.
pub fn inclusion_test(f: &CountingPolynomial, spec: &RegularSpec) -> Result<bool> {
    assert_eq!(f.m(), spec.m(), "dimension mismatch");
    if !f.is_indicator() {
        return Err(Error::NotIndicator);
    }
    let sum: i64 = spec
        .span_signs()
        .iter()
        .map(|&(alpha, sign)| sign.value() * f.numerator(alpha))
        .sum();
    Ok(sum == f.denominator())
}

/// Necessary condition for some sign assignment over `subgroup` to pass the
/// inclusion test: b_0 + sum of |b_alpha| over the subgroup must reach 1.
///
/// A `false` rules out every one of the 2^k sign assignments; `true` decides
/// nothing. Useful as a cheap prefilter.
pub fn necessary_test(f: &CountingPolynomial, subgroup: &Subgroup) -> bool {
    assert_eq!(f.m(), subgroup.m(), "dimension mismatch");
    let sum: i64 = subgroup
        .span()
        .iter()
        .map(|&alpha| {
            if alpha.is_zero() {
                f.numerator(alpha)
            } else {
                f.numerator(alpha).abs()
            }
        })
        .sum();
    sum >= f.denominator()
}

/// Every regular fraction with k generators embedded in the fraction with
/// indicator `f`, in deterministic order.
///
/// Scans each subgroup of order 2^k once and solves the sign system by
/// trying all 2^k assignments against condition (*). Signs are attached to
/// the canonical subgroup generators, so no fraction is emitted twice.
pub fn find_regular_subfractions(
    f: &CountingPolynomial,
    k: usize,
) -> Result<Vec<RegularSpec>> {
    if !f.is_indicator() {
        return Err(Error::NotIndicator);
    }
    let m = f.m();
    let subgroups = enumerate_subgroups(m, k)?;
    let found: Vec<Vec<RegularSpec>> = subgroups
        .par_iter()
        .map(|subgroup| {
            if !necessary_test(f, subgroup) {
                return Vec::new();
            }
            let span: Vec<(i64, u32)> = subgroup
                .subset_spans()
                .into_iter()
                .map(|(alpha, subset)| (f.numerator(alpha), subset))
                .collect();
            let mut hits = Vec::new();
            for sign_bits in 0u32..(1 << k) {
                if condition_sum(&span, sign_bits) == f.denominator() {
                    let signs = (0..k)
                        .map(|i| {
                            if sign_bits >> i & 1 == 1 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            }
                        })
                        .collect();
                    hits.push(RegularSpec {
                        m: m as u8,
                        generators: subgroup.generators().to_vec(),
                        signs,
                    });
                }
            }
            hits
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

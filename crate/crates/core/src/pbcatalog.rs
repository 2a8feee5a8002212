//! The 12-run Plackett-Burman construction, its 5-column projections, and
//! regeneration of the 12-point strength-2 orthogonal arrays in 5 factors.
//!
//! The 12x11 design is produced by cycling a fixed key row and appending the
//! all-minus row. Projecting onto 5 of the 11 columns gives 12-run fractions
//! in 5 factors; grouping the 462 projections by run multiset splits them
//! into 81 classes. The decomposition structure of the 12-distinct-run
//! projections (three disjoint 4-run regular fractions sharing a sign
//! skeleton) generalizes into a generator that sweeps 15 exponent patterns
//! by 64 sign choices and recovers all 192 unreplicated strength-2 arrays.

use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2::{MultiIndex, Point, Sign};
use crate::polynomial::{CountingPolynomial, Fraction};
use crate::regular::RegularSpec;

/// Number of columns (factors) of the 12-run Plackett-Burman design.
pub const PB_COLUMNS: usize = 11;

/// Number of runs.
pub const PB_RUNS: usize = 12;

/// The key row: + + - + + + - - - + -
const KEY_LEVELS: [i8; PB_COLUMNS] = [1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1];

/// The 12-run Plackett-Burman design in construction order: the key row,
/// ten successive cyclic shifts, and the all-minus row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbDesign {
    rows: Vec<Point>,
}

impl PbDesign {
    /// The rows in construction order.
    pub fn rows(&self) -> &[Point] {
        &self.rows
    }

    /// Level of `run` (1..=12) in `column` (1..=11), as -1 or +1.
    pub fn level(&self, run: usize, column: usize) -> i8 {
        assert!((1..=PB_RUNS).contains(&run), "run {run} out of range");
        self.rows[run - 1].level(column)
    }
}

/// Build the 12x11 design: key, ten cyclic shifts, all-minus row.
pub fn build_pb12() -> PbDesign {
    let mask = 0x7FFu32;
    let mut rows = Vec::with_capacity(PB_RUNS);
    let mut bits = Point::from_levels(&KEY_LEVELS).bits();
    for _ in 0..PB_COLUMNS {
        rows.push(Point::new(PB_COLUMNS, bits));
        bits = (bits << 1 | bits >> (PB_COLUMNS - 1)) & mask;
    }
    rows.push(Point::new(PB_COLUMNS, mask));
    PbDesign { rows }
}

/// Column index 1..=11 for a label A..=K.
pub fn column_index(label: char) -> Result<usize> {
    let upper = label.to_ascii_uppercase();
    if ('A'..='K').contains(&upper) {
        Ok(upper as usize - 'A' as usize + 1)
    } else {
        Err(Error::ColumnOutOfRange(0))
    }
}

/// Label A..=K for a column index 1..=11.
pub fn column_label(index: usize) -> char {
    assert!((1..=PB_COLUMNS).contains(&index), "column {index} out of range");
    (b'A' + index as u8 - 1) as char
}

/// Project the design onto five distinct columns, keeping replicated runs as
/// multiplicities. The result is a 12-run fraction in m = 5 factors.
pub fn project(design: &PbDesign, columns: [usize; 5]) -> Result<Fraction> {
    for &c in &columns {
        if !(1..=PB_COLUMNS).contains(&c) {
            return Err(Error::ColumnOutOfRange(c));
        }
    }
    for (i, &c) in columns.iter().enumerate() {
        if columns[i + 1..].contains(&c) {
            return Err(Error::DuplicateColumn(c));
        }
    }
    let mut f = Fraction::new(5);
    for row in design.rows() {
        let mut bits = 0u32;
        for (j, &c) in columns.iter().enumerate() {
            if row.level(c) == -1 {
                bits |= 1 << j;
            }
        }
        f.insert(Point::new(5, bits));
    }
    Ok(f)
}

/// One equivalence class of 5-column projections: the member column choices
/// (lexicographic) and the number of distinct runs they share.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectionClass {
    /// 1-based class number, in order of the smallest member.
    pub id: usize,
    /// Column combinations whose projections have equal run multisets.
    pub members: Vec<[usize; 5]>,
    /// Number of distinct runs of the shared multiset (11 or 12 here).
    pub distinct_runs: usize,
}

impl ProjectionClass {
    /// Number of projections in the class.
    pub fn member_count(&self) -> usize {
        self.members.len()
    }
}

fn five_column_choices() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(462);
    for a in 1..=PB_COLUMNS {
        for b in a + 1..=PB_COLUMNS {
            for c in b + 1..=PB_COLUMNS {
                for d in c + 1..=PB_COLUMNS {
                    for e in d + 1..=PB_COLUMNS {
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out
}

/// Group all 462 five-column projections by run-multiset equality.
///
/// Classes come back sorted by their smallest member, ids 1.. assigned in
/// that order.
pub fn classify_projections(design: &PbDesign) -> Vec<ProjectionClass> {
    let choices = five_column_choices();
    let keyed: Vec<(Vec<(u32, u32)>, [usize; 5])> = choices
        .par_iter()
        .map(|&cols| {
            let f = project(design, cols).expect("valid column choice");
            let key: Vec<(u32, u32)> = f.points().map(|(p, c)| (p.bits(), c)).collect();
            (key, cols)
        })
        .collect();
    let mut groups: BTreeMap<Vec<(u32, u32)>, (Vec<[usize; 5]>, usize)> = BTreeMap::new();
    for (key, cols) in keyed {
        let distinct = key.len();
        groups.entry(key).or_insert_with(|| (Vec::new(), distinct)).0.push(cols);
    }
    let mut classes: Vec<ProjectionClass> = groups
        .into_values()
        .map(|(members, distinct_runs)| ProjectionClass { id: 0, members, distinct_runs })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    for (i, class) in classes.iter_mut().enumerate() {
        class.id = i + 1;
    }
    classes
}

/// Exponent skeleton of the strength-2 construction: six multi-indices over
/// 5 factors with the low weight in front and every composite interaction
/// pushed to weight 3 or more.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaPattern {
    alphas: [MultiIndex; 6],
}

impl AlphaPattern {
    /// The six multi-indices alpha_1..alpha_6.
    pub fn alphas(&self) -> &[MultiIndex; 6] {
        &self.alphas
    }

    /// The weight rule: |a1|, |a2|, |a3| < 3 and every combination appearing
    /// in the three part expansions has weight >= 3.
    pub fn satisfies_weight_rule(&self) -> bool {
        let [a1, a2, a3, a4, a5, a6] = self.alphas;
        let low = [a1, a2, a3].iter().all(|a| a.weight() < 3);
        let high = [
            a4,
            a5,
            a6,
            a1 ^ a2,
            a1 ^ a3,
            a2 ^ a3,
            a1 ^ a4,
            a2 ^ a4,
            a1 ^ a2 ^ a4,
            a1 ^ a5,
            a3 ^ a5,
            a1 ^ a3 ^ a5,
            a2 ^ a6,
            a3 ^ a6,
            a2 ^ a3 ^ a6,
        ]
        .iter()
        .all(|a| a.weight() >= 3);
        low && high
    }
}

/// Smallest mask meeting the weight constraints against two fixed indices.
fn min_completion(g: MultiIndex, d: MultiIndex) -> MultiIndex {
    (0u32..32)
        .map(|bits| MultiIndex::new(5, bits))
        .find(|&beta| {
            beta.weight() >= 3
                && (beta ^ g).weight() >= 3
                && (beta ^ d).weight() >= 3
                && (beta ^ g ^ d).weight() >= 3
        })
        .expect("a completion of weight >= 3 exists")
}

/// All alpha patterns in canonical form.
///
/// The low-weight triple is forced to be one singleton plus the two pairs
/// splitting the remaining four factors (anything else breaks the pairwise
/// weight constraints), with the pair containing the smallest leftover
/// factor second. The three completions are the smallest admissible masks.
/// This yields exactly 15 patterns.
pub fn alpha_patterns() -> Vec<AlphaPattern> {
    let mut out = Vec::with_capacity(15);
    for single in 1..=5usize {
        let rest: Vec<usize> = (1..=5).filter(|&j| j != single).collect();
        let lead = rest[0];
        for &partner in &rest[1..] {
            let pair2: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&j| j != lead && j != partner)
                .collect();
            let a1 = MultiIndex::from_factors(5, &[single]);
            let a2 = MultiIndex::from_factors(5, &[lead, partner]);
            let a3 = MultiIndex::from_factors(5, &pair2);
            let a4 = min_completion(a1, a2);
            let a5 = min_completion(a1, a3);
            let a6 = min_completion(a2, a3);
            out.push(AlphaPattern { alphas: [a1, a2, a3, a4, a5, a6] });
        }
    }
    out
}

/// The three regular parts for one pattern and one sign assignment. The
/// shared generators carry opposite signs across parts, which makes the
/// parts pairwise disjoint for every assignment.
fn pattern_parts(pattern: &AlphaPattern, signs: [Sign; 6]) -> [RegularSpec; 3] {
    let [a1, a2, a3, a4, a5, a6] = *pattern.alphas();
    let [e1, e2, e3, e4, e5, e6] = signs;
    let r1 = RegularSpec::new(5, vec![a1, a2, a4], vec![e1, e2, e4]);
    let r2 = RegularSpec::new(5, vec![a1, a3, a5], vec![-e1, e3, e5]);
    let r3 = RegularSpec::new(5, vec![a2, a3, a6], vec![-e2, -e3, e6]);
    [
        r1.expect("pattern generators independent"),
        r2.expect("pattern generators independent"),
        r3.expect("pattern generators independent"),
    ]
}

/// One candidate of the sweep: the indicator sum of the three parts, kept
/// only when it is a valid unreplicated 12-run indicator.
pub fn catalog_candidate(pattern: &AlphaPattern, signs: [Sign; 6]) -> Option<CountingPolynomial> {
    let [r1, r2, r3] = pattern_parts(pattern, signs);
    let f = &(&r1.indicator() + &r2.indicator()) + &r3.indicator();
    (f.run_count() == PB_RUNS as i64 && f.is_indicator()).then_some(f)
}

fn sign_vector(bits: u32) -> [Sign; 6] {
    std::array::from_fn(|i| if bits >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
}

/// Sweep the 15 patterns by all 64 sign assignments and keep the distinct
/// valid indicators: the full catalog of 12-point strength-2 orthogonal
/// arrays without replication, 192 in total, in a deterministic order.
pub fn generate_strength2_catalog() -> Vec<CountingPolynomial> {
    let patterns = alpha_patterns();
    let candidates: Vec<CountingPolynomial> = patterns
        .par_iter()
        .flat_map_iter(|pattern| {
            (0u32..64).filter_map(move |bits| catalog_candidate(pattern, sign_vector(bits)))
        })
        .collect();
    let set: BTreeSet<CountingPolynomial> = candidates.into_iter().collect();
    set.into_iter().collect()
}

//! Partitioning a fraction into disjoint regular fractions.
//!
//! Two strategies: greedy subtraction (always pick a largest embedded regular
//! fraction, remove its runs, repeat — terminates because single runs are
//! always regular) and exhaustive enumeration of the partitions into parts of
//! one fixed size, set up as an exact cover over the embedded candidates.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polynomial::{CountingPolynomial, Fraction};
use crate::regular::{find_regular_subfractions, RegularSpec};

/// A partition of a fraction into pairwise disjoint regular fractions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    target: Fraction,
    parts: Vec<RegularSpec>,
}

impl Decomposition {
    /// The decomposed fraction.
    pub fn target(&self) -> &Fraction {
        &self.target
    }

    /// The regular parts, sorted by their smallest run mask.
    pub fn parts(&self) -> &[RegularSpec] {
        &self.parts
    }

    /// Exact validation: the part indicators sum to the target's indicator
    /// and all pairwise products vanish.
    pub fn is_valid(&self) -> bool {
        let target = CountingPolynomial::from_fraction(&self.target);
        let indicators: Vec<CountingPolynomial> =
            self.parts.iter().map(|p| p.indicator()).collect();
        let sum = indicators
            .iter()
            .fold(CountingPolynomial::zero(self.target.m()), |acc, e| &acc + e);
        if sum != target {
            return false;
        }
        for (i, a) in indicators.iter().enumerate() {
            for b in &indicators[i + 1..] {
                if !(a * b).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn canonicalize(target: Fraction, mut parts: Vec<RegularSpec>) -> Decomposition {
        parts.sort_by_key(min_run_mask);
        Decomposition { target, parts }
    }
}

fn min_run_mask(spec: &RegularSpec) -> u32 {
    spec.points()
        .points()
        .next()
        .map(|(p, _)| p.bits())
        .expect("regular fraction is non-empty")
}

/// True when the two regular fractions share no run; computed as the product
/// of the indicators being the zero polynomial.
pub fn disjoint(a: &RegularSpec, b: &RegularSpec) -> bool {
    assert_eq!(a.m(), b.m(), "dimension mismatch");
    (&a.indicator() * &b.indicator()).is_zero()
}

/// Greedy decomposition: repeatedly remove a largest embedded regular
/// fraction (ties broken by enumeration order) until nothing is left.
pub fn decompose_greedy(f: &CountingPolynomial) -> Result<Decomposition> {
    if !f.is_indicator() {
        return Err(Error::NotIndicator);
    }
    if f.is_zero() {
        return Err(Error::EmptyFraction);
    }
    let m = f.m();
    let target = f.to_fraction().expect("indicator");
    let mut remainder = f.clone();
    let mut parts = Vec::new();
    while !remainder.is_zero() {
        let spec = (0..=m)
            .filter(|&k| 1i64 << (m - k) <= remainder.run_count())
            .find_map(|k| {
                find_regular_subfractions(&remainder, k)
                    .expect("remainder stays an indicator")
                    .into_iter()
                    .next()
            })
            .expect("single runs are always regular");
        remainder = &remainder - &spec.indicator();
        parts.push(spec);
    }
    Ok(Decomposition::canonicalize(target, parts))
}

/// Every partition of the fraction into disjoint embedded regular fractions
/// of exactly `part_size` runs, each partition once, in deterministic order.
///
/// Candidates come from the subgroup scan; the selection is a textbook exact
/// cover solved by backtracking on the uncovered run with the fewest
/// remaining covers. A `part_size` that does not divide the run count simply
/// yields no partitions.
pub fn decompose_all(f: &CountingPolynomial, part_size: u64) -> Result<Vec<Decomposition>> {
    if !f.is_indicator() {
        return Err(Error::NotIndicator);
    }
    let m = f.m();
    if !part_size.is_power_of_two() || part_size > 1u64 << m {
        return Err(Error::BadPartSize(part_size));
    }
    let target = f.to_fraction().expect("indicator");
    if target.total_runs() % part_size != 0 {
        return Ok(Vec::new());
    }
    if target.is_empty() {
        return Ok(vec![Decomposition { target, parts: Vec::new() }]);
    }

    let k = m - part_size.trailing_zeros() as usize;
    let candidates = find_regular_subfractions(f, k)?;

    let runs: Vec<u32> = target.points().map(|(p, _)| p.bits()).collect();
    let run_index = |bits: u32| runs.binary_search(&bits).expect("candidate run inside target");
    let candidate_runs: Vec<Vec<usize>> = candidates
        .iter()
        .map(|spec| {
            spec.points()
                .points()
                .map(|(p, _)| run_index(p.bits()))
                .collect()
        })
        .collect();
    let mut run_candidates: Vec<Vec<usize>> = vec![Vec::new(); runs.len()];
    for (ci, cruns) in candidate_runs.iter().enumerate() {
        for &ri in cruns {
            run_candidates[ri].push(ci);
        }
    }

    let mut search = CoverSearch {
        candidate_runs: &candidate_runs,
        run_candidates: &run_candidates,
        covered: vec![false; runs.len()],
        chosen: Vec::new(),
        solutions: Vec::new(),
    };
    search.run();

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for chosen in search.solutions {
        let parts: Vec<RegularSpec> = chosen.iter().map(|&ci| candidates[ci].clone()).collect();
        let deco = Decomposition::canonicalize(target.clone(), parts);
        let key: Vec<Vec<u32>> = deco
            .parts
            .iter()
            .map(|p| p.points().points().map(|(pt, _)| pt.bits()).collect())
            .collect();
        if seen.insert(key) {
            out.push(deco);
        }
    }
    out.sort_by_key(|deco| {
        deco.parts
            .iter()
            .map(|p| {
                p.points()
                    .points()
                    .map(|(pt, _)| pt.bits())
                    .collect::<Vec<u32>>()
            })
            .collect::<Vec<_>>()
    });
    Ok(out)
}

struct CoverSearch<'a> {
    candidate_runs: &'a [Vec<usize>],
    run_candidates: &'a [Vec<usize>],
    covered: Vec<bool>,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
}

impl CoverSearch<'_> {
    fn compatible(&self, ci: usize) -> bool {
        self.candidate_runs[ci].iter().all(|&ri| !self.covered[ri])
    }

    /// Pick the uncovered run with the fewest compatible covers (first such
    /// run on ties), branch over those covers. Each exact cover is reached
    /// exactly once since the branching run is a function of the state.
    fn run(&mut self) {
        let mut best: Option<(usize, usize)> = None; // (run, compatible count)
        for ri in 0..self.covered.len() {
            if self.covered[ri] {
                continue;
            }
            let count = self
                .run_candidates[ri]
                .iter()
                .filter(|&&ci| self.compatible(ci))
                .count();
            if best.map_or(true, |(_, c)| count < c) {
                best = Some((ri, count));
                if count == 0 {
                    return; // dead branch
                }
            }
        }
        let Some((ri, _)) = best else {
            self.solutions.push(self.chosen.clone());
            return;
        };
        let options: Vec<usize> = self.run_candidates[ri]
            .iter()
            .copied()
            .filter(|&ci| self.compatible(ci))
            .collect();
        for ci in options {
            for &rj in &self.candidate_runs[ci] {
                self.covered[rj] = true;
            }
            self.chosen.push(ci);
            self.run();
            self.chosen.pop();
            for &rj in &self.candidate_runs[ci] {
                self.covered[rj] = false;
            }
        }
    }
}

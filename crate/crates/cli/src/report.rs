//! Report structures and their text/JSON renderings.
//!
//! JSON output is fully determined by the input: term lists are ordered by
//! (interaction order, bitmask), parts and classes carry their canonical
//! order, and coefficients are printed as reduced fractions, never decimals.

use regulith_core::{
    column_label, CountingPolynomial, Decomposition, Fraction, ProjectionClass, RegularSpec,
};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
pub struct TermReport {
    pub factors: Vec<usize>,
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Serialize)]
pub struct PolynomialReport {
    pub denominator: i64,
    pub terms: Vec<TermReport>,
    pub display: String,
}

impl PolynomialReport {
    pub fn new(poly: &CountingPolynomial) -> PolynomialReport {
        PolynomialReport {
            denominator: poly.denominator(),
            terms: poly
                .terms()
                .into_iter()
                .map(|(alpha, coeff)| TermReport {
                    factors: alpha.factors(),
                    monomial: alpha.to_string(),
                    coefficient: coeff.to_string(),
                })
                .collect(),
            display: poly.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct GeneratorReport {
    pub factors: Vec<usize>,
    pub sign: char,
}

#[derive(Serialize)]
pub struct SpecReport {
    pub size: u64,
    pub form: String,
    pub generators: Vec<GeneratorReport>,
    pub runs: Vec<Vec<i8>>,
}

impl SpecReport {
    pub fn new(spec: &RegularSpec) -> SpecReport {
        SpecReport {
            size: spec.size(),
            form: spec.to_string(),
            generators: spec
                .generators()
                .iter()
                .zip(spec.signs())
                .map(|(g, s)| GeneratorReport {
                    factors: g.factors(),
                    sign: if s.value() > 0 { '+' } else { '-' },
                })
                .collect(),
            runs: spec.points().points().map(|(p, _)| p.levels()).collect(),
        }
    }
}

fn runs_line(runs: &[Vec<i8>]) -> String {
    runs.iter()
        .map(|levels| {
            let fields: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
            format!("({})", fields.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub factors: usize,
    pub runs: u64,
    pub distinct_runs: usize,
    pub is_indicator: bool,
    pub polynomial: PolynomialReport,
    pub strength: Option<usize>,
    pub regular: Option<SpecReport>,
}

impl AnalyzeReport {
    pub fn new(fraction: &Fraction) -> AnalyzeReport {
        let poly = CountingPolynomial::from_fraction(fraction);
        let is_indicator = poly.is_indicator();
        let (strength, regular) = if is_indicator && !poly.is_zero() {
            (
                Some(poly.orthogonal_strength().expect("indicator")),
                poly.regularity().expect("non-empty indicator").map(|s| SpecReport::new(&s)),
            )
        } else {
            (None, None)
        };
        AnalyzeReport {
            factors: fraction.m(),
            runs: fraction.total_runs(),
            distinct_runs: fraction.distinct_runs(),
            is_indicator,
            polynomial: PolynomialReport::new(&poly),
            strength,
            regular,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("factors: {}\n", self.factors));
        out.push_str(&format!("runs: {}\n", self.runs));
        out.push_str(&format!("distinct runs: {}\n", self.distinct_runs));
        out.push_str(&format!(
            "indicator: {}\n",
            if self.is_indicator { "yes" } else { "no (replicated runs)" }
        ));
        out.push_str(&format!("polynomial: {}\n", self.polynomial.display));
        match self.strength {
            Some(s) => out.push_str(&format!("strength: {s}\n")),
            None => out.push_str("strength: n/a\n"),
        }
        match (&self.regular, self.is_indicator) {
            (Some(spec), _) => {
                out.push_str("regular: yes\n");
                out.push_str(&format!("  form: {}\n", spec.form));
            }
            (None, true) => out.push_str("regular: no\n"),
            (None, false) => out.push_str("regular: n/a\n"),
        }
        out
    }
}

#[derive(Serialize)]
pub struct SubfractionsReport {
    pub factors: usize,
    pub size: u64,
    pub count: usize,
    pub fractions: Vec<SpecReport>,
}

impl SubfractionsReport {
    pub fn new(m: usize, size: u64, specs: &[RegularSpec]) -> SubfractionsReport {
        SubfractionsReport {
            factors: m,
            size,
            count: specs.len(),
            fractions: specs.iter().map(SpecReport::new).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "embedded regular fractions of {} run(s): {}\n",
            self.size, self.count
        );
        for (i, spec) in self.fractions.iter().enumerate() {
            out.push_str(&format!("{}: {}\n", i + 1, spec.form));
            out.push_str(&format!("   runs: {}\n", runs_line(&spec.runs)));
        }
        out
    }
}

#[derive(Serialize)]
pub struct DecompositionReport {
    pub parts: Vec<SpecReport>,
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub factors: usize,
    pub mode: String,
    pub part_size: Option<u64>,
    pub count: usize,
    pub decompositions: Vec<DecompositionReport>,
}

impl DecomposeReport {
    pub fn all(m: usize, part_size: u64, decompositions: &[Decomposition]) -> DecomposeReport {
        DecomposeReport {
            factors: m,
            mode: "all".into(),
            part_size: Some(part_size),
            count: decompositions.len(),
            decompositions: decompositions
                .iter()
                .map(|d| DecompositionReport {
                    parts: d.parts().iter().map(SpecReport::new).collect(),
                })
                .collect(),
        }
    }

    pub fn greedy(m: usize, decomposition: &Decomposition) -> DecomposeReport {
        DecomposeReport {
            factors: m,
            mode: "greedy".into(),
            part_size: None,
            count: 1,
            decompositions: vec![DecompositionReport {
                parts: decomposition.parts().iter().map(SpecReport::new).collect(),
            }],
        }
    }

    pub fn text(&self) -> String {
        let mut out = if self.mode == "greedy" {
            let parts = &self.decompositions[0].parts;
            format!("greedy decomposition: {} part(s)\n", parts.len())
        } else {
            format!(
                "decompositions into {}-run regular parts: {}\n",
                self.part_size.unwrap_or(0),
                self.count
            )
        };
        for (i, deco) in self.decompositions.iter().enumerate() {
            if self.mode != "greedy" {
                out.push_str(&format!("{}:\n", i + 1));
            }
            for part in &deco.parts {
                out.push_str(&format!("  {}\n", part.form));
                out.push_str(&format!("    runs: {}\n", runs_line(&part.runs)));
            }
        }
        out
    }
}

fn labels(cols: &[usize; 5]) -> String {
    cols.iter().map(|&c| column_label(c).to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
pub struct ClassReport {
    pub id: usize,
    pub members: usize,
    pub distinct_runs: usize,
    pub representative: String,
    pub columns: Vec<String>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub projections: usize,
    pub classes_total: usize,
    pub classes_with_12_distinct_runs: usize,
    pub classes_with_11_distinct_runs: usize,
    pub classes: Vec<ClassReport>,
}

impl ClassifyReport {
    pub fn new(classes: &[ProjectionClass]) -> ClassifyReport {
        ClassifyReport {
            projections: classes.iter().map(|c| c.member_count()).sum(),
            classes_total: classes.len(),
            classes_with_12_distinct_runs: classes.iter().filter(|c| c.distinct_runs == 12).count(),
            classes_with_11_distinct_runs: classes.iter().filter(|c| c.distinct_runs == 11).count(),
            classes: classes
                .iter()
                .map(|c| ClassReport {
                    id: c.id,
                    members: c.member_count(),
                    distinct_runs: c.distinct_runs,
                    representative: labels(&c.members[0]),
                    columns: c.members.iter().map(labels).collect(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("projections: {}\n", self.projections);
        out.push_str(&format!(
            "classes: {} ({} with 12 distinct runs, {} with 11)\n",
            self.classes_total,
            self.classes_with_12_distinct_runs,
            self.classes_with_11_distinct_runs
        ));
        out.push_str("id\tmembers\tdistinct_runs\trepresentative\n");
        for class in &self.classes {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                class.id, class.members, class.distinct_runs, class.representative
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CatalogReport {
    pub count: usize,
    pub members: Vec<PolynomialReport>,
}

impl CatalogReport {
    pub fn new(catalog: &[CountingPolynomial]) -> CatalogReport {
        CatalogReport {
            count: catalog.len(),
            members: catalog.iter().map(PolynomialReport::new).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("strength-2 orthogonal arrays with 12 runs: {}\n", self.count);
        for (i, member) in self.members.iter().enumerate() {
            out.push_str(&format!("{}: {}\n", i + 1, member.display));
        }
        out
    }
}

#[derive(Serialize)]
pub struct ProjectionReport {
    pub columns: Vec<String>,
    pub runs: Vec<Vec<i8>>,
}

impl ProjectionReport {
    pub fn new(cols: &[usize; 5], fraction: &Fraction) -> ProjectionReport {
        let mut runs = Vec::new();
        for (p, c) in fraction.points() {
            for _ in 0..c {
                runs.push(p.levels());
            }
        }
        ProjectionReport {
            columns: cols.iter().map(|&c| column_label(c).to_string()).collect(),
            runs,
        }
    }
}

/// Serialize any report as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

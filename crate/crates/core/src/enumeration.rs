//! Exhaustive sweeps over the 256 configurations: metric histograms, the
//! duality between object and complement, the equivalence of all
//! simple-point characterizations, and the metric identities with their
//! exact exception sets.

use std::fmt::{self, Write as _};

use crate::error::Result;
use crate::grid::{Adjacency, NeighborhoodConfig};
use crate::metrics::{
    compute_topological_number_complement, hilditch, is_interior, topological_number,
    topological_number_complement, yokoi,
};
use crate::simplicity::{
    build_lut, oracle_is_simple_on_canvas, Characterization, SimplicityLut, DEFAULT_ORACLE_CANVAS,
};

pub const CONFIG_COUNT: usize = 256;

/// Largest bucket kept in a histogram; a 3×3 neighborhood cannot exceed it.
pub const MAX_BUCKET: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    T4,
    T8,
    T4Complement,
    T8Complement,
    H,
    Y4,
    Y8,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::T4,
        Metric::T8,
        Metric::T4Complement,
        Metric::T8Complement,
        Metric::H,
        Metric::Y4,
        Metric::Y8,
    ];

    pub fn value(self, c: NeighborhoodConfig) -> u8 {
        match self {
            Metric::T4 => topological_number(c, Adjacency::Four),
            Metric::T8 => topological_number(c, Adjacency::Eight),
            Metric::T4Complement => topological_number_complement(c, Adjacency::Four),
            Metric::T8Complement => topological_number_complement(c, Adjacency::Eight),
            Metric::H => hilditch(c),
            Metric::Y4 => yokoi(c, Adjacency::Four),
            Metric::Y8 => yokoi(c, Adjacency::Eight),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::T4 => "T4",
            Metric::T8 => "T8",
            Metric::T4Complement => "T4_COMPLEMENT",
            Metric::T8Complement => "T8_COMPLEMENT",
            Metric::H => "H",
            Metric::Y4 => "Y4",
            Metric::Y8 => "Y8",
        }
    }

    /// Published counts for k = 0..=4 (every larger bucket is empty).
    pub fn reference_counts(self) -> [usize; 5] {
        match self {
            Metric::T4 | Metric::T4Complement => [16, 117, 102, 20, 1],
            Metric::T8 | Metric::T8Complement => [1, 132, 102, 20, 1],
            Metric::H | Metric::Y4 | Metric::Y8 => [17, 116, 102, 20, 1],
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Histogram `k -> number of masks with metric value k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricDistribution {
    pub metric: Metric,
    pub counts: [usize; MAX_BUCKET + 1],
}

impl MetricDistribution {
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Sum of buckets with k > 4.
    pub fn above_four(&self) -> usize {
        self.counts[5..].iter().sum()
    }

    pub fn matches_reference(&self) -> bool {
        let reference = self.metric.reference_counts();
        self.counts[..5] == reference && self.above_four() == 0
    }
}

pub fn distribution(metric: Metric) -> MetricDistribution {
    let mut counts = [0usize; MAX_BUCKET + 1];
    for c in NeighborhoodConfig::all() {
        counts[usize::from(metric.value(c))] += 1;
    }
    MetricDistribution { metric, counts }
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionCheck {
    pub name: String,
    pub passed: bool,
    pub counterexamples: Vec<NeighborhoodConfig>,
    pub summary: String,
}

impl PropositionCheck {
    fn from_counterexamples(
        name: impl Into<String>,
        counterexamples: Vec<NeighborhoodConfig>,
        summary: String,
    ) -> Self {
        Self {
            name: name.into(),
            passed: counterexamples.is_empty(),
            counterexamples,
            summary,
        }
    }
}

impl fmt::Display for PropositionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.summary)?;
        if !self.counterexamples.is_empty() {
            let masks: Vec<String> = self.counterexamples.iter().map(|c| c.to_string()).collect();
            write!(f, " (counterexample masks: {})", masks.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub checks: Vec<PropositionCheck>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = (&str, NeighborhoodConfig)> {
        self.checks
            .iter()
            .flat_map(|c| c.counterexamples.iter().map(move |&m| (c.name.as_str(), m)))
    }

    pub fn check(&self, name: &str) -> Option<&PropositionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn extend(&mut self, other: EquivalenceReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

/// Object and complement histograms agree bucket by bucket, and the
/// complement metric equals the object metric of the complemented mask.
pub fn duality_check() -> EquivalenceReport {
    let mut report = EquivalenceReport::default();
    for (object, complement) in [
        (Metric::T4, Metric::T4Complement),
        (Metric::T8, Metric::T8Complement),
    ] {
        let a = distribution(object);
        let b = distribution(complement);
        let passed = a.counts == b.counts;
        report.checks.push(PropositionCheck {
            name: format!("{object} histogram = {complement} histogram"),
            passed,
            counterexamples: Vec::new(),
            summary: format!("{:?} vs {:?}", &a.counts[..5], &b.counts[..5]),
        });
    }
    for m in Adjacency::BOTH {
        // white components counted directly against black components of the
        // complemented mask
        let bad: Vec<_> = NeighborhoodConfig::all()
            .filter(|&c| {
                compute_topological_number_complement(c, m) != topological_number(c.complement(), m)
            })
            .collect();
        report.checks.push(PropositionCheck::from_counterexamples(
            format!("T{m} of white = T{m} of complemented mask"),
            bad,
            format!("{CONFIG_COUNT} masks"),
        ));
    }
    report
}

/// Each published histogram reproduced exactly.
pub fn table_check() -> EquivalenceReport {
    let checks = Metric::ALL
        .into_iter()
        .map(|metric| {
            let d = distribution(metric);
            PropositionCheck {
                name: format!("{metric} distribution"),
                passed: d.matches_reference() && d.total() == CONFIG_COUNT,
                counterexamples: Vec::new(),
                summary: format!(
                    "got {:?} (k>4: {}), expected {:?}",
                    &d.counts[..5],
                    d.above_four(),
                    metric.reference_counts()
                ),
            }
        })
        .collect();
    EquivalenceReport { checks }
}

/// Oracle classification of all 256 masks on a `canvas`×`canvas` painting.
pub fn oracle_lut(n: Adjacency, canvas: usize) -> Result<SimplicityLut> {
    let mut failure = None;
    let lut = SimplicityLut::from_fn(n, |c| match oracle_is_simple_on_canvas(c, n, canvas) {
        Ok(b) => b,
        Err(e) => {
            failure.get_or_insert(e);
            false
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(lut),
    }
}

/// `metric_a == metric_b` everywhere except on `exceptions`, where the pair
/// takes the value `(expected_a, expected_b)`.
fn identity_with_exceptions(
    name: &str,
    metric_a: Metric,
    metric_b: Metric,
    exceptions: impl Fn(NeighborhoodConfig) -> bool,
    (expected_a, expected_b): (u8, u8),
) -> PropositionCheck {
    let mut bad = Vec::new();
    let mut exception_count = 0;
    for c in NeighborhoodConfig::all() {
        let (a, b) = (metric_a.value(c), metric_b.value(c));
        if exceptions(c) {
            exception_count += 1;
            if (a, b) != (expected_a, expected_b) {
                bad.push(c);
            }
        } else if a != b {
            bad.push(c);
        }
    }
    PropositionCheck::from_counterexamples(
        name,
        bad,
        format!(
            "{metric_a} = {metric_b} except {exception_count} masks where \
             {metric_a}={expected_a}, {metric_b}={expected_b}"
        ),
    )
}

/// All characterizations against the oracle, plus the metric identities.
pub fn equivalence_report() -> EquivalenceReport {
    equivalence_report_on_canvas(DEFAULT_ORACLE_CANVAS).expect("default canvas is valid")
}

pub fn equivalence_report_on_canvas(canvas: usize) -> Result<EquivalenceReport> {
    let mut report = EquivalenceReport::default();
    for n in Adjacency::BOTH {
        let oracle = oracle_lut(n, canvas)?;
        report.checks.push(PropositionCheck {
            name: format!("{n}-simple oracle count"),
            passed: oracle.count() == 116,
            counterexamples: Vec::new(),
            summary: format!(
                "{} simple, {} non-simple of {CONFIG_COUNT}",
                oracle.count(),
                CONFIG_COUNT - oracle.count()
            ),
        });
        for method in [
            Characterization::TwoTopologicalNumbers,
            Characterization::TopologicalNumberAndInterior,
            Characterization::Hilditch,
            Characterization::Yokoi,
        ] {
            if !method.supports(n) {
                continue;
            }
            let lut = build_lut(n, method)?;
            report.checks.push(PropositionCheck::from_counterexamples(
                format!("{method} <=> oracle (n={n})"),
                lut.diff(&oracle),
                format!("{} masks classified simple", lut.count()),
            ));
        }
    }

    let interior8 = |c| is_interior(c, Adjacency::Eight);
    report.checks.push(identity_with_exceptions(
        "H = T8 outside 8-interior points",
        Metric::H,
        Metric::T8,
        interior8,
        (0, 1),
    ));
    report.checks.push(identity_with_exceptions(
        "Y8 = H",
        Metric::Y8,
        Metric::H,
        |_| false,
        (0, 0),
    ));
    report.checks.push(identity_with_exceptions(
        "Y4 = T4 outside the 4-interior point",
        Metric::Y4,
        Metric::T4,
        |c| is_interior(c, Adjacency::Four),
        (0, 1),
    ));
    report.checks.push(identity_with_exceptions(
        "Y8 = T8 outside 8-interior points",
        Metric::Y8,
        Metric::T8,
        interior8,
        (0, 1),
    ));
    Ok(report)
}

/// Duality, published tables, and every characterization in one report.
pub fn full_report(canvas: usize) -> Result<EquivalenceReport> {
    let mut report = table_check();
    report.extend(duality_check());
    report.extend(equivalence_report_on_canvas(canvas)?);
    Ok(report)
}

/// Masks on which two metrics differ.
pub fn exception_set(a: Metric, b: Metric) -> Vec<NeighborhoodConfig> {
    NeighborhoodConfig::all()
        .filter(|&c| a.value(c) != b.value(c))
        .collect()
}

/// `simple` of `total` configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletabilityRate {
    pub simple: usize,
    pub total: usize,
}

impl DeletabilityRate {
    /// Percentage in hundredths, rounded half up.
    pub fn hundredths(&self) -> usize {
        (self.simple * 10_000 * 2 + self.total) / (2 * self.total)
    }

    pub fn percent(&self) -> String {
        let h = self.hundredths();
        format!("{}.{:02}", h / 100, h % 100)
    }

    pub fn non_simple(&self) -> DeletabilityRate {
        DeletabilityRate {
            simple: self.total - self.simple,
            total: self.total,
        }
    }
}

impl fmt::Display for DeletabilityRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} = {}%", self.simple, self.total, self.percent())
    }
}

pub fn deletability_rate(n: Adjacency) -> DeletabilityRate {
    let lut = crate::simplicity::lut(n);
    DeletabilityRate {
        simple: lut.count(),
        total: CONFIG_COUNT,
    }
}

/// Masks simple under both 4- and 8-adjacency.
pub fn simple_overlap() -> Vec<NeighborhoodConfig> {
    let four = crate::simplicity::lut(Adjacency::Four);
    let eight = crate::simplicity::lut(Adjacency::Eight);
    NeighborhoodConfig::all()
        .filter(|&c| four.get(c) && eight.get(c))
        .collect()
}

/// The metrics shown side by side in each published table.
pub const TABLES: [(&str, &[Metric]); 3] = [
    (
        "table1",
        &[
            Metric::T4,
            Metric::T8,
            Metric::T8Complement,
            Metric::T4Complement,
        ],
    ),
    ("table2", &[Metric::H, Metric::T8]),
    ("table3", &[Metric::Y4, Metric::T4, Metric::Y8, Metric::T8]),
];

/// CSV with header `metric,k,count`, metric-major, k ascending over 0..=4.
pub fn table_csv(metrics: &[Metric]) -> String {
    let mut out = String::from("metric,k,count\n");
    for &metric in metrics {
        let d = distribution(metric);
        for k in 0..=4 {
            let _ = writeln!(out, "{},{},{}", metric.name(), k, d.count(k));
        }
    }
    out
}

/// Aligned text rendering of one table.
pub fn table_text(metrics: &[Metric]) -> String {
    let mut out = format!("{:<15}", "");
    for k in 0..=4 {
        let _ = write!(out, "{:>6}", format!("k={k}"));
    }
    let _ = writeln!(out, "{:>6}", "k>4");
    for &metric in metrics {
        let d = distribution(metric);
        let _ = write!(out, "{:<15}", metric.name());
        for k in 0..=4 {
            let _ = write!(out, "{:>6}", d.count(k));
        }
        let _ = writeln!(out, "{:>6}", d.above_four());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_examples() {
        assert_eq!(distribution(Metric::T4).counts[..5], [16, 117, 102, 20, 1]);
        assert_eq!(distribution(Metric::H).counts[..5], [17, 116, 102, 20, 1]);
        assert_eq!(distribution(Metric::Y8).counts[..5], [17, 116, 102, 20, 1]);
        for metric in Metric::ALL {
            let d = distribution(metric);
            assert_eq!(d.total(), 256);
            assert_eq!(d.above_four(), 0);
            assert!(d.matches_reference(), "{metric}");
        }
    }

    #[test]
    fn duality_passes() {
        let report = duality_check();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn exception_sets() {
        assert!(exception_set(Metric::Y8, Metric::H).is_empty());
        assert_eq!(
            exception_set(Metric::Y4, Metric::T4),
            vec![NeighborhoodConfig::new(255)]
        );
        let h_vs_t8 = exception_set(Metric::H, Metric::T8);
        assert_eq!(h_vs_t8.len(), 16);
        assert!(h_vs_t8.iter().all(|&c| is_interior(c, Adjacency::Eight)));
    }

    #[test]
    fn report_passes_and_names_no_counterexamples() {
        let report = equivalence_report();
        assert!(report.passed(), "{report}");
        assert_eq!(report.counterexamples().count(), 0);
        assert!(report.check("hilditch <=> oracle (n=8)").is_some());
        assert!(report.check("hilditch <=> oracle (n=4)").is_none());
    }

    #[test]
    fn rates() {
        for n in Adjacency::BOTH {
            let r = deletability_rate(n);
            assert_eq!((r.simple, r.total), (116, 256));
            assert_eq!(r.percent(), "45.31");
            assert_eq!(r.non_simple().percent(), "54.69");
        }
        assert_eq!(
            DeletabilityRate {
                simple: 1,
                total: 8
            }
            .percent(),
            "12.50"
        );
        // 1/3 = 33.333.. and 2/3 = 66.666..
        assert_eq!(
            DeletabilityRate {
                simple: 1,
                total: 3
            }
            .percent(),
            "33.33"
        );
        assert_eq!(
            DeletabilityRate {
                simple: 2,
                total: 3
            }
            .percent(),
            "66.67"
        );
        // exact half-hundredth rounds up: 1/800 = 0.125%
        assert_eq!(
            DeletabilityRate {
                simple: 1,
                total: 800
            }
            .percent(),
            "0.13"
        );
    }

    #[test]
    fn csv_layout() {
        let csv = table_csv(&[Metric::H, Metric::T8]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "metric,k,count");
        assert_eq!(lines[1], "H,0,17");
        assert_eq!(lines[2], "H,1,116");
        assert_eq!(lines[6], "T8,0,1");
        assert_eq!(lines.len(), 11);
    }

    #[test]
    fn text_layout() {
        let text = table_text(&[Metric::T4]);
        let row = text.lines().nth(1).unwrap();
        let cells: Vec<_> = row.split_whitespace().collect();
        assert_eq!(cells, ["T4", "16", "117", "102", "20", "1", "0"]);
    }
}

//! Pearson and Spearman rank correlation, plus correlation-at-cut analysis
//! of a score vector against ground-truth visit counts.

use std::io::Write;

use crate::error::{Error, Result};
use crate::scores::{format_score, ScoreVector};

/// Sample Pearson correlation coefficient.
///
/// Errors when either vector is constant (the coefficient is undefined) or
/// when lengths differ or fewer than two observations are given.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Data(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::UndefinedCorrelation(
            "fewer than 2 observations".into(),
        ));
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 {
        return Err(Error::UndefinedCorrelation("x is constant".into()));
    }
    if var_y == 0.0 {
        return Err(Error::UndefinedCorrelation("y is constant".into()));
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Fractional (average) ranks, 1-based; ties share the mean of the ranks
/// they occupy.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end (0-based) share rank (start+1 + end) / 2
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation: Pearson of the average-rank transforms.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Data(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Correlation of a metric's top-k slices against visit counts, for a
/// series of cut sizes, with overall coefficients and the population
/// variance of each coefficient series.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    pub metric_name: String,
    /// The evaluated cuts (requested cuts larger than the vector are
    /// reported in `skipped_cuts` instead).
    pub cut_sizes: Vec<usize>,
    /// `None` marks a cut whose coefficient is undefined (constant slice);
    /// such cuts are excluded from the variance.
    pub pearson_at_k: Vec<Option<f64>>,
    pub spearman_at_k: Vec<Option<f64>>,
    pub overall_pearson: f64,
    pub overall_spearman: f64,
    pub variance_pearson: f64,
    pub variance_spearman: f64,
    pub skipped_cuts: Vec<usize>,
}

/// Population variance of the defined coefficients; 0 for an empty series.
fn population_variance(series: &[Option<f64>]) -> f64 {
    let defined: Vec<f64> = series.iter().flatten().copied().collect();
    if defined.is_empty() {
        return 0.0;
    }
    let n = defined.len() as f64;
    let mean = defined.iter().sum::<f64>() / n;
    defined.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}

/// Correlate `scores` against `visits` at each cut size.
///
/// For every `k`: nodes are sorted by score descending (ties by ascending
/// NodeId), the top `k` kept, and the kept scores correlated with their
/// visit counts. The overall coefficients are computed through the same
/// path with `k = |V|`, so `cuts = [|V|]` reproduces them exactly.
pub fn correlation_at_cuts(
    scores: &ScoreVector,
    visits: &ScoreVector,
    cuts: &[usize],
) -> Result<CorrelationReport> {
    correlation_at_cuts_named(scores.kind().name(), scores.values(), visits.values(), cuts)
}

/// As [`correlation_at_cuts`], for raw slices under an explicit name.
pub fn correlation_at_cuts_named(
    metric_name: &str,
    scores: &[f64],
    visits: &[f64],
    cuts: &[usize],
) -> Result<CorrelationReport> {
    if scores.len() != visits.len() {
        return Err(Error::Data(format!(
            "length mismatch: {} scores vs {} visits",
            scores.len(),
            visits.len()
        )));
    }
    let n = scores.len();
    if n < 2 {
        return Err(Error::UndefinedCorrelation(
            "fewer than 2 observations".into(),
        ));
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "cuts must be strictly ascending".into(),
        ));
    }

    // Shared ranking: score descending, NodeId ascending on ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let slice_coeffs = |k: usize| -> (Result<f64>, Result<f64>) {
        let top = &order[..k];
        let xs: Vec<f64> = top.iter().map(|&i| scores[i]).collect();
        let ys: Vec<f64> = top.iter().map(|&i| visits[i]).collect();
        (pearson(&xs, &ys), spearman(&xs, &ys))
    };

    let mut report = CorrelationReport {
        metric_name: metric_name.to_string(),
        cut_sizes: Vec::new(),
        pearson_at_k: Vec::new(),
        spearman_at_k: Vec::new(),
        overall_pearson: 0.0,
        overall_spearman: 0.0,
        variance_pearson: 0.0,
        variance_spearman: 0.0,
        skipped_cuts: Vec::new(),
    };

    for &k in cuts {
        if k > n {
            report.skipped_cuts.push(k);
            continue;
        }
        let (p, s) = slice_coeffs(k);
        report.cut_sizes.push(k);
        // A constant slice makes the coefficient undefined: record missing.
        report.pearson_at_k.push(p.ok());
        report.spearman_at_k.push(s.ok());
    }

    let (p, s) = slice_coeffs(n);
    report.overall_pearson = p?;
    report.overall_spearman = s?;
    report.variance_pearson = population_variance(&report.pearson_at_k);
    report.variance_spearman = population_variance(&report.spearman_at_k);
    Ok(report)
}

/// CSV rendering: one row per cut, then `overall` and `variance` summary
/// rows. Missing coefficients are empty fields.
pub fn write_correlation_csv(w: &mut (impl Write + ?Sized), report: &CorrelationReport) -> std::io::Result<()> {
    writeln!(w, "metric,k,pearson,spearman")?;
    let cell = |v: &Option<f64>| v.map(format_score).unwrap_or_default();
    for (i, k) in report.cut_sizes.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{}",
            report.metric_name,
            k,
            cell(&report.pearson_at_k[i]),
            cell(&report.spearman_at_k[i]),
        )?;
    }
    writeln!(
        w,
        "{},overall,{},{}",
        report.metric_name,
        format_score(report.overall_pearson),
        format_score(report.overall_spearman),
    )?;
    writeln!(
        w,
        "{},variance,{},{}",
        report.metric_name,
        format_score(report.variance_pearson),
        format_score(report.variance_spearman),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scores::ScoreKind;
    use proptest::prelude::*;

    #[test]
    fn pearson_basics() {
        let x = [1.0, 2.0, 3.0];
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &neg).unwrap() + 1.0).abs() < 1e-12);
        // Hand evaluation of the closed form: 15 / sqrt(228).
        let got = pearson(&x, &[2.0, 4.0, 7.0]).unwrap();
        assert!((got - 0.993399267798783).abs() < 1e-12, "{got}");
        assert!((got - 15.0 / 228.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pearson_rejects_constant_input() {
        assert!(matches!(
            pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(pearson(&[1.0], &[1.0]).is_err());
        assert!(pearson(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn average_ranks_handle_ties() {
        assert_eq!(average_ranks(&[1.0, 2.0, 2.0, 3.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(average_ranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
        assert_eq!(average_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn spearman_examples() {
        // Hand-computed with average ranks: 4.5 / sqrt(4.5 * 5).
        let got = spearman(&[1.0, 2.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((got - 0.948683298050514).abs() < 1e-12, "{got}");

        let x: [f64; 4] = [0.3, 1.7, 0.4, 9.0];
        let exp: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        assert!((spearman(&exp, &x).unwrap() - 1.0).abs() < 1e-12);

        let rev: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((spearman(&x, &rev).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cuts_identical_vectors_are_perfect() {
        let v = ScoreVector::new(ScoreKind::Visits, vec![5.0, 3.0, 8.0, 1.0, 9.0, 2.0]);
        let report = correlation_at_cuts(&v, &v, &[2, 4, 6]).unwrap();
        for s in report.spearman_at_k.iter().flatten() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert_eq!(report.variance_spearman, 0.0);
        assert!((report.overall_spearman - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_cut_reproduces_overall_exactly() {
        let scores = ScoreVector::new(
            ScoreKind::Pagerank,
            vec![0.5, 0.1, 0.25, 0.05, 0.1],
        );
        let visits = ScoreVector::new(ScoreKind::Visits, vec![9.0, 1.0, 4.0, 2.0, 0.0]);
        let report = correlation_at_cuts(&scores, &visits, &[5]).unwrap();
        assert_eq!(report.pearson_at_k[0], Some(report.overall_pearson));
        assert_eq!(report.spearman_at_k[0], Some(report.overall_spearman));
    }

    #[test]
    fn oversized_cuts_are_skipped_with_warning() {
        let scores = ScoreVector::new(ScoreKind::Pagerank, vec![0.5, 0.3, 0.2]);
        let visits = ScoreVector::new(ScoreKind::Visits, vec![3.0, 2.0, 1.0]);
        let report = correlation_at_cuts(&scores, &visits, &[2, 3, 10]).unwrap();
        assert_eq!(report.cut_sizes, vec![2, 3]);
        assert_eq!(report.skipped_cuts, vec![10]);
    }

    #[test]
    fn constant_slice_is_recorded_missing() {
        // Top-2 scores are tied, so the slice is constant in x.
        let scores = ScoreVector::new(ScoreKind::Indegree, vec![5.0, 5.0, 1.0, 0.5]);
        let visits = ScoreVector::new(ScoreKind::Visits, vec![9.0, 7.0, 3.0, 1.0]);
        let report = correlation_at_cuts(&scores, &visits, &[2, 4]).unwrap();
        assert_eq!(report.pearson_at_k[0], None);
        assert_eq!(report.spearman_at_k[0], None);
        assert!(report.pearson_at_k[1].is_some());
        // Variance over the one defined coefficient is 0.
        assert_eq!(report.variance_pearson, 0.0);
    }

    #[test]
    fn unsorted_cuts_rejected() {
        let v = ScoreVector::new(ScoreKind::Visits, vec![1.0, 2.0, 3.0]);
        assert!(matches!(
            correlation_at_cuts(&v, &v, &[3, 2]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn variance_matches_two_pass_reference() {
        let series = vec![Some(0.9), Some(0.1), None, Some(0.4), Some(0.7)];
        let defined = [0.9, 0.1, 0.4, 0.7];
        let mean: f64 = defined.iter().sum::<f64>() / 4.0;
        let expected: f64 = defined.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 4.0;
        assert!((population_variance(&series) - expected).abs() < 1e-12);
    }

    #[test]
    fn csv_shape() {
        let scores = ScoreVector::new(ScoreKind::Pagerank, vec![0.5, 0.3, 0.2]);
        let visits = ScoreVector::new(ScoreKind::Visits, vec![5.0, 3.0, 2.0]);
        let report = correlation_at_cuts(&scores, &visits, &[2, 3]).unwrap();
        let mut buf = Vec::new();
        write_correlation_csv(&mut buf, &report).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "metric,k,pearson,spearman");
        assert!(lines[1].starts_with("pagerank,2,"));
        assert!(lines[3].starts_with("pagerank,overall,1,1"));
        assert!(lines[4].starts_with("pagerank,variance,"));
    }

    proptest! {
        /// Spearman is invariant under strictly increasing transforms of
        /// either argument.
        #[test]
        fn spearman_monotone_invariance(
            xs in prop::collection::vec(-50i32..50, 3..40),
            ys in prop::collection::vec(-50i32..50, 3..40),
            scale_x in 0.01f64..100.0,
            shift_y in -10.0f64..10.0,
        ) {
            let n = xs.len().min(ys.len());
            let x: Vec<f64> = xs[..n].iter().map(|&v| v as f64).collect();
            let y: Vec<f64> = ys[..n].iter().map(|&v| v as f64).collect();
            // Strictly increasing maps: affine with positive slope on x,
            // shifted cubic-plus-linear on y.
            let fx: Vec<f64> = x.iter().map(|v| v * scale_x + 3.0).collect();
            let gy: Vec<f64> = y.iter().map(|v| v.powi(3) + v + shift_y).collect();
            match (spearman(&x, &y), spearman(&fx, &gy)) {
                (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}"),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "one side undefined: {a:?} vs {b:?}"),
            }
        }
    }
}

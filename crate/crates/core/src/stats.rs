//! Agreement statistics between judge scores and human ratings: Spearman
//! rank correlation, a one-sided Wilcoxon–Mann–Whitney test, and mean ± SE
//! summaries.

use crate::error::StatsError;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

/// Midranks: ties share the average of the positions they occupy (1-based).
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i+1 ..= j+1 share one midrank.
        let rank = (i + 1 + j + 1) as f64 / 2.0;
        for k in i..=j {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateInput(
            "constant input has no rank correlation".to_string(),
        ));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation with midranks for ties. Errors on length
/// mismatch, fewer than 3 pairs, or a constant side.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::DegenerateInput(
            "length mismatch".to_string(),
        ));
    }
    if x.len() < 3 {
        return Err(StatsError::DegenerateInput(
            "need at least 3 pairs".to_string(),
        ));
    }
    pearson(&midranks(x), &midranks(y))
}

/// One-sided Wilcoxon–Mann–Whitney: p-value for "a stochastically greater
/// than b". Exact enumeration when n + m <= 12 and there are no ties across
/// the pooled sample; otherwise a normal approximation with tie correction
/// and a 0.5 continuity correction.
pub fn wmw_one_sided(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return Err(StatsError::DegenerateInput(
            "empty sample".to_string(),
        ));
    }
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let has_ties = pooled.windows(2).any(|w| w[0] == w[1]);

    // U statistic for a over b, counting ties as 1/2.
    let mut u = 0.0;
    for &x in a {
        for &y in b {
            if x > y {
                u += 1.0;
            } else if x == y {
                u += 0.5;
            }
        }
    }

    if n + m <= 12 && !has_ties {
        return Ok(exact_p_at_least(n, m, u));
    }

    let nf = n as f64;
    let mf = m as f64;
    let mean = nf * mf / 2.0;
    // Tie correction over groups of equal pooled values.
    let total = nf + mf;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1] == pooled[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let var = nf * mf / 12.0 * (total + 1.0 - tie_term / (total * (total - 1.0)));
    if var <= 0.0 {
        return Err(StatsError::DegenerateInput(
            "zero variance (all pooled values equal)".to_string(),
        ));
    }
    let z = (u - mean - 0.5) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p = 1.0 - normal.cdf(z);
    Ok(p.clamp(f64::MIN_POSITIVE, 1.0))
}

/// Exact P(U >= u) by enumerating which ranks of the pooled (tie-free)
/// sample go to the first group.
fn exact_p_at_least(n: usize, m: usize, u: f64) -> f64 {
    let total = n + m;
    let mut at_least = 0u64;
    let mut count = 0u64;
    // Each subset of size n of ranks 1..=total is equally likely.
    let mut chosen: Vec<usize> = (0..n).collect();
    loop {
        // U = sum of ranks of group a minus n(n+1)/2.
        let rank_sum: usize = chosen.iter().map(|&i| i + 1).sum();
        let u_stat = rank_sum as f64 - (n * (n + 1)) as f64 / 2.0;
        if u_stat >= u {
            at_least += 1;
        }
        count += 1;
        // Next combination in lexicographic order.
        let mut k = n;
        loop {
            if k == 0 {
                return at_least as f64 / count as f64;
            }
            k -= 1;
            if chosen[k] < total - (n - k) {
                chosen[k] += 1;
                for j in k + 1..n {
                    chosen[j] = chosen[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreSummary {
    pub n: usize,
    pub mean: f64,
    /// Standard error: sample standard deviation / sqrt(n).
    pub se: f64,
}

impl ScoreSummary {
    /// "4.737 (±0.016)" with three decimals.
    pub fn display(&self) -> String {
        format!("{:.3} (±{:.3})", self.mean, self.se)
    }
}

pub fn summarize_scores(scores: &[f64]) -> Result<ScoreSummary, StatsError> {
    if scores.is_empty() {
        return Err(StatsError::DegenerateInput("empty sample".to_string()));
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let se = if scores.len() < 2 {
        0.0
    } else {
        let var = scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    };
    Ok(ScoreSummary {
        n: scores.len(),
        mean,
        se,
    })
}

/// Judge-vs-human agreement for one judge configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub n: usize,
    pub spearman: f64,
    pub judge_summary: ScoreSummary,
    pub human_summary: ScoreSummary,
}

pub fn agreement(judge: &[f64], human: &[f64]) -> Result<AgreementReport, StatsError> {
    Ok(AgreementReport {
        n: judge.len(),
        spearman: spearman(judge, human)?,
        judge_summary: summarize_scores(judge)?,
        human_summary: summarize_scores(human)?,
    })
}

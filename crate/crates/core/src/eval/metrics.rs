use std::collections::BTreeMap;

use serde::Serialize;

use super::EvalError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub relevant: ClassScores,
    pub irrelevant: ClassScores,
    /// Support-weighted average of the two classes.
    pub weighted: ClassScores,
    /// Some ratio had a zero denominator and was set to 0.
    pub zero_division: bool,
}

impl ClassificationReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("class\tprecision\trecall\tf1\tsupport\n");
        for (name, s) in [("relevant", &self.relevant), ("irrelevant", &self.irrelevant), ("weighted", &self.weighted)] {
            out.push_str(&format!("{name}\t{:.6}\t{:.6}\t{:.6}\t{}\n", s.precision, s.recall, s.f1, s.support));
        }
        out
    }
}

fn ratio(num: usize, den: usize, flag: &mut bool) -> f64 {
    if den == 0 {
        *flag = true;
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64, flag: &mut bool) -> f64 {
    if p + r == 0.0 {
        *flag = true;
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn class_scores(predictions: &[bool], gold: &[bool], class: bool, flag: &mut bool) -> ClassScores {
    let pairs = || predictions.iter().zip(gold);
    let tp = pairs().filter(|(p, g)| **p == class && **g == class).count();
    let predicted = predictions.iter().filter(|p| **p == class).count();
    let support = gold.iter().filter(|g| **g == class).count();
    let precision = ratio(tp, predicted, flag);
    let recall = ratio(tp, support, flag);
    ClassScores { precision, recall, f1: harmonic(precision, recall, flag), support }
}

/// Precision, recall and F1 of both classes, plus their support-weighted
/// average. `true` is the relevant class.
pub fn classification_metrics(predictions: &[bool], gold: &[bool]) -> Result<ClassificationReport, EvalError> {
    if predictions.len() != gold.len() {
        return Err(EvalError::LengthMismatch { left: predictions.len(), right: gold.len() });
    }
    if gold.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut zero_division = false;
    let relevant = class_scores(predictions, gold, true, &mut zero_division);
    let irrelevant = class_scores(predictions, gold, false, &mut zero_division);
    let n = gold.len() as f64;
    let w = |f: fn(&ClassScores) -> f64| {
        (f(&relevant) * relevant.support as f64 + f(&irrelevant) * irrelevant.support as f64) / n
    };
    let weighted = ClassScores { precision: w(|s| s.precision), recall: w(|s| s.recall), f1: w(|s| s.f1), support: gold.len() };
    Ok(ClassificationReport { relevant, irrelevant, weighted, zero_division })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Correlation {
    pub value: f64,
    /// One input is constant; the coefficient is undefined and reported as 0.
    pub zero_variance: bool,
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Correlation, EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.len() < 2 {
        return Err(EvalError::TooShort(xs.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        log::warn!("pearson: zero variance input, reporting 0");
        return Ok(Correlation { value: 0.0, zero_variance: true });
    }
    let value = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    Ok(Correlation { value, zero_variance: false })
}

/// Correlation of every feature column with the 0/1 relevance label.
pub fn feature_correlations(rows: &[Vec<f64>], labels: &[bool], names: &[String]) -> Result<Vec<(String, Correlation)>, EvalError> {
    if rows.len() != labels.len() {
        return Err(EvalError::LengthMismatch { left: rows.len(), right: labels.len() });
    }
    let ys: Vec<f64> = labels.iter().map(|&l| f64::from(u8::from(l))).collect();
    names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let xs: Vec<f64> = rows.iter().map(|r| r.get(j).copied().unwrap_or(0.0)).collect();
            pearson(&xs, &ys).map(|c| (name.clone(), c))
        })
        .collect()
}

/// Parses `item<TAB>vote` lines; blank lines and `#` comments are skipped.
pub fn parse_votes(text: &str, path: &str) -> Result<Vec<(String, String)>, EvalError> {
    let mut votes = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((item, vote)) if !item.trim().is_empty() && !vote.trim().is_empty() => {
                votes.push((item.trim().to_string(), vote.trim().to_string()))
            }
            _ => {
                return Err(EvalError::Parse { path: path.to_string(), line: i + 1, message: format!("expected item<TAB>vote, got {line:?}") })
            }
        }
    }
    Ok(votes)
}

/// Rater preference: each item takes its most frequent vote (no winner on a
/// tie) and every option scores the fraction of items it wins.
pub fn rpref(votes: &[(String, String)]) -> Result<BTreeMap<String, f64>, EvalError> {
    let mut per_item: BTreeMap<&str, BTreeMap<&str, usize>> = BTreeMap::new();
    for (item, vote) in votes {
        *per_item.entry(item).or_default().entry(vote).or_default() += 1;
    }
    if per_item.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut wins: BTreeMap<String, f64> = BTreeMap::new();
    for counts in per_item.values() {
        for option in counts.keys() {
            wins.entry(option.to_string()).or_insert(0.0);
        }
        let best = counts.values().copied().max().unwrap_or(0);
        let mut leaders = counts.iter().filter(|(_, n)| **n == best);
        if let (Some((option, _)), None) = (leaders.next(), leaders.next()) {
            *wins.get_mut(*option).expect("inserted above") += 1.0;
        }
    }
    let items = per_item.len() as f64;
    Ok(wins.into_iter().map(|(k, v)| (k, v / items)).collect())
}

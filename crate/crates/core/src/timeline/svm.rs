use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::interlink::CorpusStats;
use crate::kg::vocab::expand;
use crate::kg::{Iri, Tkg};

use super::benchmark::Benchmark;
use super::candidates::collect_candidates;
use super::features::{FeatureExtractor, FeatureSpace, FeatureVector};
use super::TimelineError;

const MODEL_HEADER: &str = "tkgraph-relevance-model";
const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    /// Loss weight of relevant instances.
    pub positive_weight: f64,
    pub l2: f64,
    pub epochs: usize,
    /// Downsample the majority class to the size of the minority class.
    pub balance: bool,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { positive_weight: 3.0, l2: 1e-4, epochs: 2000, balance: true, seed: 42 }
    }
}

/// Per-feature min-max ranges from the training data.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Normalization {
    pub fn fit(rows: &[Vec<f64>]) -> Self {
        let d = rows.first().map_or(0, Vec::len);
        let mut min = vec![f64::INFINITY; d];
        let mut max = vec![f64::NEG_INFINITY; d];
        for r in rows {
            for (j, x) in r.iter().enumerate() {
                min[j] = min[j].min(*x);
                max[j] = max[j].max(*x);
            }
        }
        Normalization { min, max }
    }

    /// Maps training values into [0, 1]; constant features map to 0.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(v, (lo, hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }
}

/// A linear relevance classifier over a fixed feature layout.
#[derive(Clone, Debug, PartialEq)]
pub struct RelevanceModel {
    pub space: FeatureSpace,
    pub normalization: Normalization,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub config: TrainConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainOutcome {
    pub model: RelevanceModel,
    /// Objective value before each epoch and after the last one.
    pub loss: Vec<f64>,
}

impl RelevanceModel {
    /// Affine score of an already normalized vector.
    pub fn score_normalized(&self, z: &[f64]) -> f64 {
        self.bias + self.weights.iter().zip(z).map(|(w, x)| w * x).sum::<f64>()
    }

    pub fn score(&self, x: &[f64]) -> Result<f64, TimelineError> {
        if x.len() != self.weights.len() {
            return Err(TimelineError::DimensionMismatch { expected: self.weights.len(), got: x.len() });
        }
        Ok(self.score_normalized(&self.normalization.apply(x)))
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!("{MODEL_HEADER} {MODEL_VERSION}\n");
        let _ = writeln!(out, "positive_weight\t{}", c.positive_weight);
        let _ = writeln!(out, "l2\t{}", c.l2);
        let _ = writeln!(out, "epochs\t{}", c.epochs);
        let _ = writeln!(out, "balance\t{}", c.balance);
        let _ = writeln!(out, "seed\t{}", c.seed);
        let _ = writeln!(out, "languages\t{}", self.space.languages.join(","));
        for t in &self.space.entity_types {
            let _ = writeln!(out, "type\t{t}");
        }
        for p in &self.space.predicates {
            let _ = writeln!(out, "predicate\t{p}");
        }
        let _ = writeln!(out, "bias\t{}", self.bias);
        for (i, name) in self.space.names().iter().enumerate() {
            let n = &self.normalization;
            let _ = writeln!(out, "feature\t{name}\t{}\t{}\t{}", n.min[i], n.max[i], self.weights[i]);
        }
        out
    }

    pub fn from_text(text: &str, path: &str) -> Result<Self, TimelineError> {
        let bad = |line: usize, m: String| TimelineError::Parse { path: path.to_string(), line, message: m };
        let mut lines = text.lines().enumerate();
        match lines.next().map(|(_, l)| l.split_whitespace().collect::<Vec<_>>()) {
            Some(h) if h.len() == 2 && h[0] == MODEL_HEADER && h[1] == MODEL_VERSION.to_string() => {}
            _ => return Err(bad(1, format!("expected header \"{MODEL_HEADER} {MODEL_VERSION}\""))),
        }
        let mut config = TrainConfig::default();
        let mut space = FeatureSpace { entity_types: Vec::new(), predicates: Vec::new(), languages: Vec::new() };
        let (mut min, mut max, mut weights, mut names) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut bias = None;
        for (i, line) in lines {
            let n = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            let num = |s: &str| s.parse::<f64>().map_err(|e| bad(n, e.to_string()));
            let iri = |s: &str| expand(s).map_err(|e| bad(n, e.to_string()));
            match f.as_slice() {
                ["positive_weight", v] => config.positive_weight = num(v)?,
                ["l2", v] => config.l2 = num(v)?,
                ["epochs", v] => config.epochs = v.parse().map_err(|e: std::num::ParseIntError| bad(n, e.to_string()))?,
                ["balance", v] => config.balance = v.parse().map_err(|e: std::str::ParseBoolError| bad(n, e.to_string()))?,
                ["seed", v] => config.seed = v.parse().map_err(|e: std::num::ParseIntError| bad(n, e.to_string()))?,
                ["languages", v] => space.languages = v.split(',').map(str::to_string).collect(),
                ["type", v] => space.entity_types.push(iri(v)?),
                ["predicate", v] => space.predicates.push(iri(v)?),
                ["bias", v] => bias = Some(num(v)?),
                ["feature", name, lo, hi, w] => {
                    names.push(name.to_string());
                    min.push(num(lo)?);
                    max.push(num(hi)?);
                    weights.push(num(w)?);
                }
                _ => return Err(bad(n, format!("unrecognised line {line:?}"))),
            }
        }
        if names != space.names() {
            return Err(bad(0, "feature lines do not match the declared layout".into()));
        }
        Ok(RelevanceModel {
            space,
            normalization: Normalization { min, max },
            weights,
            bias: bias.ok_or_else(|| bad(0, "missing bias".into()))?,
            config,
        })
    }
}

/// Class label of a raw feature vector; a zero score counts as relevant.
pub fn predict(model: &RelevanceModel, vector: &FeatureVector) -> Result<bool, TimelineError> {
    Ok(model.score(&vector.values)? >= 0.0)
}

/// Smoothed hinge loss of margin `m` and its derivative.
fn smoothed_hinge(m: f64) -> (f64, f64) {
    if m >= 1.0 {
        (0.0, 0.0)
    } else if m <= 0.0 {
        (0.5 - m, -1.0)
    } else {
        (0.5 * (1.0 - m) * (1.0 - m), m - 1.0)
    }
}

struct Problem<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    c: &'a [f64],
    l2: f64,
}

impl Problem<'_> {
    fn objective(&self, w: &[f64], b: f64) -> (f64, Vec<f64>, f64) {
        let total: f64 = self.c.iter().sum();
        let mut gw: Vec<f64> = w.iter().map(|wj| self.l2 * wj).collect();
        let mut gb = 0.0;
        let mut loss = 0.5 * self.l2 * w.iter().map(|v| v * v).sum::<f64>();
        for ((xi, yi), ci) in self.x.iter().zip(self.y).zip(self.c) {
            let f = b + w.iter().zip(xi).map(|(a, v)| a * v).sum::<f64>();
            let (l, dl) = smoothed_hinge(yi * f);
            loss += ci * l / total;
            let g = ci * dl * yi / total;
            if g != 0.0 {
                for (gj, xj) in gw.iter_mut().zip(xi) {
                    *gj += g * xj;
                }
                gb += g;
            }
        }
        (loss, gw, gb)
    }
}

/// Fits a linear model on min-max normalized vectors by full-batch gradient
/// descent with backtracking, so the objective never increases.
pub fn train_instances(
    rows: &[Vec<f64>],
    labels: &[bool],
    space: &FeatureSpace,
    config: &TrainConfig,
) -> Result<TrainOutcome, TimelineError> {
    if rows.is_empty() {
        return Err(TimelineError::EmptyTraining);
    }
    let d = space.len();
    if let Some(r) = rows.iter().find(|r| r.len() != d) {
        return Err(TimelineError::DimensionMismatch { expected: d, got: r.len() });
    }
    let pos: Vec<usize> = (0..rows.len()).filter(|i| labels[*i]).collect();
    let neg: Vec<usize> = (0..rows.len()).filter(|i| !labels[*i]).collect();
    if pos.is_empty() {
        return Err(TimelineError::DegenerateTraining("irrelevant"));
    }
    if neg.is_empty() {
        return Err(TimelineError::DegenerateTraining("relevant"));
    }
    let mut chosen: Vec<usize> = if config.balance {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let (mut major, minor) = if pos.len() > neg.len() { (pos, neg) } else { (neg, pos) };
        major.shuffle(&mut rng);
        major.truncate(minor.len());
        major.into_iter().chain(minor).collect()
    } else {
        (0..rows.len()).collect()
    };
    chosen.sort();
    let normalization = Normalization::fit(rows);
    let x: Vec<Vec<f64>> = chosen.iter().map(|i| normalization.apply(&rows[*i])).collect();
    let y: Vec<f64> = chosen.iter().map(|i| if labels[*i] { 1.0 } else { -1.0 }).collect();
    let c: Vec<f64> = chosen.iter().map(|i| if labels[*i] { config.positive_weight } else { 1.0 }).collect();
    let problem = Problem { x: &x, y: &y, c: &c, l2: config.l2 };

    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut step = 1.0;
    let (mut loss, mut gw, mut gb) = problem.objective(&w, b);
    let mut trace = vec![loss];
    for _ in 0..config.epochs {
        let g2 = gw.iter().map(|g| g * g).sum::<f64>() + gb * gb;
        if g2 < 1e-20 {
            break;
        }
        step *= 2.0;
        loop {
            let w2: Vec<f64> = w.iter().zip(&gw).map(|(a, g)| a - step * g).collect();
            let b2 = b - step * gb;
            let (l2, gw2, gb2) = problem.objective(&w2, b2);
            if l2 <= loss - 0.5 * step * g2 {
                (w, b, loss, gw, gb) = (w2, b2, l2, gw2, gb2);
                break;
            }
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
        trace.push(loss);
        if step < 1e-12 {
            break;
        }
    }
    Ok(TrainOutcome {
        model: RelevanceModel { space: space.clone(), normalization, weights: w, bias: b, config: config.clone() },
        loss: trace,
    })
}

/// Feature vectors and judgements of the given benchmark persons.
pub fn training_instances(
    benchmark: &Benchmark,
    persons: &[Iri],
    space: &FeatureSpace,
    tkg: &Tkg,
    stats: &CorpusStats,
) -> Result<(Vec<Vec<f64>>, Vec<bool>), TimelineError> {
    let mut extractor = FeatureExtractor::new(space, tkg, stats);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for p in persons.iter().collect::<BTreeSet<_>>() {
        let Some(js) = benchmark.judgements.get(p) else { continue };
        for c in collect_candidates(tkg, p)? {
            if let Some(j) = js.get(&c.relation.uri) {
                rows.push(extractor.extract(&c).values);
                labels.push(*j);
            }
        }
    }
    Ok((rows, labels))
}

/// Trains on every person of the benchmark.
pub fn train(
    benchmark: &Benchmark,
    space: &FeatureSpace,
    tkg: &Tkg,
    stats: &CorpusStats,
    config: &TrainConfig,
) -> Result<RelevanceModel, TimelineError> {
    let (rows, labels) = training_instances(benchmark, &benchmark.persons(), space, tkg, stats)?;
    Ok(train_instances(&rows, &labels, space, config)?.model)
}

//! Synthetic training sets, fixed models and the timeline contract check.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tkgraph::interlink::CorpusStats;
use tkgraph::kg::{Iri, Tkg};
use tkgraph::timeline::{
    collect_candidates, predict, FeatureExtractor, FeatureSpace, FeatureVector, Normalization, RelevanceModel, Timeline,
    TrainConfig,
};

use super::iri;

pub fn space20() -> FeatureSpace {
    let types = (0..4).map(|i| iri(&format!("dbo:T{i}"))).collect();
    let preds = (0..4).map(|i| iri(&format!("wd:P{i}"))).collect();
    let space = FeatureSpace::new(types, preds, &CorpusStats::default());
    assert_eq!(space.len(), 20);
    space
}

/// Points in [0,1]^20 labelled by a fixed hyperplane, keeping a margin.
pub fn separable(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<f64>>, Vec<bool>) {
    let w: Vec<f64> = (0..20).map(|j| if j % 2 == 0 { 1.0 } else { -0.5 } * (1.0 + j as f64 / 10.0)).collect();
    let offset: f64 = w.iter().sum::<f64>() / 2.0;
    let (mut rows, mut labels) = (Vec::new(), Vec::new());
    while rows.len() < n {
        let x: Vec<f64> = (0..20).map(|_| rng.gen::<f64>()).collect();
        let m = w.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - offset;
        if m.abs() > 0.3 {
            rows.push(x);
            labels.push(m > 0.0);
        }
    }
    (rows, labels)
}

/// Ten irrelevant instances per relevant one, overlapping on one feature.
pub fn imbalanced(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<bool>) {
    let (mut rows, mut labels) = (Vec::new(), Vec::new());
    for i in 0..1100 {
        let positive = i % 11 == 0;
        let mut x: Vec<f64> = (0..20).map(|_| rng.gen::<f64>()).collect();
        x[0] = if positive { rng.gen_range(0.3..1.0) } else { rng.gen_range(0.0..0.7) };
        rows.push(x);
        labels.push(positive);
    }
    (rows, labels)
}

pub fn accuracy(model: &RelevanceModel, rows: &[Vec<f64>], labels: &[bool]) -> f64 {
    let ok = rows.iter().zip(labels).filter(|(r, l)| predict(model, &FeatureVector { values: r.to_vec() }).unwrap() == **l).count();
    ok as f64 / rows.len() as f64
}

pub fn recall(model: &RelevanceModel, rows: &[Vec<f64>], labels: &[bool]) -> f64 {
    let pos: Vec<&Vec<f64>> = rows.iter().zip(labels).filter(|(_, l)| **l).map(|(r, _)| r).collect();
    let hit = pos.iter().filter(|r| predict(model, &FeatureVector { values: r.to_vec() }).unwrap()).count();
    hit as f64 / pos.len() as f64
}

/// A model that keeps candidates whose connected entity is an event, or
/// keeps everything / nothing.
pub fn rule_model(space: &FeatureSpace, bias: f64, event_weight: f64) -> RelevanceModel {
    let d = space.len();
    let mut weights = vec![0.0; d];
    weights[space.index_of("CEF-E").unwrap()] = event_weight;
    RelevanceModel {
        space: space.clone(),
        normalization: Normalization { min: vec![0.0; d], max: vec![1.0; d] },
        weights,
        bias,
        config: TrainConfig::default(),
    }
}

/// Dated entries come first in non-decreasing order, and exactly the
/// candidates the model accepts are kept.
pub fn check_contract(tl: &Timeline, model: &RelevanceModel, tkg: &Tkg, stats: &CorpusStats) {
    assert!(tl.is_chronological());
    let starts: Vec<Option<NaiveDate>> = tl.entries.iter().map(|c| c.relation.time.start_date()).collect();
    let dated = starts.iter().take_while(|s| s.is_some()).count();
    assert!(starts[..dated].windows(2).all(|w| w[0] <= w[1]));
    assert!(starts[dated..].iter().all(Option::is_none));
    let kept: BTreeSet<&Iri> = tl.entries.iter().map(|c| &c.relation.uri).collect();
    let mut fx = FeatureExtractor::new(&model.space, tkg, stats);
    for c in collect_candidates(tkg, &tl.entity).unwrap() {
        let relevant = predict(model, &fx.extract(&c)).unwrap();
        assert_eq!(relevant, kept.contains(&c.relation.uri), "{}", c.relation.uri);
    }
}

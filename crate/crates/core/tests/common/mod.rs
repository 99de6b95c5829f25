#![allow(dead_code)]

use std::sync::OnceLock;

use ladderlab::ladder::LadderModel;
use ladderlab::zeta_eval::EvalConfig;

/// One ladder per test binary, covering L up to about 1500 with k = 3.
pub fn model() -> &'static LadderModel {
    static MODEL: OnceLock<LadderModel> = OnceLock::new();
    MODEL.get_or_init(|| LadderModel::build(200.0, 6000.0, EvalConfig::default()).unwrap())
}

pub struct OracleRow {
    pub kind: String,
    pub t: f64,
    pub value: f64,
}

pub fn oracle() -> Vec<OracleRow> {
    include_str!("../data/zeta_oracle.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut cols = l.split('\t');
            let kind = cols.next().unwrap().to_string();
            let t = cols.next().unwrap().parse().unwrap();
            let value = cols.next().unwrap().parse().unwrap();
            OracleRow { kind, t, value }
        })
        .collect()
}

pub fn oracle_kind(kind: &str) -> Vec<(f64, f64)> {
    oracle()
        .into_iter()
        .filter(|r| r.kind == kind)
        .map(|r| (r.t, r.value))
        .collect()
}

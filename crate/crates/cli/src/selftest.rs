//! Built-in examples checked against the reference implementations.

use frechet1d::matrix::{decide_static, exact_distance};
use frechet1d::oracle::{self, random_instance, Family};
use frechet1d::scaling::{decide_under_scaling, optimize_scaling};
use frechet1d::translation::{decide_under_translation, optimize_translation};
use frechet1d::{Scalar, TimeSeries};

fn ts(v: &[&str]) -> TimeSeries {
    TimeSeries::parse(v).expect("literal series")
}

fn s(x: &str) -> Scalar {
    x.parse().expect("literal number")
}

fn checks() -> Vec<(&'static str, bool)> {
    let (a, b, c) = (ts(&["0", "2"]), ts(&["0", "1"]), ts(&["2", "0"]));
    let (p, q) = (ts(&["1", "2"]), ts(&["1", "1.5"]));
    let random = |k: u64| random_instance(k, 2..=8, 6, Family::ALL[(k % 4) as usize]);
    vec![
        ("distance of opposite segments", exact_distance(&a, &c) == s("2")),
        ("identical series at δ = 0", decide_static(&a, &a, &Scalar::zero())),
        ("translation distance", optimize_translation(&a, &b) == (s("1/2"), s("1/2"))),
        ("scaling distance", optimize_scaling(&p, &q) == (s("1/5"), s("6/5"))),
        (
            "static decisions match the oracle",
            (0..200).map(random).all(|i| decide_static(&i.p, &i.q, &i.delta) == oracle::freespace_decide(&i.p, &i.q, &i.delta)),
        ),
        (
            "translation decisions match the oracle",
            (0..40).map(random).all(|i| {
                decide_under_translation(&i.p, &i.q, &i.delta).0
                    == oracle::brute_translation_decide(&i.p, &i.q, &i.delta).is_some()
            }),
        ),
        (
            "scaling decisions match the oracle",
            (0..40).map(random).all(|i| {
                decide_under_scaling(&i.p, &i.q, &i.delta).0 == oracle::brute_scaling_decide(&i.p, &i.q, &i.delta).is_some()
            }),
        ),
    ]
}

pub fn run() -> u8 {
    let results = checks();
    let failed: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    let report = serde_json::json!({
        "command": "selftest",
        "passed": results.len() - failed.len(),
        "failed": failed,
    });
    println!("{report}");
    if failed.is_empty() {
        0
    } else {
        3
    }
}

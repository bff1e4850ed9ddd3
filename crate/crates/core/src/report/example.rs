use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use super::{cell, measured, Report, RunConfig, VerdictRecord};
use crate::check::orbit_sections;
use crate::check::{check_shifted_m_contraction, PairSample};
use crate::error::{Error, Result};
use crate::gauges::{evaluate_gauge, evaluate_on_sections, Gauge};
use crate::grid::EpsGrid;
use crate::maps::{DoubleIndex, SelfMap};
use crate::metric::{ExamplePoint, ExampleSpace, MetricSpace};

/// Length of the audited witness family.
pub const FAMILY_LEN: u64 = 32;

fn r(n: u64) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(n))
}

fn gauge() -> Gauge {
    Gauge::GeneralizedProinov {
        alpha: 1.0,
        beta: 1.0,
        s: 1,
        t: 1,
    }
}

fn verdict(
    name: &str,
    ok: bool,
    values: Vec<super::MeasuredRecord>,
    notes: Vec<String>,
) -> VerdictRecord {
    VerdictRecord {
        name: name.into(),
        verdict: if ok { "consistent" } else { "falsified" }.into(),
        witness_id: None,
        values,
        notes,
    }
}

/// Audits the counterexample space with the doubling map up to index
/// `cfg.cutoff`: the halving identity, the displayed witness family against
/// direct evaluation, the strict inequality `d(Tx,Ty) < m(x,y)`, value
/// collisions, and the shifted condition at `N = 0`, `eps = 2`.
pub fn run_reproduce_example(cfg: RunConfig) -> Result<Report> {
    let l = cfg.cutoff as u64;
    if l < 4 * (FAMILY_LEN + 1) + 1 {
        return Err(Error::usage(format!(
            "reproduce-example needs --cutoff of at least {}",
            4 * (FAMILY_LEN + 1) + 1
        )));
    }
    let space = ExampleSpace;
    let map = DoubleIndex;
    let g = gauge();
    let mut report = Report::new("reproduce-example", cfg.clone());
    let pt = |i: u64| space.point(i);
    let t = |p: &ExamplePoint| map.apply(p);

    // (a) d(T^3 x_l, T^3 x_v) = d(T^2 x_l, T^2 x_v) / 2
    let half = r(2);
    let images: Vec<(ExamplePoint, ExamplePoint)> = (0..=l)
        .map(|i| {
            let t2 = t(&t(&pt(i)));
            let t3 = t(&t2);
            (t2, t3)
        })
        .collect();
    let failures: Vec<(u64, u64)> = (1..=l)
        .into_par_iter()
        .flat_map_iter(|a| {
            let images = &images;
            let half = &half;
            (a + 1..=l).filter_map(move |b| {
                let (a2, a3) = &images[a as usize];
                let (b2, b3) = &images[b as usize];
                (space.distance(a3, b3) != space.distance(a2, b2) * half.clone()).then_some((a, b))
            })
        })
        .collect();
    let checked = (l * (l - 1) / 2) as f64;
    report.verdicts.push(verdict(
        "halving-identity",
        failures.is_empty(),
        vec![
            measured("pairs", &checked),
            measured("failures", &(failures.len() as f64)),
        ],
        Vec::new(),
    ));
    report.add_diagnostic(
        "halving-identity-failures",
        &["ell", "nu"],
        failures
            .iter()
            .map(|&(a, b)| vec![json!(a), json!(b)])
            .collect(),
    );

    // (b) u_l = x_{4l}, v_l = x_{4(l+1)+1}
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    let two = BigRational::from_integer(BigInt::from(2));
    for ell in 1..=FAMILY_LEN {
        let u = pt(4 * ell);
        let v = pt(4 * (ell + 1) + 1);
        let m = BigRational::min(
            evaluate_gauge(&g, &space, &map, &u, &v),
            evaluate_gauge(&g, &space, &map, &v, &u),
        );
        let d_image = space.distance(&t(&u), &t(&v));
        let d = space.distance(&u, &v);
        let delta =
            r(ell) * BigRational::from_integer(BigInt::from(2)) - r(2 * ell) - r(2 * ell + 2);
        let displayed = two.clone() + delta.clone();
        let agree = m == displayed;
        if !agree {
            disagreements.push(ell);
        }
        rows.push(vec![
            json!(ell),
            json!(space.format_point(&u)),
            json!(space.format_point(&v)),
            cell(&m),
            cell(&displayed),
            cell(&delta),
            json!(agree),
            cell(&d_image),
            json!(d_image > two),
            cell(&d),
        ]);
    }
    report.add_diagnostic(
        "witness-family",
        &[
            "ell",
            "u",
            "v",
            "m_direct",
            "m_displayed",
            "delta_displayed",
            "agree",
            "d_image_direct",
            "d_image_exceeds_2",
            "d_direct",
        ],
        rows,
    );
    report.verdicts.push(verdict(
        "witness-family-agreement",
        disagreements.is_empty(),
        vec![measured("disagreements", &(disagreements.len() as f64))],
        disagreements
            .iter()
            .map(|e| format!("ell={e}: displayed value differs from direct evaluation"))
            .collect(),
    ));

    // (c) d(Tx,Ty) < m(x,y) over 0 <= l < v <= L
    let points: Vec<ExamplePoint> = (0..=l).map(pt).collect();
    let sections = orbit_sections(&map, &points, g.probe_depth());
    let offenders: Vec<(u64, u64, BigRational, BigRational)> = (0..=l)
        .into_par_iter()
        .flat_map_iter(|a| {
            let (sections, g) = (&sections, &g);
            (a + 1..=l).filter_map(move |b| {
                let (xs, ys) = (&sections[a as usize], &sections[b as usize]);
                let mut m = evaluate_on_sections(g, &space, xs, ys);
                if !g.is_symmetric() {
                    m = BigRational::min(m, evaluate_on_sections(g, &space, ys, xs));
                }
                let di = space.distance(&xs[1], &ys[1]);
                (di >= m).then_some((a, b, di, m))
            })
        })
        .collect();
    let equalities = offenders.iter().filter(|o| o.2 == o.3).count();
    let violations = offenders.len() - equalities;
    report.verdicts.push(verdict(
        "strict-inequality",
        offenders.is_empty(),
        vec![
            measured("pairs", &((l * (l + 1) / 2) as f64)),
            measured("equalities", &(equalities as f64)),
            measured("violations", &(violations as f64)),
        ],
        Vec::new(),
    ));
    report.add_diagnostic(
        "strict-inequality-offenders",
        &["ell", "nu", "d_image", "m", "relation"],
        offenders
            .iter()
            .map(|(a, b, di, m)| {
                vec![
                    json!(a),
                    json!(b),
                    cell(di),
                    cell(m),
                    json!(if di == m { "equal" } else { "greater" }),
                ]
            })
            .collect(),
    );

    // (d) indices sharing a value
    let mut by_value: BTreeMap<BigRational, Vec<u64>> = BTreeMap::new();
    for p in &points {
        by_value
            .entry(p.value().clone())
            .or_default()
            .push(p.small_index().expect("indices fit in u64"));
    }
    report.add_diagnostic(
        "value-collisions",
        &["value", "indices"],
        by_value
            .iter()
            .filter(|(_, ix)| ix.len() > 1)
            .map(|(v, ix)| vec![cell(v), json!(ix)])
            .collect(),
    );

    // (e) shifted condition at N = 0, eps = 2: all pairs, then the family alone
    let eps = EpsGrid::from_values(vec![2.0])?;
    let deltas = cfg.deltas();
    let all = PairSample::all_pairs(points.clone());
    let family = PairSample::from_pairs(
        (1..=FAMILY_LEN)
            .map(|ell| (pt(4 * ell), pt(4 * (ell + 1) + 1)))
            .collect(),
    );
    for (label, sample) in [("all-pairs", &all), ("witness-family", &family)] {
        let mut profile =
            check_shifted_m_contraction(&space, &map, &g, sample, &eps, &deltas, 0..=0)?;
        profile.condition = format!("{}@N=0:{label}", profile.condition);
        report.add_profile(&space, &profile);
    }
    Ok(report)
}

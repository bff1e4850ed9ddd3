use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{cell, measured, Report, RunConfig};
use crate::check::{
    check_asymptotic_final_type, check_asymptotic_m_contraction, check_banach,
    check_ciric_matkowski, check_meir_keeler, check_shifted_m_contraction, AsymptoticBudget,
    AsymptoticReport, PairSample,
};
use crate::descriptor::{ConditionDescriptor, MapDescriptor, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::gauges::{limsup_comparison, Gauge, GaugeTable, PairFamily};
use crate::maps::{
    asymptotic_regularity_estimate, orbit_prefix, picard_solve, Affine, DoubleIndex, SelfMap,
    TableMap,
};
use crate::metric::{verify_metric_axioms, ExampleSpace, Interval, MetricSpace, TableSpace};
use crate::prefix::SequencePrefix;
use crate::seqlab::{
    cauchy_modulus, check_geraghty, check_m_contractive, check_monotone_contractive,
    lemma_criterion_witness_search,
};

/// Work that needs a concrete space and map.
pub(crate) trait Job {
    type Output;

    fn run<S, M>(self, space: S, map: M, default_x0: S::Point) -> Result<Self::Output>
    where
        S: MetricSpace,
        M: SelfMap<Point = S::Point>;
}

/// Work that needs only a space.
pub(crate) trait SpaceJob {
    type Output;

    fn run<S: MetricSpace>(self, space: S) -> Result<Self::Output>;
}

pub(crate) fn dispatch<J: Job>(
    space: &SpaceDescriptor,
    map: &MapDescriptor,
    job: J,
) -> Result<J::Output> {
    match (space, map) {
        (SpaceDescriptor::Example, MapDescriptor::DoubleIndex) => {
            job.run(ExampleSpace, DoubleIndex, ExampleSpace.point(1))
        }
        (SpaceDescriptor::Interval { lo, hi }, MapDescriptor::Affine { a, c }) => {
            let s = Interval::new(*lo, *hi)?;
            let m = Affine::new(*a, *c);
            for end in [*lo, *hi] {
                let img = m.apply(&end);
                if !(img >= *lo && img <= *hi) {
                    return Err(Error::usage(format!(
                        "map `{map}` sends {end} to {img}, outside `{space}`"
                    )));
                }
            }
            job.run(s, m, *hi)
        }
        (SpaceDescriptor::Table { path }, MapDescriptor::Table { path: map_path }) => {
            let s = TableSpace::from_csv(path)?;
            let m = TableMap::from_csv(map_path, &s)?;
            job.run(s, m, 0)
        }
        _ => Err(Error::usage(format!(
            "map `{map}` does not act on space `{space}`"
        ))),
    }
}

pub(crate) fn dispatch_space<J: SpaceJob>(space: &SpaceDescriptor, job: J) -> Result<J::Output> {
    match space {
        SpaceDescriptor::Example => job.run(ExampleSpace),
        SpaceDescriptor::Interval { lo, hi } => job.run(Interval::new(*lo, *hi)?),
        SpaceDescriptor::Table { path } => job.run(TableSpace::from_csv(path)?),
    }
}

fn parse_all<T: std::str::FromStr<Err = Error>>(items: &[String]) -> Result<Vec<T>> {
    items.iter().map(|s| s.parse()).collect()
}

fn budget(cfg: &RunConfig) -> AsymptoticBudget {
    AsymptoticBudget {
        horizon: cfg.horizon,
        nu_max: cfg.nu_max,
        n_max: cfg.n_max,
        window: if cfg.window == 0 {
            AsymptoticBudget::default().window
        } else {
            cfg.window
        },
        tol: cfg.tail_tol,
    }
}

fn seed_and_companions<S: MetricSpace>(
    space: &S,
    cfg: &RunConfig,
    default_x0: S::Point,
) -> Result<(S::Point, Vec<S::Point>)> {
    let seed = match &cfg.x0 {
        Some(s) => space.parse_point(s)?,
        None => default_x0,
    };
    let companions = cfg
        .companions
        .iter()
        .map(|s| space.parse_point(s))
        .collect::<Result<Vec<_>>>()?;
    for p in std::iter::once(&seed).chain(&companions) {
        if !space.contains(p) {
            return Err(Error::usage(format!(
                "point {} lies outside the space",
                space.format_point(p)
            )));
        }
    }
    Ok((seed, companions))
}

/// Runs every requested condition check on one map.
pub fn run_classify(cfg: RunConfig) -> Result<Report> {
    let space: SpaceDescriptor = cfg.space.parse()?;
    let map: MapDescriptor = cfg.map.parse()?;
    let conditions: Vec<ConditionDescriptor> = parse_all(&cfg.conditions)?;
    if conditions.is_empty() {
        return Err(Error::usage("classify needs at least one --condition"));
    }
    if cfg.n_min > cfg.n_max {
        return Err(Error::usage(format!(
            "n-min {} exceeds n-max {}",
            cfg.n_min, cfg.n_max
        )));
    }
    cfg.eps()?;
    let mut report = Report::new("classify", cfg.clone());
    dispatch(
        &space,
        &map,
        Classify {
            cfg: &cfg,
            conditions,
            report: &mut report,
        },
    )?;
    Ok(report)
}

struct Classify<'a> {
    cfg: &'a RunConfig,
    conditions: Vec<ConditionDescriptor>,
    report: &'a mut Report,
}

impl Job for Classify<'_> {
    type Output = ();

    fn run<S, M>(self, space: S, map: M, default_x0: S::Point) -> Result<()>
    where
        S: MetricSpace,
        M: SelfMap<Point = S::Point>,
    {
        let Classify {
            cfg,
            conditions,
            report,
        } = self;
        let eps = cfg.eps()?;
        let deltas = cfg.deltas();
        let sample = std::cell::OnceCell::new();
        let pairs = || -> &PairSample<S::Point> {
            sample.get_or_init(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                PairSample::draw(&space, cfg.cutoff, cfg.pairs, &mut rng)
            })
        };
        for cond in &conditions {
            match cond {
                ConditionDescriptor::Banach => {
                    let est = check_banach(&space, &map, pairs())?;
                    let values = vec![
                        measured("lipschitz", &est.lipschitz),
                        measured("pairs-used", &(est.pairs_used as f64)),
                        measured("skipped", &(est.skipped as f64)),
                    ];
                    report.add_verdict(&space, "banach", &est.verdict, values);
                }
                ConditionDescriptor::MeirKeeler => {
                    let profile = check_meir_keeler(&space, &map, pairs(), &eps, &deltas);
                    report.add_profile(&space, &profile);
                }
                ConditionDescriptor::CiricMatkowski => {
                    let r = check_ciric_matkowski(&space, &map, pairs(), &eps, &deltas);
                    report.add_profile(&space, &r.profile);
                    report.add_verdict(
                        &space,
                        "ciric-matkowski:contractive",
                        &r.contractive,
                        Vec::new(),
                    );
                }
                ConditionDescriptor::Shifted(g) => {
                    let profile = check_shifted_m_contraction(
                        &space,
                        &map,
                        g,
                        pairs(),
                        &eps,
                        &deltas,
                        cfg.n_min..=cfg.n_max,
                    )?;
                    report.add_profile(&space, &profile);
                }
                ConditionDescriptor::Acf | ConditionDescriptor::Amc(_) => {
                    let (seed, companions) = seed_and_companions(&space, cfg, default_x0.clone())?;
                    let b = budget(cfg);
                    let r: AsymptoticReport<S::Point, S::Dist> = match cond {
                        ConditionDescriptor::Amc(g) => check_asymptotic_m_contraction(
                            &space,
                            &map,
                            g,
                            &seed,
                            &companions,
                            &b,
                            &eps,
                            &deltas,
                        )?,
                        _ => check_asymptotic_final_type(
                            &space,
                            &map,
                            &seed,
                            &companions,
                            &b,
                            &eps,
                            &deltas,
                        )?,
                    };
                    report.add_verdict(
                        &space,
                        &format!("{cond}:orbits-merge"),
                        &r.merge,
                        Vec::new(),
                    );
                    report.add_profile(&space, &r.profile);
                }
            }
        }
        Ok(())
    }
}

/// Diagnoses a sequence prefix: steps, Cauchy modulus, the m-contractive
/// and Geraghty-type checks, and gauge limsup comparisons.
pub fn run_seq(cfg: RunConfig) -> Result<Report> {
    cfg.eps()?;
    let gauges: Vec<Gauge> = parse_all(&cfg.gauges)?;
    let mut report = Report::new("seq", cfg.clone());
    match &cfg.input {
        Some(path) => {
            let prefix = SequencePrefix::from_csv(path)?;
            analyze_prefix(&mut report, &cfg, &gauges, &prefix)?;
        }
        None => {
            let space: SpaceDescriptor = cfg.space.parse()?;
            let map: MapDescriptor = cfg.map.parse()?;
            dispatch(
                &space,
                &map,
                Seq {
                    cfg: &cfg,
                    gauges: &gauges,
                    report: &mut report,
                },
            )?;
        }
    }
    Ok(report)
}

struct Seq<'a> {
    cfg: &'a RunConfig,
    gauges: &'a [Gauge],
    report: &'a mut Report,
}

impl Job for Seq<'_> {
    type Output = ();

    fn run<S, M>(self, space: S, map: M, default_x0: S::Point) -> Result<()>
    where
        S: MetricSpace,
        M: SelfMap<Point = S::Point>,
    {
        let (seed, _) = seed_and_companions(&space, self.cfg, default_x0)?;
        let prefix = orbit_prefix(&space, &map, &seed, self.cfg.length);
        analyze_prefix(self.report, self.cfg, self.gauges, &prefix)
    }
}

fn analyze_prefix<S: MetricSpace>(
    report: &mut Report,
    cfg: &RunConfig,
    gauges: &[Gauge],
    prefix: &SequencePrefix<S>,
) -> Result<()> {
    let space = prefix.space().clone();
    let len = prefix.len();
    if len < 4 {
        return Err(Error::usage(format!(
            "sequence diagnostics need at least 4 entries, got {len}"
        )));
    }
    let eps = cfg.eps()?;
    let deltas = cfg.deltas();

    let steps = prefix.steps();
    report.add_diagnostic(
        "steps",
        &["n", "d(x_n,x_n+1)"],
        steps
            .iter()
            .enumerate()
            .map(|(n, s)| vec![json!(n), cell(s)])
            .collect(),
    );
    let window = if cfg.window == 0 {
        (steps.len() / 4).max(1)
    } else {
        cfg.window.min(steps.len())
    };
    let reg = asymptotic_regularity_estimate(prefix, window, cfg.tail_tol)?;
    report.verdicts.push(super::VerdictRecord {
        name: "asymptotic-regularity".into(),
        verdict: if reg.holds { "consistent" } else { "falsified" }.into(),
        witness_id: None,
        values: vec![
            measured("tail-max", &reg.tail_max),
            measured("window", &(window as f64)),
        ],
        notes: Vec::new(),
    });

    let mut rows = Vec::new();
    let mut unbounded = Vec::new();
    for &e in eps.values() {
        let modulus = cauchy_modulus(prefix, e);
        let lemma = lemma_criterion_witness_search(prefix, e, &cfg.nu);
        if modulus.is_none() {
            unbounded.push(format!("no modulus at eps={e}"));
        }
        let fin = lemma.as_ref().map(|w| w.final_stage().clone());
        rows.push(vec![
            json!(e),
            json!(modulus),
            json!(lemma.as_ref().map(|w| w.stages.len())),
            json!(fin.as_ref().map(|s| s.p)),
            json!(fin.as_ref().map(|s| s.q)),
            fin.as_ref()
                .map(|s| cell(&s.d_pq))
                .unwrap_or(serde_json::Value::Null),
        ]);
    }
    report.add_diagnostic(
        "cauchy",
        &[
            "eps",
            "modulus",
            "lemma_stages",
            "final_p",
            "final_q",
            "final_d_pq",
        ],
        rows,
    );
    report.verdicts.push(super::VerdictRecord {
        name: "cauchy".into(),
        verdict: if unbounded.is_empty() {
            "consistent"
        } else {
            "falsified"
        }
        .into(),
        witness_id: None,
        values: Vec::new(),
        notes: unbounded,
    });

    let mono = check_monotone_contractive(prefix)?;
    report.add_verdict(&space, "monotone-steps", &mono, Vec::new());

    for g in gauges {
        g.validate()?;
        let depth = g.probe_depth();
        if len < depth + 3 {
            return Err(Error::usage(format!(
                "gauge `{g}` needs a prefix of at least {} entries",
                depth + 3
            )));
        }
        let table = GaugeTable::on_prefix(*g, prefix);
        let profile = check_m_contractive(prefix, &table, &eps, &deltas, cfg.n_max, cfg.tol)?;
        report.add_profile(&space, &profile);
        let families = [
            PairFamily::consecutive(0, len - 1 - depth),
            PairFamily::random(len - depth, 256, cfg.seed),
        ];
        for fam in &families {
            let cmp = limsup_comparison(g, prefix, fam, cfg.window, cfg.tail_tol)?;
            let values = vec![
                measured("m-tail-sup", &cmp.m_tail_sup),
                measured("d-tail-sup", &cmp.d_tail_sup),
            ];
            report.add_verdict(
                &space,
                &format!("limsup:{g}:{}", fam.label),
                &cmp.verdict,
                values,
            );
        }
    }

    let families = [PairFamily::consecutive(0, len - 2)];
    let ger = check_geraghty(prefix, &eps, &deltas, cfg.n_max, cfg.tol, &families)?;
    report.add_verdict(&space, "geraghty:standing", &ger.standing, Vec::new());
    if !ger.profile.entries.is_empty() {
        report.add_profile(&space, &ger.profile);
    }
    report.add_diagnostic(
        "geraghty-ratio-route",
        &[
            "eps",
            "critical_p",
            "critical_q",
            "critical_ratio",
            "evaluated",
            "indeterminate",
        ],
        ger.ratio_route
            .iter()
            .map(|r| {
                vec![
                    json!(r.eps),
                    json!(r.critical.map(|c| c.0)),
                    json!(r.critical.map(|c| c.1)),
                    json!(r.critical_ratio),
                    json!(r.evaluated),
                    json!(r.indeterminate),
                ]
            })
            .collect(),
    );
    for s in &ger.series {
        report.add_diagnostic(
            &format!("ratio:{}", s.family),
            &["p", "q", "ratio"],
            s.values
                .iter()
                .map(|&(p, q, r)| vec![json!(p), json!(q), json!(r)])
                .collect(),
        );
    }
    Ok(())
}

/// Picard iteration from `x0` and from `starts` further seeded points.
pub fn run_solve(cfg: RunConfig) -> Result<Report> {
    if !(cfg.tol > 0.0) || cfg.max_iter == 0 {
        return Err(Error::usage("solve needs --tol > 0 and --max-iter >= 1"));
    }
    let space: SpaceDescriptor = cfg.space.parse()?;
    let map: MapDescriptor = cfg.map.parse()?;
    let mut report = Report::new("solve", cfg.clone());
    dispatch(
        &space,
        &map,
        Solve {
            cfg: &cfg,
            report: &mut report,
        },
    )?;
    Ok(report)
}

struct Solve<'a> {
    cfg: &'a RunConfig,
    report: &'a mut Report,
}

impl Job for Solve<'_> {
    type Output = ();

    fn run<S, M>(self, space: S, map: M, default_x0: S::Point) -> Result<()>
    where
        S: MetricSpace,
        M: SelfMap<Point = S::Point>,
    {
        let Solve { cfg, report } = self;
        let (x0, _) = seed_and_companions(&space, cfg, default_x0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut starts = vec![x0];
        if cfg.starts > 0 {
            starts.extend(
                space
                    .sample_points(cfg.cutoff, cfg.starts, &mut rng)
                    .into_iter()
                    .take(cfg.starts),
            );
        }
        let mut rows = Vec::new();
        for (i, x) in starts.iter().enumerate() {
            let r = picard_solve(&space, &map, x, cfg.tol, cfg.max_iter);
            report.verdicts.push(super::VerdictRecord {
                name: format!("picard[{i}]"),
                verdict: if r.converged {
                    "converged"
                } else {
                    "not-converged"
                }
                .into(),
                witness_id: None,
                values: vec![
                    measured("residual", &r.residual),
                    measured("iterations", &(r.iterations as f64)),
                ],
                notes: vec![
                    format!("start {}", space.format_point(x)),
                    format!("approx {}", space.format_point(&r.approx)),
                ],
            });
            rows.extend(
                r.steps
                    .iter()
                    .enumerate()
                    .map(|(n, s)| vec![json!(i), json!(n), cell(s)]),
            );
        }
        report.add_diagnostic("steps", &["start", "n", "d(x_n,x_n+1)"], rows);
        Ok(())
    }
}

/// Metric axioms on a sample: every point up to `cutoff` on indexed
/// spaces, otherwise `pairs` seeded points.
pub fn run_axioms(cfg: RunConfig) -> Result<Report> {
    let space: SpaceDescriptor = cfg.space.parse()?;
    let mut report = Report::new("axioms", cfg.clone());
    dispatch_space(
        &space,
        Axioms {
            cfg: &cfg,
            report: &mut report,
        },
    )?;
    Ok(report)
}

struct Axioms<'a> {
    cfg: &'a RunConfig,
    report: &'a mut Report,
}

impl SpaceJob for Axioms<'_> {
    type Output = ();

    fn run<S: MetricSpace>(self, space: S) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let points = space.sample_points(self.cfg.cutoff, self.cfg.pairs, &mut rng);
        let r = verify_metric_axioms(&space, &points, self.cfg.tol);
        let values = vec![
            measured("points", &(points.len() as f64)),
            measured("collisions", &(r.collisions.len() as f64)),
        ];
        self.report
            .add_verdict(&space, "metric-axioms", &r.verdict, values);
        self.report.add_diagnostic(
            "collisions",
            &["a", "b"],
            r.collisions
                .iter()
                .map(|(a, b)| vec![json!(space.format_point(a)), json!(space.format_point(b))])
                .collect(),
        );
        Ok(())
    }
}

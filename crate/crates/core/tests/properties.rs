use contraction_lab::check::{
    check_asymptotic_final_type, check_asymptotic_m_contraction, check_banach, check_meir_keeler,
    check_shifted_m_contraction, replay_on_orbit, replay_pair, AsymptoticBudget, PairSample,
};
use contraction_lab::gauges::limsup_comparison;
use contraction_lab::maps::{
    asymptotic_regularity_estimate, iterate, orbit_diameter, Orbit, TableMap,
};
use contraction_lab::metric::verify_metric_axioms;
use contraction_lab::seqlab::{
    cauchy_modulus, check_geraghty, check_m_contractive, check_monotone_contractive, corpus,
    critical_family, lemma_criterion_witness_search, subsequence_verdict, tail_start, Generator,
};
use contraction_lab::{
    evaluate_gauge, picard_solve, Affine, DeltaGrid, DoubleIndex, EpsGrid, ExamplePoint,
    ExampleSpace, Gauge, GaugeTable, Interval, MetricSpace, PairFamily, SelfMap, SequencePrefix,
    TableSpace,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn val(index: u64) -> BigRational {
    let (n, i) = ((index / 4) as i64, (index % 4) as i64);
    if n == 0 {
        q(i, 1)
    } else {
        q(i, 1) + q(1, n)
    }
}

fn ex(i: u64) -> ExamplePoint {
    ExampleSpace.point(i)
}

fn square() -> (TableSpace, TableMap) {
    let space = TableSpace::from_csv_str(include_str!("../data/square.csv")).unwrap();
    let map = TableMap::from_csv_str(include_str!("../data/square_collapse.csv"), &space).unwrap();
    (space, map)
}

/// An affine map of `[-1, 1]` into itself.
fn self_affine() -> impl Strategy<Value = Affine> {
    (-1.0f64..=1.0, -1.0f64..=1.0).prop_map(|(a, u)| Affine::new(a, u * (1.0 - a.abs())))
}

fn catalog_kind() -> impl Strategy<Value = Gauge> {
    (0..8usize).prop_map(|k| Gauge::catalog()[k])
}

fn fast_decay() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (0.5f64..3.0, -0.8f64..0.8)
            .prop_map(|(start, ratio)| Generator::Geometric { start, ratio }),
        (0.1f64..2.0, 0.0f64..0.8)
            .prop_map(|(amplitude, decay)| Generator::Oscillating { amplitude, decay }),
        (-0.8f64..0.8, -1.0f64..1.0, -2.0f64..2.0)
            .prop_map(|(a, c, seed)| Generator::AffineOrbit { a, c, seed }),
    ]
}

fn monotone_decay() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (0.5f64..3.0, 0.1f64..0.97)
            .prop_map(|(start, ratio)| Generator::Geometric { start, ratio }),
        (0.5f64..20.0).prop_map(|shift| Generator::Inverse { shift }),
        (0.05f64..2.0).prop_map(|scale| Generator::Harmonic { scale }),
        (1.1f64..3.0).prop_map(|exponent| Generator::PowerSums { exponent }),
        (0.1f64..0.9, -1.0f64..1.0, -2.0f64..2.0).prop_map(|(a, c, seed)| Generator::AffineOrbit {
            a,
            c,
            seed
        }),
    ]
}

fn corpus_member(len: usize) -> impl Strategy<Value = (Generator, SequencePrefix<Interval>)> {
    (0..204usize, 0..4u64).prop_map(move |(k, seed)| {
        let g = corpus(len, seed).swap_remove(k);
        (g.generator, g.prefix)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn example_distance_matches_values(a in 0u64..=4096, b in 0u64..=4096) {
        prop_assert_eq!(ExampleSpace.distance(&ex(a), &ex(b)), (val(a) - val(b)).abs());
    }

    #[test]
    fn example_triangle_inequality_is_exact(a in 0u64..600, b in 0u64..600, c in 0u64..600) {
        let s = ExampleSpace;
        prop_assert!(s.distance(&ex(a), &ex(c)) <= s.distance(&ex(a), &ex(b)) + s.distance(&ex(b), &ex(c)));
    }

    #[test]
    fn halving_identity_on_sampled_pairs(l in 1u64..1_000_000, gap in 1u64..1_000_000) {
        let (s, t) = (ExampleSpace, DoubleIndex);
        let (x, y) = (ex(l), ex(l + gap));
        let (t2x, t2y) = (iterate(&t, &x, 2), iterate(&t, &y, 2));
        prop_assert_eq!(s.distance(&t.apply(&t2x), &t.apply(&t2y)), s.distance(&t2x, &t2y) * q(1, 2));
    }

    #[test]
    fn gauges_are_symmetric_where_claimed(g in catalog_kind(), gamma in 0.0f64..3.0, a in 0u64..2000, b in 0u64..2000) {
        let s = ExampleSpace;
        let mut kinds = vec![g, Gauge::proinov(gamma).unwrap(), Gauge::generalized_proinov(gamma, gamma, 2, 2).unwrap()];
        kinds.retain(Gauge::is_symmetric);
        for k in kinds {
            prop_assert_eq!(evaluate_gauge(&k, &s, &DoubleIndex, &ex(a), &ex(b)), evaluate_gauge(&k, &s, &DoubleIndex, &ex(b), &ex(a)));
        }
    }

    #[test]
    fn dominating_gauges_bound_the_metric(
        alpha in 0.0f64..2.0, beta in 0.0f64..2.0, s in 1usize..4, t in 1usize..4, a in 0u64..2000, b in 0u64..2000,
    ) {
        let sp = ExampleSpace;
        let d = sp.distance(&ex(a), &ex(b));
        let kinds = [Gauge::MaitiPal, Gauge::Ciric, Gauge::Jachymski, Gauge::proinov(alpha).unwrap(), Gauge::generalized_proinov(alpha, beta, s, t).unwrap()];
        for k in kinds {
            prop_assert!(k.dominates_metric());
            prop_assert!(evaluate_gauge(&k, &sp, &DoubleIndex, &ex(a), &ex(b)) >= d.clone(), "{}", k);
        }
        for k in Gauge::catalog() {
            prop_assert!(evaluate_gauge(&k, &sp, &DoubleIndex, &ex(a), &ex(b)) >= q(0, 1));
        }
    }

    #[test]
    fn unit_section_generalized_gauge_is_proinov(gamma in 0.0f64..4.0, a in 0u64..5000, b in 0u64..5000) {
        let sp = ExampleSpace;
        let gp = Gauge::generalized_proinov(gamma, gamma, 1, 1).unwrap();
        let pr = Gauge::proinov(gamma).unwrap();
        prop_assert_eq!(evaluate_gauge(&gp, &sp, &DoubleIndex, &ex(a), &ex(b)), evaluate_gauge(&pr, &sp, &DoubleIndex, &ex(a), &ex(b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn axioms_hold_on_builtin_spaces(seed in any::<u64>(), lo in -5.0f64..5.0, width in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ex_pts = ExampleSpace.sample_points(24, 24, &mut rng);
        prop_assert!(verify_metric_axioms(&ExampleSpace, &ex_pts, 1e-9).verdict.is_consistent());
        let iv = Interval::new(lo, lo + width).unwrap();
        let iv_pts = iv.sample_points(0, 30, &mut rng);
        prop_assert!(verify_metric_axioms(&iv, &iv_pts, 1e-9).verdict.is_consistent());
        let (tab, _) = square();
        let tab_pts = tab.sample_points(4, 4, &mut rng);
        prop_assert!(verify_metric_axioms(&tab, &tab_pts, 1e-9).verdict.is_consistent());
    }

    #[test]
    fn iterate_equals_repeated_application(map in self_affine(), x in -1.0f64..=1.0, n in 0usize..=1000, i in 0u64..64, k in 0usize..=4) {
        let mut y = x;
        for _ in 0..n {
            y = map.apply(&y);
        }
        prop_assert_eq!(iterate(&map, &x, n), y);
        let mut p = ex(i);
        for _ in 0..n {
            p = DoubleIndex.apply(&p);
        }
        prop_assert_eq!(iterate(&DoubleIndex, &ex(i), n), p);
        let (_, tm) = square();
        let mut c = k % 4;
        for _ in 0..n {
            c = tm.apply(&c);
        }
        prop_assert_eq!(iterate(&tm, &(k % 4), n), c);
    }

    #[test]
    fn orbit_cache_is_append_only(map in self_affine(), x in -1.0f64..=1.0, a in 0usize..50, b in 0usize..50) {
        let mut o = Orbit::new(&map, x);
        let first = o.prefix(a).to_vec();
        let longer = o.prefix(a + b).to_vec();
        prop_assert_eq!(&longer[..first.len()], &first[..]);
        for w in longer.windows(2) {
            prop_assert_eq!(w[1], map.apply(&w[0]));
        }
    }

    #[test]
    fn orbit_diameter_is_nondecreasing(map in self_affine(), x in -1.0f64..=1.0, i in 1u64..200) {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        for s in 0..12 {
            prop_assert!(orbit_diameter(&iv, &map, &x, s) <= orbit_diameter(&iv, &map, &x, s + 1));
            prop_assert!(orbit_diameter(&ExampleSpace, &DoubleIndex, &ex(i), s) <= orbit_diameter(&ExampleSpace, &DoubleIndex, &ex(i), s + 1));
        }
    }

    #[test]
    fn picard_steps_contract_by_the_factor(alpha in 0.0f64..0.95, c in -1.0f64..1.0, x0 in -10.0f64..10.0) {
        let iv = Interval::new(-1e3, 1e3).unwrap();
        let r = picard_solve(&iv, &Affine::new(alpha, c), &x0, 1e-10, 100_000);
        prop_assert!(r.converged);
        prop_assert!(r.residual <= 1e-10);
        for w in r.steps.windows(2) {
            prop_assert!(w[1] <= alpha * w[0] + 1e-12, "{} after {}", w[1], w[0]);
        }
    }

    #[test]
    fn regular_prefixes_pass_limsup_for_every_kind(g in fast_decay(), len in 120usize..240) {
        let prefix = g.prefix(len);
        let h = tail_start(len);
        let reg_tol = 1e-3;
        let reg = asymptotic_regularity_estimate(&prefix, len - 1 - h, reg_tol).unwrap();
        prop_assume!(reg.holds);
        for gauge in Gauge::catalog() {
            let depth = gauge.probe_depth();
            let pairs: Vec<_> = (h..len - depth).flat_map(|p| (p + 1..len - depth).map(move |q| (p, q))).collect();
            let fam = PairFamily::new("tail", pairs);
            // each gauge exceeds d(x, y) by at most `coefficient * largest tail step`
            let coefficient = match gauge {
                Gauge::Proinov { gamma } => 2.0 * gamma,
                Gauge::GeneralizedProinov { alpha, beta, s, t } => alpha * s as f64 + beta * t as f64,
                _ => 1.0,
            };
            let lim = limsup_comparison(&gauge, &prefix, &fam, fam.len(), coefficient * reg_tol + 1e-12).unwrap();
            prop_assert!(lim.verdict.is_consistent(), "{} on {}", gauge, g.label());
        }
    }

    #[test]
    fn falsified_pair_checks_replay(map in (-1.5f64..1.5, -1.0f64..1.0).prop_map(|(a, c)| Affine::new(a, c)), seed in any::<u64>()) {
        let iv = Interval::new(-2.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = PairSample::draw(&iv, 0, 200, &mut rng);
        let eps = EpsGrid::default();
        let mk = check_meir_keeler(&iv, &map, &sample, &eps, &DeltaGrid::default());
        for w in mk.witnesses() {
            prop_assert!(replay_pair(&iv, &map, w).unwrap());
        }
        let b = check_banach(&iv, &map, &sample).unwrap();
        if let Some(w) = b.verdict.witness() {
            prop_assert!(replay_pair(&iv, &map, w).unwrap());
        }
        for gauge in [Gauge::Ciric, Gauge::Bianchini, Gauge::generalized_proinov(0.5, 1.0, 1, 2).unwrap()] {
            let sh = check_shifted_m_contraction(&iv, &map, &gauge, &sample, &eps, &DeltaGrid::default(), 0..=1).unwrap();
            for w in sh.witnesses() {
                prop_assert!(replay_pair(&iv, &map, w).unwrap());
            }
        }
    }

    #[test]
    fn falsified_orbit_checks_replay(map in (-1.2f64..1.2, -0.5f64..0.5).prop_map(|(a, c)| Affine::new(a, c)), x in -1.0f64..1.0) {
        let iv = Interval::new(-1e9, 1e9).unwrap();
        let budget = AsymptoticBudget { horizon: 48, nu_max: 4, ..AsymptoticBudget::default() };
        let eps = EpsGrid::default();
        let acf = check_asymptotic_final_type(&iv, &map, &x, &[], &budget, &eps, &DeltaGrid::default()).unwrap();
        let amc = check_asymptotic_m_contraction(&iv, &map, &Gauge::Jachymski, &x, &[], &budget, &eps, &DeltaGrid::default()).unwrap();
        for rep in [&acf, &amc] {
            for w in rep.profile.witnesses() {
                prop_assert!(replay_on_orbit(&iv, &map, w).unwrap());
            }
            if let Some(w) = rep.merge.witness() {
                prop_assert!(replay_on_orbit(&iv, &map, w).unwrap());
            }
        }
    }

    #[test]
    fn meir_keeler_deltas_match_brute_force(map in (-1.5f64..1.5, -1.0f64..1.0).prop_map(|(a, c)| Affine::new(a, c)), seed in any::<u64>()) {
        let iv = Interval::new(-2.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = PairSample::draw(&iv, 0, 150, &mut rng);
        let eps = EpsGrid::default();
        let grid = DeltaGrid::default();
        let prof = check_meir_keeler(&iv, &map, &sample, &eps, &grid);
        let pairs: Vec<(f64, f64)> = sample.pairs.iter().map(|&(i, j)| {
            let (x, y) = (sample.points[i], sample.points[j]);
            ((x - y).abs(), (map.apply(&x) - map.apply(&y)).abs())
        }).collect();
        for (entry, &e) in prof.entries.iter().zip(eps.values()) {
            let ok = |delta: f64| pairs.iter().all(|&(d, img)| !(e <= d && d < e + delta) || img < e);
            let admissible: Vec<f64> = grid.values(e).into_iter().filter(|&dl| ok(dl)).collect();
            // downward closure along the descending grid
            let values = grid.values(e);
            for (k, &dl) in values.iter().enumerate() {
                if ok(dl) {
                    prop_assert!(values[k..].iter().all(|&smaller| ok(smaller)));
                }
            }
            let unconstrained = pairs.iter().all(|&(d, img)| d < e || img < e);
            prop_assert_eq!(entry.delta_unbounded, unconstrained);
            match admissible.first() {
                None => prop_assert!(entry.verdict.is_falsified()),
                Some(&best) => {
                    prop_assert!(entry.verdict.is_consistent());
                    prop_assert_eq!(entry.best_delta, Some(best));
                }
            }
        }
    }

    #[test]
    fn banach_maps_are_meir_keeler(alpha in 0.05f64..0.95, sign in prop::bool::ANY, c in -0.5f64..0.5, seed in any::<u64>()) {
        let a = if sign { alpha } else { -alpha };
        let iv = Interval::new(-3.0, 3.0).unwrap();
        let map = Affine::new(a, c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = PairSample::draw(&iv, 0, 300, &mut rng);
        let b = check_banach(&iv, &map, &sample).unwrap();
        prop_assert!(b.verdict.is_consistent());
        let lip = b.lipschitz;
        let mk = check_meir_keeler(&iv, &map, &sample, &EpsGrid::default(), &DeltaGrid::default());
        for e in &mk.entries {
            let implied = 0.99 * e.eps * (1.0 - lip) / lip;
            let clipped = DeltaGrid::default().values(e.eps).into_iter().find(|&d| d <= implied);
            if let Some(dl) = clipped {
                prop_assert!(e.verdict.is_consistent());
                prop_assert!(e.delta_unbounded || e.best_delta.unwrap() >= dl);
            }
        }
    }

    #[test]
    fn asymptotic_m_contraction_implies_final_type(map in self_affine(), x in -1.0f64..=1.0, g in 0..6usize) {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let gauges: Vec<Gauge> = Gauge::catalog().into_iter().filter(Gauge::dominates_metric).collect();
        let gauge = gauges[g];
        let budget = AsymptoticBudget { horizon: 64, nu_max: 4, ..AsymptoticBudget::default() };
        let (eps, deltas) = (EpsGrid::default(), DeltaGrid::default());
        let amc = check_asymptotic_m_contraction(&iv, &map, &gauge, &x, &[], &budget, &eps, &deltas).unwrap();
        if amc.is_consistent() {
            let acf = check_asymptotic_final_type(&iv, &map, &x, &[], &budget, &eps, &deltas).unwrap();
            prop_assert!(acf.is_consistent(), "{:?} from {}", map, x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn threshold_form_matches_subsequence_form((g, prefix) in corpus_member(90), k in 0..8usize, e in 0..9usize) {
        let gauge = Gauge::catalog()[k];
        let eps = EpsGrid::default().values()[e];
        let tol = 1e-9;
        let table = GaugeTable::on_prefix(gauge, &prefix);
        let grid = EpsGrid::from_values(vec![eps]).unwrap();
        let n_max = 30;
        let threshold = check_m_contractive(&prefix, &table, &grid, &DeltaGrid::default(), n_max, tol).unwrap();
        let entry = &threshold.entries[0];
        let fam = critical_family(&prefix, &table, eps, n_max, tol).unwrap();
        let sub = subsequence_verdict(&prefix, &table, &fam, eps, eps / 4096.0, 0, tol).unwrap();
        let unsure = entry.verdict.stats().is_some_and(|s| s.indeterminate > 0) || sub.violated.is_none();
        prop_assume!(!unsure && sub.margin > tol);
        prop_assert_eq!(sub.violated, Some(entry.verdict.is_falsified()), "{} with {} at eps {}", g.label(), gauge, eps);
    }

    #[test]
    fn witness_search_mirrors_the_modulus((g, prefix) in corpus_member(300), nu in prop::collection::vec(1usize..5, 1..4)) {
        let mut all_none = true;
        let mut all_finite = true;
        for &e in EpsGrid::default().values() {
            let w = lemma_criterion_witness_search(&prefix, e, &nu);
            let m = cauchy_modulus(&prefix, e);
            prop_assert_eq!(w.is_none(), m.is_some(), "{} at eps {}", g.label(), e);
            all_none &= w.is_none();
            all_finite &= m.is_some();
            if let Some(w) = w {
                for st in &w.stages {
                    prop_assert!(st.d_st > e && st.d_s_tprev <= e);
                    prop_assert_eq!(st.d_st, prefix.dist(st.s, st.t));
                    prop_assert_eq!(st.d_s_tprev, prefix.dist(st.s, st.t - 1));
                }
            }
        }
        prop_assert_eq!(all_none, all_finite);
    }

    #[test]
    fn geraghty_routes_agree_on_samples(g in monotone_decay(), len in 40usize..160, n_max in 0usize..6) {
        let prefix = g.prefix(len);
        prop_assume!(check_monotone_contractive(&prefix).unwrap().is_consistent());
        let rep = check_geraghty(&prefix, &EpsGrid::default(), &DeltaGrid::default(), n_max, 1e-6, &[]).unwrap();
        prop_assume!(rep.standing.is_consistent());
        for (entry, ratio) in rep.profile.entries.iter().zip(&rep.ratio_route) {
            let unsure = ratio.indeterminate > 0 || entry.verdict.stats().is_some_and(|s| s.indeterminate > 0);
            if !unsure {
                prop_assert_eq!(entry.verdict.is_falsified(), ratio.violated(), "{} at eps {}", g.label(), entry.eps);
            }
        }
    }

    #[test]
    fn contractive_prefixes_with_vanishing_gauge_gap_are_regular(g in fast_decay(), len in 150usize..260, k in 0..8usize) {
        let prefix = g.prefix(len);
        let gauge = Gauge::catalog()[k];
        prop_assume!(check_monotone_contractive(&prefix).unwrap().is_consistent());
        let table = GaugeTable::on_prefix(gauge, &prefix);
        let prof = check_m_contractive(&prefix, &table, &EpsGrid::default(), &DeltaGrid::default(), 4, 1e-9).unwrap();
        prop_assume!(prof.is_consistent());
        let fam = PairFamily::consecutive(0, len - 1 - gauge.probe_depth());
        prop_assume!(limsup_comparison(&gauge, &prefix, &fam, 0, 1e-6).unwrap().verdict.is_consistent());
        let reg = asymptotic_regularity_estimate(&prefix, len / 4, 1e-6).unwrap();
        prop_assert!(reg.holds, "{}: tail step {}", g.label(), reg.tail_max);
    }
}

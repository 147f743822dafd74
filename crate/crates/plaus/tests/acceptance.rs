//! Acceptance suite. One test per criterion; each prints a single
//! pass/fail line (visible with `--nocapture`) and pins its tolerances in
//! code. Everything is exact rational arithmetic, so "tolerance" means
//! structural equality throughout.

use std::time::Instant;

use plaus::audit::{
    check_algebraic, check_cpl5, check_cps_axioms, check_monotonic_otimes, AuditOptions, AxiomId,
};
use plaus::bayesnet::{
    check_representable, compatible, construct_bn, d_separated, d_separated_trails,
    dsep_counterexample, dsep_soundness_check, extract_cpts, reconstruct, Dag,
};
use plaus::conditioning::{extend_lower_upper, extend_plp, Strictness};
use plaus::exec::{map_ordered, Exec};
use plaus::gen;
use plaus::independence::{
    check_semigraphoid, indep_events, indep_rv, noninteract_events, type1_indep, SgMode,
};
use plaus::{fixtures, DomainSpec, Event, Worlds};

fn domains() -> Vec<DomainSpec> {
    vec![
        DomainSpec::probability(),
        DomainSpec::ranking(),
        DomainSpec::possibility_min(),
        DomainSpec::possibility_prod(),
        DomainSpec::plp(&["i0", "i1", "i2"]).unwrap(),
    ]
}

fn labeled_worlds(m: usize) -> Worlds {
    let names: Vec<String> = (0..m).map(|i| format!("w{i}")).collect();
    Worlds::labeled(&names)
}

fn rat(n: i64, d: i64) -> plaus::Rat {
    plaus::rational::rat(n, d)
}

/// Criterion 1: the five algebraic constructions pass the full
/// conditioning-space, coherence, and algebra audits on at least 100
/// seeded random measures each, over 2, 4, and 8 worlds.
#[test]
fn criterion_1_axiom_suite() {
    let t0 = Instant::now();
    let doms = domains();
    let mut plan: Vec<(usize, usize, u64)> = Vec::new();
    for (d, _) in doms.iter().enumerate() {
        for (si, m) in [2usize, 4, 8].into_iter().enumerate() {
            for seed in 0..34u64 {
                plan.push((d, m, seed * 97 + si as u64));
            }
        }
    }
    let counts = map_ordered(Exec::Auto, plan.len(), |i| {
        let (d, m, seed) = plan[i];
        let domain = &doms[d];
        let cps = gen::random_builtin_cps(domain, labeled_worlds(m), seed).unwrap();
        let opts = AuditOptions { seed: seed ^ 0xacce97, samples: 700, ..Default::default() };
        for r in check_cps_axioms(&cps, &opts).unwrap() {
            assert!(r.holds, "{} fails {} on seed {seed}, {m} worlds: {:?}",
                domain.carrier_name(), r.axiom, r.witness);
        }
        for r in check_algebraic(&cps, &opts).unwrap() {
            assert!(r.holds, "{} fails {} on seed {seed}, {m} worlds: {:?}",
                domain.carrier_name(), r.axiom, r.witness);
        }
        let c5 = check_cpl5(&cps, &opts).unwrap();
        assert!(c5.holds, "{} fails coherence on seed {seed}: {:?}",
            domain.carrier_name(), c5.witness);
        d
    });
    for (d, dom) in doms.iter().enumerate() {
        let per = counts.iter().filter(|&&x| x == d).count();
        assert!(per >= 100, "{} audited only {per} instances", dom.carrier_name());
    }
    println!(
        "criterion 1: PASS — {} instances across 5 constructions, zero violations ({:.2?})",
        counts.len(),
        t0.elapsed()
    );
}

/// Criterion 2: the four negative results, reproduced exactly.
#[test]
fn criterion_2_negative_results() {
    let t0 = Instant::now();
    let opts = AuditOptions::default();

    // (a) lenient lower probability fails coherence at the documented
    // witness with the documented values
    let fam = fixtures::three_world_family();
    let w = fam.worlds().clone();
    let cps = extend_lower_upper(&fam, Strictness::SomePositive).unwrap();
    assert!(!check_cpl5(&cps, &opts).unwrap().holds);
    let u = w.singleton(0);
    let up = w.singleton(1);
    let v = w.event_from_indices(&[0, 1]);
    let full = w.full_event();
    let d = cps.domain().clone();
    let pl_ucap = cps.pl(&u.inter(&v), &full).unwrap();
    let pl_upcap = cps.pl(&up.inter(&v), &full).unwrap();
    assert_eq!(pl_ucap.as_interval().lower, rat(0, 1));
    assert_eq!(pl_upcap.as_interval().lower, rat(0, 1));
    let pl_u_v = cps.pl(&u, &v).unwrap();
    let pl_up_v = cps.pl(&up, &v).unwrap();
    assert_eq!(pl_u_v.as_interval().lower, rat(2, 3));
    assert_eq!(pl_up_v.as_interval().lower, rat(1, 3));
    // the biconditional breaks in exactly this orientation
    assert!(d.leq(&pl_up_v, &pl_u_v));
    assert!(!d.leq(&pl_upcap, &pl_ucap));

    // (b) the join-obstruction search succeeds for the interval
    // representation
    let obs = fixtures::interval_join_obstruction_family();
    let ocps = extend_lower_upper(&obs, Strictness::SomePositive).unwrap();
    let alg = check_algebraic(&ocps, &opts).unwrap();
    let alg1 = alg.iter().find(|r| r.axiom == AxiomId::Alg1).unwrap();
    assert!(!alg1.holds, "expected a join obstruction");
    // the reported witness re-checks: equal component values, unequal
    // joins
    let wt = alg1.witness.as_ref().unwrap();
    let (u1, u2) = (wt.get_event("U1").unwrap(), wt.get_event("U2").unwrap());
    let (u3, u4) = (wt.get_event("U3").unwrap(), wt.get_event("U4").unwrap());
    let vv = wt.get_event("V").unwrap();
    assert!(u1.is_disjoint_from(u2) && u3.is_disjoint_from(u4));
    assert_eq!(ocps.pl(u1, vv), ocps.pl(u3, vv));
    assert_eq!(ocps.pl(u2, vv), ocps.pl(u4, vv));
    assert_ne!(ocps.pl(&u1.union(u2), vv), ocps.pl(&u3.union(u4), vv));

    // (c) the nonstandard table: noninteractive but dependent
    let ns = fixtures::nonstandard_two_world_cps();
    let nsw = ns.worlds().clone();
    let b = nsw.singleton(1);
    let nsfull = nsw.full_event();
    assert!(noninteract_events(&ns, &b, &b, &nsfull).unwrap());
    assert!(!indep_events(&ns, &b, &b, &nsfull));

    // (d) the double coin: type-1 independent, noninteractive, family
    // dependent, with the undefined-entry witness
    let coin = fixtures::double_coin_family();
    let cw = coin.worlds().clone();
    assert!(type1_indep(&coin, &[0], &[1], &[]).unwrap());
    let ccps = extend_plp(&coin).unwrap();
    let cfull = cw.full_event();
    for i in [false, true] {
        for j in [false, true] {
            let ue = cw.assignment_event(&[(0, i)]);
            let ve = cw.assignment_event(&[(1, j)]);
            assert!(noninteract_events(&ccps, &ue, &ve, &cfull).unwrap());
        }
    }
    assert!(!indep_rv(&ccps, &[0], &[1], &[]).unwrap());
    let h1 = cw.assignment_event(&[(0, true)]);
    let h2 = cw.assignment_event(&[(1, true)]);
    let raw = ccps.plp_raw_conditional(&h1, &h2).unwrap();
    assert_eq!(raw[1], None, "the tails member's entry must be undefined");
    assert_eq!(ccps.plp_raw_conditional(&h1, &cfull).unwrap()[1], Some(rat(0, 1)));

    println!("criterion 2: PASS — all four negative results reproduced ({:.2?})", t0.elapsed());
}

/// Criterion 3: the semi-graphoid rules hold exhaustively on three
/// variables and on sampled four-variable instances with at least 500
/// antecedent-satisfying cases per rule, for every algebraic domain.
#[test]
fn criterion_3_semigraphoid() {
    let t0 = Instant::now();
    let doms = domains();
    map_ordered(Exec::Auto, doms.len(), |di| {
        let domain = &doms[di];
        // exhaustive, three variables
        for seed in 0..6u64 {
            let cps = gen::random_block_structured(domain, 3, seed * 13 + di as u64).unwrap();
            let opts = AuditOptions::seeded(seed);
            for r in check_semigraphoid(&cps, 3, SgMode::Exhaustive, &opts).unwrap() {
                assert!(r.holds, "{}: {} violated: {:?}", domain.carrier_name(), r.axiom, r.witness);
                assert!(r.hits > 0);
            }
        }
        // sampled, four variables, ≥ 500 antecedent hits per rule
        let mut hits = [0u64; 4];
        let mut seed = 0u64;
        while hits.iter().any(|&h| h < 500) {
            assert!(seed < 40, "{}: sampling stalled at {hits:?}", domain.carrier_name());
            let cps = gen::random_block_structured(domain, 4, seed * 7 + 1 + di as u64).unwrap();
            let opts = AuditOptions { seed, samples: 1250, ..Default::default() };
            let reports = check_semigraphoid(&cps, 4, SgMode::Sampled, &opts).unwrap();
            for (i, r) in reports.iter().enumerate() {
                assert!(r.holds, "{}: {} violated: {:?}", domain.carrier_name(), r.axiom, r.witness);
                hits[i] += r.hits;
            }
            seed += 1;
        }
    });
    println!(
        "criterion 3: PASS — CIRV1–4 hold exhaustively (n=3) and sampled (n=4, ≥500 hits/rule) \
         on all 5 domains ({:.2?})",
        t0.elapsed()
    );
}

/// Criterion 4: independence implies noninteractivity everywhere;
/// noninteractivity implies independence on the carriers with full
/// cancellation, with stored counterexamples for the two others; standard
/// algebraic monotone spaces are coherent; bottom/top behave as join and
/// product identities on realized ranges.
#[test]
fn criterion_4_lemma_suite() {
    let t0 = Instant::now();
    let doms = domains();
    let mut ni1_checked = 0u64;
    let mut ni2_checked = 0u64;

    for domain in &doms {
        let alg4p = domain.satisfies_alg4_prime();
        for seed in 0..8u64 {
            let cps = gen::random_builtin_cps(domain, labeled_worlds(4), seed * 11 + 3).unwrap();
            let w = cps.worlds().clone();
            for u_mask in 0u64..16 {
                for v_mask in 0u64..16 {
                    for vp_mask in 0u64..16 {
                        let u = Event::from_mask(4, u_mask);
                        let v = Event::from_mask(4, v_mask);
                        let vp = Event::from_mask(4, vp_mask);
                        let ind = indep_events(&cps, &u, &v, &vp);
                        let ni = noninteract_events(&cps, &u, &v, &vp).unwrap();
                        if ind {
                            ni1_checked += 1;
                            assert!(
                                ni,
                                "{} seed {seed}: independent but interactive at \
                                 ({u_mask},{v_mask},{vp_mask})",
                                domain.carrier_name()
                            );
                        }
                        if alg4p && ni {
                            ni2_checked += 1;
                            assert!(
                                ind,
                                "{} seed {seed}: noninteractive but dependent at \
                                 ({u_mask},{v_mask},{vp_mask})",
                                domain.carrier_name()
                            );
                        }
                    }
                }
            }
            let _ = w;
        }
        // sampled triples on eight worlds
        for seed in 0..3u64 {
            let cps = gen::random_builtin_cps(domain, labeled_worlds(8), seed * 5 + 1).unwrap();
            let mut rng = gen::SplitMix::new(seed ^ 0x41);
            for _ in 0..500 {
                let u = Event::from_mask(8, rng.below(256));
                let v = Event::from_mask(8, rng.below(256));
                let vp = Event::from_mask(8, rng.below(256));
                let ind = indep_events(&cps, &u, &v, &vp);
                let ni = noninteract_events(&cps, &u, &v, &vp).unwrap();
                if ind {
                    ni1_checked += 1;
                    assert!(ni, "{} large-space NI1 failure", domain.carrier_name());
                }
                if alg4p && ni {
                    ni2_checked += 1;
                    assert!(ind, "{} large-space NI2 failure", domain.carrier_name());
                }
            }
        }
    }

    // stored counterexamples for the two restricted-cancellation domains
    {
        let w = Worlds::labeled(&["a", "b"]);
        let m = plaus::Measure::possibility(w.clone(), vec![rat(1, 1), rat(1, 2)]).unwrap();
        let cps =
            plaus::conditioning::extend_possibility(&m, plaus::conditioning::PossVariant::Min)
                .unwrap();
        let b = w.singleton(1);
        let full = w.full_event();
        assert!(noninteract_events(&cps, &b, &b, &full).unwrap());
        assert!(!indep_events(&cps, &b, &b, &full));

        let coin = fixtures::double_coin_family();
        let cw = coin.worlds().clone();
        let ccps = extend_plp(&coin).unwrap();
        let h1 = cw.assignment_event(&[(0, true)]);
        let h2 = cw.assignment_event(&[(1, true)]);
        let cfull = cw.full_event();
        assert!(noninteract_events(&ccps, &h1, &h2, &cfull).unwrap());
        assert!(!indep_events(&ccps, &h1, &h2, &cfull));
    }

    // standard + algebraic + monotone ⇒ coherent; identity laws hold on
    // realized ranges. The indexed-family product is genuinely not
    // monotone (absorption of `*` breaks comparability against top), so
    // the premise side of the implication is checked only where it holds;
    // coherence itself holds for all five constructions regardless.
    for domain in &doms {
        let opts = AuditOptions::seeded(9);
        let mono = check_monotonic_otimes(domain, &[], &opts);
        let plp = matches!(domain.kind(), plaus::DomainKind::Plp { .. });
        assert_eq!(
            mono.holds, !plp,
            "monotonicity expectation wrong for {}: {:?}",
            domain.carrier_name(),
            mono.witness
        );
        for seed in 0..4u64 {
            let cps = gen::random_builtin_cps(domain, labeled_worlds(4), seed + 77).unwrap();
            let opts = AuditOptions::seeded(seed);
            assert!(check_cpl5(&cps, &opts).unwrap().holds);
            let alg = check_algebraic(&cps, &opts).unwrap();
            for r in alg {
                if matches!(r.axiom, AxiomId::AddIdentity | AxiomId::MulIdentity) {
                    assert!(r.holds, "{} identity law fails", domain.carrier_name());
                }
            }
        }
    }

    println!(
        "criterion 4: PASS — NI1 on {ni1_checked} independent triples, NI2 on {ni2_checked} \
         noninteractive triples, counterexamples reproduced ({:.2?})",
        t0.elapsed()
    );
}

fn three_node_shapes() -> Vec<Dag> {
    let n = ["X1", "X2", "X3"];
    vec![
        Dag::new(&n, &[]).unwrap(),
        Dag::new(&n, &[("X1", "X2")]).unwrap(),
        Dag::new(&n, &[("X1", "X2"), ("X2", "X3")]).unwrap(),
        Dag::new(&n, &[("X2", "X1"), ("X2", "X3")]).unwrap(),
        Dag::new(&n, &[("X1", "X3"), ("X2", "X3")]).unwrap(),
        Dag::new(&n, &[("X1", "X2"), ("X1", "X3"), ("X2", "X3")]).unwrap(),
    ]
}

/// Criterion 5: reconstruction round-trips — random representable tables
/// reconstruct to a compatible space whose extracted tables agree on all
/// admissible rows, and measures survive construction, extraction, and
/// reconstruction exactly.
#[test]
fn criterion_5_representation_round_trip() {
    let t0 = Instant::now();
    let doms = domains();
    let mut dags = three_node_shapes();
    for seed in 0..6u64 {
        dags.push(gen::random_dag(4, seed * 3 + 2, 1, 2));
    }
    let mut plan: Vec<(usize, usize, u64)> = Vec::new();
    for d in 0..doms.len() {
        for g in 0..dags.len() {
            for seed in 0..4u64 {
                plan.push((d, g, seed));
            }
        }
    }
    let trials = map_ordered(Exec::Auto, plan.len(), |i| {
        let (d, g, seed) = plan[i];
        let domain = &doms[d];
        let dag = &dags[g];
        let bn = gen::random_representable_bn(dag, domain, seed * 131 + g as u64)
            .expect("representable tables exist");
        assert!(check_representable(&bn).unwrap().iter().all(|r| r.holds));
        let recon = reconstruct(&bn).unwrap();
        assert!(
            compatible(&recon, dag).unwrap(),
            "{} on shape {g}: reconstruction incompatible",
            domain.carrier_name()
        );
        let back = extract_cpts(&recon, dag).unwrap();
        for (orig, got) in bn.tables.iter().zip(&back.tables) {
            for (r, row) in orig.rows.iter().enumerate() {
                let pa = recon.worlds().assignment_event(&orig.row_assignment(r));
                if recon.in_fprime(&pa) {
                    assert_eq!(
                        row, &got.rows[r],
                        "{} shape {g} seed {seed}: row {r} of node {} drifted",
                        domain.carrier_name(), bn.dag.name(orig.node)
                    );
                }
            }
        }
        1usize
    });
    let total: usize = trials.iter().sum();
    assert!(total >= 200, "only {total} round-trip trials ran");

    // measure → construction → tables → reconstruction is the identity:
    // full conditional-table comparison up to eight worlds, exhaustive
    // joints plus sampled conditionals at sixteen
    let mut exact = 0usize;
    for domain in &doms {
        for n in [2usize, 3, 4] {
            for seed in 0..3u64 {
                let cps = gen::random_builtin_cps(domain, gen::binary_worlds(n), seed * 19 + 5)
                    .unwrap();
                let order: Vec<usize> = (0..n).collect();
                let dag = construct_bn(&cps, &order).unwrap();
                let bn = extract_cpts(&cps, &dag).unwrap();
                let recon = reconstruct(&bn).unwrap();
                let m = 1usize << n;
                if n <= 3 {
                    let ne = 1u64 << m;
                    for v_mask in 0..ne {
                        let v = Event::from_mask(m, v_mask);
                        for u_mask in 0..ne {
                            let u = Event::from_mask(m, u_mask);
                            assert_eq!(
                                cps.pl(&u, &v),
                                recon.pl(&u, &v),
                                "{} n={n} seed {seed}: mismatch at ({u_mask}|{v_mask})",
                                domain.carrier_name()
                            );
                        }
                    }
                } else {
                    let full = Event::full(m);
                    for w in 0..m {
                        let s = Event::from_mask(m, 1 << w);
                        assert_eq!(cps.pl(&s, &full), recon.pl(&s, &full));
                    }
                    let mut rng = gen::SplitMix::new(seed ^ 0x5eed);
                    for _ in 0..2000 {
                        let v = Event::from_mask(m, rng.below(1 << m));
                        let u = Event::from_mask(m, rng.below(1 << m));
                        assert_eq!(
                            cps.pl(&u, &v),
                            recon.pl(&u, &v),
                            "{} n={n} seed {seed}: sampled mismatch",
                            domain.carrier_name()
                        );
                    }
                }
                exact += 1;
            }
        }
    }
    println!(
        "criterion 5: PASS — {total} table round-trips and {exact} exact measure round-trips \
         ({:.2?})",
        t0.elapsed()
    );
}

/// Criterion 6: d-separation is sound on random compatible
/// reconstructions and complete via verified counterexamples, for the
/// probability and ranking domains, over 50 random graphs of up to five
/// nodes.
#[test]
fn criterion_6_dsep_soundness_and_completeness() {
    let t0 = Instant::now();
    let dag_list: Vec<Dag> = (0..50)
        .map(|i| gen::random_dag(2 + i % 4, 1000 + i as u64 * 17, 2, 5))
        .collect();
    let domains = [DomainSpec::probability(), DomainSpec::ranking()];

    // soundness
    let sound_hits: Vec<u64> = map_ordered(Exec::Auto, dag_list.len(), |i| {
        let dag = &dag_list[i];
        let mut hits = 0;
        for domain in &domains {
            let opts = AuditOptions::seeded(i as u64 * 3 + 7);
            let rep = dsep_soundness_check(dag, domain, 2, &opts).unwrap();
            assert!(
                rep.holds,
                "soundness violated on graph {i} over {}: {:?}",
                domain.carrier_name(),
                rep.witness
            );
            hits += rep.hits;
        }
        hits
    });
    let separated_checked: u64 = sound_hits.iter().sum();

    // completeness
    let cex_counts: Vec<(u64, u64)> = map_ordered(Exec::Auto, dag_list.len(), |i| {
        let dag = &dag_list[i];
        let n = dag.len();
        let mut built = 0u64;
        let mut skipped = 0u64;
        for domain in &domains {
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    let rest: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
                    for zmask in 0u64..1 << rest.len() {
                        let z: Vec<usize> = rest
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| zmask >> j & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect();
                        let sep = d_separated(dag, &[x], &[y], &z).unwrap();
                        let cex = dsep_counterexample(dag, domain, x, y, &z).unwrap();
                        if sep {
                            assert!(cex.is_none(), "counterexample for a separated query");
                            skipped += 1;
                        } else {
                            let bn = cex.expect("non-separated query needs a counterexample");
                            let recon = reconstruct(&bn).unwrap();
                            assert!(
                                compatible(&recon, dag).unwrap(),
                                "graph {i}: counterexample incompatible over {}",
                                domain.carrier_name()
                            );
                            assert!(
                                !indep_rv(&recon, &[x], &[y], &z).unwrap(),
                                "graph {i}: counterexample does not violate independence"
                            );
                            built += 1;
                        }
                    }
                }
            }
        }
        (built, skipped)
    });
    let built: u64 = cex_counts.iter().map(|c| c.0).sum();
    let separated: u64 = cex_counts.iter().map(|c| c.1).sum();
    assert!(built > 0 && separated > 0);
    println!(
        "criterion 6: PASS — soundness on {separated_checked} separated triples, {built} verified \
         counterexamples, {separated} separated queries correctly refused ({:.2?})",
        t0.elapsed()
    );
}

/// Criterion 7: the two d-separation implementations agree on 10,000
/// randomized graph/query pairs with up to seven nodes.
#[test]
fn criterion_7_dual_dsep_agreement() {
    let t0 = Instant::now();
    let agreements = map_ordered(Exec::Auto, 10_000, |i| {
        let mut rng = gen::SplitMix::new(0xd5e9 + i as u64);
        let n = 2 + (rng.below(6) as usize); // 2..=7 nodes
        let dag = gen::random_dag(n, rng.next_u64(), 2, 5);
        // random disjoint role assignment with nonempty sides: a mix of
        // singleton and set-valued queries
        let (mut x, mut y, mut z) = (Vec::new(), Vec::new(), Vec::new());
        for v in 0..n {
            match rng.below(5) {
                0 => x.push(v),
                1 => y.push(v),
                2 => z.push(v),
                _ => {}
            }
        }
        if x.is_empty() {
            let v = rng.below(n as u64) as usize;
            x.push(v);
            y.retain(|&u| u != v);
            z.retain(|&u| u != v);
        }
        if y.is_empty() {
            let v = (0..n).find(|v| !x.contains(v)).unwrap_or(0);
            if x.contains(&v) {
                return 1usize; // two-node graph collapsed; skip
            }
            y.push(v);
            z.retain(|&u| u != v);
        }
        let fast = d_separated(&dag, &x, &y, &z).unwrap();
        let reference = d_separated_trails(&dag, &x, &y, &z).unwrap();
        assert_eq!(fast, reference, "implementations disagree on pair {i}");
        1usize
    });
    let total: usize = agreements.iter().sum();
    assert_eq!(total, 10_000);
    println!(
        "criterion 7: PASS — both d-separation implementations agree on 10000 pairs ({:.2?})",
        t0.elapsed()
    );
}

/// Extra guard used by several criteria: built-in domains really are
/// network-compatible and rich, so the reconstruction and counterexample
/// machinery stands on audited ground.
#[test]
fn domain_preconditions_hold() {
    let t0 = Instant::now();
    for domain in domains() {
        let opts = AuditOptions::default();
        for r in plaus::audit::check_bn_compatible(&domain, &opts).unwrap() {
            assert!(r.holds, "{} fails {}: {:?}", domain.carrier_name(), r.axiom, r.witness);
        }
        assert!(plaus::audit::check_rich(&domain, 7).holds);
    }
    // reconstructed spaces satisfy the space axioms and are standard
    for domain in domains() {
        for seed in 0..3u64 {
            let dag = gen::random_dag(3, seed + 40, 1, 2);
            let bn = gen::random_representable_bn(&dag, &domain, seed).unwrap();
            let recon = reconstruct(&bn).unwrap();
            let reports = check_cps_axioms(&recon, &AuditOptions::seeded(seed)).unwrap();
            for r in reports {
                assert!(r.holds, "{} reconstruction fails {}", domain.carrier_name(), r.axiom);
            }
            for r in check_algebraic(&recon, &AuditOptions::seeded(seed)).unwrap() {
                assert!(r.holds, "{} reconstruction fails {}", domain.carrier_name(), r.axiom);
            }
        }
    }
    println!("domain preconditions: PASS ({:.2?})", t0.elapsed());
}

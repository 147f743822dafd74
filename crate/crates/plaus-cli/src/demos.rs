//! The named demonstration examples. Each demo replays a documented
//! phenomenon and asserts its outcome; a mismatch surfaces as a failed
//! entry and a nonzero exit status.

use plaus::audit::{check_algebraic, check_cpl5, check_cps_axioms, AuditOptions, AxiomId};
use plaus::conditioning::{extend_lower_upper, extend_plp, Strictness};
use plaus::error::Error;
use plaus::fixtures;
use plaus::independence::{indep_events, indep_rv, noninteract_events, type1_indep};
use plaus::report::ReportDocument;
use plaus::Value;

/// Lenient lower/upper-probability conditioning: coherence fails on the
/// three-world family with the documented witness, the strict variant
/// refuses to condition there at all, and the join-obstruction search
/// proves no `⊕` exists for the interval representation.
pub fn lower_probability(doc: &mut ReportDocument, opts: &AuditOptions) -> Result<(), Error> {
    doc.push_info("demo", "lower: lower/upper probability conditioning");
    let fam = fixtures::three_world_family();
    let worlds = fam.worlds().clone();
    let cps = extend_lower_upper(&fam, Strictness::SomePositive)?;

    let u = worlds.singleton(0); // {a}
    let up = worlds.singleton(1); // {b}
    let v = worlds.event_from_indices(&[0, 1]); // {a,b}
    let full = worlds.full_event();

    let rep = check_cpl5(&cps, opts)?;
    doc.push_outcome("coherence-fails-for-lenient-conditioning", !rep.holds);

    // the documented witness values, verified directly
    let pl_uv_w = cps.pl(&u.inter(&v), &full).unwrap();
    let pl_upv_w = cps.pl(&up.inter(&v), &full).unwrap();
    let pl_u_v = cps.pl(&u, &v).unwrap();
    let pl_up_v = cps.pl(&up, &v).unwrap();
    doc.push_info("Pl({a}∩{a,b}|W)", pl_uv_w.to_string());
    doc.push_info("Pl({b}∩{a,b}|W)", pl_upv_w.to_string());
    doc.push_info("Pl({a}|{a,b})", pl_u_v.to_string());
    doc.push_info("Pl({b}|{a,b})", pl_up_v.to_string());
    let zeros = pl_uv_w.as_interval().lower == plaus::rational::rat(0, 1)
        && pl_upv_w.as_interval().lower == plaus::rational::rat(0, 1);
    doc.push_outcome("unconditional-lowers-are-zero", zeros);
    let strict_order = pl_u_v.as_interval().lower == plaus::rational::rat(2, 3)
        && pl_up_v.as_interval().lower == plaus::rational::rat(1, 3);
    doc.push_outcome("conditional-lowers-are-2/3-and-1/3", strict_order);
    let d = cps.domain();
    let violated = d.leq(&pl_up_v, &pl_u_v) && !d.leq(&pl_upv_w, &pl_uv_w);
    doc.push_outcome("biconditional-violated-at-the-witness", violated);

    // the strict variant cannot condition on {a,b} at all
    let strict = extend_lower_upper(&fam, Strictness::AllPositive)?;
    doc.push_outcome("strict-variant-excludes-{a,b}", !strict.in_fprime(&v));
    // and is no longer acceptable: nonbottom conditionals point at
    // inadmissible intersections
    let strict_reports = check_cps_axioms(&strict, opts)?;
    let acc4 = strict_reports.iter().find(|r| r.axiom == AxiomId::Acc4).unwrap();
    doc.push_outcome("strict-variant-not-acceptable", !acc4.holds);

    // no join operation exists for the interval representation
    let obstruction = fixtures::interval_join_obstruction_family();
    let ocps = extend_lower_upper(&obstruction, Strictness::SomePositive)?;
    let alg = check_algebraic(&ocps, opts)?;
    let alg1 = alg.iter().find(|r| r.axiom == AxiomId::Alg1).unwrap();
    doc.push_outcome("interval-representation-has-no-join", !alg1.holds);
    if let Some(w) = &alg1.witness {
        doc.push_info("join-obstruction", w.render());
    }
    Ok(())
}

/// The double-headed-or-double-tailed coin: type-1 independence and
/// noninteractivity hold, family independence fails with the undefined
/// entry as witness, and near-deterministic biases restore it.
pub fn double_coin(doc: &mut ReportDocument) -> Result<(), Error> {
    doc.push_info("demo", "coin: double-headed or double-tailed, tossed twice");
    let fam = fixtures::double_coin_family();
    let worlds = fam.worlds().clone();

    let t1 = type1_indep(&fam, &[0], &[1], &[])?;
    doc.push_info("type1-independent", if t1 { "yes" } else { "no" });
    doc.push_outcome("type1-independence-holds", t1);

    let cps = extend_plp(&fam)?;
    let full = worlds.full_event();
    let mut ni_all = true;
    for i in [false, true] {
        for j in [false, true] {
            let u = worlds.assignment_event(&[(0, i)]);
            let v = worlds.assignment_event(&[(1, j)]);
            ni_all &= noninteract_events(&cps, &u, &v, &full)?;
        }
    }
    doc.push_info("noninteractive", if ni_all { "yes" } else { "no" });
    doc.push_outcome("noninteractivity-holds", ni_all);

    let ind = indep_rv(&cps, &[0], &[1], &[])?;
    doc.push_info("family-independent", if ind { "yes" } else { "no" });
    doc.push_outcome("family-independence-fails", !ind);

    let h1 = worlds.assignment_event(&[(0, true)]);
    let h2 = worlds.assignment_event(&[(1, true)]);
    let raw = cps.plp_raw_conditional(&h1, &h2).unwrap();
    let rendered: Vec<String> = raw
        .iter()
        .map(|e| e.as_ref().map_or("*".to_string(), plaus::rational::fmt_rat))
        .collect();
    doc.push_info("f_{X1=h|X2=h}", format!("({})", rendered.join(",")));
    doc.push_outcome("tails-member-entry-is-undefined", raw[1].is_none());
    let unconditional = cps.plp_raw_conditional(&h1, &full).unwrap();
    doc.push_outcome(
        "unconditional-tails-entry-is-zero",
        unconditional[1] == Some(plaus::rational::rat(0, 1)),
    );

    let near = fixtures::near_deterministic_coin_family();
    let ncps = extend_plp(&near)?;
    doc.push_outcome(
        "almost-deterministic-biases-restore-independence",
        type1_indep(&near, &[0], &[1], &[])? && indep_rv(&ncps, &[0], &[1], &[])?,
    );
    Ok(())
}

/// The nonstandard conditional probability table with `μ(b|b) = 1` while
/// `μ(b) = 0`: noninteractivity without independence.
pub fn nonstandard(doc: &mut ReportDocument, opts: &AuditOptions) -> Result<(), Error> {
    doc.push_info("demo", "nonstandard: μ(a)=1, μ(b)=0, μ(b|b)=1");
    let cps = fixtures::nonstandard_two_world_cps();
    let worlds = cps.worlds().clone();
    let b = worlds.singleton(1);
    let full = worlds.full_event();

    let ni = noninteract_events(&cps, &b, &b, &full)?;
    doc.push_info("noninteractive", if ni { "yes" } else { "no" });
    doc.push_outcome("b-does-not-interact-with-itself", ni);

    let ind = indep_events(&cps, &b, &b, &full);
    doc.push_info("independent", if ind { "yes" } else { "no" });
    doc.push_outcome("b-is-not-independent-of-itself", !ind);
    doc.push_info("Pl({b}|{b})", cps.pl(&b, &b).unwrap().to_string());
    doc.push_info(
        "Pl({b})",
        cps.pl(&b, &full).map(|v: Value| v.to_string()).unwrap(),
    );

    let reports = check_cps_axioms(&cps, opts)?;
    let standard = reports.iter().find(|r| r.axiom == AxiomId::Standard).unwrap();
    doc.push_outcome("space-is-nonstandard", !standard.holds);
    let witness_is_b = standard
        .witness
        .as_ref()
        .and_then(|w| w.get_event("U"))
        .is_some_and(|e| *e == b);
    doc.push_outcome("nonstandardness-witness-is-{b}", witness_is_b);
    Ok(())
}

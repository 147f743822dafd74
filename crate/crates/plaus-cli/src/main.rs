//! Command-line front end: audit measure files against the axiom
//! families, answer independence and d-separation queries, build and
//! reconstruct networks, emit counterexamples, and replay the named
//! demonstration examples.
//!
//! Exit status: 0 on success, 1 when a check or asserted reproduction
//! fails, 2 on input errors.

mod demos;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plaus::audit::{audit_all, AuditOptions};
use plaus::bayesnet::{
    construct_bn, d_separated, d_separated_trails, dsep_counterexample, extract_cpts, reconstruct,
};
use plaus::conditioning::{
    extend_lower_upper, extend_plp, extend_possibility, extend_probability, extend_ranking,
    PossVariant, Strictness,
};
use plaus::error::Error;
use plaus::fileio;
use plaus::independence::{indep_rv, noninteract_events, type1_indep};
use plaus::report::ReportDocument;
use plaus::{Cps, Measure};

#[derive(Parser)]
#[command(name = "plaus", version, about = "algebraic conditional plausibility toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainFlag {
    #[value(alias = "prob")]
    Probability,
    #[value(alias = "rank")]
    Ranking,
    #[value(alias = "poss-min")]
    PossibilityMin,
    #[value(alias = "poss-prod")]
    PossibilityProd,
    Plp,
    /// Lower/upper probability, conditioning only on events every member
    /// makes positive.
    LowerAll,
    /// Lower/upper probability, conditioning on events some member makes
    /// positive.
    LowerSome,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Common {
    /// Seed for sampled audits (falls back to $PLAUS_SEED, then 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Tuples drawn per axiom in sampled mode.
    #[arg(long, default_value_t = 1500)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full axiom suite on a measure file.
    Audit {
        #[arg(long, value_enum)]
        domain: DomainFlag,
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Answer an independence query: `indep X1 ; X2 | Z`,
    /// `ni U ; V | V'`, `iev U ; V | V'`, or `type1 X1 ; X2 | Z`.
    Indep {
        #[arg(long, value_enum)]
        domain: DomainFlag,
        file: String,
        query: String,
        #[command(flatten)]
        common: Common,
    },
    /// Answer a d-separation query `X ; Y | Z` against a network file.
    Dsep {
        #[arg(long)]
        net: String,
        query: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build the network induced by a variable ordering and print it with
    /// its tables.
    Build {
        #[arg(long, value_enum)]
        domain: DomainFlag,
        /// Comma-separated variable ordering; defaults to declaration
        /// order.
        #[arg(long)]
        order: Option<String>,
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Reconstruct the measure represented by a network file and print
    /// its joint values.
    Reconstruct {
        #[arg(long)]
        net: String,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a network witnessing that a non-d-separated query is not a
    /// shared independence.
    Counterexample {
        #[arg(long)]
        net: String,
        query: String,
        #[command(flatten)]
        common: Common,
    },
    /// Replay the named examples and assert their documented outcomes.
    Demo {
        /// One of: lower, coin, nonstandard, all.
        #[arg(default_value = "all")]
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn seed_of(common: &Common) -> u64 {
    common.seed.unwrap_or_else(|| {
        std::env::var("PLAUS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1)
    })
}

fn audit_options(common: &Common) -> AuditOptions {
    AuditOptions { seed: seed_of(common), samples: common.samples, ..AuditOptions::default() }
}

fn build_cps(flag: DomainFlag, measure: &Measure) -> Result<Cps, Error> {
    match flag {
        DomainFlag::Probability => extend_probability(measure),
        DomainFlag::Ranking => extend_ranking(measure),
        DomainFlag::PossibilityMin => extend_possibility(measure, PossVariant::Min),
        DomainFlag::PossibilityProd => extend_possibility(measure, PossVariant::Prod),
        DomainFlag::Plp => extend_plp(measure),
        DomainFlag::LowerAll => extend_lower_upper(measure, Strictness::AllPositive),
        DomainFlag::LowerSome => extend_lower_upper(measure, Strictness::SomePositive),
    }
}

fn emit(doc: &ReportDocument, format: Format) -> ExitCode {
    match format {
        Format::Structured => print!("{}", doc.to_structured()),
        Format::Text => print!("{}", doc.to_text()),
    }
    if doc.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Audit { domain, file, common } => {
            let text = read(&file)?;
            let measure = fileio::parse_measure(&text)?;
            let cps = build_cps(domain, &measure)?;
            let opts = audit_options(&common);
            let mut doc = ReportDocument::new(text.as_bytes(), opts.seed);
            doc.push_info("input", &file);
            doc.push_info("domain", cps.domain().carrier_name());
            doc.push_info("worlds", cps.worlds().len().to_string());
            for r in audit_all(&cps, &opts)? {
                doc.push_report(&r, Some(cps.worlds()));
            }
            Ok(emit(&doc, common.format))
        }
        Cmd::Indep { domain, file, query, common } => {
            let text = read(&file)?;
            let measure = fileio::parse_measure(&text)?;
            let opts = audit_options(&common);
            let mut doc = ReportDocument::new(text.as_bytes(), opts.seed);
            let (kind, rest) = query
                .trim()
                .split_once(' ')
                .ok_or_else(|| Error::BadQuery("empty query".into()))?;
            match kind {
                "indep" => {
                    let cps = build_cps(domain, &measure)?;
                    let names = cps
                        .worlds()
                        .var_names()
                        .ok_or_else(|| {
                            Error::BadQuery("variable queries need binary variables".into())
                        })?
                        .to_vec();
                    let (x, y, z) = fileio::parse_var_query(&names, rest)?;
                    let ans = indep_rv(&cps, &x, &y, &z)?;
                    doc.push_info("query", query.trim());
                    doc.push_info("independent", if ans { "yes" } else { "no" });
                }
                "iev" => {
                    let cps = build_cps(domain, &measure)?;
                    let (u, v, vp) = fileio::parse_event_query(cps.worlds(), rest)?;
                    let ans = plaus::independence::indep_events(&cps, &u, &v, &vp);
                    doc.push_info("query", query.trim());
                    doc.push_info("independent", if ans { "yes" } else { "no" });
                }
                "ni" => {
                    let cps = build_cps(domain, &measure)?;
                    let (u, v, vp) = fileio::parse_event_query(cps.worlds(), rest)?;
                    let ans = noninteract_events(&cps, &u, &v, &vp)?;
                    doc.push_info("query", query.trim());
                    doc.push_info("noninteractive", if ans { "yes" } else { "no" });
                }
                "type1" => {
                    let names = measure
                        .worlds()
                        .var_names()
                        .ok_or_else(|| {
                            Error::BadQuery("variable queries need binary variables".into())
                        })?
                        .to_vec();
                    let (x, y, z) = fileio::parse_var_query(&names, rest)?;
                    let ans = type1_indep(&measure, &x, &y, &z)?;
                    doc.push_info("query", query.trim());
                    doc.push_info("type1-independent", if ans { "yes" } else { "no" });
                }
                other => {
                    return Err(Error::BadQuery(format!(
                        "unknown query kind `{other}` (expected indep, iev, ni, or type1)"
                    )))
                }
            }
            Ok(emit(&doc, common.format))
        }
        Cmd::Dsep { net, query, common } => {
            let text = read(&net)?;
            let (dag, _) = fileio::parse_network_structure(&text)?;
            let (x, y, z) = fileio::parse_var_query(dag.names(), &query)?;
            let fast = d_separated(&dag, &x, &y, &z)?;
            let reference = d_separated_trails(&dag, &x, &y, &z)?;
            let mut doc = ReportDocument::new(text.as_bytes(), seed_of(&common));
            doc.push_info("query", query.trim());
            doc.push_info("separated", if fast { "yes" } else { "no" });
            doc.push_outcome("dual-implementation-agreement", fast == reference);
            Ok(emit(&doc, common.format))
        }
        Cmd::Build { domain, order, file, common } => {
            let text = read(&file)?;
            let measure = fileio::parse_measure(&text)?;
            let cps = build_cps(domain, &measure)?;
            let names = cps
                .worlds()
                .var_names()
                .ok_or_else(|| Error::BadQuery("building needs binary variables".into()))?
                .to_vec();
            let order_idx: Vec<usize> = match order {
                None => (0..names.len()).collect(),
                Some(o) => o
                    .split(',')
                    .map(|t| {
                        names
                            .iter()
                            .position(|n| n == t.trim())
                            .ok_or_else(|| Error::UnknownVariable(t.trim().to_string()))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let dag = construct_bn(&cps, &order_idx)?;
            let bn = extract_cpts(&cps, &dag)?;
            print!("{}", fileio::render_network(&bn));
            let _ = common;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reconstruct { net, common } => {
            let text = read(&net)?;
            let bn = fileio::parse_network(&text)?;
            let reports = plaus::bayesnet::check_representable(&bn)?;
            if let Some(bad) = reports.iter().find(|r| !r.holds) {
                let mut doc = ReportDocument::new(text.as_bytes(), seed_of(&common));
                doc.push_report(bad, None);
                return Ok(emit(&doc, common.format));
            }
            let cps = reconstruct(&bn)?;
            let worlds = cps.worlds().clone();
            for (w, v) in cps.joint_values().unwrap().iter().enumerate() {
                println!("world ({}) {}", worlds.world_name(w), v);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Counterexample { net, query, common } => {
            let text = read(&net)?;
            let (dag, domain) = fileio::parse_network_structure(&text)?;
            let domain = domain.ok_or_else(|| Error::BadQuery(
                "network file needs a domain header".into(),
            ))?;
            let (x, y, z) = fileio::parse_var_query(dag.names(), &query)?;
            if x.len() != 1 || y.len() != 1 {
                return Err(Error::BadQuery(
                    "counterexamples are built for single-variable sides".into(),
                ));
            }
            match dsep_counterexample(&dag, &domain, x[0], y[0], &z)? {
                None => {
                    let mut doc = ReportDocument::new(text.as_bytes(), seed_of(&common));
                    doc.push_info("query", query.trim());
                    doc.push_info(
                        "counterexample",
                        "none: the query is d-separated, soundness forbids one",
                    );
                    Ok(emit(&doc, common.format))
                }
                Some(bn) => {
                    print!("{}", fileio::render_network(&bn));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Cmd::Demo { name, common } => {
            let opts = audit_options(&common);
            let mut doc = ReportDocument::new(name.as_bytes(), opts.seed);
            match name.as_str() {
                "lower" => demos::lower_probability(&mut doc, &opts)?,
                "coin" => demos::double_coin(&mut doc)?,
                "nonstandard" => demos::nonstandard(&mut doc, &opts)?,
                "all" => {
                    demos::lower_probability(&mut doc, &opts)?;
                    demos::double_coin(&mut doc)?;
                    demos::nonstandard(&mut doc, &opts)?;
                }
                other => return Err(Error::BadQuery(format!("unknown demo `{other}`"))),
            }
            Ok(emit(&doc, common.format))
        }
    }
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("cannot read {path}: {e}")))
}

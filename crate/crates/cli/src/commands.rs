use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use gyrokit::algebra::{identity_suite, IdentityReport, Law};
use gyrokit::einstein::{einstein_interface, AdditionVariant, EinsteinConfig, Velocity, VelocitySampler};
use gyrokit::set::SubsetLiteral;
use gyrokit::subgyro::{
    classify, coset_family, coset_partition, enumerate_subgyrogroups, EnumerationStrategy, ENUMERATION_LIMIT,
    POWERSET_LIMIT,
};
use gyrokit::subset::{
    check_coadd_chain, check_inverse_coset, check_neutrality, check_neutrality_of, check_product_chain,
    check_reassociation, find_inverse_coset_neighborhood, scan_coadd_chain, scan_inverse_coset, scan_neutrality,
    scan_product_chain, scan_reassociation, ChainReport, GyroSubset, Mode, ScanScope, ScanSummary, Search,
    EXHAUSTIVE_SCAN_LIMIT,
};
use gyrokit::table::{fixtures, read_table, verify_table_with_limit, MAX_ORDER};
use gyrokit::{ElementSet, FiniteGyrogroup};

use crate::report::{to_value, Outcome};
use crate::{Check, Command, CosetArgs, EinsteinArgs, Scope, SearchArg, SetcheckArgs, Strategy, SubgyroArgs, TableArgs};

pub fn run(command: &Command, limit: Option<usize>) -> Result<Outcome> {
    match command {
        Command::Verify(args) => verify(args, limit),
        Command::Subgyro(args) => subgyro(args, limit),
        Command::Cosets(args) => cosets(args, limit),
        Command::Einstein(args) => einstein(args),
        Command::Setcheck(args) => setcheck(args, limit),
    }
}

fn load_rows(args: &TableArgs) -> Result<Vec<Vec<usize>>> {
    match (&args.input, &args.fixture) {
        (Some(path), _) => Ok(read_table(path)?),
        (None, Some(name)) => {
            let text = fixtures::source(name).with_context(|| {
                let names: Vec<_> = fixtures::names().collect();
                format!("unknown fixture {name:?}; available: {}", names.join(", "))
            })?;
            Ok(gyrokit::table::parse_table(text)?)
        }
        (None, None) => bail!("either --input or --fixture is required"),
    }
}

/// Loads and verifies a table that later steps rely on being a gyrogroup.
fn load_gyrogroup(args: &TableArgs, limit: Option<usize>) -> Result<FiniteGyrogroup> {
    let rows = load_rows(args)?;
    let (verdict, g) = verify_table_with_limit(&rows, limit.unwrap_or(MAX_ORDER))?;
    match g {
        Some(g) => Ok(g),
        None => {
            let axioms: Vec<_> = verdict.failed_axioms().iter().map(|a| a.label()).collect();
            bail!("input table is not a gyrogroup (fails {}); run `verify` for witnesses", axioms.join(", "))
        }
    }
}

fn parse_subset(text: &str, n: usize, what: &str) -> Result<ElementSet> {
    let literal: SubsetLiteral = text.parse().with_context(|| format!("bad {what} subset"))?;
    literal.into_set(n).with_context(|| format!("bad {what} subset"))
}

fn set_lines(label: &str, s: &ElementSet) -> String {
    format!("{label}{{{s}}}")
}

fn verify(args: &TableArgs, limit: Option<usize>) -> Result<Outcome> {
    let rows = load_rows(args)?;
    let (verdict, g) = verify_table_with_limit(&rows, limit.unwrap_or(MAX_ORDER))?;
    let mut report = json!({
        "order": rows.len(),
        "valid": verdict.valid,
        "failures": to_value(&verdict.failures),
    });
    let mut out = Outcome::new(Value::Null);
    out.line(format!("order: {}", rows.len()));
    if let Some(g) = &g {
        report["identity"] = g.identity_element().into();
        report["distinct_gyrations"] = g.distinct_gyrations().len().into();
        report["associative"] = g.is_associative().into();
        out.line(format!("identity: {}", g.identity_element()));
        out.line(format!("distinct gyrations: {}", g.distinct_gyrations().len()));
        out.line(format!("associative: {}", g.is_associative()));
    }
    for f in &verdict.failures {
        let w: Vec<String> = f.witness.iter().map(|x| x.to_string()).collect();
        out.line(format!("violation: {} at ({})", f.axiom.label(), w.join(", ")));
    }
    out.report = report;
    out.verdict("table-is-gyrogroup", verdict.valid);
    Ok(out)
}

fn subgyro(args: &SubgyroArgs, limit: Option<usize>) -> Result<Outcome> {
    let g = load_gyrogroup(&args.table, limit)?;
    let n = g.order();
    let mut out = Outcome::new(Value::Null);
    if let Some(text) = &args.subset {
        let s = parse_subset(text, n, "--subset")?;
        let info = classify(&g, &s)?;
        out.line(format!("subset {{{s}}}"));
        out.line(format!("subgyrogroup: {}", info.is_subgyrogroup));
        if let Some(w) = info.closure_witness {
            out.line(format!("closure witness: {w}"));
        }
        if info.is_subgyrogroup {
            out.line(format!("L-subgyrogroup: {}", info.is_l.unwrap_or(false)));
            out.line(format!("strong: {}", info.is_strong.unwrap_or(false)));
            if let Some(w) = info.l_witness.or(info.strong_witness) {
                out.line(format!("gyration witness: {w}"));
            }
        }
        out.verdict("subset-is-subgyrogroup", info.is_subgyrogroup);
        out.report = json!({ "order": n, "subset": to_value(&info) });
        return Ok(out);
    }

    let strategy = match args.strategy {
        Strategy::Closure => EnumerationStrategy::Closure,
        Strategy::Powerset => EnumerationStrategy::Powerset,
    };
    let limit = limit.unwrap_or(ENUMERATION_LIMIT);
    let found = enumerate_subgyrogroups(&g, strategy, limit)?;
    let count = |f: fn(&gyrokit::subgyro::SubgyrogroupInfo) -> bool| found.iter().filter(|i| f(i)).count();
    let l = count(|i| i.is_l == Some(true));
    let strong = count(|i| i.is_strong == Some(true));
    out.line(format!("order: {n}"));
    out.line(format!("subgyrogroups: {} (L: {l}, strong: {strong})", found.len()));
    for info in &found {
        let flag = |b: Option<bool>, s: &str| if b == Some(true) { s.to_string() } else { "-".repeat(s.len()) };
        out.line(format!("  {} {} {{{}}}", flag(info.is_l, "L"), flag(info.is_strong, "S"), info.elements));
    }
    let mut report = json!({
        "order": n,
        "strategy": to_value(&args.strategy),
        "count": found.len(),
        "l_count": l,
        "strong_count": strong,
        "subgyrogroups": to_value(&found),
    });
    if n <= POWERSET_LIMIT {
        let other = match strategy {
            EnumerationStrategy::Closure => EnumerationStrategy::Powerset,
            EnumerationStrategy::Powerset => EnumerationStrategy::Closure,
        };
        let agree = enumerate_subgyrogroups(&g, other, limit)? == found;
        report["strategies_agree"] = agree.into();
        out.verdict("closure-and-powerset-agree", agree);
    }
    out.report = report;
    Ok(out)
}

fn cosets(args: &CosetArgs, limit: Option<usize>) -> Result<Outcome> {
    let g = load_gyrogroup(&args.table, limit)?;
    let n = g.order();
    let h = parse_subset(&args.subset, n, "--subset")?;
    let info = classify(&g, &h)?;
    let mut out = Outcome::new(Value::Null);
    out.line(set_lines("H = ", &h));
    if info.is_l != Some(true) {
        let family = coset_family(&g, &h)?;
        if let Some(w) = info.closure_witness {
            out.line(format!("not a subgyrogroup: {w}"));
        } else if let Some(w) = info.l_witness {
            out.line(format!("not an L-subgyrogroup: {w}"));
        }
        out.line(format!("distinct translates a ⊕ H: {}, overlapping pairs: {}", family.cosets.len(), family.overlaps.len()));
        out.verdict("subset-is-l-subgyrogroup", false);
        out.report = json!({ "order": n, "subset": to_value(&info), "family": to_value(&family) });
        return Ok(out);
    }
    let p = coset_partition(&g, &h)?;
    for (rep, block) in p.reps.iter().zip(&p.blocks) {
        out.line(format!("  {rep} ⊕ H = {{{block}}}"));
    }
    out.line(format!("|G/H| = {}", p.len()));
    out.verdict("subset-is-l-subgyrogroup", true);
    out.verdict("cosets-partition-carrier", p.len() * h.len() == n);
    out.report = json!({ "order": n, "subset": to_value(&info), "blocks": p.len(), "partition": to_value(&p) });
    Ok(out)
}

fn suite_summary(r: &IdentityReport<Velocity>) -> Value {
    json!({
        "all_passed": r.all_passed(),
        "failing_laws": r.failing_laws().iter().map(|l| l.label()).collect::<Vec<_>>(),
        "max_residual": r.max_residual(),
        "samples": r.samples,
        "tolerance": r.tolerance,
        "results": to_value(&r.results),
        "witnesses": to_value(&r.witnesses),
    })
}

fn einstein(args: &EinsteinArgs) -> Result<Outcome> {
    let cfg = EinsteinConfig { c: args.c, tol: args.tol, max_beta: args.max_beta, seed: args.seed };
    cfg.validate()?;
    if args.samples == 0 {
        bail!("--samples must be positive");
    }
    let mut sampler = VelocitySampler::new(&cfg)?;
    let triples: Vec<_> = sampler.triples().take(args.samples as usize).collect();
    let g = einstein_interface(&cfg)?;
    let standard = identity_suite(&g, triples.iter().cloned(), cfg.tol)?;
    let variant = identity_suite(&g.with_variant(AdditionVariant::GammaV), triples.iter().cloned(), cfg.tol)?;
    let variant_rejected = !variant.passed(Law::Inverse) || !variant.passed(Law::LeftCancellation);

    let mut out = Outcome::new(json!({
        "suites": {
            AdditionVariant::GammaU.label(): suite_summary(&standard),
            AdditionVariant::GammaV.label(): suite_summary(&variant),
        },
    }));
    out.line(format!("c = {}, max_beta = {}, tol = {:e}, samples = {}, seed = {}", cfg.c, cfg.max_beta, cfg.tol, args.samples, cfg.seed));
    for (name, r) in [("gamma-u", &standard), ("gamma-v", &variant)] {
        out.line(format!("{name}: max residual {:.3e}", r.max_residual()));
        for (law, res) in &r.results {
            if !res.passed {
                out.line(format!("  {law}: {} of {} checks failed", res.failures, res.checks));
            }
        }
    }
    out.verdict("gamma-u-passes-suite", standard.all_passed());
    out.verdict("gamma-v-fails-inverse-or-left-cancellation", variant_rejected);
    Ok(out)
}

fn setcheck(args: &SetcheckArgs, limit: Option<usize>) -> Result<Outcome> {
    let g = load_gyrogroup(&args.table, limit)?;
    let supplied = args.w.is_some() || args.u.is_some() || args.v.is_some() || args.h.is_some();
    if supplied {
        single_check(&g, args)
    } else {
        scans(&g, args)
    }
}

fn scans(g: &FiniteGyrogroup, args: &SetcheckArgs) -> Result<Outcome> {
    let n = g.order();
    let sampled = ScanScope::Sampled { samples: args.samples, seed: args.seed };
    let scope = match args.scope {
        Scope::Auto if n <= EXHAUSTIVE_SCAN_LIMIT => ScanScope::Exhaustive,
        Scope::Auto | Scope::Sampled => sampled,
        Scope::Exhaustive => ScanScope::Exhaustive,
    };
    type ScanFn = fn(&FiniteGyrogroup, ScanScope) -> Result<ScanSummary, gyrokit::subset::SubsetError>;
    let all: [(Check, ScanFn); 5] = [
        (Check::Reassociation, scan_reassociation),
        (Check::InverseCoset, scan_inverse_coset),
        (Check::Neutrality, scan_neutrality),
        (Check::ProductChain, scan_product_chain),
        (Check::CoaddChain, scan_coadd_chain),
    ];
    let mut summaries = Vec::new();
    for (check, scan) in all {
        if args.check == Check::All || args.check == check {
            summaries.push(scan(g, scope)?);
        }
    }
    let mut out = Outcome::new(json!({ "order": n, "scans": to_value(&summaries) }));
    for s in &summaries {
        out.line(format!("{}: {} instances ({}), {} violations", s.check, s.instances, s.scope, s.violations));
        if let Some(v) = &s.first_violation {
            out.line(format!("  first violation: {v}"));
        }
        out.verdict(format!("{}-scan", s.check), s.passed());
    }
    Ok(out)
}

fn single_check(g: &FiniteGyrogroup, args: &SetcheckArgs) -> Result<Outcome> {
    let n = g.order();
    let mode = if args.diagnostic { Mode::Diagnostic } else { Mode::Enforce };
    let get = |value: &Option<String>, flag: &str| -> Result<GyroSubset<'_>> {
        let text = value.as_deref().with_context(|| format!("{flag} is required for --check {:?}", args.check))?;
        Ok(GyroSubset::new(g, parse_subset(text, n, flag)?)?)
    };
    let optional = |value: &Option<String>, flag: &str| -> Result<Option<GyroSubset<'_>>> {
        value.as_ref().map(|_| get(value, flag)).transpose()
    };
    let mut out = Outcome::new(Value::Null);
    match args.check {
        Check::All => bail!("choose a specific --check when supplying subsets"),
        Check::Reassociation => {
            let r = check_reassociation(&get(&args.w, "--w")?, &get(&args.u, "--u")?, &get(&args.v, "--v")?, mode)?;
            out.line(format!("(W⊕U)⊕V = {{{}}}", r.lhs));
            out.line(format!("W⊕(U⊕V) = {{{}}}", r.rhs));
            out.verdict("reassociation", r.verdict.holds);
            out.report = to_value(&r);
        }
        Check::InverseCoset => {
            let h = get(&args.h, "--h")?;
            let v = get(&args.v, "--v")?;
            let r = match optional(&args.w, "--w")? {
                Some(w) => check_inverse_coset(&h, &v, &w, mode)?,
                None => {
                    let search = match args.search {
                        SearchArg::Greedy => Search::Greedy,
                        SearchArg::Exhaustive => Search::Exhaustive,
                    };
                    find_inverse_coset_neighborhood(&h, &v, search)?
                }
            };
            out.line(set_lines("W = ", &r.w));
            out.line(format!("⊖(W⊕H) = {{{}}}, H⊕V = {{{}}}", r.lhs, r.rhs));
            out.line(format!("W gyr-invariant: {}, symmetric: {}", r.w_gyr_invariant, r.w_symmetric));
            out.verdict("inverse-coset-inclusion", r.verdict.holds);
            out.report = to_value(&r);
        }
        Check::Neutrality => {
            let h = get(&args.h, "--h")?;
            let u = get(&args.u, "--u")?;
            let r = match optional(&args.v, "--v")? {
                Some(v) => check_neutrality_of(&h, &u, &v, mode)?,
                None => check_neutrality(&h, &u)?,
            };
            out.line(set_lines("V = ", &r.v));
            out.verdict("inner-neutrality", r.inner.holds);
            out.verdict("outer-neutrality", r.outer.holds);
            out.report = to_value(&r);
        }
        Check::ProductChain => {
            let r = check_product_chain(&get(&args.w, "--w")?, &get(&args.u, "--u")?, &get(&args.h, "--h")?, mode)?;
            chain_lines(&mut out, &r);
            out.verdict("product-chain", r.holds);
            out.report = to_value(&r);
        }
        Check::CoaddChain => {
            let a = args.element.context("--element is required for --check coadd-chain")?;
            let r = check_coadd_chain(
                &get(&args.w, "--w")?,
                &get(&args.u, "--u")?,
                &get(&args.v, "--v")?,
                &get(&args.h, "--h")?,
                a,
                mode,
            )?;
            chain_lines(&mut out, &r);
            out.verdict("coadd-chain", r.holds);
            out.report = to_value(&r);
        }
    }
    let unmet: Vec<String> = out
        .report
        .get("unmet")
        .and_then(Value::as_array)
        .into_iter()
        .flatten()
        .map(|u| format!("unmet hypothesis: {} ({})", u["hypothesis"].as_str().unwrap_or("?"), u["detail"].as_str().unwrap_or("")))
        .collect();
    for line in unmet {
        out.line(line);
    }
    Ok(out)
}

fn chain_lines(out: &mut Outcome, r: &ChainReport) {
    for (i, s) in r.steps.iter().enumerate() {
        let mark = if s.verdict.holds { "ok" } else { "FAILS" };
        out.line(format!(
            "  {}. {} {} {}  [{}]  {{{}}} vs {{{}}}",
            i + 1,
            s.lhs_expr,
            s.verdict.relation.symbol(),
            s.rhs_expr,
            mark,
            s.lhs,
            s.rhs
        ));
    }
}

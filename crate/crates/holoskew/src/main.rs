//! Command-line front end: build groups from compact specs, run the brace
//! census, T(G) computations, the individual constructions, and the
//! internal cross-checks. Reports are JSON (schema 1) or a flattened TSV
//! projection, written to stdout or `--out`.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use holoskew::biskew::{beta_report, biskew_report, brace_iso_classes};
use holoskew::catalog::{catalog_up_to_12, identify};
use holoskew::construct::{
    ault_watters_gamma, bilinear_delta, central_gamma, childs_gamma, delta_gamma, lift_rgf,
    power_family_rgf, semi_gamma,
};
use holoskew::error::Error;
use holoskew::gamma::{
    circle_from_gamma, enumerate_gammas, gamma_from_circle, gamma_from_regular, kernel_gamma,
    opposite_gamma, GammaFunction, RelativeGammaFunction,
};
use holoskew::group::{is_isomorphic, is_normal, is_subgroup, subgroup_closure, Subgroup};
use holoskew::holomorph::{
    enumerate_regular_subgroups, is_normal_in_hol, miller_set, t_direct, t_miller, Holomorph,
};
use holoskew::oracle::brute_force_circle_tables;
use holoskew::perm::inner;
use holoskew::radical::{radical_ring, ring_report};
use holoskew::specparse::parse_spec;

const DEFAULT_CENSUS_BOUND: usize = 32;
const DEFAULT_CONSTRUCT_BOUND: usize = 64;

#[derive(Parser)]
#[command(name = "holoskew", version, about = "Skew braces via regular subgroups of the holomorph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Group-order bound (default 32 for censuses, 64 for constructions).
    #[arg(long, global = true)]
    bound: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TgMethod {
    Direct,
    Miller,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Childs,
    Lift,
    Central,
    Semi,
    Delta,
    AultWatters,
    Ring,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every skew brace with the given additive group.
    Enumerate {
        /// Group spec, e.g. c4, ab2x2, d3, q8, heis3, modext(3,2), sd(c9,c2,inv), file:PATH.
        spec: String,
    },
    /// Compute |T(G)| and the set of normal regular subgroups.
    Tg {
        spec: String,
        #[arg(long, value_enum, default_value_t = TgMethod::Both)]
        method: TgMethod,
    },
    /// Run one of the gamma-function constructions.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        spec: String,
        /// Generators of the subgroup K, comma-separated element indices.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        /// Generators of the subgroup H, comma-separated element indices.
        #[arg(long, value_delimiter = ',')]
        h: Option<Vec<usize>>,
        /// Power-family parameter s (semi/lift).
        #[arg(long)]
        s: Option<i64>,
        /// Power-family parameter t (semi/lift).
        #[arg(long)]
        t: Option<i64>,
        /// Bilinear form rows over the quotient basis, e.g. "0,1;2,0" (delta).
        #[arg(long)]
        form: Option<String>,
        /// Scalar c for the radical ring x*y = c x y on a cyclic group (ring).
        #[arg(long)]
        scalar: Option<usize>,
    },
    /// Run the internal cross-checks (enumerator vs oracle, report agreement).
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let (report, tsv) = match &cli.command {
        Command::Enumerate { spec } => cmd_enumerate(spec, cli.bound)?,
        Command::Tg { spec, method } => cmd_tg(spec, *method, cli.bound)?,
        Command::Construct {
            kind,
            spec,
            k,
            h,
            s,
            t,
            form,
            scalar,
        } => cmd_construct(*kind, spec, k, h, *s, *t, form.as_deref(), *scalar, cli.bound)?,
        Command::Check => cmd_check(cli.bound)?,
    };
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Internal(format!("serialization failed: {}", e)))?;
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::new();
            for row in &tsv {
                s.push_str(&row.join("\t"));
                s.push('\n');
            }
            s
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{}", text),
    }
    Ok(())
}

fn group_json(spec: &str, name: &str, order: usize) -> Value {
    json!({ "spec": spec, "name": name, "order": order })
}

fn cmd_enumerate(spec: &str, bound: Option<usize>) -> Result<(Value, Vec<Vec<String>>), Error> {
    let bound = bound.unwrap_or(DEFAULT_CENSUS_BOUND);
    let g = parse_spec(spec)?;
    if g.order() > bound {
        return Err(Error::Bound(format!(
            "census bound is {}, group has order {}",
            bound,
            g.order()
        )));
    }
    let name = g.name.clone();
    let order = g.order();
    let hol = Holomorph::build(g);
    let regulars = enumerate_regular_subgroups(&hol);
    let classes = brace_iso_classes(&hol, &regulars);
    let orbit_of = |idx: usize| -> usize {
        classes
            .iter()
            .position(|c| c.contains(&idx))
            .expect("every brace lies in an Aut-orbit")
    };

    let mut braces = Vec::new();
    let mut tsv = vec![vec![
        "index".to_string(),
        "circle_iso_type".to_string(),
        "biskew".to_string(),
        "beta".to_string(),
        "orbit".to_string(),
    ]];
    for (idx, reg) in regulars.iter().enumerate() {
        let gamma = gamma_from_regular(&hol, reg);
        let brace = circle_from_gamma(&hol, &gamma)?;
        let circle_type = identify(&brace.circle);
        let bis = biskew_report(&hol, &gamma)?;
        let beta = beta_report(&hol, &gamma, &regulars)?;
        let orbit = orbit_of(idx);
        tsv.push(vec![
            idx.to_string(),
            circle_type.clone(),
            bis.is_biskew().to_string(),
            beta.holds().to_string(),
            orbit.to_string(),
        ]);
        braces.push(json!({
            "index": idx,
            "gamma": gamma.values,
            "circle_iso_type": circle_type,
            "biskew": bis,
            "beta": beta,
            "orbit": orbit,
        }));
    }
    let report = json!({
        "schema": 1,
        "command": "enumerate",
        "group": group_json(spec, &name, order),
        "bound": bound,
        "brace_count": braces.len(),
        "orbit_count": classes.len(),
        "braces": braces,
    });
    Ok((report, tsv))
}

fn cmd_tg(
    spec: &str,
    method: TgMethod,
    bound: Option<usize>,
) -> Result<(Value, Vec<Vec<String>>), Error> {
    let bound = bound.unwrap_or(DEFAULT_CENSUS_BOUND);
    let g = parse_spec(spec)?;
    if g.order() > bound {
        return Err(Error::Bound(format!(
            "census bound is {}, group has order {}",
            bound,
            g.order()
        )));
    }
    let name = g.name.clone();
    let order = g.order();
    let hol = Holomorph::build(g);

    let direct = match method {
        TgMethod::Direct | TgMethod::Both => Some(t_direct(&hol)?),
        TgMethod::Miller => None,
    };
    let (miller, members) = match method {
        TgMethod::Miller | TgMethod::Both => {
            let regulars = enumerate_regular_subgroups(&hol);
            let set = miller_set(&hol, &regulars);
            let t = t_miller(&hol, &regulars);
            let mut members = Vec::new();
            for &idx in &set {
                let gamma = gamma_from_regular(&hol, &regulars[idx]);
                let brace = circle_from_gamma(&hol, &gamma)?;
                let cert = is_isomorphic(&hol.group, &brace.circle);
                members.push(json!({
                    "index": idx,
                    "circle_iso_type": identify(&brace.circle),
                    "isomorphic_to_g": cert.is_some(),
                    "iso_certificate": cert,
                }));
            }
            (Some(t), members)
        }
        TgMethod::Direct => (None, Vec::new()),
    };
    let agreement = match (direct, miller) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    if agreement == Some(false) {
        return Err(Error::Internal(format!(
            "T(G) mismatch: direct {} vs miller {}",
            direct.unwrap(),
            miller.unwrap()
        )));
    }

    let mut tsv = vec![vec!["key".to_string(), "value".to_string()]];
    if let Some(t) = direct {
        tsv.push(vec!["t_direct".to_string(), t.to_string()]);
    }
    if let Some(t) = miller {
        tsv.push(vec!["t_miller".to_string(), t.to_string()]);
    }
    if let Some(a) = agreement {
        tsv.push(vec!["agreement".to_string(), a.to_string()]);
    }
    let report = json!({
        "schema": 1,
        "command": "tg",
        "group": group_json(spec, &name, order),
        "t_direct": direct,
        "t_miller": miller,
        "agreement": agreement,
        "normal_regular_subgroups": members,
    });
    Ok((report, tsv))
}

/// The default relative gamma function on H: gamma'(h) = inner(h^{-1}),
/// an anti-homomorphism whose lift is the Childs gamma.
fn inner_inverse_rgf(hol: &Holomorph, h: &Subgroup) -> Result<RelativeGammaFunction, Error> {
    let g = &hol.group;
    let mut values = BTreeMap::new();
    for &x in &h.members {
        let p = inner(g, g.inv(x));
        let idx = hol
            .aut
            .index_of(&p)
            .ok_or_else(|| Error::Internal("inner map not in Aut(G)".into()))?;
        values.insert(x, idx);
    }
    Ok(RelativeGammaFunction {
        domain: h.clone(),
        values,
    })
}

fn parse_form(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    let mut rows = Vec::new();
    for row in text.split(';') {
        let mut entries = Vec::new();
        for e in row.split(',') {
            entries.push(e.trim().parse::<usize>().map_err(|_| {
                Error::InvalidSpec(format!("bad form entry '{}' in '{}'", e, text))
            })?);
        }
        rows.push(entries);
    }
    Ok(rows)
}

fn subgroup_from(
    hol: &Holomorph,
    gens: &Option<Vec<usize>>,
    which: &str,
) -> Result<Subgroup, Error> {
    let gens = gens
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec(format!("--{} is required for this construction", which)))?;
    let n = hol.group.order();
    for &x in gens {
        if x >= n {
            return Err(Error::InvalidSpec(format!(
                "--{} generator {} out of range (order {})",
                which, x, n
            )));
        }
    }
    Ok(subgroup_closure(&hol.group, gens))
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    kind: Kind,
    spec: &str,
    kgens: &Option<Vec<usize>>,
    hgens: &Option<Vec<usize>>,
    s: Option<i64>,
    t: Option<i64>,
    form: Option<&str>,
    scalar: Option<usize>,
    bound: Option<usize>,
) -> Result<(Value, Vec<Vec<String>>), Error> {
    let bound = bound.unwrap_or(DEFAULT_CONSTRUCT_BOUND);
    let g = parse_spec(spec)?;
    if g.order() > bound {
        return Err(Error::Bound(format!(
            "construction bound is {}, group has order {}",
            bound,
            g.order()
        )));
    }
    let name = g.name.clone();
    let order = g.order();
    let hol = Holomorph::build(g);
    let mut transcript: Vec<String> = Vec::new();
    let mut extras = serde_json::Map::new();

    let describe_kh = |k: &Subgroup, h: &Subgroup, transcript: &mut Vec<String>| {
        transcript.push(format!(
            "K = closure of given generators: order {}, normal: {}",
            k.order(),
            is_subgroup(&hol.group, k) && is_normal(&hol.group, k)
        ));
        transcript.push(format!(
            "H = closure of given generators: order {}, normal: {}",
            h.order(),
            is_normal(&hol.group, h)
        ));
        let inter = h.members.iter().filter(|&&x| k.contains(x)).count();
        transcript.push(format!("|H ∩ K| = {}", inter));
    };

    let gamma: GammaFunction = match kind {
        Kind::Childs => {
            let k = subgroup_from(&hol, kgens, "k")?;
            let h = subgroup_from(&hol, hgens, "h")?;
            describe_kh(&k, &h, &mut transcript);
            let gamma = childs_gamma(&hol, &k, &h)?;
            transcript.push("gamma(h k) = inner(h^{-1}) is well defined on G = H K".to_string());
            gamma
        }
        Kind::Lift | Kind::Semi => {
            let k = subgroup_from(&hol, kgens, "k")?;
            let h = subgroup_from(&hol, hgens, "h")?;
            describe_kh(&k, &h, &mut transcript);
            let rgf = match (s, t) {
                (None, None) => {
                    transcript
                        .push("gamma' on H defaults to inner(h^{-1})".to_string());
                    inner_inverse_rgf(&hol, &h)?
                }
                _ => {
                    let s = s.unwrap_or(0);
                    let t = t.unwrap_or(0);
                    transcript.push(format!(
                        "gamma' on H from the power family with s = {}, t = {}",
                        s, t
                    ));
                    power_family_rgf(&hol, &k, &h, s, t)?
                }
            };
            let gamma = if kind == Kind::Semi {
                let gamma = semi_gamma(&hol, &k, &h, &rgf)?;
                transcript.push(
                    "gamma' is an anti-homomorphic RGF with values in the compatible-pair group"
                        .to_string(),
                );
                gamma
            } else {
                let gamma = lift_rgf(&hol, &h, &k, &rgf)?;
                transcript.push(
                    "gamma'(H ∩ K) = 1 and K is invariant under gamma'(h) inner(h)".to_string(),
                );
                gamma
            };
            gamma
        }
        Kind::Central => {
            let k = subgroup_from(&hol, kgens, "k")?;
            let h = subgroup_from(&hol, hgens, "h")?;
            describe_kh(&k, &h, &mut transcript);
            let out = central_gamma(&hol, &k, &h)?;
            transcript.push("H ∩ K is central and gamma is a bi-GF".to_string());
            transcript.push(format!(
                "biconditional: H normal = {}, opposite gamma is a bi-GF = {}",
                out.h_normal, out.bar_is_bigf
            ));
            extras.insert("h_normal".to_string(), json!(out.h_normal));
            extras.insert("bar_is_bigf".to_string(), json!(out.bar_is_bigf));
            out.gamma
        }
        Kind::Delta => {
            let k = subgroup_from(&hol, kgens, "k")?;
            let rows = parse_form(form.ok_or_else(|| {
                Error::InvalidSpec("--form is required for the delta construction".into())
            })?)?;
            transcript.push(format!(
                "K: order {}, central: {}",
                k.order(),
                k.members
                    .iter()
                    .all(|&z| (0..hol.group.order())
                        .all(|x| hol.group.mul(z, x) == hol.group.mul(x, z)))
            ));
            let d = bilinear_delta(&hol.group, &k, &rows)?;
            transcript.push(
                "bilinear form extends to a symmetric bihomomorphism on G/K".to_string(),
            );
            delta_gamma(&hol, &d)?
        }
        Kind::AultWatters => {
            let (gamma, circle_name) = ault_watters_gamma(&hol)?;
            transcript.push(
                "G has odd order, class at most 2; Delta(x, y) = [x, y]^m with 2m = -1".to_string(),
            );
            extras.insert("circle_abelian_type".to_string(), json!(circle_name));
            gamma
        }
        Kind::Ring => {
            let c = scalar.ok_or_else(|| {
                Error::InvalidSpec("--scalar is required for the ring construction".into())
            })?;
            let n = hol.group.order();
            // The scalar formula uses index arithmetic, so the group must be
            // the canonical cyclic presentation with 1 as a generator.
            if n < 2 || hol.group.element_order(1) != n {
                return Err(Error::Hypothesis(
                    "the scalar ring construction needs a cyclic group (use cN)".into(),
                ));
            }
            let star: Vec<Vec<usize>> = (0..n)
                .map(|x| (0..n).map(|y| (c * x * y) % n).collect())
                .collect();
            let ring = radical_ring(hol.group.clone(), star)?;
            let rep = ring_report(&hol, &ring)?;
            transcript.push(format!(
                "x * y = {} x y mod {} is a commutative radical ring",
                c, n
            ));
            transcript.push(format!("cube condition G*G*G = 0: {}", rep.cube));
            extras.insert("cube".to_string(), json!(rep.cube));
            rep.gamma
        }
    };

    let brace = circle_from_gamma(&hol, &gamma)?;
    let circle_type = identify(&brace.circle);
    let bis = biskew_report(&hol, &gamma)?;
    let kernel = kernel_gamma(&hol, &gamma);
    transcript.push(format!(
        "result: gamma is a GF; circle group {} ({}); bi-GF: {}",
        circle_type,
        if brace.circle.is_abelian() {
            "abelian"
        } else {
            "nonabelian"
        },
        bis.is_biskew()
    ));

    let kind_name = match kind {
        Kind::Childs => "childs",
        Kind::Lift => "lift",
        Kind::Central => "central",
        Kind::Semi => "semi",
        Kind::Delta => "delta",
        Kind::AultWatters => "ault-watters",
        Kind::Ring => "ring",
    };
    let mut tsv = vec![vec!["key".to_string(), "value".to_string()]];
    tsv.push(vec!["kind".to_string(), kind_name.to_string()]);
    tsv.push(vec!["circle_iso_type".to_string(), circle_type.clone()]);
    tsv.push(vec!["biskew".to_string(), bis.is_biskew().to_string()]);
    tsv.push(vec!["kernel_order".to_string(), kernel.order().to_string()]);
    for (k, v) in &extras {
        tsv.push(vec![k.clone(), v.to_string()]);
    }

    let report = json!({
        "schema": 1,
        "command": "construct",
        "kind": kind_name,
        "group": group_json(spec, &name, order),
        "hypotheses": transcript,
        "gamma": gamma.values,
        "circle_iso_type": circle_type,
        "kernel_order": kernel.order(),
        "biskew": bis,
        "extras": Value::Object(extras),
    });
    Ok((report, tsv))
}

fn cmd_check(bound: Option<usize>) -> Result<(Value, Vec<Vec<String>>), Error> {
    let bound = bound.unwrap_or(8);
    let mut checks: Vec<(String, bool, String)> = Vec::new();

    for g in catalog_up_to_12() {
        if g.order() > bound {
            continue;
        }
        let gname = g.name.clone();
        let hol = Holomorph::build(g.clone());
        let regulars = enumerate_regular_subgroups(&hol);

        // Enumerator vs brute-force oracle, as circle-table sets.
        let oracle = brute_force_circle_tables(&g)?;
        let enumerated: std::collections::BTreeSet<Vec<Vec<usize>>> = regulars
            .iter()
            .map(|r| r.circle_table(&hol))
            .collect();
        checks.push((
            format!("oracle agreement on {}", gname),
            oracle == enumerated,
            format!("{} braces both ways", regulars.len()),
        ));

        // Per-brace report agreement, opposite involution, round-trips.
        let mut all_agree = true;
        let mut opposite_ok = true;
        let mut roundtrip_ok = true;
        for reg in &regulars {
            let gamma = gamma_from_regular(&hol, reg);
            let bis = biskew_report(&hol, &gamma)?;
            let beta = beta_report(&hol, &gamma, &regulars)?;
            if !bis.agreement() || !beta.agreement() {
                all_agree = false;
            }
            if beta.holds() && !bis.is_biskew() {
                all_agree = false;
            }
            let bar = opposite_gamma(&hol, &gamma)?;
            if opposite_gamma(&hol, &bar)? != gamma {
                opposite_ok = false;
            }
            let brace = circle_from_gamma(&hol, &gamma)?;
            let back = gamma_from_circle(&hol, brace.circle.table())?;
            if back != gamma {
                roundtrip_ok = false;
            }
        }
        checks.push((
            format!("report agreement on {}", gname),
            all_agree,
            format!("{} braces", regulars.len()),
        ));
        checks.push((
            format!("opposite involution on {}", gname),
            opposite_ok,
            String::new(),
        ));
        checks.push((
            format!("gamma/circle round-trip on {}", gname),
            roundtrip_ok,
            String::new(),
        ));

        // The gamma enumeration and the regular-subgroup enumeration agree.
        let gammas = enumerate_gammas(&hol);
        checks.push((
            format!("gamma count matches on {}", gname),
            gammas.len() == regulars.len(),
            format!("{} vs {}", gammas.len(), regulars.len()),
        ));

        // Miller-set membership is exactly "normal in Hol(G) and
        // isomorphic to G".
        let mset = miller_set(&hol, &regulars);
        let normal_ok = regulars.iter().enumerate().all(|(idx, r)| {
            let expected = is_normal_in_hol(&hol, r)
                && is_isomorphic(&r.circle_group(&hol), &hol.group).is_some();
            mset.contains(&idx) == expected
        });
        checks.push((
            format!("normality consistency on {}", gname),
            normal_ok,
            String::new(),
        ));
    }

    let mut tsv = vec![vec![
        "check".to_string(),
        "pass".to_string(),
        "detail".to_string(),
    ]];
    for (name, pass, detail) in &checks {
        tsv.push(vec![name.clone(), pass.to_string(), detail.clone()]);
    }
    let failures: Vec<&String> = checks
        .iter()
        .filter(|(_, pass, _)| !pass)
        .map(|(name, _, _)| name)
        .collect();
    let report = json!({
        "schema": 1,
        "command": "check",
        "bound": bound,
        "checks": checks
            .iter()
            .map(|(name, pass, detail)| json!({
                "name": name, "pass": pass, "detail": detail
            }))
            .collect::<Vec<_>>(),
        "all_pass": failures.is_empty(),
    });
    if !failures.is_empty() {
        return Err(Error::Internal(format!(
            "cross-checks failed: {}",
            failures
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    Ok((report, tsv))
}

//! One function per subcommand, each mapping library results to JSON.

use std::collections::HashMap;

use hedgegraph::format::parse_with_warnings;
use hedgegraph::matroid::{
    cover_acyclic_trimmable, min_cover_number, pack_bases, spanning_tree_trimming, CoverOutcome, PackingOutcome,
    SpanningTree,
};
use hedgegraph::measures::{
    approx_connectivity, kstar_approx, partition_connectivity, weak_partition_connectivity, MeasureReport, Witness,
};
use hedgegraph::oracle::{enumerate_quotients, exact_connectivity, exact_kstar, exact_pc, OracleLimits};
use hedgegraph::orientation::{orient, verify_orientation, OrientOutcome, Orientation, OrientedHedge};
use hedgegraph::rational::{format_decimal, parse_decimal};
use hedgegraph::stochastic::{
    base_sampling_experiment, connectivity_sampling_experiment, count_small_quotients, sample_subhedgegraph,
    sparsify_partitions_with, verify_sparsifier, SeededRng,
};
use hedgegraph::{
    components, internal_hedges, partition_boundary, polymatroid_f, HedgeId, Hedgegraph, Rational,
};
use serde_json::{json, Value};

use crate::report::{hedge_names, orientation_json, partition_names, trimming_json, vertex_names, CliError, Outcome};
use crate::Command;

pub fn run(command: &Command, text: &str) -> Result<Outcome, CliError> {
    let parsed = parse_with_warnings(text)?;
    let g = &parsed.graph;
    let limits = OracleLimits::from_env();
    let common = command.common();
    match command {
        Command::Info(_) => {
            let warnings: Vec<Value> =
                parsed.warnings.iter().map(|w| json!({ "line": w.line, "message": w.message })).collect();
            Ok(Outcome::ok("direct", info(g, warnings)?))
        }
        Command::Connectivity(_) => connectivity(g, common.exact, &limits),
        Command::Pc(_) => pc(g, common.exact, &limits),
        Command::Wpc(_) => {
            let r = weak_partition_connectivity(g, &limits)?;
            Ok(Outcome::ok(r.method, measure_json(g, &r)))
        }
        Command::Kstar(_) => kstar(g, common.exact, &limits),
        Command::Decompose { k, .. } => decompose(g, *k),
        Command::Cover { k, .. } => cover(g, *k),
        Command::Trim(_) => trim(g),
        Command::Orient { k, root, .. } => orient_cmd(g, *k, root.as_deref(), &limits),
        Command::Sample { p, trials, base, .. } => sample(g, *p, *trials, *base, common.seed, &limits),
        Command::Sparsify { epsilon, c0, .. } => sparsify(g, &parse_rational("epsilon", epsilon)?, *c0, common.seed, &limits),
        Command::Verify { input, k, epsilon, .. } => {
            let raw = std::fs::read_to_string(input)
                .map_err(|e| CliError::input("io", format!("{}: {e}", input.display())))?;
            let doc: Value = serde_json::from_str(&raw)
                .map_err(|e| CliError::input("json", format!("{}: {e}", input.display())))?;
            let epsilon = epsilon.as_deref().map(|e| parse_rational("epsilon", e)).transpose()?;
            verify(g, &doc, *k, epsilon, &limits)
        }
        Command::Quotients { t, .. } => {
            let t = t.as_deref().map(|t| parse_rational("t", t)).transpose()?;
            quotients(g, t, &limits)
        }
    }
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_decimal(text).map_err(|e| CliError::input("flag", format!("--{flag}: {e}")))
}

fn info(g: &Hedgegraph, warnings: Vec<Value>) -> Result<Value, CliError> {
    let hedges: Vec<Value> = g
        .hedges()
        .iter()
        .map(|h| {
            json!({
                "name": h.name,
                "weight": format_decimal(&h.weight),
                "hyperedges": h.hyperedges().iter().map(|x| vertex_names(g, x.vertices())).collect::<Vec<_>>(),
            })
        })
        .collect();
    let comps = components(g, &g.all_hedges())?;
    Ok(json!({
        "vertices": g.vertex_names(),
        "n": g.vertex_count(),
        "m": g.hedge_count(),
        "size": g.size(),
        "rank": polymatroid_f(g, &g.all_hedges())?,
        "connected": comps.block_count() == 1,
        "components": partition_names(g, &comps),
        "hedges": hedges,
        "warnings": warnings,
    }))
}

fn witness_json(g: &Hedgegraph, w: &Witness) -> Value {
    match w {
        Witness::Partition(p) => json!({ "partition": partition_names(g, p) }),
        Witness::Hedges(s) => json!({ "hedges": hedge_names(g, s) }),
        Witness::Bases(bs) => json!({ "bases": bs.iter().map(|b| hedge_names(g, b)).collect::<Vec<_>>() }),
        Witness::None => Value::Null,
    }
}

fn measure_json(g: &Hedgegraph, r: &MeasureReport) -> Value {
    let mut out = match &r.witness {
        Witness::Partition(p) => json!({ "witness_partition": partition_names(g, p) }),
        other => json!({ "witness": witness_json(g, other) }),
    };
    match r.exact_value() {
        Some(v) => out["value"] = json!(v),
        None => {
            let (lo, hi) = r.band();
            out["lo"] = json!(lo);
            out["hi"] = json!(hi);
        }
    }
    if let Some(agree) = r.methods_agree {
        out["methods_agree"] = json!(agree);
    }
    if let Some(ratio) = r.ratio {
        out["ratio"] = json!(ratio.to_string());
    }
    if let Some(exact) = r.exact {
        out["exact"] = json!(exact);
    }
    out
}

fn connectivity(g: &Hedgegraph, exact: bool, limits: &OracleLimits) -> Result<Outcome, CliError> {
    if exact {
        let cut = exact_connectivity(g, limits)?;
        return Ok(Outcome::ok(
            "exhaustive",
            json!({ "value": cut.value, "side": vertex_names(g, &cut.side) }),
        ));
    }
    let r = approx_connectivity(g, limits)?;
    Ok(Outcome::ok(r.method, measure_json(g, &r)))
}

fn pc(g: &Hedgegraph, exact: bool, limits: &OracleLimits) -> Result<Outcome, CliError> {
    if exact {
        let r = exact_pc(g, limits)?;
        return Ok(Outcome::ok(
            "exhaustive",
            json!({ "value": r.value, "witness_partition": partition_names(g, &r.partition) }),
        ));
    }
    let r = partition_connectivity(g)?;
    Ok(Outcome::ok(r.method, measure_json(g, &r)))
}

fn kstar(g: &Hedgegraph, exact: bool, limits: &OracleLimits) -> Result<Outcome, CliError> {
    if exact {
        let r = exact_kstar(g, limits)?;
        return Ok(Outcome::ok(
            "exhaustive",
            json!({ "value": r.floor(), "ratio": r.ratio.to_string(), "witness": { "hedges": hedge_names(g, &r.argmin) } }),
        ));
    }
    let r = kstar_approx(g, limits)?;
    Ok(Outcome::ok(r.method, measure_json(g, &r)))
}

fn decompose(g: &Hedgegraph, k: Option<usize>) -> Result<Outcome, CliError> {
    let k = match k {
        Some(k) => k,
        None => partition_connectivity(g)?.exact_value().unwrap_or(0) as usize,
    };
    if k == 0 {
        return Ok(Outcome::ok("matroid_union", json!({ "k": 0, "bases": [], "trimmings": [] })));
    }
    Ok(match pack_bases(g, k)? {
        PackingOutcome::Packed { bases, trimmings, leftover } => Outcome::ok(
            "matroid_union",
            json!({
                "k": k,
                "bases": bases.iter().map(|b| hedge_names(g, b)).collect::<Vec<_>>(),
                "trimmings": trimmings.iter().map(|t| trimming_json(g, t)).collect::<Vec<_>>(),
                "leftover": hedge_names(g, &leftover),
            }),
        ),
        PackingOutcome::Certificate(p) => {
            let boundary = partition_boundary(g, &p)?.len();
            Outcome::certificate(
                "matroid_union",
                json!({
                    "k": k,
                    "certificate_partition": partition_names(g, &p),
                    "boundary": boundary,
                    "required": k * (p.block_count() - 1),
                }),
            )
        }
    })
}

fn cover_certificate(g: &Hedgegraph, k: usize, p: &hedgegraph::Partition) -> Result<Value, CliError> {
    Ok(json!({
        "k": k,
        "certificate_partition": partition_names(g, p),
        "internal": internal_hedges(g, p)?.len(),
        "allowed": k * (g.vertex_count() - p.block_count()),
    }))
}

fn cover(g: &Hedgegraph, k: Option<usize>) -> Result<Outcome, CliError> {
    let classes_json = |classes: &[hedgegraph::HedgeSet], trimmings: &[hedgegraph::matroid::Trimming]| {
        json!({
            "classes": classes.iter().map(|c| hedge_names(g, c)).collect::<Vec<_>>(),
            "trimmings": trimmings.iter().map(|t| trimming_json(g, t)).collect::<Vec<_>>(),
        })
    };
    match k {
        Some(k) => Ok(match cover_acyclic_trimmable(g, k)? {
            CoverOutcome::Cover { classes, trimmings } => {
                let mut out = classes_json(&classes, &trimmings);
                out["k"] = json!(k);
                Outcome::ok("matroid_union", out)
            }
            CoverOutcome::Certificate(p) => Outcome::certificate("matroid_union", cover_certificate(g, k, &p)?),
        }),
        None => Ok(match min_cover_number(g) {
            Ok(mc) => {
                let mut out = classes_json(&mc.classes, &mc.trimmings);
                out["k"] = json!(mc.k);
                if let Some(p) = &mc.below {
                    out["below"] = cover_certificate(g, mc.k - 1, p)?;
                }
                Outcome::ok("matroid_union", out)
            }
            Err(p) => {
                let mut out = cover_certificate(g, 0, &p)?;
                out["k"] = Value::Null;
                out["reason"] = json!("a hedge has no vertex pair to keep");
                Outcome::certificate("matroid_union", out)
            }
        }),
    }
}

fn trim(g: &Hedgegraph) -> Result<Outcome, CliError> {
    Ok(match spanning_tree_trimming(g)? {
        SpanningTree::Tree { hedges, trimming } => Outcome::ok(
            "matroid_intersection",
            json!({ "hedges": hedge_names(g, &hedges), "trimming": trimming_json(g, &trimming) }),
        ),
        SpanningTree::Certificate(p) => Outcome::certificate(
            "matroid_intersection",
            json!({
                "certificate_partition": partition_names(g, &p),
                "boundary": partition_boundary(g, &p)?.len(),
                "required": p.block_count() - 1,
            }),
        ),
    })
}

fn vertex(g: &Hedgegraph, name: &str) -> Result<hedgegraph::VertexId, CliError> {
    g.vertex_by_name(name).ok_or_else(|| CliError::input("flag", format!("unknown vertex `{name}`")))
}

fn orient_cmd(g: &Hedgegraph, k: usize, root: Option<&str>, limits: &OracleLimits) -> Result<Outcome, CliError> {
    let root = match root {
        Some(name) => vertex(g, name)?,
        None => hedgegraph::VertexId(0),
    };
    Ok(match orient(g, k, root)? {
        OrientOutcome::Oriented(o) => {
            // Verification is reported when the vertex count allows it.
            let verified = verify_orientation(g, &o, k, root, limits).ok().map(|c| c.valid);
            Outcome::ok(
                "lifted_trees",
                json!({ "k": k, "orientation": orientation_json(g, &o), "verified": verified }),
            )
        }
        OrientOutcome::Certificate(p) => Outcome::certificate(
            "lifted_trees",
            json!({
                "k": k,
                "certificate_partition": partition_names(g, &p),
                "boundary": partition_boundary(g, &p)?.len(),
                "required": k * (p.block_count() - 1),
            }),
        ),
    })
}

fn sample(
    g: &Hedgegraph,
    p: Option<f64>,
    trials: usize,
    base: bool,
    seed: u64,
    limits: &OracleLimits,
) -> Result<Outcome, CliError> {
    if let Some(p) = p {
        let s = sample_subhedgegraph(g, p, &mut SeededRng::new(seed).stream(0))?;
        let rank = polymatroid_f(g, &s)?;
        return Ok(Outcome::ok(
            "bernoulli",
            json!({
                "p": p,
                "seed": seed,
                "hedges": hedge_names(g, &s),
                "rank": rank,
                "spanning": rank == polymatroid_f(g, &g.all_hedges())?,
                "connected": rank + 1 == g.vertex_count(),
            }),
        ));
    }
    let report = if base {
        base_sampling_experiment(g, None, trials, seed, limits)?
    } else {
        connectivity_sampling_experiment(g, trials, seed, limits)?
    };
    let mut out = serde_json::to_value(&report).expect("report serializes");
    out["within_guarantee"] = json!(report.within_guarantee());
    Ok(Outcome::ok("monte_carlo", out))
}

fn sparsify(g: &Hedgegraph, epsilon: &Rational, c0: f64, seed: u64, limits: &OracleLimits) -> Result<Outcome, CliError> {
    let w = g.weights();
    let res = sparsify_partitions_with(g, &w, *epsilon, c0, seed)?;
    let mut out = serde_json::to_value(&res).expect("result serializes");
    out["epsilon"] = json!(epsilon.to_string());
    out["c0"] = json!(c0);
    out["hedge_names"] = json!(g.hedges().iter().map(|h| h.name.as_str()).collect::<Vec<_>>());
    out["verification"] = match verify_sparsifier(g, &w, &res.weights, *epsilon, limits) {
        Ok(check) => json!({
            "passed": check.passed,
            "max_relative_error": check.max_relative_error.to_string(),
            "worst_partition": check.worst.as_ref().map(|p| partition_names(g, p)),
        }),
        Err(_) => Value::Null,
    };
    Ok(Outcome::ok("strength_sampling", out))
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key).ok_or_else(|| CliError::input("json", format!("missing `{key}`")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| CliError::input("json", format!("`{what}` is not a string")))
}

fn parse_orientation(g: &Hedgegraph, o: &Value) -> Result<Orientation, CliError> {
    let hedge_ids: HashMap<&str, usize> = g.hedges().iter().enumerate().map(|(i, h)| (h.name.as_str(), i)).collect();
    let root = vertex(g, as_str(field(o, "root")?, "root")?)?;
    let choices = field(o, "choices")?
        .as_array()
        .ok_or_else(|| CliError::input("json", "`choices` is not a list"))?
        .iter()
        .map(|c| {
            let name = as_str(field(c, "hedge")?, "hedge")?;
            let hedge = *hedge_ids.get(name).ok_or_else(|| CliError::input("json", format!("unknown hedge `{name}`")))?;
            let hyperedge = field(c, "hyperedge")?
                .as_u64()
                .ok_or_else(|| CliError::input("json", "`hyperedge` is not an index"))? as usize;
            let head = vertex(g, as_str(field(c, "head")?, "head")?)?;
            Ok(OrientedHedge { hedge: HedgeId(hedge), hyperedge, head })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Orientation { root, choices })
}

fn verify(
    g: &Hedgegraph,
    doc: &Value,
    k: Option<usize>,
    epsilon: Option<Rational>,
    limits: &OracleLimits,
) -> Result<Outcome, CliError> {
    let result = doc.get("result").unwrap_or(doc);
    if let Some(o) = result.get("orientation") {
        let o = parse_orientation(g, o)?;
        let k = match k.or_else(|| result.get("k").and_then(Value::as_u64).map(|k| k as usize)) {
            Some(k) => k,
            None => return Err(CliError::input("flag", "--k is required when the input has no `k`")),
        };
        let check = verify_orientation(g, &o, k, o.root, limits)?;
        let out = json!({
            "kind": "orientation",
            "k": k,
            "valid": check.valid,
            "min_out_degree": check.min_out_degree,
            "violating_set": check.violating.as_ref().map(|u| vertex_names(g, u)),
        });
        return Ok(if check.valid {
            Outcome::ok("exhaustive", out)
        } else {
            Outcome::certificate("exhaustive", out)
        });
    }
    if let Some(ws) = result.get("weights") {
        let sparse = ws
            .as_array()
            .ok_or_else(|| CliError::input("json", "`weights` is not a list"))?
            .iter()
            .map(|w| {
                let text = as_str(w, "weight")?;
                text.parse::<Rational>()
                    .map_err(|_| CliError::input("json", format!("bad weight `{text}`")))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let epsilon = match epsilon {
            Some(e) => e,
            None => {
                let text = as_str(field(result, "epsilon")?, "epsilon")?;
                text.parse::<Rational>().map_err(|_| CliError::input("json", format!("bad epsilon `{text}`")))?
            }
        };
        let check = verify_sparsifier(g, &g.weights(), &sparse, epsilon, limits)?;
        let out = json!({
            "kind": "sparsifier",
            "epsilon": epsilon.to_string(),
            "passed": check.passed,
            "max_relative_error": check.max_relative_error.to_string(),
            "worst_partition": check.worst.as_ref().map(|p| partition_names(g, p)),
        });
        return Ok(if check.passed {
            Outcome::ok("exhaustive", out)
        } else {
            Outcome::certificate("exhaustive", out)
        });
    }
    Err(CliError::input("json", "input has neither an `orientation` nor `weights`"))
}

fn quotients(g: &Hedgegraph, t: Option<Rational>, limits: &OracleLimits) -> Result<Outcome, CliError> {
    if let Some(t) = t {
        let count = count_small_quotients(g, &g.weights(), t, limits)?;
        return Ok(Outcome::ok("exhaustive", json!({ "t": t.to_string(), "count": count })));
    }
    let qs = enumerate_quotients(g, limits)?;
    Ok(Outcome::ok(
        "exhaustive",
        json!({ "count": qs.len(), "quotients": qs.iter().map(|q| hedge_names(g, q)).collect::<Vec<_>>() }),
    ))
}

//! Plain-text rendering of report documents.

use std::fmt::Write;

use serde_json::Value;

fn order(v: &Value) -> String {
    match v.get("order") {
        Some(o) => o.to_string(),
        None => v.get("error").map_or("?".into(), |e| format!("error: {}", e.as_str().unwrap_or(""))),
    }
}

fn reports(out: &mut String, reports: &[Value]) {
    for r in reports {
        let _ = writeln!(
            out,
            "{:<8} {:<20} {}",
            r["conclusion"].as_str().unwrap_or(""),
            r["result_id"].as_str().unwrap_or(""),
            r["instance"].as_str().unwrap_or("")
        );
        for h in r["hypotheses"].as_array().into_iter().flatten() {
            if h["holds"] != true {
                let _ = writeln!(out, "         hypothesis fails: {}", h["name"].as_str().unwrap_or(""));
            }
        }
        for c in r["checks"].as_array().into_iter().flatten() {
            if c["holds"] != true {
                let _ = writeln!(out, "         check fails: {}", c["name"].as_str().unwrap_or(""));
            }
        }
    }
}

fn summary(out: &mut String, s: &Value) {
    let _ = writeln!(
        out,
        "pass {}, fail {}, vacuous {}, error {}",
        s["pass"], s["fail"], s["vacuous"], s["error"]
    );
}

pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    match doc["command"].as_str().unwrap_or("") {
        "group-info" => {
            let z = &doc["center"];
            let _ = writeln!(out, "group order    {}", doc["group_order"]);
            let _ = writeln!(out, "prime          {}", doc["prime"]);
            let _ = writeln!(out, "|P|            {}", order(&doc["p_group"]));
            let _ = writeln!(out, "class          {}", doc["class"]);
            let _ = writeln!(out, "exponent       {}", doc["exponent"]);
            let _ = writeln!(out, "|Z(P)|         {}", z["order"]);
            let _ = writeln!(out, "exp Z(P)       {}", z["exponent"]);
            let _ = writeln!(out, "|J(P)|         {}", order(&doc["thompson"]));
            for (key, label) in [("center_agemo", "agemo"), ("center_omega", "omega")] {
                for e in doc[key].as_array().into_iter().flatten() {
                    let key = format!("|{label}_{}(Z)|", e["n"]);
                    let _ = writeln!(out, "{key:<15}{}", e["order"]);
                }
            }
            let _ = writeln!(out, "subgroups      {}", doc["subgroups"]);
        }
        "fusion-build" => {
            let _ = writeln!(out, "|P| = {}, p = {}, {} subgroups", order(&doc["p_group"]), doc["prime"], doc["subgroups"]);
            for c in doc["classes"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "  order {:>6}  members {:>4}  |Aut| {}",
                    order(&c["representative"]),
                    c["members"],
                    c["aut_order"]
                );
            }
        }
        "fusion-check" => {
            let _ = writeln!(out, "saturated        {}", doc["saturated"]);
            let _ = writeln!(out, "sylow axiom      {}", doc["sylow_axiom"].as_str().unwrap_or(""));
            let _ = writeln!(out, "extension axiom  {}", doc["extension_axiom"].as_str().unwrap_or(""));
            let _ = writeln!(out, "|O_p(F)|         {}", order(&doc["op_subgroup"]));
            let _ = writeln!(out, "|Z(F)|           {}", order(&doc["center"]));
            let fam: Vec<String> = doc["alperin_family"]
                .as_array()
                .map(|v| v.iter().map(order).collect())
                .unwrap_or_else(|| vec![order(&doc["alperin_family"])]);
            let _ = writeln!(out, "alperin family   [{}]", fam.join(", "));
        }
        "verify" | "corpus" => {
            reports(&mut out, doc["reports"].as_array().map_or(&[], |v| v));
            for e in doc["errors"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "error    {:<20} {}: {}",
                    e["verifier"].as_str().unwrap_or("-"),
                    e["instance"].as_str().unwrap_or(""),
                    e["message"].as_str().unwrap_or("")
                );
            }
            summary(&mut out, &doc["summary"]);
        }
        _ => {}
    }
    out
}

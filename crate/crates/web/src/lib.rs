//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes and returns plain strings; results are JSON objects
//! with `"ok": true` or `"ok": false, "error": ...`. That keeps the exports
//! callable from native tests as well as from JavaScript.

use ecta::analysis::{back_exact, forw_exact};
use ecta::clock::rat;
use ecta::region_automaton::language_empty;
use ecta::{
    accepts, builtin_example, region_of, Alphabet, Clock, Ecta, Edbm, Region, RegionVariant,
    Symbol, TimedWord, Valuation,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Outcome = Result<Value, String>;

fn respond(r: Outcome) -> String {
    match r {
        Ok(Value::Object(mut map)) => {
            map.insert("ok".into(), json!(true));
            Value::Object(map).to_string()
        }
        Ok(other) => json!({"ok": true, "value": other}).to_string(),
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

fn automaton(text: &str) -> Result<Ecta, String> {
    let text = text.trim();
    if text.starts_with('{') {
        Ecta::from_json(text).map_err(|e| e.to_string())
    } else {
        builtin_example(text).map_err(|e| e.to_string())
    }
}

/// Samples the `(h.a, p.a)` plane on a `1/res` grid up to `cmax + 1` and
/// reports, per point, whether it lies in `zone` (after `op`: `zone`,
/// `future` or `past`) and which classic region it belongs to. The ⊥ rows
/// cover points where one clock is undefined.
fn plane(zone: &str, op: &str, cmax: u32, res: u32) -> Outcome {
    if res == 0 || res > 16 || cmax > 6 {
        return Err("need 1 <= res <= 16 and cmax <= 6".into());
    }
    let clocks = Alphabet::new(["a"]).map_err(|e| e.to_string())?.clocks();
    let z = Edbm::parse(clocks.clone(), zone).map_err(|e| e.to_string())?;
    let shown = match op {
        "zone" => vec![z],
        "future" => z.future_exact().zones().to_vec(),
        "past" => z.past_exact().zones().to_vec(),
        other => return Err(format!("unknown operation `{other}`")),
    };
    let (h, p) = (
        Clock::history(Symbol::new("a")),
        Clock::prophecy(Symbol::new("a")),
    );
    let n = (cmax as i64 + 1) * res as i64;
    // axis values: ⊥ first, then the grid
    let axis: Vec<Option<ecta::Rational>> = std::iter::once(None)
        .chain((0..=n).map(|k| Some(rat(k, res as i64))))
        .collect();
    let mut regions: Vec<Region> = Vec::new();
    let mut inside = Vec::new();
    let mut region_ids = Vec::new();
    for pv in axis.iter().rev() {
        let mut row_in = Vec::new();
        let mut row_id = Vec::new();
        for hv in &axis {
            let v = Valuation::new([(h.clone(), hv.clone()), (p.clone(), pv.clone())])
                .map_err(|e| e.to_string())?;
            let hit = shown
                .iter()
                .map(|z| z.contains(&v))
                .collect::<ecta::Result<Vec<bool>>>()
                .map_err(|e| e.to_string())?
                .into_iter()
                .any(|b| b);
            let r = region_of(&v, cmax, RegionVariant::Classic);
            let id = match regions.iter().position(|s| *s == r) {
                Some(id) => id,
                None => {
                    regions.push(r);
                    regions.len() - 1
                }
            };
            row_in.push(hit);
            row_id.push(id);
        }
        inside.push(row_in);
        region_ids.push(row_id);
    }
    let described: Vec<String> = shown.iter().map(Edbm::describe).collect();
    Ok(json!({
        "cmax": cmax,
        "res": res,
        "zones": described,
        "inside": inside,
        "region": region_ids,
        "regions": regions.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    }))
}

fn membership(automaton_text: &str, word: &str) -> Outcome {
    let a = automaton(automaton_text)?;
    let w = if word.trim_start().starts_with('[') {
        TimedWord::from_json(word)
    } else {
        TimedWord::parse(word)
    }
    .map_err(|e| e.to_string())?;
    let accepted = accepts(&a, &w).map_err(|e| e.to_string())?;
    Ok(json!({"word": w.to_string(), "accepted": accepted}))
}

fn emptiness(automaton_text: &str, fuel: usize) -> Outcome {
    let a = automaton(automaton_text)?;
    let err = |e: ecta::Error| e.to_string();
    let region = language_empty(&a, a.max_constant()).map_err(err)?;
    let fwd = forw_exact(&a, fuel).map_err(err)?;
    let bwd = back_exact(&a, fuel).map_err(err)?;
    Ok(json!({
        "region": {"language_empty": region},
        "forward": {"verdict": fwd.verdict, "steps": fwd.steps_used},
        "backward": {"verdict": bwd.verdict, "steps": bwd.steps_used},
    }))
}

#[wasm_bindgen]
pub fn zone_plane(zone: &str, op: &str, cmax: u32, res: u32) -> String {
    respond(plane(zone, op, cmax, res))
}

#[wasm_bindgen]
pub fn check_membership(automaton: &str, word: &str) -> String {
    respond(membership(automaton, word))
}

#[wasm_bindgen]
pub fn check_emptiness(automaton: &str, fuel: usize) -> String {
    respond(emptiness(automaton, fuel))
}

use std::time::Instant;

use cardguess::decimal::Decimal;
use cardguess::moments::DistributionTable;
use cardguess::Rat;
use serde_json::{json, Value};

pub fn rat(value: &Rat) -> Value {
    Value::String(value.to_string())
}

pub fn rats(values: &[Rat]) -> Value {
    Value::Array(values.iter().map(rat).collect())
}

pub fn decimal(value: &Decimal) -> Value {
    json!({ "decimal": value.to_string(), "precision": value.digits() })
}

pub fn rat_list(values: &[Rat]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub struct Meta {
    pub command: &'static str,
    pub params: Value,
    pub tier_used: Option<String>,
    pub started: Instant,
    pub timing: bool,
}

pub fn record(meta: Meta, payload: Value) -> String {
    let elapsed = if meta.timing {
        json!(meta.started.elapsed().as_millis() as u64)
    } else {
        Value::Null
    };
    let value = json!({
        "metadata": {
            "command": meta.command,
            "params": meta.params,
            "tier_used": meta.tier_used,
            "version": env!("CARGO_PKG_VERSION"),
            "elapsed_ms": elapsed,
        },
        "payload": payload,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("json values always serialize");
    text.push('\n');
    text
}

pub fn table_csv(table: &DistributionTable) -> String {
    let mut out = String::from("guesses,count,probability\n");
    for row in &table.rows {
        out.push_str(&format!("{},{},{}\n", row.guesses, row.count, row.probability));
    }
    out
}

pub fn table_json(table: &DistributionTable) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| json!({ "guesses": r.guesses, "count": r.count.to_string(), "probability": rat(&r.probability) }))
        .collect();
    json!({ "rows": rows, "mean": rat(&table.mean) })
}

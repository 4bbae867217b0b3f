//! Deterministic JSON and TSV rendering with node labels.

use serde_json::{Map, Number, Value};
use trustgame::{Coalition, Digraph, PlayerId};

/// Rounds to 12 significant digits; the shortest round-trip form of the
/// result is what gets printed.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    Number::from_f64(round12(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn fmt_tsv(x: f64) -> String {
    format!("{}", round12(x))
}

pub fn label(g: &Digraph, p: PlayerId) -> Value {
    Value::String(g.label(p).to_string())
}

pub fn labels(g: &Digraph, players: impl IntoIterator<Item = PlayerId>) -> Value {
    Value::Array(players.into_iter().map(|p| label(g, p)).collect())
}

pub fn coalition(g: &Digraph, c: &Coalition) -> Value {
    labels(g, c.iter())
}

pub fn coalition_key(g: &Digraph, c: &Coalition) -> String {
    c.iter().map(|p| g.label(p)).collect::<Vec<_>>().join(",")
}

/// Ordered object builder.
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Obj(Map::new())
    }

    pub fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn put_num(self, key: &str, x: f64) -> Self {
        self.put(key, num(x))
    }

    pub fn build(self) -> Value {
        Value::Object(self.0)
    }
}

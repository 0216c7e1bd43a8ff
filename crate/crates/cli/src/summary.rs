use std::fmt::Display;

use serde_json::{Map, Value};

/// Ordered `key=value` pairs for the final line.
#[derive(Default)]
pub struct Summary {
    pairs: Vec<(String, String)>,
}

impl Summary {
    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.pairs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn line(&self) -> String {
        let mut s = String::from("RESULT");
        for (k, v) in &self.pairs {
            s.push(' ');
            s.push_str(k);
            s.push('=');
            s.push_str(v);
        }
        s
    }

    /// Numbers and booleans keep their JSON types; everything else is a string.
    pub fn json(&self) -> String {
        let mut m = Map::new();
        for (k, v) in &self.pairs {
            let val = if let Ok(i) = v.parse::<i64>() {
                Value::from(i)
            } else if let Ok(b) = v.parse::<bool>() {
                Value::from(b)
            } else if let Some(f) = v.parse::<f64>().ok().filter(|f| f.is_finite()) {
                Value::from(f)
            } else {
                Value::from(v.as_str())
            };
            m.insert(k.clone(), val);
        }
        Value::Object(m).to_string()
    }
}

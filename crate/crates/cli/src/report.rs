use serde_json::{Map, Value};

/// Ordered key/value output, printed as `key=value` lines or one JSON object.
#[derive(Default)]
pub struct Report {
    fields: Map<String, Value>,
    inline: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Text mode puts every field on one line.
    pub fn inline() -> Self {
        Report {
            inline: true,
            ..Self::default()
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return Value::Object(self.fields.clone()).to_string();
        }
        let parts: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}={}", k, text(v)))
            .collect();
        parts.join(if self.inline { " " } else { "\n" })
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

//! One report type rendered either as `key = value` lines or as JSON with the
//! same keys in the same order.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A mathematically negative answer or an exhausted budget.
    Negative,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 1,
        }
    }
}

#[derive(Debug, Clone)]
enum Entry {
    Scalar(String),
    List(Vec<String>),
    Block(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    headline: Option<String>,
    entries: Vec<(String, Entry)>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &'static str, outcome: Outcome) -> Self {
        Report {
            command,
            headline: None,
            entries: Vec::new(),
            outcome,
        }
    }

    pub fn headline(mut self, text: impl Into<String>) -> Self {
        self.headline = Some(text.into());
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries
            .push((key.into(), Entry::Scalar(value.to_string())));
        self
    }

    /// Rendered as a comma-separated list in text mode.
    pub fn list<T: ToString>(&mut self, key: impl Into<String>, items: &[T]) -> &mut Self {
        self.entries.push((
            key.into(),
            Entry::List(items.iter().map(ToString::to_string).collect()),
        ));
        self
    }

    /// Multi-line text printed verbatim after the fields; a line array in JSON.
    pub fn block(&mut self, key: impl Into<String>, text: &str) -> &mut Self {
        self.entries.push((
            key.into(),
            Entry::Block(text.lines().map(str::to_string).collect()),
        ));
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        for (k, e) in &self.entries {
            match e {
                Entry::Scalar(v) => out.push_str(&format!("{k} = {v}\n")),
                Entry::List(v) => {
                    let joined = if v.is_empty() {
                        "0".to_string()
                    } else {
                        v.join(", ")
                    };
                    out.push_str(&format!("{k} = {joined}\n"));
                }
                Entry::Block(lines) => {
                    out.push_str(&format!("{k}:\n"));
                    for l in lines {
                        out.push_str(l);
                        out.push('\n');
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command));
        m.insert("exit_code".into(), Value::from(self.outcome.exit_code()));
        if let Some(h) = &self.headline {
            m.insert("headline".into(), Value::from(h.as_str()));
        }
        for (k, e) in &self.entries {
            let v = match e {
                Entry::Scalar(v) => Value::from(v.as_str()),
                Entry::List(v) | Entry::Block(v) => Value::from(v.clone()),
            };
            m.insert(k.clone(), v);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("plain JSON values");
        s.push('\n');
        s
    }
}

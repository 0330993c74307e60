use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

/// One named result with its certification flag.
#[derive(Debug, Serialize)]
pub struct Output {
    pub name: String,
    pub value: Value,
    pub certified: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Vec<Output>,
    pub certified: bool,
    pub timing_ms: u64,
}

/// Collects outputs for one command.
#[derive(Debug, Default)]
pub struct Outputs(pub Vec<Output>);

impl Outputs {
    pub fn push(&mut self, name: &str, value: impl Serialize, certified: bool) {
        self.0.push(Output {
            name: name.to_string(),
            value: serde_json::to_value(value).expect("outputs serialize"),
            certified,
        });
    }

    /// An exact result: certified by construction.
    pub fn exact(&mut self, name: &str, value: impl Serialize) {
        self.push(name, value, true);
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.certified {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.outputs.iter().map(|o| o.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for o in &self.outputs {
            let flag = if o.certified { "" } else { "  [uncertified]" };
            let _ = writeln!(s, "{:width$}  {}{}", o.name, render(&o.value), flag);
        }
        s
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(render).collect::<Vec<_>>().join(", ")
        }
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

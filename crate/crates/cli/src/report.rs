use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's output in all three formats, plus its exit status.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: String,
    pub text: String,
    pub csv: String,
    pub exit: u8,
}

impl Report {
    pub fn new<T: Serialize>(data: &T, text: String, csv: String) -> Self {
        let json = serde_json::to_string(data).expect("report serializes");
        Report { json, text, csv, exit: 0 }
    }

    /// CSV made of the top-level fields of the JSON form, one per row.
    pub fn fields<T: Serialize>(data: &T, text: String) -> Self {
        let value = serde_json::to_value(data).expect("report serializes");
        let mut csv = String::from("field,value\n");
        if let serde_json::Value::Object(map) = &value {
            for (k, v) in map {
                let cell = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                csv.push_str(&format!("{k},{}\n", quote(&cell)));
            }
        }
        Self::new(data, text, csv)
    }

    pub fn with_exit(mut self, exit: u8) -> Self {
        self.exit = exit;
        self
    }

    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Text => &self.text,
            Format::Json => &self.json,
            Format::Csv => &self.csv,
        }
    }
}

pub fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

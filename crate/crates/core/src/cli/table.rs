use std::fmt::Write as _;

use super::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "pass" } else { "fail" }.to_string())
    }
}

/// 17 significant digits, exponent form; negative zero prints as zero.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{x:.16e}")
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Text(s) => s.clone(),
    }
}

/// Rows of cells under named columns, with a `key=value` metadata header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub name: String,
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ResultTable {
            name: name.to_string(),
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta(key, fmt_float(value));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# table={}", self.name).unwrap();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}={v}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell_text).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let s = |x: &str| serde_json::to_string(x).expect("string serialises");
        let mut out = String::new();
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"table\": {},", s(&self.name)).unwrap();
        writeln!(out, "  \"metadata\": [").unwrap();
        for (i, (k, v)) in self.metadata.iter().enumerate() {
            let sep = if i + 1 < self.metadata.len() { "," } else { "" };
            writeln!(out, "    [{}, {}]{sep}", s(k), s(v)).unwrap();
        }
        writeln!(out, "  ],").unwrap();
        let cols: Vec<String> = self.columns.iter().map(|c| s(c)).collect();
        writeln!(out, "  \"columns\": [{}],", cols.join(", ")).unwrap();
        writeln!(out, "  \"rows\": [").unwrap();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Float(v) if v.is_finite() => fmt_float(*v),
                    Cell::Float(_) => "null".to_string(),
                    Cell::Text(t) => s(t),
                })
                .collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(out, "    [{}]{sep}", cells.join(", ")).unwrap();
        }
        writeln!(out, "  ]").unwrap();
        writeln!(out, "}}").unwrap();
        out
    }

    /// Inverse of [`ResultTable::to_json`].
    pub fn from_json(text: &str) -> Result<Self, String> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let name = v["table"].as_str().ok_or("missing table name")?.to_string();
        let metadata = v["metadata"]
            .as_array()
            .ok_or("missing metadata")?
            .iter()
            .map(|p| match (p[0].as_str(), p[1].as_str()) {
                (Some(k), Some(v)) => Ok((k.to_string(), v.to_string())),
                _ => Err("bad metadata entry".to_string()),
            })
            .collect::<Result<_, _>>()?;
        let columns = v["columns"]
            .as_array()
            .ok_or("missing columns")?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or("bad column"))
            .collect::<Result<_, _>>()?;
        let rows = v["rows"]
            .as_array()
            .ok_or("missing rows")?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or("bad row")?
                    .iter()
                    .map(|c| match c {
                        serde_json::Value::Number(n) if n.is_i64() => Ok(Cell::Int(n.as_i64().unwrap())),
                        serde_json::Value::Number(n) => Ok(Cell::Float(n.as_f64().unwrap())),
                        serde_json::Value::Null => Ok(Cell::Float(f64::NAN)),
                        serde_json::Value::String(t) => Ok(Cell::Text(t.clone())),
                        _ => Err("bad cell"),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(ResultTable { name, metadata, columns, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new("demo", &["F", "l", "E", "note"]);
        t.meta("version", "0.1.0");
        t.meta_float("x", 0.1);
        t.push(vec![0.05.into(), (-3i64).into(), (std::f64::consts::PI * 1e-7).into(), "a \"b\"".into()]);
        t.push(vec![(-0.0).into(), 0i64.into(), 1e300.into(), "".into()]);
        t
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_float(2.0).parse::<f64>().unwrap(), 2.0);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# table=demo");
        assert_eq!(lines[3], "F,l,E,note");
        assert!(lines[4].starts_with("5.0000000000000003e-2,-3,"));
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        // -0.0 comes back as 0.0, which compares equal
        assert_eq!(ResultTable::from_json(&t.to_json()).unwrap(), t);
    }
}

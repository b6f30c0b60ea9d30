//! Machine-readable reports and their plain-text renderings.

use std::fmt::Write as _;

use qprop::composition::BivalenceReport;
use qprop::scenario::CheckItem;
use qprop::TruthValue;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub value: Option<bool>,
    pub status: &'static str,
    pub rendered: &'static str,
}

impl Row {
    pub fn new(name: impl Into<String>, v: TruthValue) -> Self {
        Row {
            name: name.into(),
            value: v.as_bool(),
            status: v.status(),
            rendered: v.rendered(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub kind: &'static str,
    pub scenario: Option<String>,
    pub state: String,
    pub eps: f64,
    /// Lattices containing the state's home subspace.
    pub home_lattices: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bivalence: Vec<BivalenceReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub kind: &'static str,
    pub scenario: Option<String>,
    pub ok: bool,
    pub items: Vec<CheckItem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub kind: &'static str,
    pub demo: String,
    pub sections: Vec<Section>,
}

/// Left-aligned two-or-more column table; widths count characters.
pub fn table(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let mut line = String::new();
            for (c, cell) in r.iter().enumerate() {
                if c + 1 == r.len() {
                    line.push_str(cell);
                } else {
                    let pad = widths[c] - cell.chars().count();
                    write!(line, "{cell}{}  ", " ".repeat(pad)).unwrap();
                }
            }
            line
        })
        .collect()
}

pub fn row_lines(rows: &[Row]) -> Vec<String> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.name.clone(), r.rendered.to_string(), r.status.to_string()])
        .collect();
    table(&cells)
}

pub fn bivalence_lines(b: &BivalenceReport) -> Vec<String> {
    vec![
        format!("{}: isolated value {}", b.proposition, b.pre_value.rendered()),
        format!("  witness lattice {}", b.witness_lattice),
        format!("  companion {} = {}", b.companion_env_prop, b.companion_value.rendered()),
        format!("  conjunction {}∧{} = {}", b.proposition, b.companion_env_prop, b.conjunction_value.rendered()),
        format!("  status {:?}", b.post_status),
    ]
}

impl EvalReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.scenario {
            writeln!(out, "scenario: {n}").unwrap();
        }
        writeln!(out, "state: {}", self.state).unwrap();
        writeln!(out, "home lattices: {}", self.home_lattices.join(", ")).unwrap();
        writeln!(out, "eps: {:e}", self.eps).unwrap();
        out.push('\n');
        for l in row_lines(&self.rows) {
            writeln!(out, "{l}").unwrap();
        }
        if !self.bivalence.is_empty() {
            out.push_str("\nenvironment-induced bivalence:\n");
            for b in &self.bivalence {
                for l in bivalence_lines(b) {
                    writeln!(out, "{l}").unwrap();
                }
            }
        }
        out
    }
}

impl CheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            writeln!(out, "{i}").unwrap();
        }
        let failed = self.items.iter().filter(|i| !i.ok).count();
        writeln!(
            out,
            "{} object(s) checked, {failed} failed",
            self.items.len()
        )
        .unwrap();
        out
    }
}

impl DemoReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "== {} ==", s.title).unwrap();
            for l in &s.lines {
                writeln!(out, "{l}").unwrap();
            }
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

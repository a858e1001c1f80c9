//! JSON file format for credal sets.
//!
//! ```json
//! {
//!   "variables": [{"name": "X1", "levels": ["x1", "~x1"]}, {"name": "X2", "levels": ["x2", "~x2"]}],
//!   "scope": ["X1", "X2"],
//!   "representation": "V",
//!   "vertices": [
//!     ["1/5", "4/5", "0", "0"],
//!     ["0.1", "0.4", "0.1", "0.4"]
//!   ]
//! }
//! ```
//!
//! `representation` is `"V"` (rows of `vertices`), `"H"` (a `constraints` list of
//! `{"normal": [...], "relation": "<=" | "=", "offset": "..."}`) or `"EMPTY"`, which
//! marks an empty result explicitly. Numbers are strings holding `p/q`, an integer or a
//! finite decimal; all are read exactly. `variables` may declare more variables than
//! the scope uses.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::compose::CompositionTrace;
use crate::credal::{CredalSet, Distribution, Scope, Variable};
use crate::error::{Error, Result};
use crate::polytope::{h_to_v, intersect, Constraint, HalfspaceSystem, Point, VertexSet};
use crate::rational::{format_decimal, format_exact, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub levels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    V,
    H,
    #[serde(rename = "EMPTY")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub normal: Vec<String>,
    pub relation: Relation,
    pub offset: String,
}

/// Serialized form; field order is the on-disk key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CredalFile {
    pub variables: Vec<VariableSpec>,
    pub scope: Vec<String>,
    pub representation: Representation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<ConstraintSpec>>,
}

/// Parsed contents of a credal file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Content {
    V(CredalSet),
    H(HalfspaceSystem),
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    /// Every declared variable, including ones outside the scope.
    pub variables: Vec<Variable>,
    pub scope: Scope,
    pub content: Content,
}

impl Document {
    /// The credal set described by the file. H-files are read as constraints on
    /// distributions, i.e. intersected with the probability simplex.
    pub fn into_credal_set(self) -> Result<CredalSet> {
        match self.content {
            Content::V(m) => Ok(m),
            Content::H(h) => {
                let within = intersect(&h, &HalfspaceSystem::simplex(self.scope.cell_count()))?;
                CredalSet::new(self.scope, h_to_v(&within)?)
            }
            Content::Empty => Err(Error::Empty),
        }
    }

    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name() == name)
    }
}

/// Display options for emitted numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmitOptions {
    /// Round to this many decimals instead of writing exact fractions.
    pub digits: Option<usize>,
}

impl EmitOptions {
    pub fn exact() -> Self {
        EmitOptions { digits: None }
    }

    pub fn rounded(digits: usize) -> Self {
        EmitOptions {
            digits: Some(digits),
        }
    }

    fn number(&self, q: &Rational) -> String {
        match self.digits {
            Some(d) => format_decimal(q, d),
            None => format_exact(q),
        }
    }
}

fn parse_numbers(row: &[String], location: impl Fn(usize) -> String) -> Result<Vec<Rational>> {
    row.iter()
        .enumerate()
        .map(|(j, s)| {
            parse_rational(s).map_err(|e| match e {
                Error::Parse { reason, .. } => Error::parse(location(j), reason),
                other => other,
            })
        })
        .collect()
}

/// Parses a credal file.
pub fn parse_credal(bytes: &[u8]) -> Result<Document> {
    let file: CredalFile = serde_json::from_slice(bytes).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    from_file(file)
}

pub fn from_file(file: CredalFile) -> Result<Document> {
    let variables = file
        .variables
        .into_iter()
        .map(|v| Variable::new(v.name, v.levels))
        .collect::<Result<Vec<_>>>()?;
    let catalog = Scope::new(variables.clone())?;
    let names: Vec<&str> = file.scope.iter().map(String::as_str).collect();
    let scope = catalog.select(&names)?;
    let width = scope.cell_count();

    let content = match file.representation {
        Representation::V => {
            let rows = file
                .vertices
                .ok_or_else(|| Error::parse("vertices", "a V file needs a vertices list"))?;
            if rows.is_empty() {
                return Err(Error::parse(
                    "vertices",
                    "a V file needs at least one vertex; use EMPTY",
                ));
            }
            let mut points = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                if row.len() != width {
                    return Err(Error::parse(
                        format!("vertices[{i}]"),
                        format!("{} entries for {width} cells", row.len()),
                    ));
                }
                let p = Point::new(parse_numbers(row, |j| format!("vertices[{i}][{j}]"))?);
                Distribution::new(scope.clone(), p.clone()).map_err(|e| match e {
                    Error::InvariantViolation { reason, .. } => {
                        Error::InvariantViolation { row: i, reason }
                    }
                    other => other,
                })?;
                points.push(p);
            }
            Content::V(CredalSet::new(
                scope.clone(),
                VertexSet::new(width, points)?,
            )?)
        }
        Representation::H => {
            let specs = file
                .constraints
                .ok_or_else(|| Error::parse("constraints", "an H file needs a constraints list"))?;
            let mut ineq = Vec::new();
            let mut eq = Vec::new();
            for (i, c) in specs.iter().enumerate() {
                if c.normal.len() != width {
                    return Err(Error::parse(
                        format!("constraints[{i}].normal"),
                        format!("{} entries for {width} cells", c.normal.len()),
                    ));
                }
                let normal = Point::new(parse_numbers(&c.normal, |j| {
                    format!("constraints[{i}].normal[{j}]")
                })?);
                let offset = parse_rational(&c.offset).map_err(|_| {
                    Error::parse(format!("constraints[{i}].offset"), "not a number")
                })?;
                let con = Constraint::new(normal, offset);
                match c.relation {
                    Relation::Le => ineq.push(con),
                    Relation::Eq => eq.push(con),
                }
            }
            Content::H(HalfspaceSystem::new(width, ineq, eq)?)
        }
        Representation::Empty => Content::Empty,
    };
    Ok(Document {
        variables,
        scope,
        content,
    })
}

fn variable_specs(scope: &Scope) -> Vec<VariableSpec> {
    scope
        .variables()
        .iter()
        .map(|v| VariableSpec {
            name: v.name().to_string(),
            levels: v.levels().to_vec(),
        })
        .collect()
}

fn scope_names(scope: &Scope) -> Vec<String> {
    scope.names().into_iter().map(String::from).collect()
}

pub fn credal_file(m: &CredalSet, opts: EmitOptions) -> CredalFile {
    CredalFile {
        variables: variable_specs(m.scope()),
        scope: scope_names(m.scope()),
        representation: Representation::V,
        vertices: Some(
            m.hull()
                .points()
                .iter()
                .map(|p| p.iter().map(|q| opts.number(q)).collect())
                .collect(),
        ),
        constraints: None,
    }
}

pub fn halfspace_file(scope: &Scope, h: &HalfspaceSystem, opts: EmitOptions) -> CredalFile {
    let spec = |c: &Constraint, relation| ConstraintSpec {
        normal: c.normal.iter().map(|q| opts.number(q)).collect(),
        relation,
        offset: opts.number(&c.offset),
    };
    let constraints = h
        .equalities()
        .iter()
        .map(|c| spec(c, Relation::Eq))
        .chain(h.inequalities().iter().map(|c| spec(c, Relation::Le)))
        .collect();
    CredalFile {
        variables: variable_specs(scope),
        scope: scope_names(scope),
        representation: Representation::H,
        vertices: None,
        constraints: Some(constraints),
    }
}

pub fn empty_file(scope: &Scope) -> CredalFile {
    CredalFile {
        variables: variable_specs(scope),
        scope: scope_names(scope),
        representation: Representation::Empty,
        vertices: None,
        constraints: None,
    }
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Renders a file with one vertex or constraint per line.
pub fn render(file: &CredalFile) -> String {
    let mut out = String::from("{\n  \"variables\": [\n");
    for (i, v) in file.variables.iter().enumerate() {
        let sep = if i + 1 < file.variables.len() {
            ","
        } else {
            ""
        };
        let _ = writeln!(out, "    {}{sep}", compact(v));
    }
    out.push_str("  ],\n");
    let _ = writeln!(out, "  \"scope\": {},", compact(&file.scope));
    let _ = write!(
        out,
        "  \"representation\": {}",
        compact(&file.representation)
    );
    let mut list = |key: &str, rows: Vec<String>| {
        let _ = write!(out, ",\n  \"{key}\": [\n");
        for (i, r) in rows.iter().enumerate() {
            let sep = if i + 1 < rows.len() { "," } else { "" };
            let _ = writeln!(out, "    {r}{sep}");
        }
        out.push_str("  ]");
    };
    if let Some(rows) = &file.vertices {
        list("vertices", rows.iter().map(compact).collect());
    }
    if let Some(cs) = &file.constraints {
        list("constraints", cs.iter().map(compact).collect());
    }
    out.push_str("\n}\n");
    out
}

/// Canonical bytes of a credal set; exact unless `opts.digits` is set.
pub fn emit_credal(m: &CredalSet, opts: EmitOptions) -> String {
    render(&credal_file(m, opts))
}

pub fn emit_halfspaces(scope: &Scope, h: &HalfspaceSystem, opts: EmitOptions) -> String {
    render(&halfspace_file(scope, h, opts))
}

pub fn emit_empty(scope: &Scope) -> String {
    render(&empty_file(scope))
}

fn row(p: &Point, opts: EmitOptions) -> Value {
    Value::from(p.iter().map(|q| opts.number(q)).collect::<Vec<_>>())
}

fn optional_set(m: &Option<CredalSet>, scope: &Scope, opts: EmitOptions) -> Value {
    let file = match m {
        Some(m) => credal_file(m, opts),
        None => empty_file(scope),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

/// JSON rendering of a composition trace.
pub fn emit_trace(
    trace: &CompositionTrace,
    m1: &CredalSet,
    m2: &CredalSet,
    opts: EmitOptions,
) -> Result<String> {
    let common = m1.scope().intersection(m2.scope())?;
    let pairs: Vec<Value> = trace
        .projective_pairs
        .iter()
        .map(|(a, b)| json!({"p1": row(a.masses(), opts), "p2": row(b.masses(), opts)}))
        .collect();
    let records: Vec<Value> = trace
        .projection_records
        .iter()
        .map(|r| json!({"p1": row(r.p1.masses(), opts), "q2": row(r.q2.masses(), opts), "rule": r.rule.as_str()}))
        .collect();
    let doc = json!({
        "core": optional_set(&trace.core, &common, opts),
        "m1_projective": optional_set(&trace.m1_projective, m1.scope(), opts),
        "m2_projective": optional_set(&trace.m2_projective, m2.scope(), opts),
        "projective_pairs": pairs,
        "projection_records": records,
        "result": serde_json::to_value(credal_file(&trace.result, opts)).expect("plain data serializes"),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    const TABLE1_LEFT: &str = r#"{
      "variables": [{"name": "X1", "levels": ["x1", "~x1"]}, {"name": "X2", "levels": ["x2", "~x2"]}],
      "scope": ["X1", "X2"],
      "representation": "V",
      "vertices": [
        ["0.2", "0.2", "0", "0.6"],
        ["0.1", "0.4", "0.1", "0.4"],
        ["0.25", "0.25", "0.25", "0.25"],
        ["0.2", "0.3", "0.3", "0.2"]
      ]
    }"#;

    #[test]
    fn parses_table_one() {
        let doc = parse_credal(TABLE1_LEFT.as_bytes()).unwrap();
        let m = doc.into_credal_set().unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.scope().names(), vec!["X1", "X2"]);
    }

    #[test]
    fn invariant_violation_reports_row() {
        let bad = TABLE1_LEFT.replace(
            r#"["0.1", "0.4", "0.1", "0.4"]"#,
            r#"["0.1", "0.4", "0.1", "0.3"]"#,
        );
        match parse_credal(bad.as_bytes()) {
            Err(Error::InvariantViolation { row, .. }) => assert_eq!(row, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractions_stay_exact() {
        let text = r#"{"variables": [{"name": "A", "levels": ["a", "b", "c"]}], "scope": ["A"],
            "representation": "V", "vertices": [["1/3", "1/3", "1/3"]]}"#;
        let m = parse_credal(text.as_bytes())
            .unwrap()
            .into_credal_set()
            .unwrap();
        assert_eq!(m.hull().points()[0][0], ratio(1, 3));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_credal(b"{"), Err(Error::Parse { .. })));
        let wide = TABLE1_LEFT.replace(
            r#"["0.2", "0.3", "0.3", "0.2"]"#,
            r#"["0.2", "0.3", "0.5"]"#,
        );
        assert!(matches!(
            parse_credal(wide.as_bytes()),
            Err(Error::Parse { .. })
        ));
        let junk = TABLE1_LEFT.replace("0.6", "zero");
        match parse_credal(junk.as_bytes()) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "vertices[0][3]"),
            other => panic!("{other:?}"),
        }
        let unknown = TABLE1_LEFT.replace("\"X1\", \"X2\"]", "\"X1\", \"X9\"]");
        assert!(matches!(
            parse_credal(unknown.as_bytes()),
            Err(Error::ScopeMismatch(_))
        ));
    }

    #[test]
    fn exact_round_trip() {
        let m = parse_credal(TABLE1_LEFT.as_bytes())
            .unwrap()
            .into_credal_set()
            .unwrap();
        let text = emit_credal(&m, EmitOptions::exact());
        assert!(text.contains("\"1/5\""));
        let back = parse_credal(text.as_bytes())
            .unwrap()
            .into_credal_set()
            .unwrap();
        assert_eq!(back, m);
        assert_eq!(emit_credal(&back, EmitOptions::exact()), text);
    }

    #[test]
    fn h_file_round_trip() {
        let m = parse_credal(TABLE1_LEFT.as_bytes())
            .unwrap()
            .into_credal_set()
            .unwrap();
        let text = emit_halfspaces(m.scope(), &m.to_h(), EmitOptions::exact());
        let doc = parse_credal(text.as_bytes()).unwrap();
        assert!(matches!(doc.content, Content::H(_)));
        assert_eq!(doc.into_credal_set().unwrap(), m);
    }

    #[test]
    fn empty_marker() {
        let scope = Scope::new(vec![Variable::binary("X2")]).unwrap();
        let text = emit_empty(&scope);
        assert!(text.contains("\"EMPTY\""));
        assert!(!text.contains("vertices"));
        let doc = parse_credal(text.as_bytes()).unwrap();
        assert_eq!(doc.content, Content::Empty);
        assert_eq!(doc.into_credal_set(), Err(Error::Empty));
    }

    #[test]
    fn rounded_emission() {
        let m = parse_credal(TABLE1_LEFT.as_bytes())
            .unwrap()
            .into_credal_set()
            .unwrap();
        let text = emit_credal(&m, EmitOptions::rounded(2));
        assert!(text.contains(r#"["0.25","0.25","0.25","0.25"]"#), "{text}");
    }
}

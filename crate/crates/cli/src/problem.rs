//! Problem files: a point matrix, declared divisor classes, `k`, and a task.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use fano_toric_core::divisors::{DivisorClass, ToricDivisor};
use fano_toric_core::Configuration;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Faces,
    Cayley,
    Smooth,
    Degrees,
    ExpectedDim,
    Check,
    Count,
    Analyze,
}

impl Task {
    pub const ALL: [Task; 8] = [
        Task::Faces,
        Task::Cayley,
        Task::Smooth,
        Task::Degrees,
        Task::ExpectedDim,
        Task::Check,
        Task::Count,
        Task::Analyze,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Faces => "faces",
            Task::Cayley => "cayley",
            Task::Smooth => "smooth",
            Task::Degrees => "degrees",
            Task::ExpectedDim => "expected-dim",
            Task::Check => "check",
            Task::Count => "count",
            Task::Analyze => "analyze",
        }
    }

    pub fn needs_classes(self) -> bool {
        !matches!(self, Task::Faces | Task::Cayley | Task::Smooth)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown task '{s}'"))
    }
}

/// A divisor declared once and referred to by name in class expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisDecl {
    /// Facet coefficients in the canonical facet order.
    Coefficients(Vec<i64>),
    /// `sum coefficient * D_F`, facets named by an inner normal in input
    /// coordinates.
    Terms(Vec<(Vec<i64>, i64)>),
    /// A multiple of the hyperplane class of `Y_A`.
    Hyperplane(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    Expr(Vec<(i64, String)>),
    Inline(BasisDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    /// Rows of the matrix; its columns are the points.
    pub points: Vec<Vec<i64>>,
    pub basis: BTreeMap<String, BasisDecl>,
    /// Source text of each class, for reports.
    pub class_names: Vec<String>,
    pub classes: Vec<ClassSpec>,
    pub k: Option<usize>,
    pub task: Option<Task>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<String>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

fn int(v: &Value) -> Option<i64> {
    v.as_i64()
}

fn int_vec(v: &Value, what: &str, errs: &mut Vec<String>) -> Option<Vec<i64>> {
    let Some(arr) = v.as_array() else {
        errs.push(format!("{what}: expected an array of integers"));
        return None;
    };
    let mut out = Vec::with_capacity(arr.len());
    let mut ok = true;
    for (i, x) in arr.iter().enumerate() {
        match int(x) {
            Some(n) => out.push(n),
            None => {
                errs.push(format!("{what}[{i}]: non-integer entry {x}"));
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

fn parse_decl(v: &Value, what: &str, errs: &mut Vec<String>) -> Option<BasisDecl> {
    let Some(obj) = v.as_object() else {
        errs.push(format!("{what}: expected an object"));
        return None;
    };
    if obj.len() != 1 {
        errs.push(format!(
            "{what}: expected exactly one of 'coefficients', 'terms', 'hyperplane'"
        ));
        return None;
    }
    let (key, val) = obj.iter().next().expect("one entry");
    match key.as_str() {
        "coefficients" => {
            int_vec(val, &format!("{what}.coefficients"), errs).map(BasisDecl::Coefficients)
        }
        "hyperplane" => match int(val) {
            Some(m) => Some(BasisDecl::Hyperplane(m)),
            None => {
                errs.push(format!("{what}.hyperplane: expected an integer"));
                None
            }
        },
        "terms" => {
            let Some(arr) = val.as_array() else {
                errs.push(format!("{what}.terms: expected an array"));
                return None;
            };
            let mut terms = Vec::new();
            let mut ok = true;
            for (i, t) in arr.iter().enumerate() {
                let w = format!("{what}.terms[{i}]");
                let normal = t
                    .get("normal")
                    .and_then(|n| int_vec(n, &format!("{w}.normal"), errs));
                let coeff = t.get("coefficient").map_or(Some(1), int);
                match (normal, coeff) {
                    (Some(n), Some(c)) => terms.push((n, c)),
                    (None, _) => {
                        if t.get("normal").is_none() {
                            errs.push(format!("{w}: missing 'normal'"));
                        }
                        ok = false;
                    }
                    (_, None) => {
                        errs.push(format!("{w}.coefficient: expected an integer"));
                        ok = false;
                    }
                }
            }
            ok.then_some(BasisDecl::Terms(terms))
        }
        other => {
            errs.push(format!("{what}: unknown divisor form '{other}'"));
            None
        }
    }
}

/// Parses `8H - 3E` into `[(8, "H"), (-3, "E")]`. Whitespace may separate
/// signs, coefficients and names, but not split them.
pub fn parse_class_expr(s: &str) -> Result<Vec<(i64, String)>, String> {
    let chars: Vec<char> = s.chars().collect();
    let skip_ws = |mut i: usize| {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        i
    };
    let mut out = Vec::new();
    let mut i = skip_ws(0);
    if i == chars.len() {
        return Err("empty class expression".into());
    }
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i = skip_ws(i + 1);
        } else if !out.is_empty() {
            return Err(format!("expected '+' or '-' at position {i} of '{s}'"));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if start == i {
            1
        } else {
            chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| format!("coefficient too large in '{s}'"))?
        };
        i = skip_ws(i);
        let nstart = i;
        if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
        }
        if nstart == i {
            return Err(format!("expected a basis name in '{s}'"));
        }
        out.push((sign * coeff, chars[nstart..i].iter().collect()));
        i = skip_ws(i);
    }
    Ok(out)
}

const KNOWN_KEYS: [&str; 7] = [
    "points",
    "basis",
    "classes",
    "k",
    "task",
    "name",
    "description",
];

/// Validates a problem file, reporting every problem found.
pub fn parse_problem(bytes: &[u8]) -> Result<ProblemFile, ValidationErrors> {
    let v: Value = serde_json::from_slice(bytes)
        .map_err(|e| ValidationErrors(vec![format!("malformed JSON: {e}")]))?;
    let Some(obj) = v.as_object() else {
        return Err(ValidationErrors(vec!["top level must be an object".into()]));
    };
    let mut errs = Vec::new();
    for key in obj.keys().filter(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        errs.push(format!("unknown field '{key}'"));
    }

    let mut points = Vec::new();
    match obj.get("points").and_then(Value::as_array) {
        None => errs.push("points: expected a matrix (array of rows)".into()),
        Some(rows) => {
            for (r, row) in rows.iter().enumerate() {
                if let Some(row) = int_vec(row, &format!("points[{r}]"), &mut errs) {
                    points.push(row);
                }
            }
            let ncols = points.first().map_or(0, Vec::len);
            if rows.is_empty() || ncols == 0 {
                errs.push("empty configuration".into());
            } else if points.iter().any(|r| r.len() != ncols) {
                errs.push("points: rows have different lengths".into());
            }
        }
    }

    let k = match obj.get("k") {
        None => None,
        Some(x) => match x.as_u64() {
            Some(k) => Some(k as usize),
            None => {
                errs.push(format!("k: expected a non-negative integer, found {x}"));
                None
            }
        },
    };
    let task = match obj.get("task") {
        None => None,
        Some(Value::String(s)) => match s.parse() {
            Ok(t) => Some(t),
            Err(e) => {
                errs.push(e);
                None
            }
        },
        Some(x) => {
            errs.push(format!("task: expected a string, found {x}"));
            None
        }
    };

    let mut basis = BTreeMap::new();
    match obj.get("basis") {
        None => {}
        Some(Value::Object(m)) => {
            for (name, decl) in m {
                if parse_class_expr(name).ok().as_deref() != Some(&[(1, name.clone())][..]) {
                    errs.push(format!("basis: '{name}' is not a valid name"));
                }
                if let Some(d) = parse_decl(decl, &format!("basis.{name}"), &mut errs) {
                    basis.insert(name.clone(), d);
                }
            }
        }
        Some(_) => errs.push("basis: expected an object".into()),
    }

    let mut classes = Vec::new();
    let mut class_names = Vec::new();
    match obj.get("classes") {
        None => {}
        Some(Value::Array(arr)) => {
            for (i, c) in arr.iter().enumerate() {
                match c {
                    Value::String(s) => match parse_class_expr(s) {
                        Ok(terms) => {
                            for (_, name) in &terms {
                                if !basis.contains_key(name) {
                                    errs.push(format!("classes[{i}]: unknown basis name '{name}'"));
                                }
                            }
                            classes.push(ClassSpec::Expr(terms));
                            class_names.push(s.clone());
                        }
                        Err(e) => errs.push(format!("classes[{i}]: {e}")),
                    },
                    other => {
                        if let Some(d) = parse_decl(other, &format!("classes[{i}]"), &mut errs) {
                            classes.push(ClassSpec::Inline(d));
                            class_names.push(format!("class {i}"));
                        }
                    }
                }
            }
        }
        Some(_) => errs.push("classes: expected an array".into()),
    }

    if errs.is_empty() {
        Ok(ProblemFile {
            points,
            basis,
            class_names,
            classes,
            k,
            task,
        })
    } else {
        Err(ValidationErrors(errs))
    }
}

fn resolve_decl(cfg: &Configuration, d: &BasisDecl, what: &str) -> Result<ToricDivisor, String> {
    match d {
        BasisDecl::Coefficients(c) => {
            ToricDivisor::new(cfg, c.clone()).map_err(|e| format!("{what}: {e}"))
        }
        BasisDecl::Hyperplane(m) => Ok(ToricDivisor::hyperplane(cfg).scale(*m)),
        BasisDecl::Terms(terms) => {
            let mut acc = ToricDivisor::zero(cfg);
            for (normal, a) in terms {
                if normal.len() != cfg.original_point(0).len() {
                    return Err(format!("{what}: normal {normal:?} has the wrong length"));
                }
                let j = cfg
                    .facet_by_functional(normal)
                    .ok_or_else(|| format!("{what}: no facet has inner normal {normal:?}"))?;
                acc = acc.add(&ToricDivisor::prime(cfg, j).scale(*a));
            }
            Ok(acc)
        }
    }
}

impl ProblemFile {
    /// Resolves every class on `cfg`, reporting all failures.
    pub fn resolve_classes(
        &self,
        cfg: &Configuration,
    ) -> Result<Vec<DivisorClass>, ValidationErrors> {
        let mut errs = Vec::new();
        let mut basis = BTreeMap::new();
        for (name, d) in &self.basis {
            match resolve_decl(cfg, d, &format!("basis.{name}")) {
                Ok(div) => {
                    basis.insert(name.as_str(), div);
                }
                Err(e) => errs.push(e),
            }
        }
        let mut out = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            let div = match c {
                ClassSpec::Inline(d) => resolve_decl(cfg, d, &format!("classes[{i}]")),
                ClassSpec::Expr(terms) => {
                    terms
                        .iter()
                        .try_fold(ToricDivisor::zero(cfg), |acc, (a, name)| {
                            basis
                                .get(name.as_str())
                                .map(|d| acc.add(&d.scale(*a)))
                                .ok_or_else(|| {
                                    format!("classes[{i}]: basis '{name}' did not resolve")
                                })
                        })
                }
            };
            match div
                .and_then(|d| DivisorClass::new(cfg, d).map_err(|e| format!("classes[{i}]: {e}")))
            {
                Ok(c) => out.push(c),
                Err(e) => errs.push(e),
            }
        }
        if errs.is_empty() {
            Ok(out)
        } else {
            Err(ValidationErrors(errs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_expressions() {
        assert_eq!(
            parse_class_expr("8H-3E").unwrap(),
            vec![(8, "H".to_string()), (-3, "E".to_string())]
        );
        assert_eq!(
            parse_class_expr(" -E + 2 H1 ").unwrap(),
            vec![(-1, "E".into()), (2, "H1".into())]
        );
        assert!(parse_class_expr("3").is_err());
        assert!(parse_class_expr("H E").is_err());
        assert!(parse_class_expr("").is_err());
    }

    #[test]
    fn collects_all_errors() {
        let src = br#"{"points": [[1, 0.5], [0, 1]], "k": -1, "task": "nope", "classes": ["2F"], "extra": 1}"#;
        let errs = parse_problem(src).unwrap_err().0;
        assert!(errs.len() >= 5, "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("non-integer")));
        assert!(errs.iter().any(|e| e.contains("unknown task")));
        assert!(errs.iter().any(|e| e.contains("unknown basis name 'F'")));
        assert!(errs.iter().any(|e| e.contains("unknown field 'extra'")));
    }

    #[test]
    fn empty_matrix() {
        let errs = parse_problem(br#"{"points": [[], []]}"#).unwrap_err().0;
        assert_eq!(errs, vec!["empty configuration".to_string()]);
    }
}

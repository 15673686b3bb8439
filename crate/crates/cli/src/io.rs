//! Point files, pair documents and result documents.

use std::fmt;

use border_core::{
    BorderPair, EnumerationResult, FieldSpec, MarkedPolynomial, OrderIdealSet, PointSet, Polynomial, Term,
};
use serde::{Deserialize, Serialize};

/// A problem with user input, located where possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        InputError {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError {
            message: message.into(),
            line: Some(line),
            column: Some(column),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

impl From<border_core::Error> for InputError {
    fn from(e: border_core::Error) -> Self {
        InputError::new(e.to_string())
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::at(e.line(), e.column(), e.to_string())
    }
}

/// `"Q"` or `{"p": 32003}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime { p: u64 },
}

impl FieldJson {
    pub fn of(field: FieldSpec) -> Self {
        match field.modulus() {
            None => FieldJson::Named("Q".into()),
            Some(p) => FieldJson::Prime { p },
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, InputError> {
        match self {
            FieldJson::Named(name) if name == "Q" || name == "QQ" => Ok(FieldSpec::rationals()),
            FieldJson::Named(name) => Err(InputError::new(format!("unknown field {name:?}, expected \"Q\" or {{\"p\": N}}"))),
            FieldJson::Prime { p } => Ok(FieldSpec::prime(*p)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFileJson {
    pub field: FieldJson,
    pub n: usize,
    pub points: Vec<Vec<String>>,
}

/// Parses a point file, JSON or text. Text files hold one point per line
/// with coordinates separated by whitespace or commas; `#` starts a comment
/// and an optional `field Q` or `field <p>` line selects the field.
pub fn parse_points(text: &str) -> Result<PointSet, InputError> {
    if text.trim_start().starts_with('{') {
        parse_points_json(text)
    } else {
        parse_points_text(text)
    }
}

fn parse_points_json(text: &str) -> Result<PointSet, InputError> {
    let doc: PointFileJson = serde_json::from_str(text)?;
    let field = doc.field.to_spec()?;
    let mut points = Vec::with_capacity(doc.points.len());
    for (i, p) in doc.points.iter().enumerate() {
        if p.len() != doc.n {
            return Err(InputError::new(format!(
                "point {} has {} coordinates, expected n = {}",
                i + 1,
                p.len(),
                doc.n
            )));
        }
        let mut coords = Vec::with_capacity(p.len());
        for (j, c) in p.iter().enumerate() {
            coords.push(
                field
                    .parse(c)
                    .map_err(|e| InputError::new(format!("point {}, coordinate {}: {e}", i + 1, j + 1)))?,
            );
        }
        points.push(coords);
    }
    Ok(PointSet::new(field, points)?)
}

fn parse_points_text(text: &str) -> Result<PointSet, InputError> {
    let mut field = FieldSpec::rationals();
    let mut raw: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = line.split('#').next().unwrap_or("");
        let tokens = tokens_with_columns(content);
        let Some(&(col, first)) = tokens.first() else {
            continue;
        };
        if first == "field" {
            if !raw.is_empty() {
                return Err(InputError::at(lineno, col, "field line must precede the points"));
            }
            let Some(&(vcol, value)) = tokens.get(1) else {
                return Err(InputError::at(lineno, col, "field line needs a value"));
            };
            field = if value == "Q" || value == "QQ" {
                FieldSpec::rationals()
            } else {
                let p: u64 = value
                    .parse()
                    .map_err(|_| InputError::at(lineno, vcol, format!("invalid field {value:?}")))?;
                FieldSpec::prime(p).map_err(|e| InputError::at(lineno, vcol, e.to_string()))?
            };
            continue;
        }
        raw.push((lineno, tokens));
    }
    let Some(arity) = raw.first().map(|(_, t)| t.len()) else {
        return Err(InputError::new("no points found"));
    };
    let mut points = Vec::with_capacity(raw.len());
    for (lineno, tokens) in &raw {
        if tokens.len() != arity {
            return Err(InputError::at(
                *lineno,
                1,
                format!("expected {arity} coordinates, found {}", tokens.len()),
            ));
        }
        let mut coords = Vec::with_capacity(arity);
        for &(col, tok) in tokens {
            coords.push(field.parse(tok).map_err(|e| InputError::at(*lineno, col, e.to_string()))?);
        }
        points.push(coords);
    }
    PointSet::new(field, points).map_err(|e| match e {
        border_core::Error::DuplicatePoints { first, second } => InputError::at(
            raw[second - 1].0,
            1,
            format!("point {second} repeats point {first} (line {})", raw[first - 1].0),
        ),
        other => other.into(),
    })
}

/// Tokens split on whitespace and commas, with 1-based columns.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, tok)| (line[..s].chars().count() + 1, tok))
        .collect()
}

pub fn points_to_json(points: &PointSet) -> PointFileJson {
    PointFileJson {
        field: FieldJson::of(points.field()),
        n: points.arity(),
        points: points
            .points()
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect())
            .collect(),
    }
}

pub fn points_to_text(points: &PointSet) -> String {
    let mut out = format!("field {}\n", field_label(points.field()));
    for p in points.points() {
        let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

fn field_label(field: FieldSpec) -> String {
    match field.modulus() {
        None => "Q".into(),
        Some(p) => p.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailTermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElementJson {
    pub border_term: Vec<u32>,
    pub tail: Vec<TailTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub order_ideal: Vec<Vec<u32>>,
    pub basis: Vec<BasisElementJson>,
    pub quasi: bool,
}

pub fn pair_to_json(pair: &BorderPair) -> PairJson {
    PairJson {
        order_ideal: pair.key(),
        basis: pair
            .basis()
            .iter()
            .map(|g| BasisElementJson {
                border_term: g.border_term().exponents().to_vec(),
                tail: g
                    .tail()
                    .terms()
                    .map(|(t, c)| TailTermJson {
                        exponents: t.exponents().to_vec(),
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect(),
        quasi: pair.is_quasi(),
    }
}

fn term_of(exps: &[u32], n: usize, what: &str) -> Result<Term, InputError> {
    if exps.len() != n {
        return Err(InputError::new(format!(
            "{what} has {} exponents, expected {n}",
            exps.len()
        )));
    }
    Ok(Term::from_exponents(exps))
}

/// Rebuilds a pair over `field` in `n` variables. Only the shape of the
/// document is checked here; mathematical checks belong to verification.
pub fn pair_from_json(doc: &PairJson, field: FieldSpec, n: usize) -> Result<BorderPair, InputError> {
    let terms = doc
        .order_ideal
        .iter()
        .map(|e| term_of(e, n, "order ideal term"))
        .collect::<Result<Vec<_>, _>>()?;
    let o = OrderIdealSet::from_terms(n, terms)?;
    let mut basis = Vec::with_capacity(doc.basis.len());
    for (i, g) in doc.basis.iter().enumerate() {
        let bt = term_of(&g.border_term, n, "border term")?;
        let mut tail_terms = Vec::with_capacity(g.tail.len());
        for t in &g.tail {
            let coeff = field
                .parse(&t.coeff)
                .map_err(|e| InputError::new(format!("basis element {}: {e}", i + 1)))?;
            tail_terms.push((term_of(&t.exponents, n, "tail term")?, coeff));
        }
        let tail = Polynomial::from_terms(n, field, tail_terms)?;
        basis.push(
            MarkedPolynomial::from_tail(bt, &tail)
                .map_err(|e| InputError::new(format!("basis element {}: {e}", i + 1)))?,
        );
    }
    Ok(BorderPair::new(o, basis, doc.quasi))
}

/// Output of an engine run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub field: FieldJson,
    pub n: usize,
    pub command: String,
    pub engine: String,
    pub pair_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_count: Option<u64>,
    pub pairs: Vec<PairJson>,
}

impl ResultDocument {
    pub fn from_pairs(points: &PointSet, command: &str, engine: &str, pairs: &[BorderPair]) -> Self {
        ResultDocument {
            field: FieldJson::of(points.field()),
            n: points.arity(),
            command: command.into(),
            engine: engine.into(),
            pair_count: pairs.len(),
            raw_count: None,
            branch_count: None,
            pairs: pairs.iter().map(pair_to_json).collect(),
        }
    }

    pub fn from_enumeration(points: &PointSet, command: &str, engine: &str, result: &EnumerationResult) -> Self {
        ResultDocument {
            raw_count: Some(result.raw_count),
            branch_count: Some(result.branch_count),
            ..Self::from_pairs(points, command, engine, &result.pairs)
        }
    }
}

/// Reads pairs from either a result document or a single pair document.
pub fn parse_pairs(text: &str, field: FieldSpec, n: usize) -> Result<Vec<BorderPair>, InputError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("pairs").is_some() {
        let doc: ResultDocument = serde_json::from_value(value).map_err(|e| InputError::new(e.to_string()))?;
        let doc_field = doc.field.to_spec()?;
        if doc_field != field || doc.n != n {
            return Err(InputError::new(format!(
                "pairs are over {doc_field} in {} variables, points over {field} in {n}",
                doc.n
            )));
        }
        doc.pairs.iter().map(|p| pair_from_json(p, field, n)).collect()
    } else {
        let doc: PairJson = serde_json::from_value(value).map_err(|e| InputError::new(e.to_string()))?;
        Ok(vec![pair_from_json(&doc, field, n)?])
    }
}

/// Human-readable listing of pairs.
pub fn pairs_to_text(pairs: &[BorderPair], names: &[String]) -> String {
    let mut out = String::new();
    for (i, pair) in pairs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let kind = if pair.is_quasi() { "quasi order ideal" } else { "order ideal" };
        out.push_str(&format!("{kind}: {}\n", pair.order_ideal().display_with(names)));
        for g in pair.basis() {
            out.push_str(&format!(
                "  [{}] {}\n",
                g.border_term().display_with(names),
                g.polynomial().display_with(names)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use border_core::{bm_all_quasi_order_ideals, FieldElement};
    use proptest::prelude::*;

    #[test]
    fn json_points() {
        let text = r#"{"field": "Q", "n": 2, "points": [["2","3"],["1","4"],["5/2","0"]]}"#;
        let x = parse_points(text).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.point(2)[0].to_string(), "5/2");
        let f = r#"{"field": {"p": 11}, "n": 1, "points": [["12"],["3"]]}"#;
        assert_eq!(parse_points(f).unwrap().point(0)[0].to_string(), "1");
    }

    #[test]
    fn json_errors_are_located() {
        let bad = "{\"field\": \"Q\",\n \"n\": 2,\n \"points\": [[\"1\" \"2\"]]}";
        let e = parse_points(bad).unwrap_err();
        assert_eq!(e.line, Some(3));
        let dup = r#"{"field": "Q", "n": 1, "points": [["1"],["2"],["1"]]}"#;
        assert!(parse_points(dup).unwrap_err().message.contains("points 1 and 3"));
        let coord = r#"{"field": "Q", "n": 1, "points": [["1"],["x"]]}"#;
        assert!(parse_points(coord).unwrap_err().message.contains("point 2, coordinate 1"));
    }

    #[test]
    fn text_points() {
        let text = "# grid\nfield 11\n0 0\n1, 2\n\n3 4 # last\n";
        let x = parse_points(text).unwrap();
        assert_eq!(x.field(), FieldSpec::prime(11).unwrap());
        assert_eq!(x.len(), 3);
        assert_eq!(parse_points(&points_to_text(&x)).unwrap(), x);
    }

    #[test]
    fn text_errors_are_located() {
        let e = parse_points("1 2\n3 4\n5 zz\n").unwrap_err();
        assert_eq!((e.line, e.column), (Some(3), Some(3)));
        let e = parse_points("1 2\n3\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_points("1 2\n\n1 2\n").unwrap_err();
        assert_eq!(e.line, Some(3));
        assert!(e.message.contains("repeats point 1"));
        assert!(parse_points("field 12\n1\n").is_err());
        assert!(parse_points("# nothing\n").is_err());
    }

    #[test]
    fn pair_documents_round_trip() {
        let x = PointSet::from_integers(FieldSpec::rationals(), &[&[2, 3], &[5, 6], &[1, 2]]).unwrap();
        let all = bm_all_quasi_order_ideals(&x).unwrap();
        let doc = ResultDocument::from_enumeration(&x, "all-quasi", "bm", &all);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(parse_pairs(&text, x.field(), 2).unwrap(), all.pairs);
        let single = serde_json::to_string(&pair_to_json(&all.pairs[0])).unwrap();
        assert_eq!(parse_pairs(&single, x.field(), 2).unwrap(), vec![all.pairs[0].clone()]);
        assert!(parse_pairs(&text, FieldSpec::prime(7).unwrap(), 2).is_err());
    }

    fn coeff_strategy() -> impl Strategy<Value = (FieldSpec, Vec<(u32, u32, i64, i64)>)> {
        let field = prop_oneof![
            Just(FieldSpec::rationals()),
            Just(FieldSpec::prime(2).unwrap()),
            Just(FieldSpec::prime(32003).unwrap()),
        ];
        (field, proptest::collection::vec((0u32..3, 0u32..3, -50i64..50, 1i64..20), 0..6))
    }

    proptest! {
        #[test]
        fn marked_polynomials_round_trip((field, terms) in coeff_strategy()) {
            let tail = Polynomial::from_terms(
                2,
                field,
                terms.iter().filter(|(a, b, _, _)| (*a, *b) != (3, 0)).map(|&(a, b, num, den)| {
                    let c: FieldElement = field.parse(&format!("{num}/{den}")).unwrap_or_else(|_| field.zero());
                    (Term::from_exponents(&[a, b]), c)
                }),
            ).unwrap();
            let g = MarkedPolynomial::from_tail(Term::from_exponents(&[3, 0]), &tail).unwrap();
            let o = OrderIdealSet::from_terms(2, [Term::one(2)]).unwrap();
            let pair = BorderPair::new(o, vec![g], true);
            let text = serde_json::to_string(&pair_to_json(&pair)).unwrap();
            let back = parse_pairs(&text, field, 2).unwrap();
            prop_assert_eq!(back, vec![pair]);
        }
    }
}

//! Algebra specification files.
//!
//! A spec is JSON with sparse structure constants. Scalars are strings in
//! the declared field, written in the variable `z` for the chosen root of
//! unity (`"1"`, `"-1/2"`, `"1 + z^2"`).
//!
//! ```json
//! {
//!   "field": {"kind": "cyclotomic", "order": 3},
//!   "dim": 2,
//!   "basis": ["1", "g"],
//!   "unit": [[0, "1"]],
//!   "counit": [[0, "1"], [1, "1"]],
//!   "mult": [[0, 0, [[0, "1"]]], [0, 1, [[1, "1"]]]],
//!   "comult": [[0, [[0, 0, "1"]]]],
//!   "antipode": [[0, [[0, "1"]]]]
//! }
//! ```
//!
//! `mult` rows are `[i, j, [[k, c], ...]]` meaning b_i·b_j = Σ c b_k;
//! `comult` rows are `[i, [[j, k, c], ...]]` meaning Δ(b_i) = Σ c b_j ⊗ b_k;
//! `antipode` rows are `[i, [[k, c], ...]]`. Omitted entries are zero.

use std::collections::BTreeSet;

use hopfrob::hopfcore::{BialgebraData, HopfData};
use hopfrob::scalars::{Field, FieldScalar, ScalarParseError};
use hopfrob::tensorlin::LinMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid spec at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error("scalar `{value}` at {path} is not in the declared field")]
    FieldMismatch { path: String, value: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FieldDoc {
    Rational,
    Cyclotomic { order: u32 },
}

type Terms = Vec<(usize, String)>;
type PairTerms = Vec<(usize, usize, String)>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    field: FieldDoc,
    dim: usize,
    basis: Vec<String>,
    unit: Terms,
    counit: Terms,
    mult: Vec<(usize, usize, Terms)>,
    comult: Vec<(usize, PairTerms)>,
    #[serde(default)]
    antipode: Option<Vec<(usize, Terms)>>,
}

/// A parsed specification: a bialgebra and perhaps an antipode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub bialgebra: BialgebraData,
    pub antipode: Option<LinMap>,
}

impl AlgebraSpec {
    pub fn from_hopf(h: &HopfData) -> Self {
        AlgebraSpec { bialgebra: h.bialgebra.clone(), antipode: Some(h.antipode.clone()) }
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim
    }
}

struct Ctx {
    field: Field,
    dim: usize,
}

impl Ctx {
    fn invalid(path: String, message: impl Into<String>) -> SpecError {
        SpecError::Invalid { path, message: message.into() }
    }

    fn index(&self, i: usize, path: impl Fn() -> String) -> Result<usize, SpecError> {
        if i < self.dim {
            Ok(i)
        } else {
            Err(Ctx::invalid(path(), format!("index {i} out of range for dimension {}", self.dim)))
        }
    }

    fn scalar(&self, s: &str, path: impl Fn() -> String) -> Result<FieldScalar, SpecError> {
        FieldScalar::parse(s, self.field).map_err(|e| match e {
            ScalarParseError::FieldMismatch(v) => SpecError::FieldMismatch { path: path(), value: v },
            ScalarParseError::Malformed(v) => Ctx::invalid(path(), format!("malformed scalar `{v}`")),
        })
    }

    /// Writes Σ c b_k into column `col` of `m`.
    fn terms_into(&self, terms: &Terms, m: &mut LinMap, col: usize, path: &str) -> Result<(), SpecError> {
        let mut seen = BTreeSet::new();
        for (t, (k, c)) in terms.iter().enumerate() {
            let here = || format!("{path}[{t}]");
            let k = self.index(*k, here)?;
            if !seen.insert(k) {
                return Err(Ctx::invalid(here(), format!("duplicate entry for index {k}")));
            }
            m.set(k, col, self.scalar(c, || format!("{path}[{t}][1]"))?);
        }
        Ok(())
    }
}

fn field_of(doc: &FieldDoc) -> Result<Field, SpecError> {
    match doc {
        FieldDoc::Rational => Ok(Field::Rational),
        FieldDoc::Cyclotomic { order: 0 } => Err(Ctx::invalid("field.order".into(), "order must be positive")),
        FieldDoc::Cyclotomic { order } => Ok(Field::Cyclotomic(*order)),
    }
}

/// Strict parse: unknown keys, out-of-range indices, repeated entries and
/// scalars outside the field are all errors.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| SpecError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = field_of(&doc.field)?;
    let d = doc.dim;
    if d == 0 {
        return Err(Ctx::invalid("dim".into(), "dimension must be positive"));
    }
    if doc.basis.len() != d {
        return Err(Ctx::invalid("basis".into(), format!("{} names for dimension {d}", doc.basis.len())));
    }
    let mut names = BTreeSet::new();
    for (i, n) in doc.basis.iter().enumerate() {
        if !names.insert(n) {
            return Err(Ctx::invalid(format!("basis[{i}]"), format!("repeated name `{n}`")));
        }
    }
    let cx = Ctx { field, dim: d };

    let mut unit = LinMap::zeros(d, 1);
    cx.terms_into(&doc.unit, &mut unit, 0, "unit")?;
    let mut counit_t = LinMap::zeros(d, 1);
    cx.terms_into(&doc.counit, &mut counit_t, 0, "counit")?;

    let mut mult = LinMap::zeros(d, d * d);
    let mut seen = BTreeSet::new();
    for (r, (i, j, terms)) in doc.mult.iter().enumerate() {
        let here = || format!("mult[{r}]");
        let (i, j) = (cx.index(*i, here)?, cx.index(*j, here)?);
        if !seen.insert((i, j)) {
            return Err(Ctx::invalid(here(), format!("duplicate product ({i}, {j})")));
        }
        cx.terms_into(terms, &mut mult, i * d + j, &format!("mult[{r}][2]"))?;
    }

    let mut comult = LinMap::zeros(d * d, d);
    let mut seen = BTreeSet::new();
    for (r, (i, terms)) in doc.comult.iter().enumerate() {
        let here = || format!("comult[{r}]");
        let i = cx.index(*i, here)?;
        if !seen.insert(i) {
            return Err(Ctx::invalid(here(), format!("duplicate coproduct of {i}")));
        }
        let mut inner = BTreeSet::new();
        for (t, (j, k, c)) in terms.iter().enumerate() {
            let at = || format!("comult[{r}][1][{t}]");
            let (j, k) = (cx.index(*j, at)?, cx.index(*k, at)?);
            if !inner.insert((j, k)) {
                return Err(Ctx::invalid(at(), format!("duplicate entry ({j}, {k})")));
            }
            comult.set(j * d + k, i, cx.scalar(c, || format!("comult[{r}][1][{t}][2]"))?);
        }
    }

    let antipode = match &doc.antipode {
        None => None,
        Some(rows) => {
            let mut s = LinMap::zeros(d, d);
            let mut seen = BTreeSet::new();
            for (r, (i, terms)) in rows.iter().enumerate() {
                let here = || format!("antipode[{r}]");
                let i = cx.index(*i, here)?;
                if !seen.insert(i) {
                    return Err(Ctx::invalid(here(), format!("duplicate column {i}")));
                }
                cx.terms_into(terms, &mut s, i, &format!("antipode[{r}][1]"))?;
            }
            Some(s)
        }
    };

    Ok(AlgebraSpec {
        bialgebra: BialgebraData {
            dim: d,
            field,
            mult,
            unit,
            comult,
            counit: counit_t.transpose(),
            basis_names: doc.basis,
        },
        antipode,
    })
}

fn column_terms(m: &LinMap, c: usize) -> Terms {
    m.col_sparse(c).into_iter().map(|(k, x)| (k, x.to_string())).collect()
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Canonical text: entries sorted by index, zeros omitted, one structure
/// constant row per line. parse_spec(export_spec(x)) == x.
pub fn export_spec(spec: &AlgebraSpec) -> String {
    let b = &spec.bialgebra;
    let d = b.dim;
    let field = match b.field {
        Field::Rational => FieldDoc::Rational,
        Field::Cyclotomic(order) => FieldDoc::Cyclotomic { order },
    };
    let mut out = String::from("{\n");
    out += &format!("  \"field\": {},\n", json(&field));
    out += &format!("  \"dim\": {d},\n");
    out += &format!("  \"basis\": {},\n", json(&b.basis_names));
    out += &format!("  \"unit\": {},\n", json(&column_terms(&b.unit, 0)));
    out += &format!("  \"counit\": {},\n", json(&column_terms(&b.counit.transpose(), 0)));

    let rows: Vec<String> = (0..d * d)
        .filter_map(|c| {
            let t = column_terms(&b.mult, c);
            (!t.is_empty()).then(|| json(&(c / d, c % d, t)))
        })
        .collect();
    out += &format!("  \"mult\": {}", block(&rows));

    let rows: Vec<String> = (0..d)
        .filter_map(|i| {
            let t: PairTerms = b
                .comult
                .col_sparse(i)
                .into_iter()
                .map(|(jk, x)| (jk / d, jk % d, x.to_string()))
                .collect();
            (!t.is_empty()).then(|| json(&(i, t)))
        })
        .collect();
    out += &format!(",\n  \"comult\": {}", block(&rows));

    if let Some(s) = &spec.antipode {
        let rows: Vec<String> = (0..d)
            .filter_map(|i| {
                let t = column_terms(s, i);
                (!t.is_empty()).then(|| json(&(i, t)))
            })
            .collect();
        out += &format!(",\n  \"antipode\": {}", block(&rows));
    }
    out += "\n}\n";
    out
}

fn block(rows: &[String]) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    format!("[\n    {}\n  ]", rows.join(",\n    "))
}

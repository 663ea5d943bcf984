//! JSON documents exchanged by the command-line tool.
//!
//! Every document is a single JSON object. Tables are 0-based and row-major.
//! Parameter records are recognised by their `family` key, everything else
//! by `kind`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brace::BraceDoc;
use crate::cycleset::{check_cycle_set, CycleSet, ValidityReport};
use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::solution::{check_solution, from_solution, Solution, SolutionReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSetDoc {
    pub kind: String,
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl CycleSetDoc {
    pub fn new(cs: &CycleSet) -> CycleSetDoc {
        CycleSetDoc { kind: "cycle_set".into(), n: cs.size(), table: cs.rows() }
    }

    /// Axiom report; shape errors (including a wrong `n`) are `Err`.
    pub fn check(&self) -> Result<ValidityReport> {
        if self.n != self.table.len() {
            return Err(Error::MalformedTable(format!("n = {} but the table has {} rows", self.n, self.table.len())));
        }
        check_cycle_set(&self.table)
    }

    pub fn to_cycle_set(&self) -> Result<CycleSet> {
        self.check()?;
        CycleSet::from_table(self.table.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub kind: String,
    pub n: usize,
    pub lam: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

impl SolutionDoc {
    pub fn new(sol: &Solution) -> SolutionDoc {
        SolutionDoc { kind: "solution".into(), n: sol.size(), lam: sol.lam_rows(), rho: sol.rho_rows() }
    }

    pub fn check(&self) -> Result<SolutionReport> {
        if self.n != self.lam.len() {
            return Err(Error::MalformedTable(format!("n = {} but lam has {} rows", self.n, self.lam.len())));
        }
        check_solution(&self.lam, &self.rho)
    }

    pub fn to_solution(&self) -> Result<Solution> {
        self.check()?;
        Solution::from_tables(self.lam.clone(), self.rho.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    CycleSet(CycleSetDoc),
    Solution(SolutionDoc),
    Brace(BraceDoc),
    Params(FamilyParams),
}

fn decode<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::MalformedDocument(e.to_string()))
}

impl Document {
    pub fn from_value(value: Value) -> Result<Document> {
        let Some(obj) = value.as_object() else {
            return Err(Error::MalformedDocument("expected a JSON object".into()));
        };
        if obj.contains_key("family") {
            return decode(value).map(Document::Params);
        }
        match obj.get("kind").and_then(Value::as_str) {
            Some("cycle_set") => decode(value).map(Document::CycleSet),
            Some("solution") => decode(value).map(Document::Solution),
            Some("perm_brace") => decode(value).map(Document::Brace),
            Some(other) => Err(Error::MalformedDocument(format!("unknown kind {other:?}"))),
            None => Err(Error::MalformedDocument("object has neither `kind` nor `family`".into())),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::CycleSet(_) => "cycle_set",
            Document::Solution(_) => "solution",
            Document::Brace(_) => "perm_brace",
            Document::Params(_) => "params",
        }
    }

    /// The cycle set the document describes. Solutions are converted and
    /// parameter records built; braces have no underlying cycle set.
    pub fn to_cycle_set(&self) -> Result<CycleSet> {
        match self {
            Document::CycleSet(doc) => doc.to_cycle_set(),
            Document::Solution(doc) => from_solution(&doc.to_solution()?),
            Document::Params(params) => params.build(),
            Document::Brace(_) => {
                Err(Error::MalformedDocument("a brace dump does not determine a cycle set".into()))
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let v = match self {
            Document::CycleSet(doc) => serde_json::to_value(doc),
            Document::Solution(doc) => serde_json::to_value(doc),
            Document::Brace(doc) => serde_json::to_value(doc),
            Document::Params(params) => serde_json::to_value(params),
        };
        v.expect("documents serialize")
    }
}

/// Parses a whitespace-separated stream of JSON objects (JSON lines, or a
/// single pretty-printed object).
pub fn parse_documents(text: &str) -> Result<Vec<Document>> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<Value>()
        .map(|v| v.map_err(|e| Error::MalformedDocument(e.to_string())).and_then(Document::from_value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cyclic_cycle_set;
    use crate::solution::to_solution;

    #[test]
    fn cycle_set_document_shape() {
        let doc = CycleSetDoc::new(&cyclic_cycle_set(2));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"kind":"cycle_set","n":2,"table":[[1,0],[1,0]]}"#);
        let back = parse_documents(&text).unwrap();
        assert_eq!(back, vec![Document::CycleSet(doc)]);
    }

    #[test]
    fn stream_of_mixed_documents() {
        let cs = cyclic_cycle_set(3);
        let text = format!(
            "{}\n{}\n{}",
            serde_json::to_string(&CycleSetDoc::new(&cs)).unwrap(),
            serde_json::to_string(&SolutionDoc::new(&to_solution(&cs))).unwrap(),
            r#"{"family":"irr","p":2,"phi":[0,1],"alpha":1}"#
        );
        let docs = parse_documents(&text).unwrap();
        let kinds: Vec<_> = docs.iter().map(Document::kind).collect();
        assert_eq!(kinds, ["cycle_set", "solution", "params"]);
        assert_eq!(docs[0].to_cycle_set().unwrap(), cs);
        assert_eq!(docs[1].to_cycle_set().unwrap(), cs);
        assert_eq!(docs[2].to_cycle_set().unwrap().size(), 4);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_documents("[1,2]"), Err(Error::MalformedDocument(_))));
        assert!(matches!(parse_documents(r#"{"kind":"matrix"}"#), Err(Error::MalformedDocument(_))));
        assert!(matches!(parse_documents(r#"{"kind":"cycle_set","n":2}"#), Err(Error::MalformedDocument(_))));
        let docs = parse_documents(r#"{"kind":"cycle_set","n":3,"table":[[0,1],[1,0]]}"#).unwrap();
        assert!(matches!(docs[0].to_cycle_set(), Err(Error::MalformedTable(_))));
    }
}

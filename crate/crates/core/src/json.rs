//! JSON documents emitted by the command-line tool. Polynomials and
//! rational functions are rendered as strings; rationals as `"p/q"`.

use serde::Serialize;

use crate::arith::Rat;
use crate::generation::GeneratedFamily;
use crate::lie::DumpTerm;
use crate::scalar_ops::ScalarDiffOp;
use crate::verify::{FlowField, IntertwiningReport, CellFlowReport};

#[derive(Debug, Clone, Serialize)]
pub struct DiffOpJson {
    pub order: Option<usize>,
    pub coeffs: Vec<String>,
}

impl From<&ScalarDiffOp> for DiffOpJson {
    fn from(op: &ScalarDiffOp) -> Self {
        DiffOpJson { order: op.order(), coeffs: op.coeff_strings() }
    }
}

/// `{"n", "J", "k", "y"}`; `y[j]` lists coefficients from `x^0` upward,
/// each a polynomial in `c_1..c_m`.
#[derive(Debug, Clone, Serialize)]
pub struct TupleJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub k: Vec<i64>,
    pub y: Vec<Vec<String>>,
    pub c: Option<Vec<Rat>>,
    pub eps: Vec<i64>,
    /// Every step satisfied its Wronskian equation and degree update.
    pub wronskian_exact: bool,
}

impl TupleJson {
    pub fn new(family: &GeneratedFamily, c: Option<&[Rat]>, wronskian_exact: bool) -> Self {
        let y = match c {
            Some(c) => family.tuple().specialize(c),
            None => family.tuple().clone(),
        };
        TupleJson {
            n: family.seq.n(),
            js: family.seq.js().to_vec(),
            k: family.seq.degrees().0.clone(),
            y: y.y.iter().map(|p| p.coeffs().iter().map(|q| q.to_string()).collect()).collect(),
            c: c.map(|c| c.to_vec()),
            eps: family.steps.iter().map(|s| s.eps).collect(),
            wronskian_exact,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub c: Vec<Rat>,
    pub degrees: Vec<i64>,
    pub fertile: bool,
    pub generic: bool,
    pub max_residual: f64,
    pub residual_tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub c: Option<Vec<Rat>>,
    pub v: Vec<String>,
    /// Cascade, tuple and conjugation routes agree; only at a point.
    pub routes_agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub c: Vec<Rat>,
    pub r: u32,
    pub entries: Vec<String>,
    pub tangent: bool,
}

impl From<&FlowField> for FlowJson {
    fn from(f: &FlowField) -> Self {
        FlowJson {
            n: f.entries.len() / 2,
            js: f.js.clone(),
            c: f.c.clone(),
            r: f.r,
            entries: f.entries.iter().map(|e| e.to_string()).collect(),
            tangent: f.is_tangent(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellFlowJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub r: u32,
    pub m: usize,
    pub gamma: Vec<String>,
    pub verified: bool,
    pub zero_field: bool,
    pub zero_by_support: bool,
    pub samples: usize,
    pub degree_budget: Option<u32>,
    pub degree: Option<u32>,
}

impl CellFlowJson {
    pub fn new(n: usize, rep: &CellFlowReport) -> Self {
        CellFlowJson {
            n,
            js: rep.js.clone(),
            r: rep.r,
            m: rep.m,
            gamma: rep.gamma.iter().map(|g| g.to_string()).collect(),
            verified: rep.verified,
            zero_field: rep.zero_field,
            zero_by_support: rep.zero_by_support,
            samples: rep.samples,
            degree_budget: rep.degree_budget,
            degree: rep.degree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KdvJson {
    pub n: usize,
    #[serde(rename = "J")]
    pub js: Vec<usize>,
    pub c: Vec<Rat>,
    pub r: u32,
    pub i: usize,
    pub tangent_image: DiffOpJson,
    pub kdv: DiffOpJson,
    pub equal: bool,
}

impl KdvJson {
    pub fn new(n: usize, js: &[usize], c: &[Rat], rep: &IntertwiningReport) -> Self {
        KdvJson {
            n,
            js: js.to_vec(),
            c: c.to_vec(),
            r: rep.r,
            i: rep.i,
            tangent_image: (&rep.tangent_image).into(),
            kdv: (&rep.kdv).into(),
            equal: rep.equal,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    /// `entries[row][col]` lists the nonzero `lambda` terms, 0-based indices.
    pub entries: Vec<Vec<Vec<DumpTerm>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixDumpJson {
    pub n: usize,
    pub what: String,
    pub r: Option<i64>,
    pub matrices: Vec<NamedMatrix>,
}

//! JSON ring and module definition files.
//!
//! Ring: `{"p": 2, "vars": ["x", "y"], "relations": ["x^2", "x*y", "y^2"], "nilpotency_bound": 2}`.
//!
//! Module: either `{"presentation": [[...], ...]}`, a matrix of polynomial
//! strings whose rows are generators and whose columns are relations, or
//! `{"action": [M_1, ...]}` with one square integer matrix per ring variable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{build_algebra, AlgebraError, AlgebraPresentation, LocalAlgebra};
use crate::exactla::{LinAlgError, Matrix, PrimeField};
use crate::modcat::{from_presentation, ModuleError, RModule};
use crate::poly::Polynomial;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{context}, column {column}: {message}")]
    Polynomial {
        context: String,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] LinAlgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub p: u64,
    #[serde(default)]
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub nilpotency_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleFile {
    Presentation(Vec<Vec<String>>),
    Action(Vec<Vec<Vec<i64>>>),
}

impl RingFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Arc<LocalAlgebra>, FormatError> {
        let field = PrimeField::new(self.p)?;
        let owned: Vec<String> = self.vars.clone();
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, r) in self.relations.iter().enumerate() {
            relations.push(Polynomial::parse(r, &owned).map_err(|e| FormatError::Polynomial {
                context: format!("relation {} (\"{r}\")", i + 1),
                column: e.column,
                message: e.message,
            })?);
        }
        let pres = AlgebraPresentation {
            field,
            variables: owned,
            relations,
            nilpotency_bound: self.nilpotency_bound,
        };
        Ok(build_algebra(&pres)?)
    }
}

pub fn load_ring(text: &str) -> Result<Arc<LocalAlgebra>, FormatError> {
    RingFile::parse(text)?.build()
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, algebra: &Arc<LocalAlgebra>) -> Result<RModule, FormatError> {
        let field = algebra.field();
        match self {
            ModuleFile::Presentation(rows) => {
                let gens = rows.len();
                let cols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(FormatError::Invalid(
                        "presentation rows must all have the same length".into(),
                    ));
                }
                let vars = algebra.var_names().to_vec();
                let mut relations = vec![Vec::with_capacity(gens); cols];
                for (i, row) in rows.iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        let p = Polynomial::parse(entry, &vars).map_err(|e| FormatError::Polynomial {
                            context: format!("presentation entry ({}, {})", i + 1, j + 1),
                            column: e.column,
                            message: e.message,
                        })?;
                        relations[j].push(algebra.eval_polynomial(&p));
                    }
                }
                Ok(from_presentation(algebra, gens, &relations)?)
            }
            ModuleFile::Action(mats) => {
                let mut out = Vec::with_capacity(mats.len());
                for (v, m) in mats.iter().enumerate() {
                    let n = m.len();
                    if m.iter().any(|r| r.len() != n) {
                        return Err(FormatError::Invalid(format!(
                            "action matrix {} is not square",
                            v + 1
                        )));
                    }
                    out.push(if n == 0 {
                        Matrix::zeros(field, 0, 0)
                    } else {
                        Matrix::from_rows(field, m)?
                    });
                }
                Ok(RModule::from_var_action(algebra.clone(), out)?)
            }
        }
    }
}

pub fn load_module(text: &str, algebra: &Arc<LocalAlgebra>) -> Result<RModule, FormatError> {
    ModuleFile::parse(text)?.build(algebra)
}

//! The machine-readable table: JSON schema, loading and instantiation.

use super::expr::{Expr, ExprError};
use crate::rational::{parse_q, Q};
use crate::singular::{canonical_type, QuotientType, SingularError};
use crate::surface::{SurfaceError, SurfaceModel};
use crate::weights::{Coeff, Exp, MonomialSupport, QuasiPolynomial, Quintuple, WeightError, VAR_NAMES};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Environment variable naming the dataset used when no path is given.
pub const DATASET_ENV: &str = "DPLCT_DATASET";

const BUNDLED: &str = include_str!("../../data/bigtable.json");

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed dataset: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("row {row}: {msg}")]
    Row { row: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    pub schema_version: u32,
    pub rows: Vec<TableRow>,
    #[serde(default)]
    pub informational: Informational,
}

/// One table entry; series entries carry expressions in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub weights: [String; 4],
    pub degree: String,
    #[serde(rename = "I")]
    pub fano_index: i64,
    pub k2: String,
    /// Picard rank as printed; never recomputed.
    pub rho: String,
    pub lct: Vec<LctEntry>,
    pub monomials: Vec<String>,
    pub singular_points: Vec<SingularEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    /// Coefficient overrides for every branch, keyed by monomial pattern.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coefficients: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctEntry {
    pub cond: BTreeMap<String, bool>,
    pub value: String,
    /// Coefficient overrides realizing this branch.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub locus: String,
    pub r: String,
    pub b1: String,
    pub b2: String,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub param: String,
    pub min_n: i64,
}

/// Where a stored value differs from the printed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub column: String,
    pub printed: String,
    pub stored: String,
    pub reason: String,
}

/// Values carried for reference and never recomputed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Informational {
    #[serde(default)]
    pub smooth_rows: Vec<SmoothRow>,
    #[serde(default)]
    pub threefold_values: Vec<ThreefoldValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothRow {
    pub weights: [String; 4],
    pub degree: String,
    #[serde(rename = "I")]
    pub fano_index: i64,
    pub k2: String,
    pub lct: Vec<LctEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldValue {
    pub description: String,
    pub lct: String,
}

impl Dataset {
    pub fn from_json(text: &str) -> Result<Dataset, DatasetError> {
        let d: Dataset = serde_json::from_str(text)?;
        if d.schema_version != 1 {
            return Err(DatasetError::Schema(d.schema_version));
        }
        Ok(d)
    }

    pub fn load(path: &Path) -> Result<Dataset, DatasetError> {
        let text = std::fs::read_to_string(path).map_err(|e| DatasetError::Io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    /// The dataset shipped with the crate.
    pub fn bundled() -> Dataset {
        Self::from_json(BUNDLED).expect("bundled dataset is valid")
    }

    /// The row (and `n`) whose instantiation is `q`.
    pub fn find(&self, q: &Quintuple) -> Result<Option<RowInstance>, DatasetError> {
        for row in &self.rows {
            let ns: Vec<Option<i64>> = match &row.series {
                None => vec![None],
                // The degree grows with n.
                Some(s) => (s.min_n..).map(Some).take_while(|&n| eval_u64(row, &row.degree, n).is_ok_and(|d| d <= q.degree())).collect(),
            };
            for n in ns {
                if eval_u64(row, &row.degree, n)? != q.degree() {
                    continue;
                }
                let mut w: Vec<u64> = row.weights.iter().map(|e| eval_u64(row, e, n)).collect::<Result<_, _>>()?;
                w.sort_unstable();
                if w == q.weights() {
                    return row.instantiate(n).map(Some);
                }
            }
        }
        Ok(None)
    }

    /// `path`, else `$DPLCT_DATASET`, else the bundled table.
    pub fn resolve(path: Option<&Path>) -> Result<Dataset, DatasetError> {
        match path {
            Some(p) => Self::load(p),
            None => match std::env::var_os(DATASET_ENV) {
                Some(p) => Self::load(Path::new(&p)),
                None => Ok(Self::bundled()),
            },
        }
    }
}

impl TableRow {
    /// Label as printed, e.g. `(2,2n+1,2n+1,4n+1,8n+4)`.
    pub fn label(&self) -> String {
        let strip = |s: &str| s.replace('*', "");
        let w: Vec<String> = self.weights.iter().map(|s| strip(s)).collect();
        format!("({},{})", w.join(","), strip(&self.degree))
    }

    pub fn is_series(&self) -> bool {
        self.series.is_some()
    }

    /// Values of `n` in `range` valid for this row; `[None]` for sporadic rows.
    pub fn parameters(&self, range: std::ops::RangeInclusive<i64>) -> Vec<Option<i64>> {
        match &self.series {
            None => vec![None],
            Some(s) => range.filter(|&n| n >= s.min_n).map(Some).collect(),
        }
    }
}

/// A lct branch of an instantiated row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchInstance {
    pub cond: BTreeMap<String, bool>,
    pub value: Q,
    pub coefficients: BTreeMap<Exp, Q>,
}

/// A row at a fixed `n`, with variables reordered so the weights increase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowInstance {
    pub label: String,
    pub n: Option<i64>,
    pub quintuple: Quintuple,
    pub fano_index: i64,
    pub k2: Q,
    pub rho: i64,
    /// Listed monomials, in listed order.
    pub monomials: Vec<Exp>,
    pub row_coefficients: BTreeMap<Exp, Q>,
    pub branches: Vec<BranchInstance>,
    /// Expected singular points as `(canonical type, count)`.
    pub singular_points: Vec<(QuotientType, u64)>,
}

fn row_err(row: &TableRow, msg: impl ToString) -> DatasetError {
    DatasetError::Row { row: row.label(), msg: msg.to_string() }
}

/// Parses `x^(n+1)*y*t`; exponents are literals or parenthesized expressions.
pub fn parse_pattern(s: &str, n: Option<i64>) -> Result<Exp, String> {
    let b = s.as_bytes();
    let mut e = [0u32; 4];
    let mut i = 0;
    while i < b.len() {
        let var = VAR_NAMES.iter().position(|v| v.as_bytes()[0] == b[i]).ok_or_else(|| format!("bad monomial {s:?}"))?;
        i += 1;
        let mut exp = 1u32;
        if b.get(i) == Some(&b'^') {
            i += 1;
            let start = i;
            if b.get(i) == Some(&b'(') {
                let mut depth = 0;
                while i < b.len() {
                    depth += match b[i] {
                        b'(' => 1,
                        b')' => -1,
                        _ => 0,
                    };
                    i += 1;
                    if depth == 0 {
                        break;
                    }
                }
            } else {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let ex = Expr::parse(&s[start..i]).map_err(|e| e.to_string())?;
            exp = ex.eval_u64(n).map_err(|e| e.to_string())?.try_into().map_err(|_| format!("exponent too large in {s:?}"))?;
        }
        e[var] += exp;
        match b.get(i) {
            None => {}
            Some(b'*') => i += 1,
            Some(_) => return Err(format!("bad monomial {s:?}")),
        }
    }
    Ok(e)
}

fn eval_str(row: &TableRow, s: &str, n: Option<i64>) -> Result<Q, DatasetError> {
    let e = Expr::parse(s).map_err(|e| row_err(row, e))?;
    e.eval(n).map_err(|e| row_err(row, e))
}

fn eval_u64(row: &TableRow, s: &str, n: Option<i64>) -> Result<u64, DatasetError> {
    let e = Expr::parse(s).map_err(|e| row_err(row, e))?;
    e.eval_u64(n).map_err(|e: ExprError| row_err(row, e))
}

fn coefficient_map(
    row: &TableRow,
    map: &BTreeMap<String, String>,
    n: Option<i64>,
    perm: &[usize; 4],
) -> Result<BTreeMap<Exp, Q>, DatasetError> {
    map.iter()
        .map(|(m, v)| {
            let e = parse_pattern(m, n).map_err(|e| row_err(row, e))?;
            let c = parse_q(v).map_err(|e| row_err(row, e))?;
            Ok((permute(&e, perm), c))
        })
        .collect()
}

/// Exponents in printed variable order → sorted order.
fn permute(e: &Exp, perm: &[usize; 4]) -> Exp {
    std::array::from_fn(|k| e[perm[k]])
}

impl TableRow {
    pub fn instantiate(&self, n: Option<i64>) -> Result<RowInstance, DatasetError> {
        if self.is_series() != n.is_some() {
            return Err(row_err(self, "series rows need n; sporadic rows take none"));
        }
        let printed: Vec<u64> = self.weights.iter().map(|w| eval_u64(self, w, n)).collect::<Result<_, _>>()?;
        let mut perm = [0usize, 1, 2, 3];
        perm.sort_by_key(|&i| printed[i]);
        let degree = eval_u64(self, &self.degree, n)?;
        let quintuple = Quintuple::new([printed[0], printed[1], printed[2], printed[3]], degree)
            .map_err(|e: WeightError| row_err(self, e))?;
        let monomials = self
            .monomials
            .iter()
            .map(|m| parse_pattern(m, n).map(|e| permute(&e, &perm)).map_err(|e| row_err(self, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let row_coefficients = coefficient_map(self, &self.coefficients, n, &perm)?;
        let branches = self
            .lct
            .iter()
            .map(|b| {
                Ok(BranchInstance {
                    cond: b.cond.clone(),
                    value: parse_q(&b.value).map_err(|e| row_err(self, e))?,
                    coefficients: coefficient_map(self, &b.coefficients, n, &perm)?,
                })
            })
            .collect::<Result<Vec<_>, DatasetError>>()?;
        if branches.is_empty() {
            return Err(row_err(self, "no lct branches"));
        }
        let singular_points = self
            .singular_points
            .iter()
            .map(|p| {
                let r = eval_u64(self, &p.r, n)? as i64;
                let b1 = eval_u64(self, &p.b1, n)? as i64;
                let b2 = eval_u64(self, &p.b2, n)? as i64;
                let t = canonical_type(r, b1, b2).map_err(|e: SingularError| row_err(self, e))?;
                Ok((t, eval_u64(self, &p.count, n)?))
            })
            .collect::<Result<Vec<_>, DatasetError>>()?;
        Ok(RowInstance {
            label: self.label(),
            n,
            quintuple,
            fano_index: self.fano_index,
            k2: eval_str(self, &self.k2, n)?,
            rho: eval_u64(self, &self.rho, n)? as i64,
            monomials,
            row_coefficients,
            branches,
            singular_points,
        })
    }
}

impl RowInstance {
    pub fn support(&self) -> Result<MonomialSupport, WeightError> {
        MonomialSupport::new(&self.quintuple, self.monomials.iter().copied())
    }

    /// Expected singular points as a multiset of types.
    pub fn expected_type_counts(&self) -> BTreeMap<QuotientType, u64> {
        let mut out = BTreeMap::new();
        for (t, c) in &self.singular_points {
            *out.entry(*t).or_insert(0) += c;
        }
        out
    }

    /// Concrete polynomial for branch `k`: the `j`-th listed monomial gets
    /// coefficient `j + 1`, then row and branch overrides apply.
    pub fn polynomial(&self, k: usize) -> Result<QuasiPolynomial, WeightError> {
        let mut terms: BTreeMap<Exp, Q> =
            self.monomials.iter().enumerate().map(|(j, e)| (*e, Q::from_integer((j as i64 + 1).into()))).collect();
        for (e, c) in self.row_coefficients.iter().chain(&self.branches[k].coefficients) {
            terms.insert(*e, c.clone());
        }
        QuasiPolynomial::new(self.quintuple.clone(), terms.into_iter().map(|(e, c)| (e, Coeff::Value(c))).collect())
    }

    pub fn model(&self, k: usize) -> Result<SurfaceModel, SurfaceError> {
        SurfaceModel::new(&self.polynomial(k)?, self.branches[k].cond.clone(), vec![])
    }

    /// `(a0,a1,a2,a3,d)` with `n` appended for series rows.
    pub fn display_name(&self) -> String {
        match self.n {
            Some(n) => format!("{} at n={n}", self.quintuple),
            None => self.quintuple.to_string(),
        }
    }
}

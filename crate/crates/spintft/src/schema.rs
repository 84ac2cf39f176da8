//! Input documents and their conversion into validated core objects.
//!
//! Every schema accepts an optional free-text `"comment"` so corpus files can
//! carry their own annotation.

use std::collections::BTreeSet;

use serde::Deserialize;
use spintft_core::classify::LatticeData;
use spintft_core::metric::{parse_element, FiniteAbelianGroup, GroupElement, QuadraticForm};
use spintft_core::scalar::{parse_rational, Cyclotomic, QmodZ, Rational};
use spintft_core::spin::{PointedSpinModular, Simple, SpinModularSummary};
use spintft_core::surgery::{is_characteristic, LinkingMatrix};

use crate::error::CliError;

/// A rational written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn parse(&self, field: &str) -> Result<Rational, CliError> {
        match self {
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(s) => {
                parse_rational(s).map_err(|_| CliError::Schema(format!("{field}: `{s}` is not a rational number")))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FormDoc {
    /// Symmetric matrix `M` with `q(x) = x^T M x` on residue vectors.
    Gram(Vec<Vec<RationalText>>),
    /// Value on every element, keyed by residue tuples such as `"(1,0)"`.
    Table(serde_json::Map<String, serde_json::Value>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricGroupDoc {
    #[serde(default)]
    pub comment: Option<String>,
    pub orders: Vec<u64>,
    pub q: FormDoc,
    #[serde(default)]
    pub fermion: Option<Vec<u64>>,
}

impl MetricGroupDoc {
    pub fn form(&self) -> Result<QuadraticForm, CliError> {
        let group = FiniteAbelianGroup::new(self.orders.clone()).map_err(|e| CliError::schema("orders", e))?;
        match &self.q {
            FormDoc::Gram(rows) => {
                let gram = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, x)| x.parse(&format!("q.gram[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                QuadraticForm::from_gram(group, &gram).map_err(|e| CliError::schema("q.gram", e))
            }
            FormDoc::Table(map) => {
                let mut values: Vec<Option<QmodZ>> = vec![None; group.size()];
                for (key, raw) in map {
                    let field = format!("q.table[\"{key}\"]");
                    let x = parse_element(key).map_err(|e| CliError::schema(&field, e))?;
                    group.check(&x).map_err(|e| CliError::schema(&field, e))?;
                    let v: RationalText = serde_json::from_value(raw.clone())
                        .map_err(|_| CliError::Schema(format!("{field}: expected \"p/q\" or an integer")))?;
                    let slot = &mut values[group.index(&x)];
                    if slot.is_some() {
                        return Err(CliError::Schema(format!("{field}: element listed twice")));
                    }
                    *slot = Some(QmodZ::new(v.parse(&field)?));
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| CliError::Schema(format!("q.table: missing element {}", group.element(i))))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                QuadraticForm::from_values(group, &values).map_err(|e| CliError::schema("q.table", e))
            }
        }
    }

    pub fn pointed(&self) -> Result<PointedSpinModular, CliError> {
        let q = self.form()?;
        let f =
            self.fermion.clone().ok_or_else(|| CliError::Schema("fermion: required for pointed spin data".into()))?;
        PointedSpinModular::new(q, GroupElement(f)).map_err(|e| CliError::schema("fermion", e))
    }
}

/// `{"order": N, "coefficients": [...]}` in the power basis of `Q(zeta_N)`,
/// a bare rational, or `{"sqrt": n}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CyclotomicDoc {
    Rational(RationalText),
    Sqrt { sqrt: u64 },
    Exact { order: u64, coefficients: Vec<RationalText> },
}

impl CyclotomicDoc {
    pub fn value(&self, field: &str) -> Result<Cyclotomic, CliError> {
        match self {
            CyclotomicDoc::Rational(r) => Ok(Cyclotomic::from_rational(r.parse(field)?)),
            CyclotomicDoc::Sqrt { sqrt } => Ok(Cyclotomic::sqrt_nat(*sqrt)),
            CyclotomicDoc::Exact { order, coefficients } => {
                let coeffs = coefficients
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.parse(&format!("{field}.coefficients[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Cyclotomic::from_coefficients(*order, coeffs).map_err(|e| CliError::schema(field, e))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleDoc {
    pub label: String,
    pub dim: CyclotomicDoc,
    pub degree: u8,
    pub fixed_by_f: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummaryDoc {
    #[serde(default)]
    pub comment: Option<String>,
    pub simples: Vec<SimpleDoc>,
    pub fermion_dim: i8,
}

impl SummaryDoc {
    pub fn summary(&self) -> Result<SpinModularSummary, CliError> {
        let mut labels = BTreeSet::new();
        let simples = self
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if !labels.insert(s.label.as_str()) {
                    return Err(CliError::Schema(format!("simples[{i}].label: duplicate label `{}`", s.label)));
                }
                Ok(Simple {
                    label: s.label.clone(),
                    dim: s.dim.value(&format!("simples[{i}].dim"))?,
                    degree: s.degree,
                    fixed_by_f: s.fixed_by_f,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SpinModularSummary::new(simples, self.fermion_dim).map_err(|e| CliError::schema("simples", e))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryDoc {
    #[serde(default)]
    pub comment: Option<String>,
    pub linking_matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub sublink: Option<Vec<u8>>,
}

impl SurgeryDoc {
    pub fn link(&self) -> Result<(LinkingMatrix, Option<Vec<u8>>), CliError> {
        let l = LinkingMatrix::new(self.linking_matrix.clone()).map_err(|e| CliError::schema("linking_matrix", e))?;
        if let Some(s) = &self.sublink {
            if s.len() != l.size() || s.iter().any(|&x| x > 1) {
                return Err(CliError::Schema(format!("sublink: expected {} entries in {{0,1}}", l.size())));
            }
            if !is_characteristic(&l, s) {
                return Err(CliError::Schema("sublink: not characteristic (L s != diag(L) mod 2)".into()));
            }
        }
        Ok((l, self.sublink.clone()))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    #[serde(default)]
    pub comment: Option<String>,
    pub gram: Vec<Vec<i64>>,
    pub w2: Vec<i64>,
}

impl LatticeDoc {
    pub fn lattice(&self) -> Result<LatticeData, CliError> {
        LatticeData::new(self.gram.clone(), self.w2.clone()).map_err(|e| CliError::schema("gram/w2", e))
    }
}

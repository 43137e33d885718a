//! Extended formulations and the operations that compose them.
//!
//! An [`ExtForm`] is a system `A·x + B·y ≤ b, C·x + D·y = c` over a labelled
//! `x`-block followed by an unlabelled auxiliary `y`-block. Its size is the
//! number of inequality rows.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::exactq::{LinearRow, Rational};

pub const EF_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("x-spaces differ: {0}")]
    LabelMismatch(String),
    #[error("label {0:?} clashes")]
    LabelClash(String),
    #[error("label {0:?} not found in target space")]
    UnknownLabel(String),
    #[error("union of zero parts")]
    NoParts,
    #[error("part {0} is trivially empty")]
    EmptyPart(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported schema version {0}")]
    Schema(u32),
}

/// Which operation built an EF, with its parameters and inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub op: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Provenance>,
}

impl Provenance {
    pub fn leaf(op: &str) -> Self {
        Provenance {
            op: op.to_string(),
            params: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn node(op: &str, children: Vec<Provenance>) -> Self {
        Provenance {
            children,
            ..Provenance::leaf(op)
        }
    }

    /// Every `warning` parameter in the tree, in preorder.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            if let Some(w) = p.params.get("warning") {
                out.push(w.clone());
            }
            stack.extend(p.children.iter().rev());
        }
        out
    }
}

/// `x`-block labels, auxiliary count, rows and provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtForm {
    pub schema_version: u32,
    labels: Vec<String>,
    aux: usize,
    inequalities: Vec<LinearRow>,
    equalities: Vec<LinearRow>,
    provenance: Provenance,
}

fn one() -> Rational {
    Rational::one()
}

fn minus_one() -> Rational {
    -Rational::one()
}

/// `Σ coeffs · v ≤ / = rhs` with columns remapped by `f`.
fn remap(row: &LinearRow, f: impl Fn(usize) -> usize) -> LinearRow {
    LinearRow::new(
        row.coeffs.iter().map(|(i, a)| (f(*i), a.clone())).collect(),
        row.rhs.clone(),
    )
}

fn trivially_empty(f: &ExtForm) -> bool {
    let dead = |r: &LinearRow| r.coeffs.iter().all(|(_, a)| a.is_zero());
    f.inequalities
        .iter()
        .any(|r| dead(r) && r.rhs.is_negative())
        || f.equalities.iter().any(|r| dead(r) && !r.rhs.is_zero())
}

impl ExtForm {
    pub fn new(
        labels: Vec<String>,
        aux: usize,
        inequalities: Vec<LinearRow>,
        equalities: Vec<LinearRow>,
        provenance: Provenance,
    ) -> Result<Self, PolyError> {
        let f = ExtForm {
            schema_version: EF_SCHEMA_VERSION,
            labels,
            aux,
            inequalities,
            equalities,
            provenance,
        };
        f.validate()?;
        Ok(f)
    }

    /// Check column indices, label uniqueness and the schema version.
    pub fn validate(&self) -> Result<(), PolyError> {
        if self.schema_version != EF_SCHEMA_VERSION {
            return Err(PolyError::Schema(self.schema_version));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                return Err(PolyError::LabelClash(l.clone()));
            }
        }
        let n = self.num_columns();
        for row in self.inequalities.iter().chain(&self.equalities) {
            if let Some((i, _)) = row.coeffs.iter().find(|(i, _)| *i >= n) {
                return Err(PolyError::DimensionMismatch(format!(
                    "column {i} in a system with {n} columns"
                )));
            }
        }
        Ok(())
    }

    /// The system with no rows over `labels`: all of `R^labels`.
    pub fn free(labels: Vec<String>) -> Self {
        ExtForm {
            schema_version: EF_SCHEMA_VERSION,
            labels,
            aux: 0,
            inequalities: Vec::new(),
            equalities: Vec::new(),
            provenance: Provenance::leaf("free"),
        }
    }

    pub fn size(&self) -> usize {
        self.inequalities.len()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn aux_count(&self) -> usize {
        self.aux
    }

    pub fn num_columns(&self) -> usize {
        self.labels.len() + self.aux
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn inequalities(&self) -> &[LinearRow] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[LinearRow] {
        &self.equalities
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("EF serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let f: ExtForm = serde_json::from_str(s).map_err(|e| e.to_string())?;
        f.validate().map_err(|e| e.to_string())?;
        Ok(f)
    }

    /// Same system with the `x`-block renamed.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, PolyError> {
        if labels.len() != self.labels.len() {
            return Err(PolyError::DimensionMismatch(format!(
                "{} labels for a {}-dimensional x-block",
                labels.len(),
                self.labels.len()
            )));
        }
        let mut f = self.clone();
        f.labels = labels;
        f.validate()?;
        Ok(f)
    }

    /// Replace the provenance tree.
    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }
}

/// `conv(⋃ parts)`: `x = Σ xᵢ`, `Σ λᵢ = 1`, `λᵢ ≥ 0`, and each part's rows
/// with right-hand sides scaled by `λᵢ`. Columns are `x` followed by, per
/// part, its copy `xᵢ`, its auxiliaries and `λᵢ`.
pub fn balas_union(parts: &[ExtForm]) -> Result<ExtForm, PolyError> {
    let first = parts.first().ok_or(PolyError::NoParts)?;
    let d = first.dim();
    for (i, p) in parts.iter().enumerate() {
        if p.labels != first.labels {
            return Err(PolyError::LabelMismatch(format!(
                "part {i} has labels {:?}, part 0 has {:?}",
                p.labels, first.labels
            )));
        }
        if trivially_empty(p) {
            return Err(PolyError::EmptyPart(i));
        }
    }
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    let mut lambdas = Vec::new();
    let mut copies = Vec::new();
    let mut offset = d;
    for p in parts {
        let lambda = offset + p.num_columns();
        let homogenize = |row: &LinearRow| {
            let mut r = remap(row, |c| offset + c);
            if !row.rhs.is_zero() {
                r.coeffs.push((lambda, -&row.rhs));
            }
            r.rhs = Rational::zero();
            r
        };
        ineqs.extend(p.inequalities.iter().map(homogenize));
        ineqs.push(LinearRow::new(
            vec![(lambda, minus_one())],
            Rational::zero(),
        ));
        eqs.extend(p.equalities.iter().map(homogenize));
        copies.push(offset);
        lambdas.push(lambda);
        offset = lambda + 1;
    }
    for j in 0..d {
        let mut coeffs = vec![(j, one())];
        coeffs.extend(copies.iter().map(|&o| (o + j, minus_one())));
        eqs.push(LinearRow::new(coeffs, Rational::zero()));
    }
    eqs.push(LinearRow::new(
        lambdas.iter().map(|&l| (l, one())).collect(),
        one(),
    ));
    let prov = Provenance::node(
        "balas_union",
        parts.iter().map(|p| p.provenance.clone()).collect(),
    )
    .with("parts", parts.len());
    let out = ExtForm::new(first.labels.clone(), offset - d, ineqs, eqs, prov)?;
    debug_assert_eq!(
        out.size(),
        parts.iter().map(|p| p.size()).sum::<usize>() + parts.len()
    );
    Ok(out)
}

fn check_x_rows(f: &ExtForm, rows: &[LinearRow]) -> Result<(), PolyError> {
    for row in rows {
        if let Some((i, _)) = row.coeffs.iter().find(|(i, _)| *i >= f.dim()) {
            return Err(PolyError::DimensionMismatch(format!(
                "row uses column {i} outside the {}-dimensional x-block",
                f.dim()
            )));
        }
    }
    Ok(())
}

/// Add equalities over the `x`-block.
pub fn face_restrict(f: &ExtForm, equalities: Vec<LinearRow>) -> Result<ExtForm, PolyError> {
    check_x_rows(f, &equalities)?;
    let mut out = f.clone();
    let count = equalities.len();
    out.equalities.extend(equalities);
    Ok(out.with_provenance(
        Provenance::node("face_restrict", vec![f.provenance.clone()]).with("equalities", count),
    ))
}

/// Add inequalities over the `x`-block.
pub fn add_inequalities(f: &ExtForm, inequalities: Vec<LinearRow>) -> Result<ExtForm, PolyError> {
    check_x_rows(f, &inequalities)?;
    let mut out = f.clone();
    let count = inequalities.len();
    out.inequalities.extend(inequalities);
    Ok(out.with_provenance(
        Provenance::node("add_inequalities", vec![f.provenance.clone()])
            .with("inequalities", count),
    ))
}

/// Intersection of two EFs over the same `x`-block; columns are `x`, then
/// the auxiliaries of `f1`, then those of `f2`.
pub fn intersect(f1: &ExtForm, f2: &ExtForm) -> Result<ExtForm, PolyError> {
    if f1.labels != f2.labels {
        return Err(PolyError::LabelMismatch(format!(
            "{:?} vs {:?}",
            f1.labels, f2.labels
        )));
    }
    let d = f1.dim();
    let shift2 = |c: usize| if c < d { c } else { c + f1.aux };
    let mut ineqs = f1.inequalities.clone();
    ineqs.extend(f2.inequalities.iter().map(|r| remap(r, shift2)));
    let mut eqs = f1.equalities.clone();
    eqs.extend(f2.equalities.iter().map(|r| remap(r, shift2)));
    ExtForm::new(
        f1.labels.clone(),
        f1.aux + f2.aux,
        ineqs,
        eqs,
        Provenance::node(
            "intersect",
            vec![f1.provenance.clone(), f2.provenance.clone()],
        ),
    )
}

/// Cartesian product over disjoint label sets; columns are `x1, x2, y1, y2`.
pub fn product(f1: &ExtForm, f2: &ExtForm) -> Result<ExtForm, PolyError> {
    let left: std::collections::HashSet<&String> = f1.labels.iter().collect();
    if let Some(l) = f2.labels.iter().find(|l| left.contains(l)) {
        return Err(PolyError::LabelClash(l.clone()));
    }
    let (d1, d2) = (f1.dim(), f2.dim());
    let map1 = |c: usize| if c < d1 { c } else { d2 + c };
    let map2 = |c: usize| if c < d2 { d1 + c } else { d1 + f1.aux + c };
    let mut ineqs: Vec<LinearRow> = f1.inequalities.iter().map(|r| remap(r, map1)).collect();
    ineqs.extend(f2.inequalities.iter().map(|r| remap(r, map2)));
    let mut eqs: Vec<LinearRow> = f1.equalities.iter().map(|r| remap(r, map1)).collect();
    eqs.extend(f2.equalities.iter().map(|r| remap(r, map2)));
    let mut labels = f1.labels.clone();
    labels.extend(f2.labels.iter().cloned());
    ExtForm::new(
        labels,
        f1.aux + f2.aux,
        ineqs,
        eqs,
        Provenance::node(
            "product",
            vec![f1.provenance.clone(), f2.provenance.clone()],
        ),
    )
}

/// `{x : ∃z ∈ proj(f), 0 ≤ x ≤ z}`; columns are `x`, `z`, then `f`'s
/// auxiliaries.
pub fn monotonize(f: &ExtForm) -> Result<ExtForm, PolyError> {
    if trivially_empty(f) {
        return Err(PolyError::EmptyPart(0));
    }
    let d = f.dim();
    let mut ineqs: Vec<LinearRow> = f.inequalities.iter().map(|r| remap(r, |c| d + c)).collect();
    for j in 0..d {
        ineqs.push(LinearRow::new(vec![(j, minus_one())], Rational::zero()));
    }
    for j in 0..d {
        ineqs.push(LinearRow::new(
            vec![(j, one()), (d + j, minus_one())],
            Rational::zero(),
        ));
    }
    let eqs = f.equalities.iter().map(|r| remap(r, |c| d + c)).collect();
    ExtForm::new(
        f.labels.clone(),
        d + f.aux,
        ineqs,
        eqs,
        Provenance::node("monotonize", vec![f.provenance.clone()]),
    )
}

/// Place `f` in the space `target`, fixing every target coordinate that `f`
/// does not carry to zero. Also serves to reorder the `x`-block.
pub fn embed_zero(f: &ExtForm, target: &[String]) -> Result<ExtForm, PolyError> {
    let mut pos = HashMap::new();
    for (i, l) in target.iter().enumerate() {
        if pos.insert(l.as_str(), i).is_some() {
            return Err(PolyError::LabelClash(l.clone()));
        }
    }
    let mut map = Vec::with_capacity(f.dim());
    let mut carried = vec![false; target.len()];
    for l in &f.labels {
        let &i = pos
            .get(l.as_str())
            .ok_or_else(|| PolyError::UnknownLabel(l.clone()))?;
        carried[i] = true;
        map.push(i);
    }
    let (d, big) = (f.dim(), target.len());
    let col = |c: usize| if c < d { map[c] } else { big + c - d };
    let ineqs = f.inequalities.iter().map(|r| remap(r, col)).collect();
    let mut eqs: Vec<LinearRow> = f.equalities.iter().map(|r| remap(r, col)).collect();
    for (i, c) in carried.iter().enumerate() {
        if !c {
            eqs.push(LinearRow::new(vec![(i, one())], Rational::zero()));
        }
    }
    ExtForm::new(
        target.to_vec(),
        f.aux,
        ineqs,
        eqs,
        Provenance::node("embed_zero", vec![f.provenance.clone()]).with("target_dim", big),
    )
}

/// The data of a robust constraint `max_{q ∈ proj(inner)} qᵀ(M·x + m0) ≤ aᵀx + β`
/// over an outer space. `pairing[t]` is row `t` of `M` as a sparse list over
/// outer coordinates, one row per inner `x`-coordinate.
#[derive(Clone, Debug)]
pub struct RobustSpec {
    pub outer_labels: Vec<String>,
    pub pairing: Vec<Vec<(usize, Rational)>>,
    pub offset: Vec<Rational>,
    pub linear: Vec<(usize, Rational)>,
    pub beta: Rational,
}

/// Dualize the inner maximization: columns are the outer `x`, one `λ ≥ 0`
/// per inner inequality and one free `μ` per inner equality.
pub fn robust_counterpart(inner: &ExtForm, spec: &RobustSpec) -> Result<ExtForm, PolyError> {
    let q = inner.dim();
    if spec.pairing.len() != q || spec.offset.len() != q {
        return Err(PolyError::DimensionMismatch(format!(
            "pairing has {} rows and offset {} entries for {q} inner coordinates",
            spec.pairing.len(),
            spec.offset.len()
        )));
    }
    let d = spec.outer_labels.len();
    let bad_outer = spec
        .pairing
        .iter()
        .flatten()
        .chain(&spec.linear)
        .find(|(i, _)| *i >= d);
    if let Some((i, _)) = bad_outer {
        return Err(PolyError::DimensionMismatch(format!(
            "outer column {i} in a {d}-dimensional space"
        )));
    }
    let ni = inner.inequalities.len();
    let ne = inner.equalities.len();
    let lambda = |i: usize| d + i;
    let mu = |k: usize| d + ni + k;

    // one equality per inner column: Aᵀλ + Cᵀμ − (Mx)_t = m0_t on the q-block
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); inner.num_columns()];
    for (i, row) in inner.inequalities.iter().enumerate() {
        for (t, a) in &row.coeffs {
            cols[*t].push((lambda(i), a.clone()));
        }
    }
    for (k, row) in inner.equalities.iter().enumerate() {
        for (t, a) in &row.coeffs {
            cols[*t].push((mu(k), a.clone()));
        }
    }
    let mut eqs = Vec::with_capacity(cols.len());
    for (t, mut coeffs) in cols.into_iter().enumerate() {
        let rhs = if t < q {
            coeffs.extend(spec.pairing[t].iter().map(|(j, m)| (*j, -m)));
            spec.offset[t].clone()
        } else {
            Rational::zero()
        };
        eqs.push(LinearRow::new(coeffs, rhs));
    }

    let mut ineqs: Vec<LinearRow> = (0..ni)
        .map(|i| LinearRow::new(vec![(lambda(i), minus_one())], Rational::zero()))
        .collect();
    let mut last: Vec<(usize, Rational)> = Vec::new();
    for (i, row) in inner.inequalities.iter().enumerate() {
        if !row.rhs.is_zero() {
            last.push((lambda(i), row.rhs.clone()));
        }
    }
    for (k, row) in inner.equalities.iter().enumerate() {
        if !row.rhs.is_zero() {
            last.push((mu(k), row.rhs.clone()));
        }
    }
    last.extend(spec.linear.iter().map(|(j, a)| (*j, -a)));
    ineqs.push(LinearRow::new(last, spec.beta.clone()));

    let out = ExtForm::new(
        spec.outer_labels.clone(),
        ni + ne,
        ineqs,
        eqs,
        Provenance::node("robust_counterpart", vec![inner.provenance.clone()])
            .with("beta", &spec.beta),
    )?;
    debug_assert_eq!(out.size(), inner.size() + 1);
    Ok(out)
}

//! Aggregated relational data: the n x K count matrix, respondent covariates,
//! group metadata, and the optional respondent/group covariate matrix.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::Path;

use ndarray::{Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use crate::error::{ArdError, Result};

/// Survey counts `y[i, k]` ("how many people in group k does respondent i
/// know?") together with respondent covariates and group metadata.
///
/// Immutable after construction; all accessors borrow.
#[derive(Debug, Clone, PartialEq)]
pub struct ArdDataset {
    y: Array2<u64>,
    respondent_ids: Vec<String>,
    covariates: Array2<f64>,
    covariate_names: Vec<String>,
    group_names: Vec<String>,
    known_group_sizes: Option<Vec<f64>>,
    total_population: Option<f64>,
    rg: Option<Array2<f64>>,
}

/// Data-quality findings that do not prevent fitting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Respondents whose entire count row is zero.
    pub row_zero_respondents: Vec<usize>,
    /// Fraction of nonzero responses divisible by 5 (heaping indicator).
    pub heaping_fraction: f64,
    pub warnings: Vec<String>,
}

/// Which covariate columns enter the model, and how.
///
/// Global columns get one shared coefficient; local columns get one slope per
/// group. The two sets must be disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovariateSpec {
    pub global: BTreeSet<String>,
    pub local: BTreeSet<String>,
    pub include_rg: bool,
}

impl CovariateSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new<S: Into<String>>(
        global: impl IntoIterator<Item = S>,
        local: impl IntoIterator<Item = S>,
        include_rg: bool,
    ) -> Self {
        Self {
            global: global.into_iter().map(Into::into).collect(),
            local: local.into_iter().map(Into::into).collect(),
            include_rg,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.global.is_empty() && self.local.is_empty() && !self.include_rg
    }

    /// Checks disjointness and that every named column exists in `dataset`.
    pub fn validate_against(&self, dataset: &ArdDataset) -> Result<()> {
        if let Some(name) = self.global.intersection(&self.local).next() {
            return Err(ArdError::InvalidArgument(format!(
                "covariate '{name}' listed as both global and local"
            )));
        }
        for name in self.global.iter().chain(self.local.iter()) {
            if dataset.covariate_index(name).is_none() {
                return Err(ArdError::InvalidArgument(format!(
                    "covariate '{name}' not present in dataset"
                )));
            }
        }
        if self.include_rg && dataset.rg().is_none() {
            return Err(ArdError::InvalidArgument(
                "spec includes the respondent/group covariate but the dataset has none".into(),
            ));
        }
        Ok(())
    }
}

impl ArdDataset {
    /// Builds a dataset from in-memory parts, enforcing the structural
    /// invariants (n >= 2, K >= 2, unique names, finite covariates).
    pub fn new(
        y: Array2<u64>,
        respondent_ids: Vec<String>,
        covariates: Array2<f64>,
        covariate_names: Vec<String>,
        group_names: Vec<String>,
    ) -> Result<Self> {
        let (n, k) = y.dim();
        if n < 2 || k < 2 {
            return Err(ArdError::InvalidArgument(format!(
                "need at least 2 respondents and 2 groups, got n={n}, K={k}"
            )));
        }
        if respondent_ids.len() != n {
            return Err(ArdError::DimensionMismatch(format!(
                "{} respondent ids for {n} rows",
                respondent_ids.len()
            )));
        }
        if covariates.nrows() != n && covariates.ncols() > 0 {
            return Err(ArdError::DimensionMismatch(format!(
                "covariate matrix has {} rows, counts have {n}",
                covariates.nrows()
            )));
        }
        if covariate_names.len() != covariates.ncols() {
            return Err(ArdError::DimensionMismatch(format!(
                "{} covariate names for {} columns",
                covariate_names.len(),
                covariates.ncols()
            )));
        }
        if group_names.len() != k {
            return Err(ArdError::DimensionMismatch(format!(
                "{} group names for {k} count columns",
                group_names.len()
            )));
        }
        check_unique(&covariate_names, "covariate")?;
        check_unique(&group_names, "group")?;
        let mut seen = HashSet::new();
        for id in &respondent_ids {
            if !seen.insert(id.as_str()) {
                return Err(ArdError::DuplicateIdentifier(id.clone()));
            }
        }
        if covariates.iter().any(|v| !v.is_finite()) {
            return Err(ArdError::InvalidArgument(
                "covariate matrix contains non-finite values".into(),
            ));
        }
        Ok(Self {
            y,
            respondent_ids,
            covariates,
            covariate_names,
            group_names,
            known_group_sizes: None,
            total_population: None,
            rg: None,
        })
    }

    pub fn with_known_group_sizes(mut self, sizes: Vec<f64>) -> Result<Self> {
        if sizes.len() != self.k() {
            return Err(ArdError::DimensionMismatch(format!(
                "{} known sizes for {} groups",
                sizes.len(),
                self.k()
            )));
        }
        if sizes.iter().any(|&s| !s.is_finite() || s <= 0.0) {
            return Err(ArdError::InvalidArgument(
                "known group sizes must be positive".into(),
            ));
        }
        if let Some(total) = self.total_population {
            if sizes.iter().any(|&s| s >= total) {
                return Err(ArdError::InvalidArgument(
                    "known group sizes must be smaller than the total population".into(),
                ));
            }
        }
        self.known_group_sizes = Some(sizes);
        Ok(self)
    }

    pub fn with_total_population(mut self, total: f64) -> Result<Self> {
        if !total.is_finite() || total <= 0.0 {
            return Err(ArdError::InvalidArgument(
                "total population must be positive".into(),
            ));
        }
        if let Some(sizes) = &self.known_group_sizes {
            if sizes.iter().any(|&s| s >= total) {
                return Err(ArdError::InvalidArgument(
                    "known group sizes must be smaller than the total population".into(),
                ));
            }
        }
        self.total_population = Some(total);
        Ok(self)
    }

    pub fn with_rg(mut self, rg: Array2<f64>) -> Result<Self> {
        if rg.dim() != self.y.dim() {
            return Err(ArdError::DimensionMismatch(format!(
                "respondent/group covariate is {:?}, counts are {:?}",
                rg.dim(),
                self.y.dim()
            )));
        }
        if rg.iter().any(|v| !v.is_finite()) {
            return Err(ArdError::InvalidArgument(
                "respondent/group covariate contains non-finite values".into(),
            ));
        }
        self.rg = Some(rg);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.y.nrows()
    }

    pub fn k(&self) -> usize {
        self.y.ncols()
    }

    pub fn p(&self) -> usize {
        self.covariates.ncols()
    }

    pub fn counts(&self) -> &Array2<u64> {
        &self.y
    }

    pub fn respondent_ids(&self) -> &[String] {
        &self.respondent_ids
    }

    pub fn covariates(&self) -> &Array2<f64> {
        &self.covariates
    }

    pub fn covariate_names(&self) -> &[String] {
        &self.covariate_names
    }

    pub fn group_names(&self) -> &[String] {
        &self.group_names
    }

    pub fn known_group_sizes(&self) -> Option<&[f64]> {
        self.known_group_sizes.as_deref()
    }

    pub fn total_population(&self) -> Option<f64> {
        self.total_population
    }

    pub fn rg(&self) -> Option<&Array2<f64>> {
        self.rg.as_ref()
    }

    pub fn covariate_index(&self, name: &str) -> Option<usize> {
        self.covariate_names.iter().position(|c| c == name)
    }

    pub fn covariate_column(&self, name: &str) -> Result<ArrayView1<'_, f64>> {
        let idx = self
            .covariate_index(name)
            .ok_or_else(|| ArdError::InvalidArgument(format!("no covariate named '{name}'")))?;
        Ok(self.covariates.column(idx))
    }

    /// Loads the CSV trio (counts required; covariates / groups / rg optional).
    ///
    /// Covariate rows are matched to count rows by respondent identifier, so
    /// file order does not matter. Missing or extra identifiers are errors.
    pub fn load(
        ard_path: &Path,
        covariates_path: Option<&Path>,
        groups_path: Option<&Path>,
        rg_path: Option<&Path>,
    ) -> Result<Self> {
        let (respondent_ids, group_names, y) = read_count_csv(ard_path)?;
        let n = respondent_ids.len();

        let (covariates, covariate_names) = match covariates_path {
            Some(path) => read_covariate_csv(path, &respondent_ids)?,
            None => (Array2::zeros((n, 0)), Vec::new()),
        };

        let mut dataset =
            ArdDataset::new(y, respondent_ids, covariates, covariate_names, group_names)?;

        if let Some(path) = groups_path {
            if let Some(sizes) = read_groups_csv(path, dataset.group_names())? {
                dataset = dataset.with_known_group_sizes(sizes)?;
            }
        }

        if let Some(path) = rg_path {
            let rg = read_rg_csv(path, dataset.respondent_ids(), dataset.group_names())?;
            dataset = dataset.with_rg(rg)?;
        }

        Ok(dataset)
    }

    /// Writes the dataset back out as the standard CSV trio (plus the
    /// respondent/group file when present). Round-trips exactly through
    /// `load`.
    pub fn write_csvs(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;

        let mut w = csv::Writer::from_path(dir.join("ard.csv"))?;
        let mut header = vec!["respondent_id".to_string()];
        header.extend(self.group_names.iter().cloned());
        w.write_record(&header)?;
        for (i, id) in self.respondent_ids.iter().enumerate() {
            let mut rec = vec![id.clone()];
            rec.extend(self.y.row(i).iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;

        if self.p() > 0 {
            let mut w = csv::Writer::from_path(dir.join("covariates.csv"))?;
            let mut header = vec!["respondent_id".to_string()];
            header.extend(self.covariate_names.iter().cloned());
            w.write_record(&header)?;
            for (i, id) in self.respondent_ids.iter().enumerate() {
                let mut rec = vec![id.clone()];
                rec.extend(self.covariates.row(i).iter().map(|v| format!("{v}")));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }

        let mut w = csv::Writer::from_path(dir.join("groups.csv"))?;
        w.write_record(["name", "known_size"])?;
        for (k, name) in self.group_names.iter().enumerate() {
            let size = self
                .known_group_sizes
                .as_ref()
                .map(|s| format!("{}", s[k]))
                .unwrap_or_default();
            w.write_record([name.as_str(), size.as_str()])?;
        }
        w.flush()?;

        if let Some(rg) = &self.rg {
            let mut w = csv::Writer::from_path(dir.join("rg.csv"))?;
            let mut header = vec!["respondent_id".to_string()];
            header.extend(self.group_names.iter().cloned());
            w.write_record(&header)?;
            for (i, id) in self.respondent_ids.iter().enumerate() {
                let mut rec = vec![id.clone()];
                rec.extend(rg.row(i).iter().map(|v| format!("{v}")));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }

        Ok(())
    }

    /// Returns a copy with `column` affinely mapped so min -> 0, max -> 1.
    ///
    /// Errors on a constant column (zero range).
    pub fn rescale_unit(&self, column: &str) -> Result<Self> {
        let idx = self
            .covariate_index(column)
            .ok_or_else(|| ArdError::InvalidArgument(format!("no covariate named '{column}'")))?;
        let col = self.covariates.column(idx);
        let min = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max - min <= 0.0 {
            return Err(ArdError::InvalidArgument(format!(
                "cannot rescale '{column}': zero range (constant column)"
            )));
        }
        let mut out = self.clone();
        let range = max - min;
        for v in out.covariates.column_mut(idx) {
            *v = (*v - min) / range;
        }
        Ok(out)
    }

    /// Scans for all-zero respondent rows and response heaping. Never fails.
    pub fn validate(&self) -> ValidationReport {
        let mut row_zero = Vec::new();
        for (i, row) in self.y.rows().into_iter().enumerate() {
            if row.iter().all(|&v| v == 0) {
                row_zero.push(i);
            }
        }
        let nonzero: Vec<u64> = self.y.iter().copied().filter(|&v| v > 0).collect();
        let mut warnings = Vec::new();
        let heaping_fraction = if nonzero.is_empty() {
            warnings.push("no nonzero responses".to_string());
            0.0
        } else {
            nonzero.iter().filter(|&&v| v % 5 == 0).count() as f64 / nonzero.len() as f64
        };
        if !row_zero.is_empty() {
            warnings.push(format!(
                "{} respondent(s) reported zero for every group",
                row_zero.len()
            ));
        }
        ValidationReport {
            row_zero_respondents: row_zero,
            heaping_fraction,
            warnings,
        }
    }
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(ArdError::InvalidArgument(format!(
                "duplicate {what} name '{name}'"
            )));
        }
    }
    Ok(())
}

fn read_count_csv(path: &Path) -> Result<(Vec<String>, Vec<String>, Array2<u64>)> {
    let file = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.len() < 2 {
        return Err(ArdError::InvalidArgument(format!(
            "{file}: expected a respondent id column plus at least one group column"
        )));
    }
    let group_names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let k = group_names.len();

    let mut ids = Vec::new();
    let mut rows: Vec<u64> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != k + 1 {
            return Err(ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: String::new(),
                detail: format!("expected {} fields, found {}", k + 1, record.len()),
            });
        }
        ids.push(record[0].to_string());
        for (j, cell) in record.iter().skip(1).enumerate() {
            let value = parse_count(cell).map_err(|detail| ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: group_names[j].clone(),
                detail,
            })?;
            rows.push(value);
        }
    }
    let n = ids.len();
    let y = Array2::from_shape_vec((n, k), rows)
        .map_err(|e| ArdError::DimensionMismatch(e.to_string()))?;
    Ok((ids, group_names, y))
}

fn parse_count(cell: &str) -> std::result::Result<u64, String> {
    let trimmed = cell.trim();
    trimmed
        .parse::<u64>()
        .map_err(|_| format!("'{trimmed}' is not a nonnegative integer count"))
}

fn parse_real(cell: &str) -> std::result::Result<f64, String> {
    let trimmed = cell.trim();
    if trimmed.is_empty() {
        return Err("empty cell".to_string());
    }
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("'{trimmed}' is not a finite number")),
    }
}

fn read_covariate_csv(path: &Path, ids: &[String]) -> Result<(Array2<f64>, Vec<String>)> {
    let file = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let p = names.len();

    let mut by_id: HashMap<String, Vec<f64>> = HashMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != p + 1 {
            return Err(ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: String::new(),
                detail: format!("expected {} fields, found {}", p + 1, record.len()),
            });
        }
        let id = record[0].to_string();
        let mut row = Vec::with_capacity(p);
        for (j, cell) in record.iter().skip(1).enumerate() {
            let value = parse_real(cell).map_err(|detail| ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: names[j].clone(),
                detail,
            })?;
            row.push(value);
        }
        if by_id.insert(id.clone(), row).is_some() {
            return Err(ArdError::DuplicateIdentifier(id));
        }
    }

    let mut data = Vec::with_capacity(ids.len() * p);
    for id in ids {
        let row = by_id.remove(id).ok_or_else(|| {
            ArdError::IdentifierMismatch(format!("respondent '{id}' missing from {file}"))
        })?;
        data.extend(row);
    }
    if let Some(extra) = by_id.keys().next() {
        return Err(ArdError::IdentifierMismatch(format!(
            "respondent '{extra}' in {file} has no counts row"
        )));
    }
    let cov = Array2::from_shape_vec((ids.len(), p), data)
        .map_err(|e| ArdError::DimensionMismatch(e.to_string()))?;
    Ok((cov, names))
}

/// Groups CSV: `name,known_size`. Returns sizes only when every group has one.
fn read_groups_csv(path: &Path, group_names: &[String]) -> Result<Option<Vec<f64>>> {
    let file = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)?;
    let mut by_name: HashMap<String, Option<f64>> = HashMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        if record.is_empty() {
            continue;
        }
        let name = record[0].trim().to_string();
        let size = match record.get(1).map(str::trim) {
            None | Some("") => None,
            Some(cell) => Some(parse_real(cell).map_err(|detail| ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: "known_size".to_string(),
                detail,
            })?),
        };
        by_name.insert(name, size);
    }
    for name in group_names {
        if !by_name.contains_key(name) {
            return Err(ArdError::IdentifierMismatch(format!(
                "group '{name}' missing from {file}"
            )));
        }
    }
    let sizes: Option<Vec<f64>> = group_names.iter().map(|n| by_name[n]).collect();
    Ok(sizes)
}

fn read_rg_csv(path: &Path, ids: &[String], group_names: &[String]) -> Result<Array2<f64>> {
    let file = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let cols: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    if cols != group_names {
        return Err(ArdError::IdentifierMismatch(format!(
            "{file}: group columns do not match the counts file"
        )));
    }
    let k = cols.len();
    let mut by_id: HashMap<String, Vec<f64>> = HashMap::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let id = record[0].to_string();
        let mut row = Vec::with_capacity(k);
        for (j, cell) in record.iter().skip(1).enumerate() {
            let value = parse_real(cell).map_err(|detail| ArdError::Parse {
                file: file.clone(),
                row: row_idx + 2,
                column: cols[j].clone(),
                detail,
            })?;
            row.push(value);
        }
        if by_id.insert(id.clone(), row).is_some() {
            return Err(ArdError::DuplicateIdentifier(id));
        }
    }
    let mut data = Vec::with_capacity(ids.len() * k);
    for id in ids {
        let row = by_id.remove(id).ok_or_else(|| {
            ArdError::IdentifierMismatch(format!("respondent '{id}' missing from {file}"))
        })?;
        data.extend(row);
    }
    Array2::from_shape_vec((ids.len(), k), data)
        .map_err(|e| ArdError::DimensionMismatch(e.to_string()))
}

/// Serializes `Array2<f64>` as row-major nested vectors.
pub(crate) mod array2_serde {
    use ndarray::Array2;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Array2<f64>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = m.rows().into_iter().map(|r| r.to_vec()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Array2<f64>, D::Error> {
        let rows: Vec<Vec<f64>> = Vec::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged matrix"));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        Array2::from_shape_vec((nrows, ncols), flat).map_err(D::Error::custom)
    }
}

/// `Option<Array2<f64>>` variant of [`array2_serde`].
pub(crate) mod array2_opt_serde {
    use ndarray::Array2;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<Array2<f64>>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => {
                let rows: Vec<Vec<f64>> = m.rows().into_iter().map(|r| r.to_vec()).collect();
                Some(rows).serialize(s)
            }
            None => None::<Vec<Vec<f64>>>.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Array2<f64>>, D::Error> {
        let rows: Option<Vec<Vec<f64>>> = Option::deserialize(d)?;
        match rows {
            None => Ok(None),
            Some(rows) => {
                use serde::de::Error;
                let nrows = rows.len();
                let ncols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != ncols) {
                    return Err(D::Error::custom("ragged matrix"));
                }
                let flat: Vec<f64> = rows.into_iter().flatten().collect();
                Array2::from_shape_vec((nrows, ncols), flat)
                    .map(Some)
                    .map_err(D::Error::custom)
            }
        }
    }
}

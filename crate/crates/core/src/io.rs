//! JSON serialization for complexes, chain maps and verification reports.
//!
//! All maps are keyed by sorted string keys and all matrix entries are
//! emitted in row-major order, so a given object always serializes to the
//! same bytes. Rationals travel as `"p/q"` strings (`"p"` when the
//! denominator is 1). Importing rebuilds objects through their validating
//! constructors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chiral::HomotopyCertificate;
use crate::complex::{ChainMap, CohomologyReport, GradedComplex};
use crate::linalg::{rational_from_str, SparseMatrix};
use crate::multivar::LocalCohomologyReport;
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SparseMatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&SparseMatrix> for SparseMatrixDto {
    fn from(m: &SparseMatrix) -> Self {
        SparseMatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
    }
}

impl SparseMatrixDto {
    pub fn to_matrix(&self) -> Result<SparseMatrix, Error> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (r, c, v) in &self.entries {
            entries.push((*r, *c, rational_from_str(v)?));
        }
        SparseMatrix::from_entries(self.rows, self.cols, entries)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeFlagsDto {
    pub left_closed: bool,
    pub right_closed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedComplexDto {
    pub window: (i64, i64),
    pub edge_flags: EdgeFlagsDto,
    pub basis: BTreeMap<String, Vec<String>>,
    pub diff: BTreeMap<String, SparseMatrixDto>,
}

fn parse_degree(s: &str) -> Result<i64, Error> {
    s.parse::<i64>().map_err(|e| Error::Parse(format!("bad degree key {s:?}: {e}")))
}

impl From<&GradedComplex> for GradedComplexDto {
    fn from(c: &GradedComplex) -> Self {
        GradedComplexDto {
            window: c.window(),
            edge_flags: EdgeFlagsDto {
                left_closed: c.left_closed(),
                right_closed: c.right_closed(),
            },
            basis: c.basis_map().iter().map(|(i, b)| (i.to_string(), b.clone())).collect(),
            diff: c.diff_map().iter().map(|(i, m)| (i.to_string(), m.into())).collect(),
        }
    }
}

impl GradedComplexDto {
    pub fn to_complex(&self) -> Result<GradedComplex, Error> {
        let mut basis = BTreeMap::new();
        for (k, b) in &self.basis {
            basis.insert(parse_degree(k)?, b.clone());
        }
        let mut diff = BTreeMap::new();
        for (k, m) in &self.diff {
            diff.insert(parse_degree(k)?, m.to_matrix()?);
        }
        GradedComplex::new(
            self.window,
            basis,
            diff,
            self.edge_flags.left_closed,
            self.edge_flags.right_closed,
        )
    }
}

pub fn complex_to_json(c: &GradedComplex) -> String {
    serde_json::to_string_pretty(&GradedComplexDto::from(c)).expect("complex serialization")
}

pub fn complex_from_json(s: &str) -> Result<GradedComplex, Error> {
    let dto: GradedComplexDto =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_complex()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMapDto {
    pub source: GradedComplexDto,
    pub target: GradedComplexDto,
    pub maps: BTreeMap<String, SparseMatrixDto>,
}

impl From<&ChainMap> for ChainMapDto {
    fn from(f: &ChainMap) -> Self {
        ChainMapDto {
            source: f.source().into(),
            target: f.target().into(),
            maps: f.maps().iter().map(|(i, m)| (i.to_string(), m.into())).collect(),
        }
    }
}

impl ChainMapDto {
    pub fn to_chain_map(&self) -> Result<ChainMap, Error> {
        let mut maps = BTreeMap::new();
        for (k, m) in &self.maps {
            maps.insert(parse_degree(k)?, m.to_matrix()?);
        }
        ChainMap::new(self.source.to_complex()?, self.target.to_complex()?, maps)
    }
}

pub fn chain_map_to_json(f: &ChainMap) -> String {
    serde_json::to_string_pretty(&ChainMapDto::from(f)).expect("chain map serialization")
}

pub fn chain_map_from_json(s: &str) -> Result<ChainMap, Error> {
    let dto: ChainMapDto = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    dto.to_chain_map()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyDto {
    pub dims: BTreeMap<String, usize>,
    pub reps: BTreeMap<String, Vec<Vec<(String, String)>>>,
}

impl From<&CohomologyReport> for CohomologyDto {
    fn from(h: &CohomologyReport) -> Self {
        CohomologyDto {
            dims: h.dims.iter().map(|(i, d)| (i.to_string(), *d)).collect(),
            reps: h
                .reps
                .iter()
                .map(|(i, vs)| {
                    (
                        i.to_string(),
                        vs.iter()
                            .map(|v| {
                                v.iter().map(|(c, l)| (c.to_string(), l.clone())).collect()
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomotopyCertificateDto {
    pub weight: i64,
    pub dimension: usize,
    pub residual_is_zero: bool,
    pub first_failure: Option<String>,
    pub eigenvalues: Vec<(String, String)>,
}

impl From<&HomotopyCertificate> for HomotopyCertificateDto {
    fn from(c: &HomotopyCertificate) -> Self {
        HomotopyCertificateDto {
            weight: c.weight,
            dimension: c.dimension,
            residual_is_zero: c.residual_is_zero,
            first_failure: c.first_failure.clone(),
            eigenvalues: c
                .eigenvalue_table
                .iter()
                .map(|(l, v)| (l.clone(), v.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TupleResultDto {
    pub exponents: Vec<i64>,
    pub dims: BTreeMap<String, usize>,
    pub concentrated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalCohomologyDto {
    pub num_vars: u32,
    pub weight: i64,
    pub zero_window: i64,
    pub tuples: Vec<TupleResultDto>,
    pub transitions_injective: bool,
    pub top_dimension_at_window: usize,
    pub dual_basis_count: usize,
    pub pass: bool,
}

impl From<&LocalCohomologyReport> for LocalCohomologyDto {
    fn from(r: &LocalCohomologyReport) -> Self {
        LocalCohomologyDto {
            num_vars: r.num_vars,
            weight: r.weight,
            zero_window: r.zero_window,
            tuples: r
                .tuples
                .iter()
                .map(|t| TupleResultDto {
                    exponents: t.exponents.clone(),
                    dims: t.dims.iter().map(|(i, d)| (i.to_string(), *d)).collect(),
                    concentrated: t.concentrated,
                })
                .collect(),
            transitions_injective: r.transitions_injective,
            top_dimension_at_window: r.top_dimension_at_window,
            dual_basis_count: r.dual_basis_count,
            pass: r.pass(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chiral::{build_chiral_janus, build_weight_complex, ChiralKind, ChiralSpec};
    use crate::classical::{koszul_complex, sphere_complex, KoszulSpec, KoszulVariant, SphereSpec};

    fn sample_complexes() -> Vec<GradedComplex> {
        vec![
            sphere_complex(&SphereSpec::Finite { n: 3 }).unwrap(),
            koszul_complex(&KoszulSpec { variant: KoszulVariant::Janus, window: (-6, 6) }).unwrap(),
            build_weight_complex(&ChiralSpec::new(ChiralKind::Quotient, 0, 4, 1).unwrap()).unwrap(),
            build_chiral_janus(0, 3, 1).unwrap(),
        ]
    }

    #[test]
    fn complex_round_trip_is_byte_identical() {
        for c in sample_complexes() {
            let json = complex_to_json(&c);
            let back = complex_from_json(&json).unwrap();
            assert_eq!(back, c);
            assert_eq!(complex_to_json(&back), json);
        }
    }

    #[test]
    fn reimported_complexes_reverify() {
        for c in sample_complexes() {
            let back = complex_from_json(&complex_to_json(&c)).unwrap();
            assert!(back.check_d_squared().pass());
            assert_eq!(
                back.cohomology(false).unwrap().dims,
                c.cohomology(false).unwrap().dims
            );
        }
    }

    #[test]
    fn chain_map_round_trip() {
        let f = crate::classical::sphere_koszul_basis_change(
            crate::classical::BasisChangeVariant::Janus,
            (-4, 4),
        )
        .unwrap();
        let json = chain_map_to_json(&f);
        let back = chain_map_from_json(&json).unwrap();
        assert!(back.verify().is_iso());
        assert_eq!(chain_map_to_json(&back), json);
    }

    #[test]
    fn import_validates_shapes() {
        let c = sphere_complex(&SphereSpec::Finite { n: 2 }).unwrap();
        let mut dto = GradedComplexDto::from(&c);
        dto.diff.get_mut("0").unwrap().rows = 7;
        let json = serde_json::to_string(&dto).unwrap();
        assert!(complex_from_json(&json).is_err());
    }

    #[test]
    fn import_rejects_malformed_rationals() {
        let c = sphere_complex(&SphereSpec::Finite { n: 2 }).unwrap();
        let mut dto = GradedComplexDto::from(&c);
        dto.diff.get_mut("0").unwrap().entries[0].2 = "one half".into();
        let json = serde_json::to_string(&dto).unwrap();
        assert!(matches!(complex_from_json(&json), Err(Error::Parse(_))));
    }

    #[test]
    fn rationals_serialize_as_fraction_strings() {
        let m = SparseMatrix::from_entries(
            1,
            2,
            vec![(0, 0, crate::linalg::rat_frac(1, 2)), (0, 1, crate::linalg::rat(3))],
        )
        .unwrap();
        let dto = SparseMatrixDto::from(&m);
        assert_eq!(dto.entries[0].2, "1/2");
        assert_eq!(dto.entries[1].2, "3");
    }
}

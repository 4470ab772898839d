//! Multi-variable constructions: the weight components of the tensor
//! product ring over an ordered variable family, their vertex dual, the
//! glued bouquet, and the Koszul complexes of the regular sequence of
//! zero-mode powers used to exhibit the dual as local cohomology.

use std::collections::BTreeMap;

use num::One;

use crate::chiral::{build_chiral_janus, build_weight_complex, ChiralKind, ChiralSpec};
use crate::complex::{ChainMap, GradedComplex};
use crate::linalg::{rat, SparseMatrix};
use crate::superpoly::{
    enumerate_with_zero_ranges, label, variant_ranges, BasisVariant, Exponents, GenKind,
    Generator, Localization, Monomial, ZeroModeRange,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultivarVariant {
    Plain,
    Dual,
}

/// Weight-N component of the |I|-variable ring (plain) or of its vertex
/// dual, the tensor product of the per-variable quotients.
pub fn build_multivar_complex(
    variant: MultivarVariant,
    weight: i64,
    zero_window: i64,
    num_vars: u32,
) -> Result<GradedComplex, Error> {
    let kind = match variant {
        MultivarVariant::Plain => ChiralKind::Plain,
        MultivarVariant::Dual => ChiralKind::Quotient,
    };
    build_weight_complex(&ChiralSpec::new(kind, weight, zero_window, num_vars)?)
}

/// The |I|-variable bouquet dual ⊕̇ plain.
pub fn build_multivar_janus(
    weight: i64,
    zero_window: i64,
    num_vars: u32,
) -> Result<GradedComplex, Error> {
    build_chiral_janus(weight, zero_window, num_vars)
}

/// Koszul complex of the sequence of zero-mode powers `x[i,0]^{m_i}` with
/// coefficients in a truncation of the weight-N component. The chiral
/// differential plays no part here; only the multiplication operators do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerKoszulSpec {
    pub exponents: Vec<i64>,
    pub weight: i64,
    pub zero_window: i64,
}

impl PowerKoszulSpec {
    pub fn new(exponents: Vec<i64>, weight: i64, zero_window: i64) -> Result<Self, Error> {
        if exponents.is_empty() {
            return Err(Error::InvalidArgument("at least one exponent required".into()));
        }
        if exponents.iter().any(|&m| m < 1) {
            return Err(Error::InvalidArgument("exponents must be at least 1".into()));
        }
        if weight < 0 || zero_window < 1 {
            return Err(Error::InvalidArgument(
                "weight must be non-negative and the zero window positive".into(),
            ));
        }
        if exponents.len() > 16 {
            return Err(Error::InvalidArgument("at most 16 variables supported".into()));
        }
        Ok(PowerKoszulSpec { exponents, weight, zero_window })
    }

    pub fn num_vars(&self) -> u32 {
        self.exponents.len() as u32
    }
}

pub(crate) struct PowerData {
    pub complex: GradedComplex,
    /// Column offset of each auxiliary-generator subset within its degree.
    offsets: BTreeMap<u32, usize>,
    /// Within-subset position of each coefficient monomial.
    lookup: BTreeMap<u32, BTreeMap<Exponents, usize>>,
    bases: BTreeMap<u32, Vec<Monomial>>,
}

fn x0(var: u32) -> Generator {
    Generator { var, kind: GenKind::X, weight: 0 }
}

fn eps_label(mask: u32, num_vars: u32) -> String {
    let parts: Vec<String> =
        (0..num_vars).filter(|i| mask & (1 << i) != 0).map(|i| format!("e[{}]", i + 1)).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Caps per variable for the coefficient truncation of subset `mask`:
/// the base window plus the step already consumed by the differentials
/// into this subset, so that every multiplication map is total.
fn subset_ranges(mask: u32, multipliers: &[Option<i64>], zero_window: i64) -> Vec<ZeroModeRange> {
    multipliers
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let extra = if mask & (1 << i) != 0 { m.unwrap_or(0) } else { 0 };
            ZeroModeRange { x_min: 0, x_max: zero_window + extra, xi: true }
        })
        .collect()
}

fn build_power_data(
    multipliers: &[Option<i64>],
    weight: i64,
    zero_window: i64,
) -> Result<PowerData, Error> {
    let num_vars = multipliers.len() as u32;
    let top = num_vars as i64;
    let loc = Localization::none();

    let mut bases: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for mask in 0..(1u32 << num_vars) {
        let ranges = subset_ranges(mask, multipliers, zero_window);
        let flat: Vec<Monomial> =
            enumerate_with_zero_ranges(weight, &ranges).into_values().flatten().collect();
        bases.insert(mask, flat);
    }

    let mut offsets = BTreeMap::new();
    let mut lookup: BTreeMap<u32, BTreeMap<Exponents, usize>> = BTreeMap::new();
    let mut basis_labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for k in 0..=top {
        let mut labels = Vec::new();
        for mask in 0..(1u32 << num_vars) {
            if i64::from(mask.count_ones()) != k {
                continue;
            }
            offsets.insert(mask, labels.len());
            let prefix = eps_label(mask, num_vars);
            let mut positions = BTreeMap::new();
            for (j, m) in bases[&mask].iter().enumerate() {
                positions.insert(m.factors.clone(), j);
                labels.push(format!("{prefix}⊗{}", label(m, num_vars)));
            }
            lookup.insert(mask, positions);
        }
        basis_labels.insert(k, labels);
    }

    let mut diff: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for k in 0..top {
        let rows = basis_labels[&(k + 1)].len();
        let cols = basis_labels[&k].len();
        let mut matrix = SparseMatrix::zero(rows, cols);
        for mask in 0..(1u32 << num_vars) {
            if i64::from(mask.count_ones()) != k {
                continue;
            }
            for (j, c) in bases[&mask].iter().enumerate() {
                let col = offsets[&mask] + j;
                for i in 0..num_vars {
                    if mask & (1 << i) != 0 {
                        continue;
                    }
                    let Some(m_i) = multipliers[i as usize] else { continue };
                    let before = (mask & ((1 << i) - 1)).count_ones();
                    let sign = if before % 2 == 0 { rat(1) } else { rat(-1) };
                    let step = Monomial::from_factors(sign, &[(x0(i), m_i)]);
                    let product = c.mul(&step, &loc)?;
                    let tmask = mask | (1 << i);
                    let row = offsets[&tmask]
                        + *lookup[&tmask].get(&product.factors).ok_or_else(|| {
                            Error::Shape(format!(
                                "image of {} escapes the subset truncation",
                                label(c, num_vars)
                            ))
                        })?;
                    matrix.add_to(row, col, &product.coeff);
                }
            }
        }
        diff.insert(k, matrix);
    }

    let complex = GradedComplex::new((0, top), basis_labels, diff, true, true)?;
    let d2 = complex.check_d_squared();
    if let Some(&degree) = d2.failures.first() {
        return Err(Error::DSquared { degree });
    }
    Ok(PowerData { complex, offsets, lookup, bases })
}

pub fn power_koszul(spec: &PowerKoszulSpec) -> Result<GradedComplex, Error> {
    Ok(power_koszul_data(spec)?.complex)
}

pub(crate) fn power_koszul_data(spec: &PowerKoszulSpec) -> Result<PowerData, Error> {
    let multipliers: Vec<Option<i64>> = spec.exponents.iter().map(|&m| Some(m)).collect();
    build_power_data(&multipliers, spec.weight, spec.zero_window)
}

/// Negative control: the same shape of complex for the non-regular
/// sequence of zeros. Its cohomology is everywhere nonzero, so the
/// concentration check must reject it.
pub fn power_koszul_zero(num_vars: u32, weight: i64, zero_window: i64) -> Result<GradedComplex, Error> {
    Ok(build_power_data(&vec![None; num_vars as usize], weight, zero_window)?.complex)
}

/// The chain map of the direct system from exponents `m` to `m' >= m`:
/// on the subset-S term, multiplication by `prod_{i in S} x[i,0]^{m'_i - m_i}`.
pub fn transition_map(from: &PowerKoszulSpec, to: &PowerKoszulSpec) -> Result<ChainMap, Error> {
    if from.weight != to.weight
        || from.zero_window != to.zero_window
        || from.exponents.len() != to.exponents.len()
    {
        return Err(Error::InvalidArgument("transition requires matching truncations".into()));
    }
    if from.exponents.iter().zip(&to.exponents).any(|(a, b)| a > b) {
        return Err(Error::InvalidArgument("transition requires non-decreasing exponents".into()));
    }
    let source = power_koszul_data(from)?;
    let target = power_koszul_data(to)?;
    let num_vars = from.num_vars();
    let loc = Localization::none();

    let mut maps: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for k in 0..=i64::from(num_vars) {
        maps.insert(k, SparseMatrix::zero(target.complex.dim(k), source.complex.dim(k)));
    }
    for mask in 0..(1u32 << num_vars) {
        let k = i64::from(mask.count_ones());
        let mut factors = Vec::new();
        for i in 0..num_vars {
            if mask & (1 << i) != 0 {
                let delta = to.exponents[i as usize] - from.exponents[i as usize];
                if delta > 0 {
                    factors.push((x0(i), delta));
                }
            }
        }
        let shift = Monomial::from_factors(One::one(), &factors);
        let matrix = maps.get_mut(&k).unwrap();
        for (j, c) in source.bases[&mask].iter().enumerate() {
            let product = c.mul(&shift, &loc)?;
            let row = target.offsets[&mask]
                + *target.lookup[&mask].get(&product.factors).ok_or_else(|| {
                    Error::Shape(format!("transition image of {} escapes", label(c, num_vars)))
                })?;
            matrix.add_to(row, target_col(&source, mask, j), &product.coeff);
        }
    }
    ChainMap::new(source.complex, target.complex, maps)
}

fn target_col(source: &PowerData, mask: u32, j: usize) -> usize {
    source.offsets[&mask] + j
}

/// Injectivity of the induced map on top cohomology: with `B` the incoming
/// differential of the target and `F` the top component of the transition,
/// the induced map is injective iff rank [B | F] = rank B + dim H_top(source).
pub fn top_transition_injective(f: &ChainMap) -> Result<bool, Error> {
    let top = f.source().window().1;
    let a = f.source().diff_at(top - 1).cloned().unwrap_or_else(|| SparseMatrix::zero(0, 0));
    let b = f.target().diff_at(top - 1).cloned().unwrap_or_else(|| SparseMatrix::zero(0, 0));
    let h_source = f.source().dim(top) - a.rank();
    let stacked = b.hstack(f.map_at(top));
    Ok(stacked.rank() == b.rank() + h_source)
}

#[derive(Clone, Debug)]
pub struct TupleResult {
    pub exponents: Vec<i64>,
    pub dims: BTreeMap<i64, usize>,
    pub concentrated: bool,
}

#[derive(Clone, Debug)]
pub struct LocalCohomologyReport {
    pub num_vars: u32,
    pub weight: i64,
    pub zero_window: i64,
    pub tuples: Vec<TupleResult>,
    pub transitions_injective: bool,
    pub top_dimension_at_window: usize,
    pub dual_basis_count: usize,
}

impl LocalCohomologyReport {
    pub fn dims_match(&self) -> bool {
        self.top_dimension_at_window == self.dual_basis_count
    }

    pub fn pass(&self) -> bool {
        self.tuples.iter().all(|t| t.concentrated) && self.transitions_injective && self.dims_match()
    }
}

fn exponent_tuples(num_vars: u32, m_max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..num_vars {
        let mut next = Vec::new();
        for base in &out {
            for m in 1..=m_max {
                let mut t = base.clone();
                t.push(m);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// The desk-scale concentration statement: every power Koszul complex in
/// the range has cohomology only in the top degree, the direct system is
/// injective on top cohomology, and at saturation the top cohomology has
/// the same dimension as the dual (purely singular) basis.
pub fn local_cohomology_check(
    num_vars: u32,
    m_max: i64,
    weight: i64,
    zero_window: i64,
) -> Result<LocalCohomologyReport, Error> {
    if m_max < 1 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let top = i64::from(num_vars);
    let mut tuples = Vec::new();
    for exponents in exponent_tuples(num_vars, m_max) {
        let spec = PowerKoszulSpec::new(exponents.clone(), weight, zero_window)?;
        let c = power_koszul(&spec)?;
        let h = c.cohomology(false)?;
        let concentrated = h.dims.iter().all(|(&k, &d)| k == top || d == 0);
        tuples.push(TupleResult { exponents, dims: h.dims, concentrated });
    }

    let mut transitions_injective = true;
    'outer: for exponents in exponent_tuples(num_vars, m_max) {
        for i in 0..num_vars as usize {
            if exponents[i] + 1 > m_max {
                continue;
            }
            let mut next = exponents.clone();
            next[i] += 1;
            let f = transition_map(
                &PowerKoszulSpec::new(exponents.clone(), weight, zero_window)?,
                &PowerKoszulSpec::new(next, weight, zero_window)?,
            )?;
            if !f.verify().commutes() || !top_transition_injective(&f)? {
                transitions_injective = false;
                break 'outer;
            }
        }
    }

    let saturated =
        PowerKoszulSpec::new(vec![zero_window; num_vars as usize], weight, zero_window)?;
    let c = power_koszul(&saturated)?;
    let h = c.cohomology(false)?;
    let top_dimension_at_window = h.dim(top).unwrap_or(0);
    let dual_ranges = variant_ranges(BasisVariant::Quotient, num_vars, zero_window);
    let dual_basis_count =
        enumerate_with_zero_ranges(weight, &dual_ranges).values().map(Vec::len).sum();

    Ok(LocalCohomologyReport {
        num_vars,
        weight,
        zero_window,
        tuples,
        transitions_injective,
        top_dimension_at_window,
        dual_basis_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    #[test]
    fn two_variable_plain_cohomology() {
        let c = build_multivar_complex(MultivarVariant::Plain, 0, 4, 2).unwrap();
        let h = c.cohomology(true).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.dim(0), Some(1));
        assert_eq!(h.reps[&0][0], vec![(Rational::one(), "1".to_string())]);
    }

    #[test]
    fn two_variable_dual_cohomology() {
        let c = build_multivar_complex(MultivarVariant::Dual, 0, 4, 2).unwrap();
        let h = c.cohomology(true).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.dim(-2), Some(1));
        assert_eq!(
            h.reps[&-2][0],
            vec![(
                Rational::one(),
                "x[1,0]^-1*xi[1,0]*x[2,0]^-1*xi[2,0]".to_string()
            )]
        );
    }

    #[test]
    fn single_variable_matches_chiral_build() {
        let a = build_multivar_complex(MultivarVariant::Plain, 1, 3, 1).unwrap();
        let b = build_weight_complex(&ChiralSpec::new(ChiralKind::Plain, 1, 3, 1).unwrap()).unwrap();
        assert_eq!(a, b);
        let ja = build_multivar_janus(0, 4, 1).unwrap();
        let jb = build_chiral_janus(0, 4, 1).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn two_variable_janus_acyclic_small_weights() {
        for n in 0..=1 {
            let c = build_multivar_janus(n, 3, 2).unwrap();
            assert!(c.cohomology(false).unwrap().is_acyclic(), "weight {n}");
        }
    }

    #[test]
    fn plain_dims_are_convolutions_of_single_variable_tables() {
        // the two-variable basis is the product of per-variable bases, so
        // each (weight, degree) dimension is a double convolution
        let zero_window = 2;
        let table = |weight: i64| -> BTreeMap<i64, usize> {
            build_multivar_complex(MultivarVariant::Plain, weight, zero_window, 1)
                .unwrap()
                .dims()
        };
        for n in 0..=2 {
            let two = build_multivar_complex(MultivarVariant::Plain, n, zero_window, 2).unwrap();
            for deg in two.window().0..=two.window().1 {
                let mut expected = 0usize;
                for n1 in 0..=n {
                    let t1 = table(n1);
                    let t2 = table(n - n1);
                    for (&d1, &v1) in &t1 {
                        if let Some(&v2) = t2.get(&(deg - d1)) {
                            expected += v1 * v2;
                        }
                    }
                }
                assert_eq!(two.dim(deg), expected, "weight {n}, degree {deg}");
            }
        }
    }

    #[test]
    fn one_variable_power_koszul_concentration() {
        let spec = PowerKoszulSpec::new(vec![1], 0, 6).unwrap();
        let c = power_koszul(&spec).unwrap();
        assert_eq!(c.window(), (0, 1));
        let h = c.cohomology(false).unwrap();
        assert_eq!(h.dim(0), Some(0));
        // cokernel of multiplication by x[0]: one even and one odd monomial
        assert_eq!(h.dim(1), Some(2));
    }

    #[test]
    fn one_variable_top_cohomology_counts_singular_monomials() {
        for m in 1..=3 {
            let spec = PowerKoszulSpec::new(vec![m], 0, 3).unwrap();
            let h = power_koszul(&spec).unwrap().cohomology(false).unwrap();
            assert_eq!(h.dim(0), Some(0));
            assert_eq!(h.dim(1), Some(2 * m as usize));
        }
    }

    #[test]
    fn two_variable_power_koszul_concentration() {
        let spec = PowerKoszulSpec::new(vec![1, 1], 0, 3).unwrap();
        let h = power_koszul(&spec).unwrap().cohomology(false).unwrap();
        assert_eq!(h.dim(0), Some(0));
        assert_eq!(h.dim(1), Some(0));
        assert_eq!(h.dim(2), Some(4));
    }

    #[test]
    fn transition_embeds_top_cohomology() {
        let from = PowerKoszulSpec::new(vec![1], 0, 4).unwrap();
        let to = PowerKoszulSpec::new(vec![2], 0, 4).unwrap();
        let f = transition_map(&from, &to).unwrap();
        assert!(f.verify().commutes());
        assert!(top_transition_injective(&f).unwrap());
    }

    #[test]
    fn zero_sequence_fails_concentration() {
        let c = power_koszul_zero(1, 0, 3).unwrap();
        let h = c.cohomology(false).unwrap();
        assert!(h.dim(0).unwrap() > 0, "the zero sequence must not look regular");
    }

    #[test]
    fn local_cohomology_report_one_variable() {
        let report = local_cohomology_check(1, 3, 0, 3).unwrap();
        assert!(report.pass(), "{report:?}");
        // H^1 grows by 2 with each exponent step at weight 0
        for t in &report.tuples {
            assert_eq!(t.dims[&1], 2 * t.exponents[0] as usize);
        }
        assert_eq!(report.dual_basis_count, 6);
    }

    #[test]
    fn local_cohomology_report_two_variables() {
        let report = local_cohomology_check(2, 2, 0, 2).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.top_dimension_at_window, 16);
    }

    #[test]
    fn power_koszul_with_positive_weight() {
        let spec = PowerKoszulSpec::new(vec![1], 1, 2).unwrap();
        let h = power_koszul(&spec).unwrap().cohomology(false).unwrap();
        assert_eq!(h.dim(0), Some(0));
        // V_1 is 4-dimensional, the zero-mode cokernel 2-dimensional
        assert_eq!(h.dim(1), Some(8));
    }
}

//! Weight-graded complexes on the supercommutative mode ring: the chiral
//! differential and its contracting homotopy, the plain / localized /
//! quotient variants of each conformal-weight component, and the glued
//! doubly-infinite bouquet.
//!
//! Each weight-N component is assembled inside a finite zero-mode window.
//! The monomials outside a window span a subspace stable under the
//! differential (`d_ch` never lowers a zero-mode x exponent), so cutting
//! the window is a quotient of complexes and `d^2 = 0` holds exactly;
//! edge flags record which cuts are truncations.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::complex::{tensor, ChainMap, GradedComplex};
use crate::linalg::{rat, Rational, SparseMatrix};
use crate::superpoly::{
    enumerate_with_zero_ranges, label, variant_ranges, within_zero_ranges, BasisVariant,
    Derivation, GenKind, Generator, Images, Localization, Monomial, Parity, Polynomial,
    ZeroModeRange,
};
use crate::Error;

fn d_ch_image(g: &Generator) -> Option<Polynomial> {
    let p = match g.kind {
        GenKind::Xi => Polynomial::from(Monomial::from_generator(Generator {
            var: g.var,
            kind: GenKind::X,
            weight: g.weight,
        })),
        GenKind::Dx => Polynomial::from(
            Monomial::from_generator(Generator {
                var: g.var,
                kind: GenKind::Dxi,
                weight: g.weight,
            })
            .scaled(&rat(-1)),
        ),
        GenKind::X | GenKind::Dxi => Polynomial::zero(),
    };
    Some(p)
}

/// The chiral Koszul differential: the odd derivation with
/// `xi[-n] -> x[-n]`, `dx[-n] -> -dxi[-n]`, zero on the other generators
/// (summed over all variables). Raises cohomological degree by 1 and
/// preserves conformal weight.
pub fn d_ch() -> Derivation {
    Derivation { parity: Parity::Odd, images: Images::Rule(d_ch_image) }
}

fn g1_image(g: &Generator) -> Option<Polynomial> {
    let n = g.weight as i64;
    let p = match g.kind {
        GenKind::X => Polynomial::from(
            Monomial::from_generator(Generator { var: g.var, kind: GenKind::Xi, weight: g.weight })
                .scaled(&rat(n)),
        ),
        GenKind::Dxi => Polynomial::from(
            Monomial::from_generator(Generator { var: g.var, kind: GenKind::Dx, weight: g.weight })
                .scaled(&rat(-n)),
        ),
        GenKind::Xi | GenKind::Dx => Polynomial::zero(),
    };
    Some(p)
}

/// The contracting homotopy: the odd derivation with `x[-n] -> n xi[-n]`,
/// `dxi[-n] -> -n dx[-n]`, zero on the other generators. Together with
/// [`d_ch`] it satisfies `d g1 + g1 d = N id` on every weight-N component.
pub fn g1() -> Derivation {
    Derivation { parity: Parity::Odd, images: Images::Rule(g1_image) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiralKind {
    Plain,
    Localized,
    Quotient,
    VnOnly,
}

impl ChiralKind {
    fn basis_variant(self) -> BasisVariant {
        match self {
            ChiralKind::Plain => BasisVariant::Plain,
            ChiralKind::Localized => BasisVariant::Localized,
            ChiralKind::Quotient => BasisVariant::Quotient,
            ChiralKind::VnOnly => BasisVariant::VnOnly,
        }
    }

    /// Which window edges are genuine boundaries of the untruncated
    /// complex.
    fn edge_flags(self) -> (bool, bool) {
        match self {
            ChiralKind::Plain => (true, false),
            ChiralKind::Localized => (false, false),
            ChiralKind::Quotient => (false, true),
            ChiralKind::VnOnly => (true, true),
        }
    }

    fn localization(self, num_vars: u32) -> Localization {
        match self {
            ChiralKind::Localized | ChiralKind::Quotient => Localization::all_vars(num_vars),
            ChiralKind::Plain | ChiralKind::VnOnly => Localization::none(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChiralSpec {
    pub kind: ChiralKind,
    pub weight: i64,
    pub zero_window: i64,
    pub num_vars: u32,
}

impl ChiralSpec {
    pub fn new(kind: ChiralKind, weight: i64, zero_window: i64, num_vars: u32) -> Result<Self, Error> {
        if weight < 0 {
            return Err(Error::InvalidArgument(format!("negative weight {weight}")));
        }
        if zero_window < 0 {
            return Err(Error::InvalidArgument(format!("negative zero window {zero_window}")));
        }
        if num_vars == 0 {
            return Err(Error::InvalidArgument("at least one variable required".into()));
        }
        Ok(ChiralSpec { kind, weight, zero_window, num_vars })
    }
}

pub(crate) struct WeightComplexData {
    pub complex: GradedComplex,
    pub buckets: BTreeMap<i64, Vec<Monomial>>,
}

/// Expand a derivation to a family of matrices on weight-graded buckets,
/// dropping images that fall outside the zero-mode ranges (legitimate
/// truncation) and rejecting any other unexpanded monomial.
fn derivation_matrices(
    d: &Derivation,
    degree_step: i64,
    buckets: &BTreeMap<i64, Vec<Monomial>>,
    ranges: &[ZeroModeRange],
    degree_range: (i64, i64),
    loc: &Localization,
) -> Result<BTreeMap<i64, SparseMatrix>, Error> {
    let num_vars = ranges.len() as u32;
    let mut index: BTreeMap<&crate::superpoly::Exponents, (i64, usize)> = BTreeMap::new();
    for (&i, bucket) in buckets {
        for (col, m) in bucket.iter().enumerate() {
            index.insert(&m.factors, (i, col));
        }
    }
    let mut out = BTreeMap::new();
    for (&i, bucket) in buckets {
        let target = i + degree_step;
        let rows = buckets.get(&target).map_or(0, Vec::len);
        let mut matrix = SparseMatrix::zero(rows, bucket.len());
        for (col, b) in bucket.iter().enumerate() {
            let image = d.apply(&Polynomial::from(b.clone()), loc)?;
            for m in image.monomials() {
                match index.get(&m.factors) {
                    Some(&(j, row)) => {
                        if j != target {
                            return Err(Error::Shape(format!(
                                "image of {} lands at degree {j}, expected {target}",
                                label(b, num_vars)
                            )));
                        }
                        matrix.add_to(row, col, &m.coeff);
                    }
                    None => {
                        let in_degrees =
                            target >= degree_range.0 && target <= degree_range.1;
                        if in_degrees && within_zero_ranges(&m, ranges) {
                            return Err(Error::Shape(format!(
                                "image monomial {} of {} missing from the basis",
                                label(&m, num_vars),
                                label(b, num_vars)
                            )));
                        }
                        // outside the window: killed by the truncation
                    }
                }
            }
        }
        out.insert(i, matrix);
    }
    Ok(out)
}

/// Degrees at which the per-variable zero-mode caps behave like a single
/// edge cut. With one variable every cap drop-off happens next to an open
/// window edge, so the full bucket range is usable. With several variables
/// a weight-zero monomial can sit at one variable's cap while the others
/// are far from theirs, which produces drop-offs at interior degrees; the
/// reported window is narrowed so those degrees fall outside it. (At
/// positive weight the non-zero-mode factor is acyclic and the drop-offs
/// cancel in cohomology, so no narrowing is needed.)
fn safe_degree_range(spec: &ChiralSpec) -> (i64, i64) {
    if spec.num_vars < 2 || spec.weight != 0 {
        return (i64::MIN, i64::MAX);
    }
    let m = spec.zero_window;
    match spec.kind {
        ChiralKind::Plain => (i64::MIN, m),
        ChiralKind::Localized => (-m, m),
        ChiralKind::Quotient => (-m, i64::MAX),
        ChiralKind::VnOnly => (i64::MIN, i64::MAX),
    }
}

pub(crate) fn build_weight_data(spec: &ChiralSpec) -> Result<WeightComplexData, Error> {
    let ranges = variant_ranges(spec.kind.basis_variant(), spec.num_vars, spec.zero_window);
    let degree_range = safe_degree_range(spec);
    let mut buckets = enumerate_with_zero_ranges(spec.weight, &ranges);
    buckets.retain(|&i, _| i >= degree_range.0 && i <= degree_range.1);
    if buckets.is_empty() {
        return Err(Error::Domain(format!(
            "empty basis for weight {} with zero window {}",
            spec.weight, spec.zero_window
        )));
    }
    let loc = spec.kind.localization(spec.num_vars);
    let matrices = derivation_matrices(&d_ch(), 1, &buckets, &ranges, degree_range, &loc)?;
    let window = (
        *buckets.keys().next().unwrap(),
        *buckets.keys().next_back().unwrap(),
    );
    let basis = buckets
        .iter()
        .map(|(&i, b)| (i, b.iter().map(|m| label(m, spec.num_vars)).collect()))
        .collect();
    let diff = matrices.into_iter().filter(|&(i, _)| i < window.1).collect();
    let (left_closed, right_closed) = spec.kind.edge_flags();
    let complex = GradedComplex::new(window, basis, diff, left_closed, right_closed)?;
    let d2 = complex.check_d_squared();
    if let Some(&degree) = d2.failures.first() {
        return Err(Error::DSquared { degree });
    }
    Ok(WeightComplexData { complex, buckets })
}

/// The weight-N component of the chosen variant inside a zero-mode window.
pub fn build_weight_complex(spec: &ChiralSpec) -> Result<GradedComplex, Error> {
    Ok(build_weight_data(spec)?.complex)
}

/// The glued bouquet quotient ⊕̇ plain at weight N. The quotient summand is
/// placed so that its surviving cocycle sits in degree -1; at weight 0 the
/// differential gains the rank-1 gluing map sending the coefficient of
/// `prod_i xi[i,0] x[i,0]^-1` to the unit cocycle. At positive weight both
/// summands are already acyclic and the differential is the direct sum.
pub fn build_chiral_janus(weight: i64, zero_window: i64, num_vars: u32) -> Result<GradedComplex, Error> {
    if zero_window < num_vars as i64 {
        // the gluing cocycle has one singular zero mode per variable, so
        // the quotient window has to reach down that far
        return Err(Error::InvalidArgument(format!(
            "zero window {zero_window} too small for {num_vars} variables"
        )));
    }
    let quotient =
        build_weight_data(&ChiralSpec::new(ChiralKind::Quotient, weight, zero_window, num_vars)?)?;
    let plain =
        build_weight_data(&ChiralSpec::new(ChiralKind::Plain, weight, zero_window, num_vars)?)?;
    // native quotient degree d sits in bucket d + (num_vars - 1)
    let offset = num_vars as i64 - 1;
    let q = quotient.complex.shift(-offset);

    let (qa, qb) = q.window();
    let (pa, pb) = plain.complex.window();
    let window = (qa.min(pa), qb.max(pb));
    let edge = |pos: i64, qe: i64, qflag: bool, pe: i64, pflag: bool| {
        (qe != pos || qflag) && (pe != pos || pflag)
    };
    let left_closed = edge(window.0, qa, q.left_closed(), pa, plain.complex.left_closed());
    let right_closed = edge(window.1, qb, q.right_closed(), pb, plain.complex.right_closed());

    let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for i in window.0..=window.1 {
        let mut labels: Vec<String> =
            q.labels(i).iter().map(|l| format!("quotient:{l}")).collect();
        labels.extend(plain.complex.labels(i).iter().map(|l| format!("plain:{l}")));
        basis.insert(i, labels);
    }
    let mut diff: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for i in window.0..window.1 {
        let q_rows = q.dim(i + 1);
        let q_cols = q.dim(i);
        let mut m = SparseMatrix::zero(q_rows + plain.complex.dim(i + 1), q_cols + plain.complex.dim(i));
        if let Some(dq) = q.diff_at(i) {
            for (r, c, v) in dq.iter() {
                m.add_to(r, c, v);
            }
        }
        if let Some(dp) = plain.complex.diff_at(i) {
            for (r, c, v) in dp.iter() {
                m.add_to(q_rows + r, q_cols + c, v);
            }
        }
        diff.insert(i, m);
    }

    if weight == 0 {
        let glue_target = gluing_cocycle(num_vars);
        let native = -(num_vars as i64);
        let col = quotient.buckets[&native]
            .iter()
            .position(|m| m.factors == glue_target.factors)
            .ok_or_else(|| Error::Gluing("gluing cocycle missing from the quotient basis".into()))?;
        let row = plain.buckets[&0]
            .iter()
            .position(|m| m.factors.0.is_empty())
            .ok_or_else(|| Error::Gluing("unit cocycle missing from the plain basis".into()))?;
        let seam = diff.get_mut(&-1).ok_or_else(|| Error::Gluing("no seam degree".into()))?;
        seam.add_to(q.dim(0) + row, col, &Rational::one());
    }

    let complex = GradedComplex::new(window, basis, diff, left_closed, right_closed)?;
    let d2 = complex.check_d_squared();
    if let Some(&degree) = d2.failures.first() {
        return Err(Error::DSquared { degree });
    }
    Ok(complex)
}

/// The monomial `prod_i xi[i,0] x[i,0]^-1` whose coefficient the gluing
/// extracts.
pub fn gluing_cocycle(num_vars: u32) -> Monomial {
    let mut factors = Vec::new();
    for var in 0..num_vars {
        factors.push((Generator { var, kind: GenKind::X, weight: 0 }, -1));
        factors.push((Generator { var, kind: GenKind::Xi, weight: 0 }, 1));
    }
    Monomial::from_factors(Rational::one(), &factors)
}

#[derive(Clone, Debug)]
pub struct HomotopyCertificate {
    pub weight: i64,
    pub dimension: usize,
    pub residual_is_zero: bool,
    /// Label of the first basis vector violating the identity, if any.
    pub first_failure: Option<String>,
    /// Diagonal of `d g1 + g1 d` per basis label; every entry must equal
    /// the weight.
    pub eigenvalue_table: Vec<(String, Rational)>,
}

impl HomotopyCertificate {
    pub fn pass(&self) -> bool {
        self.residual_is_zero
    }
}

/// Check `d g1 + g1 d = N id` exactly on the whole weight-N basis of the
/// chosen variant.
pub fn verify_homotopy(spec: &ChiralSpec) -> Result<HomotopyCertificate, Error> {
    let ranges = variant_ranges(spec.kind.basis_variant(), spec.num_vars, spec.zero_window);
    let buckets = enumerate_with_zero_ranges(spec.weight, &ranges);
    let loc = spec.kind.localization(spec.num_vars);

    // flatten: the anticommutator is degree 0, so one block matrix per
    // degree would do, but a single matrix on the flattened basis keeps
    // the bookkeeping trivial
    let flat: Vec<&Monomial> = buckets.values().flatten().collect();
    let index: BTreeMap<&crate::superpoly::Exponents, usize> =
        flat.iter().enumerate().map(|(i, m)| (&m.factors, i)).collect();
    let n = flat.len();
    let to_matrix = |d: &Derivation| -> Result<SparseMatrix, Error> {
        let mut m = SparseMatrix::zero(n, n);
        for (col, b) in flat.iter().enumerate() {
            let image = d.apply(&Polynomial::from((*b).clone()), &loc)?;
            for t in image.monomials() {
                match index.get(&t.factors) {
                    Some(&row) => m.add_to(row, col, &t.coeff),
                    None => {
                        if within_zero_ranges(&t, &ranges) {
                            return Err(Error::Shape(format!(
                                "image monomial {} missing from the flattened basis",
                                label(&t, spec.num_vars)
                            )));
                        }
                    }
                }
            }
        }
        Ok(m)
    };
    let d = to_matrix(&d_ch())?;
    let g = to_matrix(&g1())?;
    let mut anti = d.mul(&g);
    for (r, c, v) in g.mul(&d).iter() {
        anti.add_to(r, c, v);
    }
    let weight = rat(spec.weight);
    let mut residual_is_zero = true;
    let mut first_failure = None;
    'outer: for col in 0..n {
        for row in 0..n {
            let expected = if row == col { weight.clone() } else { Rational::zero() };
            if anti.get(row, col) != expected {
                residual_is_zero = false;
                first_failure = Some(label(flat[col], spec.num_vars));
                break 'outer;
            }
        }
    }
    let eigenvalue_table =
        flat.iter().enumerate().map(|(i, m)| (label(m, spec.num_vars), anti.get(i, i))).collect();
    Ok(HomotopyCertificate {
        weight: spec.weight,
        dimension: n,
        residual_is_zero,
        first_failure,
        eigenvalue_table,
    })
}

#[derive(Clone, Debug)]
pub struct TensorDecompositionReport {
    pub weight: i64,
    pub dims_match: bool,
    pub mismatched_degree: Option<i64>,
    pub iso: bool,
}

impl TensorDecompositionReport {
    pub fn pass(&self) -> bool {
        self.dims_match && self.iso
    }
}

/// Certify the factorization of the weight-N plain component as
/// (weight-N, no zero modes) ⊗ (weight-0 plain): per-degree dimensions
/// match and multiplication is a chain isomorphism onto the direct build,
/// up to the sign reconciling the tensor differential (cohomological
/// degree) with the Leibniz rule (super-parity).
pub fn tensor_decomposition_check(weight: i64, zero_window: i64) -> Result<TensorDecompositionReport, Error> {
    let vn = build_weight_data(&ChiralSpec::new(ChiralKind::VnOnly, weight, 0, 1)?)?;
    let w0 = build_weight_data(&ChiralSpec::new(ChiralKind::Plain, 0, zero_window, 1)?)?;
    let direct = build_weight_data(&ChiralSpec::new(ChiralKind::Plain, weight, zero_window, 1)?)?;
    let t = tensor(&vn.complex, &w0.complex);

    let mut dims_match = true;
    let mut mismatched_degree = None;
    for i in t.window().0..=t.window().1 {
        if t.dim(i) != direct.complex.dim(i) {
            dims_match = false;
            mismatched_degree = Some(i);
            break;
        }
    }
    if !dims_match || t.window() != direct.complex.window() {
        return Ok(TensorDecompositionReport {
            weight,
            dims_match: false,
            mismatched_degree: mismatched_degree.or(Some(t.window().0)),
            iso: false,
        });
    }

    let by_label = |data: &WeightComplexData| -> BTreeMap<String, Monomial> {
        data.buckets.values().flatten().map(|m| (label(m, 1), m.clone())).collect()
    };
    let vn_lookup = by_label(&vn);
    let w0_lookup = by_label(&w0);
    let direct_index: BTreeMap<&crate::superpoly::Exponents, (i64, usize)> = direct
        .buckets
        .iter()
        .flat_map(|(&i, b)| b.iter().enumerate().map(move |(j, m)| (&m.factors, (i, j))))
        .collect();

    let loc = Localization::none();
    let mut maps = BTreeMap::new();
    for i in t.window().0..=t.window().1 {
        let mut m = SparseMatrix::zero(direct.complex.dim(i), t.dim(i));
        for (col, tl) in t.labels(i).iter().enumerate() {
            let (vl, zl) = tl
                .split_once('⊗')
                .ok_or_else(|| Error::Shape(format!("unexpected tensor label {tl}")))?;
            let v = &vn_lookup[vl];
            let z = &w0_lookup[zl];
            let product = v.mul(z, &loc)?;
            let (deg, row) = direct_index[&product.factors];
            if deg != i {
                return Err(Error::Shape(format!("product of {tl} lands at degree {deg}")));
            }
            // parity and degree of v disagree mod 2 exactly when the tensor
            // sign and the Leibniz sign differ on this column
            let (_, v_deg) = v.gradings();
            let tau = (v.factors.odd_parity() as i64 + v_deg).rem_euclid(2);
            let pi = z.factors.odd_parity() as i64;
            let sign = if tau * pi % 2 == 1 { rat(-1) } else { rat(1) };
            m.add_to(row, col, &(&product.coeff * &sign));
        }
        maps.insert(i, m);
    }
    let f = ChainMap::new(t, direct.complex, maps)?;
    let report = f.verify();
    Ok(TensorDecompositionReport {
        weight,
        dims_match: true,
        mismatched_degree: report.square_failures.first().copied(),
        iso: report.is_iso(),
    })
}

/// The explicit degreewise swap identifying the weight-0 plain component
/// with the shifted Koszul complex of `classical` on the same window.
pub fn weight_zero_iso(zero_window: i64) -> Result<ChainMap, Error> {
    let source = build_weight_complex(&ChiralSpec::new(ChiralKind::Plain, 0, zero_window, 1)?)?;
    let target = crate::classical::koszul_complex(&crate::classical::KoszulSpec {
        variant: crate::classical::KoszulVariant::DeltaPlus,
        window: (0, zero_window),
    })?;
    let swap = SparseMatrix::from_rows(&[&[0, 1], &[1, 0]]);
    let maps = (0..=zero_window).map(|i| (i, swap.clone())).collect();
    ChainMap::new(source, target, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0_pow(n: i64) -> Monomial {
        Monomial::from_factors(
            Rational::one(),
            &[(Generator { var: 0, kind: GenKind::X, weight: 0 }, n)],
        )
    }

    fn xi0_x0_pow(n: i64) -> Monomial {
        Monomial::from_factors(
            Rational::one(),
            &[
                (Generator { var: 0, kind: GenKind::X, weight: 0 }, n),
                (Generator { var: 0, kind: GenKind::Xi, weight: 0 }, 1),
            ],
        )
    }

    #[test]
    fn d_ch_on_weight_zero_monomials() {
        let d = d_ch();
        let loc = Localization::all_vars(1);
        for n in [-1, 0, 3] {
            let image = d.apply(&Polynomial::from(xi0_x0_pow(n)), &loc).unwrap();
            assert_eq!(image, Polynomial::from(x0_pow(n + 1)), "n = {n}");
        }
        assert!(d.apply(&Polynomial::one(), &loc).unwrap().is_zero());
        assert_eq!(
            d.apply(&Polynomial::from(xi0_x0_pow(-1)), &loc).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn d_ch_squares_to_zero_on_enumerated_bases() {
        let d = d_ch();
        let loc = Localization::all_vars(2);
        for n in 0..=3 {
            for m in enumerate_with_zero_ranges(
                n,
                &variant_ranges(BasisVariant::Localized, 2, 2),
            )
            .values()
            .flatten()
            {
                let once = d.apply(&Polynomial::from(m.clone()), &loc).unwrap();
                assert!(d.apply(&once, &loc).unwrap().is_zero(), "{}", label(m, 2));
            }
        }
    }

    #[test]
    fn d_ch_raises_degree_and_preserves_weight() {
        let d = d_ch();
        let loc = Localization::none();
        for n in 1..=3 {
            for m in enumerate_with_zero_ranges(n, &variant_ranges(BasisVariant::Plain, 1, 2))
                .values()
                .flatten()
            {
                let (w, deg) = m.gradings();
                for t in d.apply(&Polynomial::from(m.clone()), &loc).unwrap().monomials() {
                    assert_eq!(t.gradings(), (w, deg + 1));
                }
            }
        }
    }

    #[test]
    fn g1_generator_images() {
        let g = g1();
        let loc = Localization::none();
        let x1 = Monomial::from_generator(Generator { var: 0, kind: GenKind::X, weight: 1 });
        let xi1 = Monomial::from_generator(Generator { var: 0, kind: GenKind::Xi, weight: 1 });
        assert_eq!(g.apply(&Polynomial::from(x1), &loc).unwrap(), Polynomial::from(xi1));
        assert!(g.apply(&Polynomial::from(x0_pow(1)), &loc).unwrap().is_zero());
    }

    #[test]
    fn anticommutator_on_a_weight_two_generator() {
        let d = d_ch();
        let g = g1();
        let loc = Localization::none();
        let x2 = Polynomial::from(Monomial::from_generator(Generator {
            var: 0,
            kind: GenKind::X,
            weight: 2,
        }));
        let dg = d.apply(&g.apply(&x2, &loc).unwrap(), &loc).unwrap();
        let gd = g.apply(&d.apply(&x2, &loc).unwrap(), &loc).unwrap();
        assert_eq!(dg.add(&gd), x2.scale(&rat(2)));
    }

    #[test]
    fn plain_weight_zero_cohomology() {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::Plain, 0, 8, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(c.trusted_degrees(), (0..=6).collect::<Vec<_>>());
        let h = c.cohomology(true).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.dim(0), Some(1));
        assert_eq!(h.reps[&0][0], vec![(Rational::one(), "1".to_string())]);
    }

    #[test]
    fn quotient_weight_zero_cohomology() {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::Quotient, 0, 8, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(c.window(), (-8, -1));
        let h = c.cohomology(true).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.dim(-1), Some(1));
        assert_eq!(h.reps[&-1][0], vec![(Rational::one(), "x[0]^-1*xi[0]".to_string())]);
    }

    #[test]
    fn localized_weight_zero_is_acyclic() {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::Localized, 0, 8, 1).unwrap(),
        )
        .unwrap();
        assert!(c.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn vn_weight_one_structure() {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::VnOnly, 1, 0, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(c.window(), (-1, 1));
        assert_eq!(c.dim(-1), 1);
        assert_eq!(c.dim(0), 2);
        assert_eq!(c.dim(1), 1);
        assert!(c.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn plain_cohomology_concentrated_at_weight_zero() {
        for n in 0..=4 {
            let c = build_weight_complex(
                &ChiralSpec::new(ChiralKind::Plain, n, 6, 1).unwrap(),
            )
            .unwrap();
            let h = c.cohomology(false).unwrap();
            if n == 0 {
                assert_eq!(h.total(), 1);
                assert_eq!(h.dim(0), Some(1));
            } else {
                assert!(h.is_acyclic(), "weight {n}");
            }
        }
    }

    #[test]
    fn janus_weight_zero_is_acyclic() {
        let c = build_chiral_janus(0, 8, 1).unwrap();
        assert_eq!(c.window(), (-8, 8));
        assert!(c.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn janus_positive_weight_is_an_acyclic_direct_sum() {
        let c = build_chiral_janus(2, 4, 1).unwrap();
        // no cross-summand entries: every label pair in the seam stays
        // within its part
        for i in c.window().0..c.window().1 {
            let d = c.diff_at(i).unwrap();
            for (r, col, v) in d.iter() {
                if num::Zero::is_zero(v) {
                    continue;
                }
                let from = &c.labels(i)[col];
                let to = &c.labels(i + 1)[r];
                assert_eq!(
                    from.split(':').next(),
                    to.split(':').next(),
                    "cross term {from} -> {to}"
                );
            }
        }
        assert!(c.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn janus_two_variables_is_acyclic() {
        let c = build_chiral_janus(0, 4, 2).unwrap();
        assert!(c.cohomology(false).unwrap().is_acyclic());
        // the seam hits the unit from the product of singular zero modes
        let seam = c.diff_at(-1).unwrap();
        let glue_label = format!("quotient:{}", label(&gluing_cocycle(2), 2));
        let col = c.labels(-1).iter().position(|l| l == &glue_label).unwrap();
        let row = c.labels(0).iter().position(|l| l == "plain:1").unwrap();
        assert_eq!(seam.get(row, col), Rational::one());
    }

    #[test]
    fn gluing_functional_vanishes_on_boundaries() {
        // no d_ch image of a quotient monomial contains the gluing cocycle
        for num_vars in [1, 2] {
            let spec = ChiralSpec::new(ChiralKind::Quotient, 0, 4, num_vars).unwrap();
            let data = build_weight_data(&spec).unwrap();
            let d = d_ch();
            let loc = Localization::all_vars(num_vars);
            let target = gluing_cocycle(num_vars);
            for m in data.buckets.values().flatten() {
                for t in d.apply(&Polynomial::from(m.clone()), &loc).unwrap().monomials() {
                    assert_ne!(t.factors, target.factors, "boundary of {}", label(m, num_vars));
                }
            }
        }
    }

    #[test]
    fn homotopy_certificate_on_v1() {
        let cert =
            verify_homotopy(&ChiralSpec::new(ChiralKind::VnOnly, 1, 0, 1).unwrap()).unwrap();
        assert!(cert.pass());
        assert_eq!(cert.dimension, 4);
        for (l, v) in &cert.eigenvalue_table {
            assert_eq!(v, &Rational::one(), "{l}");
        }
    }

    #[test]
    fn homotopy_certificate_weight_zero_is_trivial() {
        let cert =
            verify_homotopy(&ChiralSpec::new(ChiralKind::Plain, 0, 4, 1).unwrap()).unwrap();
        assert!(cert.pass());
        assert!(cert.eigenvalue_table.iter().all(|(_, v)| num::Zero::is_zero(v)));
    }

    #[test]
    fn homotopy_certificate_on_v3_and_plain_truncations() {
        assert!(verify_homotopy(&ChiralSpec::new(ChiralKind::VnOnly, 3, 0, 1).unwrap())
            .unwrap()
            .pass());
        assert!(verify_homotopy(&ChiralSpec::new(ChiralKind::Plain, 2, 3, 1).unwrap())
            .unwrap()
            .pass());
        assert!(verify_homotopy(&ChiralSpec::new(ChiralKind::Localized, 2, 2, 1).unwrap())
            .unwrap()
            .pass());
    }

    #[test]
    fn tensor_decomposition_small_weights() {
        for (n, m) in [(1, 3), (2, 2)] {
            let report = tensor_decomposition_check(n, m).unwrap();
            assert!(report.pass(), "weight {n}, window {m}: {report:?}");
        }
    }

    #[test]
    fn v2_has_dimension_twelve() {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::VnOnly, 2, 0, 1).unwrap(),
        )
        .unwrap();
        let total: usize = (c.window().0..=c.window().1).map(|i| c.dim(i)).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn weight_zero_iso_certified() {
        let f = weight_zero_iso(8).unwrap();
        assert!(f.verify().is_iso());
    }
}

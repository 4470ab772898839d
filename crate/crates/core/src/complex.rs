//! Graded cochain complexes on a finite degree window, with explicit trust
//! semantics at the window edges.
//!
//! An infinite complex is represented by a finite window `[a, b]` together
//! with two flags saying whether the complex is genuinely zero beyond each
//! edge. Cohomology is only reported at *trusted* degrees: a closed edge
//! behaves like a zero complex outside the window, while an open edge marks
//! a truncation cut whose two adjacent degrees are excluded (both the kernel
//! at the edge and the image into the next degree may be distorted there).

use std::collections::BTreeMap;

use crate::linalg::{Rational, SparseMatrix};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    window: (i64, i64),
    basis: BTreeMap<i64, Vec<String>>,
    diff: BTreeMap<i64, SparseMatrix>,
    left_closed: bool,
    right_closed: bool,
}

impl GradedComplex {
    /// Build a complex from its window, labeled bases and differentials.
    /// Missing bases are empty, missing differentials are zero maps; shapes
    /// are validated. `d^2 = 0` is *not* assumed here, see
    /// [`GradedComplex::check_d_squared`].
    pub fn new(
        window: (i64, i64),
        basis: BTreeMap<i64, Vec<String>>,
        diff: BTreeMap<i64, SparseMatrix>,
        left_closed: bool,
        right_closed: bool,
    ) -> Result<Self, Error> {
        let (a, b) = window;
        if a > b {
            return Err(Error::Shape(format!("empty window [{a}, {b}]")));
        }
        for &i in basis.keys() {
            if i < a || i > b {
                return Err(Error::Shape(format!("basis at degree {i} outside window [{a}, {b}]")));
            }
        }
        for &i in diff.keys() {
            if i < a || i >= b {
                return Err(Error::Shape(format!(
                    "differential at degree {i} outside window [{a}, {b})"
                )));
            }
        }
        let mut basis = basis;
        let mut diff = diff;
        for i in a..=b {
            basis.entry(i).or_default();
        }
        for i in a..b {
            let rows = basis[&(i + 1)].len();
            let cols = basis[&i].len();
            let m = diff.entry(i).or_insert_with(|| SparseMatrix::zero(rows, cols));
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::Shape(format!(
                    "differential at degree {i} is {}x{}, bases require {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(GradedComplex { window, basis, diff, left_closed, right_closed })
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn left_closed(&self) -> bool {
        self.left_closed
    }

    pub fn right_closed(&self) -> bool {
        self.right_closed
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.basis.get(&degree).map_or(0, |b| b.len())
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.basis.get(&degree).map_or(&[], |b| b.as_slice())
    }

    pub fn basis_map(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.basis
    }

    pub fn diff_map(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.diff
    }

    /// The stored differential `d^i : C^i -> C^{i+1}`, if `i` is inside the
    /// window.
    pub fn diff_at(&self, degree: i64) -> Option<&SparseMatrix> {
        self.diff.get(&degree)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.basis.iter().map(|(&i, b)| (i, b.len())).collect()
    }

    /// Degrees at which reported cohomology is unaffected by truncation.
    pub fn trusted_degrees(&self) -> Vec<i64> {
        let (a, b) = self.window;
        (a..=b)
            .filter(|&i| {
                (self.left_closed || i >= a + 2) && (self.right_closed || i <= b - 2)
            })
            .collect()
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let (a, b) = self.window;
        let mut failures = Vec::new();
        for i in a..=(b - 2) {
            let composite = self.diff[&(i + 1)].mul(&self.diff[&i]);
            if !composite.is_zero() {
                failures.push(i);
            }
        }
        DSquaredReport { failures }
    }

    fn outgoing(&self, degree: i64) -> SparseMatrix {
        match self.diff.get(&degree) {
            Some(m) => m.clone(),
            // closed right edge: the complex is zero past b
            None => SparseMatrix::zero(0, self.dim(degree)),
        }
    }

    fn incoming(&self, degree: i64) -> SparseMatrix {
        match self.diff.get(&(degree - 1)) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.dim(degree), 0),
        }
    }

    /// Cohomology dimensions (and optional representative cocycles) at all
    /// trusted degrees. Refuses to run when `d^2 != 0`.
    pub fn cohomology(&self, with_reps: bool) -> Result<CohomologyReport, Error> {
        let d2 = self.check_d_squared();
        if !d2.pass() {
            return Err(Error::DSquared { degree: d2.failures[0] });
        }
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for i in self.trusted_degrees() {
            let d_out = self.outgoing(i);
            let d_in = self.incoming(i);
            let h = d_out.kernel_dim() - d_in.rank();
            dims.insert(i, h);
            if with_reps && h > 0 {
                reps.insert(i, self.representatives(i, &d_out, &d_in, h));
            }
        }
        Ok(CohomologyReport { dims, reps })
    }

    /// Kernel vectors independent modulo the image, found by rank accounting.
    fn representatives(
        &self,
        degree: i64,
        d_out: &SparseMatrix,
        d_in: &SparseMatrix,
        count: usize,
    ) -> Vec<Vec<(Rational, String)>> {
        let labels = self.labels(degree);
        let mut running = d_in.clone();
        let mut rank = running.rank();
        let mut out = Vec::new();
        for v in d_out.kernel_basis() {
            if out.len() == count {
                break;
            }
            let candidate = running.hstack(&SparseMatrix::from_columns(v.len(), &[v.clone()]));
            let r = candidate.rank();
            if r > rank {
                rank = r;
                running = candidate;
                out.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !num::Zero::is_zero(*x))
                        .map(|(j, x)| (x.clone(), labels[j].clone()))
                        .collect(),
                );
            }
        }
        out
    }

    /// Degreewise dual: the term at `-i-1` is the dual of the term at `i`,
    /// the differential is the plain transpose, edge flags swap sides.
    pub fn dualize(&self) -> GradedComplex {
        let (a, b) = self.window;
        let window = (-b - 1, -a - 1);
        let mut basis = BTreeMap::new();
        for (&i, labels) in &self.basis {
            basis.insert(-i - 1, labels.iter().map(|l| format!("{l}^∨")).collect::<Vec<_>>());
        }
        let mut diff = BTreeMap::new();
        for j in window.0..window.1 {
            diff.insert(j, self.diff[&(-j - 2)].transpose());
        }
        GradedComplex::new(window, basis, diff, self.right_closed, self.left_closed)
            .expect("dual of a valid complex is valid")
    }

    /// Shift degrees by `k` (result degree `i` holds `C^{i+k}`), with the
    /// conventional sign `(-1)^k` on the differentials.
    pub fn shift(&self, k: i64) -> GradedComplex {
        let (a, b) = self.window;
        let window = (a - k, b - k);
        let sign = if k.rem_euclid(2) == 0 { crate::linalg::rat(1) } else { crate::linalg::rat(-1) };
        let basis = self.basis.iter().map(|(&i, l)| (i - k, l.clone())).collect();
        let diff = self.diff.iter().map(|(&i, m)| (i - k, m.scale(&sign))).collect();
        GradedComplex::new(window, basis, diff, self.left_closed, self.right_closed)
            .expect("shift of a valid complex is valid")
    }
}

#[derive(Clone, Debug)]
pub struct DSquaredReport {
    pub failures: Vec<i64>,
}

impl DSquaredReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    /// Dimension per trusted degree.
    pub dims: BTreeMap<i64, usize>,
    /// Representative cocycles as sparse labeled coordinate vectors.
    pub reps: BTreeMap<i64, Vec<Vec<(Rational, String)>>>,
}

impl CohomologyReport {
    pub fn dim(&self, degree: i64) -> Option<usize> {
        self.dims.get(&degree).copied()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// Total dimension over all trusted degrees.
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Glue a complex ending at degree -1 to one starting at degree 0, taking
/// `g` as the seam differential `d^{-1}`. The two composability conditions
/// `g . d_-^{-2} = 0` and `d_+^0 . g = 0` are checked, not assumed.
pub fn glue(
    cminus: &GradedComplex,
    cplus: &GradedComplex,
    g: &SparseMatrix,
) -> Result<GradedComplex, Error> {
    let (ma, mb) = cminus.window();
    let (pa, pb) = cplus.window();
    if mb != -1 || !cminus.right_closed() {
        return Err(Error::Gluing(format!(
            "left half must end at degree -1 with a closed edge (got window [{ma}, {mb}])"
        )));
    }
    if pa != 0 || !cplus.left_closed() {
        return Err(Error::Gluing(format!(
            "right half must start at degree 0 with a closed edge (got window [{pa}, {pb}])"
        )));
    }
    if g.rows() != cplus.dim(0) || g.cols() != cminus.dim(-1) {
        return Err(Error::Shape(format!(
            "gluing map is {}x{}, bases require {}x{}",
            g.rows(),
            g.cols(),
            cplus.dim(0),
            cminus.dim(-1)
        )));
    }
    if ma < -1 {
        let pre = g.mul(&cminus.diff_at(-2).unwrap().clone());
        if !pre.is_zero() {
            return Err(Error::Gluing("g . d^{-2} != 0".into()));
        }
    }
    if pb > 0 {
        let post = cplus.diff_at(0).unwrap().mul(g);
        if !post.is_zero() {
            return Err(Error::Gluing("d^0 . g != 0".into()));
        }
    }
    let mut basis: BTreeMap<i64, Vec<String>> = cminus.basis_map().clone();
    basis.extend(cplus.basis_map().clone());
    let mut diff: BTreeMap<i64, SparseMatrix> = cminus.diff_map().clone();
    diff.extend(cplus.diff_map().clone());
    diff.insert(-1, g.clone());
    GradedComplex::new((ma, pb), basis, diff, cminus.left_closed(), cplus.right_closed())
}

/// Tensor product of complexes with the Koszul sign rule
/// `d(c ⊗ e) = dc ⊗ e + (-1)^p c ⊗ de` for `c` of degree `p`.
pub fn tensor(c: &GradedComplex, d: &GradedComplex) -> GradedComplex {
    let (ca, cb) = c.window();
    let (da, db) = d.window();
    let window = (ca + da, cb + db);

    // basis at degree p + q: pairs in lexicographic (p, q, i, j) order
    let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut index: BTreeMap<(i64, i64, usize, usize), usize> = BTreeMap::new();
    for n in window.0..=window.1 {
        let mut labels = Vec::new();
        for p in ca..=cb {
            let q = n - p;
            if q < da || q > db {
                continue;
            }
            for (i, cl) in c.labels(p).iter().enumerate() {
                for (j, dl) in d.labels(q).iter().enumerate() {
                    index.insert((p, q, i, j), labels.len());
                    labels.push(format!("{cl}⊗{dl}"));
                }
            }
        }
        basis.insert(n, labels);
    }

    let mut diff: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for n in window.0..window.1 {
        let mut m = SparseMatrix::zero(basis[&(n + 1)].len(), basis[&n].len());
        for (&(p, q, i, j), &col) in &index {
            if p + q != n {
                continue;
            }
            if let Some(dc) = c.diff_at(p) {
                for (r, cc, v) in dc.iter() {
                    if cc == i {
                        let row = index[&(p + 1, q, r, j)];
                        m.add_to(row, col, v);
                    }
                }
            }
            if let Some(dd) = d.diff_at(q) {
                let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                for (r, cc, v) in dd.iter() {
                    if cc == j {
                        let row = index[&(p, q + 1, i, r)];
                        m.add_to(row, col, &(v * crate::linalg::rat(sign)));
                    }
                }
            }
        }
        diff.insert(n, m);
    }

    GradedComplex::new(
        window,
        basis,
        diff,
        c.left_closed() && d.left_closed(),
        c.right_closed() && d.right_closed(),
    )
    .expect("tensor of valid complexes is valid")
}

/// A degree-indexed family of maps between two complexes on a shared window.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: GradedComplex,
    target: GradedComplex,
    maps: BTreeMap<i64, SparseMatrix>,
}

impl ChainMap {
    pub fn new(
        source: GradedComplex,
        target: GradedComplex,
        maps: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, Error> {
        if source.window() != target.window() {
            return Err(Error::Window(format!(
                "source window {:?} != target window {:?}",
                source.window(),
                target.window()
            )));
        }
        let (a, b) = source.window();
        let mut maps = maps;
        for i in a..=b {
            let rows = target.dim(i);
            let cols = source.dim(i);
            let m = maps.entry(i).or_insert_with(|| SparseMatrix::zero(rows, cols));
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::Shape(format!(
                    "chain map at degree {i} is {}x{}, bases require {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    pub fn map_at(&self, degree: i64) -> &SparseMatrix {
        &self.maps[&degree]
    }

    pub fn maps(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.maps
    }

    /// Check every commuting square exactly and certify invertibility per
    /// degree.
    pub fn verify(&self) -> ChainMapReport {
        let (a, b) = self.source.window();
        let mut square_failures = Vec::new();
        for i in a..b {
            let lhs = self.target.diff_at(i).unwrap().mul(&self.maps[&i]);
            let rhs = self.maps[&(i + 1)].mul(self.source.diff_at(i).unwrap());
            if lhs != rhs {
                square_failures.push(i);
            }
        }
        let iso = (a..=b).all(|i| self.maps[&i].is_invertible());
        ChainMapReport { square_failures, iso }
    }
}

#[derive(Clone, Debug)]
pub struct ChainMapReport {
    pub square_failures: Vec<i64>,
    pub iso: bool,
}

impl ChainMapReport {
    pub fn commutes(&self) -> bool {
        self.square_failures.is_empty()
    }

    pub fn is_iso(&self) -> bool {
        self.commutes() && self.iso
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use num::Zero;
    use proptest::prelude::*;

    fn two_dim_basis(deg: i64) -> Vec<String> {
        vec![format!("c{deg}+"), format!("c{deg}-")]
    }

    /// The sphere-style complex: every term 2-dimensional, every
    /// differential [[1,-1],[1,-1]].
    fn sphere(window: (i64, i64), left_closed: bool, right_closed: bool) -> GradedComplex {
        let a_mat = SparseMatrix::from_rows(&[&[1, -1], &[1, -1]]);
        let basis = (window.0..=window.1).map(|i| (i, two_dim_basis(i))).collect();
        let diff = (window.0..window.1).map(|i| (i, a_mat.clone())).collect();
        GradedComplex::new(window, basis, diff, left_closed, right_closed).unwrap()
    }

    #[test]
    fn d_squared_passes_for_sphere_n2() {
        assert!(sphere((0, 2), true, true).check_d_squared().pass());
    }

    #[test]
    fn d_squared_vacuous_for_single_differential() {
        assert!(sphere((0, 1), true, true).check_d_squared().pass());
    }

    #[test]
    fn d_squared_detects_nonzero_composite() {
        let basis: BTreeMap<i64, Vec<String>> =
            (0..=2).map(|i| (i, vec![format!("b{i}")])).collect();
        let one = SparseMatrix::from_rows(&[&[1]]);
        let diff: BTreeMap<i64, SparseMatrix> = [(0, one.clone()), (1, one)].into();
        let c = GradedComplex::new((0, 2), basis, diff, true, true).unwrap();
        let report = c.check_d_squared();
        assert_eq!(report.failures, vec![0]);
        assert!(c.cohomology(false).is_err());
    }

    #[test]
    fn sphere_n2_cohomology() {
        let h = sphere((0, 2), true, true).cohomology(true).unwrap();
        assert_eq!(h.dim(0), Some(1));
        assert_eq!(h.dim(1), Some(0));
        assert_eq!(h.dim(2), Some(1));
        // degree-0 representative is a cocycle independent of the image
        assert_eq!(h.reps[&0].len(), 1);
    }

    #[test]
    fn open_edges_are_untrusted() {
        let c = sphere((0, 8), true, false);
        assert_eq!(c.trusted_degrees(), (0..=6).collect::<Vec<_>>());
        let both_open = sphere((-8, 8), false, false);
        assert_eq!(both_open.trusted_degrees(), (-6..=6).collect::<Vec<_>>());
    }

    #[test]
    fn dualize_zero_complex() {
        let c = GradedComplex::new((0, 1), BTreeMap::new(), BTreeMap::new(), true, true).unwrap();
        let d = c.dualize();
        assert_eq!(d.window(), (-2, -1));
        assert_eq!(d.dim(-1), 0);
        assert_eq!(d.dim(-2), 0);
    }

    #[test]
    fn double_dual_preserves_dims_and_cohomology() {
        let c = sphere((0, 3), true, true);
        let dd = c.dualize().dualize();
        assert_eq!(dd.window(), c.window());
        assert_eq!(dd.dims(), c.dims());
        assert_eq!(dd.cohomology(false).unwrap().dims, c.cohomology(false).unwrap().dims);
    }

    #[test]
    fn dualize_flips_cohomology_degrees() {
        let c = sphere((0, 3), true, true);
        let h = c.cohomology(false).unwrap();
        let hd = c.dualize().cohomology(false).unwrap();
        for (&i, &dim) in &h.dims {
            assert_eq!(hd.dim(-i - 1), Some(dim), "degree {i}");
        }
    }

    #[test]
    fn glue_by_zero_is_direct_sum() {
        // two-term contractible halves glued by zero: cohomology of the sum
        let plus = {
            let basis = [(0, vec!["p0".into()]), (1, vec!["p1".into()])].into();
            let diff = [(0, SparseMatrix::from_rows(&[&[1]]))].into();
            GradedComplex::new((0, 1), basis, diff, true, true).unwrap()
        };
        let minus = {
            let basis = [(-2, vec!["m2".into()]), (-1, vec!["m1".into()])].into();
            let diff = [(-2, SparseMatrix::from_rows(&[&[1]]))].into();
            GradedComplex::new((-2, -1), basis, diff, true, true).unwrap()
        };
        let glued = glue(&minus, &plus, &SparseMatrix::zero(1, 1)).unwrap();
        assert!(glued.check_d_squared().pass());
        let h = glued.cohomology(false).unwrap();
        // both halves are contractible two-term complexes, so nothing survives
        assert!(h.is_acyclic());
    }

    #[test]
    fn glue_rejects_bad_composite() {
        // d^0 . g != 0 must be rejected
        let plus = {
            let basis = [(0, vec!["p0".into()]), (1, vec!["p1".into()])].into();
            let diff = [(0, SparseMatrix::from_rows(&[&[1]]))].into();
            GradedComplex::new((0, 1), basis, diff, true, true).unwrap()
        };
        let minus = {
            let basis = [(-1, vec!["m1".into()])].into();
            GradedComplex::new((-1, -1), basis, BTreeMap::new(), true, true).unwrap()
        };
        let g = SparseMatrix::from_rows(&[&[1]]);
        assert!(matches!(glue(&minus, &plus, &g), Err(Error::Gluing(_))));
    }

    fn unit_complex() -> GradedComplex {
        let basis = [(0, vec!["u".into()])].into();
        GradedComplex::new((0, 0), basis, BTreeMap::new(), true, true).unwrap()
    }

    #[test]
    fn tensor_with_unit_preserves_dims_and_diff() {
        let c = sphere((0, 2), true, true);
        let t = tensor(&c, &unit_complex());
        assert_eq!(t.dims(), c.dims());
        for i in 0..2 {
            assert_eq!(t.diff_at(i).unwrap(), c.diff_at(i).unwrap());
        }
    }

    #[test]
    fn tensor_of_contractibles_is_acyclic() {
        let two_term = {
            let basis = [(0, vec!["a".into()]), (1, vec!["b".into()])].into();
            let diff = [(0, SparseMatrix::from_rows(&[&[1]]))].into();
            GradedComplex::new((0, 1), basis, diff, true, true).unwrap()
        };
        let t = tensor(&two_term, &two_term);
        assert!(t.check_d_squared().pass());
        assert!(t.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn shift_zero_is_identity() {
        let c = sphere((0, 3), true, true);
        assert_eq!(c.shift(0), c);
    }

    #[test]
    fn shift_round_trip() {
        let c = sphere((0, 3), true, true);
        assert_eq!(c.shift(1).shift(-1), c);
    }

    #[test]
    fn shift_dimension_sequence_overlap() {
        // every term of the doubly-infinite complex is 2-dimensional, so the
        // dimension sequence is invariant under degree shift
        let c = sphere((-8, 8), false, false);
        let s = c.shift(1);
        for i in -7..=7 {
            assert_eq!(c.dim(i), s.dim(i));
        }
    }

    #[test]
    fn identity_chain_map_is_iso() {
        let c = sphere((0, 3), true, true);
        let maps = (0..=3).map(|i| (i, SparseMatrix::identity(c.dim(i)))).collect();
        let f = ChainMap::new(c.clone(), c, maps).unwrap();
        let report = f.verify();
        assert!(report.commutes());
        assert!(report.is_iso());
    }

    #[test]
    fn zero_chain_map_commutes_but_is_not_iso() {
        let c = sphere((0, 3), true, true);
        let f = ChainMap::new(c.clone(), c, BTreeMap::new()).unwrap();
        let report = f.verify();
        assert!(report.commutes());
        assert!(!report.is_iso());
    }

    #[test]
    fn chain_map_window_mismatch_is_structural_error() {
        let c = sphere((0, 3), true, true);
        let d = sphere((0, 2), true, true);
        assert!(matches!(ChainMap::new(c, d, BTreeMap::new()), Err(Error::Window(_))));
    }

    /// Random three-term complex 0 -> Q^c -> Q^r -> Q^k with d^2 = 0 by
    /// construction (second map built from the left kernel of the first).
    fn random_complex() -> impl Strategy<Value = GradedComplex> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..3, r * c).prop_map(move |vals| {
                let mut m = SparseMatrix::zero(r, c);
                for (i, v) in vals.into_iter().enumerate() {
                    if v != 0 {
                        m.set(i / c, i % c, rat(v));
                    }
                }
                let left_kernel = m.transpose().kernel_basis();
                let n = SparseMatrix::from_columns(r, &left_kernel).transpose();
                let basis: BTreeMap<i64, Vec<String>> = [
                    (0, (0..c).map(|i| format!("a{i}")).collect()),
                    (1, (0..r).map(|i| format!("b{i}")).collect()),
                    (2, (0..left_kernel.len()).map(|i| format!("c{i}")).collect()),
                ]
                .into();
                let diff = [(0, m), (1, n)].into();
                GradedComplex::new((0, 2), basis, diff, true, true).unwrap()
            })
        })
    }

    /// Independent dense expansion of the tensor differential, used as an
    /// oracle against the sparse implementation.
    fn dense_tensor_diff(
        c: &GradedComplex,
        d: &GradedComplex,
        n: i64,
    ) -> Vec<Vec<Rational>> {
        let pairs = |deg: i64| -> Vec<(i64, usize, usize)> {
            let mut out = Vec::new();
            for p in c.window().0..=c.window().1 {
                let q = deg - p;
                if q < d.window().0 || q > d.window().1 {
                    continue;
                }
                for i in 0..c.dim(p) {
                    for j in 0..d.dim(q) {
                        out.push((p, i, j));
                    }
                }
            }
            out
        };
        let src = pairs(n);
        let tgt = pairs(n + 1);
        let mut out = vec![vec![Rational::zero(); src.len()]; tgt.len()];
        for (col, &(p, i, j)) in src.iter().enumerate() {
            let q = n - p;
            for (row, &(tp, ti, tj)) in tgt.iter().enumerate() {
                let mut v = Rational::zero();
                if tp == p + 1 && tj == j {
                    if let Some(dc) = c.diff_at(p) {
                        v += dc.get(ti, i);
                    }
                }
                if tp == p && ti == i {
                    if let Some(dd) = d.diff_at(q) {
                        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                        v += dd.get(tj, j) * rat(sign);
                    }
                }
                out[row][col] = v;
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn tensor_matches_dense_oracle_and_squares_to_zero(
            c in random_complex(),
            d in random_complex(),
        ) {
            let t = tensor(&c, &d);
            prop_assert!(t.check_d_squared().pass());
            // per-degree dimension is the convolution of factor dimensions
            for n in t.window().0..=t.window().1 {
                let expected: usize = (c.window().0..=c.window().1)
                    .map(|p| c.dim(p) * d.dim(n - p))
                    .sum();
                prop_assert_eq!(t.dim(n), expected);
            }
            for n in t.window().0..t.window().1 {
                let oracle = dense_tensor_diff(&c, &d, n);
                let m = t.diff_at(n).unwrap();
                prop_assert_eq!(m.rows(), oracle.len());
                for (r, row) in oracle.iter().enumerate() {
                    for (cc, v) in row.iter().enumerate() {
                        prop_assert_eq!(&m.get(r, cc), v);
                    }
                }
            }
        }
    }
}

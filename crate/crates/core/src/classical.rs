//! Constructors for the finite-dimensional complexes: sphere complexes with
//! two cells per dimension, the shifted Koszul complex and its dual, the
//! glued Janus complex, the localized Koszul complexes, and the explicit
//! chain isomorphisms relating all of them.

use std::collections::BTreeMap;

use crate::complex::{glue, ChainMap, GradedComplex};
use crate::linalg::SparseMatrix;
use crate::Error;

/// Differential of the sphere complexes: d c_i^± = c_{i-1}^+ - c_{i-1}^-,
/// in the basis order [plus-cell, minus-cell].
pub fn matrix_a() -> SparseMatrix {
    SparseMatrix::from_rows(&[&[1, -1], &[1, -1]])
}

/// Differential of the shifted Koszul complex in the basis order
/// [e⊗x^i, ξe⊗x^i].
pub fn matrix_b() -> SparseMatrix {
    SparseMatrix::from_rows(&[&[0, 0], &[1, 0]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereSide {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Debug)]
pub enum SphereSpec {
    /// The n-sphere: degrees exactly [0, n], both edges closed.
    Finite { n: u32 },
    /// A window into one of the semi-infinite or doubly-infinite complexes.
    Infinite { side: SphereSide, window: (i64, i64) },
}

fn sphere_cells(window: (i64, i64)) -> BTreeMap<i64, Vec<String>> {
    (window.0..=window.1).map(|i| (i, vec![format!("c{i}+"), format!("c{i}-")])).collect()
}

fn constant_diff(window: (i64, i64), m: &SparseMatrix) -> BTreeMap<i64, SparseMatrix> {
    (window.0..window.1).map(|i| (i, m.clone())).collect()
}

pub fn sphere_complex(spec: &SphereSpec) -> Result<GradedComplex, Error> {
    let (window, left_closed, right_closed) = match *spec {
        SphereSpec::Finite { n } => ((0, n as i64), true, true),
        SphereSpec::Infinite { side, window } => {
            let (a, b) = window;
            if a > b {
                return Err(Error::InvalidArgument(format!("empty window [{a}, {b}]")));
            }
            match side {
                SphereSide::Plus if a != 0 => {
                    return Err(Error::InvalidArgument(
                        "plus-side window must start at degree 0".into(),
                    ))
                }
                SphereSide::Minus if b != 0 => {
                    return Err(Error::InvalidArgument(
                        "minus-side window must end at degree 0".into(),
                    ))
                }
                _ => {}
            }
            match side {
                SphereSide::Plus => (window, true, false),
                SphereSide::Minus => (window, false, true),
                SphereSide::Both => (window, false, false),
            }
        }
    };
    GradedComplex::new(window, sphere_cells(window), constant_diff(window, &matrix_a()), left_closed, right_closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoszulVariant {
    DeltaPlus,
    DeltaMinus,
    Janus,
    LocPoly,
    LocLaurent,
}

#[derive(Clone, Debug)]
pub struct KoszulSpec {
    pub variant: KoszulVariant,
    pub window: (i64, i64),
}

fn delta_plus_basis(window: (i64, i64)) -> BTreeMap<i64, Vec<String>> {
    (window.0..=window.1).map(|i| (i, vec![format!("e⊗x^{i}"), format!("ξe⊗x^{i}")])).collect()
}

fn loc_basis(window: (i64, i64)) -> BTreeMap<i64, Vec<String>> {
    (window.0..=window.1).map(|i| (i, vec![format!("1⊗x^{i}"), format!("ξ⊗x^{i}")])).collect()
}

/// Seam differential of the Janus complex: kills the class of the image
/// while mapping the surviving dual generator onto the degree-0 cocycle.
fn gluing_map() -> SparseMatrix {
    SparseMatrix::from_rows(&[&[0, 0], &[0, 1]])
}

pub fn koszul_complex(spec: &KoszulSpec) -> Result<GradedComplex, Error> {
    let (a, b) = spec.window;
    if a > b {
        return Err(Error::InvalidArgument(format!("empty window [{a}, {b}]")));
    }
    match spec.variant {
        KoszulVariant::DeltaPlus => {
            if a != 0 {
                return Err(Error::InvalidArgument("delta_plus window must start at 0".into()));
            }
            GradedComplex::new(
                spec.window,
                delta_plus_basis(spec.window),
                constant_diff(spec.window, &matrix_b()),
                true,
                false,
            )
        }
        KoszulVariant::DeltaMinus => {
            if b != -1 {
                return Err(Error::InvalidArgument("delta_minus window must end at -1".into()));
            }
            let plus = koszul_complex(&KoszulSpec {
                variant: KoszulVariant::DeltaPlus,
                window: (0, -a - 1),
            })?;
            Ok(plus.dualize())
        }
        KoszulVariant::Janus => {
            if a > -1 || b < 0 {
                return Err(Error::InvalidArgument("janus window must straddle 0".into()));
            }
            let minus = koszul_complex(&KoszulSpec {
                variant: KoszulVariant::DeltaMinus,
                window: (a, -1),
            })?;
            let plus = koszul_complex(&KoszulSpec {
                variant: KoszulVariant::DeltaPlus,
                window: (0, b),
            })?;
            glue(&minus, &plus, &gluing_map())
        }
        KoszulVariant::LocPoly => {
            if a != 0 {
                return Err(Error::InvalidArgument("loc_poly window must start at 0".into()));
            }
            GradedComplex::new(
                spec.window,
                loc_basis(spec.window),
                constant_diff(spec.window, &matrix_b().transpose()),
                true,
                false,
            )
        }
        KoszulVariant::LocLaurent => {
            if a > -1 || b < 0 {
                return Err(Error::InvalidArgument("loc_laurent window must straddle 0".into()));
            }
            GradedComplex::new(
                spec.window,
                loc_basis(spec.window),
                constant_diff(spec.window, &matrix_b().transpose()),
                false,
                false,
            )
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizedIso {
    /// K(l[x], x) -> Δ₊ on a window [0, b].
    PolyToDeltaPlus,
    /// K(l[x, x⁻¹], x) -> Δ on a window straddling 0.
    LaurentToJanus,
}

/// The explicit chain isomorphism between the localized Koszul realization
/// and the Δ realization: 1⊗x^n ↦ ξe⊗x^n, ξ⊗x^n ↦ e⊗x^n on non-negative
/// degrees, and the dual-basis identification on negative degrees.
pub fn iso_localized(variant: LocalizedIso, window: (i64, i64)) -> Result<ChainMap, Error> {
    let swap = SparseMatrix::from_rows(&[&[0, 1], &[1, 0]]);
    let (source, target) = match variant {
        LocalizedIso::PolyToDeltaPlus => (
            koszul_complex(&KoszulSpec { variant: KoszulVariant::LocPoly, window })?,
            koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaPlus, window })?,
        ),
        LocalizedIso::LaurentToJanus => (
            koszul_complex(&KoszulSpec { variant: KoszulVariant::LocLaurent, window })?,
            koszul_complex(&KoszulSpec { variant: KoszulVariant::Janus, window })?,
        ),
    };
    let maps = (window.0..=window.1)
        .map(|i| {
            let m = if i >= 0 { swap.clone() } else { SparseMatrix::identity(2) };
            (i, m)
        })
        .collect();
    ChainMap::new(source, target, maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisChangeVariant {
    Plus,
    Minus,
    Janus,
}

/// The base change conjugating B into A, realizing Δ ≅ 𝒞 degreewise. On
/// non-negative degrees the matrix has columns α = (1,0)ᵀ, β = (1,1)ᵀ; on
/// negative (dual) degrees a single different invertible matrix works for
/// every degree, including the seam square against the gluing map.
pub fn sphere_koszul_basis_change(
    variant: BasisChangeVariant,
    window: (i64, i64),
) -> Result<ChainMap, Error> {
    let p = SparseMatrix::from_rows(&[&[1, 1], &[0, 1]]);
    let q = SparseMatrix::from_rows(&[&[1, 1], &[1, 0]]);
    let (koszul_variant, side) = match variant {
        BasisChangeVariant::Plus => (KoszulVariant::DeltaPlus, SphereSide::Plus),
        BasisChangeVariant::Minus => (KoszulVariant::DeltaMinus, SphereSide::Both),
        BasisChangeVariant::Janus => (KoszulVariant::Janus, SphereSide::Both),
    };
    let source = koszul_complex(&KoszulSpec { variant: koszul_variant, window })?;
    let target = sphere_complex(&SphereSpec::Infinite { side, window })?;
    let maps = (window.0..=window.1)
        .map(|i| (i, if i >= 0 { p.clone() } else { q.clone() }))
        .collect();
    ChainMap::new(source, target, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn a_and_b_square_to_zero() {
        assert!(matrix_a().mul(&matrix_a()).is_zero());
        assert!(matrix_b().mul(&matrix_b()).is_zero());
    }

    #[test]
    fn a_maps_alpha_to_beta_and_beta_to_zero() {
        let alpha = vec![rat(1), rat(0)];
        let beta = vec![rat(1), rat(1)];
        assert_eq!(matrix_a().apply(&alpha), beta);
        assert!(matrix_a().apply(&beta).iter().all(num::Zero::is_zero));
    }

    #[test]
    fn circle_cohomology() {
        let c = sphere_complex(&SphereSpec::Finite { n: 1 }).unwrap();
        let h = c.cohomology(false).unwrap();
        assert_eq!(h.dim(0), Some(1));
        assert_eq!(h.dim(1), Some(1));
    }

    #[test]
    fn five_sphere_cohomology() {
        let c = sphere_complex(&SphereSpec::Finite { n: 5 }).unwrap();
        let h = c.cohomology(false).unwrap();
        assert_eq!(h.dim(0), Some(1));
        assert_eq!(h.dim(5), Some(1));
        for i in 1..5 {
            assert_eq!(h.dim(i), Some(0));
        }
    }

    #[test]
    fn doubly_infinite_sphere_window_is_acyclic() {
        let c = sphere_complex(&SphereSpec::Infinite {
            side: SphereSide::Both,
            window: (-6, 6),
        })
        .unwrap();
        assert!(c.cohomology(false).unwrap().is_acyclic());
    }

    #[test]
    fn every_term_is_two_dimensional() {
        let specs = [
            koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaPlus, window: (0, 6) }),
            koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaMinus, window: (-6, -1) }),
            koszul_complex(&KoszulSpec { variant: KoszulVariant::Janus, window: (-6, 6) }),
            koszul_complex(&KoszulSpec { variant: KoszulVariant::LocPoly, window: (0, 6) }),
            koszul_complex(&KoszulSpec { variant: KoszulVariant::LocLaurent, window: (-6, 6) }),
        ];
        for c in specs {
            let c = c.unwrap();
            for i in c.window().0..=c.window().1 {
                assert_eq!(c.dim(i), 2);
            }
        }
    }

    #[test]
    fn delta_plus_cohomology() {
        let c = koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaPlus, window: (0, 8) })
            .unwrap();
        let h = c.cohomology(true).unwrap();
        assert_eq!(h.dim(0), Some(1));
        for i in 1..=6 {
            assert_eq!(h.dim(i), Some(0));
        }
        assert_eq!(h.dim(7), None, "degree adjacent to the truncation cut is untrusted");
    }

    #[test]
    fn delta_minus_cohomology() {
        let c = koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaMinus, window: (-8, -1) })
            .unwrap();
        let h = c.cohomology(false).unwrap();
        assert_eq!(h.dim(-1), Some(1));
        for i in -6..=-2 {
            assert_eq!(h.dim(i), Some(0));
        }
    }

    #[test]
    fn janus_and_laurent_are_acyclic() {
        for variant in [KoszulVariant::Janus, KoszulVariant::LocLaurent] {
            let c = koszul_complex(&KoszulSpec { variant, window: (-8, 8) }).unwrap();
            assert!(c.check_d_squared().pass());
            assert!(c.cohomology(false).unwrap().is_acyclic(), "{variant:?}");
        }
    }

    #[test]
    fn localized_isos_pass_with_certificates() {
        let f = iso_localized(LocalizedIso::PolyToDeltaPlus, (0, 8)).unwrap();
        assert!(f.verify().is_iso());
        let g = iso_localized(LocalizedIso::LaurentToJanus, (-8, 8)).unwrap();
        assert!(g.verify().is_iso());
    }

    #[test]
    fn basis_changes_pass_with_certificates() {
        for (variant, window) in [
            (BasisChangeVariant::Plus, (0, 8)),
            (BasisChangeVariant::Minus, (-8, -1)),
            (BasisChangeVariant::Janus, (-8, 8)),
        ] {
            let f = sphere_koszul_basis_change(variant, window).unwrap();
            assert!(f.verify().is_iso(), "{variant:?}");
        }
    }

    #[test]
    fn basis_change_implies_equal_cohomology() {
        let f = sphere_koszul_basis_change(BasisChangeVariant::Plus, (0, 8)).unwrap();
        let hs = f.source().cohomology(false).unwrap();
        let ht = f.target().cohomology(false).unwrap();
        assert_eq!(hs.dims, ht.dims);
    }

    #[test]
    fn invalid_windows_are_rejected() {
        assert!(koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaPlus, window: (1, 4) })
            .is_err());
        assert!(
            koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaMinus, window: (-4, 0) })
                .is_err()
        );
        assert!(koszul_complex(&KoszulSpec { variant: KoszulVariant::Janus, window: (1, 4) })
            .is_err());
    }
}

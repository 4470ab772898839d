//! Named verification suites over all constructions, run concurrently and
//! reported in a fixed order. Shared by the CLI and the integration tests.

use rayon::prelude::*;

use crate::chiral::{
    build_chiral_janus, build_weight_complex, tensor_decomposition_check, verify_homotopy,
    weight_zero_iso, ChiralKind, ChiralSpec,
};
use crate::classical::{
    iso_localized, koszul_complex, sphere_complex, sphere_koszul_basis_change, BasisChangeVariant,
    KoszulSpec, KoszulVariant, LocalizedIso, SphereSide, SphereSpec,
};
use crate::multivar::{
    build_multivar_complex, build_multivar_janus, local_cohomology_check, power_koszul_zero,
    MultivarVariant,
};

pub const WORKERS_ENV: &str = "KOSZUL_WORKERS";

/// Build the global thread pool from the worker-count environment variable;
/// the default is the available parallelism. A no-op once a pool exists.
pub fn configure_workers() {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Spheres,
    Koszul,
    Chiral,
    Multivar,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.results.iter().find(|r| !r.pass)
    }
}

/// Coefficients 0..=max_n of the weight generating function
/// `prod_{n >= 1} (1 + q^n)^{2v} / (1 - q^n)^{2v}`, the dimension series
/// of the finite weight spaces without zero modes.
pub fn vn_dimension_series(num_vars: u32, max_n: usize) -> Vec<u64> {
    let mut coeffs: Vec<u64> = vec![0; max_n + 1];
    coeffs[0] = 1;
    let reps = 2 * num_vars as usize;
    for n in 1..=max_n {
        for _ in 0..reps {
            // multiply by (1 + q^n)
            for k in (n..=max_n).rev() {
                coeffs[k] += coeffs[k - n];
            }
            // multiply by 1/(1 - q^n) = 1 + q^n + q^{2n} + ...
            for k in n..=max_n {
                coeffs[k] += coeffs[k - n];
            }
        }
    }
    coeffs
}

type Check = (String, Box<dyn Fn() -> Result<String, String> + Send + Sync>);

fn check<F>(name: &str, f: F) -> Check
where
    F: Fn() -> Result<String, String> + Send + Sync + 'static,
{
    (name.to_string(), Box::new(f))
}

fn expect(cond: bool, ok: &str, fail: String) -> Result<String, String> {
    if cond {
        Ok(ok.to_string())
    } else {
        Err(fail)
    }
}

fn sphere_checks(max_n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(check(&format!("spheres/finite-{n}"), move || {
            let c = sphere_complex(&SphereSpec::Finite { n }).map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            let ok = h.total() == 2 && h.dim(0) == Some(1) && h.dim(n as i64) == Some(1);
            expect(ok, "H = {0: 1, n: 1}", format!("unexpected cohomology {:?}", h.dims))
        }));
    }
    out.push(check("spheres/doubly-infinite-acyclic", || {
        let c = sphere_complex(&SphereSpec::Infinite { side: SphereSide::Both, window: (-8, 8) })
            .map_err(|e| e.to_string())?;
        let h = c.cohomology(false).map_err(|e| e.to_string())?;
        expect(h.is_acyclic(), "acyclic on trusted degrees", format!("{:?}", h.dims))
    }));
    out
}

fn koszul_checks() -> Vec<Check> {
    vec![
        check("koszul/delta-plus", || {
            let c = koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaPlus, window: (0, 8) })
                .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(
                h.total() == 1 && h.dim(0) == Some(1),
                "H = {0: 1}",
                format!("{:?}", h.dims),
            )
        }),
        check("koszul/delta-minus", || {
            let c =
                koszul_complex(&KoszulSpec { variant: KoszulVariant::DeltaMinus, window: (-8, -1) })
                    .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(
                h.total() == 1 && h.dim(-1) == Some(1),
                "H = {-1: 1}",
                format!("{:?}", h.dims),
            )
        }),
        check("koszul/janus-acyclic", || {
            let c = koszul_complex(&KoszulSpec { variant: KoszulVariant::Janus, window: (-8, 8) })
                .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(h.is_acyclic(), "acyclic on trusted degrees", format!("{:?}", h.dims))
        }),
        check("koszul/laurent-acyclic", || {
            let c =
                koszul_complex(&KoszulSpec { variant: KoszulVariant::LocLaurent, window: (-8, 8) })
                    .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(h.is_acyclic(), "acyclic on trusted degrees", format!("{:?}", h.dims))
        }),
        check("koszul/iso-poly", || {
            let f = iso_localized(LocalizedIso::PolyToDeltaPlus, (0, 8)).map_err(|e| e.to_string())?;
            expect(f.verify().is_iso(), "chain isomorphism certified", "iso failed".into())
        }),
        check("koszul/iso-laurent", || {
            let f = iso_localized(LocalizedIso::LaurentToJanus, (-8, 8)).map_err(|e| e.to_string())?;
            expect(f.verify().is_iso(), "chain isomorphism certified", "iso failed".into())
        }),
        check("koszul/basis-change", || {
            for (variant, window) in [
                (BasisChangeVariant::Plus, (0, 8)),
                (BasisChangeVariant::Minus, (-8, -1)),
                (BasisChangeVariant::Janus, (-8, 8)),
            ] {
                let f = sphere_koszul_basis_change(variant, window).map_err(|e| e.to_string())?;
                if !f.verify().is_iso() {
                    return Err(format!("basis change failed for {variant:?}"));
                }
            }
            Ok("all three basis changes certified".into())
        }),
    ]
}

fn chiral_checks(max_weight: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 0..=max_weight {
        out.push(check(&format!("chiral/plain-weight-{n}"), move || {
            let c = build_weight_complex(
                &ChiralSpec::new(ChiralKind::Plain, n, 6, 1).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            let ok = if n == 0 { h.total() == 1 && h.dim(0) == Some(1) } else { h.is_acyclic() };
            expect(ok, "concentrated at weight 0, degree 0", format!("{:?}", h.dims))
        }));
        out.push(check(&format!("chiral/homotopy-weight-{n}"), move || {
            let cert = verify_homotopy(
                &ChiralSpec::new(ChiralKind::VnOnly, n, 0, 1).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            expect(
                cert.pass(),
                "d g1 + g1 d = N id",
                format!("residual at {:?}", cert.first_failure),
            )
        }));
        out.push(check(&format!("chiral/janus-weight-{n}"), move || {
            let c = build_chiral_janus(n, 6, 1).map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(h.is_acyclic(), "acyclic on trusted degrees", format!("{:?}", h.dims))
        }));
    }
    out.push(check("chiral/quotient-weight-0", || {
        let c = build_weight_complex(
            &ChiralSpec::new(ChiralKind::Quotient, 0, 8, 1).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let h = c.cohomology(true).map_err(|e| e.to_string())?;
        let ok = h.total() == 1
            && h.dim(-1) == Some(1)
            && h.reps[&-1][0].len() == 1
            && h.reps[&-1][0][0].1 == "x[0]^-1*xi[0]";
        expect(ok, "H = {-1: 1} spanned by x[0]^-1*xi[0]", format!("{:?}", h.dims))
    }));
    out.push(check("chiral/weight-zero-iso", || {
        let f = weight_zero_iso(8).map_err(|e| e.to_string())?;
        expect(f.verify().is_iso(), "weight-0 component is the Koszul complex", "iso failed".into())
    }));
    for n in 1..=max_weight.min(4) {
        out.push(check(&format!("chiral/tensor-decomposition-{n}"), move || {
            let r = tensor_decomposition_check(n, 3).map_err(|e| e.to_string())?;
            expect(r.pass(), "V_N ⊗ weight-0 matches the direct build", format!("{r:?}"))
        }));
    }
    out.push(check("chiral/vn-dimension-series", move || {
        let max_n = max_weight.max(2) as usize;
        let series = vn_dimension_series(1, max_n);
        for n in 0..=max_n {
            let c = build_weight_complex(
                &ChiralSpec::new(ChiralKind::VnOnly, n as i64, 0, 1).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let total: usize = (c.window().0..=c.window().1).map(|i| c.dim(i)).sum();
            if total as u64 != series[n] {
                return Err(format!("dim V_{n} = {total}, series gives {}", series[n]));
            }
        }
        Ok("enumerated dimensions match the generating function".into())
    }));
    out
}

fn multivar_checks(max_weight: i64) -> Vec<Check> {
    let mut out = vec![
        check("multivar/plain-2var", || {
            let c = build_multivar_complex(MultivarVariant::Plain, 0, 4, 2)
                .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(
                h.total() == 1 && h.dim(0) == Some(1),
                "H = {0: 1}",
                format!("{:?}", h.dims),
            )
        }),
        check("multivar/dual-2var", || {
            let c = build_multivar_complex(MultivarVariant::Dual, 0, 4, 2)
                .map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(
                h.total() == 1 && h.dim(-2) == Some(1),
                "H = {-2: 1}",
                format!("{:?}", h.dims),
            )
        }),
        check("multivar/local-cohomology-1var", || {
            let r = local_cohomology_check(1, 3, 0, 3).map_err(|e| e.to_string())?;
            expect(r.pass(), "concentration, injectivity and dual count", format!("{r:?}"))
        }),
        check("multivar/local-cohomology-2var", || {
            let r = local_cohomology_check(2, 2, 0, 2).map_err(|e| e.to_string())?;
            expect(r.pass(), "concentration, injectivity and dual count", format!("{r:?}"))
        }),
        check("multivar/zero-sequence-control", || {
            let c = power_koszul_zero(1, 0, 3).map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(
                h.dim(0).unwrap_or(0) > 0,
                "non-regular sequence correctly fails concentration",
                "zero sequence looked regular".into(),
            )
        }),
    ];
    for n in 0..=max_weight.min(2) {
        out.push(check(&format!("multivar/janus-2var-weight-{n}"), move || {
            let c = build_multivar_janus(n, 3, 2).map_err(|e| e.to_string())?;
            let h = c.cohomology(false).map_err(|e| e.to_string())?;
            expect(h.is_acyclic(), "acyclic on trusted degrees", format!("{:?}", h.dims))
        }));
    }
    out
}

pub fn run_suite(suite: Suite, max_weight: i64) -> SuiteReport {
    run_suite_with(suite, max_weight, 5)
}

pub fn run_suite_with(suite: Suite, max_weight: i64, max_n: u32) -> SuiteReport {
    let mut checks: Vec<Check> = Vec::new();
    if matches!(suite, Suite::All | Suite::Spheres) {
        checks.extend(sphere_checks(max_n));
    }
    if matches!(suite, Suite::All | Suite::Koszul) {
        checks.extend(koszul_checks());
    }
    if matches!(suite, Suite::All | Suite::Chiral) {
        checks.extend(chiral_checks(max_weight));
    }
    if matches!(suite, Suite::All | Suite::Multivar) {
        checks.extend(multivar_checks(max_weight));
    }
    let results: Vec<CheckResult> = checks
        .par_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CheckResult { name: name.clone(), pass: true, detail },
            Err(detail) => CheckResult { name: name.clone(), pass: false, detail },
        })
        .collect();
    SuiteReport { results }
}

//! The supercommutative polynomial ring on the mode generators of a free
//! field family: per variable `i`, even generators `x[i,-n]` (n ≥ 0) and
//! `dx[i,-n]` (n ≥ 1), odd generators `xi[i,-n]` (n ≥ 0) and `dxi[i,-n]`
//! (n ≥ 1). Indices are weight-indexed: the conformal weight of any
//! generator with index `-n` is `n`.
//!
//! Monomials carry exact rational coefficients and a canonical factor
//! order (variable, kind, weight); the Koszul sign of a product is the
//! parity of the transpositions of odd factors needed to merge into that
//! order. The zero-mode `x` generator may carry negative exponents when
//! the ambient ring is localized at that variable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::{One, Signed, Zero};

use crate::linalg::{rat, Rational};
use crate::Error;

/// Kind order fixes the canonical monomial order: x < dx < xi < dxi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    X,
    Dx,
    Xi,
    Dxi,
}

impl GenKind {
    pub fn is_odd(self) -> bool {
        matches!(self, GenKind::Xi | GenKind::Dxi)
    }

    fn tag(self) -> &'static str {
        match self {
            GenKind::X => "x",
            GenKind::Dx => "dx",
            GenKind::Xi => "xi",
            GenKind::Dxi => "dxi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub var: u32,
    pub kind: GenKind,
    pub weight: u32,
}

impl Generator {
    pub fn new(var: u32, kind: GenKind, weight: u32) -> Result<Self, Error> {
        if matches!(kind, GenKind::Dx | GenKind::Dxi) && weight == 0 {
            return Err(Error::Domain(format!(
                "{} generators exist only at weight >= 1",
                kind.tag()
            )));
        }
        Ok(Generator { var, kind, weight })
    }

    pub fn is_odd(&self) -> bool {
        self.kind.is_odd()
    }

    /// Contribution of one power of this generator to the cohomological
    /// degree.
    pub fn degree_contribution(&self) -> i64 {
        match self.kind {
            GenKind::X => 1,
            GenKind::Dx => -1,
            GenKind::Xi | GenKind::Dxi => 0,
        }
    }

    fn is_zero_mode_x(&self) -> bool {
        self.kind == GenKind::X && self.weight == 0
    }
}

/// Which variables have their zero-mode x generator inverted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Localization {
    localized: BTreeSet<u32>,
}

impl Localization {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn all_vars(num_vars: u32) -> Self {
        Localization { localized: (0..num_vars).collect() }
    }

    pub fn allows(&self, var: u32) -> bool {
        self.localized.contains(&var)
    }
}

/// Exponent vector in canonical generator order; no zero exponents stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(pub BTreeMap<Generator, i64>);

impl Exponents {
    pub fn odd_parity(&self) -> bool {
        self.0.keys().filter(|g| g.is_odd()).count() % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub factors: Exponents,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { coeff: Rational::one(), factors: Exponents::default() }
    }

    pub fn zero() -> Self {
        Monomial { coeff: Rational::zero(), factors: Exponents::default() }
    }

    pub fn from_generator(g: Generator) -> Self {
        Monomial { coeff: Rational::one(), factors: Exponents([(g, 1)].into()) }
    }

    pub fn from_factors(coeff: Rational, factors: &[(Generator, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for &(g, e) in factors {
            if e != 0 {
                *map.entry(g).or_insert(0) += e;
            }
        }
        map.retain(|_, e| *e != 0);
        // a repeated odd generator squares to zero
        if coeff.is_zero() || map.iter().any(|(g, e)| g.is_odd() && *e != 1) {
            return Monomial::zero();
        }
        Monomial { coeff, factors: Exponents(map) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scaled(&self, s: &Rational) -> Monomial {
        let c = &self.coeff * s;
        if c.is_zero() {
            Monomial::zero()
        } else {
            Monomial { coeff: c, factors: self.factors.clone() }
        }
    }

    /// (conformal weight, cohomological degree)
    pub fn gradings(&self) -> (i64, i64) {
        let mut weight = 0i64;
        let mut degree = 0i64;
        for (g, &e) in &self.factors.0 {
            weight += e * g.weight as i64;
            degree += e * g.degree_contribution();
        }
        (weight, degree)
    }

    /// Supercommutative product with the Koszul sign of merging into
    /// canonical order. Zero if a shared odd generator would square.
    pub fn mul(&self, other: &Monomial, loc: &Localization) -> Result<Monomial, Error> {
        if self.is_zero() || other.is_zero() {
            return Ok(Monomial::zero());
        }
        // odd square kills the product
        for g in other.factors.0.keys().filter(|g| g.is_odd()) {
            if self.factors.0.contains_key(g) {
                return Ok(Monomial::zero());
            }
        }
        // transposition count: odd factors of `other` moving past greater
        // odd factors of `self`
        let self_odd: Vec<&Generator> = self.factors.0.keys().filter(|g| g.is_odd()).collect();
        let mut transpositions = 0usize;
        for g in other.factors.0.keys().filter(|g| g.is_odd()) {
            transpositions += self_odd.iter().filter(|h| **h > g).count();
        }
        let mut factors = self.factors.0.clone();
        for (g, e) in &other.factors.0 {
            *factors.entry(*g).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        for (g, &e) in &factors {
            if e < 0 && !(g.is_zero_mode_x() && loc.allows(g.var)) {
                return Err(Error::Domain(format!(
                    "negative exponent on non-localized generator {}",
                    format_generator(g, u32::MAX)
                )));
            }
        }
        let mut coeff = &self.coeff * &other.coeff;
        if transpositions % 2 == 1 {
            coeff = -coeff;
        }
        Ok(Monomial { coeff, factors: Exponents(factors) })
    }
}

/// Polynomial = finite rational combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Polynomial::from(Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if m.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.factors).or_insert_with(Rational::zero);
        *entry += m.coeff;
        if entry.is_zero() {
            // re-fetch key: remove zero entries eagerly
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for m in other.monomials() {
            out.add_monomial(m);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, loc: &Localization) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero();
        for t in self.monomials() {
            out.add_monomial(t.mul(m, loc)?);
        }
        Ok(out)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(k, v)| Monomial { coeff: v.clone(), factors: k.clone() })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_monomial(m);
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Generator images of a super-derivation, either a closed-form rule over
/// the whole generator family or an explicit finite table.
#[derive(Clone)]
pub enum Images {
    Rule(fn(&Generator) -> Option<Polynomial>),
    Table(BTreeMap<Generator, Polynomial>),
}

#[derive(Clone)]
pub struct Derivation {
    pub parity: Parity,
    pub images: Images,
}

impl Derivation {
    pub fn image(&self, g: &Generator) -> Option<Polynomial> {
        match &self.images {
            Images::Rule(f) => f(g),
            Images::Table(t) => t.get(g).cloned(),
        }
    }

    /// Extend the generator images by the super-Leibniz rule
    /// `D(ab) = D(a) b + (-1)^{|D||a|} a D(b)`.
    pub fn apply(&self, p: &Polynomial, loc: &Localization) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero();
        for m in p.monomials() {
            out = out.add(&self.apply_monomial(&m, loc)?);
        }
        Ok(out)
    }

    fn apply_monomial(&self, m: &Monomial, loc: &Localization) -> Result<Polynomial, Error> {
        let factors: Vec<(Generator, i64)> = m.factors.0.iter().map(|(g, e)| (*g, *e)).collect();
        let mut out = Polynomial::zero();
        let mut prefix_odd = false;
        for (j, &(g, e)) in factors.iter().enumerate() {
            let img = self.image(&g).ok_or_else(|| {
                Error::Domain(format!(
                    "derivation has no image for generator {}",
                    format_generator(&g, u32::MAX)
                ))
            })?;
            // D(g^e): for odd g the exponent is 1; for even g the power rule
            // e g^{e-1} D(g) holds for any integer e
            let dpow: Polynomial = if g.is_odd() {
                img
            } else {
                let stub = Monomial::from_factors(rat(e), &[(g, e - 1)]);
                img.mul_monomial(&stub, loc)?
            };
            let prefix = Monomial::from_factors(Rational::one(), &factors[..j]);
            let suffix = Monomial::from_factors(Rational::one(), &factors[j + 1..]);
            let mut term = Polynomial::zero();
            for d in dpow.monomials() {
                let piece = prefix.mul(&d, loc)?.mul(&suffix, loc)?;
                term.add_monomial(piece);
            }
            if self.parity == Parity::Odd && prefix_odd {
                term = term.neg();
            }
            out = out.add(&term.scale(&m.coeff));
            if g.is_odd() {
                prefix_odd = !prefix_odd;
            }
        }
        Ok(out)
    }
}

/// Which zero-mode monomials accompany the positive-weight part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisVariant {
    /// x-zero-mode exponents in [0, zero_window].
    Plain,
    /// x-zero-mode exponents in [-zero_window, zero_window].
    Localized,
    /// Purely singular parts: every variable's x-zero-mode exponent in
    /// [-zero_window, -1].
    Quotient,
    /// No weight-0 generators at all: the finite space V_N.
    VnOnly,
}

/// All monomials of conformal weight exactly `weight`, bucketed by
/// cohomological degree, in a deterministic order.
pub fn enumerate_weight_basis(
    weight: i64,
    num_vars: u32,
    variant: BasisVariant,
    zero_window: i64,
) -> BTreeMap<i64, Vec<Monomial>> {
    enumerate_with_zero_ranges(weight, &variant_ranges(variant, num_vars, zero_window))
}

/// The per-variable zero-mode ranges realizing each basis variant.
pub fn variant_ranges(
    variant: BasisVariant,
    num_vars: u32,
    zero_window: i64,
) -> Vec<ZeroModeRange> {
    (0..num_vars)
        .map(|_| match variant {
            BasisVariant::Plain => ZeroModeRange { x_min: 0, x_max: zero_window, xi: zero_window > 0 },
            BasisVariant::Localized => {
                ZeroModeRange { x_min: -zero_window, x_max: zero_window, xi: zero_window > 0 }
            }
            BasisVariant::Quotient => ZeroModeRange { x_min: -zero_window, x_max: -1, xi: true },
            BasisVariant::VnOnly => ZeroModeRange { x_min: 0, x_max: 0, xi: false },
        })
        .collect()
}

/// Whether the zero-mode part of `m` lies inside the given ranges. Used to
/// tell legitimate truncation drop-offs from assembly bugs.
pub fn within_zero_ranges(m: &Monomial, ranges: &[ZeroModeRange]) -> bool {
    for (var, range) in ranges.iter().enumerate() {
        let var = var as u32;
        let x0 = Generator { var, kind: GenKind::X, weight: 0 };
        let xi0 = Generator { var, kind: GenKind::Xi, weight: 0 };
        let e = m.factors.0.get(&x0).copied().unwrap_or(0);
        if e < range.x_min || e > range.x_max {
            return false;
        }
        if !range.xi && m.factors.0.contains_key(&xi0) {
            return false;
        }
    }
    true
}

/// Per-variable range of the zero-mode x exponent, plus whether the odd
/// zero mode xi is available.
#[derive(Clone, Copy, Debug)]
pub struct ZeroModeRange {
    pub x_min: i64,
    pub x_max: i64,
    pub xi: bool,
}

pub fn enumerate_with_zero_ranges(
    weight: i64,
    ranges: &[ZeroModeRange],
) -> BTreeMap<i64, Vec<Monomial>> {
    assert!(weight >= 0, "conformal weight must be non-negative");
    let num_vars = ranges.len() as u32;
    let positive = positive_weight_monomials(weight, num_vars);
    let zero = zero_mode_monomials(ranges);
    let mut buckets: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
    for pos in &positive {
        for z in &zero {
            // merge the disjoint factor supports directly: basis monomials
            // are normalized to coefficient +1
            let factors: Vec<(Generator, i64)> = pos
                .factors
                .0
                .iter()
                .chain(z.factors.0.iter())
                .map(|(g, e)| (*g, *e))
                .collect();
            let m = Monomial::from_factors(Rational::one(), &factors);
            let (_, degree) = m.gradings();
            buckets.entry(degree).or_default().push(m);
        }
    }
    for bucket in buckets.values_mut() {
        bucket.sort_by(|a, b| a.factors.cmp(&b.factors));
    }
    buckets
}

/// Monomials of total weight `weight` in the strictly-positive-weight
/// generators (the finite space V_N when `weight = N`).
fn positive_weight_monomials(weight: i64, num_vars: u32) -> Vec<Monomial> {
    let mut gens = Vec::new();
    for var in 0..num_vars {
        for kind in [GenKind::X, GenKind::Dx, GenKind::Xi, GenKind::Dxi] {
            for w in 1..=weight.max(0) {
                gens.push(Generator { var, kind, weight: w as u32 });
            }
        }
    }
    gens.sort();
    let mut out = Vec::new();
    let mut acc: Vec<(Generator, i64)> = Vec::new();
    fn rec(
        gens: &[Generator],
        idx: usize,
        remaining: i64,
        acc: &mut Vec<(Generator, i64)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial::from_factors(Rational::one(), acc));
            return;
        }
        if idx == gens.len() {
            return;
        }
        let g = gens[idx];
        let w = g.weight as i64;
        let max_e = if g.is_odd() { 1.min(remaining / w) } else { remaining / w };
        for e in 0..=max_e {
            if e > 0 {
                acc.push((g, e));
            }
            rec(gens, idx + 1, remaining - e * w, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    rec(&gens, 0, weight, &mut acc, &mut out);
    out
}

fn zero_mode_monomials(ranges: &[ZeroModeRange]) -> Vec<Monomial> {
    let mut parts: Vec<Vec<(Generator, i64)>> = vec![Vec::new()];
    for (var, range) in ranges.iter().enumerate() {
        let var = var as u32;
        let x0 = Generator { var, kind: GenKind::X, weight: 0 };
        let xi0 = Generator { var, kind: GenKind::Xi, weight: 0 };
        let mut next = Vec::new();
        for base in &parts {
            for e in range.x_min..=range.x_max {
                for xi in [0, 1] {
                    if xi == 1 && !range.xi {
                        continue;
                    }
                    let mut factors = base.clone();
                    if e != 0 {
                        factors.push((x0, e));
                    }
                    if xi == 1 {
                        factors.push((xi0, 1));
                    }
                    next.push(factors);
                }
            }
        }
        parts = next;
    }
    parts
        .into_iter()
        .map(|factors| Monomial::from_factors(Rational::one(), &factors))
        .collect()
}

fn format_generator(g: &Generator, num_vars: u32) -> String {
    let idx = -(g.weight as i64);
    if num_vars > 1 {
        format!("{}[{},{}]", g.kind.tag(), g.var + 1, idx)
    } else {
        format!("{}[{}]", g.kind.tag(), idx)
    }
}

/// Canonical label: factors in canonical order, `kind[var,-n]` (the
/// variable tag dropped for a single variable), `^e` for exponents other
/// than 1, the empty product rendered as `1`, a leading `c * ` for
/// coefficients other than 1.
pub fn label(m: &Monomial, num_vars: u32) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (g, &e) in &m.factors.0 {
        let mut s = format_generator(g, num_vars);
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
        parts.push(s);
    }
    let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
    if m.coeff.is_one() {
        body
    } else if (-&m.coeff).is_one() {
        format!("-{body}")
    } else {
        debug_assert!(m.coeff.is_positive() || m.coeff.is_negative());
        format!("{} * {body}", m.coeff)
    }
}

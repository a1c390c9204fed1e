//! Homogeneous bivariate polynomials over F_p and the minimal syzygy
//! degree for a triple (X^a1, Y^a2, f) in K[X, Y].
//!
//! A polynomial of total degree D is stored as a sparse map from
//! X-exponent to nonzero coefficient; the Y-exponent is D minus the
//! X-exponent. The polynomials arising here are d-step sparse while their
//! degrees run into the thousands, so maps are the normal form.

use std::collections::{BTreeMap, BTreeSet};

use crate::ffield::FieldCtx;
use crate::linalg::MatFp;

/// Homogeneous polynomial in X and Y of a fixed total degree.
///
/// The zero polynomial is an empty coefficient map with an explicit degree
/// tag, so degree bookkeeping survives zero components of syzygy triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    degree: u64,
    coeffs: BTreeMap<u64, u64>, // x-exponent -> coefficient in (0, p)
}

impl HomogPoly {
    pub fn zero(degree: u64) -> Self {
        HomogPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `coeff * X^x_exp * Y^(degree - x_exp)`.
    pub fn monomial(degree: u64, x_exp: u64, coeff: u64, ctx: &FieldCtx) -> Self {
        assert!(x_exp <= degree, "X-exponent exceeds total degree");
        let mut coeffs = BTreeMap::new();
        let c = coeff % ctx.p();
        if c != 0 {
            coeffs.insert(x_exp, c);
        }
        HomogPoly { degree, coeffs }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::monomial(0, 0, 1, ctx)
    }

    pub fn x_power(a: u64, ctx: &FieldCtx) -> Self {
        Self::monomial(a, a, 1, ctx)
    }

    pub fn y_power(a: u64, ctx: &FieldCtx) -> Self {
        Self::monomial(a, 0, 1, ctx)
    }

    /// Accumulates `(x_exponent, coefficient)` terms modulo p, dropping
    /// zero sums.
    pub fn from_terms<I>(degree: u64, terms: I, ctx: &FieldCtx) -> Self
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut coeffs: BTreeMap<u64, u64> = BTreeMap::new();
        for (x, c) in terms {
            assert!(x <= degree, "X-exponent exceeds total degree");
            let c = c % ctx.p();
            if c == 0 {
                continue;
            }
            let entry = coeffs.entry(x).or_insert(0);
            *entry = ctx.add(*entry, c);
            if *entry == 0 {
                coeffs.remove(&x);
            }
        }
        HomogPoly { degree, coeffs }
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, x_exp: u64) -> u64 {
        self.coeffs.get(&x_exp).copied().unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms as `(x_exponent, coefficient)` in increasing X-exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.coeffs.iter().map(|(&x, &c)| (x, c))
    }

    pub fn add(&self, other: &HomogPoly, ctx: &FieldCtx) -> HomogPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        HomogPoly::from_terms(self.degree, self.terms().chain(other.terms()), ctx)
    }

    pub fn scale(&self, c: u64, ctx: &FieldCtx) -> HomogPoly {
        HomogPoly::from_terms(
            self.degree,
            self.terms().map(|(x, a)| (x, ctx.mul(a, c % ctx.p()))),
            ctx,
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> HomogPoly {
        self.scale(ctx.neg(1), ctx)
    }

    /// Exact convolution product; the result degree is the sum of degrees.
    pub fn mul(&self, other: &HomogPoly, ctx: &FieldCtx) -> HomogPoly {
        let degree = self.degree + other.degree;
        let mut coeffs: BTreeMap<u64, u64> = BTreeMap::new();
        for (xa, ca) in self.terms() {
            for (xb, cb) in other.terms() {
                let x = xa + xb;
                let c = ctx.mul(ca, cb);
                if c == 0 {
                    continue;
                }
                let entry = coeffs.entry(x).or_insert(0);
                *entry = ctx.add(*entry, c);
                if *entry == 0 {
                    coeffs.remove(&x);
                }
            }
        }
        HomogPoly { degree, coeffs }
    }
}

/// The monomial ideal (X^a1, Y^a2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialIdeal2 {
    pub x_power: u64,
    pub y_power: u64,
}

impl MonomialIdeal2 {
    pub fn new(x_power: u64, y_power: u64) -> Self {
        assert!(
            x_power >= 1 && y_power >= 1,
            "ideal exponents must be positive"
        );
        MonomialIdeal2 { x_power, y_power }
    }

    /// Does the monomial X^x Y^y lie in the ideal?
    #[inline]
    pub fn contains_monomial(&self, x_exp: u64, y_exp: u64) -> bool {
        x_exp >= self.x_power || y_exp >= self.y_power
    }
}

/// `(X^d + Y^d)^k` with binomial coefficients reduced mod p.
pub fn fermat_power(d: u64, k: u64, ctx: &FieldCtx) -> HomogPoly {
    assert!(d >= 1);
    HomogPoly::from_terms(d * k, (0..=k).map(|j| (d * (k - j), ctx.binom(k, j))), ctx)
}

/// Deletes every monomial of `f` lying in the ideal; the degree tag is
/// preserved.
pub fn reduce_mod_ideal(f: &HomogPoly, ideal: &MonomialIdeal2) -> HomogPoly {
    let degree = f.degree();
    HomogPoly {
        degree,
        coeffs: f
            .terms()
            .filter(|&(x, _)| !ideal.contains_monomial(x, degree - x))
            .collect(),
    }
}

/// The least degree `e <= search_bound` admitting a nonzero multiplier `H`
/// with `H * f` inside the ideal, together with a canonical such `H`.
///
/// Per degree this assembles the linear map from the e+1 coefficients of H
/// onto the monomials of H*f surviving reduction, and asks for a kernel
/// vector.
pub fn min_multiplier_degree(
    ideal: &MonomialIdeal2,
    f: &HomogPoly,
    search_bound: u64,
    ctx: &FieldCtx,
) -> Option<(u64, HomogPoly)> {
    assert!(!f.is_zero(), "multiplier search needs a nonzero polynomial");
    for e in 0..=search_bound {
        let total = e + f.degree();
        let mut surviving: BTreeSet<u64> = BTreeSet::new();
        for i in 0..=e {
            for (fx, _) in f.terms() {
                let x = i + fx;
                if !ideal.contains_monomial(x, total - x) {
                    surviving.insert(x);
                }
            }
        }
        if surviving.is_empty() {
            // every product monomial is absorbed; the canonical kernel
            // vector of an empty system is the first unit vector
            return Some((e, HomogPoly::monomial(e, 0, 1, ctx)));
        }
        let row_of: BTreeMap<u64, usize> =
            surviving.iter().enumerate().map(|(r, &x)| (x, r)).collect();
        let mut mat = MatFp::zeros(surviving.len(), (e + 1) as usize);
        for i in 0..=e {
            for (fx, c) in f.terms() {
                if let Some(&r) = row_of.get(&(i + fx)) {
                    let cur = mat.get(r, i as usize);
                    mat.set(r, i as usize, ctx.add(cur, c));
                }
            }
        }
        if let Some(v) = mat.kernel_vector(ctx) {
            let h = HomogPoly::from_terms(
                e,
                v.into_iter().enumerate().map(|(i, c)| (i as u64, c)),
                ctx,
            );
            debug_assert!(!h.is_zero());
            return Some((e, h));
        }
    }
    None
}

/// A syzygy for (X^a1, Y^a2, f): coeff_x * X^a1 + coeff_y * Y^a2 +
/// coeff_f * f = 0 at total degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneSyzygy {
    pub m: u64,
    pub coeff_x: HomogPoly,
    pub coeff_y: HomogPoly,
    pub coeff_f: HomogPoly,
    /// True when the multiplier search was cut off below the point where
    /// the Koszul relation decides the answer, so `m` is only an upper
    /// bound.
    pub capped: bool,
}

/// Minimal total degree of a nontrivial syzygy for (X^a1, Y^a2, f), with a
/// witness. The Koszul relation (Y^a2, -X^a1, 0) bounds the result by
/// a1 + a2; a multiplier H found at degree e improves it to deg(f) + e.
pub fn delta_plane(
    a1: u64,
    a2: u64,
    f: &HomogPoly,
    search_bound: Option<u64>,
    ctx: &FieldCtx,
) -> PlaneSyzygy {
    assert!(a1 >= 1 && a2 >= 1, "powers must be positive");
    assert!(!f.is_zero(), "delta of a zero polynomial");
    let koszul_m = a1 + a2;
    // beyond a1 + a2 - deg f the Koszul syzygy always wins
    let default_bound = koszul_m.saturating_sub(f.degree());
    let (bound, truncated) = match search_bound {
        None => (default_bound, false),
        Some(b) => (b.min(default_bound), b < default_bound),
    };
    let ideal = MonomialIdeal2::new(a1, a2);
    if let Some((e, h)) = min_multiplier_degree(&ideal, f, bound, ctx) {
        let m = f.degree() + e;
        if m < koszul_m {
            let (coeff_x, coeff_y) = split_over_ideal(&h.mul(f, ctx).neg(ctx), a1, a2, ctx);
            let syz = PlaneSyzygy {
                m,
                coeff_x,
                coeff_y,
                coeff_f: h,
                capped: false,
            };
            debug_assert!(verify_plane_syzygy(a1, a2, f, &syz, ctx));
            return syz;
        }
    } else if truncated {
        let mut syz = koszul_syzygy(a1, a2, f, ctx);
        syz.capped = true;
        return syz;
    }
    koszul_syzygy(a1, a2, f, ctx)
}

fn koszul_syzygy(a1: u64, a2: u64, f: &HomogPoly, ctx: &FieldCtx) -> PlaneSyzygy {
    let m = a1 + a2;
    PlaneSyzygy {
        m,
        coeff_x: HomogPoly::y_power(a2, ctx),
        coeff_y: HomogPoly::x_power(a1, ctx).neg(ctx),
        coeff_f: HomogPoly::zero(m.saturating_sub(f.degree())),
        capped: false,
    }
}

// Writes a polynomial lying in (X^a1, Y^a2) as F * X^a1 + G * Y^a2;
// monomials divisible by X^a1 go to F, the rest (divisible by Y^a2) to G.
fn split_over_ideal(poly: &HomogPoly, a1: u64, a2: u64, ctx: &FieldCtx) -> (HomogPoly, HomogPoly) {
    let deg = poly.degree();
    let mut f_terms = Vec::new();
    let mut g_terms = Vec::new();
    for (x, c) in poly.terms() {
        if x >= a1 {
            f_terms.push((x - a1, c));
        } else {
            assert!(deg - x >= a2, "polynomial not inside the ideal");
            g_terms.push((x, c));
        }
    }
    (
        HomogPoly::from_terms(deg.saturating_sub(a1), f_terms, ctx),
        HomogPoly::from_terms(deg.saturating_sub(a2), g_terms, ctx),
    )
}

/// Re-multiplies a plane syzygy and checks it sums to zero with consistent
/// degrees.
pub fn verify_plane_syzygy(
    a1: u64,
    a2: u64,
    f: &HomogPoly,
    syz: &PlaneSyzygy,
    ctx: &FieldCtx,
) -> bool {
    if syz.coeff_x.is_zero() && syz.coeff_y.is_zero() && syz.coeff_f.is_zero() {
        return false;
    }
    for (part, d) in [
        (&syz.coeff_x, a1),
        (&syz.coeff_y, a2),
        (&syz.coeff_f, f.degree()),
    ] {
        if !part.is_zero() && part.degree() + d != syz.m {
            return false;
        }
    }
    let sum = syz
        .coeff_x
        .mul(&HomogPoly::x_power(a1, ctx), ctx)
        .add(&syz.coeff_y.mul(&HomogPoly::y_power(a2, ctx), ctx), ctx)
        .add(&syz.coeff_f.mul(f, ctx), ctx);
    sum.is_zero()
}

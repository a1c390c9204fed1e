//! Computations in the coordinate ring of the Fermat curve
//! Z^d = X^d + Y^d: minimal syzygy degrees for (X^a1, Y^a2, Z^a3), an
//! independent exhaustive search used to cross-check them, bundle-degree
//! bookkeeping, closed-form non-semistability criteria, Frobenius scans
//! and the determinant test for exponents with remainder one.
//!
//! Ring elements are written Z-adically: a homogeneous element of degree
//! m is a sum of bivariate parts, the part at Z^i having degree m - i,
//! with Z-exponents kept below d via Z^d = X^d + Y^d.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffield::{pow_mod, FieldCtx};
use crate::linalg::MatFp;
use crate::plane::{fermat_power, min_multiplier_degree, HomogPoly, MonomialIdeal2};

/// A decomposition `total = curve_degree * quotient + remainder` with
/// `0 <= remainder < curve_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSplit {
    pub total: u64,
    pub curve_degree: u64,
    pub quotient: u64,
    pub remainder: u64,
}

impl DegreeSplit {
    pub fn new(total: u64, curve_degree: u64) -> Self {
        assert!(curve_degree >= 1);
        DegreeSplit {
            total,
            curve_degree,
            quotient: total / curve_degree,
            remainder: total % curve_degree,
        }
    }
}

/// Homogeneous element of F_p[X, Y, Z] / (Z^d - X^d - Y^d) in Z-adic
/// normal form. The zero element keeps an explicit degree tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveElem {
    d: u64,
    degree: u64,
    parts: BTreeMap<u64, HomogPoly>, // z-exponent (< d) -> nonzero part
}

impl CurveElem {
    pub fn zero(d: u64, degree: u64) -> Self {
        assert!(d >= 1);
        CurveElem {
            d,
            degree,
            parts: BTreeMap::new(),
        }
    }

    pub fn from_poly(d: u64, poly: HomogPoly) -> Self {
        Self::from_poly_z(d, poly, 0)
    }

    /// `poly * Z^z_exp` for `z_exp < d`.
    pub fn from_poly_z(d: u64, poly: HomogPoly, z_exp: u64) -> Self {
        assert!(d >= 1);
        assert!(
            z_exp < d,
            "Z-exponent must be reduced below the curve degree"
        );
        let degree = poly.degree() + z_exp;
        let mut parts = BTreeMap::new();
        if !poly.is_zero() {
            parts.insert(z_exp, poly);
        }
        CurveElem { d, degree, parts }
    }

    pub fn one(d: u64, ctx: &FieldCtx) -> Self {
        Self::from_poly(d, HomogPoly::one(ctx))
    }

    /// Z^a in normal form: (X^d + Y^d)^(a/d) * Z^(a mod d).
    pub fn z_power(d: u64, a: u64, ctx: &FieldCtx) -> Self {
        let split = DegreeSplit::new(a, d);
        Self::from_poly_z(d, fermat_power(d, split.quotient, ctx), split.remainder)
    }

    #[inline]
    pub fn curve_degree(&self) -> u64 {
        self.d
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, z_exp: u64) -> Option<&HomogPoly> {
        self.parts.get(&z_exp)
    }

    pub fn parts(&self) -> impl Iterator<Item = (u64, &HomogPoly)> + '_ {
        self.parts.iter().map(|(&z, p)| (z, p))
    }

    /// All terms as `(x_exp, y_exp, z_exp, coeff)`, ordered by Z- then
    /// X-exponent.
    pub fn monomials(&self) -> Vec<(u64, u64, u64, u64)> {
        let mut out = Vec::new();
        for (z, poly) in self.parts() {
            for (x, c) in poly.terms() {
                out.push((x, poly.degree() - x, z, c));
            }
        }
        out
    }

    /// Rebuilds an element from `(x_exp, y_exp, z_exp, coeff)` terms,
    /// validating homogeneity and Z-adic normal form.
    pub fn from_monomials(
        d: u64,
        degree: u64,
        terms: &[(u64, u64, u64, u64)],
        ctx: &FieldCtx,
    ) -> Result<Self> {
        let mut by_z: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
        for &(x, y, z, c) in terms {
            if z >= d {
                return Err(Error::BadElementData(format!(
                    "Z-exponent {} not reduced below {}",
                    z, d
                )));
            }
            if x + y + z != degree {
                return Err(Error::BadElementData(format!(
                    "monomial X^{} Y^{} Z^{} does not have total degree {}",
                    x, y, z, degree
                )));
            }
            by_z.entry(z).or_default().push((x, c));
        }
        let mut parts = BTreeMap::new();
        for (z, list) in by_z {
            let poly = HomogPoly::from_terms(degree - z, list, ctx);
            if !poly.is_zero() {
                parts.insert(z, poly);
            }
        }
        Ok(CurveElem { d, degree, parts })
    }

    pub fn add(&self, other: &CurveElem, ctx: &FieldCtx) -> CurveElem {
        assert_eq!(self.d, other.d, "curve degree mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        let mut parts = self.parts.clone();
        for (z, poly) in other.parts() {
            let merged = match parts.remove(&z) {
                Some(p) => p.add(poly, ctx),
                None => poly.clone(),
            };
            if !merged.is_zero() {
                parts.insert(z, merged);
            }
        }
        CurveElem {
            d: self.d,
            degree: self.degree,
            parts,
        }
    }

    pub fn scale(&self, c: u64, ctx: &FieldCtx) -> CurveElem {
        let mut parts = BTreeMap::new();
        for (z, poly) in self.parts() {
            let scaled = poly.scale(c, ctx);
            if !scaled.is_zero() {
                parts.insert(z, scaled);
            }
        }
        CurveElem {
            d: self.d,
            degree: self.degree,
            parts,
        }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> CurveElem {
        self.scale(ctx.neg(1), ctx)
    }
}

/// Product in the coordinate ring: Z-exponents add and reduce mod d, each
/// wraparound multiplying the bivariate part by X^d + Y^d.
pub fn curve_mul(u: &CurveElem, v: &CurveElem, ctx: &FieldCtx) -> CurveElem {
    assert_eq!(u.d, v.d, "curve degree mismatch");
    let d = u.d;
    let degree = u.degree + v.degree;
    let fermat = fermat_power(d, 1, ctx);
    let mut parts: BTreeMap<u64, HomogPoly> = BTreeMap::new();
    for (zu, pu) in u.parts() {
        for (zv, pv) in v.parts() {
            let mut prod = pu.mul(pv, ctx);
            let mut z = zu + zv;
            if z >= d {
                z -= d;
                prod = prod.mul(&fermat, ctx);
            }
            if prod.is_zero() {
                continue;
            }
            let merged = match parts.remove(&z) {
                Some(p) => p.add(&prod, ctx),
                None => prod,
            };
            if !merged.is_zero() {
                parts.insert(z, merged);
            }
        }
    }
    CurveElem { d, degree, parts }
}

/// A syzygy F * X^a1 + G * Y^a2 + H * Z^a3 = 0 of total degree `m` on the
/// curve, with deg F + a1 = deg G + a2 = deg H + a3 = m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyWitness {
    pub m: u64,
    pub powers: [u64; 3],
    pub coeff_x: CurveElem,
    pub coeff_y: CurveElem,
    pub coeff_z: CurveElem,
}

/// Re-multiplies the witness and checks the degree constraints, that it is
/// not the zero triple, and that the sum vanishes in the curve ring.
pub fn verify_witness(w: &SyzygyWitness, ctx: &FieldCtx) -> bool {
    let d = w.coeff_x.curve_degree();
    if w.coeff_y.curve_degree() != d || w.coeff_z.curve_degree() != d {
        return false;
    }
    if w.coeff_x.is_zero() && w.coeff_y.is_zero() && w.coeff_z.is_zero() {
        return false;
    }
    for (part, a) in [
        (&w.coeff_x, w.powers[0]),
        (&w.coeff_y, w.powers[1]),
        (&w.coeff_z, w.powers[2]),
    ] {
        if !part.is_zero() && part.degree() + a != w.m {
            return false;
        }
    }
    let gen_x = CurveElem::from_poly(d, HomogPoly::x_power(w.powers[0], ctx));
    let gen_y = CurveElem::from_poly(d, HomogPoly::y_power(w.powers[1], ctx));
    let gen_z = CurveElem::z_power(d, w.powers[2], ctx);
    let sum = curve_mul(&w.coeff_x, &gen_x, ctx)
        .add(&curve_mul(&w.coeff_y, &gen_y, ctx), ctx)
        .add(&curve_mul(&w.coeff_z, &gen_z, ctx), ctx);
    sum.is_zero()
}

/// Outcome of a curve syzygy-degree computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaOutcome {
    Exact {
        m: u64,
        witness: SyzygyWitness,
    },
    /// No syzygy exists up to the requested total degree; the minimum lies
    /// strictly above it (and at most at the Koszul degree a1 + a2).
    BoundCapped {
        searched_up_to: u64,
    },
}

impl DeltaOutcome {
    pub fn degree(&self) -> Option<u64> {
        match self {
            DeltaOutcome::Exact { m, .. } => Some(*m),
            DeltaOutcome::BoundCapped { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&SyzygyWitness> {
        match self {
            DeltaOutcome::Exact { witness, .. } => Some(witness),
            DeltaOutcome::BoundCapped { .. } => None,
        }
    }
}

fn check_smooth(d: u64, ctx: &FieldCtx) -> Result<()> {
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "curve degree",
            value: 0,
        });
    }
    if d.is_multiple_of(ctx.p()) {
        return Err(Error::CharDividesDegree { p: ctx.p(), d });
    }
    Ok(())
}

/// Minimal total degree of a nontrivial syzygy for (X^a1, Y^a2, Z^a3) on
/// the curve Z^d = X^d + Y^d, with a verified witness.
///
/// Writing a3 = d*k + t, a curve syzygy of minimal degree restricts to a
/// plane syzygy against (X^d + Y^d)^k (at degree -t) or against
/// (X^d + Y^d)^(k+1) (at equal degree), and conversely both kinds lift, so
/// the minimum is taken over the two plane searches and the Koszul
/// relation. `total_bound` caps the searched total degree; when nothing is
/// found below the cap and the cap excludes the Koszul degree, the result
/// is reported as capped rather than as a value.
pub fn delta_fermat(
    a1: u64,
    a2: u64,
    a3: u64,
    d: u64,
    ctx: &FieldCtx,
    total_bound: Option<u64>,
) -> Result<DeltaOutcome> {
    check_smooth(d, ctx)?;
    for (a, name) in [(a1, "a1"), (a2, "a2"), (a3, "a3")] {
        if a == 0 {
            return Err(Error::OutOfRange {
                what: name,
                value: 0,
            });
        }
    }
    let split = DegreeSplit::new(a3, d);
    let (k, t) = (split.quotient, split.remainder);
    let koszul_m = a1 + a2;
    let cap = total_bound.unwrap_or(koszul_m).min(koszul_m);
    let ideal = MonomialIdeal2::new(a1, a2);

    // route A: multiplier against (X^d + Y^d)^k, lifted with a Z^t factor
    let pk = fermat_power(d, k, ctx);
    let route_a = cap
        .checked_sub(t + pk.degree())
        .and_then(|bound| min_multiplier_degree(&ideal, &pk, bound, ctx))
        .map(|(e, h)| (pk.degree() + e + t, h));

    // route B: multiplier against (X^d + Y^d)^(k+1), H picking up Z^(d-t)
    let pk1 = fermat_power(d, k + 1, ctx);
    let route_b = cap
        .checked_sub(pk1.degree())
        .and_then(|bound| min_multiplier_degree(&ideal, &pk1, bound, ctx))
        .map(|(e, h)| (pk1.degree() + e, h));

    let koszul = if koszul_m <= cap {
        Some(koszul_m)
    } else {
        None
    };

    let best = [
        route_a.as_ref().map(|(m, _)| *m),
        route_b.as_ref().map(|(m, _)| *m),
        koszul,
    ]
    .into_iter()
    .flatten()
    .min();

    let Some(m) = best else {
        return Ok(DeltaOutcome::BoundCapped {
            searched_up_to: cap,
        });
    };

    let witness = if route_a.as_ref().is_some_and(|(ma, _)| *ma == m) {
        let (_, h) = route_a.unwrap();
        lift_multiplier(&h, &pk, a1, a2, a3, d, t, 0, ctx)
    } else if route_b.as_ref().is_some_and(|(mb, _)| *mb == m) {
        let (_, h) = route_b.unwrap();
        lift_multiplier(&h, &pk1, a1, a2, a3, d, 0, d - t, ctx)
    } else {
        // Koszul relation (Y^a2, -X^a1, 0)
        SyzygyWitness {
            m,
            powers: [a1, a2, a3],
            coeff_x: CurveElem::from_poly(d, HomogPoly::y_power(a2, ctx)),
            coeff_y: CurveElem::from_poly(d, HomogPoly::x_power(a1, ctx).neg(ctx)),
            coeff_z: CurveElem::zero(d, m.saturating_sub(a3)),
        }
    };
    assert!(
        verify_witness(&witness, ctx),
        "constructed witness failed verification"
    );
    Ok(DeltaOutcome::Exact { m, witness })
}

// Lifts a plane multiplier H against f = (X^d+Y^d)^k' to the curve: the
// plane relation F X^a1 + G Y^a2 + H f = 0 becomes a curve syzygy with F
// and G carrying Z^xy_shift and H carrying Z^h_shift.
#[allow(clippy::too_many_arguments)]
fn lift_multiplier(
    h: &HomogPoly,
    f: &HomogPoly,
    a1: u64,
    a2: u64,
    a3: u64,
    d: u64,
    xy_shift: u64,
    h_shift: u64,
    ctx: &FieldCtx,
) -> SyzygyWitness {
    let prod = h.mul(f, ctx).neg(ctx);
    let mut f_terms = Vec::new();
    let mut g_terms = Vec::new();
    for (x, c) in prod.terms() {
        if x >= a1 {
            f_terms.push((x - a1, c));
        } else {
            g_terms.push((x, c));
        }
    }
    let deg = prod.degree();
    let coeff_x_plane = HomogPoly::from_terms(deg.saturating_sub(a1), f_terms, ctx);
    let coeff_y_plane = HomogPoly::from_terms(deg.saturating_sub(a2), g_terms, ctx);
    let m = deg + xy_shift;
    let z_shift = CurveElem::z_power(d, h_shift, ctx);
    let coeff_z = curve_mul(&CurveElem::from_poly(d, h.clone()), &z_shift, ctx);
    debug_assert_eq!(coeff_z.degree() + a3, m);
    SyzygyWitness {
        m,
        powers: [a1, a2, a3],
        coeff_x: lift_poly(d, coeff_x_plane, xy_shift, ctx),
        coeff_y: lift_poly(d, coeff_y_plane, xy_shift, ctx),
        coeff_z,
    }
}

fn lift_poly(d: u64, poly: HomogPoly, z_shift: u64, ctx: &FieldCtx) -> CurveElem {
    if poly.is_zero() {
        return CurveElem::zero(d, poly.degree() + z_shift);
    }
    curve_mul(
        &CurveElem::from_poly(d, poly),
        &CurveElem::z_power(d, z_shift, ctx),
        ctx,
    )
}

/// Independent minimal-degree search: for each total degree m starting at
/// min(a1, a2, a3), sets up the full linear system over the curve-ring
/// monomial basis for F * X^a1 + G * Y^a2 + H * Z^a3 = 0 and returns the
/// first m with a nonzero kernel. Shares only the ring product and the
/// generic kernel solver with `delta_fermat`; Z^a3 is built by repeated
/// multiplication.
pub fn delta_fermat_exhaustive(
    a1: u64,
    a2: u64,
    a3: u64,
    d: u64,
    ctx: &FieldCtx,
    m_max: u64,
) -> Result<Option<(u64, SyzygyWitness)>> {
    check_smooth(d, ctx)?;
    let powers = [a1, a2, a3];
    let z_gen = CurveElem::z_power(d, 1, ctx);
    let mut gen_z = CurveElem::one(d, ctx);
    for _ in 0..a3 {
        gen_z = curve_mul(&gen_z, &z_gen, ctx);
    }
    let gens = [
        CurveElem::from_poly(d, HomogPoly::x_power(a1, ctx)),
        CurveElem::from_poly(d, HomogPoly::y_power(a2, ctx)),
        gen_z,
    ];

    let m_min = *powers.iter().min().expect("three powers");
    for m in m_min..=m_max {
        // unknowns: basis monomials X^x Y^(deg-z-x) Z^z of each coefficient
        let mut columns: Vec<(usize, u64, u64)> = Vec::new();
        for (comp, &a) in powers.iter().enumerate() {
            if m < a {
                continue;
            }
            let deg = m - a;
            for z in 0..d.min(deg + 1) {
                for x in 0..=(deg - z) {
                    columns.push((comp, z, x));
                }
            }
        }
        if columns.is_empty() {
            continue;
        }
        // rows: basis monomials of the degree-m product space
        let mut row_offset = vec![0usize; d as usize];
        let mut n_rows = 0usize;
        for z in 0..d.min(m + 1) {
            row_offset[z as usize] = n_rows;
            n_rows += (m - z + 1) as usize;
        }
        let mut mat = MatFp::zeros(n_rows, columns.len());
        for (col, &(comp, z, x)) in columns.iter().enumerate() {
            let deg = m - powers[comp];
            let basis = CurveElem::from_poly_z(d, HomogPoly::monomial(deg - z, x, 1, ctx), z);
            let prod = curve_mul(&basis, &gens[comp], ctx);
            for (zp, poly) in prod.parts() {
                for (xp, c) in poly.terms() {
                    let row = row_offset[zp as usize] + xp as usize;
                    let cur = mat.get(row, col);
                    mat.set(row, col, ctx.add(cur, c));
                }
            }
        }
        if let Some(v) = mat.kernel_vector(ctx) {
            let mut comp_terms: [Vec<(u64, u64, u64, u64)>; 3] = Default::default();
            for (col, &(comp, z, x)) in columns.iter().enumerate() {
                if v[col] != 0 {
                    let deg = m - powers[comp];
                    comp_terms[comp].push((x, deg - z - x, z, v[col]));
                }
            }
            let build =
                |comp: usize, terms: &[(u64, u64, u64, u64)]| match m.checked_sub(powers[comp]) {
                    Some(deg) => CurveElem::from_monomials(d, deg, terms, ctx)
                        .expect("kernel terms are well-formed"),
                    // the component degree would be negative: forced to zero
                    None => CurveElem::zero(d, 0),
                };
            let witness = SyzygyWitness {
                m,
                powers,
                coeff_x: build(0, &comp_terms[0]),
                coeff_y: build(1, &comp_terms[1]),
                coeff_z: build(2, &comp_terms[2]),
            };
            assert!(
                verify_witness(&witness, ctx),
                "exhaustive witness failed verification"
            );
            return Ok(Some((m, witness)));
        }
    }
    Ok(None)
}

/// Degree of the twisted syzygy bundle: (2m - d1 - d2 - d3) * deg(C) with
/// deg(C) = d for a plane curve of degree d.
pub fn twist_degree(m: u64, d1: u64, d2: u64, d3: u64, d: u64) -> i128 {
    (2 * m as i128 - (d1 as i128 + d2 as i128 + d3 as i128)) * d as i128
}

/// Closed-form non-semistability test: writing b = d*k + t, if k is even
/// and 3t > 2d then Syz(X^b, Y^b, Z^b) carries a destabilizing syzygy and
/// the predicted total degree d*(k + 1 + k/2) is returned.
pub fn predicted_destabilizing_degree(d: u64, b: u64) -> Option<u64> {
    assert!(d >= 1 && b >= 1);
    let split = DegreeSplit::new(b, d);
    let (k, t) = (split.quotient, split.remainder);
    if k % 2 == 0 && 3 * t > 2 * d {
        Some(d * (k + 1 + k / 2))
    } else {
        None
    }
}

/// Remainder criterion: with s = q mod d, the bundle Syz(X^2q, Y^2q, Z^2q)
/// is not semistable whenever 2s < d < 3s.
pub fn remainder_criterion(d: u64, q: u64) -> bool {
    assert!(d >= 1);
    let s = q % d;
    2 * s < d && d < 3 * s
}

/// Default ceiling on 2q for direct syzygy computation inside scans.
pub const DEFAULT_COST_CEILING: u64 = 600;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanStep {
    pub e: u32,
    /// q mod d for q = p^e, computed by modular exponentiation.
    pub q_mod_d: u64,
    pub criterion: bool,
    /// Direct syzygy check; `None` when 2q exceeded the cost ceiling, q
    /// overflowed, or a destabilizing witness was already found earlier.
    pub direct: Option<DirectCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectCheck {
    pub q: u64,
    /// Minimal syzygy degree when it destabilizes (< 3q); `None` means the
    /// capped search proved the minimum is at least 3q.
    pub delta: Option<u64>,
    pub destabilized: bool,
}

/// Frobenius scan outcome for Syz(X^2, Y^2, Z^2) on the degree-d curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub d: u64,
    pub p: u64,
    pub e_max: u32,
    pub cost_ceiling: u64,
    pub steps: Vec<ScanStep>,
    /// Least e with a verified destabilizing witness for the e-th
    /// pull-back.
    pub destabilized_at: Option<u32>,
    pub witness: Option<SyzygyWitness>,
    /// Least e at which the remainder criterion fires.
    pub criterion_first_at: Option<u32>,
}

impl ScanOutcome {
    /// True when only the congruence criterion detected destabilization
    /// (no witness was computed within the cost ceiling).
    pub fn criterion_only(&self) -> bool {
        self.destabilized_at.is_none() && self.criterion_first_at.is_some()
    }

    pub fn undetermined(&self) -> bool {
        self.destabilized_at.is_none() && self.criterion_first_at.is_none()
    }
}

/// Walks e = 0..=e_max with q = p^e. Each step records the remainder
/// criterion on q mod d and, while 2q stays under the cost ceiling, a
/// direct bounded search for a syzygy of total degree below 3q (the
/// negative-twist threshold) for (X^2q, Y^2q, Z^2q).
pub fn strong_semistability_scan(
    d: u64,
    ctx: &FieldCtx,
    e_max: u32,
    cost_ceiling: u64,
) -> Result<ScanOutcome> {
    check_smooth(d, ctx)?;
    let p = ctx.p();
    let mut out = ScanOutcome {
        d,
        p,
        e_max,
        cost_ceiling,
        steps: Vec::new(),
        destabilized_at: None,
        witness: None,
        criterion_first_at: None,
    };
    for e in 0..=e_max {
        let q_mod_d = pow_mod(p, e as u64, d);
        let criterion = remainder_criterion(d, q_mod_d);
        if criterion && out.criterion_first_at.is_none() {
            out.criterion_first_at = Some(e);
        }
        let mut direct = None;
        if out.destabilized_at.is_none() {
            if let Some(q) = p.checked_pow(e) {
                if q.checked_mul(2).is_some_and(|b| b <= cost_ceiling) {
                    let threshold = 3 * q;
                    let outcome = delta_fermat(2 * q, 2 * q, 2 * q, d, ctx, Some(threshold - 1))?;
                    let check = match outcome {
                        DeltaOutcome::Exact { m, witness } => {
                            debug_assert!(m < threshold);
                            out.destabilized_at = Some(e);
                            out.witness = Some(witness);
                            DirectCheck {
                                q,
                                delta: Some(m),
                                destabilized: true,
                            }
                        }
                        DeltaOutcome::BoundCapped { .. } => DirectCheck {
                            q,
                            delta: None,
                            destabilized: false,
                        },
                    };
                    direct = Some(check);
                }
            }
        }
        out.steps.push(ScanStep {
            e,
            q_mod_d,
            criterion,
            direct,
        });
    }
    Ok(out)
}

/// The (level+1) x (level+1) matrix over F_p for exponents q = d*level + 1:
/// row i is the reduction of X^(d(level-i)) Y^(d i) * (X^d + Y^d)^(2 level)
/// modulo (X^2q, Y^2q), expressed in the basis X^(d(2 level - j)) Y^(d(level + j)),
/// j = 0..=level. A vanishing determinant yields a destabilizing syzygy of
/// total degree 3*d*level.
pub fn remainder_one_matrix(d: u64, level: u64, ctx: &FieldCtx) -> Result<(MatFp, u64)> {
    check_smooth(d, ctx)?;
    let q = d * level + 1;
    let ideal = MonomialIdeal2::new(2 * q, 2 * q);
    let power = fermat_power(d, 2 * level, ctx);
    let n = (level + 1) as usize;
    let mut mat = MatFp::zeros(n, n);
    for i in 0..=level {
        let multiplier = HomogPoly::monomial(d * level, d * (level - i), 1, ctx);
        let reduced = reduce_product(&multiplier, &power, &ideal, ctx);
        let mut seen = 0usize;
        for j in 0..=level {
            let c = reduced.coeff(d * (2 * level - j));
            if c != 0 {
                seen += 1;
            }
            mat.set(i as usize, j as usize, c);
        }
        debug_assert_eq!(
            seen,
            reduced.term_count(),
            "reduction left the d-step basis"
        );
    }
    let det = mat.determinant(ctx);
    Ok((mat, det))
}

fn reduce_product(
    a: &HomogPoly,
    b: &HomogPoly,
    ideal: &MonomialIdeal2,
    ctx: &FieldCtx,
) -> HomogPoly {
    crate::plane::reduce_mod_ideal(&a.mul(b, ctx), ideal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn exact(outcome: Result<DeltaOutcome>) -> (u64, SyzygyWitness) {
        match outcome.unwrap() {
            DeltaOutcome::Exact { m, witness } => (m, witness),
            DeltaOutcome::BoundCapped { searched_up_to } => {
                panic!("unexpected capped result at {}", searched_up_to)
            }
        }
    }

    /// Are two witnesses scalar multiples of each other?
    fn same_up_to_scalar(a: &SyzygyWitness, b: &SyzygyWitness, ctx: &FieldCtx) -> bool {
        if a.m != b.m || a.powers != b.powers {
            return false;
        }
        let ma: Vec<_> = [&a.coeff_x, &a.coeff_y, &a.coeff_z]
            .iter()
            .flat_map(|e| e.monomials())
            .collect();
        let mb: Vec<_> = [&b.coeff_x, &b.coeff_y, &b.coeff_z]
            .iter()
            .flat_map(|e| e.monomials())
            .collect();
        if ma.len() != mb.len() || ma.is_empty() {
            return false;
        }
        let scalar = ctx.mul(ma[0].3, ctx.inv(mb[0].3));
        ma.iter()
            .zip(mb.iter())
            .all(|(&(x1, y1, z1, c1), &(x2, y2, z2, c2))| {
                (x1, y1, z1) == (x2, y2, z2) && c1 == ctx.mul(scalar, c2)
            })
    }

    #[test]
    fn curve_products_reduce_z_powers() {
        let ctx = fp(7);
        let d = 5;
        let z = CurveElem::z_power(d, 1, &ctx);
        let z4 = CurveElem::z_power(d, 4, &ctx);
        let prod = curve_mul(&z4, &z, &ctx);
        assert_eq!(prod, CurveElem::from_poly(d, fermat_power(d, 1, &ctx)));

        // Z^14 = (X^5 + Y^5)^2 Z^4
        let z14 = CurveElem::z_power(d, 14, &ctx);
        assert_eq!(z14, CurveElem::from_poly_z(d, fermat_power(d, 2, &ctx), 4));
        let mut acc = CurveElem::one(d, &ctx);
        for _ in 0..14 {
            acc = curve_mul(&acc, &z, &ctx);
        }
        assert_eq!(acc, z14);

        let u = CurveElem::from_poly_z(d, fermat_power(5, 2, &ctx), 3);
        assert_eq!(curve_mul(&u, &CurveElem::one(d, &ctx), &ctx), u);
    }

    #[test]
    fn quintic_p7_minimal_syzygy() {
        let ctx = fp(7);
        let (m, w) = exact(delta_fermat(14, 14, 14, 5, &ctx, None));
        assert_eq!(m, 20);
        assert!(verify_witness(&w, &ctx));
        assert_eq!(twist_degree(m, 14, 14, 14, 5), -10);

        // -(X^6 + 2XY^5) X^14 + (2X^5Y + Y^6) Y^14 + (X^5 - Y^5)Z Z^14 = 0
        let expected = SyzygyWitness {
            m: 20,
            powers: [14, 14, 14],
            coeff_x: CurveElem::from_poly(5, HomogPoly::from_terms(6, [(6, 6), (1, 5)], &ctx)),
            coeff_y: CurveElem::from_poly(5, HomogPoly::from_terms(6, [(5, 2), (0, 1)], &ctx)),
            coeff_z: CurveElem::from_poly_z(5, HomogPoly::from_terms(5, [(5, 1), (0, 6)], &ctx), 1),
        };
        assert!(verify_witness(&expected, &ctx));
        assert!(same_up_to_scalar(&w, &expected, &ctx));
    }

    #[test]
    fn quintic_p3_minimal_syzygy() {
        let ctx = fp(3);
        let (m, w) = exact(delta_fermat(6, 6, 6, 5, &ctx, None));
        assert_eq!(m, 8);
        assert_eq!(twist_degree(m, 6, 6, 6, 5), -10);
        // (-YZ, -XZ, XY)
        let expected = SyzygyWitness {
            m: 8,
            powers: [6, 6, 6],
            coeff_x: CurveElem::from_poly_z(5, HomogPoly::monomial(1, 0, 2, &ctx), 1),
            coeff_y: CurveElem::from_poly_z(5, HomogPoly::monomial(1, 1, 2, &ctx), 1),
            coeff_z: CurveElem::from_poly(5, HomogPoly::monomial(2, 1, 1, &ctx)),
        };
        assert!(verify_witness(&expected, &ctx));
        assert!(same_up_to_scalar(&w, &expected, &ctx));
    }

    #[test]
    fn cubic_curve_relation_is_the_minimal_syzygy() {
        let ctx = fp(7);
        let (m, w) = exact(delta_fermat(2, 2, 2, 3, &ctx, None));
        assert_eq!(m, 3);
        assert!(verify_witness(&w, &ctx));
        assert_eq!(twist_degree(3, 2, 2, 2, 3), 0);
        // nothing below the curve relation itself
        assert_eq!(delta_fermat_exhaustive(2, 2, 2, 3, &ctx, 2).unwrap(), None);
    }

    #[test]
    fn exhaustive_search_agrees_on_small_grid() {
        for d in [3u64, 5] {
            for p in [2u64, 7, 11] {
                if d % p == 0 {
                    continue;
                }
                let ctx = fp(p);
                for a in [2u64, 4, 6] {
                    let (m, _) = exact(delta_fermat(a, a, a, d, &ctx, None));
                    let (m2, w2) = delta_fermat_exhaustive(a, a, a, d, &ctx, m)
                        .unwrap()
                        .unwrap_or_else(|| panic!("no syzygy found d={} p={} a={}", d, p, a));
                    assert_eq!(m, m2, "d={} p={} a={}", d, p, a);
                    assert!(verify_witness(&w2, &ctx));
                }
            }
        }
    }

    #[test]
    fn degenerate_conic_has_negative_twist_section() {
        let ctx = fp(5);
        let (m, w) = exact(delta_fermat(2, 2, 2, 2, &ctx, None));
        assert_eq!(m, 2);
        assert!(verify_witness(&w, &ctx));
        assert!(twist_degree(m, 2, 2, 2, 2) < 0);
        let found = delta_fermat_exhaustive(2, 2, 2, 2, &ctx, 4)
            .unwrap()
            .unwrap();
        assert_eq!(found.0, 2);
    }

    #[test]
    fn twist_degrees() {
        assert_eq!(twist_degree(20, 14, 14, 14, 5), -10);
        assert_eq!(twist_degree(9, 6, 6, 6, 17), 0);
        assert_eq!(twist_degree(8, 6, 6, 6, 5), -10);
    }

    #[test]
    fn destabilizing_degree_prediction() {
        assert_eq!(predicted_destabilizing_degree(5, 14), Some(20));
        assert_eq!(predicted_destabilizing_degree(5, 6), None);
        assert_eq!(predicted_destabilizing_degree(7, 22), None);
    }

    #[test]
    fn remainder_criterion_cases() {
        assert!(remainder_criterion(5, 7));
        assert!(remainder_criterion(5, 27));
        assert!(!remainder_criterion(5, 11));
    }

    #[test]
    fn scan_quintic_p7() {
        let ctx = fp(7);
        let scan = strong_semistability_scan(5, &ctx, 2, DEFAULT_COST_CEILING).unwrap();
        assert_eq!(scan.destabilized_at, Some(1));
        assert_eq!(scan.criterion_first_at, Some(1));
        let w = scan.witness.unwrap();
        assert_eq!(w.m, 20);
        assert!(verify_witness(&w, &ctx));
    }

    #[test]
    fn scan_quintic_p3_direct_beats_criterion() {
        let ctx = fp(3);
        let scan = strong_semistability_scan(5, &ctx, 3, DEFAULT_COST_CEILING).unwrap();
        assert_eq!(scan.destabilized_at, Some(1));
        assert_eq!(scan.criterion_first_at, Some(3));
        assert_eq!(scan.witness.as_ref().unwrap().m, 8);
    }

    #[test]
    fn scan_rejects_singular_curves() {
        let ctx = fp(5);
        assert_eq!(
            strong_semistability_scan(5, &ctx, 1, DEFAULT_COST_CEILING),
            Err(Error::CharDividesDegree { p: 5, d: 5 })
        );
        assert!(delta_fermat(2, 2, 2, 10, &fp(2), None).is_err());
    }

    #[test]
    fn remainder_one_matrix_level_two() {
        let ctx = fp(11);
        let (mat, det) = remainder_one_matrix(5, 2, &ctx).unwrap();
        assert_eq!(det, 6);
        assert_eq!(mat.row(0), &[6, 4, 1]);
        assert_eq!(mat.row(1), &[4, 6, 4]);
        assert_eq!(mat.row(2), &[1, 4, 6]);

        let (mat0, det0) = remainder_one_matrix(5, 0, &ctx).unwrap();
        assert_eq!(det0, 1);
        assert_eq!(mat0.row(0), &[1]);
    }

    #[test]
    fn witness_soundness_under_perturbation() {
        let ctx = fp(7);
        let (_, w) = exact(delta_fermat(14, 14, 14, 5, &ctx, None));
        assert!(verify_witness(&w, &ctx));
        let mut bad = w.clone();
        let terms = bad.coeff_z.monomials();
        let mut perturbed = terms.clone();
        perturbed[0].3 = ctx.add(perturbed[0].3, 1);
        bad.coeff_z = CurveElem::from_monomials(5, bad.coeff_z.degree(), &perturbed, &ctx).unwrap();
        assert!(!verify_witness(&bad, &ctx));

        // the zero triple is not a witness
        let zero = SyzygyWitness {
            m: 4,
            powers: [2, 2, 2],
            coeff_x: CurveElem::zero(5, 2),
            coeff_y: CurveElem::zero(5, 2),
            coeff_z: CurveElem::zero(5, 2),
        };
        assert!(!verify_witness(&zero, &ctx));
    }

    #[test]
    fn bounded_search_reports_caps() {
        let ctx = fp(7);
        match delta_fermat(14, 14, 14, 5, &ctx, Some(19)).unwrap() {
            DeltaOutcome::BoundCapped { searched_up_to } => assert_eq!(searched_up_to, 19),
            other => panic!("expected a capped result, got {:?}", other),
        }
        match delta_fermat(14, 14, 14, 5, &ctx, Some(20)).unwrap() {
            DeltaOutcome::Exact { m, .. } => assert_eq!(m, 20),
            other => panic!("expected an exact result, got {:?}", other),
        }
    }
}

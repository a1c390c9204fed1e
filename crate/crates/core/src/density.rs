//! Unit-group analysis behind the prime-density bounds: the remainder
//! window (d/3, d/2), the units some power of which lands in it, the
//! cyclic-subgroup counting cross-check, Sophie Germain degrees, the
//! exceptional-degree scan and empirical prime-class statistics.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ffield::{element_order, euler_phi, gcd, is_prime, is_quadratic_residue, mul_mod};

/// All integers s with 2s < d < 3s, i.e. the open window (d/3, d/2).
pub fn remainder_window(d: u64) -> Vec<u64> {
    (1..d).filter(|&s| 2 * s < d && d < 3 * s).collect()
}

/// Coverage of the unit group mod d by the remainder window: which units
/// have some power inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupReport {
    pub d: u64,
    pub window: Vec<u64>,
    pub covered: Vec<u64>,
    pub uncovered: Vec<u64>,
    pub covered_count: u64,
    pub phi_d: u64,
}

impl UnitGroupReport {
    /// Lower bound for the density of primes p = r mod d with covered r,
    /// as the exact fraction covered_count / phi(d).
    pub fn density_bound(&self) -> (u64, u64) {
        (self.covered_count, self.phi_d)
    }

    pub fn density_bound_reduced(&self) -> (u64, u64) {
        reduce_fraction(self.covered_count, self.phi_d)
    }

    pub fn density_bound_f64(&self) -> f64 {
        self.covered_count as f64 / self.phi_d as f64
    }
}

pub fn reduce_fraction(num: u64, den: u64) -> (u64, u64) {
    if num == 0 {
        return (0, 1);
    }
    let g = gcd(num, den);
    (num / g, den / g)
}

/// For each unit r mod d, walks the powers r, r^2, ... over one full
/// period; r is covered when some power lies in the remainder window.
pub fn covered_remainders(d: u64) -> UnitGroupReport {
    assert!(d >= 2);
    let window: BTreeSet<u64> = remainder_window(d).into_iter().collect();
    let mut covered = Vec::new();
    let mut uncovered = Vec::new();
    for r in 1..d {
        if gcd(r, d) != 1 {
            continue;
        }
        let mut hit = false;
        let mut x = r;
        loop {
            if window.contains(&x) {
                hit = true;
                break;
            }
            if x == 1 {
                break;
            }
            x = mul_mod(x, r, d);
        }
        if hit {
            covered.push(r);
        } else {
            uncovered.push(r);
        }
    }
    let covered_count = covered.len() as u64;
    UnitGroupReport {
        d,
        window: window.into_iter().collect(),
        covered,
        uncovered,
        covered_count,
        phi_d: euler_phi(d),
    }
}

/// Cross-check of the covered count: enumerates the distinct cyclic
/// subgroups of the unit group and sums phi(|H|) over those meeting the
/// window (the generators of H are exactly the covered units with
/// subgroup H).
pub fn covered_count_via_subgroups(d: u64) -> u64 {
    assert!(d >= 2);
    let window: BTreeSet<u64> = remainder_window(d).into_iter().collect();
    let mut subgroups: BTreeSet<Vec<u64>> = BTreeSet::new();
    for r in 1..d {
        if gcd(r, d) != 1 {
            continue;
        }
        let mut elems = BTreeSet::new();
        let mut x = r;
        loop {
            elems.insert(x);
            if x == 1 {
                break;
            }
            x = mul_mod(x, r, d);
        }
        subgroups.insert(elems.into_iter().collect());
    }
    subgroups
        .iter()
        .filter(|h| h.iter().any(|s| window.contains(s)))
        .map(|h| euler_phi(h.len() as u64))
        .sum()
}

/// Orders and generator tallies of the distinct cyclic subgroups meeting
/// the window, ascending by order. Used for reporting.
pub fn window_subgroup_tally(d: u64) -> Vec<(u64, u64)> {
    assert!(d >= 2);
    let window: BTreeSet<u64> = remainder_window(d).into_iter().collect();
    let mut subgroups: BTreeSet<Vec<u64>> = BTreeSet::new();
    for r in 1..d {
        if gcd(r, d) != 1 {
            continue;
        }
        let mut elems = BTreeSet::new();
        let mut x = r;
        loop {
            elems.insert(x);
            if x == 1 {
                break;
            }
            x = mul_mod(x, r, d);
        }
        subgroups.insert(elems.into_iter().collect());
    }
    let mut tally: Vec<(u64, u64)> = subgroups
        .iter()
        .filter(|h| h.iter().any(|s| window.contains(s)))
        .map(|h| (h.len() as u64, euler_phi(h.len() as u64)))
        .collect();
    tally.sort_unstable();
    tally
}

/// A prime h with 2h + 1 also prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SophieGermainPair {
    pub h: u64,
    pub safe: u64,
}

/// All Sophie Germain primes h <= limit, ascending.
pub fn sophie_germain_primes(limit: u64) -> Vec<SophieGermainPair> {
    if limit < 2 {
        return Vec::new();
    }
    let sieve = prime_sieve(2 * limit + 1);
    (2..=limit)
        .filter(|&h| sieve[h as usize] && sieve[(2 * h + 1) as usize])
        .map(|h| SophieGermainPair { h, safe: 2 * h + 1 })
        .collect()
}

/// Verdicts for the density argument at a Sophie Germain degree d = 2h+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermainReport {
    pub h: u64,
    pub d: u64,
    /// The argument assumes h > 5; for h = 5 the window contains only
    /// squares and the obligations below record which parts still hold.
    pub hypothesis_h_gt_5: bool,
    /// Every unit order lies in {1, 2, h, 2h}.
    pub orders_ok: bool,
    /// A quadratic residue inside the window, when one exists.
    pub window_square: Option<u64>,
    /// A non-residue inside the window, when one exists.
    pub window_nonsquare: Option<u64>,
    pub covered_count: u64,
    /// covered_count == 2h - 2 (all units except 1 and -1).
    pub covered_matches_formula: bool,
    /// The bound 1 - 1/h as an exact fraction (h-1)/h.
    pub density_bound: (u64, u64),
}

/// Checks the obligations behind the density bound 1 - 1/h for a Sophie
/// Germain prime h >= 5 with d = 2h + 1.
pub fn sophie_germain_density_check(h: u64) -> Result<GermainReport> {
    if h < 5 {
        return Err(Error::OutOfRange {
            what: "Sophie Germain h",
            value: h,
        });
    }
    if !is_prime(h) || !is_prime(2 * h + 1) {
        return Err(Error::NotSophieGermain(h));
    }
    let d = 2 * h + 1;
    let allowed = [1, 2, h, 2 * h];
    let mut orders_ok = true;
    for r in 1..d {
        let ord = element_order(r, d).expect("prime modulus: every residue is a unit");
        if !allowed.contains(&ord) {
            orders_ok = false;
            break;
        }
    }
    let window = remainder_window(d);
    let window_square = window.iter().copied().find(|&s| is_quadratic_residue(s, d));
    let window_nonsquare = window
        .iter()
        .copied()
        .find(|&s| !is_quadratic_residue(s, d));
    let report = covered_remainders(d);
    Ok(GermainReport {
        h,
        d,
        hypothesis_h_gt_5: h > 5,
        orders_ok,
        window_square,
        window_nonsquare,
        covered_count: report.covered_count,
        covered_matches_formula: report.covered_count == 2 * h - 2,
        density_bound: (h - 1, h),
    })
}

/// Existence of a quadratic residue inside the remainder window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareInWindow {
    pub exists: bool,
    pub witness: Option<u64>,
    /// For d > 75: the integer n with 3n^2 > d minimal, and whether n^2
    /// lands in the window (the interval-length argument says it must for
    /// Sophie Germain degrees).
    pub construction: Option<(u64, bool)>,
}

/// Is some element of the window a square of a unit mod d? The witness is
/// the constructed n^2 when d > 75 and the construction lands, otherwise
/// the smallest square in the window.
pub fn square_in_window(d: u64) -> SquareInWindow {
    assert!(d >= 2);
    let window = remainder_window(d);
    let squares: BTreeSet<u64> = (1..d)
        .filter(|&x| gcd(x, d) == 1)
        .map(|x| mul_mod(x, x, d))
        .collect();
    let smallest = window.iter().copied().find(|s| squares.contains(s));
    let construction = if d > 75 {
        let mut n = 1u64;
        while 3 * n * n <= d {
            n += 1;
        }
        Some((n, 2 * n * n < d))
    } else {
        None
    };
    let witness = match construction {
        Some((n, true)) if gcd(n, d) == 1 => Some(n * n),
        _ => smallest,
    };
    SquareInWindow {
        exists: smallest.is_some(),
        witness,
        construction,
    }
}

/// Degrees d in [5, limit] whose window contains no remainder coprime
/// to d.
pub fn exceptional_degrees(limit: u64) -> Vec<u64> {
    assert!(limit >= 5);
    (5..=limit)
        .filter(|&d| !remainder_window(d).iter().any(|&s| gcd(s, d) == 1))
        .collect()
}

/// Simple sieve of Eratosthenes: `sieve[n]` is true iff n is prime.
pub fn prime_sieve(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut q = 2usize;
    while q * q <= n {
        if sieve[q] {
            let mut m = q * q;
            while m <= n {
                sieve[m] = false;
                m += q;
            }
        }
        q += 1;
    }
    sieve
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCount {
    pub residue: u64,
    pub primes: u64,
    pub covered: bool,
}

/// Primes up to a limit bucketed by residue class mod d, with the covered
/// classes marked and the empirical fraction they carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeClassReport {
    pub d: u64,
    pub p_limit: u64,
    pub classes: Vec<ClassCount>,
    pub total_primes: u64,
    pub covered_primes: u64,
    /// covered_count / phi(d), the asymptotic share of primes in covered
    /// classes.
    pub theoretical: (u64, u64),
}

impl PrimeClassReport {
    pub fn empirical_fraction(&self) -> f64 {
        if self.total_primes == 0 {
            return 0.0;
        }
        self.covered_primes as f64 / self.total_primes as f64
    }

    pub fn theoretical_f64(&self) -> f64 {
        self.theoretical.0 as f64 / self.theoretical.1 as f64
    }
}

pub fn prime_class_report(d: u64, p_limit: u64) -> PrimeClassReport {
    assert!(d >= 2);
    let report = covered_remainders(d);
    let covered: BTreeSet<u64> = report.covered.iter().copied().collect();
    let sieve = prime_sieve(p_limit);
    let mut counts = vec![0u64; d as usize];
    let mut total = 0u64;
    for (n, &is_p) in sieve.iter().enumerate() {
        if is_p {
            counts[n % d as usize] += 1;
            total += 1;
        }
    }
    let classes: Vec<ClassCount> = (0..d)
        .map(|r| ClassCount {
            residue: r,
            primes: counts[r as usize],
            covered: covered.contains(&r),
        })
        .collect();
    let covered_primes = classes.iter().filter(|c| c.covered).map(|c| c.primes).sum();
    PrimeClassReport {
        d,
        p_limit,
        classes,
        total_primes: total,
        covered_primes,
        theoretical: (report.covered_count, report.phi_d),
    }
}

//! Coprime lattice counting behind the cubic growth constants: Möbius and
//! totient sieves, closed-form diagonal counts for the square and
//! triangular grids, the right-isosceles region bookkeeping, and exact
//! interval arithmetic against π² for the limit constants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("({0}, {1}) must satisfy i > j >= 1 with i + j odd")]
    ConditionViolated(u64, u64),
    #[error("shift scan for ({0}, {1}) left its proven window")]
    BoundViolation(u64, u64),
    #[error("no growth constant is implemented for {0:?}")]
    UnknownCase(String),
}

/// Möbius function values from a linear sieve.
pub struct MobiusTable {
    mu: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self, k: usize) -> i8 {
        self.mu[k]
    }
}

pub fn mobius_sieve(limit: usize) -> MobiusTable {
    assert!(limit >= 1);
    let mut mu = vec![0i8; limit + 1];
    mu[1] = 1;
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for x in 2..=limit {
        if !composite[x] {
            primes.push(x);
            mu[x] = -1;
        }
        for &p in &primes {
            let px = match p.checked_mul(x) {
                Some(px) if px <= limit => px,
                _ => break,
            };
            composite[px] = true;
            if x % p == 0 {
                mu[px] = 0;
                break;
            }
            mu[px] = -mu[x];
        }
    }
    MobiusTable { mu }
}

/// Euler totients φ(1..=limit) from the same linear sieve scheme.
pub fn phi_sieve(limit: usize) -> Vec<u64> {
    assert!(limit >= 1);
    let mut phi = vec![0u64; limit + 1];
    phi[1] = 1;
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for x in 2..=limit {
        if !composite[x] {
            primes.push(x);
            phi[x] = x as u64 - 1;
        }
        for &p in &primes {
            let px = match p.checked_mul(x) {
                Some(px) if px <= limit => px,
                _ => break,
            };
            composite[px] = true;
            if x % p == 0 {
                phi[px] = phi[x] * p as u64;
                break;
            }
            phi[px] = phi[x] * (p as u64 - 1);
        }
    }
    phi
}

/// Bounded lattice regions whose coprime points we count.
#[derive(Clone, Copy, Debug)]
pub enum RegionSpec {
    /// {(i,j) ≥ (1,1): i + j ≤ n}, optionally together with the two coprime
    /// axis points (1,0) and (0,1).
    Simplex { n: u64, include_axes: bool },
    /// Strict interior of the triangle cut by the x-axis, the diagonal
    /// y = x, and the line x = −y/2 + n/2: j ≥ 1, i > j, 2i + j < n.
    IsoscelesInterior { n: u64 },
}

fn simplex_pairs(m: u64) -> i128 {
    // i, j ≥ 1 with i + j ≤ m.
    if m < 2 {
        0
    } else {
        (m as i128) * (m as i128 - 1) / 2
    }
}

fn isosceles_pairs(m: u64) -> i128 {
    // i > j ≥ 1 with 2i + j ≤ m.
    let mut total = 0i128;
    let mut i = 2u64;
    while 2 * i + 1 <= m {
        total += (i - 1).min(m - 2 * i) as i128;
        i += 1;
    }
    total
}

/// Exact coprime count by Möbius inversion over scaled copies of the
/// region. The table must cover every divisor the region can use.
pub fn coprime_count(table: &MobiusTable, region: &RegionSpec) -> u64 {
    let (bound, scaled): (u64, fn(u64) -> i128) = match region {
        RegionSpec::Simplex { n, .. } => (*n, simplex_pairs),
        RegionSpec::IsoscelesInterior { n } => (n.saturating_sub(1), isosceles_pairs),
    };
    assert!(
        table.limit() as u64 >= bound.max(1),
        "sieve too small for the region"
    );
    let mut total = 0i128;
    for d in 1..=bound {
        let m = table.mu(d as usize);
        if m != 0 {
            total += m as i128 * scaled(bound / d);
        }
    }
    if let RegionSpec::Simplex {
        n: n @ 1..,
        include_axes: true,
    } = region
    {
        let _ = n;
        total += 2;
    }
    debug_assert!(total >= 0);
    total as u64
}

/// The same count by a plain gcd double loop; the independent route the
/// Möbius sums are validated against.
pub fn coprime_count_direct(region: &RegionSpec) -> u64 {
    let mut total = 0u64;
    match *region {
        RegionSpec::Simplex { n, include_axes } => {
            if include_axes && n >= 1 {
                total += 2;
            }
            for i in 1..n {
                for j in 1..=(n - i) {
                    if i.gcd(&j) == 1 {
                        total += 1;
                    }
                }
            }
        }
        RegionSpec::IsoscelesInterior { n } => {
            let mut i = 2u64;
            while 2 * i + 1 < n {
                for j in 1..i.min(n - 2 * i) {
                    if i.gcd(&j) == 1 {
                        total += 1;
                    }
                }
                i += 1;
            }
        }
    }
    total
}

/// Closed-form diagonal count for the square grid: 4 coprime points in the
/// simplex of size n+1, axes included. This is the asymptotic device; its
/// small-n values sit a bounded offset away from the exact enumerator.
pub fn square_nc_closed(n: u64) -> u64 {
    let table = mobius_sieve((n + 1) as usize);
    4 * coprime_count(
        &table,
        &RegionSpec::Simplex {
            n: n + 1,
            include_axes: true,
        },
    )
}

/// Triangular-grid analogue; constant on {2k, 2k+1} by construction.
pub fn equilateral_nc_closed(n: u64) -> u64 {
    let k = n / 2;
    let table = mobius_sieve((k + 1) as usize);
    3 * coprime_count(
        &table,
        &RegionSpec::Simplex {
            n: k + 1,
            include_axes: true,
        },
    )
}

/// Coprime points strictly inside the right-isosceles counting triangle.
pub fn isosceles_region_count(n: u64) -> u64 {
    assert!(n >= 1);
    let table = mobius_sieve(n.max(2) as usize);
    coprime_count(&table, &RegionSpec::IsoscelesInterior { n })
}

/// Right-isosceles closed form: twice the two-octant count, i.e. four
/// times the single-octant region count.
pub fn isosceles_nc_closed(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        4 * isosceles_region_count(n)
    }
}

fn condition_one(i: u64, j: u64) -> Result<u64, LatticeError> {
    if i > j && j >= 1 && (i + j) % 2 == 1 {
        Ok((i + j - 1) / 2)
    } else {
        Err(LatticeError::ConditionViolated(i, j))
    }
}

/// Combinatorial length of the grid diagonal from the origin to (i, j),
/// for i > j ≥ 1 with i + j = 2k + 1: the crossed grid lines number
/// 3k − 1 + ⌊(i−j)/2⌋, and links exceed crossings by one.
pub fn isosceles_link_length(i: u64, j: u64) -> Result<u64, LatticeError> {
    let k = condition_one(i, j)?;
    Ok(3 * k + (i - j) / 2)
}

/// Length after pulling the endpoint m steps left of a condition-(1)
/// point: a parity correction rides along because dashed diagonals of the
/// grid are crossed in pairs.
fn shifted_link_length(i: u64, j: u64, m: u64) -> Result<i64, LatticeError> {
    let k = condition_one(i, j)?;
    let n = 3 * k as i64;
    Ok(n + ((i - j) / 2) as i64 - 2 * m as i64 + (m % 2) as i64)
}

/// Smallest left shift m with l(i−m, j) ≤ n, where n = 3k. Scans the
/// shifted formula directly and cross-checks every bound the derivation
/// promises; a violation falsifies the transcription and is an error.
pub fn isosceles_m0(i: u64, j: u64) -> Result<u64, LatticeError> {
    let k = condition_one(i, j)?;
    let n = 3 * k as i64;
    let mut m0 = None;
    for m in 0..i {
        let len = shifted_link_length(i, j, m)?;
        // Both one-sided implications, checked at every scanned m:
        // 4m > i−j forces the length under n, 4m ≤ i−j−2 keeps it above.
        if 4 * m > i - j && len > n {
            return Err(LatticeError::BoundViolation(i, j));
        }
        if 4 * m + 2 <= i - j && len <= n {
            return Err(LatticeError::BoundViolation(i, j));
        }
        if len <= n {
            m0 = Some(m);
            break;
        }
    }
    let Some(m0) = m0 else {
        return Err(LatticeError::BoundViolation(i, j));
    };
    // Window (i−j)/4 − 1/2 ≤ m0 ≤ (i−j)/4 + 1, cleared of denominators.
    if 4 * m0 + 2 < i - j || 4 * m0 > i - j + 4 {
        return Err(LatticeError::BoundViolation(i, j));
    }
    // Distance to the ideal boundary: |i + j/2 − n/2 − m0| ≤ 5/4, doubled.
    let doubled = 2 * i as i64 + j as i64 - n - 2 * m0 as i64;
    if doubled.abs() > 2 {
        return Err(LatticeError::BoundViolation(i, j));
    }
    Ok(m0)
}

/// Closed rational interval, used to carry π² and the limit constants
/// without committing to floating point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RationalInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Bracketing partial sums of arctan(1/x): the series alternates with
/// strictly shrinking terms, so truncation is bounded by the next term.
fn atan_inv_interval(x: i64, terms: usize) -> RationalInterval {
    let xi = BigInt::from(x);
    let xx = &xi * &xi;
    let mut sum = BigRational::zero();
    let mut power = xi.clone();
    for k in 0..terms {
        let denom = BigInt::from(2 * k as i64 + 1) * &power;
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &xx;
    }
    let tail = BigRational::new(BigInt::one(), BigInt::from(2 * terms as i64 + 1) * &power);
    if terms % 2 == 0 {
        RationalInterval::new(sum.clone(), sum + tail)
    } else {
        RationalInterval::new(&sum - &tail, sum)
    }
}

/// π by Machin's formula, 16·arctan(1/5) − 4·arctan(1/239), sharp to well
/// under 10⁻⁶⁴.
pub fn pi_interval() -> RationalInterval {
    let four = BigRational::from_integer(BigInt::from(4));
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let a5 = atan_inv_interval(5, 50);
    let a239 = atan_inv_interval(239, 16);
    RationalInterval::new(
        &sixteen * &a5.lo - &four * &a239.hi,
        &sixteen * &a5.hi - &four * &a239.lo,
    )
}

pub fn pi_squared_interval() -> RationalInterval {
    let pi = pi_interval();
    assert!(pi.lo.is_positive());
    RationalInterval::new(&pi.lo * &pi.lo, &pi.hi * &pi.hi)
}

/// Tables whose cubic growth constant the closed forms reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitCase {
    Square,
    Equilateral,
    RightIsosceles,
}

impl LimitCase {
    pub const ALL: [LimitCase; 3] = [
        LimitCase::Square,
        LimitCase::Equilateral,
        LimitCase::RightIsosceles,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LimitCase::Square => "square",
            LimitCase::Equilateral => "equilateral",
            LimitCase::RightIsosceles => "right-isosceles",
        }
    }

    pub fn from_name(name: &str) -> Result<LimitCase, LatticeError> {
        LimitCase::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| LatticeError::UnknownCase(name.to_string()))
    }
}

/// The limit of p(n)/n³ for the case: q/π² with q = 4, 3/4, or 2/3.
pub fn growth_constant(case: LimitCase) -> RationalInterval {
    let q = match case {
        LimitCase::Square => BigRational::from_integer(BigInt::from(4)),
        LimitCase::Equilateral => BigRational::new(BigInt::from(3), BigInt::from(4)),
        LimitCase::RightIsosceles => BigRational::new(BigInt::from(2), BigInt::from(3)),
    };
    let pi2 = pi_squared_interval();
    RationalInterval::new(&q / &pi2.hi, &q / &pi2.lo)
}

/// Complexity from the closed forms at one n, compared with its cubic
/// leading term.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub n: u64,
    /// p(n) = Σ_{j<n} of the case's closed-form diagonal count.
    pub count: u64,
    /// Midpoint of constant·n³.
    pub prediction: f64,
    /// Worst-case relative deviation of count/n³ over the constant's
    /// interval; exact until the final rounding.
    pub rel_dev: f64,
}

fn closed_complexity(case: LimitCase, n: u64) -> u64 {
    match case {
        LimitCase::Square => {
            // Σ_{j<n} 4(2 + Φ(j+1)) with Φ the totient staircase from 2.
            let phi = phi_sieve(n as usize);
            let mut staircase = 0u64;
            let mut total = 8 * n;
            for top in 1..=n {
                if top >= 2 {
                    staircase += phi[top as usize];
                }
                total += 4 * staircase;
            }
            total
        }
        LimitCase::Equilateral => {
            let cap = (n.max(2) / 2 + 1) as usize;
            let phi = phi_sieve(cap);
            let staircase: Vec<u64> = {
                let mut acc = vec![0u64; cap + 1];
                for s in 2..=cap {
                    acc[s] = acc[s - 1] + phi[s];
                }
                acc
            };
            (0..n)
                .map(|j| 6 + 3 * staircase[(j / 2 + 1) as usize])
                .sum()
        }
        LimitCase::RightIsosceles => {
            // Bucket coprime pairs by w = 2i + j once, then double-prefix:
            // U(j) = Σ_{w<j} bucket[w] and p(n) = 4 Σ_{j<n} U(j).
            if n < 2 {
                return 0;
            }
            let wmax = (n - 2) as usize;
            let mut bucket = vec![0u64; wmax + 1];
            let mut i = 2u64;
            while 2 * i + 1 <= wmax as u64 {
                for j in 1..i.min(wmax as u64 - 2 * i + 1) {
                    if i.gcd(&j) == 1 {
                        bucket[(2 * i + j) as usize] += 1;
                    }
                }
                i += 1;
            }
            let mut region = 0u64; // U(j) as j sweeps upward
            let mut total = 0u64;
            for j in 0..n {
                if j >= 1 {
                    region += bucket.get((j - 1) as usize).copied().unwrap_or(0);
                }
                total += 4 * region;
            }
            total
        }
    }
}

pub fn estimate_limit(case: LimitCase, n: u64) -> AsymptoticReport {
    assert!(n >= 1);
    let count = closed_complexity(case, n);
    let constant = growth_constant(case);
    let cube = BigRational::from_integer(BigInt::from(n)).pow(3);
    let ratio = BigRational::from_integer(BigInt::from(count)) / &cube;
    let one = BigRational::one();
    let dev_lo = (&ratio / constant.lo() - &one).abs();
    let dev_hi = (&ratio / constant.hi() - &one).abs();
    AsymptoticReport {
        n,
        count,
        prediction: (constant.midpoint() * cube).to_f64().unwrap_or(f64::NAN),
        rel_dev: dev_lo.max(dev_hi).to_f64().unwrap_or(f64::NAN),
    }
}

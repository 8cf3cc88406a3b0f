//! Randomized comparison of the closed-form engine with the sequence oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::Prime;
use crate::error::Error;
use crate::limits::{compute_limit, level_residue, LimitReport, Method};
use crate::poly::IntPolynomial;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfcheckCase {
    pub index: usize,
    pub f: IntPolynomial,
    pub p: Prime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    Agree,
    /// some `Phi_(p^k)` divides `f`: the levels are eventually 0, so only the
    /// limit is compared and there is no non-p part
    Vanishing,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfcheckSummary {
    pub seed: u64,
    pub precision: u32,
    pub agreed: usize,
    pub vanishing: usize,
    pub failures: Vec<(SelfcheckCase, String)>,
}

impl SelfcheckSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` polynomials of degree 1 to 5 with coefficients in `[-50, 50]`,
/// paired with a prime from `PRIMES`. Depends only on the seed.
pub fn generate_cases(count: usize, seed: u64) -> Vec<SelfcheckCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let d = rng.gen_range(1..=5usize);
            let mut c: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-50..=50i64))).collect();
            while c[d].is_zero() {
                c[d] = BigInt::from(rng.gen_range(-50..=50i64));
            }
            let p = Prime::new(PRIMES[rng.gen_range(0..PRIMES.len())]).expect("prime");
            SelfcheckCase { index, f: IntPolynomial::new(c), p }
        })
        .collect()
}

/// Both engines at `precision` digits; also `limit = 0` exactly when `p | f(1)`.
pub fn check_case(case: &SelfcheckCase, precision: u32) -> CaseOutcome {
    let report = match compute_limit(&case.f, case.p, precision, Method::Both) {
        Ok(r) => r,
        Err(Error::VanishingTower { .. }) => return check_vanishing(case, precision),
        Err(e) => return CaseOutcome::Failed(e.to_string()),
    };
    match zero_criterion(case, &report) {
        Some(why) => CaseOutcome::Failed(why),
        None => CaseOutcome::Agree,
    }
}

fn zero_criterion(case: &SelfcheckCase, report: &LimitReport) -> Option<String> {
    let divides = case.f.evaluate_i64(1).mod_floor(&case.p.to_bigint()).is_zero();
    (divides != report.limit_is_zero()).then(|| format!("limit {} but p | f(1) is {divides}", report.limit))
}

fn check_vanishing(case: &SelfcheckCase, precision: u32) -> CaseOutcome {
    let report = match compute_limit(&case.f, case.p, precision, Method::Formula) {
        Ok(r) => r,
        Err(e) => return CaseOutcome::Failed(e.to_string()),
    };
    match level_residue(&case.f, case.p, precision, precision) {
        Ok(r) if r.is_zero() && report.limit_is_zero() => {}
        Ok(r) => return CaseOutcome::Failed(format!("limit {} but level {precision} is {r}", report.limit)),
        Err(e) => return CaseOutcome::Failed(e.to_string()),
    }
    match zero_criterion(case, &report) {
        Some(why) => CaseOutcome::Failed(why),
        None => CaseOutcome::Vanishing,
    }
}

pub fn run_selfcheck(cases: usize, seed: u64, precision: u32) -> SelfcheckSummary {
    let all = generate_cases(cases, seed);
    let outcomes: Vec<CaseOutcome> = all.par_iter().map(|c| check_case(c, precision)).collect();
    let mut summary = SelfcheckSummary { seed, precision, agreed: 0, vanishing: 0, failures: Vec::new() };
    for (case, outcome) in all.into_iter().zip(outcomes) {
        match outcome {
            CaseOutcome::Agree => summary.agreed += 1,
            CaseOutcome::Vanishing => summary.vanishing += 1,
            CaseOutcome::Failed(why) => summary.failures.push((case, why)),
        }
    }
    summary
}

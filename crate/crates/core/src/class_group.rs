//! Per-discriminant enumeration: all reduced forms, their partition into
//! reduction cycles, class numbers, and the çarks of a fixed trace.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bqf::{is_valid_discriminant, Cycle, Form};
use crate::error::{Error, Result};

/// Everything this module knows about one discriminant.
#[derive(Debug, Clone)]
pub struct DiscriminantReport {
    pub delta: BigInt,
    /// Complete sorted list of reduced forms of discriminant `delta`.
    pub reduced_forms: Vec<Form>,
    /// The reduction cycles partitioning `reduced_forms`, sorted by their
    /// canonical representatives.
    pub cycles: Vec<Cycle>,
    /// Number of cycles consisting of primitive forms.
    pub class_number: usize,
}

fn require_discriminant(delta: &BigInt) -> Result<()> {
    if is_valid_discriminant(delta) {
        Ok(())
    } else {
        Err(Error::InvalidDiscriminant(delta.clone()))
    }
}

fn divisors_of(n: &BigInt) -> Vec<BigInt> {
    if let Some(small) = n.to_u64() {
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d != small / d {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        return out;
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    loop {
        let dd = &d * &d;
        if dd > *n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let cof = n / &d;
            if cof != d {
                out.push(cof);
            }
        }
        d += 1;
    }
    out
}

/// All reduced forms of a given discriminant: for every admissible middle
/// coefficient `B`, factor `(B^2 - delta)/4 = A C` over the divisors and
/// keep the pairs passing the reduction test.
pub fn reduced_forms(delta: &BigInt) -> Result<Vec<Form>> {
    require_discriminant(delta)?;
    let mut out = Vec::new();
    let mut b = largest_admissible_b(delta);
    while b.is_positive() {
        let n = (delta - &b * &b) / BigInt::from(4); // = |A C|, positive
        for d in divisors_of(&n) {
            let c = -(&n / &d);
            for (a, c) in [(d.clone(), c.clone()), (-d, -c)] {
                let form = Form::new(a, b.clone(), c);
                if form.is_reduced().expect("valid discriminant") {
                    out.push(form);
                }
            }
        }
        b -= 2;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Same enumeration, with the `B` values split across `jobs` threads.
/// The report is sorted, so the output does not depend on the split.
pub fn reduced_forms_parallel(delta: &BigInt, jobs: usize) -> Result<Vec<Form>> {
    if jobs <= 1 {
        return reduced_forms(delta);
    }
    require_discriminant(delta)?;
    let mut b_values = Vec::new();
    let mut b = largest_admissible_b(delta);
    while b.is_positive() {
        b_values.push(b.clone());
        b -= 2;
    }

    let chunks: Vec<Vec<BigInt>> = (0..jobs)
        .map(|j| b_values.iter().skip(j).step_by(jobs).cloned().collect())
        .collect();
    let mut out: Vec<Form> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut part = Vec::new();
                    for b in chunk {
                        let n = (delta - &b * &b) / BigInt::from(4);
                        for d in divisors_of(&n) {
                            let c = -(&n / &d);
                            for (a, c) in [(d.clone(), c.clone()), (-d, -c)] {
                                let form = Form::new(a, b.clone(), c);
                                if form.is_reduced().expect("valid discriminant") {
                                    part.push(form);
                                }
                            }
                        }
                    }
                    part
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration threads do not panic"))
            .collect()
    });
    out.sort();
    out.dedup();
    Ok(out)
}

/// The largest B with `0 < B < sqrt(delta)` and `B` of the parity of
/// `delta`; middle coefficients of reduced forms step down from here by 2.
fn largest_admissible_b(delta: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let root = delta.sqrt();
    if root.mod_floor(&two) == delta.mod_floor(&two) {
        root
    } else {
        root - 1
    }
}

/// Partition the reduced forms of `delta` into reduction cycles and count
/// the primitive classes.
pub fn discriminant_report(delta: &BigInt) -> Result<DiscriminantReport> {
    discriminant_report_from(delta, reduced_forms(delta)?)
}

pub fn discriminant_report_parallel(delta: &BigInt, jobs: usize) -> Result<DiscriminantReport> {
    discriminant_report_from(delta, reduced_forms_parallel(delta, jobs)?)
}

fn discriminant_report_from(delta: &BigInt, forms: Vec<Form>) -> Result<DiscriminantReport> {
    let known: HashSet<Form> = forms.iter().cloned().collect();
    let mut seen: HashSet<Form> = HashSet::new();
    let mut cycles = Vec::new();
    for form in &forms {
        if seen.contains(form) {
            continue;
        }
        let cycle = form.cycle_unchecked();
        for member in cycle.members() {
            assert!(
                known.contains(member),
                "rho left the enumerated reduced forms at {member}"
            );
            assert!(seen.insert(member.clone()), "cycles must not overlap");
        }
        cycles.push(cycle);
    }
    assert_eq!(
        cycles.iter().map(Cycle::len).sum::<usize>(),
        forms.len(),
        "cycles must partition the reduced forms of {delta}"
    );
    cycles.sort_by(|x, y| x.representative().cmp(y.representative()));
    let class_number = cycles
        .iter()
        .filter(|c| c.representative().is_primitive())
        .count();
    Ok(DiscriminantReport {
        delta: delta.clone(),
        reduced_forms: forms,
        cycles,
        class_number,
    })
}

/// The number of primitive classes of discriminant `delta`.
pub fn class_number(delta: &BigInt) -> Result<usize> {
    Ok(discriminant_report(delta)?.class_number)
}

/// One factorization `tau^2 - 4 = delta * y^2` together with the canonical
/// representatives of the primitive classes of that discriminant.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub delta: BigInt,
    pub y: BigInt,
    pub representatives: Vec<Form>,
}

/// All çarks of absolute trace `tau`, grouped by the factorization
/// `tau^2 - 4 = delta * y^2` with `delta` a valid discriminant; sorted by
/// ascending `y`.
pub fn carks_of_trace(tau: &BigInt) -> Result<Vec<TraceEntry>> {
    carks_of_trace_parallel(tau, 1)
}

/// Same listing with the per-discriminant enumeration split over `jobs`
/// threads; the output is identical for any job count.
pub fn carks_of_trace_parallel(tau: &BigInt, jobs: usize) -> Result<Vec<TraceEntry>> {
    if tau < &BigInt::from(3) {
        return Err(Error::NotHyperbolic(tau.clone()));
    }
    let n = tau * tau - BigInt::from(4);
    let mut entries = Vec::new();
    let mut y = BigInt::from(1);
    loop {
        let yy = &y * &y;
        if yy > n {
            break;
        }
        if (&n % &yy).is_zero() {
            let delta = &n / &yy;
            if is_valid_discriminant(&delta) {
                let report = discriminant_report_parallel(&delta, jobs)?;
                let representatives = report
                    .cycles
                    .iter()
                    .filter(|c| c.representative().is_primitive())
                    .map(|c| c.representative().clone())
                    .collect();
                entries.push(TraceEntry {
                    delta,
                    y: y.clone(),
                    representatives,
                });
            }
        }
        y += 1;
    }
    Ok(entries)
}

//! End-to-end acceptance sweep over seeded instance pools. Each check prints
//! exactly one line; the process exits nonzero if any check fails.

use std::time::{Duration, Instant};

use exmat::bijection::build_bijection;
use exmat::counterexample::{limit_witness, max_admissible_k, verify_forced_prefix};
use exmat::exchange::{
    partition_exchange, serial_exchange_order, streaming_partition_exchange, symmetric_exchange,
};
use exmat::models::{random_instance, InstanceKind};
use exmat::oracle::{all_bases, bijection_search, check_axioms, exchange_search};
use exmat::{Basis, ElementSet, MatroidView};

const KINDS: [InstanceKind; 3] = [
    InstanceKind::Uniform,
    InstanceKind::Graphic,
    InstanceKind::Gf2,
];

fn pool(count: usize) -> Vec<MatroidView> {
    (0..count)
        .map(|i| {
            let kind = KINDS[i % 3];
            let size = 4 + i % 5;
            random_instance(kind, size, i as u64).expect("generator sizes in range")
        })
        .collect()
}

/// First `cap` ordered basis pairs, in enumeration order.
fn basis_pairs(m: &MatroidView, cap: usize) -> Vec<(Basis, Basis)> {
    let bases = all_bases(m);
    let mut pairs = Vec::new();
    'outer: for b0 in &bases {
        for b1 in &bases {
            if pairs.len() == cap {
                break 'outer;
            }
            pairs.push((
                Basis::certify(m, b0.clone()).expect("enumerated basis"),
                Basis::certify(m, b1.clone()).expect("enumerated basis"),
            ));
        }
    }
    pairs
}

fn first_last_pair(m: &MatroidView) -> Option<(Basis, Basis)> {
    let bases = all_bases(m);
    let first = bases.first()?.clone();
    let last = bases.last()?.clone();
    Some((
        Basis::certify(m, first).expect("enumerated basis"),
        Basis::certify(m, last).expect("enumerated basis"),
    ))
}

/// All ordered partitions of `set` into at most `max_classes` nonempty
/// classes, via surjective class-index assignments.
fn ordered_partitions(set: &ElementSet, max_classes: usize) -> Vec<Vec<ElementSet>> {
    let elements: Vec<_> = set.iter().cloned().collect();
    let n = elements.len();
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..=max_classes.min(n) {
        let mut assignment = vec![0usize; n];
        loop {
            let mut classes = vec![ElementSet::new(); k];
            for (e, &c) in elements.iter().zip(&assignment) {
                classes[c].insert(e.clone());
            }
            if classes.iter().all(|c| !c.is_empty()) {
                out.push(classes);
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < k {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    out
}

struct Check {
    passed: bool,
    detail: String,
}

fn report(name: &str, check: Check) -> bool {
    let verdict = if check.passed { "PASS" } else { "FAIL" };
    println!("[{verdict}] {name}: {}", check.detail);
    check.passed
}

fn axiom_suite(instances: &[MatroidView]) -> Check {
    let started = Instant::now();
    let failures = instances
        .iter()
        .filter(|m| !check_axioms(m).passed())
        .count();
    let elapsed = started.elapsed();
    Check {
        passed: failures == 0 && elapsed < Duration::from_secs(60),
        detail: format!(
            "{}/{} seeded instances satisfy the axioms in {:.1?}",
            instances.len() - failures,
            instances.len(),
            elapsed
        ),
    }
}

fn symmetric_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for m in instances {
        for (b0, b1) in basis_pairs(m, 20) {
            let cap = b0.elements().len().min(3);
            for x in b0.elements().subsets_up_to(cap) {
                checks += 1;
                let ok = symmetric_exchange(m, &b0, &b1, &x)
                    .and_then(|cert| {
                        cert.validate(m, b0.elements(), b1.elements())?;
                        let solutions =
                            exchange_search(m, b0.elements(), b1.elements(), &x)?;
                        Ok(solutions.contains(&cert.y))
                    })
                    .unwrap_or(false);
                if !ok {
                    failures += 1;
                }
            }
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!(
            "{checks} (basis pair, X) exchanges validated against the search oracle, {failures} failures"
        ),
    }
}

fn partition_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for m in instances {
        let Some((first, last)) = first_last_pair(m) else {
            continue;
        };
        if first.elements().len() > 5 {
            continue;
        }
        for (b0, b1) in [(&first, &last), (&last, &first)] {
            for classes in ordered_partitions(b0.elements(), 4) {
                checks += 1;
                // partition_exchange re-checks every per-index and tail set
                // with is_basis before returning.
                if partition_exchange(m, b0, b1, &classes).is_err() {
                    failures += 1;
                }
            }
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!(
            "{checks} ordered partitions exchanged with per-index and tail bases intact, {failures} failures"
        ),
    }
}

fn streaming_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for (i, m) in instances.iter().take(100).enumerate() {
        let Some((b0, b1)) = first_last_pair(m) else {
            continue;
        };
        // Round-robin split into 1..=3 classes, varying with the seed index.
        let n_classes = 1 + i % 3;
        let mut classes = vec![ElementSet::new(); n_classes];
        for (j, e) in b0.elements().iter().enumerate() {
            classes[j % n_classes].insert(e.clone());
        }
        let classes: Vec<ElementSet> =
            classes.into_iter().filter(|c| !c.is_empty()).collect();
        checks += 1;
        let batch = partition_exchange(m, &b0, &b1, &classes);
        let streamed: Result<Vec<_>, _> =
            streaming_partition_exchange(m, &b0, &b1, classes.clone()).collect();
        match (batch, streamed) {
            (Ok(plan), Ok(pairs)) if plan.pairs == pairs => {}
            _ => failures += 1,
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!("{checks} streamed plans identical to batch plans, {failures} mismatches"),
    }
}

fn serial_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for m in instances {
        let Some((b0, b1)) = first_last_pair(m) else {
            continue;
        };
        checks += 1;
        // serial_exchange_order validates both families for every position.
        let ok = serial_exchange_order(m, &b0, &b1)
            .and_then(|order| order.validate(m, b0.elements(), b1.elements()))
            .is_ok();
        if !ok {
            failures += 1;
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!(
            "{checks} serial orders with all single-swap and tail bases verified, {failures} failures"
        ),
    }
}

fn bijection_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for m in instances {
        let Some((b0, b1)) = first_last_pair(m) else {
            continue;
        };
        let rank = b0.elements().len();
        if rank > 5 || m.ground().len() > 10 {
            continue;
        }
        checks += 1;
        let ok = (|| -> exmat::Result<bool> {
            let f = build_bijection(m, &b0, &b1)?;
            let pairs = f.enumerate_graph(rank)?;
            let count_ok = pairs.len() == 1usize << rank;
            let mut certs_ok = true;
            for (input, image) in &pairs {
                let exchanged = b0.elements().difference(input).union(image);
                if input.len() != image.len() || !m.is_basis(&exchanged)? {
                    certs_ok = false;
                }
            }
            let mut search_ok = true;
            for k in 0..=rank.min(2) {
                if !bijection_search(m, b0.elements(), b1.elements(), k)? {
                    search_ok = false;
                }
            }
            Ok(count_ok && certs_ok && search_ok)
        })()
        .unwrap_or(false);
        if !ok {
            failures += 1;
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!(
            "{checks} bijections enumerated with full certificate and search confirmation, {failures} failures"
        ),
    }
}

fn counterexample_suite() -> Check {
    let mut failures = Vec::new();
    for n in [8usize, 12, 16, 20] {
        let k = max_admissible_k(n);
        match verify_forced_prefix(n, k) {
            Ok(report) if report.holds && !report.vacuous && report.candidate_count >= 1 => {}
            _ => failures.push(format!("forced prefix n={n}")),
        }
    }
    for n in 5..=20usize {
        match limit_witness(n) {
            Ok(components) if components.len() == 2 => {}
            _ => failures.push(format!("limit witness n={n}")),
        }
    }
    Check {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "forced prefixes hold non-vacuously at maximal k for n in {8,12,16,20}; \
             limit witness splits in two for n in 5..=20"
                .into()
        } else {
            failures.join("; ")
        },
    }
}

fn equibase_suite(instances: &[MatroidView]) -> Check {
    let mut checks = 0usize;
    let mut failures = 0usize;
    for m in instances {
        let bases = all_bases(m);
        for b0 in &bases {
            for b1 in &bases {
                checks += 1;
                if b0.difference(b1).len() != b1.difference(b0).len() {
                    failures += 1;
                }
            }
        }
    }
    Check {
        passed: failures == 0 && checks > 0,
        detail: format!(
            "{checks} basis pairs with equal-size differences, {failures} violations"
        ),
    }
}

fn main() {
    let started = Instant::now();
    let instances = pool(200);
    let mut all_passed = true;
    let mut run = |name: &str, check: Check| {
        if !report(name, check) {
            all_passed = false;
        }
    };
    run("axiom suite", axiom_suite(&instances));
    run("symmetric exchange", symmetric_suite(&instances));
    run("partition exchange", partition_suite(&instances));
    run("streaming equals batch", streaming_suite(&instances));
    run("serial order", serial_suite(&instances));
    run("subset bijection", bijection_suite(&instances));
    run("counterexample", counterexample_suite());
    run("equibase invariant", equibase_suite(&instances));
    let elapsed = started.elapsed();
    run(
        "runtime budget",
        Check {
            passed: elapsed < Duration::from_secs(300),
            detail: format!("acceptance sweep finished in {elapsed:.1?}"),
        },
    );
    if !all_passed {
        std::process::exit(1);
    }
}

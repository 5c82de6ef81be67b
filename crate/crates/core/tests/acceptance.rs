//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use peterson::maps::{d_b, gamma_sd, gamma_t, phi_fl, phi_fl_inv, phi_gr, psi_pc, AffIndex, FlIndex, GrIndex};
use peterson::oracle::{
    classical_product_fl, quantum_lr_gr, quantum_product_fl, quantum_product_gr, quantum_product_gr_pieri, FlTable,
    GrTable,
};
use peterson::perms::{all_permutations, perm, w0_p_prime, DegreeVector, Permutation};
use peterson::shapes::{part, Partition, RectContext};
use peterson::verify::{
    bits_suite, grassmann_suite, lift_suite, multiplicity_suite, pc_numeric_suite, pentagon_suite, reduction_suite,
    rim_hook_suite, sd_numeric_suite, split_suite, t_numeric_suite, window_suite, Report,
};

type Criterion = (&'static str, fn() -> Outcome);
type Section = (&'static str, Box<dyn Fn() -> Report>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(report: &Report, limit: Duration, elapsed: Duration) -> Outcome {
    let ok = report.passed() && elapsed <= limit;
    let mut detail = format!("{} checks, {} failures", report.checked, report.failures.len());
    if let Some(first) = report.failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    if elapsed > limit {
        detail.push_str(&format!("; over the {:?} limit", limit));
    }
    Outcome { ok, detail }
}

fn print_failure(msg: &str) {
    eprintln!("  failure: {msg}");
}

fn running_example() -> GrIndex {
    let ctx = RectContext::new(3, 2).unwrap();
    GrIndex::new(part(&[2, 2, 1]), part(&[1, 1]), part(&[2]), 1, ctx).unwrap()
}

fn criterion_1() -> Outcome {
    let ctx = RectContext::new(3, 2).unwrap();
    let mut expected = GrTable::new();
    expected.add((part(&[1, 1]), 1), 1);
    expected.add((part(&[2]), 1), 1);
    let rim = quantum_product_gr(&part(&[2, 2, 1]), &part(&[1, 1]), ctx).unwrap();
    let pieri = quantum_product_gr_pieri(&part(&[2, 2, 1]), &part(&[1, 1]), ctx).unwrap();
    Outcome {
        ok: rim == expected && pieri == expected,
        detail: format!("rim hook {:?}, Pieri {:?}", rim.iter().collect::<Vec<_>>(), pieri.iter().collect::<Vec<_>>()),
    }
}

fn criterion_2() -> Outcome {
    let x = running_example();
    let sd = gamma_sd(&x).unwrap();
    let sd_expected = GrIndex::new(part(&[1]), part(&[2, 1, 1]), Partition::empty(), 1, x.ctx).unwrap();
    let pc = psi_pc(&sd).unwrap();
    let pc_expected = FlIndex::new(
        perm(&[1, 2, 4, 3, 5]),
        perm(&[2, 3, 5, 1, 4]),
        perm(&[2, 3, 1, 5, 4]),
        DegreeVector::new(vec![0, 0, 1, 0]),
    )
    .unwrap();
    let t = gamma_t(&pc).unwrap();
    let t_expected = FlIndex::new(
        perm(&[1, 3, 2, 4, 5]),
        perm(&[2, 5, 1, 3, 4]),
        perm(&[2, 1, 5, 3, 4]),
        DegreeVector::new(vec![0, 1, 0, 0]),
    )
    .unwrap();
    let gr = phi_gr(&x).unwrap();
    let gr_expected = AffIndex::new(part(&[2, 2, 1]), part(&[1, 1]), part(&[2, 2, 1, 1, 1]), 4).unwrap();
    let fl = phi_fl(&gr, x.ctx).unwrap();
    let inv = phi_fl_inv(&t_expected).unwrap();
    let coefficients = [
        quantum_lr_gr(&x),
        quantum_lr_gr(&sd),
        quantum_product_fl(&pc.u, &pc.v).unwrap().get(&(pc.w.clone(), pc.d.clone())),
        quantum_product_fl(&t.u, &t.v).unwrap().get(&(t.w.clone(), t.d.clone())),
    ];
    let ok = sd == sd_expected
        && pc == pc_expected
        && t == t_expected
        && gr == gr_expected
        && fl == t_expected
        && inv == gr_expected
        && coefficients.iter().all(|&c| c == 1);
    Outcome { ok, detail: format!("tuples reproduced; coefficients {coefficients:?}") }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut report = Report::default();
    for n in 2..=7 {
        report.merge(pentagon_suite(n, &print_failure));
    }
    outcome(&report, Duration::from_secs(60), start.elapsed())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut report = Report::default();
    for n in 3..=5 {
        report.merge(pc_numeric_suite(n, &print_failure));
    }
    outcome(&report, Duration::from_secs(300), start.elapsed())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut report = Report::default();
    for n in 2..=6 {
        report.merge(sd_numeric_suite(n, &print_failure));
    }
    outcome(&report, Duration::from_secs(60), start.elapsed())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut report = Report::default();
    for n in 2..=4 {
        report.merge(t_numeric_suite(n, &print_failure));
    }
    outcome(&report, Duration::from_secs(60), start.elapsed())
}

fn criterion_7() -> Outcome {
    let rows: [(Vec<i64>, Vec<usize>); 5] = [
        (vec![0, 0, 0, 0, 0, 0, 0, 0], vec![4, 3, 2, 1, 9, 8, 7, 6, 5]),
        (vec![0, 0, 0, 1, 0, 0, 0, 0], vec![3, 2, 1, 4, 5, 9, 8, 7, 6]),
        (vec![0, 0, 1, 2, 1, 0, 0, 0], vec![2, 1, 4, 3, 6, 5, 9, 8, 7]),
        (vec![0, 1, 2, 3, 2, 1, 0, 0], vec![1, 4, 3, 2, 7, 6, 5, 9, 8]),
        // printed as [|4321|9765|9] in the source table, which repeats 9
        (vec![1, 2, 3, 4, 3, 2, 1, 0], vec![4, 3, 2, 1, 8, 7, 6, 5, 9]),
    ];
    let mut bad = Vec::new();
    for (d, (degree, window)) in rows.iter().enumerate() {
        let w = w0_p_prime(4, 9, d).unwrap();
        let db = d_b(4, 9, d);
        if w != Permutation::new(window.clone()).unwrap() || db.entries() != degree.as_slice() {
            bad.push(format!("d={d}: [{w}] {db:?}"));
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "5 rows".into() } else { bad.join("; ") } }
}

fn criterion_8() -> Outcome {
    let limit = Duration::from_secs(30);
    let suites: Vec<Section> = vec![
        ("bits n<=12", Box::new(|| bits_suite(12, &print_failure))),
        ("rim hooks n<=12", Box::new(|| rim_hook_suite(12, &print_failure))),
        ("eta/rho splits n<=9", Box::new(|| split_suite(9, &print_failure))),
        ("grassmann + two descents n<=7", Box::new(|| grassmann_suite(7, &print_failure))),
        ("k-rectangle reduction n<=7", Box::new(|| reduction_suite(7, &print_failure))),
        ("multiplicities n<=6", Box::new(|| multiplicity_suite(6, &print_failure))),
        ("windows n<=9", Box::new(|| window_suite(9, &print_failure))),
        ("lift n<=12", Box::new(|| lift_suite(12, &print_failure))),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, run) in suites {
        let start = Instant::now();
        let report = run();
        let o = outcome(&report, limit, start.elapsed());
        ok &= o.ok;
        parts.push(format!("{name}: {}", o.detail));
    }
    Outcome { ok, detail: parts.join(" | ") }
}

fn criterion_9() -> Outcome {
    let perms = all_permutations(4);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for u in &perms {
        for v in &perms {
            pairs += 1;
            let uv = quantum_product_fl(u, v).unwrap();
            let vu = quantum_product_fl(v, u).unwrap();
            if uv != vu {
                failures.push(format!("commutativity [{u}]*[{v}]"));
            }
            let graded = uv
                .iter()
                .all(|((w, d), &c)| c > 0 && (u.length() + v.length()) as i64 == w.length() as i64 + 2 * d.total());
            if !graded {
                failures.push(format!("grading or sign [{u}]*[{v}]"));
            }
            let classical = classical_product_fl(u, v).unwrap();
            if uv.filtered(|(_, d)| d.is_zero()) != classical {
                failures.push(format!("q=0 [{u}]*[{v}]"));
            }
        }
    }
    // Fl_2 is Gr(1,2)
    let s1 = perm(&[2, 1]);
    let fl2 = quantum_product_fl(&s1, &s1).unwrap();
    let gr12 = quantum_product_gr(&part(&[1]), &part(&[1]), RectContext::new(1, 1).unwrap()).unwrap();
    let fl2_expected = FlTable::singleton((Permutation::identity(2), DegreeVector::new(vec![1])), 1);
    if fl2 != fl2_expected || gr12.get(&(Partition::empty(), 1)) != 1 || gr12.len() != 1 {
        failures.push("Fl2 vs Gr(1,2)".into());
    }
    Outcome {
        ok: failures.is_empty(),
        detail: format!("{pairs} pairs in S4, {} failures {:?}", failures.len(), failures.first()),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 running-example product (rim hook and Pieri)", criterion_1),
        ("2 running-example chain", criterion_2),
        ("3 pentagon exhaustive n<=7", criterion_3),
        ("4 Psi_PC numeric n in {3,4,5}", criterion_4),
        ("5 Gamma_SD numeric n<=6 and t<0 vanishing", criterion_5),
        ("6 Gamma_T numeric n<=4", criterion_6),
        ("7 Gr(4,9) table", criterion_7),
        ("8 property suites", criterion_8),
        ("9 flag oracle self-checks", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("[{status}] criterion {name} ({:.2?}): {}", start.elapsed(), o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}

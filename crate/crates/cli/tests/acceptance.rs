//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). All comparisons are exact; there are
//! no tolerances anywhere.

use std::process::Command;
use std::time::Instant;

use qrr_core::crystal::{calibrate_convention, verify_crystal_theorem};
use qrr_core::identity::{
    certificate_check, certificate_check_with, character_chain_check, chu_vandermonde_check,
    euler_checks, f_series, fn_recurrence_check, g_recurrence_check, op_a, op_b, op_c,
    verify_fdiff, verify_fincor, verify_gdiff, warnaar_fn_check, LinForm,
};
use qrr_core::partitions::{
    enum_sk, enum_strict, rhs_theorem, verify_exponent_telescoping, verify_lea, verify_lec,
    verify_prop_leb, verify_theorem2,
};
use qrr_core::series::QLaurent;

fn line(name: &str, ok: bool, started: Instant) {
    println!(
        "[{}] {} ({} ms)",
        if ok { "PASS" } else { "FAIL" },
        name,
        started.elapsed().as_millis()
    );
    assert!(ok, "{} failed", name);
}

/// All tuples of the given length with entries in 0..=cap.
fn tuples(len: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=cap).map(move |v| {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2
                })
            })
            .collect();
    }
    out
}

#[test]
fn criterion_1_theorem2() {
    let started = Instant::now();
    let mut ok = true;
    for k in 1..=4usize {
        let r = verify_theorem2(k, 40);
        ok &= r.passed();
        if !r.passed() {
            eprintln!("theorem2 k={} witness {:?}", k, r.witness);
        }
    }
    let r = verify_theorem2(1, 100);
    ok &= r.passed();
    // Witness spot values from the brute-force filter.
    let s2 = enum_sk(2, 2);
    ok &= s2.iter().filter(|b| b.size() == 1).count() == 1;
    ok &= s2.iter().filter(|b| b.size() == 2).count() == 2;
    line("criterion 1: theorem2 k=1..4 at N=40, k=1 at N=100", ok, started);
}

#[test]
fn criterion_2_crystal_theorem() {
    let started = Instant::now();
    let calibration = calibrate_convention(12).expect("calibration finds a convention");
    let mut ok = !calibration.qualifiers.is_empty();
    for (k, max_size) in [(1usize, 14u64), (2, 12), (3, 12)] {
        let r = verify_crystal_theorem(k, max_size, &calibration.chosen);
        ok &= r.passed();
        if !r.passed() {
            eprintln!("crystal k={} witness {:?}", k, r.witness);
        }
    }
    line(
        "criterion 2: crystal component = Kleshchev set (k=1@14, k=2@12, k=3@12)",
        ok,
        started,
    );
}

#[test]
fn criterion_3_partition_lemmas() {
    let started = Instant::now();
    let mut ok = true;
    for n in 0..=12u32 {
        for m in 0..=n {
            ok &= verify_lec(n, m, (m * (n - m) + 1) as i64).passed();
        }
    }
    for i in 0..=8u32 {
        for j in 0..=8u32 {
            ok &= verify_lea(i, j, ((i + j) * j + 1) as i64).passed();
        }
    }
    for k in 1..=3usize {
        for t in tuples(k, 3) {
            ok &= verify_prop_leb(&t, 25).passed();
        }
    }
    for k in 1..=4usize {
        for t in tuples(k, 5) {
            ok &= verify_exponent_telescoping(&t).passed();
        }
    }
    line(
        "criterion 3: LEC (n<=12), LEA (i,j<=8), V/W + product formula, telescoping",
        ok,
        started,
    );
}

#[test]
fn criterion_4_certificate_and_recurrences() {
    let started = Instant::now();
    let mut ok = true;
    let r = certificate_check(12, 8, 8, 120);
    ok &= r.passed();
    if !r.passed() {
        eprintln!("certificate witness {:?}", r.witness);
    }
    ok &= fn_recurrence_check(0, 20, 120).passed();
    ok &= g_recurrence_check(-4, 24, 120).passed();
    // Mutation suite: one-symbol corruptions of each operator must produce
    // failing witnesses.
    let mut b = op_b();
    b.terms[1].qpow = LinForm::new(1, 0, 2, 1); // q^{2t+u} -> q^{2t+u+1}
    let r = certificate_check_with(&op_a(), &b, &op_c(), 6, 3, 3, 60);
    ok &= !r.passed() && r.witness.is_some();
    let mut a = op_a();
    a.terms[7].qpow = LinForm::new(-2, 2, 0, 0); // q^{2n-1} -> q^{2n-2}
    let r = certificate_check_with(&a, &op_b(), &op_c(), 6, 3, 3, 60);
    ok &= !r.passed() && r.witness.is_some();
    let mut c = op_c();
    c.terms[4].scalar = -1; // q^n N^3 -> -q^n N^3
    let r = certificate_check_with(&op_a(), &op_b(), &c, 6, 3, 3, 60);
    ok &= !r.passed() && r.witness.is_some();
    line(
        "criterion 4: certificate lattice n<=12, t,u in [-1,8] at N=120; recurrences; 3 mutations fail",
        ok,
        started,
    );
}

#[test]
fn criterion_5_q_difference_equations() {
    let started = Instant::now();
    let ok = verify_gdiff(50, 25).passed() && verify_fdiff(50, 25).passed();
    line("criterion 5: gdiff and fdiff at N=50, x_cap=25", ok, started);
}

#[test]
fn criterion_6_fincor_warnaar_chu() {
    let started = Instant::now();
    let mut ok = verify_fincor(50, 25).iter().all(|r| r.passed());
    ok &= warnaar_fn_check(20, 120).passed();
    for e in -10..=0i64 {
        for m in 0..=10i64 {
            ok &= chu_vandermonde_check(e, m, 60).passed();
        }
    }
    line(
        "criterion 6: fincor at N=50; warnaar n<=20; chu e in [-10,0], m<=10",
        ok,
        started,
    );
}

#[test]
fn criterion_7_final_identities() {
    let started = Instant::now();
    let mut ok = euler_checks(100, 20).iter().all(|r| r.passed());
    let rr = rr_checks_with_spots();
    ok &= rr;
    ok &= character_chain_check(40).iter().all(|r| r.passed());
    line(
        "criterion 7: euler at N=100; rr at N=200 with spot values; character chain at N=40",
        ok,
        started,
    );
}

fn rr_checks_with_spots() -> bool {
    let reports = qrr_core::identity::rr_checks(200);
    let mut ok = reports.iter().all(|r| r.passed());
    // Spot values: partitions of 5 into parts = +-1 mod 5 and partitions
    // of 6 into parts = +-2 mod 5, both of which number 2.
    let prod = |a: u32, b: u32| {
        qrr_core::series::poch_inf_mod(a, 5, 8)
            .mul(&qrr_core::series::poch_inf_mod(b, 5, 8))
            .invert_unit()
            .unwrap()
    };
    ok &= prod(1, 4).coeff(5).to_string() == "2";
    ok &= prod(2, 3).coeff(6).to_string() == "2";
    ok
}

#[test]
fn criterion_8_property_suites() {
    let started = Instant::now();
    let mut ok = true;

    // Ring axioms on 1000 deterministic pseudo-random cases.
    let order = 24i64;
    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }
        fn series(&mut self, order: i64, laurent: bool) -> QLaurent {
            let n_terms = (self.next() % 10) as usize;
            let terms: Vec<(i64, i64)> = (0..n_terms)
                .map(|_| {
                    let span = if laurent { 34 } else { 24 };
                    let offset = if laurent { -10 } else { 0 };
                    let d = (self.next() % span) as i64 + offset;
                    let c = (self.next() % 19) as i64 - 9;
                    (d, c)
                })
                .collect();
            QLaurent::from_terms(terms, order)
        }
    }
    let mut rng = Rng(0x2545F4914F6CDD1D);
    for _ in 0..1000 {
        let a = rng.series(order, true);
        let b = rng.series(order, true);
        let c = rng.series(order, true);
        ok &= a.add(&b) == b.add(&a);
        ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
        ok &= a.mul(&b) == b.mul(&a);
        ok &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        ok &= a.add(&a.neg()).is_zero();
        // Associativity holds on the quotient-ring domain (valuation >= 0).
        let (a, b, c) = (
            rng.series(order, false),
            rng.series(order, false),
            rng.series(order, false),
        );
        ok &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        // Truncation coherence.
        let t = (rng.next() % 24) as i64;
        ok &= a.mul(&b).truncate(t) == a.truncate(t).mul(&b.truncate(t));
    }

    // Unit inversion across the same case count: random higher terms on a
    // +-1 constant.
    for _ in 0..1000 {
        let tail = rng.series(order, false);
        let sign = if rng.next() % 2 == 0 { 1 } else { -1 };
        let u = tail
            .sub(&QLaurent::monomial(tail.coeff(0), 0, order))
            .add(&QLaurent::monomial(sign, 0, order));
        let inv = u.invert_unit().expect("unit by construction");
        ok &= u.mul(&inv) == QLaurent::one(order);
    }

    // Crystal string axioms on all strict partitions of size <= 12.
    let conv = calibrate_convention(10).unwrap().chosen;
    for lambda in enum_strict(12, None, None) {
        for i in [0u8, 1] {
            if let Some(down) = qrr_core::crystal::f_op(&lambda, i, &conv) {
                ok &= qrr_core::crystal::e_op(&down, i, &conv).as_ref() == Some(&lambda);
            }
            if let Some(up) = qrr_core::crystal::e_op(&lambda, i, &conv) {
                ok &= qrr_core::crystal::f_op(&up, i, &conv).as_ref() == Some(&lambda);
            }
            let mut m = 0usize;
            let mut cur = lambda.clone();
            while let Some(next) = qrr_core::crystal::e_op(&cur, i, &conv) {
                cur = next;
                m += 1;
            }
            ok &= m == qrr_core::crystal::eps(&lambda, i, &conv);
            let mut m = 0usize;
            let mut cur = lambda.clone();
            while let Some(next) = qrr_core::crystal::f_op(&cur, i, &conv) {
                cur = next;
                m += 1;
            }
            ok &= m == qrr_core::crystal::phi(&lambda, i, &conv);
        }
    }

    // F is structurally the k = 3 tuple sum at N = 40.
    let rhs = rhs_theorem(3, 40);
    let f = f_series(40, rhs.x_cap());
    ok &= f.first_mismatch(&rhs, 40, rhs.x_cap().min(f.x_cap())).is_none();

    // Determinism: --stable output is byte-identical across two runs.
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qrr"))
            .current_dir(dir.path())
            .args(["rr", "--order", "60", "--stable", "--json", "rr.json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let first_json = std::fs::read(dir.path().join("rr.json")).unwrap();
    let second = run();
    let second_json = std::fs::read(dir.path().join("rr.json")).unwrap();
    ok &= first.status.code() == Some(0);
    ok &= first.stdout == second.stdout && first_json == second_json;

    line(
        "criterion 8: ring axioms x1000, crystal string axioms <=12, F = rhs(3) at N=40, determinism",
        ok,
        started,
    );
}

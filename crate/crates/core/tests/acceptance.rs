//! Acceptance suite. Runs as a plain binary so each criterion prints one line.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gauss_css::code::Distance;
use gauss_css::css::{check_singleton, correctable_count, star_product};
use gauss_css::poly::{quartic_root_factor, verify_global_factorizations, QuarticSign};
use gauss_css::qudit::{character_sum, hadamard_matrix, run_css_protocol};
use gauss_css::table::{reproduce_table, InterpretationChoice, RowStatus, INTERPRETATION_A, TABLE};
use gauss_css::{
    CssCode, DecodeResult, Error, GaussInt, LinearCode, Metric, Modulus, Polynomial, ProtocolMode, SearchOptions,
};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn set(v: &[Vec<GaussInt>]) -> BTreeSet<Vec<GaussInt>> {
    v.iter().cloned().collect()
}

fn residue_set() -> Check {
    let f = field(4, 1);
    let mut printed = vec![g(0, 0)];
    for (a, b) in [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (1, -1), (2, -1), (1, 2)] {
        printed.push(g(a, b));
        printed.push(g(-a, -b));
    }
    let computed: BTreeSet<GaussInt> = f.residues().iter().copied().collect();
    ensure!(f.residues().len() == 17, "{} residues", f.residues().len());
    ensure!(computed == printed.into_iter().collect(), "residue sets differ");
    Ok("17 residues".into())
}

fn example1_end_to_end() -> Check {
    let c = example1();
    let words = set(&c.codewords(100).map_err(|e| e.to_string())?);
    ensure!(words.len() == 17, "{} codewords", words.len());

    let printed: Vec<Vec<GaussInt>> = [
        [(0, 0), (0, 0)],
        [(-1, 1), (1, 0)],
        [(1, -1), (-1, 0)],
        [(-1, -1), (0, 1)],
        [(1, 1), (0, -1)],
        [(-1, -2), (2, 0)],
        [(1, 2), (-2, 0)],
        [(2, -1), (0, 2)],
        [(-2, 1), (0, -2)],
        [(-2, 0), (1, 1)],
        [(0, 2), (1, -1)],
        [(2, 0), (-1, 1)],
        [(2, 0), (-1, -1)],
        [(0, -1), (2, -1)],
        [(0, 1), (-2, 1)],
        [(1, 0), (1, 2)],
        [(-1, 0), (-1, -2)],
    ]
    .iter()
    .map(|w| gv(w))
    .collect();
    // The second coordinate equals the message, so it fixes the codeword. The printed
    // (2, -1+i) is not a codeword; the one codeword with second coordinate -1+i is
    // (-2i, -1+i), the single codeword absent from the printed list.
    let typo = gv(&[(2, 0), (-1, 1)]);
    let fixed = gv(&[(0, -2), (-1, 1)]);
    ensure!(!c.contains(&typo).unwrap(), "printed (2, -1+i) is a codeword");
    let printed_set = set(&printed);
    let missing: Vec<_> = words.difference(&printed_set).cloned().collect();
    let extra: Vec<_> = printed_set.difference(&words).cloned().collect();
    ensure!(missing == vec![fixed.clone()] && extra == vec![typo], "missing {missing:?}, extra {extra:?}");
    let mut corrected = printed_set;
    corrected.remove(&gv(&[(2, 0), (-1, 1)]));
    corrected.insert(fixed);
    ensure!(corrected == words, "codeword sets differ");

    let opts = SearchOptions::serial(1_000);
    let (dm, dh) = c.min_distances(&opts).map_err(|e| e.to_string())?;
    ensure!((dm, dh) == (3, 2), "d_M = {dm}, d_H = {dh}");

    let r = gv(&[(-1, 1), (0, 0)]);
    let m = c.decode_bounded(&r, Metric::Mannheim, 1).map_err(|e| e.to_string())?;
    ensure!(m.codeword == gv(&[(-1, 1), (1, 0)]) && m.weight == 1, "Mannheim decode {m:?}");
    match c.decode_bounded(&r, Metric::Hamming, 1) {
        Err(Error::Ambiguous { .. }) => {}
        other => return Err(format!("Hamming decode {:?}", other.map(|d: DecodeResult| d.codeword))),
    }
    Ok("16 printed codewords verbatim, printed (2, -1+i) read as (-2i, -1+i); d_M=3 d_H=2".into())
}

fn factorizations() -> Check {
    for pi in [(2, 1), (3, 2), (4, 1), (5, 2)] {
        let f = field(pi.0, pi.1);
        let p = f.p() as usize;
        let q = (p - 1) / 4;
        let i = GaussInt::i();
        let minus = quartic_root_factor(&f, QuarticSign::MinusI);
        let plus = quartic_root_factor(&f, QuarticSign::PlusI);
        let lhs_minus = Polynomial::from_roots(&f, &minus);
        let lhs_plus = Polynomial::from_roots(&f, &plus);
        ensure!(lhs_minus == Polynomial::x_pow_plus(&f, q, -i), "p={p}: x^q - i");
        ensure!(lhs_plus == Polynomial::x_pow_plus(&f, q, i), "p={p}: x^q + i");
        let half = lhs_minus.mul(&lhs_plus).unwrap();
        ensure!(half == Polynomial::x_pow_plus(&f, 2 * q, GaussInt::one()), "p={p}: x^(2q) + 1");
        let nonzero: Vec<GaussInt> = f.residues().iter().copied().filter(|a| !a.is_zero()).collect();
        let full = Polynomial::from_roots(&f, &nonzero);
        ensure!(full == Polynomial::x_pow_plus(&f, p - 1, -GaussInt::one()), "p={p}: x^(p-1) - 1");
        let report = verify_global_factorizations(&f);
        ensure!(report.passed(), "p={p}: library report {report:?}");
    }
    Ok("p = 5, 13, 17, 29".into())
}

fn example2_parameters() -> Check {
    let f = field(4, 1);
    let x8 = Modulus::PlusOne.polynomial(&f, 8);
    let g1 = Polynomial::parse(&f, G1).unwrap();
    let g2 = Polynomial::parse(&f, G2).unwrap();
    ensure!(g1.divides(&x8).unwrap() && g2.divides(&x8).unwrap(), "divisibility");
    ensure!(g1.divides(&g2).unwrap(), "g1 does not divide g2");

    let serial = SearchOptions::serial(100_000_000);
    let t = Instant::now();
    let (c1, c2) = example2();
    let d1 = c1.min_distance(Metric::Mannheim, &serial).unwrap();
    let d2 = c2.dual().min_distance(Metric::Mannheim, &serial).unwrap();
    let serial_time = t.elapsed();
    ensure!((d1, d2) == (5, 5), "serial d_M(C1) = {d1}, d_M(C2⊥) = {d2}");
    ensure!(serial_time < Duration::from_secs(60), "serial {serial_time:?}");

    let par = SearchOptions::with_workers(100_000_000, 8);
    let t = Instant::now();
    let (c1, c2) = example2();
    let p1 = c1.min_distance(Metric::Mannheim, &par).unwrap();
    let p2 = c2.dual().min_distance(Metric::Mannheim, &par).unwrap();
    let par_time = t.elapsed();
    ensure!((p1, p2) == (5, 5), "parallel d_M(C1) = {p1}, d_M(C2⊥) = {p2}");
    ensure!(par_time < Duration::from_secs(10), "8 workers {par_time:?}");

    let css = CssCode::new(c1, c2, &par).map_err(|e| e.to_string())?;
    ensure!(
        (css.n(), css.k(), css.distance(Metric::Mannheim)) == (8, 2, Distance::Exact(5)),
        "[[{}, {}, {}]]",
        css.n(),
        css.k(),
        css.distance(Metric::Mannheim)
    );
    let m = correctable_count(8, 5, Metric::Mannheim, 17);
    let h = correctable_count(8, 4, Metric::Hamming, 17);
    ensure!(m.count == 480 && h.count == 128, "counts {} / {}", m.count, h.count);
    ensure!(check_singleton(8, 2, 4).attains, "singleton not attained");
    Ok(format!(
        "[[8,2,5]]; serial {:.2}s, 8 workers {:.2}s",
        serial_time.as_secs_f64(),
        par_time.as_secs_f64()
    ))
}

fn hadamard() -> Check {
    let f = field(2, 1);
    let h = hadamard_matrix::<f64>(&f);
    // Printed display: row s lists ξ^(s·t mod 5), labels 0..4 in order.
    let printed = [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 2, 4, 1, 3], [0, 3, 1, 4, 2], [0, 4, 3, 2, 1]];
    let s5 = 5f64.sqrt();
    let mut worst = 0f64;
    for (s, row) in printed.iter().enumerate() {
        for (t, &e) in row.iter().enumerate() {
            let want = Complex::from_polar(1.0 / s5, 2.0 * std::f64::consts::PI * e as f64 / 5.0);
            worst = worst.max((h[s][t] - want).norm());
        }
    }
    ensure!(worst <= 1e-12, "entry deviation {worst:e}");
    let mut resid = 0f64;
    for a in 0..5 {
        for b in 0..5 {
            let v: Complex<f64> = (0..5).map(|k| h[a][k] * h[b][k].conj()).sum();
            let id = if a == b { 1.0 } else { 0.0 };
            resid = resid.max((v - id).norm());
        }
    }
    ensure!(resid <= 1e-12, "unitarity residual {resid:e}");
    Ok(format!("max entry error {worst:.1e}, unitarity residual {resid:.1e}"))
}

fn round_trips(css: &CssCode, runs: &mut usize) -> Result<(), String> {
    let f = css.field().clone();
    let n = css.n();
    let (t1, t2) = css.radii(Metric::Mannheim);
    let units: Vec<GaussInt> = f.residues().iter().copied().filter(|a| a.mannheim() == 1).collect();
    let mut singles = vec![vec![g(0, 0); n]];
    for pos in 0..n {
        for &u in &units {
            let mut e = vec![g(0, 0); n];
            e[pos] = u;
            singles.push(e);
        }
    }
    let zero = vec![g(0, 0); n];
    for x in css.c1().codewords(1_000).unwrap() {
        for e in &singles {
            let w = e.iter().map(|c| c.mannheim() as u32).sum::<u32>();
            let mut cases = Vec::new();
            if w <= t1 {
                cases.push((e.clone(), zero.clone()));
            }
            if w <= t2 {
                cases.push((zero.clone(), e.clone()));
            }
            for (e1, e2) in cases {
                let (_, tr) = run_css_protocol(css, &x, &e1, &e2, ProtocolMode::Full).map_err(|e| e.to_string())?;
                let fid = tr.fidelity.unwrap_or(0.0);
                ensure!(tr.corrected && fid >= 1.0 - 1e-9, "x={x:?} e1={e1:?} e2={e2:?} fidelity {fid}");
                *runs += 1;
            }
        }
    }
    Ok(())
}

fn protocol() -> Check {
    let opts = SearchOptions::serial(1_000_000);
    let mut runs = 0;
    let mut radii = Vec::new();
    for (c1, c2) in [p5_diagonal(), p5_pair_x(), p5_pair_z()] {
        let css = CssCode::new(c1, c2, &opts).map_err(|e| e.to_string())?;
        radii.push(css.radii(Metric::Mannheim));
        round_trips(&css, &mut runs)?;
    }
    ensure!(radii[1].0 == 1 && radii[2].1 == 1, "radii {radii:?}");
    Ok(format!("{runs} full-state runs, radii {radii:?}"))
}

fn example2_syndrome_only() -> Check {
    let (c1, c2) = example2();
    let css = CssCode::new(c1, c2, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure!(css.radii(Metric::Mannheim) == (2, 2), "radii {:?}", css.radii(Metric::Mannheim));
    let psi = gv(&[(1, -1), (2, -1), (-1, 1), (0, -1), (0, -1), (1, 0), (0, 0), (0, 0)]);
    let mut e1 = vec![g(0, 0); 8];
    e1[3] = g(1, 0);
    e1[4] = g(1, 0);
    let f = css.field();
    let corrupted: Vec<GaussInt> = psi.iter().zip(&e1).map(|(&a, &b)| f.add(a, b)).collect();
    ensure!(
        corrupted == gv(&[(1, -1), (2, -1), (-1, 1), (1, -1), (1, -1), (1, 0), (0, 0), (0, 0)]),
        "corrupted state {corrupted:?}"
    );
    let zero = vec![g(0, 0); 8];
    let (_, tr) = run_css_protocol(&css, &psi, &e1, &zero, ProtocolMode::SyndromeOnly).map_err(|e| e.to_string())?;
    ensure!(tr.recovered_e1.as_deref() == Some(&e1[..]), "recovered {:?}", tr.recovered_e1);
    ensure!(tr.recovered_e2.as_deref() == Some(&zero[..]) && tr.corrected, "transcript {tr:?}");
    Ok("X(1) at positions 3, 4 recovered exactly".into())
}

fn character_sums() -> Check {
    let mut checked = 0;
    for c2 in [p5_diagonal().1, p5_pair_x().1, p5_pair_z().1] {
        let f = c2.field().clone();
        let size = c2.size().unwrap() as f64;
        let dual = c2.dual();
        for z in all_vectors(&f, c2.n()) {
            let s = character_sum(&c2, &z).unwrap();
            let want = if dual.contains(&z).unwrap() { size } else { 0.0 };
            ensure!((s - Complex::new(want, 0.0)).norm() <= 1e-9, "z={z:?}: {s}");
            checked += 1;
        }
    }
    Ok(format!("{checked} vectors"))
}

fn table_report() -> Check {
    let report = reproduce_table(InterpretationChoice::Both, &SearchOptions { cap: 100_000_000, ..SearchOptions::default() }).map_err(|e| e.to_string())?;
    ensure!(report.rows.len() == TABLE.len() && TABLE.len() == 10, "{} rows", report.rows.len());
    let p13: Vec<Option<u32>> = report
        .rows
        .iter()
        .filter(|r| r.p == 13)
        .map(|r| r.reading(INTERPRETATION_A.name).and_then(|a| a.c1_m).map(Distance::value))
        .collect();
    ensure!(p13 == vec![Some(4), Some(4), Some(2), Some(2)], "p=13 d_M(C1) under a: {p13:?}");
    ensure!(report.rows[0].status == RowStatus::Unresolved, "p=5 row is {:?}", report.rows[0].status);
    for row in &report.rows {
        let reproduced = row.readings.iter().any(|r| r.documented && r.reproduces_nk);
        ensure!(reproduced || row.status == RowStatus::Unresolved, "row {} not flagged", row.index + 1);
    }
    let statuses: Vec<String> = report.rows.iter().map(|r| r.status.to_string()).collect();
    Ok(format!("10 rows: {}", statuses.join(" ")))
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    for pi in [(2, 1), (3, 2), (4, 1), (5, 2)] {
        let f = field(pi.0, pi.1);
        let r = f.residues();
        for &a in r {
            ensure!(f.add(a, GaussInt::zero()) == a && f.mul(a, GaussInt::one()) == a, "identities");
            ensure!(f.add(a, f.neg(a)).is_zero(), "additive inverse");
            if !a.is_zero() {
                ensure!(f.mul(a, f.invert(a).unwrap()) == GaussInt::one(), "inverse of {a}");
            }
            for &b in r {
                ensure!(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), "commutativity");
                ensure!(f.is_canonical(f.add(a, b)) && f.is_canonical(f.mul(a, b)), "closure");
                for &c in r {
                    ensure!(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), "add assoc");
                    ensure!(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "mul assoc");
                    ensure!(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), "distributivity");
                }
            }
        }
        for _ in 0..20_000 {
            let z = g(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(-1_000_000..=1_000_000));
            let red = f.reduce(z);
            ensure!(red == reduce_oracle(f.pi(), z) && f.reduce(red) == red, "reduce {z}");
        }
        let p = f.p() as i64;
        let lifted: BTreeSet<GaussInt> = (0..p).map(|k| f.lift(k).unwrap()).collect();
        ensure!(lifted.len() == p as usize, "lift not injective");
        for k in 0..p {
            ensure!(f.project(f.lift(k).unwrap()).unwrap() as i64 == k, "project(lift({k}))");
        }
    }

    let serial = SearchOptions::serial(10_000_000);
    let par = SearchOptions::with_workers(10_000_000, 4);
    let mut codes: Vec<LinearCode> = vec![example1(), example2().0, example2().1.dual()];
    for (c1, c2) in [p5_diagonal(), p5_pair_x(), p5_pair_z()] {
        codes.extend([c1.dual(), c2.dual(), c1, c2]);
    }
    let f13 = field(3, 2);
    for _ in 0..6 {
        let rows: Vec<Vec<GaussInt>> = (0..3)
            .map(|_| (0..6).map(|_| f13.residues()[rng.gen_range(0..13)]).collect())
            .collect();
        codes.push(LinearCode::from_generator_matrix(&f13, &rows).unwrap());
    }
    for c in &codes {
        if c.k() == 0 {
            continue;
        }
        let s = c.min_distances(&serial).unwrap();
        let fresh = LinearCode::from_generator_matrix(c.field(), &c.generator_matrix()).unwrap();
        let q = fresh.min_distances(&par).unwrap();
        ensure!(s.0 >= s.1, "d_M < d_H");
        ensure!(s == q, "serial {s:?} vs parallel {q:?}");
    }

    let f5 = field(2, 1);
    for a in all_vectors(&f5, 2) {
        for b in all_vectors(&f5, 2) {
            let ab = star_product(&f5, &a, &b).unwrap();
            ensure!(ab == f5.neg(star_product(&f5, &b, &a).unwrap()), "antisymmetry");
            let c = gv(&[(1, 0), (0, 1)]);
            let sum: Vec<GaussInt> = a.iter().zip(&c).map(|(&x, &y)| f5.add(x, y)).collect();
            let lhs = star_product(&f5, &sum, &b).unwrap();
            ensure!(lhs == f5.add(ab, star_product(&f5, &c, &b).unwrap()), "additivity");
            let scaled: Vec<GaussInt> = a.iter().map(|&x| f5.mul(x, g(1, 1))).collect();
            ensure!(star_product(&f5, &scaled, &b).unwrap() == f5.mul(g(1, 1), ab), "homogeneity");
        }
    }
    Ok(format!("{} codes, fields p = 5, 13, 17, 29", codes.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("residue set of 4+i", 1, residue_set),
        ("example 1 codewords, distances and decoding", 1, example1_end_to_end),
        ("factorization identities", 5, factorizations),
        ("example 2 parameters", 60, example2_parameters),
        ("Hadamard gate for 2+i", 1, hadamard),
        ("protocol round trips at p = 5", 30, protocol),
        ("example 2 syndrome-only recovery", 30, example2_syndrome_only),
        ("character sums at p = 5", 5, character_sums),
        ("comparison table report", 120, table_report),
        ("property suites", 60, properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(_) if secs > limit as f64 => Err(format!("took {secs:.2}s, limit {limit}s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({secs:.2}s) {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2}s) {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

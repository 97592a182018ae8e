//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsurgery::exactlin::{BitVector, IntMatrix, IntSymMatrix, Mod2Matrix};
use spinsurgery::invariants::{
    alexander_from_seifert, casson, check_sigma_rank_consistency, half_second_derivative_at_1, least_passing_order,
    order_profile, rohlin_mod2, ConsistencyError, Constant, ExtensionPolicy, InvariantValue, LaurentPolynomial,
    RohlinMod2, SeifertMatrix, SurgeryScheme,
};
use spinsurgery::kirby::{for_each_step, random_sequence};
use spinsurgery::presentation::{block_sum, characteristic_vectors, spin_count};
use spinsurgery::SpinPresentation;
use spinsurgery_cli::files::{parse_knot_table, PresentationFile, SchemeFile, KNOT_TABLE};
use spinsurgery_cli::{run, EXIT_INPUT, EXIT_PRECONDITION};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_path(rel: &str) -> String {
    corpus_dir().join(rel).display().to_string()
}

fn corpus_files(sub: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir().join(sub))
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .collect();
    v.sort();
    v
}

fn corpus_presentations() -> Vec<(String, SpinPresentation)> {
    corpus_files("presentations")
        .into_iter()
        .map(|path| {
            let f = PresentationFile::load(&path).expect("corpus file parses");
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            (name, f.presentation().expect("corpus file is valid"))
        })
        .collect()
}

fn named(name: &str) -> SpinPresentation {
    PresentationFile::load(Path::new(&corpus_path(&format!("presentations/{name}.json"))))
        .unwrap()
        .presentation()
        .unwrap()
}

fn odd(x: &BigInt) -> bool {
    x.bit(0)
}

// ---- oracles ----

fn random_sym(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntSymMatrix {
    IntSymMatrix::from_upper_fn(n, |_, _| BigInt::from(rng.random_range(-bound..=bound)))
}

fn all_bit_vectors(n: usize) -> impl Iterator<Item = BitVector> {
    (0..1u32 << n).map(move |mask| (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect())
}

fn is_characteristic_brute(b: &IntSymMatrix, c: &BitVector) -> bool {
    (0..b.dim()).all(|i| {
        let row: BigInt = (0..b.dim()).filter(|&j| c.get(j)).map(|j| b.get(i, j).clone()).sum();
        !odd(&(row - b.get(i, i)))
    })
}

/// Mod-2 rank by plain Gaussian elimination on `Vec<bool>` rows.
fn rank_mod2_brute(b: &IntSymMatrix) -> usize {
    let n = b.dim();
    let mut rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| odd(b.get(i, j))).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        if let Some(p) = (rank..n).find(|&r| rows[r][col]) {
            rows.swap(rank, p);
            for r in 0..n {
                if r != rank && rows[r][col] {
                    let pivot = rows[rank].clone();
                    rows[r].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
    }
    rank
}

fn leibniz_det(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::from(0);
    // Heap's algorithm tracks the permutation sign.
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i64, m: &IntMatrix, total: &mut BigInt) {
        if k <= 1 {
            let prod = (0..perm.len()).fold(BigInt::from(*sign), |p, i| p * m.get(i, perm[i]));
            *total += prod;
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, perm, sign, m, total);
            perm.swap(if k.is_multiple_of(2) { i } else { 0 }, k - 1);
            *sign = -*sign;
        }
        heap(k - 1, perm, sign, m, total);
    }
    let mut sign = 1;
    heap(n, &mut perm, &mut sign, m, &mut total);
    total
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, ops: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n == 0 {
        return p;
    }
    for _ in 0..ops {
        let mut e = IntMatrix::identity(n);
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        match rng.random_range(0..3) {
            0 if a != b => e.set(a, b, BigInt::from(rng.random_range(-2..=2i64))),
            1 if a != b => {
                e.set(a, a, BigInt::from(0));
                e.set(b, b, BigInt::from(0));
                e.set(a, b, BigInt::from(1));
                e.set(b, a, BigInt::from(1));
            }
            _ => e.set(a, a, BigInt::from(-1)),
        }
        p = p.mul(&e);
    }
    p
}

/// `V0 = ⊕[[0,1],[0,0]]` plus a random symmetric shift, then a unimodular congruence.
fn random_seifert(rng: &mut ChaCha8Rng) -> SeifertMatrix {
    let g = rng.random_range(0..=3usize);
    let n = 2 * g;
    let shift = random_sym(rng, n, 3);
    let mut v = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let base = if j == i + 1 && i % 2 == 0 { 1 } else { 0 };
            v.set(i, j, shift.get(i, j) + base);
        }
    }
    let p = random_unimodular(rng, n, 8);
    SeifertMatrix::new(p.transpose().mul(&v).mul(&p)).expect("congruence keeps det(V - Vᵀ) = 1")
}

// ---- criteria ----

fn spin_structure_count() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..200 {
        let n = rng.random_range(0..=8usize);
        let b = random_sym(&mut rng, n, 4);
        let brute: Vec<BitVector> = all_bit_vectors(n).filter(|c| is_characteristic_brute(&b, c)).collect();
        let got = characteristic_vectors(&b);
        let list = got.as_list().ok_or("n ≤ 8 must enumerate")?;
        ensure(!list.is_empty(), || format!("case {case}: empty"))?;
        ensure(list == brute.as_slice(), || {
            format!("case {case}: {b} gives {list:?}, brute {brute:?}")
        })?;
        let expected = 1usize << (n - rank_mod2_brute(&b));
        ensure(list.len() == expected && spin_count(&b) == expected.into(), || {
            format!("case {case}: count {} vs 2^(n-rank) = {expected}", list.len())
        })?;
    }
    Ok("200 matrices, n ≤ 8, exact match with brute force".into())
}

struct FuzzSummary {
    states: usize,
    validity: Result<(), String>,
    count: Result<(), String>,
    invariant: Result<(), String>,
}

fn fuzz_corpus() -> FuzzSummary {
    let corpus = corpus_presentations();
    let mut s = FuzzSummary {
        states: 0,
        validity: Ok(()),
        count: Ok(()),
        invariant: Ok(()),
    };
    for seed in 0..1000u64 {
        let (name, p) = &corpus[seed as usize % corpus.len()];
        let seq = random_sequence(p, 100, seed);
        let count = spin_count(p.matrix());
        let i = rohlin_mod2(p);
        let applied = for_each_step(p, &seq, |step, q| {
            s.states += 1;
            let (b, c) = q.clone().into_parts();
            if s.validity.is_ok() && !(is_characteristic_brute(&b, &c) && SpinPresentation::validate(b, c).is_ok()) {
                s.validity = Err(format!("{name} seed {seed} step {step}: invalid"));
            }
            if s.count.is_ok() && spin_count(q.matrix()) != count {
                s.count = Err(format!("{name} seed {seed} step {step}: spin count changed"));
            }
            if s.invariant.is_ok() && rohlin_mod2(q) != i {
                s.invariant = Err(format!("{name} seed {seed} step {step}: I changed"));
            }
        });
        if let Err(e) = applied {
            s.validity = Err(format!("{name} seed {seed}: generated move failed: {e}"));
        }
    }
    s
}

fn move_soundness(f: &FuzzSummary) -> Outcome {
    f.validity.clone()?;
    f.count.clone()?;
    ensure(f.states == 100_000, || format!("only {} states visited", f.states))?;
    Ok(format!(
        "1000 sequences × 100 moves over the corpus, {} states valid, spin count constant",
        f.states
    ))
}

fn invariant_i(f: &FuzzSummary) -> Outcome {
    ensure(rohlin_mod2(&named("s3")) == InvariantValue::Mod2(false), || {
        "I(S³) ≠ 0".into()
    })?;
    f.invariant.clone()?;
    let corpus = corpus_presentations();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (a, p) = &corpus[rng.random_range(0..corpus.len())];
        let (b, q) = &corpus[rng.random_range(0..corpus.len())];
        let sum = block_sum(p, q);
        ensure(rohlin_mod2(&sum) == rohlin_mod2(p) + rohlin_mod2(q), || {
            format!("additivity fails on {a} # {b}")
        })?;
    }
    for (name, expected) in [("rp3_c1", true), ("poincare_e8", false)] {
        let p = named(name);
        ensure(rohlin_mod2(&p) == InvariantValue::Mod2(expected), || {
            format!("I({name}) wrong")
        })?;
        let seq = random_sequence(&p, 200, 99);
        let mut ok = true;
        for_each_step(&p, &seq, |_, q| ok &= rohlin_mod2(q) == InvariantValue::Mod2(expected))
            .map_err(|e| e.to_string())?;
        ensure(ok, || format!("I drifts along the 200-step fuzz of {name}"))?;
    }
    Ok(
        "I(S³)=0; invariant on 1000 trajectories; additive on 200 pairs; I(RP³,1)=1, I(E8,0)=0 through 200-step fuzz"
            .into(),
    )
}

fn sigma_rank_parity() -> Outcome {
    let mut checked = 0;
    for (name, p) in corpus_presentations() {
        match check_sigma_rank_consistency(&p) {
            Ok(r) => {
                ensure(r.consistent(), || format!("{name}: {r:?}"))?;
                checked += 1;
            }
            Err(ConsistencyError::DegeneratePresentation) => ensure(p.matrix().det() == BigInt::from(0), || {
                format!("{name} wrongly rejected")
            })?,
        }
    }
    let zero = SpinPresentation::from_i64(&[vec![0]], &[0]).unwrap();
    ensure(
        check_sigma_rank_consistency(&zero) == Err(ConsistencyError::DegeneratePresentation),
        || "[[0]] accepted".into(),
    )?;
    Ok(format!(
        "{checked} nondegenerate corpus files consistent; [[0]] rejected"
    ))
}

fn order_one() -> Outcome {
    let schemes: Vec<SurgeryScheme> = corpus_files("schemes")
        .iter()
        .filter(|p| !p.ends_with("s3_free_extra.json"))
        .map(|p| SchemeFile::load(p).map(|s| s.scheme).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(schemes.len() >= 5, || "scheme corpus missing".into())?;
    let reports = order_profile(&RohlinMod2, 1, &schemes, ExtensionPolicy::Declared).map_err(|e| e.to_string())?;
    ensure(reports.len() == 2, || "order 1 not tested".into())?;
    ensure(reports[1].passed(), || {
        format!("nonzero 2-extra sums: {:?}", reports[1].failures().collect::<Vec<_>>())
    })?;
    ensure(
        reports[0].terms.iter().any(|t| t.sum == InvariantValue::Mod2(true)),
        || "no 1-extra sum is 1".into(),
    )?;
    ensure(least_passing_order(&reports) == Some(1), || {
        "least order is not 1".into()
    })?;
    let constant = Constant(InvariantValue::Mod2(true));
    let reports = order_profile(&constant, 1, &schemes, ExtensionPolicy::Declared).map_err(|e| e.to_string())?;
    ensure(least_passing_order(&reports) == Some(0), || {
        "constant invariant not order 0".into()
    })?;
    Ok(format!(
        "{} schemes: I has order exactly 1, constant has order 0",
        schemes.len()
    ))
}

fn casson_engine() -> Outcome {
    let table = parse_knot_table(KNOT_TABLE).map_err(|e| e.to_string())?;
    let lookup = |name: &str| {
        table
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| alexander_from_seifert(v))
            .unwrap()
    };
    let unknot = lookup("unknot");
    for (name, sign) in [("unknot", 0), ("trefoil", 1), ("figure8", -1)] {
        let d = lookup(name);
        let step = half_second_derivative_at_1(&d).map_err(|e| e.to_string())?;
        // Recursion from λ(S³) = 0 in both directions.
        let mut up = casson(&unknot, 0).map_err(|e| e.to_string())?;
        ensure(up == BigInt::from(0), || "λ(S³) ≠ 0".into())?;
        let mut down = up.clone();
        for n in 1..=5i64 {
            up += &step;
            down -= &step;
            for (k, expect) in [(n, &up), (-n, &down)] {
                let got = casson(&d, k).map_err(|e| e.to_string())?;
                ensure(&got == expect && got == BigInt::from(sign * k), || {
                    format!("λ({name}, {k}) = {got}")
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut deltas: Vec<LaurentPolynomial> = table.iter().map(|(_, v)| alexander_from_seifert(v)).collect();
    deltas.extend((0..100).map(|_| alexander_from_seifert(&random_seifert(&mut rng))));
    for d in &deltas {
        ensure(d.eval_at_one() == BigInt::from(1), || format!("Δ(1) ≠ 1 for {d}"))?;
        ensure(d.is_symmetric(), || format!("{d} not symmetric"))?;
        half_second_derivative_at_1(d).map_err(|e| format!("{d}: {e}"))?;
    }
    Ok(format!(
        "λ(S³)=0; trefoil n, figure8 −n on [−5,5]; {} Alexander polynomials normalized",
        deltas.len()
    ))
}

fn exact_linear_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..500 {
        let n = rng.random_range(0..=6usize);
        let b = random_sym(&mut rng, n, 4);
        let p = random_unimodular(&mut rng, n, 10);
        let c = p.congruence(&b);
        ensure(leibniz_det(&p).magnitude() == &1u8.into(), || {
            format!("case {case}: P not unimodular")
        })?;
        ensure(b.det() == leibniz_det(&b.as_int_matrix()), || {
            format!("case {case}: det disagrees with Leibniz")
        })?;
        ensure(c.det() == b.det(), || format!("case {case}: det changed"))?;
        ensure(c.signature() == b.signature(), || {
            format!("case {case}: signature changed")
        })?;
        ensure(c.rank_q() == b.rank_q(), || format!("case {case}: rank changed"))?;
        ensure(spin_count(&c) == spin_count(&b), || {
            format!("case {case}: mod-2 nullity changed")
        })?;
    }
    // Mod-2 solver: every system up to 3×3 exhaustively, random ones up to 8×8.
    let check = |a: &Mod2Matrix, rhs: &BitVector| -> Result<(), String> {
        let brute: Vec<BitVector> = all_bit_vectors(a.cols()).filter(|x| &a.mul_vec(x) == rhs).collect();
        let got = a.solve_affine(rhs);
        ensure(got.enumerate() == brute, || {
            format!("solver disagrees on {a:?} x = {rhs}")
        })?;
        ensure(got.count() == brute.len().into(), || "count mismatch".into())
    };
    let mut systems = 0;
    for r in 0..=3usize {
        for c in 0..=3usize {
            for mask in 0..1u32 << (r * c) {
                let a = Mod2Matrix::from_fn(r, c, |i, j| mask >> (i * c + j) & 1 == 1);
                for rhs in all_bit_vectors(r) {
                    check(&a, &rhs)?;
                    systems += 1;
                }
            }
        }
    }
    for _ in 0..2000 {
        let (r, c) = (rng.random_range(0..=8usize), rng.random_range(0..=8usize));
        let a = Mod2Matrix::from_fn(r, c, |_, _| rng.random_bool(0.5));
        let rhs: BitVector = (0..r).map(|_| rng.random_bool(0.5)).collect();
        check(&a, &rhs)?;
        systems += 1;
    }
    Ok(format!(
        "500 unimodular congruences preserve det/signature/rank; {systems} mod-2 systems match brute force"
    ))
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_spinsurgery"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cli_contract() -> Outcome {
    let fuzz_file = corpus_path("presentations/sum_e8_rp3.json");
    let e8 = corpus_path("presentations/poincare_e8.json");
    let schemes = corpus_path("schemes/s3_three_extras.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["fuzz", &fuzz_file, "--steps", "150", "--seed", "11"],
        vec!["--json", "fuzz", &fuzz_file, "--steps", "150", "--seed", "11"],
        vec!["spins", &e8],
        vec!["--json", "validate", &e8],
        vec!["--json", "vassiliev", &schemes, "--max-order", "2"],
        vec!["casson", "--knot", "figure8", "--n", "-3"],
    ];
    for args in &runs {
        let (a, b) = (binary(args), binary(args));
        ensure(
            a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
            || format!("{args:?} not deterministic"),
        )?;
    }
    let files = corpus_files("presentations");
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let f = PresentationFile::parse(&text).map_err(|e| e.to_string())?;
        ensure(f.print() == text, || format!("{} does not round trip", path.display()))?;
    }
    let dir = std::env::temp_dir().join(format!("spinsurgery-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let rp3 = corpus_path("presentations/rp3_c1.json");
    let classes: Vec<(Vec<String>, i32)> = vec![
        (vec!["spins".into(), write("syntax.json", "{\"n\": 1,")], EXIT_INPUT),
        (
            vec!["spins".into(), write("ragged.json", "{\"n\": 2, \"B\": [[1], [0, 1]]}")],
            EXIT_INPUT,
        ),
        (
            vec![
                "invariant".into(),
                write("asym.json", "{\"n\": 2, \"B\": [[0, 1], [2, 0]]}"),
            ],
            EXIT_INPUT,
        ),
        (
            vec![
                "invariant".into(),
                write("notchar.json", "{\"n\": 1, \"B\": [[1]], \"c\": [0]}"),
            ],
            EXIT_INPUT,
        ),
        (
            vec!["invariant".into(), corpus_path("presentations/absent.json")],
            EXIT_INPUT,
        ),
        (
            vec!["move".into(), rp3.clone(), "--ops".into(), "slide:0,0".into()],
            EXIT_PRECONDITION,
        ),
        (
            vec!["move".into(), rp3.clone(), "--ops".into(), "blowdown:0".into()],
            EXIT_PRECONDITION,
        ),
        (vec!["move".into(), rp3, "--ops".into(), "jump".into()], EXIT_INPUT),
        (
            vec!["vassiliev".into(), corpus_path("schemes/s3_free_extra.json")],
            EXIT_PRECONDITION,
        ),
        (
            vec![
                "casson".into(),
                "--knot".into(),
                "stevedore".into(),
                "--n".into(),
                "1".into(),
            ],
            EXIT_INPUT,
        ),
        (
            vec![
                "casson".into(),
                "--seifert".into(),
                write("v.json", "{\"V\": [[2]]}"),
                "--n".into(),
                "1".into(),
            ],
            EXIT_INPUT,
        ),
        (vec!["no-such-command".into()], EXIT_INPUT),
    ];
    for (args, code) in &classes {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = binary(&args);
        ensure(out.status.code() == Some(*code) && !out.stderr.is_empty(), || {
            format!("{args:?} exited with {:?}", out.status.code())
        })?;
        let mut json_args = vec!["--json"];
        json_args.extend(&args);
        let inproc = run(std::iter::once("spinsurgery").chain(json_args.iter().copied()));
        if args[0] != "no-such-command" {
            let v: serde_json::Value = serde_json::from_str(&inproc.stdout).map_err(|e| e.to_string())?;
            ensure(v["exit_code"] == *code, || format!("{args:?}: JSON {v}"))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{} runs byte-identical; {} corpus files round trip; {} error classes",
        runs.len(),
        files.len(),
        classes.len()
    ))
}

fn main() {
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: &str, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why} ({secs:.1}s)");
            }
        }
    };
    report("A1", "spin-structure count", &spin_structure_count);
    // A2 and A3 share one fuzz campaign; its time is reported with A2.
    let t = Instant::now();
    let fuzz = fuzz_corpus();
    let fuzz_secs = t.elapsed().as_secs_f64();
    report("A2", "move soundness", &|| {
        move_soundness(&fuzz).map(|d| format!("{d}, campaign {fuzz_secs:.1}s"))
    });
    report("A3", "invariant I", &|| invariant_i(&fuzz));
    report("A4", "signature/rank parity", &sigma_rank_parity);
    report("A5", "order of I over the scheme corpus", &order_one);
    report("A6", "Casson engine", &casson_engine);
    report("A7", "exact linear algebra", &exact_linear_algebra);
    report("A8", "CLI contract", &cli_contract);
    println!(
        "acceptance: {} of 8 criteria passed in {:.1}s",
        8 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

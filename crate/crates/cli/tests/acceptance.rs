//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jordanline::harness::{build_graph, verify_theorem1, GeometryConfig, PointSet, RelationKind};
use jordanline::hermitian::{
    bartolone_hermitian, enumerate_hermitian, enumerate_isotropic, jordan_system_axioms_check,
    lemma1_complete, lemma2_common_complement, theorem1_decompose,
};
use jordanline::matrix::{enumerate_matrices, enumerate_subspaces};
use jordanline::projline::{
    annihilator, bartolone, bartolone_preimage, distant_chain_witness, enumerate_points,
    is_adjacent, is_distant, jordan_action, jordan_image,
};
use jordanline::{
    BartolonePair, Elem, Field, Involution, IsotropicPoint, JordanKind, JordanMap, Matrix,
    Subspace, SubspacePoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

const N: usize = 2;

const CONFIGS: [(u32, u32, Involution); 4] = [
    (2, 1, Involution::Identity),
    (3, 1, Involution::Identity),
    (2, 2, Involution::FrobeniusHalf),
    (3, 2, Involution::FrobeniusHalf),
];

/// Isotropic point counts; the GF(9) value was produced by the brute-force
/// plane oracle in the core test suite and frozen.
const ISOTROPIC: [usize; 4] = [15, 40, 27, 112];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u32, k: u32, inv: Involution) -> Field {
    Field::new(p, k, inv).unwrap()
}

fn gf2() -> Field {
    field(2, 1, Involution::Identity)
}

fn gf4() -> Field {
    field(2, 2, Involution::FrobeniusHalf)
}

fn all_pairs(f: &Field) -> Vec<BartolonePair> {
    let ms: Vec<Matrix> = enumerate_matrices(f, N, N).collect();
    let mut out = Vec::with_capacity(ms.len() * ms.len());
    for t1 in &ms {
        for t2 in &ms {
            out.push(BartolonePair {
                t1: t1.clone(),
                t2: t2.clone(),
            });
        }
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &Field) -> Matrix {
    let data = (0..N * N)
        .map(|_| f.elem(rng.gen_range(0..f.order())).unwrap())
        .collect();
    Matrix::new(f, N, N, data)
}

fn random_pairs(f: &Field, count: usize, seed: u64) -> Vec<BartolonePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t1 = random_matrix(&mut rng, f);
            let t2 = random_matrix(&mut rng, f);
            BartolonePair { t1, t2 }
        })
        .collect()
}

/// `Σ x_i y_{n+i}^σ − x_{n+i} y_i^σ`, written out independently of the library's form.
fn beta(f: &Field, x: &[Elem], y: &[Elem]) -> Elem {
    let n = x.len() / 2;
    let mut s = Elem::ZERO;
    for i in 0..n {
        s = f.add(s, f.mul(x[i], f.sigma(y[n + i])));
        s = f.sub(s, f.mul(x[n + i], f.sigma(y[i])));
    }
    s
}

/// `β` vanishes on a basis, hence (sesquilinearity) on the whole span.
fn beta_vanishes(basis: &Matrix) -> bool {
    let f = basis.field();
    (0..basis.rows())
        .all(|i| (0..basis.rows()).all(|j| beta(f, basis.row(i), basis.row(j)).is_zero()))
}

fn maximal_isotropic(x: &IsotropicPoint) -> bool {
    x.space().dim() == x.n()
        && x.space().ambient_dim() == 2 * x.n()
        && beta_vanishes(x.space().basis())
}

fn meets_trivially(a: &Subspace, b: &Subspace) -> bool {
    a.basis().vstack(b.basis()).rank() == a.dim() + b.dim()
}

/// `V^⊥` by testing every vector of `K^4`.
fn perp_brute_force(v: &Subspace) -> Subspace {
    let f = v.field();
    let rows: Vec<Vec<Elem>> = enumerate_matrices(f, 1, 2 * N)
        .map(|m| m.entries().to_vec())
        .filter(|x| (0..v.dim()).all(|i| beta(f, v.basis().row(i), x).is_zero()))
        .collect();
    Subspace::span(f, 2 * N, &rows).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for ((p, k, inv), expected) in CONFIGS.into_iter().zip(ISOTROPIC) {
        let r = verify_theorem1(&GeometryConfig::new(p, k, inv, N)).map_err(|e| e.to_string())?;
        ensure(r.equal && r.witnesses.is_empty(), || {
            format!("GF({p}^{k}): sets differ")
        })?;
        ensure(
            r.counts.isotropic == expected && r.counts.bartolone_image == expected,
            || format!("GF({p}^{k}): sizes {:?}, expected {expected}", r.counts),
        )?;
        sizes.push(r.counts.isotropic);
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("sizes {sizes:?}, {t:.2?}"))
}

fn check_lemma2(u1: &IsotropicPoint, u2: &IsotropicPoint) -> Result<(), String> {
    let x = lemma2_common_complement(u1, u2).map_err(|e| e.to_string())?;
    ensure(maximal_isotropic(&x), || {
        "complement not maximal totally isotropic".into()
    })?;
    ensure(
        meets_trivially(x.space(), u1.space()) && meets_trivially(x.space(), u2.space()),
        || "complement meets an input".into(),
    )?;
    ensure(
        is_distant(x.point(), u1.point()).unwrap() && is_distant(x.point(), u2.point()).unwrap(),
        || "complement not distant from an input".into(),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let pts = enumerate_isotropic(&gf2(), N);
    let mut count = 0;
    for u1 in &pts {
        for u2 in &pts {
            check_lemma2(u1, u2)?;
            count += 1;
        }
    }
    let pts4 = enumerate_isotropic(&gf4(), N);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_502);
    for _ in 0..500 {
        let a = &pts4[rng.gen_range(0..pts4.len())];
        let b = &pts4[rng.gen_range(0..pts4.len())];
        check_lemma2(a, b)?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "{count} pairs over GF(2), 500 sampled over GF(4), {t:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let f = gf2();
    let subspaces: Vec<Subspace> = (0..=N)
        .flat_map(|m| enumerate_subspaces(&f, 2 * N, m))
        .collect();
    let mut splittings = 0;
    for u in enumerate_isotropic(&f, N) {
        let inside: Vec<&Subspace> = subspaces
            .iter()
            .filter(|s| u.space().contains(s).unwrap())
            .collect();
        for v in &inside {
            for w in &inside {
                if v.dim() + w.dim() != N || !meets_trivially(v, w) {
                    continue;
                }
                splittings += 1;
                let x = lemma1_complete(&u, v, w).map_err(|e| e.to_string())?;
                ensure(maximal_isotropic(&x), || {
                    format!("X not maximal isotropic for V={v:?}, W={w:?}")
                })?;
                let meet = x.space().intersect(&perp_brute_force(v)).unwrap();
                ensure(meet == **w, || {
                    format!("X ∩ V^⊥ = {meet:?}, expected {w:?}")
                })?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{splittings} splittings U = V ⊕ W, {t:.2?}"))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for (p, k, inv) in CONFIGS {
        for u in enumerate_isotropic(&field(p, k, inv), N) {
            let pair = theorem1_decompose(&u);
            ensure(pair.t1.is_hermitian() && pair.t2.is_hermitian(), || {
                format!("non-Hermitian output at GF({p}^{k})")
            })?;
            let back = bartolone_hermitian(&pair).map_err(|e| e.to_string())?;
            ensure(back == u, || format!("roundtrip failed at GF({p}^{k})"))?;
            total += 1;
        }
    }
    Ok(format!("{total} isotropic points"))
}

fn rank_law_holds(pair: &BartolonePair) -> bool {
    let origin = SubspacePoint::origin(pair.field(), N);
    let image = bartolone(pair);
    let sum = origin.basis().vstack(image.basis()).rank();
    sum - N == pair.t2.rank()
}

fn criterion_5() -> Outcome {
    let mut counts = Vec::new();
    // every pair over GF(2) (256) and over GF(4) (65,536)
    for f in [gf2(), gf4()] {
        let pairs = all_pairs(&f);
        ensure(pairs.iter().all(rank_law_holds), || {
            format!("rank law fails over GF({})", f.order())
        })?;
        counts.push(pairs.len());
    }
    let sample = random_pairs(&field(3, 1, Involution::Identity), 10_000, 7);
    ensure(sample.iter().all(rank_law_holds), || {
        "rank law fails over GF(3)".into()
    })?;
    counts.push(sample.len());
    Ok(format!(
        "exhaustive GF(2) {} + GF(4) {}, sampled GF(3) {}",
        counts[0], counts[1], counts[2]
    ))
}

fn criterion_6() -> Outcome {
    let f = gf2();
    let cfg = GeometryConfig::new(2, 1, Involution::Identity, N);
    let graph =
        build_graph(&cfg, RelationKind::Distant, PointSet::All).map_err(|e| e.to_string())?;
    ensure(graph.node_ids.len() == 35, || {
        format!("{} nodes", graph.node_ids.len())
    })?;
    let diameter = graph.diameter().ok_or("distant graph is disconnected")?;
    ensure(diameter <= 2, || format!("diameter {diameter}"))?;
    let origin = SubspacePoint::origin(&f, N);
    for q in enumerate_points(&f, N) {
        let r = distant_chain_witness(&bartolone_preimage(&q));
        ensure(
            is_distant(&origin, &r).unwrap() && is_distant(&r, &q).unwrap(),
            || format!("no chain to {q:?}"),
        )?;
    }
    for pair in all_pairs(&f) {
        let r = distant_chain_witness(&pair);
        ensure(
            is_distant(&origin, &r).unwrap() && is_distant(&r, &bartolone(&pair)).unwrap(),
            || format!("chain fails for {pair:?}"),
        )?;
    }
    Ok(format!(
        "diameter {diameter}, chain witness for all 35 points and 256 pairs"
    ))
}

fn annihilator_ok(pair: &BartolonePair) -> bool {
    let ann = annihilator(pair);
    (&pair.representative() * &ann).is_zero() && ann.rank() == N
}

fn criterion_7() -> Outcome {
    let exhaustive = all_pairs(&gf2());
    ensure(exhaustive.iter().all(annihilator_ok), || {
        "fails over GF(2)".into()
    })?;
    let sample = random_pairs(&field(3, 2, Involution::FrobeniusHalf), 1_000, 11);
    ensure(sample.iter().all(annihilator_ok), || {
        "fails over GF(9)".into()
    })?;
    Ok(format!(
        "exhaustive GF(2) {}, sampled GF(9) {}",
        exhaustive.len(),
        sample.len()
    ))
}

fn jordan_checks(f: &Field, name: &str, map: &JordanMap) -> Result<(), String> {
    let mut images: HashMap<SubspacePoint, SubspacePoint> = HashMap::new();
    for pair in all_pairs(f) {
        let image = jordan_action(map, &pair);
        let prev = images
            .entry(bartolone(&pair))
            .or_insert_with(|| image.clone());
        ensure(*prev == image, || {
            format!("{name}: two parameter pairs of one point disagree")
        })?;
    }
    let points = enumerate_points(f, N);
    ensure(images.len() == points.len(), || {
        format!("{name}: not every point was reached")
    })?;
    let mapped: Vec<SubspacePoint> = points.iter().map(|p| jordan_image(map, p)).collect();
    let distinct: BTreeSet<&SubspacePoint> = mapped.iter().collect();
    ensure(distinct.len() == points.len(), || {
        format!("{name}: not injective")
    })?;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if is_adjacent(&points[a], &points[b]).unwrap() {
                ensure(is_adjacent(&mapped[a], &mapped[b]).unwrap(), || {
                    format!("{name}: adjacency lost")
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut done = Vec::new();
    for f in [gf2(), gf4()] {
        let id = Matrix::identity(&f, N);
        let shear = Matrix::from_ints(&f, 2, 2, &[1, 1, 0, 1]).unwrap();
        let mut maps = vec![
            (
                "transpose",
                JordanMap::new(JordanKind::Antiautomorphism, 0, id.clone()).unwrap(),
            ),
            (
                "conjugation",
                JordanMap::new(JordanKind::Automorphism, 0, shear).unwrap(),
            ),
        ];
        if f.k() > 1 {
            maps.push((
                "frobenius",
                JordanMap::new(JordanKind::Automorphism, 1, id).unwrap(),
            ));
        }
        for (name, map) in &maps {
            jordan_checks(&f, name, map)?;
            done.push(format!("{name}/GF({})", f.order()));
        }
    }
    Ok(done.join(", "))
}

fn criterion_9() -> Outcome {
    let mut sizes = Vec::new();
    for (p, k, inv) in CONFIGS {
        let f = field(p, k, inv);
        let report = jordan_system_axioms_check(&f, N);
        ensure(report.holds(), || {
            format!("GF({p}^{k}): {:?}", report.violations)
        })?;
        // additive subgroup, closed under the fixed field of σ
        let hs: BTreeSet<Matrix> = enumerate_hermitian(&f, N).into_iter().collect();
        ensure(hs.contains(&Matrix::identity(&f, N)), || "I missing".into())?;
        for a in &hs {
            for b in &hs {
                ensure(hs.contains(&(a + b)), || {
                    format!("GF({p}^{k}): not closed under +")
                })?;
            }
            for c in f.fixed_elements() {
                ensure(hs.contains(&a.scale(c)), || {
                    format!("GF({p}^{k}): not closed under scaling")
                })?;
            }
        }
        sizes.push(report.hermitian_count);
    }
    Ok(format!("|H_σ| = {sizes:?}"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_jordanline"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &[
            "verify-theorem1",
            "--p",
            "3",
            "--k",
            "2",
            "--involution",
            "frobenius",
            "--n",
            "2",
        ],
        &[
            "verify-remarks",
            "--p",
            "3",
            "--k",
            "2",
            "--involution",
            "frobenius",
            "--seed",
            "42",
        ],
        &[
            "graph",
            "--relation",
            "adjacency",
            "--points",
            "isotropic",
            "--p",
            "3",
            "--format",
            "dot",
        ],
        &["jordan-check", "--p", "3", "--seed", "9"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let first = Sha256::digest(run_cli(args)?);
        let second = Sha256::digest(run_cli(args)?);
        ensure(first == second, || {
            format!("{args:?}: stdout differs between runs")
        })?;
        let path = dir.path().join(format!("run{i}.out"));
        let path = path.to_str().unwrap();
        let mut with_out = args.to_vec();
        with_out.extend(["--out", path]);
        run_cli(&with_out)?;
        let file = std::fs::read(path).map_err(|e| e.to_string())?;
        ensure(Sha256::digest(&file) == first, || {
            format!("{args:?}: --out differs from stdout")
        })?;
    }
    Ok(format!(
        "{} invocations, identical SHA-256 across runs and outputs",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Hermitian image equals isotropic points at four configurations",
            criterion_1,
        ),
        ("common complement postconditions", criterion_2),
        ("isotropic completion postconditions", criterion_3),
        ("decomposition roundtrip", criterion_4),
        ("sphere rank law", criterion_5),
        ("distant graph diameter and chain witness", criterion_6),
        ("annihilator", criterion_7),
        (
            "Jordan maps well defined and adjacency preserving",
            criterion_8,
        ),
        ("Jordan system axioms", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

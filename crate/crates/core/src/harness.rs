//! Budgeted exhaustive (or seeded sampled) sweeps over a configured
//! geometry: theorem verification, batch checks of the parametrisation
//! properties, and the distant and adjacency graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field, Involution};
use crate::hermitian::{
    bartolone_hermitian, enumerate_hermitian, hermitian_adjacent_star, hermitian_count,
    is_totally_isotropic, IsotropicPoint,
};
use crate::matrix::{enumerate_matrices, gaussian_binomial, Matrix, MatrixJson, Subspace};
use crate::projline::{
    annihilator, arithmetical_distance, bartolone, distant_chain_witness, embed_matrix_space,
    enumerate_points, is_adjacent, is_distant, jordan_action, jordan_image, BartolonePair,
    JordanKind, JordanMap, SubspacePoint,
};

pub const FORMAT_VERSION: u32 = 1;
/// Default cap on the number of Grassmannian points.
pub const DEFAULT_BUDGET: u128 = 1_000_000;
/// Cap on parameter pairs swept by [`verify_theorem1`].
pub const PAIR_BUDGET: u128 = 10_000_000;
/// Cap on nodes of a [`RelationGraph`].
pub const GRAPH_NODE_BUDGET: usize = 10_000;
/// Sweeps at or below this size run exhaustively in [`verify_remarks`].
pub const EXHAUSTIVE_LIMIT: u128 = 100_000;
/// Sample size used when a sweep is too large to run exhaustively.
pub const SAMPLE_SIZE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub p: u32,
    pub k: u32,
    pub involution: Involution,
    pub n: usize,
    pub budget: u128,
}

impl GeometryConfig {
    pub fn new(p: u32, k: u32, involution: Involution, n: usize) -> GeometryConfig {
        GeometryConfig {
            p,
            k,
            involution,
            n,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> GeometryConfig {
        self.budget = budget;
        self
    }

    /// `[2n choose n]_q`, saturating.
    pub fn grassmannian_size(&self) -> u128 {
        self.p
            .checked_pow(self.k)
            .and_then(|q| gaussian_binomial(2 * self.n as u32, self.n as u32, q as u128))
            .unwrap_or(u128::MAX)
    }

    /// Checks every constraint and builds the field.
    pub fn validate(&self) -> Result<Field> {
        if self.n < 2 {
            return Err(Error::InvalidBlockSize(self.n));
        }
        let field = Field::new(self.p, self.k, self.involution)?;
        let estimate = self.grassmannian_size();
        if estimate > self.budget {
            return Err(Error::BudgetExceeded {
                estimate,
                budget: self.budget,
            });
        }
        Ok(field)
    }
}

/// All points of `Gr_{2n,n}(K)` in canonical order; the index is the point ID.
pub fn enumerate_grassmannian(cfg: &GeometryConfig) -> Result<Vec<SubspacePoint>> {
    let field = cfg.validate()?;
    Ok(enumerate_points(&field, cfg.n))
}

/// Isotropic points paired with their Grassmannian IDs.
pub fn enumerate_isotropic_with_ids(cfg: &GeometryConfig) -> Result<Vec<(usize, IsotropicPoint)>> {
    Ok(enumerate_grassmannian(cfg)?
        .into_iter()
        .enumerate()
        .filter_map(|(id, p)| IsotropicPoint::new(p).ok().map(|ip| (id, ip)))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: usize,
    pub basis: MatrixJson,
}

pub fn point_records<'a>(
    points: impl IntoIterator<Item = (usize, &'a SubspacePoint)>,
) -> Vec<PointRecord> {
    points
        .into_iter()
        .map(|(id, p)| PointRecord {
            id,
            basis: p.to_json(),
        })
        .collect()
}

/// Report for a point listing (`relation` is `grassmannian` or `isotropic`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointsReport {
    pub format_version: u32,
    pub field_p: u32,
    pub field_k: u32,
    pub involution: Involution,
    pub n: usize,
    pub relation: String,
    pub count: usize,
    pub points: Vec<PointRecord>,
}

impl PointsReport {
    pub fn new(cfg: &GeometryConfig, relation: &str, points: Vec<PointRecord>) -> PointsReport {
        PointsReport {
            format_version: FORMAT_VERSION,
            field_p: cfg.p,
            field_k: cfg.k,
            involution: cfg.involution,
            n: cfg.n,
            relation: relation.into(),
            count: points.len(),
            points,
        }
    }

    /// `id,basis` with rows separated by `;` and entries by spaces.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,basis\n");
        for rec in &self.points {
            let rows: Vec<String> = rec.basis.entries.iter().map(|r| r.join(" ")).collect();
            writeln!(out, "{},{}", rec.id, rows.join(";")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Counts {
    pub hermitian: usize,
    pub isotropic: usize,
    pub bartolone_image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `isotropic_only` or `image_only`.
    pub side: String,
    pub point: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub format_version: u32,
    pub field_p: u32,
    pub field_k: u32,
    pub involution: Involution,
    pub n: usize,
    pub relation: String,
    pub counts: Theorem1Counts,
    pub equal: bool,
    pub witnesses: Vec<Witness>,
}

/// Compares the Bartolone image of `H_σ × H_σ` with the isotropy filter of
/// the Grassmannian.
pub fn verify_theorem1(cfg: &GeometryConfig) -> Result<Theorem1Report> {
    let field = cfg.validate()?;
    let n = cfg.n;
    let pairs = hermitian_count(&field, n).saturating_pow(2);
    if pairs > PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            estimate: pairs,
            budget: PAIR_BUDGET,
        });
    }
    let isotropic: BTreeSet<SubspacePoint> = enumerate_points(&field, n)
        .into_iter()
        .filter(is_totally_isotropic)
        .collect();
    let hs = enumerate_hermitian(&field, n);
    let mut image = BTreeSet::new();
    for t1 in &hs {
        for t2 in &hs {
            let p = bartolone_hermitian(&BartolonePair {
                t1: t1.clone(),
                t2: t2.clone(),
            })?;
            image.insert(p.into_point());
        }
    }
    let witnesses: Vec<Witness> = isotropic
        .difference(&image)
        .map(|p| Witness {
            side: "isotropic_only".into(),
            point: p.to_json(),
        })
        .chain(image.difference(&isotropic).map(|p| Witness {
            side: "image_only".into(),
            point: p.to_json(),
        }))
        .collect();
    Ok(Theorem1Report {
        format_version: FORMAT_VERSION,
        field_p: cfg.p,
        field_k: cfg.k,
        involution: cfg.involution,
        n,
        relation: "theorem1".into(),
        counts: Theorem1Counts {
            hermitian: hs.len(),
            isotropic: isotropic.len(),
            bartolone_image: image.len(),
        },
        equal: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Distant,
    Adjacency,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Distant => "distant",
            RelationKind::Adjacency => "adjacency",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSet {
    All,
    Isotropic,
}

/// Simple undirected graph on points; `node_ids` are Grassmannian IDs.
#[derive(Clone, Debug)]
pub struct RelationGraph {
    pub kind: RelationKind,
    pub point_set: PointSet,
    pub node_ids: Vec<usize>,
    pub points: Vec<SubspacePoint>,
    /// Pairs of positions into `node_ids`, `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphCounts {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub format_version: u32,
    pub field_p: u32,
    pub field_k: u32,
    pub involution: Involution,
    pub n: usize,
    pub relation: RelationKind,
    pub point_set: PointSet,
    pub counts: GraphCounts,
    pub diameter: Option<usize>,
    pub degrees: Vec<usize>,
    pub node_ids: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl RelationGraph {
    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_ids.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_ids.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// BFS distances from position `src`; `None` for unreachable nodes.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency_lists();
        bfs(&adj, src)
    }

    /// `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency_lists();
        let mut diam = 0;
        for s in 0..adj.len() {
            for d in bfs(&adj, s) {
                diam = diam.max(d?);
            }
        }
        Some(diam)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", self.kind.name()).unwrap();
        for id in &self.node_ids {
            writeln!(out, "  {id};").unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  {} -- {};", self.node_ids[a], self.node_ids[b]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn degree_csv(&self) -> String {
        let mut out = String::from("id,degree\n");
        for (id, d) in self.node_ids.iter().zip(self.degrees()) {
            writeln!(out, "{id},{d}").unwrap();
        }
        out
    }

    pub fn report(&self, cfg: &GeometryConfig) -> GraphReport {
        GraphReport {
            format_version: FORMAT_VERSION,
            field_p: cfg.p,
            field_k: cfg.k,
            involution: cfg.involution,
            n: cfg.n,
            relation: self.kind,
            point_set: self.point_set,
            counts: GraphCounts {
                nodes: self.node_ids.len(),
                edges: self.edges.len(),
            },
            diameter: self.diameter(),
            degrees: self.degrees(),
            node_ids: self.node_ids.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (self.node_ids[a], self.node_ids[b]))
                .collect(),
        }
    }
}

fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn build_graph(
    cfg: &GeometryConfig,
    kind: RelationKind,
    set: PointSet,
) -> Result<RelationGraph> {
    let all = enumerate_grassmannian(cfg)?;
    let (node_ids, points): (Vec<usize>, Vec<SubspacePoint>) = all
        .into_iter()
        .enumerate()
        .filter(|(_, p)| set == PointSet::All || is_totally_isotropic(p))
        .unzip();
    if points.len() > GRAPH_NODE_BUDGET {
        return Err(Error::BudgetExceeded {
            estimate: points.len() as u128,
            budget: GRAPH_NODE_BUDGET as u128,
        });
    }
    let mut edges = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let related = match kind {
                RelationKind::Distant => is_distant(&points[a], &points[b])?,
                RelationKind::Adjacency => is_adjacent(&points[a], &points[b])?,
            };
            if related {
                edges.push((a, b));
            }
        }
    }
    Ok(RelationGraph {
        kind,
        point_set: set,
        node_ids,
        points,
        edges,
    })
}

/// Exhaustive or seeded-sample iteration over parameter pairs `(T₁, T₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

pub fn random_matrix(rng: &mut impl Rng, field: &Field, rows: usize, cols: usize) -> Matrix {
    let q = field.order();
    let data = (0..rows * cols)
        .map(|_| field.elem(rng.gen_range(0..q)).unwrap())
        .collect();
    Matrix::new(field, rows, cols, data)
}

/// Calls `visit` on every pair of the sweep, stopping at the first `false`.
/// Returns the number of pairs visited and whether all passed.
pub fn sweep_pairs(
    field: &Field,
    n: usize,
    sweep: Sweep,
    mut visit: impl FnMut(&BartolonePair) -> bool,
) -> (u64, bool) {
    let mut count = 0;
    match sweep {
        Sweep::Exhaustive => {
            let all: Vec<Matrix> = enumerate_matrices(field, n, n).collect();
            for t1 in &all {
                for t2 in &all {
                    count += 1;
                    if !visit(&BartolonePair {
                        t1: t1.clone(),
                        t2: t2.clone(),
                    }) {
                        return (count, false);
                    }
                }
            }
        }
        Sweep::Sampled { count: size, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..size {
                let t1 = random_matrix(&mut rng, field, n, n);
                let t2 = random_matrix(&mut rng, field, n, n);
                count += 1;
                if !visit(&BartolonePair { t1, t2 }) {
                    return (count, false);
                }
            }
        }
    }
    (count, true)
}

/// `arithmetical_distance(R(I,0), R(T₂T₁ − I, T₂)) = rank T₂`.
pub fn check_rank_law(field: &Field, n: usize, sweep: Sweep) -> (u64, bool) {
    let origin = SubspacePoint::origin(field, n);
    sweep_pairs(field, n, sweep, |pair| {
        arithmetical_distance(&origin, &bartolone(pair)).unwrap() == pair.t2.rank()
    })
}

/// `(T₂T₁ − I, T₂) · (−T₂ / T₁T₂ − I) = 0` and the annihilator has rank `n`.
pub fn check_annihilator(field: &Field, n: usize, sweep: Sweep) -> (u64, bool) {
    sweep_pairs(field, n, sweep, |pair| {
        let ann = annihilator(pair);
        (&pair.representative() * &ann).is_zero() && ann.rank() == n
    })
}

/// `R(I,0) dis R(T₁,I) dis R(T₂T₁ − I, T₂)`.
pub fn check_distant_chain(field: &Field, n: usize, sweep: Sweep) -> (u64, bool) {
    let origin = SubspacePoint::origin(field, n);
    sweep_pairs(field, n, sweep, |pair| {
        let r = distant_chain_witness(pair);
        is_distant(&origin, &r).unwrap() && is_distant(&r, &bartolone(pair)).unwrap()
    })
}

/// The image of a point under a Jordan map does not depend on the chosen
/// parameter pair. Exhaustive sweeps group every pair by its point; sampled
/// sweeps compare each pair with a second representation of its point.
pub fn check_jordan_well_defined(
    map: &JordanMap,
    field: &Field,
    n: usize,
    sweep: Sweep,
) -> (u64, bool) {
    match sweep {
        Sweep::Exhaustive => {
            let mut images: HashMap<SubspacePoint, SubspacePoint> = HashMap::new();
            sweep_pairs(field, n, sweep, |pair| {
                let image = jordan_action(map, pair);
                match images.entry(bartolone(pair)) {
                    std::collections::hash_map::Entry::Occupied(e) => *e.get() == image,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(image);
                        true
                    }
                }
            })
        }
        Sweep::Sampled { .. } => sweep_pairs(field, n, sweep, |pair| {
            jordan_action(map, pair) == jordan_image(map, &bartolone(pair))
        }),
    }
}

/// Automorphism type: the action agrees with `x ↦ x^γ · diag(Q, Q)`.
/// Antiautomorphism type: `(T₂^ι T₁^ι − I, T₂^ι) · (0 −Q⁻¹ / Q⁻¹ 0) · ((T₂T₁ − I, T₂)^δ)^T = 0`.
pub fn check_jordan_formula(map: &JordanMap, field: &Field, n: usize, sweep: Sweep) -> (u64, bool) {
    let z = Matrix::zeros(field, n, n);
    match map.kind() {
        JordanKind::Automorphism => {
            let dq = Matrix::from_blocks(map.q(), &z, &z, map.q());
            sweep_pairs(field, n, sweep, |pair| {
                let natural = Subspace::row_space(&(&map.field_map(&pair.representative()) * &dq));
                *jordan_action(map, pair).space() == natural
            })
        }
        JordanKind::Antiautomorphism => {
            let qi = map.q_inv();
            let g = Matrix::from_blocks(&z, &(-qi), qi, &z);
            sweep_pairs(field, n, sweep, |pair| {
                let image = BartolonePair {
                    t1: map.apply(&pair.t1),
                    t2: map.apply(&pair.t2),
                };
                let rhs = map.field_map(&pair.representative()).transpose();
                (&(&image.representative() * &g) * &rhs).is_zero()
            })
        }
    }
}

/// `p ~ q ⇒ ι(p) ~ ι(q)` over the given point list; exhaustive over all
/// adjacent pairs when `sample` is `None`.
pub fn check_jordan_adjacency(
    map: &JordanMap,
    points: &[SubspacePoint],
    sample: Option<(usize, u64)>,
) -> (u64, bool) {
    let images: Vec<SubspacePoint> = points.iter().map(|p| jordan_image(map, p)).collect();
    let mut checked = 0;
    let mut test = |a: usize, b: usize| -> bool {
        if is_adjacent(&points[a], &points[b]).unwrap() {
            checked += 1;
            is_adjacent(&images[a], &images[b]).unwrap()
        } else {
            true
        }
    };
    let ok = match sample {
        None => (0..points.len()).all(|a| (a + 1..points.len()).all(|b| test(a, b))),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).all(|_| {
                let a = rng.gen_range(0..points.len());
                let b = rng.gen_range(0..points.len());
                test(a, b)
            })
        }
    };
    (checked, ok)
}

/// The Jordan maps exercised by [`verify_remarks`]: transposition,
/// conjugation by `I + E₁₂`, and for `k > 1` the Frobenius variants.
pub fn standard_jordan_maps(field: &Field, n: usize) -> Vec<(String, JordanMap)> {
    let id = Matrix::identity(field, n);
    let mut shear = id.clone();
    shear.set(0, 1, Elem::ONE);
    let mut maps = vec![
        (
            "transpose".to_string(),
            JordanMap::new(JordanKind::Antiautomorphism, 0, id.clone()),
        ),
        (
            "conjugate_shear".to_string(),
            JordanMap::new(JordanKind::Automorphism, 0, shear.clone()),
        ),
    ];
    if field.k() > 1 {
        maps.push((
            "frobenius".to_string(),
            JordanMap::new(JordanKind::Automorphism, 1, id),
        ));
        maps.push((
            "frobenius_transpose_shear".to_string(),
            JordanMap::new(JordanKind::Antiautomorphism, 1, shear),
        ));
    }
    maps.into_iter()
        .map(|(name, m)| (name, m.expect("Q is invertible")))
        .collect()
}

/// The `(n−1)`-space `{(y, 0) : Σ y_i c_i^σ = 0}` shared by all points of
/// the Hermitian star of `c⁰`.
pub fn star_kernel(field: &Field, c0: &[Elem]) -> Subspace {
    let n = c0.len();
    let mut constraints = Matrix::zeros(field, n + 1, 2 * n);
    for (i, &c) in c0.iter().enumerate() {
        constraints.set(0, i, field.sigma(c));
        constraints.set(1 + i, n + i, Elem::ONE);
    }
    // rows of the kernel, restricted: constraints·x^T = 0
    Subspace::row_space(&constraints.right_kernel())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarksReport {
    pub format_version: u32,
    pub field_p: u32,
    pub field_k: u32,
    pub involution: Involution,
    pub n: usize,
    pub relation: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

fn pair_sweep_for(field: &Field, n: usize, seed: u64) -> Sweep {
    let matrices = (field.order() as u128).saturating_pow((n * n) as u32);
    if matrices.saturating_mul(matrices) <= EXHAUSTIVE_LIMIT {
        Sweep::Exhaustive
    } else {
        Sweep::Sampled {
            count: SAMPLE_SIZE,
            seed,
        }
    }
}

fn jordan_checks(
    field: &Field,
    n: usize,
    pair_sweep: Sweep,
    points: Option<&[SubspacePoint]>,
    exhaustive_points: bool,
    seed: u64,
) -> Vec<CheckResult> {
    let exhaustive_pairs = pair_sweep == Sweep::Exhaustive;
    let mut checks = Vec::new();
    let mut push = |name: String, (checked, passed): (u64, bool), exhaustive: bool| {
        checks.push(CheckResult {
            name,
            passed,
            checked,
            exhaustive,
        });
    };
    for (name, map) in standard_jordan_maps(field, n) {
        push(
            format!("jordan_well_defined_{name}"),
            check_jordan_well_defined(&map, field, n, pair_sweep),
            exhaustive_pairs,
        );
        push(
            format!("jordan_formula_{name}"),
            check_jordan_formula(&map, field, n, pair_sweep),
            exhaustive_pairs,
        );
        if let Some(points) = points {
            let sample = (!exhaustive_points).then_some((SAMPLE_SIZE, seed));
            push(
                format!("jordan_adjacency_{name}"),
                check_jordan_adjacency(&map, points, sample),
                exhaustive_points,
            );
        }
    }
    checks
}

fn point_list(cfg: &GeometryConfig, field: &Field) -> (Option<Vec<SubspacePoint>>, bool) {
    let total = cfg.grassmannian_size();
    let points = (total <= GRAPH_NODE_BUDGET as u128).then(|| enumerate_points(field, cfg.n));
    (points, total.saturating_mul(total) <= 4 * EXHAUSTIVE_LIMIT)
}

/// Well-definedness, explicit formula and adjacency preservation for the
/// maps of [`standard_jordan_maps`].
pub fn verify_jordan(cfg: &GeometryConfig, seed: u64) -> Result<RemarksReport> {
    let field = cfg.validate()?;
    let (points, exhaustive_points) = point_list(cfg, &field);
    let checks = jordan_checks(
        &field,
        cfg.n,
        pair_sweep_for(&field, cfg.n, seed),
        points.as_deref(),
        exhaustive_points,
        seed,
    );
    Ok(RemarksReport::new(cfg, "jordan", seed, checks))
}

impl RemarksReport {
    fn new(
        cfg: &GeometryConfig,
        relation: &str,
        seed: u64,
        checks: Vec<CheckResult>,
    ) -> RemarksReport {
        RemarksReport {
            format_version: FORMAT_VERSION,
            field_p: cfg.p,
            field_k: cfg.k,
            involution: cfg.involution,
            n: cfg.n,
            relation: relation.into(),
            seed,
            all_passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Batch driver for the consequences of the parametrisation: embedding
/// injectivity, the sphere rank law, the annihilator formula, the distant
/// chain, Jordan-map well-definedness and adjacency preservation, Grassmann
/// graph distances, and the Hermitian adjacent star.
pub fn verify_remarks(cfg: &GeometryConfig, seed: u64) -> Result<RemarksReport> {
    let field = cfg.validate()?;
    let n = cfg.n;
    let q = field.order() as u128;
    let matrices = q.saturating_pow((n * n) as u32);
    let pair_sweep = pair_sweep_for(&field, n, seed);
    let exhaustive_pairs = pair_sweep == Sweep::Exhaustive;
    let mut checks = Vec::new();
    let push = |checks: &mut Vec<CheckResult>,
                name: &str,
                (checked, passed): (u64, bool),
                exhaustive: bool| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed,
            checked,
            exhaustive,
        });
    };

    // embedding injectivity for T1 = 0 and T1 = I
    for (label, t1_0) in [
        ("embedding_injective_t1_zero", Matrix::zeros(&field, n, n)),
        (
            "embedding_injective_t1_identity",
            Matrix::identity(&field, n),
        ),
    ] {
        let inputs: BTreeSet<Matrix> = if matrices <= EXHAUSTIVE_LIMIT {
            enumerate_matrices(&field, n, n).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLE_SIZE)
                .map(|_| random_matrix(&mut rng, &field, n, n))
                .collect()
        };
        let images: BTreeSet<SubspacePoint> = inputs
            .iter()
            .map(|t2| embed_matrix_space(&t1_0, t2).unwrap())
            .collect();
        push(
            &mut checks,
            label,
            (inputs.len() as u64, images.len() == inputs.len()),
            matrices <= EXHAUSTIVE_LIMIT,
        );
    }

    push(
        &mut checks,
        "sphere_rank_law",
        check_rank_law(&field, n, pair_sweep),
        exhaustive_pairs,
    );
    push(
        &mut checks,
        "annihilator",
        check_annihilator(&field, n, pair_sweep),
        exhaustive_pairs,
    );
    push(
        &mut checks,
        "distant_chain",
        check_distant_chain(&field, n, pair_sweep),
        exhaustive_pairs,
    );

    let (points, exhaustive_points) = point_list(cfg, &field);

    checks.extend(jordan_checks(
        &field,
        n,
        pair_sweep,
        points.as_deref(),
        exhaustive_points,
        seed,
    ));

    if let Some(points) = &points {
        if exhaustive_points {
            let adj = build_graph(cfg, RelationKind::Adjacency, PointSet::All)?;
            let mut checked = 0;
            let mut ok = true;
            for s in 0..points.len() {
                for (t, d) in adj.distances_from(s).into_iter().enumerate() {
                    checked += 1;
                    ok &= d == Some(arithmetical_distance(&points[s], &points[t])?);
                }
            }
            push(
                &mut checks,
                "grassmann_distance_is_arithmetical",
                (checked, ok),
                true,
            );
            let dis = build_graph(cfg, RelationKind::Distant, PointSet::All)?;
            push(
                &mut checks,
                "distant_diameter_at_most_2",
                (1, dis.diameter().is_some_and(|d| d <= 2)),
                true,
            );
        }
    }

    // Hermitian star through R(I,0) for c0 = e_1
    let hermitian_sweep =
        hermitian_count(&field, n).saturating_mul(field.fixed_elements().len() as u128);
    if hermitian_sweep <= EXHAUSTIVE_LIMIT {
        let mut c0 = vec![Elem::ZERO; n];
        c0[0] = Elem::ONE;
        let star = hermitian_adjacent_star(&c0, &field, n)?;
        let origin = SubspacePoint::origin(&field, n);
        let mut ok = star.iter().any(|p| *p.point() == origin);
        for (i, a) in star.iter().enumerate() {
            ok &= arithmetical_distance(&origin, a.point())? <= 1;
            for b in &star[i + 1..] {
                ok &= is_adjacent(a.point(), b.point())?;
            }
        }
        if let Some(points) = &points {
            let kernel = star_kernel(&field, &c0);
            let through: Vec<&SubspacePoint> = points
                .iter()
                .filter(|p| is_totally_isotropic(p) && p.space().contains(&kernel).unwrap())
                .collect();
            ok &= through.len() == star.len()
                && through.iter().zip(&star).all(|(a, b)| *a == b.point());
        }
        push(
            &mut checks,
            "hermitian_adjacent_star",
            (star.len() as u64, ok),
            true,
        );
    }

    Ok(RemarksReport::new(cfg, "remarks", seed, checks))
}

/// Counts of points per arithmetical distance from `R(I,0)`, keyed by distance.
pub fn sphere_sizes(points: &[SubspacePoint]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    if let Some(first) = points.first() {
        let origin = SubspacePoint::origin(first.field(), first.n());
        for p in points {
            *out.entry(arithmetical_distance(&origin, p).unwrap())
                .or_default() += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u32, k: u32, inv: Involution) -> GeometryConfig {
        GeometryConfig::new(p, k, inv, 2)
    }

    #[test]
    fn grassmannian_sizes() {
        assert_eq!(
            enumerate_grassmannian(&cfg(2, 1, Involution::Identity))
                .unwrap()
                .len(),
            35
        );
        assert_eq!(
            enumerate_grassmannian(&cfg(3, 1, Involution::Identity))
                .unwrap()
                .len(),
            130
        );
        let pts = enumerate_grassmannian(&cfg(2, 1, Involution::Identity)).unwrap();
        let set: BTreeSet<_> = pts.iter().collect();
        assert_eq!(set.len(), pts.len());
    }

    #[test]
    fn config_validation() {
        let big = GeometryConfig::new(2, 1, Involution::Identity, 7);
        assert!(matches!(big.validate(), Err(Error::BudgetExceeded { .. })));
        let small_n = GeometryConfig::new(2, 1, Involution::Identity, 1);
        assert_eq!(small_n.validate(), Err(Error::InvalidBlockSize(1)));
        assert!(cfg(4, 1, Involution::Identity).validate().is_err());
        let tight = cfg(2, 1, Involution::Identity).with_budget(34);
        assert!(matches!(
            tight.validate(),
            Err(Error::BudgetExceeded { estimate: 35, .. })
        ));
    }

    #[test]
    fn theorem1_small() {
        let r = verify_theorem1(&cfg(2, 1, Involution::Identity)).unwrap();
        assert!(r.equal);
        assert_eq!(r.counts.isotropic, 15);
        assert_eq!(r.counts.bartolone_image, 15);
        let r = verify_theorem1(&cfg(2, 2, Involution::FrobeniusHalf)).unwrap();
        assert!(r.equal);
        assert_eq!(r.counts.isotropic, 27);
    }

    #[test]
    fn graphs_have_no_loops_and_small_diameter() {
        let c = cfg(2, 1, Involution::Identity);
        let g = build_graph(&c, RelationKind::Distant, PointSet::All).unwrap();
        assert_eq!(g.node_ids.len(), 35);
        assert!(g.edges.iter().all(|(a, b)| a != b));
        assert!(g.diameter().unwrap() <= 2);
        let dot = g.to_dot();
        assert!(dot.starts_with("graph distant {\n"));
        assert_eq!(
            dot.lines().filter(|l| l.contains("--")).count(),
            g.edges.len()
        );
        let csv = g.degree_csv();
        assert_eq!(csv.lines().count(), 36);
    }

    #[test]
    fn dual_polar_graph_diameter_is_n() {
        let g = build_graph(
            &cfg(2, 1, Involution::Identity),
            RelationKind::Adjacency,
            PointSet::Isotropic,
        )
        .unwrap();
        assert_eq!(g.node_ids.len(), 15);
        assert_eq!(g.diameter(), Some(2));
        // generalized quadrangle W(2): each point on q + 1 = 3 lines, each line has 3 points
        assert!(g.degrees().iter().all(|&d| d == 6));
    }

    #[test]
    fn remarks_small() {
        let r = verify_remarks(&cfg(2, 1, Involution::Identity), 7).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{} failed", c.name);
        }
        assert!(r.all_passed);
    }

    #[test]
    fn sphere_sizes_gf2() {
        let pts = enumerate_grassmannian(&cfg(2, 1, Involution::Identity)).unwrap();
        let sizes = sphere_sizes(&pts);
        assert_eq!(sizes.values().sum::<usize>(), 35);
        assert_eq!(sizes[&0], 1);
        assert_eq!(sizes[&1], 18);
        assert_eq!(sizes[&2], 16);
    }
}

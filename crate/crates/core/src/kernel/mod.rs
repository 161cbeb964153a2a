//! Kernels for k-planarity parameterized by vertex cover and by
//! neighborhood diversity.
//!
//! Every vertex outside a vertex cover `S` has all its neighbors in `S`.
//! A vertex of degree at least two is labeled by its two smallest
//! neighbors. Three rules then bound what is left: too many distinct labels
//! rejects, a label class of degree-3+ vertices that shares a third
//! neighbor 7k+1 times is a `K_{7k+1,3}` and rejects, and degree-2 vertices
//! on one pair are trimmed to `16 k^2 |S|`.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{approx_vertex_cover, strip_low_degree, twin_partition, Graph, TwinKind, Vertex};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("t must be at least 1")]
    ZeroT,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("edge {{{0}, {1}}} is not covered")]
    NotACover(Vertex, Vertex),
}

/// Smallest integer `r` with `r * r >= q`.
fn ceil_sqrt(q: u128) -> u128 {
    let mut r = (q as f64).sqrt() as u128;
    while r * r < q {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= q {
        r -= 1;
    }
    r
}

/// `ceil(3.81 * s * sqrt(2k))`, the most labels the diversity rule lets
/// through, computed without floating point.
pub fn label_bound(s: usize, k: usize) -> u64 {
    let q = 290_322u128 * k as u128 * (s as u128) * (s as u128);
    ceil_sqrt(q).div_ceil(100) as u64
}

/// `t = 8 ceil(sqrt(2k))`: a `K_{t,t}` has more edges than any k-planar
/// graph on `2t` vertices.
pub fn biclique_threshold(k: usize) -> usize {
    8 * ceil_sqrt(2 * k as u128) as usize
}

/// Degree-3+ vertices allowed per label: `7k(|S| - 2)`.
fn deg3_per_label(s: usize, k: usize) -> u64 {
    7 * k as u64 * s.saturating_sub(2) as u64
}

/// Degree-2 vertices kept per neighbor pair: `16 k^2 |S|`.
pub fn deg2_keep(s: usize, k: usize) -> usize {
    16 * k * k * s
}

fn membership(g: &Graph, cover: &[Vertex]) -> Result<Vec<bool>, KernelError> {
    let mut in_s = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return Err(KernelError::OutOfRange { vertex: v, n: g.n() });
        }
        in_s[v] = true;
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !in_s[u] && !in_s[v]) {
        return Err(KernelError::NotACover(u, v));
    }
    Ok(in_s)
}

/// Sorts `(a, b, v)` triples whose `v` are already increasing. When they
/// pack into 64 bits this is an LSD radix sort on `(a, b)` with 11-bit
/// digits; otherwise a comparison sort.
fn sort_triples(triples: &mut [[u32; 3]], n: usize) {
    let bits = (usize::BITS - n.leading_zeros()).max(1);
    if 3 * bits > 64 {
        triples.sort_unstable();
        return;
    }
    let pack = |[a, b, v]: [u32; 3]| ((a as u64) << (2 * bits)) | ((b as u64) << bits) | v as u64;
    let mask = (1u64 << bits) - 1;
    let mut cur: Vec<u64> = triples.iter().map(|&t| pack(t)).collect();
    let mut next = vec![0u64; cur.len()];
    let mut count = [0usize; 1 << 11];
    let mut shift = bits;
    while shift < 3 * bits {
        count.fill(0);
        for &x in &cur {
            count[(x >> shift) as usize & 0x7ff] += 1;
        }
        if count.contains(&cur.len()) {
            shift += 11;
            continue;
        }
        let mut sum = 0;
        for c in count.iter_mut() {
            let here = *c;
            *c = sum;
            sum += here;
        }
        for &x in &cur {
            let d = (x >> shift) as usize & 0x7ff;
            next[count[d]] = x;
            count[d] += 1;
        }
        std::mem::swap(&mut cur, &mut next);
        shift += 11;
    }
    for (t, x) in triples.iter_mut().zip(cur) {
        *t = [(x >> (2 * bits)) as u32, ((x >> bits) & mask) as u32, (x & mask) as u32];
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiLabeling {
    /// Sorted cover.
    pub cover: Vec<Vertex>,
    /// `(v, [a, b])` for every vertex outside the cover with degree at
    /// least two, in increasing `v`; `a < b` are its two smallest neighbors.
    pub labels: Vec<(Vertex, [Vertex; 2])>,
    /// Number of distinct labels.
    pub distinct: usize,
}

pub fn pi_labeling(g: &Graph, cover: &[Vertex]) -> Result<PiLabeling, KernelError> {
    let in_s = membership(g, cover)?;
    let labels = (0..g.n())
        .filter(|&v| !in_s[v] && g.degree(v) >= 2)
        .map(|v| {
            let nb = g.neighbors(v);
            (v, [nb[0], nb[1]])
        })
        .collect();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    Ok(PiLabeling {
        cover,
        labels,
        distinct: Grouped::new(g, &in_s).run_count(),
    })
}

// Outside vertices of degree at least two, grouped by label. Run `i` is
// `members[bounds[i]..bounds[i + 1]]`, in increasing id, with label
// `labels[i]`.
struct Grouped {
    members: Vec<u32>,
    labels: Vec<[u32; 2]>,
    bounds: Vec<u32>,
}

impl Grouped {
    fn new(g: &Graph, in_s: &[bool]) -> Self {
        assert!(g.n() < u32::MAX as usize, "graph too large for the kernel");
        let mut triples: Vec<[u32; 3]> = (0..g.n())
            .filter(|&v| !in_s[v] && g.degree(v) >= 2)
            .map(|v| {
                let nb = g.neighbors(v);
                [nb[0] as u32, nb[1] as u32, v as u32]
            })
            .collect();
        sort_triples(&mut triples, g.n());
        let mut members = Vec::with_capacity(triples.len());
        let mut labels = Vec::new();
        let mut bounds = Vec::new();
        for (i, &[a, b, v]) in triples.iter().enumerate() {
            if labels.last() != Some(&[a, b]) {
                labels.push([a, b]);
                bounds.push(i as u32);
            }
            members.push(v);
        }
        bounds.push(members.len() as u32);
        Grouped {
            members,
            labels,
            bounds,
        }
    }

    fn run_count(&self) -> usize {
        self.labels.len()
    }

    fn runs(&self) -> impl Iterator<Item = ([Vertex; 2], impl Iterator<Item = Vertex> + '_)> + '_ {
        self.labels.iter().zip(self.bounds.windows(2)).map(|(&[a, b], w)| {
            let run = &self.members[w[0] as usize..w[1] as usize];
            ([a as Vertex, b as Vertex], run.iter().map(|&v| v as Vertex))
        })
    }
}

/// Why a rule declared the graph not k-planar. Vertex ids refer to the
/// graph the rule ran on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RuleReject {
    /// More distinct labels than `3.81 |S| sqrt(2k)`.
    Diversity { labels: usize, cover_size: usize, k: usize },
    /// `twins` all have `pair` and `third` as neighbors: a `K_{7k+1,3}`.
    Deg3Twins {
        pair: [Vertex; 2],
        third: Vertex,
        twins: Vec<Vertex>,
    },
    /// A complete bipartite `K_{t,t}` with `t = 8 ceil(sqrt(2k))`.
    Biclique { left: Vec<Vertex>, right: Vec<Vertex> },
}

impl RuleReject {
    fn relabel(self, old: &[Vertex]) -> Self {
        let map = |v: Vertex| old[v];
        match self {
            RuleReject::Diversity { .. } => self,
            RuleReject::Deg3Twins { pair, third, twins } => RuleReject::Deg3Twins {
                pair: pair.map(map),
                third: map(third),
                twins: twins.into_iter().map(map).collect(),
            },
            RuleReject::Biclique { left, right } => RuleReject::Biclique {
                left: left.into_iter().map(map).collect(),
                right: right.into_iter().map(map).collect(),
            },
        }
    }
}

/// Rejects when `100^2 #π^2 > 381^2 2k |S|^2`.
pub fn rule_diversity(pl: &PiLabeling, k: usize) -> Option<RuleReject> {
    diversity_reject(pl.distinct, pl.cover.len(), k)
}

fn diversity_reject(labels: usize, cover_size: usize, k: usize) -> Option<RuleReject> {
    let (d, s) = (labels as u128, cover_size as u128);
    (10_000 * d * d > 290_322 * k as u128 * s * s).then_some(RuleReject::Diversity { labels, cover_size, k })
}

/// Looks for `7k + 1` outside vertices of degree at least three that share
/// a label and one more neighbor. Any class of `7k + 1` false twins of
/// degree at least three is such a set. When nothing is found, no label
/// has more than `7k(|S| - 2)` such vertices.
pub fn rule_deg3_twins(g: &Graph, cover: &[Vertex], k: usize) -> Result<Option<RuleReject>, KernelError> {
    let in_s = membership(g, cover)?;
    Ok(deg3_twins(g, &Grouped::new(g, &in_s), k))
}

fn deg3_twins(g: &Graph, grouped: &Grouped, k: usize) -> Option<RuleReject> {
    let need = 7 * k + 1;
    let mut count = vec![0usize; g.n()];
    let mut touched = Vec::new();
    let mut members = Vec::new();
    for (pair, run) in grouped.runs() {
        members.clear();
        members.extend(run.filter(|&v| g.degree(v) >= 3));
        let mut hit = None;
        for &v in &members {
            for &w in &g.neighbors(v)[2..] {
                if count[w] == 0 {
                    touched.push(w);
                }
                count[w] += 1;
                if count[w] >= need && hit.is_none() {
                    hit = Some(w);
                }
            }
        }
        for w in touched.drain(..) {
            count[w] = 0;
        }
        if let Some(third) = hit {
            let twins: Vec<Vertex> = members
                .iter()
                .copied()
                .filter(|&v| g.has_edge(v, third))
                .take(need)
                .collect();
            return Some(RuleReject::Deg3Twins {
                pair,
                third,
                twins,
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deg2Trim {
    pub graph: Graph,
    /// Old id of every vertex of `graph`.
    pub kept: Vec<Vertex>,
    /// Deleted vertices, increasing.
    pub deleted: Vec<Vertex>,
}

/// Keeps at most `16 k^2 |S|` outside degree-2 vertices per neighbor pair,
/// deleting the largest ids.
pub fn rule_deg2_twins(g: &Graph, cover: &[Vertex], k: usize) -> Result<Deg2Trim, KernelError> {
    let in_s = membership(g, cover)?;
    let s = in_s.iter().filter(|&&x| x).count();
    let deleted = deg2_excess(g, &Grouped::new(g, &in_s), deg2_keep(s, k));
    let (graph, kept) = g.remove_vertices(&deleted);
    Ok(Deg2Trim {
        graph,
        kept,
        deleted,
    })
}

// Outside degree-2 vertices beyond `keep` per neighbor pair, increasing.
fn deg2_excess(g: &Graph, grouped: &Grouped, keep: usize) -> Vec<Vertex> {
    let mut deleted = Vec::new();
    for (_, members) in grouped.runs() {
        deleted.extend(members.filter(|&v| g.degree(v) == 2).skip(keep));
    }
    deleted.sort_unstable();
    deleted
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwinCover {
    Cover(Vec<Vertex>),
    Biclique { left: Vec<Vertex>, right: Vec<Vertex> },
}

/// A vertex cover of size at most `2 d t` built from twin classes, or a
/// `K_{t,t}`. True-twin classes go in whole; an uncovered edge between two
/// false-twin classes puts the smaller class in.
pub fn twin_vertex_cover(g: &Graph, t: usize) -> Result<TwinCover, KernelError> {
    if t == 0 {
        return Err(KernelError::ZeroT);
    }
    let tp = twin_partition(g);
    let mut taken = vec![false; tp.classes.len()];
    for (i, c) in tp.classes.iter().enumerate() {
        if c.kind == TwinKind::TrueTwin {
            if c.vertices.len() >= 2 * t {
                return Ok(TwinCover::Biclique {
                    left: c.vertices[..t].to_vec(),
                    right: c.vertices[t..2 * t].to_vec(),
                });
            }
            taken[i] = true;
        }
    }
    for &(u, v) in g.edges() {
        let (a, b) = (tp.class_of[u], tp.class_of[v]);
        if taken[a] || taken[b] {
            continue;
        }
        let (la, lb) = (tp.classes[a].vertices.len(), tp.classes[b].vertices.len());
        if la >= t && lb >= t {
            return Ok(TwinCover::Biclique {
                left: tp.classes[a].vertices[..t].to_vec(),
                right: tp.classes[b].vertices[..t].to_vec(),
            });
        }
        taken[if lb < la { b } else { a }] = true;
    }
    let mut cover: Vec<Vertex> = (0..g.n()).filter(|&v| taken[tp.class_of[v]]).collect();
    cover.sort_unstable();
    Ok(TwinCover::Cover(cover))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleName {
    StripLowDegree,
    TwinCover,
    Diversity,
    Deg3Twins,
    Deg2Twins,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Firing {
    pub rule: RuleName,
    /// Vertices deleted (0 for a rejection).
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `ceil(3.81 |S| sqrt(2k))`.
    pub label_bound: u64,
    /// `7k + 1`.
    pub deg3_twins: usize,
    /// `16 k^2 |S|`.
    pub deg2_keep: usize,
    /// `7k(|S| - 2) * label_bound`.
    pub deg3_bound: u64,
    /// `16 k^2 |S| * label_bound`.
    pub deg2_bound: u64,
    /// `8 ceil(sqrt(2k))` when the cover came from twin classes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub biclique_t: Option<usize>,
}

impl Thresholds {
    fn new(s: usize, k: usize) -> Self {
        let lb = label_bound(s, k);
        Thresholds {
            label_bound: lb,
            deg3_twins: 7 * k + 1,
            deg2_keep: deg2_keep(s, k),
            deg3_bound: deg3_per_label(s, k) * lb,
            deg2_bound: deg2_keep(s, k) as u64 * lb,
            biclique_t: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum KernelVerdict {
    /// Vertex ids in the reason are ids of the input graph.
    NotKPlanar { reason: RuleReject },
    /// `original[v]` is the input id of kernel vertex `v`.
    Kernel { graph: Graph, original: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub k: usize,
    pub verdict: KernelVerdict,
    /// Cover used by the rules, in input ids.
    pub cover: Vec<Vertex>,
    pub labels: usize,
    pub thresholds: Thresholds,
    pub fired: Vec<Firing>,
    pub n_before: usize,
    pub m_before: usize,
    pub n_after: usize,
    pub m_after: usize,
    /// Every deleted vertex in input ids, in deletion order.
    pub deleted: Vec<Vertex>,
    /// Kernel vertices outside the cover with degree at least three, and
    /// with degree two.
    pub outside_deg3: usize,
    pub outside_deg2: usize,
    pub elapsed_ms: f64,
}

impl KernelReport {
    pub fn kernel(&self) -> Option<&Graph> {
        match &self.verdict {
            KernelVerdict::Kernel { graph, .. } => Some(graph),
            KernelVerdict::NotKPlanar { .. } => None,
        }
    }

    /// The two size bounds on outside vertices.
    pub fn within_bounds(&self) -> bool {
        self.outside_deg3 as u64 <= self.thresholds.deg3_bound
            && self.outside_deg2 as u64 <= self.thresholds.deg2_bound
    }
}

/// Vertex-cover kernel: strip leaves, take the greedy matching cover, label,
/// then apply the diversity, degree-3 and degree-2 rules.
pub fn kernelize_vc(g: &Graph, k: usize) -> Result<KernelReport, KernelError> {
    run_pipeline(g, k, None, Vec::new(), None)
}

/// [`kernelize_vc`] with a caller-supplied vertex cover of `g`.
pub fn kernelize_vc_with_cover(g: &Graph, k: usize, cover: &[Vertex]) -> Result<KernelReport, KernelError> {
    membership(g, cover)?;
    run_pipeline(g, k, Some(cover), Vec::new(), None)
}

/// Neighborhood-diversity kernel: a twin-class cover with
/// `t = 8 ceil(sqrt(2k))`, or rejection on a `K_{t,t}`.
pub fn kernelize_nd(g: &Graph, k: usize) -> Result<KernelReport, KernelError> {
    if k == 0 {
        return Err(KernelError::ZeroK);
    }
    let start = Instant::now();
    let t = biclique_threshold(k);
    match twin_vertex_cover(g, t)? {
        TwinCover::Biclique { left, right } => {
            let mut thresholds = Thresholds::new(0, k);
            thresholds.biclique_t = Some(t);
            Ok(KernelReport {
                k,
                verdict: KernelVerdict::NotKPlanar {
                    reason: RuleReject::Biclique { left, right },
                },
                cover: Vec::new(),
                labels: 0,
                thresholds,
                fired: vec![Firing {
                    rule: RuleName::TwinCover,
                    count: 0,
                }],
                n_before: g.n(),
                m_before: g.m(),
                n_after: g.n(),
                m_after: g.m(),
                deleted: Vec::new(),
                outside_deg3: 0,
                outside_deg2: 0,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        }
        TwinCover::Cover(cover) => run_pipeline(
            g,
            k,
            Some(&cover),
            vec![Firing {
                rule: RuleName::TwinCover,
                count: 0,
            }],
            Some(t),
        ),
    }
}

// Vertex and edge counts, then outside vertices of degree 3+ and 2.
fn outside_stats(g: &Graph, cover: &[Vertex]) -> (usize, usize, usize, usize) {
    let mut in_c = vec![false; g.n()];
    for &v in cover {
        in_c[v] = true;
    }
    let (mut deg3, mut deg2) = (0, 0);
    for v in (0..g.n()).filter(|&v| !in_c[v]) {
        match g.degree(v) {
            2 => deg2 += 1,
            d if d >= 3 => deg3 += 1,
            _ => {}
        }
    }
    (g.n(), g.m(), deg3, deg2)
}

fn run_pipeline(
    g: &Graph,
    k: usize,
    given: Option<&[Vertex]>,
    mut fired: Vec<Firing>,
    biclique_t: Option<usize>,
) -> Result<KernelReport, KernelError> {
    if k == 0 {
        return Err(KernelError::ZeroK);
    }
    let start = Instant::now();
    let stripped = strip_low_degree(g);
    let h = &stripped.graph;
    let old = &stripped.kept;
    let (h_n, h_m) = (h.n(), h.m());
    let mut deleted = stripped.removed.clone();
    if !deleted.is_empty() {
        fired.push(Firing {
            rule: RuleName::StripLowDegree,
            count: deleted.len(),
        });
    }
    // Cover in stripped ids.
    let cover: Vec<Vertex> = match given {
        Some(c) => {
            let mut in_c = vec![false; g.n()];
            for &v in c {
                in_c[v] = true;
            }
            (0..h.n()).filter(|&v| in_c[old[v]]).collect()
        }
        None => approx_vertex_cover(h),
    };
    let s = cover.len();
    let mut thresholds = Thresholds::new(s, k);
    thresholds.biclique_t = biclique_t;
    let cover_input: Vec<Vertex> = cover.iter().map(|&v| old[v]).collect();
    // The cover is known to cover `h` here, so the rules skip the check.
    let mut in_s = vec![false; h.n()];
    for &v in &cover {
        in_s[v] = true;
    }
    let grouped = Grouped::new(h, &in_s);
    let distinct = grouped.run_count();

    let finish = |verdict: KernelVerdict,
                  fired: Vec<Firing>,
                  deleted: Vec<Vertex>,
                  after: Option<(usize, usize, usize, usize)>| {
        let (n_after, m_after, outside_deg3, outside_deg2) = after.unwrap_or((h_n, h_m, 0, 0));
        KernelReport {
            k,
            verdict,
            cover: cover_input.clone(),
            labels: distinct,
            thresholds: thresholds.clone(),
            fired,
            n_before: g.n(),
            m_before: g.m(),
            n_after,
            m_after,
            deleted,
            outside_deg3,
            outside_deg2,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    };

    if let Some(r) = diversity_reject(distinct, s, k) {
        fired.push(Firing {
            rule: RuleName::Diversity,
            count: 0,
        });
        return Ok(finish(KernelVerdict::NotKPlanar { reason: r }, fired, deleted, None));
    }
    if let Some(r) = deg3_twins(h, &grouped, k) {
        fired.push(Firing {
            rule: RuleName::Deg3Twins,
            count: 0,
        });
        let reason = r.relabel(old);
        return Ok(finish(KernelVerdict::NotKPlanar { reason }, fired, deleted, None));
    }
    let excess = deg2_excess(h, &grouped, deg2_keep(s, k));
    let (kg, kcover, original) = if excess.is_empty() {
        (stripped.graph, cover, stripped.kept)
    } else {
        fired.push(Firing {
            rule: RuleName::Deg2Twins,
            count: excess.len(),
        });
        deleted.extend(excess.iter().map(|&v| old[v]));
        let (kg, kept) = h.remove_vertices(&excess);
        // Cover vertices are never deleted, so their kernel ids follow
        // from `kept`.
        let mut new_id = vec![usize::MAX; h.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let kcover: Vec<Vertex> = cover.iter().map(|&v| new_id[v]).collect();
        let original: Vec<Vertex> = kept.iter().map(|&v| old[v]).collect();
        (kg, kcover, original)
    };
    let stats = outside_stats(&kg, &kcover);
    let report = finish(
        KernelVerdict::Kernel { graph: kg, original },
        fired,
        deleted,
        Some(stats),
    );
    debug_assert!(report.within_bounds());
    Ok(report)
}

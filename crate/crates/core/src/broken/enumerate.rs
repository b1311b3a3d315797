//! Brute-force enumeration of broken types within small bounds.
//!
//! Types are grown from the outer level downwards. Every component below the outer
//! level has at least one puncture joined to the level above, so the result is
//! connected. Duplicates under relabeling within a level are removed through a
//! canonical key. Only discs and boundary punctures are generated.
//!
//! Index convention for generated components, with d = n − 1: a puncture of
//! multiplicity k facing outwards adds d + k, one facing inwards adds d − k, and
//! the bases are 1 for inner discs, −2d + [nontrivial] in the necks, budget − d
//! for the outer strip and budget for the outer disc. An inner disc with one
//! puncture then has index n + k, and a trivial neck strip has index 0.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{classify, validate_type, CombType, Component, Kind, Level, LevelLabel, Matching, PunctureKind, PunctureRef, Shape, Verdict};
use crate::error::{Error, Result};

/// Guard on the number of distinct types.
pub const MAX_TYPES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub max_levels: usize,
    pub max_components_per_level: usize,
    pub max_chord_multiplicity: u32,
    pub max_punctures_per_component: usize,
}

impl EnumerationBounds {
    pub fn new(levels: usize, components: usize, multiplicity: u32, punctures: usize) -> Self {
        EnumerationBounds {
            max_levels: levels,
            max_components_per_level: components,
            max_chord_multiplicity: multiplicity,
            max_punctures_per_component: punctures,
        }
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds::new(3, 3, 3, 3)
    }
}

/// A component during generation; `up` lists (component above, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    up: Vec<(usize, u32)>,
    touches: bool,
    nontrivial: bool,
}

/// Levels listed from the outer level down.
type Skeleton = Vec<Vec<Node>>;

struct Generator {
    bounds: EnumerationBounds,
    found: BTreeSet<Skeleton>,
}

/// Nondecreasing multisets of `items` with 1..=max elements.
fn multisets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], start: usize, max: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, i, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, max, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeling over within-level permutations. The
/// innermost level has nothing below it, so sorting it is enough.
fn canonical(sk: &Skeleton) -> Skeleton {
    let depth = sk.len();
    let perms: Vec<Vec<Vec<usize>>> = sk[..depth - 1].iter().map(|l| permutations(l.len())).collect();
    let mut choice = vec![0usize; depth - 1];
    let mut best: Option<Skeleton> = None;
    loop {
        // perms[t][c][new] = old; inverse[t][old] = new.
        let inverse: Vec<Vec<usize>> = (0..depth - 1)
            .map(|t| {
                let p = &perms[t][choice[t]];
                let mut inv = vec![0; p.len()];
                for (new, &old) in p.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            })
            .collect();
        let relabel = |t: usize, node: &Node| {
            let mut up: Vec<(usize, u32)> = node.up.iter().map(|&(j, k)| (inverse[t - 1][j], k)).collect();
            up.sort_unstable();
            Node { up, ..node.clone() }
        };
        let mut image: Skeleton = (0..depth - 1)
            .map(|t| perms[t][choice[t]].iter().map(|&old| relabel(t, &sk[t][old])).collect())
            .collect();
        let mut bottom: Vec<Node> = sk[depth - 1].iter().map(|node| relabel(depth - 1, node)).collect();
        bottom.sort_unstable();
        image.push(bottom);
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        // Odometer over the permutation choices.
        let mut t = depth - 1;
        loop {
            if t == 0 {
                return best.expect("at least one permutation");
            }
            t -= 1;
            choice[t] += 1;
            if choice[t] < perms[t].len() {
                break;
            }
            choice[t] = 0;
        }
    }
}

/// Edges arriving at each node of level `t` from level `t + 1`, in order.
fn down_edges(sk: &Skeleton, t: usize) -> Vec<Vec<(usize, usize, u32)>> {
    let mut down = vec![Vec::new(); sk[t].len()];
    if let Some(below) = sk.get(t + 1) {
        for (i, node) in below.iter().enumerate() {
            for (e, &(j, k)) in node.up.iter().enumerate() {
                down[j].push((i, e, k));
            }
        }
    }
    down
}

impl Generator {
    fn grow(&mut self, sk: &mut Skeleton, levels: usize) -> Result<()> {
        if sk.len() == levels {
            return self.finish(sk);
        }
        let b = self.bounds;
        let upper = sk.last().expect("outer level present");
        let caps: Vec<usize> = upper
            .iter()
            .map(|node| b.max_punctures_per_component.saturating_sub(node.up.len()))
            .collect();
        let items: Vec<(usize, u32)> = (0..upper.len())
            .flat_map(|j| (1..=b.max_chord_multiplicity).map(move |k| (j, k)))
            .collect();
        let inner = sk.len() + 1 == levels;
        let flags: &[bool] = if inner { &[false, true] } else { &[false] };
        let descriptors: Vec<Node> = multisets(&items, b.max_punctures_per_component)
            .into_iter()
            .flat_map(|up| flags.iter().map(move |&touches| Node { up: up.clone(), touches, nontrivial: true }))
            .collect();
        let mut chosen = Vec::new();
        self.choose(sk, levels, &descriptors, 0, caps, &mut chosen)
    }

    fn choose(
        &mut self,
        sk: &mut Skeleton,
        levels: usize,
        descriptors: &[Node],
        start: usize,
        caps: Vec<usize>,
        chosen: &mut Vec<Node>,
    ) -> Result<()> {
        for (i, d) in descriptors.iter().enumerate().skip(start) {
            let mut left = caps.clone();
            let fits = d.up.iter().all(|&(j, _)| {
                let ok = left[j] > 0;
                left[j] = left[j].saturating_sub(1);
                ok
            });
            if !fits {
                continue;
            }
            chosen.push(d.clone());
            sk.push(chosen.clone());
            self.grow(sk, levels)?;
            sk.pop();
            if chosen.len() < self.bounds.max_components_per_level {
                self.choose(sk, levels, descriptors, i, left, chosen)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    /// Splits neck components that look like trivial strips into both flags.
    fn finish(&mut self, sk: &Skeleton) -> Result<()> {
        let mut variants = vec![sk.clone()];
        for t in 1..sk.len().saturating_sub(1) {
            let down = down_edges(sk, t);
            for (j, node) in sk[t].iter().enumerate() {
                let trivial_shape = node.up.len() == 1 && down[j].len() == 1 && node.up[0].1 == down[j][0].2;
                if trivial_shape {
                    let extra: Vec<Skeleton> = variants
                        .iter()
                        .map(|v| {
                            let mut w = v.clone();
                            w[t][j].nontrivial = false;
                            w
                        })
                        .collect();
                    variants.extend(extra);
                }
            }
        }
        for v in variants {
            let stable = (1..v.len().saturating_sub(1)).all(|t| v[t].iter().any(|c| c.nontrivial));
            if !stable {
                continue;
            }
            self.found.insert(canonical(&v));
            if self.found.len() > MAX_TYPES {
                return Err(Error::Resource(format!("enumeration exceeds {MAX_TYPES} types")));
            }
        }
        Ok(())
    }
}

/// Skeletons depend only on the bounds, so they are generated once per process.
fn skeletons(bounds: EnumerationBounds) -> Result<Arc<Vec<Skeleton>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<EnumerationBounds, Arc<Vec<Skeleton>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&bounds) {
        return Ok(hit.clone());
    }
    let mut g = Generator { bounds, found: BTreeSet::new() };
    let outer = Node { up: vec![], touches: false, nontrivial: true };
    for levels in 2..=bounds.max_levels {
        g.grow(&mut vec![vec![outer.clone()]], levels)?;
    }
    let list = Arc::new(g.found.into_iter().collect::<Vec<_>>());
    cache.lock().expect("cache lock").insert(bounds, list.clone());
    Ok(list)
}

fn build(sk: &Skeleton, kind: Kind, n: u32, budget: i64) -> CombType {
    let depth = sk.len();
    let d = n as i64 - 1;
    let level_of = |t: usize| depth - 1 - t;
    let mut levels: Vec<Level> = Vec::with_capacity(depth);
    let mut matchings = Vec::new();
    for t in (0..depth).rev() {
        let down = down_edges(sk, t);
        let label = match level_of(t) {
            0 => LevelLabel::In,
            b if b == depth - 1 => LevelLabel::Out,
            b => LevelLabel::Neck(b as u32),
        };
        let components = sk[t]
            .iter()
            .enumerate()
            .map(|(j, node)| {
                let ups: Vec<u32> = node.up.iter().map(|&(_, k)| k).collect();
                let downs: Vec<u32> = down[j].iter().map(|&(_, _, k)| k).collect();
                for (p, &(i, e, _)) in down[j].iter().enumerate() {
                    matchings.push(Matching {
                        lower: PunctureRef { level: level_of(t + 1), component: i, puncture: e, kind: PunctureKind::Boundary },
                        upper: PunctureRef {
                            level: level_of(t),
                            component: j,
                            puncture: ups.len() + p,
                            kind: PunctureKind::Boundary,
                        },
                    });
                }
                let outer = t == 0;
                let (shape, base, aut) = match (outer, kind) {
                    (true, Kind::Strip) => (Shape::Strip, budget - d, 1),
                    (true, Kind::DiscWithPointConstraint) => (Shape::Disc, budget, 0),
                    (false, _) if t + 1 == depth => (Shape::Disc, 1, 0),
                    (false, _) => (Shape::Disc, -2 * d + node.nontrivial as i64, 0),
                };
                let index = base
                    + ups.iter().map(|&k| d + k as i64).sum::<i64>()
                    + downs.iter().map(|&k| d - k as i64).sum::<i64>();
                Component {
                    shape,
                    boundary_punctures: ups.into_iter().chain(downs).collect(),
                    interior_punctures: vec![],
                    nontrivial: node.nontrivial,
                    touches_critical_locus: node.touches,
                    markings: 0,
                    index_data: None,
                    index: Some(index),
                    aut,
                }
            })
            .collect();
        levels.push(Level { label, components });
    }
    CombType { kind, levels, matchings }
}

/// Every valid broken strip within `bounds` with at least two levels, classified
/// at `n`, ordered by canonical skeleton.
pub fn enumerate_types(bounds: EnumerationBounds, n: u32, index_budget: i64) -> Result<Vec<(CombType, Verdict)>> {
    enumerate_types_of_kind(bounds, n, index_budget, Kind::Strip)
}

/// As [`enumerate_types`], for either kind. The outer component is a strip for
/// `Kind::Strip` and a disc otherwise.
pub fn enumerate_types_of_kind(
    bounds: EnumerationBounds,
    n: u32,
    index_budget: i64,
    kind: Kind,
) -> Result<Vec<(CombType, Verdict)>> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if bounds.max_components_per_level == 0 || bounds.max_chord_multiplicity == 0 || bounds.max_punctures_per_component == 0 {
        return Ok(vec![]);
    }
    let skeletons = skeletons(bounds)?;
    let mut out = Vec::with_capacity(skeletons.len());
    for sk in skeletons.iter() {
        let t = build(sk, kind, n, index_budget);
        let report = validate_type(&t);
        if !report.valid {
            return Err(Error::Inconsistent(format!("generated an invalid type: {:?}", report.violations)));
        }
        let verdict = classify(&t, n)?;
        out.push((t, verdict));
    }
    Ok(out)
}

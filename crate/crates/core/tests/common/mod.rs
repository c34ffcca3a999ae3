#![allow(dead_code)]
//! Shared corpus generation and independent oracles for the integration
//! suites. Everything here recomputes results through routes separate from
//! the library's own algorithms.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropcor_core::monodromy::{DynamicalPortrait, MonodromyCover};
use tropcor_core::multicurve::StandardMulticurve;
use tropcor_core::perm::Perm;
use tropcor_core::trees::{MarkingSet, Split};
use tropcor_core::tropical::ConePoint;
use tropcor_core::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

// ------------------------------------------------------------------ corpus --

#[derive(Clone)]
pub struct Instance {
    pub cover: Arc<MonodromyCover>,
    pub portrait: DynamicalPortrait,
}

/// Hand-built degree-2 instance: branch points first two of four, portrait
/// a -> c, b -> d with c, d fixed.
pub fn cover_l() -> Instance {
    build_instance(
        &["a", "b", "c", "d"],
        2,
        &[("a", "(1 2)"), ("b", "(1 2)"), ("c", "()"), ("d", "()")],
        &[("a", "c#2"), ("b", "d#2"), ("c", "c#1"), ("d", "d#1")],
    )
}

/// Hand-built degree-2 instance with the four-cycle portrait.
pub fn cover_cycle() -> Instance {
    build_instance(
        &["a", "b", "c", "d"],
        2,
        &[("a", "(1 2)"), ("b", "()"), ("c", "(1 2)"), ("d", "()")],
        &[("a", "b#1"), ("b", "c#1"), ("c", "d#1"), ("d", "a#1")],
    )
}

pub fn build_instance(
    labels: &[&str],
    degree: usize,
    perms: &[(&str, &str)],
    iota: &[(&str, &str)],
) -> Instance {
    let marking = MarkingSet::new(labels.iter().copied()).unwrap();
    let by_label: BTreeMap<&str, &str> = perms.iter().copied().collect();
    let perms: Vec<Perm> = labels
        .iter()
        .map(|l| Perm::parse(by_label[l], degree).unwrap())
        .collect();
    let cover = Arc::new(MonodromyCover::new(marking, degree, perms).unwrap());
    let keys: BTreeMap<String, String> = iota
        .iter()
        .map(|(l, k)| (l.to_string(), k.to_string()))
        .collect();
    let portrait = DynamicalPortrait::from_keys(&cover, &keys).unwrap();
    Instance { cover, portrait }
}

fn random_perm_small_support(rng: &mut ChaCha8Rng, degree: usize) -> Perm {
    let roll: f64 = rng.gen();
    if roll < 0.45 || degree < 2 {
        return Perm::identity(degree);
    }
    let mut sheets: Vec<usize> = (0..degree).collect();
    sheets.shuffle(rng);
    if roll < 0.80 {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(sheets[0], sheets[1]);
        Perm::from_images(images).unwrap()
    } else if roll < 0.95 && degree >= 3 {
        let mut images: Vec<usize> = (0..degree).collect();
        images[sheets[0]] = sheets[1];
        images[sheets[1]] = sheets[2];
        images[sheets[2]] = sheets[0];
        Perm::from_images(images).unwrap()
    } else {
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(rng);
        Perm::from_images(images).unwrap()
    }
}

fn try_cover(
    rng: &mut ChaCha8Rng,
    labels: &[String],
    degree: usize,
) -> Option<Arc<MonodromyCover>> {
    let n = labels.len();
    let mut perms: Vec<Perm> = (0..n - 1)
        .map(|_| random_perm_small_support(rng, degree))
        .collect();
    let product = perms
        .iter()
        .fold(Perm::identity(degree), |acc, p| acc.then(p));
    perms.push(product.inverse());
    let marking = MarkingSet::new(labels.iter().cloned()).unwrap();
    MonodromyCover::new(marking, degree, perms).ok().map(Arc::new)
}

fn try_portrait(rng: &mut ChaCha8Rng, cover: &Arc<MonodromyCover>) -> Option<DynamicalPortrait> {
    let n = cover.marking().len();
    let points = cover.points().len();
    for _ in 0..300 {
        let mut order: Vec<usize> = (0..points).collect();
        order.shuffle(rng);
        let iota: Vec<usize> = order.into_iter().take(n).collect();
        if let Ok(p) = DynamicalPortrait::new(cover, iota) {
            return Some(p);
        }
    }
    None
}

/// Deterministic corpus of valid (cover, portrait) pairs with degree <= 4
/// and marking size <= 6, at least 100 strong, including the hand instances.
pub fn corpus() -> &'static [Instance] {
    static CORPUS: OnceLock<Vec<Instance>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let mut out = vec![cover_l(), cover_cycle()];
        let mut seen: BTreeSet<String> = out
            .iter()
            .map(|i| instance_key(&i.cover, &i.portrait))
            .collect();
        let grid: Vec<(usize, usize)> = [4usize, 5, 6]
            .iter()
            .flat_map(|&n| [2usize, 3, 4].iter().map(move |&d| (n, d)))
            .collect();
        for &(n, d) in &grid {
            let labels: Vec<String> = (0..n)
                .map(|i| char::from(b'a' + i as u8).to_string())
                .collect();
            let mut found = 0usize;
            let mut attempts = 0usize;
            while found < 12 && attempts < 40_000 {
                attempts += 1;
                let Some(cover) = try_cover(&mut rng, &labels, d) else {
                    continue;
                };
                let Some(portrait) = try_portrait(&mut rng, &cover) else {
                    continue;
                };
                let key = instance_key(&cover, &portrait);
                if seen.insert(key) {
                    out.push(Instance { cover, portrait });
                    found += 1;
                }
            }
        }
        assert!(out.len() >= 100, "corpus too small: {}", out.len());
        out
    })
}

fn instance_key(cover: &MonodromyCover, portrait: &DynamicalPortrait) -> String {
    format!(
        "{:?}/{:?}/{:?}",
        cover.marking().labels(),
        cover.perms(),
        portrait.iota_all()
    )
}

/// All standard multicurves of the instance with at most `max_blocks`
/// classes.
pub fn multicurves_of(instance: &Instance, max_blocks: usize) -> Vec<StandardMulticurve> {
    tropcor_core::multicurve::enumerate_standard_multicurves(
        instance.cover.marking(),
        max_blocks,
    )
}

// ------------------------------------------------- path-lifting oracle --

/// Lift of the boundary loop of one block, letter by letter: components of
/// the preimage with their wrapping degrees.
fn lift_block_loop(cover: &MonodromyCover, run: &[usize]) -> Vec<(BTreeSet<usize>, usize)> {
    let step = |sheet: usize| -> usize {
        run.iter()
            .fold(sheet, |s, &i| cover.perm(i).apply(s))
    };
    let mut seen = vec![false; cover.degree()];
    let mut out = Vec::new();
    for start in 0..cover.degree() {
        if seen[start] {
            continue;
        }
        let mut component = BTreeSet::new();
        let mut wraps = 0usize;
        let mut sheet = start;
        loop {
            component.insert(sheet);
            seen[sheet] = true;
            sheet = step(sheet);
            wraps += 1;
            if sheet == start {
                break;
            }
        }
        out.push((component, wraps));
    }
    out
}

/// Independent orbit computation (union-find) for the two-sided gluing.
fn orbits_union_find(perms: &[&Perm], degree: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for p in perms {
        for s in 0..degree {
            let a = find(&mut parent, s);
            let b = find(&mut parent, p.apply(s));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..degree).map(|s| find(&mut parent, s)).collect()
}

/// Independent computation of one column of the upstairs weight matrix: for
/// each preimage curve of the block's boundary, its fiber split and the
/// reciprocal of its degree.
pub fn path_lifting_column(
    cover: &MonodromyCover,
    block: &BTreeSet<usize>,
) -> Vec<(Split, Rational)> {
    let run = cover.canonical_run(block).expect("standard block");
    let run_set: BTreeSet<usize> = run.iter().copied().collect();
    let curves = lift_block_loop(cover, &run);

    // Two-sided gluing: inside components over the block disc, outside
    // components over the complementary disc.
    let inside_perms: Vec<&Perm> = run.iter().map(|&i| cover.perm(i)).collect();
    let outside_perms: Vec<&Perm> = (0..cover.marking().len())
        .filter(|i| !run_set.contains(i))
        .map(|i| cover.perm(i))
        .collect();
    let inside_root = orbits_union_find(&inside_perms, cover.degree());
    let outside_root = orbits_union_find(&outside_perms, cover.degree());

    // Bipartite tree on (inside components) + (outside components), one edge
    // per lifted curve.
    #[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy, Debug)]
    enum Node {
        Inside(usize),
        Outside(usize),
    }
    let mut adjacency: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (ci, (component, _)) in curves.iter().enumerate() {
        let rep = *component.iter().next().unwrap();
        let a = Node::Inside(inside_root[rep]);
        let b = Node::Outside(outside_root[rep]);
        adjacency.entry(a).or_default().push(ci);
        adjacency.entry(b).or_default().push(ci);
    }
    // Marked points: over block labels in inside components, others outside.
    let mut legs: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (qi, point) in cover.points().iter().enumerate() {
        let rep = point.cycle[0];
        let node = if run_set.contains(&point.base) {
            Node::Inside(inside_root[rep])
        } else {
            Node::Outside(outside_root[rep])
        };
        legs.entry(node).or_default().push(qi);
        adjacency.entry(node).or_default();
    }
    let nodes: Vec<Node> = adjacency.keys().copied().collect();
    assert_eq!(
        curves.len() + 1,
        nodes.len(),
        "lifted boundary graph must be a tree"
    );
    // Split of each curve: legs reachable on the inside end without crossing
    // the curve.
    let upstairs = cover.upstairs_marking();
    let mut out = Vec::new();
    for (ci, (component, wraps)) in curves.iter().enumerate() {
        let rep = *component.iter().next().unwrap();
        let start = Node::Inside(inside_root[rep]);
        let mut stack = vec![start];
        let mut visited: BTreeSet<Node> = BTreeSet::new();
        let mut side: BTreeSet<usize> = BTreeSet::new();
        while let Some(node) = stack.pop() {
            if !visited.insert(node) {
                continue;
            }
            side.extend(legs.get(&node).into_iter().flatten().copied());
            for &edge in &adjacency[&node] {
                if edge == ci {
                    continue;
                }
                let (inner, wraps_ignored) = &curves[edge];
                let _ = wraps_ignored;
                let rep2 = *inner.iter().next().unwrap();
                for next in [
                    Node::Inside(inside_root[rep2]),
                    Node::Outside(outside_root[rep2]),
                ] {
                    if adjacency[&next].contains(&edge) && next != node {
                        stack.push(next);
                    }
                }
            }
        }
        let split = Split::new(side, upstairs).expect("proper fiber split");
        out.push((split, q(1, *wraps as i64)));
    }
    out
}

// ----------------------------------------------- metric forgetful oracle --

/// Forget a fiber-marked curve to a sub-marking by explicit metric-tree
/// surgery: prune branches without surviving legs, then suppress 2-valent
/// joints, adding lengths.
pub fn metric_forget_oracle(point: &ConePoint, sub: &Arc<MarkingSet>) -> ConePoint {
    let tree = point.tree();
    let explicit = tree.to_explicit();
    let marking = tree.marking();
    // Mutable copy: vertices with legs (sub-marking indices), edges with
    // lengths.
    #[derive(Clone, Debug)]
    struct E {
        ends: (usize, usize),
        length: Rational,
        alive: bool,
    }
    let keep: Vec<Option<usize>> = marking
        .labels()
        .iter()
        .map(|l| sub.labels().iter().position(|s| s == l))
        .collect();
    let mut legs: Vec<Vec<usize>> = explicit
        .vertices()
        .iter()
        .map(|&v| {
            explicit
                .legs_at(v)
                .iter()
                .filter_map(|&p| keep[p])
                .collect()
        })
        .collect();
    let mut edges: Vec<E> = (0..explicit.edge_count())
        .map(|e| E {
            ends: explicit.edge_ends(e),
            length: point.coordinate(&explicit.splits()[e]),
            alive: true,
        })
        .collect();
    let mut vertex_alive = vec![true; explicit.vertex_count()];
    loop {
        let incident = |v: usize, edges: &[E]| -> Vec<usize> {
            edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.alive && (e.ends.0 == v || e.ends.1 == v))
                .map(|(i, _)| i)
                .collect()
        };
        let mut changed = false;
        for v in 0..vertex_alive.len() {
            if !vertex_alive[v] {
                continue;
            }
            let inc = incident(v, &edges);
            let leg_count = legs[v].len();
            if leg_count == 0 && inc.len() <= 1 {
                // Prune a branch with no surviving legs.
                vertex_alive[v] = false;
                if let Some(&e) = inc.first() {
                    edges[e].alive = false;
                }
                changed = true;
            } else if leg_count == 0 && inc.len() == 2 {
                // Suppress a 2-valent joint: merge the edges, summing length.
                let (e1, e2) = (inc[0], inc[1]);
                let other1 = if edges[e1].ends.0 == v {
                    edges[e1].ends.1
                } else {
                    edges[e1].ends.0
                };
                let other2 = if edges[e2].ends.0 == v {
                    edges[e2].ends.1
                } else {
                    edges[e2].ends.0
                };
                let merged = E {
                    ends: (other1, other2),
                    length: edges[e1].length.clone() + edges[e2].length.clone(),
                    alive: true,
                };
                edges[e1].alive = false;
                edges[e2].alive = false;
                edges.push(merged);
                vertex_alive[v] = false;
                changed = true;
            } else if leg_count == 1 && inc.len() == 1 {
                // The leg slides past the edge; its length is absorbed.
                let e = inc[0];
                let other = if edges[e].ends.0 == v {
                    edges[e].ends.1
                } else {
                    edges[e].ends.0
                };
                let moved = legs[v][0];
                legs[v].clear();
                legs[other].push(moved);
                edges[e].alive = false;
                vertex_alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Read off the surviving splits: zero-length edges collapse (faces).
    let mut coords: BTreeMap<Split, Rational> = BTreeMap::new();
    for (ei, edge) in edges.iter().enumerate() {
        if !edge.alive {
            continue;
        }
        // Legs on the side of ends.1 without crossing this edge.
        let mut stack = vec![edge.ends.1];
        let mut visited: BTreeSet<usize> = BTreeSet::new();
        let mut side: BTreeSet<usize> = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if !visited.insert(v) {
                continue;
            }
            side.extend(legs[v].iter().copied());
            for (fi, f) in edges.iter().enumerate() {
                if fi == ei || !f.alive {
                    continue;
                }
                if f.ends.0 == v {
                    stack.push(f.ends.1);
                } else if f.ends.1 == v {
                    stack.push(f.ends.0);
                }
            }
        }
        if edge.length.is_zero() {
            continue;
        }
        let split = Split::new(side, sub).expect("surviving edge separates legs");
        *coords.entry(split).or_insert_with(Rational::zero) += &edge.length;
    }
    let tree = tropcor_core::trees::MarkedTree::new(Arc::clone(sub), coords.keys().cloned())
        .expect("oracle splits compatible");
    ConePoint::new(&tree, coords).expect("oracle point valid")
}

// ----------------------------------------------------- charpoly oracle --

/// Characteristic polynomial det(xI - M) by direct cofactor expansion over
/// polynomial entries, integer-cleared.
pub fn cofactor_charpoly(matrix: &tropcor_core::RationalMatrix) -> Vec<num_bigint::BigInt> {
    use tropcor_core::spectral::poly::Poly;
    let n = matrix.dim();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Poly::constant(-matrix.entry(i, j).clone());
                    if i == j {
                        p = p.add(&Poly::monomial(Rational::from_integer(1.into()), 1));
                    }
                    p
                })
                .collect()
        })
        .collect();
    fn det(rows: &[Vec<tropcor_core::spectral::poly::Poly>]) -> tropcor_core::spectral::poly::Poly {
        use tropcor_core::spectral::poly::Poly;
        let n = rows.len();
        if n == 0 {
            return Poly::constant(Rational::from_integer(1.into()));
        }
        let mut acc = Poly::zero();
        for (j, cell) in rows[0].iter().enumerate() {
            if cell.is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = cell.mul(&det(&minor));
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
    det(&entries).integer_cleared()
}

// ------------------------------------------------------- closed forms --

/// Number of proper bipartitions of an n-set: 2^(n-1) - n - 1.
pub fn closed_form_split_count(n: usize) -> usize {
    (1usize << (n - 1)) - n - 1
}

/// Number of trivalent trees on n labeled legs: (2n - 5)!!.
pub fn closed_form_trivalent_count(n: usize) -> usize {
    let mut acc = 1usize;
    let mut k = 2 * n as i64 - 5;
    while k > 1 {
        acc *= k as usize;
        k -= 2;
    }
    acc
}

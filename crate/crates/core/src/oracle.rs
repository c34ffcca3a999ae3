//! Brute-force enumeration of the realizable combinatorial types of a cover
//! profile over a fixed target tree.
//!
//! For every target vertex, the component covers are encoded by one
//! permutation per flag (legs carry the cycle type fixed by the profile,
//! node flags are free) with product the identity; gluing data at each
//! target edge is a length-preserving matching of the node cycles on the two
//! sides. Assignments whose glued source graph is not a tree are discarded.
//! Types are deduplicated by canonical encoding with anonymized legs.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::hurwitz::{CombinatorialType, TypeError};
use crate::monodromy::MonodromyCover;
use crate::perm::Perm;
use crate::trees::{MarkedTree, TreeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("profile enumeration is limited to degree <= {1}, got {0}")]
    DegreeBound(usize, usize),
    #[error("profile enumeration is limited to <= {1} branch points, got {0}")]
    MarkingBound(usize, usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

pub const ORACLE_MAX_DEGREE: usize = 4;
pub const ORACLE_MAX_MARKING: usize = 6;

/// All permutations of `0..degree`.
fn all_perms(degree: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let d = used.len();
        if prefix.len() == d {
            out.push(Perm::from_images(prefix.clone()).unwrap());
            return;
        }
        for i in 0..d {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; degree], &mut out);
    out
}

#[derive(Clone)]
struct VertexAssignment {
    /// Permutation per leg flag (in the vertex's leg order).
    legs: Vec<Perm>,
    /// Permutation per edge flag (in the vertex's edge order).
    edges: Vec<Perm>,
}

/// Enumerate per-vertex tuples with fixed leg cycle types and product id.
fn vertex_assignments(
    cover: &MonodromyCover,
    leg_types: &[Vec<usize>],
    edge_count: usize,
) -> Vec<VertexAssignment> {
    let degree = cover.degree();
    let perms = all_perms(degree);
    let with_type = |t: &Vec<usize>| -> Vec<Perm> {
        perms.iter().filter(|p| &p.cycle_type() == t).cloned().collect()
    };
    let leg_choices: Vec<Vec<Perm>> = leg_types.iter().map(with_type).collect();
    let mut out = Vec::new();
    let total_flags = leg_types.len() + edge_count;
    assert!(total_flags >= 1);
    // Choose all flags but the last freely; the last is forced by the
    // product relation and filtered by its constraint.
    let mut stack: Vec<Vec<Perm>> = vec![Vec::new()];
    while let Some(chosen) = stack.pop() {
        let i = chosen.len();
        if i == total_flags - 1 {
            let product = chosen
                .iter()
                .fold(Perm::identity(degree), |acc, p| acc.then(p));
            let last = product.inverse();
            let ok = if i < leg_types.len() {
                last.cycle_type() == leg_types[i]
            } else {
                true
            };
            if ok {
                let mut flags = chosen.clone();
                flags.push(last);
                let (legs, edges) = flags.split_at(leg_types.len());
                out.push(VertexAssignment {
                    legs: legs.to_vec(),
                    edges: edges.to_vec(),
                });
            }
            continue;
        }
        let choices: &[Perm] = if i < leg_types.len() {
            &leg_choices[i]
        } else {
            &perms
        };
        for c in choices {
            let mut ext = chosen.clone();
            ext.push(c.clone());
            stack.push(ext);
        }
    }
    out
}

/// All length-preserving bijections between two cycle lists, as index pairs.
fn cycle_matchings(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut by_len: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, c) in a.iter().enumerate() {
        by_len.entry(c.len()).or_default().0.push(i);
    }
    for (j, c) in b.iter().enumerate() {
        by_len.entry(c.len()).or_default().1.push(j);
    }
    if by_len.values().any(|(x, y)| x.len() != y.len()) {
        return Vec::new();
    }
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (xs, ys) in by_len.values() {
        let perms_of_ys = permutations(ys);
        let mut next = Vec::new();
        for partial in &out {
            for ordering in &perms_of_ys {
                let mut ext = partial.clone();
                ext.extend(xs.iter().copied().zip(ordering.iter().copied()));
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Realizable combinatorial types of the cover's profile over the given
/// target tree, canonicalized and deduplicated.
pub fn enumerate_profile_types(
    cover: &Arc<MonodromyCover>,
    target: &MarkedTree,
) -> Result<Vec<CombinatorialType>, OracleError> {
    if cover.degree() > ORACLE_MAX_DEGREE {
        return Err(OracleError::DegreeBound(cover.degree(), ORACLE_MAX_DEGREE));
    }
    if cover.marking().len() > ORACLE_MAX_MARKING {
        return Err(OracleError::MarkingBound(
            cover.marking().len(),
            ORACLE_MAX_MARKING,
        ));
    }
    assert_eq!(cover.marking(), target.marking());
    let explicit = target.to_explicit();
    let nv = explicit.vertex_count();

    // Per-vertex assignment lists.
    let mut per_vertex: Vec<Vec<VertexAssignment>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let leg_types: Vec<Vec<usize>> = explicit
            .legs_at(v)
            .iter()
            .map(|&p| cover.perm(p).cycle_type())
            .collect();
        let assignments =
            vertex_assignments(cover, &leg_types, explicit.edges_at(v).len());
        if assignments.is_empty() {
            return Ok(Vec::new());
        }
        per_vertex.push(assignments);
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut types = Vec::new();
    let mut choice = vec![0usize; nv];
    'outer: loop {
        let picked: Vec<&VertexAssignment> =
            (0..nv).map(|v| &per_vertex[v][choice[v]]).collect();
        collect_gluings(cover, target, &explicit, &picked, &mut seen, &mut types)?;
        // Advance the mixed-radix counter.
        for v in 0..nv {
            choice[v] += 1;
            if choice[v] < per_vertex[v].len() {
                continue 'outer;
            }
            choice[v] = 0;
        }
        break;
    }
    Ok(types)
}

fn collect_gluings(
    cover: &Arc<MonodromyCover>,
    target: &MarkedTree,
    explicit: &crate::trees::ExplicitTree,
    picked: &[&VertexAssignment],
    seen: &mut std::collections::BTreeSet<String>,
    types: &mut Vec<CombinatorialType>,
) -> Result<(), OracleError> {
    let nv = explicit.vertex_count();
    // Local components per vertex: orbits of the flag permutations.
    let orbit_data: Vec<Vec<std::collections::BTreeSet<usize>>> = (0..nv)
        .map(|v| {
            let mut gens = picked[v].legs.clone();
            gens.extend(picked[v].edges.iter().cloned());
            crate::monodromy::orbits_of(&gens, cover.degree())
        })
        .collect();
    // Leg placement: fiber point q sits at (vertex of its base label, local
    // component containing a cycle of the leg permutation). The concrete
    // cycles are matched by cycle type per base label, deterministically.
    let mut leg_assignment_template: Vec<Option<(usize, usize)>> =
        vec![None; cover.points().len()];
    for v in 0..nv {
        for (li, &p) in explicit.legs_at(v).iter().enumerate() {
            // Pair the stored fiber points over p with the cycles of the
            // chosen leg permutation, longest first within equal lengths.
            let mut stored: Vec<usize> = (0..cover.points().len())
                .filter(|&q| cover.points()[q].base == p)
                .collect();
            stored.sort_by_key(|&q| {
                (usize::MAX - cover.points()[q].local_degree(), q)
            });
            let mut cycles: Vec<Vec<usize>> = picked[v].legs[li].cycles();
            cycles.sort_by_key(|c| usize::MAX - c.len());
            assert_eq!(stored.len(), cycles.len(), "cycle type fixed by profile");
            for (q, cycle) in stored.into_iter().zip(cycles) {
                let comp = orbit_data[v]
                    .iter()
                    .position(|o| o.contains(&cycle[0]))
                    .expect("cycle is in an orbit");
                leg_assignment_template[q] = Some((v, comp));
            }
        }
    }

    // Edge gluings: matchings per target edge between the node cycles on the
    // two sides, combined over all edges.
    let edge_cycle_lists: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = (0..explicit.edge_count())
        .map(|e| {
            let (pu, cv) = explicit.edge_ends(e);
            let flag_of = |v: usize| -> usize {
                explicit
                    .edges_at(v)
                    .iter()
                    .position(|&f| f == e)
                    .expect("edge at vertex")
            };
            let up = picked[pu].edges[flag_of(pu)].cycles();
            let down = picked[cv].edges[flag_of(cv)].cycles();
            (up, down)
        })
        .collect();
    let matchings_per_edge: Vec<Vec<Vec<(usize, usize)>>> = edge_cycle_lists
        .iter()
        .map(|(a, b)| cycle_matchings(a, b))
        .collect();
    if matchings_per_edge.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut pick = vec![0usize; explicit.edge_count()];
    'gluings: loop {
        // Build the candidate source graph.
        let mut vertex_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (v, orbits) in orbit_data.iter().enumerate() {
            for (oi, _) in orbits.iter().enumerate() {
                let next = vertex_ids.len();
                vertex_ids.insert((v, oi), next);
            }
        }
        let mut vertex_bases: Vec<usize> = vec![0; vertex_ids.len()];
        for ((v, _), &id) in &vertex_ids {
            vertex_bases[id] = *v;
        }
        let mut edges: Vec<(usize, usize, usize, usize)> = Vec::new();
        for e in 0..explicit.edge_count() {
            let (pu, cv) = explicit.edge_ends(e);
            let (up_cycles, down_cycles) = &edge_cycle_lists[e];
            for &(ui, di) in &matchings_per_edge[e][pick[e]] {
                let up_comp = orbit_data[pu]
                    .iter()
                    .position(|o| o.contains(&up_cycles[ui][0]))
                    .unwrap();
                let down_comp = orbit_data[cv]
                    .iter()
                    .position(|o| o.contains(&down_cycles[di][0]))
                    .unwrap();
                edges.push((
                    vertex_ids[&(pu, up_comp)],
                    vertex_ids[&(cv, down_comp)],
                    e,
                    up_cycles[ui].len(),
                ));
            }
        }
        let leg_assignment: Vec<usize> = leg_assignment_template
            .iter()
            .map(|slot| {
                let (v, comp) = slot.expect("every fiber point placed");
                vertex_ids[&(v, comp)]
            })
            .collect();
        if let Ok(ctype) = CombinatorialType::from_raw(
            cover,
            target.clone(),
            vertex_bases,
            edges,
            leg_assignment,
        ) {
            let key = ctype.canonical_encoding(true);
            if seen.insert(key) {
                types.push(ctype);
            }
        }
        // Advance matchings.
        for e in 0..explicit.edge_count() {
            pick[e] += 1;
            if pick[e] < matchings_per_edge[e].len() {
                continue 'gluings;
            }
            pick[e] = 0;
        }
        break;
    }
    Ok(())
}

/// Enumerate over every stable target tree with at most `max_edges` edges.
pub fn enumerate_all_profile_types(
    cover: &Arc<MonodromyCover>,
    max_edges: Option<usize>,
) -> Result<Vec<(MarkedTree, Vec<CombinatorialType>)>, OracleError> {
    let mut out = Vec::new();
    for tree in crate::trees::enumerate_stable_trees(cover.marking(), max_edges, None)? {
        let types = enumerate_profile_types(cover, &tree)?;
        out.push((tree, types));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cover_l;
    use crate::multicurve::StandardMulticurve;
    use crate::trees::{MarkingSet, Split};

    #[test]
    fn one_edge_tree_types_for_the_degree_two_profile() {
        let (cover, _) = cover_l();
        let cover = Arc::new(cover);
        let marking = cover.marking();
        let profiles = |target: &MarkedTree| -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = enumerate_profile_types(&cover, target)
                .unwrap()
                .iter()
                .map(|t| {
                    let mut degs: Vec<usize> =
                        t.edges().iter().map(|e| e.degree).collect();
                    degs.sort_unstable();
                    degs
                })
                .collect();
            out.sort();
            out
        };
        // Both branch points on one side: the node monodromy is forced to be
        // trivial, giving two degree-1 curves.
        let ab = Split::from_labels(&["a", "b"], marking).unwrap();
        let target = MarkedTree::new(Arc::clone(marking), [ab]).unwrap();
        assert_eq!(profiles(&target), vec![vec![1, 1]]);
        // One branch point per side: the node monodromy is forced to be the
        // transposition, giving one degree-2 curve.
        let bc = Split::from_labels(&["b", "c"], marking).unwrap();
        let target = MarkedTree::new(Arc::clone(marking), [bc]).unwrap();
        assert_eq!(profiles(&target), vec![vec![2]]);
    }

    #[test]
    fn one_edge_tree_types_for_a_degree_three_profile() {
        // Four simple branch points in degree 3: over the {a,b} side both
        // the identity node (degrees 1,1,1) and a 3-cycle node (degree 3)
        // occur, depending on whether the two transpositions agree.
        let (cover, _) = crate::fixtures::build(
            &["a", "b", "c", "d"],
            3,
            &[("a", "(1 2)"), ("b", "(1 2)"), ("c", "(1 3)"), ("d", "(1 3)")],
            &[("a", "c#2"), ("b", "d#2"), ("c", "c#1"), ("d", "d#1")],
        );
        let cover = Arc::new(cover);
        let marking = cover.marking();
        let ab = Split::from_labels(&["a", "b"], marking).unwrap();
        let target = MarkedTree::new(Arc::clone(marking), [ab]).unwrap();
        let mut profiles: Vec<Vec<usize>> = enumerate_profile_types(&cover, &target)
            .unwrap()
            .iter()
            .map(|t| {
                let mut degs: Vec<usize> =
                    t.edges().iter().map(|e| e.degree).collect();
                degs.sort_unstable();
                degs
            })
            .collect();
        profiles.sort();
        profiles.dedup();
        assert_eq!(profiles, vec![vec![1, 1, 1], vec![3]]);
    }

    #[test]
    fn cone_point_tree_has_the_single_smooth_type() {
        let (cover, _) = cover_l();
        let cover = Arc::new(cover);
        let target = MarkedTree::one_vertex(Arc::clone(cover.marking()));
        let types = enumerate_profile_types(&cover, &target).unwrap();
        assert_eq!(types.len(), 1);
        assert!(types[0].is_cone_point_type());
    }

    #[test]
    fn built_types_appear_among_oracle_outputs() {
        let (cover, _) = cover_l();
        let cover = Arc::new(cover);
        for blocks in [&["a", "b"][..], &["b", "c"][..]] {
            let mc = StandardMulticurve::from_label_blocks(
                Arc::clone(cover.marking()),
                &[blocks.to_vec()],
            )
            .unwrap();
            let built = CombinatorialType::build(&cover, &mc).unwrap();
            let oracle = enumerate_profile_types(&cover, built.target_tree()).unwrap();
            let key = built.canonical_encoding(true);
            assert!(
                oracle.iter().any(|t| t.canonical_encoding(true) == key),
                "pullback type must be realizable"
            );
        }
    }

    #[test]
    fn degree_bound_enforced() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let c5 = Perm::parse("(1 2 3 4 5)", 5).unwrap();
        let cover = crate::monodromy::MonodromyCover::new(
            m,
            5,
            vec![
                c5.clone(),
                c5.inverse(),
                Perm::identity(5),
                Perm::identity(5),
            ],
        )
        .unwrap();
        let cover = Arc::new(cover);
        let target = MarkedTree::one_vertex(Arc::clone(cover.marking()));
        assert!(matches!(
            enumerate_profile_types(&cover, &target),
            Err(OracleError::DegreeBound(5, 4))
        ));
    }
}

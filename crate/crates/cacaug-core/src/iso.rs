//! Canonical forms of rooted instances, for isomorphism checks.
//!
//! The cactus is a tree of cycles hanging off the root, so a canonical
//! relabeling can be built top-down: at each vertex, order the child cycles
//! by a structural signature and pick a traversal orientation per cycle.
//! Links are invisible to the signature beyond their endpoint degrees, so
//! tied siblings and orientation ties are resolved by full backtracking:
//! every tied arrangement is tried and the lexicographically smallest
//! complete encoding wins. Intended for desk-scale instances; highly
//! symmetric inputs can make the backtracking expensive.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::cactus::Instance;
use crate::Vertex;

/// A canonical encoding: equal exactly for isomorphic rooted instances
/// (root mapped to root, links as an unordered multiset of endpoint pairs).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub cycles: Vec<Vec<usize>>,
    pub links: Vec<(usize, usize)>,
}

struct Shape {
    /// Child cycles anchored at each vertex.
    children: Vec<Vec<usize>>,
    /// Cycle vertices in both directions around the cycle, anchor excluded.
    arcs: Vec<[Vec<Vertex>; 2]>,
    /// Structural signature per (cycle, orientation).
    sigs: Vec<[Vec<u64>; 2]>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn combine(acc: u64, x: u64) -> u64 {
    splitmix(acc ^ x.wrapping_mul(0x9e3779b97f4a7c15))
}

impl Shape {
    fn build(instance: &Instance) -> Self {
        let n = instance.vertex_count();
        let cycles = instance.cactus().cycles();
        let mut at_vertex = vec![Vec::new(); n];
        for (ci, cycle) in cycles.iter().enumerate() {
            for &v in cycle {
                at_vertex[v].push(ci);
            }
        }
        // Discover anchors from the root outward.
        let mut anchor = vec![usize::MAX; cycles.len()];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::new();
        let mut seen = vec![false; n];
        seen[instance.root()] = true;
        let mut queue = VecDeque::from([instance.root()]);
        let mut vertex_order = vec![instance.root()];
        while let Some(v) = queue.pop_front() {
            for &ci in &at_vertex[v] {
                if anchor[ci] != usize::MAX {
                    continue;
                }
                anchor[ci] = v;
                children[v].push(ci);
                order.push(ci);
                for &w in &cycles[ci] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                        vertex_order.push(w);
                    }
                }
            }
        }

        let mut link_degree = vec![0usize; n];
        for l in instance.links() {
            link_degree[l.u] += 1;
            link_degree[l.v] += 1;
        }

        // Both traversal directions of each cycle, starting after the
        // anchor.
        let mut arcs: Vec<[Vec<Vertex>; 2]> = Vec::with_capacity(cycles.len());
        for (ci, cycle) in cycles.iter().enumerate() {
            let pos = cycle.iter().position(|&v| v == anchor[ci]).unwrap();
            let len = cycle.len();
            let fwd: Vec<Vertex> = (1..len).map(|k| cycle[(pos + k) % len]).collect();
            let mut bwd = fwd.clone();
            bwd.reverse();
            arcs.push([fwd, bwd]);
        }

        // Structural hash per vertex, bottom-up, then per cycle
        // orientation: the sequence of subtree hashes along the arc.
        let mut vhash = vec![0u64; n];
        for &v in vertex_order.iter().rev() {
            let mut child_keys: Vec<u64> = children[v]
                .iter()
                .map(|&ci| {
                    let key = |dir: usize| {
                        let mut h = combine(0xc1c1, arcs[ci][dir].len() as u64);
                        for &w in &arcs[ci][dir] {
                            h = combine(h, vhash[w]);
                        }
                        h
                    };
                    key(0).min(key(1))
                })
                .collect();
            child_keys.sort_unstable();
            let mut h = combine(0xa5a5, link_degree[v] as u64);
            for k in child_keys {
                h = combine(h, k);
            }
            vhash[v] = h;
        }
        let sigs = arcs
            .iter()
            .map(|dirs| {
                let sig = |arc: &Vec<Vertex>| {
                    let mut s = vec![arc.len() as u64];
                    for &w in arc {
                        s.push(vhash[w]);
                        s.push(link_degree[w] as u64);
                    }
                    s
                };
                [sig(&dirs[0]), sig(&dirs[1])]
            })
            .collect();

        Shape { children, arcs, sigs }
    }
}

struct SearchState<'a> {
    instance: &'a Instance,
    shape: Shape,
    best: Option<CanonicalForm>,
}

impl<'a> SearchState<'a> {
    /// Extends the labeling at `queue[idx]`; `label[v]` is the new id of
    /// `v` (usize::MAX while unassigned).
    fn descend(&mut self, label: &mut Vec<usize>, queue: &mut Vec<Vertex>, idx: usize, next: usize) {
        if idx == queue.len() {
            self.finish(label);
            return;
        }
        let v = queue[idx];
        let child_cycles = self.shape.children[v].clone();
        if child_cycles.is_empty() {
            self.descend(label, queue, idx + 1, next);
            return;
        }
        // Order child cycles by their minimal signature; equal signatures
        // form tie groups whose arrangements are all tried.
        let mut keyed: Vec<(Vec<u64>, usize)> = child_cycles
            .iter()
            .map(|&ci| {
                let [a, b] = &self.shape.sigs[ci];
                (a.min(b).clone(), ci)
            })
            .collect();
        keyed.sort();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_keys: Vec<&Vec<u64>> = Vec::new();
        for (key, ci) in &keyed {
            if group_keys.last().map(|k| *k == key) == Some(true) {
                groups.last_mut().unwrap().push(*ci);
            } else {
                groups.push(vec![*ci]);
                group_keys.push(key);
            }
        }
        self.arrange(label, queue, idx, next, &groups, 0, &mut Vec::new());
    }

    /// Picks an order within each tie group (all permutations) and an
    /// orientation per cycle (both when tied), then assigns ids.
    #[allow(clippy::too_many_arguments)]
    fn arrange(
        &mut self,
        label: &mut Vec<usize>,
        queue: &mut Vec<Vertex>,
        idx: usize,
        next: usize,
        groups: &[Vec<usize>],
        gi: usize,
        chosen: &mut Vec<(usize, usize)>,
    ) {
        if gi == groups.len() {
            // All cycles ordered and oriented: assign ids to the arc
            // vertices in order and recurse to the next queue entry.
            let mut next = next;
            let added: Vec<Vertex> = chosen
                .iter()
                .flat_map(|&(ci, dir)| self.shape.arcs[ci][dir].iter().copied())
                .collect();
            let qlen = queue.len();
            for &w in &added {
                label[w] = next;
                next += 1;
                queue.push(w);
            }
            self.descend(label, queue, idx + 1, next);
            queue.truncate(qlen);
            for &w in &added {
                label[w] = usize::MAX;
            }
            return;
        }
        let group = &groups[gi];
        let mut perm: Vec<usize> = (0..group.len()).collect();
        self.permute(label, queue, idx, next, groups, gi, chosen, &mut perm, 0);
    }

    #[allow(clippy::too_many_arguments)]
    fn permute(
        &mut self,
        label: &mut Vec<usize>,
        queue: &mut Vec<Vertex>,
        idx: usize,
        next: usize,
        groups: &[Vec<usize>],
        gi: usize,
        chosen: &mut Vec<(usize, usize)>,
        perm: &mut Vec<usize>,
        depth: usize,
    ) {
        let group = &groups[gi];
        if depth == group.len() {
            self.arrange(label, queue, idx, next, groups, gi + 1, chosen);
            return;
        }
        for i in depth..perm.len() {
            perm.swap(depth, i);
            let ci = group[perm[depth]];
            let [sa, sb] = &self.shape.sigs[ci];
            let dirs: &[usize] = if sa < sb {
                &[0]
            } else if sb < sa {
                &[1]
            } else {
                &[0, 1]
            };
            for &dir in dirs {
                chosen.push((ci, dir));
                self.permute(label, queue, idx, next, groups, gi, chosen, perm, depth + 1);
                chosen.pop();
            }
            perm.swap(depth, i);
        }
    }

    /// Encodes the finished labeling and keeps it when smaller.
    fn finish(&mut self, label: &[usize]) {
        let n = self.instance.vertex_count();
        let mut cycles: Vec<Vec<usize>> = self
            .instance
            .cactus()
            .cycles()
            .iter()
            .map(|cycle| {
                let mapped: Vec<usize> = cycle.iter().map(|&v| label[v]).collect();
                canonical_rotation(&mapped)
            })
            .collect();
        cycles.sort();
        let mut links: Vec<(usize, usize)> = self
            .instance
            .links()
            .iter()
            .map(|l| {
                let (a, b) = (label[l.u], label[l.v]);
                (a.min(b), a.max(b))
            })
            .collect();
        links.sort_unstable();
        let form = CanonicalForm {
            vertex_count: n,
            cycles,
            links,
        };
        if self.best.as_ref().map(|b| form < *b).unwrap_or(true) {
            self.best = Some(form);
        }
    }
}

/// The lexicographically smallest rotation/reflection of a cycle sequence.
fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            cycle.iter().rev().copied().collect()
        } else {
            cycle.to_vec()
        };
        for start in 0..len {
            let rotated: Vec<usize> = (0..len).map(|k| seq[(start + k) % len]).collect();
            if best.as_ref().map(|b| rotated < *b).unwrap_or(true) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap()
}

/// Canonical form of a rooted instance (link ids are ignored; only the
/// multiset of endpoint pairs matters).
pub fn canonical_form(instance: &Instance) -> CanonicalForm {
    let shape = Shape::build(instance);
    let n = instance.vertex_count();
    let mut state = SearchState {
        instance,
        shape,
        best: None,
    };
    let mut label = vec![usize::MAX; n];
    label[instance.root()] = 0;
    let mut queue = vec![instance.root()];
    state.descend(&mut label, &mut queue, 0, 1);
    state.best.expect("search always produces a labeling")
}

/// Rooted isomorphism via canonical forms.
pub fn isomorphic(a: &Instance, b: &Instance) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.links().len() != b.links().len()
        || a.cactus().cycles().len() != b.cactus().cycles().len()
    {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cactus::Cactus;

    fn instance(
        n: usize,
        cycles: &[&[Vertex]],
        links: &[(Vertex, Vertex)],
        root: Vertex,
    ) -> Instance {
        let cactus = Cactus::new(n, cycles.iter().map(|c| c.to_vec()).collect()).unwrap();
        Instance::new(cactus, links, root).unwrap()
    }

    #[test]
    fn relabeled_instances_are_isomorphic() {
        let a = instance(
            5,
            &[&[0, 1, 2], &[2, 3], &[2, 4]],
            &[(1, 3), (3, 4)],
            0,
        );
        // Same structure with 3 and 4 swapped and cycles shuffled.
        let b = instance(
            5,
            &[&[2, 4], &[0, 1, 2], &[3, 2]],
            &[(1, 4), (4, 3)],
            0,
        );
        assert!(isomorphic(&a, &b));
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn links_distinguish_instances() {
        let a = instance(4, &[&[0, 1], &[1, 2], &[1, 3]], &[(2, 3)], 0);
        let b = instance(4, &[&[0, 1], &[1, 2], &[1, 3]], &[(0, 2)], 0);
        assert!(!isomorphic(&a, &b));
    }

    #[test]
    fn orientation_matters_only_up_to_reflection() {
        let a = instance(4, &[&[0, 1, 2, 3]], &[(1, 3)], 0);
        let b = instance(4, &[&[0, 3, 2, 1]], &[(3, 1)], 0);
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn root_position_matters() {
        let a = instance(3, &[&[0, 1], &[1, 2]], &[], 0);
        let b = instance(3, &[&[0, 1], &[1, 2]], &[], 1);
        assert!(!isomorphic(&a, &b));
    }
}

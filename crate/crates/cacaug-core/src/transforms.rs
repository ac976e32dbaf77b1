//! Instance-to-instance surgery: tree-instance conversion, splitting at a
//! 2-cut, link contraction, residual instances, root-shadow completion and
//! the supernode leafification that restores leaf-to-leaf form.
//!
//! All contractions funnel through one primitive that merges a vertex set
//! into a fresh supernode and re-derives the cycle structure; every output
//! is re-validated as a cactus. Links are remapped alongside; duplicates
//! stay as distinct ids and self-loops are dropped.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cactus::{Cactus, CactusError, CheckOutcome, Instance, LinkClass};
use crate::{LinkId, Vertex};

/// Errors from the transform operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    /// The edge list of a tree instance does not form a spanning tree.
    NotATree,
    /// The given vertex set is not a 2-cut of the instance.
    NotATwoCut,
    /// The operation needs a leaf-to-leaf+ instance.
    NotLeafToLeafPlus,
    /// The operation needs a feasible instance.
    InfeasibleInstance,
    Cactus(CactusError),
}

impl From<CactusError> for TransformError {
    fn from(e: CactusError) -> Self {
        TransformError::Cactus(e)
    }
}

impl core::fmt::Display for TransformError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TransformError::NotATree => write!(f, "edges do not form a spanning tree"),
            TransformError::NotATwoCut => write!(f, "vertex set is not a 2-cut"),
            TransformError::NotLeafToLeafPlus => write!(f, "instance is not leaf-to-leaf+"),
            TransformError::InfeasibleInstance => write!(f, "instance is infeasible"),
            TransformError::Cactus(e) => write!(f, "{e}"),
        }
    }
}

/// Provenance of a transform: where each original vertex went, which vertex
/// groups were merged into supernodes, and where each original link went
/// (`None` when it collapsed to a self-loop and was dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub forward: Vec<Vertex>,
    pub merged_groups: Vec<Vec<Vertex>>,
    pub link_forward: Vec<Option<LinkId>>,
}

impl VertexMap {
    pub fn identity(vertices: usize, links: usize) -> Self {
        VertexMap {
            forward: (0..vertices).collect(),
            merged_groups: Vec::new(),
            link_forward: (0..links).map(Some).collect(),
        }
    }

    /// Composes `self` (applied first) with `next`.
    pub fn then(&self, next: &VertexMap) -> VertexMap {
        let forward: Vec<Vertex> = self.forward.iter().map(|&v| next.forward[v]).collect();
        let final_n = forward.iter().copied().max().map_or(0, |m| m + 1);
        let mut groups: Vec<Vec<Vertex>> = vec![Vec::new(); final_n];
        for (orig, &fin) in forward.iter().enumerate() {
            groups[fin].push(orig);
        }
        let merged_groups = groups.into_iter().filter(|g| g.len() >= 2).collect();
        let link_forward = self
            .link_forward
            .iter()
            .map(|slot| slot.and_then(|id| next.link_forward[id]))
            .collect();
        VertexMap {
            forward,
            merged_groups,
            link_forward,
        }
    }

    /// Original vertices mapping into `set` (the preimage of a vertex set of
    /// the transformed instance).
    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_iter(
            self.forward.len(),
            (0..self.forward.len()).filter(|&v| set.contains(self.forward[v])),
        )
    }
}

/// A tree augmentation instance: a spanning tree plus links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapInstance {
    pub vertex_count: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub links: Vec<(Vertex, Vertex)>,
}

/// Converts a tree instance by doubling every tree edge into a 2-cycle.
/// Tree leaves become cactus leaves and the links carry over unchanged.
pub fn tap_to_cacap(tap: &TapInstance, root: Vertex) -> Result<Instance, TransformError> {
    let n = tap.vertex_count;
    if n == 0 || tap.edges.len() + 1 != n {
        return Err(TransformError::NotATree);
    }
    for &(u, v) in &tap.edges {
        if u >= n || v >= n || u == v {
            return Err(TransformError::NotATree);
        }
    }
    let cycles: Vec<Vec<Vertex>> = tap.edges.iter().map(|&(u, v)| vec![u, v]).collect();
    let cactus = Cactus::new(n, cycles).map_err(|e| match e {
        CactusError::Disconnected | CactusError::EdgeInTwoCycles { .. } => TransformError::NotATree,
        other => TransformError::Cactus(other),
    })?;
    Ok(Instance::new(cactus, &tap.links, root)?)
}

/// Merges the vertex set `group` into one fresh supernode and rebuilds the
/// instance. Cycles are re-derived by collapsing the group in each cycle
/// walk and splitting the walk at supernode occurrences; arcs that shrink
/// to self-loops disappear and cycles fully inside the group vanish.
/// Surviving vertices keep their relative order and the supernode receives
/// the largest id.
pub(crate) fn contract_vertex_set(
    instance: &Instance,
    group: &BitSet,
) -> Result<(Instance, VertexMap), TransformError> {
    let n = instance.vertex_count();
    debug_assert!(group.count() >= 1);
    let survivors: Vec<Vertex> = (0..n).filter(|&v| !group.contains(v)).collect();
    let super_id = survivors.len();
    let new_n = survivors.len() + 1;
    let mut forward = vec![super_id; n];
    for (new, &orig) in survivors.iter().enumerate() {
        forward[orig] = new;
    }

    let mut cycles = Vec::new();
    for cycle in instance.cactus().cycles() {
        let mapped: Vec<Vertex> = cycle.iter().map(|&v| forward[v]).collect();
        let occurrences = mapped.iter().filter(|&&v| v == super_id).count();
        if occurrences == 0 {
            cycles.push(mapped);
            continue;
        }
        if occurrences == mapped.len() {
            continue;
        }
        // Rotate so position 0 is a supernode occurrence, then cut the walk
        // into maximal supernode-free runs; each run closes through the
        // supernode as its own cycle.
        let start = mapped.iter().position(|&v| v == super_id).unwrap();
        let len = mapped.len();
        let mut run: Vec<Vertex> = Vec::new();
        for k in 1..=len {
            let v = mapped[(start + k) % len];
            if v == super_id {
                if !run.is_empty() {
                    let mut c = vec![super_id];
                    c.append(&mut run);
                    cycles.push(c);
                }
            } else {
                run.push(v);
            }
        }
    }

    let mut link_pairs = Vec::new();
    let mut link_forward = vec![None; instance.links().len()];
    for l in instance.links() {
        let (nu, nv) = (forward[l.u], forward[l.v]);
        if nu == nv {
            continue;
        }
        link_forward[l.id] = Some(link_pairs.len());
        link_pairs.push((nu, nv));
    }

    let cactus = Cactus::new(new_n, cycles)?;
    let out = Instance::new(cactus, &link_pairs, forward[instance.root()])?;
    let merged_groups = if group.count() >= 2 {
        vec![group.iter().collect()]
    } else {
        Vec::new()
    };
    let map = VertexMap {
        forward,
        merged_groups,
        link_forward,
    };
    Ok((out, map))
}

/// True when `cut` is a nonempty, proper, root-free vertex set with exactly
/// two cactus edges leaving it.
pub fn is_two_cut(instance: &Instance, cut: &BitSet) -> bool {
    let n = instance.vertex_count();
    if cut.universe() != n || cut.is_empty() || cut.contains(instance.root()) || cut.count() >= n {
        return false;
    }
    let mut boundary = 0usize;
    for cycle in instance.cactus().cycles() {
        let len = cycle.len();
        for i in 0..len {
            let u = cycle[i];
            let v = cycle[(i + 1) % len];
            if cut.contains(u) != cut.contains(v) {
                boundary += 1;
            }
        }
    }
    boundary == 2
}

/// Splits the instance at a 2-cut `C`: the first result contracts
/// everything outside `C` into a supernode (a leaf, since its degree is 2),
/// the second contracts `C` itself. Links falling entirely into a supernode
/// are dropped from that side.
pub fn split_at(
    instance: &Instance,
    cut: &BitSet,
) -> Result<(Instance, Instance, VertexMap, VertexMap), TransformError> {
    if !is_two_cut(instance, cut) {
        return Err(TransformError::NotATwoCut);
    }
    let n = instance.vertex_count();
    let complement = BitSet::from_iter(n, (0..n).filter(|&v| !cut.contains(v)));
    let (side_cut, map_cut) = contract_vertex_set(instance, &complement)?;
    let (side_rest, map_rest) = contract_vertex_set(instance, cut)?;
    Ok((side_cut, side_rest, map_cut, map_rest))
}

/// The vertices contained in every `u`-`v` path: `u`, `v`, and the cut
/// vertices separating them, read off the block-cut path between them.
pub fn must_pass_vertices(cactus: &Cactus, u: Vertex, v: Vertex) -> BitSet {
    debug_assert_ne!(u, v);
    let n = cactus.vertex_count();
    // Explore cycles outward from u, remembering for each reached vertex the
    // vertex through which its cycle was entered. Following those entry
    // vertices back from v yields exactly the vertices no u-v path avoids.
    let mut at_vertex = vec![Vec::new(); n];
    for (ci, cycle) in cactus.cycles().iter().enumerate() {
        for &w in cycle {
            at_vertex[w].push(ci);
        }
    }
    let mut entered_via = vec![usize::MAX; n];
    let mut cycle_seen = vec![false; cactus.cycles().len()];
    let mut queue = VecDeque::new();
    entered_via[u] = u;
    queue.push_back(u);
    while let Some(w) = queue.pop_front() {
        for &ci in &at_vertex[w] {
            if cycle_seen[ci] {
                continue;
            }
            cycle_seen[ci] = true;
            for &x in &cactus.cycles()[ci] {
                if entered_via[x] == usize::MAX {
                    entered_via[x] = w;
                    queue.push_back(x);
                }
            }
        }
    }
    let mut set = BitSet::new(n);
    let mut cur = v;
    loop {
        set.insert(cur);
        if cur == u {
            break;
        }
        cur = entered_via[cur];
    }
    set
}

/// Contracts a link: merges the vertices lying on every path between its
/// endpoints into one supernode.
pub fn contract_link(
    instance: &Instance,
    link_id: LinkId,
) -> Result<(Instance, VertexMap), TransformError> {
    let link = *instance.link(link_id)?;
    let group = must_pass_vertices(instance.cactus(), link.u, link.v);
    contract_vertex_set(instance, &group)
}

/// The residual instance: contracts the links of `chosen` sequentially in
/// id order. The surviving 2-cuts are exactly the original 2-cuts not
/// covered by `chosen`, and the outcome does not depend on the order.
pub fn residual_instance(
    instance: &Instance,
    chosen: &[LinkId],
) -> Result<(Instance, VertexMap), TransformError> {
    let mut ids: Vec<LinkId> = chosen.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for &id in &ids {
        instance.link(id)?;
    }
    residual_instance_in_order(instance, &ids)
}

/// Like [`residual_instance`] but contracts in exactly the order given;
/// used to exercise order-independence.
pub fn residual_instance_in_order(
    instance: &Instance,
    chosen: &[LinkId],
) -> Result<(Instance, VertexMap), TransformError> {
    let mut current = instance.clone();
    let mut map = VertexMap::identity(instance.vertex_count(), instance.links().len());
    for &orig_id in chosen {
        let Some(cur_id) = map.link_forward[orig_id] else {
            // Already collapsed to a self-loop; contracting it is a no-op.
            continue;
        };
        let (next, step) = contract_link(&current, cur_id)?;
        map = map.then(&step);
        current = next;
    }
    Ok((current, map))
}

/// Adds, for every cross-link `{u, v}`, the root shadows `{u, r}` and
/// `{v, r}` (each added once; pairs already present are not duplicated).
/// The result is root-shadow complete and still leaf-to-leaf+.
pub fn root_shadow_completion(instance: &Instance) -> Result<Instance, TransformError> {
    if !instance.is_leaf_to_leaf_plus() {
        return Err(TransformError::NotLeafToLeafPlus);
    }
    let root = instance.root();
    let mut pairs: Vec<(Vertex, Vertex)> = instance.links().iter().map(|l| (l.u, l.v)).collect();
    let mut present: BTreeSet<(Vertex, Vertex)> = pairs.iter().copied().collect();
    for l in instance.links() {
        if instance.classify_link(l) != LinkClass::Cross {
            continue;
        }
        for end in [l.u, l.v] {
            if end == root {
                continue;
            }
            let key = (end.min(root), end.max(root));
            if present.insert(key) {
                pairs.push(key);
            }
        }
    }
    Ok(Instance::new(instance.cactus().clone(), &pairs, root)?)
}

/// True when every cross-link has both of its root shadows present.
pub fn is_root_shadow_complete(instance: &Instance) -> bool {
    let root = instance.root();
    let present: BTreeSet<(Vertex, Vertex)> =
        instance.links().iter().map(|l| (l.u, l.v)).collect();
    instance.links().iter().all(|l| {
        if instance.classify_link(l) != LinkClass::Cross {
            return true;
        }
        [l.u, l.v]
            .into_iter()
            .all(|end| end == root || present.contains(&(end.min(root), end.max(root))))
    })
}

/// The number of vertices that are link endpoints but not leaves. Splitting
/// conserves the sum of this quantity over both sides, and it bounds the
/// contraction set built by [`construct_x_and_leafify`].
pub fn non_leaf_endpoint_count(instance: &Instance) -> usize {
    let leaves = instance.leaves();
    let mut endpoints = BitSet::new(instance.vertex_count());
    for l in instance.links() {
        endpoints.insert(l.u);
        endpoints.insert(l.v);
    }
    endpoints.iter().filter(|&v| !leaves.contains(v)).count()
}

/// Result of the leafification construction.
#[derive(Clone, Debug)]
pub struct Leafified {
    /// Original link ids contracted to absorb every non-leaf link endpoint
    /// into a supernode; at most [`non_leaf_endpoint_count`] many.
    pub contracted: Vec<LinkId>,
    /// The leaf-to-leaf instance with one auxiliary leaf per link-incident
    /// supernode.
    pub instance: Instance,
    /// Map from the input instance into `instance` (auxiliary leaves have no
    /// preimage; link ids are preserved by the re-targeting step).
    pub map: VertexMap,
}

/// Restores leaf-to-leaf form for a feasible instance.
///
/// First builds a contraction set `X`: while some non-leaf link endpoint is
/// still unmerged, or some supernode without an original leaf inside still
/// has an incident link, the lowest-id link at the lowest such vertex is
/// contracted. Each step strictly shrinks the set of violating vertices, so
/// `|X|` stays within the non-leaf endpoint count. Then every supernode
/// that still has an incident link receives an auxiliary leaf attached by a
/// doubled edge and its links move to that leaf. Any solution `F` of the
/// result yields `F ∪ X` feasible for the input, and the optimum does not
/// increase.
pub fn construct_x_and_leafify(instance: &Instance) -> Result<Leafified, TransformError> {
    let all: Vec<LinkId> = (0..instance.links().len()).collect();
    match instance.check_solution(&all)? {
        CheckOutcome::Feasible(_) => {}
        CheckOutcome::Infeasible { .. } => return Err(TransformError::InfeasibleInstance),
    }

    let original_leaves = instance.leaves();
    let non_leaf_endpoints: Vec<Vertex> = {
        let mut s = BitSet::new(instance.vertex_count());
        for l in instance.links() {
            s.insert(l.u);
            s.insert(l.v);
        }
        s.iter().filter(|&v| !original_leaves.contains(v)).collect()
    };

    let mut current = instance.clone();
    let mut map = VertexMap::identity(instance.vertex_count(), instance.links().len());
    let mut contracted = Vec::new();

    loop {
        let n = current.vertex_count();
        let mut group_size = vec![0usize; n];
        let mut has_leaf = vec![false; n];
        for orig in 0..instance.vertex_count() {
            let cur = map.forward[orig];
            group_size[cur] += 1;
            if original_leaves.contains(orig) {
                has_leaf[cur] = true;
            }
        }
        let mut link_degree = vec![0usize; n];
        for l in current.links() {
            link_degree[l.u] += 1;
            link_degree[l.v] += 1;
        }

        let violating = (0..n).find(|&v| {
            if group_size[v] >= 2 {
                !has_leaf[v] && link_degree[v] > 0
            } else {
                non_leaf_endpoints.iter().any(|&orig| map.forward[orig] == v)
            }
        });
        let Some(v) = violating else { break };
        let link = current
            .links()
            .iter()
            .filter(|l| l.touches(v))
            .min_by_key(|l| l.id)
            .expect("violating vertex always has an incident link");
        let orig_id = map
            .link_forward
            .iter()
            .position(|&slot| slot == Some(link.id))
            .expect("current link has an origin");
        contracted.push(orig_id);
        let (next, step) = contract_link(&current, link.id)?;
        map = map.then(&step);
        current = next;
    }

    debug_assert!(contracted.len() <= non_leaf_endpoints.len());

    // Attach an auxiliary leaf to every link-incident supernode and move the
    // supernode's links to it.
    let n = current.vertex_count();
    let mut group_size = vec![0usize; n];
    for orig in 0..instance.vertex_count() {
        group_size[map.forward[orig]] += 1;
    }
    let mut link_degree = vec![0usize; n];
    for l in current.links() {
        link_degree[l.u] += 1;
        link_degree[l.v] += 1;
    }
    let needs_leaf: Vec<Vertex> = (0..n)
        .filter(|&v| group_size[v] >= 2 && link_degree[v] > 0)
        .collect();

    if needs_leaf.is_empty() {
        return Ok(Leafified {
            contracted,
            instance: current,
            map,
        });
    }

    let mut aux_of = vec![None; n];
    let mut cycles: Vec<Vec<Vertex>> = current.cactus().cycles().to_vec();
    let mut new_n = n;
    for &s in &needs_leaf {
        aux_of[s] = Some(new_n);
        cycles.push(vec![s, new_n]);
        new_n += 1;
    }
    let retarget = |w: Vertex| aux_of[w].unwrap_or(w);
    let pairs: Vec<(Vertex, Vertex)> = current
        .links()
        .iter()
        .map(|l| (retarget(l.u), retarget(l.v)))
        .collect();
    let cactus = Cactus::new(new_n, cycles)?;
    let leafified = Instance::new(cactus, &pairs, current.root())?;

    Ok(Leafified {
        contracted,
        instance: leafified,
        map,
    })
}

//! The cactus/instance data model: validation, 2-cut enumeration, link
//! classification, and solution checking.
//!
//! A cactus is given as a list of cycles over dense vertex ids; every edge of
//! the multigraph belongs to exactly one listed cycle, and a 2-element cycle
//! stands for a pair of parallel edges (the encoding produced by doubling
//! tree edges). The minimum cuts of a cactus are exactly the vertex sets
//! obtained by removing two edges of a common cycle, which is what
//! [`Instance::two_cuts`] enumerates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::{LinkId, Vertex};

/// Validation and lookup failures on cacti and instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CactusError {
    /// The graph has no vertices at all.
    NoVertices,
    /// A cycle references a vertex id `>= vertex_count`.
    InvalidVertex { cycle: usize, vertex: Vertex },
    /// A cycle has fewer than two vertices or repeats a vertex.
    DegenerateCycle { cycle: usize },
    /// Some edge would lie in two cycles (two listed cycles overlap in a
    /// common biconnected block). When the violation is witnessed by a pair
    /// of cycles sharing two vertices, that pair is reported.
    EdgeInTwoCycles { cycles: Option<(usize, usize)> },
    /// The union of the cycles does not connect all vertices.
    Disconnected,
    /// The instance root is not a vertex of the cactus.
    InvalidRoot { root: Vertex },
    /// A link endpoint is out of range or the link is a self-loop.
    InvalidLink { index: usize },
    /// A link id that is not in `0..links.len()`.
    UnknownLinkId { id: LinkId },
}

impl core::fmt::Display for CactusError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CactusError::NoVertices => write!(f, "cactus has no vertices"),
            CactusError::InvalidVertex { cycle, vertex } => {
                write!(f, "cycle {cycle} references invalid vertex {vertex}")
            }
            CactusError::DegenerateCycle { cycle } => {
                write!(f, "cycle {cycle} is degenerate (length < 2 or repeated vertex)")
            }
            CactusError::EdgeInTwoCycles { cycles: Some((a, b)) } => {
                write!(f, "cycles {a} and {b} share more than one vertex")
            }
            CactusError::EdgeInTwoCycles { cycles: None } => {
                write!(f, "some edge lies in more than one cycle")
            }
            CactusError::Disconnected => write!(f, "cycle edges do not connect all vertices"),
            CactusError::InvalidRoot { root } => write!(f, "root {root} is not a vertex"),
            CactusError::InvalidLink { index } => {
                write!(f, "link {index} has an invalid or repeated endpoint")
            }
            CactusError::UnknownLinkId { id } => write!(f, "unknown link id {id}"),
        }
    }
}

/// A validated cactus: every edge lies in exactly one of the listed cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cactus {
    vertex_count: usize,
    cycles: Vec<Vec<Vertex>>,
}

impl Cactus {
    /// Validates a raw cycle list as a cactus.
    ///
    /// The checks are: every cycle has length at least 2 with distinct,
    /// in-range vertices; the union of the cycle edges connects all
    /// vertices; and the cycle space has dimension equal to the number of
    /// listed cycles (`edges - vertices + 1 == cycles`), which for a
    /// connected union of cycles is equivalent to every biconnected block
    /// being exactly one listed cycle.
    pub fn new(vertex_count: usize, cycles: Vec<Vec<Vertex>>) -> Result<Self, CactusError> {
        if vertex_count == 0 {
            return Err(CactusError::NoVertices);
        }
        let mut edge_count = 0usize;
        for (ci, cycle) in cycles.iter().enumerate() {
            if cycle.len() < 2 {
                return Err(CactusError::DegenerateCycle { cycle: ci });
            }
            let mut seen = BitSet::new(vertex_count);
            for &v in cycle {
                if v >= vertex_count {
                    return Err(CactusError::InvalidVertex { cycle: ci, vertex: v });
                }
                if seen.contains(v) {
                    return Err(CactusError::DegenerateCycle { cycle: ci });
                }
                seen.insert(v);
            }
            edge_count += cycle.len();
        }

        let cactus = Cactus { vertex_count, cycles };

        // Connectivity over the cycle edges.
        let mut visited = BitSet::new(vertex_count);
        let mut stack = vec![0];
        visited.insert(0);
        let adj = cactus.adjacency();
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !visited.contains(w) {
                    visited.insert(w);
                    stack.push(w);
                }
            }
        }
        if visited.count() != vertex_count {
            return Err(CactusError::Disconnected);
        }

        // Cycle space dimension must match the number of listed cycles.
        if edge_count + 1 != vertex_count + cactus.cycles.len() {
            return Err(CactusError::EdgeInTwoCycles {
                cycles: cactus.find_overlapping_cycles(),
            });
        }
        Ok(cactus)
    }

    /// Searches for a pair of cycles sharing at least two vertices, as an
    /// error witness. Blocks can also merge through a ring of cycles that
    /// pairwise share single vertices, in which case there is no such pair.
    fn find_overlapping_cycles(&self) -> Option<(usize, usize)> {
        let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut at_vertex = vec![Vec::new(); self.vertex_count];
        for (ci, cycle) in self.cycles.iter().enumerate() {
            for &v in cycle {
                at_vertex[v].push(ci);
            }
        }
        for list in &at_vertex {
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let key = (list[i], list[j]);
                    let n = pair_count.entry(key).or_insert(0);
                    *n += 1;
                    if *n >= 2 {
                        return Some(key);
                    }
                }
            }
        }
        None
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cycles(&self) -> &[Vec<Vertex>] {
        &self.cycles
    }

    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Adjacency lists with multiplicity (a doubled edge appears twice).
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for cycle in &self.cycles {
            let n = cycle.len();
            for i in 0..n {
                let u = cycle[i];
                let v = cycle[(i + 1) % n];
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    /// Vertex degrees counted with edge multiplicity; each containing cycle
    /// contributes 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for cycle in &self.cycles {
            for &v in cycle {
                deg[v] += 2;
            }
        }
        deg
    }

    /// The leaves (terminals): vertices of total degree 2.
    pub fn leaves(&self) -> BitSet {
        let deg = self.degrees();
        BitSet::from_iter(
            self.vertex_count,
            (0..self.vertex_count).filter(|&v| deg[v] == 2),
        )
    }
}

/// A link: an unordered pair of distinct vertices, with its index in the
/// instance's link list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub u: Vertex,
    pub v: Vertex,
    pub id: LinkId,
}

impl Link {
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(&self, w: Vertex) -> Vertex {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }
}

/// In/cross classification of a link relative to the instance root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// Both endpoints lie in one connected component of `G - r`.
    In,
    /// All other links, including every link incident to the root.
    Cross,
}

/// A 2-cut: a canonical vertex set not containing the root, with exactly two
/// cactus edges leaving it. The two cut edges necessarily belong to one
/// cycle and are identified by `(cycle index, edge position)`, where edge
/// position `i` is the edge between `cycle[i]` and `cycle[(i+1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCut {
    pub vertices: BitSet,
    pub cut_edges: [(usize, usize); 2],
}

/// A feasible link set together with its per-class counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub link_ids: Vec<LinkId>,
    pub in_count: usize,
    pub cross_count: usize,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.link_ids.len()
    }
}

/// Outcome of checking a link set against all 2-cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Feasible(Solution),
    Infeasible { witness: TwoCut },
}

impl CheckOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CheckOutcome::Feasible(_))
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            CheckOutcome::Feasible(s) => Some(s),
            CheckOutcome::Infeasible { .. } => None,
        }
    }
}

/// A principal subcactus of a rooted instance: the sub-instance induced on
/// one component `W` of `G - r` together with the root. Links with exactly
/// one endpoint in `W` keep that endpoint and have the far endpoint moved to
/// the root; `link_origin` maps the sub-instance's dense link ids back to
/// the originals.
#[derive(Clone, Debug)]
pub struct PrincipalSubcactus {
    pub original_vertices: BitSet,
    pub instance: Instance,
    pub vertex_origin: Vec<Vertex>,
    pub link_origin: Vec<LinkId>,
}

/// A rooted cactus augmentation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    cactus: Cactus,
    links: Vec<Link>,
    root: Vertex,
}

impl Instance {
    /// Builds an instance from raw link pairs; link ids are assigned densely
    /// in input order.
    pub fn new(
        cactus: Cactus,
        link_pairs: &[(Vertex, Vertex)],
        root: Vertex,
    ) -> Result<Self, CactusError> {
        if root >= cactus.vertex_count() {
            return Err(CactusError::InvalidRoot { root });
        }
        let mut links = Vec::with_capacity(link_pairs.len());
        for (id, &(u, v)) in link_pairs.iter().enumerate() {
            if u == v || u >= cactus.vertex_count() || v >= cactus.vertex_count() {
                return Err(CactusError::InvalidLink { index: id });
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            links.push(Link { u, v, id });
        }
        Ok(Instance { cactus, links, root })
    }

    pub fn cactus(&self) -> &Cactus {
        &self.cactus
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> Result<&Link, CactusError> {
        self.links.get(id).ok_or(CactusError::UnknownLinkId { id })
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.cactus.vertex_count()
    }

    pub fn leaves(&self) -> BitSet {
        self.cactus.leaves()
    }

    /// Connected components of `G - r`: returns `comp[v] = Some(index)` for
    /// `v != r`, numbered in order of their smallest vertex.
    pub fn components_without_root(&self) -> (Vec<Option<usize>>, usize) {
        let n = self.vertex_count();
        let adj = self.cactus.adjacency();
        let mut comp = vec![None; n];
        let mut count = 0;
        for start in 0..n {
            if start == self.root || comp[start].is_some() {
                continue;
            }
            comp[start] = Some(count);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if w != self.root && comp[w].is_none() {
                        comp[w] = Some(count);
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Classifies a link as in-link or cross-link relative to the root.
    pub fn classify_link(&self, link: &Link) -> LinkClass {
        if link.u == self.root || link.v == self.root {
            return LinkClass::Cross;
        }
        let (comp, _) = self.components_without_root();
        if comp[link.u] == comp[link.v] {
            LinkClass::In
        } else {
            LinkClass::Cross
        }
    }

    /// True when every link endpoint is a leaf.
    pub fn is_leaf_to_leaf(&self) -> bool {
        let leaves = self.leaves();
        self.links
            .iter()
            .all(|l| leaves.contains(l.u) && leaves.contains(l.v))
    }

    /// True when every link endpoint is a leaf or the root.
    pub fn is_leaf_to_leaf_plus(&self) -> bool {
        let leaves = self.leaves();
        self.links.iter().all(|l| {
            (leaves.contains(l.u) || l.u == self.root)
                && (leaves.contains(l.v) || l.v == self.root)
        })
    }

    /// Enumerates all 2-cuts, one per unordered pair of edges of a common
    /// cycle, oriented so the returned side excludes the root. The total is
    /// the sum of `len(cycle) choose 2` over the cycles and contains no
    /// duplicate vertex sets.
    pub fn two_cuts(&self) -> Vec<TwoCut> {
        let n = self.vertex_count();
        let cycles = self.cactus.cycles();

        // Discover each cycle from the root outward and record its anchor,
        // the cycle vertex through which the root reaches it.
        let mut at_vertex = vec![Vec::new(); n];
        for (ci, cycle) in cycles.iter().enumerate() {
            for &v in cycle {
                at_vertex[v].push(ci);
            }
        }
        let mut cycle_anchor = vec![usize::MAX; cycles.len()];
        let mut cycle_order = Vec::with_capacity(cycles.len());
        let mut visited = BitSet::new(n);
        visited.insert(self.root);
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(self.root);
        while let Some(v) = queue.pop_front() {
            for &ci in &at_vertex[v] {
                if cycle_anchor[ci] != usize::MAX {
                    continue;
                }
                cycle_anchor[ci] = v;
                cycle_order.push(ci);
                for &w in &cycles[ci] {
                    if !visited.contains(w) {
                        visited.insert(w);
                        queue.push_back(w);
                    }
                }
            }
        }

        // subtree[v]: vertices hanging off v away from the root, v included.
        let mut subtree: Vec<BitSet> = (0..n).map(|v| BitSet::from_iter(n, [v])).collect();
        for &ci in cycle_order.iter().rev() {
            let a = cycle_anchor[ci];
            for &w in &cycles[ci] {
                if w != a {
                    let t = subtree[w].clone();
                    subtree[a].union_with(&t);
                }
            }
        }

        let mut cuts = Vec::new();
        for (ci, cycle) in cycles.iter().enumerate() {
            let len = cycle.len();
            let anchor_pos = cycle.iter().position(|&v| v == cycle_anchor[ci]).unwrap();
            for i in 0..len {
                for j in i + 1..len {
                    // Removing edges i and j splits the cycle into the arc of
                    // positions i+1..=j and its complement; keep the side
                    // without the anchor.
                    let anchor_inside = i < anchor_pos && anchor_pos <= j;
                    let mut vertices = BitSet::new(n);
                    for (pos, &v) in cycle.iter().enumerate() {
                        let in_arc = i < pos && pos <= j;
                        if in_arc != anchor_inside {
                            vertices.union_with(&subtree[v]);
                        }
                    }
                    cuts.push(TwoCut {
                        vertices,
                        cut_edges: [(ci, i), (ci, j)],
                    });
                }
            }
        }
        cuts
    }

    /// Checks a link set against every 2-cut. Returns the per-class counts
    /// on success and an uncovered cut as witness on failure.
    pub fn check_solution(&self, link_ids: &[LinkId]) -> Result<CheckOutcome, CactusError> {
        let mut chosen = Vec::with_capacity(link_ids.len());
        for &id in link_ids {
            chosen.push(*self.link(id)?);
        }
        for cut in self.two_cuts() {
            if !chosen.iter().any(|l| covers(l, &cut)) {
                return Ok(CheckOutcome::Infeasible { witness: cut });
            }
        }
        let mut ids: Vec<LinkId> = link_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut in_count = 0;
        let mut cross_count = 0;
        for &id in &ids {
            match self.classify_link(&self.links[id]) {
                LinkClass::In => in_count += 1,
                LinkClass::Cross => cross_count += 1,
            }
        }
        Ok(CheckOutcome::Feasible(Solution {
            link_ids: ids,
            in_count,
            cross_count,
        }))
    }

    /// Independent feasibility cross-check: the cactus plus the chosen links
    /// is 3-edge-connected. Agrees with [`Instance::check_solution`] on
    /// every input.
    pub fn three_edge_connected_with(&self, link_ids: &[LinkId]) -> bool {
        let n = self.vertex_count();
        if n == 1 {
            return true;
        }
        let mut weight = vec![vec![0u64; n]; n];
        for cycle in self.cactus.cycles() {
            let len = cycle.len();
            for i in 0..len {
                let u = cycle[i];
                let v = cycle[(i + 1) % len];
                weight[u][v] += 1;
                weight[v][u] += 1;
            }
        }
        for &id in link_ids {
            let l = &self.links[id];
            weight[l.u][l.v] += 1;
            weight[l.v][l.u] += 1;
        }
        global_min_cut(weight) >= 3
    }

    /// The width of the instance: the maximum number of leaves of `G` in a
    /// single component of `G - r`.
    pub fn k_wideness(&self) -> usize {
        let leaves = self.leaves();
        let (comp, count) = self.components_without_root();
        let mut per_comp = vec![0usize; count];
        for (v, slot) in comp.iter().enumerate() {
            if let Some(c) = slot {
                if leaves.contains(v) {
                    per_comp[*c] += 1;
                }
            }
        }
        per_comp.into_iter().max().unwrap_or(0)
    }

    /// The principal subcacti: one sub-instance per component of `G - r`,
    /// induced on the component plus the root. Every link with an endpoint
    /// in the component is included, with a far endpoint outside the
    /// component moved to the root.
    pub fn principal_subcacti(&self) -> Vec<PrincipalSubcactus> {
        let n = self.vertex_count();
        let (comp, count) = self.components_without_root();
        let mut result = Vec::with_capacity(count);
        for c in 0..count {
            let members = BitSet::from_iter(n, (0..n).filter(|&v| comp[v] == Some(c)));

            let mut vertex_origin: Vec<Vertex> = members.iter().collect();
            vertex_origin.push(self.root);
            vertex_origin.sort_unstable();
            let mut to_new = vec![usize::MAX; n];
            for (new, &orig) in vertex_origin.iter().enumerate() {
                to_new[orig] = new;
            }

            let cycles: Vec<Vec<Vertex>> = self
                .cactus
                .cycles()
                .iter()
                .filter(|cycle| cycle.iter().any(|&v| members.contains(v)))
                .map(|cycle| cycle.iter().map(|&v| to_new[v]).collect())
                .collect();

            let mut link_pairs = Vec::new();
            let mut link_origin = Vec::new();
            for l in &self.links {
                let u_in = members.contains(l.u);
                let v_in = members.contains(l.v);
                if !u_in && !v_in {
                    continue;
                }
                let map_end = |w: Vertex, w_in: bool| {
                    if w_in || w == self.root {
                        to_new[w]
                    } else {
                        to_new[self.root]
                    }
                };
                let nu = map_end(l.u, u_in);
                let nv = map_end(l.v, v_in);
                if nu == nv {
                    continue;
                }
                link_pairs.push((nu, nv));
                link_origin.push(l.id);
            }

            let cactus = Cactus::new(vertex_origin.len(), cycles)
                .expect("principal subcactus must validate");
            let instance = Instance::new(cactus, &link_pairs, to_new[self.root])
                .expect("principal subcactus instance must validate");
            result.push(PrincipalSubcactus {
                original_vertices: members,
                instance,
                vertex_origin,
                link_origin,
            });
        }
        result
    }
}

/// True iff exactly one endpoint of the link lies inside the cut.
pub fn covers(link: &Link, cut: &TwoCut) -> bool {
    cut.vertices.contains(link.u) != cut.vertices.contains(link.v)
}

/// Stoer–Wagner global minimum cut on a dense non-negative weight matrix.
/// Returns `u64::MAX` for graphs with fewer than two vertices.
#[allow(clippy::needless_range_loop)]
fn global_min_cut(mut weight: Vec<Vec<u64>>) -> u64 {
    let n = weight.len();
    if n < 2 {
        return u64::MAX;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let m = active.len();
        let mut in_a = vec![false; m];
        let mut w = vec![0u64; m];
        let mut prev = 0;
        let mut last = 0;
        in_a[0] = true;
        for i in 0..m {
            w[i] = weight[active[0]][active[i]];
        }
        for _ in 1..m {
            let mut sel = usize::MAX;
            for i in 0..m {
                if !in_a[i] && (sel == usize::MAX || w[i] > w[sel]) {
                    sel = i;
                }
            }
            in_a[sel] = true;
            prev = last;
            last = sel;
            for i in 0..m {
                if !in_a[i] {
                    w[i] += weight[active[sel]][active[i]];
                }
            }
        }
        best = best.min(w[last]);
        // Merge `last` into `prev`.
        let (a, b) = (active[prev], active[last]);
        for i in 0..n {
            weight[a][i] += weight[b][i];
            weight[i][a] += weight[i][b];
        }
        weight[a][a] = 0;
        active.remove(last);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn instance(
        n: usize,
        cycles: &[&[Vertex]],
        links: &[(Vertex, Vertex)],
        root: Vertex,
    ) -> Instance {
        let cactus = Cactus::new(n, cycles.iter().map(|c| c.to_vec()).collect()).unwrap();
        Instance::new(cactus, links, root).unwrap()
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Instance>();
        assert_send_sync::<Cactus>();
        assert_send_sync::<TwoCut>();
        assert_send_sync::<Solution>();
    }

    #[test]
    fn validates_smallest_cactus() {
        let c = Cactus::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.leaves().iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn validates_triangle_with_pendant() {
        let c = Cactus::new(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(c.leaves().iter().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(c.degrees(), vec![2, 2, 4, 2]);
    }

    #[test]
    fn rejects_overlapping_cycles() {
        let err = Cactus::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap_err();
        assert_eq!(err, CactusError::EdgeInTwoCycles { cycles: Some((0, 1)) });
    }

    #[test]
    fn rejects_cycle_ring_block() {
        // Three triangles glued pairwise at single vertices still merge into
        // one block because the gluing is cyclic.
        let err = Cactus::new(
            6,
            vec![vec![0, 3, 2], vec![0, 4, 1], vec![1, 5, 2]],
        )
        .unwrap_err();
        assert_eq!(err, CactusError::EdgeInTwoCycles { cycles: None });
    }

    #[test]
    fn rejects_degenerate_and_disconnected() {
        assert_eq!(
            Cactus::new(2, vec![vec![0]]).unwrap_err(),
            CactusError::DegenerateCycle { cycle: 0 }
        );
        assert_eq!(
            Cactus::new(3, vec![vec![0, 1, 1]]).unwrap_err(),
            CactusError::DegenerateCycle { cycle: 0 }
        );
        assert_eq!(
            Cactus::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap_err(),
            CactusError::Disconnected
        );
    }

    #[test]
    fn single_vertex_cactus_is_valid() {
        let c = Cactus::new(1, vec![]).unwrap();
        assert_eq!(c.leaves().count(), 0);
    }

    #[test]
    fn two_cuts_of_doubled_edge() {
        let inst = instance(2, &[&[0, 1]], &[(0, 1)], 0);
        let cuts = inst.two_cuts();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].vertices.iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn two_cuts_of_triangle() {
        let inst = instance(3, &[&[0, 1, 2]], &[], 0);
        let cuts = inst.two_cuts();
        assert_eq!(cuts.len(), 3);
        let mut sets: Vec<Vec<usize>> = cuts
            .iter()
            .map(|c| c.vertices.iter().collect())
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn cut_count_identity() {
        let inst = instance(
            6,
            &[&[0, 1, 2, 3], &[3, 4], &[1, 5]],
            &[],
            0,
        );
        let expected: usize = inst
            .cactus()
            .cycles()
            .iter()
            .map(|c| c.len() * (c.len() - 1) / 2)
            .sum();
        let cuts = inst.two_cuts();
        assert_eq!(cuts.len(), expected);
        // No duplicates and the root is never inside.
        let mut seen = alloc::collections::BTreeSet::new();
        for cut in &cuts {
            assert!(!cut.vertices.contains(inst.root()));
            assert!(seen.insert(cut.vertices.clone()));
        }
    }

    #[test]
    fn covers_examples() {
        let inst = instance(4, &[&[0, 1, 2], &[2, 3]], &[(0, 1), (1, 2), (0, 3)], 0);
        let cut1 = TwoCut {
            vertices: BitSet::from_iter(4, [1]),
            cut_edges: [(0, 0), (0, 1)],
        };
        let cut12 = TwoCut {
            vertices: BitSet::from_iter(4, [1, 2]),
            cut_edges: [(0, 0), (0, 2)],
        };
        assert!(covers(&inst.links()[0], &cut1));
        assert!(!covers(&inst.links()[1], &cut12));
        assert!(!covers(&inst.links()[2], &cut1));
    }

    #[test]
    fn classify_root_link_is_cross() {
        let inst = instance(3, &[&[0, 1, 2]], &[(0, 1), (1, 2)], 0);
        assert_eq!(inst.classify_link(&inst.links()[0]), LinkClass::Cross);
        assert_eq!(inst.classify_link(&inst.links()[1]), LinkClass::In);
    }

    #[test]
    fn leaf_to_leaf_flags() {
        let ll = instance(2, &[&[0, 1]], &[(0, 1)], 0);
        // Both endpoints are leaves here (the root is itself a leaf).
        assert!(ll.is_leaf_to_leaf());
        assert!(ll.is_leaf_to_leaf_plus());

        let plus = instance(4, &[&[0, 1, 2], &[2, 3]], &[(0, 1), (1, 3)], 0);
        // Vertex 0 is the root and a leaf; make the non-leaf case explicit.
        let not_ll = instance(4, &[&[0, 1, 2], &[2, 3]], &[(2, 1)], 0);
        assert!(plus.is_leaf_to_leaf());
        assert!(!not_ll.is_leaf_to_leaf());
        assert!(!not_ll.is_leaf_to_leaf_plus());

        let root_link = instance(4, &[&[0, 1, 2], &[2, 3]], &[(2, 3)], 2);
        assert!(!root_link.is_leaf_to_leaf());
        assert!(root_link.is_leaf_to_leaf_plus());
    }

    #[test]
    fn check_solution_feasible_and_witness() {
        let inst = instance(2, &[&[0, 1]], &[(0, 1)], 0);
        match inst.check_solution(&[0]).unwrap() {
            CheckOutcome::Feasible(sol) => {
                assert_eq!(sol.size(), 1);
                assert_eq!(sol.cross_count, 1);
                assert_eq!(sol.in_count, 0);
            }
            CheckOutcome::Infeasible { .. } => panic!("expected feasible"),
        }

        let tri = instance(3, &[&[0, 1, 2]], &[(1, 2)], 0);
        match tri.check_solution(&[0]).unwrap() {
            CheckOutcome::Infeasible { witness } => {
                assert_eq!(witness.vertices.iter().collect::<Vec<_>>(), vec![1, 2]);
            }
            CheckOutcome::Feasible(_) => panic!("expected infeasible"),
        }

        assert_eq!(
            tri.check_solution(&[7]).unwrap_err(),
            CactusError::UnknownLinkId { id: 7 }
        );
    }

    #[test]
    fn three_edge_connectivity_examples() {
        let inst = instance(2, &[&[0, 1]], &[(0, 1)], 0);
        assert!(inst.three_edge_connected_with(&[0]));
        let tri = instance(3, &[&[0, 1, 2]], &[], 0);
        assert!(!tri.three_edge_connected_with(&[]));
    }

    #[test]
    fn k_wideness_examples() {
        let inst = instance(2, &[&[0, 1]], &[], 0);
        assert_eq!(inst.k_wideness(), 1);
        assert_eq!(inst.principal_subcacti().len(), 1);

        let tri = instance(3, &[&[0, 1, 2]], &[], 0);
        assert_eq!(tri.k_wideness(), 2);
        let subs = tri.principal_subcacti();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].original_vertices.iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn subcactus_link_remapping() {
        // Root 0 with two pendant doubled edges; a link between the two
        // components is remapped to the root on each side.
        let inst = instance(3, &[&[0, 1], &[0, 2]], &[(1, 2)], 0);
        let subs = inst.principal_subcacti();
        assert_eq!(subs.len(), 2);
        for sub in &subs {
            assert_eq!(sub.link_origin, vec![0]);
            let l = &sub.instance.links()[0];
            assert!(l.touches(sub.instance.root()));
        }
    }
}

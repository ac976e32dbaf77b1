//! Maximum-weight matching in general graphs.
//!
//! Edmonds' blossom method driven primal-dual, after Galil's survey and Joris
//! van Rantwijk's reference implementation. Runs in O(n^3). Vertices are
//! `0..n`; non-trivial blossoms get numbers `n..2n`. Edge endpoints are
//! numbered so that endpoints `2k` and `2k+1` belong to edge `k`. Dual
//! variables of vertices are stored doubled so that everything stays integral
//! for integer weights.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) const NONE: usize = usize::MAX;

/// Computes a maximum-weight matching of `edges` over vertices `0..n`.
/// With `max_cardinality`, only maximum-cardinality matchings compete.
/// Returns `mate` with `mate[v]` the partner of `v` or [`NONE`].
///
/// Edges must connect distinct vertices and carry at most one edge per
/// vertex pair.
pub(crate) fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<usize> {
    if edges.is_empty() {
        return vec![NONE; n];
    }
    let mut solver = Solver::new(n, edges, max_cardinality);
    solver.run();
    solver.mate_by_vertex()
}

struct Solver<'a> {
    n: usize,
    edges: &'a [(usize, usize, i64)],
    max_cardinality: bool,
    endpoint: Vec<usize>,
    neighb_end: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<usize>,
    label_end: Vec<usize>,
    in_blossom: Vec<usize>,
    blossom_parent: Vec<usize>,
    blossom_childs: Vec<Vec<usize>>,
    blossom_base: Vec<usize>,
    blossom_endps: Vec<Vec<usize>>,
    best_edge: Vec<usize>,
    blossom_best_edges: Vec<Vec<usize>>,
    unused_blossoms: Vec<usize>,
    dual: Vec<i64>,
    allow_edge: Vec<bool>,
    queue: Vec<usize>,
}

/// Python-style indexing: negative indices count from the back.
fn at(v: &[usize], ix: i64) -> usize {
    if ix >= 0 {
        v[ix as usize]
    } else {
        v[(v.len() as i64 + ix) as usize]
    }
}

impl<'a> Solver<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)], max_cardinality: bool) -> Self {
        let nedge = edges.len();
        let max_weight = edges.iter().map(|e| e.2).max().unwrap().max(0);
        let endpoint: Vec<usize> = (0..2 * nedge)
            .map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 })
            .collect();
        let mut neighb_end = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            debug_assert_ne!(i, j);
            neighb_end[i].push(2 * k + 1);
            neighb_end[j].push(2 * k);
        }
        let mut dual = vec![max_weight; n];
        dual.extend(vec![0; n]);
        let mut blossom_base: Vec<usize> = (0..n).collect();
        blossom_base.extend(vec![NONE; n]);
        Solver {
            n,
            edges,
            max_cardinality,
            endpoint,
            neighb_end,
            mate: vec![NONE; n],
            label: vec![0; 2 * n],
            label_end: vec![NONE; 2 * n],
            in_blossom: (0..n).collect(),
            blossom_parent: vec![NONE; 2 * n],
            blossom_childs: vec![Vec::new(); 2 * n],
            blossom_base,
            blossom_endps: vec![Vec::new(); 2 * n],
            best_edge: vec![NONE; 2 * n],
            blossom_best_edges: vec![Vec::new(); 2 * n],
            unused_blossoms: (n..2 * n).collect(),
            dual,
            allow_edge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    /// 2 * slack of edge k (undefined inside blossoms).
    fn slack(&self, k: usize) -> i64 {
        let (i, j, wt) = self.edges[k];
        self.dual[i] + self.dual[j] - 2 * wt
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.n {
                leaves.push(t);
            } else {
                stack.extend(self.blossom_childs[t].iter().copied());
            }
        }
        leaves
    }

    /// Label the top-level blossom of `w` with `t`, reached through the edge
    /// with remote endpoint `p`.
    fn assign_label(&mut self, w: usize, t: usize, p: usize) {
        let b = self.in_blossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.label_end[w] = p;
        self.label_end[b] = p;
        self.best_edge[w] = NONE;
        self.best_edge[b] = NONE;
        if t == 1 {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else if t == 2 {
            let base = self.blossom_base[b];
            debug_assert!(self.mate[base] != NONE);
            let mbase = self.mate[base];
            let ep = self.endpoint[mbase];
            self.assign_label(ep, 1, mbase ^ 1);
        }
    }

    /// Trace back from `v` and `w` to find either a new blossom base or an
    /// augmenting path (returns [`NONE`] in the latter case).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        let mut v = v;
        let mut w = w;
        while v != NONE || w != NONE {
            let mut b = self.in_blossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossom_base[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            debug_assert_eq!(self.label_end[b], self.mate[self.blossom_base[b]]);
            if self.label_end[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.label_end[b]];
                b = self.in_blossom[v];
                debug_assert_eq!(self.label[b], 2);
                debug_assert!(self.label_end[b] != NONE);
                v = self.endpoint[self.label_end[b]];
            }
            if w != NONE {
                core::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Construct a new blossom with the given base through edge `k`, which
    /// joins two S-blossoms; relabel its T-sub-blossoms to S.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.in_blossom[base];
        let mut bv = self.in_blossom[v];
        let mut bw = self.in_blossom[w];

        let b = self.unused_blossoms.pop().unwrap();
        self.blossom_base[b] = base;
        self.blossom_parent[b] = NONE;
        self.blossom_parent[bb] = b;

        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossom_parent[bv] = b;
            childs.push(bv);
            endps.push(self.label_end[bv]);
            debug_assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.label_end[bv] == self.mate[self.blossom_base[bv]])
            );
            debug_assert!(self.label_end[bv] != NONE);
            v = self.endpoint[self.label_end[bv]];
            bv = self.in_blossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossom_parent[bw] = b;
            childs.push(bw);
            endps.push(self.label_end[bw] ^ 1);
            debug_assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.label_end[bw] == self.mate[self.blossom_base[bw]])
            );
            debug_assert!(self.label_end[bw] != NONE);
            w = self.endpoint[self.label_end[bw]];
            bw = self.in_blossom[w];
        }
        self.blossom_childs[b] = childs;
        self.blossom_endps[b] = endps;

        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.label_end[b] = self.label_end[bb];
        self.dual[b] = 0;

        for v in self.blossom_leaves(b) {
            if self.label[self.in_blossom[v]] == 2 {
                // A former T-vertex becomes an S-vertex of the new blossom.
                self.queue.push(v);
            }
            self.in_blossom[v] = b;
        }

        // Compute the least-slack edges from the new blossom to every other
        // S-blossom, merging the sub-blossoms' lists.
        let mut best_edge_to = vec![NONE; 2 * self.n];
        for bv in self.blossom_childs[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossom_best_edges[bv].is_empty() {
                self.blossom_leaves(bv)
                    .into_iter()
                    .map(|v| self.neighb_end[v].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossom_best_edges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.in_blossom[j] == b {
                        core::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.in_blossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (best_edge_to[bj] == NONE
                            || self.slack(k) < self.slack(best_edge_to[bj]))
                    {
                        best_edge_to[bj] = k;
                    }
                }
            }
            self.blossom_best_edges[bv] = Vec::new();
            self.best_edge[bv] = NONE;
        }
        self.blossom_best_edges[b] = best_edge_to.into_iter().filter(|&k| k != NONE).collect();
        self.best_edge[b] = NONE;
        for &k in &self.blossom_best_edges[b] {
            if self.best_edge[b] == NONE || self.slack(k) < self.slack(self.best_edge[b]) {
                self.best_edge[b] = k;
            }
        }
    }

    /// Expand the given top-level blossom into its children.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossom_childs[b].clone() {
            self.blossom_parent[s] = NONE;
            if s < self.n {
                self.in_blossom[s] = s;
            } else if endstage && self.dual[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.in_blossom[v] = s;
                }
            }
        }
        // Expanding a T-blossom mid-stage requires relabeling sub-blossoms
        // along the path from the entry child to the base.
        if !endstage && self.label[b] == 2 {
            debug_assert!(self.label_end[b] != NONE);
            let entry_child = self.in_blossom[self.endpoint[self.label_end[b] ^ 1]];
            let mut j = self.blossom_childs[b]
                .iter()
                .position(|&c| c == entry_child)
                .unwrap() as i64;
            let jstep: i64;
            let endptrick: usize;
            if j & 1 != 0 {
                j -= self.blossom_childs[b].len() as i64;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            let mut p = self.label_end[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = at(&self.blossom_endps[b], j - endptrick as i64) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = 0;
                let ep = self.endpoint[p ^ 1];
                self.assign_label(ep, 2, p);
                self.allow_edge[at(&self.blossom_endps[b], j - endptrick as i64) / 2] = true;
                j += jstep;
                p = at(&self.blossom_endps[b], j - endptrick as i64) ^ endptrick;
                self.allow_edge[p / 2] = true;
                j += jstep;
            }
            let bv = at(&self.blossom_childs[b], j);
            self.label[self.endpoint[p ^ 1]] = 2;
            self.label[bv] = 2;
            self.label_end[self.endpoint[p ^ 1]] = p;
            self.label_end[bv] = p;
            self.best_edge[bv] = NONE;
            j += jstep;
            while at(&self.blossom_childs[b], j) != entry_child {
                let bv = at(&self.blossom_childs[b], j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut v = NONE;
                for t in self.blossom_leaves(bv) {
                    v = t;
                    if self.label[v] != 0 {
                        break;
                    }
                }
                if v != NONE && self.label[v] != 0 {
                    debug_assert_eq!(self.label[v], 2);
                    debug_assert_eq!(self.in_blossom[v], bv);
                    self.label[v] = 0;
                    self.label[self.endpoint[self.mate[self.blossom_base[bv]]]] = 0;
                    let le = self.label_end[v];
                    self.assign_label(v, 2, le);
                }
                j += jstep;
            }
        }
        self.label[b] = NONE;
        self.label_end[b] = NONE;
        self.blossom_base[b] = NONE;
        self.best_edge[b] = NONE;
        self.blossom_childs[b] = Vec::new();
        self.blossom_endps[b] = Vec::new();
        self.blossom_best_edges[b] = Vec::new();
        self.unused_blossoms.push(b);
    }

    /// Swap matched/unmatched edges along the path from `v` to the base of
    /// blossom `b`, rotating the blossom so `v` becomes the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossom_parent[t] != b {
            t = self.blossom_parent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let i = self.blossom_childs[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as i64;
        let jstep: i64;
        let endptrick: usize;
        if i & 1 != 0 {
            j -= self.blossom_childs[b].len() as i64;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while j != 0 {
            j += jstep;
            let mut t = at(&self.blossom_childs[b], j);
            let p = at(&self.blossom_endps[b], j - endptrick as i64) ^ endptrick;
            if t >= self.n {
                let ep = self.endpoint[p];
                self.augment_blossom(t, ep);
            }
            j += jstep;
            t = at(&self.blossom_childs[b], j);
            if t >= self.n {
                let ep = self.endpoint[p ^ 1];
                self.augment_blossom(t, ep);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossom_childs[b].rotate_left(i);
        self.blossom_endps[b].rotate_left(i);
        self.blossom_base[b] = self.blossom_base[self.blossom_childs[b][0]];
        debug_assert_eq!(self.blossom_base[b], v);
    }

    /// Swap matched/unmatched edges along the augmenting path through edge
    /// `k` between two single vertices.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.in_blossom[s];
                debug_assert_eq!(self.label[bs], 1);
                debug_assert_eq!(self.label_end[bs], self.mate[self.blossom_base[bs]]);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.label_end[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.label_end[bs]];
                let bt = self.in_blossom[t];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.label_end[bt] != NONE);
                s = self.endpoint[self.label_end[bt]];
                let j = self.endpoint[self.label_end[bt] ^ 1];
                debug_assert_eq!(self.blossom_base[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.label_end[bt];
                p = self.label_end[bt] ^ 1;
            }
        }
    }

    /// Dual feasibility and complementary slackness of the final matching.
    #[cfg(debug_assertions)]
    fn verify_optimum(&self) {
        let vdual_offset = if self.max_cardinality {
            (-self.dual[..self.n].iter().min().unwrap()).max(0)
        } else {
            0
        };
        for k in 0..self.edges.len() {
            let (i, j, wt) = self.edges[k];
            let mut s = self.dual[i] + self.dual[j] - 2 * wt;
            let mut iblossoms = vec![i];
            let mut jblossoms = vec![j];
            while self.blossom_parent[*iblossoms.last().unwrap()] != NONE {
                iblossoms.push(self.blossom_parent[*iblossoms.last().unwrap()]);
            }
            while self.blossom_parent[*jblossoms.last().unwrap()] != NONE {
                jblossoms.push(self.blossom_parent[*jblossoms.last().unwrap()]);
            }
            iblossoms.reverse();
            jblossoms.reverse();
            for (&bi, &bj) in iblossoms.iter().zip(jblossoms.iter()) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dual[bi];
            }
            assert!(s >= 0);
            if self.mate[i] / 2 == k || self.mate[j] / 2 == k {
                assert!(self.mate[i] / 2 == k && self.mate[j] / 2 == k);
                assert_eq!(s, 0);
            }
        }
        for v in 0..self.n {
            assert!(self.mate[v] != NONE || self.dual[v] + vdual_offset == 0);
        }
        for b in self.n..2 * self.n {
            if self.blossom_base[b] != NONE && self.dual[b] > 0 {
                assert!(self.blossom_endps[b].len() % 2 == 1);
                for (ix, &p) in self.blossom_endps[b].iter().enumerate() {
                    if ix % 2 == 1 {
                        assert_eq!(self.mate[self.endpoint[p]], p ^ 1);
                        assert_eq!(self.mate[self.endpoint[p ^ 1]], p);
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        let nedge = self.edges.len();
        for _stage in 0..self.n {
            // A stage finds one augmenting path and uses it to improve the
            // matching.
            self.label = vec![0; 2 * self.n];
            self.best_edge = vec![NONE; 2 * self.n];
            for b in self.n..2 * self.n {
                self.blossom_best_edges[b] = Vec::new();
            }
            self.allow_edge = vec![false; nedge];
            self.queue = Vec::new();
            for v in 0..self.n {
                if self.mate[v] == NONE && self.label[self.in_blossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                // A substage: grow the alternating forest; if no augmenting
                // path is found, pump slack out of the dual variables.
                while !self.queue.is_empty() && !augmented {
                    let v = self.queue.pop().unwrap();
                    debug_assert_eq!(self.label[self.in_blossom[v]], 1);
                    for p in self.neighb_end[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.in_blossom[v] == self.in_blossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allow_edge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allow_edge[k] = true;
                            }
                        }
                        if self.allow_edge[k] {
                            if self.label[self.in_blossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.in_blossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                debug_assert_eq!(self.label[self.in_blossom[w]], 2);
                                self.label[w] = 2;
                                self.label_end[w] = p ^ 1;
                            }
                        } else if self.label[self.in_blossom[w]] == 1 {
                            let b = self.in_blossom[v];
                            if self.best_edge[b] == NONE
                                || kslack < self.slack(self.best_edge[b])
                            {
                                self.best_edge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.best_edge[w] == NONE
                                || kslack < self.slack(self.best_edge[w]))
                        {
                            self.best_edge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // delta1: minimum vertex dual (unconstrained problem only).
                let mut delta_type = -1;
                let mut delta = 0;
                let mut delta_edge = 0;
                let mut delta_blossom = 0;
                if !self.max_cardinality {
                    delta_type = 1;
                    delta = *self.dual[..self.n].iter().min().unwrap();
                }
                // delta2: minimum slack to a free vertex.
                for v in 0..self.n {
                    if self.label[self.in_blossom[v]] == 0 && self.best_edge[v] != NONE {
                        let d = self.slack(self.best_edge[v]);
                        if delta_type == -1 || d < delta {
                            delta = d;
                            delta_type = 2;
                            delta_edge = self.best_edge[v];
                        }
                    }
                }
                // delta3: half the minimum slack between S-blossoms.
                for b in 0..2 * self.n {
                    if self.blossom_parent[b] == NONE
                        && self.label[b] == 1
                        && self.best_edge[b] != NONE
                    {
                        let d = self.slack(self.best_edge[b]) / 2;
                        if delta_type == -1 || d < delta {
                            delta = d;
                            delta_type = 3;
                            delta_edge = self.best_edge[b];
                        }
                    }
                }
                // delta4: minimum dual of a T-blossom.
                for b in self.n..2 * self.n {
                    if self.blossom_base[b] != NONE
                        && self.blossom_parent[b] == NONE
                        && self.label[b] == 2
                        && (delta_type == -1 || self.dual[b] < delta)
                    {
                        delta = self.dual[b];
                        delta_type = 4;
                        delta_blossom = b;
                    }
                }
                if delta_type == -1 {
                    // No further improvement possible; final adjustment to
                    // make the max-cardinality optimum verifiable.
                    debug_assert!(self.max_cardinality);
                    delta_type = 1;
                    delta = (*self.dual[..self.n].iter().min().unwrap()).max(0);
                }

                for v in 0..self.n {
                    match self.label[self.in_blossom[v]] {
                        0 => {}
                        1 => self.dual[v] -= delta,
                        2 => self.dual[v] += delta,
                        _ => unreachable!(),
                    }
                }
                for b in self.n..2 * self.n {
                    if self.blossom_base[b] != NONE && self.blossom_parent[b] == NONE {
                        match self.label[b] {
                            0 => {}
                            1 => self.dual[b] += delta,
                            2 => self.dual[b] -= delta,
                            _ => unreachable!(),
                        }
                    }
                }

                match delta_type {
                    1 => break,
                    2 => {
                        self.allow_edge[delta_edge] = true;
                        let (mut i, j, _) = self.edges[delta_edge];
                        if self.label[self.in_blossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.in_blossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allow_edge[delta_edge] = true;
                        let (i, _, _) = self.edges[delta_edge];
                        debug_assert_eq!(self.label[self.in_blossom[i]], 1);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(delta_blossom, false),
                    _ => unreachable!(),
                }
            }

            if !augmented {
                break;
            }

            // End of stage: expand zero-dual S-blossoms.
            for b in self.n..2 * self.n {
                if self.blossom_parent[b] == NONE
                    && self.blossom_base[b] != NONE
                    && self.label[b] == 1
                    && self.dual[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        #[cfg(debug_assertions)]
        self.verify_optimum();
    }

    fn mate_by_vertex(&self) -> Vec<usize> {
        let mut mate = self.mate.clone();
        for slot in mate.iter_mut() {
            if *slot != NONE {
                *slot = self.endpoint[*slot];
            }
        }
        for v in 0..self.n {
            debug_assert!(mate[v] == NONE || mate[mate[v]] == v);
        }
        mate
    }
}

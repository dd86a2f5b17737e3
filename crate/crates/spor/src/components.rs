//! Union-find over nodes with per-component sizes and the derived size
//! buckets: a node is in bucket `b` while its component size lies in
//! `[2^b, 2^(b+1))`.

use crate::graph::NodeId;

/// Mutable union-find during a build; frozen (fully compressed, read-only)
/// once the owning oracle is finished, after which `find_frozen` is safe for
/// concurrent readers.
#[derive(Debug, Clone)]
pub struct ComponentForest {
    parent: Vec<NodeId>,
    size: Vec<u32>,
    frozen: bool,
    merge_log: Option<Vec<(NodeId, NodeId)>>,
}

impl ComponentForest {
    pub fn new(n: usize) -> Self {
        ComponentForest {
            parent: (0..n as NodeId).collect(),
            size: vec![1; n],
            frozen: false,
            merge_log: None,
        }
    }

    /// Like `new`, but records every performed union for test introspection.
    pub fn with_merge_log(n: usize) -> Self {
        let mut f = Self::new(n);
        f.merge_log = Some(Vec::new());
        f
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Canonical root of `v`'s component, with path compression.
    pub fn find(&mut self, v: NodeId) -> NodeId {
        debug_assert!(!self.frozen, "mutable find on a frozen forest");
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Root lookup without mutation. After `freeze` this is a single array
    /// read; on an unfrozen forest it walks the parent chain.
    pub fn find_frozen(&self, v: NodeId) -> NodeId {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        root
    }

    /// Union by size, ties broken toward the smaller root id. Returns false
    /// when `u` and `v` were already joined.
    pub fn union(&mut self, u: NodeId, v: NodeId) -> bool {
        let ru = self.find(u);
        let rv = self.find(v);
        if ru == rv {
            return false;
        }
        let (big, small) = match self.size[ru as usize].cmp(&self.size[rv as usize]) {
            std::cmp::Ordering::Greater => (ru, rv),
            std::cmp::Ordering::Less => (rv, ru),
            std::cmp::Ordering::Equal => (ru.min(rv), ru.max(rv)),
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        if let Some(log) = &mut self.merge_log {
            log.push((u, v));
        }
        true
    }

    pub fn component_size(&mut self, v: NodeId) -> u32 {
        let root = self.find(v);
        self.size[root as usize]
    }

    /// Component size via the immutable root lookup.
    pub fn component_size_frozen(&self, v: NodeId) -> u32 {
        self.size[self.find_frozen(v) as usize]
    }

    /// `floor(log2(|C_v|))`: the size bucket of `v`'s component.
    pub fn bucket(&mut self, v: NodeId) -> u32 {
        self.component_size(v).ilog2()
    }

    pub fn bucket_frozen(&self, v: NodeId) -> u32 {
        self.component_size_frozen(v).ilog2()
    }

    /// Compress every path once and mark the forest read-only.
    pub fn freeze(&mut self) {
        for v in 0..self.parent.len() as NodeId {
            self.find(v);
        }
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn component_count(&self) -> usize {
        self.parent
            .iter()
            .enumerate()
            .filter(|(i, &p)| p == *i as NodeId)
            .count()
    }

    pub fn merge_log(&self) -> Option<&[(NodeId, NodeId)]> {
        self.merge_log.as_deref()
    }
}

/// Per-component member lists, merged small-into-large alongside forest
/// unions. Build loops use these to evict whole components from the bucket
/// sampler when a merge promotes them out of the active bucket.
#[derive(Debug, Clone)]
pub struct MemberLists {
    lists: Vec<Vec<NodeId>>,
}

impl MemberLists {
    pub fn new(n: usize) -> Self {
        MemberLists {
            lists: (0..n as NodeId).map(|v| vec![v]).collect(),
        }
    }

    /// Members currently stored at root `r`. Only meaningful for live roots.
    pub fn members(&self, r: NodeId) -> &[NodeId] {
        &self.lists[r as usize]
    }

    /// Move the members of the absorbed root into the surviving root.
    pub fn absorb(&mut self, surviving: NodeId, absorbed: NodeId) {
        debug_assert_ne!(surviving, absorbed);
        let moved = std::mem::take(&mut self.lists[absorbed as usize]);
        self.lists[surviving as usize].extend(moved);
    }
}

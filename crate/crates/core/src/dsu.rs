//! Disjoint-set union over dense indices, with undo support for backtracking
//! searches.

#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    // (child root, old size of the surviving root) per successful union.
    history: Vec<(usize, usize)>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    /// Root of `x`. No path compression, so unions can be undone.
    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`. Returns `false` if they were already
    /// joined, in which case nothing is recorded.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.history.push((rb, self.size[ra]));
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Number of successful unions so far; pass to [`rollback`](Self::rollback).
    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    /// Undoes unions until only `checkpoint` of them remain.
    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            let (child, old_size) = self.history.pop().expect("nonempty history");
            let root = self.parent[child];
            self.parent[child] = child;
            self.size[root] = old_size;
        }
    }
}

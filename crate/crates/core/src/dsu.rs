/// Union-find over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when the two elements were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    #[cfg(test)]
    pub(crate) fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }

    /// Unions every element of `items` into one set; returns the number of merges.
    pub(crate) fn union_all(&mut self, items: &[usize]) -> usize {
        let mut merges = 0;
        if let Some((&first, rest)) = items.split_first() {
            for &x in rest {
                if self.union(first, x) {
                    merges += 1;
                }
            }
        }
        merges
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_components() {
        let mut d = DisjointSet::new(5);
        assert!(d.union(0, 1));
        assert!(!d.union(1, 0));
        assert_eq!(d.union_all(&[2, 3, 4]), 2);
        assert_eq!(d.components(), 2);
        assert!(d.same(2, 4));
        assert!(!d.same(0, 4));
    }
}

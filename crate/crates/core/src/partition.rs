//! Set partitions of a small ground set `0..k`.

use std::fmt;

/// Canonical partition: `labels[i]` is the smallest element of the block holding `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<u8>,
}

impl Partition {
    pub fn singletons(k: usize) -> Self {
        Partition { labels: (0..k as u8).collect() }
    }

    pub fn single_block(k: usize) -> Self {
        Partition { labels: vec![0; k] }
    }

    /// From arbitrary block ids, one per element.
    pub fn from_block_ids(ids: &[usize]) -> Self {
        let labels = (0..ids.len())
            .map(|i| (0..=i).find(|&j| ids[j] == ids[i]).unwrap() as u8)
            .collect();
        Partition { labels }
    }

    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Self {
        let mut ids = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                ids[x] = b;
            }
        }
        assert!(ids.iter().all(|&x| x != usize::MAX), "blocks must cover the ground set");
        Partition::from_block_ids(&ids)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(i, &l)| l as usize == i).count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            let l = l as usize;
            if index[l] == usize::MAX {
                index[l] = out.len();
                out.push(Vec::new());
            }
            out[index[l]].push(i);
        }
        out
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        let mut parent: Vec<usize> = (0..self.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..self.len() {
            for l in [self.labels[i] as usize, other.labels[i] as usize] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, l));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let ids: Vec<usize> = (0..self.len()).map(|i| find(&mut parent, i)).collect();
        Partition::from_block_ids(&ids)
    }

    /// Whether every block lies on one side of the bipartition `colors`.
    pub fn refines_bipartition(&self, colors: &[bool]) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| colors[i] == colors[l as usize])
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.blocks())
    }
}

/// All partitions of `0..k` in restricted-growth order.
pub fn all_partitions(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut ids = vec![0usize; k];
    fn rec(i: usize, max: usize, ids: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == ids.len() {
            out.push(Partition::from_block_ids(ids));
            return;
        }
        for b in 0..=max {
            ids[i] = b;
            rec(i + 1, max.max(b + 1), ids, out);
        }
    }
    if k == 0 {
        out.push(Partition::singletons(0));
    } else {
        rec(1, 1, &mut ids, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|k| all_partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn join_merges_chains() {
        let p = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]);
        let q = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]);
        let j = p.join(&q);
        assert_eq!(j.blocks(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(j.block_count(), 2);
        assert_eq!(p.join(&Partition::singletons(4)), p);
    }

    #[test]
    fn refinement_check() {
        let p = Partition::from_blocks(3, &[vec![0, 2], vec![1]]);
        assert!(p.refines_bipartition(&[false, true, false]));
        assert!(!p.refines_bipartition(&[false, false, true]));
    }
}

//! Exact maximum clique search: branch and bound over bitsets with a greedy
//! colouring bound.
//!
//! The search is split by the first vertex of the clique in degeneracy
//! order, and the resulting subproblems run in parallel. The only shared
//! state is the best size found so far, which only grows.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::bitset::Bitset;

/// Vertices in degeneracy order (repeatedly strip a vertex of minimum
/// remaining degree; ties go to the smaller index).
pub fn degeneracy_order(adj: &[Bitset]) -> Vec<usize> {
    let n = adj.len();
    let mut alive = Bitset::full(n);
    let mut deg: Vec<usize> = adj.iter().map(Bitset::count).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive
            .iter()
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        alive.remove(v);
        for w in adj[v].intersection(&alive).iter() {
            deg[w] -= 1;
        }
        order.push(v);
    }
    order
}

/// Greedy colouring of `p`, returned as vertices sorted by colour together
/// with each vertex's colour (1-based). A clique inside the first `i + 1`
/// vertices has at most `colors[i]` members.
fn color_sort(adj: &[Bitset], p: &Bitset) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = p.clone();
    let mut order = Vec::with_capacity(p.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail = avail.difference(&adj[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

struct Search<'a> {
    adj: &'a [Bitset],
    best: &'a AtomicUsize,
    enumerate: bool,
    /// Stop at the first clique of this size (witness mode).
    target: Option<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.target.is_some() && !self.found.is_empty()
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bitset) {
        let (order, colors) = color_sort(self.adj, &p);
        for idx in (0..order.len()).rev() {
            if self.done() {
                return;
            }
            let bound = r.len() + colors[idx];
            let best = self.best.load(Ordering::Relaxed);
            if bound < best || (!self.enumerate && bound == best) {
                return;
            }
            let v = order[idx];
            r.push(v);
            let np = p.intersection(&self.adj[v]);
            if np.is_empty() {
                self.record(r);
            } else {
                self.expand(r, np);
            }
            r.pop();
            p.remove(v);
        }
    }

    fn record(&mut self, r: &[usize]) {
        let size = r.len();
        let prev = self.best.fetch_max(size, Ordering::Relaxed);
        if size > prev || (self.enumerate && size == prev) {
            let mut c = r.to_vec();
            c.sort_unstable();
            self.found.push(c);
        }
    }
}

/// Result of a clique search: the maximum size and the cliques of that size
/// that were collected (all of them when enumerating, one otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    pub omega: usize,
    pub cliques: Vec<Vec<usize>>,
}

/// Finds the clique number. With `enumerate`, every maximum clique is
/// returned (sorted); otherwise a single witness, the same on every run.
pub fn max_clique(adj: &[Bitset], enumerate: bool) -> CliqueSearch {
    let n = adj.len();
    if n == 0 {
        return CliqueSearch {
            omega: 0,
            cliques: vec![vec![]],
        };
    }
    let order = degeneracy_order(adj);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Cliques whose earliest vertex (in degeneracy order) is order[i] live
    // in the later neighbours of order[i].
    let later: Vec<Bitset> = order
        .iter()
        .map(|&v| Bitset::from_indices(n, adj[v].iter().filter(|&w| position[w] > position[v])))
        .collect();

    let best = AtomicUsize::new(1);
    let run = |i: usize, best: &AtomicUsize, enumerate: bool, target: Option<usize>| {
        let mut s = Search {
            adj,
            best,
            enumerate,
            target,
            found: Vec::new(),
        };
        let p = &later[i];
        let b = best.load(Ordering::Relaxed);
        if 1 + p.count() < b || (!enumerate && target.is_none() && 1 + p.count() == b && b > 1) {
            return s.found;
        }
        let mut r = vec![order[i]];
        if p.is_empty() {
            s.record(&r);
        } else {
            s.expand(&mut r, p.clone());
        }
        s.found
    };

    let found: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| run(i, &best, enumerate, None))
        .collect();
    let omega = best.load(Ordering::Relaxed);

    let mut cliques: Vec<Vec<usize>> = if enumerate {
        found.into_iter().filter(|c| c.len() == omega).collect()
    } else {
        // The witness found in parallel depends on scheduling; redo a
        // sequential search for the first clique of the known size.
        let seq = AtomicUsize::new(omega);
        (0..n)
            .find_map(|i| run(i, &seq, true, Some(omega)).into_iter().next())
            .into_iter()
            .collect()
    };
    cliques.sort();
    cliques.dedup();
    CliqueSearch { omega, cliques }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Brute force over all vertex subsets.
    fn brute(adj: &[Bitset]) -> (usize, Vec<Vec<usize>>) {
        let n = adj.len();
        let mut best = 0;
        let mut all = Vec::new();
        for mask in 0u32..1 << n {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let clique = vs
                .iter()
                .all(|&a| vs.iter().all(|&b| a == b || adj[a].contains(b)));
            if !clique {
                continue;
            }
            if vs.len() > best {
                best = vs.len();
                all.clear();
            }
            if vs.len() == best {
                all.push(vs);
            }
        }
        all.sort();
        (best, all)
    }

    #[test]
    fn small_graphs() {
        let cycle5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let r = max_clique(&cycle5, true);
        assert_eq!(r.omega, 2);
        assert_eq!(r.cliques.len(), 5);
        let k4_plus = graph(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
            ],
        );
        let r = max_clique(&k4_plus, false);
        assert_eq!(r.omega, 4);
        assert_eq!(r.cliques, vec![vec![0, 1, 2, 3]]);
        let empty = graph(3, &[]);
        assert_eq!(max_clique(&empty, true).cliques.len(), 3);
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for trial in 0..40 {
            let n = 6 + trial % 9;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 55 {
                        edges.push((a, b));
                    }
                }
            }
            let adj = graph(n, &edges);
            let (omega, all) = brute(&adj);
            let r = max_clique(&adj, true);
            assert_eq!(r.omega, omega);
            assert_eq!(r.cliques, all);
            let w = max_clique(&adj, false);
            assert_eq!(w.cliques.len(), 1);
            assert!(all.contains(&w.cliques[0]));
        }
    }

    #[test]
    fn degeneracy_is_a_permutation() {
        let adj = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut o = degeneracy_order(&adj);
        assert_eq!(o[0], 0);
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3]);
    }
}

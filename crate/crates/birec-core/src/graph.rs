//! Reachability and strongly connected components on adjacency lists.

use alloc::vec;
use alloc::vec::Vec;

pub fn reachable(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = Vec::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(p) = stack.pop() {
        for &q in &adj[p] {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

pub fn transpose(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut t = vec![Vec::new(); adj.len()];
    for (p, succ) in adj.iter().enumerate() {
        for &q in succ {
            t[q].push(p);
        }
    }
    t
}

/// Component index of every node and the number of components.
/// Iterative Tarjan, so deep graphs do not overflow the stack.
pub fn scc(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut ncomp = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    (comp, ncomp)
}

/// True iff the graph is non-empty and every node reaches every other.
pub fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return false;
    }
    reachable(adj, [0]).iter().all(|&b| b) && reachable(&transpose(adj), [0]).iter().all(|&b| b)
}

/// True iff the subgraph induced by `keep` has a cycle.
pub fn has_cycle(adj: &[Vec<usize>], keep: &[bool]) -> bool {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for p in 0..n {
        if keep[p] {
            for &q in &adj[p] {
                if keep[q] {
                    indeg[q] += 1;
                }
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&p| keep[p] && indeg[p] == 0).collect();
    let mut removed = 0usize;
    while let Some(p) = queue.pop() {
        removed += 1;
        for &q in &adj[p] {
            if keep[q] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    queue.push(q);
                }
            }
        }
    }
    removed < keep.iter().filter(|&&b| b).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_of_two_cycles_and_bridge() {
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let (comp, n) = scc(&adj);
        assert_eq!(n, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[0], comp[2]);
        assert!(!strongly_connected(&adj));
        assert!(has_cycle(&adj, &[true; 4]));
        assert!(!has_cycle(&adj, &[true, false, true, false]));
    }
}

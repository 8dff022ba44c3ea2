//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching of a bipartite graph given by left-vertex adjacency lists.
/// Returns, for each left vertex, its matched right vertex.
pub fn maximum_matching(n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut match_l = vec![FREE; n_left];
    let mut match_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_r[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for l in 0..n_left {
            if match_l[l] == FREE {
                augment(l, adj, &mut match_l, &mut match_r, &mut dist, &mut it);
            }
        }
    }
    match_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

// iterative DFS along the BFS layering
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        if it[l] == adj[l].len() {
            dist[l] = usize::MAX;
            stack.pop();
            continue;
        }
        let r = adj[l][it[l]];
        let next = match_r[r];
        if next == FREE {
            // flip the path root -> ... -> l -> r
            let mut r = r;
            while let Some(l) = stack.pop() {
                let prev = match_l[l];
                match_l[l] = r;
                match_r[r] = l;
                r = prev;
            }
            return true;
        }
        if dist[next] == dist[l] + 1 {
            stack.push(next);
        } else {
            it[l] += 1;
        }
    }
    false
}

pub fn matching_size(matching: &[Option<usize>]) -> usize {
    matching.iter().filter(|m| m.is_some()).count()
}

//! Maximum bipartite matching by augmenting paths.

/// Kuhn's algorithm. Left vertices are augmented in index order and each
/// scans its adjacency list in the given order, so the result is
/// deterministic. Returns the partner of every left vertex.
pub(crate) fn maximum_matching(n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for left in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(left, adj, &mut match_right, &mut seen);
    }
    let mut match_left = vec![None; adj.len()];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = *l {
            match_left[l] = Some(r);
        }
    }
    match_left
}

fn augment(
    left: usize,
    adj: &[Vec<usize>],
    match_right: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &r in &adj[left] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(other) => augment(other, adj, match_right, seen),
        };
        if free {
            match_right[r] = Some(left);
            return true;
        }
    }
    false
}

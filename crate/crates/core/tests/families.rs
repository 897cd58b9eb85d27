use heavypath::instances::enumerate_two_connected;
use heavypath::rational::int;

/// Connectivity of the graph on `0..n` minus `gone`, by flood fill over an
/// adjacency bitmask.
fn connected_without(n: usize, adj: &[u32], gone: Option<usize>) -> bool {
    let alive: u32 = (0..n).filter(|&v| Some(v) != gone).fold(0, |m, v| m | 1 << v);
    let start = alive.trailing_zeros();
    let mut seen = 1u32 << start;
    let mut stack = vec![start as usize];
    while let Some(v) = stack.pop() {
        let next = adj[v] & alive & !seen;
        seen |= next;
        stack.extend((0..n).filter(|&u| next >> u & 1 == 1));
    }
    seen == alive
}

fn brute_force_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .filter(|mask| {
            let mut adj = vec![0u32; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
            connected_without(n, &adj, None) && (0..n).all(|v| connected_without(n, &adj, Some(v)))
        })
        .count()
}

#[test]
fn labeled_two_connected_counts_match_brute_force() {
    for n in 3..=5 {
        let expected = brute_force_count(n);
        assert_eq!(enumerate_two_connected(n, &[int(1)]).unwrap().count(), expected, "n = {n}");
    }
    assert_eq!(brute_force_count(4), 10);
}

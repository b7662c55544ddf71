//! Slow reference implementations used as oracles. They share nothing with
//! the library beyond reading arcs through `has_arc`.

#![allow(dead_code)]

use moonlab_core::Tournament;

/// Simple cycles by length, found by DFS from each start vertex `s` through
/// vertices larger than `s` only, so every cycle is counted exactly once.
pub fn cycle_counts(t: &Tournament) -> Vec<u64> {
    let n = t.order();
    let mut counts = vec![0u64; n + 1];
    let mut on_path = vec![false; n];
    fn dfs(t: &Tournament, s: usize, v: usize, len: usize, on_path: &mut [bool], counts: &mut [u64]) {
        let n = t.order();
        for u in 0..n {
            if !t.has_arc(v, u) {
                continue;
            }
            if u == s && len >= 3 {
                counts[len] += 1;
            } else if u > s && !on_path[u] {
                on_path[u] = true;
                dfs(t, s, u, len + 1, on_path, counts);
                on_path[u] = false;
            }
        }
    }
    for s in 0..n {
        on_path[s] = true;
        dfs(t, s, s, 1, &mut on_path, &mut counts);
        on_path[s] = false;
    }
    counts
}

/// Cycles of each length through `w`, by filtering an explicit cycle list.
pub fn cycles_through(t: &Tournament, w: usize) -> Vec<u64> {
    let n = t.order();
    let mut counts = vec![0u64; n + 1];
    let mut path = vec![w];
    let mut on_path = vec![false; n];
    on_path[w] = true;
    fn dfs(t: &Tournament, w: usize, path: &mut Vec<usize>, on_path: &mut [bool], counts: &mut [u64]) {
        let v = *path.last().unwrap();
        for u in 0..t.order() {
            if !t.has_arc(v, u) {
                continue;
            }
            if u == w && path.len() >= 3 {
                counts[path.len()] += 1;
            } else if !on_path[u] {
                on_path[u] = true;
                path.push(u);
                dfs(t, w, path, on_path, counts);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    dfs(t, w, &mut path, &mut on_path, &mut counts);
    counts
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Hamiltonian paths counted over every vertex order.
pub fn hamiltonian_paths(t: &Tournament) -> u64 {
    permutations(t.order())
        .iter()
        .filter(|p| p.windows(2).all(|w| t.has_arc(w[0], w[1])))
        .count() as u64
}

/// Reachability closure by Floyd-Warshall on the vertices of `set`.
pub fn is_strong_on(t: &Tournament, set: &[usize]) -> bool {
    let k = set.len();
    let mut reach = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            reach[a][b] = a == b || t.has_arc(set[a], set[b]);
        }
    }
    for m in 0..k {
        for a in 0..k {
            for b in 0..k {
                if reach[a][m] && reach[m][b] {
                    reach[a][b] = true;
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&x| x))
}

/// Strong `l`-subsets for every `l`.
pub fn strong_subsets(t: &Tournament) -> Vec<u64> {
    let n = t.order();
    let mut counts = vec![0u64; n + 1];
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.len() >= 3 && is_strong_on(t, &set) {
            counts[set.len()] += 1;
        }
    }
    counts
}

/// All-pairs BFS distances; `None` marks unreachable pairs.
pub fn distances(t: &Tournament) -> Vec<Vec<Option<usize>>> {
    let n = t.order();
    (0..n)
        .map(|s| {
            let mut dist = vec![None; n];
            dist[s] = Some(0);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in 0..n {
                    if t.has_arc(v, u) && dist[u].is_none() {
                        dist[u] = Some(dist[v].unwrap() + 1);
                        queue.push_back(u);
                    }
                }
            }
            dist
        })
        .collect()
}

pub fn diameter(t: &Tournament) -> Option<usize> {
    let d = distances(t);
    d.iter()
        .flatten()
        .try_fold(0, |acc, x| x.map(|x| acc.max(x)))
}

/// Minimum pair-bit string over every relabeling.
pub fn canonical_string(t: &Tournament) -> String {
    let n = t.order();
    permutations(n)
        .iter()
        .map(|order| {
            let mut s = String::new();
            for i in 0..n {
                for j in i + 1..n {
                    s.push(if t.has_arc(order[i], order[j]) { '1' } else { '0' });
                }
            }
            s
        })
        .min()
        .unwrap()
}

/// The tournament whose pair bits are the low `C(n,2)` bits of `code`.
pub fn labeled(n: usize, code: u64) -> Tournament {
    let mut k = 0;
    Tournament::from_pairs(n, |_, _| {
        let one = code >> k & 1 == 1;
        k += 1;
        one
    })
    .unwrap()
}

/// A reproducible pseudo-random tournament (splitmix64 stream).
pub fn random(n: usize, seed: u64) -> Tournament {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    Tournament::from_pairs(n, |_, _| next() & 1 == 1).unwrap()
}

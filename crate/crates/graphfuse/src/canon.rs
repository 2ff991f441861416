//! Canonical labelling of small graphs (individualisation-refinement) and
//! local-complementation orbits up to isomorphism.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::GraphState;

/// Largest graph accepted by the orbit enumeration.
pub const MAX_ORBIT_VERTICES: usize = 12;

/// Alive vertices relabelled 0..m in increasing id order, as neighbour bitmasks.
pub fn compact(g: &GraphState) -> (Vec<usize>, Vec<u64>) {
    let ids: Vec<usize> = g.alive_vertices().collect();
    assert!(ids.len() <= 64, "compact form holds at most 64 vertices");
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in ids.iter().enumerate() {
        pos[v] = i;
    }
    let rows = ids.iter().map(|&v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << pos[u])).collect();
    (ids, rows)
}

/// Isomorphism certificate: adjacency rows and vertex colours in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canon {
    pub colors: Vec<u8>,
    pub rows: Vec<u64>,
}

impl Canon {
    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

fn refine(rows: &[u64], colors: &mut [u32]) {
    let n = rows.len();
    let mut cells = count_cells(colors);
    loop {
        let mut sig: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = bits(rows[v]).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                next += 1;
            }
            colors[sig[i].2] = next;
        }
        let now = next as usize + 1;
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn certificate(rows: &[u64], colors: &[u32], base: &[u8]) -> Canon {
    let n = rows.len();
    // colours are a permutation 0..n here
    let mut order = vec![0usize; n];
    for v in 0..n {
        order[colors[v] as usize] = v;
    }
    let out_rows = order.iter().map(|&v| bits(rows[v]).fold(0u64, |m, u| m | 1 << colors[u])).collect();
    Canon { colors: order.iter().map(|&v| base[v]).collect(), rows: out_rows }
}

fn search(rows: &[u64], colors: Vec<u32>, base: &[u8], best: &mut Option<Canon>) {
    let n = rows.len();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    // first smallest non-singleton cell
    let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let cert = certificate(rows, &colors, base);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] as usize == cell) {
        let mut c: Vec<u32> = colors.iter().map(|&x| 2 * x + 1).collect();
        c[v] = 2 * cell as u32;
        refine(rows, &mut c);
        search(rows, c, base, best);
    }
}

/// Canonical form of a coloured graph given as neighbour bitmasks.
pub fn canonical(rows: &[u64], colors: &[u8]) -> Canon {
    let n = rows.len();
    if n == 0 {
        return Canon { colors: vec![], rows: vec![] };
    }
    let mut c: Vec<u32> = colors.iter().map(|&x| x as u32).collect();
    refine(rows, &mut c);
    let mut best = None;
    search(rows, c, colors, &mut best);
    best.expect("at least one leaf")
}

/// Canonical form of the underlying graph (tags ignored).
pub fn canonical_graph(g: &GraphState) -> Canon {
    let (ids, rows) = compact(g);
    canonical(&rows, &vec![0; ids.len()])
}

/// Canonical form with each vertex coloured by its tag.
pub fn canonical_tagged(g: &GraphState) -> Canon {
    let (ids, rows) = compact(g);
    let colors: Vec<u8> = ids.iter().map(|&v| g.clifford(v).index() as u8).collect();
    canonical(&rows, &colors)
}

fn local_complement_rows(rows: &mut [u64], v: usize) {
    let nv = rows[v];
    for u in bits(nv) {
        rows[u] ^= nv & !(1 << u);
    }
}

/// Isomorphism classes in the local-complementation orbit of `g`.
pub fn lc_orbit(g: &GraphState) -> Result<HashSet<Canon>> {
    let m = g.alive_count();
    if m > MAX_ORBIT_VERTICES {
        return Err(Error::Unsupported(m, MAX_ORBIT_VERTICES));
    }
    Ok(orbit_until(canonical_graph(g), |_| false).0)
}

fn orbit_until(start: Canon, stop: impl Fn(&Canon) -> bool) -> (HashSet<Canon>, bool) {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    if stop(&start) {
        return (seen, true);
    }
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        for v in 0..c.n() {
            let mut rows = c.rows.clone();
            local_complement_rows(&mut rows, v);
            let next = canonical(&rows, &c.colors);
            if seen.contains(&next) {
                continue;
            }
            if stop(&next) {
                return (seen, true);
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    (seen, false)
}

/// Whether some sequence of local complementations and a relabelling maps
/// `g1` onto `g2` (tags ignored).
pub fn lc_equivalent(g1: &GraphState, g2: &GraphState) -> Result<bool> {
    for g in [g1, g2] {
        if g.alive_count() > MAX_ORBIT_VERTICES {
            return Err(Error::Unsupported(g.alive_count(), MAX_ORBIT_VERTICES));
        }
    }
    if g1.alive_count() != g2.alive_count() || g1.edge_count() == 0 && g2.edge_count() != 0 {
        return Ok(false);
    }
    let target = canonical_graph(g2);
    Ok(orbit_until(canonical_graph(g1), |c| *c == target).1)
}

/// Sorted cut-ranks of all vertex pairs; invariant under local
/// complementation and relabelling.
pub fn pair_cut_ranks(rows: &[u64]) -> Vec<u8> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let mask = !((1u64 << u) | (1u64 << v));
            let (x, y) = (rows[u] & mask, rows[v] & mask);
            out.push(match (x == 0, y == 0) {
                (true, true) => 0,
                (false, false) if x != y => 2,
                _ => 1,
            });
        }
    }
    out.sort_unstable();
    out
}

/// GF(2) rank of the rows of `s` restricted to the complement of `s`.
pub fn cut_rank(rows: &[u64], s: u64) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for v in bits(s) {
        let mut r = rows[v] & !s;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Whether the vertices can be ordered so that every prefix has cut-rank at
/// most one: the graphs a single emitter can produce.
pub fn linear_rank_width_at_most_one(rows: &[u64]) -> bool {
    let n = rows.len();
    assert!(n <= 24, "prefix search is exponential in n");
    let full = (1u64 << n) - 1;
    let mut seen = HashSet::new();
    let mut stack = vec![0u64];
    while let Some(s) = stack.pop() {
        if s == full {
            return true;
        }
        for v in 0..n {
            let t = s | 1 << v;
            if t != s && cut_rank(rows, t) <= 1 && seen.insert(t) {
                stack.push(t);
            }
        }
    }
    false
}

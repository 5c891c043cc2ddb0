use super::Graph;

/// Whether `K_t` is a minor of `g`, by searching for `t` connected,
/// pairwise adjacent branch sets inside one connected component.
pub fn has_complete_minor(g: &Graph, t: usize) -> bool {
    if t <= 1 {
        return g.n() >= t;
    }
    let mut alive: u64 = g.vertex_mask();
    // Vertices of degree <= 1 never help for t >= 3.
    if t >= 3 {
        loop {
            let before = alive;
            for v in 0..g.n() {
                if alive >> v & 1 == 1 && (g.adj(v) & alive).count_ones() <= 1 {
                    alive &= !(1u64 << v);
                }
            }
            if alive == before {
                break;
            }
        }
    }
    for comp in g.components_within(alive) {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| comp >> v & 1 == 1).collect();
        if verts.len() < t {
            continue;
        }
        let edges: u32 = verts.iter().map(|&v| (g.adj(v) & comp).count_ones()).sum::<u32>() / 2;
        if (edges as usize) < t * (t - 1) / 2 {
            continue;
        }
        let mut parts = vec![0u64; t];
        if assign(g, &verts, 0, 0, &mut parts, t) {
            return true;
        }
    }
    false
}

/// Restricted-growth assignment of `verts[i..]` to at most `t` parts.
fn assign(g: &Graph, verts: &[usize], i: usize, used: usize, parts: &mut [u64], t: usize) -> bool {
    if verts.len() - i < t - used {
        return false;
    }
    if i == verts.len() {
        return used == t && valid(g, parts);
    }
    let v = verts[i];
    let limit = (used + 1).min(t);
    for k in 0..limit {
        parts[k] |= 1u64 << v;
        let ok = assign(g, verts, i + 1, used.max(k + 1), parts, t);
        parts[k] &= !(1u64 << v);
        if ok {
            return true;
        }
    }
    false
}

fn valid(g: &Graph, parts: &[u64]) -> bool {
    if !parts.iter().all(|&p| g.is_connected_within(p)) {
        return false;
    }
    for a in 0..parts.len() {
        let nb = g.neighbourhood(parts[a]);
        for &pb in &parts[a + 1..] {
            if nb & pb == 0 {
                return false;
            }
        }
    }
    true
}

/// Chordless cycles, each as a vertex sequence starting at its smallest
/// vertex and oriented so the second vertex is smaller than the last.
pub fn induced_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut path = vec![s];
        extend(g, s, &mut path, 1u64 << s, &mut out);
    }
    out.sort();
    out
}

fn extend(g: &Graph, s: usize, path: &mut Vec<usize>, on_path: u64, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    let interior = on_path & !(1u64 << s) & !(1u64 << v);
    for u in s + 1..g.n() {
        if on_path >> u & 1 == 1 || g.adj(v) >> u & 1 == 0 {
            continue;
        }
        if g.adj(u) & interior != 0 {
            continue;
        }
        if path.len() >= 2 && g.adj(u) >> s & 1 == 1 {
            if path[1] < u {
                let mut c = path.clone();
                c.push(u);
                out.push(c);
            }
            continue;
        }
        path.push(u);
        extend(g, s, path, on_path | 1u64 << u, out);
        path.pop();
    }
}

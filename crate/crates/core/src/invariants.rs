//! Homotopy invariants of finite simplicial sets and sound three-valued
//! equivalence verdicts for slices of bisimplicial tables.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::bisimplicial::{slice, Axis};
use crate::catkit::{detect_nerve, detect_nerve_table, Functor};
use crate::error::{Error, Result};
use crate::presentation::Simplex;
use crate::sset::SimplicialSet;
use crate::table::{Table, TableMap};

/// `Z^rank ⊕ ⊕ Z/t_i`, with each `t_i > 1` dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    /// `H_0 .. H_top`.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Whether this agrees with the homology of a point in all listed degrees.
    pub fn is_point(&self) -> bool {
        self.groups.iter().enumerate().all(|(k, g)| {
            if k == 0 {
                g.rank == 1 && g.torsion.is_empty()
            } else {
                g.is_zero()
            }
        })
    }
}

/// Nonzero invariant factors of an integer matrix (Smith normal form).
pub fn smith_invariants(rows: usize, cols: usize, mut m: Vec<i128>) -> Vec<i128> {
    let at = |i: usize, j: usize| i * cols + j;
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = m[at(i, j)];
                if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < m[at(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut m, cols, t, bi);
        swap_cols(&mut m, rows, cols, t, bj);
        loop {
            let p = m[at(t, t)];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[at(i, t)] / p;
                if q != 0 {
                    for j in t..cols {
                        m[at(i, j)] -= q * m[at(t, j)];
                    }
                }
                if m[at(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[at(t, j)] / p;
                if q != 0 {
                    for i in t..rows {
                        m[at(i, j)] -= q * m[at(i, t)];
                    }
                }
                if m[at(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // move a smaller remainder into the pivot and retry
                let mut best = (t, t);
                for i in t..rows {
                    if m[at(i, t)] != 0 && m[at(i, t)].abs() < m[at(best.0, best.1)].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if m[at(t, j)] != 0 && m[at(t, j)].abs() < m[at(best.0, best.1)].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut m, cols, t, best.0);
                swap_cols(&mut m, rows, cols, t, best.1);
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[at(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        m[at(t, j)] += m[at(i, j)];
                    }
                }
                None => break,
            }
        }
        out.push(m[at(t, t)].abs());
        t += 1;
    }
    out
}

fn swap_rows(m: &mut [i128], cols: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..cols {
            m.swap(a * cols + j, b * cols + j);
        }
    }
}

fn swap_cols(m: &mut [i128], rows: usize, cols: usize, a: usize, b: usize) {
    if a != b {
        for i in 0..rows {
            m.swap(i * cols + a, i * cols + b);
        }
    }
}

/// Homology from chain group ranks and boundary invariant factors, where
/// `factors[k]` belongs to `∂_k : C_k -> C_{k-1}` (`factors[0]` empty).
fn assemble(dims: &[usize], factors: &[Vec<i128>], top: usize) -> HomologyProfile {
    let groups = (0..=top)
        .map(|k| {
            let c = dims.get(k).copied().unwrap_or(0);
            let out_rank = factors.get(k).map_or(0, |f| f.len());
            let in_factors = factors.get(k + 1).cloned().unwrap_or_default();
            let rank = c - out_rank - in_factors.len();
            let mut torsion: Vec<u64> = in_factors.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
            torsion.sort();
            HomologyGroup { rank, torsion }
        })
        .collect();
    HomologyProfile { groups }
}

/// Integral homology in degrees `0..=top` from normalized chains.
pub fn homology(x: &SimplicialSet, top: usize) -> HomologyProfile {
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top + 2];
    for g in 0..x.len() as u32 {
        let d = x.degree(g)[0];
        if d <= top + 1 {
            by_dim[d].push(g);
        }
    }
    let mut pos = vec![0usize; x.len()];
    for gens in &by_dim {
        for (i, &g) in gens.iter().enumerate() {
            pos[g as usize] = i;
        }
    }
    let dims: Vec<usize> = by_dim.iter().map(|v| v.len()).collect();
    let mut factors = vec![Vec::new()];
    for k in 1..=top + 1 {
        let (rows, cols) = (dims[k - 1], dims[k]);
        let mut m = vec![0i128; rows * cols];
        for (j, &g) in by_dim[k].iter().enumerate() {
            for (i, f) in x.generator(g).faces[0].iter().enumerate() {
                if f.is_nondegenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m[pos[f.gen as usize] * cols + j] += sign;
                }
            }
        }
        factors.push(smith_invariants(rows, cols, m));
    }
    assemble(&dims, &factors, top)
}

/// Homology of a bounded table; only degrees below its bound are meaningful.
pub fn homology_table(t: &Table<1>, top: usize) -> HomologyProfile {
    let (p, _) = t.to_presentation();
    homology(&p, top)
}

/// Homology from the unnormalized chain complex of a table (all simplices,
/// degenerate ones included). Valid in degrees below the table bound.
pub fn homology_unnormalized(t: &Table<1>, top: usize) -> HomologyProfile {
    let top = top.min(t.bounds()[0].saturating_sub(1));
    let dims: Vec<usize> = (0..=top + 1).map(|n| t.count([n]).unwrap()).collect();
    let mut factors = vec![Vec::new()];
    for k in 1..=top + 1 {
        let (rows, cols) = (dims[k - 1], dims[k]);
        let mut m = vec![0i128; rows * cols];
        for x in 0..cols {
            for i in 0..=k {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[t.face([k], 0, i, x as u32) as usize * cols + x] += sign;
            }
        }
        factors.push(smith_invariants(rows, cols, m));
    }
    assemble(&dims, &factors, top)
}

/// Connected components of the vertices (as generator indices).
pub fn components(x: &SimplicialSet) -> Vec<Vec<u32>> {
    let verts: Vec<u32> = (0..x.len() as u32).filter(|&g| x.degree(g) == [0]).collect();
    let mut parent: BTreeMap<u32, u32> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<u32, u32>, mut v: u32) -> u32 {
        while p[&v] != v {
            let up = p[&p[&v]];
            p.insert(v, up);
            v = up;
        }
        v
    }
    for g in 0..x.len() as u32 {
        if x.degree(g) == [1] {
            let s = Simplex::generator(g, [1]);
            let (a, b) = (x.vertex(&s, [0]), x.vertex(&s, [1]));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent.insert(hi, lo);
            }
        }
    }
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &v in &verts {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupVerdict {
    Trivial,
    Nontrivial,
    Unknown,
}

/// An edge-path presentation of `π₁(X, v)`. Letters are `±(generator + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
    pub abelianization: HomologyGroup,
    pub verdict: GroupVerdict,
}

pub fn pi1_presentation(x: &SimplicialSet, basepoint: u32) -> Result<Pi1Presentation> {
    if basepoint as usize >= x.len() || x.degree(basepoint) != [0] {
        return Err(Error::Domain(format!("basepoint {basepoint} is not a vertex")));
    }
    let comps = components(x);
    if comps.len() != 1 {
        return Err(Error::Domain(format!("input has {} connected components", comps.len())));
    }
    // breadth-first spanning tree from the basepoint
    let edges: Vec<(u32, u32, u32)> = (0..x.len() as u32)
        .filter(|&g| x.degree(g) == [1])
        .map(|g| {
            let s = Simplex::generator(g, [1]);
            (g, x.vertex(&s, [0]), x.vertex(&s, [1]))
        })
        .collect();
    let mut in_tree = vec![false; x.len()];
    let mut reached = vec![false; x.len()];
    reached[basepoint as usize] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(e, a, b) in &edges {
            let other = if a == v { b } else if b == v { a } else { continue };
            if !reached[other as usize] {
                reached[other as usize] = true;
                in_tree[e as usize] = true;
                queue.push_back(other);
            }
        }
    }
    let mut letter = vec![0i32; x.len()];
    let mut names = Vec::new();
    for &(e, _, _) in &edges {
        if !in_tree[e as usize] {
            names.push(x.generator(e).label.clone());
            letter[e as usize] = names.len() as i32;
        }
    }
    let word_of = |f: &Simplex<1>| -> Option<i32> {
        (f.is_nondegenerate() && letter[f.gen as usize] != 0).then(|| letter[f.gen as usize])
    };
    let mut relators = Vec::new();
    for g in 0..x.len() as u32 {
        if x.degree(g) != [2] {
            continue;
        }
        let faces = &x.generator(g).faces[0];
        // d2 · d0 = d1
        let mut w = Vec::new();
        w.extend(word_of(&faces[2]));
        w.extend(word_of(&faces[0]));
        w.extend(word_of(&faces[1]).map(|l| -l));
        relators.push(w);
    }
    let (gens, rels) = tietze(names.len(), relators);
    let generators: Vec<String> = gens.iter().map(|&g| names[g as usize - 1].clone()).collect();
    let renumber: BTreeMap<i32, i32> = gens.iter().enumerate().map(|(i, &g)| (g, i as i32 + 1)).collect();
    let relators: Vec<Vec<i32>> = rels
        .iter()
        .map(|r| r.iter().map(|&l| renumber[&l.abs()] * l.signum()).collect())
        .collect();
    let abelianization = abelianize(generators.len(), &relators);
    let verdict = if generators.is_empty() {
        GroupVerdict::Trivial
    } else if !abelianization.is_zero() {
        GroupVerdict::Nontrivial
    } else {
        GroupVerdict::Unknown
    };
    Ok(Pi1Presentation { generators, relators, abelianization, verdict })
}

fn abelianize(n: usize, relators: &[Vec<i32>]) -> HomologyGroup {
    let rows = relators.len();
    let mut m = vec![0i128; rows * n];
    for (i, r) in relators.iter().enumerate() {
        for &l in r {
            m[i * n + l.unsigned_abs() as usize - 1] += l.signum() as i128;
        }
    }
    let f = smith_invariants(rows, n, m);
    let mut torsion: Vec<u64> = f.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    torsion.sort();
    HomologyGroup { rank: n - f.len(), torsion }
}

fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

/// Greedy Tietze moves: drop trivial relators and eliminate generators that
/// occur exactly once in some relator. Returns surviving generator letters
/// and relators.
fn tietze(n: usize, relators: Vec<Vec<i32>>) -> (Vec<i32>, Vec<Vec<i32>>) {
    let mut gens: Vec<i32> = (1..=n as i32).collect();
    let mut rels: Vec<Vec<i32>> = relators.iter().map(|r| reduce(r)).filter(|r| !r.is_empty()).collect();
    loop {
        rels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        rels.dedup();
        let mut pick = None;
        'outer: for (ri, r) in rels.iter().enumerate() {
            for (pos, &l) in r.iter().enumerate() {
                if r.iter().filter(|&&m| m.abs() == l.abs()).count() == 1 {
                    pick = Some((ri, pos));
                    break 'outer;
                }
            }
        }
        let Some((ri, pos)) = pick else { break };
        let r = rels.remove(ri);
        let l = r[pos];
        // rotate so that l comes first: l · rest = 1, hence l = rest⁻¹
        let rest: Vec<i32> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let mut value: Vec<i32> = rest.iter().rev().map(|&m| -m).collect();
        if l < 0 {
            value = value.iter().rev().map(|&m| -m).collect();
        }
        let g = l.abs();
        let inv: Vec<i32> = value.iter().rev().map(|&m| -m).collect();
        rels = rels
            .into_iter()
            .map(|w| {
                let mut out = Vec::new();
                for &m in &w {
                    if m == g {
                        out.extend(&value);
                    } else if m == -g {
                        out.extend(&inv);
                    } else {
                        out.push(m);
                    }
                }
                reduce(&out)
            })
            .filter(|w| !w.is_empty())
            .collect();
        gens.retain(|&h| h != g);
    }
    (gens, rels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contractibility {
    pub status: Status,
    pub reason: String,
}

/// Sound contractibility test: nerves of categories with an initial or
/// terminal object are contractible; a non-point homology is an obstruction.
pub fn contractibility(x: &SimplicialSet) -> Contractibility {
    if let Ok(det) = detect_nerve(x) {
        if det.exact {
            if let Some(rule) = initial_or_terminal(&det.category) {
                return Contractibility { status: Status::Holds, reason: rule };
            }
        }
    }
    let top = x.max_degree()[0];
    let h = homology(x, top);
    if !h.is_point() {
        return Contractibility { status: Status::Fails, reason: format!("homology differs from a point: {}", show_profile(&h)) };
    }
    Contractibility { status: Status::Unknown, reason: "no certificate found".into() }
}

/// As [`contractibility`] for a bounded table. Coskeletal tables are decided
/// through their category; otherwise homology below the bound is used.
pub fn contractibility_table(t: &Table<1>) -> Contractibility {
    let bound = t.bounds()[0];
    if t.is_coskeletal() && bound >= 3 {
        if let Ok(det) = detect_nerve_table(t, bound) {
            if let Some(rule) = initial_or_terminal(&det.category) {
                return Contractibility { status: Status::Holds, reason: rule };
            }
        }
    }
    if bound >= 1 {
        let h = homology_table(t, bound - 1);
        if !h.is_point() {
            return Contractibility {
                status: Status::Fails,
                reason: format!("homology differs from a point: {}", show_profile(&h)),
            };
        }
    }
    Contractibility { status: Status::Unknown, reason: format!("no certificate within bound {bound}") }
}

fn initial_or_terminal(c: &crate::catkit::FiniteCategory) -> Option<String> {
    if let Some(o) = c.has_terminal_object() {
        return Some(format!("nerve of a category with terminal object {}", c.objects()[o as usize]));
    }
    c.has_initial_object().map(|o| format!("nerve of a category with initial object {}", c.objects()[o as usize]))
}

pub fn show_profile(h: &HomologyProfile) -> String {
    let parts: Vec<String> = h.groups.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceStatus {
    Equivalent,
    NotEquivalent,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Bijective on every level within the bound.
    Isomorphism { levels: usize },
    BothContractible { left: String, right: String },
    HomologyMismatch { degree: usize, left: String, right: String },
    CategoryEquivalence,
    NotCategoryEquivalence { reason: String },
    None { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    pub certificate: Certificate,
    /// True when the verdict does not depend on the bound.
    pub exact: bool,
    pub bound: usize,
}

/// Restricts a map of bisimplicial tables to a column or row.
pub fn slice_map(f: &TableMap<2>, x: &Table<2>, axis: Axis, index: usize) -> Result<TableMap<1>> {
    let [pb, qb] = x.bounds();
    let levels = match axis {
        Axis::Column => (0..=qb).map(|m| x.index([index, m]).map(|i| f.levels[i].clone())).collect::<Option<Vec<_>>>(),
        Axis::Row => (0..=pb).map(|n| x.index([n, index]).map(|i| f.levels[i].clone())).collect::<Option<Vec<_>>>(),
    };
    levels
        .map(|levels| TableMap { levels })
        .ok_or_else(|| Error::Bounds { requested: format!("{axis:?} {index}"), bounds: format!("({pb},{qb})") })
}

/// Whether `f : X_n -> Y_n` is a weak homotopy equivalence, soundly.
pub fn column_verdict(x: &Table<2>, y: &Table<2>, f: &TableMap<2>, n: usize) -> Result<EquivalenceVerdict> {
    let xs = slice(x, Axis::Column, n)?;
    let ys = slice(y, Axis::Column, n)?;
    let fs = slice_map(f, x, Axis::Column, n)?;
    Ok(space_verdict(&xs, &ys, &fs))
}

/// Verdict for a map of one-directional tables regarded as spaces.
pub fn space_verdict(xs: &Table<1>, ys: &Table<1>, fs: &TableMap<1>) -> EquivalenceVerdict {
    let bound = xs.bounds()[0].min(ys.bounds()[0]);
    let both_cosk = xs.is_coskeletal() && ys.is_coskeletal();
    if fs.is_isomorphism(xs, ys) {
        return EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            certificate: Certificate::Isomorphism { levels: bound + 1 },
            exact: both_cosk && bound >= 2,
            bound,
        };
    }
    let (cx, cy) = (contractibility_table(xs), contractibility_table(ys));
    if cx.status == Status::Holds && cy.status == Status::Holds {
        return EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            certificate: Certificate::BothContractible { left: cx.reason, right: cy.reason },
            exact: true,
            bound,
        };
    }
    if let Some(c) = homology_obstruction(xs, ys, bound) {
        return EquivalenceVerdict { status: EquivalenceStatus::NotEquivalent, certificate: c, exact: true, bound };
    }
    EquivalenceVerdict {
        status: EquivalenceStatus::Unknown,
        certificate: Certificate::None { reason: format!("no certificate within bound {bound}") },
        exact: false,
        bound,
    }
}

/// Pushes a levelwise element map through the detected object/arrow indexing.
fn transport(src: &[u32], tgt: &[u32], f: &[u32]) -> Vec<u32> {
    let n = src.iter().map(|&o| o as usize + 1).max().unwrap_or(0);
    let mut out = vec![0; n];
    for (e, &o) in src.iter().enumerate() {
        out[o as usize] = tgt[f[e] as usize];
    }
    out
}

fn homology_obstruction(xs: &Table<1>, ys: &Table<1>, bound: usize) -> Option<Certificate> {
    if bound == 0 {
        return None;
    }
    let hx = homology_table(xs, bound - 1);
    let hy = homology_table(ys, bound - 1);
    (0..bound).find(|&k| hx.groups[k] != hy.groups[k]).map(|k| Certificate::HomologyMismatch {
        degree: k,
        left: hx.groups[k].to_string(),
        right: hy.groups[k].to_string(),
    })
}

/// Whether `f : X_{*,m} -> Y_{*,m}` is a weak categorical equivalence, soundly.
pub fn row_verdict(x: &Table<2>, y: &Table<2>, f: &TableMap<2>, m: usize) -> Result<EquivalenceVerdict> {
    let xs = slice(x, Axis::Row, m)?;
    let ys = slice(y, Axis::Row, m)?;
    let fs = slice_map(f, x, Axis::Row, m)?;
    Ok(category_verdict(&xs, &ys, &fs))
}

/// Verdict for a map of one-directional tables regarded as ∞-categories.
pub fn category_verdict(xs: &Table<1>, ys: &Table<1>, fs: &TableMap<1>) -> EquivalenceVerdict {
    let bound = xs.bounds()[0].min(ys.bounds()[0]);
    let both_cosk = xs.is_coskeletal() && ys.is_coskeletal();
    if bound >= 3 {
        let detected = (detect_nerve_table(xs, bound), detect_nerve_table(ys, bound));
        if let (Ok(dx), Ok(dy)) = detected {
            // a marked nerve is fibrant only with the natural marking
            if !marking_is_natural(xs, &dx) || !marking_is_natural(ys, &dy) {
                return fallback_verdict(xs, ys, fs, bound, both_cosk);
            }
            let functor = Functor {
                source: &dx.category,
                target: &dy.category,
                on_objects: transport(&dx.object_of_vertex, &dy.object_of_vertex, &fs.levels[0]),
                on_arrows: transport(&dx.arrow_of_edge, &dy.arrow_of_edge, &fs.levels[1]),
            };
            if let Ok(eq) = functor.is_equivalence() {
                let exact = both_cosk || (dx.exact && dy.exact);
                let (status, certificate) = if eq {
                    (EquivalenceStatus::Equivalent, Certificate::CategoryEquivalence)
                } else {
                    let reason = if functor.is_fully_faithful() {
                        "not essentially surjective".to_string()
                    } else {
                        "not fully faithful".to_string()
                    };
                    (EquivalenceStatus::NotEquivalent, Certificate::NotCategoryEquivalence { reason })
                };
                if exact || status == EquivalenceStatus::NotEquivalent && both_cosk {
                    return EquivalenceVerdict { status, certificate, exact, bound };
                }
            }
        }
    }
    fallback_verdict(xs, ys, fs, bound, both_cosk)
}

fn fallback_verdict(xs: &Table<1>, ys: &Table<1>, fs: &TableMap<1>, bound: usize, both_cosk: bool) -> EquivalenceVerdict {
    if fs.is_isomorphism(xs, ys) {
        return EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            certificate: Certificate::Isomorphism { levels: bound + 1 },
            exact: both_cosk && bound >= 2,
            bound,
        };
    }
    // cartesian and categorical equivalences are weak homotopy equivalences
    if let Some(c) = homology_obstruction(xs, ys, bound) {
        return EquivalenceVerdict { status: EquivalenceStatus::NotEquivalent, certificate: c, exact: true, bound };
    }
    EquivalenceVerdict {
        status: EquivalenceStatus::Unknown,
        certificate: Certificate::None { reason: format!("no certificate within bound {bound}") },
        exact: false,
        bound,
    }
}

/// Unmarked tables pass; marked ones must mark exactly the isomorphisms.
fn marking_is_natural(t: &Table<1>, det: &crate::catkit::DetectedNerve) -> bool {
    if t.level([1]).is_none_or(|l| l.marked.is_none()) {
        return true;
    }
    (0..t.count([1]).unwrap() as u32)
        .all(|e| t.is_marked([1], e) == det.category.is_isomorphism(det.arrow_of_edge[e as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, j_truncated, product, simplex};

    fn profile(groups: &[(usize, &[u64])]) -> HomologyProfile {
        HomologyProfile {
            groups: groups.iter().map(|&(rank, t)| HomologyGroup { rank, torsion: t.to_vec() }).collect(),
        }
    }

    #[test]
    fn spheres_and_simplices() {
        assert_eq!(homology(&boundary(3), 2), profile(&[(1, &[]), (0, &[]), (1, &[])]));
        assert_eq!(homology(&boundary(1), 0), profile(&[(2, &[])]));
        for n in 0..=4 {
            assert!(homology(&simplex(n), 4).is_point());
        }
        assert!(homology(&product(&simplex(2), &simplex(1)), 3).is_point());
    }

    #[test]
    fn smith_torsion() {
        // [[2, 0], [0, 3]] ~ diag(1, 6)
        assert_eq!(smith_invariants(2, 2, vec![2, 0, 0, 3]), vec![1, 6]);
        assert_eq!(smith_invariants(2, 2, vec![2, 4, 4, 8]), vec![2]);
        assert!(smith_invariants(3, 0, vec![]).is_empty());
    }

    #[test]
    fn unnormalized_agrees() {
        for x in [boundary(3), j_truncated(3), product(&simplex(1), &simplex(1))] {
            let t = Table::tabulate(&x, [4], None);
            assert_eq!(homology_unnormalized(&t, 3), homology(&x, 3));
        }
    }

    #[test]
    fn fundamental_groups() {
        let b = pi1_presentation(&boundary(2), 0).unwrap();
        assert_eq!((b.generators.len(), b.relators.len()), (1, 0));
        assert_eq!(b.verdict, GroupVerdict::Nontrivial);
        assert_eq!(pi1_presentation(&simplex(2), 0).unwrap().verdict, GroupVerdict::Trivial);
        assert_eq!(pi1_presentation(&j_truncated(2), 0).unwrap().verdict, GroupVerdict::Trivial);
        assert!(matches!(pi1_presentation(&boundary(1), 0), Err(Error::Domain(_))));
        assert!(matches!(pi1_presentation(&simplex(1), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn contractible_rules() {
        assert_eq!(contractibility(&simplex(3)).status, Status::Holds);
        assert_eq!(contractibility(&boundary(2)).status, Status::Fails);
        // sk₃ J is a truncation, not a nerve: H₃ ≠ 0
        assert_eq!(contractibility(&j_truncated(3)).status, Status::Fails);
    }
}

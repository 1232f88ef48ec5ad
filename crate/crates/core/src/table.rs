//! Degreewise tabulations of (multi)simplicial sets within bounds.
//!
//! A [`Table`] lists the simplices of every degree up to its bounds with
//! face and degeneracy lookup tables. Presentations are tabulated on demand;
//! hom-constructions such as classification diagrams are only ever tables.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ops::{Injection, Surjection};
use crate::presentation::{Generator, Presentation, Simplex};

pub const NONE: u32 = u32::MAX;

/// Elements grouped by the value of one face, in compressed-row form.
#[derive(Debug)]
pub(crate) struct FaceIndex {
    offsets: Vec<u32>,
    elems: Vec<u32>,
}

impl FaceIndex {
    fn build(face_of: impl Iterator<Item = u32>, lower_count: usize) -> Self {
        let pairs: Vec<u32> = face_of.collect();
        let mut offsets = vec![0u32; lower_count + 1];
        for &f in &pairs {
            offsets[f as usize + 1] += 1;
        }
        for i in 0..lower_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut elems = vec![0u32; pairs.len()];
        for (x, &f) in pairs.iter().enumerate() {
            elems[fill[f as usize] as usize] = x as u32;
            fill[f as usize] += 1;
        }
        FaceIndex { offsets, elems }
    }

    fn get(&self, value: u32) -> &[u32] {
        let v = value as usize;
        &self.elems[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

#[derive(Debug)]
pub struct Level<const A: usize> {
    pub(crate) degree: [usize; A],
    pub(crate) count: usize,
    /// `faces[a][x * (degree[a] + 1) + i]`; empty when `degree[a] == 0`.
    pub(crate) faces: [Vec<u32>; A],
    /// `degens[a][x * (degree[a] + 1) + i]` into the level `degree + e_a`;
    /// empty when that level lies outside the bounds.
    pub(crate) degens: [Vec<u32>; A],
    /// Marked elements; only present on levels with `degree[0] == 1`.
    pub(crate) marked: Option<Vec<bool>>,
    /// EZ normal forms when the table was tabulated from a presentation.
    pub(crate) simplices: Option<Vec<Simplex<A>>>,
    face_index: Vec<OnceLock<FaceIndex>>,
}

impl<const A: usize> Level<A> {
    pub(crate) fn new(degree: [usize; A], count: usize) -> Self {
        let n_faces: usize = degree.iter().map(|&d| if d == 0 { 0 } else { d + 1 }).sum();
        Level {
            degree,
            count,
            faces: std::array::from_fn(|_| Vec::new()),
            degens: std::array::from_fn(|_| Vec::new()),
            marked: None,
            simplices: None,
            face_index: (0..n_faces).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn degree(&self) -> [usize; A] {
        self.degree
    }

    pub fn marking(&self) -> Option<&[bool]> {
        self.marked.as_deref()
    }
}

/// A bounded degreewise tabulation.
#[derive(Debug)]
pub struct Table<const A: usize> {
    bounds: [usize; A],
    levels: Vec<Level<A>>,
    pub(crate) lookup: Option<Vec<HashMap<Simplex<A>, u32>>>,
    /// Set by constructions known to produce 2-coskeletal rows and columns
    /// (hom-objects into nerves of categories).
    pub(crate) coskeletal: bool,
}

impl<const A: usize> Table<A> {
    pub(crate) fn from_levels(bounds: [usize; A], levels: Vec<Level<A>>) -> Self {
        debug_assert_eq!(levels.len(), Self::level_count(bounds));
        Table { bounds, levels, lookup: None, coskeletal: false }
    }

    /// A table with no levels, to be filled in by its owner.
    pub(crate) fn placeholder(bounds: [usize; A]) -> Self {
        Table { bounds, levels: Vec::new(), lookup: None, coskeletal: false }
    }

    fn level_count(bounds: [usize; A]) -> usize {
        bounds.iter().map(|b| b + 1).product()
    }

    /// All multi-indices within `bounds`, in row-major order.
    pub fn degrees_within(bounds: [usize; A]) -> Vec<[usize; A]> {
        let mut out = Vec::with_capacity(Self::level_count(bounds));
        let mut cur = [0usize; A];
        loop {
            out.push(cur);
            let mut a = A;
            loop {
                if a == 0 {
                    return out;
                }
                a -= 1;
                if cur[a] < bounds[a] {
                    cur[a] += 1;
                    for c in cur.iter_mut().skip(a + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn bounds(&self) -> [usize; A] {
        self.bounds
    }

    pub fn is_coskeletal(&self) -> bool {
        self.coskeletal
    }

    pub fn index(&self, degree: [usize; A]) -> Option<usize> {
        let mut idx = 0;
        for a in 0..A {
            if degree[a] > self.bounds[a] {
                return None;
            }
            idx = idx * (self.bounds[a] + 1) + degree[a];
        }
        Some(idx)
    }

    pub fn level(&self, degree: [usize; A]) -> Option<&Level<A>> {
        self.index(degree).map(|i| &self.levels[i])
    }

    pub(crate) fn level_at(&self, idx: usize) -> &Level<A> {
        &self.levels[idx]
    }

    pub fn levels(&self) -> &[Level<A>] {
        &self.levels
    }

    pub fn count(&self, degree: [usize; A]) -> Option<usize> {
        self.level(degree).map(|l| l.count)
    }

    pub fn has_marking(&self) -> bool {
        self.levels.iter().any(|l| l.marked.is_some())
    }

    #[inline]
    pub fn face(&self, degree: [usize; A], axis: usize, i: usize, x: u32) -> u32 {
        let l = &self.levels[self.index(degree).expect("degree within bounds")];
        l.faces[axis][x as usize * (degree[axis] + 1) + i]
    }

    #[inline]
    pub(crate) fn face_at(&self, level: usize, axis: usize, i: usize, x: u32) -> u32 {
        let l = &self.levels[level];
        l.faces[axis][x as usize * (l.degree[axis] + 1) + i]
    }

    /// `s_i` in direction `axis`; `None` when the result lies outside the bounds.
    #[inline]
    pub fn degen(&self, degree: [usize; A], axis: usize, i: usize, x: u32) -> Option<u32> {
        let l = &self.levels[self.index(degree)?];
        if l.degens[axis].is_empty() {
            return None;
        }
        Some(l.degens[axis][x as usize * (degree[axis] + 1) + i])
    }

    pub fn is_marked(&self, degree: [usize; A], x: u32) -> bool {
        match self.level(degree).and_then(|l| l.marked.as_ref()) {
            Some(m) => m[x as usize],
            None => false,
        }
    }

    /// `σ^*(x)`; `None` if the result falls outside the bounds.
    pub fn apply_surjections(&self, degree: [usize; A], x: u32, degen: &[Surjection; A]) -> Option<u32> {
        let mut deg = degree;
        let mut y = x;
        for a in 0..A {
            debug_assert_eq!(degen[a].target(), deg[a]);
            for i in degen[a].degeneracy_sequence() {
                y = self.degen(deg, a, i, y)?;
                deg[a] += 1;
            }
        }
        Some(y)
    }

    pub fn apply_injection(&self, degree: [usize; A], axis: usize, inj: Injection, x: u32) -> u32 {
        let mut deg = degree;
        let mut y = x;
        for i in inj.face_sequence() {
            y = self.face(deg, axis, i as usize, y);
            deg[axis] -= 1;
        }
        y
    }

    /// The element `w` with `σ^*(w) = z`, if one exists.
    pub fn desigma(&self, degree: [usize; A], z: u32, degen: &[Surjection; A]) -> Option<u32> {
        if degen.iter().all(|s| s.is_identity()) {
            return Some(z);
        }
        let mut deg = degree;
        let mut w = z;
        for a in 0..A {
            if degen[a].is_identity() {
                continue;
            }
            w = self.apply_injection(deg, a, degen[a].section(), w);
            deg[a] = degen[a].target();
        }
        (self.apply_surjections(deg, w, degen)? == z).then_some(w)
    }

    /// Elements whose `i`-th face in direction `axis` equals `value`.
    pub fn with_face(&self, degree: [usize; A], axis: usize, i: usize, value: u32) -> &[u32] {
        let li = self.index(degree).expect("degree within bounds");
        self.with_face_at(li, axis, i, value)
    }

    pub(crate) fn with_face_at(&self, li: usize, axis: usize, i: usize, value: u32) -> &[u32] {
        let l = &self.levels[li];
        let slot: usize = (0..axis).map(|b| if l.degree[b] == 0 { 0 } else { l.degree[b] + 1 }).sum::<usize>() + i;
        let idx = l.face_index[slot].get_or_init(|| {
            let mut lower = l.degree;
            lower[axis] -= 1;
            let lower_count = self.level(lower).unwrap().count;
            let stride = l.degree[axis] + 1;
            FaceIndex::build((0..l.count).map(|x| l.faces[axis][x * stride + i]), lower_count)
        });
        idx.get(value)
    }

    /// Whether `x` is a degeneracy of a lower simplex. Elements of the top
    /// level in some direction are judged using the degeneracies into that level.
    pub fn is_degenerate(&self, degree: [usize; A], x: u32) -> bool {
        (0..A).any(|a| self.degenerate_in(degree, a, x).is_some())
    }

    /// An index `i` and `y` with `x = s_i(y)` in direction `axis`.
    pub fn degenerate_in(&self, degree: [usize; A], axis: usize, x: u32) -> Option<(usize, u32)> {
        if degree[axis] == 0 {
            return None;
        }
        let mut lower = degree;
        lower[axis] -= 1;
        for i in 0..degree[axis] {
            let y = self.face(degree, axis, i, x);
            if self.degen(lower, axis, i, y) == Some(x) {
                return Some((i, y));
            }
        }
        None
    }

    /// Eilenberg–Zilber decomposition: `x = σ^*(y)` with `y` nondegenerate.
    pub fn decompose(&self, degree: [usize; A], x: u32) -> ([Surjection; A], [usize; A], u32) {
        let mut deg = degree;
        let mut y = x;
        // x = y ∘ σ, built up by peeling one degeneracy at a time.
        let mut degen = degree.map(Surjection::identity);
        loop {
            let mut peeled = false;
            for a in 0..A {
                if let Some((i, z)) = self.degenerate_in(deg, a, y) {
                    // y = s_i(z) = z ∘ s^i, so x = z ∘ s^i ∘ σ_a.
                    degen[a] = Surjection::codegeneracy(deg[a] - 1, i).after(degen[a]);
                    deg[a] -= 1;
                    y = z;
                    peeled = true;
                    break;
                }
            }
            if !peeled {
                return (degen, deg, y);
            }
        }
    }

    /// Normal form of an element of a tabulated presentation.
    pub fn simplex(&self, degree: [usize; A], x: u32) -> Option<Simplex<A>> {
        self.level(degree)?.simplices.as_ref().map(|s| s[x as usize])
    }

    /// Element index of a normal-form simplex of a tabulated presentation.
    pub fn lookup(&self, s: &Simplex<A>) -> Option<u32> {
        let li = self.index(s.degree())?;
        self.lookup.as_ref()?.get(li)?.get(s).copied()
    }

    /// Tabulates a presentation up to `bounds`. Marked generators (in
    /// degree 1 of direction 0) mark their degeneracies in the other
    /// directions; degeneracies in direction 0 are always marked.
    pub fn tabulate(p: &Presentation<A>, bounds: [usize; A], marked: Option<&[bool]>) -> Self {
        let degrees = Self::degrees_within(bounds);
        let mut levels = Vec::with_capacity(degrees.len());
        let mut lookup = Vec::with_capacity(degrees.len());
        for &deg in &degrees {
            let mut simplices = Vec::new();
            for (gi, g) in p.generators().iter().enumerate() {
                if (0..A).any(|a| g.degree[a] > deg[a]) {
                    continue;
                }
                let mut choices: Vec<Vec<Surjection>> = Vec::with_capacity(A);
                for a in 0..A {
                    choices.push(Surjection::all(deg[a], g.degree[a]));
                }
                for_each_product(&choices, |degen| simplices.push(Simplex { gen: gi as u32, degen }));
            }
            let map: HashMap<Simplex<A>, u32> =
                simplices.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            let mut level = Level::new(deg, simplices.len());
            if deg[0] == 1 {
                level.marked = Some(
                    simplices
                        .iter()
                        .map(|s| {
                            !s.degen[0].is_identity() || marked.is_some_and(|m| m[s.gen as usize])
                        })
                        .collect(),
                );
            }
            level.simplices = Some(simplices);
            levels.push(level);
            lookup.push(map);
        }
        let index_of = |deg: [usize; A]| -> Option<usize> {
            let mut idx = 0;
            for a in 0..A {
                if deg[a] > bounds[a] {
                    return None;
                }
                idx = idx * (bounds[a] + 1) + deg[a];
            }
            Some(idx)
        };
        for li in 0..levels.len() {
            let deg = levels[li].degree;
            let simplices = levels[li].simplices.clone().unwrap();
            for a in 0..A {
                if deg[a] > 0 {
                    let mut lower = deg;
                    lower[a] -= 1;
                    let lower_map = &lookup[index_of(lower).unwrap()];
                    let mut faces = Vec::with_capacity(simplices.len() * (deg[a] + 1));
                    for s in &simplices {
                        for i in 0..=deg[a] {
                            faces.push(lower_map[&p.face(s, a, i)]);
                        }
                    }
                    levels[li].faces[a] = faces;
                }
                let mut upper = deg;
                upper[a] += 1;
                if let Some(ui) = index_of(upper) {
                    let upper_map = &lookup[ui];
                    let mut degens = Vec::with_capacity(simplices.len() * (deg[a] + 1));
                    for s in &simplices {
                        for i in 0..=deg[a] {
                            degens.push(upper_map[&p.degeneracy(s, a, i)]);
                        }
                    }
                    levels[li].degens[a] = degens;
                }
            }
        }
        Table { bounds, levels, lookup: Some(lookup), coskeletal: false }
    }

    /// Converts a bounded table into a presentation whose generators are
    /// the nondegenerate elements within the bounds. Returns, per level,
    /// the normal form of every element.
    pub fn to_presentation(&self) -> (Presentation<A>, Vec<Vec<Simplex<A>>>) {
        let mut order: Vec<usize> = (0..self.levels.len()).collect();
        order.sort_by_key(|&li| {
            let d = self.levels[li].degree;
            (d.iter().sum::<usize>(), d)
        });
        let mut gen_of: Vec<Vec<u32>> = self.levels.iter().map(|l| vec![NONE; l.count]).collect();
        let mut gens: Vec<Generator<A>> = Vec::new();
        let mut forms: Vec<Vec<Simplex<A>>> =
            self.levels.iter().map(|l| Vec::with_capacity(l.count)).collect();
        let mut decomp: Vec<Vec<([Surjection; A], usize, u32)>> = vec![Vec::new(); self.levels.len()];
        for &li in &order {
            let l = &self.levels[li];
            for x in 0..l.count as u32 {
                let (degen, core_deg, core) = self.decompose(l.degree, x);
                decomp[li].push((degen, self.index(core_deg).unwrap(), core));
            }
            for x in 0..l.count as u32 {
                let (_, ci, core) = decomp[li][x as usize];
                if ci == li && core == x {
                    gen_of[li][x as usize] = gens.len() as u32;
                    gens.push(Generator {
                        degree: l.degree,
                        faces: std::array::from_fn(|_| Vec::new()),
                        label: format!("{}#{}", fmt_degree(l.degree), x),
                    });
                }
            }
        }
        for li in 0..self.levels.len() {
            for x in 0..self.levels[li].count {
                let (degen, ci, core) = decomp[li][x];
                forms[li].push(Simplex { gen: gen_of[ci][core as usize], degen });
            }
        }
        for li in 0..self.levels.len() {
            let l = &self.levels[li];
            for x in 0..l.count {
                let g = gen_of[li][x];
                if g == NONE {
                    continue;
                }
                for a in 0..A {
                    if l.degree[a] == 0 {
                        continue;
                    }
                    let mut lower = l.degree;
                    lower[a] -= 1;
                    let lo = self.index(lower).unwrap();
                    gens[g as usize].faces[a] = (0..=l.degree[a])
                        .map(|i| forms[lo][l.faces[a][x * (l.degree[a] + 1) + i] as usize])
                        .collect();
                }
            }
        }
        (Presentation::new_unchecked(gens), forms)
    }

    /// Marked generators of [`Table::to_presentation`], as a flag per generator.
    pub fn marked_generators(&self, p: &Presentation<A>, forms: &[Vec<Simplex<A>>]) -> Vec<bool> {
        let mut out = vec![false; p.len()];
        for (li, l) in self.levels.iter().enumerate() {
            if let Some(m) = &l.marked {
                for (x, &mk) in m.iter().enumerate() {
                    let s = forms[li][x];
                    if mk && s.is_nondegenerate() {
                        out[s.gen as usize] = true;
                    }
                }
            }
        }
        out
    }

    /// Exhaustive check of the simplicial identities within the bounds.
    pub fn check_identities(&self) -> Result<()> {
        let err = |what: String| Err(Error::Presentation(what));
        for l in &self.levels {
            let deg = l.degree;
            for x in 0..l.count as u32 {
                for a in 0..A {
                    let n = deg[a];
                    // d_i d_j = d_{j-1} d_i
                    if n >= 2 {
                        let mut lower = deg;
                        lower[a] -= 1;
                        for j in 0..=n {
                            for i in 0..j {
                                let lhs = self.face(lower, a, i, self.face(deg, a, j, x));
                                let rhs = self.face(lower, a, j - 1, self.face(deg, a, i, x));
                                if lhs != rhs {
                                    return err(format!("d{i}d{j} identity fails at {deg:?}/{x}"));
                                }
                            }
                        }
                    }
                    let mut upper = deg;
                    upper[a] += 1;
                    if self.index(upper).is_none() {
                        continue;
                    }
                    for i in 0..=n {
                        let s = self.degen(deg, a, i, x).unwrap();
                        // d_i s_i = d_{i+1} s_i = id
                        if self.face(upper, a, i, s) != x || self.face(upper, a, i + 1, s) != x {
                            return err(format!("d s = id fails at {deg:?}/{x}"));
                        }
                        for j in 0..=n + 1 {
                            let lhs = self.face(upper, a, j, s);
                            if j < i && n >= 1 {
                                let mut lower = deg;
                                lower[a] -= 1;
                                let rhs = self.degen(lower, a, i - 1, self.face(deg, a, j, x)).unwrap();
                                if lhs != rhs {
                                    return err(format!("d{j}s{i} identity fails at {deg:?}/{x}"));
                                }
                            } else if j > i + 1 {
                                let mut lower = deg;
                                lower[a] -= 1;
                                let rhs = self.degen(lower, a, i, self.face(deg, a, j - 1, x)).unwrap();
                                if lhs != rhs {
                                    return err(format!("d{j}s{i} identity fails at {deg:?}/{x}"));
                                }
                            }
                        }
                        // s_i s_j = s_{j+1} s_i for i <= j
                        let mut upper2 = upper;
                        upper2[a] += 1;
                        if self.index(upper2).is_some() {
                            for j in i..=n {
                                let lhs = self.degen(upper, a, i, self.degen(deg, a, j, x).unwrap()).unwrap();
                                let rhs = self.degen(upper, a, j + 1, s).unwrap();
                                if lhs != rhs {
                                    return err(format!("s{i}s{j} identity fails at {deg:?}/{x}"));
                                }
                            }
                        }
                    }
                    // operators in different directions commute
                    for b in 0..A {
                        if b == a || n == 0 {
                            continue;
                        }
                        let mut lower = deg;
                        lower[a] -= 1;
                        for i in 0..=n {
                            for j in 0..=deg[b] {
                                if deg[b] > 0 {
                                    let mut lb = deg;
                                    lb[b] -= 1;
                                    let lhs = self.face(lower, b, j, self.face(deg, a, i, x));
                                    let rhs = self.face(lb, a, i, self.face(deg, b, j, x));
                                    if lhs != rhs {
                                        return err(format!("mixed faces fail at {deg:?}/{x}"));
                                    }
                                }
                                let mut ub = deg;
                                ub[b] += 1;
                                if self.index(ub).is_some() {
                                    let lhs = self.degen(lower, b, j, self.face(deg, a, i, x)).unwrap();
                                    let up = self.degen(deg, b, j, x).unwrap();
                                    let rhs = self.face(ub, a, i, up);
                                    if lhs != rhs {
                                        return err(format!("face/degeneracy commutation fails at {deg:?}/{x}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that every marked set contains the degeneracies from degree
    /// 0 and is closed under the operators of the other directions.
    pub fn check_marking(&self) -> Result<()> {
        for l in &self.levels {
            let Some(m) = &l.marked else { continue };
            let deg = l.degree;
            let mut below = deg;
            below[0] = 0;
            for y in 0..self.count(below).unwrap() as u32 {
                let s = self.degen(below, 0, 0, y).unwrap();
                if !m[s as usize] {
                    return Err(Error::Marking(format!("degenerate element {s} at {deg:?} is unmarked")));
                }
            }
            for x in 0..l.count as u32 {
                if !m[x as usize] {
                    continue;
                }
                for b in 1..A {
                    for i in 0..=deg[b] {
                        if deg[b] > 0 {
                            let mut lb = deg;
                            lb[b] -= 1;
                            if !self.is_marked(lb, self.face(deg, b, i, x)) {
                                return Err(Error::Marking(format!("marking not closed under faces at {deg:?}")));
                            }
                        }
                        let mut ub = deg;
                        ub[b] += 1;
                        if let Some(s) = self.degen(deg, b, i, x) {
                            if !self.is_marked(ub, s) {
                                return Err(Error::Marking(format!(
                                    "marking not closed under degeneracies at {deg:?}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl<const A: usize> Table<A> {
    /// The sub-table on `keep` (per level), which must be closed under all
    /// faces and degeneracies. Normal forms are not carried over.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> Result<Table<A>> {
        let remap: Vec<Vec<u32>> = keep
            .iter()
            .map(|k| {
                let mut next = 0u32;
                k.iter()
                    .map(|&b| {
                        if b {
                            next += 1;
                            next - 1
                        } else {
                            NONE
                        }
                    })
                    .collect()
            })
            .collect();
        let mut levels = Vec::with_capacity(self.levels.len());
        for (li, l) in self.levels.iter().enumerate() {
            let kept: Vec<usize> = (0..l.count).filter(|&x| keep[li][x]).collect();
            let mut level = Level::new(l.degree, kept.len());
            for a in 0..A {
                let stride = l.degree[a] + 1;
                if !l.faces[a].is_empty() {
                    let mut lower = l.degree;
                    lower[a] -= 1;
                    let lo = self.index(lower).unwrap();
                    let mut faces = Vec::with_capacity(kept.len() * stride);
                    for &x in &kept {
                        for i in 0..stride {
                            let v = remap[lo][l.faces[a][x * stride + i] as usize];
                            if v == NONE {
                                return Err(Error::Presentation("subset is not closed under faces".into()));
                            }
                            faces.push(v);
                        }
                    }
                    level.faces[a] = faces;
                }
                if !l.degens[a].is_empty() {
                    let mut upper = l.degree;
                    upper[a] += 1;
                    let up = self.index(upper).unwrap();
                    let mut degens = Vec::with_capacity(kept.len() * stride);
                    for &x in &kept {
                        for i in 0..stride {
                            let v = remap[up][l.degens[a][x * stride + i] as usize];
                            if v == NONE {
                                return Err(Error::Presentation("subset is not closed under degeneracies".into()));
                            }
                            degens.push(v);
                        }
                    }
                    level.degens[a] = degens;
                }
            }
            level.marked = l.marked.as_ref().map(|m| kept.iter().map(|&x| m[x]).collect());
            levels.push(level);
        }
        let mut out = Table::from_levels(self.bounds, levels);
        out.coskeletal = false;
        Ok(out)
    }

    /// Every element of the table, level by level, as `(level, count)`.
    pub fn counts(&self) -> Vec<([usize; A], usize)> {
        self.levels.iter().map(|l| (l.degree, l.count)).collect()
    }
}

/// A map of tables, given per level of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMap<const A: usize> {
    pub levels: Vec<Vec<u32>>,
}

impl<const A: usize> TableMap<A> {
    /// Checks that the map commutes with faces and degeneracies within the
    /// source bounds and preserves marked elements.
    pub fn verify(&self, src: &Table<A>, tgt: &Table<A>) -> Result<()> {
        let err = |m: String| Err(Error::Map(m));
        if self.levels.len() != src.levels.len() {
            return err("one component per source level required".into());
        }
        for (li, l) in src.levels.iter().enumerate() {
            let deg = l.degree;
            let Some(tl) = tgt.level(deg) else {
                return err(format!("target does not reach level {deg:?}"));
            };
            if self.levels[li].len() != l.count || self.levels[li].iter().any(|&v| v as usize >= tl.count) {
                return err(format!("component at {deg:?} has the wrong shape"));
            }
            for x in 0..l.count as u32 {
                let fx = self.levels[li][x as usize];
                for a in 0..A {
                    if deg[a] > 0 {
                        let mut lower = deg;
                        lower[a] -= 1;
                        let lo = src.index(lower).unwrap();
                        for i in 0..=deg[a] {
                            if self.levels[lo][src.face(deg, a, i, x) as usize] != tgt.face(deg, a, i, fx) {
                                return err(format!("map does not commute with d{i} at {deg:?}"));
                            }
                        }
                    }
                    let mut upper = deg;
                    upper[a] += 1;
                    if let Some(up) = src.index(upper) {
                        for i in 0..=deg[a] {
                            let s = src.degen(deg, a, i, x).unwrap();
                            if Some(self.levels[up][s as usize]) != tgt.degen(deg, a, i, fx) {
                                return err(format!("map does not commute with s{i} at {deg:?}"));
                            }
                        }
                    }
                }
                if src.is_marked(deg, x) && tl.marked.is_some() && !tgt.is_marked(deg, fx) {
                    return err(format!("marked element at {deg:?} goes to an unmarked one"));
                }
            }
        }
        Ok(())
    }

    /// Bijective on every level, with marking reflected as well as preserved.
    pub fn is_isomorphism(&self, src: &Table<A>, tgt: &Table<A>) -> bool {
        src.levels.iter().enumerate().all(|(li, l)| {
            let Some(tl) = tgt.level(l.degree) else { return false };
            if tl.count != l.count {
                return false;
            }
            let mut seen = vec![false; tl.count];
            for (x, &v) in self.levels[li].iter().enumerate() {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return false;
                }
                if src.is_marked(l.degree, x as u32) != tgt.is_marked(l.degree, v) {
                    return false;
                }
            }
            true
        })
    }

    /// The identity map, when both tables have the same shape.
    pub fn identity(t: &Table<A>) -> Self {
        TableMap { levels: t.levels.iter().map(|l| (0..l.count as u32).collect()).collect() }
    }

    pub fn compose(&self, after: &TableMap<A>) -> TableMap<A> {
        TableMap {
            levels: self
                .levels
                .iter()
                .zip(&after.levels)
                .map(|(f, g)| f.iter().map(|&v| g[v as usize]).collect())
                .collect(),
        }
    }
}

pub(crate) fn fmt_degree<const A: usize>(d: [usize; A]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

fn for_each_product<const A: usize>(choices: &[Vec<Surjection>], mut f: impl FnMut([Surjection; A])) {
    let mut idx = [0usize; A];
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    loop {
        f(std::array::from_fn(|a| choices[a][idx[a]]));
        let mut a = A;
        loop {
            if a == 0 {
                return;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < choices[a].len() {
                break;
            }
            idx[a] = 0;
        }
    }
}

//! Finite simplicial sets: standard shapes, products, pushouts, skeleta
//! and exhaustive map enumeration.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ops::{Surjection, MAX_DIM};
use crate::presentation::{gen1, simplex1, Generator, Presentation, Simplex};
use crate::search::MapSearch;
use crate::table::Table;

pub type SimplicialSet = Presentation<1>;
pub type Simplex1 = Simplex<1>;

/// Shape descriptors accepted by [`make_shape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
    JTruncated(usize),
}

pub fn make_shape(shape: Shape) -> Result<SimplicialSet> {
    match shape {
        Shape::Simplex(n) => {
            check_dim(n)?;
            Ok(simplex(n))
        }
        Shape::Boundary(n) => {
            check_dim(n)?;
            Ok(boundary(n))
        }
        Shape::Horn(n, k) => {
            check_dim(n)?;
            if n == 0 || k > n {
                return Err(Error::Parameter(format!("horn({n},{k}) needs n >= 1 and 0 <= k <= n")));
            }
            Ok(horn(n, k))
        }
        Shape::JTruncated(d) => {
            check_dim(d)?;
            Ok(j_truncated(d))
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::Parameter(format!("dimension {n} exceeds {MAX_DIM}")));
    }
    Ok(())
}

/// Nerve of a finite poset given by its order relation; generators are the
/// strictly increasing chains. Also returns the chain lookup.
pub fn poset_nerve(
    n_elems: usize,
    le: impl Fn(usize, usize) -> bool,
    label: impl Fn(usize) -> String,
) -> (SimplicialSet, HashMap<Vec<u32>, u32>) {
    let mut chains: Vec<Vec<u32>> = (0..n_elems as u32).map(|v| vec![v]).collect();
    let mut frontier = chains.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let last = *c.last().unwrap() as usize;
            for v in 0..n_elems {
                if v != last && le(last, v) {
                    let mut d = c.clone();
                    d.push(v as u32);
                    next.push(d);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }
    chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let index: HashMap<Vec<u32>, u32> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let gens = chains
        .iter()
        .map(|c| {
            let dim = c.len() - 1;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        simplex1(index[&f], Surjection::identity(dim - 1))
                    })
                    .collect()
            };
            let lbl: Vec<String> = c.iter().map(|&v| label(v as usize)).collect();
            gen1(dim, faces, lbl.join(""))
        })
        .collect();
    (Presentation::new_unchecked(gens), index)
}

pub fn simplex(n: usize) -> SimplicialSet {
    poset_nerve(n + 1, |a, b| a <= b, vertex_label).0
}

fn vertex_label(v: usize) -> String {
    if v < 10 {
        v.to_string()
    } else {
        format!("({v})")
    }
}

/// The map `Δᵖ -> Δⁿ` of a monotone map `[p] -> [n]` given by its values.
pub fn simplex_operator(values: &[u8], n: usize) -> Result<SimplicialMap> {
    let theta = crate::ops::Monotone::new(values, n)
        .ok_or_else(|| Error::Parameter(format!("{values:?} is not a monotone map into [{n}]")))?;
    let p = theta.source();
    let (src, src_index) = poset_nerve(p + 1, |a, b| a <= b, vertex_label);
    let (tgt, tgt_index) = poset_nerve(n + 1, |a, b| a <= b, vertex_label);
    let mut chains = vec![Vec::new(); src.len()];
    for (c, &g) in &src_index {
        chains[g as usize] = c.clone();
    }
    let images = chains
        .iter()
        .map(|c| {
            let imgs: Vec<u32> = c.iter().map(|&v| theta.values()[v as usize] as u32).collect();
            let mut distinct = imgs.clone();
            distinct.dedup();
            let pos: Vec<u8> = imgs.iter().map(|v| distinct.iter().position(|d| d == v).unwrap() as u8).collect();
            simplex1(tgt_index[&distinct], Surjection::from_values(&pos).unwrap())
        })
        .collect();
    Ok(SimplicialMap { source: Arc::new(src), target: Arc::new(tgt), images })
}

/// `∂Δⁿ`: every proper face. `∂Δ⁰` is empty.
pub fn boundary(n: usize) -> SimplicialSet {
    let (full, _) = poset_nerve(n + 1, |a, b| a <= b, vertex_label);
    let flags: Vec<bool> = full.generators().iter().map(|g| g.degree[0] < n).collect();
    full.restrict(&flags).unwrap().0
}

/// `Λⁿ_k`: the union of the faces `d_i Δⁿ` for `i != k`.
pub fn horn(n: usize, k: usize) -> SimplicialSet {
    let k = k as u32;
    let n32 = n as u32;
    let (full, _) = poset_nerve(n + 1, |a, b| a <= b, vertex_label);
    let flags: Vec<bool> = (0..full.len() as u32)
        .map(|g| {
            let verts = full_vertices(&full, g);
            // contained in some face d_i with i != k: misses a vertex other than k
            (0..=n32).any(|i| i != k && !verts.contains(&i))
        })
        .collect();
    full.restrict(&flags).unwrap().0
}

fn full_vertices(p: &SimplicialSet, g: u32) -> Vec<u32> {
    let x = Simplex::generator(g, p.degree(g));
    (0..=p.degree(g)[0]).map(|i| p.vertex(&x, [i])).collect()
}

/// `sk_d J`, where `J` is the nerve of the free-living isomorphism.
/// Generators in dimension `n` are the alternating words in the objects
/// `0, 1` of length `n + 1`.
pub fn j_truncated(d: usize) -> SimplicialSet {
    let word = |start: u32, n: usize| -> Vec<u32> { (0..=n as u32).map(|i| (start + i) % 2).collect() };
    let id = |word: &[u32]| -> u32 { 2 * (word.len() as u32 - 1) + word[0] };
    let mut gens = Vec::new();
    for n in 0..=d {
        for start in 0..2 {
            let w = word(start, n);
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| normalize_word(&w, i, &id)).collect()
            };
            let lbl: String = w.iter().map(|v| v.to_string()).collect();
            gens.push(gen1(n, faces, lbl));
        }
    }
    Presentation::new_unchecked(gens)
}

/// Face `d_i` of an alternating word, collapsing the repeated letter.
fn normalize_word(w: &[u32], i: usize, id: &impl Fn(&[u32]) -> u32) -> Simplex1 {
    let mut f = w.to_vec();
    f.remove(i);
    let mut values = Vec::with_capacity(f.len());
    let mut reduced: Vec<u32> = Vec::new();
    for &v in &f {
        if reduced.last() != Some(&v) {
            reduced.push(v);
        }
        values.push((reduced.len() - 1) as u8);
    }
    simplex1(id(&reduced), Surjection::from_values(&values).unwrap())
}

/// Cartesian product, with generators the nondegenerate pairs
/// `(σ^*x, τ^*y)` of shuffle type (no common degeneracy).
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    Product::new(x, y).presentation
}

/// A product together with its pair lookup, used to push maps through.
pub struct Product {
    pub presentation: SimplicialSet,
    index: HashMap<(u32, Surjection, u32, Surjection), u32>,
    /// Per generator: the two components in normal form.
    pub components: Vec<(Simplex1, Simplex1)>,
}

impl Product {
    pub fn new(x: &SimplicialSet, y: &SimplicialSet) -> Self {
        let mut keys: Vec<(usize, u32, Surjection, u32, Surjection)> = Vec::new();
        for (gx, a) in x.generators().iter().enumerate() {
            for (gy, b) in y.generators().iter().enumerate() {
                let (k, l) = (a.degree[0], b.degree[0]);
                for n in k.max(l)..=(k + l) {
                    for s in Surjection::all(n, k) {
                        for t in Surjection::all(n, l) {
                            if (s.steps() | t.steps()).count_ones() as usize == n {
                                keys.push((n, gx as u32, s, gy as u32, t));
                            }
                        }
                    }
                }
            }
        }
        keys.sort();
        let index: HashMap<(u32, Surjection, u32, Surjection), u32> =
            keys.iter().enumerate().map(|(i, &(_, gx, s, gy, t))| ((gx, s, gy, t), i as u32)).collect();
        let mut gens = Vec::with_capacity(keys.len());
        let mut components = Vec::with_capacity(keys.len());
        for &(n, gx, s, gy, t) in &keys {
            let sx = simplex1(gx, s);
            let sy = simplex1(gy, t);
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| normalize_pair(&index, x.face(&sx, 0, i), y.face(&sy, 0, i))).collect()
            };
            let label = format!("({},{})", show(x, &sx), show(y, &sy));
            gens.push(gen1(n, faces, label));
            components.push((sx, sy));
        }
        Product { presentation: Presentation::new_unchecked(gens), index, components }
    }

    /// `f × g` from the product `src` into this one.
    pub fn map(&self, src: &Product, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let images = src.components.iter().map(|(a, b)| self.pair(f.apply(a), g.apply(b))).collect();
        SimplicialMap {
            source: Arc::new(src.presentation.clone()),
            target: Arc::new(self.presentation.clone()),
            images,
        }
    }

    /// Normal form of the pair `(a, b)` (equal dimensions).
    pub fn pair(&self, a: Simplex1, b: Simplex1) -> Simplex1 {
        normalize_pair(&self.index, a, b)
    }
}

fn show(p: &SimplicialSet, s: &Simplex1) -> String {
    let g = &p.generator(s.gen).label;
    if s.is_nondegenerate() {
        g.clone()
    } else {
        format!("{g}<{}>", s.degen[0])
    }
}

fn normalize_pair(index: &HashMap<(u32, Surjection, u32, Surjection), u32>, a: Simplex1, b: Simplex1) -> Simplex1 {
    let (s, t) = (a.degen[0], b.degen[0]);
    let n = s.source();
    let union = s.steps() | t.steps();
    let rho = Surjection::from_steps(n, union);
    let m = rho.target();
    // representatives: first position of each fibre of rho
    let sec = rho.section().values();
    let sv = s.values();
    let tv = t.values();
    let s2: Vec<u8> = (0..=m).map(|r| sv[sec[r] as usize]).collect();
    let t2: Vec<u8> = (0..=m).map(|r| tv[sec[r] as usize]).collect();
    let s2 = Surjection::from_values(&s2).unwrap();
    let t2 = Surjection::from_values(&t2).unwrap();
    let g = index[&(a.gen, s2, b.gen, t2)];
    simplex1(g, rho)
}

/// A map of simplicial sets, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    pub images: Vec<Simplex1>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<Simplex1>) -> Result<Self> {
        let m = SimplicialMap { source, target, images };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..x.len() as u32).map(|g| Simplex::generator(g, x.degree(g))).collect();
        SimplicialMap { source: x.clone(), target: x, images }
    }

    /// Checks dimensions and that faces commute on every generator.
    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.len() {
            return Err(Error::Map("one image per source generator required".into()));
        }
        for (g, img) in self.images.iter().enumerate() {
            let gen = self.source.generator(g as u32);
            if img.gen as usize >= self.target.len()
                || img.degree() != gen.degree
                || img.core_degree() != self.target.degree(img.gen)
            {
                return Err(Error::Map(format!("image of generator {g} has the wrong shape")));
            }
            for (i, f) in gen.faces[0].iter().enumerate() {
                if self.target.face(img, 0, i) != self.apply(f) {
                    return Err(Error::Map(format!("face {i} of generator {g} does not commute")));
                }
            }
        }
        Ok(())
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, x: &Simplex1) -> Simplex1 {
        let img = self.images[x.gen as usize];
        simplex1(img.gen, img.degen[0].after(x.degen[0]))
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &after.source) && *self.target != *after.source {
            return Err(Error::Map("maps are not composable".into()));
        }
        let images = self.images.iter().map(|x| after.apply(x)).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: after.target.clone(), images })
    }

    /// Injective on simplices: generators go to distinct generators.
    pub fn is_monomorphism(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|s| s.is_nondegenerate() && seen.insert(s.gen))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism() && self.source.len() == self.target.len()
    }
}

/// Tabulates `y` high enough to receive maps from `x`.
pub fn target_table(x: &SimplicialSet, y: &SimplicialSet, marked: Option<&[bool]>) -> Table<1> {
    Table::tabulate(y, [x.max_degree()[0].max(y.max_degree()[0])], marked)
}

/// Every simplicial map `x -> y`, in lexicographic order of generator images.
pub fn enumerate_maps(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    let table = target_table(x, y, None);
    let raw = MapSearch::new(x, &table).collect().expect("table covers the source");
    raw.into_iter().map(|imgs| images_to_map(x, y, &table, &imgs)).collect()
}

pub fn count_maps(x: &SimplicialSet, y: &SimplicialSet) -> u64 {
    let table = target_table(x, y, None);
    MapSearch::new(x, &table).count().expect("table covers the source")
}

pub(crate) fn images_to_map(
    x: &Arc<SimplicialSet>,
    y: &Arc<SimplicialSet>,
    table: &Table<1>,
    imgs: &[u32],
) -> SimplicialMap {
    let images = imgs
        .iter()
        .enumerate()
        .map(|(g, &v)| table.simplex(x.degree(g as u32), v).unwrap())
        .collect();
    SimplicialMap { source: x.clone(), target: y.clone(), images }
}

/// `sk_p X` with its inclusion into `X`.
pub fn skeleton(x: &Arc<SimplicialSet>, p: usize) -> (Arc<SimplicialSet>, SimplicialMap) {
    let keep: Vec<bool> = x.generators().iter().map(|g| g.degree[0] <= p).collect();
    let (sub, _) = x.restrict(&keep).expect("skeleta are face-closed");
    let sub = Arc::new(sub);
    let inc = inclusion_by_restriction(&sub, x, &keep);
    (sub, inc)
}

fn inclusion_by_restriction(sub: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, keep: &[bool]) -> SimplicialMap {
    let images = keep
        .iter()
        .enumerate()
        .filter(|(_, &k)| k)
        .map(|(g, _)| Simplex::generator(g as u32, x.degree(g as u32)))
        .collect();
    SimplicialMap { source: sub.clone(), target: x.clone(), images }
}

/// The inclusion of a face-closed set of generators.
pub fn subobject(x: &Arc<SimplicialSet>, keep: &[bool]) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    let (sub, _) = x.restrict(keep)?;
    let sub = Arc::new(sub);
    let inc = inclusion_by_restriction(&sub, x, keep);
    Ok((sub, inc))
}

/// Finds the inclusion `a -> x` matching generator labels, if every label of
/// `a` occurs in `x` with compatible faces.
pub fn inclusion_by_labels(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
    if !x.labels_unique() {
        return Err(Error::Map("target labels are not unique".into()));
    }
    let images = a
        .generators()
        .iter()
        .map(|g| {
            x.find_label(&g.label)
                .map(|t| Simplex::generator(t, x.degree(t)))
                .ok_or_else(|| Error::Map(format!("label {} not found in target", g.label)))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = SimplicialMap::new(a.clone(), x.clone(), images)?;
    if !m.is_monomorphism() {
        return Err(Error::Map("label matching is not injective".into()));
    }
    Ok(m)
}

/// Pushout of `f : A -> X` and `g : A -> B`, with the structure maps
/// `X -> P` and `B -> P`.
pub struct Pushout {
    pub object: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if *f.source != *g.source {
        return Err(Error::Map("pushout legs must share their source".into()));
    }
    let a = &f.source;
    let (xs, bs) = (&f.target, &g.target);
    let top = xs.max_degree()[0].max(bs.max_degree()[0]).max(a.max_degree()[0]);
    let tx = Table::tabulate(xs, [top], None);
    let tb = Table::tabulate(bs, [top], None);
    let ta = Table::tabulate(a, [top], None);
    // level-wise disjoint union X ⊔ B, quotiented by f(a) ~ g(a)
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut counts = Vec::new();
    for n in 0..=top {
        let nx = tx.count([n]).unwrap();
        let nb = tb.count([n]).unwrap();
        let mut uf = UnionFind::new(nx + nb);
        let la = ta.level([n]).unwrap();
        for e in 0..la.count() as u32 {
            let s = ta.simplex([n], e).unwrap();
            let fx = tx.lookup(&f.apply(&s)).unwrap();
            let gb = tb.lookup(&g.apply(&s)).unwrap();
            uf.union(fx as usize, nx + gb as usize);
        }
        let (cls, count) = uf.canonical_classes();
        classes.push(cls);
        counts.push(count);
    }
    let mut levels = Vec::new();
    for n in 0..=top {
        let nx = tx.count([n]).unwrap();
        let mut level = crate::table::Level::new([n], counts[n]);
        let rep = representatives(&classes[n], counts[n]);
        if n > 0 {
            let mut faces = Vec::with_capacity(counts[n] * (n + 1));
            for &r in &rep {
                for i in 0..=n {
                    let v = if r < nx {
                        tx.face([n], 0, i, r as u32) as usize
                    } else {
                        tx.count([n - 1]).unwrap() + tb.face([n], 0, i, (r - nx) as u32) as usize
                    };
                    faces.push(classes[n - 1][v]);
                }
            }
            level.faces[0] = faces;
        }
        if n < top {
            let mut degens = Vec::with_capacity(counts[n] * (n + 1));
            for &r in &rep {
                for i in 0..=n {
                    let v = if r < nx {
                        tx.degen([n], 0, i, r as u32).unwrap() as usize
                    } else {
                        tx.count([n + 1]).unwrap() + tb.degen([n], 0, i, (r - nx) as u32).unwrap() as usize
                    };
                    degens.push(classes[n + 1][v]);
                }
            }
            level.degens[0] = degens;
        }
        levels.push(level);
    }
    let table = Table::from_levels([top], levels);
    let (object, forms) = table.to_presentation();
    let object = Arc::new(object);
    let push = |src: &Arc<SimplicialSet>, t: &Table<1>, offset: bool| -> SimplicialMap {
        let images = (0..src.len() as u32)
            .map(|gi| {
                let n = src.degree(gi)[0];
                let e = t.lookup(&Simplex::generator(gi, [n])).unwrap() as usize;
                let v = if offset { tx.count([n]).unwrap() + e } else { e };
                forms[n][classes[n][v] as usize]
            })
            .collect();
        SimplicialMap { source: src.clone(), target: object.clone(), images }
    };
    let left = push(xs, &tx, false);
    let right = push(bs, &tb, true);
    Ok(Pushout { object: object.clone(), left, right })
}

fn representatives(classes: &[u32], count: usize) -> Vec<usize> {
    let mut rep = vec![usize::MAX; count];
    for (e, &c) in classes.iter().enumerate() {
        if rep[c as usize] == usize::MAX {
            rep[c as usize] = e;
        }
    }
    rep
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class ids numbered by first occurrence.
    pub(crate) fn canonical_classes(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut id = vec![u32::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == u32::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next as usize)
    }
}

/// Nondegenerate simplex counts by dimension.
pub fn nondegenerate_counts(x: &SimplicialSet) -> Vec<usize> {
    let top = x.generators().iter().map(|g| g.degree[0] + 1).max().unwrap_or(0);
    let mut out = vec![0; top];
    for g in x.generators() {
        out[g.degree[0]] += 1;
    }
    out
}

/// Number of `n`-simplices (degenerate included) for `n = 0..=top`.
pub fn simplex_counts(x: &SimplicialSet, top: usize) -> Vec<usize> {
    let t = Table::tabulate(x, [top], None);
    (0..=top).map(|n| t.count([n]).unwrap()).collect()
}

/// Isomorphism search by injective enumeration on generators.
pub fn find_isomorphism(
    x: &Arc<SimplicialSet>,
    y: &Arc<SimplicialSet>,
    budget: Option<u64>,
) -> Result<Option<SimplicialMap>> {
    if nondegenerate_counts(x) != nondegenerate_counts(y) {
        return Ok(None);
    }
    let table = target_table(x, y, None);
    let mut search = MapSearch::new(x, &table).injective();
    if let Some(b) = budget {
        search = search.budget(b);
    }
    Ok(search.first()?.map(|imgs| images_to_map(x, y, &table, &imgs)))
}

/// Generators of a presentation built by hand, for callers outside the crate.
pub fn from_generators(gens: Vec<Generator<1>>) -> Result<SimplicialSet> {
    Presentation::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    #[test]
    fn shape_counts() {
        assert_eq!(nondegenerate_counts(&simplex(2)), vec![3, 3, 1]);
        assert_eq!(nondegenerate_counts(&horn(2, 1)), vec![3, 2]);
        assert_eq!(nondegenerate_counts(&boundary(2)), vec![3, 3]);
        assert_eq!(nondegenerate_counts(&j_truncated(3)), vec![2, 2, 2, 2]);
        assert!(boundary(0).is_empty());
        assert!(make_shape(Shape::Horn(2, 5)).is_err());
        assert!(make_shape(Shape::Horn(0, 0)).is_err());
    }

    #[test]
    fn shapes_satisfy_identities() {
        for x in [simplex(3), boundary(3), horn(3, 1), j_truncated(4), product(&simplex(2), &simplex(1))] {
            x.check_identities().unwrap();
            Table::tabulate(&x, [x.max_degree()[0] + 1], None).check_identities().unwrap();
        }
    }

    #[test]
    fn product_counts() {
        assert_eq!(nondegenerate_counts(&product(&simplex(1), &simplex(1))), vec![4, 5, 2]);
        assert_eq!(*nondegenerate_counts(&product(&simplex(2), &simplex(1))).last().unwrap(), 3);
        let x = arc(horn(2, 0));
        let p = arc(product(&x, &simplex(0)));
        assert!(find_isomorphism(&x, &p, None).unwrap().is_some());
    }

    #[test]
    fn hom_counts() {
        let d1 = arc(simplex(1));
        let d2 = arc(simplex(2));
        assert_eq!(enumerate_maps(&d1, &d1).len(), 3);
        assert_eq!(enumerate_maps(&d2, &d1).len(), 4);
        assert_eq!(count_maps(&simplex(0), &j_truncated(2)), 2);
        assert_eq!(count_maps(&simplex(0), &boundary(0)), 0);
        assert_eq!(count_maps(&boundary(0), &boundary(0)), 1);
    }

    #[test]
    fn skeleta() {
        let d2 = arc(simplex(2));
        let (sk, inc) = skeleton(&d2, 1);
        assert!(find_isomorphism(&sk, &arc(boundary(2)), None).unwrap().is_some());
        assert!(inc.is_monomorphism());
        let (sk3, _) = skeleton(&arc(j_truncated(3)), 1);
        assert_eq!(nondegenerate_counts(&sk3), vec![2, 2]);
        let (same, _) = skeleton(&d2, 2);
        assert_eq!(*same, *d2);
    }

    #[test]
    fn pushouts() {
        let pt = arc(simplex(0));
        let d1 = arc(simplex(1));
        let v0 = SimplicialMap::new(pt.clone(), d1.clone(), vec![simplex1(0, Surjection::identity(0))]).unwrap();
        let wedge = pushout(&v0, &v0).unwrap();
        assert_eq!(nondegenerate_counts(&wedge.object), vec![3, 2]);
        wedge.left.validate().unwrap();
        wedge.right.validate().unwrap();

        let h = arc(horn(2, 1));
        let d2 = arc(simplex(2));
        let inc = inclusion_by_labels(&h, &d2).unwrap();
        let glued = pushout(&inc, &inc).unwrap();
        assert_eq!(nondegenerate_counts(&glued.object), vec![3, 4, 2]);

        let id = SimplicialMap::identity(h.clone());
        let along_id = pushout(&id, &inc).unwrap();
        assert!(find_isomorphism(&along_id.object, &d2, None).unwrap().is_some());
    }
}

//! Finite categories given by explicit composition tables, their nerves,
//! cores and functor categories, and exact equivalence tests.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ops::Surjection;
use crate::presentation::{gen1, simplex1, Presentation};
use crate::sset::{Simplex1, SimplicialSet};
use crate::table::{Table, NONE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: u32,
    pub target: u32,
}

/// A finite category with a total composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<u32>,
    /// `comp[f * arrows + g] = g ∘ f` for `f: a -> b`, `g: b -> c`; NONE otherwise.
    comp: Vec<u32>,
}

impl FiniteCategory {
    /// Builds and validates a category from a full composition table.
    /// `composites` lists `(g, f, g∘f)` for every composable pair of
    /// non-identity arrows; identities compose implicitly.
    pub fn from_table(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<u32>,
        composites: &[(u32, u32, u32)],
    ) -> Result<Self> {
        let na = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::Category("one identity per object required".into()));
        }
        for (o, &i) in identities.iter().enumerate() {
            let a = arrows.get(i as usize).ok_or_else(|| Error::Category("identity index out of range".into()))?;
            if a.source as usize != o || a.target as usize != o {
                return Err(Error::Category(format!("identity of {} has the wrong endpoints", objects[o])));
            }
        }
        for a in &arrows {
            if a.source as usize >= objects.len() || a.target as usize >= objects.len() {
                return Err(Error::Category(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        let mut comp = vec![NONE; na * na];
        for f in 0..na {
            let (s, t) = (arrows[f].source, arrows[f].target);
            comp[identities[s as usize] as usize * na + f] = f as u32;
            comp[f * na + identities[t as usize] as usize] = f as u32;
        }
        for &(g, f, h) in composites {
            let (gi, fi, hi) = (g as usize, f as usize, h as usize);
            if gi >= na || fi >= na || hi >= na {
                return Err(Error::Category("composite refers to an unknown arrow".into()));
            }
            if arrows[fi].target != arrows[gi].source {
                return Err(Error::Category(format!(
                    "{} and {} are not composable",
                    arrows[gi].name, arrows[fi].name
                )));
            }
            if arrows[hi].source != arrows[fi].source || arrows[hi].target != arrows[gi].target {
                return Err(Error::Category(format!(
                    "composite {} of {} and {} has the wrong endpoints",
                    arrows[hi].name, arrows[gi].name, arrows[fi].name
                )));
            }
            let slot = &mut comp[fi * na + gi];
            if *slot != NONE && *slot != h {
                return Err(Error::Category(format!(
                    "conflicting composites for {} ∘ {}",
                    arrows[gi].name, arrows[fi].name
                )));
            }
            *slot = h;
        }
        let c = FiniteCategory { objects, arrows, identities, comp };
        c.validate()?;
        Ok(c)
    }

    /// Checks totality of composition, units and associativity.
    pub fn validate(&self) -> Result<()> {
        let na = self.arrows.len();
        for f in 0..na {
            for g in 0..na {
                let composable = self.arrows[f].target == self.arrows[g].source;
                let c = self.comp[f * na + g];
                if composable != (c != NONE) {
                    return Err(Error::Category(format!(
                        "composite {} ∘ {} is missing",
                        self.arrows[g].name, self.arrows[f].name
                    )));
                }
            }
        }
        for f in 0..na as u32 {
            for g in self.arrows_from(self.arrows[f as usize].target) {
                let gf = self.compose(g, f).unwrap();
                for h in self.arrows_from(self.arrows[g as usize].target) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g).unwrap(), f) {
                        return Err(Error::Category(format!(
                            "composition is not associative on {}, {}, {}",
                            self.arrows[f as usize].name,
                            self.arrows[g as usize].name,
                            self.arrows[h as usize].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset on `elements` generated by `relations` (pairs `a <= b`).
    pub fn poset(elements: Vec<String>, relations: &[(u32, u32)]) -> Result<Self> {
        let n = elements.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Category("relation refers to an unknown element".into()));
            }
            le[a as usize * n + b as usize] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(Error::Category(format!(
                        "relations force {} = {}; not a partial order",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Self::from_order(elements, |i, j| le[i * n + j]))
    }

    fn from_order(elements: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut arrows = Vec::new();
        let mut index = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    index[i * n + j] = arrows.len() as u32;
                    let name = if i == j {
                        format!("id_{}", elements[i])
                    } else {
                        format!("{}<{}", elements[i], elements[j])
                    };
                    arrows.push(Arrow { name, source: i as u32, target: j as u32 });
                }
            }
        }
        let identities = (0..n).map(|i| index[i * n + i]).collect();
        let na = arrows.len();
        let mut comp = vec![NONE; na * na];
        for f in 0..na {
            for g in 0..na {
                let (a, b) = (arrows[f].source as usize, arrows[f].target as usize);
                if arrows[g].source as usize == b {
                    comp[f * na + g] = index[a * n + arrows[g].target as usize];
                }
            }
        }
        FiniteCategory { objects: elements, arrows, identities, comp }
    }

    /// The chain `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        Self::from_order((0..=n).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    /// The indiscrete (chaotic) groupoid: exactly one arrow between any two objects.
    pub fn indiscrete(n_objects: usize) -> Self {
        let names: Vec<String> = (0..n_objects).map(|i| i.to_string()).collect();
        let n = n_objects;
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let name = if i == j { format!("id_{i}") } else { format!("{i}>{j}") };
                arrows.push(Arrow { name, source: i as u32, target: j as u32 });
            }
        }
        let identities = (0..n).map(|i| (i * n + i) as u32).collect();
        let na = n * n;
        let mut comp = vec![NONE; na * na];
        for f in 0..na {
            for g in 0..na {
                if f % n == g / n {
                    comp[f * na + g] = ((f / n) * n + g % n) as u32;
                }
            }
        }
        FiniteCategory { objects: names, arrows, identities, comp }
    }

    /// The discrete category on the given objects.
    pub fn discrete(objects: Vec<String>) -> Self {
        Self::from_order(objects, |i, j| i == j)
    }

    /// The free category on a finite acyclic graph; arrows are paths.
    pub fn free(objects: Vec<String>, edges: &[(String, u32, u32)]) -> Result<Self> {
        let n = objects.len();
        for (name, s, t) in edges {
            if *s as usize >= n || *t as usize >= n {
                return Err(Error::Category(format!("edge {name} has an unknown endpoint")));
            }
        }
        // cycle detection by Kahn's algorithm
        let mut indeg = vec![0usize; n];
        for (_, _, t) in edges {
            indeg[*t as usize] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for (_, s, t) in edges {
                if *s as usize == v {
                    indeg[*t as usize] -= 1;
                    if indeg[*t as usize] == 0 {
                        queue.push(*t as usize);
                    }
                }
            }
        }
        if seen < n {
            return Err(Error::Unsupported("free category on a graph with a cycle".into()));
        }
        // paths as edge-index sequences
        let mut paths: Vec<(u32, u32, Vec<usize>)> = (0..n as u32).map(|v| (v, v, Vec::new())).collect();
        let mut frontier: Vec<(u32, u32, Vec<usize>)> = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (s, t, p) in &frontier {
                for (ei, (_, es, et)) in edges.iter().enumerate() {
                    if es == t {
                        let mut q = p.clone();
                        q.push(ei);
                        next.push((*s, *et, q));
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Vec<usize>, u32> = paths
            .iter()
            .enumerate()
            .filter(|(_, (_, _, p))| !p.is_empty())
            .map(|(i, (_, _, p))| (p.clone(), i as u32))
            .collect();
        let arrows: Vec<Arrow> = paths
            .iter()
            .map(|(s, t, p)| {
                let name = if p.is_empty() {
                    format!("id_{}", objects[*s as usize])
                } else {
                    let names: Vec<&str> = p.iter().rev().map(|&e| edges[e].0.as_str()).collect();
                    names.join("∘")
                };
                Arrow { name, source: *s, target: *t }
            })
            .collect();
        let identities = (0..n as u32).collect();
        let na = arrows.len();
        let mut comp = vec![NONE; na * na];
        for f in 0..na {
            for g in 0..na {
                if paths[f].1 != paths[g].0 {
                    continue;
                }
                let (pf, pg) = (&paths[f].2, &paths[g].2);
                comp[f * na + g] = if pf.is_empty() {
                    g as u32
                } else if pg.is_empty() {
                    f as u32
                } else {
                    let mut q = pf.clone();
                    q.extend(pg);
                    index[&q]
                };
            }
        }
        Ok(FiniteCategory { objects, arrows, identities, comp })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(&self, object: u32) -> u32 {
        self.identities[object as usize]
    }

    pub fn is_identity(&self, arrow: u32) -> bool {
        let a = &self.arrows[arrow as usize];
        a.source == a.target && self.identities[a.source as usize] == arrow
    }

    pub fn source(&self, arrow: u32) -> u32 {
        self.arrows[arrow as usize].source
    }

    pub fn target(&self, arrow: u32) -> u32 {
        self.arrows[arrow as usize].target
    }

    pub fn find_object(&self, name: &str) -> Option<u32> {
        self.objects.iter().position(|o| o == name).map(|i| i as u32)
    }

    pub fn find_arrow(&self, name: &str) -> Option<u32> {
        self.arrows.iter().position(|a| a.name == name).map(|i| i as u32)
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: u32, f: u32) -> Option<u32> {
        let c = self.comp[f as usize * self.arrows.len() + g as usize];
        (c != NONE).then_some(c)
    }

    pub fn arrows_from(&self, object: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.arrows.len() as u32).filter(move |&a| self.arrows[a as usize].source == object)
    }

    pub fn hom(&self, a: u32, b: u32) -> Vec<u32> {
        (0..self.arrows.len() as u32)
            .filter(|&f| self.arrows[f as usize].source == a && self.arrows[f as usize].target == b)
            .collect()
    }

    pub fn inverse(&self, f: u32) -> Option<u32> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(a)) && self.compose(f, g) == Some(self.identity(b))
        })
    }

    pub fn is_isomorphism(&self, f: u32) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len() as u32).all(|f| self.is_isomorphism(f))
    }

    pub fn has_initial_object(&self) -> Option<u32> {
        (0..self.objects.len() as u32).find(|&a| (0..self.objects.len() as u32).all(|b| self.hom(a, b).len() == 1))
    }

    pub fn has_terminal_object(&self) -> Option<u32> {
        (0..self.objects.len() as u32).find(|&b| (0..self.objects.len() as u32).all(|a| self.hom(a, b).len() == 1))
    }

    /// Wide subcategory of isomorphisms.
    pub fn core(&self) -> FiniteCategory {
        let keep: Vec<u32> = (0..self.arrows.len() as u32).filter(|&f| self.is_isomorphism(f)).collect();
        self.wide_subcategory(&keep)
    }

    /// The wide subcategory on a composition-closed set of arrows containing
    /// the identities.
    pub fn wide_subcategory(&self, keep: &[u32]) -> FiniteCategory {
        let mut new_index = vec![NONE; self.arrows.len()];
        for (i, &f) in keep.iter().enumerate() {
            new_index[f as usize] = i as u32;
        }
        let arrows: Vec<Arrow> = keep.iter().map(|&f| self.arrows[f as usize].clone()).collect();
        let na = arrows.len();
        let mut comp = vec![NONE; na * na];
        for (i, &f) in keep.iter().enumerate() {
            for (j, &g) in keep.iter().enumerate() {
                if let Some(h) = self.compose(g, f) {
                    comp[i * na + j] = new_index[h as usize];
                }
            }
        }
        let identities = self.identities.iter().map(|&i| new_index[i as usize]).collect();
        FiniteCategory { objects: self.objects.clone(), arrows, identities, comp }
    }

    /// Composable `n`-chains (arrow sequences), identities included.
    pub fn chains(&self, n: usize) -> Vec<Vec<u32>> {
        if n == 0 {
            return Vec::new();
        }
        let mut out: Vec<Vec<u32>> = (0..self.arrows.len() as u32).map(|f| vec![f]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for c in &out {
                let t = self.target(*c.last().unwrap());
                for g in self.arrows_from(t) {
                    let mut d = c.clone();
                    d.push(g);
                    next.push(d);
                }
            }
            out = next;
        }
        out
    }
}

/// A category with a wide subcategory of weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    pub base: FiniteCategory,
    pub weak: Vec<bool>,
}

impl RelativeCategory {
    pub fn new(base: FiniteCategory, weak_arrows: &[u32]) -> Result<Self> {
        let mut weak = vec![false; base.arrow_count()];
        for &f in weak_arrows {
            *weak
                .get_mut(f as usize)
                .ok_or_else(|| Error::Category("weak arrow index out of range".into()))? = true;
        }
        for o in 0..base.object_count() as u32 {
            weak[base.identity(o) as usize] = true;
        }
        // close under composition
        loop {
            let mut grew = false;
            for f in 0..base.arrow_count() as u32 {
                for g in 0..base.arrow_count() as u32 {
                    if weak[f as usize] && weak[g as usize] {
                        if let Some(h) = base.compose(g, f) {
                            if !weak[h as usize] {
                                weak[h as usize] = true;
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(RelativeCategory { base, weak })
    }

    pub fn isos(base: FiniteCategory) -> Self {
        let weak = (0..base.arrow_count() as u32).map(|f| base.is_isomorphism(f)).collect();
        RelativeCategory { base, weak }
    }

    pub fn all(base: FiniteCategory) -> Self {
        let weak = vec![true; base.arrow_count()];
        RelativeCategory { base, weak }
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.base;
        for o in 0..c.object_count() as u32 {
            if !self.weak[c.identity(o) as usize] {
                return Err(Error::Category("weak arrows must contain identities".into()));
            }
        }
        for f in 0..c.arrow_count() as u32 {
            for g in 0..c.arrow_count() as u32 {
                if let Some(h) = c.compose(g, f) {
                    if self.weak[f as usize] && self.weak[g as usize] && !self.weak[h as usize] {
                        return Err(Error::Category("weak arrows are not closed under composition".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Fun([n], C)`: objects are composable `n`-chains (objects of `C` when
/// `n = 0`), arrows are natural transformations.
pub struct FunctorCategory {
    pub category: FiniteCategory,
    /// Object `i` as its vertex objects `F(0..=n)` and arrows `F(j-1 -> j)`.
    pub object_chains: Vec<(Vec<u32>, Vec<u32>)>,
    /// Components of each natural transformation.
    pub components: Vec<Vec<u32>>,
}

pub fn functor_category(n: usize, c: &FiniteCategory) -> FunctorCategory {
    let object_chains: Vec<(Vec<u32>, Vec<u32>)> = if n == 0 {
        (0..c.object_count() as u32).map(|o| (vec![o], Vec::new())).collect()
    } else {
        c.chains(n)
            .into_iter()
            .map(|ch| {
                let mut verts = vec![c.source(ch[0])];
                verts.extend(ch.iter().map(|&f| c.target(f)));
                (verts, ch)
            })
            .collect()
    };
    let name = |(verts, arrows): &(Vec<u32>, Vec<u32>)| -> String {
        if arrows.is_empty() {
            c.objects()[verts[0] as usize].clone()
        } else {
            let parts: Vec<&str> = arrows.iter().map(|&f| c.arrows()[f as usize].name.as_str()).collect();
            format!("[{}]", parts.join(","))
        }
    };
    let objects: Vec<String> = object_chains.iter().map(name).collect();
    let mut arrows = Vec::new();
    let mut components: Vec<Vec<u32>> = Vec::new();
    let mut identities = vec![NONE; object_chains.len()];
    for (fi, f) in object_chains.iter().enumerate() {
        for (gi, g) in object_chains.iter().enumerate() {
            // all component tuples, filtered by naturality
            let homs: Vec<Vec<u32>> = (0..=n).map(|i| c.hom(f.0[i], g.0[i])).collect();
            let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
            for (i, h) in homs.iter().enumerate() {
                let mut next = Vec::new();
                for t in &tuples {
                    for &a in h {
                        if i > 0 {
                            let lhs = c.compose(a, f.1[i - 1]);
                            let rhs = c.compose(g.1[i - 1], t[i - 1]);
                            if lhs != rhs {
                                continue;
                            }
                        }
                        let mut u = t.clone();
                        u.push(a);
                        next.push(u);
                    }
                }
                tuples = next;
            }
            for t in tuples {
                let is_id = fi == gi && t.iter().enumerate().all(|(i, &a)| a == c.identity(f.0[i]));
                if is_id {
                    identities[fi] = arrows.len() as u32;
                }
                let parts: Vec<&str> = t.iter().map(|&a| c.arrows()[a as usize].name.as_str()).collect();
                arrows.push(Arrow { name: format!("<{}>", parts.join(",")), source: fi as u32, target: gi as u32 });
                components.push(t);
            }
        }
    }
    let index: HashMap<(u32, u32, Vec<u32>), u32> = components
        .iter()
        .enumerate()
        .map(|(i, t)| ((arrows[i].source, arrows[i].target, t.clone()), i as u32))
        .collect();
    let na = arrows.len();
    let mut comp = vec![NONE; na * na];
    for f in 0..na {
        for g in 0..na {
            if arrows[f].target != arrows[g].source {
                continue;
            }
            let t: Vec<u32> = (0..=n).map(|i| c.compose(components[g][i], components[f][i]).unwrap()).collect();
            comp[f * na + g] = index[&(arrows[f].source, arrows[g].target, t)];
        }
    }
    let category = FiniteCategory { objects, arrows, identities, comp };
    FunctorCategory { category, object_chains, components }
}

/// A functor given explicitly on objects and arrows.
#[derive(Clone, Debug)]
pub struct Functor<'c> {
    pub source: &'c FiniteCategory,
    pub target: &'c FiniteCategory,
    pub on_objects: Vec<u32>,
    pub on_arrows: Vec<u32>,
}

impl Functor<'_> {
    pub fn validate(&self) -> Result<()> {
        let (c, d) = (self.source, self.target);
        if self.on_objects.len() != c.object_count() || self.on_arrows.len() != c.arrow_count() {
            return Err(Error::Map("functor data has the wrong size".into()));
        }
        for f in 0..c.arrow_count() as u32 {
            let img = self.on_arrows[f as usize];
            if img as usize >= d.arrow_count()
                || d.source(img) != self.on_objects[c.source(f) as usize]
                || d.target(img) != self.on_objects[c.target(f) as usize]
            {
                return Err(Error::Map(format!("arrow {} is sent to a mismatched arrow", c.arrows()[f as usize].name)));
            }
        }
        for o in 0..c.object_count() as u32 {
            if self.on_arrows[c.identity(o) as usize] != d.identity(self.on_objects[o as usize]) {
                return Err(Error::Map("functor does not preserve identities".into()));
            }
        }
        for f in 0..c.arrow_count() as u32 {
            for g in c.arrows_from(c.target(f)) {
                let gf = c.compose(g, f).unwrap();
                let lhs = self.on_arrows[gf as usize];
                let rhs = d.compose(self.on_arrows[g as usize], self.on_arrows[f as usize]);
                if Some(lhs) != rhs {
                    return Err(Error::Map("functor does not preserve composition".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (self.source, self.target);
        for a in 0..c.object_count() as u32 {
            for b in 0..c.object_count() as u32 {
                let src: BTreeSet<u32> = c.hom(a, b).iter().map(|&f| self.on_arrows[f as usize]).collect();
                let tgt = d.hom(self.on_objects[a as usize], self.on_objects[b as usize]);
                if src.len() != c.hom(a, b).len() || src.len() != tgt.len() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = self.target;
        (0..d.object_count() as u32).all(|y| {
            self.on_objects.iter().any(|&x| d.hom(x, y).iter().any(|&f| d.is_isomorphism(f)))
        })
    }

    /// Fully faithful and essentially surjective.
    pub fn is_equivalence(&self) -> Result<bool> {
        self.validate()?;
        Ok(self.is_fully_faithful() && self.is_essentially_surjective())
    }
}

pub fn is_equivalence(f: &Functor<'_>) -> Result<bool> {
    f.is_equivalence()
}

/// The nerve of a finite category truncated at dimension `d`, with the
/// arrow chain of every generator.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub presentation: Arc<SimplicialSet>,
    /// Generator `g` of dimension 0 is object `chains[g][0]`; otherwise the
    /// list of its non-identity arrows.
    pub chains: Vec<Vec<u32>>,
    pub truncation: usize,
    index: HashMap<Vec<u32>, u32>,
    vertex_gen: Vec<u32>,
}

pub fn nerve(c: &FiniteCategory, d: usize) -> Nerve {
    let mut chains: Vec<Vec<u32>> = (0..c.object_count() as u32).map(|o| vec![o]).collect();
    let vertex_gen: Vec<u32> = (0..c.object_count() as u32).collect();
    let nonid: Vec<u32> = (0..c.arrow_count() as u32).filter(|&f| !c.is_identity(f)).collect();
    let mut frontier: Vec<Vec<u32>> = if d >= 1 { nonid.iter().map(|&f| vec![f]).collect() } else { Vec::new() };
    let mut len = 1;
    while !frontier.is_empty() {
        chains.extend(frontier.iter().cloned());
        if len == d {
            break;
        }
        let mut next = Vec::new();
        for ch in &frontier {
            let t = c.target(*ch.last().unwrap());
            for &g in &nonid {
                if c.source(g) == t {
                    let mut e = ch.clone();
                    e.push(g);
                    next.push(e);
                }
            }
        }
        frontier = next;
        len += 1;
    }
    let index: HashMap<Vec<u32>, u32> =
        chains.iter().enumerate().skip(c.object_count()).map(|(i, ch)| (ch.clone(), i as u32)).collect();
    let mut nerve = Nerve {
        presentation: Arc::new(Presentation::empty()),
        chains,
        truncation: d,
        index,
        vertex_gen,
    };
    let gens = (0..nerve.chains.len())
        .map(|g| {
            if g < c.object_count() {
                return gen1(0, Vec::new(), c.objects()[g].clone());
            }
            let ch = &nerve.chains[g];
            let n = ch.len();
            let faces = (0..=n)
                .map(|i| {
                    let full: Vec<u32> = if n == 1 {
                        Vec::new()
                    } else if i == 0 {
                        ch[1..].to_vec()
                    } else if i == n {
                        ch[..n - 1].to_vec()
                    } else {
                        let mut v = ch[..i - 1].to_vec();
                        v.push(c.compose(ch[i], ch[i - 1]).unwrap());
                        v.extend_from_slice(&ch[i + 1..]);
                        v
                    };
                    if n == 1 {
                        let o = if i == 0 { c.target(ch[0]) } else { c.source(ch[0]) };
                        simplex1(nerve.vertex_gen[o as usize], Surjection::identity(0))
                    } else {
                        nerve.normalize(c, &full)
                    }
                })
                .collect();
            let names: Vec<&str> = ch.iter().map(|&f| c.arrows()[f as usize].name.as_str()).collect();
            gen1(n, faces, names.join(";"))
        })
        .collect();
    nerve.presentation = Arc::new(Presentation::new_unchecked(gens));
    nerve
}

impl Nerve {
    /// Normal form of a nonempty composable chain (identities allowed).
    pub fn normalize(&self, c: &FiniteCategory, chain: &[u32]) -> Simplex1 {
        let n = chain.len();
        let mut steps = 0u16;
        let mut kept = Vec::new();
        for (j, &f) in chain.iter().enumerate() {
            if !c.is_identity(f) {
                steps |= 1 << (j + 1);
                kept.push(f);
            }
        }
        let s = Surjection::from_steps(n, steps);
        if kept.is_empty() {
            return simplex1(self.vertex_gen[c.source(chain[0]) as usize], s);
        }
        simplex1(self.index[&kept], s)
    }

    /// Generator of the vertex at `object`.
    pub fn vertex(&self, object: u32) -> u32 {
        self.vertex_gen[object as usize]
    }

    /// Full arrow chain (identities included) of a simplex of dimension ≥ 1,
    /// or the object of a vertex as a one-element list.
    pub fn chain_of(&self, c: &FiniteCategory, x: &Simplex1) -> Vec<u32> {
        let g = &self.chains[x.gen as usize];
        let n = x.degree()[0];
        if self.presentation.degree(x.gen)[0] == 0 {
            if n == 0 {
                return vec![g[0]];
            }
            return vec![c.identity(g[0]); n];
        }
        let s = x.degen[0];
        let verts: Vec<u32> = {
            let mut v = vec![c.source(g[0])];
            v.extend(g.iter().map(|&f| c.target(f)));
            v
        };
        (1..=n)
            .map(|j| {
                let (a, b) = (s.eval(j - 1), s.eval(j));
                if a == b {
                    c.identity(verts[a])
                } else {
                    g[a]
                }
            })
            .collect()
    }

    /// The arrow named by a 1-simplex.
    pub fn arrow_of_edge(&self, c: &FiniteCategory, x: &Simplex1) -> u32 {
        debug_assert_eq!(x.degree(), [1]);
        self.chain_of(c, x)[0]
    }

    /// Marking flags (per generator) for edges whose arrows satisfy `pred`.
    pub fn edge_marking(&self, pred: impl Fn(u32) -> bool) -> Vec<bool> {
        self.chains
            .iter()
            .enumerate()
            .map(|(g, ch)| self.presentation.degree(g as u32)[0] == 1 && pred(ch[0]))
            .collect()
    }
}

/// Why a simplicial set is not (recognizably) a nerve.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NerveFailure {
    /// A composable edge chain of length `n` with no `n`-simplex on it.
    MissingFiller { n: usize, spine: Vec<u32> },
    /// Several `n`-simplices share a spine.
    DuplicateFiller { n: usize, spine: Vec<u32> },
    NotAssociative { spine: Vec<u32> },
    Empty,
}

impl std::fmt::Display for NerveFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NerveFailure::MissingFiller { n, spine } => write!(f, "no {n}-simplex with spine {spine:?}"),
            NerveFailure::DuplicateFiller { n, spine } => write!(f, "several {n}-simplices with spine {spine:?}"),
            NerveFailure::NotAssociative { spine } => write!(f, "composition not associative on {spine:?}"),
            NerveFailure::Empty => write!(f, "empty simplicial set"),
        }
    }
}

/// The category recovered by [`detect_nerve`].
#[derive(Clone, Debug)]
pub struct DetectedNerve {
    pub category: FiniteCategory,
    /// Object index of each vertex element of the level-0 table.
    pub object_of_vertex: Vec<u32>,
    /// Arrow index of each element of the level-1 table.
    pub arrow_of_edge: Vec<u32>,
    /// Whether the input is the whole nerve (no nondegenerate chains beyond
    /// its dimension bound).
    pub exact: bool,
    pub bound: usize,
}

/// Recognizes nerves of finite categories: every spine map `X_n -> X_1 ×_{X_0} ... ×_{X_0} X_1`
/// is bijective for `2 <= n <= max(2, dim X)` and composition is associative.
pub fn detect_nerve(x: &SimplicialSet) -> std::result::Result<DetectedNerve, NerveFailure> {
    let bound = x.max_degree()[0].max(2);
    let t = Table::tabulate(x, [bound], None);
    detect_nerve_table(&t, bound)
}

/// As [`detect_nerve`], on a one-directional table checked up to `bound`.
pub fn detect_nerve_table(t: &Table<1>, bound: usize) -> std::result::Result<DetectedNerve, NerveFailure> {
    let bound = bound.min(t.bounds()[0]);
    let n0 = t.count([0]).unwrap_or(0);
    if n0 == 0 {
        return Err(NerveFailure::Empty);
    }
    if bound < 2 {
        return Err(NerveFailure::MissingFiller { n: 2, spine: Vec::new() });
    }
    let n1 = t.count([1]).unwrap();
    let src = |e: u32| t.face([1], 0, 1, e);
    let tgt = |e: u32| t.face([1], 0, 0, e);
    let mut spine_index: Vec<HashMap<Vec<u32>, u32>> = Vec::new();
    for n in 2..=bound {
        let mut map = HashMap::new();
        for x in 0..t.count([n]).unwrap() as u32 {
            let sp = spine(t, n, x);
            if map.insert(sp.clone(), x).is_some() {
                return Err(NerveFailure::DuplicateFiller { n, spine: sp });
            }
        }
        spine_index.push(map);
    }
    // every composable chain must be filled
    let mut chains: Vec<Vec<u32>> = (0..n1 as u32).map(|e| vec![e]).collect();
    for n in 2..=bound {
        let mut next = Vec::new();
        for ch in &chains {
            let end = tgt(*ch.last().unwrap());
            for e in 0..n1 as u32 {
                if src(e) == end {
                    let mut d = ch.clone();
                    d.push(e);
                    next.push(d);
                }
            }
        }
        for ch in &next {
            if !spine_index[n - 2].contains_key(ch) {
                return Err(NerveFailure::MissingFiller { n, spine: ch.clone() });
            }
        }
        chains = next;
    }
    let compose = |f: u32, g: u32| -> u32 { t.face([2], 0, 1, spine_index[0][&vec![f, g]]) };
    for f in 0..n1 as u32 {
        for g in (0..n1 as u32).filter(|&g| src(g) == tgt(f)) {
            for h in (0..n1 as u32).filter(|&h| src(h) == tgt(g)) {
                if compose(compose(f, g), h) != compose(f, compose(g, h)) {
                    return Err(NerveFailure::NotAssociative { spine: vec![f, g, h] });
                }
            }
        }
    }
    let objects: Vec<String> = (0..n0).map(|v| format!("v{v}")).collect();
    let arrows: Vec<Arrow> = (0..n1 as u32)
        .map(|e| Arrow { name: format!("e{e}"), source: src(e), target: tgt(e) })
        .collect();
    let identities: Vec<u32> = (0..n0 as u32).map(|v| t.degen([0], 0, 0, v).unwrap()).collect();
    let mut composites = Vec::new();
    for f in 0..n1 as u32 {
        for g in (0..n1 as u32).filter(|&g| src(g) == tgt(f)) {
            composites.push((g, f, compose(f, g)));
        }
    }
    let category = FiniteCategory::from_table(objects, arrows, identities, &composites)
        .map_err(|_| NerveFailure::NotAssociative { spine: Vec::new() })?;
    // exact iff the category has no nondegenerate chain of length bound + 1
    let exact = {
        let nonid: Vec<u32> = (0..n1 as u32).filter(|&e| !category.is_identity(e)).collect();
        let mut layer: Vec<u32> = nonid.clone();
        let mut depth = 1;
        while !layer.is_empty() && depth <= bound {
            let mut next = Vec::new();
            for &end in &layer {
                for &g in &nonid {
                    if src(g) == tgt(end) {
                        next.push(g);
                    }
                }
            }
            // only endpoints matter for existence of longer chains
            next.sort();
            next.dedup();
            layer = next;
            depth += 1;
        }
        layer.is_empty() && depth <= bound + 1
    };
    Ok(DetectedNerve {
        category,
        object_of_vertex: (0..n0 as u32).collect(),
        arrow_of_edge: (0..n1 as u32).collect(),
        exact,
        bound,
    })
}

/// The spine (edges `i-1 -> i`) of an `n`-simplex of a table.
pub fn spine(t: &Table<1>, n: usize, x: u32) -> Vec<u32> {
    (1..=n)
        .map(|i| {
            let inj = crate::ops::Injection::from_values(n, &[(i - 1) as u8, i as u8]).unwrap();
            t.apply_injection([n], 0, inj, x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{find_isomorphism, j_truncated, nondegenerate_counts, simplex};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn square() -> FiniteCategory {
        let names = ["00", "01", "10", "11"].map(String::from).to_vec();
        FiniteCategory::poset(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn chain_counts() {
        for n in 0..5 {
            let c = FiniteCategory::chain(n);
            assert_eq!(c.object_count(), n + 1);
            assert_eq!(c.arrow_count(), binom(n + 2, 2));
        }
        let term = FiniteCategory::chain(0);
        assert_eq!(term.arrow_count(), 1);
    }

    #[test]
    fn free_category_paths() {
        let objs = ["a", "b", "c"].map(String::from).to_vec();
        let edges = vec![("f".to_string(), 0, 1), ("g".to_string(), 1, 2)];
        let c = FiniteCategory::free(objs.clone(), &edges).unwrap();
        assert_eq!((c.object_count(), c.arrow_count()), (3, 6));
        assert!(c.find_arrow("g∘f").is_some());
        let cyc = vec![("f".to_string(), 0, 1), ("g".to_string(), 1, 0)];
        assert!(matches!(FiniteCategory::free(objs, &cyc), Err(Error::Unsupported(_))));
        assert_eq!(c.core().arrow_count(), 3);
    }

    #[test]
    fn bad_table_rejected() {
        let objs = vec!["a".to_string()];
        let arrows = vec![
            Arrow { name: "id".into(), source: 0, target: 0 },
            Arrow { name: "e".into(), source: 0, target: 0 },
            Arrow { name: "u".into(), source: 0, target: 0 },
        ];
        // e∘e = u, e∘u = e, u∘e = e, u∘u = e: (e∘e)∘e = u∘e = e, e∘(e∘e) = e∘u = e, fine;
        // (u∘u)∘e = e∘e = u but u∘(u∘e) = u∘e = e.
        let table = [(1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 1)];
        assert!(FiniteCategory::from_table(objs, arrows, vec![0], &table).is_err());
    }

    #[test]
    fn nerves() {
        for n in 0..4 {
            let nv = nerve(&FiniteCategory::chain(n), n);
            let d = Arc::new(simplex(n));
            assert!(find_isomorphism(&nv.presentation, &d, None).unwrap().is_some());
        }
        let j = nerve(&FiniteCategory::indiscrete(2), 4);
        assert_eq!(nondegenerate_counts(&j.presentation), vec![2, 2, 2, 2, 2]);
        let jt = Arc::new(j_truncated(4));
        assert!(find_isomorphism(&j.presentation, &jt, None).unwrap().is_some());
        j.presentation.check_identities().unwrap();
        let sq = nerve(&square(), 5);
        assert_eq!(nondegenerate_counts(&sq.presentation), vec![4, 5, 2]);
    }

    #[test]
    fn chain_counts_match_table() {
        let c = square();
        let nv = nerve(&c, 4);
        let t = Table::tabulate(&nv.presentation, [4], None);
        for n in 1..=4 {
            assert_eq!(t.count([n]).unwrap(), c.chains(n).len());
        }
        for n in 1..=4 {
            for x in 0..t.count([n]).unwrap() as u32 {
                let s = t.simplex([n], x).unwrap();
                let ch = nv.chain_of(&c, &s);
                assert_eq!(nv.normalize(&c, &ch), s);
            }
        }
    }

    #[test]
    fn functor_categories() {
        let c1 = FiniteCategory::chain(1);
        assert_eq!(functor_category(1, &c1).category.object_count(), 3);
        let f0 = functor_category(0, &square()).category;
        assert_eq!((f0.object_count(), f0.arrow_count()), (4, 9));
        let t = functor_category(2, &FiniteCategory::chain(0)).category;
        assert_eq!((t.object_count(), t.arrow_count()), (1, 1));
        let j = functor_category(2, &FiniteCategory::indiscrete(2)).category;
        assert!(j.is_groupoid());
        assert_eq!(j.object_count(), 8);
    }

    #[test]
    fn cores() {
        let sq = square();
        let k = sq.core();
        assert_eq!(k.arrow_count(), 4);
        assert!(k.is_groupoid());
        assert_eq!(k.core(), k);
        let ind = FiniteCategory::indiscrete(2);
        assert_eq!(ind.core(), ind);
    }

    #[test]
    fn equivalences() {
        let ind = FiniteCategory::indiscrete(2);
        let term = FiniteCategory::chain(0);
        let to_point = Functor { source: &ind, target: &term, on_objects: vec![0, 0], on_arrows: vec![0; 4] };
        assert!(to_point.is_equivalence().unwrap());
        let disc = FiniteCategory::discrete(vec!["a".into(), "b".into()]);
        let collapse = Functor { source: &disc, target: &term, on_objects: vec![0, 0], on_arrows: vec![0, 0] };
        assert!(!collapse.is_equivalence().unwrap());
        let id = Functor {
            source: &ind,
            target: &ind,
            on_objects: vec![0, 1],
            on_arrows: (0..4).collect(),
        };
        assert!(id.is_equivalence().unwrap());
        let broken = Functor { source: &ind, target: &ind, on_objects: vec![0, 1], on_arrows: vec![0, 0, 0, 0] };
        assert!(broken.is_equivalence().is_err());
    }

    #[test]
    fn detection() {
        let d = detect_nerve(&simplex(3)).unwrap();
        assert_eq!(d.category.object_count(), 4);
        assert_eq!(d.category.arrow_count(), 10);
        assert!(d.exact);
        let h = crate::sset::horn(2, 1);
        assert!(matches!(detect_nerve(&h), Err(NerveFailure::MissingFiller { n: 2, .. })));
        let j = detect_nerve(&j_truncated(3)).unwrap();
        assert!(j.category.is_groupoid());
        assert_eq!((j.category.object_count(), j.category.arrow_count()), (2, 4));
        assert!(!j.exact);
        assert!(detect_nerve(&crate::sset::boundary(2)).is_err());
    }
}

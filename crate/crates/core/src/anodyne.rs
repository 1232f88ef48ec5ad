//! Generating inclusions of marked (bi)simplicial sets, pushout-products,
//! and an exhaustive right-lifting-property solver over bounded tables.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bisimplicial::box_product;
use crate::error::{Error, Result};
use crate::invariants::Status;
use crate::marked::MarkedSimplicialSet;
use crate::presentation::Presentation;
use crate::search::MapSearch;
use crate::sset::{boundary, horn, j_truncated, pushout, simplex, Product, SimplicialMap, SimplicialSet};
use crate::table::{Level, Table, TableMap, NONE};

/// A marked sub-object `(A, S_A) ⊂ (B, S_B)`, given by flags on the
/// generators of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion<const A: usize> {
    pub name: String,
    pub target: Arc<Presentation<A>>,
    pub target_marked: Vec<bool>,
    /// Face-closed generators of the source.
    pub sub: Vec<bool>,
    /// Marked generators of the source; a subset of `sub ∩ target_marked`.
    pub source_marked: Vec<bool>,
    /// Truncation of `J` when the inclusion involves it.
    pub truncation: Option<usize>,
}

impl<const A: usize> Inclusion<A> {
    pub fn new(
        name: impl Into<String>,
        target: Arc<Presentation<A>>,
        target_marked: Vec<bool>,
        sub: Vec<bool>,
        source_marked: Vec<bool>,
    ) -> Result<Self> {
        let n = target.len();
        if target_marked.len() != n || sub.len() != n || source_marked.len() != n {
            return Err(Error::Parameter("one flag per target generator required".into()));
        }
        if !target.is_closed(&sub) {
            return Err(Error::Presentation("source generators are not closed under faces".into()));
        }
        if (0..n).any(|g| source_marked[g] && !(sub[g] && target_marked[g])) {
            return Err(Error::Marking("source marking must lie in the source and in the target marking".into()));
        }
        Ok(Inclusion { name: name.into(), target, target_marked, sub, source_marked, truncation: None })
    }

    pub fn identity(name: impl Into<String>, target: Arc<Presentation<A>>, marked: Vec<bool>) -> Self {
        let sub = vec![true; target.len()];
        Inclusion { name: name.into(), target, source_marked: marked.clone(), target_marked: marked, sub, truncation: None }
    }

    /// The source presentation and the old-to-new generator numbering.
    pub fn source(&self) -> (Presentation<A>, Vec<u32>) {
        self.target.restrict(&self.sub).expect("validated on construction")
    }

    /// Source marking in source numbering.
    pub fn source_marking(&self) -> Vec<bool> {
        self.sub.iter().zip(&self.source_marked).filter(|(&s, _)| s).map(|(_, &m)| m).collect()
    }

    pub fn source_counts(&self) -> Vec<([usize; A], usize)> {
        self.source().0.counts_by_degree()
    }

    pub fn target_counts(&self) -> Vec<([usize; A], usize)> {
        self.target.counts_by_degree()
    }

    pub fn marked_counts(&self) -> (usize, usize) {
        let c = |v: &[bool]| v.iter().filter(|&&b| b).count();
        (c(&self.source_marked), c(&self.target_marked))
    }

    /// Checks degreewise injectivity and marking preservation within `bounds`.
    pub fn check_monomorphism(&self, bounds: [usize; A]) -> Result<bool> {
        let (src, remap) = self.source();
        let ts = Table::tabulate(&src, bounds, Some(&self.source_marking()));
        let tt = Table::tabulate(&self.target, bounds, Some(&self.target_marked));
        for deg in Table::<A>::degrees_within(bounds) {
            let count = tt.count(deg).unwrap();
            let mut seen = vec![false; count];
            for x in 0..ts.count(deg).unwrap() as u32 {
                let mut s = ts.simplex(deg, x).unwrap();
                s.gen = remap.iter().position(|&r| r == s.gen).unwrap() as u32;
                let y = tt.lookup(&s).ok_or_else(|| Error::Map(format!("simplex {s:?} missing from target")))?;
                if std::mem::replace(&mut seen[y as usize], true) {
                    return Ok(false);
                }
                if ts.is_marked(deg, x) && !tt.is_marked(deg, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl Inclusion<1> {
    /// `A ⊂ B` for a sub-presentation whose generator labels occur in `B`.
    pub fn by_labels(name: impl Into<String>, sub: &SimplicialSet, target: Arc<SimplicialSet>) -> Result<Self> {
        let mut flags = vec![false; target.len()];
        for g in sub.generators() {
            let t = target
                .find_label(&g.label)
                .ok_or_else(|| Error::Map(format!("label {} not found in target", g.label)))?;
            flags[t as usize] = true;
        }
        let n = target.len();
        Self::new(name, target, vec![false; n], flags, vec![false; n])
    }

    fn with_marks(mut self, target_marked: Vec<bool>, source_marked: Vec<bool>) -> Result<Self> {
        self.target_marked = target_marked;
        self.source_marked = source_marked;
        Self::new(self.name, self.target, self.target_marked, self.sub, self.source_marked)
    }

    /// The inclusion map of presentations.
    pub fn map(&self) -> SimplicialMap {
        let (src, _) = self.source();
        let images = (0..self.target.len() as u32)
            .filter(|&g| self.sub[g as usize])
            .map(|g| crate::presentation::Simplex::generator(g, self.target.degree(g)))
            .collect();
        SimplicialMap { source: Arc::new(src), target: self.target.clone(), images }
    }

    /// The cobase change of an unmarked inclusion along `g : A -> A'`.
    pub fn pushout_along(&self, g: &SimplicialMap) -> Result<Self> {
        if self.target_marked.iter().any(|&m| m) {
            return Err(Error::Unsupported("pushouts of marked inclusions".into()));
        }
        let p = pushout(&self.map(), g)?;
        let seeds = p.right.images.iter().map(|s| s.gen);
        let sub = p.object.closure(seeds);
        let n = p.object.len();
        let mut out = Self::new(format!("{} pushed out", self.name), p.object, vec![false; n], sub, vec![false; n])?;
        out.truncation = self.truncation;
        Ok(out)
    }
}

/// The marked pushout-product `(Ā × Y) ∪ (B̄ × X) ⊂ B̄ × Ȳ` of two marked
/// simplicial inclusions.
pub fn pushout_product(i: &Inclusion<1>, j: &Inclusion<1>) -> Inclusion<1> {
    let p = Product::new(&i.target, &j.target);
    let mark = |flags: &[bool], s: &crate::sset::Simplex1| !s.is_nondegenerate() || flags[s.gen as usize];
    let mut sub = Vec::with_capacity(p.components.len());
    let mut target_marked = Vec::with_capacity(sub.capacity());
    let mut source_marked = Vec::with_capacity(sub.capacity());
    for ((a, b), g) in p.components.iter().zip(p.presentation.generators()) {
        let (in_a, in_x) = (i.sub[a.gen as usize], j.sub[b.gen as usize]);
        let edge = g.degree == [1];
        sub.push(in_a || in_x);
        target_marked.push(edge && mark(&i.target_marked, a) && mark(&j.target_marked, b));
        source_marked.push(
            edge && ((in_a && mark(&i.source_marked, a) && mark(&j.target_marked, b))
                || (in_x && mark(&i.target_marked, a) && mark(&j.source_marked, b))),
        );
    }
    Inclusion {
        name: format!("{} □ {}", i.name, j.name),
        target: Arc::new(p.presentation),
        target_marked,
        sub,
        source_marked,
        truncation: i.truncation.or(j.truncation),
    }
}

/// The box pushout-product `(Ā ⊠ Y) ∪ (B̄ ⊠ X) ⊂ B̄ ⊠ Y` of a marked
/// simplicial inclusion and a simplicial one.
pub fn box_pushout_product(i: &Inclusion<1>, j: &Inclusion<1>) -> Inclusion<2> {
    let b = MarkedSimplicialSet { underlying: i.target.clone(), marked: i.target_marked.clone() };
    let boxed = box_product(&b, &j.target);
    let ny = j.target.len();
    let mut sub = Vec::with_capacity(boxed.marked.len());
    let mut source_marked = Vec::with_capacity(boxed.marked.len());
    for id in 0..boxed.marked.len() {
        let (gx, gy) = (id / ny, id % ny);
        let (in_a, in_x) = (i.sub[gx], j.sub[gy]);
        sub.push(in_a || in_x);
        source_marked.push((in_a && i.source_marked[gx]) || (in_x && i.target_marked[gx]));
    }
    Inclusion {
        name: format!("{} ⊠ {}", i.name, j.name),
        target: boxed.presentation,
        target_marked: boxed.marked,
        sub,
        source_marked,
        truncation: i.truncation.or(j.truncation),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "mbe_A")]
    MbeA,
    #[serde(rename = "mbe_B")]
    MbeB,
    #[serde(rename = "mbe_C")]
    MbeC,
    #[serde(rename = "mbe_D")]
    MbeD,
    #[serde(rename = "mbe_E")]
    MbeE,
    #[serde(rename = "cof_flat")]
    CofFlat,
    #[serde(rename = "cof_mark")]
    CofMark,
    #[serde(rename = "cof_sset_plus")]
    CofSsetPlus,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).ok()
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::MbeA => "mbe_A",
            Family::MbeB => "mbe_B",
            Family::MbeC => "mbe_C",
            Family::MbeD => "mbe_D",
            Family::MbeE => "mbe_E",
            Family::CofFlat => "cof_flat",
            Family::CofMark => "cof_mark",
            Family::CofSsetPlus => "cof_sset_plus",
        }
    }
}

/// Parameters of a generating inclusion. For `cof_sset_plus`, `n` selects
/// `∂Δⁿ♭ ⊂ Δⁿ♭` and its absence selects `(Δ¹)♭ ⊂ (Δ¹)♯`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec { family, n: None, m: None, k: None, d: None }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    /// Largest source or target bidegree, for sizing tables.
    pub fn max_degree(&self) -> Result<[usize; 2]> {
        Ok(match make_generator(self)? {
            Generator::Bisimplicial(i) => i.target.max_degree(),
            Generator::Simplicial(i) => [i.target.max_degree()[0], 0],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Bisimplicial(Inclusion<2>),
    Simplicial(Inclusion<1>),
}

fn need(v: Option<usize>, what: &str, family: Family) -> Result<usize> {
    v.ok_or_else(|| Error::Parameter(format!("{} needs parameter {what}", family.name())))
}

fn flat_inclusion(name: &str, sub: &SimplicialSet, target: SimplicialSet) -> Result<Inclusion<1>> {
    Inclusion::by_labels(name, sub, Arc::new(target))
}

fn empty_in(target: SimplicialSet, name: &str) -> Result<Inclusion<1>> {
    flat_inclusion(name, &SimplicialSet::empty(), target)
}

fn edges_of(p: &SimplicialSet) -> Vec<bool> {
    p.generators().iter().map(|g| g.degree == [1]).collect()
}

pub fn make_generator(spec: &GeneratorSpec) -> Result<Generator> {
    use Family::*;
    let f = spec.family;
    let bad = |msg: String| Err(Error::Parameter(format!("{}: {msg}", f.name())));
    let max = crate::ops::MAX_DIM;
    for v in [spec.n, spec.m, spec.d].into_iter().flatten() {
        if v > max {
            return bad(format!("dimension {v} exceeds {max}"));
        }
    }
    let boundary_in = |n: usize| flat_inclusion(&format!("∂Δ{n}"), &boundary(n), simplex(n));
    let j_d = |d: usize| -> Result<usize> {
        if d < 1 {
            return Err(Error::Parameter(format!("{}: J-truncation must be at least 1", f.name())));
        }
        Ok(d)
    };
    let with_d = |mut i: Inclusion<2>, d: usize| {
        i.truncation = Some(d);
        i
    };
    Ok(match f {
        MbeA => {
            let (n, m, k) = (need(spec.n, "n", f)?, need(spec.m, "m", f)?, need(spec.k, "k", f)?);
            if m < 1 || k > m {
                return bad(format!("needs m >= 1 and 0 <= k <= m, got m={m}, k={k}"));
            }
            let j = flat_inclusion(&format!("Λ{m}_{k}"), &horn(m, k), simplex(m))?;
            Generator::Bisimplicial(box_pushout_product(&boundary_in(n)?, &j))
        }
        MbeB => {
            let (n, m, k) = (need(spec.n, "n", f)?, need(spec.m, "m", f)?, need(spec.k, "k", f)?);
            if !(0 < k && k < n) {
                return bad(format!("needs 0 < k < n, got n={n}, k={k}"));
            }
            let i = flat_inclusion(&format!("Λ{n}_{k}"), &horn(n, k), simplex(n))?;
            Generator::Bisimplicial(box_pushout_product(&i, &boundary_in(m)?))
        }
        MbeC => {
            let (m, d) = (need(spec.m, "m", f)?, j_d(need(spec.d, "d", f)?)?);
            let jt = Arc::new(j_truncated(d));
            let one = jt.find_label("1").unwrap();
            let mut sub = vec![false; jt.len()];
            sub[one as usize] = true;
            let n = jt.len();
            let i = Inclusion::new("{1}⊂J", jt, vec![false; n], sub, vec![false; n])?;
            Generator::Bisimplicial(with_d(box_pushout_product(&i, &boundary_in(m)?), d))
        }
        MbeD => {
            let (m, d) = (need(spec.m, "m", f)?, j_d(need(spec.d, "d", f)?)?);
            let jt = Arc::new(j_truncated(d));
            let n = jt.len();
            let i = Inclusion::new("J♭⊂J♯", jt.clone(), edges_of(&jt), vec![true; n], vec![false; n])?;
            Generator::Bisimplicial(with_d(box_pushout_product(&i, &empty_in(simplex(m), "∅")?), d))
        }
        MbeE => {
            let (m, d) = (need(spec.m, "m", f)?, j_d(need(spec.d, "d", f)?)?);
            let jt = Arc::new(j_truncated(d));
            let i = Inclusion::by_labels("(Δ1)♯⊂J♯", &simplex(1), jt.clone())?;
            let edge01 = jt.find_label("01").unwrap();
            let mut src = vec![false; jt.len()];
            src[edge01 as usize] = true;
            let i = i.with_marks(edges_of(&jt), src)?;
            Generator::Bisimplicial(with_d(box_pushout_product(&i, &empty_in(simplex(m), "∅")?), d))
        }
        CofFlat => {
            let (n, m) = (need(spec.n, "n", f)?, need(spec.m, "m", f)?);
            Generator::Bisimplicial(box_pushout_product(&boundary_in(n)?, &boundary_in(m)?))
        }
        CofMark => {
            let n = need(spec.n, "n", f)?;
            let d1 = Arc::new(simplex(1));
            let i = Inclusion::new("Δ1♭⊂Δ1♯", d1.clone(), edges_of(&d1), vec![true; 3], vec![false; 3])?;
            Generator::Bisimplicial(box_pushout_product(&i, &empty_in(simplex(n), "∅")?))
        }
        CofSsetPlus => match spec.n {
            Some(n) => Generator::Simplicial(boundary_in(n)?),
            None => {
                let d1 = Arc::new(simplex(1));
                Generator::Simplicial(Inclusion::new("Δ1♭⊂Δ1♯", d1.clone(), edges_of(&d1), vec![true; 3], vec![false; 3])?)
            }
        },
    })
}

/// The terminal table within `bounds`, marked on column 1.
pub fn terminal<const A: usize>(bounds: [usize; A]) -> Table<A> {
    let levels = Table::<A>::degrees_within(bounds)
        .into_iter()
        .map(|deg| {
            let mut l = Level::new(deg, 1);
            for a in 0..A {
                if deg[a] > 0 {
                    l.faces[a] = vec![0; deg[a] + 1];
                }
                if deg[a] < bounds[a] {
                    l.degens[a] = vec![0; deg[a] + 1];
                }
            }
            if deg[0] == 1 {
                l.marked = Some(vec![true]);
            }
            l
        })
        .collect();
    let mut t = Table::from_levels(bounds, levels);
    t.coskeletal = true;
    t
}

/// The unique map to [`terminal`].
pub fn to_terminal<const A: usize>(x: &Table<A>) -> (Table<A>, TableMap<A>) {
    let t = terminal(x.bounds());
    let f = TableMap { levels: x.levels().iter().map(|l| vec![0; l.count()]).collect() };
    (t, f)
}

/// One generator's image in a witness square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub generator: String,
    pub degree: Vec<usize>,
    pub element: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub top: Vec<Assignment>,
    pub bottom: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftVerdict {
    pub status: Status,
    pub squares: u64,
    /// Total number of lifts over all squares.
    pub lifts: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_lifts: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_lifts: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl LiftVerdict {
    fn unknown(reason: String, truncation: Option<usize>) -> Self {
        LiftVerdict {
            status: Status::Unknown,
            squares: 0,
            lifts: 0,
            min_lifts: None,
            max_lifts: None,
            truncation,
            exact: false,
            witness: None,
            reason: Some(reason),
        }
    }
}

fn assignments<const A: usize>(p: &Presentation<A>, images: &[u32]) -> Vec<Assignment> {
    p.generators()
        .iter()
        .zip(images)
        .map(|(g, &e)| Assignment { generator: g.label.clone(), degree: g.degree.to_vec(), element: e })
        .collect()
}

/// Number of lifts `l : B -> X` in a commuting square with `l|A = top` and
/// `f∘l = bottom`. Fails if the square does not commute.
pub fn count_lifts<const A: usize>(
    x: &Table<A>,
    f: &TableMap<A>,
    i: &Inclusion<A>,
    top: &[u32],
    bottom: &[u32],
) -> Result<u64> {
    let level = |t: &Table<A>, g: u32| t.index(i.target.degree(g));
    let mut fixed = vec![NONE; i.target.len()];
    let mut k = 0;
    for g in 0..i.target.len() as u32 {
        if i.sub[g as usize] {
            let li = level(x, g).ok_or_else(|| Error::Bounds { requested: format!("{:?}", i.target.degree(g)), bounds: format!("{:?}", x.bounds()) })?;
            if f.levels[li][top[k] as usize] != bottom[g as usize] {
                return Err(Error::Map(format!("square does not commute at {}", i.target.generator(g).label)));
            }
            fixed[g as usize] = top[k];
            k += 1;
        }
    }
    let levels: Vec<usize> = (0..i.target.len() as u32).map(|g| level(x, g).unwrap()).collect();
    let filter = |g: u32, v: u32| f.levels[levels[g as usize]][v as usize] == bottom[g as usize];
    MapSearch::new(&i.target, x).marked(&i.target_marked).fixed(fixed).filter(&filter).count()
}

/// Decides whether `f : X -> Y` has the right lifting property against `i`
/// by enumerating all commuting squares and counting lifts.
pub fn has_rlp<const A: usize>(x: &Table<A>, y: &Table<A>, f: &TableMap<A>, i: &Inclusion<A>) -> LiftVerdict {
    match solve(x, y, f, i) {
        Ok(v) => v,
        Err(Error::Bounds { requested, bounds }) => {
            LiftVerdict::unknown(format!("degree {requested} outside table bounds {bounds}"), i.truncation)
        }
        Err(e) => LiftVerdict::unknown(e.to_string(), i.truncation),
    }
}

fn solve<const A: usize>(x: &Table<A>, y: &Table<A>, f: &TableMap<A>, i: &Inclusion<A>) -> Result<LiftVerdict> {
    let (src, remap) = i.source();
    let src_marked = i.source_marking();
    let tops = MapSearch::new(&src, x).marked(&src_marked).collect()?;
    let mut squares = 0u64;
    let mut total = 0u64;
    let (mut lo, mut hi) = (u64::MAX, 0u64);
    let mut witness = None;
    for top in &tops {
        let mut fixed = vec![NONE; i.target.len()];
        for (g, &r) in remap.iter().enumerate() {
            if r != NONE {
                let li = x.index(i.target.degree(g as u32)).unwrap();
                fixed[g] = f.levels[li][top[r as usize] as usize];
            }
        }
        let bottoms = MapSearch::new(&i.target, y).marked(&i.target_marked).fixed(fixed).collect()?;
        for bottom in &bottoms {
            squares += 1;
            let n = count_lifts(x, f, i, top, bottom)?;
            total += n;
            lo = lo.min(n);
            hi = hi.max(n);
            if n == 0 && witness.is_none() {
                witness = Some(Witness { top: assignments(&src, top), bottom: assignments(&i.target, bottom) });
            }
        }
    }
    let exact = match i.truncation {
        None => true,
        Some(d) => x.is_coskeletal() && d >= 3,
    };
    let status = if witness.is_some() { Status::Fails } else { Status::Holds };
    let reason = match (i.truncation, exact) {
        (Some(d), false) => Some(format!("at J-truncation {d}")),
        _ => None,
    };
    Ok(LiftVerdict {
        status,
        squares,
        lifts: total,
        min_lifts: (squares > 0).then_some(lo),
        max_lifts: (squares > 0).then_some(hi),
        truncation: i.truncation,
        exact,
        witness,
        reason,
    })
}

/// Visits the squares of `i` against `f` without solving them.
pub fn count_squares<const A: usize>(x: &Table<A>, y: &Table<A>, f: &TableMap<A>, i: &Inclusion<A>) -> Result<u64> {
    let (src, remap) = i.source();
    let src_marked = i.source_marking();
    let mut n = 0u64;
    let mut err = None;
    MapSearch::new(&src, x).marked(&src_marked).run(|top| {
        let mut fixed = vec![NONE; i.target.len()];
        for (g, &r) in remap.iter().enumerate() {
            if r != NONE {
                let li = x.index(i.target.degree(g as u32)).unwrap();
                fixed[g] = f.levels[li][top[r as usize] as usize];
            }
        }
        match MapSearch::new(&i.target, y).marked(&i.target_marked).fixed(fixed).count() {
            Ok(c) => {
                n += c;
                ControlFlow::Continue(())
            }
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catkit::{nerve, FiniteCategory};
    use crate::sset::nondegenerate_counts;

    fn simplicial_problem(x: &SimplicialSet, i: &Inclusion<1>) -> LiftVerdict {
        let top = i.target.max_degree()[0].max(x.max_degree()[0]);
        let tx = Table::tabulate(x, [top], None);
        let (ty, f) = to_terminal(&tx);
        has_rlp(&tx, &ty, &f, i)
    }

    #[test]
    fn horn_lifting() {
        let n1 = nerve(&FiniteCategory::chain(1), 3).presentation;
        let inner = Inclusion::by_labels("Λ2_1", &horn(2, 1), Arc::new(simplex(2))).unwrap();
        let v = simplicial_problem(&n1, &inner);
        assert_eq!(v.status, Status::Holds);
        assert_eq!((v.min_lifts, v.max_lifts), (Some(1), Some(1)));
        let outer = Inclusion::by_labels("Λ2_0", &horn(2, 0), Arc::new(simplex(2))).unwrap();
        let v = simplicial_problem(&n1, &outer);
        assert_eq!(v.status, Status::Fails);
        let w = v.witness.unwrap();
        // the edge 01 goes to the nondegenerate arrow
        let e01 = w.top.iter().find(|a| a.generator == "01").unwrap();
        let t = Table::tabulate(&n1, [2], None);
        assert!(!t.is_degenerate([1], e01.element));
        let id = Inclusion::identity("id", Arc::new(simplex(2)), vec![false; 7]);
        assert_eq!(simplicial_problem(&n1, &id).status, Status::Holds);
    }

    #[test]
    fn pushout_products() {
        let b = Inclusion::by_labels("∂Δ1", &boundary(1), Arc::new(simplex(1))).unwrap();
        let pp = pushout_product(&b, &b);
        let (src, _) = pp.source();
        assert_eq!(nondegenerate_counts(&src), vec![4, 4]);
        assert_eq!(nondegenerate_counts(&pp.target), vec![4, 5, 2]);
        assert!(pp.check_monomorphism([3]).unwrap());
        // i □ (∅ ⊂ Δ⁰) ≅ i, while a pushout-product with an identity is an identity
        let empty = Inclusion::by_labels("∅", &SimplicialSet::empty(), Arc::new(simplex(0))).unwrap();
        let q = pushout_product(&b, &empty);
        assert_eq!(q.source_counts(), b.source_counts());
        assert_eq!(q.target_counts(), b.target_counts());
        let id = Inclusion::identity("id", Arc::new(simplex(0)), vec![false]);
        assert!(pushout_product(&b, &id).sub.iter().all(|&s| s));
    }

    #[test]
    fn generator_shapes() {
        let a = match make_generator(&GeneratorSpec::new(Family::MbeA).n(0).m(1).k(0)).unwrap() {
            Generator::Bisimplicial(i) => i,
            _ => unreachable!(),
        };
        assert_eq!(a.source_counts(), vec![([0, 0], 1)]);
        assert_eq!(a.target_counts(), vec![([0, 0], 2), ([0, 1], 1)]);
        let d = match make_generator(&GeneratorSpec::new(Family::MbeD).m(0).d(3)).unwrap() {
            Generator::Bisimplicial(i) => i,
            _ => unreachable!(),
        };
        assert!(d.sub.iter().all(|&s| s));
        assert_eq!(d.marked_counts(), (0, 2));
        assert_eq!(d.truncation, Some(3));
        let c = match make_generator(&GeneratorSpec::new(Family::CofMark).n(0)).unwrap() {
            Generator::Bisimplicial(i) => i,
            _ => unreachable!(),
        };
        assert_eq!(c.marked_counts(), (0, 1));
        assert!(make_generator(&GeneratorSpec::new(Family::MbeB).n(2).m(0).k(0)).is_err());
        assert!(make_generator(&GeneratorSpec::new(Family::MbeA).n(0).m(0).k(0)).is_err());
        for spec in [
            GeneratorSpec::new(Family::MbeA).n(1).m(2).k(1),
            GeneratorSpec::new(Family::MbeB).n(2).m(1).k(1),
            GeneratorSpec::new(Family::MbeC).m(1).d(2),
            GeneratorSpec::new(Family::MbeE).m(1).d(2),
            GeneratorSpec::new(Family::CofFlat).n(1).m(1),
        ] {
            let Generator::Bisimplicial(i) = make_generator(&spec).unwrap() else { unreachable!() };
            assert!(i.check_monomorphism(i.target.max_degree()).unwrap(), "{spec:?}");
        }
    }

    #[test]
    fn stable_under_pushout() {
        use crate::ops::Surjection;
        use crate::presentation::Simplex;
        let n2 = nerve(&FiniteCategory::chain(2), 3).presentation;
        let inner = Inclusion::by_labels("Λ2_1", &horn(2, 1), Arc::new(simplex(2))).unwrap();
        assert_eq!(simplicial_problem(&n2, &inner).status, Status::Holds);
        // collapse the edge 01 of the horn onto a vertex of Δ¹
        let (src, _) = inner.source();
        let images = vec![
            Simplex::generator(0, [0]),
            Simplex::generator(0, [0]),
            Simplex::generator(1, [0]),
            Simplex::new(0, [Surjection::to_point(1)]),
            Simplex::generator(2, [1]),
        ];
        let g = SimplicialMap::new(Arc::new(src), Arc::new(simplex(1)), images).unwrap();
        let pushed = inner.pushout_along(&g).unwrap();
        assert!(pushed.check_monomorphism([3]).unwrap());
        assert_eq!(simplicial_problem(&n2, &pushed).status, Status::Holds);
    }
}

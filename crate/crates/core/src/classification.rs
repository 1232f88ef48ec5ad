//! The classification diagram `N(X̄)` with `N(X̄)_{n,m}` the marked maps
//! `(Δⁿ)♭ × (Δᵐ)♯ -> X̄`, its marked refinement, and the reindexing
//! functors between marked simplicial and marked bisimplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bisimplicial::{bidegree_counts, box_product, diagonal, slice, Axis, BidegreeCount};
use crate::catkit::{functor_category, nerve, FiniteCategory, Nerve, RelativeCategory};
use crate::error::{Error, Result};
use crate::hom::{HomFamily, Source, Structure};
use crate::invariants::{category_verdict, EquivalenceStatus, EquivalenceVerdict, Status};
use crate::marked::{product_marking, MarkedMap, MarkedSimplicialSet};
use crate::sset::{simplex, simplex_operator, Product, Simplex1, SimplicialMap};
use crate::table::{Level, Table, TableMap};

/// A marked bisimplicial set: a two-directional table marked on column 1.
pub type MarkedBisimplicialSet = Table<2>;

/// `N(X̄)` within bounds, keeping the source products for evaluation.
pub struct ClassificationDiagram {
    pub object: MarkedSimplicialSet,
    pub family: HomFamily<2>,
    products: Vec<Product>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub object: String,
    pub bidegrees: Vec<BidegreeCount>,
}

impl ClassificationDiagram {
    pub fn table(&self) -> &Table<2> {
        &self.family.table
    }

    pub fn bounds(&self) -> [usize; 2] {
        self.family.table.bounds()
    }

    /// `Δⁿ × Δᵐ` with the generator numbering used by the sources.
    pub fn product(&self, n: usize, m: usize) -> &Product {
        &self.products[n * (self.bounds()[1] + 1) + m]
    }

    pub fn report(&self, object: &str) -> ClassificationReport {
        ClassificationReport { object: object.to_string(), bidegrees: bidegree_counts(self.table()) }
    }

    /// Flags the table as coskeletal. The caller asserts that the underlying
    /// object is a nerve truncated at `truncation`, which must reach
    /// `pbound + qbound`.
    pub fn assume_nerve(mut self, truncation: usize) -> Result<Self> {
        let [pb, qb] = self.bounds();
        if truncation < pb + qb {
            return Err(Error::Parameter(format!(
                "nerve truncated at {truncation} is too small for bounds ({pb},{qb})"
            )));
        }
        self.family.table.coskeletal = true;
        Ok(self)
    }
}

fn structure_maps(products: &[Product], qb: usize) -> impl Fn([usize; 2], usize, usize, Structure) -> SimplicialMap + '_ {
    move |deg: [usize; 2], axis: usize, i: usize, kind: Structure| {
        let at = |n: usize, m: usize| &products[n * (qb + 1) + m];
        let k = deg[axis];
        let theta = match kind {
            Structure::Coface => {
                let values: Vec<u8> = (0..=k as u8).filter(|&v| v as usize != i).collect();
                simplex_operator(&values, k).unwrap()
            }
            Structure::Codegeneracy => {
                let values: Vec<u8> = (0..=k as u8 + 1).map(|v| if v as usize > i { v - 1 } else { v }).collect();
                simplex_operator(&values, k).unwrap()
            }
        };
        let mut other = deg;
        other[axis] = match kind {
            Structure::Coface => k - 1,
            Structure::Codegeneracy => k + 1,
        };
        let ident = SimplicialMap::identity(Arc::new(simplex(deg[1 - axis])));
        let (f, g) = if axis == 0 { (&theta, &ident) } else { (&ident, &theta) };
        at(deg[0], deg[1]).map(at(other[0], other[1]), f, g)
    }
}

fn build(x: &MarkedSimplicialSet, bounds: [usize; 2], marked_column: bool) -> Result<ClassificationDiagram> {
    let [pb, qb] = bounds;
    let products: Vec<Product> = (0..=pb)
        .flat_map(|n| (0..=qb).map(move |m| (n, m)))
        .map(|(n, m)| Product::new(&simplex(n), &simplex(m)))
        .collect();
    let top = (pb + qb).max(x.underlying.max_degree()[0]);
    let target = Arc::new(x.tabulate(top));
    let presentations: Vec<Arc<crate::sset::SimplicialSet>> =
        products.iter().map(|p| Arc::new(p.presentation.clone())).collect();
    let source_of = |deg: [usize; 2]| {
        let li = deg[0] * (qb + 1) + deg[1];
        let p = &products[li];
        // (Δⁿ)♭ × (Δᵐ)♯: an edge is marked when its first component is degenerate
        let marked = product_marking(p, |a| !a.is_nondegenerate(), |_| true);
        let strong = (marked_column && deg[0] == 1)
            .then(|| p.presentation.generators().iter().map(|g| g.degree == [1]).collect());
        Source { presentation: presentations[li].clone(), marked, strong }
    };
    let family = {
        let structure = structure_maps(&products, qb);
        HomFamily::build(bounds, target, &source_of, &structure)?
    };
    Ok(ClassificationDiagram { object: x.clone(), family, products })
}

/// `N(X̄)` within `bounds = (pbound, qbound)`.
pub fn classification_diagram(x: &MarkedSimplicialSet, bounds: [usize; 2]) -> Result<ClassificationDiagram> {
    build(x, bounds, false)
}

/// `N(X̄)` marked on column 1 by the maps `(Δ¹)♯ × (Δᵐ)♯ -> X̄`.
pub fn marked_classification(x: &MarkedSimplicialSet, bounds: [usize; 2]) -> Result<ClassificationDiagram> {
    build(x, bounds, true)
}

/// The nerve of `C` marked at `weak`, truncated high enough for `bounds`.
pub fn marked_nerve(c: &FiniteCategory, weak: &[bool], bounds: [usize; 2]) -> (Nerve, MarkedSimplicialSet) {
    let n = nerve(c, bounds[0] + bounds[1]);
    let marked = n.edge_marking(|f| weak[f as usize]);
    let x = MarkedSimplicialSet { underlying: n.presentation.clone(), marked };
    (n, x)
}

/// Marked classification diagram of a nerve. Rows and columns are nerves
/// of categories, so the table is flagged as coskeletal.
pub fn classify_nerve(c: &FiniteCategory, weak: &[bool], bounds: [usize; 2]) -> Result<(Nerve, ClassificationDiagram)> {
    let (n, x) = marked_nerve(c, weak, bounds);
    let mut d = marked_classification(&x, bounds)?;
    d.family.table.coskeletal = true;
    Ok((n, d))
}

/// `N(g)` for a marked map `g : X̄ -> Ȳ`, bidegree-wise.
pub fn induced_map(g: &MarkedMap, src: &ClassificationDiagram, tgt: &ClassificationDiagram) -> Result<TableMap<2>> {
    if src.bounds() != tgt.bounds() {
        return Err(Error::Parameter("diagrams have different bounds".into()));
    }
    let (xs, ys) = (&src.family.target, &tgt.family.target);
    let mut levels = Vec::new();
    for deg in Table::<2>::degrees_within(src.bounds()) {
        let source = src.family.source(deg);
        let facets = source.presentation.maximal_generators();
        let count = src.table().count(deg).unwrap();
        let mut out = Vec::with_capacity(count);
        for x in 0..count as u32 {
            let images: Vec<u32> = facets
                .iter()
                .map(|&f| {
                    let d = source.presentation.degree(f);
                    let s = xs.simplex(d, src.family.evaluate(deg, x, f)).unwrap();
                    ys.lookup(&g.map.apply(&s)).unwrap()
                })
                .collect();
            let y = tgt.family.find(deg, &images).ok_or_else(|| Error::Map(format!("no image at {deg:?}")))?;
            out.push(y);
        }
        levels.push(out);
    }
    Ok(TableMap { levels })
}

/// `(p₁⁺)*`: the rows-constant marked bisimplicial set on `X̄`.
pub fn p1_star(x: &MarkedSimplicialSet, bounds: [usize; 2]) -> MarkedBisimplicialSet {
    box_product(x, &simplex(0)).tabulate(bounds)
}

/// `(i₁⁺)*`: row 0 with the marking of bidegree `(1, 0)`.
pub fn i1_star(t: &MarkedBisimplicialSet) -> Result<Table<1>> {
    slice(t, Axis::Row, 0)
}

/// `(t⁺)_!`: the diagonal, marked by the marking at bidegree `(1, 1)`.
pub fn t_lower(t: &MarkedBisimplicialSet) -> Table<1> {
    diagonal(t)
}

/// Whether two tables agree level by level under the identity numbering
/// (faces, degeneracies and marking).
pub fn tables_equal<const A: usize>(a: &Table<A>, b: &Table<A>) -> bool {
    a.bounds() == b.bounds() && {
        let id = TableMap::identity(a);
        a.counts() == b.counts() && id.verify(a, b).is_ok() && id.is_isomorphism(a, b)
    }
}

/// The map of rows `X_{*,0} -> X_{*,n}` given by the vertical degeneracies.
pub fn row_degeneracy(t: &Table<2>, n: usize) -> Result<TableMap<1>> {
    let [pb, qb] = t.bounds();
    if n > qb {
        return Err(Error::Bounds { requested: format!("row {n}"), bounds: format!("({pb},{qb})") });
    }
    let levels = (0..=pb)
        .map(|k| {
            (0..t.count([k, 0]).unwrap() as u32)
                .map(|mut e| {
                    for j in 0..n {
                        e = t.degen([k, j], 1, 0, e).unwrap();
                    }
                    e
                })
                .collect()
        })
        .collect();
    Ok(TableMap { levels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstancyVerdict {
    pub n: usize,
    pub status: Status,
    pub verdict: EquivalenceVerdict,
}

/// Checks for each `n <= nbound` whether `(X_{*,0}, S_0) -> (X_{*,n}, S_n)` is a
/// cartesian equivalence, with the sound row machinery.
pub fn categorically_constant_check(t: &MarkedBisimplicialSet, nbound: usize) -> Result<Vec<ConstancyVerdict>> {
    let row0 = slice(t, Axis::Row, 0)?;
    (0..=nbound)
        .map(|n| {
            let rown = slice(t, Axis::Row, n)?;
            let f = row_degeneracy(t, n)?;
            let verdict = category_verdict(&row0, &rown, &f);
            let status = match verdict.status {
                EquivalenceStatus::Equivalent => Status::Holds,
                EquivalenceStatus::NotEquivalent => Status::Fails,
                EquivalenceStatus::Unknown => Status::Unknown,
            };
            Ok(ConstancyVerdict { n, status, verdict })
        })
        .collect()
}

/// A functor `[n] × [m] -> C` as objects and unit-step arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid {
    n: usize,
    m: usize,
    /// `ob[i * (m + 1) + j]`
    ob: Vec<u32>,
    /// `(i, j) -> (i + 1, j)` at `h[i * (m + 1) + j]`
    h: Vec<u32>,
    /// `(i, j) -> (i, j + 1)` at `v[i * m + j]`
    v: Vec<u32>,
}

impl Grid {
    fn key(&self) -> Vec<u32> {
        let mut k = self.ob.clone();
        k.extend(&self.h);
        k.extend(&self.v);
        k
    }

    fn ob(&self, i: usize, j: usize) -> u32 {
        self.ob[i * (self.m + 1) + j]
    }

    fn h(&self, i: usize, j: usize) -> u32 {
        self.h[i * (self.m + 1) + j]
    }

    fn v(&self, i: usize, j: usize) -> u32 {
        self.v[i * self.m + j]
    }

    fn transpose(&self) -> Grid {
        let (n, m) = (self.m, self.n);
        let mut g = Grid { n, m, ob: Vec::new(), h: Vec::new(), v: Vec::new() };
        for i in 0..=n {
            for j in 0..=m {
                g.ob.push(self.ob(j, i));
            }
        }
        for i in 0..n {
            for j in 0..=m {
                g.h.push(self.v(j, i));
            }
        }
        for i in 0..=n {
            for j in 0..m {
                g.v.push(self.h(j, i));
            }
        }
        g
    }

    /// Horizontal face `d_k`.
    fn face(&self, c: &FiniteCategory, k: usize) -> Grid {
        let (n, m) = (self.n - 1, self.m);
        let col = |a: usize| if a < k { a } else { a + 1 };
        let mut g = Grid { n, m, ob: Vec::new(), h: Vec::new(), v: Vec::new() };
        for a in 0..=n {
            for j in 0..=m {
                g.ob.push(self.ob(col(a), j));
            }
        }
        for a in 0..n {
            for j in 0..=m {
                let f = if k == 0 {
                    self.h(a + 1, j)
                } else if a + 1 < k {
                    self.h(a, j)
                } else if a + 1 == k {
                    c.compose(self.h(k, j), self.h(k - 1, j)).unwrap()
                } else {
                    self.h(a + 1, j)
                };
                g.h.push(f);
            }
        }
        for a in 0..=n {
            for j in 0..m {
                g.v.push(self.v(col(a), j));
            }
        }
        g
    }

    /// Horizontal degeneracy `s_k`.
    fn degen(&self, c: &FiniteCategory, k: usize) -> Grid {
        let (n, m) = (self.n + 1, self.m);
        let col = |a: usize| if a <= k { a } else { a - 1 };
        let mut g = Grid { n, m, ob: Vec::new(), h: Vec::new(), v: Vec::new() };
        for a in 0..=n {
            for j in 0..=m {
                g.ob.push(self.ob(col(a), j));
            }
        }
        for a in 0..n {
            for j in 0..=m {
                let f = match a.cmp(&k) {
                    std::cmp::Ordering::Less => self.h(a, j),
                    std::cmp::Ordering::Equal => c.identity(self.ob(k, j)),
                    std::cmp::Ordering::Greater => self.h(a - 1, j),
                };
                g.h.push(f);
            }
        }
        for a in 0..=n {
            for j in 0..m {
                g.v.push(self.v(col(a), j));
            }
        }
        g
    }

    fn structure(&self, c: &FiniteCategory, axis: usize, k: usize, face: bool) -> Grid {
        let op = |g: &Grid| if face { g.face(c, k) } else { g.degen(c, k) };
        if axis == 0 {
            op(self)
        } else {
            op(&self.transpose()).transpose()
        }
    }
}

/// All grids `[n] × [m] -> C` with vertical arrows in `W`, as `m`-chains of
/// `W`-valued natural transformations between `n`-chains.
fn grids(r: &RelativeCategory, n: usize, m: usize) -> Vec<Grid> {
    let c = &r.base;
    let fc = functor_category(n, c);
    let weak_transformation = |t: u32| fc.components[t as usize].iter().all(|&a| r.weak[a as usize]);
    let column = |o: u32| &fc.object_chains[o as usize];
    let chains: Vec<(Vec<u32>, Vec<u32>)> = if m == 0 {
        (0..fc.category.object_count() as u32).map(|o| (vec![o], Vec::new())).collect()
    } else {
        fc.category
            .chains(m)
            .into_iter()
            .filter(|ch| ch.iter().all(|&t| weak_transformation(t)))
            .map(|ch| {
                let mut objs = vec![fc.category.source(ch[0])];
                objs.extend(ch.iter().map(|&t| fc.category.target(t)));
                (objs, ch)
            })
            .collect()
    };
    let mut out: Vec<Grid> = chains
        .into_iter()
        .map(|(objs, trans)| {
            let mut g = Grid { n, m, ob: Vec::new(), h: Vec::new(), v: Vec::new() };
            for i in 0..=n {
                for &o in &objs {
                    g.ob.push(column(o).0[i]);
                }
            }
            for i in 0..n {
                for &o in &objs {
                    g.h.push(column(o).1[i]);
                }
            }
            for i in 0..=n {
                for &t in &trans {
                    g.v.push(fc.components[t as usize][i]);
                }
            }
            g
        })
        .collect();
    out.sort_by_key(|g| g.key());
    out
}

/// The classification diagram of a relative category, built directly from
/// grids in `C` with vertical arrows in `W`.
pub fn relative_classification(r: &RelativeCategory, bounds: [usize; 2]) -> Result<Table<2>> {
    r.validate()?;
    Ok(relative_grids(r, bounds).0)
}

fn relative_grids(r: &RelativeCategory, bounds: [usize; 2]) -> (Table<2>, Vec<Vec<Grid>>) {
    let c = &r.base;
    let degrees = Table::<2>::degrees_within(bounds);
    let all: Vec<Vec<Grid>> = degrees.iter().map(|&[n, m]| grids(r, n, m)).collect();
    let lookups: Vec<HashMap<Vec<u32>, u32>> = all
        .iter()
        .map(|gs| gs.iter().enumerate().map(|(i, g)| (g.key(), i as u32)).collect())
        .collect();
    let idx = |d: [usize; 2]| d[0] * (bounds[1] + 1) + d[1];
    let mut levels = Vec::with_capacity(degrees.len());
    for (li, &deg) in degrees.iter().enumerate() {
        let gs = &all[li];
        let mut level = Level::new(deg, gs.len());
        for a in 0..2 {
            if deg[a] > 0 {
                let mut lower = deg;
                lower[a] -= 1;
                let lk = &lookups[idx(lower)];
                level.faces[a] =
                    gs.iter().flat_map(|g| (0..=deg[a]).map(move |k| lk[&g.structure(c, a, k, true).key()])).collect();
            }
            let mut upper = deg;
            upper[a] += 1;
            if upper[a] <= bounds[a] {
                let uk = &lookups[idx(upper)];
                level.degens[a] =
                    gs.iter().flat_map(|g| (0..=deg[a]).map(move |k| uk[&g.structure(c, a, k, false).key()])).collect();
            }
        }
        levels.push(level);
    }
    let mut t = Table::from_levels(bounds, levels);
    t.coskeletal = true;
    (t, all)
}

/// Explicit bidegree-wise comparison from the relative construction to the
/// classification diagram of the `W`-marked nerve. The caller verifies it.
pub fn relative_comparison(r: &RelativeCategory, bounds: [usize; 2]) -> Result<(Table<2>, ClassificationDiagram, TableMap<2>)> {
    r.validate()?;
    let c = &r.base;
    let (rel, all) = relative_grids(r, bounds);
    let (nv, diag) = {
        let (nv, x) = marked_nerve(c, &r.weak, bounds);
        (nv, classification_diagram(&x, bounds)?)
    };
    let target = &diag.family.target;
    let mut levels = Vec::new();
    for (li, deg) in Table::<2>::degrees_within(bounds).into_iter().enumerate() {
        let [n, m] = deg;
        let prod = diag.product(n, m);
        let facets = prod.presentation.maximal_generators();
        let paths: Vec<Vec<(usize, usize)>> = facets.iter().map(|&f| vertex_path(&prod.components[f as usize], n, m)).collect();
        let mut out = Vec::with_capacity(all[li].len());
        for g in &all[li] {
            let images: Vec<u32> = paths
                .iter()
                .map(|path| {
                    let s = if path.len() == 1 {
                        Simplex1::generator(nv.vertex(g.ob(path[0].0, path[0].1)), [0])
                    } else {
                        let chain: Vec<u32> = path
                            .windows(2)
                            .map(|w| if w[1].0 > w[0].0 { g.h(w[0].0, w[0].1) } else { g.v(w[0].0, w[0].1) })
                            .collect();
                        nv.normalize(c, &chain)
                    };
                    target.lookup(&s).unwrap()
                })
                .collect();
            let y = diag.family.find(deg, &images).ok_or_else(|| Error::Map(format!("grid missing at {deg:?}")))?;
            out.push(y);
        }
        levels.push(out);
    }
    Ok((rel, diag, TableMap { levels }))
}

/// Vertex sequence of a product simplex `(a, b)` of `Δⁿ × Δᵐ`.
fn vertex_path(components: &(Simplex1, Simplex1), n: usize, m: usize) -> Vec<(usize, usize)> {
    let (a, b) = components;
    let (dn, dm) = (simplex(n), simplex(m));
    (0..=a.degree()[0]).map(|k| (dn.vertex(a, [k]) as usize, dm.vertex(b, [k]) as usize)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catkit::FiniteCategory;

    fn d(n: usize) -> Arc<crate::sset::SimplicialSet> {
        Arc::new(simplex(n))
    }

    #[test]
    fn small_counts() {
        let pt = classification_diagram(&MarkedSimplicialSet::flat(d(0)), [3, 3]).unwrap();
        assert!(pt.table().counts().iter().all(|&(_, c)| c == 1));
        let flat = classification_diagram(&MarkedSimplicialSet::flat(d(1)), [3, 3]).unwrap();
        for ([p, _], c) in flat.table().counts() {
            assert_eq!(c, p + 2);
        }
        flat.table().check_identities().unwrap();
        let sharp = classification_diagram(&MarkedSimplicialSet::sharp(d(1)), [2, 2]).unwrap();
        assert_eq!(sharp.table().count([1, 1]), Some(6));
    }

    #[test]
    fn marked_columns() {
        let sharp = marked_classification(&MarkedSimplicialSet::sharp(d(1)), [2, 2]).unwrap();
        sharp.table().check_marking().unwrap();
        for m in 0..=2 {
            let l = sharp.table().level([1, m]).unwrap();
            assert!(l.marked.as_ref().unwrap().iter().all(|&b| b));
        }
        let flat = marked_classification(&MarkedSimplicialSet::flat(d(1)), [2, 2]).unwrap();
        for m in 0..=2 {
            let l = flat.table().level([1, m]).unwrap();
            assert_eq!(l.marked.as_ref().unwrap().iter().filter(|&&b| b).count(), 2);
        }
        let plain = classification_diagram(&MarkedSimplicialSet::flat(d(1)), [2, 2]).unwrap();
        assert_eq!(plain.table().counts(), flat.table().counts());
    }

    #[test]
    fn reindexing_triangles() {
        let x = MarkedSimplicialSet::with_labels(d(2), &["01"]).unwrap();
        let p = p1_star(&x, [3, 3]);
        assert!(tables_equal(&i1_star(&p).unwrap(), &x.tabulate(3)));
        assert!(tables_equal(&t_lower(&p), &x.tabulate(3)));
        assert!(p1_star(&MarkedSimplicialSet::flat(d(0)), [2, 2]).counts().iter().all(|&(_, c)| c == 1));
    }

    #[test]
    fn constancy() {
        let x = MarkedSimplicialSet::with_labels(d(2), &["01"]).unwrap();
        let v = categorically_constant_check(&p1_star(&x, [3, 3]), 3).unwrap();
        assert!(v.iter().all(|c| c.status == Status::Holds));
        let flat = marked_classification(&MarkedSimplicialSet::flat(d(1)), [3, 3]).unwrap();
        let v = categorically_constant_check(flat.table(), 3).unwrap();
        assert!(v.iter().all(|c| c.status == Status::Holds));
        let broken = box_product(&MarkedSimplicialSet::flat(d(0)), &simplex(1)).tabulate([3, 3]);
        let v = categorically_constant_check(&broken, 1).unwrap();
        assert_eq!(v[1].status, Status::Fails);
    }

    #[test]
    fn relative_cases() {
        let c = FiniteCategory::chain(1);
        let ids = RelativeCategory::isos(c.clone());
        let t = relative_classification(&ids, [3, 3]).unwrap();
        for ([n, m], count) in t.counts() {
            assert_eq!(count, n + 2, "at ({n},{m})");
        }
        let all = RelativeCategory::all(c);
        assert_eq!(relative_classification(&all, [2, 2]).unwrap().count([1, 1]), Some(6));
        for r in [ids, all, RelativeCategory::isos(FiniteCategory::indiscrete(2))] {
            let (rel, diag, f) = relative_comparison(&r, [2, 2]).unwrap();
            rel.check_identities().unwrap();
            f.verify(&rel, diag.table()).unwrap();
            assert!(f.is_isomorphism(&rel, diag.table()));
        }
    }

    #[test]
    fn functoriality() {
        let x = MarkedSimplicialSet::sharp(d(1));
        let y = MarkedSimplicialSet::flat(d(0));
        let maps = crate::marked::enumerate_marked_maps(&x, &y);
        let nx = classification_diagram(&x, [2, 2]).unwrap();
        let ny = classification_diagram(&y, [2, 2]).unwrap();
        let f = induced_map(&maps[0], &nx, &ny).unwrap();
        f.verify(nx.table(), ny.table()).unwrap();
    }
}

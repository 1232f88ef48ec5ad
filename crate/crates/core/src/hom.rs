//! Tables of hom-sets `Hom(S_L, Y)` for a (multi)cosimplicial family of
//! finite marked sources `S_L`, with structure maps by precomposition.
//!
//! Elements are stored by the images of the maximal generators of their
//! source only; every other generator is reached through a recorded face path.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::Result;
use crate::ops::{Injection, Surjection};
use crate::presentation::Simplex;
use crate::search::MapSearch;
use crate::sset::{SimplicialMap, SimplicialSet};
use crate::table::{Level, Table, NONE};

/// One source object of the family.
#[derive(Clone, Debug)]
pub struct Source {
    pub presentation: Arc<SimplicialSet>,
    /// Generators that must land on marked edges.
    pub marked: Vec<bool>,
    /// Generators checked for the marking of the resulting element (only
    /// used on levels that carry a marking).
    pub strong: Option<Vec<bool>>,
}

/// Which structure map of the family is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `δ^i : S_{L - e_a} -> S_L`, inducing `d_i`.
    Coface,
    /// `σ^i : S_{L + e_a} -> S_L`, inducing `s_i`.
    Codegeneracy,
}

pub(crate) struct Prepared {
    pub source: Source,
    pub facets: Vec<u32>,
    /// For each generator: (facet position, injection into that facet).
    pub witness: Vec<(u32, Injection)>,
}

impl Prepared {
    fn new(source: Source) -> Self {
        let p = &source.presentation;
        let facets = p.maximal_generators();
        let mut witness = vec![(u32::MAX, Injection::identity(0)); p.len()];
        for (k, &f) in facets.iter().enumerate() {
            let d = p.degree(f)[0];
            let mut stack = vec![(Simplex::generator(f, [d]), Injection::identity(d))];
            while let Some((s, theta)) = stack.pop() {
                if !s.is_nondegenerate() {
                    continue;
                }
                if witness[s.gen as usize].0 != u32::MAX {
                    continue;
                }
                witness[s.gen as usize] = (k as u32, theta);
                let n = s.degree()[0];
                if n == 0 {
                    continue;
                }
                for i in 0..=n {
                    let face = p.face(&s, 0, i);
                    let through = theta.after(Injection::coface(n, i));
                    // a degenerate face σ^*(h) gives h through the section of σ
                    let h = Simplex::generator(face.gen, [face.core_degree()[0]]);
                    let inj = through.after(face.degen[0].section());
                    stack.push((h, inj));
                }
            }
        }
        debug_assert!(witness.iter().all(|w| w.0 != u32::MAX));
        Prepared { source, facets, witness }
    }
}

/// A family of hom-sets tabulated within bounds.
pub struct HomFamily<const A: usize> {
    pub table: Table<A>,
    pub target: Arc<Table<1>>,
    pub(crate) sources: Vec<Prepared>,
    /// Facet images, `elements[level][x * facets + k]`.
    pub(crate) elements: Vec<Vec<u32>>,
}

impl<const A: usize> HomFamily<A> {
    /// Builds the family. `target` must be tabulated at least up to the
    /// dimension of every source. `structure(L, axis, i, kind)` returns the
    /// structure map between the sources at `L` and its neighbour.
    pub fn build(
        bounds: [usize; A],
        target: Arc<Table<1>>,
        source_of: &dyn Fn([usize; A]) -> Source,
        structure: &dyn Fn([usize; A], usize, usize, Structure) -> SimplicialMap,
    ) -> Result<Self> {
        let degrees = Table::<A>::degrees_within(bounds);
        let sources: Vec<Prepared> = degrees.iter().map(|&d| Prepared::new(source_of(d))).collect();
        let mut elements = Vec::with_capacity(degrees.len());
        let mut lookups: Vec<HashMap<Box<[u32]>, u32>> = Vec::with_capacity(degrees.len());
        for prep in &sources {
            let nf = prep.facets.len();
            let mut found: Vec<Box<[u32]>> = Vec::new();
            MapSearch::new(&prep.source.presentation, &target).marked(&prep.source.marked).run(|imgs| {
                found.push(prep.facets.iter().map(|&f| imgs[f as usize]).collect());
                ControlFlow::Continue(())
            })?;
            found.sort();
            let mut flat = Vec::with_capacity(found.len() * nf);
            let mut lookup = HashMap::with_capacity(found.len());
            for (x, f) in found.into_iter().enumerate() {
                flat.extend_from_slice(&f);
                lookup.insert(f, x as u32);
            }
            elements.push(flat);
            lookups.push(lookup);
        }
        let mut fam = HomFamily { table: Table::placeholder(bounds), target, sources, elements };
        let mut levels = Vec::with_capacity(degrees.len());
        for (li, &deg) in degrees.iter().enumerate() {
            let count = fam.count_at(li);
            let mut level = Level::new(deg, count);
            for a in 0..A {
                if deg[a] > 0 {
                    let mut lower = deg;
                    lower[a] -= 1;
                    let lo = index_in(bounds, lower);
                    let mut faces = Vec::with_capacity(count * (deg[a] + 1));
                    let plans: Vec<Plan> = (0..=deg[a])
                        .map(|i| fam.plan(lo, li, &structure(deg, a, i, Structure::Coface)))
                        .collect();
                    for x in 0..count {
                        for plan in &plans {
                            faces.push(fam.pull(li, x, plan, &lookups[lo]));
                        }
                    }
                    level.faces[a] = faces;
                }
                let mut upper = deg;
                upper[a] += 1;
                if upper[a] <= bounds[a] {
                    let up = index_in(bounds, upper);
                    let plans: Vec<Plan> = (0..=deg[a])
                        .map(|i| fam.plan(up, li, &structure(deg, a, i, Structure::Codegeneracy)))
                        .collect();
                    let mut degens = Vec::with_capacity(count * (deg[a] + 1));
                    for x in 0..count {
                        for plan in &plans {
                            degens.push(fam.pull(li, x, plan, &lookups[up]));
                        }
                    }
                    level.degens[a] = degens;
                }
            }
            if let Some(strong) = &fam.sources[li].source.strong {
                if deg[0] == 1 {
                    let strong = strong.clone();
                    let marked = (0..count)
                        .map(|x| {
                            strong.iter().enumerate().filter(|(_, &s)| s).all(|(g, _)| {
                                let v = fam.evaluate_at(li, x as u32, g as u32);
                                fam.target.is_marked([1], v)
                            })
                        })
                        .collect();
                    level.marked = Some(marked);
                }
            }
            levels.push(level);
        }
        fam.table = Table::from_levels(bounds, levels);
        Ok(fam)
    }

    fn count_at(&self, li: usize) -> usize {
        let nf = self.sources[li].facets.len();
        if nf == 0 {
            // the empty source has exactly one map
            1
        } else {
            self.elements[li].len() / nf
        }
    }

    pub fn source(&self, degree: [usize; A]) -> &Source {
        &self.sources[self.table.index(degree).expect("degree within bounds")].source
    }

    /// Image of generator `g` of the source at `degree` under element `x`.
    pub fn evaluate(&self, degree: [usize; A], x: u32, g: u32) -> u32 {
        self.evaluate_at(self.table.index(degree).expect("degree within bounds"), x, g)
    }

    pub(crate) fn evaluate_at(&self, li: usize, x: u32, g: u32) -> u32 {
        let prep = &self.sources[li];
        let (k, theta) = prep.witness[g as usize];
        let facet = prep.facets[k as usize];
        let fdim = prep.source.presentation.degree(facet)[0];
        let v = self.elements[li][x as usize * prep.facets.len() + k as usize];
        self.target.apply_injection([fdim], 0, theta, v)
    }

    /// Image of an arbitrary simplex of the source.
    pub fn evaluate_simplex(&self, degree: [usize; A], x: u32, s: &Simplex<1>) -> u32 {
        let v = self.evaluate(degree, x, s.gen);
        let core = s.core_degree();
        self.target.apply_surjections(core, v, &s.degen).expect("target tabulated high enough")
    }

    /// Images of all generators of the source.
    pub fn images(&self, degree: [usize; A], x: u32) -> Vec<u32> {
        let li = self.table.index(degree).expect("degree within bounds");
        (0..self.sources[li].source.presentation.len() as u32).map(|g| self.evaluate_at(li, x, g)).collect()
    }

    /// Element with the given facet images, if present.
    pub fn find(&self, degree: [usize; A], facet_images: &[u32]) -> Option<u32> {
        let li = self.table.index(degree)?;
        let nf = self.sources[li].facets.len();
        if nf == 0 {
            return Some(0);
        }
        // elements are sorted by their facet images
        let rows = &self.elements[li];
        let (mut lo, mut hi) = (0, self.count_at(li));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match rows[mid * nf..(mid + 1) * nf].cmp(facet_images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid as u32),
            }
        }
        None
    }

    pub fn facet_images(&self, degree: [usize; A], x: u32) -> &[u32] {
        let li = self.table.index(degree).expect("degree within bounds");
        let nf = self.sources[li].facets.len();
        &self.elements[li][x as usize * nf..(x as usize + 1) * nf]
    }

    /// Precomputes how facets of the source at `lo` are reached from the
    /// source at `li` along `phi : S_lo -> S_li`.
    fn plan(&self, lo: usize, li: usize, phi: &SimplicialMap) -> Plan {
        let from = &self.sources[lo];
        let to = &self.sources[li];
        from.facets
            .iter()
            .map(|&f| {
                let s = phi.apply(&Simplex::generator(f, from.source.presentation.degree(f)));
                let (k, theta) = to.witness[s.gen as usize];
                let fdim = to.source.presentation.degree(to.facets[k as usize])[0];
                (k, fdim, theta, s.core_degree()[0], s.degen[0])
            })
            .collect()
    }

    fn pull(&self, li: usize, x: usize, plan: &Plan, lookup: &HashMap<Box<[u32]>, u32>) -> u32 {
        let nf = self.sources[li].facets.len();
        if plan.is_empty() {
            return 0;
        }
        let row = &self.elements[li][x * nf..(x + 1) * nf];
        let key: Box<[u32]> = plan
            .iter()
            .map(|&(k, fdim, theta, core, sigma)| {
                let v = self.target.apply_injection([fdim], 0, theta, row[k as usize]);
                self.target.apply_surjections([core], v, &[sigma]).expect("target tabulated high enough")
            })
            .collect();
        *lookup.get(&key).unwrap_or(&NONE)
    }
}

type Plan = Vec<(u32, usize, Injection, usize, Surjection)>;

fn index_in<const A: usize>(bounds: [usize; A], degree: [usize; A]) -> usize {
    let mut idx = 0;
    for a in 0..A {
        idx = idx * (bounds[a] + 1) + degree[a];
    }
    idx
}

//! Marked simplicial sets `(X, S)`: a simplicial set with a set of edges
//! containing the degenerate ones.

use std::sync::Arc;

use crate::catkit::detect_nerve;
use crate::error::{Error, Result};
use crate::hom::{HomFamily, Source, Structure};
use crate::search::MapSearch;
use crate::sset::{images_to_map, simplex, simplex_operator, target_table, Product, SimplicialMap, SimplicialSet};
use crate::table::Table;

/// A simplicial set with marked nondegenerate edges; degenerate edges are
/// always marked and not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSimplicialSet {
    pub underlying: Arc<SimplicialSet>,
    /// One flag per generator; only edges may be flagged.
    pub marked: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Remark {
    Flat,
    Sharp,
}

impl MarkedSimplicialSet {
    pub fn new(underlying: Arc<SimplicialSet>, marked: Vec<bool>) -> Result<Self> {
        if marked.len() != underlying.len() {
            return Err(Error::Marking("one flag per generator required".into()));
        }
        for (g, &m) in marked.iter().enumerate() {
            if m && underlying.degree(g as u32) != [1] {
                return Err(Error::Marking(format!(
                    "generator {} is not an edge",
                    underlying.generator(g as u32).label
                )));
            }
        }
        Ok(MarkedSimplicialSet { underlying, marked })
    }

    pub fn flat(x: Arc<SimplicialSet>) -> Self {
        let marked = vec![false; x.len()];
        MarkedSimplicialSet { underlying: x, marked }
    }

    pub fn sharp(x: Arc<SimplicialSet>) -> Self {
        let marked = x.generators().iter().map(|g| g.degree == [1]).collect();
        MarkedSimplicialSet { underlying: x, marked }
    }

    /// Marks the edges whose generator labels are listed.
    pub fn with_labels(x: Arc<SimplicialSet>, labels: &[&str]) -> Result<Self> {
        let mut marked = vec![false; x.len()];
        for l in labels {
            let g = x.find_label(l).ok_or_else(|| Error::Marking(format!("no generator labelled {l}")))?;
            marked[g as usize] = true;
        }
        Self::new(x, marked)
    }

    pub fn remark(&self, mode: Remark) -> Self {
        match mode {
            Remark::Flat => Self::flat(self.underlying.clone()),
            Remark::Sharp => Self::sharp(self.underlying.clone()),
        }
    }

    pub fn unmark(&self) -> Arc<SimplicialSet> {
        self.underlying.clone()
    }

    pub fn marked_edge_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Tabulates the underlying set with its marking.
    pub fn tabulate(&self, top: usize) -> Table<1> {
        Table::tabulate(&self.underlying, [top], Some(&self.marked))
    }

    /// Whether the edge simplex `e` (any normal form of dimension 1) is marked.
    pub fn is_marked_edge(&self, e: &crate::sset::Simplex1) -> bool {
        !e.is_nondegenerate() || self.marked[e.gen as usize]
    }

    /// Text form: the underlying presentation plus a `marked:` line.
    pub fn to_text(&self) -> String {
        let mut out = self.underlying.to_text();
        let labels: Vec<&str> = self
            .marked
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(g, _)| self.underlying.generator(g as u32).label.as_str())
            .collect();
        out.push_str(&format!("marked: {}\n", labels.join(" ")));
        out
    }

    /// The product marking: an edge is marked when both components are.
    pub fn product(&self, other: &MarkedSimplicialSet) -> (Product, MarkedSimplicialSet) {
        let p = Product::new(&self.underlying, &other.underlying);
        let marked = product_marking(&p, |a| self.is_marked_edge(a), |b| other.is_marked_edge(b));
        let m = MarkedSimplicialSet { underlying: Arc::new(p.presentation.clone()), marked };
        (p, m)
    }
}

/// Marking of a product edge from predicates on its components.
pub fn product_marking(
    p: &Product,
    left: impl Fn(&crate::sset::Simplex1) -> bool,
    right: impl Fn(&crate::sset::Simplex1) -> bool,
) -> Vec<bool> {
    p.components
        .iter()
        .zip(p.presentation.generators())
        .map(|((a, b), g)| g.degree == [1] && left(a) && right(b))
        .collect()
}

/// `C♮` for a nerve: marks exactly the edges naming isomorphisms.
pub fn natural_marking(x: &Arc<SimplicialSet>) -> Result<MarkedSimplicialSet> {
    let det = detect_nerve(x).map_err(|e| Error::Unsupported(format!("not the nerve of a category: {e}")))?;
    let t = Table::tabulate(x, [1], None);
    let marked = (0..x.len() as u32)
        .map(|g| {
            if x.degree(g) != [1] {
                return false;
            }
            let e = t.lookup(&crate::presentation::Simplex::generator(g, [1])).unwrap();
            det.category.is_isomorphism(det.arrow_of_edge[e as usize])
        })
        .collect();
    Ok(MarkedSimplicialSet { underlying: x.clone(), marked })
}

/// Maps of marked simplicial sets: simplicial maps carrying marked edges to
/// marked edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedMap {
    pub map: SimplicialMap,
    pub verified: bool,
}

impl MarkedMap {
    pub fn new(map: SimplicialMap, source: &MarkedSimplicialSet, target: &MarkedSimplicialSet) -> Result<Self> {
        map.validate()?;
        for (g, &m) in source.marked.iter().enumerate() {
            if m && !target.is_marked_edge(&map.images[g]) {
                return Err(Error::Marking(format!(
                    "marked edge {} goes to an unmarked edge",
                    source.underlying.generator(g as u32).label
                )));
            }
        }
        Ok(MarkedMap { map, verified: true })
    }
}

pub fn enumerate_marked_maps(x: &MarkedSimplicialSet, y: &MarkedSimplicialSet) -> Vec<MarkedMap> {
    let table = target_table(&x.underlying, &y.underlying, Some(&y.marked));
    let raw = MapSearch::new(&x.underlying, &table).marked(&x.marked).collect().expect("table covers the source");
    raw.into_iter()
        .map(|imgs| MarkedMap {
            map: images_to_map(&x.underlying, &y.underlying, &table, &imgs),
            verified: true,
        })
        .collect()
}

pub fn count_marked_maps(x: &MarkedSimplicialSet, y: &MarkedSimplicialSet) -> u64 {
    let table = target_table(&x.underlying, &y.underlying, Some(&y.marked));
    MapSearch::new(&x.underlying, &table).marked(&x.marked).count().expect("table covers the source")
}

/// `Map♯(X̄, Ȳ)` up to dimension `d`: `n`-simplices are marked maps
/// `X̄ × (Δⁿ)♯ -> Ȳ`.
pub fn marked_mapping_space(x: &MarkedSimplicialSet, y: &MarkedSimplicialSet, d: usize) -> Result<HomFamily<1>> {
    let top = x.underlying.max_degree()[0] + d;
    let target = Arc::new(Table::tabulate(&y.underlying, [top.max(y.underlying.max_degree()[0])], Some(&y.marked)));
    let products: Vec<(Product, MarkedSimplicialSet)> =
        (0..=d + 1).map(|n| x.product(&MarkedSimplicialSet::sharp(Arc::new(simplex(n))))).collect();
    let ident = SimplicialMap::identity(x.underlying.clone());
    let source_of = |deg: [usize; 1]| {
        let (_, m) = &products[deg[0]];
        Source { presentation: m.underlying.clone(), marked: m.marked.clone(), strong: None }
    };
    let structure = |deg: [usize; 1], _axis: usize, i: usize, kind: Structure| -> SimplicialMap {
        let n = deg[0];
        match kind {
            Structure::Coface => {
                let values: Vec<u8> = (0..=n as u8).filter(|&v| v as usize != i).collect();
                let theta = simplex_operator(&values, n).unwrap();
                products[n].0.map(&products[n - 1].0, &ident, &theta)
            }
            Structure::Codegeneracy => {
                let values: Vec<u8> = (0..=n as u8 + 1).map(|v| if v as usize > i { v - 1 } else { v }).collect();
                let theta = simplex_operator(&values, n).unwrap();
                products[n].0.map(&products[n + 1].0, &ident, &theta)
            }
        }
    };
    HomFamily::build([d], target, &source_of, &structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catkit::{nerve, FiniteCategory};
    use crate::sset::{count_maps, j_truncated};

    fn d(n: usize) -> Arc<SimplicialSet> {
        Arc::new(simplex(n))
    }

    #[test]
    fn remarking() {
        let f = MarkedSimplicialSet::flat(d(1));
        assert_eq!(f.marked_edge_count(), 0);
        assert_eq!(f.remark(Remark::Sharp).marked_edge_count(), 1);
        assert_eq!(*f.unmark(), *d(1));
        assert!(MarkedSimplicialSet::with_labels(d(2), &["012"]).is_err());
        assert_eq!(MarkedSimplicialSet::with_labels(d(2), &["01"]).unwrap().marked_edge_count(), 1);
    }

    #[test]
    fn natural_markings() {
        let poset = nerve(&FiniteCategory::chain(2), 2).presentation;
        assert_eq!(natural_marking(&poset).unwrap(), MarkedSimplicialSet::flat(poset.clone()));
        let j = Arc::new(j_truncated(3));
        assert_eq!(natural_marking(&j).unwrap().marked_edge_count(), 2);
        assert!(matches!(natural_marking(&Arc::new(crate::sset::horn(2, 1))), Err(Error::Unsupported(_))));
    }

    #[test]
    fn marked_hom_counts() {
        let sharp = MarkedSimplicialSet::sharp(d(1));
        let flat = MarkedSimplicialSet::flat(d(1));
        assert_eq!(count_marked_maps(&sharp, &flat), 2);
        assert_eq!(count_marked_maps(&sharp, &sharp), 3);
        assert_eq!(count_marked_maps(&flat, &flat), count_maps(&d(1), &d(1)));
        let maps = enumerate_marked_maps(&sharp, &flat);
        for m in &maps {
            MarkedMap::new(m.map.clone(), &sharp, &flat).unwrap();
        }
    }

    #[test]
    fn mapping_spaces() {
        let pt = MarkedSimplicialSet::flat(d(0));
        let y = MarkedSimplicialSet::flat(Arc::new(j_truncated(2)));
        let m = marked_mapping_space(&pt, &y, 0).unwrap();
        assert_eq!(m.table.count([0]), Some(2));
        let m = marked_mapping_space(&MarkedSimplicialSet::sharp(d(1)), &MarkedSimplicialSet::flat(d(1)), 2).unwrap();
        assert_eq!(m.table.count([0]), Some(2));
        m.table.check_identities().unwrap();
        // Map♯(Δ⁰, Δ¹♯) is Δ¹ itself
        let m = marked_mapping_space(&pt, &MarkedSimplicialSet::sharp(d(1)), 3).unwrap();
        let counts: Vec<usize> = (0..=3).map(|n| m.table.count([n]).unwrap()).collect();
        assert_eq!(counts, vec![2, 3, 4, 5]);
    }
}

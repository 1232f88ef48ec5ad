//! Bisimplicial and marked bisimplicial sets. Finite ones are given by
//! presentations in two directions; all others are bounded tables.
//!
//! Direction 0 is horizontal (the column index `n` of `X_{n,m}`), direction
//! 1 is vertical. A marking lives on the column `X_{1,*}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::marked::MarkedSimplicialSet;
use crate::presentation::{Generator, Presentation, Simplex};
use crate::sset::SimplicialSet;
use crate::table::{Level, Table};

pub type BiPresentation = Presentation<2>;

/// A table in two directions, optionally marked on column 1.
pub type BisimplicialSet = Table<2>;

/// A finite marked bisimplicial set: marked generators have degree `(1, q)`
/// and must form a simplicial subset of the column together with the
/// degeneracies from column 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBiPresentation {
    pub presentation: Arc<BiPresentation>,
    pub marked: Vec<bool>,
}

impl MarkedBiPresentation {
    pub fn new(presentation: Arc<BiPresentation>, marked: Vec<bool>) -> Result<Self> {
        if marked.len() != presentation.len() {
            return Err(Error::Marking("one flag per generator required".into()));
        }
        for (g, &m) in marked.iter().enumerate() {
            let gen = presentation.generator(g as u32);
            if !m {
                continue;
            }
            if gen.degree[0] != 1 {
                return Err(Error::Marking(format!("generator {} is not in column 1", gen.label)));
            }
            for f in &gen.faces[1] {
                let fg = presentation.generator(f.gen);
                if fg.degree[0] == 1 && !marked[f.gen as usize] {
                    return Err(Error::Marking(format!(
                        "marking is not closed under vertical faces at {}",
                        gen.label
                    )));
                }
            }
        }
        Ok(MarkedBiPresentation { presentation, marked })
    }

    pub fn flat(presentation: Arc<BiPresentation>) -> Self {
        let marked = vec![false; presentation.len()];
        MarkedBiPresentation { presentation, marked }
    }

    pub fn tabulate(&self, bounds: [usize; 2]) -> Table<2> {
        Table::tabulate(&self.presentation, bounds, Some(&self.marked))
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }
}

/// `X ⊠ Y` with `(X ⊠ Y)_{n,m} = X_n × Y_m`; the marking is `S × Y`.
pub fn box_product(x: &MarkedSimplicialSet, y: &SimplicialSet) -> MarkedBiPresentation {
    let xs = &x.underlying;
    let ny = y.len() as u32;
    let id = |gx: u32, gy: u32| gx * ny + gy;
    let mut gens = Vec::with_capacity(xs.len() * y.len());
    let mut marked = Vec::with_capacity(gens.capacity());
    for (gx, a) in xs.generators().iter().enumerate() {
        for (gy, b) in y.generators().iter().enumerate() {
            let (dx, dy) = (a.degree[0], b.degree[0]);
            let faces0 = a.faces[0]
                .iter()
                .map(|f| Simplex::new(id(f.gen, gy as u32), [f.degen[0], crate::ops::Surjection::identity(dy)]))
                .collect();
            let faces1 = b.faces[0]
                .iter()
                .map(|f| Simplex::new(id(gx as u32, f.gen), [crate::ops::Surjection::identity(dx), f.degen[0]]))
                .collect();
            gens.push(Generator { degree: [dx, dy], faces: [faces0, faces1], label: format!("({},{})", a.label, b.label) });
            marked.push(x.marked[gx]);
        }
    }
    MarkedBiPresentation { presentation: Arc::new(Presentation::new_unchecked(gens)), marked }
}

/// Which one-directional slice of a bisimplicial table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Column,
    Row,
}

/// The column `X_{index,*}` or the row `X_{*,index}`; rows keep the marking.
pub fn slice(x: &Table<2>, axis: Axis, index: usize) -> Result<Table<1>> {
    let [pb, qb] = x.bounds();
    let (fixed_bound, free_axis) = match axis {
        Axis::Column => (pb, 1),
        Axis::Row => (qb, 0),
    };
    if index > fixed_bound {
        return Err(Error::Bounds {
            requested: format!("{axis:?} {index}"),
            bounds: format!("({pb},{qb})"),
        });
    }
    let top = x.bounds()[free_axis];
    let mut levels = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let deg = if axis == Axis::Column { [index, k] } else { [k, index] };
        let l = x.level(deg).unwrap();
        let mut level = Level::new([k], l.count);
        level.faces[0] = l.faces[free_axis].clone();
        level.degens[0] = l.degens[free_axis].clone();
        if axis == Axis::Row && k == 1 {
            level.marked = l.marked.clone();
        }
        levels.push(level);
    }
    let mut out = Table::from_levels([top], levels);
    out.coskeletal = x.coskeletal;
    Ok(out)
}

/// `diag X` with `(diag X)_n = X_{n,n}`; the marking at level 1 is `S_1`.
pub fn diagonal(x: &Table<2>) -> Table<1> {
    let top = x.bounds()[0].min(x.bounds()[1]);
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let l = x.level([n, n]).unwrap();
        let mut level = Level::new([n], l.count);
        if n > 0 {
            let mut faces = Vec::with_capacity(l.count * (n + 1));
            for e in 0..l.count as u32 {
                for i in 0..=n {
                    faces.push(x.face([n - 1, n], 1, i, x.face([n, n], 0, i, e)));
                }
            }
            level.faces[0] = faces;
        }
        if n < top {
            let mut degens = Vec::with_capacity(l.count * (n + 1));
            for e in 0..l.count as u32 {
                for i in 0..=n {
                    let h = x.degen([n, n], 0, i, e).unwrap();
                    degens.push(x.degen([n + 1, n], 1, i, h).unwrap());
                }
            }
            level.degens[0] = degens;
        }
        if n == 1 {
            level.marked = l.marked.clone();
        }
        levels.push(level);
    }
    Table::from_levels([top], levels)
}

/// The full sub-table spanned by the vertices `keep` of `X_{0,0}`.
pub fn full_subset(x: &Table<2>, keep: &[bool]) -> Result<Table<2>> {
    if keep.len() != x.count([0, 0]).unwrap() {
        return Err(Error::Parameter("vertex subset has the wrong size".into()));
    }
    let degrees = Table::<2>::degrees_within(x.bounds());
    let mut flags: Vec<Vec<bool>> = Vec::with_capacity(degrees.len());
    // row-major order visits every face level before its cofaces
    for deg in &degrees {
        let count = x.count(*deg).unwrap();
        let li = x.index(*deg).unwrap();
        let f: Vec<bool> = if *deg == [0, 0] {
            keep.to_vec()
        } else {
            (0..count as u32)
                .map(|e| {
                    (0..2).all(|a| {
                        if deg[a] == 0 {
                            return true;
                        }
                        let mut lower = *deg;
                        lower[a] -= 1;
                        let lo = x.index(lower).unwrap();
                        (0..=deg[a]).all(|i| flags[lo][x.face(*deg, a, i, e) as usize])
                    })
                })
                .collect()
        };
        debug_assert_eq!(flags.len(), li);
        flags.push(f);
    }
    x.restrict(&flags)
}

/// Sub-table of simplices that are degeneracies of simplices of total
/// degree at most `p`.
pub fn bidegree_skeleton(x: &Table<2>, p: usize) -> Result<Table<2>> {
    let flags: Vec<Vec<bool>> = Table::<2>::degrees_within(x.bounds())
        .iter()
        .map(|&deg| {
            (0..x.count(deg).unwrap() as u32)
                .map(|e| {
                    let (_, core, _) = x.decompose(deg, e);
                    core[0] + core[1] <= p
                })
                .collect()
        })
        .collect();
    x.restrict(&flags)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BidegreeCount {
    pub n: usize,
    pub m: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
}

/// Counts per bidegree in row-major order, with marked counts on column 1.
pub fn bidegree_counts(x: &Table<2>) -> Vec<BidegreeCount> {
    x.levels()
        .iter()
        .map(|l| {
            let [n, m] = l.degree();
            let marked = l.marked.as_ref().map(|v| v.iter().filter(|&&b| b).count());
            BidegreeCount { n, m, count: l.count(), marked }
        })
        .collect()
}

/// The presentation of a one-directional table, with its marking.
pub fn table_to_marked(t: &Table<1>) -> MarkedSimplicialSet {
    let (p, forms) = t.to_presentation();
    let marked = t.marked_generators(&p, &forms);
    MarkedSimplicialSet { underlying: Arc::new(p), marked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{find_isomorphism, product, simplex};

    fn flat(n: usize) -> MarkedSimplicialSet {
        MarkedSimplicialSet::flat(Arc::new(simplex(n)))
    }

    #[test]
    fn box_counts() {
        let b = box_product(&flat(1), &simplex(1));
        let t = b.tabulate([3, 3]);
        t.check_identities().unwrap();
        t.check_marking().unwrap();
        for n in 0..=3 {
            for m in 0..=3 {
                assert_eq!(t.count([n, m]).unwrap(), (n + 2) * (m + 2));
            }
        }
        let sharp = box_product(&MarkedSimplicialSet::sharp(Arc::new(simplex(1))), &simplex(0)).tabulate([2, 2]);
        let l = sharp.level([1, 0]).unwrap();
        assert!(l.marked.as_ref().unwrap().iter().all(|&m| m));
    }

    #[test]
    fn slices_and_diagonal() {
        let t = box_product(&flat(2), &simplex(1)).tabulate([3, 3]);
        let col = slice(&t, Axis::Column, 1).unwrap();
        for q in 0..=3 {
            assert_eq!(col.count([q]).unwrap(), 6 * (q + 2));
        }
        assert!(slice(&t, Axis::Row, 4).is_err());
        let d = diagonal(&box_product(&flat(1), &simplex(1)).tabulate([3, 3]));
        let p = Arc::new(product(&simplex(1), &simplex(1)));
        let dp = Arc::new(table_to_marked(&d).underlying.as_ref().clone());
        // the bounded diagonal has no nondegenerate simplices above 2
        assert!(find_isomorphism(&dp, &p, None).unwrap().is_some());
    }

    #[test]
    fn subsets_and_skeleta() {
        let t = box_product(&flat(1), &simplex(0)).tabulate([2, 2]);
        let sub = full_subset(&t, &[true, false]).unwrap();
        assert!(sub.counts().iter().all(|&(_, c)| c == 1));
        let all = full_subset(&t, &[true, true]).unwrap();
        assert_eq!(all.counts(), t.counts());
        let none = full_subset(&t, &[false, false]).unwrap();
        assert!(none.counts().iter().all(|&(_, c)| c == 0));

        let sq = box_product(&flat(1), &simplex(1)).tabulate([2, 2]);
        let sk1 = bidegree_skeleton(&sq, 1).unwrap();
        let full = bidegree_skeleton(&sq, 2).unwrap();
        assert_eq!(full.counts(), sq.counts());
        let l11 = sk1.level([1, 1]).unwrap().count();
        // (1,1)-simplices that are degenerate in some direction: 9 - 1
        assert_eq!(l11, 8);
    }
}

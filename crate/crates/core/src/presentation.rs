//! Eilenberg–Zilber presentations of finite (multi)simplicial sets.
//!
//! A presentation lists the nondegenerate simplices ("generators") together
//! with their faces in normal form. `A` is the number of simplicial
//! directions: 1 for simplicial sets, 2 for bisimplicial sets.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ops::{Injection, Surjection, MAX_DIM};

/// A simplex `σ^*(g)`: a degeneracy (one surjection per direction) applied
/// to a generator. This is the Eilenberg–Zilber normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<const A: usize> {
    pub gen: u32,
    pub degen: [Surjection; A],
}

impl<const A: usize> Simplex<A> {
    pub fn new(gen: u32, degen: [Surjection; A]) -> Self {
        Simplex { gen, degen }
    }

    /// The generator itself, viewed as a simplex of its own degree.
    pub fn generator(gen: u32, degree: [usize; A]) -> Self {
        Simplex { gen, degen: degree.map(Surjection::identity) }
    }

    pub fn degree(&self) -> [usize; A] {
        self.degen.map(|s| s.source())
    }

    pub fn core_degree(&self) -> [usize; A] {
        self.degen.map(|s| s.target())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degen.iter().all(|s| s.is_identity())
    }
}

impl<const A: usize> fmt::Debug for Simplex<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nondegenerate() {
            write!(f, "g{}", self.gen)
        } else {
            write!(f, "g{}{:?}", self.gen, self.degen)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<const A: usize> {
    pub degree: [usize; A],
    /// `faces[a][i]` is the `i`-th face in direction `a`; empty when `degree[a] == 0`.
    pub faces: [Vec<Simplex<A>>; A],
    pub label: String,
}

impl<const A: usize> Generator<A> {
    pub fn total_degree(&self) -> usize {
        self.degree.iter().sum()
    }
}

/// A finite EZ presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<const A: usize> {
    gens: Vec<Generator<A>>,
}

impl<const A: usize> Default for Presentation<A> {
    fn default() -> Self {
        Presentation { gens: Vec::new() }
    }
}

impl<const A: usize> Presentation<A> {
    /// Validates face shapes and the simplicial identities on generators.
    pub fn new(gens: Vec<Generator<A>>) -> Result<Self> {
        let p = Presentation { gens };
        p.check_shape()?;
        p.check_identities()?;
        Ok(p)
    }

    /// Skips the identity check; used by constructions that produce valid
    /// data by construction. Shapes are still checked in debug builds.
    pub(crate) fn new_unchecked(gens: Vec<Generator<A>>) -> Self {
        let p = Presentation { gens };
        debug_assert!(p.check_shape().is_ok(), "{:?}", p.check_shape());
        p
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator<A>] {
        &self.gens
    }

    pub fn generator(&self, g: u32) -> &Generator<A> {
        &self.gens[g as usize]
    }

    pub fn degree(&self, g: u32) -> [usize; A] {
        self.gens[g as usize].degree
    }

    /// Componentwise maximum of generator degrees.
    pub fn max_degree(&self) -> [usize; A] {
        let mut out = [0; A];
        for g in &self.gens {
            for a in 0..A {
                out[a] = out[a].max(g.degree[a]);
            }
        }
        out
    }

    pub fn max_total_degree(&self) -> usize {
        self.gens.iter().map(|g| g.total_degree()).max().unwrap_or(0)
    }

    /// Number of generators of each degree, keyed by degree.
    pub fn counts_by_degree(&self) -> Vec<([usize; A], usize)> {
        let mut map = std::collections::BTreeMap::new();
        for g in &self.gens {
            *map.entry(g.degree).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }

    pub fn find_label(&self, label: &str) -> Option<u32> {
        self.gens.iter().position(|g| g.label == label).map(|i| i as u32)
    }

    fn check_shape(&self) -> Result<()> {
        for (gi, g) in self.gens.iter().enumerate() {
            if g.degree.iter().any(|&d| d > MAX_DIM) {
                return Err(Error::Presentation(format!("generator {gi} exceeds dimension {MAX_DIM}")));
            }
            for a in 0..A {
                let expected = if g.degree[a] == 0 { 0 } else { g.degree[a] + 1 };
                if g.faces[a].len() != expected {
                    return Err(Error::Presentation(format!(
                        "generator {gi} ({}) has {} faces in direction {a}, expected {expected}",
                        g.label,
                        g.faces[a].len()
                    )));
                }
                for f in &g.faces[a] {
                    let target = self.gens.get(f.gen as usize).ok_or_else(|| {
                        Error::Presentation(format!("generator {gi} has a face on unknown generator {}", f.gen))
                    })?;
                    let mut want = g.degree;
                    want[a] -= 1;
                    if f.degree() != want || f.core_degree() != target.degree {
                        return Err(Error::Presentation(format!(
                            "generator {gi} ({}) has a face of the wrong degree",
                            g.label
                        )));
                    }
                    if f.gen as usize == gi {
                        return Err(Error::Presentation(format!("generator {gi} is its own face")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Simplicial identities `d_i d_j = d_{j-1} d_i` (i < j) in each
    /// direction, and commutation of faces in different directions.
    pub fn check_identities(&self) -> Result<()> {
        for gi in 0..self.gens.len() as u32 {
            let g = &self.gens[gi as usize];
            let x = Simplex::generator(gi, g.degree);
            for a in 0..A {
                let d = g.degree[a];
                for j in 0..=d {
                    for i in 0..j {
                        if d < 2 {
                            continue;
                        }
                        let lhs = self.face(&self.face(&x, a, j), a, i);
                        let rhs = self.face(&self.face(&x, a, i), a, j - 1);
                        if lhs != rhs {
                            return Err(Error::Presentation(format!(
                                "generator {gi} ({}) violates d{i}d{j} = d{}d{i} in direction {a}",
                                g.label,
                                j - 1
                            )));
                        }
                    }
                }
                for b in 0..A {
                    if b == a || g.degree[b] == 0 || d == 0 {
                        continue;
                    }
                    for i in 0..=d {
                        for j in 0..=g.degree[b] {
                            let lhs = self.face(&self.face(&x, a, i), b, j);
                            let rhs = self.face(&self.face(&x, b, j), a, i);
                            if lhs != rhs {
                                return Err(Error::Presentation(format!(
                                    "generator {gi} ({}): faces in directions {a} and {b} do not commute",
                                    g.label
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The face `d_i` in direction `axis`, in normal form.
    pub fn face(&self, x: &Simplex<A>, axis: usize, i: usize) -> Simplex<A> {
        match x.degen[axis].after_coface(i) {
            Ok(s) => {
                let mut degen = x.degen;
                degen[axis] = s;
                Simplex { gen: x.gen, degen }
            }
            Err((j, s)) => {
                let y = self.gens[x.gen as usize].faces[axis][j];
                let mut degen = [Surjection::identity(0); A];
                for b in 0..A {
                    degen[b] = if b == axis { y.degen[b].after(s) } else { y.degen[b].after(x.degen[b]) };
                }
                Simplex { gen: y.gen, degen }
            }
        }
    }

    pub fn degeneracy(&self, x: &Simplex<A>, axis: usize, i: usize) -> Simplex<A> {
        let mut degen = x.degen;
        degen[axis] = degen[axis].then_codegeneracy(i);
        Simplex { gen: x.gen, degen }
    }

    pub fn apply_injection(&self, x: &Simplex<A>, axis: usize, inj: Injection) -> Simplex<A> {
        debug_assert_eq!(inj.target(), x.degree()[axis]);
        let mut y = *x;
        for i in inj.face_sequence() {
            y = self.face(&y, axis, i as usize);
        }
        y
    }

    /// Vertex generator of `x` at multi-index `at`.
    pub fn vertex(&self, x: &Simplex<A>, at: [usize; A]) -> u32 {
        let mut y = *x;
        for a in 0..A {
            let inj = Injection::from_values(y.degree()[a], &[at[a] as u8]).expect("vertex index in range");
            y = self.apply_injection(&y, a, inj);
        }
        debug_assert!(y.degree().iter().all(|&d| d == 0));
        y.gen
    }

    /// Face-closure of a set of generators.
    pub fn closure(&self, seeds: impl IntoIterator<Item = u32>) -> Vec<bool> {
        let mut keep = vec![false; self.gens.len()];
        let mut stack: Vec<u32> = seeds.into_iter().collect();
        while let Some(g) = stack.pop() {
            if std::mem::replace(&mut keep[g as usize], true) {
                continue;
            }
            for a in 0..A {
                for f in &self.gens[g as usize].faces[a] {
                    if !keep[f.gen as usize] {
                        stack.push(f.gen);
                    }
                }
            }
        }
        keep
    }

    pub fn is_closed(&self, keep: &[bool]) -> bool {
        self.gens.iter().enumerate().all(|(gi, g)| {
            !keep[gi] || (0..A).all(|a| g.faces[a].iter().all(|f| keep[f.gen as usize]))
        })
    }

    /// The sub-presentation on a face-closed set of generators, with the
    /// old-to-new index map (`u32::MAX` for dropped generators).
    pub fn restrict(&self, keep: &[bool]) -> Result<(Presentation<A>, Vec<u32>)> {
        if keep.len() != self.gens.len() || !self.is_closed(keep) {
            return Err(Error::Presentation("generator subset is not closed under faces".into()));
        }
        let mut remap = vec![u32::MAX; self.gens.len()];
        let mut next = 0u32;
        for (i, &k) in keep.iter().enumerate() {
            if k {
                remap[i] = next;
                next += 1;
            }
        }
        let gens = self
            .gens
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(g, _)| Generator {
                degree: g.degree,
                faces: g.faces.clone().map(|fs| {
                    fs.into_iter().map(|f| Simplex { gen: remap[f.gen as usize], degen: f.degen }).collect()
                }),
                label: g.label.clone(),
            })
            .collect();
        Ok((Presentation::new_unchecked(gens), remap))
    }

    /// Generators that are not a face of any other generator.
    pub fn maximal_generators(&self) -> Vec<u32> {
        let mut is_face = vec![false; self.gens.len()];
        for g in &self.gens {
            for a in 0..A {
                for f in &g.faces[a] {
                    is_face[f.gen as usize] = true;
                }
            }
        }
        (0..self.gens.len() as u32).filter(|&g| !is_face[g as usize]).collect()
    }

    /// Disjoint union; the second summand's generators are shifted.
    pub fn disjoint_union(&self, other: &Presentation<A>) -> Presentation<A> {
        let shift = self.gens.len() as u32;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| Generator {
            degree: g.degree,
            faces: g.faces.clone().map(|fs| fs.into_iter().map(|f| Simplex { gen: f.gen + shift, degen: f.degen }).collect()),
            label: g.label.clone(),
        }));
        Presentation::new_unchecked(gens)
    }

    /// Deterministic text form: one generator per line with its faces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            let deg: Vec<String> = g.degree.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("{i} [{}] {}", deg.join(","), g.label));
            for a in 0..A {
                if g.faces[a].is_empty() {
                    continue;
                }
                let fs: Vec<String> = g.faces[a].iter().map(format_face).collect();
                out.push_str(&format!(" d{a}:({})", fs.join(" ")));
            }
            out.push('\n');
        }
        out
    }

    /// Checks that labels are unique (used before label-based matching).
    pub fn labels_unique(&self) -> bool {
        let mut seen = HashSet::new();
        self.gens.iter().all(|g| seen.insert(g.label.as_str()))
    }
}

fn format_face<const A: usize>(f: &Simplex<A>) -> String {
    if f.is_nondegenerate() {
        format!("{}", f.gen)
    } else {
        let ds: Vec<String> = f.degen.iter().map(|s| s.to_string()).collect();
        format!("{}<{}>", f.gen, ds.join(","))
    }
}

/// Makes a generator of a one-directional presentation.
pub(crate) fn gen1(dim: usize, faces: Vec<Simplex<1>>, label: impl Into<String>) -> Generator<1> {
    Generator { degree: [dim], faces: [faces], label: label.into() }
}

pub(crate) fn simplex1(gen: u32, degen: Surjection) -> Simplex<1> {
    Simplex { gen, degen: [degen] }
}

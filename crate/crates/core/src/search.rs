//! Backtracking enumeration of maps from a presentation into a table.
//!
//! Maximal generators are assigned one at a time, in an order where each
//! one shares faces with earlier ones; the images of all lower generators
//! are then forced by the face relations and checked for consistency.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::table::{Table, NONE};

pub type Filter<'a> = &'a dyn Fn(u32, u32) -> bool;

/// A configured search for maps `source -> target`.
pub struct MapSearch<'a, const A: usize> {
    source: &'a Presentation<A>,
    target: &'a Table<A>,
    /// Source generators whose image must be a marked element.
    marked: Option<&'a [bool]>,
    fixed: Vec<u32>,
    filter: Option<Filter<'a>>,
    injective: bool,
    budget: Option<u64>,
}

impl<'a, const A: usize> MapSearch<'a, A> {
    pub fn new(source: &'a Presentation<A>, target: &'a Table<A>) -> Self {
        MapSearch {
            source,
            target,
            marked: None,
            fixed: vec![NONE; source.len()],
            filter: None,
            injective: false,
            budget: None,
        }
    }

    pub fn marked(mut self, marked: &'a [bool]) -> Self {
        self.marked = Some(marked);
        self
    }

    /// Pre-assigns images (NONE leaves a generator free).
    pub fn fixed(mut self, fixed: Vec<u32>) -> Self {
        assert_eq!(fixed.len(), self.source.len());
        self.fixed = fixed;
        self
    }

    /// Extra admissibility predicate `(generator, candidate)`.
    pub fn filter(mut self, f: Filter<'a>) -> Self {
        self.filter = Some(f);
        self
    }

    /// Restricts to maps sending generators injectively to nondegenerate elements.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    /// Counts all maps.
    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.run(|_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    pub fn collect(&self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.run(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        })?;
        out.sort();
        Ok(out)
    }

    pub fn first(&self) -> Result<Option<Vec<u32>>> {
        let mut out = None;
        self.run(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(out)
    }

    /// Visits every map (as images of the generators, in table indices).
    /// The visiting order is deterministic but not sorted.
    pub fn run(&self, mut visit: impl FnMut(&[u32]) -> ControlFlow<()>) -> Result<()> {
        let src = self.source;
        let n = src.len();
        let mut level_of = Vec::with_capacity(n);
        for g in src.generators() {
            match self.target.index(g.degree) {
                Some(li) => level_of.push(li),
                None => {
                    return Err(Error::Bounds {
                        requested: format!("{:?}", g.degree),
                        bounds: format!("{:?}", self.target.bounds()),
                    })
                }
            }
        }
        let mut state = State {
            search: self,
            level_of,
            images: vec![NONE; n],
            trail: Vec::new(),
            used: if self.injective {
                self.target.levels().iter().map(|l| vec![false; l.count()]).collect()
            } else {
                Vec::new()
            },
            nodes: 0,
        };
        // Fixed images first; their consistency is checked like any other.
        for g in 0..n as u32 {
            let v = self.fixed[g as usize];
            if v == NONE || state.images[g as usize] != NONE {
                if v != NONE && state.images[g as usize] != v {
                    return Ok(());
                }
                continue;
            }
            if !state.admissible(g, v) || !state.assign(g, v) {
                return Ok(());
            }
        }
        let order = order_maximal(src, &state.images);
        state.dfs(&order, &mut visit)
    }
}

struct State<'s, 'a, const A: usize> {
    search: &'s MapSearch<'a, A>,
    level_of: Vec<usize>,
    images: Vec<u32>,
    trail: Vec<u32>,
    used: Vec<Vec<bool>>,
    nodes: u64,
}

impl<const A: usize> State<'_, '_, A> {
    fn admissible(&self, g: u32, v: u32) -> bool {
        let s = self.search;
        let li = self.level_of[g as usize];
        if v as usize >= s.target.level_at(li).count() {
            return false;
        }
        if let Some(m) = s.marked {
            if m[g as usize] {
                let deg = s.source.degree(g);
                if !s.target.is_marked(deg, v) {
                    return false;
                }
            }
        }
        if s.injective
            && (self.used[li][v as usize] || s.target.is_degenerate(s.source.degree(g), v)) {
                return false;
            }
        if let Some(f) = s.filter {
            if !f(g, v) {
                return false;
            }
        }
        true
    }

    fn set(&mut self, g: u32, v: u32) {
        self.images[g as usize] = v;
        if self.search.injective {
            self.used[self.level_of[g as usize]][v as usize] = true;
        }
        self.trail.push(g);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let g = self.trail.pop().unwrap();
            if self.search.injective {
                let v = self.images[g as usize];
                self.used[self.level_of[g as usize]][v as usize] = false;
            }
            self.images[g as usize] = NONE;
        }
    }

    /// Assigns `g ↦ v` and propagates forced images of faces. On failure
    /// the caller must undo to its mark.
    fn assign(&mut self, g: u32, v: u32) -> bool {
        let src = self.search.source;
        let tgt = self.search.target;
        self.set(g, v);
        let mut stack = vec![g];
        while let Some(h) = stack.pop() {
            let hv = self.images[h as usize];
            let gen = src.generator(h);
            let li = self.level_of[h as usize];
            for a in 0..A {
                for (i, f) in gen.faces[a].iter().enumerate() {
                    let z = tgt.face_at(li, a, i, hv);
                    let mut fdeg = gen.degree;
                    fdeg[a] -= 1;
                    let cur = self.images[f.gen as usize];
                    if cur != NONE {
                        if tgt.apply_surjections(src.degree(f.gen), cur, &f.degen) != Some(z) {
                            return false;
                        }
                    } else {
                        let Some(w) = tgt.desigma(fdeg, z, &f.degen) else { return false };
                        if !self.admissible(f.gen, w) {
                            return false;
                        }
                        self.set(f.gen, w);
                        stack.push(f.gen);
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, h: u32) -> Candidates<'_> {
        let src = self.search.source;
        let tgt = self.search.target;
        let gen = src.generator(h);
        let li = self.level_of[h as usize];
        for a in 0..A {
            for (i, f) in gen.faces[a].iter().enumerate() {
                let cur = self.images[f.gen as usize];
                if cur == NONE {
                    continue;
                }
                return match tgt.apply_surjections(src.degree(f.gen), cur, &f.degen) {
                    Some(req) => Candidates::Slice(tgt.with_face_at(li, a, i, req)),
                    None => Candidates::Slice(&[]),
                };
            }
        }
        Candidates::Range(0..tgt.level_at(li).count() as u32)
    }

    fn dfs(&mut self, order: &[u32], visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>) -> Result<()> {
        struct Frame {
            cands: Vec<u32>,
            pos: usize,
            mark: usize,
        }
        let mut frames: Vec<Frame> = Vec::with_capacity(order.len());
        let mut depth = 0usize;
        let mut descending = true;
        loop {
            if descending {
                // skip generators already forced
                while depth < order.len() && self.images[order[depth] as usize] != NONE {
                    frames.push(Frame { cands: Vec::new(), pos: 0, mark: self.trail.len() });
                    depth += 1;
                }
                if depth == order.len() {
                    if visit(&self.images).is_break() {
                        return Ok(());
                    }
                    descending = false;
                } else {
                    let h = order[depth];
                    let cands = self.candidates(h).to_vec();
                    frames.push(Frame { cands, pos: 0, mark: self.trail.len() });
                    depth += 1;
                    descending = false;
                }
                continue;
            }
            // advance the top frame
            let Some(frame) = frames.last_mut() else { return Ok(()) };
            let mark = frame.mark;
            let h = order[depth - 1];
            self.undo(mark);
            let mut advanced = false;
            while frame.pos < frame.cands.len() {
                let c = frame.cands[frame.pos];
                frame.pos += 1;
                self.nodes += 1;
                if let Some(b) = self.search.budget {
                    if self.nodes > b {
                        return Err(Error::Budget(b));
                    }
                }
                if self.images[h as usize] == NONE && self.admissible(h, c) {
                    if self.assign(h, c) {
                        advanced = true;
                        break;
                    }
                    self.undo(mark);
                }
            }
            if advanced {
                descending = true;
            } else {
                frames.pop();
                depth -= 1;
                if frames.is_empty() {
                    return Ok(());
                }
            }
        }
    }
}

enum Candidates<'t> {
    Slice(&'t [u32]),
    Range(std::ops::Range<u32>),
}

impl Candidates<'_> {
    fn to_vec(&self) -> Vec<u32> {
        match self {
            Candidates::Slice(s) => s.to_vec(),
            Candidates::Range(r) => r.clone().collect(),
        }
    }
}

/// Maximal generators ordered so that each shares a face-generator with an
/// earlier one whenever possible (breadth-first over shared faces).
fn order_maximal<const A: usize>(p: &Presentation<A>, images: &[u32]) -> Vec<u32> {
    let maxes: Vec<u32> = p.maximal_generators().into_iter().filter(|&g| images[g as usize] == NONE).collect();
    if maxes.len() <= 1 {
        return maxes;
    }
    // sub-generator -> maximal generators having it as a direct face
    let mut by_face: Vec<Vec<u32>> = vec![Vec::new(); p.len()];
    for &m in &maxes {
        for a in 0..A {
            for f in &p.generator(m).faces[a] {
                by_face[f.gen as usize].push(m);
            }
        }
    }
    let mut seen = vec![false; p.len()];
    let mut out = Vec::with_capacity(maxes.len());
    let mut queue = std::collections::VecDeque::new();
    for &start in &maxes {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(m) = queue.pop_front() {
            out.push(m);
            for a in 0..A {
                for f in &p.generator(m).faces[a] {
                    for &n in &by_face[f.gen as usize] {
                        if !seen[n as usize] {
                            seen[n as usize] = true;
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
    }
    out
}

//! Monotone maps between finite ordinals `[n] = {0, ..., n}`.
//!
//! Every simplicial operator factors uniquely as a surjection followed by an
//! injection. Both halves are stored as bitmasks so that simplices can be
//! hashed and compared cheaply.

use std::fmt;

use arrayvec::ArrayVec;

/// Largest simplicial dimension representable by the bitmask encodings.
pub const MAX_DIM: usize = 15;

pub type Values = ArrayVec<u8, 16>;

/// A surjective monotone map `[n] ->> [k]`.
///
/// Stored as the set of positions `i` in `1..=n` at which the map steps up,
/// i.e. `σ(i) = σ(i-1) + 1`. The number of steps is `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    src: u8,
    steps: u16,
}

impl Surjection {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Surjection { src: n as u8, steps: full_mask(n) }
    }

    /// The unique map `[n] -> [0]`.
    pub fn to_point(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        Surjection { src: n as u8, steps: 0 }
    }

    pub fn from_steps(n: usize, steps: u16) -> Self {
        debug_assert_eq!(steps & !full_mask(n), 0);
        Surjection { src: n as u8, steps }
    }

    /// Builds a surjection from its value sequence; `None` unless the
    /// sequence starts at 0 and increases by 0 or 1 at each position.
    pub fn from_values(values: &[u8]) -> Option<Self> {
        if values.is_empty() || values[0] != 0 || values.len() > MAX_DIM + 1 {
            return None;
        }
        let mut steps = 0u16;
        for i in 1..values.len() {
            match values[i].checked_sub(values[i - 1]) {
                Some(0) => {}
                Some(1) => steps |= 1 << i,
                _ => return None,
            }
        }
        Some(Surjection { src: (values.len() - 1) as u8, steps })
    }

    /// The elementary codegeneracy `s^i : [n+1] ->> [n]` repeating `i`.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n && n < MAX_DIM);
        let mut values = Values::new();
        for j in 0..=n + 1 {
            values.push(if j <= i { j as u8 } else { (j - 1) as u8 });
        }
        Surjection::from_values(&values).unwrap()
    }

    pub fn source(&self) -> usize {
        self.src as usize
    }

    pub fn target(&self) -> usize {
        self.steps.count_ones() as usize
    }

    pub fn steps(&self) -> u16 {
        self.steps
    }

    pub fn is_identity(&self) -> bool {
        self.steps == full_mask(self.src as usize)
    }

    pub fn eval(&self, i: usize) -> usize {
        (self.steps & full_mask(i)).count_ones() as usize
    }

    pub fn values(&self) -> Values {
        (0..=self.source()).map(|i| self.eval(i) as u8).collect()
    }

    /// `self ∘ inner`, where `inner : [p] ->> [n]` and `self : [n] ->> [k]`.
    pub fn after(self, inner: Surjection) -> Surjection {
        debug_assert_eq!(inner.target(), self.source());
        let values: Values = inner.values().iter().map(|&v| self.eval(v as usize) as u8).collect();
        Surjection::from_values(&values).expect("composite of surjections")
    }

    /// `self ∘ s^i`.
    pub fn then_codegeneracy(self, i: usize) -> Surjection {
        let n = self.source();
        debug_assert!(i <= n);
        let low = self.steps & full_mask(i);
        let high = (self.steps & !full_mask(i)) << 1;
        Surjection { src: (n + 1) as u8, steps: low | high }
    }

    /// Precompose with the coface `δ^i : [n-1] -> [n]`.
    ///
    /// Returns `Ok(σ')` when `σ ∘ δ^i` is still surjective, otherwise
    /// `Err((j, σ'))` with `σ ∘ δ^i = δ^j ∘ σ'`.
    pub fn after_coface(self, i: usize) -> Result<Surjection, (usize, Surjection)> {
        let n = self.source();
        debug_assert!(n >= 1 && i <= n);
        let mut values = self.values();
        let hit = values.remove(i);
        let lonely = !values.contains(&hit);
        if !lonely {
            return Ok(Surjection::from_values(&values).unwrap());
        }
        let j = hit as usize;
        for v in values.iter_mut() {
            if *v as usize > j {
                *v -= 1;
            }
        }
        Err((j, Surjection::from_values(&values).unwrap()))
    }

    /// The section picking the least preimage of each value.
    pub fn section(&self) -> Injection {
        let mut image = 1u16;
        for i in 1..=self.source() {
            if self.steps & (1 << i) != 0 {
                image |= 1 << i;
            }
        }
        Injection { tgt: self.src, image }
    }

    /// Indices `i_1 < i_2 < ...` such that `σ^*(x) = s_{i_r} ... s_{i_1}(x)`,
    /// applied in increasing order.
    pub fn degeneracy_sequence(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.source()).filter(move |p| self.steps & (1 << p) == 0).map(|p| p - 1)
    }

    /// All surjections `[n] ->> [k]` in increasing order of their step masks.
    pub fn all(n: usize, k: usize) -> Vec<Surjection> {
        assert!(n <= MAX_DIM);
        if k > n {
            return Vec::new();
        }
        let mut out: Vec<Surjection> = (0u32..(1u32 << n))
            .map(|m| (m << 1) as u16)
            .filter(|m| m.count_ones() as usize == k)
            .map(|steps| Surjection { src: n as u8, steps })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ")?;
        for v in self.values() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.values() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An injective monotone map `[k] -> [n]`, stored as its image bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Injection {
    tgt: u8,
    image: u16,
}

impl Injection {
    pub fn identity(n: usize) -> Self {
        Injection { tgt: n as u8, image: full_mask(n) | 1 }
    }

    /// The coface `δ^i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(i <= n);
        Injection { tgt: n as u8, image: (full_mask(n) | 1) & !(1 << i) }
    }

    pub fn from_image(n: usize, image: u16) -> Self {
        debug_assert!(image != 0 && image & !(full_mask(n) | 1) == 0);
        Injection { tgt: n as u8, image }
    }

    pub fn from_values(n: usize, values: &[u8]) -> Option<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) || values.iter().any(|&v| v as usize > n) {
            return None;
        }
        let image = values.iter().fold(0u16, |acc, &v| acc | (1 << v));
        (image != 0).then_some(Injection { tgt: n as u8, image })
    }

    pub fn source(&self) -> usize {
        self.image.count_ones() as usize - 1
    }

    pub fn target(&self) -> usize {
        self.tgt as usize
    }

    pub fn image(&self) -> u16 {
        self.image
    }

    pub fn values(&self) -> Values {
        (0..=self.target()).filter(|&i| self.image & (1 << i) != 0).map(|i| i as u8).collect()
    }

    /// `self ∘ inner`.
    pub fn after(self, inner: Injection) -> Injection {
        debug_assert_eq!(inner.target(), self.source());
        let outer = self.values();
        let image = inner.values().iter().fold(0u16, |acc, &v| acc | (1 << outer[v as usize]));
        Injection { tgt: self.tgt, image }
    }

    /// Face indices, in application order, with `ι^*(x) = d_{j_r} ... d_{j_1}(x)`.
    pub fn face_sequence(&self) -> Values {
        (0..=self.target()).rev().filter(|&i| self.image & (1 << i) == 0).map(|i| i as u8).collect()
    }
}

/// A general monotone map `[p] -> [n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monotone {
    values: Values,
    target: u8,
}

impl Monotone {
    pub fn new(values: &[u8], target: usize) -> Option<Self> {
        if values.is_empty()
            || values.len() > MAX_DIM + 1
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v as usize > target)
        {
            return None;
        }
        Some(Monotone { values: values.iter().copied().collect(), target: target as u8 })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    /// Epi-mono factorization `θ = ι ∘ π`.
    pub fn factor(&self) -> (Injection, Surjection) {
        let image = self.values.iter().fold(0u16, |acc, &v| acc | (1 << v));
        let inj = Injection { tgt: self.target, image };
        let rank = |v: u8| (image & ((1u16 << v) - 1)).count_ones() as u8;
        let reduced: Values = self.values.iter().map(|&v| rank(v)).collect();
        (inj, Surjection::from_values(&reduced).expect("reduced values are surjective"))
    }

    /// Every monotone map `[p] -> [n]` in lexicographic order of values.
    pub fn all(p: usize, n: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut cur = Values::new();
        fn rec(p: usize, n: usize, cur: &mut Values, out: &mut Vec<Monotone>) {
            if cur.len() == p + 1 {
                out.push(Monotone { values: cur.clone(), target: n as u8 });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..=n as u8 {
                cur.push(v);
                rec(p, n, cur, out);
                cur.pop();
            }
        }
        rec(p, n, &mut cur, &mut out);
        out
    }
}

/// Bits `1..=n`.
pub(crate) fn full_mask(n: usize) -> u16 {
    if n == 0 {
        0
    } else {
        (((1u32 << (n + 1)) - 1) as u16) & !1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_point() {
        let id = Surjection::identity(3);
        assert!(id.is_identity());
        assert_eq!(id.target(), 3);
        assert_eq!(id.values().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(Surjection::to_point(2).values().as_slice(), &[0, 0, 0]);
        assert!(Surjection::identity(0).is_identity());
    }

    #[test]
    fn codegeneracy_values() {
        assert_eq!(Surjection::codegeneracy(2, 1).values().as_slice(), &[0, 1, 1, 2]);
        assert_eq!(Surjection::codegeneracy(0, 0).values().as_slice(), &[0, 0]);
    }

    #[test]
    fn then_codegeneracy_matches_composition() {
        for n in 0..5 {
            for k in 0..=n {
                for s in Surjection::all(n, k) {
                    for i in 0..=n {
                        let direct = s.then_codegeneracy(i);
                        let composed = s.after(Surjection::codegeneracy(n, i));
                        assert_eq!(direct, composed);
                    }
                }
            }
        }
    }

    #[test]
    fn after_coface_factors() {
        for n in 1..5 {
            for k in 0..=n {
                for s in Surjection::all(n, k) {
                    for i in 0..=n {
                        let mut vals = s.values();
                        vals.remove(i);
                        match s.after_coface(i) {
                            Ok(t) => assert_eq!(t.values(), vals),
                            Err((j, t)) => {
                                let back: Values = t
                                    .values()
                                    .iter()
                                    .map(|&v| if v as usize >= j { v + 1 } else { v })
                                    .collect();
                                assert_eq!(back, vals);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(Surjection::all(4, 2).len(), 6);
        assert_eq!(Surjection::all(3, 3).len(), 1);
        assert_eq!(Surjection::all(3, 0).len(), 1);
    }

    #[test]
    fn monotone_count_and_factor() {
        // monotone maps [p] -> [n] number C(p+n+1, p+1)
        assert_eq!(Monotone::all(2, 1).len(), 4);
        assert_eq!(Monotone::all(1, 1).len(), 3);
        assert_eq!(Monotone::all(2, 3).len(), 20);
        let m = Monotone::new(&[1, 1, 3], 3).unwrap();
        let (inj, surj) = m.factor();
        assert_eq!(inj.values().as_slice(), &[1, 3]);
        assert_eq!(surj.values().as_slice(), &[0, 0, 1]);
    }

    #[test]
    fn injection_faces() {
        let inj = Injection::from_values(4, &[0, 2, 3]).unwrap();
        assert_eq!(inj.face_sequence().as_slice(), &[4, 1]);
        assert_eq!(Injection::coface(3, 1).values().as_slice(), &[0, 2, 3]);
        let sec = Surjection::from_values(&[0, 0, 1, 1, 2]).unwrap().section();
        assert_eq!(sec.values().as_slice(), &[0, 2, 4]);
    }
}

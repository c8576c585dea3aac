//! Permutations on `{1..E}` with cycle arithmetic and permutation-group
//! utilities (orbits, group order via a stabilizer chain).
//!
//! Labels are 1-based in every public interface; storage is 0-based.
//! Composition follows the function convention: `p.compose(&q)` applies `q`
//! first, then `p`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., degree}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// images[i] = image of point i, both 0-based.
    images: Vec<u32>,
}

/// Cycle decomposition of a permutation.
///
/// Fixed points are kept as explicit 1-cycles. Each cycle starts at its
/// minimal label and cycles are sorted by that minimal label, so the
/// decomposition is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub cycles: Vec<Vec<usize>>,
    /// Sorted multiset of cycle lengths.
    pub cycle_type: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles in 1-based labels.
    /// Labels absent from every cycle are fixed points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &label in cycle {
                if label == 0 || label > degree {
                    return Err(Error::LabelOutOfRange { label, degree });
                }
                if seen[label - 1] {
                    return Err(Error::DuplicateLabel(label));
                }
                seen[label - 1] = true;
            }
            for (i, &label) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[label - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from one-line notation: `images[i]` is the image
    /// of `i + 1`, in 1-based labels.
    pub fn from_one_line(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut out = vec![u32::MAX; degree];
        let mut hit = vec![false; degree];
        for (i, &im) in images.iter().enumerate() {
            if im == 0 || im > degree {
                return Err(Error::LabelOutOfRange { label: im, degree });
            }
            if hit[im - 1] {
                return Err(Error::NotABijection(degree));
            }
            hit[im - 1] = true;
            out[i] = (im - 1) as u32;
        }
        Ok(Permutation { images: out })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based label.
    pub fn apply(&self, label: usize) -> usize {
        assert!(
            label >= 1 && label <= self.images.len(),
            "label {label} out of range 1..={}",
            self.images.len()
        );
        self.images[label - 1] as usize + 1
    }

    /// 0-based image slice; `images()[i]` is the image of point `i`.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = other
            .images
            .iter()
            .map(|&im| self.images[im as usize])
            .collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^n` for any integer exponent, by binary exponentiation.
    pub fn power(&self, n: i64) -> Permutation {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base).expect("equal degrees");
            }
            base = base.compose(&base).expect("equal degrees");
            exp >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> CycleStructure {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 0..degree {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur] as usize;
            }
            cycles.push(cycle);
        }
        let mut cycle_type: Vec<usize> = cycles.iter().map(Vec::len).collect();
        cycle_type.sort_unstable();
        CycleStructure { cycles, cycle_type }
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .cycle_type
            .iter()
            .fold(1u64, |acc, &len| lcm(acc, len as u64))
    }

    /// Parses cycle notation such as `"(1,16)(2,15)"`. Whitespace between
    /// tokens is allowed; omitted labels are fixed points; the empty string
    /// (or `"()"`) is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let b = bytes[pos];
            if b.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if b != b'(' {
                return Err(Error::CycleParse {
                    pos,
                    reason: format!("expected '(' but found {:?}", b as char),
                });
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b')' && cycle.is_empty() {
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(Error::CycleParse {
                        pos,
                        reason: "expected a label".into(),
                    });
                }
                let label: usize = text[start..pos].parse().map_err(|_| Error::CycleParse {
                    pos: start,
                    reason: "label does not fit usize".into(),
                })?;
                cycle.push(label);
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => break,
                    _ => {
                        return Err(Error::CycleParse {
                            pos,
                            reason: "expected ',' or ')'".into(),
                        })
                    }
                }
            }
            if bytes.get(pos) != Some(&b')') {
                return Err(Error::CycleParse {
                    pos,
                    reason: "unterminated cycle".into(),
                });
            }
            pos += 1;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    /// Prints the full cycle decomposition including fixed points, e.g.
    /// `(1)(2,3,4)`. Round-trips through [`Permutation::parse`] at the same
    /// degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles().cycles {
            write!(f, "(")?;
            for (i, label) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{label}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, label) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{label}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_generators(generators: &[Permutation]) -> Result<usize> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let degree = first.degree();
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    Ok(degree)
}

/// Orbits of `{1..E}` under the group generated by `generators`.
/// Each orbit is sorted ascending; orbits are sorted by minimal element.
pub fn orbits(generators: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    let degree = check_generators(generators)?;
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start + 1];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for g in generators {
                let q = g.images()[p] as usize;
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q + 1);
                    stack.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

fn smallest_moved_point(g: &Permutation) -> Option<usize> {
    g.images()
        .iter()
        .enumerate()
        .find(|(i, &im)| *i as u32 != im)
        .map(|(i, _)| i)
}

/// Stabilizer chain over a global strong generating set. Level `i` works
/// with the strong generators that fix `bases[0..i]` and stores the orbit of
/// `bases[i]` under them, with a transversal of coset representatives.
struct Chain {
    degree: usize,
    bases: Vec<usize>,
    strong: Vec<Permutation>,
    /// transversals[i][p] maps `bases[i]` to `p` (0-based points).
    transversals: Vec<HashMap<usize, Permutation>>,
}

impl Chain {
    fn build(generators: &[Permutation]) -> Result<Chain> {
        let degree = check_generators(generators)?;
        let mut chain = Chain {
            degree,
            bases: Vec::new(),
            strong: generators
                .iter()
                .filter(|g| !g.is_identity())
                .cloned()
                .collect(),
            transversals: Vec::new(),
        };
        for i in 0..chain.strong.len() {
            let g = chain.strong[i].clone();
            chain.ensure_some_base_moved_by(&g);
        }
        for level in 0..chain.bases.len() {
            chain.recompute_transversal(level);
        }
        for level in (0..chain.bases.len()).rev() {
            chain.verify_level(level);
        }
        Ok(chain)
    }

    fn ensure_some_base_moved_by(&mut self, g: &Permutation) {
        if self.bases.iter().all(|&b| g.images()[b] == b as u32) {
            self.bases
                .push(smallest_moved_point(g).expect("non-identity"));
        }
    }

    /// Strong generators fixing `bases[0..level]`.
    fn level_gens(&self, level: usize) -> Vec<Permutation> {
        self.strong
            .iter()
            .filter(|g| self.bases[..level].iter().all(|&b| g.images()[b] == b as u32))
            .cloned()
            .collect()
    }

    /// Rebuilds level's orbit and transversal by a deterministic
    /// breadth-first scan.
    fn recompute_transversal(&mut self, level: usize) {
        let gens = self.level_gens(level);
        let base = self.bases[level];
        let mut transversal = HashMap::new();
        transversal.insert(base, Permutation::identity(self.degree));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            let rep = transversal[&p].clone();
            for g in &gens {
                let q = g.images()[p] as usize;
                if !transversal.contains_key(&q) {
                    transversal.insert(q, g.compose(&rep).expect("equal degrees"));
                    queue.push(q);
                }
            }
        }
        while self.transversals.len() <= level {
            self.transversals.push(HashMap::new());
        }
        self.transversals[level] = transversal;
    }

    /// Sifts `h` through levels `from..`; returns the residue together with
    /// the level at which it got stuck (`bases.len()` if it fell through the
    /// whole chain).
    fn strip(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for level in from..self.bases.len() {
            let image = h.images()[self.bases[level]] as usize;
            match self.transversals[level].get(&image) {
                Some(rep) => h = rep.inverse().compose(&h).expect("equal degrees"),
                None => return (h, level),
            }
        }
        (h, self.bases.len())
    }

    /// Ensures every Schreier generator of `level` strips to the identity
    /// through the deeper levels, extending the chain where it does not.
    /// Levels deeper than `level` must be verified on entry; they remain
    /// verified on exit.
    fn verify_level(&mut self, level: usize) {
        self.recompute_transversal(level);
        'rescan: loop {
            let gens = self.level_gens(level);
            let mut points: Vec<usize> = self.transversals[level].keys().copied().collect();
            points.sort_unstable();
            for p in points {
                let rep = self.transversals[level][&p].clone();
                for s in &gens {
                    let q = s.images()[p] as usize;
                    let target = self.transversals[level][&q].clone();
                    let schreier = target
                        .inverse()
                        .compose(&s.compose(&rep).expect("equal degrees"))
                        .expect("equal degrees");
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, stuck) = self.strip(schreier, level + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    // `residue` fixes bases[0..stuck] and moves bases[stuck]
                    // (or needs a fresh base point), so the chain grows at
                    // levels level+1..=stuck only.
                    if stuck == self.bases.len() {
                        self.bases
                            .push(smallest_moved_point(&residue).expect("non-identity"));
                    }
                    self.strong.push(residue);
                    for l in level + 1..=stuck {
                        self.recompute_transversal(l);
                    }
                    for l in (level + 1..=stuck).rev() {
                        self.verify_level(l);
                    }
                    continue 'rescan;
                }
            }
            return;
        }
    }
}

/// Sizes of the fundamental orbits of a stabilizer chain for the group
/// generated by `generators`. The group order is their product; callers that
/// must avoid overflow can inspect the factors directly.
pub fn stabilizer_orbit_sizes(generators: &[Permutation]) -> Result<Vec<usize>> {
    let chain = Chain::build(generators)?;
    Ok(chain.transversals.iter().map(HashMap::len).collect())
}

/// Order of the group generated by `generators`, computed by a deterministic
/// Schreier-Sims stabilizer chain. Errors with [`Error::OrderOverflow`] if
/// the order does not fit in `u128`.
pub fn group_order(generators: &[Permutation]) -> Result<u128> {
    let mut order: u128 = 1;
    for size in stabilizer_orbit_sizes(generators)? {
        order = order
            .checked_mul(size as u128)
            .ok_or(Error::OrderOverflow)?;
    }
    Ok(order)
}

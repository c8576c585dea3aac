//! Exhaustive classification of uniform clean dessins of a fixed type and
//! genus, up to equivalence.
//!
//! Since all permutations with cycle type `(2m)^(E/2m)` are conjugate,
//! `sigma1` can be fixed as the canonical ascending-block permutation
//! without losing classes. The search then runs over fixed-point-free
//! involutions `sigma0`, pruning by partial face-cycle lengths (every face
//! must close at exactly degree `k`) and by two safe symmetry reductions
//! from the centralizer of `sigma1` (block rotations and swaps of untouched
//! blocks). Survivors are deduplicated by canonical form, which also makes
//! the result independent of search order and worker count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::curve::{decompose, is_filling_curve};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::hypgeom::min_length_clean;
use crate::perm::{orbits, Permutation};

/// Everything found for one `(type, genus)` instance.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub type_triple: (usize, usize, usize),
    pub genus: usize,
    pub degree: usize,
    /// One representative per equivalence class, ordered by canonical form.
    pub classes: Vec<Dessin>,
    pub filling_count: usize,
    /// Component count `r` mapped to the number of classes realizing it.
    pub component_histogram: BTreeMap<usize, usize>,
}

/// One row of a human-readable enumeration report.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub passport: crate::dessin::Passport,
    /// Cycle type of the curve permutation `sigma1^m sigma0`.
    pub curve_cycle_type: Vec<usize>,
    pub components: usize,
    pub filling: bool,
    pub min_length_total: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub type_triple: (usize, usize, usize),
    pub genus: usize,
    pub degree: usize,
    pub classes: Vec<ClassSummary>,
}

/// Edge count forced by type and genus:
/// `E (1 - 1/2 - 1/(2m) - 1/k) = 2g - 2`.
pub fn degree_for(two_m: usize, k: usize, genus: usize) -> Result<usize> {
    if two_m % 2 != 0 || two_m == 0 {
        return Err(Error::OddBlackDegree(two_m));
    }
    if k == 0 {
        return Err(Error::ParameterRange {
            name: "k",
            value: k,
            min: 1,
        });
    }
    if !crate::hypgeom::is_hyperbolic_triple(2, two_m, k) {
        return Err(Error::NotHyperbolic(2, two_m, k));
    }
    if genus < 2 {
        return Err(Error::ParameterRange {
            name: "genus",
            value: genus,
            min: 2,
        });
    }
    let m = two_m / 2;
    // E = (2g-2) * 2mk / (mk - k - 2m); the denominator is positive exactly
    // for hyperbolic types.
    let numerator = (2 * genus - 2) * 2 * m * k;
    let denominator = m * k - k - 2 * m;
    if numerator % denominator != 0 {
        return Err(Error::NonIntegralDegree { two_m, k, genus });
    }
    Ok(numerator / denominator)
}

/// Backtracking state: a partial fixed-point-free involution plus partial
/// face chains. Face chains are maintained as linked paths with start/end
/// and length bookkeeping, merged as sigma0 pairs pin down values of
/// `sigma_infinity = sigma0 sigma1^(-1)`.
struct Search {
    degree: usize,
    two_m: usize,
    k: usize,
    sigma1_image: Vec<usize>,
    /// Partner under sigma0, 0 while unpaired. Index 0 unused.
    partner: Vec<usize>,
    /// Known successor / predecessor under sigma_infinity, 0 while unknown.
    succ: Vec<usize>,
    pred: Vec<usize>,
    /// For a chain end `x`: the chain's start. Identity while untouched.
    start_of_end: Vec<usize>,
    /// For a chain start `s`: the chain's end and node count.
    end_of_start: Vec<usize>,
    len_of_start: Vec<usize>,
}

/// Record needed to undo one sigma_infinity link.
enum LinkUndo {
    Closure { x: usize, y: usize },
    Merge { x: usize, y: usize, old_end: usize, old_len: usize },
}

impl Search {
    fn new(degree: usize, two_m: usize, k: usize) -> Search {
        let mut sigma1_image = vec![0usize; degree + 1];
        for block in 0..degree / two_m {
            for i in 0..two_m {
                let label = block * two_m + i + 1;
                let next = block * two_m + (i + 1) % two_m + 1;
                sigma1_image[label] = next;
            }
        }
        Search {
            degree,
            two_m,
            k,
            sigma1_image,
            partner: vec![0; degree + 1],
            succ: vec![0; degree + 1],
            pred: vec![0; degree + 1],
            start_of_end: (0..=degree).collect(),
            end_of_start: (0..=degree).collect(),
            len_of_start: vec![1; degree + 1],
        }
    }

    /// Adds the face link `x -> y`; rejects links that close a face at the
    /// wrong degree or extend a path beyond `k` nodes.
    fn add_link(&mut self, x: usize, y: usize) -> Option<LinkUndo> {
        debug_assert_eq!(self.succ[x], 0);
        debug_assert_eq!(self.pred[y], 0);
        let sx = self.start_of_end[x];
        if sx == y {
            // Closing the chain into a face cycle.
            if self.len_of_start[y] != self.k {
                return None;
            }
            self.succ[x] = y;
            self.pred[y] = x;
            return Some(LinkUndo::Closure { x, y });
        }
        let merged_len = self.len_of_start[sx] + self.len_of_start[y];
        if merged_len > self.k {
            return None;
        }
        let old_end = self.end_of_start[sx];
        debug_assert_eq!(old_end, x);
        let old_len = self.len_of_start[sx];
        let new_end = self.end_of_start[y];
        self.start_of_end[new_end] = sx;
        self.end_of_start[sx] = new_end;
        self.len_of_start[sx] = merged_len;
        self.succ[x] = y;
        self.pred[y] = x;
        Some(LinkUndo::Merge { x, y, old_end, old_len })
    }

    fn undo_link(&mut self, undo: LinkUndo) {
        match undo {
            LinkUndo::Closure { x, y } => {
                self.succ[x] = 0;
                self.pred[y] = 0;
            }
            LinkUndo::Merge { x, y, old_end, old_len } => {
                let sx = self.start_of_end[self.end_of_start[y]];
                debug_assert_eq!(sx, self.start_of_end[old_end]);
                let new_end = self.end_of_start[sx];
                self.start_of_end[new_end] = y;
                self.end_of_start[sx] = old_end;
                self.len_of_start[sx] = old_len;
                self.succ[x] = 0;
                self.pred[y] = 0;
            }
        }
    }

    /// Tries to pair `u` with `v`, installing both face links implied by
    /// `sigma_infinity(sigma1(u)) = v` and `sigma_infinity(sigma1(v)) = u`.
    fn try_pair(&mut self, u: usize, v: usize) -> Option<(LinkUndo, LinkUndo)> {
        let first = self.add_link(self.sigma1_image[u], v)?;
        match self.add_link(self.sigma1_image[v], u) {
            Some(second) => {
                self.partner[u] = v;
                self.partner[v] = u;
                Some((first, second))
            }
            None => {
                self.undo_link(first);
                None
            }
        }
    }

    fn undo_pair(&mut self, u: usize, v: usize, undo: (LinkUndo, LinkUndo)) {
        self.partner[u] = 0;
        self.partner[v] = 0;
        self.undo_link(undo.1);
        self.undo_link(undo.0);
    }

    /// Partner candidates for the smallest unpaired label `u`, restricted by
    /// the centralizer symmetries: all unpaired labels of blocks already in
    /// play, plus only the first label of the first untouched block (block
    /// rotations and untouched-block swaps fix everything placed so far, so
    /// other choices lead to conjugate dessins).
    fn candidates(&self, u: usize) -> Vec<usize> {
        let blocks = self.degree / self.two_m;
        let mut touched = vec![false; blocks];
        touched[(u - 1) / self.two_m] = true;
        for label in 1..=self.degree {
            if self.partner[label] != 0 {
                touched[(label - 1) / self.two_m] = true;
            }
        }
        let mut out = Vec::new();
        for v in u + 1..=self.degree {
            if self.partner[v] == 0 && touched[(v - 1) / self.two_m] {
                out.push(v);
            }
        }
        if let Some(fresh) = (0..blocks).find(|&b| !touched[b]) {
            out.push(fresh * self.two_m + 1);
        }
        out.sort_unstable();
        out
    }

    fn smallest_unpaired(&self) -> Option<usize> {
        (1..=self.degree).find(|&label| self.partner[label] == 0)
    }

    /// Completes the partial involution into dessins, sending canonical
    /// forms and representatives into `sink`.
    fn run(&mut self, sink: &mut Vec<(Vec<u8>, Dessin)>) {
        let Some(u) = self.smallest_unpaired() else {
            self.emit(sink);
            return;
        };
        for v in self.candidates(u) {
            if let Some(undo) = self.try_pair(u, v) {
                self.run(sink);
                self.undo_pair(u, v, undo);
            }
        }
    }

    /// Collects partial states of `depth` placed pairs as restart tasks;
    /// full solutions reached earlier go straight to `solutions`.
    fn collect_prefixes(
        &mut self,
        depth: usize,
        prefix: &mut Vec<(usize, usize)>,
        tasks: &mut Vec<Vec<(usize, usize)>>,
        solutions: &mut Vec<(Vec<u8>, Dessin)>,
    ) {
        if prefix.len() == depth {
            tasks.push(prefix.clone());
            return;
        }
        let Some(u) = self.smallest_unpaired() else {
            self.emit(solutions);
            return;
        };
        for v in self.candidates(u) {
            if let Some(undo) = self.try_pair(u, v) {
                prefix.push((u, v));
                self.collect_prefixes(depth, prefix, tasks, solutions);
                prefix.pop();
                self.undo_pair(u, v, undo);
            }
        }
    }

    fn emit(&self, sink: &mut Vec<(Vec<u8>, Dessin)>) {
        let sigma0 = Permutation::from_one_line(self.partner[1..].to_vec())
            .expect("a complete pairing is an involution");
        let sigma1 = Permutation::from_one_line(self.sigma1_image[1..].to_vec())
            .expect("block rotation");
        if orbits(&[sigma0.clone(), sigma1.clone()])
            .map(|o| o.len() != 1)
            .unwrap_or(true)
        {
            return;
        }
        let dessin = Dessin::new(sigma0, sigma1).expect("transitive by the check above");
        sink.push((dessin.canonical_form(), dessin));
    }
}

/// Classifies all uniform clean dessins of type `(2, two_m, k)` and the
/// given genus, up to equivalence. `jobs` worker threads split the search
/// at depth-2 prefixes; the result is identical for every worker count.
pub fn enumerate_uniform(
    two_m: usize,
    k: usize,
    genus: usize,
    jobs: usize,
) -> Result<EnumerationResult> {
    enumerate_uniform_with_progress(two_m, k, genus, jobs, None)
}

/// [`enumerate_uniform`] with an optional progress callback, invoked after
/// each finished search task with `(done, total)`.
pub fn enumerate_uniform_with_progress(
    two_m: usize,
    k: usize,
    genus: usize,
    jobs: usize,
    progress: Option<&(dyn Fn(usize, usize) + Send + Sync)>,
) -> Result<EnumerationResult> {
    if jobs == 0 {
        return Err(Error::ParameterRange {
            name: "jobs",
            value: jobs,
            min: 1,
        });
    }
    let degree = degree_for(two_m, k, genus)?;
    let type_triple = (2, two_m, k);
    // Degrees that cannot carry the uniform cycle structures give an empty
    // classification, not an error.
    if degree % 2 != 0 || degree % two_m != 0 || degree % k != 0 {
        return Ok(EnumerationResult {
            type_triple,
            genus,
            degree,
            classes: Vec::new(),
            filling_count: 0,
            component_histogram: BTreeMap::new(),
        });
    }

    let mut tasks = Vec::new();
    let mut found = Vec::new();
    let prefix_depth = 2.min(degree / 2);
    Search::new(degree, two_m, k).collect_prefixes(
        prefix_depth,
        &mut Vec::new(),
        &mut tasks,
        &mut found,
    );

    let total_tasks = tasks.len();
    let done = AtomicUsize::new(0);
    let workers = jobs.min(total_tasks.max(1));
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..workers {
            let worker_tasks: Vec<&[(usize, usize)]> = tasks
                .iter()
                .skip(worker)
                .step_by(workers)
                .map(|t| t.as_slice())
                .collect();
            let done = &done;
            handles.push(scope.spawn(move || {
                let mut sink = Vec::new();
                for task in worker_tasks {
                    let mut search = Search::new(degree, two_m, k);
                    for &(u, v) in task {
                        let placed = search.try_pair(u, v);
                        debug_assert!(placed.is_some());
                    }
                    search.run(&mut sink);
                    let done_now = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if let Some(callback) = progress {
                        callback(done_now, total_tasks);
                    }
                }
                sink
            }));
        }
        for handle in handles {
            let mut sink = handle.join().expect("worker panicked");
            found.append(&mut sink);
        }
    });

    // Duplicates (same canonical form) can arrive in any order from the
    // workers; tie-breaking on the raw permutations pins the surviving
    // representative regardless of worker count.
    found.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.sigma0().images().cmp(b.1.sigma0().images()))
            .then_with(|| a.1.sigma1().images().cmp(b.1.sigma1().images()))
    });
    found.dedup_by(|a, b| a.0 == b.0);
    let classes: Vec<Dessin> = found.into_iter().map(|(_, d)| d).collect();

    let mut filling_count = 0;
    let mut component_histogram = BTreeMap::new();
    for class in &classes {
        debug_assert_eq!(class.genus(), genus);
        debug_assert_eq!(class.uniform_type().expect("uniform by construction"), type_triple);
        if is_filling_curve(class).expect("clean with even black degree") {
            filling_count += 1;
        }
        let r = decompose(class).expect("clean with even black degree").r;
        *component_histogram.entry(r).or_insert(0) += 1;
    }
    Ok(EnumerationResult {
        type_triple,
        genus,
        degree,
        classes,
        filling_count,
        component_histogram,
    })
}

/// Per-class report rows, in the result's canonical order.
pub fn summarize(result: &EnumerationResult) -> EnumerationReport {
    let classes = result
        .classes
        .iter()
        .map(|class| {
            let system = decompose(class).expect("classes are uniform and clean");
            let curve = class
                .sigma1()
                .power(system.m as i64)
                .compose(class.sigma0())
                .expect("equal degrees");
            ClassSummary {
                passport: class.passport(),
                curve_cycle_type: curve.cycles().cycle_type,
                components: system.r,
                filling: is_filling_curve(class).expect("classes are uniform and clean"),
                min_length_total: min_length_clean(system.m, result.type_triple.2, class.degree() / 2)
                    .expect("enumerated types are hyperbolic")
                    .total,
            }
        })
        .collect();
    EnumerationReport {
        type_triple: result.type_triple,
        genus: result.genus,
        degree: result.degree,
        classes,
    }
}

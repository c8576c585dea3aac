//! Genus-increment surgery on clean general-position dessins, explicit seed
//! families, and deterministic growth to higher genus.
//!
//! One surgery cuts a white edge pair `(a, b)` open, splices in eight new
//! darts `E+1..E+8` forming five white edges and two black vertices, and
//! raises the genus by exactly one while preserving the face count and the
//! cycle count of the curve permutation `sigma1^2 sigma0`.

use serde::Serialize;

use crate::curve::{is_filling_curve, is_general_position};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// How a surgery redistributed face degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurgeryCase {
    /// `a` and `b` bounded one face; its degree grows by 8.
    SameFace,
    /// `a` and `b` bounded distinct faces; their degrees grow by 6 and 2.
    DifferentFaces,
}

/// The result of one surgery step.
#[derive(Debug, Clone, Serialize)]
pub struct SurgeryOutcome {
    pub result: Dessin,
    pub case: SurgeryCase,
    /// `(old_degree, new_degree)` for each face whose degree changed,
    /// sorted ascending.
    pub face_degree_delta: Vec<(usize, usize)>,
}

fn check_label(label: usize, degree: usize) -> Result<()> {
    if label == 0 || label > degree {
        return Err(Error::LabelOutOfRange { label, degree });
    }
    Ok(())
}

/// Index of the cycle of `cycles` containing `label`, with cycles as
/// returned by [`Permutation::cycles`].
fn cycle_index_of(cycles: &[Vec<usize>], label: usize) -> usize {
    cycles
        .iter()
        .position(|c| c.contains(&label))
        .expect("every label lies in some cycle")
}

/// Performs the surgery along the white edge pair `(a, b)`.
///
/// Requires all white degrees 2 and all black degrees 4, `(a, b)` a 2-cycle
/// of `sigma0`, and `a`, `b` in different 4-cycles of `sigma1`. The result
/// has degree `E + 8`, genus one higher, and the same number of faces.
pub fn apply_surgery(d: &Dessin, a: usize, b: usize) -> Result<SurgeryOutcome> {
    let e = d.degree();
    check_label(a, e)?;
    check_label(b, e)?;
    let whites_ok = d.white_cycles().cycle_type.iter().all(|&w| w == 2);
    let blacks_ok = d.black_cycles().cycle_type.iter().all(|&v| v == 4);
    if !whites_ok || !blacks_ok {
        return Err(Error::SurgeryPassport);
    }
    if a == b || d.sigma0().apply(a) != b {
        return Err(Error::NotAWhiteEdgePair { a, b });
    }
    let blacks = d.sigma1().cycles().cycles;
    if cycle_index_of(&blacks, a) == cycle_index_of(&blacks, b) {
        return Err(Error::SameBlackCycle { a, b });
    }

    // sigma0 with (a, b) removed, then five fresh white edges.
    let mut white_images: Vec<usize> = (1..=e + 8).collect();
    for c in 1..=e {
        if c != a && c != b {
            white_images[c - 1] = d.sigma0().apply(c);
        }
    }
    for (p, q) in [(a, e + 5), (e + 1, e + 6), (e + 2, e + 7), (e + 3, e + 8), (e + 4, b)] {
        white_images[p - 1] = q;
        white_images[q - 1] = p;
    }
    // sigma1 with two fresh black 4-cycles on the new darts.
    let mut black_images: Vec<usize> = (1..=e + 8).collect();
    for c in 1..=e {
        black_images[c - 1] = d.sigma1().apply(c);
    }
    for cycle in [[e + 5, e + 1, e + 3, e + 7], [e + 4, e + 2, e + 6, e + 8]] {
        for i in 0..4 {
            black_images[cycle[i] - 1] = cycle[(i + 1) % 4];
        }
    }
    let new_sigma0 = Permutation::from_one_line(white_images).expect("valid involution");
    let new_sigma1 = Permutation::from_one_line(black_images).expect("valid permutation");
    let result =
        Dessin::new(new_sigma0, new_sigma1).expect("surgery keeps the dessin connected");

    // The displayed product for the new face permutation must reproduce the
    // actual cycle type (a structural self-check on the formulas).
    let splice = Permutation::from_cycles(
        e + 8,
        &[
            vec![a, e + 5, e + 6, e + 3, e + 2, e + 1, e + 8],
            vec![b, e + 4, e + 7],
        ],
    )
    .expect("disjoint splice cycles");
    let extend = |p: &Permutation| {
        let mut images: Vec<usize> = (1..=e + 8).collect();
        for c in 1..=e {
            images[c - 1] = p.apply(c);
        }
        Permutation::from_one_line(images).expect("extension is a bijection")
    };
    let predicted = extend(d.sigma1())
        .compose(&extend(d.sigma0()))
        .expect("equal degrees")
        .compose(&splice)
        .expect("equal degrees");
    let actual = result
        .sigma1()
        .compose(result.sigma0())
        .expect("equal degrees");
    assert_eq!(
        predicted.cycles().cycle_type,
        actual.cycles().cycle_type,
        "face product self-check failed for (a, b) = ({a}, {b})"
    );

    // The curve permutation's cycle count must be conserved.
    let curve_cycles_before = d
        .sigma1()
        .power(2)
        .compose(d.sigma0())
        .expect("equal degrees")
        .cycles()
        .cycles
        .len();
    let curve_cycles_after = result
        .sigma1()
        .power(2)
        .compose(result.sigma0())
        .expect("equal degrees")
        .cycles()
        .cycles
        .len();
    assert_eq!(curve_cycles_before, curve_cycles_after);

    // Classify the case by where a and b sat among the old faces, and read
    // the changed degrees off the old and new face structures.
    let old_faces = d.sigma_infinity().cycles().cycles;
    let new_faces = result.sigma_infinity().cycles().cycles;
    assert_eq!(old_faces.len(), new_faces.len(), "face count must be preserved");
    assert_eq!(result.genus(), d.genus() + 1, "genus must grow by one");
    let old_a = cycle_index_of(&old_faces, a);
    let old_b = cycle_index_of(&old_faces, b);
    let new_a = cycle_index_of(&new_faces, a);
    let new_b = cycle_index_of(&new_faces, b);
    let (case, mut face_degree_delta) = if old_a == old_b {
        let old_len = old_faces[old_a].len();
        assert_eq!(new_a, new_b, "a merged face keeps both labels");
        assert_eq!(new_faces[new_a].len(), old_len + 8);
        (SurgeryCase::SameFace, vec![(old_len, old_len + 8)])
    } else {
        let (fa, fb) = (old_faces[old_a].len(), old_faces[old_b].len());
        let (na, nb) = (new_faces[new_a].len(), new_faces[new_b].len());
        let mut deltas = [na - fa, nb - fb];
        deltas.sort_unstable();
        assert_eq!(deltas, [2, 6], "distinct faces grow by 2 and 6");
        (SurgeryCase::DifferentFaces, vec![(fa, na), (fb, nb)])
    };
    face_degree_delta.sort_unstable();
    Ok(SurgeryOutcome {
        result,
        case,
        face_degree_delta,
    })
}

/// The explicit starting dessins: uniform clean general-position filling
/// curves with `n` faces at genus `g`, for
/// `(g, n)` in `{(2,1), (2,2), (3,2), (4,3)}`.
pub fn seed_dessin(genus: usize, n: usize) -> Result<Dessin> {
    let (sigma0, sigma1): (Permutation, Permutation) = match (genus, n) {
        (2, 1) => (
            Permutation::parse(12, "(1,12)(2,11)(3,10)(4,9)(5,8)(6,7)")?,
            Permutation::parse(12, "(1,4,7,10)(2,6,12,8)(3,5,11,9)")?,
        ),
        (2, 2) => (
            Permutation::parse(16, "(1,16)(2,15)(3,14)(4,13)(5,12)(6,11)(7,10)(8,9)")?,
            Permutation::parse(16, "(1,6,9,12)(2,10,16,8)(3,13,15,5)(4,7,14,11)")?,
        ),
        (3, 2) => (
            Permutation::parse(
                24,
                "(1,13)(2,24)(3,23)(4,22)(5,21)(6,20)(7,19)(8,18)(9,17)(10,16)(11,15)(12,14)",
            )?,
            Permutation::parse(
                24,
                "(1,3,14,24)(2,4,13,23)(5,9,22,18)(6,16,21,11)(7,17,20,10)(8,15,19,12)",
            )?,
        ),
        (4, 3) => {
            let pairs: Vec<Vec<usize>> = (0..18).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
            (
                Permutation::from_cycles(36, &pairs)?,
                Permutation::parse(
                    36,
                    "(1,3,9,5)(2,4,6,7)(8,11,17,13)(10,12,19,15)(14,21,29,23)(16,25,24,27)\
                     (18,26,31,20)(22,33,35,28)(30,32,34,36)",
                )?,
            )
        }
        _ => return Err(Error::UnsupportedSeed { genus, n }),
    };
    let d = Dessin::new(sigma0, sigma1)?;
    debug_assert_eq!(d.genus(), genus);
    debug_assert_eq!(d.face_cycles().cycles.len(), n);
    Ok(d)
}

/// White edge pairs eligible for surgery, ascending by `(min, max)` label.
fn surgery_candidates(d: &Dessin) -> Vec<(usize, usize)> {
    let blacks = d.sigma1().cycles().cycles;
    let mut black_of = vec![0usize; d.degree() + 1];
    for (index, cycle) in blacks.iter().enumerate() {
        for &label in cycle {
            black_of[label] = index;
        }
    }
    let mut out = Vec::new();
    for a in 1..=d.degree() {
        let b = d.sigma0().apply(a);
        if b > a && black_of[a] != black_of[b] {
            out.push((a, b));
        }
    }
    out
}

/// Depth-first search over surgery sequences. Block boundaries (every `n`
/// steps) must land on a uniform filling dessin; the first sequence found in
/// lexicographic candidate order wins.
fn grow_search(current: &Dessin, step: usize, total: usize, n: usize) -> Option<Dessin> {
    if step == total {
        return Some(current.clone());
    }
    for (a, b) in surgery_candidates(current) {
        let outcome = apply_surgery(current, a, b).expect("candidate satisfies preconditions");
        let next = outcome.result;
        // Block boundary: demand a uniform filling curve again. The check
        // stays on cycle types only, so the search is cheap even at high
        // degree.
        if (step + 1) % n == 0 && !is_filling_curve(&next).unwrap_or(false) {
            continue;
        }
        if let Some(found) = grow_search(&next, step + 1, total, n) {
            return Some(found);
        }
    }
    None
}

/// Grows `d` to `target_genus` by repeated surgery, in blocks of `n` steps
/// (one per face) after which uniformity and the filling property must be
/// restored. The candidate order is deterministic, so the output is too.
pub fn grow(d: &Dessin, target_genus: usize, n: usize) -> Result<Dessin> {
    let genus = d.genus();
    d.uniform_type()?;
    if !is_general_position(d)? {
        return Err(Error::SurgeryPassport);
    }
    if !is_filling_curve(d)? {
        return Err(Error::NotFilling);
    }
    if d.face_cycles().cycles.len() != n
        || target_genus <= genus
        || (target_genus - genus) % n != 0
    {
        return Err(Error::GrowthStep {
            genus,
            target: target_genus,
            n,
        });
    }
    let total = target_genus - genus;
    let grown = grow_search(d, 0, total, n).ok_or(Error::GrowthExhausted {
        target: target_genus,
    })?;
    debug_assert_eq!(grown.genus(), target_genus);
    debug_assert!(grown.uniform_type().is_ok());
    Ok(grown)
}

#[cfg(test)]
mod tests {
    use rand::prelude::*;

    use super::*;
    use crate::testutil::{degree_twelve_suite, genus_two_12, genus_two_16};

    #[test]
    fn surgery_merging_one_face() {
        let d = genus_two_16();
        let outcome = apply_surgery(&d, 4, 13).unwrap();
        assert_eq!(outcome.case, SurgeryCase::SameFace);
        assert_eq!(outcome.face_degree_delta, vec![(8, 16)]);
        assert_eq!(outcome.result.degree(), 24);
        assert_eq!(outcome.result.genus(), 3);
        let mut faces = outcome.result.face_cycles().cycle_type;
        faces.sort_unstable();
        assert_eq!(faces, vec![8, 16]);
        // Order of the pair does not matter.
        let swapped = apply_surgery(&d, 13, 4).unwrap();
        assert_eq!(swapped.case, SurgeryCase::SameFace);
    }

    #[test]
    fn surgery_splitting_between_faces() {
        let d = genus_two_16();
        let outcome = apply_surgery(&d, 1, 16).unwrap();
        assert_eq!(outcome.case, SurgeryCase::DifferentFaces);
        assert_eq!(outcome.face_degree_delta, vec![(8, 10), (8, 14)]);
        let mut faces = outcome.result.face_cycles().cycle_type;
        faces.sort_unstable();
        assert_eq!(faces, vec![10, 14]);
        assert_eq!(outcome.result.genus(), 3);
        assert_eq!(outcome.result.face_cycles().cycles.len(), 2);
    }

    #[test]
    fn surgery_preserves_curve_cycle_count() {
        let d = genus_two_16();
        let curve_cycles = |d: &Dessin| {
            d.sigma1()
                .power(2)
                .compose(d.sigma0())
                .unwrap()
                .cycles()
                .cycles
                .len()
        };
        let before = curve_cycles(&d);
        for (a, b) in [(4, 13), (1, 16), (2, 15)] {
            let outcome = apply_surgery(&d, a, b).unwrap();
            assert_eq!(curve_cycles(&outcome.result), before);
        }
    }

    #[test]
    fn surgery_rejects_invalid_input() {
        assert!(matches!(
            apply_surgery(&genus_two_12(), 1, 7),
            Err(Error::SurgeryPassport)
        ));
        let d = genus_two_16();
        assert!(matches!(
            apply_surgery(&d, 1, 2),
            Err(Error::NotAWhiteEdgePair { a: 1, b: 2 })
        ));
        assert!(matches!(
            apply_surgery(&d, 3, 3),
            Err(Error::NotAWhiteEdgePair { a: 3, b: 3 })
        ));
        assert!(matches!(
            apply_surgery(&d, 0, 5),
            Err(Error::LabelOutOfRange { label: 0, .. })
        ));
        assert!(matches!(
            apply_surgery(&d, 3, 17),
            Err(Error::LabelOutOfRange { label: 17, .. })
        ));
        // A pair bounding the same black vertex is rejected.
        let tight = Dessin::new(
            Permutation::parse(8, "(1,2)(3,4)(5,6)(7,8)").unwrap(),
            Permutation::parse(8, "(1,2,3,5)(4,6,7,8)").unwrap(),
        )
        .unwrap();
        assert!(matches!(
            apply_surgery(&tight, 1, 2),
            Err(Error::SameBlackCycle { a: 1, b: 2 })
        ));
    }

    #[test]
    fn seeds_are_uniform_filling_curves() {
        for (genus, n, degree, k) in [(2, 1, 12, 12), (2, 2, 16, 8), (3, 2, 24, 12), (4, 3, 36, 12)]
        {
            let d = seed_dessin(genus, n).unwrap();
            assert_eq!(d.degree(), degree, "seed ({genus},{n})");
            assert_eq!(d.genus(), genus);
            assert_eq!(d.uniform_type().unwrap(), (2, 4, k));
            assert_eq!(d.face_cycles().cycles.len(), n);
            assert!(d.classify().is_clean);
            assert!(is_general_position(&d).unwrap());
            assert!(is_filling_curve(&d).unwrap());
        }
        assert!(matches!(
            seed_dessin(5, 1),
            Err(Error::UnsupportedSeed { genus: 5, n: 1 })
        ));
        assert!(matches!(seed_dessin(2, 3), Err(Error::UnsupportedSeed { .. })));
    }

    #[test]
    fn grow_reaches_the_stated_targets() {
        let grown = grow(&seed_dessin(2, 1).unwrap(), 5, 1).unwrap();
        assert_eq!(grown.uniform_type().unwrap(), (2, 4, 36));
        assert_eq!(grown.genus(), 5);
        assert_eq!(grown.face_cycles().cycles.len(), 1);
        assert!(is_filling_curve(&grown).unwrap());

        let grown = grow(&seed_dessin(2, 2).unwrap(), 4, 2).unwrap();
        assert_eq!(grown.uniform_type().unwrap(), (2, 4, 16));
        assert_eq!(grown.face_cycles().cycles.len(), 2);
        assert!(is_filling_curve(&grown).unwrap());

        let grown = grow(&seed_dessin(4, 3).unwrap(), 7, 3).unwrap();
        assert_eq!(grown.uniform_type().unwrap(), (2, 4, 20));
        assert_eq!(grown.face_cycles().cycles.len(), 3);
        assert!(is_filling_curve(&grown).unwrap());
    }

    #[test]
    fn grow_is_deterministic() {
        let a = grow(&seed_dessin(2, 2).unwrap(), 4, 2).unwrap();
        let b = grow(&seed_dessin(2, 2).unwrap(), 4, 2).unwrap();
        assert_eq!(a.sigma0().images(), b.sigma0().images());
        assert_eq!(a.sigma1().images(), b.sigma1().images());
    }

    #[test]
    fn grow_rejects_invalid_requests() {
        let seed = seed_dessin(2, 1).unwrap();
        assert!(matches!(
            grow(&seed, 2, 1),
            Err(Error::GrowthStep { genus: 2, target: 2, n: 1 })
        ));
        assert!(matches!(grow(&seed, 4, 2), Err(Error::GrowthStep { .. })));
        assert!(matches!(
            grow(&seed_dessin(4, 3).unwrap(), 6, 3),
            Err(Error::GrowthStep { .. })
        ));
        assert!(matches!(
            grow(&genus_two_12(), 3, 2),
            Err(Error::SurgeryPassport)
        ));
        // Uniform, clean, general position, but three components: not a
        // single filling curve.
        let multi = degree_twelve_suite().remove(0);
        assert!(matches!(grow(&multi, 3, 1), Err(Error::NotFilling)));
    }

    #[test]
    fn randomized_surgery_invariants() {
        let mut rng = StdRng::seed_from_u64(0x5a26e);
        let seeds: Vec<Dessin> = [(2, 1), (2, 2), (3, 2), (4, 3)]
            .iter()
            .map(|&(g, n)| seed_dessin(g, n).unwrap())
            .collect();
        let mut performed = 0;
        while performed < 60 {
            let base = &seeds[rng.gen_range(0..seeds.len())];
            // Random walk: up to two surgeries deep from a seed.
            let mut current = base.clone();
            let depth = rng.gen_range(1..=2);
            for _ in 0..depth {
                let candidates = surgery_candidates(&current);
                let (a, b) = candidates[rng.gen_range(0..candidates.len())];
                let before_genus = current.genus();
                let before_faces = current.face_cycles().cycles.len();
                let outcome = apply_surgery(&current, a, b).unwrap();
                let next = outcome.result;
                assert_eq!(next.degree(), current.degree() + 8);
                assert_eq!(next.genus(), before_genus + 1);
                assert_eq!(next.face_cycles().cycles.len(), before_faces);
                assert!(next.white_cycles().cycle_type.iter().all(|&w| w == 2));
                assert!(next.black_cycles().cycle_type.iter().all(|&v| v == 4));
                match outcome.case {
                    SurgeryCase::SameFace => {
                        assert_eq!(outcome.face_degree_delta.len(), 1);
                        let (old, new) = outcome.face_degree_delta[0];
                        assert_eq!(new, old + 8);
                    }
                    SurgeryCase::DifferentFaces => {
                        let mut deltas: Vec<usize> = outcome
                            .face_degree_delta
                            .iter()
                            .map(|&(old, new)| new - old)
                            .collect();
                        deltas.sort_unstable();
                        assert_eq!(deltas, vec![2, 6]);
                    }
                }
                current = next;
                performed += 1;
            }
        }
    }
}

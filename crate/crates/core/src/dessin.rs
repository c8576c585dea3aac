//! Dessins d'enfants as validated permutation pairs.
//!
//! A dessin of degree `E` is a pair `(sigma0, sigma1)` of permutations of the
//! edge labels `{1..E}` generating a transitive group: `sigma0` rotates edges
//! around white vertices, `sigma1` around black vertices. Faces are the
//! cycles of `sigma_infinity`, and the Euler relation recovers the genus of
//! the underlying closed orientable surface.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{orbits, stabilizer_orbit_sizes, CycleStructure, Permutation};

/// A dessin d'enfant: a transitive pair of permutations of `{1..E}`.
///
/// Serializes to `{"degree": E, "sigma0": [[...]], "sigma1": [[...]]}` with
/// cycles as arrays of 1-based labels; fixed points may be omitted and
/// unknown keys are rejected. Deserialization re-validates transitivity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DessinRepr", into = "DessinRepr")]
pub struct Dessin {
    degree: usize,
    sigma0: Permutation,
    sigma1: Permutation,
}

/// Degree sequences of white vertices, black vertices and faces, with the
/// componentwise least common multiples as the type triple `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub degree: usize,
    pub white_degrees: Vec<usize>,
    pub black_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
    pub type_triple: (usize, usize, usize),
}

/// Genus plus the standard structural predicates of a dessin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinClassification {
    pub genus: usize,
    pub is_clean: bool,
    pub is_uniform: bool,
    pub is_regular: bool,
    /// Order of the monodromy group `<sigma0, sigma1>`; `None` when the
    /// order exceeds `u128` (possible already for alternating groups of
    /// moderate degree). Regularity needs the order to equal the degree, so
    /// it is still decided exactly in that case.
    pub monodromy_order: Option<u128>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DessinRepr {
    degree: usize,
    sigma0: Vec<Vec<usize>>,
    sigma1: Vec<Vec<usize>>,
}

impl TryFrom<DessinRepr> for Dessin {
    type Error = Error;

    fn try_from(repr: DessinRepr) -> Result<Self> {
        let sigma0 = Permutation::from_cycles(repr.degree, &repr.sigma0)?;
        let sigma1 = Permutation::from_cycles(repr.degree, &repr.sigma1)?;
        Dessin::new(sigma0, sigma1)
    }
}

impl From<Dessin> for DessinRepr {
    fn from(d: Dessin) -> Self {
        let strip = |p: &Permutation| -> Vec<Vec<usize>> {
            p.cycles().cycles.into_iter().filter(|c| c.len() > 1).collect()
        };
        DessinRepr {
            degree: d.degree,
            sigma0: strip(&d.sigma0),
            sigma1: strip(&d.sigma1),
        }
    }
}

impl std::fmt::Debug for Dessin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Dessin[degree {}, sigma0 {}, sigma1 {}]",
            self.degree, self.sigma0, self.sigma1
        )
    }
}

fn lcm_of(values: &[usize]) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    values.iter().fold(1, |acc, &v| acc / gcd(acc, v) * v)
}

impl Dessin {
    /// Validates and wraps a permutation pair: equal degrees, at least one
    /// edge, and transitivity of the generated group.
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Dessin> {
        if sigma0.degree() != sigma1.degree() {
            return Err(Error::DegreeMismatch(sigma0.degree(), sigma1.degree()));
        }
        let degree = sigma0.degree();
        if degree == 0 {
            return Err(Error::EmptyDessin);
        }
        let orbit_count = orbits(&[sigma0.clone(), sigma1.clone()])?.len();
        if orbit_count != 1 {
            return Err(Error::Intransitive {
                orbits: orbit_count,
            });
        }
        Ok(Dessin {
            degree,
            sigma0,
            sigma1,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// The face permutation: the inverse of `sigma1 . sigma0` (apply
    /// `sigma0` first). Scanning a label through `sigma0`, then `sigma1`,
    /// then this permutation returns it to itself.
    pub fn sigma_infinity(&self) -> Permutation {
        self.sigma1
            .compose(&self.sigma0)
            .expect("equal degrees")
            .inverse()
    }

    pub fn white_cycles(&self) -> CycleStructure {
        self.sigma0.cycles()
    }

    pub fn black_cycles(&self) -> CycleStructure {
        self.sigma1.cycles()
    }

    pub fn face_cycles(&self) -> CycleStructure {
        self.sigma_infinity().cycles()
    }

    pub fn passport(&self) -> Passport {
        let white_degrees = self.white_cycles().cycle_type;
        let black_degrees = self.black_cycles().cycle_type;
        let face_degrees = self.face_cycles().cycle_type;
        let type_triple = (
            lcm_of(&white_degrees),
            lcm_of(&black_degrees),
            lcm_of(&face_degrees),
        );
        Passport {
            degree: self.degree,
            white_degrees,
            black_degrees,
            face_degrees,
            type_triple,
        }
    }

    /// Genus of the underlying closed orientable surface, from
    /// `2g - 2 = E - W - B - F`.
    pub fn genus(&self) -> usize {
        let e = self.degree as i64;
        let w = self.white_cycles().cycles.len() as i64;
        let b = self.black_cycles().cycles.len() as i64;
        let f = self.face_cycles().cycles.len() as i64;
        let twice = e - w - b - f + 2;
        assert!(
            twice >= 0 && twice % 2 == 0,
            "Euler relation violated (E={e}, W={w}, B={b}, F={f}); dessin invariants corrupted"
        );
        (twice / 2) as usize
    }

    pub fn classify(&self) -> DessinClassification {
        let passport = self.passport();
        let uniform = |degrees: &[usize]| degrees.windows(2).all(|w| w[0] == w[1]);
        let is_uniform = uniform(&passport.white_degrees)
            && uniform(&passport.black_degrees)
            && uniform(&passport.face_degrees);
        let is_clean = passport.white_degrees.iter().all(|&d| d == 2);
        let sizes = stabilizer_orbit_sizes(&[self.sigma0.clone(), self.sigma1.clone()])
            .expect("validated dessin has nonempty generators of equal degree");
        let mut order: Option<u128> = Some(1);
        for size in sizes {
            order = order.and_then(|o| o.checked_mul(size as u128));
        }
        let is_regular = order == Some(self.degree as u128);
        DessinClassification {
            genus: self.genus(),
            is_clean,
            is_uniform,
            is_regular,
            monodromy_order: order,
        }
    }

    /// The type triple of a uniform dessin; errors when any of the three
    /// degree sequences is non-constant.
    pub fn uniform_type(&self) -> Result<(usize, usize, usize)> {
        let passport = self.passport();
        let constant = |degrees: &[usize]| degrees.windows(2).all(|w| w[0] == w[1]);
        if !(constant(&passport.white_degrees)
            && constant(&passport.black_degrees)
            && constant(&passport.face_degrees))
        {
            return Err(Error::NotUniform);
        }
        Ok(passport.type_triple)
    }

    /// A relabeling-invariant encoding of the dessin.
    ///
    /// For each base label, the labels are renumbered in the order a
    /// breadth-first scan discovers them (expanding each label through
    /// `sigma0`, then `sigma1`); the renumbered image tables of both
    /// permutations are serialized, and the lexicographic minimum over all
    /// base labels is returned. Two dessins are equivalent (conjugate by a
    /// common relabeling) exactly when their canonical forms agree.
    pub fn canonical_form(&self) -> Vec<u8> {
        let e = self.degree;
        assert!(e <= u16::MAX as usize, "canonical form limited to degree 65535");
        let s0 = self.sigma0.images();
        let s1 = self.sigma1.images();
        let mut best: Option<Vec<u8>> = None;
        let mut new_label = vec![u32::MAX; e];
        let mut discovery = Vec::with_capacity(e);
        for base in 0..e {
            new_label.iter_mut().for_each(|slot| *slot = u32::MAX);
            discovery.clear();
            new_label[base] = 0;
            discovery.push(base);
            let mut head = 0;
            while head < discovery.len() {
                let p = discovery[head];
                head += 1;
                for q in [s0[p] as usize, s1[p] as usize] {
                    if new_label[q] == u32::MAX {
                        new_label[q] = discovery.len() as u32;
                        discovery.push(q);
                    }
                }
            }
            let mut encoding = Vec::with_capacity(2 + 4 * e);
            encoding.extend_from_slice(&(e as u16).to_be_bytes());
            for images in [s0, s1] {
                for &old in &discovery {
                    let image = new_label[images[old] as usize] as u16;
                    encoding.extend_from_slice(&image.to_be_bytes());
                }
            }
            if best.as_ref().map_or(true, |b| encoding < *b) {
                best = Some(encoding);
            }
        }
        best.expect("degree >= 1")
    }

    pub fn are_equivalent(&self, other: &Dessin) -> bool {
        self.degree == other.degree && self.canonical_form() == other.canonical_form()
    }
}

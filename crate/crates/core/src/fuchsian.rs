//! Words in the triangle-group generators x, y, z: parsing, evaluation on
//! edge labels through the monodromy homomorphism, numeric matrix
//! evaluation, and Schreier side-pairing generators for the surface
//! subgroup fixing the base edge.
//!
//! The operational rule throughout: a word is scanned left to right, each
//! letter acting in turn, with x acting as `sigma0`, y as `sigma1` and z as
//! `sigma_infinity`. Under this rule scanning x, then y, then z returns
//! every label to itself.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::hypgeom::{classify_isometry, triangle_group_matrices, Isometry, IsometryKind};
use crate::perm::Permutation;

/// A triangle-group generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gen {
    X,
    Y,
    Z,
}

impl Gen {
    fn symbol(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::Z => 'z',
        }
    }
}

/// A word in x, y, z with nonzero exponents and no two adjacent letters on
/// the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// Builds a word from raw letters, merging adjacent equal generators
    /// and dropping zero exponents.
    pub fn from_letters(letters: impl IntoIterator<Item = (Gen, i64)>) -> Word {
        let mut normalized: Vec<(Gen, i64)> = Vec::new();
        for (gen, exponent) in letters {
            if exponent == 0 {
                continue;
            }
            match normalized.last_mut() {
                Some((last, e)) if *last == gen => {
                    *e += exponent;
                    if *e == 0 {
                        normalized.pop();
                    }
                }
                _ => normalized.push((gen, exponent)),
            }
        }
        Word { letters: normalized }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// Rewrites every exponent into `1..order` of its generator, given the
    /// orders `(a, b, c)` of x, y, z. This changes nothing modulo the
    /// triangle-group relations but makes words print without inverses.
    pub fn normalized_positive(&self, orders: (usize, usize, usize)) -> Word {
        let order_of = |gen: Gen| match gen {
            Gen::X => orders.0 as i64,
            Gen::Y => orders.1 as i64,
            Gen::Z => orders.2 as i64,
        };
        let mut current = self.letters.clone();
        loop {
            let reduced = Word::from_letters(
                current
                    .iter()
                    .map(|&(g, e)| (g, e.rem_euclid(order_of(g)))),
            );
            if reduced.letters == current {
                return reduced;
            }
            current = reduced.letters;
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(gen, exponent) in &self.letters {
            write!(f, "{}", gen.symbol())?;
            if exponent != 1 {
                write!(f, "{exponent}")?;
            }
        }
        Ok(())
    }
}

/// Parses exponent notation such as `"z3xz"` or `"xz5xz6"`: letters
/// x, y, z each followed by an optional positive decimal exponent.
pub fn parse_word(text: &str) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let gen = match bytes[pos] {
            b'x' => Gen::X,
            b'y' => Gen::Y,
            b'z' => Gen::Z,
            other => {
                return Err(Error::WordParse {
                    pos,
                    reason: format!("unknown character {:?}", other as char),
                })
            }
        };
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let exponent = if digits_start == pos {
            1
        } else {
            let digits = &text[digits_start..pos];
            digits.parse::<i64>().map_err(|e| Error::WordParse {
                pos: digits_start,
                reason: e.to_string(),
            })?
        };
        if exponent == 0 {
            return Err(Error::WordParse {
                pos: digits_start,
                reason: "zero exponent".to_string(),
            });
        }
        letters.push((gen, exponent));
    }
    Ok(Word::from_letters(letters))
}

/// The permutation a word induces on edge labels: letters are scanned left
/// to right, acting through x -> sigma0, y -> sigma1, z -> sigma_infinity.
pub fn eval_word_perm(word: &Word, d: &Dessin) -> Permutation {
    let sigma_infinity = d.sigma_infinity();
    let mut acc = Permutation::identity(d.degree());
    for &(gen, exponent) in word.letters() {
        let base = match gen {
            Gen::X => d.sigma0(),
            Gen::Y => d.sigma1(),
            Gen::Z => &sigma_infinity,
        };
        acc = base.power(exponent).compose(&acc).expect("equal degrees");
    }
    acc
}

/// Whether the word lies in the subgroup fixing `base` — the preimage of
/// the stabilizer of the base edge under the monodromy homomorphism.
pub fn in_k(word: &Word, d: &Dessin, base: usize) -> Result<bool> {
    if base == 0 || base > d.degree() {
        return Err(Error::LabelOutOfRange {
            label: base,
            degree: d.degree(),
        });
    }
    Ok(eval_word_perm(word, d).apply(base) == base)
}

fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat_inv(m: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    // Determinant-1 inverse.
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

fn mat_pow(m: [[f64; 2]; 2], exponent: i64) -> [[f64; 2]; 2] {
    let mut base = if exponent < 0 { mat_inv(m) } else { m };
    let mut remaining = exponent.unsigned_abs();
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    while remaining > 0 {
        if remaining & 1 == 1 {
            acc = mat_mul(acc, base);
        }
        base = mat_mul(base, base);
        remaining >>= 1;
    }
    acc
}

/// The isometry a word evaluates to, with the same left-to-right scanning
/// order as [`eval_word_perm`]: the first letter acts first.
pub fn eval_word_matrix(word: &Word, triangle: &(Isometry, Isometry, Isometry)) -> Isometry {
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    for &(gen, exponent) in word.letters() {
        let base = match gen {
            Gen::X => triangle.0.matrix,
            Gen::Y => triangle.1.matrix,
            Gen::Z => triangle.2.matrix,
        };
        acc = mat_mul(mat_pow(base, exponent), acc);
    }
    classify_isometry(acc).expect("products of unit-determinant matrices")
}

/// Triangle-group matrices for the dessin's own uniform type; rejects a
/// requested signature that differs from it.
pub fn matrices_for(
    d: &Dessin,
    a: usize,
    b: usize,
    c: usize,
) -> Result<(Isometry, Isometry, Isometry)> {
    let (white, black, face) = d.uniform_type()?;
    if (white, black, face) != (a, b, c) {
        return Err(Error::TriangleTypeMismatch(white, black, face, a, b, c));
    }
    triangle_group_matrices(a, b, c)
}

/// A breadth-first Schreier tree over the edge labels under the x, y, z
/// actions, rooted at label 1 with generator priority x before y before z.
pub(crate) struct SchreierTree {
    /// `paths[j]` carries the base label 1 to `j`; index 0 is unused.
    pub paths: Vec<Option<Word>>,
    /// Tree adjacencies `(from, generator, to)` in discovery order, so a
    /// parent always precedes its children.
    pub edges: Vec<(usize, Gen, usize)>,
}

pub(crate) fn schreier_tree(d: &Dessin) -> SchreierTree {
    let degree = d.degree();
    let generators = [
        (Gen::X, d.sigma0().clone()),
        (Gen::Y, d.sigma1().clone()),
        (Gen::Z, d.sigma_infinity()),
    ];
    let mut paths: Vec<Option<Word>> = vec![None; degree + 1];
    let mut edges = Vec::new();
    paths[1] = Some(Word::empty());
    let mut queue = VecDeque::from([1usize]);
    while let Some(label) = queue.pop_front() {
        for (gen, perm) in &generators {
            let image = perm.apply(label);
            if paths[image].is_none() {
                let extended = paths[label]
                    .as_ref()
                    .expect("popped labels have paths")
                    .concat(&Word::from_letters([(*gen, 1)]));
                paths[image] = Some(extended);
                edges.push((label, *gen, image));
                queue.push_back(image);
            }
        }
    }
    SchreierTree { paths, edges }
}

/// A Schreier generator of the base-edge stabilizer: the non-tree
/// adjacency it came from, its word, and its numeric isometry.
#[derive(Debug, Clone, Serialize)]
pub struct SidePairing {
    pub side_pair: (usize, usize),
    pub word: Word,
    /// Rendering of `word` in exponent notation, for human consumption.
    pub word_text: String,
    pub matrix: Isometry,
}

/// Schreier side-pairing generators from the quadrilateral adjacency graph
/// of a uniform clean dessin of genus at least 2.
///
/// Labels are the vertices; each label has directed neighbors under the x,
/// y and z actions, in that priority order. A breadth-first spanning tree
/// rooted at label 1 assigns every label a path word; every non-tree
/// adjacency `i -> j` via letter `g` yields the generator
/// `path(i) g path(j)^(-1)`, which fixes the base edge by construction.
/// There are exactly `2E + 1` of them, each hyperbolic or the identity.
pub fn side_pairings(d: &Dessin) -> Result<Vec<SidePairing>> {
    let (white, black, face) = d.uniform_type()?;
    if white != 2 {
        return Err(Error::NotClean);
    }
    let genus = d.genus();
    if genus < 2 {
        return Err(Error::GenusBelowTwo(genus));
    }
    let degree = d.degree();
    let generators = [
        (Gen::X, d.sigma0().clone()),
        (Gen::Y, d.sigma1().clone()),
        (Gen::Z, d.sigma_infinity()),
    ];
    let tree = schreier_tree(d);
    let path = &tree.paths;
    let mut tree_edge = vec![[false; 3]; degree + 1];
    for &(from, gen, _) in &tree.edges {
        tree_edge[from][gen as usize] = true;
    }

    let orders = (2, black, face);
    let triangle = triangle_group_matrices(2, black, face)?;
    let mut pairings = Vec::new();
    for label in 1..=degree {
        for (index, (gen, perm)) in generators.iter().enumerate() {
            if tree_edge[label][index] {
                continue;
            }
            let image = perm.apply(label);
            let word = path[label]
                .as_ref()
                .expect("transitive action reaches every label")
                .concat(&Word::from_letters([(*gen, 1)]))
                .concat(&path[image].as_ref().expect("reached").inverse())
                .normalized_positive(orders);
            assert_eq!(
                eval_word_perm(&word, d).apply(1),
                1,
                "Schreier generator must fix the base edge"
            );
            let matrix = eval_word_matrix(&word, &triangle);
            assert!(
                matches!(matrix.kind, IsometryKind::Hyperbolic | IsometryKind::Identity),
                "side pairing {word} is {:?}; the stabilizer subgroup must be torsion free",
                matrix.kind
            );
            pairings.push(SidePairing {
                side_pair: (label, image),
                word_text: word.to_string(),
                word,
                matrix,
            });
        }
    }
    assert_eq!(pairings.len(), 2 * degree + 1);
    Ok(pairings)
}

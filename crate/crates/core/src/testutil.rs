//! Shared helpers for unit tests.

use rand::prelude::*;

use crate::dessin::Dessin;
use crate::perm::{orbits, Permutation};

pub fn parse(degree: usize, text: &str) -> Permutation {
    Permutation::parse(degree, text).unwrap()
}

pub fn random_permutation(rng: &mut StdRng, degree: usize) -> Permutation {
    let mut one_line: Vec<usize> = (1..=degree).collect();
    one_line.shuffle(rng);
    Permutation::from_one_line(one_line).unwrap()
}

/// Rejection-samples a pair of permutations generating a transitive group.
pub fn random_transitive_pair(rng: &mut StdRng, degree: usize) -> (Permutation, Permutation) {
    loop {
        let a = random_permutation(rng, degree);
        let b = random_permutation(rng, degree);
        if orbits(&[a.clone(), b.clone()]).unwrap().len() == 1 {
            return (a, b);
        }
    }
}

/// Degree-16 genus-2 clean dessin of type (2,4,8).
pub fn genus_two_16() -> Dessin {
    Dessin::new(
        parse(16, "(1,16)(2,15)(3,14)(4,13)(5,12)(6,11)(7,10)(8,9)"),
        parse(16, "(1,6,9,12)(2,10,16,8)(3,13,15,5)(4,7,14,11)"),
    )
    .unwrap()
}

/// Degree-12 genus-2 regular clean dessin of type (2,6,6).
pub fn genus_two_12() -> Dessin {
    Dessin::new(
        parse(12, "(1,7)(2,8)(3,9)(4,10)(5,11)(6,12)"),
        parse(12, "(1,2,3,4,5,6)(7,8,9,10,11,12)"),
    )
    .unwrap()
}

/// Degree-12 genus-2 clean dessin of type (2,6,6) whose dual drops a curve
/// component.
pub fn dual_example() -> Dessin {
    Dessin::new(
        parse(12, "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)"),
        parse(12, "(1,7,4,2,3,6)(5,11,8,9,12,10)"),
    )
    .unwrap()
}

/// The six pairwise inequivalent degree-12 uniform clean dessins of type
/// (2,4,12) and genus 2, sharing one sigma0. Only the last is filling.
pub fn degree_twelve_suite() -> Vec<Dessin> {
    let sigma0 = "(1,12)(2,11)(3,10)(4,9)(5,8)(6,7)";
    [
        "(1,3,12,11)(2,6,9,8)(4,5,10,7)",
        "(1,3,12,11)(2,5,10,9)(4,6,8,7)",
        "(1,3,12,11)(2,4,8,10)(5,7,9,6)",
        "(1,6,9,8)(2,10,12,4)(3,7,11,5)",
        "(1,11,8,3)(2,5,12,9)(4,7,10,6)",
        "(1,4,7,10)(2,6,12,8)(3,5,11,9)",
    ]
    .iter()
    .map(|sigma1| Dessin::new(parse(12, sigma0), parse(12, sigma1)).unwrap())
    .collect()
}

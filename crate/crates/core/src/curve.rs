//! From dessins to multicurves: component decomposition by the
//! straight-through traversal, the filling-curve criterion, the
//! general-position test, duality, and medial surgery.

use serde::{Deserialize, Serialize};

use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The multicurve carried by a uniform dessin, as cyclic edge sequences.
///
/// Each component lists the dessin edges it traverses in order; every edge
/// of the dessin appears in exactly one component, exactly once. `m` and `l`
/// are the half-degrees of black and white vertices (`l = 1` for clean
/// dessins), so consecutive edges alternate between applications of
/// `sigma0^l` and `sigma1^m sigma0^l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    pub r: usize,
    pub m: usize,
    pub l: usize,
    pub components: Vec<Vec<usize>>,
}

/// Decomposes a uniform dessin of even vertex degrees into its multicurve
/// components.
///
/// From edge `e` the traversal continues straight through the white vertex
/// to `sigma0^l(e)`, then straight through the black vertex to
/// `sigma1^m sigma0^l (e)`, and so on until the cycle closes. Components are
/// listed by ascending minimal edge label and each starts at its minimal
/// label; `r` always comes out as half the number of cycles of
/// `sigma1^m sigma0^l`.
pub fn decompose(d: &Dessin) -> Result<CurveSystem> {
    let (white, black, _faces) = d.uniform_type()?;
    if white % 2 != 0 {
        return Err(Error::OddWhiteDegree(white));
    }
    if black % 2 != 0 {
        return Err(Error::OddBlackDegree(black));
    }
    let l = white / 2;
    let m = black / 2;
    let s = d.sigma0().power(l as i64);
    let t = d.sigma1().power(m as i64).compose(&s).expect("equal degrees");

    let degree = d.degree();
    let mut used = vec![false; degree];
    let mut components = Vec::new();
    for start in 1..=degree {
        if used[start - 1] {
            continue;
        }
        let mut sequence = Vec::new();
        let mut cur = start;
        loop {
            let partner = s.apply(cur);
            assert!(
                !used[cur - 1] && !used[partner - 1],
                "traversal revisited an edge; half-turn involutions failed to pair cycles"
            );
            used[cur - 1] = true;
            used[partner - 1] = true;
            sequence.push(cur);
            sequence.push(partner);
            cur = t.apply(cur);
            if cur == start {
                break;
            }
        }
        components.push(sequence);
    }
    let r = components.len();
    debug_assert_eq!(r * 2, t.cycles().cycles.len());
    Ok(CurveSystem {
        r,
        m,
        l,
        components,
    })
}

/// Whether the multicurve of a clean uniform dessin is a single filling
/// curve: `sigma1^m sigma0` must consist of exactly two cycles of length
/// `E/2`.
pub fn is_filling_curve(d: &Dessin) -> Result<bool> {
    let (white, black, _faces) = d.uniform_type()?;
    if white != 2 {
        return Err(Error::NotClean);
    }
    if black % 2 != 0 {
        return Err(Error::OddBlackDegree(black));
    }
    let m = (black / 2) as i64;
    let t = d.sigma1().power(m).compose(d.sigma0()).expect("equal degrees");
    let cycle_type = t.cycles().cycle_type;
    Ok(cycle_type.len() == 2 && cycle_type.iter().all(|&len| len == d.degree() / 2))
}

/// Whether every self-intersection of the curve is a simple double point,
/// i.e. every black vertex of the clean dessin has degree 4.
pub fn is_general_position(d: &Dessin) -> Result<bool> {
    let passport = d.passport();
    if !passport.white_degrees.iter().all(|&deg| deg == 2) {
        return Err(Error::NotClean);
    }
    Ok(passport.black_degrees.iter().all(|&deg| deg == 4))
}

/// The dual dessin `(sigma0, sigma_infinity)` of a clean dessin: black
/// vertices and faces trade places while the white (curve) structure and
/// the genus stay fixed.
pub fn dual(d: &Dessin) -> Result<Dessin> {
    if !d.passport().white_degrees.iter().all(|&deg| deg == 2) {
        return Err(Error::NotClean);
    }
    Dessin::new(d.sigma0().clone(), d.sigma_infinity())
}

/// Medial surgery: recolors all vertices of `dstar` black and inserts a
/// degree-2 white vertex in the middle of every edge.
///
/// Old edge `e` splits into halves `e` and `E + e`. The new white rotation
/// swaps the halves; the new black rotation acts as the old `sigma1` on
/// `{1..E}` and sends `E + e` to `E + sigma0(e)`. Face degrees double and
/// the genus is preserved.
pub fn medial(dstar: &Dessin) -> Dessin {
    let e = dstar.degree();
    let pairs: Vec<Vec<usize>> = (1..=e).map(|i| vec![i, e + i]).collect();
    let sigma0 = Permutation::from_cycles(2 * e, &pairs).expect("disjoint transpositions");
    let mut one_line = vec![0usize; 2 * e];
    for i in 1..=e {
        one_line[i - 1] = dstar.sigma1().apply(i);
        one_line[e + i - 1] = e + dstar.sigma0().apply(i);
    }
    let sigma1 = Permutation::from_one_line(one_line).expect("bijective by construction");
    Dessin::new(sigma0, sigma1).expect("medial of a transitive pair is transitive")
}

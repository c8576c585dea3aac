//! The invariant suite behind `fillcurve verify`: structural identities a
//! valid dessin must satisfy, reported one check per property.

use std::f64::consts::PI;

use serde::Serialize;

use fillcurve::{
    decompose, in_k, is_filling_curve, is_general_position, is_hyperbolic_triple, parse_word,
    Dessin,
};

/// The sixteen-edge worked example; the stabilizer word suite runs only
/// when the verified input is this exact dessin.
const BUNDLED_EXAMPLE: &str = include_str!("../../../fixtures/clean_2_4_8_16edges.json");

const STABILIZER_WORDS: [&str; 7] = [
    "z3xz", "z6xz7", "xz5xz6", "xz6xz6x", "xz7xz4", "xz3xz3", "xz4xz7x",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified property.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Pass,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Fail,
            detail,
        }
    }

    fn skipped(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Skipped,
            detail,
        }
    }
}

/// Outcome of the whole suite; `ok` means no check failed (skipped checks
/// do not count against the input).
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub checks: Vec<Check>,
}

fn euler_parity(d: &Dessin) -> Check {
    let passport = d.passport();
    let chi = d.degree() as i64
        - passport.white_degrees.len() as i64
        - passport.black_degrees.len() as i64
        - passport.face_degrees.len() as i64;
    if chi % 2 == 0 && chi >= -2 {
        Check::pass(
            "euler_parity",
            format!("E - W - B - F = {chi} = 2g - 2 with g = {}", d.genus()),
        )
    } else {
        Check::fail(
            "euler_parity",
            format!("E - W - B - F = {chi} is not an even integer >= -2"),
        )
    }
}

fn degree_sums(d: &Dessin) -> Check {
    let passport = d.passport();
    let e = d.degree();
    let sums = [
        passport.white_degrees.iter().sum::<usize>(),
        passport.black_degrees.iter().sum::<usize>(),
        passport.face_degrees.iter().sum::<usize>(),
    ];
    if sums.iter().all(|&s| s == e) {
        Check::pass(
            "degree_sums",
            format!("white, black and face degrees each sum to E = {e}"),
        )
    } else {
        Check::fail(
            "degree_sums",
            format!("degree sums {sums:?} against E = {e}"),
        )
    }
}

fn rotation_product_identity(d: &Dessin) -> Check {
    let inner = d
        .sigma1()
        .compose(d.sigma0())
        .expect("generators share the degree");
    let product = d
        .sigma_infinity()
        .compose(&inner)
        .expect("generators share the degree");
    if product.is_identity() {
        Check::pass(
            "rotation_product_identity",
            "sigma_inf . sigma1 . sigma0 = id (sigma0 applied first)".into(),
        )
    } else {
        Check::fail(
            "rotation_product_identity",
            "sigma_inf . sigma1 . sigma0 is not the identity".into(),
        )
    }
}

fn component_count_agreement(d: &Dessin) -> Check {
    let name = "component_count_agreement";
    match decompose(d) {
        Ok(system) => {
            let step = d
                .sigma1()
                .power(system.m as i64)
                .compose(&d.sigma0().power(system.l as i64))
                .expect("generators share the degree");
            let cycles = step.cycles().cycles.len();
            if cycles == 2 * system.r {
                Check::pass(
                    name,
                    format!(
                        "r = {} components; sigma1^{} sigma0^{} has {cycles} = 2r cycles",
                        system.r, system.m, system.l
                    ),
                )
            } else {
                Check::fail(
                    name,
                    format!(
                        "traversal found r = {} but the curve permutation has {cycles} cycles",
                        system.r
                    ),
                )
            }
        }
        Err(err) => Check::skipped(name, format!("no multicurve decomposition: {err}")),
    }
}

fn length_form_agreement(d: &Dessin) -> Check {
    let name = "length_form_agreement";
    let (white, black, face) = match d.uniform_type() {
        Ok(triple) => triple,
        Err(err) => return Check::skipped(name, format!("not uniform: {err}")),
    };
    if white != 2 {
        return Check::skipped(
            name,
            "the two-form identity concerns clean types (2, 2m, k)".into(),
        );
    }
    if black % 2 != 0 {
        return Check::skipped(name, format!("odd black degree {black}"));
    }
    let (m, k) = (black / 2, face);
    if !is_hyperbolic_triple(2, black, face) {
        return Check::skipped(name, format!("type (2, {black}, {face}) is not hyperbolic"));
    }
    let half = PI / (2.0 * m as f64);
    let long = ((half.cos().powi(2) + (2.0 * PI / k as f64).cos()) / half.sin().powi(2)).acosh();
    let short = 2.0 * ((PI / k as f64).cos() / half.sin()).acosh();
    let gap = (long - short).abs() / long.abs().max(1.0);
    if gap <= 1e-12 {
        Check::pass(
            name,
            format!("both closed forms give {long:.15} per arc (relative gap {gap:.2e})"),
        )
    } else {
        Check::fail(name, format!("closed forms disagree: {long} vs {short}"))
    }
}

fn face_count_relation(d: &Dessin) -> Check {
    let name = "face_count_relation";
    let k = match d.uniform_type() {
        Ok((2, 4, k)) => k,
        Ok(other) => {
            return Check::skipped(name, format!("applies to types (2, 4, k), not {other:?}"))
        }
        Err(err) => return Check::skipped(name, format!("not uniform: {err}")),
    };
    match (is_general_position(d), is_filling_curve(d)) {
        (Ok(true), Ok(true)) => {}
        _ => {
            return Check::skipped(
                name,
                "applies to filling curves in general position".into(),
            )
        }
    }
    let genus = d.genus();
    let n = d.passport().face_degrees.len();
    if 8 * genus == 8 + n * (k - 4) {
        Check::pass(name, format!("8g - 8 = n(k - 4) with g = {genus}, n = {n}, k = {k}"))
    } else {
        Check::fail(
            name,
            format!("8g - 8 = {} but n(k - 4) = {}", 8 * genus - 8, n * (k - 4)),
        )
    }
}

fn stabilizer_word_suite(d: &Dessin) -> Check {
    let name = "stabilizer_word_suite";
    let bundled: Dessin =
        serde_json::from_str(BUNDLED_EXAMPLE).expect("the bundled example is valid JSON");
    if *d != bundled {
        return Check::skipped(
            name,
            "runs only on the bundled sixteen-edge example".into(),
        );
    }
    for text in STABILIZER_WORDS {
        let word = parse_word(text).expect("frozen word list parses");
        match in_k(&word, d, 1) {
            Ok(true) => {}
            _ => return Check::fail(name, format!("{text} does not fix edge 1")),
        }
    }
    let x = parse_word("x").expect("single letter");
    match in_k(&x, d, 1) {
        Ok(false) => Check::pass(
            name,
            "all seven stabilizer words fix edge 1 and the word x does not".into(),
        ),
        _ => Check::fail(name, "x unexpectedly fixes edge 1".into()),
    }
}

/// Runs every check against `d`.
pub fn run_suite(d: &Dessin) -> VerifyReport {
    let checks = vec![
        euler_parity(d),
        degree_sums(d),
        rotation_product_identity(d),
        component_count_agreement(d),
        length_form_agreement(d),
        face_count_relation(d),
        stabilizer_word_suite(d),
    ];
    let ok = checks.iter().all(|check| check.status != Status::Fail);
    VerifyReport { ok, checks }
}

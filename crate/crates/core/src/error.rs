use thiserror::Error;

/// Crate-wide error type.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// so that callers such as the CLI can emit structured error reports without
/// matching on display strings.
#[derive(Debug, Error)]
pub enum Error {
    #[error("label {label} out of range 1..={degree}")]
    LabelOutOfRange { label: usize, degree: usize },
    #[error("label {0} appears more than once in cycle notation")]
    DuplicateLabel(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("one-line notation is not a bijection on 1..={0}")]
    NotABijection(usize),
    #[error("cycle notation parse error at byte {pos}: {reason}")]
    CycleParse { pos: usize, reason: String },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("group order exceeds the u128 range")]
    OrderOverflow,
    #[error("permutation pair is intransitive: {orbits} edge orbits instead of 1")]
    Intransitive { orbits: usize },
    #[error("degree must be at least 1")]
    EmptyDessin,
    #[error("dessin is not uniform: degree multisets are not constant")]
    NotUniform,
    #[error("dessin is not clean: some white vertex degree differs from 2")]
    NotClean,
    #[error("black vertex degree {0} is odd")]
    OddBlackDegree(usize),
    #[error("white vertex degree {0} is odd")]
    OddWhiteDegree(usize),
    #[error("type ({0},{1},{2}) is not hyperbolic")]
    NotHyperbolic(usize, usize, usize),
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParameterRange {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("(8g-8)/n is not an integer for genus {genus} with {n} faces")]
    NonIntegralFaceDegree { genus: usize, n: usize },
    #[error("no integral edge count for type (2,{two_m},{k}) at genus {genus}")]
    NonIntegralDegree { two_m: usize, k: usize, genus: usize },
    #[error("the curve system is not a single filling curve")]
    NotFilling,
    #[error("surgery requires white degrees 2 and black degrees 4")]
    SurgeryPassport,
    #[error("({a},{b}) is not a 2-cycle of sigma0")]
    NotAWhiteEdgePair { a: usize, b: usize },
    #[error("labels {a} and {b} lie in the same cycle of sigma1")]
    SameBlackCycle { a: usize, b: usize },
    #[error("no seed dessin available for genus {genus} with {n} faces")]
    UnsupportedSeed { genus: usize, n: usize },
    #[error("target genus {target} is not reachable from genus {genus} in blocks of {n} surgeries")]
    GrowthStep {
        genus: usize,
        target: usize,
        n: usize,
    },
    #[error("surgery search exhausted while growing towards genus {target}")]
    GrowthExhausted { target: usize },
    #[error("word parse error at byte {pos}: {reason}")]
    WordParse { pos: usize, reason: String },
    #[error("matrix determinant {0} is not 1 within tolerance")]
    NotUnimodular(f64),
    #[error("triangle type mismatch: dessin has type ({0},{1},{2}), requested ({3},{4},{5})")]
    TriangleTypeMismatch(usize, usize, usize, usize, usize, usize),
    #[error("genus {0} is below 2; the dessin does not define a hyperbolic surface")]
    GenusBelowTwo(usize),
    #[error("render placement violates a coincidence tolerance: {detail}")]
    RenderTolerance { detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::LabelOutOfRange { .. } => "label_out_of_range",
            Error::DuplicateLabel(_) => "duplicate_label",
            Error::DegreeMismatch(_, _) => "degree_mismatch",
            Error::NotABijection(_) => "not_a_bijection",
            Error::CycleParse { .. } => "cycle_parse",
            Error::EmptyGenerators => "empty_generators",
            Error::OrderOverflow => "order_overflow",
            Error::Intransitive { .. } => "intransitive",
            Error::EmptyDessin => "empty_dessin",
            Error::NotUniform => "not_uniform",
            Error::NotClean => "not_clean",
            Error::OddBlackDegree(_) => "odd_black_degree",
            Error::OddWhiteDegree(_) => "odd_white_degree",
            Error::NotHyperbolic(_, _, _) => "not_hyperbolic",
            Error::ParameterRange { .. } => "parameter_range",
            Error::NonIntegralFaceDegree { .. } => "non_integral_face_degree",
            Error::NonIntegralDegree { .. } => "non_integral_degree",
            Error::NotFilling => "not_filling",
            Error::SurgeryPassport => "surgery_passport",
            Error::NotAWhiteEdgePair { .. } => "not_a_white_edge_pair",
            Error::SameBlackCycle { .. } => "same_black_cycle",
            Error::UnsupportedSeed { .. } => "unsupported_seed",
            Error::GrowthStep { .. } => "growth_step",
            Error::GrowthExhausted { .. } => "growth_exhausted",
            Error::WordParse { .. } => "word_parse",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::TriangleTypeMismatch(..) => "triangle_type_mismatch",
            Error::GenusBelowTwo(_) => "genus_below_two",
            Error::RenderTolerance { .. } => "render_tolerance",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

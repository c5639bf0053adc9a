use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular system: pivot {pivot:.3e} in column {column} is below the relative threshold")]
    Singular { column: usize, pivot: f64 },

    #[error("technique `{technique}` is not viable: leading principal minor of order {order} of {matrix} is {value:.6e}")]
    NotViable {
        technique: String,
        matrix: &'static str,
        order: usize,
        value: f64,
    },

    #[error("r = {r} is outside the viable range [0, {max_profit_rate}) of technique `{technique}`")]
    OutOfRange {
        technique: String,
        r: f64,
        max_profit_rate: f64,
    },

    #[error("interest rate must be nonnegative, got {0}")]
    NegativeRate(f64),

    #[error("numeraire index {index} out of range for {n} commodities")]
    Numeraire { index: usize, n: usize },

    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("conflicting capital tags: {0}")]
    ConflictingTags(String),

    #[error("the two techniques are identical")]
    IdenticalTechniques,

    #[error("r = {r} is not a switch point: |w_a - w_b| = {residual:.3e}")]
    NotARoot { r: f64, residual: f64 },

    #[error("coincident techniques: the unit-cost system is singular")]
    CoincidentTechniques,

    #[error("undefined marginal rate of substitution: {0}")]
    UndefinedMrs(String),

    #[error("not a square factor-price system: {0}")]
    NotSquare(String),

    #[error("the pair is determinate (techniques >= inputs); use switch_factor_prices_square")]
    Determinate,

    #[error("techniques use heterogeneous capital goods; augment them before comparing costs")]
    HeterogeneousCapital,

    #[error("{count} switch points found, more than the bound {bound} for techniques differing in one sector")]
    BoundViolated { count: usize, bound: usize },

    #[error("the wage curves coincide on the whole range (largest gap {max_gap:.3e}); every rate is a crossing")]
    CoincidentWageCurves { max_gap: f64 },

    #[error("unknown case study `{0}`")]
    UnknownCase(String),

    #[error("table `{table}` is not available for case `{case}`")]
    InapplicableTable { case: String, table: String },

    #[error("model file: {0}")]
    ModelFile(String),
}

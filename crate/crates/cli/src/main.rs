//! `lagmut`: JSON front end to the core library.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 validation failure,
//! 3 numeric error (walls, branch cuts, singular points, resource limits).

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lagmut::algebra::{
    apply_mutation, eval_at, laurent_arith, mutate_potential, verify_invariance, ArithOp, Direction, LaurentPolynomial,
    MutationRule, MutationRuleJson, PotentialJson, RationalFunction,
};
use lagmut::algebra::scalar::ScalarJson;
use lagmut::broken::{
    classify, enumerate_types_of_kind, type_virtual_dimension, validate_type, CombType, EnumerationBounds, Kind,
};
use lagmut::elementary::{
    cr_residual, elementary_count, elementary_index_witness, evaluate_section, reeb_endpoint_sign,
    verify_section_properties, ElementarySection, GridSpec, SectionSamples, Side, Sign,
};
use lagmut::floer::{
    build_consistent_fixture, AssignmentJson, CoboundaryData, FixtureFamily, FixtureSpec, FloerComplex,
    FloerComplexJson, HolonomyAssignment, Matrix,
};
use lagmut::geometry::{
    elementary_disc_area, hamiltonian_isotopy_test, integrate_lambda_n, is_admissible, is_valid_mutation_pair,
    lagrangian_residual, primitive_along_path, torus_point_coordinates, winding_number, AreaSign, GeometryContext,
    PathJson, PlanarPath, TorusPoint, DEFAULT_TOL,
};
use lagmut::index::{
    critical_multiplicity, disc_index, monotonicity_constant, single_puncture_index, sobolev_weight_window,
    split_indices, virtual_dimension, DiscClass, IndexData, MonotonicityMode,
};
use lagmut::Error;

mod output;

/// Residual threshold for the Cauchy-Riemann check of `elementary verify`.
const CR_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "lagmut", version, about = "Local higher mutations: algebra, geometry and counting checks")]
struct Cli {
    /// Tolerance for geometric checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for fixtures and random samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transport a potential across a mutation; optionally combine and evaluate.
    Mutate(MutateArgs),
    /// Check that the forward substitution undoes the inverse one.
    VerifyInvariance {
        #[arg(long)]
        potential: PathBuf,
        #[arg(long)]
        rule: PathBuf,
    },
    /// λₙ-integral, winding number and primitive of a path, or an elementary disc area.
    Integrate(IntegrateArgs),
    /// Admissibility of a path, with torus coordinates and the Lagrangian residual.
    Admissible(AdmissibleArgs),
    /// Conditions for a pair of arcs to define a mutation.
    MutationPair {
        #[arg(long)]
        c: PathBuf,
        #[arg(long = "c-prime")]
        c_prime: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Compare two paths for Hamiltonian isotopy.
    Isotopy {
        #[arg(long)]
        g0: PathBuf,
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Index bookkeeping for disc data.
    Index(IndexArgs),
    #[command(subcommand)]
    Elementary(ElementaryCommand),
    #[command(subcommand)]
    Floer(FloerCommand),
    #[command(subcommand)]
    Broken(BrokenCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Inverse,
}

#[derive(Args)]
struct MutateArgs {
    #[arg(long)]
    potential: PathBuf,
    /// Without a rule the (combined) potential is returned unchanged.
    #[arg(long)]
    rule: Option<PathBuf>,
    /// Second potential, combined with the first before mutating.
    #[arg(long, requires = "op")]
    with: Option<PathBuf>,
    #[arg(long, value_enum, requires = "with")]
    op: Option<OpArg>,
    /// Raw substitution direction; the default is W ∘ μ⁻¹ with a Laurent check.
    #[arg(long, value_enum, requires = "rule")]
    direction: Option<DirectionArg>,
    /// Point JSON {"x1": {"re": "p/q", "im": "p/q"}, ...} to evaluate the result at.
    #[arg(long)]
    at: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct IntegrateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, required_unless_present = "delta_f")]
    path: Option<PathBuf>,
    /// Winding number about this point (closed paths), as re,im.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    about: Option<(f64, f64)>,
    /// Report the primitive at these global parameters and at the breakpoints.
    #[arg(long, value_delimiter = ',', num_args = 0.., allow_hyphen_values = true)]
    primitive: Option<Vec<f64>>,
    /// Elementary disc area scale·(π/n ± delta_f) instead of a path integral.
    #[arg(long, conflicts_with = "path", allow_hyphen_values = true)]
    delta_f: Option<f64>,
    #[arg(long, value_enum, default_value = "plus")]
    sign: SignArg,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Args)]
struct AdmissibleArgs {
    #[arg(long)]
    path: PathBuf,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    eps: f64,
    /// Global path parameter of a torus point.
    #[arg(long, requires = "angles")]
    param: Option<f64>,
    /// The n − 1 fiber angles of the torus point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "param")]
    angles: Option<Vec<f64>>,
    /// Finite-difference step for the Lagrangian residual.
    #[arg(long, default_value_t = 1e-4)]
    h: f64,
}

#[derive(Args)]
struct IndexArgs {
    /// IndexData JSON.
    #[arg(long)]
    data: Option<PathBuf>,
    /// n for the quantities that do not need index data.
    #[arg(long)]
    n: Option<u32>,
    /// Chord multiplicity for the single-puncture index.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    punctures: u64,
    #[arg(long, default_value_t = 0)]
    aut: u64,
    /// List of disc classes {area, maslov} for the monotonicity constant.
    #[arg(long)]
    classes: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pair")]
    mode: ModeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Pair,
    Lagrangian,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

#[derive(Args)]
struct SectionArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Distinguished coordinate of a lower section.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// n − 1 phase angles; zero by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Option<Vec<f64>>,
}

#[derive(Subcommand)]
enum ElementaryCommand {
    /// Cauchy-Riemann residual, product identity and boundary moduli of a section.
    Verify {
        #[command(flatten)]
        section: SectionArgs,
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Evaluate a section at a point of its half-plane.
    Eval {
        #[command(flatten)]
        section: SectionArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: (f64, f64),
    },
    /// Number of elementary discs on one side.
    Count {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        mutated: bool,
        #[arg(long)]
        n: u32,
    },
    /// Endpoint sign of a Reeb chord of length l·π/n.
    Chord {
        #[arg(long, value_enum)]
        sign: ChordSign,
        #[arg(long)]
        l: u32,
    },
    /// Index data of the elementary disc.
    Witness {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ChordSign {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Graded,
    Koszul,
}

#[derive(Subcommand)]
enum FloerCommand {
    /// Coboundary matrix of a complex.
    Matrix {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Check ∂² = (W_L − W_K)·Id symbolically.
    Check {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Deterministic consistent complex for --seed.
    Fixture {
        #[arg(long)]
        generators: usize,
        #[arg(long = "rank-l")]
        rank_l: usize,
        #[arg(long = "rank-k")]
        rank_k: usize,
        #[arg(long, value_enum, default_value = "graded")]
        family: FamilyArg,
    },
    /// Rank of ∂ and dimension of HF at a holonomy assignment.
    Rank {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        assign: PathBuf,
        /// Compute on the mutated complex instead.
        #[arg(long)]
        rule: Option<PathBuf>,
    },
    /// Coboundary after substituting the mutation into the L variables.
    Mutate {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rule: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Strip,
    #[value(name = "disc_with_point_constraint")]
    DiscWithPointConstraint,
}

#[derive(Subcommand)]
enum BrokenCommand {
    /// Structural checks of a combinatorial type.
    Validate {
        #[arg(long = "type")]
        ty: PathBuf,
    },
    /// Expected dimension of a type.
    Dim {
        #[arg(long = "type")]
        ty: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Rigid, high index or excluded.
    Classify {
        #[arg(long = "type")]
        ty: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Classification table of every type within the bounds.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_levels: usize,
        #[arg(long, default_value_t = 3)]
        max_components: usize,
        #[arg(long, default_value_t = 3)]
        max_multiplicity: u32,
        #[arg(long, default_value_t = 3)]
        max_punctures: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        budget: i64,
        #[arg(long, value_enum, default_value = "strip")]
        kind: KindArg,
        /// Only print the counts and the rigid types.
        #[arg(long)]
        summary: bool,
    },
}

fn parse_complex(text: &str) -> Result<(f64, f64), String> {
    let (re, im) = text.split_once(',').ok_or_else(|| format!("expected re,im, got {text:?}"))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(re)?, parse(im)?))
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_potential(path: &Path) -> Result<LaurentPolynomial, Failure> {
    Ok(read_json::<PotentialJson>(path)?.to_polynomial()?)
}

fn read_path(path: &Path) -> Result<PlanarPath, Failure> {
    Ok(PlanarPath::from_json(&read_json::<PathJson>(path)?)?)
}

fn read_complex(path: &Path) -> Result<FloerComplex, Failure> {
    Ok(read_json::<FloerComplexJson>(path)?.to_complex()?)
}

fn rational_json(f: &RationalFunction) -> Value {
    json!({
        "numerator": PotentialJson::from(f.numerator()),
        "denominator": PotentialJson::from(f.denominator()),
    })
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(rational_json).collect())).collect())
}

fn complex_pair(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

impl Cli {
    fn context(&self, n: u32) -> Result<GeometryContext, Failure> {
        Ok(GeometryContext::new(n, self.tol.unwrap_or(DEFAULT_TOL))?)
    }

    fn run(&self) -> Outcome {
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
            }
        }
        match &self.command {
            Command::Mutate(a) => mutate(a),
            Command::VerifyInvariance { potential, rule } => {
                let w = read_potential(potential)?;
                let rule = MutationRule::from_json(&read_json::<MutationRuleJson>(rule)?, w.variables())?;
                let ok = verify_invariance(&w, &rule)?;
                Ok((json!({ "invariant": ok }), ok))
            }
            Command::Integrate(a) => self.integrate(a),
            Command::Admissible(a) => self.admissible(a),
            Command::MutationPair { c, c_prime, n } => {
                let report = is_valid_mutation_pair(&read_path(c)?, &read_path(c_prime)?, &self.context(*n)?)?;
                Ok((serde_json::to_value(&report).expect("report serializes"), report.ok))
            }
            Command::Isotopy { g0, g1, n } => {
                let ok = hamiltonian_isotopy_test(&read_path(g0)?, &read_path(g1)?, &self.context(*n)?)?;
                Ok((json!({ "isotopic": ok }), ok))
            }
            Command::Index(a) => index(a),
            Command::Elementary(c) => self.elementary(c),
            Command::Floer(c) => self.floer(c),
            Command::Broken(c) => broken(c),
        }
    }

    fn integrate(&self, a: &IntegrateArgs) -> Outcome {
        let Some(path) = &a.path else {
            let sign = match a.sign {
                SignArg::Plus => AreaSign::Plus,
                SignArg::Minus => AreaSign::Minus,
            };
            let area = elementary_disc_area(a.n, a.delta_f.expect("clap requires delta-f"), sign, a.scale)?;
            return Ok((json!({ "area": area }), true));
        };
        let ctx = self.context(a.n)?;
        let path = read_path(path)?;
        let mut out = json!({ "integral": integrate_lambda_n(&path, &ctx)? });
        if let Some((re, im)) = a.about {
            out["winding"] = json!(winding_number(&path, num_complex::Complex64::new(re, im))?);
        }
        if let Some(samples) = &a.primitive {
            let values = primitive_along_path(&path, samples, &ctx)?;
            out["primitive"] = Value::Array(values.into_iter().map(|(t, f)| json!([t, f])).collect());
        }
        Ok((out, true))
    }

    fn admissible(&self, a: &AdmissibleArgs) -> Outcome {
        let ctx = self.context(a.n)?;
        let path = read_path(&a.path)?;
        let report = is_admissible(&path, a.t, a.eps, &ctx);
        let mut out = serde_json::to_value(&report).expect("report serializes");
        if let (Some(s), Some(angles)) = (a.param, &a.angles) {
            let m = path.piece_count() as f64;
            if !(0.0..=m).contains(&s) {
                return Err(Error::Domain(format!("parameter {s} outside [0, {m}]")).into());
            }
            let point = TorusPoint::new(path.point_at(s), angles.clone())?;
            let coords = torus_point_coordinates(&point, &ctx)?;
            out["torus_point"] = Value::Array(coords.into_iter().map(complex_pair).collect());
            out["lagrangian_residual"] = json!(lagrangian_residual(&path, s, angles, a.h, &ctx)?);
        }
        Ok((out, report.ok))
    }

    fn elementary(&self, c: &ElementaryCommand) -> Outcome {
        match c {
            ElementaryCommand::Verify { section, h, samples } => {
                let s = section.build()?;
                let cr = cr_residual(&s, &GridSpec::default_for(&s, *h))?;
                let report = verify_section_properties(&s, &SectionSamples::random(&s, *samples, self.seed))?;
                let ok = report.valid && cr < CR_TOL;
                let out = json!({
                    "section": s,
                    "cr_residual": cr,
                    "identity_residual": report.identity_residual,
                    "modulus_spread": report.modulus_spread,
                    "valid": ok,
                });
                Ok((out, ok))
            }
            ElementaryCommand::Eval { section, z } => {
                let s = section.build()?;
                let w = evaluate_section(&s, num_complex::Complex64::new(z.0, z.1))?;
                Ok((json!({ "value": w.into_iter().map(complex_pair).collect::<Vec<_>>() }), true))
            }
            ElementaryCommand::Count { side, mutated, n } => {
                let count = elementary_count(side.into(), *mutated, *n)?;
                Ok((json!({ "count": count }), true))
            }
            ElementaryCommand::Chord { sign, l } => {
                let start = match sign {
                    ChordSign::Plus => Sign::Plus,
                    ChordSign::Minus => Sign::Minus,
                };
                let end = reeb_endpoint_sign(start, *l)?;
                Ok((json!({ "start": start.to_string(), "end": end.to_string() }), true))
            }
            ElementaryCommand::Witness { n } => {
                let w = elementary_index_witness(*n)?;
                Ok((serde_json::to_value(w).expect("witness serializes"), true))
            }
        }
    }

    fn floer(&self, c: &FloerCommand) -> Outcome {
        match c {
            FloerCommand::Matrix { complex } => {
                let c = read_complex(complex)?;
                let m = lagmut::floer::coboundary_matrix(&c)?;
                Ok((json!({ "generators": c.generators, "variables": c.variables(), "matrix": matrix_json(&m) }), true))
            }
            FloerCommand::Check { complex } => {
                let report = lagmut::floer::verify_d_squared(&read_complex(complex)?)?;
                let defect: Vec<Value> =
                    report.nonzero_entries().into_iter().map(|(i, j, v)| json!([i, j, v])).collect();
                Ok((json!({ "ok": report.ok, "defect": defect }), report.ok))
            }
            FloerCommand::Fixture { generators, rank_l, rank_k, family } => {
                let spec = FixtureSpec {
                    generators: *generators,
                    rank_l: *rank_l,
                    rank_k: *rank_k,
                    family: match family {
                        FamilyArg::Graded => FixtureFamily::Graded,
                        FamilyArg::Koszul => FixtureFamily::Koszul,
                    },
                };
                let c = build_consistent_fixture(self.seed, &spec)?;
                Ok((serde_json::to_value(FloerComplexJson::from(&c)).expect("complex serializes"), true))
            }
            FloerCommand::Rank { complex, assign, rule } => {
                let c = read_complex(complex)?;
                let a = HolonomyAssignment::from_json(&read_json::<AssignmentJson>(assign)?)?;
                let rank = match rule {
                    Some(r) => mutated(&c, r)?.hf_rank(&a)?,
                    None => lagmut::floer::hf_rank(&c, &a)?,
                };
                Ok((serde_json::to_value(rank).expect("rank serializes"), true))
            }
            FloerCommand::Mutate { complex, rule } => {
                let d = mutated(&read_complex(complex)?, rule)?;
                let out = json!({
                    "generators": d.generators,
                    "variables": d.variables,
                    "matrix": matrix_json(&d.matrix),
                    "W_L": rational_json(&d.potential_l),
                    "W_K": rational_json(&d.potential_k),
                });
                Ok((out, true))
            }
        }
    }
}

fn mutated(c: &FloerComplex, rule: &Path) -> Result<CoboundaryData, Failure> {
    let rule = MutationRule::from_json(&read_json::<MutationRuleJson>(rule)?, c.potential_l.variables())?;
    Ok(lagmut::floer::mutate_complex(c, &rule)?)
}

impl From<&SideArg> for Side {
    fn from(s: &SideArg) -> Side {
        match s {
            SideArg::Upper => Side::Upper,
            SideArg::Lower => Side::Lower,
        }
    }
}

impl SectionArgs {
    fn build(&self) -> Result<ElementarySection, Failure> {
        let theta = self.theta.clone().unwrap_or_else(|| vec![0.0; self.n.saturating_sub(1) as usize]);
        Ok(match self.side {
            SideArg::Upper => ElementarySection::upper(self.n, self.eps, theta)?,
            SideArg::Lower => ElementarySection::lower(self.n, self.eps, self.k, theta)?,
        })
    }
}

fn mutate(a: &MutateArgs) -> Outcome {
    let mut w = read_potential(&a.potential)?;
    if let (Some(other), Some(op)) = (&a.with, a.op) {
        let op = match op {
            OpArg::Add => ArithOp::Add,
            OpArg::Sub => ArithOp::Sub,
            OpArg::Mul => ArithOp::Mul,
        };
        w = laurent_arith(&w, &read_potential(other)?, op)?;
    }
    let mut out = json!({ "variables": w.variables() });
    let value = match &a.rule {
        None => RationalFunction::from_laurent(w),
        Some(rule) => {
            let rule = MutationRule::from_json(&read_json::<MutationRuleJson>(rule)?, w.variables())?;
            match a.direction {
                None => {
                    let m = mutate_potential(&w, &rule)?;
                    out["is_laurent"] = json!(m.is_laurent);
                    out["laurent"] = json!(m.laurent.as_ref().map(PotentialJson::from));
                    m.value
                }
                Some(d) => {
                    let d = match d {
                        DirectionArg::Forward => Direction::Forward,
                        DirectionArg::Inverse => Direction::Inverse,
                    };
                    apply_mutation(&w, &rule, d)?
                }
            }
        }
    };
    out["value"] = rational_json(&value);
    if let Some(at) = &a.at {
        let point = read_json::<BTreeMap<String, ScalarJson>>(at)?
            .into_iter()
            .map(|(k, v)| Ok((k, v.to_scalar()?)))
            .collect::<Result<BTreeMap<_, _>, Error>>()?;
        out["at"] = json!(ScalarJson::from(&eval_at(&value, &point)?));
    }
    Ok((out, true))
}

fn index(a: &IndexArgs) -> Outcome {
    let data = a.data.as_deref().map(read_json::<IndexData>).transpose()?;
    let n = match (&data, a.n) {
        (Some(d), Some(n)) if d.n != n => {
            return Err(Error::Structural(format!("--n {n} disagrees with index data n = {}", d.n)).into())
        }
        (Some(d), _) => d.n,
        (None, Some(n)) => n,
        (None, None) => return Err(Failure::Usage("give --data or --n".into())),
    };
    let mut out = json!({ "n": n, "weight_window": sobolev_weight_window(n)? });
    if let Some(d) = &data {
        d.validate()?;
        let ind = disc_index(d);
        out["critical_multiplicity"] = json!(critical_multiplicity(d)?);
        out["disc_index"] = json!(ind);
        out["split_indices"] = serde_json::to_value(split_indices(d)?).expect("split serializes");
        out["virtual_dimension"] = json!(virtual_dimension(ind, a.punctures, n, a.aut));
    }
    if let Some(k) = a.k {
        out["single_puncture_index"] = json!(single_puncture_index(n, k)?);
    }
    if let Some(path) = &a.classes {
        let classes: Vec<DiscClass> = read_json(path)?;
        let mode = match a.mode {
            ModeArg::Pair => MonotonicityMode::Pair,
            ModeArg::Lagrangian => MonotonicityMode::Lagrangian,
        };
        out["monotonicity"] = serde_json::to_value(monotonicity_constant(&classes, mode)?).expect("report serializes");
    }
    Ok((out, true))
}

/// Compact one-line description of a type for the classification table.
fn signature(t: &CombType) -> String {
    t.levels
        .iter()
        .map(|l| {
            let comps: Vec<String> = l
                .components
                .iter()
                .map(|c| {
                    let shape = match c.shape {
                        lagmut::broken::Shape::Disc => "d",
                        lagmut::broken::Shape::Sphere => "o",
                        lagmut::broken::Shape::Strip => "s",
                    };
                    let flags = format!(
                        "{}{}",
                        if c.nontrivial { "" } else { "~" },
                        if c.touches_critical_locus { "!" } else { "" }
                    );
                    format!("{shape}{:?}{flags}", c.boundary_punctures)
                })
                .collect();
            format!("{}:{}", l.label, comps.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn broken(c: &BrokenCommand) -> Outcome {
    match c {
        BrokenCommand::Validate { ty } => {
            let report = validate_type(&read_json::<CombType>(ty)?);
            Ok((serde_json::to_value(&report).expect("report serializes"), report.valid))
        }
        BrokenCommand::Dim { ty, n } => {
            let t: CombType = read_json(ty)?;
            Ok((json!({ "dimension": type_virtual_dimension(&t, *n)? }), true))
        }
        BrokenCommand::Classify { ty, n } => {
            let v = classify(&read_json::<CombType>(ty)?, *n)?;
            Ok((serde_json::to_value(&v).expect("verdict serializes"), true))
        }
        BrokenCommand::Enumerate {
            n,
            max_levels,
            max_components,
            max_multiplicity,
            max_punctures,
            budget,
            kind,
            summary,
        } => {
            let bounds = EnumerationBounds::new(*max_levels, *max_components, *max_multiplicity, *max_punctures);
            let kind = match kind {
                KindArg::Strip => Kind::Strip,
                KindArg::DiscWithPointConstraint => Kind::DiscWithPointConstraint,
            };
            let all = enumerate_types_of_kind(bounds, *n, *budget, kind)?;
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for (_, v) in &all {
                *counts.entry(format!("{:?}", v.status)).or_default() += 1;
            }
            let rigid: Vec<&CombType> =
                all.iter().filter(|(_, v)| v.status == lagmut::broken::Status::Rigid).map(|(t, _)| t).collect();
            let mut out = json!({ "bounds": bounds, "n": n, "types": all.len(), "counts": counts, "rigid": rigid });
            if !summary {
                let rows: Vec<Value> = all
                    .iter()
                    .map(|(t, v)| {
                        json!({
                            "type": signature(t),
                            "levels": t.levels.len(),
                            "dimension": v.dimension,
                            "status": v.status,
                            "reason": v.reason,
                        })
                    })
                    .collect();
                out["table"] = Value::Array(rows);
            }
            Ok((out, true))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 1,
        Error::Structural(_) | Error::Inconsistent(_) => 2,
        Error::Domain(_)
        | Error::Wall(_)
        | Error::Singularity(_)
        | Error::Branch(_)
        | Error::Generation(_)
        | Error::Resource(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (value, ok) = match cli.run() {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = output::to_json(&value);
    let written = match &cli.output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(if ok { 0 } else { 2 })
}

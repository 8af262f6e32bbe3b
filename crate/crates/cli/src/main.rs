//! Command-line front end for the `sl2fusion` library.
//!
//! Every subcommand prints one report `{command, input, result, checks}`.
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 resource cap.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use sl2fusion::acceptance::{self, Config};
use sl2fusion::fusion::{
    build_module_capped, build_submodule_capped, check_relations, exact_sequence_check,
    special_case_dimension, Character, WeightVector, DEFAULT_DIMENSION_CAP,
};
use sl2fusion::schubert::{
    bundle_split, canonical_flag, coordinate_ring_dims, coordinate_ring_weights, curve_degrees,
    flag_report, group_act, isomorphic, line_bundle_exists, morphism_exists, picard_rank,
    sections_dim, BundleWeights, GroupElement,
};
use sl2fusion::types::{
    leq, leq_by_equalities, poincare, poincare_recursive_single, type_of, Composition,
};
use sl2fusion::verlinde::{
    character_stabilization_capped, fuse, limit_multiplicities, product_chain_right,
};
use sl2fusion::Error;

/// Oracle module constructions are skipped above this dimension.
const ORACLE_LIMIT: u128 = 20_000;

#[derive(Parser, Debug)]
#[command(
    name = "sl2fusion",
    version,
    about = "Fusion products of sl2 modules and Schubert varieties"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Largest module dimension any closure may reach.
    #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP, global = true)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the fusion product M^A.
    Dim { a: List<u32> },
    /// Bigraded character of M^A.
    Char { a: List<u32> },
    /// Vanishing of the leading coefficients of e(z)^i on M^(2^n).
    Relations { n: u32, i: u32 },
    /// The submodule S_{i,i+1}(A).
    Submodule { a: List<u32>, i: usize },
    /// Dimension count of the short exact sequence at position i.
    Exactseq { a: List<u32>, i: usize },
    /// Composition type of a weakly increasing vector.
    Type {
        #[arg(allow_hyphen_values = true)]
        a: List<i64>,
    },
    /// Compare two compositions in the refinement order.
    Order { c1: List<u32>, c2: List<u32> },
    /// Poincaré polynomial of Sh_C, as coefficients of q^0, q^2, ...
    Poincare {
        c: List<u32>,
        /// Also compute it from the recursion on single parts.
        #[arg(long)]
        recursive: bool,
    },
    /// Whether Sh_A and Sh_B are isomorphic.
    Isom { a: List<u32>, b: List<u32> },
    /// Whether a morphism Sh_C1 -> Sh_C2 exists.
    Morphism { c1: List<u32>, c2: List<u32> },
    /// Split C after t parts into fiber and base.
    BundleSplit { c: List<u32>, t: usize },
    /// Whether O(B) exists on Sh_C.
    BundleExists {
        #[arg(allow_hyphen_values = true)]
        b: List<i64>,
        c: List<u32>,
    },
    /// Dimension of the global sections of O(B) on Sh_C.
    Sections {
        #[arg(allow_hyphen_values = true)]
        b: List<i64>,
        c: List<u32>,
    },
    /// Degrees of O(B) on the curves C_0, ..., C_{n-1}.
    Degrees {
        #[arg(allow_hyphen_values = true)]
        b: List<i64>,
    },
    /// Rank of the Picard group of Sh_C.
    Picard { c: List<u32> },
    /// Graded dimensions of the homogeneous coordinate ring of Sh_A.
    Coordring { a: List<u32>, imax: u32 },
    /// Check the flag description on the canonical flag and random translates.
    FlagCheck {
        c: List<u32>,
        /// Number of random group elements.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Product [a][b] in the level-k fusion ring.
    VerlindeFuse { k: u32, a: u32, b: u32 },
    /// Multiplicities of the level-b_n irreducibles in the limit.
    VerlindeLimit {
        #[arg(allow_hyphen_values = true)]
        b: List<i64>,
    },
    /// Top-anchored characters of M^(B^(i)+1) for i = 0..imax.
    Stabilize {
        #[arg(allow_hyphen_values = true)]
        b: List<i64>,
        imax: u32,
        degmax: i64,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Comma-separated integers without whitespace.
#[derive(Clone, Debug)]
struct List<T>(Vec<T>);

impl<T: FromStr> FromStr for List<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.is_empty() {
            return Err("empty list".into());
        }
        s.split(',')
            .map(|x| {
                x.parse::<T>()
                    .map_err(|_| format!("`{x}` is not a valid integer"))
            })
            .collect::<Result<_, _>>()
            .map(List)
    }
}

impl<T> std::ops::Deref for List<T> {
    type Target = Vec<T>;

    fn deref(&self) -> &Vec<T> {
        &self.0
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    input: Value,
    result: Value,
    checks: Vec<Check>,
}

impl Report {
    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn table(&self) -> String {
        let mut out = format!(
            "command: {}\ninput:   {}\nresult:  {}\n",
            self.command, self.input, self.result
        );
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {}: {}\n", c.name, c.detail));
        }
        out
    }
}

fn character_json(ch: &Character) -> Value {
    let terms: Vec<Value> = ch
        .terms()
        .map(|((w, d), m)| json!({"weight": w, "tdeg": d, "mult": m}))
        .collect();
    json!({"terms": terms, "total": ch.total()})
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cap = cli.cap;
    let report = match &cli.command {
        Command::Dim { a } => {
            let a = WeightVector::new(a.to_vec())?;
            let dim = build_module_capped(&a, cap)?.dimension();
            Report {
                command: "dim",
                input: json!({"a": a}),
                result: json!(dim),
                checks: vec![check(
                    "product_formula",
                    dim as u128 == a.product(),
                    format!("expected {}", a.product()),
                )],
            }
        }
        Command::Char { a } => {
            let a = WeightVector::new(a.to_vec())?;
            let module = build_module_capped(&a, cap)?;
            let ch = module.character();
            let lowest: i64 = -a.entries().iter().map(|&x| x as i64 - 1).sum::<i64>();
            Report {
                command: "char",
                input: json!({"a": a}),
                result: character_json(&ch),
                checks: vec![
                    check(
                        "total_is_product",
                        ch.total() as u128 == a.product(),
                        format!("expected {}", a.product()),
                    ),
                    check(
                        "cyclic_stratum",
                        ch.min_weight() == Some(lowest)
                            && ch.terms().all(|((_, d), _)| d >= 0)
                            && ch.coeff(lowest, 0) == 1,
                        format!("one lowest state at weight {lowest}, tdeg 0"),
                    ),
                ],
            }
        }
        Command::Relations { n, i } => {
            let r = check_relations(*n, *i)?;
            let detail = match r.first_violation {
                Some((i, k)) => format!("coefficient z^{k} of the power {i} is nonzero"),
                None => "all leading coefficients vanish".into(),
            };
            Report {
                command: "relations",
                input: json!({"n": n, "i": i}),
                checks: vec![check("leading_coefficients_vanish", r.passed(), detail)],
                result: serde_json::to_value(&r).expect("serializable"),
            }
        }
        Command::Submodule { a, i } => {
            let a = WeightVector::new(a.to_vec())?;
            let sub = build_submodule_capped(&a, *i, cap)?;
            let quotient = sl2fusion::fusion::quotient_weights(&a, *i);
            let quotient_dim: u128 = quotient.iter().map(|&x| x as u128).product();
            let dim = sub.dimension() as u128;
            let mut checks = vec![check(
                "dimension_count",
                dim + quotient_dim == a.product(),
                format!("quotient {quotient:?}"),
            )];
            if let Some(expected) = special_case_dimension(&a, *i) {
                checks.push(check(
                    "closed_form",
                    dim == expected,
                    format!("expected {expected}"),
                ));
            }
            Report {
                command: "submodule",
                input: json!({"a": a, "i": i}),
                result: json!({
                    "dimension": dim,
                    "a_prime": sub.a_prime,
                    "a_double_prime": sub.a_double_prime,
                    "recipe": sub.recipe,
                }),
                checks,
            }
        }
        Command::Exactseq { a, i } => {
            let a = WeightVector::new(a.to_vec())?;
            let r = exact_sequence_check(&a, *i)?;
            Report {
                command: "exactseq",
                input: json!({"a": a, "i": i}),
                checks: vec![check(
                    "dimensions_add_up",
                    r.holds,
                    format!(
                        "{} + {} vs {}",
                        r.submodule_dim, r.quotient_dim, r.module_dim
                    ),
                )],
                result: serde_json::to_value(&r).expect("serializable"),
            }
        }
        Command::Type { a } => {
            let c = type_of(a)?;
            Report {
                command: "type",
                input: json!({"a": a.0}),
                result: json!(c),
                checks: vec![check(
                    "sums_to_length",
                    c.n() as usize == a.len(),
                    format!("n = {}", c.n()),
                )],
            }
        }
        Command::Order { c1, c2 } => {
            let c1 = Composition::new(c1.to_vec())?;
            let c2 = Composition::new(c2.to_vec())?;
            let (le, ge) = (leq(&c1, &c2)?, leq(&c2, &c1)?);
            let agree = le == leq_by_equalities(&c1, &c2)? && ge == leq_by_equalities(&c2, &c1)?;
            Report {
                command: "order",
                input: json!({"c1": c1, "c2": c2}),
                result: json!({"leq": le, "geq": ge, "comparable": le || ge}),
                checks: vec![check(
                    "equality_description",
                    agree,
                    "greedy merge vs partial-sum equalities",
                )],
            }
        }
        Command::Poincare { c, recursive } => {
            let c = Composition::new(c.to_vec())?;
            let p = poincare(&c);
            let mut checks = vec![check(
                "euler_characteristic",
                p.at_one() as u128 == c.parts().iter().map(|&x| x as u128 + 1).product::<u128>(),
                "P(1) = product of (i + 1) over the parts",
            )];
            if *recursive {
                let r = c
                    .parts()
                    .iter()
                    .fold(sl2fusion::types::PoincarePolynomial::one(), |acc, &i| {
                        acc.mul(&poincare_recursive_single(i))
                    });
                checks.push(check(
                    "recursion",
                    r == p,
                    format!("recursive {:?}", r.even_coeffs()),
                ));
            }
            Report {
                command: "poincare",
                input: json!({"c": c, "recursive": recursive}),
                result: json!(p),
                checks,
            }
        }
        Command::Isom { a, b } => {
            let a = WeightVector::new(a.to_vec())?;
            let b = WeightVector::new(b.to_vec())?;
            Report {
                command: "isom",
                input: json!({"a": a, "b": b}),
                result: json!(isomorphic(&a, &b)?),
                checks: vec![],
            }
        }
        Command::Morphism { c1, c2 } => {
            let c1 = Composition::new(c1.to_vec())?;
            let c2 = Composition::new(c2.to_vec())?;
            Report {
                command: "morphism",
                input: json!({"c1": c1, "c2": c2}),
                result: json!(morphism_exists(&c1, &c2)?),
                checks: vec![],
            }
        }
        Command::BundleSplit { c, t } => {
            let c = Composition::new(c.to_vec())?;
            let split = bundle_split(&c, *t)?;
            Report {
                command: "bundle-split",
                input: json!({"c": c, "t": t}),
                checks: vec![check(
                    "poincare_factorizes",
                    split.identity_holds,
                    "P_c = P_fiber * P_base",
                )],
                result: json!(split),
            }
        }
        Command::BundleExists { b, c } => {
            let b = BundleWeights::new(b.to_vec())?;
            let c = Composition::new(c.to_vec())?;
            Report {
                command: "bundle-exists",
                input: json!({"b": b, "c": c}),
                result: json!(line_bundle_exists(&b, &c)?),
                checks: vec![],
            }
        }
        Command::Sections { b, c } => {
            let b = BundleWeights::new(b.to_vec())?;
            let c = Composition::new(c.to_vec())?;
            let dim = sections_dim(&b, &c)?;
            let mut checks = Vec::new();
            if dim <= ORACLE_LIMIT {
                let module = build_module_capped(&b.shifted()?, cap)?;
                checks.push(check(
                    "module_dimension",
                    module.dimension() as u128 == dim,
                    format!("dim M^(B+1) = {}", module.dimension()),
                ));
            }
            Report {
                command: "sections",
                input: json!({"b": b, "c": c}),
                result: json!(dim),
                checks,
            }
        }
        Command::Degrees { b } => {
            let b = BundleWeights::new(b.to_vec())?;
            Report {
                command: "degrees",
                input: json!({"b": b}),
                result: json!(curve_degrees(&b)),
                checks: vec![],
            }
        }
        Command::Picard { c } => {
            let c = Composition::new(c.to_vec())?;
            Report {
                command: "picard",
                input: json!({"c": c}),
                result: json!(picard_rank(&c)),
                checks: vec![],
            }
        }
        Command::Coordring { a, imax } => {
            let a = WeightVector::new(a.to_vec())?;
            let dims = coordinate_ring_dims(&a, *imax);
            let mut checks = Vec::new();
            for (i, &d) in dims.iter().enumerate() {
                if d > ORACLE_LIMIT {
                    break;
                }
                let w = coordinate_ring_weights(&a, i as u32);
                let built = build_module_capped(&w, cap)?.dimension() as u128;
                checks.push(check(
                    &format!("module_dimension_{i}"),
                    built == d,
                    format!("weights {:?}", w.entries()),
                ));
            }
            Report {
                command: "coordring",
                input: json!({"a": a, "imax": imax}),
                result: json!(dims),
                checks,
            }
        }
        Command::FlagCheck { c, random, seed } => {
            let c = Composition::new(c.to_vec())?;
            let flag = canonical_flag(&c);
            let canonical = flag_report(&flag, &c)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut passed = 0;
            for _ in 0..*random {
                let g = GroupElement::random(c.n(), 4, &mut rng);
                if flag_report(&group_act(&g, &flag)?, &c)?.holds() {
                    passed += 1;
                }
            }
            Report {
                command: "flag-check",
                input: json!({"c": c, "random": random, "seed": seed}),
                result: json!({"dimensions": flag.dimensions(), "canonical": canonical, "random_passed": passed}),
                checks: vec![
                    check(
                        "canonical_flag",
                        canonical.holds(),
                        "conditions on the coordinate flag",
                    ),
                    check(
                        "group_invariance",
                        passed == *random,
                        format!("{passed}/{random} translates"),
                    ),
                ],
            }
        }
        Command::VerlindeFuse { k, a, b } => {
            let ab = fuse(*k, *a, *b)?;
            let ba = fuse(*k, *b, *a)?;
            Report {
                command: "verlinde-fuse",
                input: json!({"k": k, "a": a, "b": b}),
                result: json!({"coeffs": ab.coeffs(), "display": ab.to_string()}),
                checks: vec![check("commutative", ab == ba, "[a][b] = [b][a]")],
            }
        }
        Command::VerlindeLimit { b } => {
            let b = BundleWeights::new(b.to_vec())?;
            let limit = limit_multiplicities(&b)?;
            let w: Vec<u32> = b.entries().iter().map(|&x| x as u32).collect();
            let right = product_chain_right(limit.level, &w)?;
            let left_full: Vec<u64> = limit
                .coeffs
                .iter()
                .copied()
                .chain([limit.boundary])
                .collect();
            Report {
                command: "verlinde-limit",
                input: json!({"b": b}),
                checks: vec![check(
                    "associative",
                    right.coeffs() == left_full.as_slice(),
                    "left and right folds agree",
                )],
                result: json!(limit),
            }
        }
        Command::Stabilize { b, imax, degmax } => {
            let b = BundleWeights::new(b.to_vec())?;
            let r = character_stabilization_capped(&b, *imax, *degmax, cap)?;
            let stable = match r.stable_from {
                Some(i) => format!("stable from i = {i}"),
                None => "no stable range found".into(),
            };
            Report {
                command: "stabilize",
                input: json!({"b": b, "imax": imax, "degmax": degmax}),
                checks: vec![
                    check("dimensions_match", r.dimensions_match, "section dimensions"),
                    check("stabilizes", r.stable_from.is_some(), stable),
                ],
                result: serde_json::to_value(&r).expect("serializable"),
            }
        }
        Command::Selftest { max_n, seed } => {
            let cfg = Config {
                max_n: max_n.unwrap_or(u32::MAX),
                seed: *seed,
            };
            let results = acceptance::run_all(&cfg)?;
            for r in &results {
                eprintln!("{}", r.line());
            }
            Report {
                command: "selftest",
                input: json!({"max_n": max_n, "seed": seed}),
                checks: results
                    .iter()
                    .map(|r| {
                        check(
                            &format!("criterion_{}", r.id),
                            r.passed || r.skipped,
                            r.line(),
                        )
                    })
                    .collect(),
                result: json!(results),
            }
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
                Format::Table => print!("{}", report.table()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}

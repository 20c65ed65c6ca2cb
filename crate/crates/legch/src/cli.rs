//! Command-line front end. Every command reads its inputs, runs the
//! pipeline, and renders a deterministic report in text or JSON.
//!
//! Exit codes: 0 success/pass, 1 mathematical fail, 2 input error,
//! 3 incomplete search budget or a differential that fails `d^2 = 0`.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::augment::{self, AugmentError, DEFAULT_AUG_CAP};
use crate::dga::DgaError;
use crate::diagram::LagrangianDiagram;
use crate::discs::{self, DiscError};
use crate::fixtures;
use crate::front::FrontDiagram;
use crate::homology::PoincarePolynomial;
use crate::verify::{self, FillingData, Which};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "legch", about = "Legendrian contact homology workbench", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Chekanov-Eliashberg DGA of a front.
    Dga {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        /// Also list the boundary words of every counted disc.
        #[arg(long)]
        discs: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the augmentations of the DGA of a front.
    Augs {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Linearized homology and cohomology at one augmentation.
    Linhom {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        /// Augmentation index in enumeration order.
        #[arg(long, default_value_t = 0)]
        aug: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check Seidel's isomorphism against filling Betti numbers.
    Seidel {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        #[arg(long, default_value_t = 0)]
        aug: usize,
        /// Betti numbers of the filling, e.g. `0:1,1:2`.
        #[arg(long)]
        betti_l: String,
        /// Dimension of the Legendrian.
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check feasibility of the duality long exact sequence.
    Duality {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_mult: u32,
        #[arg(long, default_value_t = 0)]
        aug: usize,
        /// Betti numbers of the Legendrian, e.g. `0:1,1:1`.
        #[arg(long)]
        betti_lambda: String,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Assemble a two-copy block complex from a fixture file.
    Twocopy {
        /// Fixture file with the block matrices.
        #[arg(long)]
        blocks: PathBuf,
        /// Override the fixture's `which` directive.
        #[arg(long, value_enum)]
        which: Option<WhichArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the wrapped-Floer mapping cone from a fixture file.
    Wrapped {
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Plus,
    Infinity,
}

/// A finished command: exit code plus rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn rendered(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{:#}\n", self.json),
        }
    }
}

fn input_error(msg: String) -> Outcome {
    Outcome {
        exit_code: EXIT_INPUT,
        text: format!("error: {msg}\n"),
        json: json!({ "error": msg }),
    }
}

fn budget_error(msg: String) -> Outcome {
    Outcome {
        exit_code: EXIT_BUDGET,
        text: format!("error: {msg}\n"),
        json: json!({ "error": msg }),
    }
}

fn aug_cap() -> usize {
    std::env::var("LEGCH_MAX_AUG_GENS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_AUG_CAP)
}

fn parse_betti(entries: &str) -> Result<BTreeMap<i64, usize>, String> {
    let mut out = BTreeMap::new();
    for part in entries.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once(':')
            .ok_or_else(|| format!("bad betti entry `{part}`, expected `deg:dim`"))?;
        let k: i64 = k.trim().parse().map_err(|_| format!("bad degree `{k}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad dim `{v}`"))?;
        out.insert(k, v);
    }
    Ok(out)
}

struct Pipeline {
    front: FrontDiagram,
    diag: LagrangianDiagram,
    dga: crate::dga::Dga,
    budget_hit: bool,
}

enum PipelineError {
    Input(String),
    Budget(String),
}

fn pipeline(path: &PathBuf, max_mult: u32) -> Result<Pipeline, PipelineError> {
    let text = fs::read_to_string(path)
        .map_err(|e| PipelineError::Input(format!("cannot read {}: {e}", path.display())))?;
    let front =
        FrontDiagram::parse(&text).map_err(|e| PipelineError::Input(format!("{e}")))?;
    let diag =
        LagrangianDiagram::resolve(&front).map_err(|e| PipelineError::Input(format!("{e}")))?;
    let out = discs::differential(&diag, max_mult).map_err(|e| match e {
        DiscError::Dga(DgaError::DSquared { .. }) | DiscError::Dga(DgaError::Degree { .. }) => {
            PipelineError::Budget(format!("{e}"))
        }
        other => PipelineError::Input(format!("{other}")),
    })?;
    Ok(Pipeline {
        front,
        diag,
        dga: out.dga,
        budget_hit: out.budget_hit,
    })
}

fn run_pipeline(path: &PathBuf, max_mult: u32) -> Result<Pipeline, Outcome> {
    pipeline(path, max_mult).map_err(|e| match e {
        PipelineError::Input(msg) => input_error(msg),
        PipelineError::Budget(msg) => budget_error(msg),
    })
}

/// As [`run_pipeline`], but refuses to draw conclusions from an incomplete
/// disc search.
fn run_pipeline_complete(path: &PathBuf, max_mult: u32) -> Result<Pipeline, Outcome> {
    let p = run_pipeline(path, max_mult)?;
    if p.budget_hit {
        return Err(budget_error(format!(
            "disc search incomplete at max_mult {max_mult}; rerun with a larger budget"
        )));
    }
    Ok(p)
}

fn augmentation_at(
    dga: &crate::dga::Dga,
    index: usize,
) -> Result<(augment::Augmentation, usize), Outcome> {
    let augs = augment::enumerate_augmentations(dga, aug_cap()).map_err(|e| match e {
        AugmentError::TooBig { .. } => input_error(format!("{e}")),
        other => budget_error(format!("{other}")),
    })?;
    let total = augs.len();
    augs.into_iter()
        .nth(index)
        .map(|a| (a, total))
        .ok_or_else(|| {
            input_error(format!(
                "augmentation index {index} out of range (found {total})"
            ))
        })
}

fn poly_json(p: &PoincarePolynomial) -> Value {
    Value::Object(
        p.0.iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect(),
    )
}

/// Runs one parsed command and returns the outcome; pure except for reading
/// the named input files and the augmentation-cap environment variable.
pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Dga {
            input,
            max_mult,
            discs: dump_discs,
            ..
        } => {
            let p = match run_pipeline(input, *max_mult) {
                Ok(p) => p,
                Err(o) => return o,
            };
            let classical = match p.front.classical_invariants() {
                Ok(c) => c,
                Err(e) => return input_error(format!("{e}")),
            };
            let mut text = String::new();
            if let Some(name) = &p.front.name {
                text.push_str(&format!("name: {name}\n"));
            }
            for c in &classical {
                text.push_str(&format!(
                    "component {}: tb = {}, rot = {}\n",
                    c.component, c.tb, c.rot
                ));
            }
            text.push_str(&p.dga.dump());
            let mut disc_lines = Vec::new();
            if *dump_discs {
                for g in p.dga.ids_by_name() {
                    let name = p.dga.name_of(g).to_string();
                    let en = discs::enumerate_discs(&p.diag, &name, *max_mult)
                        .expect("generators exist");
                    for d in &en.discs {
                        let word = if d.negative_corners.is_empty() {
                            "1".to_string()
                        } else {
                            d.negative_corners.join(" ")
                        };
                        disc_lines.push(format!("disc {name}: {word}"));
                    }
                }
                for l in &disc_lines {
                    text.push_str(l);
                    text.push('\n');
                }
            }
            if p.budget_hit {
                text.push_str("budget: incomplete\n");
            }
            let json = json!({
                "name": p.front.name,
                "classical": classical.iter().map(|c| json!({
                    "component": c.component, "tb": c.tb, "rot": c.rot
                })).collect::<Vec<_>>(),
                "modulus": p.dga.modulus,
                "generators": p.dga.ids_by_name().iter().map(|&g| json!({
                    "name": p.dga.name_of(g),
                    "grading": p.dga.generator(g).grading,
                    "diff": p.dga.render(p.dga.diff_of(g)),
                })).collect::<Vec<_>>(),
                "discs": if *dump_discs { Some(disc_lines) } else { None },
                "budget_hit": p.budget_hit,
            });
            Outcome {
                exit_code: if p.budget_hit { EXIT_BUDGET } else { EXIT_OK },
                text,
                json,
            }
        }
        Command::Augs {
            input, max_mult, ..
        } => {
            let p = match run_pipeline(input, *max_mult) {
                Ok(p) => p,
                Err(o) => return o,
            };
            let augs = match augment::enumerate_augmentations(&p.dga, aug_cap()) {
                Ok(a) => a,
                Err(e) => return input_error(format!("{e}")),
            };
            let zero_names: Vec<String> = augment::degree_zero_ids(&p.dga)
                .iter()
                .map(|&g| p.dga.name_of(g).to_string())
                .collect();
            let bits: Vec<String> = augs.iter().map(|a| a.bits(&p.dga)).collect();
            let mut text = format!(
                "degree-0 generators: {}\naugmentations: {}\n",
                if zero_names.is_empty() {
                    "(none)".to_string()
                } else {
                    zero_names.join(" ")
                },
                bits.len()
            );
            for (i, b) in bits.iter().enumerate() {
                text.push_str(&format!("aug {i}: {b}\n"));
            }
            let json = json!({
                "degree_zero_generators": zero_names,
                "augmentations": bits,
                "budget_hit": p.budget_hit,
            });
            Outcome {
                exit_code: if p.budget_hit { EXIT_BUDGET } else { EXIT_OK },
                text,
                json,
            }
        }
        Command::Linhom {
            input,
            max_mult,
            aug,
            ..
        } => {
            let p = match run_pipeline_complete(input, *max_mult) {
                Ok(p) => p,
                Err(o) => return o,
            };
            let (eps, _) = match augmentation_at(&p.dga, *aug) {
                Ok(a) => a,
                Err(o) => return o,
            };
            let lin = match augment::linearize(&p.dga, &eps) {
                Ok(l) => l,
                Err(e) => return input_error(format!("{e}")),
            };
            let h = lin.homology();
            let hc = lin.cohomology();
            let text = format!(
                "augmentation {}: {}\nHCL_*: {}\nHCL^*: {}\n",
                aug,
                eps.bits(&p.dga),
                h,
                hc
            );
            let json = json!({
                "aug_index": aug,
                "aug_bits": eps.bits(&p.dga),
                "hcl": poly_json(&h),
                "hcl_co": poly_json(&hc),
            });
            Outcome {
                exit_code: EXIT_OK,
                text,
                json,
            }
        }
        Command::Seidel {
            input,
            max_mult,
            aug,
            betti_l,
            n,
            ..
        } => {
            let p = match run_pipeline_complete(input, *max_mult) {
                Ok(p) => p,
                Err(o) => return o,
            };
            let betti_l = match parse_betti(betti_l) {
                Ok(b) => b,
                Err(e) => return input_error(e),
            };
            let (eps, _) = match augmentation_at(&p.dga, *aug) {
                Ok(a) => a,
                Err(o) => return o,
            };
            let lin = match augment::linearize(&p.dga, &eps) {
                Ok(l) => l,
                Err(e) => return input_error(format!("{e}")),
            };
            let fd = FillingData {
                n: *n,
                betti_l,
                betti_lambda: BTreeMap::new(),
                aug_index: *aug,
            };
            let report = verify::seidel_check(&lin.cohomology(), &fd);
            let mut text = format!("seidel: {}\n", if report.pass { "PASS" } else { "FAIL" });
            for d in &report.deltas {
                text.push_str(&format!(
                    "  degree {}: HCL^ = {}, expected b_{}(L) = {}\n",
                    d.degree,
                    d.hcl_co,
                    fd.n - d.degree,
                    d.expected
                ));
            }
            let json = json!({
                "pass": report.pass,
                "deltas": report.deltas,
                "hcl_co": poly_json(&lin.cohomology()),
            });
            Outcome {
                exit_code: if report.pass { EXIT_OK } else { EXIT_FAIL },
                text,
                json,
            }
        }
        Command::Duality {
            input,
            max_mult,
            aug,
            betti_lambda,
            n,
            ..
        } => {
            let p = match run_pipeline_complete(input, *max_mult) {
                Ok(p) => p,
                Err(o) => return o,
            };
            let betti_lambda = match parse_betti(betti_lambda) {
                Ok(b) => b,
                Err(e) => return input_error(e),
            };
            let (eps, _) = match augmentation_at(&p.dga, *aug) {
                Ok(a) => a,
                Err(o) => return o,
            };
            let lin = match augment::linearize(&p.dga, &eps) {
                Ok(l) => l,
                Err(e) => return input_error(format!("{e}")),
            };
            let fd = FillingData {
                n: *n,
                betti_l: BTreeMap::new(),
                betti_lambda,
                aug_index: *aug,
            };
            let report = verify::duality_check(&lin.homology(), &lin.cohomology(), &fd);
            let text = format!(
                "duality: {}\ndims: {:?}\nranks: {:?}\n",
                if report.feasible {
                    "feasible"
                } else {
                    "infeasible"
                },
                report.dims,
                report.ranks
            );
            let json = json!({
                "feasible": report.feasible,
                "dims": report.dims,
                "ranks": report.ranks,
            });
            Outcome {
                exit_code: if report.feasible { EXIT_OK } else { EXIT_FAIL },
                text,
                json,
            }
        }
        Command::Twocopy { blocks, which, .. } => {
            let text = match fs::read_to_string(blocks) {
                Ok(t) => t,
                Err(e) => return input_error(format!("cannot read {}: {e}", blocks.display())),
            };
            let fx = match fixtures::parse_twocopy(&text) {
                Ok(f) => f,
                Err(e) => return input_error(format!("{e}")),
            };
            let which = match which {
                Some(WhichArg::Plus) => Which::Plus,
                Some(WhichArg::Infinity) => Which::Infinity,
                None => fx.which,
            };
            let out = match verify::twocopy_assemble(&fx.blocks, which) {
                Ok(o) => o,
                Err(e @ verify::VerifyError::DSquared(_)) => {
                    return budget_error(format!("{e}"))
                }
                Err(e) => return input_error(format!("{e}")),
            };
            let h = out.homology();
            let vanishing = verify::vanishing_link_check(&h);
            let text = format!(
                "which: {}\nd squared: ok\nhomology: {}\nvanishing: {}\n",
                match which {
                    Which::Plus => "plus",
                    Which::Infinity => "infinity",
                },
                h,
                if vanishing { "pass" } else { "fail" }
            );
            let json = json!({
                "which": match which { Which::Plus => "plus", Which::Infinity => "infinity" },
                "d_squared": "ok",
                "homology": poly_json(&h),
                "vanishing": vanishing,
            });
            Outcome {
                exit_code: EXIT_OK,
                text,
                json,
            }
        }
        Command::Wrapped { blocks, .. } => {
            let text = match fs::read_to_string(blocks) {
                Ok(t) => t,
                Err(e) => return input_error(format!("cannot read {}: {e}", blocks.display())),
            };
            let fx = match fixtures::parse_wrapped(&text) {
                Ok(f) => f,
                Err(e) => return input_error(format!("{e}")),
            };
            let report = match verify::wrapped_cone_check(&fx.cf0, &fx.cf_inf, &fx.delta) {
                Ok(r) => r,
                Err(e) => return input_error(format!("{e}")),
            };
            let text = format!(
                "acyclic: {}\nquasi_iso: {}\n",
                report.acyclic, report.quasi_iso
            );
            let json = json!({
                "acyclic": report.acyclic,
                "quasi_iso": report.quasi_iso,
            });
            Outcome {
                exit_code: if report.acyclic { EXIT_OK } else { EXIT_FAIL },
                text,
                json,
            }
        }
    }
}

/// Parses arguments (excluding the binary name handled by clap) and runs.
pub fn execute(args: &[&str]) -> Result<(Outcome, Format), String> {
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    let format = match &cli.command {
        Command::Dga { format, .. }
        | Command::Augs { format, .. }
        | Command::Linhom { format, .. }
        | Command::Seidel { format, .. }
        | Command::Duality { format, .. }
        | Command::Twocopy { format, .. }
        | Command::Wrapped { format, .. } => *format,
    };
    Ok((run(&cli.command), format))
}

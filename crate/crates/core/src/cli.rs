//! Command-line front end.
//!
//! Exit code 0 means the command ran; the verdict is inside the JSON report
//! on stdout. Exit code 2 means the input or the invocation was invalid.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::blockseq::{
    block_multiplier, example_registry, interleaved_apply, lookup, symbol_profile,
    system_frame_bounds, BlockSystem, InterleavedSystem, RegisteredExample, Side, SparseVector,
    System, DEFAULT_HORIZON,
};
use crate::error::{Error, Result};
use crate::frames::{
    canonical_dual, frame_bounds, is_dual, is_frame, is_riesz_basis, FiniteFrame,
};
use crate::multipliers::{
    build, certify_all_duals, check_constant_modulus, check_prop_q, check_weighted_canonical,
    check_weighted_inversion, induced_duals, invert, uniqueness_kernel, uniqueness_kernel_exact,
    verify_canonical_inversion, Multiplier, Symbol,
};
use crate::numerics::{condition_number, ComplexMatrix, ToleranceConfig, C64, ONE};
use crate::report::{Report, ReportSet};

#[derive(Debug, Parser)]
#[command(name = "framemult", version, about = "Frame multipliers and their induced dual frames")]
pub struct Cli {
    /// Relative tolerance for every numerical decision.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_rel: f64,
    /// Largest condition number treated as invertible.
    #[arg(long, global = true, default_value_t = 1e12)]
    pub cond_max: f64,
    /// Seed for sampling; required by every option that samples.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Where to write the command's artifact (canonical dual, induced duals, system JSON).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds, Riesz test and canonical dual of a frame file.
    FrameInfo { path: PathBuf },
    /// Build a multiplier from symbol and frame files and verify it.
    Multiplier(MultiplierArgs),
    /// The built-in example systems.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Args)]
pub struct MultiplierArgs {
    /// Symbol file, `{"values": [[re, im], ...]}`.
    #[arg(long)]
    pub symbol: PathBuf,
    /// Synthesis-side frame file.
    #[arg(long)]
    pub phi: PathBuf,
    /// Analysis-side frame file.
    #[arg(long)]
    pub psi: PathBuf,
    /// Invert M and check both identity residuals.
    #[arg(long)]
    pub invert: bool,
    /// Compute the induced duals and check the reconstruction identities.
    #[arg(long)]
    pub induced_duals: bool,
    /// Run every invertibility criterion, the all-duals certificate and uniqueness.
    #[arg(long)]
    pub verify_all: bool,
    /// Treat a singular multiplier as a failed check.
    #[arg(long)]
    pub expect_invertible: bool,
    /// Also run the uniqueness system on this many sampled duals per frame.
    #[arg(long)]
    pub dual_samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    /// Names and descriptions of the registered systems.
    List,
    /// Print a registered system as JSON.
    Show { name: String },
    /// Check a registered system against its expectations.
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        /// Run every registered system.
        #[arg(long)]
        all: bool,
    },
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cli: &Cli) -> Result<String> {
    let tol = ToleranceConfig::new(cli.tol_rel, cli.cond_max)?;
    match &cli.command {
        Command::FrameInfo { path } => {
            let report = cmd_frame_info(path, cli.out.as_deref(), &tol)?;
            Ok(render(&report, cli.pretty))
        }
        Command::Multiplier(args) => {
            let report = cmd_multiplier(args, cli.seed, cli.out.as_deref(), &tol)?;
            Ok(render(&report, cli.pretty))
        }
        Command::Examples { action } => match action {
            ExamplesAction::List => Ok(examples_list(cli.pretty)),
            ExamplesAction::Show { name } => {
                let example = lookup(name)?;
                let text = example.system.to_json_pretty();
                if let Some(out) = &cli.out {
                    write_file(out, &text)?;
                }
                Ok(if cli.pretty {
                    format!("{}: {}\n{text}\n", example.name, example.description)
                } else {
                    serde_json::to_string_pretty(&example).expect("serializable example") + "\n"
                })
            }
            ExamplesAction::Run { name, all } => {
                if *all {
                    let reports = example_registry()
                        .iter()
                        .map(|e| example_report(e, &tol))
                        .collect::<Result<Vec<_>>>()?;
                    let set = ReportSet::new("examples run --all", reports);
                    Ok(if cli.pretty { set.render_text() } else { set.to_json() + "\n" })
                } else {
                    let name = name.as_deref().expect("clap enforces name or --all");
                    let report = example_report(&lookup(name)?, &tol)?;
                    Ok(render(&report, cli.pretty))
                }
            }
        },
    }
}

fn render(report: &Report, pretty: bool) -> String {
    if pretty {
        report.render_text()
    } else {
        report.to_json() + "\n"
    }
}

fn read_file(path: &Path) -> Result<(Vec<u8>, String)> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok((bytes, text))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn load_frame(path: &Path) -> Result<(Vec<u8>, FiniteFrame)> {
    let (bytes, text) = read_file(path)?;
    let frame = FiniteFrame::from_json(&text).map_err(|e| with_path(path, e))?;
    Ok((bytes, frame))
}

fn load_symbol(path: &Path) -> Result<(Vec<u8>, Symbol)> {
    let (bytes, text) = read_file(path)?;
    let symbol = Symbol::from_json(&text).map_err(|e| with_path(path, e))?;
    Ok((bytes, symbol))
}

/// `||Syn_a Syn_b^* - I||` relative to `max(1, ||Syn_a|| ||Syn_b||)`.
fn reconstruction_residual(a: &FiniteFrame, b: &FiniteFrame) -> f64 {
    let product = a.synthesis_matrix() * &b.analysis_matrix();
    let scale = 1f64.max(a.synthesis_matrix().norm() * b.synthesis_matrix().norm());
    (&product - &ComplexMatrix::identity(a.dim())).norm() / scale
}

pub fn cmd_frame_info(path: &Path, out: Option<&Path>, tol: &ToleranceConfig) -> Result<Report> {
    let (bytes, frame) = load_frame(path)?;
    let mut report = Report::new("frame-info", *tol);
    report.file_input("frame", &bytes);
    report.quantity("dim", frame.dim());
    report.quantity("len", frame.len());
    match frame_bounds(&frame, tol) {
        Ok((lower, upper)) => {
            report.boolean("is_frame", true, None);
            report.quantity("lower_bound", lower);
            report.quantity("upper_bound", upper);
            report.boolean("riesz", is_riesz_basis(&frame, tol), None);
            let canon = canonical_dual(&frame, tol)?;
            let residual = reconstruction_residual(&canon, &frame);
            report.residual("canonical_dual_reconstruction", residual, tol.identity_tolerance(upper / lower));
            if let Some(out) = out {
                write_file(out, &canon.to_json())?;
                report.param("canonical_dual_written_to", out.display());
            }
        }
        Err(Error::NotAFrame { lower, upper }) => {
            report.boolean("is_frame", false, None);
            report.quantity("lower_bound", lower);
            report.quantity("upper_bound", upper);
            report.boolean("riesz", false, None);
            report.outcome("canonical_dual", "not a frame: no canonical dual", false);
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[derive(Serialize, Default)]
struct MultiplierArtifacts {
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse: Option<Vec<Vec<C64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi_dagger: Option<crate::frames::FrameFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_dagger: Option<crate::frames::FrameFile>,
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

pub fn cmd_multiplier(
    args: &MultiplierArgs,
    seed: Option<u64>,
    out: Option<&Path>,
    tol: &ToleranceConfig,
) -> Result<Report> {
    if args.dual_samples.is_some() && seed.is_none() {
        return Err(Error::PreconditionFailed("--dual-samples requires --seed".into()));
    }
    let (sym_bytes, symbol) = load_symbol(&args.symbol)?;
    let (phi_bytes, phi) = load_frame(&args.phi)?;
    let (psi_bytes, psi) = load_frame(&args.psi)?;
    let wants_duals = args.induced_duals || args.verify_all;
    if wants_duals {
        if let Some(index) = symbol.first_zero() {
            return Err(Error::ZeroSymbolEntry { index });
        }
    }
    let m = build(symbol, phi, psi)?;

    let mut report = Report::new("multiplier", *tol);
    report.file_input("symbol", &sym_bytes);
    report.file_input("phi", &phi_bytes);
    report.file_input("psi", &psi_bytes);
    if let Some(seed) = seed {
        report.param("seed", seed);
    }
    if let Some(n) = args.dual_samples {
        report.param("dual_samples", n);
    }
    report.quantity("dim", m.dim());
    report.quantity("len", m.len());
    report.quantity("symbol_inf_modulus", m.symbol().inf_modulus());
    report.quantity("symbol_sup_modulus", m.symbol().sup_modulus());
    report.boolean("phi_is_frame", is_frame(m.phi(), tol), None);
    report.boolean("psi_is_frame", is_frame(m.psi(), tol), None);

    let mut artifacts = MultiplierArtifacts::default();
    if args.invert || wants_duals || args.dual_samples.is_some() {
        let expected = args.expect_invertible.then_some(true);
        match invert(&m, tol) {
            Ok(inverse) => {
                let cond = condition_number(m.matrix());
                report.boolean("invertible", true, expected);
                report.quantity("condition_number", cond);
                let product = m.matrix() * &inverse;
                let id = ComplexMatrix::identity(m.dim());
                let residual = (&product - &id).norm() / id.norm();
                report.residual("inverse_residual", residual, tol.identity_tolerance(cond));
                artifacts.inverse = Some(matrix_rows(&inverse));
                if wants_duals {
                    induced_findings(&m, cond, args.verify_all, &mut report, &mut artifacts, tol)?;
                }
                if let (Some(n), Some(seed)) = (args.dual_samples, seed) {
                    let k = uniqueness_kernel(&m, n, seed, tol)?;
                    report.quantity("sampled_kernel_phi_dagger_side", k.phi_dagger_side);
                    report.quantity("sampled_kernel_psi_dagger_side", k.psi_dagger_side);
                    report.boolean("sampled_duals_determine_daggers", k.total() == 0, None);
                }
            }
            Err(e @ Error::NotInvertible { .. }) => {
                report.boolean("invertible", false, expected);
                report.outcome("invert", e.to_string(), args.expect_invertible);
            }
            Err(e) => return Err(e),
        }
    }
    if args.verify_all {
        criteria_findings(&m, &mut report, tol)?;
    }
    if let Some(out) = out {
        let text = serde_json::to_string_pretty(&artifacts).expect("serializable artifacts");
        write_file(out, &text)?;
    }
    Ok(report)
}

fn induced_findings(
    m: &Multiplier,
    cond: f64,
    verify_all: bool,
    report: &mut Report,
    artifacts: &mut MultiplierArtifacts,
    tol: &ToleranceConfig,
) -> Result<()> {
    let duals = induced_duals(m, tol)?;
    let frames = is_frame(m.phi(), tol) && is_frame(m.psi(), tol);
    report.boolean("psi_dagger_is_dual", is_dual(&duals.psi_dagger, m.psi(), tol)?, frames.then_some(true));
    report.boolean("phi_dagger_is_dual", is_dual(&duals.phi_dagger, m.phi(), tol)?, frames.then_some(true));
    artifacts.psi_dagger = Some(duals.psi_dagger.to_file());
    artifacts.phi_dagger = Some(duals.phi_dagger.to_file());
    if !verify_all {
        return Ok(());
    }
    if !frames {
        report.outcome("dual_certification", "Phi or Psi is not a frame", false);
        return Ok(());
    }
    let id_tol = tol.identity_tolerance(cond);
    let cert = certify_all_duals(m, tol)?;
    report.quantity("certified_directions", cert.directions);
    report.residual("minv_with_all_psi_duals", cert.minv1_base.max(cert.minv1_directions), id_tol);
    report.residual("minv_with_all_phi_duals", cert.minv2_base.max(cert.minv2_directions), id_tol);
    let kernel = uniqueness_kernel_exact(m, tol)?;
    report.quantity("uniqueness_kernel_phi_dagger_side", kernel.phi_dagger_side);
    report.quantity("uniqueness_kernel_psi_dagger_side", kernel.psi_dagger_side);
    report.boolean("induced_duals_unique", kernel.total() == 0, Some(true));
    Ok(())
}

fn criteria_findings(m: &Multiplier, report: &mut Report, tol: &ToleranceConfig) -> Result<()> {
    let frames = is_frame(m.phi(), tol) && is_frame(m.psi(), tol);
    if !frames || !m.symbol().all_nonzero() {
        report.outcome("inversion_criteria", "need frames and a nonzero symbol", false);
        return Ok(());
    }
    let violation = |report: &mut Report, name: &str, e: Error| -> Result<()> {
        match e {
            Error::ImplicationViolated(msg) => {
                report.outcome(name, msg, true);
                Ok(())
            }
            Error::NotInvertible { .. } | Error::PreconditionFailed(_) | Error::NotAFrame { .. } => {
                report.outcome(name, e.to_string(), false);
                Ok(())
            }
            other => Err(other),
        }
    };
    match check_prop_q(m, tol) {
        Ok(q) => {
            report.quantity("eq1_residual", q.eq1_residual);
            report.boolean("eq1_holds", q.eq1_holds, None);
            report.boolean("psi_equiv_mphi", q.psi_equiv_mphi, None);
            report.boolean("phi_equiv_mbar_psi", q.phi_equiv_mbar_psi, None);
            report.boolean("psi_dagger_is_canonical", q.psi_dagger_is_canonical, None);
            report.boolean("phi_dagger_is_canonical", q.phi_dagger_is_canonical, None);
            report.boolean("constant_symbol", q.constant_symbol, None);
        }
        Err(e) => violation(report, "canonical_inversion_criteria", e)?,
    }
    match check_weighted_canonical(m.phi(), m.symbol(), tol) {
        Ok(b) => report.boolean("mphi_weighted_canonical", b, None),
        Err(e) => violation(report, "mphi_weighted_canonical", e)?,
    }
    match check_weighted_inversion(m, tol) {
        Ok(w) => {
            report.boolean("phi_side_criterion_applies", w.phi_side.is_some(), None);
            report.boolean("psi_side_criterion_applies", w.psi_side.is_some(), None);
        }
        Err(e) => violation(report, "weighted_inversion_criteria", e)?,
    }
    if m.symbol().has_constant_modulus(tol) {
        match check_constant_modulus(m, tol) {
            Ok(c) => report.boolean("constant_modulus_all_equivalent", c.all_true(), None),
            Err(e) => violation(report, "constant_modulus_criteria", e)?,
        }
    }
    Ok(())
}

fn examples_list(pretty: bool) -> String {
    #[derive(Serialize)]
    struct Entry {
        name: &'static str,
        description: &'static str,
    }
    let entries: Vec<Entry> = example_registry()
        .iter()
        .map(|e| Entry { name: e.name, description: e.description })
        .collect();
    if pretty {
        entries.iter().map(|e| format!("{:10} {}\n", e.name, e.description)).collect()
    } else {
        serde_json::to_string_pretty(&entries).expect("serializable list") + "\n"
    }
}

/// Blocks per system on which the heavier per-block checks run.
const DETAILED_BLOCKS: usize = 16;

/// Absolute tolerance for per-block identities and interleaved tails.
pub const EXAMPLE_TOLERANCE: f64 = 1e-12;

/// Runs a registered example's expectation list.
pub fn example_report(example: &RegisteredExample, tol: &ToleranceConfig) -> Result<Report> {
    let mut report = Report::new(format!("examples run {}", example.name), *tol);
    report.param("example", example.name);
    let exp = &example.expectations;

    let profile = symbol_profile(&example.system)?;
    report.quantity("symbol_inf_modulus", profile.inf_modulus);
    report.quantity("symbol_sup_modulus", profile.sup_modulus);
    report.boolean("symbol_bounded", profile.is_bounded(), Some(exp.bounded_symbol));
    report.boolean(
        "symbol_semi_normalized",
        profile.is_semi_normalized(),
        Some(exp.semi_normalized_symbol),
    );

    match &example.system {
        System::Block(sys) => block_checks(example, sys, &mut report, tol)?,
        System::Interleaved(sys) => interleaved_checks(example, sys, &mut report)?,
    }
    Ok(report)
}

fn side_expectation(example: &RegisteredExample, side: Side) -> (Option<bool>, Option<bool>) {
    let exp = &example.expectations;
    let frame = exp.frame_sides.contains(&side).then_some(true);
    let bessel = exp.not_bessel_sides.contains(&side).then_some(false);
    (frame, bessel)
}

fn block_checks(
    example: &RegisteredExample,
    sys: &BlockSystem,
    report: &mut Report,
    tol: &ToleranceConfig,
) -> Result<()> {
    let exp = &example.expectations;
    let horizon = DEFAULT_HORIZON;
    report.param("horizon", horizon);

    let scale = exp.multiplier_scale;
    let target = ComplexMatrix::identity(sys.block_dim).scale(C64::new(scale, 0.0));
    let mut worst: f64 = 0.0;
    for k in 1..=horizon {
        worst = worst.max(block_multiplier(sys, k)?.max_abs_diff(&target));
    }
    report.quantity("multiplier_scale", scale);
    report.residual("block_multiplier_vs_scaled_identity", worst, EXAMPLE_TOLERANCE * scale.max(1.0));
    if let Some(claimed) = exp.claimed_scale {
        if (claimed - scale).abs() > EXAMPLE_TOLERANCE {
            report.discrepancy("multiplier_scale", claimed, scale, "claimed value differs from computation");
        }
    }

    for side in Side::ALL {
        let bounds = system_frame_bounds(sys, side, horizon, tol)?;
        let (frame, bessel) = side_expectation(example, side);
        report.quantity(&format!("{}_classification", side.name()), bounds.classification);
        report.boolean(&format!("{}_is_frame", side.name()), bounds.classification.is_frame(), frame);
        if bessel.is_some() {
            report.boolean(&format!("{}_is_bessel", side.name()), bounds.classification.is_bessel(), bessel);
        }
    }

    let mut duals_ok = true;
    let mut canonical_worst: f64 = 0.0;
    let mut prop_q = None;
    for k in 1..=DETAILED_BLOCKS {
        let (phi, psi, m) = sys.block(k)?;
        let m = build(m, phi, psi)?;
        let duals = induced_duals(&m, tol)?;
        duals_ok &= is_dual(&duals.psi_dagger, m.psi(), tol)? && is_dual(&duals.phi_dagger, m.phi(), tol)?;
        if exp.canonical_inversion.is_some() {
            canonical_worst = canonical_worst.max(verify_canonical_inversion(&m, tol)?);
        }
        if k == 1 && exp.equivalences.is_some() {
            prop_q = Some(check_prop_q(&m, tol)?);
        }
    }
    report.boolean("induced_duals_are_duals", duals_ok, Some(true));
    if let Some(expected) = exp.canonical_inversion {
        report.quantity("canonical_inversion_residual", canonical_worst);
        report.boolean("canonical_inversion_holds", canonical_worst <= tol.rel_eps, Some(expected));
    }
    if let (Some(expected), Some(q)) = (exp.equivalences, prop_q) {
        report.boolean("psi_equiv_mphi", q.psi_equiv_mphi, Some(expected));
        report.boolean("phi_equiv_mbar_psi", q.phi_equiv_mbar_psi, Some(expected));
        let (phi, psi, m) = sys.block(1)?;
        if m.has_constant_modulus(tol) {
            let c = check_constant_modulus(&build(m, phi, psi)?, tol)?;
            report.boolean("constant_modulus_all_equivalent", c.all_true(), Some(expected));
        }
    }

    if exp.weighted_frame_pathway {
        let worst = weighted_pathway_gap(sys, horizon, tol)?;
        report.residual("weighted_frame_pathway_psi_dagger", worst, 1e-10);
    }
    Ok(())
}

/// Largest entrywise gap, over blocks `1..=horizon`, between `Psi_dag` of
/// `M_{m,Phi,Psi}` and `Psi_dag` of `M_{1, m Phi, Psi}`.
pub fn weighted_pathway_gap(sys: &BlockSystem, horizon: usize, tol: &ToleranceConfig) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=horizon {
        let (phi, psi, m) = sys.block(k)?;
        let weighted = phi.weighted(m.values())?;
        let direct = induced_duals(&build(m, phi, psi.clone())?, tol)?;
        let ones = Symbol::ones(weighted.len());
        let rewritten = induced_duals(&build(ones, weighted, psi)?, tol)?;
        let gap = direct
            .psi_dagger
            .synthesis_matrix()
            .max_abs_diff(rewritten.psi_dagger.synthesis_matrix());
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn interleaved_checks(
    example: &RegisteredExample,
    sys: &InterleavedSystem,
    report: &mut Report,
) -> Result<()> {
    let exp = &example.expectations;
    let ratio = sys.certify_ratio()?;
    report.quantity("certified_ratio", ratio);

    let e0 = SparseVector::from([(0, ONE)]);
    let applied = interleaved_apply(sys, &e0, EXAMPLE_TOLERANCE)?;
    let coefficient = applied.value.get(&0).copied().unwrap_or_default();
    report.quantity("recurrent_terms_summed", applied.terms);
    report.quantity("recurrent_coefficient", coefficient);
    report.residual("recurrent_tail_bound", applied.error_bound, EXAMPLE_TOLERANCE);
    let gap = (coefficient - C64::new(exp.multiplier_scale, 0.0)).norm();
    report.residual("recurrent_coefficient_vs_scale", gap, EXAMPLE_TOLERANCE + applied.error_bound);

    let e1 = SparseVector::from([(1, ONE)]);
    let fresh = interleaved_apply(sys, &e1, EXAMPLE_TOLERANCE)?;
    report.boolean("fresh_direction_fixed", fresh.value == e1 && fresh.error_bound == 0.0, Some(true));

    if let Some(claimed) = exp.claimed_scale {
        if (claimed - coefficient.re).abs() > EXAMPLE_TOLERANCE + applied.error_bound || coefficient.im != 0.0 {
            report.discrepancy(
                "recurrent_coefficient",
                claimed,
                coefficient.re,
                "claimed identity; summation gives a different coefficient on the recurrent direction",
            );
        }
    }

    for side in Side::ALL {
        let class = sys.frame_class(side);
        let (frame, bessel) = side_expectation(example, side);
        report.quantity(&format!("{}_classification", side.name()), class);
        report.boolean(&format!("{}_is_frame", side.name()), class.is_frame(), frame);
        if bessel.is_some() {
            report.boolean(&format!("{}_is_bessel", side.name()), class.is_bessel(), bessel);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Finding, Verdict};

    fn report_for(name: &str) -> Report {
        example_report(&lookup(name).unwrap(), &ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn example_verdicts() {
        assert_eq!(report_for("ex4_1").verdict, Verdict::Pass);
        assert_eq!(report_for("ex4_2").verdict, Verdict::Flagged);
        assert_eq!(report_for("ex5_3").verdict, Verdict::Pass);
        assert_eq!(report_for("ex5_final").verdict, Verdict::Pass);
    }

    #[test]
    fn golden_report_contents() {
        let r = report_for("ex5_3");
        for (name, value) in [
            ("psi_equiv_mphi", false),
            ("phi_equiv_mbar_psi", false),
            ("canonical_inversion_holds", true),
        ] {
            match r.get(name) {
                Some(Finding::Boolean { value: v, .. }) => assert_eq!(*v, value, "{name}"),
                other => panic!("{name}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_example_exits_2() {
        let out = run(["framemult", "examples", "run", "nope"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("nope"));
    }

    #[test]
    fn run_needs_name_or_all() {
        assert_eq!(run(["framemult", "examples", "run"]).code, 2);
        assert_eq!(run(["framemult", "examples", "run", "ex5_3", "--all"]).code, 2);
    }

    #[test]
    fn list_names_all_four() {
        let out = run(["framemult", "examples", "list"]);
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
    }

    #[test]
    fn bad_tolerance_exits_2() {
        assert_eq!(run(["framemult", "--tol-rel", "-1", "examples", "list"]).code, 2);
    }
}

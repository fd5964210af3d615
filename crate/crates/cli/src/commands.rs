use std::path::{Path, PathBuf};

use qlossless::channelsim::{
    average_length_code, channel_init, channel_step, disturbance_report, lossy_truncate, monte_carlo_disturbance,
    transmit, NoiseConfig, NoiseModel,
};
use qlossless::codec::{brute_force_optimal, expected_base_length, DEFAULT_DIM_CAP, DEFAULT_LEN_CAP};
use qlossless::decomposition::decompose_with_cap;
use qlossless::format::fmt_report;
use qlossless::prefix::{find_prefix_violation, is_prefix};
use qlossless::{build_code, check_theorem_bounds, Ensemble, FockVector, LosslessCode};
use thiserror::Error;

use crate::{Command, Model, Options};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] qlossless::Error),
}

type Result<T> = std::result::Result<T, CliError>;

/// A report and whether every check in it held.
pub struct Outcome {
    pub report: String,
    pub verified: bool,
}

impl From<String> for Outcome {
    fn from(report: String) -> Self {
        Outcome { report, verified: true }
    }
}

pub fn run(command: Command, opts: &Options) -> Result<Outcome> {
    match command {
        Command::Inspect => inspect(&read(opts.input.as_deref(), "--input")?).map(Outcome::from),
        Command::Decompose => {
            let e = ensemble(opts.input.as_deref(), "--input")?;
            let d = decompose_with_cap(&e, opts.cap_states)?;
            let summary = format!(
                "quantity\tvalue\nentropy\t{}\ntrace\t{}\n",
                fmt_report(d.von_neumann_entropy()),
                fmt_report(d.trace())
            );
            Ok(format!("{}\n{summary}", d.report()).into())
        }
        Command::BuildCode => Ok(code(&ensemble(opts.input.as_deref(), "--input")?, opts)?.table().into()),
        Command::Encode | Command::Decode => {
            let code = code(&ensemble(opts.ensemble.as_deref(), "--ensemble")?, opts)?;
            let psi = FockVector::parse_literal(&read(opts.input.as_deref(), "--input")?)?;
            let out = if command == Command::Encode { code.encode(&psi)? } else { code.decode(&psi)? };
            Ok(out.to_literal().into())
        }
        Command::Verify => verify(&ensemble(opts.input.as_deref(), "--input")?, opts),
        Command::Channel => channel(&FockVector::parse_literal(&read(opts.input.as_deref(), "--input")?)?, opts),
        Command::Noise => noise(&ensemble(opts.input.as_deref(), "--input")?, opts),
        Command::Lossy => lossy(&ensemble(opts.input.as_deref(), "--input")?, opts),
    }
}

/// Writes the report to `path`, or stdout when absent.
pub fn emit(report: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, report).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn read(path: Option<&Path>, flag: &str) -> Result<String> {
    let path = path.ok_or_else(|| CliError::Usage(format!("{flag} is required")))?;
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn ensemble(path: Option<&Path>, flag: &str) -> Result<Ensemble> {
    Ok(Ensemble::parse(&read(path, flag)?)?)
}

fn code(e: &Ensemble, opts: &Options) -> Result<LosslessCode> {
    Ok(build_code(&decompose_with_cap(e, opts.cap_states)?)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn looks_like_ensemble(text: &str) -> bool {
    text.lines().map(str::trim).any(|l| l.starts_with("state"))
}

fn inspect(text: &str) -> Result<String> {
    if !looks_like_ensemble(text) {
        let psi = FockVector::parse_literal(text)?;
        return Ok(format!(
            "quantity\tvalue\nbase_length\t{}\naverage_length\t{}\ndeterminate\t{}\nself_prefix\t{}\n",
            psi.base_length()?,
            fmt_report(psi.average_length()?),
            yes_no(psi.is_determinate()),
            yes_no(is_prefix(&psi, &psi)),
        ));
    }
    let e = Ensemble::parse(text)?;
    let mut out = String::from("state\tweight\tbase_length\taverage_length\tself_prefix\n");
    for (i, (p, psi)) in e.items().iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            fmt_report(*p),
            psi.base_length()?,
            fmt_report(psi.average_length()?),
            yes_no(is_prefix(psi, psi))
        ));
    }
    let states: Vec<FockVector> = e.states().cloned().collect();
    out.push_str(&format!(
        "\nquantity\tvalue\nprefix_free_set\t{}\nspan_dim\t{}\n",
        yes_no(find_prefix_violation(&states).is_none()),
        e.span_dim()
    ));
    Ok(out)
}

fn verify(e: &Ensemble, opts: &Options) -> Result<Outcome> {
    let d = decompose_with_cap(e, opts.cap_states)?;
    let code = build_code(&d)?;
    let theorem = check_theorem_bounds(&code, e, &d)?;
    let kraft_ok = code.kraft_sum() <= 1.0 && code.verify_image().is_ok();
    let mut verified = theorem.passed() && kraft_ok;
    let mut out = theorem.to_tsv();
    out.push_str(&format!(
        "\nquantity\tvalue\nkraft_sum\t{}\nimage_prefix_free\t{}\n",
        fmt_report(code.kraft_sum()),
        if kraft_ok { "PASS" } else { "FAIL" }
    ));
    out.push_str("\ngreedy\toptimum\tgap\toracle\n");
    let span = e.span_dim();
    if span <= DEFAULT_DIM_CAP {
        let greedy = expected_base_length(&code, e)?;
        let opt = brute_force_optimal(e, DEFAULT_DIM_CAP, DEFAULT_LEN_CAP)?;
        let gap = greedy - opt.expected_length;
        let ok = gap <= 1.0 + 1e-9;
        verified &= ok;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            fmt_report(greedy),
            fmt_report(opt.expected_length),
            fmt_report(gap),
            if ok { "PASS" } else { "FAIL" }
        ));
    } else {
        out.push_str(&format!("-\t-\t-\tskipped (span {span} > {DEFAULT_DIM_CAP})\n"));
    }
    Ok(Outcome { report: out, verified })
}

fn channel(psi: &FockVector, opts: &Options) -> Result<Outcome> {
    let width = psi.base_length()?;
    let message = psi.zero_extended_form(width)?;
    let steps = opts.steps.unwrap_or(width);
    let mut s = channel_init(&message, width, opts.cap_qubits)?;
    let mut out = String::from("step\tsender_cleared\tbob_fidelity\n");
    for _ in 0..steps {
        s = channel_step(&s)?;
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            s.step(),
            yes_no(s.sender_cleared()),
            fmt_report(s.bob_fidelity(&message))
        ));
    }
    out.push('\n');
    out.push_str(&transmit(&message, steps, opts.cap_qubits)?.to_text());
    Ok(out.into())
}

fn noise(e: &Ensemble, opts: &Options) -> Result<Outcome> {
    let model = match opts.model {
        Model::Erasure => NoiseModel::Erasure,
        Model::BitFlip => NoiseModel::BitFlip,
    };
    let config = NoiseConfig::new(opts.noise_p, model)?;
    let code = code(e, opts)?;
    let mut out = disturbance_report(&code, e, config)?.to_tsv();
    if opts.trials > 0 {
        let mc = monte_carlo_disturbance(&code, e, config, opts.trials, opts.seed)?;
        out.push_str(&format!(
            "\ntrials\tseed\tmodel\ttouched_fraction\tmean_fidelity\n{}\t{}\t{}\t{}\t{}\n",
            mc.trials,
            opts.seed,
            match model {
                NoiseModel::Erasure => "erasure",
                NoiseModel::BitFlip => "bit-flip",
            },
            fmt_report(mc.touched_fraction),
            fmt_report(mc.mean_fidelity)
        ));
    }
    Ok(out.into())
}

fn lossy(e: &Ensemble, opts: &Options) -> Result<Outcome> {
    let eigen = average_length_code(e)?;
    let mut out = String::from("eigenvalue\tideal_length\tlength\tcodeword\n");
    for (k, c) in eigen.code.codewords().iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            fmt_report(eigen.eigenvalues[k]),
            fmt_report(eigen.ideal_lengths[k]),
            eigen.lengths[k],
            c
        ));
    }
    out.push('\n');
    out.push_str(&lossy_truncate(e, opts.copies, opts.delta, opts.cap_qubits)?.to_tsv());
    Ok(out.into())
}

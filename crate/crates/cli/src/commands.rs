use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use divgraceful::check::check_alpha;
use divgraceful::construct::{construct as build, Family};
use divgraceful::decomp::{
    base_blocks, develop, difference_certificate, host_table, verify_decomposition,
};
use divgraceful::grid::{build_grid, Graph};
use divgraceful::io::{
    to_dot, AnyGraph, DecompositionCertificate, GraphDescriptor, LabelingCertificate,
};
use divgraceful::oracle::{self, SearchConfig};
use divgraceful::Error;

/// Above this host order `table` relies on the difference-class certificate
/// instead of developing every translate.
const FULL_CHECK_MAX_V: u64 = 3000;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input.
    Usage(String),
    /// Input was well formed but failed verification.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Failed(s) => f.write_str(s),
        }
    }
}

type CliResult = Result<(), CliError>;

fn failed(e: impl fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_certificate(path: &Path) -> Result<(LabelingCertificate, AnyGraph), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = LabelingCertificate::from_json(&text)
        .map_err(|e| usage(format!("{}: malformed certificate: {e}", path.display())))?;
    let graph = cert
        .graph
        .build()
        .map_err(|e| usage(format!("{}: bad graph descriptor: {e}", path.display())))?;
    if cert.labels.len() != graph.vertex_count() {
        return Err(usage(format!(
            "{}: {} labels for {} vertices",
            path.display(),
            cert.labels.len(),
            graph.vertex_count()
        )));
    }
    Ok((cert, graph))
}

fn describe(desc: &GraphDescriptor) -> String {
    match desc {
        GraphDescriptor::Grid { k, m } => format!("C_{} x P_{m}", 4 * k),
        GraphDescriptor::Simple { n, edges } => {
            format!("graph on {n} vertices with {} edges", edges.len())
        }
    }
}

pub fn construct(k: usize, m: usize, multiplier: u64, out: &Path, dot: Option<&Path>) -> CliResult {
    let family = Family::with_multiplier(multiplier, k).map_err(usage)?;
    let built = build(k, m, family).map_err(failed)?;
    let alpha = check_alpha(&built.grid, &built.labeling).map_err(failed)?;
    let cert = LabelingCertificate::new(
        GraphDescriptor::of_grid(&built.grid),
        built.d,
        &built.labeling,
        Some(&alpha),
    );
    let checked = cert.verify(true).map_err(failed)?;
    write_file(out, &cert.to_json())?;
    if let Some(dot) = dot {
        write_file(dot, &to_dot(&built.grid, &built.labeling))?;
    }
    println!(
        "{}: {}-divisible graceful alpha-labeling ({family}), labels in [0, {}], lambda = {}",
        describe(&cert.graph),
        built.d,
        checked.params.max_label,
        alpha.lambda
    );
    println!("wrote {}", out.display());
    Ok(())
}

pub fn verify(path: &Path, require_alpha: bool) -> CliResult {
    let (cert, graph) = read_certificate(path)?;
    match cert.verify(require_alpha) {
        Ok(v) => {
            println!(
                "PASS: {}-divisible graceful labeling of {} ({} vertices, {} edges), q = {}, labels in [0, {}]",
                cert.d,
                describe(&cert.graph),
                graph.vertex_count(),
                graph.edge_count(),
                v.params.q,
                v.params.max_label
            );
            if let Some(a) = v.alpha {
                println!(
                    "PASS: alpha condition, lambda = {}, low class has {} vertices",
                    a.lambda,
                    a.low.len()
                );
            }
            Ok(())
        }
        Err(e) => {
            println!("FAIL: {e}");
            Err(failed(format!("{} did not verify", path.display())))
        }
    }
}

pub fn decompose(input: &Path, n: u64, full_check: bool, out: &Path) -> CliResult {
    let (cert, _) = read_certificate(input)?;
    let verified = cert.verify(n > 1).map_err(failed)?;
    let dec = base_blocks(
        &verified.graph,
        &verified.labeling,
        verified.alpha.as_ref(),
        cert.d,
        n,
    )
    .map_err(failed)?;
    difference_certificate(&dec).map_err(failed)?;
    println!(
        "{}: {} base block(s) in Z_{}, difference classes verified",
        dec.host, dec.n, dec.host.v
    );
    let dec = if full_check {
        let dec = develop(dec);
        let cov = verify_decomposition(&dec).map_err(failed)?;
        println!("{cov}");
        dec
    } else {
        dec
    };
    write_file(
        out,
        &DecompositionCertificate::new(cert.graph.clone(), &dec).to_json(),
    )?;
    println!("wrote {}", out.display());
    Ok(())
}

pub struct SearchArgs {
    pub graph: Option<PathBuf>,
    pub grid: Option<(usize, usize)>,
    pub d: u64,
    pub alpha: bool,
    pub limit: usize,
    pub count: bool,
    pub symmetry_breaking: bool,
}

pub fn search(args: SearchArgs) -> CliResult {
    let desc = match (&args.graph, args.grid) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<GraphDescriptor>(&text)
                .map_err(|e| usage(format!("{}: malformed graph: {e}", path.display())))?
        }
        (None, Some((k, m))) => GraphDescriptor::of_grid(&build_grid(k, m).map_err(usage)?),
        (None, None) => return Err(usage("one of --graph or --grid is required")),
    };
    let graph = desc.build().map_err(usage)?;

    let mut cfg = SearchConfig::new(args.d);
    cfg.alpha_only = args.alpha;
    cfg.max_results = args.limit;
    cfg.count_only = args.count;
    cfg.symmetry_breaking = args.symmetry_breaking;
    let outcome = oracle::search(&graph, &cfg).map_err(|e| match e {
        Error::InvalidParameters(_) | Error::NotAlpha(_) => usage(e),
        other => failed(other),
    })?;

    if args.count {
        println!("{}", outcome.count);
        return Ok(());
    }
    for f in &outcome.labelings {
        let alpha = if args.alpha {
            Some(check_alpha(&graph, f).map_err(failed)?)
        } else {
            None
        };
        let cert = LabelingCertificate::new(desc.clone(), args.d, f, alpha.as_ref());
        cert.verify(args.alpha).map_err(failed)?;
        println!(
            "{}",
            serde_json::to_string(&cert).expect("certificate serializes")
        );
    }
    eprintln!(
        "{} labeling(s){}",
        outcome.count,
        if outcome.exhaustive {
            ""
        } else {
            " (limit reached)"
        }
    );
    Ok(())
}

pub fn table(kmax: usize, mmax: usize, n: u64) -> CliResult {
    println!(
        "{:>3} {:>3} {:>3}  {:<12} {:>4} {:>4}  {:<14} {:>6}  status",
        "k", "m", "n", "family", "d", "q", "host", "v"
    );
    let mut all_ok = true;
    for k in 1..=kmax {
        for m in 2..=mmax {
            for target in host_table(k, m, n).map_err(usage)? {
                let status = match verify_target(k, m, n, target.family) {
                    Ok(s) => s,
                    Err(e) => {
                        all_ok = false;
                        format!("FAILED: {e}")
                    }
                };
                println!(
                    "{k:>3} {m:>3} {n:>3}  {:<12} {:>4} {:>4}  {:<14} {:>6}  {status}",
                    target.family.to_string(),
                    target.d,
                    target.q,
                    target.host.to_string(),
                    target.host.v
                );
            }
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(failed("some rows failed verification"))
    }
}

fn verify_target(k: usize, m: usize, n: u64, family: Family) -> Result<String, Error> {
    let built = build(k, m, family)?;
    let alpha = check_alpha(&built.grid, &built.labeling)?;
    let dec = base_blocks(&built.grid, &built.labeling, Some(&alpha), built.d, n)?;
    difference_certificate(&dec).map_err(|e| Error::Inconsistent(e.to_string()))?;
    if dec.host.v > FULL_CHECK_MAX_V {
        return Ok("verified (difference classes)".into());
    }
    let cov =
        verify_decomposition(&develop(dec)).map_err(|e| Error::Inconsistent(e.to_string()))?;
    Ok(format!("verified ({cov})"))
}

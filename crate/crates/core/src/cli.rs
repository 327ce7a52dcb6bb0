//! The `quasivalue` command-line interface.
//!
//! Every subcommand reads plain-text files (group files, game files, matrix
//! TSVs), prints exact rationals, and is byte-deterministic. Exit codes:
//! 0 success, 1 a check or verification failed, 2 malformed input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classify::{
    exotic_embedding, is_set_transitive, is_supertransitive, lcm_filter, lcm_of_first,
    verify_classification, ROMAN,
};
use crate::game::{parse_game_file, Coalition};
use crate::marginal::{average, coset_constant, shapley_family, MarginalDistribution};
use crate::perm::{parse_group_file, PermGroup, Permutation};
use crate::scalar::{parse_rat, Rat};
use crate::symspace::{dimension_cycle_index, orbit_structure, parametrize, Parametrization};
use crate::value::{parse_matrix_tsv, QuasivalueViolation, ValueMatrix};

#[derive(Parser)]
#[command(
    name = "quasivalue",
    about = "Exact symmetric quasi-values of cooperative games",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Shapley matrix, or the Shapley allocation of a game
    Shapley {
        /// Player count (1..=8)
        #[arg(long)]
        n: usize,
        /// Game file; omit to print the matrix itself
        #[arg(long)]
        game: Option<PathBuf>,
    },
    /// Dimension of the space of G-symmetric quasi-values, both formulas
    Dim {
        /// Group file (n=<count>, then one generator per line)
        #[arg(long)]
        group: PathBuf,
    },
    /// Affine parametrization of the space around the Shapley value
    Param {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated rational coefficients; prints the sampled matrix
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Verify quasi-value axioms and G-symmetry of a matrix file
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Supertransitivity tests, classification checks, the exotic report
    Classify(ClassifyArgs),
    /// Average the marginal operators under a distribution on S_n
    MarginalAvg(MarginalAvgArgs),
    /// Print the exotic S5-into-S6 embedding report
    Exotic,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Run all tests on the group in this file
    #[arg(long)]
    group: Option<PathBuf>,
    /// Verify the classification at this degree (exhaustive n<=5, targeted 6)
    #[arg(long)]
    verify: Option<usize>,
    /// Print the exotic embedding report
    #[arg(long)]
    exotic: bool,
}

#[derive(Args)]
struct MarginalAvgArgs {
    #[arg(long)]
    group: PathBuf,
    /// Uniform weights 1/n! (the Shapley value)
    #[arg(long)]
    uniform: bool,
    /// File of coset representatives: cycle notation, then a weight
    #[arg(long, value_name = "FILE")]
    coset_weights: Option<PathBuf>,
    /// Members of Ω₀ for the A^π(Ω₀) family, e.g. 1,2,3,4
    #[arg(long, value_name = "MEMBERS")]
    family: Option<String>,
    /// The family parameter, strictly between 0 and 2
    #[arg(long, value_name = "P/Q")]
    alpha: Option<String>,
}

enum CliError {
    /// Malformed input: message, exit 2.
    Input(String),
    /// Output stream failure.
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn input<T>(message: String) -> Result<T, CliError> {
    Err(CliError::Input(message))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn load_group(path: &Path) -> Result<PermGroup, CliError> {
    let text = read_file(path)?;
    parse_group_file(&text)
        .map_err(|e| CliError::Input(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

/// Parses the command line and executes it, writing results to `out` and
/// diagnostics to `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successful output, not errors
            return if e.use_stderr() {
                let _ = write!(err, "{}", e);
                2
            } else {
                let _ = write!(out, "{}", e);
                0
            };
        }
    };
    let result = match cli.command {
        Command::Shapley { n, game } => cmd_shapley(n, game.as_deref(), out),
        Command::Dim { group } => cmd_dim(&group, out),
        Command::Param { group, coeffs } => cmd_param(&group, coeffs.as_deref(), out),
        Command::Check { matrix, group } => cmd_check(&matrix, &group, out),
        Command::Classify(args) => cmd_classify(&args, out),
        Command::MarginalAvg(args) => cmd_marginal_avg(&args, out),
        Command::Exotic => cmd_exotic(out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(message)) => {
            let _ = writeln!(err, "error: {}", message);
            2
        }
        Err(CliError::Io(e)) => {
            // a closed stdout (e.g. piping into `head`) is not an error
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                return 0;
            }
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

fn cmd_shapley(n: usize, game: Option<&Path>, out: &mut dyn Write) -> CliResult {
    if n < 1 || n > 8 {
        return input(format!("--n {} outside the supported 1..=8", n));
    }
    let matrix: ValueMatrix = ValueMatrix::shapley(n);
    match game {
        None => write!(out, "{}", matrix.to_tsv())?,
        Some(path) => {
            let text = read_file(path)?;
            let v = parse_game_file(&text).map_err(|e| {
                CliError::Input(format!("{}:{}: {}", path.display(), e.line, e.message))
            })?;
            if v.n() != n {
                return input(format!(
                    "{}: game declares n={} but --n {} was given",
                    path.display(),
                    v.n(),
                    n
                ));
            }
            let alloc = matrix.apply(&v);
            writeln!(out, "player\tpayoff")?;
            for (i, p) in alloc.payoff().iter().enumerate() {
                writeln!(out, "{}\t{}", i + 1, p)?;
            }
        }
    }
    Ok(0)
}

fn cmd_dim(group_path: &Path, out: &mut dyn Write) -> CliResult {
    let g = load_group(group_path)?;
    let structure = orbit_structure(&g);
    writeln!(out, "group: order {} on {} players", g.order(), g.degree())?;
    writeln!(out, "|X/G| = {}", structure.x_orbit_count())?;
    writeln!(out, "|chi/G| = {}", structure.chi_orbit_count())?;
    writeln!(out, "dimension (orbit formula) = {}", structure.dimension())?;
    writeln!(out, "dimension (cycle index) = {}", dimension_cycle_index(&g))?;
    writeln!(out, "orbit\trepresentative\tk\tblock sizes")?;
    for (m, orbit) in structure.chi_orbits().iter().enumerate() {
        let sizes = orbit
            .block_sizes()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            m + 1,
            orbit.representative(),
            orbit.k(),
            sizes
        )?;
    }
    Ok(0)
}

fn members_string(block: &[usize]) -> String {
    block
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_param(group_path: &Path, coeffs: Option<&str>, out: &mut dyn Write) -> CliResult {
    let g = load_group(group_path)?;
    if g.degree() > 8 {
        return input(format!(
            "parametrization supports up to 8 players, group has {}",
            g.degree()
        ));
    }
    let p: Parametrization = parametrize(&g);
    match coeffs {
        None => {
            writeln!(out, "dimension = {}", p.dimension())?;
            writeln!(out, "base: Shapley matrix, n = {}", g.degree())?;
            if p.dimension() > 0 {
                writeln!(out, "direction\trepresentative\tplus block\tminus block")?;
                for (j, info) in p.infos().iter().enumerate() {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}",
                        j + 1,
                        info.representative,
                        members_string(&info.plus_block),
                        members_string(&info.minus_block)
                    )?;
                }
            }
        }
        Some(list) => {
            let coefficients = parse_rat_list(list)?;
            let m = p
                .sample(&coefficients)
                .map_err(|e| CliError::Input(e.to_string()))?;
            write!(out, "{}", m.to_tsv())?;
        }
    }
    Ok(0)
}

fn parse_rat_list(list: &str) -> Result<Vec<Rat>, CliError> {
    let trimmed = list.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| parse_rat(tok).map_err(CliError::Input))
        .collect()
}

fn describe_violation(v: &QuasivalueViolation) -> String {
    match v {
        QuasivalueViolation::NonmemberEntry { i, r } => format!(
            "  player {} has a nonzero entry in coalition {} without being a member",
            i + 1,
            r
        ),
        QuasivalueViolation::ColumnSum { r, sum } => {
            format!("  column {} sums to {}", r, sum)
        }
    }
}

fn cmd_check(matrix_path: &Path, group_path: &Path, out: &mut dyn Write) -> CliResult {
    let text = read_file(matrix_path)?;
    let m = parse_matrix_tsv(&text).map_err(|e| {
        CliError::Input(format!("{}:{}: {}", matrix_path.display(), e.line, e.message))
    })?;
    let g = load_group(group_path)?;
    if m.n() != g.degree() {
        return input(format!(
            "matrix has n={} but the group acts on {} players",
            m.n(),
            g.degree()
        ));
    }
    let quasi = m.check_quasivalue();
    if quasi.ok() {
        writeln!(out, "quasivalue: ok")?;
    } else {
        writeln!(out, "quasivalue: FAIL ({} violations)", quasi.violations.len())?;
        for v in &quasi.violations {
            writeln!(out, "{}", describe_violation(v))?;
        }
    }
    let sym = m.check_symmetry(&g);
    match &sym.witness {
        None => writeln!(out, "symmetry: ok")?,
        Some(w) => writeln!(
            out,
            "symmetry: FAIL at g={}, player {}, coalition {}",
            w.g,
            w.i + 1,
            w.r
        )?,
    }
    Ok(if quasi.ok() && sym.ok() { 0 } else { 1 })
}

fn cmd_classify(args: &ClassifyArgs, out: &mut dyn Write) -> CliResult {
    let modes =
        usize::from(args.group.is_some()) + usize::from(args.verify.is_some()) + usize::from(args.exotic);
    if modes != 1 {
        return input("choose exactly one of --group, --verify, --exotic".into());
    }
    if let Some(path) = &args.group {
        let g = load_group(path)?;
        writeln!(out, "group: order {} on {} players", g.order(), g.degree())?;
        let report = is_supertransitive(&g);
        match &report.witness {
            None => writeln!(out, "supertransitive: yes")?,
            Some(w) => writeln!(
                out,
                "supertransitive: no (stabilizer of {{{}}} cannot take {} to {})",
                w.subset,
                w.from + 1,
                w.to + 1
            )?,
        }
        writeln!(
            out,
            "set-transitive: {}",
            if is_set_transitive(&g) { "yes" } else { "no" }
        )?;
        writeln!(
            out,
            "lcm filter: {} (lcm(1..{}) = {}, order {})",
            if lcm_filter(&g) { "passes" } else { "fails" },
            g.degree(),
            lcm_of_first(g.degree()),
            g.order()
        )?;
        writeln!(out, "dimension = {}", crate::symspace::dimension_orbit(&g))?;
        return Ok(0);
    }
    if let Some(n) = args.verify {
        if n < 1 || n > 6 {
            return input(format!(
                "--verify {} unsupported: exhaustive needs 1..=5, targeted needs 6",
                n
            ));
        }
        let report = verify_classification(n);
        writeln!(
            out,
            "classification at n={}: {}",
            n,
            if report.ok() { "PASS" } else { "FAIL" }
        )?;
        writeln!(
            out,
            "groups examined: {}{}",
            report.groups_examined,
            if report.exhaustive {
                " (all subgroups)"
            } else {
                " (targeted list)"
            }
        )?;
        writeln!(out, "supertransitive: {}", report.supertransitive.join(", "))?;
        for note in &report.notes {
            writeln!(out, "note: {}", note)?;
        }
        for failure in &report.failures {
            writeln!(out, "FAIL: {}", failure)?;
        }
        return Ok(if report.ok() { 0 } else { 1 });
    }
    cmd_exotic(out)
}

fn cmd_exotic(out: &mut dyn Write) -> CliResult {
    let report = exotic_embedding();
    writeln!(out, "exotic embedding of S5 into S6")?;
    writeln!(out, "label\tpoint\tSylow generator")?;
    for (gen, point) in &report.labeling {
        writeln!(out, "{}\t{}\t{}", ROMAN[*point], point + 1, gen)?;
    }
    writeln!(out, "transposition\timage")?;
    for ((a, b), image) in &report.transposition_images {
        writeln!(out, "({} {})\t{}", a, b, image)?;
    }
    writeln!(
        out,
        "image group: order {} on {} points",
        report.image_group.order(),
        report.image_group.degree()
    )?;
    writeln!(
        out,
        "supertransitive: {}",
        if is_supertransitive(&report.image_group).ok() {
            "yes"
        } else {
            "no"
        }
    )?;
    writeln!(
        out,
        "dimension = {}",
        crate::symspace::dimension_orbit(&report.image_group)
    )?;
    Ok(0)
}

fn parse_coset_weights(
    text: &str,
    path: &Path,
    n: usize,
) -> Result<Vec<(Permutation, Rat)>, CliError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |message: String| {
            CliError::Input(format!("{}:{}: {}", path.display(), line_no, message))
        };
        let (perm_text, weight_text) = line
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| at("expected `<representative> <weight>`".into()))?;
        let rep = Permutation::parse_cycles(perm_text, n).map_err(|e| at(e.to_string()))?;
        let weight = parse_rat(weight_text).map_err(at)?;
        out.push((rep, weight));
    }
    if out.is_empty() {
        return input(format!("{}: no coset representatives given", path.display()));
    }
    Ok(out)
}

fn cmd_marginal_avg(args: &MarginalAvgArgs, out: &mut dyn Write) -> CliResult {
    let g = load_group(&args.group)?;
    let n = g.degree();
    if n > 8 {
        return input(format!(
            "marginal averaging supports up to 8 players, group has {}",
            n
        ));
    }
    let modes = usize::from(args.uniform)
        + usize::from(args.coset_weights.is_some())
        + usize::from(args.family.is_some());
    if modes != 1 {
        return input("choose exactly one of --uniform, --coset-weights, --family".into());
    }
    if args.family.is_some() != args.alpha.is_some() {
        return input("--family and --alpha must be given together".into());
    }

    let (distribution, label): (MarginalDistribution, String) = if args.uniform {
        (MarginalDistribution::uniform(n), "uniform".into())
    } else if let Some(path) = &args.coset_weights {
        let text = read_file(path)?;
        let rep_weights = parse_coset_weights(&text, path, n)?;
        let d = coset_constant(&g, &rep_weights).map_err(|e| CliError::Input(e.to_string()))?;
        (d, format!("coset-constant ({} representatives)", rep_weights.len()))
    } else {
        let members = args.family.as_deref().expect("mode checked");
        let alpha_text = args.alpha.as_deref().expect("mode checked");
        let omega0 = Coalition::parse_members(members, n).map_err(CliError::Input)?;
        let alpha = parse_rat(alpha_text).map_err(CliError::Input)?;
        let d = shapley_family(omega0, alpha.clone())
            .map_err(|e| CliError::Input(e.to_string()))?;
        (d, format!("family omega0={{{}}} alpha={}", omega0, alpha))
    };

    let avg = average(&distribution);
    write!(out, "{}", avg.to_tsv())?;
    writeln!(out, "# distribution: {}", label)?;
    let quasi = avg.check_quasivalue();
    let sym = avg.check_symmetry(&g);
    writeln!(
        out,
        "# quasivalue: {}",
        if quasi.ok() { "ok" } else { "FAIL" }
    )?;
    match &sym.witness {
        None => writeln!(out, "# symmetry: ok")?,
        Some(w) => {
            let mut line = String::new();
            write!(
                line,
                "# symmetry: FAIL at g={}, player {}, coalition {}",
                w.g,
                w.i + 1,
                w.r
            )
            .expect("write to string");
            writeln!(out, "{}", line)?;
        }
    }
    Ok(if quasi.ok() && sym.ok() { 0 } else { 1 })
}

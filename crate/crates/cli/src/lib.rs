//! Implementation of the `fillcurve` command-line tool: argument types,
//! JSON plumbing and one handler per subcommand. The binary in `main.rs`
//! only parses arguments and maps errors to the structured stderr form.

pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use fillcurve::hypgeom::LengthReport;
use fillcurve::{
    apply_surgery, build_scene, decompose, dual, enumerate_uniform_with_progress,
    eval_word_matrix, eval_word_perm, grow, in_k, matrices_for, medial, min_length_bipartite,
    min_length_clean, parse_word, seed_dessin, side_pairings, Dessin, Error, Result,
};

/// Reads and validates a dessin from a JSON file.
pub fn load_dessin(path: &Path) -> Result<Dessin> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes a dessin as JSON; the inverse of [`load_dessin`].
pub fn save_dessin(d: &Dessin, path: &Path) -> Result<()> {
    fs::write(path, to_json(d)?)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parses a comma-separated type triple such as `2,4,8`.
fn parse_triple(text: &str) -> std::result::Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a,b,c but got {text:?}"));
    }
    let mut values = [0usize; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("{part:?} is not a positive integer"))?;
    }
    Ok((values[0], values[1], values[2]))
}

#[derive(Parser)]
#[command(
    name = "fillcurve",
    version,
    about = "Filling multicurves on closed surfaces as clean dessins: analysis, length minima, surgery, classification and Poincare-disk rendering"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Passport, type, genus and structural classification of a dessin.
    Analyze {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Multicurve component decomposition of a dessin.
    Components {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum of the geodesic length function, auto-detecting the clean
    /// and bipartite cases from the passport.
    Minlength {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual dessin: black vertices and faces trade places.
    Dual {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Medial surgery: a new degree-2 white vertex in the middle of every
    /// edge.
    Medial {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One genus-increment surgery at the white vertex joining edges A and B.
    Surgery {
        input: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A seed dessin of the given genus and face count.
    Seed {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        faces: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Grow a dessin to the target genus by repeated surgery, keeping the
    /// face count fixed.
    Grow {
        input: PathBuf,
        #[arg(long)]
        target_genus: usize,
        #[arg(long)]
        faces: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify all uniform clean dessins of one type and genus up to
    /// equivalence.
    Enumerate {
        #[arg(long = "type", value_parser = parse_triple)]
        type_triple: (usize, usize, usize),
        #[arg(long)]
        genus: usize,
        /// Worker threads; the output is identical for every count.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report task completion on standard error.
        #[arg(long)]
        progress: bool,
        /// Emit the per-class report instead of the raw result.
        #[arg(long)]
        summary: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a word in x, y, z under the monodromy homomorphism; with
    /// --type also as a triangle-group matrix.
    Word {
        word: String,
        input: PathBuf,
        #[arg(long = "type", value_parser = parse_triple)]
        type_triple: Option<(usize, usize, usize)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Schreier side pairings of the fundamental domain.
    Pairings {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG rendering of the fundamental domain in the Poincare disk.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite and report pass/fail per property.
    Verify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Minimum length of the multicurve carried by `d`: clean types use the
/// `(2, 2m, k)` formula with one arc per two edges; bipartite types use the
/// `(2l, 2m, j)` formula with one arc per edge.
pub fn minlength(d: &Dessin) -> Result<LengthReport> {
    let (white, black, face) = d.uniform_type()?;
    if black % 2 != 0 {
        return Err(Error::OddBlackDegree(black));
    }
    if white == 2 {
        min_length_clean(black / 2, face, d.degree() / 2)
    } else if white % 2 == 0 {
        min_length_bipartite(white / 2, black / 2, face, d.degree())
    } else {
        Err(Error::OddWhiteDegree(white))
    }
}

/// Report for the `word` subcommand.
fn word_report(
    text: &str,
    d: &Dessin,
    triple: Option<(usize, usize, usize)>,
) -> Result<serde_json::Value> {
    let word = parse_word(text)?;
    let permutation = eval_word_perm(&word, d);
    let mut value = serde_json::json!({
        "word": text,
        "permutation": permutation.cycles().cycles,
        "in_stabilizer": in_k(&word, d, 1)?,
    });
    if let Some((a, b, c)) = triple {
        let triangle = matrices_for(d, a, b, c)?;
        let isometry = eval_word_matrix(&word, &triangle);
        value["isometry"] = serde_json::to_value(isometry)?;
        value["trace"] = serde_json::to_value(isometry.matrix[0][0] + isometry.matrix[1][1])?;
        value["translation_length"] = serde_json::to_value(isometry.translation_length)?;
    }
    Ok(value)
}

/// Executes one subcommand, returning the process exit code.
pub fn run(command: Command) -> Result<i32> {
    match command {
        Command::Analyze { input, output } => {
            let d = load_dessin(&input)?;
            let value = serde_json::json!({
                "passport": d.passport(),
                "classification": d.classify(),
            });
            emit(&to_json(&value)?, output.as_deref())?;
        }
        Command::Components { input, output } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&decompose(&d)?)?, output.as_deref())?;
        }
        Command::Minlength { input, output } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&minlength(&d)?)?, output.as_deref())?;
        }
        Command::Dual { input, output } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&dual(&d)?)?, output.as_deref())?;
        }
        Command::Medial { input, output } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&medial(&d))?, output.as_deref())?;
        }
        Command::Surgery {
            input,
            a,
            b,
            output,
        } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&apply_surgery(&d, a, b)?)?, output.as_deref())?;
        }
        Command::Seed {
            genus,
            faces,
            output,
        } => {
            emit(&to_json(&seed_dessin(genus, faces)?)?, output.as_deref())?;
        }
        Command::Grow {
            input,
            target_genus,
            faces,
            output,
        } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&grow(&d, target_genus, faces)?)?, output.as_deref())?;
        }
        Command::Enumerate {
            type_triple: (a, two_m, k),
            genus,
            jobs,
            progress,
            summary,
            output,
        } => {
            if a != 2 {
                return Err(Error::NotClean);
            }
            let report_progress = |done: usize, total: usize| {
                eprintln!("progress: {done}/{total} tasks");
            };
            let callback: Option<&(dyn Fn(usize, usize) + Send + Sync)> =
                if progress { Some(&report_progress) } else { None };
            let result = enumerate_uniform_with_progress(two_m, k, genus, jobs, callback)?;
            let text = if summary {
                to_json(&fillcurve::summarize(&result))?
            } else {
                to_json(&result)?
            };
            emit(&text, output.as_deref())?;
        }
        Command::Word {
            word,
            input,
            type_triple,
            output,
        } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&word_report(&word, &d, type_triple)?)?, output.as_deref())?;
        }
        Command::Pairings { input, output } => {
            let d = load_dessin(&input)?;
            emit(&to_json(&side_pairings(&d)?)?, output.as_deref())?;
        }
        Command::Render { input, output } => {
            let d = load_dessin(&input)?;
            emit(&build_scene(&d)?.to_svg(), output.as_deref())?;
        }
        Command::Verify { input, output } => {
            let d = load_dessin(&input)?;
            let report = verify::run_suite(&d);
            let ok = report.ok;
            emit(&to_json(&report)?, output.as_deref())?;
            if !ok {
                eprintln!(
                    "{}",
                    serde_json::json!({
                        "error": "verification_failed",
                        "message": "one or more invariant checks failed",
                    })
                );
                return Ok(1);
            }
        }
    }
    Ok(0)
}

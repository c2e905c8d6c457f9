use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use std::io::Read;

use nilblob::algebra::{BlobWeights, Engine};
use nilblob::alcove::{enumerate_std, reduced_expression, BlobParams, PathTableau};
use nilblob::ascii;
use nilblob::diagram::BlobDiagram;
use nilblob::jm;
use nilblob::scalar::{format_scalar, parse_scalar};
use nilblob::truncation::{
    codify, generator_word_any, map_to_nilblob, region_factorize, MappedElement,
};
use nilblob::verify;
use nilblob::words::{evaluate, evaluate_extended, factorize_diagram, GeneratorWord, NormalTable};
use nilblob::AlgebraElement;

/// Exact computations in blob diagram algebras and their alcove-path
/// combinatorics. All numbers are exact fractions `p/q`; every command
/// emits JSON, with `--ascii` adding a plain-text rendering.
#[derive(Parser)]
#[command(name = "nilblob", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply a generator word (or two element files) in a chosen algebra
    Mul {
        /// nilblob | blob | extended
        #[arg(long, default_value = "nilblob")]
        algebra: String,
        #[arg(long)]
        n: usize,
        /// parameter q for the blob algebra, an exact fraction
        #[arg(long)]
        q: Option<String>,
        /// parameter m for the blob algebra
        #[arg(long)]
        m: Option<i64>,
        /// word such as "U1 U0 U1" (V-letters accepted for blob); omit to
        /// multiply the two element files instead
        word: Option<String>,
        /// JSON element files to multiply (exactly two)
        #[arg(long = "file")]
        files: Vec<String>,
        #[arg(long)]
        ascii: bool,
    },
    /// Run a verification suite: relations | jm | dims | orbit | rank
    Verify {
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// degree of parallelism (accepted for compatibility; suites run
        /// sequentially)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Factorize a diagram (JSON on stdin or --file) into a generator word
    Factorize {
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        ascii: bool,
    },
    /// Normal form of a generator word
    NormalForm {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Dump the residue orbit grouped by shape
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
    },
    /// Reduced expression from the row-reading tableau to a path
    Redexpr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
        /// comma-separated heights including the leading 0
        #[arg(long)]
        path: String,
    },
    /// Codification matrix of a central pair
    Codify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        ascii: bool,
    },
    /// Generator word of a same-shape pair, with its nil-blob image
    Word {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        /// also print the image inside the (extended) nil-blob algebra
        #[arg(long)]
        image: bool,
    },
    /// Print a Jucys-Murphy element
    Jm {
        #[arg(long)]
        n: usize,
        /// L | Y | J
        #[arg(long)]
        family: String,
        /// 1-based index for L and Y
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        ascii: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn parse_path(text: &str) -> Result<PathTableau> {
    let heights: Vec<i64> = text
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| anyhow!("bad height {x:?}: {e}")))
        .collect::<Result<_>>()?;
    Ok(PathTableau::new(heights)?)
}

fn read_diagram(file: &Option<String>) -> Result<BlobDiagram> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path).context("reading diagram file")?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Mul { algebra, n, q, m, word, files, ascii } => {
            cmd_mul(&algebra, n, q, m, word, files, ascii)
        }
        Command::Verify { suite, n, e, m, jobs: _ } => cmd_verify(&suite, n, e, m),
        Command::Factorize { file, ascii } => {
            let d = read_diagram(&file)?;
            let (word, scalar) = factorize_diagram(&d)?;
            emit(&serde_json::json!({
                "word": word.to_string(),
                "scalar": format_scalar(&scalar),
            }))?;
            if ascii {
                print!("{}", ascii::render_diagram(&d));
            }
            Ok(())
        }
        Command::NormalForm { n, word } => {
            let w = GeneratorWord::parse(n, &word)?;
            let table = NormalTable::new(n)?;
            match table.normal_form(&w)? {
                None => emit(&serde_json::json!({ "zero": true })),
                Some((c, nm)) => emit(&serde_json::json!({
                    "zero": false,
                    "coeff": format_scalar(&c),
                    "monomial": nm.word(n).to_string(),
                })),
            }
        }
        Command::Paths { n, e, m } => {
            let p = BlobParams::new(n, e, m)?;
            let cls = p.classify()?;
            let orbit = enumerate_std(&p)?;
            let shapes: Vec<_> = orbit
                .shapes
                .iter()
                .enumerate()
                .map(|(idx, s)| {
                    serde_json::json!({
                        "index": idx,
                        "mu": [s.mu.0, s.mu.1],
                        "endpoint": s.endpoint,
                        "tableaux": s.tableaux.iter().map(|t| t.heights().to_vec()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(&serde_json::json!({
                "params": { "n": n, "e": e, "m": m },
                "K": cls.k,
                "R": cls.r,
                "singular": cls.singular(),
                "shapes": shapes,
            }))
        }
        Command::Redexpr { n, e, m, path } => {
            let p = BlobParams::new(n, e, m)?;
            let target = parse_path(&path)?;
            let start = PathTableau::row_reading(n, target.endpoint());
            let word = reduced_expression(&start, &target)?;
            let perm = target.permutation();
            let rf = region_factorize(&target, &p)?;
            emit(&serde_json::json!({
                "word": word,
                "length": word.len(),
                "inversions": perm.inversions(),
                "permutation": perm.0.iter().map(|x| x + 1).collect::<Vec<_>>(),
                "central": rf.is_central(),
                "regions": rf.factors.iter().map(|f| {
                    serde_json::json!({ "kind": f.kind.to_string(), "word": f.word })
                }).collect::<Vec<_>>(),
            }))
        }
        Command::Codify { n, e, m, s, t, ascii } => {
            let p = BlobParams::new(n, e, m)?;
            let (s, t) = (parse_path(&s)?, parse_path(&t)?);
            let pair = codify(&s, &t, &p)?;
            emit(&serde_json::json!({ "grid": pair.grid() }))?;
            if ascii {
                print!("{}", ascii::render_cod_pair(&pair));
            }
            Ok(())
        }
        Command::Word { n, e, m, s, t, image } => {
            let p = BlobParams::new(n, e, m)?;
            let (s, t) = (parse_path(&s)?, parse_path(&t)?);
            let word = generator_word_any(&s, &t, &p)?;
            let tokens: Vec<String> = word.tokens.iter().map(|t| t.to_string()).collect();
            let mut payload = serde_json::json!({
                "sign": "±1",
                "prefix": word.prefix.map(|pf| format!("{pf:?}")),
                "tokens": tokens,
            });
            if image {
                let cls = p.classify()?;
                let mut eng = Engine::new(cls.k);
                let mapped = map_to_nilblob(&word, &p, &mut eng)?;
                let val = match mapped {
                    MappedElement::Plain(x) => serde_json::to_value(&x)?,
                    MappedElement::Extended(x) => serde_json::to_value(&x)?,
                };
                payload["image"] = val;
            }
            emit(&payload)
        }
        Command::Jm { n, family, index, ascii } => {
            let mut eng = Engine::new(n);
            let elt = match family.to_ascii_lowercase().as_str() {
                "l" => {
                    let i = index.ok_or_else(|| anyhow!("--index required for L"))?;
                    let ls = jm::l_elements(n, &mut eng)?;
                    ls.get(i - 1).cloned().ok_or_else(|| anyhow!("index out of range"))?
                }
                "y" => {
                    let i = index.ok_or_else(|| anyhow!("--index required for Y"))?;
                    let ys = jm::y_elements(n, &mut eng)?;
                    ys.get(i - 1).cloned().ok_or_else(|| anyhow!("index out of range"))?
                }
                "j" => jm::j_element(n, &mut eng)?,
                other => bail!("unknown family {other:?} (use L, Y, or J)"),
            };
            emit(&elt)?;
            if ascii {
                print!("{}", ascii::render_element(&elt));
            }
            Ok(())
        }
    }
}

fn cmd_mul(
    algebra: &str,
    n: usize,
    q: Option<String>,
    m: Option<i64>,
    word: Option<String>,
    files: Vec<String>,
    show_ascii: bool,
) -> Result<()> {
    match algebra {
        "nilblob" => {
            let elt = if let Some(text) = word {
                evaluate(&GeneratorWord::parse(n, &text)?)?
            } else {
                let [a, b] = load_two(&files, n)?;
                Engine::new(n).mul_nilblob(&a, &b)?
            };
            emit(&elt)?;
            if show_ascii {
                print!("{}", ascii::render_element(&elt));
            }
        }
        "extended" => {
            let elt = if let Some(text) = word {
                evaluate_extended(&GeneratorWord::parse(n, &text)?)?
            } else {
                let [a, b] = load_two_extended(&files, n)?;
                Engine::new(n).mul_extended(&a, &b)?
            };
            emit(&elt)?;
            if show_ascii {
                print!("{}", ascii::render_extended(&elt));
            }
        }
        "blob" => {
            let q = parse_scalar(&q.ok_or_else(|| anyhow!("--q required for blob"))?)
                .map_err(|e| anyhow!("{e}"))?;
            let m = m.ok_or_else(|| anyhow!("--m required for blob"))?;
            let weights = BlobWeights::new(&q, m)?;
            let mut eng = Engine::new(n);
            let elt = if let Some(text) = word {
                // V_0 carries the -[m] scaling of the blob generator
                let w = GeneratorWord::parse(n, &text)?;
                let mut acc = AlgebraElement::one(n);
                for letter in &w.letters {
                    let fac = match letter {
                        nilblob::words::Letter::U(0) => {
                            AlgebraElement::generator(n, 0).scale(&-weights.gauss_m.clone())
                        }
                        nilblob::words::Letter::U(i) => AlgebraElement::generator(n, *i),
                        nilblob::words::Letter::J => bail!("J is not a blob generator"),
                    };
                    acc = eng.mul_blob(&acc, &fac, &weights)?;
                }
                acc
            } else {
                let [a, b] = load_two(&files, n)?;
                eng.mul_blob(&a, &b, &weights)?
            };
            emit(&elt)?;
            if show_ascii {
                print!("{}", ascii::render_element(&elt));
            }
        }
        other => bail!("unknown algebra {other:?} (use nilblob, blob, or extended)"),
    }
    Ok(())
}

fn parse_element(text: &str, n: usize) -> Result<AlgebraElement> {
    // a zero element serializes as [] and carries no point count, so the
    // reader falls back to the command's --n
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.as_array().is_some_and(|a| a.is_empty()) {
        return Ok(AlgebraElement::zero(n));
    }
    let elt: AlgebraElement = serde_json::from_value(value)?;
    if elt.n() != n {
        bail!("element lives on {} points, expected {n}", elt.n());
    }
    Ok(elt)
}

fn load_two(files: &[String], n: usize) -> Result<[AlgebraElement; 2]> {
    if files.len() != 2 {
        bail!("need exactly two --file arguments");
    }
    let load = |path: &String| -> Result<AlgebraElement> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        parse_element(&text, n).with_context(|| format!("parsing {path}"))
    };
    Ok([load(&files[0])?, load(&files[1])?])
}

fn load_two_extended(files: &[String], n: usize) -> Result<[nilblob::ExtAlgebraElement; 2]> {
    if files.len() != 2 {
        bail!("need exactly two --file arguments");
    }
    let load = |path: &String| -> Result<nilblob::ExtAlgebraElement> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let a0 = parse_element(&value["a0"].to_string(), n)?;
        let a1 = parse_element(&value["a1"].to_string(), n)?;
        Ok(nilblob::ExtAlgebraElement { a0, a1 })
    };
    Ok([load(&files[0])?, load(&files[1])?])
}

fn cmd_verify(suite: &str, n: usize, e: Option<usize>, m: Option<usize>) -> Result<()> {
    let checks = match suite {
        "relations" => {
            let mut checks = verify::suite_relations(n);
            checks.extend(verify::suite_blob_relations(
                n.min(4),
                &verify::blob_samples(),
            ));
            checks.extend(verify::suite_unit(n.min(4)));
            checks
        }
        "jm" => verify::suite_jm(n),
        "dims" => verify::suite_dims(n, n.min(5)),
        "orbit" => {
            let p = params_from(n, e, m)?;
            verify::suite_orbit(&p)
        }
        "rank" => {
            let p = params_from(n, e, m)?;
            let mut checks = verify::suite_rank(&p);
            checks.extend(verify::suite_image_relations(&p));
            checks
        }
        other => bail!("unknown suite {other:?} (relations, jm, dims, orbit, rank)"),
    };
    print!("{}", verify::render_report(&checks));
    if verify::all_pass(&checks) {
        Ok(())
    } else {
        bail!("{} checks failed", checks.iter().filter(|c| !c.pass).count());
    }
}

fn params_from(n: usize, e: Option<usize>, m: Option<usize>) -> Result<BlobParams> {
    let e = e.ok_or_else(|| anyhow!("--e required"))?;
    let m = m.ok_or_else(|| anyhow!("--m required"))?;
    Ok(BlobParams::new(n, e, m)?)
}

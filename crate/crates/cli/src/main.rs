mod targets;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acutri::flatten::{acute_scale_interval, run_flatten, FlattenConfig, FlattenOutcome};
use acutri::fvector::{corollary_ds_4d, dehn_sommerville, richness_obstruction};
use acutri::geometry::{exact_integer_embedding, verify_acute, verify_geometric_complex, AngleReport};
use acutri::io::{write_ele, write_off, write_vtk, AnyEmbedding, EmbeddingJson, MeshDocument};
use acutri::SimplicialComplex;
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use targets::Target;

const EXIT_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_STALLED: u8 = 3;

#[derive(Parser)]
#[command(name = "acutri", version, about = "Acute and rich triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the known complexes and write it as a mesh document.
    Generate {
        #[arg(value_enum)]
        target: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run checks on a mesh document; exit 1 if any fails.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "acute")]
        checks: Vec<Check>,
        /// Float angle test with this margin (implies --float).
        #[arg(long)]
        margin_deg: Option<f64>,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Counts, Euler characteristic and angle statistics.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write OFF (boundary surface plus a `.ele` tetrahedron list), legacy
    /// VTK, or normalised JSON.
    Export {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dehn–Sommerville residuals and the counting obstruction to richness.
    CheckFvector {
        #[arg(short, long)]
        input: PathBuf,
        /// Manifold dimension; defaults to the dimension of the complex.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Flatten the regular-tetrahedron realization onto the standard
    /// tetrahedron; exit 3 if the angle correction stalls.
    Optimize {
        #[arg(long, default_value_t = 100)]
        n_steps: usize,
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
        #[arg(long, default_value_t = 0.5)]
        margin_deg: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, requires = "scale_max")]
        scale_min: Option<f64>,
        #[arg(long, requires = "scale_min")]
        scale_max: Option<f64>,
        /// CSV trace (step, t, iter, worst_cosine).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Acute,
    Rich,
    Flag,
    NoSquare,
    Geometric,
    Ds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Off,
    Vtk,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Generate { target, output } => {
            let doc = targets::generate(target)?;
            emit(output.as_deref(), &doc.to_json_string()?)?;
            Ok(0)
        }
        Command::Verify {
            input,
            checks,
            margin_deg,
            exact,
            float,
            output,
        } => {
            if exact && margin_deg.is_some() {
                bail!("--margin-deg needs the float test");
            }
            let doc = read_doc(&input)?;
            let (report, ok) = verify(&doc, &checks, margin_deg, float)?;
            emit(output.as_deref(), &pretty(&report)?)?;
            Ok(if ok { 0 } else { EXIT_FAILED })
        }
        Command::Stats { input } => {
            let doc = read_doc(&input)?;
            println!("{}", pretty(&stats(&doc)?)?.trim_end());
            Ok(0)
        }
        Command::Export {
            input,
            format,
            output,
        } => {
            let doc = read_doc(&input)?;
            export(&doc, format, output.as_deref())?;
            Ok(0)
        }
        Command::CheckFvector { input, dim } => {
            let doc = read_doc(&input)?;
            let (report, ok) = check_fvector(&doc, dim)?;
            println!("{}", pretty(&report)?.trim_end());
            Ok(if ok { 0 } else { EXIT_FAILED })
        }
        Command::Optimize {
            n_steps,
            max_iters,
            margin_deg,
            seed,
            step,
            scale_min,
            scale_max,
            trace,
            output,
        } => {
            let step1_scale = match (scale_min, scale_max) {
                (Some(lo), Some(hi)) => Some(acute_scale_interval(lo, hi, 0.0)?.best),
                _ => None,
            };
            let config = FlattenConfig {
                n_steps,
                correction_max_iters: max_iters,
                correction_step: step,
                acute_margin_deg: margin_deg,
                seed,
                step1_scale,
                ..FlattenConfig::default()
            };
            optimize(&config, trace.as_deref(), output.as_deref())
        }
    }
}

fn read_doc(path: &Path) -> Result<MeshDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    MeshDocument::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn angle_json(r: &AngleReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .take(20)
        .map(|(t, e)| json!({"edge": e, "tetrahedron": r.tets[*t].to_vec()}))
        .collect();
    json!({
        "exact": r.exact,
        "failures": r.failures.len(),
        "margin_deg": r.margin_deg,
        "max_deg": r.max_deg,
        "min_deg": r.min_deg,
        "pass": r.is_acute(),
        "witnesses": failures,
    })
}

fn verify(doc: &MeshDocument, checks: &[Check], margin: Option<f64>, float: bool) -> Result<(Value, bool)> {
    let k = doc.complex()?;
    let mut out = serde_json::Map::new();
    let mut ok = true;
    for check in checks {
        let (name, v, pass) = match check {
            Check::Acute => {
                let e = doc.embedding3()?;
                let r = match (&e, float || margin.is_some()) {
                    (AnyEmbedding::Int(x), false) => verify_acute(&k, x, 0.0)?,
                    (AnyEmbedding::Rational(x), false) => verify_acute(&k, x, 0.0)?,
                    _ => verify_acute(&k, &e.to_f64(), margin.unwrap_or(0.0))?,
                };
                let pass = r.is_acute();
                ("acute", angle_json(&r), pass)
            }
            Check::Rich => match k.richness()? {
                acutri::complex::Richness::Rich => ("rich", json!({"pass": true}), true),
                acutri::complex::Richness::NotRich { simplex, link_length } => (
                    "rich",
                    json!({"link_length": link_length, "pass": false, "witness": simplex.to_vec()}),
                    false,
                ),
            },
            Check::Flag => match k.flag_witness() {
                None => ("flag", json!({"pass": true}), true),
                Some(s) => ("flag", json!({"pass": false, "missing_simplex": s.to_vec()}), false),
            },
            Check::NoSquare => match k.find_empty_square() {
                None => ("no_square", json!({"pass": true}), true),
                Some(sq) => ("no_square", json!({"pass": false, "square": sq}), false),
            },
            Check::Geometric => {
                let e = doc.embedding3()?;
                let r = match &e {
                    AnyEmbedding::Int(x) => verify_geometric_complex(&k, x)?,
                    AnyEmbedding::Rational(x) => verify_geometric_complex(&k, x)?,
                    AnyEmbedding::Float(x) => {
                        let z = exact_integer_embedding(x).context("non-finite coordinates")?;
                        verify_geometric_complex(&k, &z)?
                    }
                };
                let pass = r.is_ok();
                ("geometric", serde_json::to_value(&r)?.as_object().cloned().map_or(Value::Null, |mut m| {
                    m.insert("pass".into(), json!(pass));
                    Value::Object(m)
                }), pass)
            }
            Check::Ds => {
                let m = k.dim().context("empty complex")?;
                let r = dehn_sommerville(&k, m)?;
                let pass = r.holds();
                ("ds", json!({"dim": m, "pass": pass, "residuals": r.residuals}), pass)
            }
        };
        ok &= pass;
        out.insert(name.to_string(), v);
    }
    out.insert("pass".into(), json!(ok));
    Ok((Value::Object(out), ok))
}

fn stats(doc: &MeshDocument) -> Result<Value> {
    let k = doc.complex()?;
    let f = k.f_vector();
    let mut out = json!({
        "euler": k.euler_characteristic(),
        "f_vector": f.as_slice(),
        "name": doc.metadata.name,
    });
    if k.is_pure() {
        let b = k.boundary_complex()?.complex.f_vector();
        out["boundary_f_vector"] = json!(b.as_slice());
    }
    if k.dim() == Some(3) && k.is_pure() {
        if let Ok(e) = doc.embedding3() {
            let r = verify_acute(&k, &e.to_f64(), 0.0)?;
            out["angle_histogram_10deg"] = json!(r.histogram(10.0));
            out["min_deg"] = json!(r.min_deg);
            out["max_deg"] = json!(r.max_deg);
        }
    }
    Ok(out)
}

fn export(doc: &MeshDocument, format: Format, output: Option<&Path>) -> Result<()> {
    let k = doc.complex()?;
    match format {
        Format::Json => emit(output, &doc.to_json_string()?),
        Format::Off | Format::Vtk => {
            let e = doc.embedding3()?;
            if format == Format::Vtk {
                return emit(output, &write_vtk(&k, &e.to_f64(), &doc.metadata.name)?);
            }
            if k.dim() != Some(3) {
                bail!("OFF export needs a 3-complex");
            }
            let off = match &e {
                AnyEmbedding::Int(x) => write_off(&k, x)?,
                AnyEmbedding::Rational(x) => write_off(&k, x)?,
                AnyEmbedding::Float(x) => write_off(&k, x)?,
            };
            emit(output, &off)?;
            if let Some(p) = output {
                emit(Some(&p.with_extension("ele")), &write_ele(&k))?;
            }
            Ok(())
        }
    }
}

fn check_fvector(doc: &MeshDocument, dim: Option<usize>) -> Result<(Value, bool)> {
    let k = doc.complex()?;
    let m = match dim.or(k.dim()) {
        Some(m) => m,
        None => bail!("empty complex"),
    };
    let ds = dehn_sommerville(&k, m)?;
    let mut out = json!({
        "boundary_f_vector": ds.boundary_f.as_slice(),
        "dim": m,
        "ds_holds": ds.holds(),
        "ds_residuals": ds.residuals,
        "euler": k.euler_characteristic(),
        "f_vector": ds.f.as_slice(),
    });
    if m == 4 {
        let (a, b) = corollary_ds_4d(&k)?;
        out["corollary_residuals"] = json!([a, b]);
        let ob = richness_obstruction(&k)?;
        out["obstruction"] = serde_json::to_value(&ob)?;
    }
    Ok((out, ds.holds()))
}

fn optimize(config: &FlattenConfig, trace: Option<&Path>, output: Option<&Path>) -> Result<u8> {
    let run = run_flatten(config)?;
    if let Some(p) = trace {
        let mut w = csv::Writer::from_path(p).with_context(|| format!("writing {}", p.display()))?;
        for row in &run.trace {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    let k: &SimplicialComplex = &run.flattener.complex;
    let (doc, code) = match &run.outcome {
        FlattenOutcome::Converged { embedding } => {
            eprintln!(
                "converged: worst cosine {:.6} after {} trace rows",
                run.state.worst_cosine,
                run.trace.len()
            );
            let doc = MeshDocument::new(k, "x543-standard", "flattening homotopy, standard tetrahedron frame")
                .with_embedding(EmbeddingJson::from_f64(embedding));
            (doc, 0)
        }
        FlattenOutcome::Stalled { t, worst_cosine } => {
            eprintln!("stalled at t = {t:.4}, worst cosine {worst_cosine:.6}");
            let doc = MeshDocument::new(k, "x543-stalled", &format!("flattening homotopy stalled at t = {t}"))
                .with_embedding(EmbeddingJson::from_f64(&run.state.embedding));
            (doc, EXIT_STALLED)
        }
    };
    if let Some(p) = output {
        emit(Some(p), &doc.to_json_string()?)?;
    }
    Ok(code)
}

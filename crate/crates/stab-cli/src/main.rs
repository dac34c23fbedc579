//! `stab`: batch command-line surface over the exact stability engine.
//! Exit codes: 0 success, 1 domain error, 2 malformed input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use stab_core::model::SlopeRule;
use stab_core::*;

#[derive(Parser)]
#[command(name = "stab", version, about = "exact slope-stability and wall-crossing toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format (csv only where a tabular form exists)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate ambient data (and optionally a parameter point and a model)
    Validate {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Central charge of a class at a parameter point
    Charge {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Z- and P-slopes of a class
    Slope {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// All admissible classes with a given central charge
    EnumerateClasses {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        /// charge value as JSON, e.g. '{"re":"2","im":"-3"}'
        #[arg(long)]
        charge: String,
    },
    /// Harder-Narasimhan filtration of a model
    Hn {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// Jordan-Holder factor multiset of a semistable model
    Jh {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// Semistability/stability verdicts for a model or a catalog
    Stability {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// h^0 bounds and the generator slope-comparison constants
    Bounds {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// All walls for a total class meeting a parameter box
    Walls {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        class: String,
        #[arg(long = "box")]
        box_spec: String,
    },
    /// Whether two points lie in the same chamber of a wall list
    Chamber {
        #[arg(long)]
        ambient: String,
        /// wall list file as exported by `walls`
        #[arg(long)]
        walls: PathBuf,
        /// parameter point as inline JSON or a file path
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Wall-crossing report over a catalog
    Cross {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        p_minus: String,
        #[arg(long)]
        p_plus: String,
        #[arg(long)]
        p_zero: String,
    },
    /// Emit the built-in rank-2 scenario ambient
    Scenario,
    /// CSV sign grid of a wall over a 2-D slice of a box
    Slice {
        #[arg(long)]
        ambient: String,
        /// wall as JSON, e.g. '{"e":0,"xi":[0,1],"chi0":0,"beta0":[1,1]}'
        #[arg(long)]
        wall: String,
        /// box with exactly two non-degenerate coordinates
        #[arg(long = "box")]
        box_spec: String,
        /// samples per axis (N+1 grid points)
        #[arg(long, default_value_t = 8)]
        steps: u32,
    },
}

enum CliErr {
    Domain(Error),
    Input(String),
}

impl From<Error> for CliErr {
    fn from(e: Error) -> Self {
        CliErr::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliErr>;

fn input_err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliErr::Input(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli) {
        Ok(text) => {
            let payload = if text.ends_with('\n') { text } else { text + "\n" };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, payload) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{payload}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliErr::Domain(e)) => {
            if format == Format::Json {
                println!(
                    "{}",
                    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
        Err(CliErr::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliErr::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> CliResult<T> {
    serde_json::from_str(s).map_err(|e| CliErr::Input(format!("malformed {what}: {e}")))
}

fn load_ambient(spec: &str) -> CliResult<ValidatedAmbient> {
    if spec == "quintic" {
        return Ok(quintic_ambient());
    }
    let raw: AmbientData = parse_json("ambient document", &read_file(Path::new(spec))?)?;
    Ok(validate_ambient(raw)?)
}

fn load_params(path: &Path, amb: &ValidatedAmbient) -> CliResult<StabilityParameter> {
    let p: StabilityParameter = parse_json("parameter document", &read_file(path)?)?;
    p.validate(amb)?;
    Ok(p)
}

/// Inline JSON if it looks like JSON, otherwise a file path.
fn load_point(spec: &str, amb: &ValidatedAmbient) -> CliResult<StabilityParameter> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        read_file(Path::new(spec))?
    };
    let p: StabilityParameter = parse_json("parameter point", &text)?;
    p.validate(amb)?;
    Ok(p)
}

fn load_model(path: &Path) -> CliResult<ValidatedModel> {
    let doc: ObjectModel = parse_json("model document", &read_file(path)?)?;
    Ok(validate_model(&doc)?)
}

/// Every *.json in the directory, keyed by file stem.
fn load_catalog(dir: &Path) -> CliResult<BTreeMap<String, ValidatedModel>> {
    let mut out = BTreeMap::new();
    let entries = fs::read_dir(dir)
        .map_err(|e| CliErr::Input(format!("cannot read catalog {}: {e}", dir.display())))?;
    for entry in entries {
        let path = entry
            .map_err(|e| CliErr::Input(format!("catalog read error: {e}")))?
            .path();
        if path.extension().and_then(|x| x.to_str()) == Some("json") {
            let stem = path
                .file_stem()
                .and_then(|x| x.to_str())
                .unwrap_or("model")
                .to_string();
            out.insert(stem, load_model(&path)?);
        }
    }
    if out.is_empty() {
        return input_err(format!("catalog {} holds no .json models", dir.display()));
    }
    Ok(out)
}

fn parse_class(s: &str) -> CliResult<NumClass> {
    parse_json("class", s)
}

/// Box grammar: comma-separated `name=lo..hi` with rational endpoints.
/// Names are B<i>/J<i>/L<i>, with xB/xJ/xL as the scenario aliases;
/// unmentioned coordinates are pinned to 0.
fn parse_box(spec: &str, amb: &ValidatedAmbient) -> CliResult<ParameterBox> {
    let r = amb.rank();
    let zero = || vec![(Rat::zero(), Rat::zero()); r];
    let mut bx = ParameterBox {
        b: zero(),
        j: zero(),
        l: zero(),
    };
    for part in spec.split(',') {
        let part = part.trim();
        let Some((name, range)) = part.split_once('=') else {
            return input_err(format!("box entry `{part}` is not name=lo..hi"));
        };
        let Some((lo, hi)) = range.split_once("..") else {
            return input_err(format!("box range `{range}` is not lo..hi"));
        };
        let lo: Rat = lo
            .trim()
            .parse()
            .map_err(|e| CliErr::Input(format!("box endpoint: {e}")))?;
        let hi: Rat = hi
            .trim()
            .parse()
            .map_err(|e| CliErr::Input(format!("box endpoint: {e}")))?;
        let (vec_name, index) = match name.trim() {
            "xB" => ("B", 1usize),
            "xJ" => ("J", 1),
            "xL" => ("L", 0),
            other => {
                let (head, idx) = other.split_at(1);
                let index: usize = idx
                    .parse()
                    .map_err(|_| CliErr::Input(format!("unknown box coordinate `{other}`")))?;
                (
                    match head {
                        "B" => "B",
                        "J" => "J",
                        "L" => "L",
                        _ => return input_err(format!("unknown box coordinate `{other}`")),
                    },
                    index,
                )
            }
        };
        let target = match vec_name {
            "B" => &mut bx.b,
            "J" => &mut bx.j,
            _ => &mut bx.l,
        };
        if index >= r {
            return input_err(format!("box coordinate {name} out of range for rank {r}"));
        }
        target[index] = (lo, hi);
    }
    Ok(bx)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn run(cli: Cli) -> CliResult<String> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Validate {
            ambient,
            params,
            model,
        } => {
            let amb = load_ambient(&ambient)?;
            if let Some(p) = params {
                load_params(&p, &amb)?;
            }
            if let Some(m) = model {
                load_model(&m)?;
            }
            Ok(match format {
                Format::Json => json!({"ok": true}).to_string(),
                _ => "ok".to_string(),
            })
        }
        Cmd::Charge {
            ambient,
            params,
            class,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let n = parse_class(&class)?;
            let z = central_charge(&amb, &p, &n);
            Ok(match format {
                Format::Json => to_json(&z),
                _ => z.to_string(),
            })
        }
        Cmd::Slope {
            ambient,
            params,
            class,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let n = parse_class(&class)?;
            let mu_z = z_slope(&amb, &p, &n)?;
            let mu_p = p_slope(&amb, &n)?;
            Ok(match format {
                Format::Json => json!({"mu_z": mu_z.to_string(), "mu_p": mu_p.to_string()}).to_string(),
                _ => format!("mu_z = {mu_z}\nmu_p = {mu_p}"),
            })
        }
        Cmd::EnumerateClasses {
            ambient,
            params,
            charge,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let c: ChargeValue = parse_json("charge", &charge)?;
            let classes = enumerate_classes_with_charge(&amb, &p, &c)?;
            Ok(match format {
                Format::Csv => {
                    let mut rows = vec!["chi,beta".to_string()];
                    for n in &classes {
                        let beta = n
                            .beta
                            .coeffs
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ");
                        rows.push(format!("{},{}", n.chi, beta));
                    }
                    rows.join("\n")
                }
                _ => to_json(&classes),
            })
        }
        Cmd::Hn {
            ambient,
            params,
            model,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let m = load_model(&model)?;
            let rule = SlopeRule::Z {
                ambient: &amb,
                param: &p,
            };
            Ok(to_json(&hn_filtration(&m, &rule)?))
        }
        Cmd::Jh {
            ambient,
            params,
            model,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let m = load_model(&model)?;
            let rule = SlopeRule::Z {
                ambient: &amb,
                param: &p,
            };
            Ok(to_json(&jh_filtration(&m, &rule)?))
        }
        Cmd::Stability {
            ambient,
            params,
            model,
            catalog,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let rule = SlopeRule::Z {
                ambient: &amb,
                param: &p,
            };
            let mut models = BTreeMap::new();
            if let Some(path) = model {
                models.insert(
                    path.file_stem()
                        .and_then(|x| x.to_str())
                        .unwrap_or("model")
                        .to_string(),
                    load_model(&path)?,
                );
            }
            if let Some(dir) = catalog {
                models.extend(load_catalog(&dir)?);
            }
            if models.is_empty() {
                return input_err("stability requires --model or --catalog");
            }
            #[derive(Serialize)]
            struct Entry {
                semistable: Verdict,
                stable: Verdict,
            }
            let mut report = BTreeMap::new();
            for (id, m) in &models {
                report.insert(
                    id.clone(),
                    Entry {
                        semistable: semistability(m, &rule, false)?,
                        stable: semistability(m, &rule, true)?,
                    },
                );
            }
            Ok(match format {
                Format::Text => report
                    .iter()
                    .map(|(id, e)| {
                        format!(
                            "{id}: semistable={} stable={}{}",
                            e.semistable.ok,
                            e.stable.ok,
                            e.semistable
                                .witness
                                .as_deref()
                                .map(|w| format!(" (destabilized by {w})"))
                                .unwrap_or_default()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ => to_json(&report),
            })
        }
        Cmd::Bounds {
            ambient,
            params,
            model,
        } => {
            let amb = load_ambient(&ambient)?;
            let p = load_params(&params, &amb)?;
            let m = load_model(&model)?;
            let p_bound = h0_bound_p(&m, &amb)?;
            let c = central_charge(&amb, &p, m.top_class());
            let rule = SlopeRule::Z {
                ambient: &amb,
                param: &p,
            };
            let z_bound = if is_semistable(&m, &rule)? && c.im.is_negative() {
                Some(h0_bound_z(&m, &amb, &p, &c)?)
            } else {
                None
            };
            let slope_bounds = slope_comparison_bounds(&amb, &p);
            Ok(to_json(&json!({
                "h0_bound_p": p_bound,
                "h0_bound_z": z_bound,
                "slope_bounds": slope_bounds,
            })))
        }
        Cmd::Walls {
            ambient,
            class,
            box_spec,
        } => {
            let amb = load_ambient(&ambient)?;
            let total = parse_class(&class)?;
            let bx = parse_box(&box_spec, &amb)?;
            let walls = enumerate_walls_in_box(&amb, &total, &bx)?;
            Ok(match format {
                Format::Csv => {
                    let mut rows = vec!["e,xi,chi0,beta0".to_string()];
                    for w in &walls {
                        let fmt = |c: &EffectiveClass| {
                            c.coeffs
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        };
                        rows.push(format!("{},{},{},{}", w.e, fmt(&w.xi), w.chi0, fmt(&w.beta0)));
                    }
                    rows.join("\n")
                }
                _ => to_json(&walls),
            })
        }
        Cmd::Chamber {
            ambient,
            walls,
            p1,
            p2,
        } => {
            let amb = load_ambient(&ambient)?;
            let walls: Vec<WallSpec> = parse_json("wall list", &read_file(&walls)?)?;
            for w in &walls {
                // re-ingested walls must satisfy the datum range
                WallSpec::new(w.chi0, w.beta0.clone(), w.e, w.xi.clone())?;
            }
            let a = load_point(&p1, &amb)?;
            let b = load_point(&p2, &amb)?;
            let same = same_chamber(&amb, &walls, &a, &b)?;
            Ok(match format {
                Format::Json => json!({"same_chamber": same}).to_string(),
                _ => format!("same chamber: {same}"),
            })
        }
        Cmd::Cross {
            ambient,
            catalog,
            p_minus,
            p_plus,
            p_zero,
        } => {
            let amb = load_ambient(&ambient)?;
            let catalog = load_catalog(&catalog)?;
            let named: Vec<(&str, &ValidatedModel)> =
                catalog.iter().map(|(k, v)| (k.as_str(), v)).collect();
            let pm = load_point(&p_minus, &amb)?;
            let pp = load_point(&p_plus, &amb)?;
            let pz = load_point(&p_zero, &amb)?;
            Ok(to_json(&crossing_report(&amb, &named, &pm, &pp, &pz)?))
        }
        Cmd::Scenario => Ok(to_json(&quintic_ambient_data())),
        Cmd::Slice {
            ambient,
            wall,
            box_spec,
            steps,
        } => {
            let amb = load_ambient(&ambient)?;
            let w: WallSpec = parse_json("wall", &wall)?;
            let w = WallSpec::new(w.chi0, w.beta0, w.e, w.xi)?;
            let bx = parse_box(&box_spec, &amb)?;
            bx.validate(&amb)?;
            if steps == 0 {
                return input_err("--steps must be positive");
            }
            slice_grid(&amb, &w, &bx, steps)
        }
    }
}

/// CSV grid of wall signs over the two non-degenerate box coordinates.
fn slice_grid(
    amb: &ValidatedAmbient,
    w: &WallSpec,
    bx: &ParameterBox,
    steps: u32,
) -> CliResult<String> {
    // locate the two varying coordinates in (B, J, L) order
    let mut axes: Vec<(usize, usize, Rat, Rat, String)> = Vec::new();
    for (block, name, v) in [(0usize, "B", &bx.b), (1, "J", &bx.j), (2, "L", &bx.l)] {
        for (i, (lo, hi)) in v.iter().enumerate() {
            if lo != hi {
                axes.push((block, i, lo.clone(), hi.clone(), format!("{name}{i}")));
            }
        }
    }
    if axes.len() != 2 {
        return input_err(format!(
            "slice needs exactly 2 varying coordinates, found {}",
            axes.len()
        ));
    }
    let sample = |axis: &(usize, usize, Rat, Rat, String), k: u32| -> Rat {
        let t = Rat::new(k as i64, steps as i64);
        &axis.2 + &(t * (&axis.3 - &axis.2))
    };
    let base = ParameterPoint {
        b: bx.b.iter().map(|(lo, _)| lo.clone()).collect(),
        j: bx.j.iter().map(|(lo, _)| lo.clone()).collect(),
        l: bx.l.iter().map(|(lo, _)| lo.clone()).collect(),
    };
    let (x_axis, y_axis) = (&axes[0], &axes[1]);
    let mut rows = Vec::new();
    let mut header = vec![format!("{}\\{}", y_axis.4, x_axis.4)];
    header.extend((0..=steps).map(|k| sample(x_axis, k).to_string()));
    rows.push(header.join(","));
    for ky in 0..=steps {
        let yv = sample(y_axis, ky);
        let mut row = vec![yv.to_string()];
        for kx in 0..=steps {
            let xv = sample(x_axis, kx);
            let mut pt = base.clone();
            let set = |pt: &mut ParameterPoint, block: usize, i: usize, v: Rat| match block {
                0 => pt.b[i] = v,
                1 => pt.j[i] = v,
                _ => pt.l[i] = v,
            };
            set(&mut pt, x_axis.0, x_axis.1, xv);
            set(&mut pt, y_axis.0, y_axis.1, yv.clone());
            row.push(wall_sign(amb, w, &pt).to_string());
        }
        rows.push(row.join(","));
    }
    Ok(rows.join("\n"))
}

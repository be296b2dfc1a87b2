mod knots;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;
use slicekit::diagram::{bennequin, mirror, rudolph_bennequin, seifert_matrix, Diagram};
use slicekit::forms::{
    find_metabolizer, isotropic_cone, jordan_splitting, largest_cone_subgroup,
    livingston_naik_applies, primes_of, trivial_cone_classify, trivial_cone_sweep,
    witt_class_mod_p, LinkingForm, DEFAULT_BOUND,
};
use slicekit::pipeline::{analyze_sum, batch, indirect_rb, AnalyzeConfig, IndirectRbQuery};
use slicekit::polynomials::{
    determinant_of, factor_over_z, milnor_fox, normalize_alexander, unit_circle_roots, LaurentPoly,
};
use slicekit::signatures::{alexander_from_seifert, murasugi_signature, tristram_levine_function};
use slicekit::skeinpoly::{alexander_from_homfly, delta_p, homfly, l_span};

use knots::KnotSource;
use render::{Format, Output};

#[derive(Parser)]
#[command(name = "slicekit", version, about = "Sliceness obstructions for knots")]
struct Cli {
    /// Largest group order enumerated by cone and metabolizer searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND, value_name = "N")]
    bound: u64,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (reports only).
    #[arg(long, global = true)]
    csv: bool,
    /// Read named knots from the `*.txt` knot lists in DIR instead of the bundled tables.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze every record of a knot-list file (`name<TAB>pd:...`, `dt:...` or `2bridge:p/q`).
    Analyze { file: PathBuf },
    /// Analyze the connected sum of named knots (`!name` for a mirror image).
    Sum {
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Invariants of a linking form given as `group=[d1,...] gram=[[n/d,...],...]`.
    Form {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        literal: Vec<String>,
    },
    /// Isotropic cone and its largest subgroup.
    Cone {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        literal: Vec<String>,
    },
    /// Search for a metabolizer.
    Metabolizer {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        literal: Vec<String>,
    },
    /// Skein polynomial, its l-degrees and the Morton bound.
    Homfly { name: String },
    /// Bennequin and Rudolph-Bennequin numbers of a diagram and its mirror.
    Rb { name: String },
    /// Tristram-Levine signature function as arcs with constant value.
    Signature { name: String },
    /// Milnor-Fox factorization test for an Alexander polynomial such as "(1 [-3] 1)".
    MilnorFox {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// 4-genus bound from a crossing change: base knot, crossing index, diagram of the switched knot.
    IndirectRb {
        base: String,
        crossing: usize,
        neighbor: String,
    },
    /// Check the trivial-cone classification on all groups without 4k+3 torsion up to an order.
    ClassifyTrivialCone {
        #[arg(value_name = "BOUND")]
        max_order: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    match run(cli).and_then(|out| out.write(format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn form_arg(parts: &[String]) -> Result<LinkingForm> {
    let text = parts.join(" ");
    text.parse()
        .with_context(|| format!("parsing form {text:?}"))
}

fn run(cli: Cli) -> Result<Output> {
    let config = AnalyzeConfig { bound: cli.bound };
    let source = || KnotSource::new(cli.fixtures.as_deref());
    match &cli.command {
        Command::Analyze { file } => {
            let text =
                fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let (entries, summary) = batch(&text, &config);
            Ok(Output::Batch { entries, summary })
        }
        Command::Sum { names } => {
            let src = source()?;
            let ds = names
                .iter()
                .map(|n| src.resolve(n))
                .collect::<Result<Vec<_>>>()?;
            let mut report = analyze_sum(&ds, &config)?;
            report.name = names.join("#");
            Ok(Output::Report(Box::new(report)))
        }
        Command::Form { literal } => form(&form_arg(literal)?),
        Command::Cone { literal } => cone(&form_arg(literal)?, cli.bound),
        Command::Metabolizer { literal } => {
            let f = form_arg(literal)?;
            let m = find_metabolizer(&f, cli.bound)?;
            let text = match &m {
                Some(m) => format!(
                    "metabolizer: order {}\ngenerators: {}\n",
                    m.order,
                    render::elements(&m.generators)
                ),
                None => "metabolizer: none\n".to_string(),
            };
            Ok(Output::Plain {
                text,
                json: json!({ "form": f, "metabolizer": m }),
            })
        }
        Command::Homfly { name } => {
            let d = source()?.resolve(name)?;
            skein(&d)
        }
        Command::Rb { name } => {
            let d = source()?.resolve(name)?;
            rb(&d)
        }
        Command::Signature { name } => {
            let d = source()?.resolve(name)?;
            signature(&d)
        }
        Command::MilnorFox { poly } => milnor_fox_cmd(poly),
        Command::IndirectRb {
            base,
            crossing,
            neighbor,
        } => {
            let src = source()?;
            let q = IndirectRbQuery {
                base: src.resolve(base)?,
                crossing_to_switch: *crossing,
                neighbor_diagram: src.resolve(neighbor)?,
            };
            let r = indirect_rb(&q)?;
            let rb = r
                .neighbor_rb
                .map_or("inapplicable".to_string(), |v| v.to_string());
            let conclusion = if r.not_smoothly_slice() {
                format!("{base} is not smoothly slice")
            } else {
                "inconclusive".to_string()
            };
            Ok(Output::Plain {
                text: format!(
                    "neighbor rb: {rb}\n4-genus lower bound: {}\nconclusion: {conclusion}\n",
                    r.bound
                ),
                json: json!({
                    "base": base,
                    "crossing": crossing,
                    "neighbor": neighbor,
                    "neighbor_rb": r.neighbor_rb,
                    "bound": r.bound,
                    "not_smoothly_slice": r.not_smoothly_slice(),
                }),
            })
        }
        Command::ClassifyTrivialCone { max_order } => {
            let s = trivial_cone_sweep(*max_order);
            let mut text = format!(
                "groups: {}\nforms checked: {}\ndegenerate skipped: {}\ntrivial cones: {}\ndisagreements: {}\n",
                s.groups,
                s.forms_checked,
                s.degenerate_skipped,
                s.trivial_cones,
                s.disagreements.len()
            );
            for d in &s.disagreements {
                text.push_str(&format!("  {d}\n"));
            }
            let out = Output::Plain {
                text,
                json: serde_json::to_value(&s)?,
            };
            Ok(if s.disagreements.is_empty() {
                out
            } else {
                Output::Failed(
                    Box::new(out),
                    "classification disagrees with enumeration".into(),
                )
            })
        }
    }
}

fn form(f: &LinkingForm) -> Result<Output> {
    let nondegenerate = f.is_nondegenerate();
    let mut witt = Vec::new();
    let mut jordan = Vec::new();
    if nondegenerate {
        for p in primes_of(f) {
            witt.push(json!({ "p": p, "class": witt_class_mod_p(f, p)? }));
            let blocks: Vec<String> = jordan_splitting(f, p)?
                .into_iter()
                .map(|(v, a)| format!("<{a}/{p}^{v}>"))
                .collect();
            jordan.push(json!({ "p": p, "summands": blocks }));
        }
    }
    let ln = livingston_naik_applies(f.orders());
    let classification = nondegenerate.then(|| trivial_cone_classify(f));
    let mut text = format!(
        "form: {f}\norder: {}\nexponent: {}\nnondegenerate: {nondegenerate}\n",
        f.order().map_or("overflow".into(), |n| n.to_string()),
        f.exponent()
    );
    for (w, j) in witt.iter().zip(&jordan) {
        text.push_str(&format!(
            "p = {}: witt class {}, jordan {}\n",
            w["p"], w["class"], j["summands"]
        ));
    }
    text.push_str(&match ln {
        Some(p) => format!("livingston_naik: applies (p = {p})\n"),
        None => "livingston_naik: does not apply\n".to_string(),
    });
    if let Some(c) = &classification {
        text.push_str(&format!(
            "trivial cone classification: {}\n",
            serde_json::to_string(c)?
        ));
    }
    Ok(Output::Plain {
        text,
        json: json!({
            "form": f,
            "orders": f.orders(),
            "order": f.order(),
            "exponent": f.exponent(),
            "nondegenerate": nondegenerate,
            "witt": witt,
            "jordan": jordan,
            "livingston_naik": ln,
            "trivial_cone_classification": classification,
        }),
    })
}

fn cone(f: &LinkingForm, bound: u64) -> Result<Output> {
    let cone = isotropic_cone(f, bound, true)?;
    let largest = largest_cone_subgroup(f, bound)?;
    let elements = cone.elements.unwrap_or_default();
    let text = format!(
        "form: {f}\ncone size: {}\ncone: {}\nlargest cone subgroup: order {} generators {}\ncone case: {}\n",
        cone.size,
        render::elements(&elements),
        largest.order,
        render::elements(&largest.witness.generators),
        largest.case
    );
    Ok(Output::Plain {
        text,
        json: json!({
            "form": f,
            "cone_size": cone.size,
            "cone": elements,
            "largest_subgroup": largest.witness,
            "theorem1_case": largest.case,
        }),
    })
}

fn skein(d: &Diagram) -> Result<Output> {
    let p = homfly(d)?;
    let (lo, hi) = l_span(&p)?;
    let delta = delta_p(&p)?;
    let alexander = alexander_from_homfly(&p)?;
    let b = bennequin(d);
    let morton = 2 * b <= lo;
    let text = format!(
        "homfly: {p}\nl-degrees: {lo}..{hi}\ndelta: {delta}\nalexander: {alexander}\nbennequin: {b}\nmorton bound w - s + 1 <= mindeg_l: {morton}\n"
    );
    Ok(Output::Plain {
        text,
        json: json!({
            "name": d.name(),
            "homfly": p,
            "l_min": lo,
            "l_max": hi,
            "delta": delta,
            "alexander": alexander,
            "bennequin": b,
            "morton_bound_holds": morton,
        }),
    })
}

fn rb(d: &Diagram) -> Result<Output> {
    let entry = |d: &Diagram| {
        let s = d.seifert_data();
        let rb = rudolph_bennequin(d);
        json!({
            "crossings": d.crossing_count(),
            "writhe": s.writhe,
            "seifert_circles": s.count(),
            "negative_circles": s.negative_count(),
            "b": bennequin(d),
            "rb": rb.as_ref().ok(),
            "rb_inapplicable": rb.as_ref().err().map(|e| e.to_string()),
        })
    };
    let (plain, mirrored) = (entry(d), entry(&mirror(d)));
    let line = |label: &str, v: &serde_json::Value| {
        let rb = if v["rb"].is_null() {
            format!(
                "inapplicable ({})",
                v["rb_inapplicable"].as_str().unwrap_or("")
            )
        } else {
            v["rb"].to_string()
        };
        format!(
            "{label}: w = {}, s = {}, s- = {}, b = {}, rb = {rb}\n",
            v["writhe"], v["seifert_circles"], v["negative_circles"], v["b"]
        )
    };
    let text = line("diagram", &plain) + &line("mirror", &mirrored);
    Ok(Output::Plain {
        text,
        json: json!({ "name": d.name(), "diagram": plain, "mirror": mirrored }),
    })
}

fn signature(d: &Diagram) -> Result<Output> {
    let v = seifert_matrix(d)?;
    let delta = alexander_from_seifert(&v)?;
    let sigma = murasugi_signature(&v)?;
    let f = tristram_levine_function(&v, &delta)?;
    let mut text = format!("alexander: {delta}\nsignature: {sigma}\narcs (z = 2cos θ):\n");
    for p in &f.plateaus {
        let (a, b) = p.angles();
        text.push_str(&format!(
            "  z in ({}, {})  θ in ({a:.3}°, {b:.3}°): {}\n",
            p.z_lo, p.z_hi, p.value
        ));
    }
    for r in &f.jump_angles {
        let (a, b) = r.angle_degrees();
        text.push_str(&format!(
            "  jump at z in [{}, {}]  θ in [{a:.3}°, {b:.3}°], multiplicity {}\n",
            r.z_lo, r.z_hi, r.multiplicity
        ));
    }
    Ok(Output::Plain {
        text,
        json: json!({
            "name": d.name(),
            "alexander": delta,
            "signature": sigma,
            "function": f,
        }),
    })
}

fn milnor_fox_cmd(literal: &str) -> Result<Output> {
    let p: LaurentPoly = literal.parse()?;
    let delta = normalize_alexander(&p)?;
    let det = determinant_of(&delta);
    let fac = factor_over_z(&delta)?;
    let f = milnor_fox(&delta)?;
    let roots = unit_circle_roots(&delta)?;
    let factors: Vec<String> = fac
        .factors
        .iter()
        .map(|(g, m)| {
            if *m == 1 {
                g.to_string()
            } else {
                format!("{g}^{m}")
            }
        })
        .collect();
    let on_circle: u32 = roots
        .iter()
        .map(|r| r.circle_count() * r.multiplicity)
        .sum();
    let text = format!(
        "alexander: {delta}\ndeterminant: {det}\nfactors: {}\nmilnor_fox: {}\nunit circle roots: {on_circle}\n",
        factors.join(" "),
        f.as_ref().map_or("none".to_string(), |f| f.to_string()),
    );
    Ok(Output::Plain {
        text,
        json: json!({
            "alexander": delta,
            "determinant": det.to_string(),
            "factors": factors,
            "milnor_fox": f,
            "unit_circle_roots": roots,
        }),
    })
}

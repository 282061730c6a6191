//! Command-line front end: every certificate is reachable as a subcommand,
//! with human-readable text or canonical JSON output.
//!
//! Points are printed as comma-separated GF(3) digits of their canonical
//! coordinates, one point per line; blocks are sorted index lists into the
//! emitted point order. Exit status is 0 exactly when every requested
//! certificate passes.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automorphisms::AutGroup;
use crate::cert::{self, Certificate};
use crate::design::extract_blocks;
use crate::projgeom::Hyperplane;
use crate::veronese::{construct_model, VeroneseConfig, WittModel};
use crate::gf::GF3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "witt12",
    about = "Exact construction and certification of the 12-point model of Witt's 5-(12,6,1) design in PG(5,3)",
    version
)]
pub struct Cli {
    /// Dual coordinates of the line at infinity in PG(2,3), e.g. 1,0,0
    #[arg(long, global = true, default_value = "1,0,0")]
    pub linf: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the 12 points of the model
    Construct,
    /// Hyperplane section histogram of the model or the surface
    Spectrum {
        #[arg(long, value_enum, default_value_t = SpectrumTarget::Model)]
        target: SpectrumTarget,
    },
    /// Run certificate groups
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// The block automorphism group
    Aut {
        /// Print only the group order
        #[arg(long)]
        order_only: bool,
    },
    /// Code certificates
    Codes {
        #[command(subcommand)]
        which: CodesWhich,
    },
    /// Projection certificates
    Project {
        #[command(subcommand)]
        which: ProjectWhich,
    },
    /// Classify all 132 blocks into the four affine shapes
    ClassifyBlocks,
    /// Construct the model and run the full certificate suite
    Report,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpectrumTarget {
    Model,
    Surface,
}

#[derive(Debug, Subcommand)]
pub enum VerifyWhat {
    /// The 5-(12,6,1) design on the six-point sections
    Design,
    /// The equivalence of the two spectrum characterizations
    Lemma2,
    /// The reverse construction onto the surface
    Theorem3,
    /// Unique collineation lifts and 5-point transports
    Theorem4,
    /// Every certificate
    All,
}

#[derive(Debug, Subcommand)]
pub enum CodesWhich {
    /// The extended ternary Golay code from the twelve points
    Golay,
    /// The [13,6,6] code from the surface
    VeroneseC,
    /// The line/difference/complement codes of PG(2,p)
    Planes,
    /// Hyperplane code and characteristic-vector identities
    Identities,
}

#[derive(Debug, Subcommand)]
pub enum ProjectWhich {
    /// Through each model point: 11-caps
    Point,
    /// Through each bisecant: elliptic quadrics
    Bisecant,
    /// Through the triangle plane: the identity affinity
    Triangle,
}

fn parse_infinity_line(s: &str) -> Result<VeroneseConfig, String> {
    let digits: Result<Vec<u8>, _> = s.split(',').map(|d| d.trim().parse::<u8>()).collect();
    let digits = digits.map_err(|e| format!("bad --linf value {s:?}: {e}"))?;
    if digits.len() != 3 {
        return Err(format!("--linf needs 3 comma-separated digits, got {}", digits.len()));
    }
    let line = Hyperplane::new(GF3, &digits).map_err(|e| format!("bad --linf value: {e}"))?;
    VeroneseConfig::new(line).map_err(|e| e.to_string())
}

fn point_lines(points: &[crate::projgeom::ProjPoint]) -> String {
    points
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_certificates(certs: &[Certificate], format: Format, out: &mut String) -> bool {
    let all_pass = certs.iter().all(Certificate::passed);
    match format {
        Format::Json => {
            let value = json!({
                "certificates": certs.iter().map(Certificate::to_json).collect::<Vec<_>>(),
                "pass": all_pass,
            });
            out.push_str(&serde_json::to_string_pretty(&value).expect("valid json"));
            out.push('\n');
        }
        Format::Text => {
            for cert in certs {
                let status = if cert.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!("{status} {:<22} {}\n", cert.claim, cert.anchor));
                if !cert.passed() {
                    out.push_str(&format!(
                        "     evidence: {}\n",
                        serde_json::to_string(&cert.data).expect("valid json")
                    ));
                }
            }
            let summary = if all_pass { "all certificates pass" } else { "FAILURES PRESENT" };
            out.push_str(&format!("{} of {} certificates pass: {summary}\n",
                certs.iter().filter(|c| c.passed()).count(),
                certs.len(),
            ));
        }
    }
    all_pass
}

fn construct_output(model: &WittModel, format: Format, out: &mut String) {
    match format {
        Format::Text => {
            out.push_str(&point_lines(model.points()));
            out.push('\n');
        }
        Format::Json => {
            let cert = cert::construct_certificate(model);
            out.push_str(&serde_json::to_string_pretty(&cert.to_json()).expect("valid json"));
            out.push('\n');
        }
    }
}

/// Run the CLI on the given arguments, returning (exit code, stdout,
/// stderr). The binary is a thin wrapper around this.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/usage itself; help requests exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (0, rendered, String::new())
            } else {
                (2, String::new(), rendered)
            };
        }
    };
    let cfg = match parse_infinity_line(&cli.linf) {
        Ok(cfg) => cfg,
        Err(msg) => return (2, String::new(), format!("error: {msg}\n")),
    };
    let model = construct_model(&cfg);
    let mut out = String::new();
    let mut all_pass = true;

    match cli.command {
        Command::Construct => construct_output(&model, cli.format, &mut out),
        Command::Spectrum { target } => {
            let surface = matches!(target, SpectrumTarget::Surface);
            let cert = cert::spectrum_certificate(&model, surface);
            all_pass = render_certificates(&[cert], cli.format, &mut out);
        }
        Command::Verify { what } => {
            let certs = match what {
                VerifyWhat::Design => {
                    vec![cert::design_certificate(&model), cert::derived_certificate(&model)]
                }
                VerifyWhat::Lemma2 => vec![cert::lemma2_certificate(&model)],
                VerifyWhat::Theorem3 => vec![cert::theorem3_certificate(&model)],
                VerifyWhat::Theorem4 => {
                    let group = AutGroup::compute(&extract_blocks(&model));
                    vec![
                        cert::aut_certificate(&group),
                        cert::theorem4_certificate(&model, &group),
                    ]
                }
                VerifyWhat::All => cert::verify_all(&model),
            };
            all_pass = render_certificates(&certs, cli.format, &mut out);
        }
        Command::Aut { order_only } => {
            let group = AutGroup::compute(&extract_blocks(&model));
            if order_only {
                match cli.format {
                    Format::Text => out.push_str(&format!("{}\n", group.order())),
                    Format::Json => {
                        out.push_str(
                            &serde_json::to_string_pretty(&json!({"order": group.order()}))
                                .expect("valid json"),
                        );
                        out.push('\n');
                    }
                }
                all_pass = group.order() == 95040;
            } else {
                let cert = cert::aut_certificate(&group);
                all_pass = render_certificates(&[cert], cli.format, &mut out);
            }
        }
        Command::Codes { which } => {
            let cert = match which {
                CodesWhich::Golay => cert::codes_golay_certificate(&model),
                CodesWhich::VeroneseC => cert::codes_veronese_certificate(),
                CodesWhich::Planes => cert::codes_planes_certificate(),
                CodesWhich::Identities => cert::codes_identities_certificate(),
            };
            all_pass = render_certificates(&[cert], cli.format, &mut out);
        }
        Command::Project { which } => {
            let cert = match which {
                ProjectWhich::Point => cert::project_point_certificate(&model),
                ProjectWhich::Bisecant => cert::project_bisecant_certificate(&model),
                ProjectWhich::Triangle => cert::project_triangle_certificate(&model),
            };
            all_pass = render_certificates(&[cert], cli.format, &mut out);
        }
        Command::ClassifyBlocks => {
            let cert = cert::lueneburg_certificate(&model);
            match cli.format {
                Format::Text => {
                    // the per-block listing, then the certificate line
                    let design = extract_blocks(&model);
                    if let Ok((classified, _)) =
                        crate::projections::classify_all_blocks(&model, &design)
                    {
                        for (block, class) in design.blocks.iter().zip(&classified) {
                            out.push_str(&format!(
                                "{:?} {}\n",
                                block,
                                class.shape
                            ));
                        }
                    }
                    all_pass = render_certificates(&[cert], cli.format, &mut out);
                }
                Format::Json => {
                    all_pass = render_certificates(&[cert], cli.format, &mut out);
                }
            }
        }
        Command::Report => {
            let certs = cert::verify_all(&model);
            match cli.format {
                Format::Text => {
                    out.push_str("model points:\n");
                    out.push_str(&point_lines(model.points()));
                    out.push('\n');
                    all_pass = render_certificates(&certs, cli.format, &mut out);
                }
                Format::Json => {
                    let value = json!({
                        "certificates": certs.iter().map(Certificate::to_json).collect::<Vec<_>>(),
                        "model": cert::construct_certificate(&model).to_json(),
                        "pass": certs.iter().all(Certificate::passed),
                    });
                    out.push_str(&serde_json::to_string_pretty(&value).expect("valid json"));
                    out.push('\n');
                    all_pass = certs.iter().all(Certificate::passed);
                }
            }
        }
    }
    (if all_pass { 0 } else { 1 }, out, String::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        run(std::iter::once("witt12").chain(args.iter().copied()))
    }

    #[test]
    fn construct_emits_twelve_point_rows() {
        let (code, out, _) = run_args(&["construct"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.trim().lines().collect();
        assert_eq!(lines.len(), 12);
        assert!(lines.contains(&"0,0,0,1,0,1"));
        for line in lines {
            assert_eq!(line.split(',').count(), 6);
        }
    }

    #[test]
    fn construct_json_has_sorted_keys() {
        let (code, out, _) = run_args(&["construct", "--format", "json"]);
        assert_eq!(code, 0);
        let value: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["data"]["points"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn unknown_subcommand_fails_with_usage() {
        let (code, _, err) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage") || err.contains("error"));
    }

    #[test]
    fn bad_infinity_line_is_rejected() {
        let (code, _, err) = run_args(&["construct", "--linf", "0,0,0"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }

    #[test]
    fn spectrum_subcommand_passes() {
        let (code, out, _) = run_args(&["spectrum"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS"));
    }

    #[test]
    fn alternate_infinity_line_still_constructs() {
        let (code, out, _) = run_args(&["construct", "--linf", "0,1,2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim().lines().count(), 12);
    }
}

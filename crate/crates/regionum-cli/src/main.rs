use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod ingest;
mod report;

use regionum::diagram::{self, Diagram};
use regionum::goeritz;
use regionum::invariants;
use regionum::region_algebra;
use regionum::search::{self, SearchConfig, UnknotCache};
use regionum::snf;

#[derive(Parser)]
#[command(name = "regionum", version, about = "Region crossing changes, Goeritz invariants, and the multi-region index of knot diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Region id to treat as the unbounded face.
    #[arg(long, global = true)]
    outer_region: Option<usize>,

    /// Crossing cap for the exponential-cost stages.
    #[arg(long, global = true, default_value_t = regionum::DEFAULT_CROSSING_CAP)]
    cap: usize,

    /// Disable the |T| >= best-cost pruning cut in the search.
    #[arg(long, global = true)]
    no_prune: bool,

    /// JSON-lines unknot-certificate cache file.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for the search target partitioning.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Clone)]
struct PdInput {
    /// PD code, e.g. "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"; read from stdin if
    /// omitted.
    #[arg(long)]
    pd: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the regions of a diagram with their costs and corners.
    Regions(PdInput),
    /// Checkerboard-shade a diagram.
    Shade(PdInput),
    /// Apply region crossing changes and print the resulting PD code.
    Rcc {
        #[command(flatten)]
        pd: PdInput,
        /// Comma-separated region ids.
        #[arg(long, value_delimiter = ',', required = true)]
        regions: Vec<usize>,
    },
    /// Pre-Goeritz and Goeritz matrices with zeta indices.
    Goeritz(PdInput),
    /// Smith normal form of an integer matrix.
    Snf {
        /// Row-major JSON matrix, e.g. "[[2,-1],[-1,2]]".
        #[arg(long)]
        matrix: String,
    },
    /// Minimum generator count of the double branched cover homology.
    Mg2(PdInput),
    /// Knot determinant |det G_D|.
    Det(PdInput),
    /// Normalized bracket polynomial f(D).
    Jones(PdInput),
    /// Layered unknot certificate.
    Unknot(PdInput),
    /// Multi-region index MRI(D) with witness.
    Mri(PdInput),
    /// Region index Reg(D).
    Reg(PdInput),
    /// Theorem-derived bound brackets for a CSV knot table.
    Bounds {
        #[arg(long)]
        csv: PathBuf,
    },
    /// Batch verification of the theorem suite over a CSV knot table.
    Verify {
        #[arg(long)]
        csv: PathBuf,
    },
    /// Generate standard diagram families.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Standard (2, 2k+1)-torus diagram.
    Torus {
        #[arg(long)]
        k: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<(), AnyError> {
    let g = &cli.global;
    let cfg = SearchConfig {
        cap: g.cap,
        prune: !g.no_prune,
        threads: g.threads.max(1),
        kernel_cap: regionum::DEFAULT_KERNEL_CAP,
    };
    let cache = match &g.cache {
        Some(path) => Some(UnknotCache::open(path)?),
        None => None,
    };

    match &cli.command {
        Command::Regions(input) => {
            let d = read_diagram(input)?;
            let regions = d.regions();
            if g.json {
                println!("{}", report::regions_json(&d, &regions));
            } else {
                println!("{} crossings, {} regions", d.crossing_count(), regions.len());
                for r in &regions {
                    let corners: Vec<String> = r.corners.iter().map(|(v, s)| format!("({v},{s})")).collect();
                    let inc: Vec<String> = r.incident.iter().map(|v| v.to_string()).collect();
                    println!(
                        "region {}: cost {} crossings {{{}}} corners [{}]",
                        r.id,
                        r.cost,
                        inc.join(","),
                        corners.join(" ")
                    );
                }
            }
        }
        Command::Shade(input) => {
            let d = read_diagram(input)?;
            let sh = region_algebra::checkerboard_shade(&d, g.outer_region)?;
            if g.json {
                println!("{}", report::shading_json(&d, &sh));
            } else {
                let black = sh.class(region_algebra::Color::Black);
                let white = sh.class(region_algebra::Color::White);
                println!("outer (white) region: {}", sh.outer);
                println!("black: {:?}", black);
                println!("white: {:?}", white);
            }
        }
        Command::Rcc { pd, regions } => {
            let d = read_diagram(pd)?;
            let changed = d.apply_region_changes(regions)?;
            if g.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": report::SCHEMA,
                        "pd": changed.pd_string(),
                        "changed_regions": regions,
                    })
                );
            } else {
                println!("{}", changed.pd_string());
            }
        }
        Command::Goeritz(input) => {
            let d = read_diagram(input)?;
            let data = goeritz::goeritz_matrices_with_outer(&d, g.outer_region)?;
            if g.json {
                println!("{}", report::goeritz_json(&data));
            } else {
                println!("zeta: {:?}", data.zeta);
                println!("shaded regions: {:?}", data.shaded_regions);
                println!("pre-Goeritz:\n{:?}", data.pre_goeritz);
                println!("Goeritz:\n{:?}", data.goeritz);
                println!("det: {}", data.det);
            }
        }
        Command::Snf { matrix } => {
            let m = parse_matrix(matrix)?;
            let s = snf::smith_normal_form(&m);
            if g.json {
                println!("{}", report::snf_json(&s));
            } else {
                let diag: Vec<String> = s.diagonal.iter().map(|d| d.to_string()).collect();
                println!("diagonal: [{}]", diag.join(","));
            }
        }
        Command::Mg2(input) => {
            let d = read_diagram(input)?;
            let value = goeritz::mg2(&d)?;
            if g.json {
                println!("{}", serde_json::json!({"schema": report::SCHEMA, "mg2": value}));
            } else {
                println!("{value}");
            }
        }
        Command::Det(input) => {
            let d = read_diagram(input)?;
            let value = goeritz::determinant(&d)?;
            if g.json {
                println!("{}", serde_json::json!({"schema": report::SCHEMA, "det": value.to_string()}));
            } else {
                println!("{value}");
            }
        }
        Command::Jones(input) => {
            let d = read_diagram(input)?;
            let f = invariants::jones_normalized(&d, g.cap)?;
            if g.json {
                println!("{}", report::poly_json(&f));
            } else {
                println!("{f}");
            }
        }
        Command::Unknot(input) => {
            let d = read_diagram(input)?;
            let cert = cached_unknot(&d, g.cap, cache.as_ref())?;
            if g.json {
                println!("{}", report::certificate_json(&cert));
            } else {
                println!("{:?} ({:?})", cert.verdict, cert.evidence);
            }
        }
        Command::Mri(input) => {
            let d = read_diagram(input)?;
            let sr = search::mri_of_diagram(&d, &cfg, cache.as_ref())?;
            if g.json {
                println!("{}", report::search_json(&d, &sr));
            } else {
                println!("mri = {}", sr.mri);
                println!("witness regions = {:?}", sr.mri_witness);
                match sr.reg {
                    Some(rg) => println!("reg = {rg}"),
                    None => println!("reg = infinity"),
                }
                println!("targets examined = {}", sr.targets_examined);
            }
        }
        Command::Reg(input) => {
            let d = read_diagram(input)?;
            let (reg, witness) = search::reg_of_diagram(&d, &cfg)?;
            if g.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": report::SCHEMA,
                        "reg": reg,
                        "reg_witness": witness,
                    })
                );
            } else {
                match reg {
                    Some(rg) => println!("reg = {rg} (region {})", witness.unwrap()),
                    None => println!("reg = infinity"),
                }
            }
        }
        Command::Bounds { csv } => {
            let records = ingest::ingest_csv(csv)?;
            let mut out = Vec::new();
            for rec in &records {
                let d = diagram::parse_pd(&rec.pd)?;
                let sr = search::mri_of_diagram(&d, &cfg, cache.as_ref())?;
                let m = goeritz::mg2(&d)?;
                let bb = search::bound_bracket_from_parts(&d, Some(rec), &sr, m);
                if !g.json {
                    println!(
                        "{}: [{}, {}] {} (lower {:?}, upper {:?})",
                        rec.name,
                        bb.lower.value,
                        bb.upper.value,
                        if bb.tight { "tight" } else { "open" },
                        bb.lower.provenance,
                        bb.upper.provenance
                    );
                }
                out.push(report::knot_report(rec, &d, &sr, m, &bb, None));
            }
            if g.json {
                println!("{}", serde_json::Value::Array(out));
            }
        }
        Command::Verify { csv } => {
            let records = ingest::ingest_csv(csv)?;
            let started = std::time::Instant::now();
            let mut reports = Vec::new();
            let mut tight = 0usize;
            let mut violations = 0usize;
            let mut skipped = 0usize;
            for rec in &records {
                let d = diagram::parse_pd(&rec.pd)?;
                let sr = match search::mri_of_diagram(&d, &cfg, cache.as_ref()) {
                    Ok(sr) => sr,
                    Err(search::SearchError::TooLarge { crossings, cap }) => {
                        eprintln!("{}: skipped ({} crossings above cap {})", rec.name, crossings, cap);
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let m = goeritz::mg2(&d)?;
                let bb = search::bound_bracket_from_parts(&d, Some(rec), &sr, m);
                let tr = search::theorem_report_from_parts(&d, Some(rec), &sr, m);
                if bb.tight {
                    tight += 1;
                }
                if !tr.all_hold() {
                    violations += 1;
                    eprintln!("{}: THEOREM VIOLATION {:?}", rec.name, tr);
                }
                if !g.json {
                    println!(
                        "{}: mri {} reg {} mg2 {} det {} bracket [{},{}]{} checks{}",
                        rec.name,
                        sr.mri,
                        sr.reg.map_or("inf".to_string(), |r| r.to_string()),
                        m,
                        goeritz::determinant(&d)?,
                        bb.lower.value,
                        bb.upper.value,
                        if bb.tight { " tight" } else { "" },
                        if tr.all_hold() { " ok" } else { " VIOLATED" },
                    );
                }
                reports.push(report::knot_report(rec, &d, &sr, m, &bb, Some(&tr)));
            }
            let wall_ms = started.elapsed().as_millis() as u64;
            if g.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": report::SCHEMA,
                        "knots": reports,
                        "aggregate": {
                            "count": records.len(),
                            "tight": tight,
                            "violations": violations,
                            "skipped": skipped,
                            "wall_ms": wall_ms,
                        }
                    })
                );
            } else {
                println!(
                    "{} knots: {} tight brackets, {} violations, {} skipped, {} ms",
                    records.len(),
                    tight,
                    violations,
                    skipped,
                    wall_ms
                );
            }
            if violations > 0 {
                return Err(format!("{violations} theorem violations").into());
            }
        }
        Command::Gen(GenCommand::Torus { k }) => {
            if *k == 0 {
                return Err("k must be at least 1".into());
            }
            let d = diagram::gen_torus(*k);
            if g.json {
                println!(
                    "{}",
                    serde_json::json!({"schema": report::SCHEMA, "pd": d.pd_string(), "crossings": d.crossing_count()})
                );
            } else {
                println!("{}", d.pd_string());
            }
        }
    }
    Ok(())
}

fn read_diagram(input: &PdInput) -> Result<Diagram, AnyError> {
    let text = match &input.pd {
        Some(t) => t.clone(),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("no PD code given (use --pd or pipe one on stdin)".into());
    }
    Ok(diagram::parse_pd(trimmed)?)
}

fn parse_matrix(text: &str) -> Result<snf::IntMat, AnyError> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)
        .map_err(|e| format!("expected a JSON integer matrix like [[2,-1],[-1,2]]: {e}"))?;
    if rows.is_empty() {
        return Ok(snf::IntMat::zeros(0, 0));
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err("matrix rows have unequal lengths".into());
    }
    Ok(snf::IntMat::from_rows(rows))
}

fn cached_unknot(
    d: &Diagram,
    cap: usize,
    cache: Option<&UnknotCache>,
) -> Result<invariants::UnknotCertificate, AnyError> {
    if let Some(cache) = cache {
        let key = d.canonical_key();
        if let Some(cert) = cache.get(&key) {
            return Ok(cert);
        }
        let cert = invariants::is_unknot(d, cap)?;
        cache.put(&key, &cert);
        Ok(cert)
    } else {
        Ok(invariants::is_unknot(d, cap)?)
    }
}

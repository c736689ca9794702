use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hopfsvd::deformation::BilinearForm;
use hopfsvd::experiments::dim2::{closed_form_eigenvalues, locus_rho};
use hopfsvd::experiments::io::{parse_range, read_metric, tables_json, write_scan_csv, write_tables_csv};
use hopfsvd::experiments::{run_verify_suite, scan_grid, Dim2Params, Range};
use hopfsvd::scalar::parse_rational;
use hopfsvd::spectral::{svd_of_product, two_norm};
use hopfsvd::structure::StructureTables;
use hopfsvd::{Error, Rational, Result};

#[derive(Parser)]
#[command(name = "hopfsvd", version, about = "Structure matrices and singular value decompositions of Grassmann and Clifford products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the product and coproduct tables.
    Tables {
        #[command(flatten)]
        product: ProductArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Singular values, matched u/v vectors and kernel dimension.
    Svd {
        #[command(flatten)]
        product: ProductArgs,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Eigenvalues of the two-dimensional deformation over a ρ–ν grid.
    Scan {
        /// ρ range as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        /// ν range as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Points ρ = √(1+ν²) of the singular locus and their degeneracy.
    Locus {
        /// Comma-separated ν values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        nu: Vec<f64>,
    },
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    dim: usize,
    /// JSON file {"dim": n, "entries": [[…]]} with the bilinear form.
    #[arg(long, conflicts_with_all = ["preset", "rho", "nu"])]
    metric: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with_all = ["rho", "nu"])]
    preset: Option<Preset>,
    /// ρ of the form [[0, ρ+ν], [ρ−ν, 0]] (requires --dim 2).
    #[arg(long, requires = "nu", allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long, requires = "rho", allow_hyphen_values = true)]
    nu: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Grassmann,
    Boolean,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl ProductArgs {
    fn tables(&self) -> Result<StructureTables<Rational>> {
        let n = self.dim;
        if let Some(path) = &self.metric {
            let form = read_metric(path)?;
            if form.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: form.dim(),
                });
            }
            return StructureTables::clifford(&form);
        }
        if let (Some(rho), Some(nu)) = (&self.rho, &self.nu) {
            if n != 2 {
                return Err(Error::InvalidArgument("--rho/--nu require --dim 2".into()));
            }
            let form: BilinearForm<Rational> = Dim2Params::new(parse_rational(rho)?, parse_rational(nu)?).form();
            return StructureTables::clifford(&form);
        }
        match self.preset.unwrap_or(Preset::Grassmann) {
            Preset::Grassmann => StructureTables::grassmann(n),
            Preset::Boolean => StructureTables::boolean(n),
        }
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Tables { product, format } => {
            let t = product.tables()?;
            let mut out = product.sink()?;
            match format {
                Format::Json => writeln!(out, "{}", tables_json(&t)?)?,
                Format::Csv => write_tables_csv(&t, &mut out)?,
            }
        }
        Command::Svd { product } => {
            let t = product.tables()?.to_f64();
            let s = svd_of_product(&t, 1e-12)?;
            let doc = json!({
                "dim": t.dim(),
                "label": t.label(),
                "rank": s.rank(),
                "singular_values": s.singular_values,
                "left_vectors": s.left_vectors,
                "right_vectors": s.right_vectors,
                "kernel_dim": s.right_dim() - s.rank(),
                "frobenius_norm": t.product_matrix().frobenius_norm(),
                "two_norm": two_norm(&s),
            });
            writeln!(product.sink()?, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Command::Verify { suite, dim, report } => {
            let r = run_verify_suite(&suite, dim)?;
            let text = serde_json::to_string_pretty(&r)?;
            if let Some(path) = report {
                std::fs::write(path, &text)?;
            }
            println!("{text}");
            for c in &r.checks {
                eprintln!("{:<36} {:?}", c.id, c.status);
            }
            return Ok(if r.pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Scan { rho, nu, steps, out } => {
            let (r0, r1) = parse_range(&rho)?;
            let (v0, v1) = parse_range(&nu)?;
            let records = scan_grid(Range::new(r0, r1)?, Range::new(v0, v1)?, steps)?;
            write_scan_csv(&records, File::create(out)?)?;
        }
        Command::Locus { nu } => {
            if nu.is_empty() {
                return Err(Error::InvalidArgument("--nu needs at least one value".into()));
            }
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["nu", "rho", "rho_minus_nu", "eigenvalue", "max_deviation"])?;
            for v in nu {
                let rho = locus_rho(v);
                let target = 4.0 + 4.0 * v * v;
                let dev = closed_form_eigenvalues(&Dim2Params::new(rho, v))
                    .iter()
                    .map(|l| (l - target).abs())
                    .fold(0.0, f64::max);
                w.write_record([v, rho, rho - v, target, dev].map(|x| x.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::NoConvergence { .. } | Error::NegativeEigenvalue(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

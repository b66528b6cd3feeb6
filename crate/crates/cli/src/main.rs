use clap::{Args, Parser, Subcommand};
use nosig_secrecy::correlations::{
    cglmp_value, decompose, depolarize, enumerate_saturating, io::read_distribution, SlicePoint,
};
use nosig_secrecy::figures::{
    p_nl_from_disturbance, rates_figure, slice_map, sweep, thresholds, SweepParam, SweepSpec,
    SweepTable, Variant,
};
use nosig_secrecy::fmt::sig12;
use nosig_secrecy::keyrate::{
    ad_d3, ad_d3_margin, ad_isotropic_margin, ad_preprocessed_opt, ck_d3, ck_d3_opt,
    d3_intrinsic_upper, generic_ad_margin, generic_d_oneway, intrinsic_info_chsh,
    intrinsic_info_numeric, IntrinsicConfig, OptConfig, AD_GRID_STEP,
};
use nosig_secrecy::parallel::Exec;
use nosig_secrecy::protocol::build_tripartite;
use nosig_secrecy::quantum::{optimize_schmidt, qudit_slice, SchmidtSearch, SchmidtState};
use nosig_secrecy::Result;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nosig",
    version,
    about = "Secret-key quantities for no-signalling correlations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Emit CSV instead of an aligned table.
    #[arg(long, global = true)]
    csv: bool,
    /// Grid points of sweeps and scans.
    #[arg(long, global = true, value_name = "N")]
    steps: Option<usize>,
    /// Bisection and line-search tolerance.
    #[arg(long, global = true, value_name = "T", default_value_t = 1e-6)]
    tol: f64,
    /// Seed for randomized searches.
    #[arg(long, global = true, value_name = "S", default_value_t = nosig_secrecy::correlations::random::DEFAULT_SEED)]
    seed: u64,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

impl Global {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn opt(&self) -> OptConfig {
        OptConfig {
            tol: self.tol,
            ..OptConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Key rates along a parameter; by default the D sweep of the CHSH protocol.
    Rates {
        #[arg(long, default_value = "D")]
        param: String,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        /// Comma-separated subset of ck_q0, ck_opt, ad, intrinsic, dw_quantum.
        #[arg(long, value_delimiter = ',')]
        variants: Vec<String>,
    },
    /// Regions of the d=3 slice on a triangular grid of resolution --steps.
    SliceMap,
    /// Deterministic strategies saturating the CGLMP facet.
    Enumerate { d: usize },
    /// Zero-rate thresholds of the binary and qubit protocols.
    Thresholds,
    /// Project a distribution file onto the slice.
    Depolarize { file: PathBuf },
    /// Quantum slice point of a Schmidt state.
    Qudit {
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// `(|00⟩ + γ|11⟩ + |22⟩)/√(2+γ²)`; implies d=3.
        #[arg(long, conflicts_with_all = ["coeffs", "optimize"])]
        gamma: Option<f64>,
        /// Schmidt coefficients, rescaled to unit norm.
        #[arg(long, value_delimiter = ',', conflicts_with = "optimize")]
        coeffs: Vec<f64>,
        /// Maximize the generic one-way rate over Schmidt states.
        #[arg(long)]
        optimize: bool,
        /// With --optimize, search all coefficients instead of symmetric ones.
        #[arg(long, requires = "optimize")]
        full: bool,
    },
    /// Intrinsic information of the tripartite table built from a distribution file.
    Intrinsic { file: PathBuf },
    /// Advantage-distillation conditions.
    Ad {
        /// Binary isotropic point.
        #[arg(long, conflicts_with_all = ["p0", "file"])]
        p_nl: Option<f64>,
        #[arg(long, requires = "p1", conflicts_with = "file")]
        p0: Option<f64>,
        #[arg(long, requires = "p0")]
        p1: Option<f64>,
        /// Distribution file; projected onto the slice first.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

/// Key-value or tabular output.
struct Out {
    csv: bool,
}

impl Out {
    fn table(&self, header: &[String], rows: &[Vec<String>]) {
        let mut text = String::new();
        if self.csv {
            for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
                text.push_str(&r.join(","));
                text.push('\n');
            }
            emit(&text);
            return;
        }
        let mut w: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in rows {
            for (i, c) in r.iter().enumerate() {
                w[i] = w[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&w)
                .map(|(c, &n)| format!("{c:<n$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
            text.push_str(&line(r));
            text.push('\n');
        }
        emit(&text);
    }

    fn records(&self, kv: &[(&str, String)]) {
        let rows: Vec<Vec<String>> = kv
            .iter()
            .map(|(k, v)| vec![k.to_string(), v.clone()])
            .collect();
        self.table(&["quantity".into(), "value".into()], &rows);
    }

    fn sweep(&self, t: &SweepTable) {
        if self.csv {
            print!("{}", t.to_csv());
        } else {
            let rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| r.iter().map(|v| sig12(*v)).collect())
                .collect();
            self.table(&t.header, &rows);
        }
    }
}

fn flag(b: bool) -> String {
    if b { "true" } else { "false" }.into()
}

fn slice_records(p: &SlicePoint) -> Vec<(String, String)> {
    let mut kv: Vec<(String, String)> = (0..p.d())
        .map(|f| (format!("p{f}"), sig12(p.p(f))))
        .collect();
    kv.push(("p_nl".into(), sig12(p.p_nl())));
    kv.push(("cglmp".into(), sig12(p.cglmp())));
    kv
}

fn borrowed(kv: &[(String, String)]) -> Vec<(&str, String)> {
    kv.iter().map(|(k, v)| (k.as_str(), v.clone())).collect()
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let out = Out { csv: g.csv };
    let cfg = g.opt();
    match cli.command {
        Command::Rates {
            param,
            lo,
            hi,
            variants,
        } => {
            let param: SweepParam = param.parse()?;
            let (dlo, dhi) = param.default_range();
            let (lo, hi) = (lo.unwrap_or(dlo), hi.unwrap_or(dhi));
            let steps = g.steps.unwrap_or(151);
            let table = if param == SweepParam::D && variants.is_empty() {
                rates_figure(lo, hi, steps, &cfg, g.exec())?
            } else {
                let variants = variants
                    .iter()
                    .map(|v| v.parse::<Variant>())
                    .collect::<Result<Vec<_>>>()?;
                sweep(
                    &SweepSpec::new(param, lo, hi, steps, variants)?,
                    &cfg,
                    g.exec(),
                )
            };
            out.sweep(&table);
        }
        Command::SliceMap => {
            out.sweep(&slice_map(g.steps.unwrap_or(30), &cfg, g.exec())?);
        }
        Command::Enumerate { d } => {
            let rows: Vec<Vec<String>> = enumerate_saturating(d)?
                .iter()
                .map(|c| {
                    let s = c.strategy;
                    vec![
                        s.a0.to_string(),
                        s.a1.to_string(),
                        s.b0.to_string(),
                        s.b1.to_string(),
                        c.class.label().into(),
                        c.class.detail().into(),
                    ]
                })
                .collect();
            let header = ["a0", "a1", "b0", "b1", "class", "detail"].map(String::from);
            out.table(&header, &rows);
        }
        Command::Thresholds => {
            let rows: Vec<Vec<String>> = thresholds(g.tol, &cfg, g.exec())?
                .iter()
                .map(|r| {
                    vec![
                        r.kind.group().into(),
                        r.kind.name().into(),
                        sig12(r.threshold.value),
                        sig12(r.threshold.lo),
                        sig12(r.threshold.hi),
                        sig12(r.threshold.tol),
                    ]
                })
                .collect();
            let header = ["group", "name", "value", "lo", "hi", "tol"].map(String::from);
            out.table(&header, &rows);
        }
        Command::Depolarize { file } => {
            let t = read_distribution(&file)?;
            let p = depolarize(&t);
            let mut kv = vec![("cglmp_input".to_string(), sig12(cglmp_value(&t)))];
            kv.extend(slice_records(&p));
            out.records(&borrowed(&kv));
        }
        Command::Qudit {
            d,
            gamma,
            coeffs,
            optimize,
            full,
        } => {
            let (state, eta_note) = if optimize {
                let o = optimize_schmidt(
                    d,
                    &SchmidtSearch {
                        symmetric: !full,
                        seed: g.seed,
                        exec: g.exec(),
                        ..SchmidtSearch::default()
                    },
                )?;
                (o.state, true)
            } else if let Some(gm) = gamma {
                (SchmidtState::psi_gamma(gm)?, false)
            } else if !coeffs.is_empty() {
                (SchmidtState::normalized(&coeffs)?, false)
            } else {
                (SchmidtState::maximally_entangled(d), false)
            };
            let p = qudit_slice(&state)?;
            let mut kv: Vec<(String, String)> = state
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (format!("c{k}"), sig12(*c)))
                .collect();
            kv.extend(slice_records(&p));
            let r = generic_d_oneway(&p);
            kv.push(("oneway_rate_dits".into(), sig12(r.rate)));
            kv.push(("oneway_rate_bits".into(), sig12(r.rate_bits())));
            kv.push(("ad_margin".into(), sig12(generic_ad_margin(&p))));
            if p.d() == 3 && p.p_nl() >= 0.0 {
                kv.push(("ck_d3_q0".into(), sig12(ck_d3(p.p(0), p.p(1), 0.0)?.rate)));
            }
            kv.push(("eta".into(), sig12(state.overlap_max_entangled())));
            if eta_note {
                kv.push(("asymmetry".into(), sig12(state.asymmetry())));
            }
            out.records(&borrowed(&kv));
        }
        Command::Intrinsic { file } => {
            let t = read_distribution(&file)?;
            let dec = decompose(&t)?;
            let tri = build_tripartite(&dec)?;
            let rep = intrinsic_info_numeric(
                &tri,
                &IntrinsicConfig {
                    seed: g.seed,
                    exec: g.exec(),
                    ..IntrinsicConfig::default()
                },
            );
            let mut kv = vec![
                ("p_nl".to_string(), sig12(dec.p_nl)),
                ("unprocessed".into(), sig12(rep.unprocessed)),
                ("merging_map".into(), sig12(rep.merging_map)),
                ("intrinsic".into(), sig12(rep.value)),
                ("intrinsic_x0".into(), sig12(rep.per_x[0])),
                ("intrinsic_x1".into(), sig12(rep.per_x[1])),
                ("converged".into(), flag(rep.converged)),
            ];
            if t.d() == 2 {
                kv.push((
                    "isotropic_closed_form".into(),
                    sig12(intrinsic_info_chsh(dec.p_nl)?),
                ));
            } else if let Ok(p) = SlicePoint::from_table(&t, 1e-12) {
                kv.push((
                    "d3_upper_bound_trits".into(),
                    sig12(d3_intrinsic_upper(p.p(0), p.p(1))?),
                ));
            }
            out.records(&borrowed(&kv));
        }
        Command::Ad { p_nl, p0, p1, file } => {
            let kv: Vec<(String, String)> = if let Some(p) = p_nl {
                let o = ad_preprocessed_opt(p, AD_GRID_STEP, g.tol)?;
                vec![
                    ("p_nl".into(), sig12(p)),
                    ("margin".into(), sig12(ad_isotropic_margin(p)?)),
                    ("margin_preprocessed".into(), sig12(o.margin)),
                    ("q_a".into(), sig12(o.q_a)),
                    ("q_b".into(), sig12(o.q_b)),
                ]
            } else if let (Some(p0), Some(p1)) = (p0, p1) {
                let mut kv = vec![
                    ("p0".into(), sig12(p0)),
                    ("p1".into(), sig12(p1)),
                    ("margin".into(), sig12(ad_d3_margin(p0, p1))),
                    ("ad".into(), flag(ad_d3(p0, p1)?)),
                ];
                if let Ok(r) = ck_d3_opt(p0, p1, &cfg) {
                    kv.push(("ck_opt_trits".into(), sig12(r.rate)));
                }
                kv
            } else if let Some(f) = file {
                let p = depolarize(&read_distribution(&f)?);
                let mut kv = slice_records(&p);
                kv.push(("margin".into(), sig12(generic_ad_margin(&p))));
                kv
            } else {
                let p = p_nl_from_disturbance(0.0);
                vec![
                    ("p_nl".into(), sig12(p)),
                    ("margin".into(), sig12(ad_isotropic_margin(p)?)),
                ]
            };
            out.records(&borrowed(&kv));
        }
    }
    Ok(())
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

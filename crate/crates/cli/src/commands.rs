use std::fmt::Write as _;
use std::time::Instant;

use opgns::identities::identity_suite_with;
use opgns::infocomplete::build_infocomplete_with;
use opgns::jordan::jordan_decompose_in;
use opgns::{
    classify, dimension_check, random, random_symmetric_faithful, span_rank, BipartiteStateF64,
    GnsSpace, HermitianBasis, StateCalculus, Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::files::{check_dim, matrix_to_rows, Entry, PoolFile, StateFile};
use crate::{CliError, Format, Outcome};

/// Number of random maps fed to the identity suite and the GNS sampler.
pub const SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub tol: Option<f64>,
    pub seed: u64,
    pub format: Format,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tol: None,
            seed: 0,
            format: Format::Json,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: InputInfo,
    pub faithfulness: FaithfulnessJson,
    pub jordan: Option<JordanJson>,
    pub identity_suite: Vec<IdentityJson>,
    pub gns: Option<GnsJson>,
    pub skipped: Vec<String>,
    pub all_identities_pass: bool,
    pub timings_ms: Timings,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    pub sha256: String,
    pub dim: usize,
    pub tolerance: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulnessJson {
    pub symmetric: bool,
    pub dynamically_faithful: bool,
    pub preparationally_faithful: bool,
    pub choi_rank: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanJson {
    pub signature: Vec<String>,
    pub negative_count: usize,
    pub gram_eigenvalues: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityJson {
    pub name: String,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GnsJson {
    pub samples: Vec<ScalarSample>,
    pub cstar_residuals: Vec<f64>,
    pub max_cstar_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarSample {
    pub a: usize,
    pub b: usize,
    pub value: Entry,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub parse: f64,
    pub classify: f64,
    pub jordan: f64,
    pub identities: f64,
    pub gns: f64,
    pub total: f64,
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn analyze_report(input: &str, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut tol = Tolerances::<f64>::default();
    if let Some(t) = opts.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        tol = tol.with_num(t);
    }
    let file = StateFile::parse(input)?;
    let phi = file.to_state(&tol)?;
    let mut timings = Timings {
        parse: millis(start),
        ..Timings::default()
    };

    let t = Instant::now();
    let class = classify(&phi, &tol);
    timings.classify = millis(t);

    let mut skipped = Vec::new();
    let t = Instant::now();
    let jordan = if class.symmetric {
        match jordan_decompose_in(&phi, &HermitianBasis::canonical(phi.dim()), &tol) {
            Ok(j) => Some(JordanJson {
                signature: j.signature().iter().map(ToString::to_string).collect(),
                negative_count: j.negative_count(),
                gram_eigenvalues: j.gram_eigvals().to_vec(),
            }),
            Err(e) => {
                skipped.push(format!("jordan: {e}"));
                None
            }
        }
    } else {
        skipped.push("jordan: state is not symmetric".into());
        None
    };
    timings.jordan = millis(t);

    let calc = if class.symmetric && class.dynamically_faithful && jordan.is_some() {
        match StateCalculus::new_with_tol(&phi, &tol) {
            Ok(c) => Some(c),
            Err(e) => {
                skipped.push(format!("identity_suite: {e}"));
                None
            }
        }
    } else {
        skipped.push("identity_suite: requires a symmetric dynamically faithful state".into());
        None
    };

    let t = Instant::now();
    let identity_suite: Vec<IdentityJson> = calc
        .as_ref()
        .map(|c| identity_suite_with(c, SAMPLES, opts.seed))
        .unwrap_or_default()
        .into_iter()
        .map(|c| IdentityJson {
            name: c.name.to_string(),
            max_residual: c.max_residual,
            pass: c.pass,
        })
        .collect();
    timings.identities = millis(t);

    let t = Instant::now();
    let gns = match calc {
        Some(c) => match GnsSpace::from_calculus(c) {
            Ok(space) => Some(gns_samples(&space, phi.dim(), opts.seed)),
            Err(e) => {
                skipped.push(format!("gns: {e}"));
                None
            }
        },
        None => None,
    };
    timings.gns = millis(t);
    timings.total = millis(start);

    Ok(Report {
        schema_version: crate::files::SCHEMA_VERSION,
        input: InputInfo {
            sha256: hex(&Sha256::digest(input.as_bytes())),
            dim: phi.dim(),
            tolerance: tol.num,
            seed: opts.seed,
        },
        faithfulness: FaithfulnessJson {
            symmetric: class.symmetric,
            dynamically_faithful: class.dynamically_faithful,
            preparationally_faithful: class.preparationally_faithful,
            choi_rank: class.choi_rank,
            notes: class.notes,
        },
        jordan,
        all_identities_pass: identity_suite.iter().all(|c| c.pass),
        identity_suite,
        gns,
        skipped,
        timings_ms: timings,
    })
}

fn gns_samples(space: &GnsSpace<f64>, d: usize, seed: u64) -> GnsJson {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x676e73);
    let maps: Vec<_> = (0..SAMPLES)
        .map(|k| random::cp_map::<f64, _>(d, 1 + k % 3, &mut rng).superop())
        .collect();
    let calc = space.calculus();
    let mut samples = Vec::new();
    for a in 0..maps.len() {
        for b in a..maps.len().min(a + 2) {
            let v = calc.scalar_product(&maps[a], &maps[b]);
            samples.push(ScalarSample {
                a,
                b,
                value: [v.re, v.im],
            });
        }
    }
    let cstar_residuals: Vec<f64> = maps
        .iter()
        .map(|m| {
            let n = space.cstar_norm(m);
            let nn = space.cstar_norm(&m.adjoint().then_after(m));
            (nn - n * n).abs() / (n * n).max(f64::MIN_POSITIVE)
        })
        .collect();
    GnsJson {
        max_cstar_residual: cstar_residuals.iter().copied().fold(0.0, f64::max),
        samples,
        cstar_residuals,
    }
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let f = &r.faithfulness;
    let _ = writeln!(s, "input      sha256 {}  d={}", r.input.sha256, r.input.dim);
    let _ = writeln!(
        s,
        "faithful   symmetric={} dynamical={} preparational={} choi_rank={}",
        f.symmetric, f.dynamically_faithful, f.preparationally_faithful, f.choi_rank
    );
    for n in &f.notes {
        let _ = writeln!(s, "           note: {n}");
    }
    if let Some(j) = &r.jordan {
        let _ = writeln!(
            s,
            "jordan     signature [{}]  negative={}",
            j.signature.join(","),
            j.negative_count
        );
    }
    for c in &r.identity_suite {
        let _ = writeln!(
            s,
            "identity   {:<30} {:>10.3e}  {}",
            c.name,
            c.max_residual,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    if let Some(g) = &r.gns {
        let _ = writeln!(
            s,
            "gns        {} scalar products, max C* residual {:.3e}",
            g.samples.len(),
            g.max_cstar_residual
        );
    }
    for k in &r.skipped {
        let _ = writeln!(s, "skipped    {k}");
    }
    let _ = writeln!(s, "time       {:.1} ms", r.timings_ms.total);
    s
}

pub fn cmd_analyze(input: &str, opts: &AnalyzeOptions) -> Result<Outcome, CliError> {
    let report = analyze_report(input, opts)?;
    let stdout = match opts.format {
        Format::Json => to_json(&report),
        Format::Text => report_text(&report),
    };
    Ok(Outcome {
        stdout,
        code: if report.all_identities_pass { 0 } else { 2 },
    })
}

pub fn cmd_random(d: usize, seed: u64) -> Result<Outcome, CliError> {
    check_dim(d)?;
    let phi: BipartiteStateF64 =
        random_symmetric_faithful(d, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Outcome {
        stdout: format!(
            "{}\n",
            serde_json::to_string(&StateFile::from_state(&phi)).expect("serializable state")
        ),
        code: 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoCompleteJson {
    pub dim: usize,
    pub effects: Vec<Vec<Vec<Entry>>>,
    pub span_rank: usize,
    pub rank_trace: Vec<usize>,
    pub infocomplete: bool,
    pub minimal: bool,
}

pub fn cmd_infocomplete(input: &str, format: Format) -> Result<Outcome, CliError> {
    let tol = Tolerances::<f64>::default();
    let pool = PoolFile::parse(input)?;
    let observables = pool.to_observables(&tol)?;
    let build =
        build_infocomplete_with(&observables, &tol).map_err(|e| CliError::Parse(e.to_string()))?;
    let obs = &build.observable;
    let out = InfoCompleteJson {
        dim: obs.dim(),
        effects: obs.effects().iter().map(|e| matrix_to_rows(e.matrix())).collect(),
        span_rank: span_rank(&obs.operators()),
        rank_trace: build.rank_trace.clone(),
        infocomplete: opgns::is_infocomplete(obs),
        minimal: opgns::is_minimal(obs),
    };
    let stdout = match format {
        Format::Json => to_json(&out),
        Format::Text => format!(
            "effects {}  span_rank {}  rank_trace {:?}  infocomplete={} minimal={}\n",
            out.effects.len(),
            out.span_rank,
            out.rank_trace,
            out.infocomplete,
            out.minimal
        ),
    };
    Ok(Outcome { stdout, code: 0 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimCheckJson {
    #[serde(rename = "dimP")]
    pub dim_p: usize,
    #[serde(rename = "dimS")]
    pub dim_s: usize,
    pub bipartite: usize,
    pub identity_holds: bool,
}

pub fn cmd_dimcheck(d: usize, format: Format) -> Result<Outcome, CliError> {
    check_dim(d)?;
    let r = dimension_check::<f64>(d).map_err(|e| CliError::Usage(e.to_string()))?;
    let out = DimCheckJson {
        dim_p: r.dim_p,
        dim_s: r.dim_s,
        bipartite: r.bipartite,
        identity_holds: r.identity_holds,
    };
    let stdout = match format {
        Format::Json => format!("{}\n", serde_json::to_string(&out).expect("serializable")),
        Format::Text => format!(
            "dimP {}  dimS {}  bipartite {}  dimS2 {}  dimT {}  identity_holds={}\n",
            r.dim_p, r.dim_s, r.bipartite, r.dim_s2, r.dim_t, r.identity_holds
        ),
    };
    Ok(Outcome {
        stdout,
        code: if r.identity_holds { 0 } else { 2 },
    })
}

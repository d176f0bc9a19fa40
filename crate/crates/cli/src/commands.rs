use std::path::{Path, PathBuf};

use h90_core::backends::{
    cd_forward_check, ff_build_tower, hereditary_check, hs_p2_ann_check, local_build_tower,
    real_build_tower, tower_consistency, AChoice, DegreeTower,
};
use h90_core::checks::{
    check_length_lemma_all, check_sigmamin1, cor_surjective_equiv, criterion_p2, criterion_podd,
    h1_implies_h90, h90_holds, hs_equivalences, small_h90, summand_condition,
};
use h90_core::format::{model_from_text, model_to_text, write_tower};
use h90_core::synth::{
    gen_freeform, gen_realizable, oracle_decompose, oracle_enumerate_summand_pairs,
    oracle_exactness, random_freeform_spec, random_realizable_spec, subseed, GenSpec,
};
use h90_core::{validate_model, Axiom, Error, ExtensionModel, TheoremReport, Verdict};

use crate::record::{Counts, Record};

/// Failure modes that map to exit code 2.
#[derive(Debug)]
pub enum UsageError {
    Core(Error),
    Io(String),
    Invalid(String),
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UsageError::Core(e) => write!(f, "{}", e),
            UsageError::Io(e) => write!(f, "{}", e),
            UsageError::Invalid(e) => write!(f, "{}", e),
        }
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError::Core(e)
    }
}

pub type CmdResult = std::result::Result<Vec<Record>, UsageError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    H90,
    Criteria,
    Summand,
    Hs,
    Lemma,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendKind {
    Ff,
    Real,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Realizable,
    Freeform,
}

pub fn load_model(path: &Path) -> Result<ExtensionModel, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::Io(format!("{}: {}", path.display(), e)))?;
    model_from_text(&text).map_err(|e| UsageError::Invalid(format!("{}: {}", path.display(), e)))
}

fn record_of(m: &ExtensionModel, name: &str, r: h90_core::Result<TheoremReport>) -> Record {
    match r {
        Ok(r) => Record::from_report(&r),
        Err(e) => Record::skipped(name, e).for_model(m),
    }
}

/// A record stating that two verdicts coincide.
fn agreement(name: &str, left: &TheoremReport, right: &TheoremReport) -> Record {
    let mut rec = Record::from_report(left);
    rec.checker = name.to_string();
    rec.verdict = Verdict::from_bool(left.verdict == right.verdict);
    rec.witness = None;
    rec.detail = format!(
        "{} {}, {} {}",
        left.checker, left.verdict, right.checker, right.verdict
    );
    rec
}

pub fn validate(path: &Path) -> CmdResult {
    let m = load_model(path)?;
    let report = validate_model(&m, false);
    Ok(report
        .clauses
        .iter()
        .map(|c| Record::from_clause(c, &report))
        .collect())
}

fn criterion(m: &ExtensionModel) -> h90_core::Result<TheoremReport> {
    if m.p() == 2 {
        criterion_p2(m)
    } else {
        criterion_podd(m)
    }
}

/// Reports of a suite on a single model.
pub fn suite_records(m: &ExtensionModel, suite: Suite) -> Vec<Record> {
    let mut out = Vec::new();
    if suite.includes(Suite::H90) || suite.includes(Suite::Criteria) {
        out.push(record_of(m, "h90_holds", h90_holds(m)));
    }
    if suite.includes(Suite::H90) {
        out.push(record_of(m, "small_h90", small_h90(m)));
    }
    if suite.includes(Suite::Criteria) {
        let (run, other) = if m.p() == 2 {
            ("criterion_p2", "criterion_podd")
        } else {
            ("criterion_podd", "criterion_p2")
        };
        out.push(record_of(m, run, criterion(m)));
        out.push(Record::skipped(other, format!("not applicable at p={}", m.p())).for_model(m));
        out.push(record_of(m, "cor_surjective_equiv", cor_surjective_equiv(m)));
    }
    if suite.includes(Suite::Summand) {
        out.push(record_of(m, "summand_condition", summand_condition(m)));
    }
    if suite.includes(Suite::Hs) {
        out.push(Record::from_report(&hs_equivalences(m.module())));
        out.push(record_of(m, "h1_implies_h90", h1_implies_h90(m)));
    }
    if suite.includes(Suite::Lemma) {
        out.push(record_of(m, "check_length_lemma", check_length_lemma_all(m)));
        out.push(record_of(m, "check_sigmamin1", check_sigmamin1(m)));
    }
    out
}

pub fn check(path: &Path, suite: Suite) -> CmdResult {
    let m = load_model(path)?;
    let report = validate_model(&m, false);
    if !report.passed() {
        let c = report.first_failure().expect("failing report has a failing clause");
        return Err(UsageError::Invalid(format!(
            "{}: model does not validate: {} fails ({})",
            path.display(),
            c.name,
            c.detail
        )));
    }
    Ok(suite_records(&m, suite))
}

pub struct BackendParams {
    pub kind: BackendKind,
    pub p: Option<u32>,
    pub q: Option<u64>,
    pub ell: Option<u64>,
    pub a: Option<String>,
    pub n_max: usize,
    pub precision: u32,
}

fn build_tower(params: &BackendParams) -> Result<DegreeTower, UsageError> {
    let missing = |flag: &str, kind: &str| {
        UsageError::Invalid(format!("backend {} requires --{}", kind, flag))
    };
    Ok(match params.kind {
        BackendKind::Ff => {
            let p = params.p.ok_or_else(|| missing("p", "ff"))?;
            let q = params.q.ok_or_else(|| missing("q", "ff"))?;
            ff_build_tower(p, q, params.n_max)?
        }
        BackendKind::Real => real_build_tower(params.n_max)?,
        BackendKind::Local => {
            let ell = params.ell.ok_or_else(|| missing("ell", "local"))?;
            let a = params.a.as_deref().ok_or_else(|| missing("a", "local"))?;
            let choice = AChoice::parse(a)?;
            local_build_tower(ell, choice, params.n_max, params.precision)?
        }
    })
}

/// Builds the tower and runs every applicable checker at every degree.
/// The raw Hilbert 90 verdicts are informational; everything else is a
/// theorem check.
pub fn backend(params: &BackendParams, dump_dir: Option<&Path>) -> CmdResult {
    let t = build_tower(params)?;
    let mut out = Vec::new();
    for (k, m) in t.models.iter().enumerate() {
        let n = k + 1;
        let validate = validate_model(m, true);
        out.push(Record::from_report(&validate).at_degree(n));
        let h90 = h90_holds(m)?;
        out.push(Record::from_report(&h90).at_degree(n).informational());
        out.push(agreement("small_h90 == h90_holds", &small_h90(m)?, &h90).at_degree(n));
        let crit = criterion(m)?;
        let name = format!("{} == h90_holds", crit.checker);
        out.push(agreement(&name, &crit, &h90).at_degree(n));
        out.push(record_of(m, "check_sigmamin1", check_sigmamin1(m)).at_degree(n));
        out.push(record_of(m, "check_length_lemma", check_length_lemma_all(m)).at_degree(n));
        out.push(record_of(m, "h1_implies_h90", h1_implies_h90(m)).at_degree(n));
        if m.p() == 2 {
            out.push(record_of(m, "hs_p2_ann_check", hs_p2_ann_check(&t, n)).at_degree(n));
        }
    }
    out.push(Record::from_report(&tower_consistency(&t)).with_detail(t.descriptor.clone()));
    for (name, r) in [
        ("hereditary_check", hereditary_check(&t)),
        ("cd_forward_check", cd_forward_check(&t)),
    ] {
        out.push(match r {
            Ok(r) => Record::from_report(&r),
            Err(e) => Record::skipped(name, e),
        });
    }
    if let Some(dir) = dump_dir {
        write_tower(&t, dir).map_err(|e| UsageError::Io(format!("{}: {}", dir.display(), e)))?;
    }
    Ok(out)
}

pub struct SynthParams {
    pub p: u32,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
    pub max_dim: usize,
    pub blocks: Option<Vec<usize>>,
    pub extra_b_dim: usize,
    pub suite: Suite,
}

fn spec_for(params: &SynthParams, trial: u64) -> GenSpec {
    let seed = subseed(params.seed, trial);
    match (&params.blocks, params.mode) {
        (Some(sizes), mode) => {
            let mut counts = vec![0; params.p as usize];
            for &s in sizes {
                counts[s - 1] += 1;
            }
            match mode {
                Mode::Realizable => GenSpec::realizable(
                    params.p,
                    counts[0],
                    if params.p == 2 { 0 } else { counts[1] },
                    counts[params.p as usize - 1],
                    seed,
                ),
                Mode::Freeform => GenSpec::freeform(params.p, counts, params.extra_b_dim, seed),
            }
        }
        (None, Mode::Realizable) => random_realizable_spec(params.p, params.max_dim, seed),
        (None, Mode::Freeform) => random_freeform_spec(params.p, params.max_dim, seed)
            .with_extra_b_dim(params.extra_b_dim),
    }
}

type Property = (&'static str, Suite, fn(&ExtensionModel, Mode) -> Option<Verdict>);

fn prop_axioms(m: &ExtensionModel, mode: Mode) -> Option<Verdict> {
    Some(Verdict::from_bool(match mode {
        Mode::Realizable => validate_model(m, true).passed(),
        Mode::Freeform => m.ensure(&Axiom::BASE).is_ok(),
    }))
}

fn prop_small(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    let a = small_h90(m).ok()?;
    Some(Verdict::from_bool(a.verdict == h90_holds(m).ok()?.verdict))
}

fn prop_criterion(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    let a = criterion(m).ok()?;
    Some(Verdict::from_bool(a.verdict == h90_holds(m).ok()?.verdict))
}

fn prop_h1(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    Some(h1_implies_h90(m).ok()?.verdict)
}

fn prop_hs(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    Some(hs_equivalences(m.module()).verdict)
}

fn prop_lemma(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    Some(check_length_lemma_all(m).ok()?.verdict)
}

fn prop_sigmamin1(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    Some(check_sigmamin1(m).ok()?.verdict)
}

fn prop_summand(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    let a = summand_condition(m).ok()?;
    Some(Verdict::from_bool(a.verdict == h90_holds(m).ok()?.verdict))
}

fn prop_summand_oracle(m: &ExtensionModel, _: Mode) -> Option<Verdict> {
    let r = oracle_enumerate_summand_pairs(m).ok()?;
    Some(Verdict::from_bool(r.clauses.iter().all(|c| !c.verdict.is_fail())))
}

const PROPERTIES: [Property; 9] = [
    ("axioms", Suite::All, prop_axioms),
    ("small_h90 == h90_holds", Suite::H90, prop_small),
    ("criterion == h90_holds", Suite::Criteria, prop_criterion),
    ("summand_condition == h90_holds", Suite::Summand, prop_summand),
    ("summand_condition == oracle", Suite::Summand, prop_summand_oracle),
    ("hs_equivalences", Suite::Hs, prop_hs),
    ("h1_implies_h90", Suite::Hs, prop_h1),
    ("check_length_lemma", Suite::Lemma, prop_lemma),
    ("check_sigmamin1", Suite::Lemma, prop_sigmamin1),
];

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect::<String>()
        .split('_')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}

fn dump(dir: &Path, name: &str, m: &ExtensionModel) -> Result<PathBuf, UsageError> {
    std::fs::create_dir_all(dir).map_err(|e| UsageError::Io(format!("{}: {}", dir.display(), e)))?;
    let path = dir.join(name);
    std::fs::write(&path, model_to_text(m))
        .map_err(|e| UsageError::Io(format!("{}: {}", path.display(), e)))?;
    Ok(path)
}

/// Runs the generator `trials` times and tallies each property. The first
/// counterexample of every violated property is written to `dump_dir`.
pub fn synth(params: &SynthParams, dump_dir: &Path) -> CmdResult {
    if let Some(sizes) = &params.blocks {
        if let Some(&s) = sizes.iter().find(|&&s| s == 0 || s > params.p as usize) {
            return Err(UsageError::Invalid(format!(
                "--blocks: size {} outside 1..={}",
                s, params.p
            )));
        }
    }
    let active: Vec<&Property> = PROPERTIES
        .iter()
        .filter(|(_, s, _)| *s == Suite::All || params.suite.includes(*s))
        .collect();
    let mut counts = vec![Counts::default(); active.len()];
    let mut dumped: Vec<Option<PathBuf>> = vec![None; active.len()];
    for trial in 0..params.trials {
        let m = match params.mode {
            Mode::Realizable => gen_realizable(&spec_for(params, trial))?,
            Mode::Freeform => gen_freeform(&spec_for(params, trial))?,
        };
        for (k, (name, _, prop)) in active.iter().enumerate() {
            let v = prop(&m, params.mode).unwrap_or(Verdict::Skipped);
            counts[k].add(v);
            if v.is_fail() && dumped[k].is_none() {
                let file = format!(
                    "{}-p{}-seed{}-trial{}.h90",
                    file_stem(name),
                    params.p,
                    params.seed,
                    trial
                );
                dumped[k] = Some(dump(dump_dir, &file, &m)?);
            }
        }
    }
    Ok(active
        .iter()
        .zip(counts)
        .zip(dumped)
        .map(|(((name, _, _), c), path)| {
            let verdict = if c.fail > 0 {
                Verdict::Fail
            } else if c.pass > 0 {
                Verdict::Pass
            } else {
                Verdict::Skipped
            };
            let mut rec = Record::new(*name, verdict);
            rec.counts = Some(c);
            if let Some(path) = path {
                rec.detail = format!("counterexample written to {}", path.display());
            }
            rec
        })
        .collect())
}

/// Fast checkers against the exhaustive oracles on one model.
pub fn oracle_records(m: &ExtensionModel) -> CmdResult {
    let mut out = Vec::new();
    let summand = oracle_enumerate_summand_pairs(m)?;
    out.push(Record::from_report(&summand).informational());
    for c in &summand.clauses {
        out.push(Record::from_clause(c, &summand));
    }
    let exact = oracle_exactness(m)?;
    out.push(Record::from_report(&exact).informational());
    for c in &exact.clauses {
        out.push(Record::from_clause(c, &exact));
    }
    let profile = m.module().profile();
    let enumerated = oracle_decompose(m.module())?;
    let mut rec = Record::new(
        "decompose == oracle_decompose",
        Verdict::from_bool(enumerated == profile),
    )
    .with_detail(format!(
        "rank profile {:?}, enumerated {:?}",
        profile.multiplicities(),
        enumerated.multiplicities()
    ));
    rec.dims.a = m.a_dim();
    rec.dims.b = m.b_dim();
    rec.profile = profile.multiplicities().to_vec();
    out.push(rec);
    Ok(out)
}

/// Oracle comparison on every generated model; only disagreements and the
/// aggregate are reported.
pub fn oracle_sweep(p: u32, trials: u64, seed: u64, max_dim: usize, dump_dir: &Path) -> CmdResult {
    let mut counts = Counts::default();
    let mut out = Vec::new();
    for trial in 0..trials {
        let m = gen_realizable(&random_realizable_spec(p, max_dim, subseed(seed, trial)))?;
        let records = oracle_records(&m)?;
        let failed = records.iter().any(|r| r.is_failure());
        counts.add(Verdict::from_bool(!failed));
        if failed {
            let file = format!("oracle-p{}-seed{}-trial{}.h90", p, seed, trial);
            let path = dump(dump_dir, &file, &m)?;
            out.extend(records.into_iter().filter(|r| r.is_failure()).map(|r| {
                let detail = format!("{}; counterexample written to {}", r.detail, path.display());
                r.with_detail(detail)
            }));
        }
    }
    let mut summary = Record::new("fast == oracle", Verdict::from_bool(counts.fail == 0));
    summary.counts = Some(counts);
    out.push(summary);
    Ok(out)
}

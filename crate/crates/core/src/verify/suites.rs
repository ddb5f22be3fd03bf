use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{CheckRecord, ConfigRecord, Status, SuiteReport, Summary, SCHEMA_VERSION};
use super::{streams, Suite, SuiteConfig, CERT_TRIALS};
use crate::contraction::{contract, ContractedAlgebra};
use crate::error::Result;
use crate::exactcore::{fmt_rat, QMatrix, Rat};
use crate::invariants::{
    invariance_probe, kostant_probe, n_minus_degree, n_minus_degrees, normalized_y, slodowy_min_index,
    slodowy_slice_eval, Action, AdjointLoweredFamily, HighestFamily, InvariantFamily, KostantRecord, LeviInvariants,
    PolyFamily, SliceFamily,
};
use crate::liealg::{
    build_algebra, build_parabolic, format_levi, levi_invariant_degrees, Family, LeviBlock, LieType,
    ParabolicDecomposition, ParabolicSpec,
};
use crate::partitions::{
    interval_bidegrees, is_admissible_B, is_richardson_C, is_valid_nilpotent, levi_degrees_of, levi_type, lie_type_for,
    modified_partition_C, random_partition_where, Partition, RichardsonProfile,
};
use crate::richardson::{
    centraliser, find_richardson, jordan_type, subalgebra_index, subregular_structure, CentraliserData,
    RichardsonElement,
};
use crate::sampling::{derive_seed, random_supported, random_vector, rng, SzBound, DEFAULT_BOUND};

struct Recorder {
    seed: u64,
    timing: bool,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn new(cfg: &SuiteConfig) -> Self {
        Self {
            seed: cfg.seed,
            timing: cfg.timing,
            checks: Vec::new(),
        }
    }

    fn stream(&self, s: u64) -> u64 {
        derive_seed(self.seed, s)
    }

    fn clock(&self) -> Option<Instant> {
        self.timing.then(Instant::now)
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        name: &str,
        anchor: &str,
        seed: u64,
        started: Option<Instant>,
        bound: Option<String>,
        status: Status,
        witness: Value,
    ) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
            bound,
            seed,
            runtime_ms: started.map(|t| t.elapsed().as_millis() as u64),
        });
    }

    fn verdict(&mut self, name: &str, anchor: &str, seed: u64, started: Option<Instant>, ok: bool, witness: Value) {
        self.push(name, anchor, seed, started, None, status(ok), witness);
    }

    fn error(&mut self, name: &str, anchor: &str, seed: u64, started: Option<Instant>, err: impl ToString) {
        self.push(name, anchor, seed, started, None, Status::Fail, json!({ "error": err.to_string() }));
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn sparse_matrix(m: &QMatrix) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                out.push((i, j, fmt_rat(&m[(i, j)])));
            }
        }
    }
    out
}

fn sz(degree: usize, trials: usize) -> Option<String> {
    Some(SzBound::new(degree, DEFAULT_BOUND, trials).expr())
}

struct Setup {
    t: LieType,
    p: ParabolicDecomposition,
    q: ContractedAlgebra,
    f: InvariantFamily,
}

fn setup(cfg: &SuiteConfig) -> Result<Setup> {
    let t = cfg.lie_type.expect("validated");
    let a = Arc::new(build_algebra(t));
    let p = build_parabolic(a.clone(), cfg.spec.clone().expect("validated"))?;
    let q = contract(&p);
    Ok(Setup {
        t,
        f: InvariantFamily::new(a),
        p,
        q,
    })
}

fn config_record(cfg: &SuiteConfig) -> ConfigRecord {
    let t = cfg.lie_type;
    ConfigRecord {
        suite: cfg.suite.name().to_string(),
        algebra: t.map(|t| t.label()),
        family: t.map(|t| t.family.to_string()),
        rank: t.map(|t| t.rank),
        composition: cfg.spec.as_ref().map(|s| s.composition.clone()),
        central: cfg.spec.as_ref().map(|s| s.central),
        levi: t.zip(cfg.spec.as_ref()).map(|(t, s)| format_levi(&s.levi_blocks(t))),
        trials: cfg.trials,
        seed: cfg.seed,
    }
}

/// Runs the suite named in `cfg` after validating it.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let cfg = cfg.clone().with_defaults();
    cfg.validate()?;
    let start = Instant::now();
    let mut rec = Recorder::new(&cfg);
    match cfg.suite {
        Suite::Coadjoint => {
            let s = setup(&cfg)?;
            coadjoint_pipeline(&s, &cfg, &mut rec);
        }
        Suite::Subregular => {
            let s = setup(&cfg)?;
            subregular_pipeline(&s, &cfg, &mut rec);
        }
        Suite::Adjoint => {
            let s = setup(&cfg)?;
            adjoint_pipeline(&s, &cfg, &mut rec);
        }
        Suite::Counterexample => {
            let s = setup(&cfg)?;
            counterexample_pipeline(&s, &cfg, &mut rec);
        }
        Suite::Combinatorics => combinatorics_pipeline(&mut rec),
    }
    let failed = rec.checks.iter().filter(|c| c.status == Status::Fail).count();
    let passed = rec.checks.iter().filter(|c| c.status == Status::Pass).count();
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        config: config_record(&cfg),
        summary: Summary {
            status: status(failed == 0),
            passed,
            failed,
            runtime_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
            seed: cfg.seed,
        },
        checks: rec.checks,
    })
}

fn with_suite(cfg: &SuiteConfig, suite: Suite) -> Result<SuiteReport> {
    run_suite(&SuiteConfig { suite, ..cfg.clone() })
}

pub fn suite_coadjoint(cfg: &SuiteConfig) -> Result<SuiteReport> {
    with_suite(cfg, Suite::Coadjoint)
}

pub fn suite_adjoint(cfg: &SuiteConfig) -> Result<SuiteReport> {
    with_suite(cfg, Suite::Adjoint)
}

pub fn suite_subregular(cfg: &SuiteConfig) -> Result<SuiteReport> {
    with_suite(cfg, Suite::Subregular)
}

pub fn suite_counterexample(cfg: &SuiteConfig) -> Result<SuiteReport> {
    with_suite(cfg, Suite::Counterexample)
}

pub fn suite_combinatorics(seed: u64) -> Result<SuiteReport> {
    run_suite(&SuiteConfig::new(Suite::Combinatorics, None, None).with_seed(seed))
}

fn check_index(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::INDEX);
    let t0 = rec.clock();
    let dims = s.q.stabilizer_dims(cfg.trials, seed);
    let idx = dims.iter().copied().min().unwrap_or(0);
    let l = s.t.reductive_rank();
    rec.push(
        "index",
        "index of the contraction equals the rank",
        seed,
        t0,
        sz(s.q.dim(), cfg.trials),
        status(idx == l),
        json!({ "index": idx, "rank": l, "dim_q": s.q.dim(), "stabilizer_dims": dims }),
    );
}

fn richardson_step(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) -> Option<(RichardsonElement, Partition)> {
    let anchor = "a Richardson element exists in n";
    let seed = rec.stream(streams::RICHARDSON);
    let t0 = rec.clock();
    let e = match find_richardson(&s.p, cfg.trials.max(16), seed) {
        Ok(e) => e,
        Err(err) => {
            rec.error("richardson_element", anchor, seed, t0, err);
            return None;
        }
    };
    let ok = e.certificate == s.p.dim_n();
    rec.verdict(
        "richardson_element",
        anchor,
        seed,
        t0,
        ok,
        json!({
            "certificate_rank": e.certificate,
            "dim_n": s.p.dim_n(),
            "trial": e.trial,
            "e": sparse_matrix(&e.matrix),
        }),
    );
    let t0 = rec.clock();
    match jordan_type(&e.matrix) {
        Ok(lambda) => ok.then_some((e, lambda)),
        Err(err) => {
            rec.error("jordan_type", "Jordan type of the Richardson element", seed, t0, err);
            None
        }
    }
}

fn check_jordan(s: &Setup, lambda: &Partition, seed: u64, rec: &mut Recorder) {
    let t0 = rec.clock();
    let valid = is_valid_nilpotent(s.t, lambda).unwrap_or(false);
    let family_ok = match s.t.family {
        Family::C => is_richardson_C(lambda),
        _ => true,
    };
    // an orbit may have polarizations with different Levi types, so only
    // the Levi dimension and degrees are compared
    let from_partition = levi_type(s.t, lambda).ok();
    let ours = s.p.levi_blocks();
    let levi_ok = from_partition.as_ref().is_none_or(|b| {
        let dim = |v: &[LeviBlock]| v.iter().map(LeviBlock::dimension).sum::<usize>();
        dim(b) == dim(&ours) && levi_degrees_of(s.t, b) == levi_degrees_of(s.t, &ours)
    });
    rec.verdict(
        "jordan_type",
        "Jordan type is polarizable with a Levi of the same dimension and degrees",
        seed,
        t0,
        valid && family_ok && levi_ok,
        json!({
            "jordan_type": lambda.to_string(),
            "valid_nilpotent": valid,
            "richardson_c": (s.t.family == Family::C).then(|| is_richardson_C(lambda)),
            "admissible_b": (s.t.family == Family::B).then(|| is_admissible_B(lambda)),
            "levi_from_partition": from_partition.as_ref().map(|b| format_levi(b)),
            "levi": format_levi(&ours),
            "same_levi_type": from_partition.as_ref().map(|b| format_levi(b) == format_levi(&ours)),
        }),
    );
}

fn check_centraliser(s: &Setup, e: &RichardsonElement, cfg: &SuiteConfig, rec: &mut Recorder) -> CentraliserData {
    let seed = rec.stream(streams::CENTRALISER);
    let t0 = rec.clock();
    let c = centraliser(&s.p.algebra, &e.coords);
    let expected = s.t.dimension() - 2 * s.p.dim_n();
    let inside = c.supported_in(|i| s.p.in_p(i));
    let idx = subalgebra_index(&c, cfg.trials, seed);
    let l = s.t.reductive_rank();
    rec.push(
        "centraliser",
        "centraliser lies in p, has dim g - 2 dim n and index equal to the rank",
        seed,
        t0,
        sz(c.dim, cfg.trials),
        status(c.dim == expected && inside && idx == l),
        json!({ "dim": c.dim, "expected_dim": expected, "inside_p": inside, "index": idx, "rank": l }),
    );
    c
}

struct Coadjoint {
    h: HighestFamily,
    centraliser: CentraliserData,
}

fn coadjoint_pipeline(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) -> Option<Coadjoint> {
    check_index(s, cfg, rec);
    let (e, lambda) = richardson_step(s, cfg, rec)?;
    check_jordan(s, &lambda, rec.stream(streams::RICHARDSON), rec);
    let centraliser = check_centraliser(s, &e, cfg, rec);

    // bi-degrees
    let seed = rec.stream(streams::DEGREES);
    let t0 = rec.clock();
    let b = match n_minus_degrees(&s.f, &s.p, CERT_TRIALS, seed) {
        Ok(b) => b,
        Err(err) => {
            rec.error("bidegrees", "measured bi-degrees follow the interval rule", seed, t0, err);
            return None;
        }
    };
    let degs = s.f.degrees().to_vec();
    let measured: Vec<(usize, usize)> = degs.iter().zip(&b).map(|(m, b)| (m - b, *b)).collect();
    let expected = interval_bidegrees(s.t, &lambda).ok();
    rec.push(
        "bidegrees",
        "measured bi-degrees follow the interval rule",
        seed,
        t0,
        sz(s.f.max_degree(), CERT_TRIALS),
        status(expected.as_ref() == Some(&measured)),
        json!({ "measured": measured, "expected": expected, "degrees": degs }),
    );
    let sum_b: usize = b.iter().sum();
    rec.verdict(
        "n_minus_degree_sum",
        "n_- degrees of the highest components add up to dim n",
        seed,
        None,
        sum_b == s.p.dim_n(),
        json!({ "sum": sum_b, "dim_n": s.p.dim_n() }),
    );
    let sum_p: usize = measured.iter().map(|(a, _)| a).sum();
    let borel = (s.p.dim_levi() + s.t.reductive_rank()) / 2;
    rec.verdict(
        "p_degree_sum",
        "p degrees add up to the dimension of a Borel of the Levi",
        seed,
        None,
        sum_p == borel,
        json!({ "sum": sum_p, "dim_levi_borel": borel }),
    );
    let mut slice_degs: Vec<usize> = measured.iter().map(|(a, _)| *a).collect();
    slice_degs.sort_unstable();
    let levi_degs = levi_invariant_degrees(&s.p.spec, s.t);
    rec.verdict(
        "slice_degrees_levi",
        "slice degrees equal the degrees of the basic Levi invariants",
        seed,
        None,
        slice_degs == levi_degs,
        json!({ "slice_degrees": slice_degs, "levi_degrees": levi_degs }),
    );
    match RichardsonProfile::compute(s.t, &lambda) {
        Ok(prof) => rec.verdict(
            "partition_profile",
            "partition combinatorics agree with the measured degrees",
            seed,
            None,
            prof.is_consistent() && prof.bidegrees == measured,
            json!({
                "bidegrees": prof.bidegrees,
                "degree_multiset": prof.degree_multiset,
                "levi_degrees": prof.levi_degrees,
                "consistent": prof.is_consistent(),
            }),
        ),
        Err(err) => rec.push(
            "partition_profile",
            "partition combinatorics agree with the measured degrees",
            seed,
            None,
            None,
            Status::Info,
            json!({ "not_applicable": err.to_string() }),
        ),
    }

    let h = HighestFamily::new(s.f.clone(), s.p.clone(), b);
    check_highest_invariance(s, &h, cfg, rec);
    check_jacobian(&h, cfg, rec);
    check_kostant(s, &h, &e, cfg, rec);
    check_slice(s, &h, &e, cfg, rec);
    Some(Coadjoint { h, centraliser })
}

fn check_highest_invariance(s: &Setup, h: &HighestFamily, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::INVARIANCE);
    let t0 = rec.clock();
    let r = invariance_probe(&s.q, h, Action::Coadjoint, cfg.trials, seed);
    rec.push(
        "highest_invariance",
        "highest components are invariants of the contraction",
        seed,
        t0,
        sz(s.f.max_degree(), cfg.trials),
        status(r.passed),
        serde_json::to_value(&r).expect("serializes"),
    );
}

fn random_ranks<F: PolyFamily>(f: &F, trials: usize, seed: u64) -> Vec<usize> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let x = random_vector(&mut rng(derive_seed(seed, t as u64)), f.dim(), DEFAULT_BOUND);
            QMatrix::from_rows(f.gradients(&x)).rank()
        })
        .collect()
}

fn check_jacobian(h: &HighestFamily, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::JACOBIAN);
    let t0 = rec.clock();
    let ranks = random_ranks(h, cfg.trials, seed);
    let l = h.count();
    rec.verdict(
        "jacobian_rank",
        "highest components are algebraically independent",
        seed,
        t0,
        ranks.iter().all(|&r| r == l),
        json!({ "ranks": ranks, "expected": l }),
    );
}

/// Zero, `e`, a point supported on `n_-` coordinates, and `e + v` with `v`
/// in the kernel of the form at `e` restricted to `l + n_-`.
fn crafted_points(s: &Setup, e: &RichardsonElement, seed: u64) -> Vec<(String, Vec<Rat>)> {
    let a = &s.p.algebra;
    let d = s.p.dim();
    let xe = a.functional_coords(&e.matrix);
    let mut out = vec![
        ("zero".to_string(), vec![Rat::zero(); d]),
        ("e".to_string(), xe.clone()),
        (
            "n_minus_supported".to_string(),
            random_supported(&mut rng(seed), d, &s.p.idx_nminus, DEFAULT_BOUND),
        ),
    ];
    let mut support: Vec<usize> = s.p.idx_levi.iter().chain(&s.p.idx_nminus).copied().collect();
    support.sort_unstable();
    let form = s.q.coadjoint_form(&xe);
    let restricted = QMatrix::from_rows(
        support
            .iter()
            .map(|&i| support.iter().map(|&j| form[(i, j)].clone()).collect())
            .collect(),
    );
    if let Some(k) = restricted.kernel_basis().into_iter().next() {
        let mut v = vec![Rat::zero(); d];
        for (pos, &i) in support.iter().enumerate() {
            v[i] = k[pos].clone();
        }
        out.push((
            "e_plus_kernel".to_string(),
            a.functional_coords(&e.matrix.add(&a.to_matrix(&v))),
        ));
    }
    out
}

fn kostant_json(r: &[KostantRecord]) -> Value {
    json!({ "points": r })
}

fn check_kostant(s: &Setup, h: &HighestFamily, e: &RichardsonElement, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::KOSTANT);
    let t0 = rec.clock();
    let random: Vec<KostantRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let x = random_vector(&mut rng(derive_seed(seed, t as u64)), s.p.dim(), DEFAULT_BOUND);
            kostant_probe(&s.q, h, &x, &format!("random_{t}"))
        })
        .collect();
    rec.verdict(
        "kostant_random",
        "Kostant equality at random points",
        seed,
        t0,
        random.iter().all(|r| r.consistent),
        kostant_json(&random),
    );
    let t0 = rec.clock();
    let crafted: Vec<KostantRecord> = crafted_points(s, e, derive_seed(seed, u64::MAX))
        .par_iter()
        .map(|(tag, x)| kostant_probe(&s.q, h, x, tag))
        .collect();
    rec.verdict(
        "kostant_crafted",
        "Kostant equality at crafted singular points",
        seed,
        t0,
        crafted.len() >= 3 && crafted.iter().all(|r| r.consistent),
        kostant_json(&crafted),
    );
    let singular: Vec<&str> = crafted
        .iter()
        .filter(|r| r.tag != "zero" && r.stab_dim > r.index)
        .map(|r| r.tag.as_str())
        .collect();
    let note = if singular.is_empty() {
        "no singular point besides zero among the crafted points; the equivalence was exercised on the singular side only at zero"
    } else {
        "singular points besides zero were found and checked"
    };
    rec.push(
        "kostant_singular_coverage",
        "singular points reached by the crafted probes",
        seed,
        None,
        None,
        Status::Info,
        json!({ "singular_besides_zero": singular, "note": note }),
    );
}

fn check_slice(s: &Setup, h: &HighestFamily, e: &RichardsonElement, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::SLICE);
    let t0 = rec.clock();
    let anchor_k = "minimal index along e equals the p degree";
    let y = match normalized_y(&s.p, &e.matrix, cfg.trials, seed) {
        Ok(y) => y,
        Err(err) => {
            rec.error("slice_min_index", anchor_k, seed, t0, err);
            return;
        }
    };
    let ks: Result<Vec<usize>> = (0..h.count())
        .map(|i| slodowy_min_index(&s.f, i, &s.p, &e.matrix, &y, CERT_TRIALS, derive_seed(seed, 100 + i as u64)))
        .collect();
    let ks = match ks {
        Ok(k) => k,
        Err(err) => {
            rec.error("slice_min_index", anchor_k, seed, t0, err);
            return;
        }
    };
    let pdeg = h.p_degrees();
    rec.push(
        "slice_min_index",
        anchor_k,
        seed,
        t0,
        sz(s.f.max_degree(), CERT_TRIALS),
        status(ks == pdeg),
        json!({ "min_index": ks, "p_degrees": pdeg, "y": sparse_matrix(&y) }),
    );

    let t0 = rec.clock();
    let sf = SliceFamily::new(h.clone(), e.matrix.clone());
    let support = sf.support();
    let a = &s.p.algebra;
    let mismatches: Vec<Value> = (0..cfg.trials)
        .into_par_iter()
        .flat_map_iter(|t| {
            let v = random_supported(&mut rng(derive_seed(seed, 1000 + t as u64)), s.p.dim(), &support, DEFAULT_BOUND);
            let lhs = sf.eval_all(&v);
            let pt = e.matrix.add(&a.to_matrix(&v));
            let mut bad = Vec::new();
            for (i, l) in lhs.iter().enumerate() {
                let r = slodowy_slice_eval(&s.f, i, &e.matrix, &y, &pt, ks[i]);
                if *l != r {
                    bad.push(json!({
                        "trial": t,
                        "invariant": i,
                        "v": rats(&v),
                        "highest": fmt_rat(l),
                        "slice_component": fmt_rat(&r),
                    }));
                }
            }
            bad
        })
        .collect();
    rec.verdict(
        "slice_coincidence",
        "highest components restricted to e + p_- equal the slice components",
        seed,
        t0,
        mismatches.is_empty(),
        json!({
            "points": cfg.trials,
            "comparisons": cfg.trials * h.count(),
            "mismatches": mismatches.into_iter().take(4).collect::<Vec<_>>(),
        }),
    );
}

fn subregular_pipeline(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) {
    let Some(co) = coadjoint_pipeline(s, cfg, rec) else {
        return;
    };
    let l = s.t.reductive_rank();
    let pd = co.h.p_degrees();
    let mut pattern = vec![1; pd.len()];
    if let Some(last) = pattern.last_mut() {
        *last = 2;
    }
    rec.verdict(
        "p_degree_pattern",
        "minimal parabolic p degrees are 1, ..., 1, 2",
        rec.stream(streams::DEGREES),
        None,
        pd == pattern,
        json!({ "p_degrees": pd, "expected": pattern }),
    );
    let st = subregular_structure(&co.centraliser, l);
    rec.verdict(
        "centraliser_structure",
        "subregular centraliser has centre of dimension l - 1 and derived algebra of dimension at least 2",
        rec.stream(streams::CENTRALISER),
        None,
        st.centre_ok && st.derived_ok,
        serde_json::to_value(&st).expect("serializes"),
    );

    let seed = rec.stream(streams::BOREL);
    let t0 = rec.clock();
    let anchor = "top invariant has n_- degree deg F_l - 1 for the Borel";
    let borel = build_parabolic(s.p.algebra.clone(), ParabolicSpec::borel(s.t));
    let top = s.f.count() - 1;
    match borel.and_then(|bp| n_minus_degree(&s.f, top, &bp, CERT_TRIALS, seed)) {
        Ok(b) => rec.push(
            "borel_top_degree",
            anchor,
            seed,
            t0,
            sz(s.f.max_degree(), CERT_TRIALS),
            status(b + 1 == s.f.degree(top)),
            json!({ "n_minus_degree": b, "degree": s.f.degree(top) }),
        ),
        Err(err) => rec.error("borel_top_degree", anchor, seed, t0, err),
    }
}

fn adjoint_pipeline(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) {
    let seed = rec.stream(streams::ADJOINT);
    let t0 = rec.clock();
    let levi = LeviInvariants::new(s.p.clone());
    let r = invariance_probe(&s.q, &levi, Action::Adjoint, cfg.trials, seed);
    rec.push(
        "levi_invariance",
        "pulled-back Levi invariants are invariants of the contraction",
        seed,
        t0,
        sz(levi.degrees().iter().copied().max().unwrap_or(1), cfg.trials),
        status(r.passed),
        serde_json::to_value(&r).expect("serializes"),
    );
    let got = levi.sorted_degrees();
    let want = levi_invariant_degrees(&s.p.spec, s.t);
    rec.verdict(
        "levi_degrees",
        "degrees of the adjoint invariants are the Levi degrees",
        seed,
        None,
        got == want,
        json!({ "degrees": got, "expected": want }),
    );
    let (sl, sg): (usize, usize) = (got.iter().sum(), s.f.degrees().iter().sum());
    let ok = if s.p.is_whole() { got == s.f.degrees() } else { sl < sg };
    rec.verdict(
        "degree_decrease",
        "Levi degrees sum to less than the degrees of g for a proper parabolic",
        seed,
        None,
        ok,
        json!({ "levi_sum": sl, "g_sum": sg, "g_degrees": s.f.degrees(), "whole": s.p.is_whole() }),
    );

    let seed = rec.stream(streams::LOWERED);
    let t0 = rec.clock();
    let anchor = "top p components on the adjoint side are invariants";
    match AdjointLoweredFamily::measured(s.f.clone(), s.p.clone(), CERT_TRIALS, seed) {
        Ok(low) => {
            let r = invariance_probe(&s.q, &low, Action::Adjoint, cfg.trials, seed);
            rec.push(
                "lowered_invariance",
                anchor,
                seed,
                t0,
                sz(s.f.max_degree(), cfg.trials),
                status(r.passed),
                serde_json::to_value(&r).expect("serializes"),
            );
            rec.push(
                "lowered_degrees",
                "top p degrees of the lowered components next to the Levi degrees",
                seed,
                None,
                None,
                Status::Info,
                json!({ "top_p_degrees": low.top, "levi_degrees": got }),
            );
        }
        Err(err) => rec.error("lowered_invariance", anchor, seed, t0, err),
    }
}

fn counterexample_pipeline(s: &Setup, cfg: &SuiteConfig, rec: &mut Recorder) {
    check_index(s, cfg, rec);
    let Some((e, lambda)) = richardson_step(s, cfg, rec) else {
        return;
    };
    let want = Partition::new(vec![5, 3, 2, 2]).expect("partition");
    rec.verdict(
        "jordan_type",
        "Richardson orbit has Jordan type (5,3,2,2)",
        rec.stream(streams::RICHARDSON),
        None,
        lambda == want,
        json!({ "jordan_type": lambda.to_string(), "expected": want.to_string() }),
    );
    let t0 = rec.clock();
    let c = centraliser(&s.p.algebra, &e.coords);
    rec.verdict(
        "centraliser_dim",
        "centraliser has dimension 18",
        rec.stream(streams::CENTRALISER),
        t0,
        c.dim == 18,
        json!({ "dim": c.dim }),
    );
    let seed = rec.stream(streams::DEGREES);
    let t0 = rec.clock();
    let anchor = "highest components are algebraically dependent";
    match HighestFamily::measured(s.f.clone(), s.p.clone(), CERT_TRIALS, seed) {
        Ok(h) => {
            let seed = rec.stream(streams::JACOBIAN);
            let ranks = random_ranks(&h, cfg.trials, seed);
            let l = h.count();
            rec.verdict(
                "highest_dependence",
                anchor,
                seed,
                t0,
                ranks.iter().all(|&r| r < l),
                json!({
                    "ranks": ranks,
                    "max_rank": ranks.iter().max(),
                    "rank_of_g": l,
                    "n_minus_degrees": h.b,
                }),
            );
        }
        Err(err) => rec.error("highest_dependence", anchor, seed, t0, err),
    }
}

struct Example {
    name: &'static str,
    family: Family,
    parts: &'static [usize],
    multiset: &'static [usize],
    levi: &'static str,
    bidegrees: Option<&'static [(usize, usize)]>,
    modified: Option<&'static [usize]>,
}

const EXAMPLES: [Example; 4] = [
    Example {
        name: "example_sp12",
        family: Family::C,
        parts: &[6, 4, 2],
        multiset: &[1, 1, 1, 2, 2, 3],
        levi: "gl3+gl2+gl1",
        bidegrees: Some(&[(1, 1), (1, 3), (1, 5), (2, 6), (2, 8), (3, 9)]),
        modified: None,
    },
    Example {
        name: "example_sp8",
        family: Family::C,
        parts: &[3, 3, 1, 1],
        multiset: &[1, 2, 2, 4],
        levi: "gl2+sp4",
        bidegrees: Some(&[(1, 1), (2, 2), (2, 4), (4, 4)]),
        modified: None,
    },
    Example {
        name: "example_so17",
        family: Family::B,
        parts: &[5, 4, 4, 2, 2],
        multiset: &[1, 1, 2, 2, 3, 3, 4, 5],
        levi: "gl5+gl3",
        bidegrees: None,
        modified: None,
    },
    Example {
        name: "example_sp24",
        family: Family::C,
        parts: &[6, 6, 5, 5, 2],
        multiset: &[1, 1, 1, 2, 2, 2, 3, 3, 4, 4, 4, 5],
        levi: "gl5+gl4+gl1+sp4",
        bidegrees: None,
        modified: Some(&[7, 5, 5, 5, 2]),
    },
];

fn profile_of(family: Family, lambda: &Partition) -> Result<RichardsonProfile> {
    RichardsonProfile::compute(lie_type_for(family, lambda)?, lambda)
}

fn combinatorics_pipeline(rec: &mut Recorder) {
    for ex in &EXAMPLES {
        let t0 = rec.clock();
        let lambda = Partition::new(ex.parts.to_vec()).expect("partition");
        let anchor = "degree multiset of the slice invariants equals the Levi degrees";
        match profile_of(ex.family, &lambda) {
            Ok(p) => {
                let modified_ok = ex
                    .modified
                    .is_none_or(|m| modified_partition_C(&lambda).is_ok_and(|x| x.parts() == m));
                let ok = p.is_consistent()
                    && p.degree_multiset == ex.multiset
                    && format_levi(&p.levi_type) == ex.levi
                    && ex.bidegrees.is_none_or(|b| p.bidegrees == b)
                    && modified_ok;
                rec.verdict(
                    ex.name,
                    anchor,
                    0,
                    t0,
                    ok,
                    json!({
                        "partition": lambda.to_string(),
                        "algebra": p.lie_type.label(),
                        "dual": p.dual.to_string(),
                        "modified": p.modified.as_ref().map(ToString::to_string),
                        "levi": format_levi(&p.levi_type),
                        "degree_multiset": p.degree_multiset,
                        "bidegrees": p.bidegrees,
                        "dim_n": p.dim_n,
                        "sum_second": p.sum_second(),
                        "dim_levi_borel": p.dim_levi_borel,
                        "sum_first": p.sum_first(),
                    }),
                );
            }
            Err(err) => rec.error(ex.name, anchor, 0, t0, err),
        }
    }
    sweep(rec, "sweep_c", Family::C, 200, streams::SWEEP_C);
    sweep(rec, "sweep_b", Family::B, 100, streams::SWEEP_B);
}

fn sweep(rec: &mut Recorder, name: &str, family: Family, count: usize, stream: u64) {
    let seed = rec.stream(stream);
    let t0 = rec.clock();
    let mut r = rng(seed);
    let keep = |l: &Partition| match lie_type_for(family, l) {
        Ok(t) if is_valid_nilpotent(t, l).unwrap_or(false) => match family {
            Family::C => is_richardson_C(l),
            _ => is_admissible_B(l),
        },
        _ => false,
    };
    let (min, max, odd) = match family {
        Family::C => (2, 30, false),
        _ => (3, 29, true),
    };
    let parts: Vec<Partition> = (0..count)
        .map(|_| random_partition_where(&mut r, min, max, odd, keep))
        .collect();
    let bad: Vec<String> = parts
        .par_iter()
        .filter(|l| !profile_of(family, l).is_ok_and(|p| p.is_consistent()))
        .map(ToString::to_string)
        .collect();
    let distinct: std::collections::BTreeSet<&Partition> = parts.iter().collect();
    rec.verdict(
        name,
        "random polarizable partitions satisfy the degree and sum identities",
        seed,
        t0,
        bad.is_empty(),
        json!({ "family": family.to_string(), "sampled": count, "distinct": distinct.len(), "failures": bad }),
    );
}

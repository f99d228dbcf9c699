//! End-to-end run over a presentation file, producing a typed report.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::algebra::IdempotentKind;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::hypersurface::{
    build_context, c_algebra_via_dual, dimension_identities, end_m, quantum_polynomial_certificate,
    syzygy_presentation, EndAlgebraResult, HypersurfaceContext, IdentityCheck,
    QuantumPolynomialCertificate,
};
use crate::linalg::Matrix;
use crate::mcm::{
    classify, koszul_syzygy_dim, preresolution_table, syzygy_shift_evidence, CyclicIdentification,
    HomDims, SyzygyEvidence,
};
use crate::parse::parse_file;
use crate::quadratic::{
    koszul_certificate, non_commuting_generator, render_terms, Certificate, DegreeCheck, GradedAlgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Parse,
    QpCheck,
    Centrality,
    Regularity,
    BuildA,
    Dual,
    Koszul,
    EndM,
    Verdict,
    Idempotents,
    Classification,
    Syzygy,
    Preresolution,
    CrossCheck,
}

impl Stage {
    pub const ALL: [Stage; 14] = [
        Stage::Parse,
        Stage::QpCheck,
        Stage::Centrality,
        Stage::Regularity,
        Stage::BuildA,
        Stage::Dual,
        Stage::Koszul,
        Stage::EndM,
        Stage::Verdict,
        Stage::Idempotents,
        Stage::Classification,
        Stage::Syzygy,
        Stage::Preresolution,
        Stage::CrossCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::QpCheck => "qp-check",
            Stage::Centrality => "centrality",
            Stage::Regularity => "regularity",
            Stage::BuildA => "build-a",
            Stage::Dual => "dual",
            Stage::Koszul => "koszul",
            Stage::EndM => "end-m",
            Stage::Verdict => "verdict",
            Stage::Idempotents => "idempotents",
            Stage::Classification => "classification",
            Stage::Syzygy => "syzygy",
            Stage::Preresolution => "preresolution",
            Stage::CrossCheck => "cross-check",
        }
    }

    pub fn from_name(name: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub horizon: usize,
    pub seed: u64,
    pub stop_after: Option<Stage>,
    pub skip_qp_check: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            horizon: 6,
            seed: 0,
            stop_after: None,
            skip_qp_check: false,
        }
    }
}

/// How a claim is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Exact,
    Certificate { horizon: usize },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Exact => f.write_str("exact"),
            Evidence::Certificate { horizon } => write!(f, "certificate to degree {horizon}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSection {
    pub field: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub central: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QpSection {
    pub skipped: bool,
    pub certificate: Option<QuantumPolynomialCertificate>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralitySection {
    pub central: bool,
    pub failing_generator: Option<String>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSection {
    pub certificate: Certificate,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSection {
    pub relations: Vec<String>,
    pub relation_dim: usize,
    pub d: usize,
    pub gorenstein_parameter: i64,
    pub hilbert_s: Vec<usize>,
    pub hilbert_a: Vec<usize>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualSection {
    pub hilbert_dual_a: Vec<usize>,
    pub koszul: Certificate,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulSection {
    /// dim C_0, ..., dim C_{d+3}
    pub dims: Vec<usize>,
    /// Basis of C_d, labelled m1, m2, ...
    pub generators: Vec<String>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndSection {
    pub dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub closed_under_composition: bool,
    pub identities: Vec<IdentityCheck>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictSection {
    pub isolated: bool,
    pub radical_dim: usize,
    pub evidence: Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentStatus {
    Found,
    NonSplit,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentSection {
    pub status: IdempotentStatus,
    pub kind: Option<IdempotentKind>,
    pub matrices: Vec<Vec<Vec<String>>>,
    pub note: Option<String>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandSection {
    pub generator: String,
    pub annihilator: Option<String>,
    pub hilbert: Vec<usize>,
    pub quotient_hilbert: Option<Vec<usize>>,
    pub matches_quotient: bool,
    pub annihilates_exactly: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationSection {
    pub summands: Vec<SummandSection>,
    pub module_hilbert: Vec<usize>,
    pub additivity: Certificate,
    /// dim 𝕄_n against the rank of the Koszul differential on C_d ⊗ A_n.
    pub resolution_check: Certificate,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygySection {
    pub evidence_data: SyzygyEvidence,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreresolutionSection {
    pub modules: Vec<String>,
    pub entries: Vec<HomDims>,
    pub nonnegative: bool,
    pub corner_vanishes: bool,
    pub column_matches: bool,
    pub diagonal_dim: usize,
    pub b0_dim: usize,
    pub b0_radical_dim: usize,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckSection {
    pub found: bool,
    pub central: Option<String>,
    pub power: Option<usize>,
    pub dim: Option<usize>,
    pub radical_dim: Option<usize>,
    pub blocks_end: Option<Vec<usize>>,
    pub blocks_dual: Option<Vec<usize>>,
    pub agree: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub stage: Stage,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub horizon: usize,
    pub seed: u64,
    pub input: Option<InputSection>,
    pub qp_check: Option<QpSection>,
    pub centrality: Option<CentralitySection>,
    pub regularity: Option<CertificateSection>,
    pub algebra: Option<AlgebraSection>,
    pub dual: Option<DualSection>,
    pub koszul: Option<KoszulSection>,
    pub end: Option<EndSection>,
    pub verdict: Option<VerdictSection>,
    pub idempotents: Option<IdempotentSection>,
    pub classification: Option<ClassificationSection>,
    pub syzygy: Option<SyzygySection>,
    pub preresolution: Option<PreresolutionSection>,
    pub cross_check: Option<CrossCheckSection>,
    pub warnings: Vec<String>,
    pub failure: Option<StageFailure>,
}

impl Report {
    fn empty(opts: &RunOptions) -> Self {
        Report {
            horizon: opts.horizon,
            seed: opts.seed,
            input: None,
            qp_check: None,
            centrality: None,
            regularity: None,
            algebra: None,
            dual: None,
            koszul: None,
            end: None,
            verdict: None,
            idempotents: None,
            classification: None,
            syzygy: None,
            preresolution: None,
            cross_check: None,
            warnings: Vec::new(),
            failure: None,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }

    pub fn isolated(&self) -> Option<bool> {
        self.verdict.as_ref().map(|v| v.isolated)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Stops the run after a hard failure or the requested stage.
enum Flow {
    Stop,
}

struct Runner<'a> {
    opts: &'a RunOptions,
    report: Report,
}

impl Runner<'_> {
    fn fail(&mut self, stage: Stage, e: Error) -> Flow {
        self.report.failure = Some(StageFailure {
            stage,
            message: e.to_string(),
        });
        Flow::Stop
    }

    fn done(&self, stage: Stage) -> bool {
        self.opts.stop_after == Some(stage)
    }
}

fn strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_strings()
}

fn generator_label(coords: &[FieldElement]) -> String {
    render_terms(
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), format!("m{}", k + 1))),
    )
}

/// Runs every stage on the file contents and returns the (possibly partial)
/// report.
pub fn run_pipeline(text: &str, opts: &RunOptions) -> Report {
    let mut runner = Runner {
        opts,
        report: Report::empty(opts),
    };
    let _ = run_stages(&mut runner, text);
    runner.report
}

fn run_stages(r: &mut Runner<'_>, text: &str) -> std::result::Result<(), Flow> {
    let h = r.opts.horizon;
    let file = match parse_file(text) {
        Ok(f) => f,
        Err(e) => return Err(r.fail(Stage::Parse, e)),
    };
    let s = match file.presentation() {
        Ok(s) => s,
        Err(e) => return Err(r.fail(Stage::Parse, e)),
    };
    let w = file.central.clone();
    r.report.input = Some(InputSection {
        field: file.field.spec_string(),
        generators: file.vars.clone(),
        relations: s.relations().basis().iter().map(|v| s.tensor_string(v, 2)).collect(),
        central: s.tensor_string(&w, 2),
    });
    let g = s.num_generators();
    if g < 2 {
        return Err(r.fail(Stage::QpCheck, Error::UnsupportedDimension(g)));
    }

    // quantum-polynomial certificate
    let qp = if r.opts.skip_qp_check {
        r.report.warnings.push(
            "WARNING: quantum-polynomial check skipped; results assume S is a quantum polynomial algebra"
                .into(),
        );
        r.report.qp_check = Some(QpSection {
            skipped: true,
            certificate: None,
            evidence: Evidence::Certificate { horizon: h },
        });
        None
    } else {
        let cert = quantum_polynomial_certificate(&s, h);
        let passed = cert.passed;
        let detail = [&cert.hilbert, &cert.dual, &cert.koszul]
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{} fails at degree {}", c.name, c.first_failure.unwrap()));
        r.report.qp_check = Some(QpSection {
            skipped: false,
            certificate: Some(cert.clone()),
            evidence: Evidence::Certificate { horizon: h },
        });
        if !passed {
            return Err(r.fail(Stage::QpCheck, Error::NotQuantumPolynomial(detail.unwrap_or_default())));
        }
        Some(cert)
    };
    if r.done(Stage::QpCheck) {
        return Ok(());
    }

    // centrality
    let s_alg = GradedAlgebra::new(s.clone());
    match s.relations().contains(&w) {
        Ok(true) => return Err(r.fail(Stage::Centrality, Error::RelationDependence)),
        Ok(false) => {}
        Err(e) => return Err(r.fail(Stage::Centrality, e)),
    }
    let failing = match non_commuting_generator(&s_alg, &w) {
        Ok(v) => v,
        Err(e) => return Err(r.fail(Stage::Centrality, e)),
    };
    r.report.centrality = Some(CentralitySection {
        central: failing.is_none(),
        failing_generator: failing.map(|v| s.generators()[v].clone()),
        evidence: Evidence::Exact,
    });
    if let Some(v) = failing {
        return Err(r.fail(Stage::Centrality, Error::NotCentral(s.generators()[v].clone())));
    }
    if r.done(Stage::Centrality) {
        return Ok(());
    }

    // regularity
    let reg = match crate::quadratic::is_regular_deg2(&s_alg, &w, h) {
        Ok(c) => c,
        Err(e) => return Err(r.fail(Stage::Regularity, e)),
    };
    r.report.regularity = Some(CertificateSection {
        certificate: reg.clone(),
        evidence: Evidence::Certificate { horizon: h },
    });
    if let Some(n) = reg.first_failure {
        let c = reg.checks.iter().find(|c| c.degree == n).unwrap();
        let e = Error::NotRegularCertificate {
            degree: n,
            expected: c.expected,
            actual: c.actual,
        };
        return Err(r.fail(Stage::Regularity, e));
    }
    if r.done(Stage::Regularity) {
        return Ok(());
    }

    // A = S/Sw
    let ctx: HypersurfaceContext = match build_context(&s, &w, h) {
        Ok(c) => c,
        Err(e) => return Err(r.fail(Stage::BuildA, e)),
    };
    r.report.algebra = Some(AlgebraSection {
        relations: ctx.a.relations().basis().iter().map(|v| ctx.a.tensor_string(v, 2)).collect(),
        relation_dim: ctx.a.relations().dim(),
        d: ctx.d,
        gorenstein_parameter: ctx.gorenstein_parameter(),
        hilbert_s: ctx.s_alg.hilbert(h),
        hilbert_a: ctx.a_alg.hilbert(h),
        evidence: Evidence::Exact,
    });
    if r.done(Stage::BuildA) {
        return Ok(());
    }

    // dual and Koszul numerics
    let dual_a = GradedAlgebra::new(ctx.a.quadratic_dual());
    let koszul = koszul_certificate(&ctx.a_alg, &dual_a, h + 2);
    if !koszul.passed {
        r.report.warnings.push(format!(
            "Koszul numeric check fails at degree {}",
            koszul.first_failure.unwrap()
        ));
    }
    r.report.dual = Some(DualSection {
        hilbert_dual_a: dual_a.hilbert(h + 2),
        koszul,
        evidence: Evidence::Certificate { horizon: h + 2 },
    });
    if r.done(Stage::Dual) {
        return Ok(());
    }

    // Koszul spaces
    let cd = &ctx.koszul[ctx.d];
    r.report.koszul = Some(KoszulSection {
        dims: ctx.koszul.iter().map(|c| c.dim()).collect(),
        generators: cd
            .basis()
            .iter()
            .enumerate()
            .map(|(k, v)| format!("m{} = {}", k + 1, ctx.a.tensor_string(v, ctx.d)))
            .collect(),
        evidence: Evidence::Exact,
    });
    if r.done(Stage::Koszul) {
        return Ok(());
    }

    // End(𝕄)
    let end: EndAlgebraResult = match end_m(&ctx) {
        Ok(e) => e,
        Err(e) => return Err(r.fail(Stage::EndM, e)),
    };
    let radical_dim = end.algebra.radical().dim();
    let dual_total = qp.as_ref().map(|c| c.dual_total);
    if dual_total.is_none() {
        r.report
            .warnings
            .push("identities involving dim S! skipped without the quantum-polynomial certificate".into());
    }
    let identities = dimension_identities(&ctx, end.dim(), dual_total);
    for id in identities.iter().filter(|i| !i.pass) {
        r.report.warnings.push(format!("identity fails: {} ({} vs {})", id.name, id.lhs, id.rhs));
    }
    r.report.end = Some(EndSection {
        dim: end.dim(),
        basis: end.basis.iter().map(strings).collect(),
        radical_dim,
        center_dim: end.algebra.center().dim(),
        closed_under_composition: true,
        identities,
        evidence: Evidence::Exact,
    });
    if r.done(Stage::EndM) {
        return Ok(());
    }

    let isolated = radical_dim == 0;
    r.report.verdict = Some(VerdictSection {
        isolated,
        radical_dim,
        evidence: Evidence::Exact,
    });
    if r.done(Stage::Verdict) {
        return Ok(());
    }

    if isolated {
        idempotent_stages(r, &ctx, &end)?;
    } else {
        r.report.idempotents = Some(IdempotentSection {
            status: IdempotentStatus::Skipped,
            kind: None,
            matrices: Vec::new(),
            note: Some("End(M) is not semisimple".into()),
            evidence: Evidence::Exact,
        });
    }
    if r.opts.stop_after.is_some_and(|s| s < Stage::CrossCheck) {
        return Ok(());
    }
    cross_check(r, &ctx, &end);
    Ok(())
}

/// Idempotents, classification, syzygy evidence and the pre-resolution
/// table. A non-split End(𝕄) ends this chain with a warning only.
fn idempotent_stages(
    r: &mut Runner<'_>,
    ctx: &HypersurfaceContext,
    end: &EndAlgebraResult,
) -> std::result::Result<(), Flow> {
    let h = r.opts.horizon;
    let set = match end.algebra.primitive_idempotents(r.opts.seed) {
        Ok(set) => set,
        Err(Error::NonSplit { factor }) => {
            r.report
                .warnings
                .push(format!("idempotents: base field does not split End(M) ({factor}); rerun over a larger field"));
            r.report.idempotents = Some(IdempotentSection {
                status: IdempotentStatus::NonSplit,
                kind: None,
                matrices: Vec::new(),
                note: Some(format!("irreducible factor {factor}")),
                evidence: Evidence::Exact,
            });
            return Ok(());
        }
        Err(e) => return Err(r.fail(Stage::Idempotents, e)),
    };
    let matrices: Vec<Matrix> = set.idempotents.iter().map(|e| end.to_matrix(e)).collect();
    r.report.idempotents = Some(IdempotentSection {
        status: IdempotentStatus::Found,
        kind: Some(set.kind),
        matrices: matrices.iter().map(strings).collect(),
        note: None,
        evidence: Evidence::Exact,
    });
    if r.done(Stage::Idempotents) {
        return Err(Flow::Stop);
    }

    let m = match syzygy_presentation(ctx) {
        Ok(m) => m,
        Err(e) => return Err(r.fail(Stage::Classification, e)),
    };
    let classification = match classify(&m, &ctx.a_alg, &matrices, h) {
        Ok(c) => c,
        Err(e) => return Err(r.fail(Stage::Classification, e)),
    };
    let checks: Vec<DegreeCheck> = (0..=h)
        .map(|n| {
            let independent = koszul_syzygy_dim(&ctx.a_alg, &ctx.koszul[ctx.d], ctx.d, n);
            Certificate::check(n, independent as i64, classification.module_hilbert[n] as i64)
        })
        .collect();
    let resolution_check = Certificate::from_checks("dim M_n = dim Ω^d(k)_(n+d)", h, checks);
    let summands: Vec<SummandSection> = classification
        .summands
        .iter()
        .map(|s| {
            let generator = s.generators.iter().map(|g| generator_label(g)).collect::<Vec<_>>().join(", ");
            let (annihilator, quotient_hilbert, matches, note) = match &s.identification {
                CyclicIdentification::Cyclic {
                    annihilator,
                    quotient_hilbert,
                    matches,
                    ..
                } => (
                    Some(ctx.a_alg.element_string(annihilator, 1)),
                    Some(quotient_hilbert.clone()),
                    *matches,
                    None,
                ),
                CyclicIdentification::NonCyclic { reason } => (None, None, false, Some(reason.clone())),
            };
            SummandSection {
                generator,
                annihilator,
                hilbert: s.hilbert.clone(),
                quotient_hilbert,
                matches_quotient: matches,
                annihilates_exactly: s.annihilates,
                note,
            }
        })
        .collect();
    r.report.classification = Some(ClassificationSection {
        summands,
        module_hilbert: classification.module_hilbert.clone(),
        additivity: classification.additivity.clone(),
        resolution_check,
        evidence: Evidence::Certificate { horizon: h },
    });
    if r.done(Stage::Classification) {
        return Err(Flow::Stop);
    }

    let annihilators: Vec<_> = classification.summands.iter().filter_map(|s| s.annihilator().cloned()).collect();
    let evidence = match syzygy_shift_evidence(&m, &ctx.a_alg, &annihilators, h) {
        Ok(e) => e,
        Err(e) => return Err(r.fail(Stage::Syzygy, e)),
    };
    r.report.syzygy = Some(SyzygySection {
        evidence_data: evidence,
        evidence: Evidence::Certificate { horizon: h },
    });
    if r.done(Stage::Syzygy) {
        return Err(Flow::Stop);
    }

    let presentations: Vec<_> = classification.summands.iter().map(|s| s.presentation.clone()).collect();
    let table = match preresolution_table(&presentations, &ctx.a_alg, -3, h as i64) {
        Ok(t) => t,
        Err(e) => return Err(r.fail(Stage::Preresolution, e)),
    };
    r.report.preresolution = Some(PreresolutionSection {
        modules: table.labels.clone(),
        entries: table.entries.clone(),
        nonnegative: table.nonnegative,
        corner_vanishes: table.corner_vanishes,
        column_matches: table.column_matches,
        diagonal_dim: table.diagonal_dim,
        b0_dim: table.b0.dim(),
        b0_radical_dim: table.b0.radical().dim(),
        evidence: Evidence::Certificate { horizon: h },
    });
    if r.done(Stage::Preresolution) {
        return Err(Flow::Stop);
    }
    Ok(())
}

fn cross_check(r: &mut Runner<'_>, ctx: &HypersurfaceContext, end: &EndAlgebraResult) {
    let blocks_end = end.algebra.block_structure().ok();
    let section = match c_algebra_via_dual(ctx, None) {
        Ok(dual) => {
            let rad = dual.algebra.radical().dim();
            let blocks_dual = dual.algebra.block_structure().ok();
            let agree = dual.algebra.dim() == end.dim()
                && rad == end.algebra.radical().dim()
                && blocks_dual == blocks_end;
            if !agree {
                r.report.warnings.push("End(M) and the dual construction disagree".into());
            }
            CrossCheckSection {
                found: true,
                central: Some(dual.central_label.clone()),
                power: Some(dual.power),
                dim: Some(dual.algebra.dim()),
                radical_dim: Some(rad),
                blocks_end,
                blocks_dual,
                agree,
                evidence: Evidence::Exact,
            }
        }
        Err(e) => {
            r.report.warnings.push(format!("cross-check: {e}; relying on End(M) alone"));
            CrossCheckSection {
                found: false,
                central: None,
                power: None,
                dim: None,
                radical_dim: None,
                blocks_end,
                blocks_dual: None,
                agree: false,
                evidence: Evidence::Exact,
            }
        }
    };
    r.report.cross_check = Some(section);
}

/// Reads and runs a file from disk.
pub fn run_file(path: &std::path::Path, opts: &RunOptions) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    Ok(run_pipeline(&text, opts))
}

fn dims(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_matrix(out: &mut String, m: &[Vec<String>], indent: &str) {
    let width = m.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    for row in m {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[ {} ]", cells.join("  "));
    }
}

fn write_cert(out: &mut String, c: &Certificate) {
    let status = if c.passed { "pass" } else { "FAIL" };
    let _ = writeln!(out, "  {}: {status} (degrees checked up to {})", c.name, c.horizon);
    if let Some(n) = c.first_failure {
        let check = c.checks.iter().find(|k| k.degree == n).unwrap();
        let _ = writeln!(out, "    first failure at degree {n}: expected {}, found {}", check.expected, check.actual);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "horizon N = {}, seed = {}", self.horizon, self.seed);
        if let Some(i) = &self.input {
            let _ = writeln!(out, "\n[input]");
            let _ = writeln!(out, "  field: {}", i.field);
            let _ = writeln!(out, "  generators: {}", i.generators.join(", "));
            for rel in &i.relations {
                let _ = writeln!(out, "  relation: {rel}");
            }
            let _ = writeln!(out, "  central: {}", i.central);
        }
        if let Some(q) = &self.qp_check {
            let _ = writeln!(out, "\n[qp-check] ({})", q.evidence);
            match &q.certificate {
                None => out.push_str("  skipped\n"),
                Some(c) => {
                    write_cert(&mut out, &c.hilbert);
                    write_cert(&mut out, &c.dual);
                    write_cert(&mut out, &c.koszul);
                    let _ = writeln!(out, "  dim S! = {}", c.dual_total);
                }
            }
        }
        if let Some(c) = &self.centrality {
            let _ = writeln!(out, "\n[centrality] ({})", c.evidence);
            let _ = writeln!(out, "  central: {}", if c.central { "yes" } else { "no" });
            if let Some(g) = &c.failing_generator {
                let _ = writeln!(out, "  fails to commute with {g}");
            }
        }
        if let Some(c) = &self.regularity {
            let _ = writeln!(out, "\n[regularity] ({})", c.evidence);
            write_cert(&mut out, &c.certificate);
        }
        if let Some(a) = &self.algebra {
            let _ = writeln!(out, "\n[build-a] ({})", a.evidence);
            let _ = writeln!(out, "  dim R_A = {}", a.relation_dim);
            for rel in &a.relations {
                let _ = writeln!(out, "  relation: {rel}");
            }
            let _ = writeln!(out, "  d = {}, Gorenstein parameter = {} (recorded only)", a.d, a.gorenstein_parameter);
            let _ = writeln!(out, "  H_S: {}", dims(&a.hilbert_s));
            let _ = writeln!(out, "  H_A: {}", dims(&a.hilbert_a));
        }
        if let Some(d) = &self.dual {
            let _ = writeln!(out, "\n[dual] ({})", d.evidence);
            let _ = writeln!(out, "  H_A!: {}", dims(&d.hilbert_dual_a));
            write_cert(&mut out, &d.koszul);
        }
        if let Some(k) = &self.koszul {
            let _ = writeln!(out, "\n[koszul] ({})", k.evidence);
            let _ = writeln!(out, "  dim C_n for n = 0..: {}", dims(&k.dims));
            for g in &k.generators {
                let _ = writeln!(out, "  {g}");
            }
        }
        if let Some(e) = &self.end {
            let _ = writeln!(out, "\n[end-m] ({})", e.evidence);
            let _ = writeln!(out, "  dim End(M) = {}, radical {}, center {}", e.dim, e.radical_dim, e.center_dim);
            for (k, m) in e.basis.iter().enumerate() {
                let _ = writeln!(out, "  f{}:", k + 1);
                write_matrix(&mut out, m, "    ");
            }
            for id in &e.identities {
                let _ = writeln!(out, "  {}: {} vs {} {}", id.name, id.lhs, id.rhs, if id.pass { "pass" } else { "FAIL" });
            }
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "\n[verdict] ({})", v.evidence);
            let _ = writeln!(out, "  isolated: {}", if v.isolated { "yes" } else { "no" });
        }
        if let Some(i) = &self.idempotents {
            let _ = writeln!(out, "\n[idempotents] ({})", i.evidence);
            let status = match i.status {
                IdempotentStatus::Found => "found",
                IdempotentStatus::NonSplit => "non-split",
                IdempotentStatus::Skipped => "skipped",
            };
            let _ = writeln!(out, "  status: {status}");
            if let Some(n) = &i.note {
                let _ = writeln!(out, "  note: {n}");
            }
            for (k, m) in i.matrices.iter().enumerate() {
                let _ = writeln!(out, "  e{}:", k + 1);
                write_matrix(&mut out, m, "    ");
            }
        }
        if let Some(c) = &self.classification {
            let _ = writeln!(out, "\n[classification] ({})", c.evidence);
            let _ = writeln!(out, "  H_M: {}", dims(&c.module_hilbert));
            for (k, s) in c.summands.iter().enumerate() {
                let ann = s.annihilator.as_deref().unwrap_or("non-cyclic");
                let _ = writeln!(out, "  M{} = ({})A  ~  A/({ann})A", k + 1, s.generator);
                let _ = writeln!(out, "    H: {}", dims(&s.hilbert));
                if let Some(q) = &s.quotient_hilbert {
                    let _ = writeln!(out, "    H of quotient: {} ({})", dims(q), if s.matches_quotient { "match" } else { "MISMATCH" });
                }
            }
            write_cert(&mut out, &c.additivity);
            write_cert(&mut out, &c.resolution_check);
        }
        if let Some(s) = &self.syzygy {
            let _ = writeln!(out, "\n[syzygy] ({})", s.evidence);
            write_cert(&mut out, &s.evidence_data.dims);
            let matching: Vec<String> = s
                .evidence_data
                .matching
                .iter()
                .enumerate()
                .map(|(i, m)| match m {
                    Some(j) => format!("u{} -> u{}", i + 1, j + 1),
                    None => format!("u{} -> ?", i + 1),
                })
                .collect();
            let _ = writeln!(out, "  annihilator matching: {}", matching.join(", "));
        }
        if let Some(p) = &self.preresolution {
            let _ = writeln!(out, "\n[preresolution] ({})", p.evidence);
            for e in &p.entries {
                let ds: Vec<String> = e.dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                let _ = writeln!(out, "  Hom({}, {}): {}", p.modules[e.source], p.modules[e.target], ds.join(" "));
            }
            let _ = writeln!(out, "  negative degrees vanish: {}", p.nonnegative);
            let _ = writeln!(out, "  Hom(M^i, A)_0 = 0: {}", p.corner_vanishes);
            let _ = writeln!(out, "  Hom(A, M^i)_0 = M^i_0: {}", p.column_matches);
            let _ = writeln!(out, "  dim B_0 = {} (radical {}), End(M) block {}", p.b0_dim, p.b0_radical_dim, p.diagonal_dim);
            if p.corner_vanishes && p.column_matches {
                out.push_str("  B_0 is triangular with semisimple diagonal, so gldim B_0 <= 1\n");
            }
        }
        if let Some(c) = &self.cross_check {
            let _ = writeln!(out, "\n[cross-check] ({})", c.evidence);
            if c.found {
                let _ = writeln!(
                    out,
                    "  central element of A!: {} (power {})",
                    c.central.as_deref().unwrap_or(""),
                    c.power.unwrap_or(0)
                );
                let _ = writeln!(out, "  dim C(A) = {}, radical {}", c.dim.unwrap_or(0), c.radical_dim.unwrap_or(0));
                if let (Some(a), Some(b)) = (&c.blocks_end, &c.blocks_dual) {
                    let _ = writeln!(out, "  blocks: End(M) {{{}}}, C(A) {{{}}}", dims(a), dims(b));
                }
                let _ = writeln!(out, "  agree: {}", c.agree);
            } else {
                out.push_str("  no stable central element found\n");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "\nwarning: {w}");
        }
        if let Some(fl) = &self.failure {
            let _ = writeln!(out, "\nerror in stage {}: {}", fl.stage, fl.message);
        }
        f.write_str(&out)
    }
}

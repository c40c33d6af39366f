//! Instance files, machine-readable reports and the command implementations
//! behind the `eicp` binary.
//!
//! Both documents are JSON. Reports print every real with 17 significant
//! digits so that parsing them back reproduces the exact doubles.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::classes::{shift_pair, suggest_shift, ClassCertificate, MatrixPair};
use crate::error::{Error, Hypothesis, Result};
use crate::families::{ones_shift_instance, scaled_pair_instance, FamilyInstance, FamilyParams};
use crate::interval::{Interval, IntervalUnion};
use crate::linalg::RealSymMatrix;
use crate::localization::{localize, LocalizationReport};
use crate::spectrum::{enumerate_spectrum, ContainmentVerdicts, EnumOptions, Spectrum};

/// Relative asymmetry tolerated in instance files.
pub const INSTANCE_SYMMETRY_TOL: f64 = 1e-9;

/// On-disk problem instance. `B` defaults to the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<f64>>>,
}

impl InstanceFile {
    pub fn from_pair(a: &RealSymMatrix, b: Option<&RealSymMatrix>) -> Self {
        InstanceFile {
            n: a.n(),
            a: a.rows(),
            b: b.map(RealSymMatrix::rows),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn matrix(&self, rows: &[Vec<f64>], name: &str) -> Result<RealSymMatrix> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Parse(format!("{name} must be a {0}x{0} array", self.n)));
        }
        RealSymMatrix::from_rows_with_tol(rows, INSTANCE_SYMMETRY_TOL)
            .map_err(|e| Error::Parse(format!("{name}: {e}")))
    }

    pub fn matrices(&self) -> Result<(RealSymMatrix, RealSymMatrix)> {
        if self.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        let a = self.matrix(&self.a, "A")?;
        let b = match &self.b {
            Some(rows) => self.matrix(rows, "B")?,
            None => RealSymMatrix::identity(self.n),
        };
        Ok((a, b))
    }

    pub fn to_pair(&self) -> Result<MatrixPair> {
        let (a, b) = self.matrices()?;
        MatrixPair::new(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    pub b_defaulted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificates {
    #[serde(rename = "A")]
    pub a: ClassCertificate,
    #[serde(rename = "B")]
    pub b: ClassCertificate,
}

/// Everything a command produced, in machine-readable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub input: InstanceEcho,
    pub certificates: Certificates,
    /// Shift `μ` applied before localization; sets are reported back-shifted.
    pub shift: Option<f64>,
    pub localization: Option<LocalizationReport>,
    pub spectrum: Option<Spectrum>,
    pub verdicts: Option<ContainmentVerdicts>,
    pub tolerances: BTreeMap<String, f64>,
    /// Wall-clock seconds per stage.
    pub timings: BTreeMap<String, f64>,
}

impl ReportDocument {
    fn new(command: &str, file: &InstanceFile, pair: &MatrixPair) -> Self {
        ReportDocument {
            command: command.to_string(),
            input: InstanceEcho {
                n: pair.n(),
                a: pair.a().rows(),
                b: pair.b().rows(),
                b_defaulted: file.b.is_none(),
            },
            certificates: Certificates {
                a: pair.cert_a().clone(),
                b: pair.cert_b().clone(),
            },
            shift: None,
            localization: None,
            spectrum: None,
            verdicts: None,
            tolerances: BTreeMap::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json_17(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Pretty JSON formatter that writes every `f64` with 17 significant digits.
struct SeventeenDigits(PrettyFormatter<'static>);

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any value as pretty JSON with 17-significant-digit reals.
pub fn to_json_17<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Process exit code for an error, stable across releases:
/// 2 parse/read, 3 hypothesis, 4 size, 5 parameters, 1 anything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::HypothesisViolation(_) | Error::NotPositiveDefinite { .. } => 3,
        Error::DimensionTooLarge { .. } => 4,
        Error::ParamOutOfRange(_) => 5,
        _ => 1,
    }
}

/// Hypotheses that `check --require` can demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    BSdd,
    BPd,
    APd,
    ACopositive,
}

pub fn cmd_check(file: &InstanceFile, require: &[Requirement]) -> Result<ReportDocument> {
    let t0 = Instant::now();
    let pair = file.to_pair()?;
    let mut doc = ReportDocument::new("check", file, &pair);
    doc.timings.insert("certify".into(), t0.elapsed().as_secs_f64());
    for r in require {
        let ok = match r {
            Requirement::BSdd => pair.cert_b().is_sdd,
            Requirement::BPd => pair.cert_b().is_pd,
            Requirement::APd => pair.cert_a().is_pd,
            Requirement::ACopositive => pair.cert_a().is_copositive(),
        };
        if !ok {
            let h = match r {
                Requirement::BSdd => Hypothesis::BStrictlyDiagonallyDominant,
                Requirement::BPd => Hypothesis::BPositiveDefinite,
                Requirement::APd | Requirement::ACopositive => Hypothesis::ACopositive,
            };
            return Err(Error::HypothesisViolation(h));
        }
    }
    Ok(doc)
}

/// Which localization sets to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    K1,
    K1Cop,
    K2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftMode {
    None,
    Auto,
    Fixed(f64),
}

pub fn cmd_localize(file: &InstanceFile, sets: &[SetKind], shift: ShiftMode) -> Result<ReportDocument> {
    let t0 = Instant::now();
    let pair = file.to_pair()?;
    let mut doc = ReportDocument::new("localize", file, &pair);
    let certify = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let mu = match shift {
        ShiftMode::None => None,
        ShiftMode::Auto => Some(suggest_shift(&pair)?),
        ShiftMode::Fixed(mu) => Some(mu),
    };
    let report = match mu {
        Some(mu) => {
            let shifted = shift_pair(&pair, mu)?;
            localize(&shifted)?.translated(-mu)
        }
        None => localize(&pair)?,
    };
    let wants = |k| sets.contains(&k);
    if (wants(SetKind::K1Cop) || wants(SetKind::K2)) && report.k2.is_none() {
        return Err(Error::HypothesisViolation(Hypothesis::ACopositive));
    }
    let report = LocalizationReport {
        k1_cop_raw: report.k1_cop_raw.filter(|_| wants(SetKind::K1Cop)),
        k1_cop: report.k1_cop.filter(|_| wants(SetKind::K1Cop)),
        k2_raw: report.k2_raw.filter(|_| wants(SetKind::K2)),
        k2: report.k2.filter(|_| wants(SetKind::K2)),
        hull_k2: report.hull_k2.filter(|_| wants(SetKind::K2)),
        ..report
    };
    doc.shift = mu;
    doc.localization = Some(report);
    doc.tolerances.insert("symmetry_rel".into(), INSTANCE_SYMMETRY_TOL);
    doc.timings.insert("certify".into(), certify);
    doc.timings.insert("localize".into(), t1.elapsed().as_secs_f64());
    Ok(doc)
}

pub fn cmd_spectrum(file: &InstanceFile, opts: &EnumOptions) -> Result<ReportDocument> {
    let t0 = Instant::now();
    let pair = file.to_pair()?;
    if pair.n() > opts.n_max {
        return Err(Error::DimensionTooLarge { n: pair.n(), max: opts.n_max });
    }
    let mut doc = ReportDocument::new("spectrum", file, &pair);
    doc.timings.insert("certify".into(), t0.elapsed().as_secs_f64());

    let t1 = Instant::now();
    let spectrum = enumerate_spectrum(&pair, opts)?;
    doc.timings.insert("enumerate".into(), t1.elapsed().as_secs_f64());

    // Localization needs B SDD; the spectrum alone only needs B PD.
    let t2 = Instant::now();
    match localize(&pair) {
        Ok(loc) => {
            doc.verdicts = Some(ContainmentVerdicts::compute(&loc, &spectrum.values));
            doc.localization = Some(loc);
        }
        Err(Error::HypothesisViolation(_)) => {}
        Err(e) => return Err(e),
    }
    doc.timings.insert("localize".into(), t2.elapsed().as_secs_f64());

    doc.tolerances.insert("feas_tol".into(), opts.effective_feas_tol(&pair));
    doc.tolerances.insert("support_tol".into(), opts.support_tol);
    doc.tolerances.insert("sign_tol".into(), opts.sign_tol);
    doc.tolerances.insert("dedup_rel".into(), opts.dedup_rel);
    doc.tolerances.insert("membership_tol".into(), crate::spectrum::MEMBERSHIP_TOL);
    doc.tolerances.insert("n_max".into(), opts.n_max as f64);
    doc.spectrum = Some(spectrum);
    Ok(doc)
}

/// Expected values written next to a generated family instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySidecar {
    pub params: FamilyParams,
    pub expected_hull_k1: Interval,
    pub expected_hull_k2: Interval,
    pub expected_gamma: Interval,
}

pub fn cmd_family(params: FamilyParams) -> Result<(InstanceFile, FamilySidecar)> {
    let inst: FamilyInstance = match params {
        FamilyParams::OnesShift { n, eps } => ones_shift_instance(n, eps)?,
        FamilyParams::ScaledPair { n, beta, r, c } => scaled_pair_instance(n, beta, r, c)?,
    };
    let file = InstanceFile::from_pair(inst.pair.a(), Some(inst.pair.b()));
    let sidecar = FamilySidecar {
        params: inst.params,
        expected_hull_k1: inst.expected_hull_k1,
        expected_hull_k2: inst.expected_hull_k2,
        expected_gamma: inst.expected_gamma,
    };
    Ok((file, sidecar))
}

const RENDER_WIDTH: usize = 80;
const LABEL_WIDTH: usize = 6;

/// Number-line drawing of the localization sets (and optionally the
/// spectrum) over the `K1` hull padded by 5% on each side.
pub fn render_number_line(loc: &LocalizationReport, values: Option<&[f64]>) -> String {
    let hull = loc.hull_k1;
    let pad = 0.05 * hull.width().max(1e-9 * (1.0 + hull.lo().abs()));
    let (lo, hi) = (hull.lo() - pad, hull.hi() + pad);
    let cols = RENDER_WIDTH - LABEL_WIDTH;
    let col = |x: f64| -> usize {
        let t = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
        ((t * (cols - 1) as f64).round() as usize).min(cols - 1)
    };

    let draw = |u: &IntervalUnion| -> String {
        let mut line = vec![' '; cols];
        for iv in u.intervals() {
            let (a, b) = (col(iv.lo()), col(iv.hi()));
            if a == b {
                line[a] = '|';
                continue;
            }
            for c in line.iter_mut().take(b).skip(a + 1) {
                *c = '=';
            }
            line[a] = '[';
            line[b] = ']';
        }
        line.into_iter().collect()
    };

    let mut out = String::new();
    let mut row = |label: &str, body: String| {
        out.push_str(&format!("{label:<LABEL_WIDTH$}{}\n", body.trim_end()));
    };
    row("K1", draw(&loc.k1));
    if let Some(u) = &loc.k1_cop {
        row("K1'", draw(u));
    }
    if let Some(u) = &loc.k2 {
        row("K2", draw(u));
    }
    row("Gamma", draw(&IntervalUnion::raw(vec![loc.gamma])));
    if let Some(vals) = values {
        let mut line = vec![' '; cols];
        for &v in vals {
            line[col(v)] = '*';
        }
        row("Pi", line.into_iter().collect());
    }
    let axis_lo = format!("{lo:.4}");
    let axis_hi = format!("{hi:.4}");
    let gap = cols.saturating_sub(axis_lo.len() + axis_hi.len());
    row("", format!("{axis_lo}{}{axis_hi}", " ".repeat(gap)));
    out
}

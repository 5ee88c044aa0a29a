//! Serializable reports. JSON carries full doubles; the text form prints
//! 12 significant digits.

use std::fmt::Write as _;

use qzspec_core::qspec::{EqualityRecord, FamilyStats};
use qzspec_core::zsolve::{ShiftMode, SpectrumEntry};
use qzspec_core::{QSpectrumReport, RatioReport, SolverConfig, SpectrumReport};
use serde::Serialize;

use crate::format::TensorFile;

/// Vectors are elided once `dim · count` exceeds this.
pub const VECTOR_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub tol: f64,
    pub max_iter: usize,
    pub num_starts: Option<usize>,
    pub dedup_tol: f64,
    pub seed: u64,
    pub shift: String,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(c: &SolverConfig) -> Self {
        Self {
            tol: c.tol,
            max_iter: c.max_iter,
            num_starts: c.num_starts,
            dedup_tol: c.dedup_tol,
            seed: c.seed,
            shift: match c.shift {
                ShiftMode::Auto => "auto".into(),
                ShiftMode::Fixed(a) => format!("fixed({a})"),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZEntry {
    pub lambda: f64,
    pub residual: f64,
    pub source: &'static str,
    pub cluster_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZSpectrum {
    pub order: usize,
    pub dim: usize,
    pub eigenvalues: Vec<ZEntry>,
    pub z_spectral_radius: f64,
    pub objective_max: f64,
    pub heuristic: bool,
    pub starts_run: usize,
    pub pairs_accepted: usize,
}

fn keep_vectors(dim: usize, count: usize, requested: bool) -> bool {
    requested && dim * count <= VECTOR_BUDGET
}

fn z_entry(e: &SpectrumEntry, vectors: bool) -> ZEntry {
    ZEntry {
        lambda: e.lambda,
        residual: e.residual,
        source: e.source.name(),
        cluster_size: e.cluster_size,
        vector: vectors.then(|| e.vector.clone()),
    }
}

impl ZSpectrum {
    pub fn new(r: &SpectrumReport, vectors: bool) -> Self {
        let v = keep_vectors(r.dim, r.entries.len(), vectors);
        Self {
            order: r.order,
            dim: r.dim,
            eigenvalues: r.entries.iter().map(|e| z_entry(e, v)).collect(),
            z_spectral_radius: r.z_spectral_radius,
            objective_max: r.objective_max,
            heuristic: r.heuristic,
            starts_run: r.starts_run,
            pairs_accepted: r.pairs_accepted,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QEntry {
    pub lambda: f64,
    pub residual: f64,
    /// `[re, im]` per component.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QSpectrum {
    pub order: usize,
    pub dim: usize,
    pub variant: &'static str,
    pub eigenvalues: Vec<QEntry>,
    pub entanglement_eigenvalue: f64,
    pub count: usize,
    pub count_bound: Option<u128>,
    pub within_count_bound: bool,
    pub pairing_ok: bool,
    pub partners_added: usize,
    pub rejected: usize,
    pub embedded: ZSpectrum,
}

impl QSpectrum {
    pub fn new(r: &QSpectrumReport, vectors: bool) -> Self {
        let v = keep_vectors(r.dim, r.pairs.len(), vectors);
        Self {
            order: r.order,
            dim: r.dim,
            variant: r.variant.name(),
            eigenvalues: r
                .pairs
                .iter()
                .map(|p| QEntry {
                    lambda: p.lambda,
                    residual: p.residual,
                    z: v.then(|| p.z.iter().map(|c| [c.re, c.im]).collect()),
                })
                .collect(),
            entanglement_eigenvalue: r.entanglement_eigenvalue,
            count: r.pairs.len(),
            count_bound: r.count_bound,
            within_count_bound: r.within_count_bound(),
            pairing_ok: r.pairing_ok,
            partners_added: r.partners_added,
            rejected: r.rejected,
            embedded: ZSpectrum::new(&r.embedded, vectors),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyEcho {
    pub family: &'static str,
    pub tried: usize,
    pub skipped: usize,
    pub best_ratio: Option<f64>,
}

impl From<&FamilyStats> for FamilyEcho {
    fn from(s: &FamilyStats) -> Self {
        Self {
            family: s.family.name(),
            tried: s.tried,
            skipped: s.skipped,
            best_ratio: s.best_ratio,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEcho {
    pub q: f64,
    pub z: f64,
    pub ratio: f64,
    pub family: &'static str,
    pub tensor: TensorFile,
}

#[derive(Debug, Clone, Serialize)]
pub struct Ratio {
    pub order: usize,
    pub dim: usize,
    pub samples_tried: usize,
    pub samples_skipped: usize,
    pub best_ratio: f64,
    /// `true` when `best_ratio` is the exact ratio of the space.
    pub exact: bool,
    /// The known ceiling depends on quantities this tool cannot compute.
    pub ceiling: &'static str,
    pub witness: Option<WitnessEcho>,
    pub families: Vec<FamilyEcho>,
}

impl From<&RatioReport> for Ratio {
    fn from(r: &RatioReport) -> Self {
        Self {
            order: r.order,
            dim: r.dim,
            samples_tried: r.samples_tried,
            samples_skipped: r.samples_skipped,
            best_ratio: r.best_ratio,
            exact: r.exact,
            ceiling: if r.exact { "1" } else { "unknown" },
            witness: r.witness.as_ref().map(|w| WitnessEcho {
                q: w.q,
                z: w.z,
                ratio: w.ratio,
                family: w.family.name(),
                tensor: TensorFile::from_real(&w.tensor),
            }),
            families: r.families.iter().map(FamilyEcho::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub lambda: f64,
    pub residual: f64,
    pub ok: bool,
    /// Residual of the `−λ` partner, where the equations provide one.
    pub partner_residual: Option<f64>,
    pub partner_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dominance {
    pub q: f64,
    pub z: f64,
    pub gap: f64,
    pub ok: bool,
}

impl From<&EqualityRecord> for Dominance {
    fn from(r: &EqualityRecord) -> Self {
        Self {
            q: r.q,
            z: r.z,
            gap: r.gap,
            ok: r.dominance_ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub kind: &'static str,
    pub pairs: Vec<PairCheck>,
    pub distinct: usize,
    pub count_bound: Option<u128>,
    pub bound_ok: bool,
    pub dominance: Option<Dominance>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Z(ZSpectrum),
    Q(QSpectrum),
    Ratio(Ratio),
    Verify(Verification),
    Tensor(TensorFile),
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: ConfigEcho,
    pub seed: u64,
    pub result: Payload,
    /// Excluded from the determinism contract.
    pub wall_time_s: f64,
    /// `true` when an eigenvalue enumeration is not certified complete.
    pub heuristic: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "seed: {}", self.seed);
        match &self.result {
            Payload::Z(z) => z_text(&mut s, z),
            Payload::Q(q) => {
                let _ = writeln!(s, "order {} dim {} variant {}", q.order, q.dim, q.variant);
                let _ = writeln!(s, "entanglement eigenvalue: {}", g12(q.entanglement_eigenvalue));
                let bound = q.count_bound.map_or("overflow".into(), |b| b.to_string());
                let _ = writeln!(s, "distinct Q-eigenvalues: {} (bound {bound})", q.count);
                let _ = writeln!(s, "pairing ok: {}", q.pairing_ok);
                for e in &q.eigenvalues {
                    let _ = write!(s, "  {:>20}  residual {:.2e}", g12(e.lambda), e.residual);
                    if let Some(z) = &e.z {
                        let parts: Vec<String> = z.iter().map(|[a, b]| c12(*a, *b)).collect();
                        let _ = write!(s, "  z = ({})", parts.join(", "));
                    }
                    s.push('\n');
                }
            }
            Payload::Ratio(r) => {
                let _ = writeln!(s, "order {} dim {}", r.order, r.dim);
                let _ = writeln!(s, "samples tried {} skipped {}", r.samples_tried, r.samples_skipped);
                let _ = writeln!(s, "best Q/Z: {} (ceiling {})", g12(r.best_ratio), r.ceiling);
                if let Some(w) = &r.witness {
                    let _ = writeln!(s, "witness: Q {} Z {} family {}", g12(w.q), g12(w.z), w.family);
                }
                for f in &r.families {
                    let best = f.best_ratio.map_or("-".into(), g12);
                    let _ = writeln!(s, "  {:<14} tried {:>5} skipped {:>5} best {best}", f.family, f.tried, f.skipped);
                }
            }
            Payload::Verify(v) => {
                let _ = writeln!(s, "{} pairs: {}", v.kind, v.pairs.len());
                for p in &v.pairs {
                    let _ = writeln!(
                        s,
                        "  {:>20}  residual {:.2e} {}  partner {}",
                        g12(p.lambda),
                        p.residual,
                        if p.ok { "ok" } else { "FAIL" },
                        if p.partner_ok { "ok" } else { "FAIL" }
                    );
                }
                let _ = writeln!(s, "count bound: {}", if v.bound_ok { "ok" } else { "FAIL" });
                if let Some(d) = &v.dominance {
                    let _ = writeln!(s, "dominance: Q {} Z {} {}", g12(d.q), g12(d.z), if d.ok { "ok" } else { "FAIL" });
                }
                let _ = writeln!(s, "verdict: {}", if v.ok { "ok" } else { "FAIL" });
            }
            Payload::Tensor(t) => {
                let _ = writeln!(s, "order {} dim {} field {:?}, {} nonzero orbits", t.order, t.dim, t.field, t.entries.len());
                for e in &t.entries {
                    match e.im {
                        Some(b) => {
                            let _ = writeln!(s, "  {:?}  {}", e.idx, c12(e.re, b));
                        }
                        None => {
                            let _ = writeln!(s, "  {:?}  {}", e.idx, g12(e.re));
                        }
                    }
                }
            }
        }
        let _ = writeln!(s, "wall time: {:.3} s", self.wall_time_s);
        s
    }
}

fn z_text(s: &mut String, z: &ZSpectrum) {
    let _ = writeln!(s, "order {} dim {}", z.order, z.dim);
    let _ = writeln!(s, "Z-spectral radius: {}", g12(z.z_spectral_radius));
    let _ = writeln!(s, "distinct Z-eigenvalues: {} (heuristic: {})", z.eigenvalues.len(), z.heuristic);
    for e in &z.eigenvalues {
        let _ = write!(s, "  {:>20}  residual {:.2e}  x{}", g12(e.lambda), e.residual, e.cluster_size);
        if let Some(v) = &e.vector {
            let parts: Vec<String> = v.iter().map(|x| g12(*x)).collect();
            let _ = write!(s, "  w = ({})", parts.join(", "));
        }
        s.push('\n');
    }
}

/// `a+bi` with both parts through [`g12`].
pub fn c12(a: f64, b: f64) -> String {
    let sign = if b.is_sign_negative() { "-" } else { "+" };
    format!("{}{sign}{}i", g12(a), g12(b.abs()))
}

/// 12 significant digits, trailing zeros trimmed.
pub fn g12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

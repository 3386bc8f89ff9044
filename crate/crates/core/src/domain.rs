//! The three domain classes: all of `C^n`, `C^n` minus the origin, and
//! `C^n` minus a non-empty union of coordinate hyperplanes.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::sampling::{annulus_point, seeded};
use crate::word::{AutomorphismWord, GeneratorStep};

/// Number of seeded points in the sampled preservation pass.
pub const PRESERVATION_SAMPLES: usize = 256;
/// Radial range of domain samples.
pub const SAMPLE_R_MIN: f64 = 0.2;
pub const SAMPLE_R_MAX: f64 = 2.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    FullSpace,
    Punctured,
    HyperplaneComplement,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::FullSpace => "full",
            DomainKind::Punctured => "punctured",
            DomainKind::HyperplaneComplement => "complement",
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainSpec {
    n: usize,
    kind: DomainKind,
    deleted: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: DomainKind,
    pub is_stein: bool,
}

/// Outcome of [`word_preserves_domain`].
#[derive(Debug, Clone, PartialEq)]
pub struct PreservationVerdict {
    pub preserves: bool,
    /// A point of the domain whose image leaves it (or is undefined).
    pub witness: Option<Vec<Complex64>>,
    /// Index of the offending step for structural rejections.
    pub step: Option<usize>,
    pub reason: Option<String>,
}

impl PreservationVerdict {
    fn ok() -> Self {
        PreservationVerdict {
            preserves: true,
            witness: None,
            step: None,
            reason: None,
        }
    }
}

impl DomainSpec {
    pub fn full(n: usize) -> Result<Self> {
        Self::build(n, DomainKind::FullSpace, BTreeSet::new())
    }

    pub fn punctured(n: usize) -> Result<Self> {
        Self::build(n, DomainKind::Punctured, BTreeSet::new())
    }

    /// `C^n` minus the hyperplanes `{z_i = 0}` for `i` in `deleted` (1-based).
    pub fn complement<I: IntoIterator<Item = usize>>(n: usize, deleted: I) -> Result<Self> {
        let deleted: BTreeSet<usize> = deleted.into_iter().collect();
        if deleted.is_empty() {
            return Err(Error::InvalidDomain("deleted set must be non-empty".into()));
        }
        if let Some(&bad) = deleted.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidDomain(format!(
                "deleted coordinate {bad} out of range 1..={n}"
            )));
        }
        Self::build(n, DomainKind::HyperplaneComplement, deleted)
    }

    fn build(n: usize, kind: DomainKind, deleted: BTreeSet<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDomain("dimension must be positive".into()));
        }
        Ok(DomainSpec { n, kind, deleted })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Deleted coordinates; empty unless this is a hyperplane complement.
    pub fn deleted(&self) -> &BTreeSet<usize> {
        &self.deleted
    }

    pub fn is_deleted(&self, axis: usize) -> bool {
        self.deleted.contains(&axis)
    }

    /// Exact membership test; no tolerance around removed sets.
    pub fn contains(&self, z: &[Complex64]) -> Result<bool> {
        check_dim(self.n, z.len())?;
        Ok(match self.kind {
            DomainKind::FullSpace => true,
            DomainKind::Punctured => z.iter().any(|c| *c != ZERO),
            DomainKind::HyperplaneComplement => self.deleted.iter().all(|&i| z[i - 1] != ZERO),
        })
    }

    /// Fixed Stein table: `C^n` and hyperplane complements are Stein,
    /// `C^n \ {0}` is Stein only for `n = 1`.
    pub fn is_stein(&self) -> bool {
        match self.kind {
            DomainKind::FullSpace | DomainKind::HyperplaneComplement => true,
            DomainKind::Punctured => self.n == 1,
        }
    }

    pub fn classify(&self) -> Classification {
        Classification {
            kind: self.kind,
            is_stein: self.is_stein(),
        }
    }

    /// Seeded domain sample: every coordinate is `r·e^{iθ}` with `r` in
    /// `[0.2, 2]`, so samples stay away from every removed set.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<Complex64> {
        annulus_point(rng, self.n, SAMPLE_R_MIN, SAMPLE_R_MAX)
    }

    /// `C^1 \ {0}` is the complement of `{z_1 = 0}`; normalizes that case
    /// so the structural rules treat both spellings alike.
    fn effective_deleted(&self) -> BTreeSet<usize> {
        match self.kind {
            DomainKind::Punctured if self.n == 1 => [1].into_iter().collect(),
            _ => self.deleted.clone(),
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::FullSpace => write!(f, "C^{}", self.n),
            DomainKind::Punctured => write!(f, "C^{} \\ {{0}}", self.n),
            DomainKind::HyperplaneComplement => {
                write!(f, "C^{} \\ ∪{{z_i = 0 : i ∈ {:?}}}", self.n, self.deleted)
            }
        }
    }
}

pub fn classify_domain(d: &DomainSpec) -> Classification {
    d.classify()
}

/// Decides whether `w` maps `d` into itself.
///
/// A structural pass over the generators runs first and catches the
/// failures that random sampling cannot see (points on removed
/// hyperplanes). Survivors are then evaluated at 256 seeded domain points.
/// The structural pass is conservative: a word whose individual steps leave
/// the domain is rejected even if later steps would bring it back.
pub fn word_preserves_domain(
    w: &AutomorphismWord,
    d: &DomainSpec,
    sampler_seed: u64,
) -> Result<PreservationVerdict> {
    word_preserves_domain_with(w, d, sampler_seed, PRESERVATION_SAMPLES)
}

pub fn word_preserves_domain_with(
    w: &AutomorphismWord,
    d: &DomainSpec,
    sampler_seed: u64,
    samples: usize,
) -> Result<PreservationVerdict> {
    check_dim(d.dim(), w.dim())?;
    let mut rng = seeded(sampler_seed);

    for (index, step) in w.steps().iter().enumerate() {
        if let Some((escape, reason)) = structural_escape(step, d, &mut rng) {
            let witness = escape.and_then(|y| pull_back(w, index, &y, d));
            return Ok(PreservationVerdict {
                preserves: false,
                witness,
                step: Some(index),
                reason: Some(reason),
            });
        }
    }

    for _ in 0..samples {
        let z = d.sample(&mut rng);
        let escaped = match w.eval(&z) {
            Ok(image) => !d.contains(&image)?,
            Err(Error::SingularPoint { .. }) => true,
            Err(e) => return Err(e),
        };
        if escaped {
            return Ok(PreservationVerdict {
                preserves: false,
                witness: Some(z),
                step: None,
                reason: Some("sampled point maps outside the domain".into()),
            });
        }
    }
    Ok(PreservationVerdict::ok())
}

/// Maps a point `y` entering step `index` back to the start of the word.
fn pull_back(
    w: &AutomorphismWord,
    index: usize,
    y: &[Complex64],
    d: &DomainSpec,
) -> Option<Vec<Complex64>> {
    let prefix = AutomorphismWord::new(w.dim(), w.steps()[..index].to_vec()).ok()?;
    let z = prefix.inverse().ok()?.eval(y).ok()?;
    if !d.contains(&z).ok()? {
        return None;
    }
    let forward = prefix.eval(&z).ok()?;
    let drift = forward
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    (drift <= 1e-9 * (1.0 + y.iter().map(|c| c.norm()).fold(0.0, f64::max))).then_some(z)
}

type Escape = (Option<Vec<Complex64>>, String);

/// Returns a point of `d` that `step` maps outside `d` (or cannot map),
/// when the step fails structurally.
fn structural_escape<R: Rng>(step: &GeneratorStep, d: &DomainSpec, rng: &mut R) -> Option<Escape> {
    let n = d.dim();
    let deleted = d.effective_deleted();
    let complement_like = !deleted.is_empty();
    let sample = |rng: &mut R| d.sample(rng);

    match step {
        GeneratorStep::Diagonal { .. } => None,
        GeneratorStep::Inversion { axis } => {
            if complement_like && deleted.contains(axis) {
                return None;
            }
            let mut y = sample(rng);
            y[axis - 1] = ZERO;
            let why = format!("inversion of z{axis} is undefined on {{z{axis} = 0}}, which meets the domain");
            Some((Some(y), why))
        }
        GeneratorStep::Overshear { axis, f, g } => {
            if complement_like && deleted.contains(axis) {
                if f.is_zero() {
                    return None;
                }
                // solve f(y′) + exp(g(y′))·y_axis = 0 at a sampled y′
                for _ in 0..64 {
                    let mut y = sample(rng);
                    let fv = f.eval_unchecked(&y);
                    if fv == ZERO {
                        continue;
                    }
                    y[axis - 1] = -fv * (-g.eval_unchecked(&y)).exp();
                    let why = format!("overshear with f ≠ 0 sends a point onto the deleted hyperplane z{axis} = 0");
                    return Some((Some(y), why));
                }
                return Some((None, format!("overshear with f ≠ 0 on deleted axis {axis}")));
            }
            if d.kind() == DomainKind::Punctured && n >= 2 {
                let f0 = f.constant_term();
                if f0 == ZERO {
                    return None;
                }
                let mut y = vec![ZERO; n];
                y[axis - 1] = -f0 * (-g.constant_term()).exp();
                return Some((Some(y), "overshear with f(0) ≠ 0 sends a point to the origin".into()));
            }
            None
        }
        GeneratorStep::Permutation { perm } => {
            if !complement_like {
                return None;
            }
            let (i, src) = deleted
                .iter()
                .map(|&i| (i, perm[i - 1]))
                .find(|(_, src)| !deleted.contains(src))?;
            let mut y = sample(rng);
            y[src - 1] = ZERO;
            Some((
                Some(y),
                format!("permutation moves the kept coordinate z{src} into deleted slot z{i}"),
            ))
        }
        GeneratorStep::Linear { matrix } => {
            if !complement_like {
                return None;
            }
            for &i in &deleted {
                let nonzero: Vec<usize> = (1..=n)
                    .filter(|&m| matrix[(i - 1, m - 1)] != ZERO)
                    .collect();
                let free = nonzero.iter().copied().find(|m| !deleted.contains(m));
                if nonzero.len() == 1 && free.is_none() {
                    continue;
                }
                // choose a column to solve for; prefer a kept coordinate so
                // the solution may be zero
                let solve = free.unwrap_or(nonzero[0]);
                for _ in 0..64 {
                    let mut y = sample(rng);
                    let rest: Complex64 = (1..=n)
                        .filter(|&m| m != solve)
                        .map(|m| matrix[(i - 1, m - 1)] * y[m - 1])
                        .sum();
                    y[solve - 1] = -rest / matrix[(i - 1, solve - 1)];
                    if deleted.contains(&solve) && y[solve - 1] == ZERO {
                        continue;
                    }
                    return Some((
                        Some(y),
                        format!("linear step sends a point onto the deleted hyperplane z{i} = 0"),
                    ));
                }
                return Some((None, format!("linear step does not preserve z{i} ≠ 0")));
            }
            None
        }
    }
}

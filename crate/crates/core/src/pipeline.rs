//! The end-to-end construction pipeline: enumerate algebra elements, raise
//! them to configured powers, truncate the ideal their homogeneous
//! components generate, and certify degree by degree that the images of the
//! two substituted series stay linearly independent in the quotient
//! extension — by the prefix-coefficient criterion, cross-checked by an
//! independent rank oracle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::extension::{xy_expand, CommMono, ExtensionError};
use crate::ideal::{
    homogeneous_components, power, search_f, CoverSearch, IdealError, IdealTruncation,
};
use crate::linalg::{LinalgError, RrefBuilder};
use crate::poly::{
    component, poly_from_json, poly_to_json, q_basis, s_basis, Poly, PolyError, TermJson,
};
use crate::report::{
    CertificateEntry, RankEntry, Report, TowerRouteEntry, TowerSection, VanishingLevel,
    VanishingSection,
};
use crate::scalar::{enumerate_scalars, FieldSpec, Scalar, ScalarError};
use crate::tower::{build_tower, RTower, Schedule, ScheduleMode, TowerError};
use crate::word::{enumerate_binwords, feasible_multidegrees, Word, WordError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// How the per-element exponents are chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentRule {
    Named(ExponentRuleName),
    Explicit(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentRuleName {
    /// Smallest even exponent of at least two whose power still fits under
    /// the truncation bound.
    AutoEven,
    /// Ten times the next schedule entry — documentation-only at desk
    /// scale, since the powers never fit under the bound.
    TenfoldNext,
}

/// One polynomial in wire form.
pub type PolyJson = Vec<TermJson>;

/// Full run configuration; flags override file values in the CLI layer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub field: FieldSpec,
    pub schedule: Vec<u64>,
    pub mode: ScheduleMode,
    pub exponents: ExponentRule,
    /// How many algebra elements to enumerate.
    pub count: usize,
    pub d_max: usize,
    pub d_cert: usize,
    #[serde(default)]
    pub seed: u64,
    /// User-supplied distinguished sets, one per tower level.
    #[serde(
        rename = "F",
        alias = "f_sets",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub f_sets: Option<Vec<Vec<PolyJson>>>,
    /// When no sets are supplied, probe the heuristic cover search up to
    /// this degree to propose them; `None` skips the tower instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub auto_f_probe: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.d_cert > self.d_max {
            return Err(PipelineError::Config(format!(
                "d_cert {} exceeds d_max {}",
                self.d_cert, self.d_max
            )));
        }
        if self.d_max > crate::word::MAX_ENUM_DEGREE {
            return Err(PipelineError::Config(format!(
                "d_max {} exceeds the enumeration cap {}",
                self.d_max,
                crate::word::MAX_ENUM_DEGREE
            )));
        }
        if self.count == 0 || self.count > 10_000 {
            return Err(PipelineError::Config(format!(
                "count {} out of range 1..=10000",
                self.count
            )));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Schedule {
        Schedule::from_u64(&self.schedule, self.mode)
    }
}

/// Deterministic injective enumeration of nonzero graded-algebra elements
/// (no constant term; the algebra is generated in degree one).
///
/// Elements are classified by `(max degree D, term count t, largest scalar
/// index s)` and streamed in ascending budget `D + t + s`, classes ordered
/// by `(D, t)`, elements inside a class by their sorted term lists (word
/// order, then scalar index). Over a finite field this refines the plain
/// `(max degree, term count)` ordering; over the rationals the budget is
/// what keeps every class finite.
pub fn enumerate_algebra_elements(
    field: FieldSpec,
    count: usize,
) -> Result<Vec<Poly>, PipelineError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let nonzero_scalars = |upto: usize| -> Vec<Scalar> {
        let e = enumerate_scalars(field, upto + 1);
        e.values.into_iter().filter(|s| !s.is_zero()).collect()
    };
    let max_scalar_index = field.order().map(|p| (p - 1) as usize);

    let mut out: Vec<Poly> = Vec::with_capacity(count);
    let mut budget = 3usize; // D + t + s starts at 1 + 1 + 1
    while out.len() < count {
        if budget > 64 {
            return Err(PipelineError::Config(
                "element enumeration budget exhausted".into(),
            ));
        }
        for degree in 1..=budget.saturating_sub(2) {
            if degree > crate::word::MAX_ENUM_DEGREE {
                break;
            }
            for t in 1..=(budget - degree - 1) {
                let s = budget - degree - t;
                if let Some(cap) = max_scalar_index {
                    if s > cap {
                        continue;
                    }
                }
                let scalars = nonzero_scalars(s);
                if scalars.len() < s {
                    continue;
                }
                for element in class_elements(field, degree, t, s, &scalars)? {
                    out.push(element);
                    if out.len() == count {
                        return Ok(out);
                    }
                }
            }
        }
        budget += 1;
    }
    Ok(out)
}

/// Every element with max degree exactly `degree`, exactly `t` terms, and
/// largest scalar index exactly `s`, sorted by term list.
fn class_elements(
    field: FieldSpec,
    degree: usize,
    t: usize,
    s: usize,
    scalars: &[Scalar],
) -> Result<Vec<Poly>, PipelineError> {
    // Word pool: all words of degree 1..=degree, ascending.
    let mut pool: Vec<Word> = Vec::new();
    for d in 1..=degree {
        pool.extend(crate::word::enumerate_words(d)?);
    }
    if t > pool.len() {
        return Ok(Vec::new());
    }

    let mut keyed: Vec<(Vec<(Word, u32)>, Poly)> = Vec::new();
    let mut subset: Vec<usize> = (0..t).collect();
    loop {
        // At least one word of the top degree.
        if subset.iter().any(|&i| pool[i].len() == degree) {
            let mut coeff_idx = vec![1u32; t];
            loop {
                if coeff_idx.iter().any(|&c| c as usize == s) {
                    let terms: Vec<(Word, Scalar)> = subset
                        .iter()
                        .zip(&coeff_idx)
                        .map(|(&wi, &ci)| (pool[wi], scalars[ci as usize - 1].clone()))
                        .collect();
                    let key: Vec<(Word, u32)> = subset
                        .iter()
                        .zip(&coeff_idx)
                        .map(|(&wi, &ci)| (pool[wi], ci))
                        .collect();
                    let poly = Poly::from_terms(field, terms)?;
                    keyed.push((key, poly));
                }
                // Odometer over coefficient indices 1..=s.
                let mut i = t;
                let advanced = loop {
                    if i == 0 {
                        break false;
                    }
                    i -= 1;
                    if (coeff_idx[i] as usize) < s {
                        coeff_idx[i] += 1;
                        break true;
                    }
                    coeff_idx[i] = 1;
                };
                if !advanced {
                    break;
                }
            }
        }
        // Next t-combination of pool indices, lexicographic.
        let mut i = t;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if subset[i] < pool.len() - (t - i) {
                subset[i] += 1;
                for j in i + 1..t {
                    subset[j] = subset[j - 1] + 1;
                }
                break true;
            }
        };
        if !advanced {
            break;
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// Record of one enumerated element in the construction.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorRecord {
    pub index: usize,
    pub element: Vec<TermJson>,
    pub element_degree: usize,
    /// The chosen exponent, when the power fits under the bound.
    pub exponent: Option<u32>,
    /// The rule's nominal exponent as text (the tenfold rule's values can
    /// exceed any machine word).
    pub nominal_exponent: String,
    pub fitted: bool,
    pub component_count: usize,
}

/// A built construction: the ideal truncation plus the per-element records.
pub struct BuiltConstruction {
    pub ideal: IdealTruncation,
    pub records: Vec<GeneratorRecord>,
}

/// Enumerates the configured elements and truncates the ideal generated by
/// the homogeneous components of their powers.
pub fn build_construction(cfg: &RunConfig) -> Result<BuiltConstruction, PipelineError> {
    cfg.validate()?;
    let elements = enumerate_algebra_elements(cfg.field, cfg.count)?;
    let mut records = Vec::with_capacity(elements.len());
    let mut generators: Vec<Poly> = Vec::new();

    for (i, f) in elements.iter().enumerate() {
        let t_i = f.max_degree().expect("enumerated elements are nonzero");
        let (exponent, nominal) = choose_exponent(cfg, i, t_i);
        let mut component_count = 0;
        if let Some(e) = exponent {
            let p = power(f, e)?;
            let comps = homogeneous_components(&p);
            component_count = comps.len();
            generators.extend(comps);
        }
        records.push(GeneratorRecord {
            index: i + 1,
            element: poly_to_json(f),
            element_degree: t_i,
            exponent,
            nominal_exponent: nominal,
            fitted: exponent.is_some(),
            component_count,
        });
    }

    let ideal = IdealTruncation::new(cfg.field, generators, cfg.d_max)?;
    Ok(BuiltConstruction { ideal, records })
}

/// The exponent for element `i` (0-based) of top degree `t_i`, plus the
/// rule's nominal value as text. `None` means the power cannot fit under
/// `d_max`.
fn choose_exponent(cfg: &RunConfig, i: usize, t_i: usize) -> (Option<u32>, String) {
    match &cfg.exponents {
        ExponentRule::Explicit(list) => match list.get(i) {
            Some(&e) => {
                let fits = e >= 1 && (e as usize) * t_i <= cfg.d_max;
                (fits.then_some(e), e.to_string())
            }
            None => (None, "unspecified".into()),
        },
        ExponentRule::Named(ExponentRuleName::AutoEven) => {
            if 2 * t_i <= cfg.d_max {
                (Some(2), "2".into())
            } else {
                (None, "2".into())
            }
        }
        ExponentRule::Named(ExponentRuleName::TenfoldNext) => {
            // Ten times the next schedule entry, indexed per element.
            match cfg.schedule.get(i + 1) {
                Some(&m_next) => {
                    let nominal = 10u128 * m_next as u128;
                    let fits = nominal * t_i as u128 <= cfg.d_max as u128;
                    let e = if fits { Some(nominal as u32) } else { None };
                    (e, nominal.to_string())
                }
                None => (None, "schedule exhausted".into()),
            }
        }
    }
}

/// Per-component membership verdicts for one power.
#[derive(Debug, Clone, Serialize)]
pub struct NilWitnessReport {
    pub components: Vec<ComponentWitness>,
    /// All in-range components lie in the ideal.
    pub all_in: bool,
    /// Some components exceeded the truncation and went unchecked.
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentWitness {
    pub degree: usize,
    /// `None` when the component exceeds the truncation bound.
    pub in_ideal: Option<bool>,
}

/// Checks that every homogeneous component of `f^e` lies in the truncation.
/// Components beyond the bound are flagged, not errors.
pub fn nil_witness(f: &Poly, e: u32, t: &IdealTruncation) -> NilWitnessReport {
    if f.is_zero() {
        return NilWitnessReport {
            components: Vec::new(),
            all_in: true,
            partial: false,
            error: None,
        };
    }
    let p = match power(f, e) {
        Ok(p) => p,
        Err(err) => {
            return NilWitnessReport {
                components: Vec::new(),
                all_in: false,
                partial: true,
                error: Some(err.to_string()),
            }
        }
    };
    let mut components = Vec::new();
    let mut all_in = true;
    let mut partial = false;
    for comp in homogeneous_components(&p) {
        let degree = comp.homogeneous_degree().expect("split is homogeneous");
        if degree > t.d_max() {
            components.push(ComponentWitness {
                degree,
                in_ideal: None,
            });
            partial = true;
            continue;
        }
        let inside = t.membership(&comp).unwrap_or_default();
        if !inside {
            all_in = false;
        }
        components.push(ComponentWitness {
            degree,
            in_ideal: Some(inside),
        });
    }
    NilWitnessReport {
        components,
        all_in,
        partial,
        error: None,
    }
}

/// Degree-`d` freeness certificates by the prefix-coefficient criterion:
/// for each collapsed word, search (descending) for an exponent vector
/// whose component escapes the span of the strictly-smaller monomials plus
/// the ideal slice. Success for every word certifies that the degree-`d`
/// images are linearly independent in the quotient extension.
pub fn freeness_certificate(
    t: &IdealTruncation,
    d: usize,
    tower: Option<&RTower>,
) -> Result<Vec<CertificateEntry>, PipelineError> {
    let field = t.field();
    let slice = t.slice(d)?;
    let mut entries = Vec::new();
    for w in enumerate_binwords(d)? {
        let mut rows: Vec<Poly> = s_basis(&w)?
            .into_iter()
            .map(|word| Poly::monomial(field, word))
            .collect();
        rows.extend_from_slice(slice.basis());
        let mut builder = RrefBuilder::new(field, d);
        for row in &rows {
            builder.push(row)?;
        }
        let span = builder.finish();

        let mut witness = None;
        for n in feasible_multidegrees(&w).into_iter().rev() {
            let comp = component(field, &w, &n)?;
            if comp.is_zero() {
                continue;
            }
            if !span.contains(&comp)?.contained {
                witness = Some(n.0);
                break;
            }
        }

        let tower_entry = match tower {
            Some(tw) => tw
                .degrees()
                .iter()
                .position(|&m| m == d)
                .map(|idx| -> Result<TowerRouteEntry, PipelineError> {
                    let out = tw.certificate_search(idx + 1, &w)?;
                    Ok(TowerRouteEntry {
                        level: idx + 1,
                        n: out.witness.map(|n| n.0),
                        status: if out.found() { "found" } else { "failure" }.into(),
                    })
                })
                .transpose()?,
            None => None,
        };

        entries.push(CertificateEntry {
            word: w.to_string(),
            ok: witness.is_some(),
            n: witness,
            tower: tower_entry,
        });
    }
    Ok(entries)
}

/// Independent freeness oracle: ranks the expanded images of all degree-`d`
/// collapsed words, reduced mod the ideal slice, as long vectors over
/// (commutative monomial, word) pairs. Freeness at degree `d` holds exactly
/// when the rank is `2^d`.
pub fn oracle_rank_check(t: &IdealTruncation, d: usize) -> Result<RankEntry, PipelineError> {
    let field = t.field();
    let slice = t.slice(d)?;
    let mut long_vectors: Vec<BTreeMap<(CommMono, Word), Scalar>> = Vec::new();
    for w in enumerate_binwords(d)? {
        let ext = xy_expand(field, &w)?;
        let mut vec: BTreeMap<(CommMono, Word), Scalar> = BTreeMap::new();
        for (mono, poly) in ext.terms() {
            let residue = slice.reduce(poly)?;
            for (word, coeff) in residue.terms() {
                vec.insert((*mono, *word), coeff.clone());
            }
        }
        long_vectors.push(vec);
    }
    let rank = rank_of_sparse_vectors(long_vectors);
    let expected = 1usize << d;
    Ok(RankEntry {
        degree: d,
        rank,
        expected,
        free: rank == expected,
        agrees_with_certificates: true,
    })
}

/// Forward elimination over arbitrary ordered keys; deliberately separate
/// from the word-indexed echelon machinery so the two freeness routes do
/// not share a code path.
fn rank_of_sparse_vectors<K: Ord + Copy>(vectors: Vec<BTreeMap<K, Scalar>>) -> usize {
    let mut pivot_rows: BTreeMap<K, BTreeMap<K, Scalar>> = BTreeMap::new();
    for mut v in vectors {
        while let Some((&lead, coeff)) = v.iter().next() {
            let coeff = coeff.clone();
            match pivot_rows.get(&lead) {
                None => {
                    let inv = coeff.inverse().expect("lead coefficient nonzero");
                    let normalized: BTreeMap<K, Scalar> =
                        v.iter().map(|(k, c)| (*k, c.mul_raw(&inv))).collect();
                    pivot_rows.insert(lead, normalized);
                    break;
                }
                Some(row) => {
                    for (k, c) in row {
                        let delta = c.mul_raw(&coeff).neg();
                        let entry = v.remove(k);
                        let sum = match entry {
                            None => delta,
                            Some(existing) => existing.add_raw(&delta),
                        };
                        if !sum.is_zero() {
                            v.insert(*k, sum);
                        }
                    }
                }
            }
        }
    }
    pivot_rows.len()
}

/// The adversarial fixture: the ideal generated by every word of the
/// lex-minimal degree-2 collapse class. It swallows all components of `xx`,
/// so the certificate for `xx` must fail and the rank oracle must report a
/// deficit.
pub fn adversarial_qxx_ideal(
    field: FieldSpec,
    d_max: usize,
) -> Result<IdealTruncation, PipelineError> {
    let xx: crate::word::BinWord = "xx".parse().expect("literal");
    let gens: Vec<Poly> = q_basis(&xx)?
        .into_iter()
        .map(|w| Poly::monomial(field, w))
        .collect();
    Ok(IdealTruncation::new(field, gens, d_max)?)
}

/// Runs the whole pipeline and assembles the report.
pub fn run_construct(cfg: &RunConfig) -> Result<Report, PipelineError> {
    let config_echo: Value = serde_json::to_value(cfg).expect("config serializes");
    let mut report = Report::new(config_echo);

    let built = build_construction(cfg)?;
    let ideal = &built.ideal;

    let mut slice_ranks = Vec::with_capacity(cfg.d_max);
    for d in 1..=cfg.d_max {
        slice_ranks.push([d, ideal.slice(d)?.rank()]);
    }
    report.construction = Some(crate::report::ConstructionSection {
        elements: built
            .records
            .iter()
            .map(|r| serde_json::to_value(r).expect("record serializes"))
            .collect(),
        slice_ranks,
        notes: vec![
            "certificates cover every degree up to d_cert, a strictly stronger slice claim \
             than single-degree checks"
                .to_string(),
        ],
    });

    // Tower: user-supplied sets, else heuristic cover search per level.
    let schedule = cfg.schedule();
    let validation = schedule.validate();
    let mut notes = Vec::new();
    let mut coverage = Vec::new();
    let mut tower: Option<RTower> = None;
    let mut f_sizes = Vec::new();

    if validation.valid && !cfg.schedule.is_empty() {
        let degrees: Vec<usize> = cfg.schedule.iter().map(|&m| m as usize).collect();
        let fits = degrees.iter().all(|&m| m <= crate::tower::MAX_LEVEL_DEGREE);
        let f_sets: Option<Vec<Vec<Poly>>> = if !fits {
            notes.push("schedule degrees exceed the realization cap; tower skipped".into());
            None
        } else if let Some(json_sets) = &cfg.f_sets {
            let mut sets = Vec::new();
            for set in json_sets {
                let mut polys = Vec::new();
                for poly_json in set {
                    let p = poly_from_json(cfg.field, poly_json)?;
                    if !p.is_zero() {
                        polys.push(p);
                    }
                }
                sets.push(polys);
            }
            Some(sets)
        } else if let Some(probe_cap) = cfg.auto_f_probe {
            let mut sets = Vec::new();
            for (i, &m_i) in degrees.iter().enumerate() {
                if i + 1 >= degrees.len() || m_i > ideal.d_max() {
                    sets.push(Vec::new());
                    continue;
                }
                let stride = degrees[i + 1];
                let probe = ideal.d_max().min(probe_cap);
                match search_f(ideal, stride, m_i, probe)? {
                    CoverSearch::Found {
                        f_set,
                        coverage: cov,
                    } => {
                        for (d, got, total) in cov {
                            coverage.push((d, got, total));
                        }
                        sets.push(f_set);
                    }
                    CoverSearch::Failed { partial, uncovered } => {
                        notes.push(format!(
                            "level {}: cover search left {} vectors uncovered",
                            i + 1,
                            uncovered.len()
                        ));
                        sets.push(partial);
                    }
                }
            }
            Some(sets)
        } else {
            notes.push("no distinguished sets supplied and no search probe; tower skipped".into());
            None
        };
        if let Some(sets) = f_sets {
            match build_tower(cfg.field, &schedule, &sets) {
                Ok(t) => {
                    f_sizes = (1..=t.levels())
                        .map(|l| t.f_set(l).map(|f| f.len()).unwrap_or(0))
                        .collect();
                    tower = Some(t);
                }
                Err(e) => notes.push(format!("tower not built: {e}")),
            }
        }
    } else if !validation.valid {
        notes.push("schedule invalid in its mode; tower skipped".into());
    }

    report.tower = Some(TowerSection {
        schedule: cfg.schedule.iter().map(|m| m.to_string()).collect(),
        validation,
        built: tower.is_some(),
        f_sizes,
        coverage,
        notes,
    });

    // Vanishing sweep over the realized tower.
    if let Some(t) = &tower {
        let mut levels = Vec::new();
        let mut all_zero = true;
        for l in 1..t.levels() {
            let slice = t.block_sum_slice(l)?;
            let mut ok = true;
            for v in slice.basis() {
                if !t.apply(l + 1, v)?.is_zero() {
                    ok = false;
                }
            }
            all_zero &= ok;
            levels.push(VanishingLevel {
                level: l + 1,
                slice_degree: slice.degree(),
                slice_rank: slice.rank(),
                vectors_checked: slice.rank(),
                all_zero: ok,
            });
        }
        report.vanishing = Some(VanishingSection { levels, all_zero });
    }

    // Nil-shape sanity for the fitted elements against their own ideal.
    for rec in &built.records {
        if let Some(e) = rec.exponent {
            let f = poly_from_json(cfg.field, &rec.element)?;
            let witness = nil_witness(&f, e, ideal);
            if !witness.all_in {
                return Err(PipelineError::Config(format!(
                    "own-generator nil witness failed for element {}",
                    rec.index
                )));
            }
        }
    }

    // Freeness certificates and the independent rank oracle, per degree.
    let mut certificates = Vec::new();
    let mut ranks = Vec::new();
    for d in 1..=cfg.d_cert {
        let entries = freeness_certificate(ideal, d, tower.as_ref())?;
        let all_ok = entries.iter().all(|e| e.ok);
        let mut rank_entry = oracle_rank_check(ideal, d)?;
        rank_entry.agrees_with_certificates = rank_entry.free == all_ok;
        certificates.extend(entries);
        ranks.push(rank_entry);
    }
    report.certificates = certificates;
    report.ranks = Some(ranks);

    Ok(report)
}

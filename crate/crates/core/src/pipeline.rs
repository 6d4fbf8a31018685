//! Orchestration: the finite envelope chain, bounded evidence for infinite
//! fixtures, and one report builder per front-end command.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::category::{validate, Certification, Class, Morphism, Presentation, Verdict};
use crate::coaction::{
    approx_identity_core, coaction_from_grading, crossed_product, dual_action_check, extend_to_envelope, katayama_verify, normality_check,
    GradedAlgebra,
};
use crate::cstar::{bisection_fn, complete_isometry_check, jack_check, Effort, GroupoidRep, IsometryVerdict, JackVerdict, LambdaRep, ThetaRep};
use crate::envelope::{
    block_decompose, detects_ideals, envelope_image, pi_env_realize, shilov_ideal, DetectVerdict, FinDimCStar, PiEnvReport, ShilovResult,
};
use crate::error::{Error, Result};
use crate::germ::{omega_and_boundary, GermGroupoid};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::hull::{generate_hull, hausdorff_check, render_hull, HausdorffVerdict, HullClosure, PiecewiseBijection};
use crate::ideals::{constructible_ideals, is_tight, spectrum, Character, Spectrum};
use crate::linalg::{eye, lanczos_norm, op_norm, random_c, rng, CMat, SparseOp, C};
use crate::report::{Report, Status};
use crate::universal::{
    idempotent_pure_check, is_cocycle, j_map, kappa_table, kernel_subgroupoid, partial_action_iso_check, CategoryFunctor, OrbitData,
};

/// Run parameters shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub depth: usize,
    pub levels: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { depth: 4, levels: 5, tol: 1e-9, seed: 0 }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 1 {
            return Err(Error::PreconditionViolated("depth must be at least 1".into()));
        }
        if self.levels < 1 {
            return Err(Error::PreconditionViolated("levels must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::PreconditionViolated(format!("tolerance {} outside (0, 1e-3]", self.tol)));
        }
        Ok(())
    }

    pub fn effort(&self) -> Effort {
        Effort { levels: self.levels, tol: self.tol, seed: self.seed, ..Effort::default() }
    }
}

/// A parsed input document.
#[derive(Clone, Debug)]
pub enum Input {
    Category(Presentation),
    Graded(GradedAlgebra),
    Groupoid(FiniteGroupoid),
}

impl Input {
    fn kind(&self) -> &'static str {
        match self {
            Input::Category(_) => "category presentation",
            Input::Graded(_) => "graded algebra",
            Input::Groupoid(_) => "finite groupoid",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Hull,
    Ideals,
    Boundary,
    Groupoid,
    Envelope,
    Coaction,
    Lcm,
    Thesis,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Validate,
        Command::Hull,
        Command::Ideals,
        Command::Boundary,
        Command::Groupoid,
        Command::Envelope,
        Command::Coaction,
        Command::Lcm,
        Command::Thesis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Hull => "hull",
            Command::Ideals => "ideals",
            Command::Boundary => "boundary",
            Command::Groupoid => "groupoid",
            Command::Envelope => "envelope",
            Command::Coaction => "coaction",
            Command::Lcm => "lcm",
            Command::Thesis => "thesis",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::PreconditionViolated(format!("unknown command {s}")))
    }
}

/// `ℂ ⊕ M₂`-style name for a list of block sizes.
pub fn algebra_name(sizes: &[usize]) -> String {
    if sizes.is_empty() {
        return "0".into();
    }
    let sub = |n: usize| -> String {
        n.to_string().chars().map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap()).collect()
    };
    sizes.iter().map(|&n| if n == 1 { "ℂ".to_string() } else { format!("M{}", sub(n)) }).collect::<Vec<_>>().join(" ⊕ ")
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub label: String,
    pub lambda_norm: f64,
    pub envelope_norm: f64,
    pub boundary_norm: f64,
}

/// Everything computed between a finite presentation and `π_env`.
#[derive(Clone, Debug)]
pub struct EnvelopeChain {
    pub hull: HullClosure,
    pub spectrum: Spectrum,
    pub hausdorff: HausdorffVerdict,
    pub full_groupoid: GermGroupoid,
    pub boundary_groupoid: GermGroupoid,
    /// Every morphism; generator lists below are indexed like this.
    pub morphisms: Vec<Morphism>,
    pub labels: Vec<String>,
    pub lambda_gens: Vec<CMat>,
    pub full_gens: Vec<CMat>,
    pub boundary_gens: Vec<CMat>,
    pub cover: FinDimCStar,
    pub shilov: ShilovResult,
    pub envelope_gens: Vec<CMat>,
    pub boundary_algebra: FinDimCStar,
    pub pi_env: PiEnvReport,
    pub jack: JackVerdict,
    pub detects: DetectVerdict,
    /// `q_∂` restricted to `𝒜_r`.
    pub quotient: IsometryVerdict,
    /// Restriction to the orbit of a non-tight character, when one exists.
    pub planted: Option<(String, IsometryVerdict)>,
    pub table: Vec<GeneratorRow>,
}

impl EnvelopeChain {
    pub fn position(&self, m: &Morphism) -> Option<usize> {
        self.morphisms.iter().position(|x| x == m)
    }
}

fn finite_diameter(p: &Presentation) -> Result<usize> {
    p.diameter().ok_or_else(|| Error::PreconditionViolated("the envelope chain needs a finite category".into()))
}

pub fn envelope_chain(p: &Presentation, effort: &Effort) -> Result<EnvelopeChain> {
    let diam = finite_diameter(p)?;
    let hull = generate_hull(p, 2 * diam + 2)?;
    if !hull.is_complete() {
        return Err(Error::PreconditionViolated("hull closure did not stabilise".into()));
    }
    let hausdorff = hausdorff_check(p, &hull);
    if !hausdorff.passed() {
        return Err(Error::NotHausdorff);
    }
    let sp = spectrum(p, &hull)?;
    let (full, bd) = omega_and_boundary(p, &hull, &sp)?;
    let morphisms = p.all_morphisms().ok_or(Error::InfiniteCharacterSpace)?;
    let labels: Vec<String> = morphisms.iter().map(|m| p.render(m)).collect();
    let lam = LambdaRep::new(p, diam);
    let lambda_gens: Vec<CMat> = morphisms.iter().map(|c| lam.lambda(p, c)).collect();
    let bisections: Vec<PiecewiseBijection> = morphisms.iter().map(PiecewiseBijection::from_morphism).collect();

    let full_rep = GroupoidRep::new(&full.groupoid);
    let full_gens: Vec<CMat> = bisections.iter().map(|s| full_rep.rep(&full.groupoid, &bisection_fn(p, &full, s))).collect();
    let bd_rep = GroupoidRep::new(&bd.groupoid);
    let boundary_gens: Vec<CMat> = bisections.iter().map(|s| bd_rep.rep(&bd.groupoid, &bisection_fn(p, &bd, s))).collect();

    let cover = block_decompose(&lambda_gens, effort.seed)?;
    let shilov = shilov_ideal(&cover, &lambda_gens, &labels, effort)?;
    let envelope_gens = envelope_image(&cover, &shilov, &lambda_gens);
    let boundary_algebra = block_decompose(&boundary_gens, effort.seed)?;

    let idempotents: Vec<&PiecewiseBijection> = hull.idempotents().filter(|e| !e.is_zero()).collect();
    let boundary_diag: Vec<CMat> = idempotents.iter().map(|e| bd_rep.rep(&bd.groupoid, &bisection_fn(p, &bd, e))).collect();
    let envelope_diag: Vec<CMat> = idempotents.iter().map(|e| cover.quotient(&shilov.mask, &lam.inverse_rep(p, e))).collect();
    let pi_env = pi_env_realize(&boundary_gens, &envelope_gens, &boundary_diag, &envelope_diag);
    let jack = jack_check(p, &hull, &full, &lam)?;
    let detects = detects_ideals(&boundary_algebra, &boundary_diag);

    let quotient = complete_isometry_check(&full_gens, &boundary_gens, &labels, effort)?;
    let planted = match (0..sp.characters.len()).find(|i| !sp.boundary.contains(i)) {
        Some(i) => {
            let chi = &sp.characters[i];
            let unit = full.unit_of(chi).ok_or_else(|| Error::PreconditionViolated("character without a unit germ".into()))?;
            let rep = GroupoidRep::on_units(&full.groupoid, &[unit]);
            let wrong: Vec<CMat> = bisections.iter().map(|s| rep.rep(&full.groupoid, &bisection_fn(p, &full, s))).collect();
            Some((format!("restriction to {}", chi.render(p)), complete_isometry_check(&full_gens, &wrong, &labels, effort)?))
        }
        None => None,
    };

    let table = (0..morphisms.len())
        .map(|i| GeneratorRow {
            label: labels[i].clone(),
            lambda_norm: op_norm(&lambda_gens[i]),
            envelope_norm: op_norm(&envelope_gens[i]),
            boundary_norm: op_norm(&boundary_gens[i]),
        })
        .collect();

    Ok(EnvelopeChain {
        hull,
        spectrum: sp,
        hausdorff,
        full_groupoid: full,
        boundary_groupoid: bd,
        morphisms,
        labels,
        lambda_gens,
        full_gens,
        boundary_gens,
        cover,
        shilov,
        envelope_gens,
        boundary_algebra,
        pi_env,
        jack,
        detects,
        quotient,
        planted,
        table,
    })
}

/// `𝒜_λ` graded by word length modulo `m`; defined for path categories and
/// higher-rank graphs, whose relations are length homogeneous.
pub fn degree_grading(p: &Presentation, chain: &EnvelopeChain, m: usize) -> Result<GradedAlgebra> {
    if !matches!(p.class(), Class::GraphPath | Class::KGraph | Class::FreeMonoid | Class::NkMonoid) {
        return Err(Error::GradingInvalid(format!("no length grading for class {}", p.class())));
    }
    let n = chain.lambda_gens.first().map(|x| x.nrows()).unwrap_or(0);
    let gens: Vec<(CMat, usize)> = chain.morphisms.iter().zip(&chain.lambda_gens).map(|(c, x)| (x.clone(), c.len() % m)).collect();
    GradedAlgebra::from_generators(&FiniteGroup::cyclic(m), n, &gens)
}

/// Images of a graded algebra's basis in the envelope of its cover.
pub fn envelope_kappa(ga: &GradedAlgebra, cover: &FinDimCStar, shilov: &ShilovResult) -> Vec<CMat> {
    envelope_image(cover, shilov, &ga.algebra.basis)
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationRow {
    pub depth: usize,
    pub max_gap: f64,
    pub max_lambda_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationEvidence {
    pub characters: Vec<String>,
    pub samples: usize,
    pub rows: Vec<TruncationRow>,
    pub monotone: bool,
}

impl TruncationEvidence {
    pub fn final_gap(&self) -> f64 {
        self.rows.last().map(|r| r.max_gap).unwrap_or(f64::INFINITY)
    }
}

/// Eventually periodic boundary points used as a finite sample of `∂Ω`.
pub fn boundary_sample(p: &Presentation) -> Result<Vec<Character>> {
    match p.class() {
        Class::NkMonoid => Ok(vec![Character::Infinity]),
        Class::FreeMonoid => {
            let m = |t: &str| p.morphism(t);
            let pairs = [("ε", "a"), ("ε", "b"), ("a", "b"), ("b", "ab"), ("ab", "ba")];
            pairs.iter().map(|(x, y)| Character::ray(p, m(x)?, m(y)?)).collect()
        }
        _ => Err(Error::PreconditionViolated(format!("no boundary sample for class {}", p.class()))),
    }
}

/// Level-1 norms of seeded elements of `𝒜` under truncated `λ` and under
/// `⊕ϑ_χ` over the boundary sample, for each depth.
pub fn truncation_evidence(p: &Presentation, depths: &[usize], samples: usize, seed: u64) -> Result<TruncationEvidence> {
    let chars = boundary_sample(p)?;
    let support: Vec<PiecewiseBijection> = p.ball(2).iter().map(PiecewiseBijection::from_morphism).collect();
    let mut r = rng(seed);
    let elements: Vec<Vec<(usize, C)>> = (0..samples)
        .map(|_| {
            let mut terms = Vec::new();
            for i in 0..support.len() {
                if r.gen_bool(0.6) {
                    terms.push((i, random_c(&mut r)));
                }
            }
            terms
        })
        .collect();
    let one = |s: &PiecewiseBijection| [(C::new(1.0, 0.0), s.clone())];
    let combine = |base: &[SparseOp], x: &[(usize, C)]| SparseOp {
        n: base.first().map(|b| b.n).unwrap_or(0),
        entries: x.iter().flat_map(|&(i, a)| base[i].entries.iter().map(move |&(r, c, z)| (r, c, a * z))).collect(),
    };
    let mut rows = Vec::new();
    for &n in depths {
        let lam = LambdaRep::new(p, n);
        let lam_base: Vec<SparseOp> = support.iter().map(|s| lam.sparse(p, &one(s))).collect();
        let mut theta_base = Vec::new();
        for c in &chars {
            let t = ThetaRep::new(p, None, c, n, n)?;
            theta_base.push(support.iter().map(|s| t.sparse(p, &one(s))).collect::<Result<Vec<_>>>()?);
        }
        let mut gap: f64 = 0.0;
        let mut top: f64 = 0.0;
        for (k, x) in elements.iter().enumerate() {
            let s = seed ^ (k as u64).wrapping_mul(0x9e37_79b9);
            let a = lanczos_norm(&combine(&lam_base, x), 40, s);
            let b = theta_base.iter().map(|base| lanczos_norm(&combine(base, x), 40, s)).fold(0.0, f64::max);
            gap = gap.max((a - b).abs());
            top = top.max(a);
        }
        rows.push(TruncationRow { depth: n, max_gap: gap, max_lambda_norm: top });
    }
    let monotone = rows.windows(2).all(|w| w[1].max_gap <= w[0].max_gap + 1e-12);
    Ok(TruncationEvidence { characters: chars.iter().map(|c| c.render(p)).collect(), samples, rows, monotone })
}

/// The functor used for universal-group statements: the ambient inclusion
/// for groupoid subcategories, the pair groupoid on objects otherwise, and
/// the collapse to a point as a last resort.
pub fn default_functor(p: &Presentation, bound: usize) -> Result<CategoryFunctor> {
    if p.class() == Class::GroupoidSub {
        return CategoryFunctor::ambient_inclusion(p);
    }
    CategoryFunctor::into_pair_groupoid(p, bound).or_else(|_| CategoryFunctor::collapse(p))
}

fn expect_category(input: &Input, cmd: Command) -> Result<&Presentation> {
    match input {
        Input::Category(p) => Ok(p),
        other => Err(Error::PreconditionViolated(format!("{cmd} expects a category presentation, got a {}", other.kind()))),
    }
}

fn isometry_status(v: &IsometryVerdict) -> Status {
    match v {
        IsometryVerdict::Certified { .. } => Status::Certified,
        IsometryVerdict::Rejected { witness, .. } => Status::Rejected(witness.clone()),
    }
}

fn isometry_detail(v: &IsometryVerdict) -> String {
    match v {
        IsometryVerdict::Certified { max_deviation, effort } => format!(
            "max deviation {:.2e} over levels ≤ {} ({} samples, {} restarts, tol {:e})",
            max_deviation, effort.levels, effort.samples, effort.restarts, effort.tol
        ),
        IsometryVerdict::Rejected { level, deviation, witness, src_norm, dst_norm } => {
            format!("level {level}: ‖x‖ = {src_norm:.6} but image norm {dst_norm:.6} (relative drop {deviation:.3e}) at {witness}")
        }
    }
}

fn check_validate(r: &mut Report, p: &Presentation, cfg: &Config) {
    let v = validate(p, cfg.depth.max(3));
    let bounded = matches!(v.certification, Certification::Bounded(_));
    let how = format!("{:?}", v.certification);
    for (claim, verdict) in [("associativity", &v.associative), ("identity laws", &v.identity_laws), ("left cancellation", &v.left_cancellative)] {
        let status = match verdict {
            Verdict::Fails(w) => Status::Rejected(w.clone()),
            _ if bounded => Status::Bounded,
            _ => Status::Certified,
        };
        r.push(claim, status, how.clone());
    }
    r.section(
        "presentation",
        vec![
            format!("class: {}", p.class()),
            format!("objects: {}", p.objects().join(", ")),
            format!("letters: {}", p.letters().iter().map(|m| p.render(m)).collect::<Vec<_>>().join(", ")),
            format!("finite: {}", p.is_finite()),
            format!("right cancellative: {:?}", v.right_cancellative),
        ],
    );
}

fn check_hull(r: &mut Report, p: &Presentation, cfg: &Config) -> Result<HullClosure> {
    let bound = match p.diameter() {
        Some(d) => 2 * d + 2,
        None => cfg.depth,
    };
    let h = generate_hull(p, bound)?;
    let status = if h.is_complete() { Status::Certified } else { Status::Bounded };
    r.push("inverse hull closure", status, format!("{} elements at weight bound {} (complete: {})", h.len(), bound, h.is_complete()));
    let hv = hausdorff_check(p, &h);
    let status = match &hv {
        HausdorffVerdict::Certified => Status::Certified,
        HausdorffVerdict::CertifiedAtBound(_) => Status::Bounded,
        HausdorffVerdict::Counterexample { element, point, extension } => {
            Status::Rejected(format!("{element} fixes {} but not {}", p.render(point), p.render(extension)))
        }
    };
    r.push("Hausdorff criterion", status, format!("{hv:?}"));
    if h.len() <= 200 {
        r.section("hull", render_hull(p, &h).lines().map(str::to_string).collect());
    }
    Ok(h)
}

fn check_ideals(r: &mut Report, p: &Presentation, h: &HullClosure) -> Result<()> {
    let table = constructible_ideals(p, h)?;
    if !h.is_complete() {
        r.push(
            "constructible ideals",
            Status::Bounded,
            format!("{} ideals inside the weight-{} window; the semilattice is infinite", table.len(), h.bound()),
        );
        return Ok(());
    }
    let sp = spectrum(p, h)?;
    r.push("constructible ideals", Status::Certified, format!("{} ideals (including ∅: {})", table.len(), table.contains_empty()));
    let mut tight = Vec::new();
    for (i, c) in sp.characters.iter().enumerate() {
        if is_tight(p, &sp.table, c)? {
            tight.push(i);
        }
    }
    let name = |ix: &[usize]| ix.iter().map(|&i| sp.characters[i].render(p)).collect::<Vec<_>>().join(", ");
    r.check(
        "tight characters = closure of maximal characters",
        tight == sp.boundary,
        format!("tight {{{}}} vs closure {{{}}}", name(&tight), name(&sp.boundary)),
    );
    r.section(
        "spectrum",
        vec![
            format!("𝒥: {}", sp.table.ideals().iter().map(|x| x.render(p)).collect::<Vec<_>>().join(", ")),
            format!("Ω: {}", name(&(0..sp.characters.len()).collect::<Vec<_>>())),
            format!("Ω_max: {}", name(&sp.maximal)),
            format!("∂Ω: {}", name(&sp.boundary)),
        ],
    );
    Ok(())
}

fn check_boundary(r: &mut Report, p: &Presentation, chain: &EnvelopeChain) {
    let full = &chain.full_groupoid;
    let bd = &chain.boundary_groupoid;
    r.check(
        "Jack map onto C*_r(I_l ⋉ Ω)",
        chain.jack.isomorphism(),
        format!("{} hull elements, groupoid algebra dim {}, Toeplitz dim {}", chain.jack.elements, chain.jack.groupoid_dim, chain.jack.toeplitz_dim),
    );
    r.push("q_∂ completely isometric on 𝒜_r", isometry_status(&chain.quotient), isometry_detail(&chain.quotient));
    if let Some((name, v)) = &chain.planted {
        let status = match v {
            IsometryVerdict::Rejected { .. } => Status::Certified,
            IsometryVerdict::Certified { .. } => Status::Rejected(format!("{name} was not rejected")),
        };
        r.push("planted wrong quotient rejected", status, format!("{name}: {}", isometry_detail(v)));
    }
    r.section(
        "germ groupoids",
        vec![
            format!("I_l ⋉ Ω: {} germs, {} orbits", full.len(), full.groupoid.orbits().len()),
            format!("I_l ⋉ ∂Ω: {} germs, {} orbits, principal {}", bd.len(), bd.groupoid.orbits().len(), bd.groupoid.is_principal()),
            format!("∂Ω germs: {}", bd.germs.iter().map(|g| g.render(p)).collect::<Vec<_>>().join(" ")),
            format!("C*_r(I_l ⋉ ∂Ω) ≅ {}", algebra_name(&chain.boundary_algebra.sizes())),
        ],
    );
}

fn check_envelope(r: &mut Report, p: &Presentation, chain: &EnvelopeChain, cfg: &Config) -> Result<()> {
    let sh = &chain.shilov;
    r.push(
        "Shilov ideal",
        Status::Certified,
        format!("mask {:?} in cover {}; {} certified, {} rejected masks", sh.mask, algebra_name(&sh.cover_blocks), sh.certified_masks.len(), sh.rejected_masks.len()),
    );
    let mut env_sizes = sh.envelope_blocks.clone();
    env_sizes.sort_unstable();
    let mut bd_sizes = chain.boundary_algebra.sizes();
    bd_sizes.sort_unstable();
    r.check(
        "C*env(𝒜_r) and boundary quotient have the same blocks",
        env_sizes == bd_sizes,
        format!("{} vs {}", algebra_name(&env_sizes), algebra_name(&bd_sizes)),
    );
    r.check("π_env is a *-isomorphism", chain.pi_env.isomorphism(), format!("{:?}, kernel dimension {}", chain.pi_env.map, chain.pi_env.kernel_dim));
    r.check("π_env injective on the diagonal", chain.pi_env.diagonal_injective(), format!("{:?}", chain.pi_env.diagonal));
    r.check(
        "C_0(∂Ω) detects ideals",
        chain.detects.detects,
        match chain.detects.witness_block {
            Some(b) => format!("misses block {b}"),
            None => "meets every block ideal".into(),
        },
    );
    let again = block_decompose(&chain.envelope_gens, cfg.seed)?;
    let idem = shilov_ideal(&again, &chain.envelope_gens, &chain.labels, &cfg.effort())?;
    r.check("envelope idempotence", idem.mask.is_empty(), format!("Shilov mask of 𝒜 inside its envelope: {:?}", idem.mask));
    if let Ok(ga) = degree_grading(p, chain, 2) {
        let delta = coaction_from_grading(&ga)?;
        match extend_to_envelope(&ga, &delta, &envelope_kappa(&ga, &chain.cover, &chain.shilov)) {
            Ok(ext) => r.check(
                "ℤ/2 degree coaction extends to C*env",
                ext.equivariance_dev <= cfg.tol && ext.coaction.verify().valid(cfg.tol),
                format!("components {:?}, equivariance deviation {:.2e}", ext.grading.component_dims(), ext.equivariance_dev),
            ),
            Err(e) => r.push("ℤ/2 degree coaction extends to C*env", Status::Rejected(e.to_string()), e.to_string()),
        }
    }
    let mut lines = vec![
        format!("cover C*_λ ≅ {} (dim {})", algebra_name(&sh.cover_blocks), chain.cover.dim),
        format!("Shilov mask {:?}; C*env(𝒜_r) ≅ {}", sh.mask, algebra_name(&sh.envelope_blocks)),
        format!("rejected masks: {}", sh.rejected_masks.iter().map(|(m, w)| format!("{m:?} ({w})")).collect::<Vec<_>>().join("; ")),
        "generator          ‖λ‖       ‖env‖     ‖∂‖".into(),
    ];
    for row in &chain.table {
        lines.push(format!("{:<16} {:>8.6} {:>9.6} {:>9.6}", row.label, row.lambda_norm, row.envelope_norm, row.boundary_norm));
    }
    r.section("envelope", lines);
    Ok(())
}

fn check_universal(r: &mut Report, p: &Presentation, chain: &EnvelopeChain, cfg: &Config) -> Result<()> {
    let rho = match default_functor(p, cfg.depth) {
        Ok(f) => f,
        Err(e) => {
            r.push("functor into a groupoid", Status::Rejected(e.to_string()), e.to_string());
            return Ok(());
        }
    };
    let od = OrbitData::new(&rho.target, cfg.seed);
    let pure = idempotent_pure_check(p, &chain.hull, &rho, &od)?;
    r.push(
        "ρ̄ idempotent pure",
        if pure.pure { Status::Certified } else { Status::Rejected(pure.witness.clone().unwrap_or_default()) },
        format!("functor injective on morphisms: {}", pure.injective),
    );
    let pa = partial_action_iso_check(p, &chain.full_groupoid, &rho, &od)?;
    r.check(
        "I_l ⋉ Ω ≅ partial transformation groupoid",
        pa.isomorphism(),
        format!("{} germs, {} pairs (κ(g), s(g)), homomorphism {}", pa.germs, pa.pairs, pa.homomorphism),
    );
    let bd = &chain.boundary_groupoid;
    let kappas = kappa_table(p, bd, &rho, &od)?;
    r.check("∂κ_ρ is a cocycle", is_cocycle(bd, &rho.target, &kappas), format!("{} boundary germs", bd.len()));
    let ker = kernel_subgroupoid(bd, &kappas)?;
    let principal = ker.is_principal();
    if matches!(p.class(), Class::KGraph | Class::GraphPath) {
        r.check("ker(∂κ_ρ) principal", principal, format!("{} elements", ker.len()));
    }
    r.section(
        "universal group",
        bd.germs.iter().zip(&kappas).map(|(g, k)| format!("κ{} = {}", g.render(p), if k.is_empty() { "e".into() } else { k.render(&rho.target) })).collect(),
    );
    Ok(())
}

fn check_groupoid_input(r: &mut Report, g: &FiniteGroupoid, cfg: &Config) {
    let od = OrbitData::new(g, cfg.seed);
    let words: Vec<_> = (0..g.len()).map(|x| j_map(g, &od, x)).collect();
    let empty_units = (0..g.len()).all(|x| words[x].is_empty() == g.is_unit(x));
    let off: Vec<usize> = (0..g.len()).filter(|&x| !g.is_unit(x)).collect();
    let mut collision = None;
    for (i, &a) in off.iter().enumerate() {
        for &b in &off[i + 1..] {
            if words[a] == words[b] && collision.is_none() {
                collision = Some(format!("j({}) = j({})", g.label(a), g.label(b)));
            }
        }
    }
    r.check("j⁻¹(e) = units", empty_units, format!("{} units of {} elements", g.units().len(), g.len()));
    let detail = collision.clone().unwrap_or_else(|| format!("{} non-units", off.len()));
    r.push("j injective off the units", Status::from_bool(collision.is_none(), || detail.clone()), detail);
    r.section(
        "j-map",
        (0..g.len()).map(|x| format!("j({}) = {}", g.label(x), if words[x].is_empty() { "e".into() } else { words[x].render(g) })).collect(),
    );
}

fn check_coaction(r: &mut Report, ga: &GradedAlgebra, cfg: &Config) -> Result<()> {
    let tol = cfg.tol;
    r.push("grading", Status::Certified, format!("components {:?} over a group of order {}", ga.component_dims(), ga.group.order()));
    let delta = coaction_from_grading(ga)?;
    let v = delta.verify();
    r.check(
        "coaction from grading",
        v.valid(tol),
        format!("homomorphism {:.2e}, identity {:.2e}, span {}/{}", v.homomorphism_dev, v.identity_dev, v.span_dim, v.expected_span_dim),
    );
    let back = delta.to_grading()?;
    r.check("grading recovered from spectral subspaces", back.component_dims() == ga.component_dims(), format!("{:?}", back.component_dims()));
    let normal = normality_check(&delta, &cfg.effort())?;
    r.push("normal coaction", isometry_status(&normal), isometry_detail(&normal));
    let cp = crossed_product(&delta);
    let da = dual_action_check(&delta, &cp);
    r.check("dual action", da.valid(tol), format!("crossed product dim {}; {da:?}", cp.dim()));
    let n = delta.algebra.n;
    if delta.algebra.contains(&eye(n)) {
        let ai = approx_identity_core(&delta, &eye(n))?;
        r.check("contractive approximate identity", ai.passed(tol), format!("{ai:?}"));
    }
    let k = katayama_verify(ga, &delta)?;
    r.check(
        "Katayama duality",
        k.passed(tol),
        format!("max deviation {:.2e}; double crossed product dim {} vs δ_λ(A)⊗𝕂 dim {}", k.max_deviation(), k.double_crossed_dim, k.target_dim),
    );
    let cover = block_decompose(&ga.algebra.basis, cfg.seed)?;
    let labels: Vec<String> = (0..ga.algebra.dim()).map(|i| format!("b{i}")).collect();
    let sh = shilov_ideal(&cover, &ga.algebra.basis, &labels, &cfg.effort())?;
    let kappa = envelope_kappa(ga, &cover, &sh);
    match extend_to_envelope(ga, &delta, &kappa) {
        Ok(ext) => r.check(
            "coaction extends to C*env",
            ext.equivariance_dev <= tol && ext.coaction.verify().valid(tol),
            format!("C*env ≅ {}, components {:?}, equivariance deviation {:.2e}", algebra_name(&sh.envelope_blocks), ext.grading.component_dims(), ext.equivariance_dev),
        ),
        Err(e) => r.push("coaction extends to C*env", Status::Rejected(e.to_string()), e.to_string()),
    }
    r.section(
        "coaction",
        vec![
            format!("group order {}", ga.group.order()),
            format!("component dims {:?}", ga.component_dims()),
            format!("cover {} ; Shilov mask {:?}", algebra_name(&sh.cover_blocks), sh.mask),
            format!("Katayama report: {k:?}"),
        ],
    );
    Ok(())
}

fn check_lcm(r: &mut Report, p: &Presentation, cfg: &Config) -> Result<()> {
    let rep = crate::lcm::starling_report(p, cfg.depth, &cfg.effort(), cfg.seed)?;
    for s in &rep.steps {
        r.push(&s.claim, s.status.clone(), s.detail.clone());
    }
    let mut lines = vec![format!("exact: {}", rep.exact)];
    for c in p.letters() {
        let cert = crate::lcm::core_membership(p, &c, cfg.depth)?;
        lines.push(format!("{}: {:?}", cert.morphism, cert.verdict));
    }
    r.section("core", lines);
    Ok(())
}

fn check_truncation(r: &mut Report, p: &Presentation, cfg: &Config) -> Result<()> {
    let top = cfg.depth.max(4);
    let depths: Vec<usize> = (4.min(top)..=top).collect();
    if let Err(e) = boundary_sample(p) {
        r.push("λ and ⊕ϑ_χ agree on 𝒜 (truncated)", Status::Bounded, format!("not sampled: {e}"));
        return Ok(());
    }
    let ev = truncation_evidence(p, &depths, 50, cfg.seed)?;
    r.push(
        "λ and ⊕ϑ_χ agree on 𝒜 (truncated)",
        if ev.final_gap() <= 1e-3 && ev.monotone { Status::Bounded } else { Status::Rejected(format!("gap {:.3e}", ev.final_gap())) },
        format!("{} samples, characters {}, final gap {:.2e}, monotone {}", ev.samples, ev.characters.join(" "), ev.final_gap(), ev.monotone),
    );
    r.section("truncation", ev.rows.iter().map(|row| format!("depth {:>2}: gap {:.3e}, max ‖λ(x)‖ {:.6}", row.depth, row.max_gap, row.max_lambda_norm)).collect());
    Ok(())
}

/// Runs one command and assembles its report. Errors are input or
/// precondition failures and carry no verdict.
pub fn run(cmd: Command, input: &Input, fixture: &str, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let mut r = Report::new(cmd.name(), fixture, cfg);
    let effort = cfg.effort();
    match cmd {
        Command::Validate => {
            let p = expect_category(input, cmd)?;
            check_validate(&mut r, p, cfg);
        }
        Command::Hull => {
            let p = expect_category(input, cmd)?;
            check_hull(&mut r, p, cfg)?;
        }
        Command::Ideals => {
            let p = expect_category(input, cmd)?;
            let h = check_hull(&mut r, p, cfg)?;
            check_ideals(&mut r, p, &h)?;
        }
        Command::Boundary => {
            let p = expect_category(input, cmd)?;
            if p.is_finite() {
                let chain = envelope_chain(p, &effort)?;
                check_boundary(&mut r, p, &chain);
            } else {
                check_truncation(&mut r, p, cfg)?;
            }
        }
        Command::Groupoid => match input {
            Input::Groupoid(g) => check_groupoid_input(&mut r, g, cfg),
            Input::Category(p) => {
                let chain = envelope_chain(p, &effort)?;
                check_universal(&mut r, p, &chain, cfg)?;
            }
            Input::Graded(_) => return Err(Error::PreconditionViolated("groupoid expects a category or groupoid".into())),
        },
        Command::Envelope => {
            let p = expect_category(input, cmd)?;
            let chain = envelope_chain(p, &effort)?;
            check_envelope(&mut r, p, &chain, cfg)?;
        }
        Command::Coaction => match input {
            Input::Graded(ga) => check_coaction(&mut r, ga, cfg)?,
            Input::Category(p) => {
                let chain = envelope_chain(p, &effort)?;
                check_coaction(&mut r, &degree_grading(p, &chain, 2)?, cfg)?;
            }
            Input::Groupoid(_) => return Err(Error::PreconditionViolated("coaction expects a graded algebra or category".into())),
        },
        Command::Lcm => {
            let p = expect_category(input, cmd)?;
            check_lcm(&mut r, p, cfg)?;
        }
        Command::Thesis => match input {
            Input::Category(p) => thesis(&mut r, p, cfg)?,
            Input::Graded(ga) => check_coaction(&mut r, ga, cfg)?,
            Input::Groupoid(g) => check_groupoid_input(&mut r, g, cfg),
        },
    }
    Ok(r)
}

fn thesis(r: &mut Report, p: &Presentation, cfg: &Config) -> Result<()> {
    check_validate(r, p, cfg);
    let h = check_hull(r, p, cfg)?;
    check_ideals(r, p, &h)?;
    if !p.is_finite() {
        check_truncation(r, p, cfg)?;
        if p.is_monoid() {
            check_lcm(r, p, cfg)?;
        }
        return Ok(());
    }
    let chain = envelope_chain(p, &cfg.effort())?;
    check_boundary(r, p, &chain);
    check_envelope(r, p, &chain, cfg)?;
    check_universal(r, p, &chain, cfg)?;
    if p.is_monoid() {
        check_lcm(r, p, cfg)?;
    }
    let env = algebra_name(&chain.shilov.envelope_blocks);
    let bd = algebra_name(&chain.boundary_algebra.sizes());
    let summary = if chain.pi_env.isomorphism() {
        format!("C*env(𝒜_r) ≅ ∂-quotient ≅ {env}")
    } else {
        format!("C*env(𝒜_r) ≅ {env}, ∂-quotient ≅ {bd}: π_env not injective")
    };
    r.section("summary", vec![summary]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_chain() {
        let p = fixtures::edge();
        let c = envelope_chain(&p, &Effort::default()).unwrap();
        assert_eq!(c.hull.len(), 6);
        assert_eq!(c.cover.sizes(), vec![1, 2]);
        assert_eq!(c.shilov.mask, vec![0]);
        assert_eq!(c.boundary_algebra.sizes(), vec![2]);
        assert!(c.pi_env.isomorphism());
        assert!(c.quotient.certified());
        assert!(!c.planted.as_ref().unwrap().1.certified());
    }

    #[test]
    fn names() {
        assert_eq!(algebra_name(&[1, 2]), "ℂ ⊕ M₂");
        assert_eq!(algebra_name(&[12]), "M₁₂");
        assert_eq!("thesis".parse::<Command>().unwrap(), Command::Thesis);
    }

    #[test]
    fn config_bounds() {
        assert!(Config::default().validate().is_ok());
        assert!(Config { tol: 0.1, ..Config::default() }.validate().is_err());
        assert!(Config { depth: 0, ..Config::default() }.validate().is_err());
    }
}

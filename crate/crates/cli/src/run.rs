//! The `info`, `decompose` and `selftest` pipelines.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use normdec_core::category::{hocolim_homology_two_ways, random_poset_diagram, CatDiagram, DEFAULT_SIMPLEX_BUDGET};
use normdec_core::decomposition::*;
use normdec_core::fusion::{Collection, CollectionKind, FusionSystem, SubgroupId};
use normdec_core::group::{is_prime, library, FiniteGroup, Validation};
use normdec_core::linking::LinkingSystem;
use normdec_core::subdivision::{
    aut_l_chain, compare_chain_posets, conj_classes_of_chains, enumerate_chains, restriction_map, subchain_indices,
    ChainPoset, DEFAULT_SUBDIVISION_BUDGET,
};
use normdec_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cache::{cache_key, Cache};
use crate::input::{parse_group, parse_subgroup_list};
use crate::report::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded in {stage}: {detail}")]
    Budget { stage: String, detail: String },
}

impl CliError {
    /// 2 for input errors, 3 for exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget { .. } => 3,
        }
    }
}

fn at(stage: &'static str) -> impl Fn(Error) -> CliError {
    move |e| match e {
        Error::SimplexBudgetExceeded { .. }
        | Error::Budget { .. }
        | Error::ClosureExceedsCap { .. }
        | Error::SubgroupCountExceedsCap { .. } => CliError::Budget { stage: stage.into(), detail: e.to_string() },
        _ => CliError::Input(format!("{stage}: {e}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollectionSpec {
    Centric,
    CentricRadical,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EabSpec {
    All,
    Omega,
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub group: Option<PathBuf>,
    pub collection: CollectionSpec,
    pub eab: EabSpec,
    /// Truncation `d`: nerves are built up to dimension `d`, homology is
    /// exact in degrees `0..d`.
    pub dim: usize,
    pub simplex_budget: usize,
    pub subdivision_budget: usize,
    pub strict: bool,
    pub dwyer_homology: bool,
    pub thomason: bool,
    pub thomason_seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            group: None,
            collection: CollectionSpec::Centric,
            eab: EabSpec::All,
            dim: 4,
            simplex_budget: DEFAULT_SIMPLEX_BUDGET,
            subdivision_budget: DEFAULT_SUBDIVISION_BUDGET,
            strict: false,
            dwyer_homology: false,
            thomason: false,
            thomason_seed: 0,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !is_prime(self.p) {
            return Err(CliError::Input(format!("--p {} is not a prime", self.p)));
        }
        if self.dim < 1 {
            return Err(CliError::Input("--dim must be at least 1".into()));
        }
        if self.simplex_budget == 0 || self.subdivision_budget == 0 {
            return Err(CliError::Input("budgets must be positive".into()));
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        let file = |p: &PathBuf| format!("@{}", p.display());
        ConfigEcho {
            p: self.p,
            group: self.group.as_ref().map(|p| p.display().to_string()),
            collection: match &self.collection {
                CollectionSpec::Centric => "centric".into(),
                CollectionSpec::CentricRadical => "centric-radical".into(),
                CollectionSpec::File(p) => file(p),
            },
            eab: match &self.eab {
                EabSpec::All => "all".into(),
                EabSpec::Omega => "omega".into(),
                EabSpec::File(p) => file(p),
            },
            dim: self.dim,
            simplex_budget: self.simplex_budget,
            subdivision_budget: self.subdivision_budget,
            strict: self.strict,
            dwyer_homology: self.dwyer_homology,
            thomason: self.thomason,
        }
    }

    fn settings(&self) -> HomologySettings {
        HomologySettings { cap: self.dim, p: self.p, budget: self.simplex_budget }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_group(cfg: &RunConfig) -> Result<FiniteGroup, CliError> {
    let path = cfg.group.as_ref().ok_or_else(|| CliError::Input("--group <path> is required".into()))?;
    let validation = if cfg.strict { Validation::Strict } else { Validation::Default };
    parse_group(&read(path)?, validation).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

struct Timer(BTreeMap<String, u64>, Instant);

impl Timer {
    fn new() -> Timer {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.0.insert(stage.into(), (now - self.1).as_millis() as u64);
        self.1 = now;
    }
}

/// `F_S(G)`, the collection `C` and `L^C`.
pub struct System {
    pub fusion: Arc<FusionSystem>,
    pub collection: Collection,
    pub linking: LinkingSystem,
    collection_spec: String,
}

fn build_system(cfg: &RunConfig, group: FiniteGroup) -> Result<System, CliError> {
    let fusion = Arc::new(FusionSystem::new(group, cfg.p).map_err(at("fusion system"))?);
    let (collection, collection_spec) = match &cfg.collection {
        CollectionSpec::Centric => (fusion.build_collection(CollectionKind::Centric, None), "centric".to_string()),
        CollectionSpec::CentricRadical => {
            (fusion.build_collection(CollectionKind::CentricRadical, None), "centric-radical".to_string())
        }
        CollectionSpec::File(path) => {
            let text = read(path)?;
            let ids = parse_subgroup_list(&text, &fusion).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            (fusion.build_collection(CollectionKind::Centric, Some(&ids)), format!("file\0{text}"))
        }
    };
    let collection = collection.map_err(at("collection"))?;
    let linking = LinkingSystem::build(fusion.clone(), &collection).map_err(at("linking system"))?;
    Ok(System { fusion, collection, linking, collection_spec })
}

fn subgroup_entry(fusion: &FusionSystem, id: SubgroupId) -> SubgroupEntry {
    let s = fusion.subgroup(id);
    SubgroupEntry { id, order: s.order(), elements: s.elements().to_vec() }
}

fn collection_section(fusion: &FusionSystem, c: &Collection) -> CollectionSection {
    let classes = fusion
        .conjugacy_classes(&c.members)
        .into_iter()
        .map(|class| {
            let rep = class[0];
            ClassEntry {
                representative: subgroup_entry(fusion, rep),
                size: class.len(),
                centric: fusion.is_centric(rep),
                radical: fusion.is_radical(rep),
                fully_centralised: fusion.is_fully_centralised(rep),
                fully_normalised: fusion.is_fully_normalised(rep),
            }
        })
        .collect();
    let kind = match c.kind {
        CollectionKind::Centric => "centric",
        CollectionKind::CentricRadical => "centric-radical",
        CollectionKind::ElementaryAbelian => "elementary-abelian",
        CollectionKind::Custom => "custom",
    };
    CollectionSection { kind: kind.into(), members: c.len(), classes }
}

fn chain_poset(sys: &System) -> ChainPoset {
    conj_classes_of_chains(&sys.fusion, enumerate_chains(&sys.fusion, &sys.collection, None))
}

fn structure(sys: &System, cp: &ChainPoset) -> Result<Structure, CliError> {
    let f = &sys.fusion;
    let centric = f.build_collection(CollectionKind::Centric, None).map_err(at("collection"))?;
    let radical = f.build_collection(CollectionKind::CentricRadical, None).map_err(at("collection"))?;
    let n = cp.classes.len();
    let relations = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && !cp.poset.hom(a as u32, b as u32).is_empty())
        .collect();
    Ok(Structure {
        centric_classes: f.conjugacy_classes(&centric.members).len(),
        radical_centric_classes: f.conjugacy_classes(&radical.members).len(),
        collection: collection_section(f, &sys.collection),
        linking_objects: sys.linking.category().n_objects(),
        linking_morphisms: sys.linking.category().n_morphisms(),
        chain_poset: ChainPosetSection {
            classes: cp
                .classes
                .iter()
                .map(|c| ChainClassEntry { representative: c.representative.clone(), dimension: c.representative.len() - 1, size: c.size() })
                .collect(),
            relations,
        },
    })
}

/// The structure section, through the cache when one is configured.
fn cached_structure(cfg: &RunConfig, sys: &System) -> Result<Structure, CliError> {
    let cache = cfg.cache_dir.as_ref().map(Cache::new);
    let key = cache_key(sys.fusion.group().table(), cfg.p, &sys.collection_spec);
    if let Some(s) = cache.as_ref().and_then(|c| c.load::<Structure>(&key)) {
        return Ok(s);
    }
    let s = structure(sys, &chain_poset(sys))?;
    if let Some(c) = &cache {
        if let Err(e) = c.store(&key, &s) {
            eprintln!("warning: cache {} not updated: {e}", c.dir().display());
        }
    }
    Ok(s)
}

fn system_summary(f: &FusionSystem) -> SystemSummary {
    let g = f.group();
    SystemSummary {
        group_order: g.order(),
        fingerprint: g.fingerprint(),
        sylow_order: f.sylow().order(),
        sylow_elements: f.sylow().elements().iter().map(|&x| (x, g.label(x))).collect(),
        subgroups_of_sylow: f.subgroups().len(),
    }
}

/// `|L(P,Q)| = |F(P,Q)|·|Z(P)|` for every pair of objects.
pub fn hom_counts_hold(l: &LinkingSystem) -> bool {
    let f = l.fusion();
    let cat = l.category();
    cat.objects().all(|a| {
        let z = f.center(l.subgroup_id(a)).order();
        cat.objects().all(|b| cat.hom(a, b).len() == f.hom(l.subgroup_id(a), l.subgroup_id(b)).len() * z)
    })
}

fn axioms(sys: &System) -> Result<AxiomVerdicts, CliError> {
    let sat = sys.fusion.to_table().check_saturation();
    let ax = sys.linking.verify_axioms().map_err(at("linking axioms"))?;
    let witness = |w: &Option<normdec_core::linking::AxiomWitness>, name: &str| {
        w.as_ref().map(|w| format!("{name} at {:?}: {}", w.objects, w.detail))
    };
    Ok(AxiomVerdicts {
        saturation_ok: sat.ok(),
        saturation_witnesses: sat
            .axiom_i_witnesses
            .iter()
            .chain(&sat.axiom_ii_witnesses)
            .map(|w| format!("axiom {:?} at subgroup {}: {}", w.axiom, w.subgroup, w.detail))
            .collect(),
        linking_ok: ax.ok(),
        linking_witnesses: [witness(&ax.a, "A"), witness(&ax.b, "B"), witness(&ax.c, "C"), witness(&ax.functor, "functor")]
            .into_iter()
            .flatten()
            .collect(),
        linking_sampled: ax.sampled,
        hom_counts_ok: hom_counts_hold(&sys.linking),
    })
}

fn base_report(command: &str, cfg: &RunConfig, sys: &System, t: &mut Timer) -> Result<RunReport, CliError> {
    let mut r = RunReport::new(command, cfg.echo());
    r.system = Some(system_summary(&sys.fusion));
    r.structure = Some(cached_structure(cfg, sys)?);
    t.lap("structure");
    Ok(r)
}

pub fn cmd_info(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let mut t = Timer::new();
    let sys = build_system(cfg, load_group(cfg)?)?;
    t.lap("system");
    let mut r = base_report("info", cfg, &sys, &mut t)?;
    r.timing_ms = t.0;
    Ok(r)
}

fn check(checks: &mut Vec<NamedCheck>, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
    checks.push(NamedCheck { name: name.into(), passed, detail: detail.into() });
}

fn eab_collection(cfg: &RunConfig, sys: &System) -> Result<Collection, CliError> {
    let f = &sys.fusion;
    let c = match &cfg.eab {
        EabSpec::All => f.build_collection(CollectionKind::ElementaryAbelian, None),
        EabSpec::Omega => {
            let ids: Vec<SubgroupId> = sys
                .collection
                .members
                .iter()
                .map(|&id| f.id_of(&f.group().omega_p(&f.center(id), cfg.p)).expect("subgroups of S are indexed"))
                .collect();
            f.build_collection(CollectionKind::ElementaryAbelian, Some(&ids))
        }
        EabSpec::File(path) => {
            let ids = parse_subgroup_list(&read(path)?, f).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            f.build_collection(CollectionKind::ElementaryAbelian, Some(&ids))
        }
    };
    c.map_err(at("elementary abelian collection"))
}

fn decomposition_section(theorem: &str, d: &DecompositionDiagram, v: &DecompositionReport, checks: Vec<NamedCheck>) -> DecompositionSection {
    DecompositionSection {
        theorem: theorem.into(),
        eab: None,
        base_objects: d.base.n_objects(),
        total_objects: d.total.cat.n_objects(),
        total_morphisms: d.total.cat.n_morphisms(),
        target_objects: d.target.n_objects(),
        target_morphisms: d.target.n_morphisms(),
        model_objects: v.model_objects,
        total_simplices: v.total_simplices,
        target_simplices: v.target_simplices,
        homology: v.homology.clone(),
        iso: v.all_iso(),
        checks,
    }
}

fn squares_check(checks: &mut Vec<NamedCheck>, squares: &[SquareCheck]) {
    let bad: Vec<String> = squares
        .iter()
        .filter(|s| !(s.natural && s.homology_agrees != Some(false)))
        .map(|s| format!("psi {}", s.psi))
        .collect();
    check(checks, format!("{} restriction squares natural, equal on homology", squares.len()), bad.is_empty(), bad.join(", "));
}

fn theorem_a(cfg: &RunConfig, sys: &System, t: &mut Timer) -> Result<DecompositionSection, CliError> {
    let l = &sys.linking;
    let ta = theorem_a_diagram(l, cfg.subdivision_budget).map_err(at("theorem A: subdivision"))?;
    t.lap("diagram");
    let v = verify_decomposition(&ta.diagram, cfg.dim, cfg.p, cfg.simplex_budget).map_err(at("theorem A: homology"))?;
    t.lap("homology");
    let mut checks = Vec::new();
    let cp = chain_poset(sys);
    check(&mut checks, "chain classes of s_I(L) match the chain poset", compare_chain_posets(&ta.subdivision, &ta.projection, &cp).is_some(), "");
    if cfg.strict {
        let h = cfg.settings();
        for chain in &ta.subdivision.chains {
            let b = baut_to_delta(&ta, l, chain).map_err(at("theorem A: chains"))?;
            let hom = b.homology(&ta, h).map_err(at("theorem A: chain homology"))?;
            check(
                &mut checks,
                format!("chain {chain:?}: BAut factorisation"),
                b.to_orbit_iso && b.factorization_holds && hom.all_iso(),
                hom.summary(),
            );
        }
        squares_check(&mut checks, &theorem_a_squares(&ta, Some(h)).map_err(at("theorem A: squares"))?);
        let c = theorem_a_cofinality(&ta, l, h).map_err(at("theorem A: cofinality"))?;
        check(&mut checks, "first-vertex functor cofinal (comma nerves acyclic)", c.first_vertex.passes(), "");
        check(&mut checks, "Pi_P adjoint inclusions", c.adjoint.iter().all(|&b| b), "");
        t.lap("strict checks");
    }
    Ok(decomposition_section("A", &ta.diagram, &v, checks))
}

fn theorem_b(cfg: &RunConfig, sys: &System, t: &mut Timer) -> Result<DecompositionSection, CliError> {
    let l = &sys.linking;
    let e = eab_collection(cfg, sys)?;
    let tb = theorem_b_diagram(l, &e.members, cfg.subdivision_budget).map_err(at("theorem B: diagram"))?;
    t.lap("diagram");
    let v = verify_decomposition(&tb.diagram, cfg.dim, cfg.p, cfg.simplex_budget).map_err(at("theorem B: homology"))?;
    t.lap("homology");
    let mut checks = Vec::new();
    check(&mut checks, "Hom_F(E, Z(P)) = Hom_F(E, Omega_p Z(P))", zeta_hom_check(l, &tb.zeta), "");
    if cfg.strict {
        let h = cfg.settings();
        for o in tb.subdivision.cat.objects() {
            let chain = tb.chain_of(o);
            let c = theorem_b_chain(&tb, l, &chain).map_err(at("theorem B: chains"))?;
            let hom = c.homology(&tb, h).map_err(at("theorem B: chain homology"))?;
            check(
                &mut checks,
                format!("chain {chain:?}: epsilon fully faithful, factorisation"),
                c.orbit_iso && c.factorization_holds && c.epsilon.injective_on_objects && c.epsilon.fully_faithful && hom.all_iso(),
                hom.summary(),
            );
            if let Some(es) = c.epsilon.essentially_surjective {
                check(&mut checks, format!("chain {chain:?}: epsilon essentially surjective"), es, "");
            }
        }
        squares_check(&mut checks, &theorem_b_squares(&tb, Some(h)).map_err(at("theorem B: squares"))?);
        let c = theorem_b_cofinality(&tb, h).map_err(at("theorem B: cofinality"))?;
        check(&mut checks, "mu cofinal (comma nerves acyclic)", c.first_vertex.passes(), "");
        check(&mut checks, "Pi_P adjoint inclusions", c.adjoint.iter().all(|&b| b), "");
        let tau = tau_check(l, &tb.zeta, cfg.subdivision_budget).map_err(at("theorem B: tau"))?;
        check(&mut checks, "tau isomorphism with p = mu tau", tau.isomorphism && tau.first_vertex_factorises, "");
        t.lap("strict checks");
    }
    let mut s = decomposition_section("B", &tb.diagram, &v, checks);
    s.eab = Some(collection_section(&sys.fusion, &e));
    Ok(s)
}

fn dwyer_section(cfg: &RunConfig, l: &LinkingSystem) -> Result<DwyerSection, CliError> {
    let d = dwyer_comparison(l, cfg.dwyer_homology, cfg.simplex_budget).map_err(at("dwyer comparison"))?;
    Ok(DwyerSection {
        transporter_objects: d.transporter_objects,
        transporter_morphisms: d.transporter_morphisms,
        projection_is_functor: d.projection_is_functor,
        passed: d.passes(),
        classes: d
            .classes
            .iter()
            .map(|c| DwyerClassEntry {
                chain: c.chain.clone(),
                transporter_aut: c.transporter_aut,
                linking_aut: c.linking_aut,
                kernel: c.kernel,
                kernel_matches: c.kernel_matches,
                surjective: c.surjective,
                kernel_coprime: c.kernel_coprime,
                transporter_betti: c.homology.as_ref().map(|h| h.transporter_betti.clone()),
                linking_betti: c.homology.as_ref().map(|h| h.linking_betti.clone()),
                induced_iso: c.homology.as_ref().map(|h| h.induced_iso),
            })
            .collect(),
    })
}

/// Betti numbers of `hocolim U` from the Grothendieck construction and from
/// the simplicial replacement, on `count` random diagrams.
pub fn thomason_random(seed: u64, count: usize, cap: usize, p: u32, budget: usize) -> Result<Vec<ThomasonEntry>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let u = random_poset_diagram(&mut rng, 4);
            thomason_entry(format!("random {i}"), &u, cap, p, budget)
        })
        .collect()
}

fn thomason_entry(label: String, u: &CatDiagram, cap: usize, p: u32, budget: usize) -> Result<ThomasonEntry, CliError> {
    let h = hocolim_homology_two_ways(u, cap, p, budget).map_err(at("thomason cross-check"))?;
    let total_objects = u.base.objects().map(|k| u.value(k).n_objects()).sum();
    Ok(ThomasonEntry {
        label,
        base_objects: u.base.n_objects(),
        total_objects,
        agree: h.agree(),
        via_grothendieck: h.via_grothendieck,
        via_diagonal: h.via_diagonal,
    })
}

pub const THOMASON_DIAGRAMS: usize = 5;
const THOMASON_CAP: usize = 3;

fn thomason_section(cfg: &RunConfig, value: Option<&CatDiagram>) -> Result<ThomasonSection, CliError> {
    let cap = cfg.dim.min(THOMASON_CAP);
    let mut entries = thomason_random(cfg.thomason_seed, THOMASON_DIAGRAMS, cap, cfg.p, cfg.simplex_budget)?;
    let mut skipped = Vec::new();
    if let Some(u) = value {
        match thomason_entry("decomposition diagram".into(), u, cap, cfg.p, cfg.simplex_budget) {
            Ok(e) => entries.push(e),
            Err(CliError::Budget { detail, .. }) => skipped.push(format!("decomposition diagram: {detail}")),
            Err(e) => return Err(e),
        }
    }
    Ok(ThomasonSection { seed: cfg.thomason_seed, cap, entries, skipped })
}

pub fn cmd_decompose(cfg: &RunConfig, theorem: Theorem) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let mut t = Timer::new();
    let sys = build_system(cfg, load_group(cfg)?)?;
    t.lap("system");
    let mut r = base_report("decompose", cfg, &sys, &mut t)?;
    r.trusted_degrees = Some([0, cfg.dim - 1]);
    let ax = axioms(&sys)?;
    t.lap("axioms");
    r.require("saturation", ax.saturation_ok);
    r.require("linking axioms", ax.linking_ok);
    r.require("linking hom counts", ax.hom_counts_ok);
    r.axioms = Some(ax);
    let d = match theorem {
        Theorem::A => theorem_a(cfg, &sys, &mut t)?,
        Theorem::B => theorem_b(cfg, &sys, &mut t)?,
    };
    r.require(format!("theorem {} comparison is a homology isomorphism", d.theorem), d.iso);
    for c in &d.checks {
        r.require(c.name.clone(), c.passed);
    }
    let dw = dwyer_section(cfg, &sys.linking)?;
    r.require("dwyer comparison", dw.passed);
    r.dwyer = Some(dw);
    t.lap("dwyer");
    if cfg.thomason {
        // the decomposition diagram itself is recomputed only for this check
        let value = match theorem {
            Theorem::A => theorem_a_diagram(&sys.linking, cfg.subdivision_budget).map(|ta| ta.diagram.value),
            Theorem::B => {
                let e = eab_collection(cfg, &sys)?;
                theorem_b_diagram(&sys.linking, &e.members, cfg.subdivision_budget).map(|tb| tb.diagram.value)
            }
        }
        .map_err(at("thomason cross-check"))?;
        let th = thomason_section(cfg, Some(&value))?;
        r.require("thomason cross-check", th.entries.iter().all(|e| e.agree));
        r.thomason = Some(th);
        t.lap("thomason");
    }
    r.decomposition = Some(d);
    r.timing_ms = t.0;
    Ok(r)
}

/// A selftest corpus entry: name, group and prime.
pub fn corpus_entry(name: &str) -> Option<(String, FiniteGroup, u32)> {
    let (label, g, p) = match name {
        "c2" => ("C_2", library::cyclic(2), 2),
        "s3" => ("S_3", library::symmetric3(), 2),
        "d8" => ("D_8", library::dihedral8(), 2),
        "q8" => ("Q_8", library::quaternion8(), 2),
        "a4" => ("A_4", library::alternating4(), 2),
        "s4" => ("S_4", library::symmetric4(), 2),
        "s3xc3" => ("S_3xC_3", library::s3_times_c3(), 2),
        "a4p3" => ("A_4", library::alternating4(), 3),
        _ => return None,
    };
    Some((format!("{label} p={p}"), g, p))
}

pub const DEFAULT_CORPUS: [&str; 8] = ["c2", "s3", "d8", "q8", "a4", "s4", "s3xc3", "a4p3"];

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub corpus: Vec<String>,
    pub dim: usize,
    /// Break one fusion morphism set and one composite per system; the
    /// affected rows must then fail.
    pub inject_mutation: bool,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { corpus: DEFAULT_CORPUS.iter().map(|s| s.to_string()).collect(), dim: 3, inject_mutation: false, seed: 0 }
    }
}

fn row(rows: &mut Vec<SelftestRow>, system: &str, check: &str, passed: bool, detail: impl Into<String>) {
    rows.push(SelftestRow { system: system.into(), check: check.into(), passed, detail: detail.into() });
}

fn selftest_system(name: &str, g: FiniteGroup, p: u32, st: &SelftestConfig, rows: &mut Vec<SelftestRow>) -> Result<(), CliError> {
    let cfg = RunConfig { p, dim: st.dim, dwyer_homology: true, ..RunConfig::default() };
    let mut sys = build_system(&cfg, g)?;
    let f = sys.fusion.clone();
    let mut table = f.to_table();
    let mut mutated = false;
    if st.inject_mutation {
        // drop a non-identity automorphism of the largest subgroup that has one
        if let Some(v) = (0..f.subgroups().len()).rev().find(|&v| table.hom(v, v).len() > 1) {
            table.remove_morphism(v, v, table.hom(v, v).len() - 1);
            mutated = true;
        }
    }
    let sat = table.check_saturation();
    row(rows, name, "saturation", sat.ok(), if mutated { "mutated fusion table" } else { "" });
    if st.inject_mutation {
        let cat = sys.linking.category_mut();
        if let Some(a) = cat.objects().rev().find(|&a| cat.hom(a, a).len() > 1) {
            let f = cat.hom(a, a).end - 1;
            let ff = cat.compose(f, f);
            let wrong = cat.hom(a, a).find(|&h| h != ff).expect("two automorphisms");
            cat.set_composite(f, f, wrong);
        }
    }
    let l = &sys.linking;
    let ax = l.verify_axioms().map_err(at("linking axioms"))?;
    let assoc = l.category().check_axioms();
    row(
        rows,
        name,
        "linking axioms",
        ax.ok() && assoc.is_ok() && hom_counts_hold(l),
        [ax.a.as_ref(), ax.b.as_ref(), ax.c.as_ref(), ax.functor.as_ref()]
            .into_iter()
            .flatten()
            .map(|w| w.detail.clone())
            .chain(assoc.err().map(|e| e.to_string()))
            .collect::<Vec<_>>()
            .join("; "),
    );
    if st.inject_mutation {
        return Ok(());
    }
    let mut aut_ok = true;
    for chain in enumerate_chains(&f, &sys.collection, None) {
        aut_ok &= aut_l_chain(l, &chain).is_ok();
        for sub in subchain_indices(chain.len()) {
            let s: Vec<SubgroupId> = sub.iter().map(|&i| chain[i]).collect();
            aut_ok &= restriction_map(l, &chain, &s).map_err(at("restriction maps"))?.injective;
        }
    }
    row(rows, name, "Aut_L of chains, injective restrictions", aut_ok, "");
    let ta = theorem_a_diagram(l, cfg.subdivision_budget).map_err(at("theorem A: subdivision"))?;
    let va = verify_decomposition(&ta.diagram, st.dim, p, cfg.simplex_budget).map_err(at("theorem A: homology"))?;
    row(rows, name, "theorem A", va.all_iso(), va.homology.summary());
    let e = eab_collection(&cfg, &sys)?;
    let tb = theorem_b_diagram(l, &e.members, cfg.subdivision_budget).map_err(at("theorem B: diagram"))?;
    let vb = verify_decomposition(&tb.diagram, st.dim, p, cfg.simplex_budget).map_err(at("theorem B: homology"))?;
    row(rows, name, "theorem B", vb.all_iso(), vb.homology.summary());
    let dw = dwyer_section(&cfg, l)?;
    row(rows, name, "dwyer comparison", dw.passed, "");
    Ok(())
}

pub fn cmd_selftest(st: &SelftestConfig) -> Result<RunReport, CliError> {
    let cfg = RunConfig { dim: st.dim, thomason: true, thomason_seed: st.seed, ..RunConfig::default() };
    cfg.validate()?;
    let mut t = Timer::new();
    let mut r = RunReport::new("selftest", cfg.echo());
    r.trusted_degrees = Some([0, st.dim - 1]);
    let mut rows = Vec::new();
    for name in &st.corpus {
        let (label, g, p) = corpus_entry(name).ok_or_else(|| CliError::Input(format!("unknown corpus entry `{name}`")))?;
        selftest_system(&label, g, p, st, &mut rows)?;
        t.lap(&label);
    }
    let th = thomason_section(&cfg, None)?;
    row(&mut rows, "random diagrams", "thomason cross-check", th.entries.iter().all(|e| e.agree), format!("{} diagrams", th.entries.len()));
    t.lap("thomason");
    for x in &rows {
        r.require(format!("{}: {}", x.system, x.check), x.passed);
    }
    r.thomason = Some(th);
    r.selftest = Some(rows);
    r.timing_ms = t.0;
    Ok(r)
}

/// The human summary printed to standard output.
pub fn summary(r: &RunReport) -> String {
    let mut out = Vec::new();
    if let Some(s) = &r.system {
        out.push(format!("|G| = {} ({}), |S| = {}", s.group_order, s.fingerprint, s.sylow_order));
    }
    if let Some(s) = &r.structure {
        out.push(format!(
            "collection {}: {} subgroups in {} classes; centric classes {}, radical centric {}",
            s.collection.kind,
            s.collection.members,
            s.collection.classes.len(),
            s.centric_classes,
            s.radical_centric_classes
        ));
        out.push(format!(
            "L: {} objects, {} morphisms; sdC: {} classes",
            s.linking_objects,
            s.linking_morphisms,
            s.chain_poset.classes.len()
        ));
    }
    if let Some(d) = &r.decomposition {
        out.push(format!(
            "theorem {}: base {} classes, total {} objects; {}",
            d.theorem,
            d.base_objects,
            d.total_objects,
            d.homology.summary()
        ));
    }
    if let Some(d) = &r.dwyer {
        let kernels: Vec<usize> = d.classes.iter().map(|c| c.kernel).collect();
        out.push(format!("dwyer: kernels {kernels:?}, {}", if d.passed { "pass" } else { "FAIL" }));
    }
    if let Some(rows) = &r.selftest {
        for x in rows {
            out.push(format!("{} {:<14} {}", if x.passed { "pass" } else { "FAIL" }, x.system, x.check));
        }
    }
    if let Some(th) = &r.thomason {
        let agree = th.entries.iter().filter(|e| e.agree).count();
        out.push(format!("thomason: {agree}/{} diagrams agree", th.entries.len()));
    }
    if r.verdict.passed {
        out.push("verdict: pass".into());
    } else {
        out.push(format!("verdict: FAIL ({})", r.verdict.failures.join("; ")));
    }
    out.join("\n")
}

//! Replayable certificates of dominion membership.
//!
//! A certificate is an equality chain between expressions in the images of
//! fixed elements of `G` under two homomorphisms `f` and `g` (`h` in the
//! class-two argument). Replaying it means evaluating every step in every
//! family target for every pair of homomorphisms that agree on `H`. If the
//! chain holds throughout, its endpoints show `f(a) = g(a)` for the
//! certified element `a`.
//!
//! Only the images of the few designated elements matter, so the replay
//! groups homomorphisms by their restriction to `H` and checks each distinct
//! combination of projections once. This covers every agreeing pair.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::dominion::{scan_dominion, subgroup_generators, FamilyHoms, TestFamily};
use crate::error::{Error, Result};
use crate::fingroup::{ElementSet, FiniteGroup, HomStrategy};
use crate::nil2::{element_index, realize_finite, Nil2Element, Nil2Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    HalfNontrivial,
    FirstNontrivial,
    MetabelianChain,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::HalfNontrivial => "half_nontrivial",
            CertificateKind::FirstNontrivial => "first_nontrivial",
            CertificateKind::MetabelianChain => "metabelian_chain",
        }
    }
}

/// Image of a fixed element of `G` under one of the two maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    /// 0 for the first map, 1 for the second.
    pub side: usize,
    pub element: usize,
    /// How the element is written in terms of the designated elements.
    pub expr: String,
}

#[derive(Debug, Clone)]
enum Term {
    Slot(usize),
    Comm(Vec<Term>),
    Pow(Box<Term>, i64),
}

fn slot(i: usize) -> Term {
    Term::Slot(i)
}

fn comm(args: &[Term]) -> Term {
    Term::Comm(args.to_vec())
}

fn pow(t: Term, n: i64) -> Term {
    Term::Pow(Box::new(t), n)
}

impl Term {
    fn eval(&self, g: &FiniteGroup, values: &[usize]) -> usize {
        match self {
            Term::Slot(i) => values[*i],
            Term::Comm(args) => {
                let vals: Vec<usize> = args.iter().map(|a| a.eval(g, values)).collect();
                g.left_normed(&vals)
            }
            Term::Pow(t, n) => g.pow(t.eval(g, values), *n),
        }
    }

    fn render(&self, labels: &[String]) -> String {
        match self {
            Term::Slot(i) => labels[*i].clone(),
            Term::Comm(args) => {
                let parts: Vec<String> = args.iter().map(|a| a.render(labels)).collect();
                format!("[{}]", parts.join(", "))
            }
            Term::Pow(t, n) => match **t {
                Term::Pow(..) => format!("({})^{n}", t.render(labels)),
                _ => format!("{}^{n}", t.render(labels)),
            },
        }
    }
}

/// One link of the chain, already rendered.
#[derive(Debug, Clone)]
pub struct Step {
    pub lhs: String,
    pub rhs: String,
    pub justification: String,
    lhs_term: Term,
    rhs_term: Term,
}

impl Step {
    fn new(lhs: Term, rhs: Term, justification: &str, labels: &[String]) -> Self {
        Step {
            lhs: lhs.render(labels),
            rhs: rhs.render(labels),
            justification: justification.to_string(),
            lhs_term: lhs,
            rhs_term: rhs,
        }
    }
}

/// First broken equality, by target then pair in enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepFailure {
    /// 1-based step number.
    pub step: usize,
    pub target: usize,
    pub f_index: usize,
    pub g_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub targets: usize,
    /// Ordered agreeing pairs covered by the replay.
    pub pairs: u128,
    pub failure: Option<StepFailure>,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub group_order: usize,
    pub subgroup: ElementSet,
    /// `(symbol, element, element name)`.
    pub designated: Vec<(String, usize, String)>,
    pub exponent: Option<i64>,
    pub family: String,
    pub element: usize,
    pub element_name: String,
    pub side_names: [&'static str; 2],
    pub slots: Vec<Slot>,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.verdict.valid
    }

    /// The element shown to lie in the dominion.
    pub fn target_element(&self) -> usize {
        self.element
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "certificate: {}", self.kind.as_str()).unwrap();
        writeln!(out, "group order: {}", self.group_order).unwrap();
        writeln!(out, "subgroup order: {}", self.subgroup.len()).unwrap();
        let des: Vec<String> = self
            .designated
            .iter()
            .map(|(s, _, name)| format!("{s}={name}"))
            .collect();
        write!(out, "designated: {}", des.join(" ")).unwrap();
        if let Some(n) = self.exponent {
            write!(out, " n={n}").unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "element: {}", self.element_name).unwrap();
        writeln!(out, "relative to family: {}", self.family).unwrap();
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(out, "step {}: {} = {}  [{}]", k + 1, s.lhs, s.rhs, s.justification).unwrap();
        }
        writeln!(
            out,
            "verdict: {} (targets={}, pairs={})",
            if self.verdict.valid { "VALID" } else { "INVALID" },
            self.verdict.targets,
            self.verdict.pairs
        )
        .unwrap();
        if let Some(f) = self.verdict.failure {
            writeln!(
                out,
                "first failure: step {} in target #{} for homs {} and {}",
                f.step, f.target, f.f_index, f.g_index
            )
            .unwrap();
        }
        out
    }

    pub fn render_keyvalue(&self) -> String {
        let mut out = String::new();
        writeln!(out, "kind={}", self.kind.as_str()).unwrap();
        writeln!(out, "group_order={}", self.group_order).unwrap();
        writeln!(out, "subgroup_order={}", self.subgroup.len()).unwrap();
        for (s, a, _) in &self.designated {
            writeln!(out, "designated.{s}={a}").unwrap();
        }
        if let Some(n) = self.exponent {
            writeln!(out, "exponent={n}").unwrap();
        }
        writeln!(out, "element={}", self.element).unwrap();
        writeln!(out, "element_name={}", self.element_name).unwrap();
        writeln!(out, "relative_to={}", self.family).unwrap();
        writeln!(out, "steps={}", self.steps.len()).unwrap();
        writeln!(out, "valid={}", self.verdict.valid).unwrap();
        writeln!(out, "targets={}", self.verdict.targets).unwrap();
        writeln!(out, "pairs={}", self.verdict.pairs).unwrap();
        if let Some(f) = self.verdict.failure {
            writeln!(out, "failure.step={}", f.step).unwrap();
            writeln!(out, "failure.target={}", f.target).unwrap();
            writeln!(out, "failure.f={}", f.f_index).unwrap();
            writeln!(out, "failure.g={}", f.g_index).unwrap();
        }
        out
    }
}

struct Chain {
    slots: Vec<Slot>,
    steps: Vec<Step>,
}

impl Chain {
    fn new(slots: Vec<Slot>, side_names: [&'static str; 2], steps: Vec<(Term, Term, &str)>) -> Self {
        let labels: Vec<String> = slots
            .iter()
            .map(|s| format!("{}({})", side_names[s.side], s.expr))
            .collect();
        let steps = steps
            .into_iter()
            .map(|(l, r, j)| Step::new(l, r, j, &labels))
            .collect();
        Chain { slots, steps }
    }
}

/// Restriction classes of the family homomorphisms for one subgroup.
struct ClassIndex {
    /// Per target: class of each homomorphism, and class sizes.
    per_target: Vec<(Vec<u32>, Vec<u128>)>,
}

/// Per target, per class: distinct image tuples with the first hom index
/// attaining each.
type Projections = Vec<Vec<Vec<(Vec<usize>, usize)>>>;

type ProjectionCache = HashMap<(ElementSet, Vec<usize>), Arc<Projections>>;

/// Replays chains against prepared homomorphisms, caching restriction
/// classes per subgroup and image projections per element tuple.
pub struct Replayer<'g> {
    homs: FamilyHoms<'g>,
    classes: Mutex<HashMap<ElementSet, Arc<ClassIndex>>>,
    projections: Mutex<ProjectionCache>,
}

impl<'g> Replayer<'g> {
    pub fn new(homs: FamilyHoms<'g>) -> Self {
        Replayer {
            homs,
            classes: Mutex::new(HashMap::new()),
            projections: Mutex::new(HashMap::new()),
        }
    }

    pub fn homs(&self) -> &FamilyHoms<'g> {
        &self.homs
    }

    fn class_index(&self, h: &ElementSet) -> Arc<ClassIndex> {
        if let Some(c) = self.classes.lock().expect("poisoned").get(h) {
            return Arc::clone(c);
        }
        let key_elems = subgroup_generators(self.homs().source(), h);
        let per_target = (0..self.homs().family().len())
            .map(|t| {
                let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
                let mut of_hom = Vec::with_capacity(self.homs.count(t));
                let mut sizes: Vec<u128> = Vec::new();
                self.homs.for_each(t, |_, images| {
                    let key: Vec<usize> = key_elems.iter().map(|&a| images[a]).collect();
                    let next = sizes.len() as u32;
                    let c = *index.entry(key).or_insert(next);
                    if c == next {
                        sizes.push(0);
                    }
                    sizes[c as usize] += 1;
                    of_hom.push(c);
                });
                (of_hom, sizes)
            })
            .collect();
        let idx = Arc::new(ClassIndex { per_target });
        self.classes
            .lock()
            .expect("poisoned")
            .insert(h.clone(), Arc::clone(&idx));
        idx
    }

    fn projections(&self, h: &ElementSet, classes: &ClassIndex, elems: &[usize]) -> Arc<Projections> {
        let key = (h.clone(), elems.to_vec());
        if let Some(p) = self.projections.lock().expect("poisoned").get(&key) {
            return Arc::clone(p);
        }
        let proj: Projections = (0..self.homs().family().len())
            .map(|t| {
                let (of_hom, sizes) = &classes.per_target[t];
                let mut lists: Vec<Vec<(Vec<usize>, usize)>> = vec![Vec::new(); sizes.len()];
                let mut seen: HashSet<(u32, Vec<usize>)> = HashSet::new();
                self.homs.for_each(t, |i, images| {
                    let c = of_hom[i];
                    let tuple: Vec<usize> = elems.iter().map(|&a| images[a]).collect();
                    if seen.insert((c, tuple.clone())) {
                        lists[c as usize].push((tuple, i));
                    }
                });
                lists
            })
            .collect();
        let proj = Arc::new(proj);
        self.projections
            .lock()
            .expect("poisoned")
            .insert(key, Arc::clone(&proj));
        proj
    }

    /// Checks every step for every pair agreeing on `h` in every target.
    pub fn replay(&self, h: &ElementSet, slots: &[Slot], steps: &[Step]) -> Verdict {
        let sides: [Vec<usize>; 2] = [0, 1].map(|s| (0..slots.len()).filter(|&i| slots[i].side == s).collect());
        let classes = self.class_index(h);
        let projs: [Arc<Projections>; 2] = [0, 1].map(|s| {
            let elems: Vec<usize> = sides[s].iter().map(|&k| slots[k].element).collect();
            self.projections(h, &classes, &elems)
        });
        let pairs: u128 = classes
            .per_target
            .iter()
            .map(|(_, sizes)| sizes.iter().map(|s| s * s).sum::<u128>())
            .sum();
        let mut failure = None;
        let mut values = vec![0usize; slots.len()];
        for (t, target) in self.homs().family().targets().iter().enumerate() {
            let mut best: Option<StepFailure> = None;
            for (fl, gl) in projs[0][t].iter().zip(&projs[1][t]) {
                for (fp, fi) in fl {
                    for (gp, gi) in gl {
                        if best.is_some_and(|b| (b.f_index, b.g_index) < (*fi, *gi)) {
                            continue;
                        }
                        for (k, &slot_idx) in sides[0].iter().enumerate() {
                            values[slot_idx] = fp[k];
                        }
                        for (k, &slot_idx) in sides[1].iter().enumerate() {
                            values[slot_idx] = gp[k];
                        }
                        let broken = steps
                            .iter()
                            .position(|s| s.lhs_term.eval(target, &values) != s.rhs_term.eval(target, &values));
                        if let Some(k) = broken {
                            best = Some(StepFailure {
                                step: k + 1,
                                target: t,
                                f_index: *fi,
                                g_index: *gi,
                            });
                        }
                    }
                }
            }
            if best.is_some() {
                failure = best;
                break;
            }
        }
        Verdict {
            valid: failure.is_none(),
            targets: self.homs().family().len(),
            pairs,
            failure,
        }
    }
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

fn check_element(g: &FiniteGroup, a: usize) -> Result<()> {
    if a >= g.order() {
        return Err(Error::ElementOutOfRange(a));
    }
    Ok(())
}

/// Builds and replays the class-two power argument with prepared
/// homomorphisms.
pub fn half_nontrivial_with(
    replayer: &Replayer<'_>,
    h: &ElementSet,
    v: usize,
    w: usize,
    n: i64,
) -> Result<Certificate> {
    let homs = replayer.homs();
    let g = homs.source();
    check_element(g, v)?;
    check_element(g, w)?;
    g.require_subgroup(h)?;
    let vn = g.pow(v, n);
    let wn = g.pow(w, n);
    if !h.contains(vn) {
        return Err(precondition(format!("v^{n} = {} is not in H", g.name(vn))));
    }
    if !h.contains(wn) {
        return Err(precondition(format!("w^{n} = {} is not in H", g.name(wn))));
    }
    let vw = g.commutator(v, w);
    if g.commutator(vw, v) != 0 {
        return Err(precondition(format!(
            "[[v,w],v] = {} is not the identity",
            g.name(g.commutator(vw, v))
        )));
    }
    if g.commutator(vw, w) != 0 {
        return Err(precondition(format!(
            "[[v,w],w] = {} is not the identity",
            g.name(g.commutator(vw, w))
        )));
    }
    let target = g.pow(vw, n);
    let mk = |side: usize, element: usize, expr: String| Slot { side, element, expr };
    let slots = vec![
        mk(0, target, format!("[v,w]^{n}")),
        mk(0, g.commutator(vn, w), format!("[v^{n},w]")),
        mk(0, vn, format!("v^{n}")),
        mk(0, w, "w".into()),
        mk(1, vn, format!("v^{n}")),
        mk(1, v, "v".into()),
        mk(1, target, format!("[v,w]^{n}")),
        mk(1, g.commutator(v, wn), format!("[v,w^{n}]")),
        mk(1, wn, format!("w^{n}")),
        mk(0, wn, format!("w^{n}")),
    ];
    let s = slot;
    let steps = vec![
        (s(0), s(1), "power identity in G"),
        (s(1), comm(&[s(2), s(3)]), "f is a homomorphism"),
        (comm(&[s(2), s(3)]), comm(&[s(4), s(3)]), "v^n lies in H"),
        (comm(&[s(4), s(3)]), comm(&[pow(s(5), n), s(3)]), "h is a homomorphism"),
        (comm(&[pow(s(5), n), s(3)]), pow(comm(&[s(5), s(3)]), n), "power identity in the target"),
        (pow(comm(&[s(5), s(3)]), n), comm(&[s(5), pow(s(3), n)]), "power identity in the target"),
        (comm(&[s(5), pow(s(3), n)]), comm(&[s(5), s(9)]), "f is a homomorphism"),
        (comm(&[s(5), s(9)]), comm(&[s(5), s(8)]), "w^n lies in H"),
        (comm(&[s(5), s(8)]), s(7), "h is a homomorphism"),
        (s(7), s(6), "power identity in G"),
    ];
    let side_names = ["f", "h"];
    let chain = Chain::new(slots, side_names, steps);
    let verdict = replayer.replay(h, &chain.slots, &chain.steps);
    Ok(Certificate {
        kind: CertificateKind::HalfNontrivial,
        group_order: g.order(),
        subgroup: h.clone(),
        designated: vec![("v".into(), v, g.name(v)), ("w".into(), w, g.name(w))],
        exponent: Some(n),
        family: homs.family().describe(),
        element: target,
        element_name: g.name(target),
        side_names,
        slots: chain.slots,
        steps: chain.steps,
        verdict,
    })
}

/// Certificate that `[v,w]^n` lies in the dominion of `H` relative to the
/// family. Requires `v^n, w^n` in `H` and `[[v,w],v] = [[v,w],w] = e`.
pub fn certify_half_nontrivial(
    g: &FiniteGroup,
    h: &ElementSet,
    v: usize,
    w: usize,
    n: i64,
    family: &TestFamily,
) -> Result<Certificate> {
    let replayer = Replayer::new(FamilyHoms::new(g, family, HomStrategy::Auto)?);
    half_nontrivial_with(&replayer, h, v, w, n)
}

/// Outcome of the class-two nontrivial-dominion pipeline.
#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub params: Nil2Params,
    pub prime: u64,
    pub group_order: usize,
    pub subgroup: ElementSet,
    /// `(a0/p)(b0/p)(k0/p^2)`.
    pub expected_subgroup_order: usize,
    pub element: usize,
    pub element_name: String,
    pub in_subgroup: bool,
    pub certificate: Certificate,
    pub in_overapprox: bool,
    pub dominion_order: usize,
}

impl InstanceReport {
    pub fn nontrivial(&self) -> bool {
        !self.in_subgroup && self.certificate.is_valid() && self.in_overapprox
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "params: {}", self.params).unwrap();
        writeln!(out, "prime: {}", self.prime).unwrap();
        writeln!(out, "group order: {}", self.group_order).unwrap();
        writeln!(
            out,
            "subgroup order: {} (expected {})",
            self.subgroup.len(),
            self.expected_subgroup_order
        )
        .unwrap();
        writeln!(out, "element: {}", self.element_name).unwrap();
        writeln!(out, "in subgroup: {}", self.in_subgroup).unwrap();
        writeln!(out, "in dominion relative to family: {}", self.in_overapprox).unwrap();
        writeln!(out, "dominion order relative to family: {}", self.dominion_order).unwrap();
        writeln!(out, "nontrivial: {}", self.nontrivial()).unwrap();
        out.push_str(&self.certificate.render_text());
        out
    }

    pub fn render_keyvalue(&self) -> String {
        let mut out = String::new();
        writeln!(out, "params={}", self.params).unwrap();
        writeln!(out, "prime={}", self.prime).unwrap();
        writeln!(out, "group_order={}", self.group_order).unwrap();
        writeln!(out, "subgroup_order={}", self.subgroup.len()).unwrap();
        writeln!(out, "expected_subgroup_order={}", self.expected_subgroup_order).unwrap();
        writeln!(out, "element={}", self.element_name).unwrap();
        writeln!(out, "in_subgroup={}", self.in_subgroup).unwrap();
        writeln!(out, "in_overapprox={}", self.in_overapprox).unwrap();
        writeln!(out, "dominion_order={}", self.dominion_order).unwrap();
        writeln!(out, "nontrivial={}", self.nontrivial()).unwrap();
        for line in self.certificate.render_keyvalue().lines() {
            writeln!(out, "certificate.{line}").unwrap();
        }
        out
    }
}

/// How the target family is formed from the constructed group.
pub enum InstanceFamily<'a> {
    /// The group and all of its quotients, with the given order cap.
    QuotientClosed(usize),
    Custom(&'a dyn Fn(&Arc<FiniteGroup>) -> Result<TestFamily>),
}

/// Realizes `K(a0,b0,k0)`, takes `H = <x^p, y^p>`, and shows `[x,y]^p` is
/// outside `H` but certified inside its dominion.
pub fn build_first_nontrivial(params: &Nil2Params, p: u64, family: InstanceFamily<'_>) -> Result<InstanceReport> {
    if params.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: params.rank(),
        });
    }
    if !crate::nil2::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (a0, b0, k0) = (params.gen_moduli()[0], params.gen_moduli()[1], params.comm_moduli()[0]);
    if k0 % (p * p) != 0 {
        return Err(precondition(format!("{} does not divide k0 = {k0}", p * p)));
    }
    let g = Arc::new(realize_finite(params)?);
    let fam = match family {
        InstanceFamily::QuotientClosed(cap) => TestFamily::quotient_closed(Arc::clone(&g), "K", cap)?,
        InstanceFamily::Custom(f) => f(&g)?,
    };
    let x = element_index(&Nil2Element::generator(params, 0))?;
    let y = element_index(&Nil2Element::generator(params, 1))?;
    let pi = p as i64;
    let h = g.generated_subgroup(&[g.pow(x, pi), g.pow(y, pi)]);
    let c = Nil2Element::basic_commutator(params, 0, 1).pow(pi);
    let element = element_index(&c)?;
    let in_subgroup = c.member_subgroup_p(p)?;
    if in_subgroup != h.contains(element) {
        return Err(Error::Disagreement(
            "membership test and generated subgroup disagree on [x,y]^p".into(),
        ));
    }
    let replayer = Replayer::new(FamilyHoms::new(&g, &fam, HomStrategy::Auto)?);
    let mut certificate = half_nontrivial_with(&replayer, &h, x, y, pi)?;
    certificate.kind = CertificateKind::FirstNontrivial;
    let dom = scan_dominion(replayer.homs(), &h)?.dominion;
    let in_overapprox = dom.contains(element);
    if certificate.is_valid() && !in_overapprox {
        return Err(Error::Disagreement(format!(
            "certified element {} is excluded by a witness",
            g.name(element)
        )));
    }
    let expected_subgroup_order = if a0 % p == 0 && b0 % p == 0 {
        ((a0 / p) * (b0 / p) * (k0 / (p * p))) as usize
    } else {
        h.len()
    };
    Ok(InstanceReport {
        params: params.clone(),
        prime: p,
        group_order: g.order(),
        subgroup: h,
        expected_subgroup_order,
        element,
        element_name: g.name(element),
        in_subgroup,
        certificate,
        in_overapprox,
        dominion_order: dom.len(),
    })
}

/// Counts from an exhaustive scan of the three-term exchange property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma31Report {
    pub triples: u64,
    pub hypotheses_hold: u64,
    pub violations: u64,
    /// First violating `(v, w, z)` in lexicographic order.
    pub first_violation: Option<(usize, usize, usize)>,
}

impl Lemma31Report {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "triples: {}\nhypotheses hold: {}\nviolations: {}\n",
            self.triples, self.hypotheses_hold, self.violations
        );
        if let Some((v, w, z)) = self.first_violation {
            writeln!(out, "first violation: v={v} w={w} z={z}").unwrap();
        }
        out
    }

    pub fn render_keyvalue(&self) -> String {
        let mut out = format!(
            "triples={}\nhypotheses_hold={}\nviolations={}\n",
            self.triples, self.hypotheses_hold, self.violations
        );
        if let Some((v, w, z)) = self.first_violation {
            writeln!(out, "first_violation={v},{w},{z}").unwrap();
        }
        out
    }
}

/// Whether `[v,[w^-1,z^-1]] = [[v,w],[v,z]] = e`.
pub fn exchange_hypotheses(g: &FiniteGroup, v: usize, w: usize, z: usize) -> bool {
    g.commutator(v, g.commutator(g.inv(w), g.inv(z))) == 0 && g.commutator(g.commutator(v, w), g.commutator(v, z)) == 0
}

type Triple = (usize, usize, usize);

/// Over all ordered triples where both hypotheses hold, checks
/// `[v,w,z] = [v,z,w]`.
pub fn verify_lemma31_scan(g: &FiniteGroup) -> Lemma31Report {
    let n = g.order();
    let per_v: Vec<(u64, u64, Option<Triple>)> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut hyp = 0;
            let mut bad = 0;
            let mut first = None;
            for w in 0..n {
                let vw = g.commutator(v, w);
                for z in 0..n {
                    if !exchange_hypotheses(g, v, w, z) {
                        continue;
                    }
                    hyp += 1;
                    let vz = g.commutator(v, z);
                    if g.commutator(vw, z) != g.commutator(vz, w) {
                        bad += 1;
                        first.get_or_insert((v, w, z));
                    }
                }
            }
            (hyp, bad, first)
        })
        .collect();
    Lemma31Report {
        triples: (n as u64).pow(3),
        hypotheses_hold: per_v.iter().map(|r| r.0).sum(),
        violations: per_v.iter().map(|r| r.1).sum(),
        first_violation: per_v.iter().find_map(|r| r.2),
    }
}

/// Prepared homomorphisms and derived series for repeated metabelian
/// certificates over one group and family.
pub struct MetabelianCertifier<'a> {
    replayer: Replayer<'a>,
    d: usize,
    upper: ElementSet,
    lower: ElementSet,
}

impl<'a> MetabelianCertifier<'a> {
    /// Checks that `G` has solvability length at most `d`.
    pub fn new(g: &'a FiniteGroup, family: &'a TestFamily, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(precondition(format!("d must be at least 2, got {d}")));
        }
        let series = g.derived_series();
        match series.solvable_length {
            Some(len) if len <= d => {}
            Some(len) => {
                return Err(precondition(format!("solvability length {len} exceeds d = {d}")));
            }
            None => return Err(precondition("group is not solvable".into())),
        }
        Ok(MetabelianCertifier {
            replayer: Replayer::new(FamilyHoms::new(g, family, HomStrategy::Auto)?),
            d,
            upper: series.term(d - 2).clone(),
            lower: series.term(d - 1).clone(),
        })
    }

    /// Elements allowed for `x` (the `(d-1)`-th derived term).
    pub fn x_layer(&self) -> &ElementSet {
        &self.lower
    }

    /// Elements allowed for `y` and `z` (the `(d-2)`-th derived term).
    pub fn yz_layer(&self) -> &ElementSet {
        &self.upper
    }

    pub fn homs(&self) -> &FamilyHoms<'a> {
        self.replayer.homs()
    }

    /// Whether `(x, y, z)` meets every precondition with `H` given.
    pub fn admissible(&self, h: &ElementSet, x: usize, y: usize, z: usize) -> bool {
        self.check(h, x, y, z).is_ok()
    }

    fn check(&self, h: &ElementSet, x: usize, y: usize, z: usize) -> Result<()> {
        let g = self.homs().source();
        for a in [x, y, z] {
            check_element(g, a)?;
        }
        g.require_subgroup(h)?;
        let d = self.d;
        if !self.lower.contains(x) {
            return Err(precondition(format!("x = {} is not in derived term {}", g.name(x), d - 1)));
        }
        for (sym, a) in [("y", y), ("z", z)] {
            if !self.upper.contains(a) {
                return Err(precondition(format!("{sym} = {} is not in derived term {}", g.name(a), d - 2)));
            }
        }
        for (what, a) in [("x", x), ("[x,y]", g.commutator(x, y)), ("[x,z]", g.commutator(x, z))] {
            if !h.contains(a) {
                return Err(precondition(format!("{what} = {} is not in H", g.name(a))));
            }
        }
        if !exchange_hypotheses(g, x, y, z) {
            return Err(precondition("exchange hypotheses fail for (x, y, z)".into()));
        }
        if !exchange_hypotheses(g, x, z, y) {
            return Err(precondition("exchange hypotheses fail for (x, z, y)".into()));
        }
        Ok(())
    }

    pub fn certify(&self, h: &ElementSet, x: usize, y: usize, z: usize) -> Result<Certificate> {
        self.check(h, x, y, z)?;
        let g = self.homs().source();
        let xy = g.commutator(x, y);
        let xz = g.commutator(x, z);
        let xyz = g.commutator(xy, z);
        let xzy = g.commutator(xz, y);
        let mk = |side: usize, element: usize, expr: &str| Slot {
            side,
            element,
            expr: expr.to_string(),
        };
        let slots = vec![
            mk(0, xyz, "[x,y,z]"),
            mk(0, xy, "[x,y]"),
            mk(0, z, "z"),
            mk(1, xy, "[x,y]"),
            mk(1, x, "x"),
            mk(1, y, "y"),
            mk(0, x, "x"),
            mk(0, xz, "[x,z]"),
            mk(1, xz, "[x,z]"),
            mk(1, xzy, "[x,z,y]"),
            mk(1, xyz, "[x,y,z]"),
        ];
        let s = slot;
        let steps = vec![
            (s(0), comm(&[s(1), s(2)]), "f is a homomorphism"),
            (comm(&[s(1), s(2)]), comm(&[s(3), s(2)]), "[x,y] lies in H"),
            (comm(&[s(3), s(2)]), comm(&[s(4), s(5), s(2)]), "g is a homomorphism"),
            (
                comm(&[s(4), s(5), s(2)]),
                comm(&[s(6), s(2), s(5)]),
                "x lies in H, then exchange in the target",
            ),
            (comm(&[s(6), s(2), s(5)]), comm(&[s(7), s(5)]), "f is a homomorphism"),
            (comm(&[s(7), s(5)]), comm(&[s(8), s(5)]), "[x,z] lies in H"),
            (comm(&[s(8), s(5)]), s(9), "g is a homomorphism"),
            (s(9), s(10), "exchange in G"),
        ];
        let side_names = ["f", "g"];
        let chain = Chain::new(slots, side_names, steps);
        let verdict = self.replayer.replay(h, &chain.slots, &chain.steps);
        Ok(Certificate {
            kind: CertificateKind::MetabelianChain,
            group_order: g.order(),
            subgroup: h.clone(),
            designated: vec![
                ("x".into(), x, g.name(x)),
                ("y".into(), y, g.name(y)),
                ("z".into(), z, g.name(z)),
            ],
            exponent: None,
            family: self.homs().family().describe(),
            element: xyz,
            element_name: g.name(xyz),
            side_names,
            slots: chain.slots,
            steps: chain.steps,
            verdict,
        })
    }
}

/// Certificate that `[x,y,z]` lies in the dominion of `H` for a group of
/// solvability length at most `d`.
pub fn certify_metabelian(
    g: &FiniteGroup,
    h: &ElementSet,
    x: usize,
    y: usize,
    z: usize,
    family: &TestFamily,
    d: usize,
) -> Result<Certificate> {
    MetabelianCertifier::new(g, family, d)?.certify(h, x, y, z)
}

/// Fails when a valid certificate names an element outside the computed
/// over-approximation.
pub fn cross_check(cert: &Certificate, dominion: &ElementSet) -> Result<()> {
    if cert.is_valid() && !dominion.contains(cert.element) {
        return Err(Error::Disagreement(format!(
            "certified element {} is excluded by a witness",
            cert.element_name
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominion::{dominion_overapprox, DEFAULT_MAX_ORDER};

    fn k444() -> (Arc<FiniteGroup>, TestFamily) {
        let g = Arc::new(realize_finite(&Nil2Params::k(4, 4, 4).unwrap()).unwrap());
        let fam = TestFamily::quotient_closed(Arc::clone(&g), "K", DEFAULT_MAX_ORDER).unwrap();
        (g, fam)
    }

    #[test]
    fn half_nontrivial_on_k444() {
        let (g, fam) = k444();
        let x = g.generators().unwrap()[0];
        let y = g.generators().unwrap()[1];
        let h = g.generated_subgroup(&[g.pow(x, 2), g.pow(y, 2)]);
        let cert = certify_half_nontrivial(&g, &h, x, y, 2, &fam).unwrap();
        assert!(cert.is_valid(), "{}", cert.render_text());
        assert_eq!(cert.element_name, "(0,0,2)");
        assert_eq!(cert.steps.len(), 10);
        let neg = certify_half_nontrivial(&g, &h, x, y, -2, &fam).unwrap();
        assert!(neg.is_valid());
        assert_eq!(neg.element, g.inv(cert.element));
        let dom = dominion_overapprox(&g, &h, &fam).unwrap();
        cross_check(&cert, &dom).unwrap();
        let text = cert.render_text();
        assert!(text.contains("step 3: [f(v^2), f(w)] = [h(v^2), f(w)]  [v^n lies in H]"));
        assert!(text.contains("verdict: VALID (targets="));
    }

    #[test]
    fn broken_chain_reports_first_failure() {
        let (g, fam) = k444();
        let x = g.generators().unwrap()[0];
        let y = g.generators().unwrap()[1];
        let h = g.generated_subgroup(&[g.pow(x, 2), g.pow(y, 2)]);
        let replayer = Replayer::new(FamilyHoms::new(&g, &fam, HomStrategy::Auto).unwrap());
        let slots = vec![
            Slot { side: 0, element: x, expr: "x".into() },
            Slot { side: 1, element: x, expr: "x".into() },
        ];
        let chain = Chain::new(slots, ["f", "g"], vec![(slot(0), slot(1), "bogus")]);
        let v = replayer.replay(&h, &chain.slots, &chain.steps);
        assert!(!v.valid);
        let f = v.failure.unwrap();
        assert_eq!(f.step, 1);
        assert_eq!(f.target, 0);
        assert!(f.f_index < f.g_index);
    }

    #[test]
    fn first_nontrivial_rejects_bad_prime() {
        let p = Nil2Params::k(2, 2, 2).unwrap();
        let e = build_first_nontrivial(&p, 2, InstanceFamily::QuotientClosed(DEFAULT_MAX_ORDER)).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
        let e = build_first_nontrivial(&p, 4, InstanceFamily::QuotientClosed(DEFAULT_MAX_ORDER)).unwrap_err();
        assert!(matches!(e, Error::NotPrime(4)));
    }

    #[test]
    fn lemma31_abelian_and_heisenberg() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let r = verify_lemma31_scan(&c6);
        assert_eq!(r.hypotheses_hold, 216);
        assert_eq!(r.violations, 0);
        let h3 = crate::nil2::heisenberg_oracle(3).unwrap();
        let r = verify_lemma31_scan(&h3);
        assert_eq!(r.triples, 19683);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn metabelian_identity_and_length_check() {
        let (g, fam) = k444();
        let cert = certify_metabelian(&g, &g.trivial_subgroup(), 0, 1, 2, &fam, 2).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.element, 0);
        assert_eq!(cert.steps.len(), 8);
    }
}

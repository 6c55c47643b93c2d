//! Equalizers and dominions relative to a finite family of target groups.
//!
//! The dominion of `H <= G` is the set of `a` such that every pair of
//! homomorphisms out of `G` that agree on `H` also agrees on `a`. Here the
//! targets range over an explicit [`TestFamily`] only, so the computed set
//! is an over-approximation: fewer targets mean fewer constraints.
//!
//! Pairs agreeing on `H` are exactly pairs inside one *restriction class*
//! (homomorphisms with the same images on a generating set of `H`). An
//! element survives iff every class is constant on it, which lets the scan
//! compare each homomorphism against its class representative instead of
//! walking all pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::certify::Certificate;
use crate::error::{Error, ParseError, Result};
use crate::fingroup::{read_cayley, ElementSet, FiniteGroup, HomEnumerator, HomStrategy, Homomorphism};

/// Default bound on member order when closing a family under quotients.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// Where a family member came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Explicit(String),
    /// `member / N` with `|N| = kernel_order`.
    QuotientOf { member: usize, kernel_order: usize },
    ProductOf(usize, usize),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Explicit(label) => write!(f, "explicit {label}"),
            Provenance::QuotientOf { member, kernel_order } => {
                write!(f, "quotient of #{member} by a normal subgroup of order {kernel_order}")
            }
            Provenance::ProductOf(a, b) => write!(f, "product of #{a} and #{b}"),
        }
    }
}

/// Finite stand-in for "all groups of the variety".
#[derive(Debug, Clone)]
pub struct TestFamily {
    targets: Vec<Arc<FiniteGroup>>,
    provenance: Vec<Provenance>,
    closed_under_quotients: bool,
}

impl TestFamily {
    pub fn new(targets: Vec<(Arc<FiniteGroup>, Provenance)>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::Precondition("a test family needs at least one target".into()));
        }
        let (targets, provenance) = targets.into_iter().unzip();
        Ok(TestFamily {
            targets,
            provenance,
            closed_under_quotients: false,
        })
    }

    pub fn single(g: Arc<FiniteGroup>, label: &str) -> Self {
        TestFamily {
            targets: vec![g],
            provenance: vec![Provenance::Explicit(label.to_string())],
            closed_under_quotients: false,
        }
    }

    /// `g` followed by `g/N` for every nontrivial normal subgroup `N`.
    pub fn quotient_closed(g: Arc<FiniteGroup>, label: &str, max_order: usize) -> Result<Self> {
        let mut fam = TestFamily::single(g, label);
        fam.close_under_quotients(max_order)?;
        Ok(fam)
    }

    /// Adds every proper quotient of every current member. Members are
    /// scanned for normal subgroups only up to `max_order`.
    pub fn close_under_quotients(&mut self, max_order: usize) -> Result<()> {
        let members = self.targets.len();
        for m in 0..members {
            let g = Arc::clone(&self.targets[m]);
            if g.order() > max_order {
                return Err(Error::Refused(format!(
                    "member #{m} has order {} above the quotient cap {max_order}",
                    g.order()
                )));
            }
            for n in g.normal_subgroups().into_iter().skip(1) {
                let (q, _) = g.quotient(&n)?;
                self.targets.push(Arc::new(q));
                self.provenance.push(Provenance::QuotientOf {
                    member: m,
                    kernel_order: n.len(),
                });
            }
        }
        self.closed_under_quotients = true;
        Ok(())
    }

    pub fn push_product(&mut self, a: usize, b: usize) {
        let p = self.targets[a].direct_product(&self.targets[b]);
        self.targets.push(Arc::new(p));
        self.provenance.push(Provenance::ProductOf(a, b));
    }

    pub fn targets(&self) -> &[Arc<FiniteGroup>] {
        &self.targets
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn closed_under_quotients(&self) -> bool {
        self.closed_under_quotients
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// One-line summary used in reports.
    pub fn describe(&self) -> String {
        let orders: Vec<String> = self.targets.iter().map(|t| t.order().to_string()).collect();
        format!(
            "{} targets (orders {}){}",
            self.targets.len(),
            orders.join(","),
            if self.closed_under_quotients {
                ", closed under quotients"
            } else {
                ""
            }
        )
    }
}

/// Parsed family file, instantiated against the group under study.
///
/// Lines: `group <path>` (relative to the file), `group self` for the group
/// under study, optional `close-under-quotients` and `max-order N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub members: Vec<FamilyMember>,
    pub close_under_quotients: bool,
    pub max_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyMember {
    SelfGroup,
    File(PathBuf),
}

impl FamilySpec {
    /// The group under study together with all of its quotients.
    pub fn quotient_closed_self(max_order: usize) -> Self {
        FamilySpec {
            members: vec![FamilyMember::SelfGroup],
            close_under_quotients: true,
            max_order,
        }
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut members = Vec::new();
        let mut close = false;
        let mut max_order = DEFAULT_MAX_ORDER;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let col = raw.len() - raw.trim_start().len() + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |column: usize, message: String| {
                Error::Parse(ParseError {
                    line: i + 1,
                    column,
                    message,
                })
            };
            if let Some(rest) = line.strip_prefix("group ") {
                let rel = rest.trim();
                members.push(if rel == "self" {
                    FamilyMember::SelfGroup
                } else {
                    FamilyMember::File(base.join(rel))
                });
            } else if line == "close-under-quotients" {
                close = true;
            } else if let Some(rest) = line.strip_prefix("max-order ") {
                max_order = rest
                    .trim()
                    .parse()
                    .map_err(|_| perr(col + 10, format!("expected an integer, found {:?}", rest.trim())))?;
            } else {
                return Err(perr(col, format!("unknown family directive {line:?}")));
            }
        }
        if members.is_empty() {
            return Err(Error::Parse(ParseError {
                line: text.lines().count().max(1),
                column: 1,
                message: "family lists no groups".into(),
            }));
        }
        Ok(FamilySpec {
            members,
            close_under_quotients: close,
            max_order,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        FamilySpec::parse(&text, base).map_err(|e| match e {
            Error::Parse(source) => Error::File {
                path: path.display().to_string(),
                source,
            },
            other => other,
        })
    }

    /// Loads the listed groups; `group self` requires `subject`.
    pub fn build(&self, subject: Option<&Arc<FiniteGroup>>) -> Result<TestFamily> {
        let mut targets = Vec::new();
        for m in &self.members {
            match m {
                FamilyMember::SelfGroup => {
                    let g = subject.ok_or_else(|| {
                        Error::Precondition("family refers to `self` but no group is under study".into())
                    })?;
                    targets.push((Arc::clone(g), Provenance::Explicit("self".into())));
                }
                FamilyMember::File(path) => {
                    let g = read_cayley(path)?;
                    targets.push((Arc::new(g), Provenance::Explicit(path.display().to_string())));
                }
            }
        }
        let mut fam = TestFamily::new(targets)?;
        if self.close_under_quotients {
            fam.close_under_quotients(self.max_order)?;
        }
        Ok(fam)
    }
}

/// Homomorphisms from one source into every family member. Small hom sets
/// are kept in memory; large ones are re-enumerated on each pass.
pub struct FamilyHoms<'a> {
    source: &'a FiniteGroup,
    family: &'a TestFamily,
    strategy: HomStrategy,
    stored: Vec<Option<Vec<u32>>>,
    counts: Vec<usize>,
}

/// Upper bound on stored image entries across the family.
const STORE_BUDGET: usize = 1 << 24;

impl<'a> FamilyHoms<'a> {
    pub fn new(source: &'a FiniteGroup, family: &'a TestFamily, strategy: HomStrategy) -> Result<Self> {
        let n = source.order();
        let mut stored = Vec::with_capacity(family.len());
        let mut counts = Vec::with_capacity(family.len());
        let mut used = 0usize;
        for t in family.targets() {
            let e = HomEnumerator::new(source, t, strategy)?;
            let mut buf: Option<Vec<u32>> = Some(Vec::new());
            let mut count = 0usize;
            e.for_each(|images| {
                count += 1;
                if let Some(b) = buf.as_mut() {
                    if used + b.len() + n > STORE_BUDGET {
                        buf = None;
                    } else {
                        b.extend(images.iter().map(|&v| v as u32));
                    }
                }
                ControlFlow::Continue(())
            });
            if let Some(b) = &buf {
                used += b.len();
            }
            stored.push(buf);
            counts.push(count);
        }
        Ok(FamilyHoms {
            source,
            family,
            strategy,
            stored,
            counts,
        })
    }

    pub fn source(&self) -> &FiniteGroup {
        self.source
    }

    pub fn family(&self) -> &TestFamily {
        self.family
    }

    /// Number of homomorphisms into target `t`.
    pub fn count(&self, t: usize) -> usize {
        self.counts[t]
    }

    /// Visits `(hom index, images)` for every homomorphism into target `t`
    /// in enumeration order.
    pub fn for_each<F>(&self, t: usize, mut visit: F)
    where
        F: FnMut(usize, &[usize]),
    {
        let n = self.source.order();
        match &self.stored[t] {
            Some(flat) => {
                let mut buf = vec![0usize; n];
                for (i, chunk) in flat.chunks_exact(n.max(1)).enumerate() {
                    for (slot, &v) in buf.iter_mut().zip(chunk) {
                        *slot = v as usize;
                    }
                    visit(i, &buf);
                }
            }
            None => {
                let e = HomEnumerator::new(self.source, &self.family.targets()[t], self.strategy)
                    .expect("enumerator built once already");
                let mut i = 0;
                e.for_each(|images| {
                    visit(i, images);
                    i += 1;
                    ControlFlow::Continue(())
                });
            }
        }
    }

    /// The `idx`-th homomorphism into target `t`.
    pub fn hom(&self, t: usize, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each(t, |i, images| {
            if i == idx {
                out = images.to_vec();
            }
        });
        out
    }
}

/// Two homomorphisms into one target that agree on `H` but not on some
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub target: usize,
    pub f_index: usize,
    pub g_index: usize,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl Witness {
    pub fn homomorphisms(&self, source: &Arc<FiniteGroup>, family: &TestFamily) -> Result<(Homomorphism, Homomorphism)> {
        let t = Arc::clone(&family.targets()[self.target]);
        Ok((
            Homomorphism::new(Arc::clone(source), Arc::clone(&t), self.f.clone())?,
            Homomorphism::new(Arc::clone(source), t, self.g.clone())?,
        ))
    }
}

/// Outcome of one full scan over the family.
#[derive(Debug, Clone)]
pub struct DominionScan {
    pub dominion: ElementSet,
    /// Lexicographically first witness `(target, f, g)` for every excluded
    /// element.
    pub witnesses: BTreeMap<usize, Witness>,
    /// Number of ordered pairs `(f, g)` agreeing on `H`, over all targets.
    pub agreeing_pairs: u128,
}

/// Generating set for `H` drawn from its own elements in index order.
pub(crate) fn subgroup_generators(g: &FiniteGroup, h: &ElementSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for a in h.iter() {
        if !span.contains(a) {
            gens.push(a);
            span = g.generated_subgroup(&gens);
        }
    }
    gens
}

fn scan(homs: &FamilyHoms<'_>, h: &ElementSet, only: Option<usize>) -> Result<DominionScan> {
    let g = homs.source();
    g.require_subgroup(h)?;
    let n = g.order();
    let key_elems = subgroup_generators(g, h);
    let candidates: Vec<usize> = match only {
        Some(a) => vec![a],
        None => (0..n).collect(),
    };
    let mut alive: Vec<bool> = vec![true; n];
    let mut witnesses: BTreeMap<usize, Witness> = BTreeMap::new();
    let mut agreeing_pairs: u128 = 0;

    for t in 0..homs.family().len() {
        struct Class {
            rep_index: usize,
            rep: Vec<usize>,
            size: u128,
        }
        let mut classes: HashMap<Vec<usize>, Class> = HashMap::new();
        let mut best: HashMap<usize, Witness> = HashMap::new();
        homs.for_each(t, |i, images| {
            let key: Vec<usize> = key_elems.iter().map(|&a| images[a]).collect();
            let class = classes.entry(key).or_insert_with(|| Class {
                rep_index: i,
                rep: images.to_vec(),
                size: 0,
            });
            class.size += 1;
            if class.rep_index == i {
                return;
            }
            for &a in &candidates {
                if !alive[a] || images[a] == class.rep[a] {
                    continue;
                }
                let better = best
                    .get(&a)
                    .is_none_or(|w| (class.rep_index, i) < (w.f_index, w.g_index));
                if better {
                    best.insert(
                        a,
                        Witness {
                            target: t,
                            f_index: class.rep_index,
                            g_index: i,
                            f: class.rep.clone(),
                            g: images.to_vec(),
                        },
                    );
                }
            }
        });
        agreeing_pairs += classes.values().map(|c| c.size * c.size).sum::<u128>();
        for (a, w) in best {
            alive[a] = false;
            witnesses.insert(a, w);
        }
    }
    let dominion = match only {
        Some(_) => (0..n).filter(|&a| alive[a]).collect(),
        None => ElementSet::from_mask(&alive),
    };
    Ok(DominionScan {
        dominion,
        witnesses,
        agreeing_pairs,
    })
}

/// Full scan with witnesses, reusing prepared homomorphisms.
pub fn scan_dominion(homs: &FamilyHoms<'_>, h: &ElementSet) -> Result<DominionScan> {
    scan(homs, h, None)
}

/// Intersection of `Eq(f, g)` over all targets and all pairs agreeing on
/// `H`. Always contains `H`.
pub fn dominion_overapprox(g: &FiniteGroup, h: &ElementSet, family: &TestFamily) -> Result<ElementSet> {
    g.require_subgroup(h)?;
    let homs = FamilyHoms::new(g, family, HomStrategy::Auto)?;
    Ok(scan(&homs, h, None)?.dominion)
}

/// First agreeing pair in enumeration order that separates `a`, if any.
pub fn find_witness(g: &FiniteGroup, h: &ElementSet, family: &TestFamily, a: usize) -> Result<Option<Witness>> {
    if a >= g.order() {
        return Err(Error::ElementOutOfRange(a));
    }
    g.require_subgroup(h)?;
    if h.contains(a) {
        return Ok(None);
    }
    let homs = FamilyHoms::new(g, family, HomStrategy::Auto)?;
    Ok(scan(&homs, h, Some(a))?.witnesses.remove(&a))
}

/// `{a : f(a) = g(a)}`; errors when the maps do not share source and target.
pub fn equalizer(f: &Homomorphism, g: &Homomorphism) -> Result<ElementSet> {
    f.equalizer(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    InSubgroup,
    Certified,
    Retained,
    Excluded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::InSubgroup => "in_subgroup",
            Status::Certified => "certified",
            Status::Retained => "retained",
            Status::Excluded => "excluded",
        }
    }
}

/// Per-element classification of `G` relative to a subgroup and family.
#[derive(Debug, Clone)]
pub struct DominionReport {
    pub group_order: usize,
    pub subgroup: ElementSet,
    pub family: String,
    pub statuses: Vec<Status>,
    pub witnesses: BTreeMap<usize, Witness>,
    /// Element -> index into the certificate list passed to [`dominion_report`].
    pub certificates: BTreeMap<usize, usize>,
    pub agreeing_pairs: u128,
    pub element_names: Vec<String>,
}

impl DominionReport {
    pub fn overapprox(&self) -> ElementSet {
        self.elements_with(|s| s != Status::Excluded)
    }

    pub fn elements_with(&self, pred: impl Fn(Status) -> bool) -> ElementSet {
        (0..self.statuses.len()).filter(|&a| pred(self.statuses[a])).collect()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.overapprox().len() > self.subgroup.len()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let dom = self.overapprox();
        writeln!(out, "dominion relative to family: {}", self.family).unwrap();
        writeln!(out, "group order: {}", self.group_order).unwrap();
        writeln!(out, "subgroup order: {}", self.subgroup.len()).unwrap();
        writeln!(out, "dominion order: {}", dom.len()).unwrap();
        writeln!(out, "nontrivial: {}", self.is_nontrivial()).unwrap();
        writeln!(out, "agreeing pairs: {}", self.agreeing_pairs).unwrap();
        for (a, s) in self.statuses.iter().enumerate() {
            let mut line = format!("element {} {}: {}", a, self.element_names[a], s.as_str());
            if let Some(w) = self.witnesses.get(&a) {
                write!(line, " (target #{}, homs {} vs {})", w.target, w.f_index, w.g_index).unwrap();
            }
            if let Some(c) = self.certificates.get(&a) {
                write!(line, " (certificate #{c})").unwrap();
            }
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    pub fn render_keyvalue(&self) -> String {
        let mut out = String::new();
        let dom = self.overapprox();
        writeln!(out, "relative_to={}", self.family).unwrap();
        writeln!(out, "group_order={}", self.group_order).unwrap();
        writeln!(out, "subgroup_order={}", self.subgroup.len()).unwrap();
        writeln!(out, "dominion_order={}", dom.len()).unwrap();
        writeln!(out, "nontrivial={}", self.is_nontrivial()).unwrap();
        writeln!(out, "agreeing_pairs={}", self.agreeing_pairs).unwrap();
        writeln!(out, "dominion={dom}").unwrap();
        for (a, s) in self.statuses.iter().enumerate() {
            writeln!(out, "status.{a}={}", s.as_str()).unwrap();
        }
        out
    }
}

/// Runs the scan and classifies every element. Elements of the
/// over-approximation covered by a valid certificate are `certified`; the
/// rest stay `retained`. A valid certificate for an excluded element is a
/// hard error.
pub fn dominion_report(
    g: &FiniteGroup,
    h: &ElementSet,
    family: &TestFamily,
    certificates: &[Certificate],
) -> Result<DominionReport> {
    let homs = FamilyHoms::new(g, family, HomStrategy::Auto)?;
    let sc = scan(&homs, h, None)?;
    let mut certs = BTreeMap::new();
    for (i, c) in certificates.iter().enumerate() {
        if !c.is_valid() {
            continue;
        }
        let a = c.target_element();
        if !sc.dominion.contains(a) {
            return Err(Error::Disagreement(format!(
                "certificate #{i} claims element {} but a witness excludes it",
                g.name(a)
            )));
        }
        certs.entry(a).or_insert(i);
    }
    let statuses = (0..g.order())
        .map(|a| {
            if h.contains(a) {
                Status::InSubgroup
            } else if !sc.dominion.contains(a) {
                Status::Excluded
            } else if certs.contains_key(&a) {
                Status::Certified
            } else {
                Status::Retained
            }
        })
        .collect();
    Ok(DominionReport {
        group_order: g.order(),
        subgroup: h.clone(),
        family: family.describe(),
        statuses,
        witnesses: sc.witnesses,
        certificates: certs,
        agreeing_pairs: sc.agreeing_pairs,
        element_names: (0..g.order()).map(|a| g.name(a)).collect(),
    })
}

/// One failed closure-operator property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureViolation {
    NotExtensive { sample: usize },
    NotMonotone { smaller: usize, larger: usize },
    NotIdempotent { sample: usize },
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub samples: Vec<ElementSet>,
    pub dominions: Vec<ElementSet>,
    pub monotone_pairs_checked: usize,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks extensivity, monotonicity and idempotence of the family dominion
/// on the given sample subgroups.
pub fn closure_checks(g: &FiniteGroup, family: &TestFamily, samples: &[ElementSet]) -> Result<ClosureReport> {
    let homs = FamilyHoms::new(g, family, HomStrategy::Auto)?;
    let mut dominions = Vec::with_capacity(samples.len());
    for s in samples {
        g.require_subgroup(s)?;
        dominions.push(scan(&homs, s, None)?.dominion);
    }
    let mut violations = Vec::new();
    for (i, (s, d)) in samples.iter().zip(&dominions).enumerate() {
        if !s.is_subset(d) {
            violations.push(ClosureViolation::NotExtensive { sample: i });
        }
        let dd = scan(&homs, d, None)?.dominion;
        if &dd != d {
            violations.push(ClosureViolation::NotIdempotent { sample: i });
        }
    }
    let mut monotone_pairs_checked = 0;
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            if i != j && samples[i].is_subset(&samples[j]) {
                monotone_pairs_checked += 1;
                if !dominions[i].is_subset(&dominions[j]) {
                    violations.push(ClosureViolation::NotMonotone { smaller: i, larger: j });
                }
            }
        }
    }
    Ok(ClosureReport {
        samples: samples.to_vec(),
        dominions,
        monotone_pairs_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::all_homs;

    fn s3() -> Arc<FiniteGroup> {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([b[a[0]], b[a[1]], b[a[2]]])).collect())
            .collect();
        Arc::new(crate::fingroup::validate_group(&table).unwrap())
    }

    #[test]
    fn equalizer_of_sign_and_trivial() {
        let g = s3();
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let homs = all_homs(&g, &c2).unwrap();
        assert_eq!(equalizer(&homs[0], &homs[1]).unwrap(), ElementSet::new(vec![0, 3, 4]));
        assert_eq!(equalizer(&homs[1], &homs[1]).unwrap(), g.elements());
    }

    #[test]
    fn whole_group_is_its_own_dominion() {
        let g = s3();
        let fam = TestFamily::quotient_closed(Arc::clone(&g), "S3", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(dominion_overapprox(&g, &g.elements(), &fam).unwrap(), g.elements());
    }

    #[test]
    fn normal_subgroup_is_closed() {
        let g = s3();
        let fam = TestFamily::quotient_closed(Arc::clone(&g), "S3", DEFAULT_MAX_ORDER).unwrap();
        let a3 = ElementSet::new(vec![0, 3, 4]);
        assert_eq!(dominion_overapprox(&g, &a3, &fam).unwrap(), a3);
        assert!(find_witness(&g, &a3, &fam, 0).unwrap().is_none());
        let w = find_witness(&g, &a3, &fam, 1).unwrap().unwrap();
        assert_eq!(w.f[3], w.g[3]);
        assert_ne!(w.f[1], w.g[1]);
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = s3();
        let fam = TestFamily::single(Arc::clone(&g), "S3");
        let bad = ElementSet::new(vec![0, 1, 2]);
        assert!(matches!(dominion_overapprox(&g, &bad, &fam), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn report_partitions_group() {
        let g = s3();
        let fam = TestFamily::quotient_closed(Arc::clone(&g), "S3", DEFAULT_MAX_ORDER).unwrap();
        let h = ElementSet::new(vec![0, 1]);
        let rep = dominion_report(&g, &h, &fam, &[]).unwrap();
        assert_eq!(rep.statuses.len(), 6);
        assert!(rep.overapprox().is_subset(&g.elements()));
        assert!(h.is_subset(&rep.overapprox()));
        for a in rep.elements_with(|s| s == Status::Excluded).iter() {
            assert!(rep.witnesses.contains_key(&a));
        }
        assert!(rep.render_text().contains("relative to family"));
    }

    #[test]
    fn family_file_parsing() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("c2.cay"), "order 2\n0 1\n1 0\n").unwrap();
        let spec = FamilySpec::parse("# fam\ngroup c2.cay\nclose-under-quotients\nmax-order 8\n", dir.path()).unwrap();
        let fam = spec.build(None).unwrap();
        assert_eq!(fam.len(), 2);
        assert!(fam.closed_under_quotients());
        let err = FamilySpec::parse("bogus\n", dir.path()).unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: 1, .. })));
        assert!(FamilySpec::parse("", dir.path()).is_err());
        let spec = FamilySpec::parse("group c2.cay\nclose-under-quotients\nmax-order 1\n", dir.path()).unwrap();
        assert!(matches!(spec.build(None), Err(Error::Refused(_))));
        let spec = FamilySpec::parse("group self\n", dir.path()).unwrap();
        assert!(spec.build(None).is_err());
        assert_eq!(spec.build(Some(&s3())).unwrap().len(), 1);
    }
}

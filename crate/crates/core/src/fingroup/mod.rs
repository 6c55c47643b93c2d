//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`, with index 0 the identity. Subsets of a
//! group are [`ElementSet`]s: sorted, duplicate-free index lists.

mod hom;
mod identity;
mod io;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

pub use hom::{all_homs, all_homs_with, generating_set, HomEnumerator, HomStrategy, Homomorphism};
pub use identity::{check_identity, evaluate_word, IdentityReport};
pub use io::{parse_cayley, read_cayley, write_cayley};

use crate::error::{Error, Result};
use crate::nil2::Nil2Params;
use crate::word::Word;

/// Sorted, duplicate-free list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        items.dedup();
        ElementSet(items)
    }

    pub fn singleton(a: usize) -> Self {
        ElementSet(vec![a])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        ElementSet(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        )
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut m = vec![false; order];
        for &a in &self.0 {
            m[a] = true;
        }
        m
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&a| other.contains(a))
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|&a| !other.contains(a)).collect())
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Generators `g1..gk` and relators over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gen_count: usize,
    pub relators: Vec<Word>,
    pub params: Option<Nil2Params>,
}

impl Presentation {
    pub fn new(gen_count: usize, relators: Vec<Word>, params: Option<Nil2Params>) -> Result<Self> {
        let p = Presentation {
            gen_count,
            relators,
            params,
        };
        p.check()?;
        Ok(p)
    }

    pub fn generator_name(i: usize) -> String {
        format!("g{}", i + 1)
    }

    /// Index of a generator named `g<k>`.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        let k: usize = name.strip_prefix('g')?.parse().ok()?;
        (1..=self.gen_count).contains(&k).then(|| k - 1)
    }

    fn check(&self) -> Result<()> {
        if self.gen_count == 0 {
            return Err(Error::Precondition("presentation needs at least one generator".into()));
        }
        for r in &self.relators {
            for g in r.generators() {
                if self.generator_index(g.as_str()).is_none() {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Relators as `(generator index, exponent)` syllable lists.
    pub(crate) fn compiled(&self) -> Vec<Vec<(usize, i64)>> {
        self.relators
            .iter()
            .map(|r| {
                r.syllables()
                    .iter()
                    .map(|(g, k)| (self.generator_index(g.as_str()).expect("checked"), *k))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
    presentation: Option<Presentation>,
    generators: Option<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

/// Checks the group axioms on a candidate table and returns the group.
pub fn validate_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable { row: 0, col: 0 });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable {
                row: i,
                col: row.len().min(n),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedTable { row: i, col: j });
            }
            flat.push(v as u32);
        }
    }
    FiniteGroup::from_flat(n, flat)
}

impl FiniteGroup {
    /// Validating constructor over a row-major table.
    pub fn from_flat(order: usize, table: Vec<u32>) -> Result<Self> {
        let g = FiniteGroup::from_flat_unchecked(order, table)?;
        g.check_associative()?;
        Ok(g)
    }

    /// Checks identity and inverses but skips the cubic associativity scan;
    /// for tables built from an operation already known to be a group law.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::MalformedTable { row: 0, col: 0 });
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(Error::MalformedTable {
                row: pos / order,
                col: pos % order,
            });
        }
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::IdentityAxiom(i));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for i in 0..order {
            let row = &table[i * order..(i + 1) * order];
            let j = row
                .iter()
                .position(|&v| v == 0)
                .ok_or(Error::MissingInverse(i))?;
            if table[j * order + i] != 0 {
                return Err(Error::MissingInverse(i));
            }
            inverses[i] = j as u32;
        }
        Ok(FiniteGroup {
            order,
            table,
            inverses,
            names: None,
            presentation: None,
            generators: None,
        })
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs every group axiom check.
    pub fn validate(&self) -> Result<()> {
        FiniteGroup::from_flat(self.order, self.table.clone()).map(|_| ())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Precondition(format!(
                "{} names for a group of order {}",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn with_generators(mut self, gens: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.order) {
            return Err(Error::ElementOutOfRange(bad));
        }
        if let Some(p) = &self.presentation {
            if p.gen_count != gens.len() {
                return Err(Error::Precondition("generator list does not match presentation".into()));
            }
        }
        self.generators = Some(gens);
        Ok(self)
    }

    /// Attaches presentation metadata; needs designated generators matching
    /// the presentation's generator count.
    pub fn with_presentation(mut self, p: Presentation) -> Result<Self> {
        match &self.generators {
            Some(g) if g.len() == p.gen_count => {}
            _ => {
                return Err(Error::MissingPresentation(
                    "presentation needs a matching generator list".into(),
                ))
            }
        }
        self.presentation = Some(p);
        Ok(self)
    }

    /// Checks that every relator of the attached presentation evaluates to
    /// the identity on the designated generators.
    pub fn check_relators(&self) -> Result<()> {
        let (Some(p), Some(gens)) = (&self.presentation, &self.generators) else {
            return Ok(());
        };
        for (r, word) in p.compiled().iter().zip(&p.relators) {
            let v = r
                .iter()
                .fold(0, |acc, &(g, k)| self.mul(acc, self.pow(gens[g], k)));
            if v != 0 {
                return Err(Error::NotHomomorphism(format!("relator {word} does not hold")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut e = n.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `[a,b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// Left-normed commutator of the given elements.
    pub fn left_normed(&self, args: &[usize]) -> usize {
        let mut acc = args[0];
        for &a in &args[1..] {
            acc = self.commutator(acc, a);
        }
        acc
    }

    /// `a^b = b^-1 a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(b), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks up an element by label, falling back to a decimal index.
    pub fn find_element(&self, label: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == label) {
                return Some(i);
            }
        }
        label.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet((0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        ElementSet::singleton(0)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        self.subgroup_violation(s).is_none()
    }

    fn subgroup_violation(&self, s: &ElementSet) -> Option<String> {
        if s.iter().any(|a| a >= self.order) {
            return Some("element out of range".into());
        }
        if !s.contains(0) {
            return Some("identity missing".into());
        }
        let mask = s.mask(self.order);
        for a in s.iter() {
            if !mask[self.inv(a)] {
                return Some(format!("inverse of {} missing", self.name(a)));
            }
            for b in s.iter() {
                if !mask[self.mul(a, b)] {
                    return Some(format!(
                        "product of {} and {} missing",
                        self.name(a),
                        self.name(b)
                    ));
                }
            }
        }
        None
    }

    pub(crate) fn require_subgroup(&self, s: &ElementSet) -> Result<()> {
        match self.subgroup_violation(s) {
            None => Ok(()),
            Some(msg) => Err(Error::NotSubgroup(msg)),
        }
    }

    fn normality_violation(&self, s: &ElementSet) -> Option<(usize, usize)> {
        let mask = s.mask(self.order);
        for a in s.iter() {
            for g in 0..self.order {
                if !mask[self.conjugate(a, g)] {
                    return Some((a, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, s: &ElementSet) -> bool {
        self.is_subgroup(s) && self.normality_violation(s).is_none()
    }

    pub(crate) fn require_normal(&self, s: &ElementSet) -> Result<()> {
        self.require_subgroup(s)?;
        match self.normality_violation(s) {
            None => Ok(()),
            Some((element, by)) => Err(Error::NotNormal { element, by }),
        }
    }

    /// Closure of `{e}` under right multiplication by `gens`.
    fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !mask[b] {
                    mask[b] = true;
                    queue.push_back(b);
                }
            }
        }
        mask
    }

    /// The subgroup generated by `seeds`, together with the seeds that were
    /// actually needed.
    fn generate(&self, seeds: impl IntoIterator<Item = usize>) -> (Vec<bool>, Vec<usize>) {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        for s in seeds {
            if !mask[s] {
                gens.push(s);
                mask = self.closure_mask(&gens);
            }
        }
        (mask, gens)
    }

    pub fn generated_subgroup(&self, seeds: &[usize]) -> ElementSet {
        ElementSet::from_mask(&self.generate(seeds.iter().copied()).0)
    }

    /// `[A,B]`: the subgroup generated by all `[a,b]`.
    pub fn commutator_subgroup(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut seen = vec![false; self.order];
        let mut seeds = Vec::new();
        for x in a.iter() {
            for y in b.iter() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    seeds.push(c);
                }
            }
        }
        self.generated_subgroup(&seeds)
    }

    pub fn derived_series(&self) -> DerivedSeries {
        let mut terms = vec![self.elements()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.len() == 1 {
                let len = terms.len() - 1;
                return DerivedSeries {
                    terms,
                    solvable_length: Some(len),
                };
            }
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                return DerivedSeries {
                    terms,
                    solvable_length: None,
                };
            }
            terms.push(next);
        }
    }

    pub fn center(&self) -> ElementSet {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn conjugacy_class(&self, a: usize) -> ElementSet {
        (0..self.order).map(|g| self.conjugate(a, g)).collect()
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &[usize]) -> ElementSet {
        let mut seeds = Vec::new();
        let mut seen = vec![false; self.order];
        for &a in s {
            for c in self.conjugacy_class(a).iter() {
                if !seen[c] {
                    seen[c] = true;
                    seeds.push(c);
                }
            }
        }
        self.generated_subgroup(&seeds)
    }

    /// All normal subgroups, sorted by order then elements. Every normal
    /// subgroup is a join of normal closures of single elements, so the
    /// search joins principal closures until nothing new appears.
    pub fn normal_subgroups(&self) -> Vec<ElementSet> {
        let principal: Vec<(Vec<bool>, usize)> = {
            let mut seen: HashSet<Vec<bool>> = HashSet::new();
            let mut out = Vec::new();
            for a in 1..self.order {
                let m = self.normal_closure(&[a]).mask(self.order);
                if seen.insert(m.clone()) {
                    out.push((m, a));
                }
            }
            out
        };
        self.join_closure(principal, |g, seeds| g.normal_closure(seeds))
    }

    /// All subgroups, found as joins of cyclic subgroups. Intended for small
    /// groups only.
    pub fn all_subgroups(&self) -> Vec<ElementSet> {
        let principal: Vec<(Vec<bool>, usize)> = {
            let mut seen: HashSet<Vec<bool>> = HashSet::new();
            let mut out = Vec::new();
            for a in 1..self.order {
                let m = self.generated_subgroup(&[a]).mask(self.order);
                if seen.insert(m.clone()) {
                    out.push((m, a));
                }
            }
            out
        };
        self.join_closure(principal, |g, seeds| g.generated_subgroup(seeds))
    }

    fn join_closure<F>(&self, principal: Vec<(Vec<bool>, usize)>, span: F) -> Vec<ElementSet>
    where
        F: Fn(&FiniteGroup, &[usize]) -> ElementSet,
    {
        let mut found: HashSet<Vec<bool>> = HashSet::new();
        let mut list: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        let trivial = self.trivial_subgroup().mask(self.order);
        found.insert(trivial.clone());
        list.push((trivial, Vec::new()));
        for (m, a) in &principal {
            if found.insert(m.clone()) {
                list.push((m.clone(), vec![*a]));
            }
        }
        let mut i = 0;
        while i < list.len() {
            for (_, a) in &principal {
                let (m, seeds) = &list[i];
                if m[*a] {
                    continue;
                }
                let mut s = seeds.clone();
                s.push(*a);
                let joined = span(self, &s).mask(self.order);
                if found.insert(joined.clone()) {
                    list.push((joined, s));
                }
            }
            i += 1;
        }
        let mut out: Vec<ElementSet> = list.iter().map(|(m, _)| ElementSet::from_mask(m)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Coset group `G/N` and the canonical projection. Cosets are ordered by
    /// their least element, so the identity coset is index 0.
    pub fn quotient(&self, n: &ElementSet) -> Result<(FiniteGroup, Vec<usize>)> {
        self.require_normal(n)?;
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if coset_of[a] == usize::MAX {
                let idx = reps.len();
                reps.push(a);
                for m in n.iter() {
                    coset_of[self.mul(a, m)] = idx;
                }
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)] as u32);
            }
        }
        let mut quot = FiniteGroup::from_flat_unchecked(q, table)?;
        if self.names.is_some() {
            quot.names = Some(reps.iter().map(|&r| format!("{}N", self.name(r))).collect());
        }
        if let Some(gens) = &self.generators {
            quot.generators = Some(gens.iter().map(|&g| coset_of[g]).collect());
            if let Some(p) = &self.presentation {
                let mut relators = p.relators.clone();
                let words = self.spanning_words(gens);
                let (_, ngens) = self.generate(n.iter());
                for g in ngens {
                    relators.push(words[g].clone());
                }
                quot.presentation = Some(Presentation {
                    gen_count: p.gen_count,
                    relators,
                    params: None,
                });
            }
        }
        Ok((quot, coset_of))
    }

    /// A word in `g1..gk` for every element, read off a breadth-first
    /// spanning tree over right multiplication by `gens`.
    pub fn spanning_words(&self, gens: &[usize]) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                if words[b].is_none() {
                    let w = words[a]
                        .as_ref()
                        .expect("visited")
                        .mul(&Word::gen(&Presentation::generator_name(i)));
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.unwrap_or_default())
            .collect()
    }

    /// `G x H` with `(g,h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let g = self.mul(a / m, b / m);
                let h = other.mul(a % m, b % m);
                table.push((g * m + h) as u32);
            }
        }
        let mut prod = FiniteGroup::from_flat_unchecked(n * m, table).expect("product of groups");
        prod.names = Some(
            (0..n * m)
                .map(|a| format!("({},{})", self.name(a / m), other.name(a % m)))
                .collect(),
        );
        prod
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Precondition("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let g = FiniteGroup::from_flat_unchecked(n, table)?;
        let x = usize::from(n > 1);
        let p = Presentation::new(1, vec![Word::gen("g1").pow(n as i64)], None)?;
        g.with_generators(vec![x])?.with_presentation(p)
    }

    /// Group of order 1.
    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_flat_unchecked(1, vec![0]).expect("trivial group")
    }
}

/// `G = G^(0) > G^(1) > ...` until stationary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSeries {
    pub terms: Vec<ElementSet>,
    /// Number of strict steps down to the trivial subgroup; `None` when the
    /// series stalls above it.
    pub solvable_length: Option<usize>,
}

impl DerivedSeries {
    pub fn term(&self, k: usize) -> &ElementSet {
        self.terms.get(k).unwrap_or_else(|| self.terms.last().expect("nonempty"))
    }
}

/// Sorted union of several element sets.
pub fn union_of<'a>(sets: impl IntoIterator<Item = &'a ElementSet>) -> ElementSet {
    let all: BTreeSet<usize> = sets.into_iter().flat_map(|s| s.iter()).collect();
    ElementSet(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> FiniteGroup {
        // permutations of {0,1,2} in lexicographic order, composed left to right
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([b[a[0]], b[a[1]], b[a[2]]]))
                    .collect()
            })
            .collect();
        validate_group(&table).unwrap()
    }

    #[test]
    fn validate_small_tables() {
        let g = validate_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        let bad = validate_group(&[vec![0, 1], vec![0, 1]]);
        assert!(matches!(bad, Err(Error::IdentityAxiom(_))));
        let not_square = validate_group(&[vec![0, 1], vec![1]]);
        assert!(matches!(not_square, Err(Error::MalformedTable { .. })));
        let no_inv = validate_group(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 0]]);
        assert!(matches!(no_inv, Err(Error::MissingInverse(1))));
        // a Latin square with identity 0 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_group(&loop5), Err(Error::NonAssociative(..))));
    }

    #[test]
    fn subgroup_generation() {
        let g = s3();
        assert_eq!(g.generated_subgroup(&[]), ElementSet::singleton(0));
        assert_eq!(g.generated_subgroup(&[3]).len(), 3);
        assert_eq!(g.generated_subgroup(&[1, 3]).len(), 6);
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert!(!g.is_abelian());
        assert_eq!(g.center(), ElementSet::singleton(0));
        let a3 = g.commutator_subgroup(&g.elements(), &g.elements());
        assert_eq!(a3, ElementSet::new(vec![0, 3, 4]));
        let ds = g.derived_series();
        assert_eq!(ds.solvable_length, Some(2));
        assert_eq!(g.normal_subgroups().len(), 3);
        assert_eq!(g.all_subgroups().len(), 6);
        assert_eq!(g.commutator_subgroup(&g.elements(), &g.trivial_subgroup()), g.trivial_subgroup());
    }

    #[test]
    fn quotients() {
        let g = s3();
        let (q, proj) = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj, (0..6).collect::<Vec<_>>());
        let (q, _) = g.quotient(&g.elements()).unwrap();
        assert_eq!(q.order(), 1);
        let (q, proj) = g.quotient(&ElementSet::new(vec![0, 3, 4])).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[1], 1);
        let non_normal = g.quotient(&ElementSet::new(vec![0, 1]));
        assert!(matches!(non_normal, Err(Error::NotNormal { element: 1, .. })));
        let non_sub = g.quotient(&ElementSet::new(vec![0, 1, 2]));
        assert!(matches!(non_sub, Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn products_and_cyclic() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = c2.direct_product(&c2);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        v4.validate().unwrap();
        assert_eq!(v4.center(), v4.elements());
        assert_eq!(v4.derived_series().solvable_length, Some(1));
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(c1.derived_series().solvable_length, Some(0));
        let c6 = FiniteGroup::cyclic(6).unwrap();
        c6.validate().unwrap();
        c6.check_relators().unwrap();
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.pow(1, -1), 5);
    }
}

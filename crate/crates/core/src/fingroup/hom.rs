use std::ops::ControlFlow;
use std::sync::Arc;

use super::{ElementSet, FiniteGroup};
use crate::error::{Error, Result};

/// A group homomorphism between two finite groups, stored as the image of
/// every source element.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && same_group(&self.source, &other.source) && same_group(&self.target, &other.target)
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Homomorphism {
    /// Validates the map against both multiplication tables.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= target.order()) {
            return Err(Error::ElementOutOfRange(bad));
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!("product of {a} and {b} not preserved")));
                }
            }
        }
        Ok(Homomorphism { source, target, images })
    }

    pub(crate) fn from_trusted(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        Homomorphism { source, target, images }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn kernel(&self) -> ElementSet {
        (0..self.images.len()).filter(|&a| self.images[a] == 0).collect()
    }

    pub fn image(&self) -> ElementSet {
        self.images.iter().copied().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn image_of(&self, s: &ElementSet) -> ElementSet {
        s.iter().map(|a| self.images[a]).collect()
    }

    /// `{a : f(a) = g(a)}`.
    pub fn equalizer(&self, other: &Homomorphism) -> Result<ElementSet> {
        if !same_group(&self.source, &other.source) || !same_group(&self.target, &other.target) {
            return Err(Error::HomMismatch);
        }
        let eq: ElementSet = (0..self.images.len())
            .filter(|&a| self.images[a] == other.images[a])
            .collect();
        self.source.require_subgroup(&eq)?;
        Ok(eq)
    }
}

impl FiniteGroup {
    /// `G/N` together with the canonical projection as a homomorphism.
    pub fn quotient_map(self: &Arc<Self>, n: &ElementSet) -> Result<(Arc<FiniteGroup>, Homomorphism)> {
        let (q, proj) = self.quotient(n)?;
        let q = Arc::new(q);
        let h = Homomorphism::from_trusted(Arc::clone(self), Arc::clone(&q), proj);
        Ok((q, h))
    }
}

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup most, ties broken by lowest index.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut mask = g.closure_mask(&gens);
    let mut size = 1;
    while size < g.order() {
        let mut best: Option<(usize, usize, Vec<bool>)> = None;
        let mut tried = vec![false; g.order()];
        for c in 0..g.order() {
            if mask[c] || tried[c] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(c);
            let m = g.closure_mask(&trial);
            let s = m.iter().filter(|&&b| b).count();
            // every generator of the same cyclic group gives the same span
            let mut p = c;
            loop {
                tried[p] = true;
                p = g.mul(p, c);
                if p == c {
                    break;
                }
            }
            if best.as_ref().is_none_or(|(bs, _, _)| s > *bs) {
                best = Some((s, c, m));
            }
        }
        let (s, c, m) = best.expect("some element lies outside a proper subgroup");
        gens.push(c);
        mask = m;
        size = s;
    }
    gens
}

/// Which route [`HomEnumerator`] uses to accept generator images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomStrategy {
    /// Presentation when the source carries one, table otherwise.
    Auto,
    /// Accept a tuple iff every relator maps to the identity.
    Presentation,
    /// Extend along a spanning tree and verify on the table.
    Table,
}

/// Enumerates all homomorphisms from a source to a target group in
/// lexicographic order of generator images.
pub struct HomEnumerator<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    /// `(element, parent, generator position)` in breadth-first order.
    tree: Vec<(usize, usize, usize)>,
    relators: Option<Vec<Vec<(usize, i64)>>>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> HomEnumerator<'a> {
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, strategy: HomStrategy) -> Result<Self> {
        let use_presentation = match strategy {
            HomStrategy::Table => false,
            HomStrategy::Presentation => {
                if source.presentation().is_none() {
                    return Err(Error::MissingPresentation("presentation strategy requested".into()));
                }
                true
            }
            HomStrategy::Auto => source.presentation().is_some(),
        };
        let (gens, relators) = if use_presentation {
            let p = source.presentation().expect("checked");
            let gens = source.generators().expect("presentation implies generators").to_vec();
            (gens, Some(p.compiled()))
        } else {
            (generating_set(source), None)
        };

        let mut tree = Vec::with_capacity(source.order());
        let mut seen = vec![false; source.order()];
        seen[0] = true;
        let mut head = 0;
        let mut order = vec![0usize];
        while head < order.len() {
            let a = order[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let b = source.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    order.push(b);
                    tree.push((b, a, i));
                }
            }
        }
        if order.len() != source.order() {
            return Err(Error::MissingPresentation("designated generators do not generate the group".into()));
        }

        let target_orders: Vec<usize> = (0..target.order()).map(|c| target.element_order(c)).collect();
        let candidates = gens
            .iter()
            .map(|&g| {
                let og = source.element_order(g);
                (0..target.order()).filter(|&c| og.is_multiple_of(target_orders[c])).collect()
            })
            .collect();
        Ok(HomEnumerator {
            source,
            target,
            gens,
            tree,
            relators,
            candidates,
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn uses_presentation(&self) -> bool {
        self.relators.is_some()
    }

    /// Calls `visit` with the full image vector of each homomorphism.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = self.gens.len();
        let mut images = vec![0usize; self.source.order()];
        if k == 0 {
            let _ = visit(&images);
            return;
        }
        if self.candidates.iter().any(|c| c.is_empty()) {
            return;
        }
        let mut pos = vec![0usize; k];
        let mut gen_images = vec![0usize; k];
        loop {
            for i in 0..k {
                gen_images[i] = self.candidates[i][pos[i]];
            }
            if self.accept(&gen_images, &mut images) && visit(&images).is_break() {
                return;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                pos[i] += 1;
                if pos[i] < self.candidates[i].len() {
                    break;
                }
                pos[i] = 0;
            }
        }
    }

    fn accept(&self, gen_images: &[usize], images: &mut [usize]) -> bool {
        let t = self.target;
        if let Some(relators) = &self.relators {
            let ok = relators.iter().all(|r| {
                r.iter()
                    .fold(0, |acc, &(g, e)| t.mul(acc, t.pow(gen_images[g], e)))
                    == 0
            });
            if !ok {
                return false;
            }
            self.extend(gen_images, images);
            true
        } else {
            self.extend(gen_images, images);
            let s = self.source;
            (0..s.order()).all(|a| {
                self.gens
                    .iter()
                    .zip(gen_images)
                    .all(|(&g, &img)| images[s.mul(a, g)] == t.mul(images[a], img))
            })
        }
    }

    fn extend(&self, gen_images: &[usize], images: &mut [usize]) {
        images[0] = 0;
        for &(b, a, i) in &self.tree {
            images[b] = self.target.mul(images[a], gen_images[i]);
        }
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// Every homomorphism `source -> target`, in deterministic order.
pub fn all_homs(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<Vec<Homomorphism>> {
    all_homs_with(source, target, HomStrategy::Auto)
}

pub fn all_homs_with(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    strategy: HomStrategy,
) -> Result<Vec<Homomorphism>> {
    let e = HomEnumerator::new(source, target, strategy)?;
    let mut out = Vec::new();
    e.for_each(|images| {
        out.push(Homomorphism::from_trusted(Arc::clone(source), Arc::clone(target), images.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::tests::s3;

    #[test]
    fn greedy_generators_of_s3() {
        let g = s3();
        let gens = generating_set(&g);
        assert_eq!(gens.len(), 2);
        assert_eq!(g.generated_subgroup(&gens).len(), 6);
        // the 3-cycle spans more than any transposition; then the lowest transposition
        assert_eq!(gens, vec![3, 1]);
    }

    #[test]
    fn homs_into_trivial_and_cyclic() {
        let g = Arc::new(s3());
        let triv = Arc::new(FiniteGroup::trivial());
        assert_eq!(all_homs(&g, &triv).unwrap().len(), 1);
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let homs = all_homs(&g, &c2).unwrap();
        assert_eq!(homs.len(), 2);
        let sign = &homs[1];
        assert_eq!(sign.kernel(), ElementSet::new(vec![0, 3, 4]));
        assert_eq!(homs[0].equalizer(sign).unwrap(), ElementSet::new(vec![0, 3, 4]));
        assert_eq!(sign.equalizer(sign).unwrap(), g.elements());
        // automorphisms and endomorphisms of S3: 6 + 3 + 1
        assert_eq!(all_homs(&g, &g).unwrap().len(), 10);
    }

    #[test]
    fn homomorphism_validation() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert!(Homomorphism::new(Arc::clone(&c2), Arc::clone(&c3), vec![0, 1]).is_err());
        assert!(Homomorphism::new(Arc::clone(&c2), Arc::clone(&c3), vec![0, 0]).is_ok());
        let f = Homomorphism::new(Arc::clone(&c2), Arc::clone(&c2), vec![0, 1]).unwrap();
        let g = Homomorphism::new(Arc::clone(&c2), Arc::clone(&c3), vec![0, 0]).unwrap();
        assert!(matches!(f.equalizer(&g), Err(Error::HomMismatch)));
    }

    #[test]
    fn quotient_projection_is_surjective_with_kernel_n() {
        let g = Arc::new(s3());
        for n in g.normal_subgroups() {
            let (_, proj) = g.quotient_map(&n).unwrap();
            assert!(proj.is_surjective());
            assert_eq!(proj.kernel(), n);
            Homomorphism::new(Arc::clone(proj.source()), Arc::clone(proj.target()), proj.images().to_vec()).unwrap();
        }
    }
}

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::word::{GeneratorId, Word};

const MAX_VARIABLES: usize = 4;
const MAX_EVALUATIONS: u64 = 10_000_000;

/// Image of `w` under the substitution `assignment` (generator -> element).
pub fn evaluate_word(g: &FiniteGroup, w: &Word, assignment: &BTreeMap<GeneratorId, usize>) -> Result<usize> {
    let mut acc = 0;
    for (x, k) in w.syllables() {
        let v = *assignment
            .get(x)
            .ok_or_else(|| Error::MissingAssignment(x.to_string()))?;
        acc = g.mul(acc, g.pow(v, *k));
    }
    Ok(acc)
}

/// Result of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    pub variables: Vec<GeneratorId>,
    pub assignments_checked: u64,
    /// First violating assignment in lexicographic order, one element per
    /// variable.
    pub counterexample: Option<Vec<usize>>,
}

fn compile(w: &Word, vars: &[GeneratorId]) -> Vec<(usize, i64)> {
    w.syllables()
        .iter()
        .map(|(x, k)| (vars.binary_search(x).expect("variable collected"), *k))
        .collect()
}

fn eval(g: &FiniteGroup, code: &[(usize, i64)], values: &[usize]) -> usize {
    code.iter().fold(0, |acc, &(v, k)| g.mul(acc, g.pow(values[v], k)))
}

/// Decides whether `lhs = rhs` holds under every assignment of elements of
/// `g` to the variables. Refuses rather than samples when the search is
/// larger than 4 variables or 10^7 assignments.
pub fn check_identity(g: &FiniteGroup, lhs: &Word, rhs: &Word) -> Result<IdentityReport> {
    let mut vars: Vec<GeneratorId> = lhs.generators().into_iter().collect();
    vars.extend(rhs.generators());
    vars.sort();
    vars.dedup();
    let k = vars.len();
    if k > MAX_VARIABLES {
        return Err(Error::Refused(format!("{k} variables exceeds the cap of {MAX_VARIABLES}")));
    }
    let n = g.order() as u64;
    let total = n.checked_pow(k as u32).filter(|&t| t <= MAX_EVALUATIONS).ok_or_else(|| {
        Error::Refused(format!("{n}^{k} assignments exceeds the cap of {MAX_EVALUATIONS}"))
    })?;
    let l = compile(lhs, &vars);
    let r = compile(rhs, &vars);

    let decode = |mut idx: u64| {
        let mut values = vec![0usize; k];
        for slot in values.iter_mut().rev() {
            *slot = (idx % n) as usize;
            idx /= n;
        }
        values
    };
    // chunks keep lexicographic order; the smallest failing index wins
    let chunk = 4096u64;
    let chunks = total.div_ceil(chunk);
    let first_bad = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(total);
            (start..end).find(|&idx| {
                let values = decode(idx);
                eval(g, &l, &values) != eval(g, &r, &values)
            })
        })
        .min();
    Ok(IdentityReport {
        holds: first_bad.is_none(),
        variables: vars,
        assignments_checked: first_bad.map_or(total, |i| i + 1),
        counterexample: first_bad.map(decode),
    })
}

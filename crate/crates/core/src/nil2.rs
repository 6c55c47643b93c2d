//! Normal forms in relatively free nilpotent groups of class two.
//!
//! With generators `z1..zm`, every element is uniquely
//! `z1^a1 ... zm^am * prod_{i<j} [zi,zj]^c_ij`, exponents reduced modulo
//! the declared orders (modulus 0 meaning infinite order). Moving `zj^s`
//! past `zi^t` for `i < j` costs `[zi,zj]^(-s*t)`, which gives the product
//! rule used throughout this module.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, ParseError, Result};
use crate::fingroup::{FiniteGroup, Presentation};
use crate::word::Word;

/// Largest group [`realize_finite`] will tabulate.
pub const MAX_REALIZED_ORDER: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nil2Params {
    rank: usize,
    gen_moduli: Vec<u64>,
    /// One entry per pair `(i, j)`, `i < j`, in lexicographic order.
    comm_moduli: Vec<u64>,
}

fn pair_count(m: usize) -> usize {
    m * (m.saturating_sub(1)) / 2
}

/// Lexicographic list of pairs `(i, j)` with `i < j < m`.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

impl Nil2Params {
    pub fn new(gen_moduli: Vec<u64>, comm_moduli: Vec<u64>) -> Result<Self> {
        let rank = gen_moduli.len();
        if rank == 0 {
            return Err(Error::InvalidParams("rank must be positive".into()));
        }
        if comm_moduli.len() != pair_count(rank) {
            return Err(Error::InvalidParams(format!(
                "rank {rank} needs {} commutator moduli, got {}",
                pair_count(rank),
                comm_moduli.len()
            )));
        }
        for ((i, j), &k) in pairs(rank).iter().zip(&comm_moduli) {
            let (mi, mj) = (gen_moduli[*i], gen_moduli[*j]);
            if k == 0 && (mi != 0 || mj != 0) {
                return Err(Error::InvalidParams(format!(
                    "commutator ({},{}) has infinite order but a generator has finite order",
                    i + 1,
                    j + 1
                )));
            }
            if k > 0 && [mi, mj].iter().any(|&m| m != 0 && m % k != 0) {
                return Err(Error::InvalidParams(format!(
                    "commutator modulus {k} must divide the generator moduli {mi} and {mj}"
                )));
            }
        }
        Ok(Nil2Params {
            rank,
            gen_moduli,
            comm_moduli,
        })
    }

    /// The two-generator group `x^a0 = y^b0 = [x,y]^k0 = e`, class two.
    pub fn k(a0: u64, b0: u64, k0: u64) -> Result<Self> {
        Nil2Params::new(vec![a0, b0], vec![k0])
    }

    /// Rank `m` with every commutator modulus equal to `k`.
    pub fn uniform(gen_moduli: Vec<u64>, k: u64) -> Result<Self> {
        let n = pair_count(gen_moduli.len());
        Nil2Params::new(gen_moduli, vec![k; n])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gen_moduli(&self) -> &[u64] {
        &self.gen_moduli
    }

    pub fn comm_moduli(&self) -> &[u64] {
        &self.comm_moduli
    }

    pub fn comm_modulus(&self, i: usize, j: usize) -> u64 {
        self.comm_moduli[self.pair_index(i, j)]
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.rank);
        // pairs before row i, then the offset inside row i
        i * self.rank - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Generator names used by [`collect`]: `x, y` for rank two,
    /// `z1..zm` otherwise.
    pub fn generator_names(&self) -> Vec<String> {
        if self.rank == 2 {
            vec!["x".into(), "y".into()]
        } else {
            (1..=self.rank).map(|i| format!("z{i}")).collect()
        }
    }

    fn moduli(&self) -> impl Iterator<Item = u64> + '_ {
        self.gen_moduli.iter().chain(&self.comm_moduli).copied()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli().all(|m| m > 0)
    }

    /// Group order, `None` when infinite.
    pub fn group_order(&self) -> Option<u128> {
        self.moduli()
            .try_fold(1u128, |acc, m| if m == 0 { None } else { acc.checked_mul(m as u128) })
    }

    /// Parses `K(a0,b0,k0)`, `nil2(m; e1,...,em; k)` or a bare `a0,b0,k0`.
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let t = text.trim();
        let lead = text.len() - text.trim_start().len();
        let err = |col: usize, msg: String| ParseError {
            line: 1,
            column: lead + col + 1,
            message: msg,
        };
        let nums = |s: &str, base: usize| -> std::result::Result<Vec<u64>, ParseError> {
            let mut out = Vec::new();
            let mut off = 0;
            for part in s.split(',') {
                let lead_ws = part.len() - part.trim_start().len();
                let v = part.trim().parse::<u64>().map_err(|_| {
                    err(base + off + lead_ws, format!("expected a nonnegative integer, found {:?}", part.trim()))
                })?;
                out.push(v);
                off += part.len() + 1;
            }
            Ok(out)
        };
        let invalid = |e: Error| err(0, e.to_string());
        if let Some(inner) = t.strip_prefix("K(") {
            let inner = inner.strip_suffix(')').ok_or_else(|| err(t.len(), "expected ')'".into()))?;
            let v = nums(inner, 2)?;
            if v.len() != 3 {
                return Err(err(2, format!("K(...) takes 3 values, got {}", v.len())));
            }
            Nil2Params::k(v[0], v[1], v[2]).map_err(invalid)
        } else if let Some(inner) = t.strip_prefix("nil2(") {
            let inner = inner.strip_suffix(')').ok_or_else(|| err(t.len(), "expected ')'".into()))?;
            let parts: Vec<&str> = inner.split(';').collect();
            if parts.len() != 3 {
                return Err(err(5, "expected `nil2(m; e1,...,em; k)`".into()));
            }
            let m = nums(parts[0], 5)?;
            let gens = nums(parts[1], 5 + parts[0].len() + 1)?;
            let ks = nums(parts[2], 5 + parts[0].len() + parts[1].len() + 2)?;
            if m.len() != 1 || m[0] as usize != gens.len() {
                return Err(err(5, format!("rank {} does not match {} generator moduli", m[0], gens.len())));
            }
            match ks.len() {
                1 => Nil2Params::uniform(gens, ks[0]).map_err(invalid),
                _ => Nil2Params::new(gens, ks).map_err(invalid),
            }
        } else {
            let v = nums(t, 0)?;
            if v.len() != 3 {
                return Err(err(0, format!("expected a0,b0,k0, got {} values", v.len())));
            }
            Nil2Params::k(v[0], v[1], v[2]).map_err(invalid)
        }
    }
}

impl fmt::Display for Nil2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.rank == 2 {
            write!(f, "K({},{},{})", self.gen_moduli[0], self.gen_moduli[1], self.comm_moduli[0])
        } else if self.comm_moduli.windows(2).all(|w| w[0] == w[1]) && !self.comm_moduli.is_empty() {
            write!(f, "nil2({}; {}; {})", self.rank, join(&self.gen_moduli), self.comm_moduli[0])
        } else {
            write!(f, "nil2({}; {}; {})", self.rank, join(&self.gen_moduli), join(&self.comm_moduli))
        }
    }
}

/// The class-two product rule on raw exponent vectors, before reduction.
fn product_law<T>(pairs: &[(usize, usize)], a: &[T], c: &[T], b: &[T], d: &[T]) -> (Vec<T>, Vec<T>)
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let gens = a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
    let comms = pairs
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| c[p].clone() + d[p].clone() - a[j].clone() * b[i].clone())
        .collect();
    (gens, comms)
}

fn reduce_big(v: &mut BigInt, modulus: u64) {
    if modulus > 0 {
        *v = v.mod_floor(&BigInt::from(modulus));
    }
}

fn reduce_i64(v: i64, modulus: u64) -> i64 {
    if modulus > 0 {
        v.rem_euclid(modulus as i64)
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nil2Element {
    params: Nil2Params,
    gen_exps: Vec<BigInt>,
    comm_exps: Vec<BigInt>,
}

impl Nil2Element {
    pub fn identity(params: &Nil2Params) -> Self {
        Nil2Element {
            params: params.clone(),
            gen_exps: vec![BigInt::zero(); params.rank],
            comm_exps: vec![BigInt::zero(); params.comm_moduli.len()],
        }
    }

    /// Builds an element from raw exponents, reducing them canonically.
    pub fn new(params: &Nil2Params, gen_exps: Vec<BigInt>, comm_exps: Vec<BigInt>) -> Result<Self> {
        if gen_exps.len() != params.rank || comm_exps.len() != params.comm_moduli.len() {
            return Err(Error::InvalidParams("exponent vector lengths do not match the rank".into()));
        }
        let mut e = Nil2Element {
            params: params.clone(),
            gen_exps,
            comm_exps,
        };
        e.canonicalize();
        Ok(e)
    }

    /// Rank-two convenience: the element `x^a y^b [x,y]^c`.
    pub fn triple(params: &Nil2Params, a: i64, b: i64, c: i64) -> Result<Self> {
        if params.rank != 2 {
            return Err(Error::WrongRank {
                expected: 2,
                got: params.rank,
            });
        }
        Nil2Element::new(params, vec![a.into(), b.into()], vec![c.into()])
    }

    pub fn generator(params: &Nil2Params, i: usize) -> Self {
        let mut e = Nil2Element::identity(params);
        e.gen_exps[i] = BigInt::one();
        e.canonicalize();
        e
    }

    /// `[zi, zj]` for `i < j`.
    pub fn basic_commutator(params: &Nil2Params, i: usize, j: usize) -> Self {
        let mut e = Nil2Element::identity(params);
        e.comm_exps[params.pair_index(i, j)] = BigInt::one();
        e.canonicalize();
        e
    }

    fn canonicalize(&mut self) {
        for (v, &m) in self.gen_exps.iter_mut().zip(&self.params.gen_moduli) {
            reduce_big(v, m);
        }
        for (v, &m) in self.comm_exps.iter_mut().zip(&self.params.comm_moduli) {
            reduce_big(v, m);
        }
    }

    pub fn params(&self) -> &Nil2Params {
        &self.params
    }

    pub fn gen_exps(&self) -> &[BigInt] {
        &self.gen_exps
    }

    pub fn comm_exps(&self) -> &[BigInt] {
        &self.comm_exps
    }

    /// Exponent of `[zi, zj]`.
    pub fn comm_exp(&self, i: usize, j: usize) -> &BigInt {
        &self.comm_exps[self.params.pair_index(i, j)]
    }

    pub fn is_identity(&self) -> bool {
        self.gen_exps.iter().chain(&self.comm_exps).all(Zero::is_zero)
    }

    fn same_params(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_params(other)?;
        let (gen_exps, comm_exps) = product_law(
            &pairs(self.params.rank),
            &self.gen_exps,
            &self.comm_exps,
            &other.gen_exps,
            &other.comm_exps,
        );
        let mut e = Nil2Element {
            params: self.params.clone(),
            gen_exps,
            comm_exps,
        };
        e.canonicalize();
        Ok(e)
    }

    pub fn inv(&self) -> Self {
        let mut gen_exps: Vec<BigInt> = self.gen_exps.iter().map(|v| -v).collect();
        for (v, &m) in gen_exps.iter_mut().zip(&self.params.gen_moduli) {
            reduce_big(v, m);
        }
        // g * h = e forces c_h = -c_g + a_j(g) * a_i(h)
        let comm_exps = pairs(self.params.rank)
            .iter()
            .enumerate()
            .map(|(p, &(i, j))| -&self.comm_exps[p] + &self.gen_exps[j] * &gen_exps[i])
            .collect();
        let mut e = Nil2Element {
            params: self.params.clone(),
            gen_exps,
            comm_exps,
        };
        e.canonicalize();
        e
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Nil2Element::identity(&self.params);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).expect("same params");
            }
            sq = sq.mul(&sq).expect("same params");
            e >>= 1;
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_params(other)?;
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ba.inv().mul(&ab)
    }

    /// Least `n >= 1` with `g^n = e`, or 0 for infinite order.
    pub fn order(&self) -> u64 {
        let coords = self
            .gen_exps
            .iter()
            .zip(&self.params.gen_moduli)
            .chain(self.comm_exps.iter().zip(&self.params.comm_moduli));
        let mut bound: u128 = 1;
        for (v, &m) in coords {
            if m == 0 {
                if !v.is_zero() {
                    return 0;
                }
            } else {
                bound = bound.saturating_mul(m as u128);
            }
        }
        let mut p = self.clone();
        let mut n: u64 = 1;
        while !p.is_identity() {
            p = p.mul(self).expect("same params");
            n += 1;
            debug_assert!((n as u128) <= bound);
        }
        n
    }

    /// Image under the endomorphism fixing the generators in `keep` and
    /// sending every other generator to the identity.
    pub fn kill_subset(&self, keep: &[usize]) -> Self {
        let mut e = self.clone();
        for i in 0..self.params.rank {
            if !keep.contains(&i) {
                e.gen_exps[i] = BigInt::zero();
            }
        }
        for (p, (i, j)) in pairs(self.params.rank).into_iter().enumerate() {
            if !keep.contains(&i) || !keep.contains(&j) {
                e.comm_exps[p] = BigInt::zero();
            }
        }
        e
    }

    /// Membership in `<x^p, y^p>` for a rank-two group: `p | a`, `p | b`
    /// and `p^2 | c` on canonical exponents.
    pub fn member_subgroup_p(&self, p: u64) -> Result<bool> {
        if self.params.rank != 2 {
            return Err(Error::WrongRank {
                expected: 2,
                got: self.params.rank,
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p_big = BigInt::from(p);
        let p2 = &p_big * &p_big;
        Ok(self.gen_exps.iter().all(|a| a.is_multiple_of(&p_big)) && self.comm_exps[0].is_multiple_of(&p2))
    }

    fn small_exps(&self) -> Option<Vec<i64>> {
        self.gen_exps.iter().chain(&self.comm_exps).map(|v| v.to_i64()).collect()
    }
}

impl fmt::Display for Nil2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gen_exps.iter().map(|v| v.to_string()).collect();
        let c: Vec<String> = self.comm_exps.iter().map(|v| v.to_string()).collect();
        if self.params.rank == 2 {
            write!(f, "({},{})", g.join(","), c.join(","))
        } else {
            write!(f, "({}|{})", g.join(","), c.join(","))
        }
    }
}

/// Normal form of the image of `w`, reading generator names from
/// [`Nil2Params::generator_names`].
pub fn collect(w: &Word, params: &Nil2Params) -> Result<Nil2Element> {
    let names = params.generator_names();
    let mut acc = Nil2Element::identity(params);
    for (g, k) in w.syllables() {
        let i = names
            .iter()
            .position(|n| n == g.as_str())
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
        // z_i^k is already in normal form
        let mut step = Nil2Element::identity(params);
        step.gen_exps[i] = BigInt::from(*k);
        step.canonicalize();
        acc = acc.mul(&step)?;
    }
    Ok(acc)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Mixed-radix indexing of normal forms: generator exponents first, most
/// significant first, then commutator exponents.
fn radices(params: &Nil2Params) -> Vec<u64> {
    params.moduli().collect()
}

/// Index of `g` in [`realize_finite`]'s table.
pub fn element_index(g: &Nil2Element) -> Result<usize> {
    if !g.params.is_finite() {
        return Err(Error::InfiniteGroup(g.params.to_string()));
    }
    let exps = g.small_exps().expect("finite moduli keep exponents small");
    Ok(exps
        .iter()
        .zip(radices(&g.params))
        .fold(0usize, |acc, (&e, r)| acc * r as usize + e as usize))
}

/// Element at `index` of [`realize_finite`]'s table.
pub fn element_at(params: &Nil2Params, mut index: usize) -> Result<Nil2Element> {
    if !params.is_finite() {
        return Err(Error::InfiniteGroup(params.to_string()));
    }
    let r = radices(params);
    let mut exps = vec![0i64; r.len()];
    for (slot, &m) in exps.iter_mut().zip(&r).rev() {
        *slot = (index % m as usize) as i64;
        index /= m as usize;
    }
    let (g, c) = exps.split_at(params.rank);
    Nil2Element::new(
        params,
        g.iter().map(|&v| v.into()).collect(),
        c.iter().map(|&v| v.into()).collect(),
    )
}

/// Cayley table over all normal forms, identity at index 0, generators
/// `z1..zm` designated, and the defining relators attached.
pub fn realize_finite(params: &Nil2Params) -> Result<FiniteGroup> {
    for (idx, m) in params.moduli().enumerate() {
        if m == 0 {
            let what = if idx < params.rank {
                format!("generator {} of {params}", idx + 1)
            } else {
                format!("a commutator of {params}")
            };
            return Err(Error::InfiniteGroup(what));
        }
    }
    let order = params.group_order().expect("finite");
    if order > MAX_REALIZED_ORDER as u128 {
        return Err(Error::Refused(format!("order {order} exceeds {MAX_REALIZED_ORDER}")));
    }
    let n = order as usize;
    let r = radices(params);
    let m = params.rank;
    let ps = pairs(m);
    let decode = |mut idx: usize| {
        let mut exps = vec![0i64; r.len()];
        for (slot, &md) in exps.iter_mut().zip(&r).rev() {
            *slot = (idx % md as usize) as i64;
            idx /= md as usize;
        }
        exps
    };
    let all: Vec<Vec<i64>> = (0..n).map(decode).collect();
    let mut table = Vec::with_capacity(n * n);
    for u in &all {
        for v in &all {
            let (g, c) = product_law(&ps, &u[..m], &u[m..], &v[..m], &v[m..]);
            let idx = g
                .iter()
                .zip(&params.gen_moduli)
                .map(|(&e, &md)| (reduce_i64(e, md), md))
                .chain(c.iter().zip(&params.comm_moduli).map(|(&e, &md)| (reduce_i64(e, md), md)))
                .fold(0usize, |acc, (e, md)| acc * md as usize + e as usize);
            table.push(idx as u32);
        }
    }
    let names = all
        .iter()
        .map(|e| {
            let g: Vec<String> = e[..m].iter().map(|v| v.to_string()).collect();
            let c: Vec<String> = e[m..].iter().map(|v| v.to_string()).collect();
            if m == 2 {
                format!("({},{})", g.join(","), c.join(","))
            } else {
                format!("({}|{})", g.join(","), c.join(","))
            }
        })
        .collect();
    let gens: Vec<usize> = (0..m)
        .map(|i| element_index(&Nil2Element::generator(params, i)).expect("finite"))
        .collect();

    let gw = |i: usize| Word::gen(&Presentation::generator_name(i));
    let mut relators = Vec::new();
    for i in 0..m {
        relators.push(gw(i).pow(params.gen_moduli[i] as i64));
    }
    for (p, &(i, j)) in ps.iter().enumerate() {
        relators.push(gw(i).commutator(&gw(j)).pow(params.comm_moduli[p] as i64));
    }
    for &(i, j) in &ps {
        for l in 0..m {
            relators.push(gw(i).commutator(&gw(j)).commutator(&gw(l)));
        }
    }
    let pres = Presentation::new(m, relators, Some(params.clone()))?;
    FiniteGroup::from_flat_unchecked(n, table)?
        .with_names(names)?
        .with_generators(gens)?
        .with_presentation(pres)
}

/// 3x3 upper unitriangular matrices over `Z/n`, indexed by
/// `(a, b, c) -> a*n^2 + b*n + c` where `a`, `b`, `c` are the (1,2), (2,3)
/// and (1,3) entries. `x` has a 1 at (1,2), `y` a 1 at (2,3).
pub fn heisenberg_oracle(n: u64) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::Precondition("modulus must be at least 1".into()));
    }
    let order = n.checked_pow(3).filter(|&o| o <= MAX_REALIZED_ORDER).ok_or_else(|| {
        Error::Refused(format!("Heisenberg group mod {n} is too large"))
    })? as usize;
    let nn = n as usize;
    type Mat = [[u64; 3]; 3];
    let to_mat = |idx: usize| -> Mat {
        let (a, b, c) = ((idx / (nn * nn)) as u64, ((idx / nn) % nn) as u64, (idx % nn) as u64);
        [[1, a, c], [0, 1, b], [0, 0, 1]]
    };
    let matmul = |p: &Mat, q: &Mat| -> Mat {
        let mut r = [[0u64; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| p[i][k] * q[k][j]).sum::<u64>() % n;
            }
        }
        r
    };
    let to_idx = |m: &Mat| -> usize {
        debug_assert!(m[0][0] % n == 1 % n && m[1][0] == 0 && m[2][0] == 0 && m[2][1] == 0);
        (m[0][1] as usize) * nn * nn + (m[1][2] as usize) * nn + m[0][2] as usize
    };
    let mats: Vec<Mat> = (0..order).map(to_mat).collect();
    let mut table = Vec::with_capacity(order * order);
    for p in &mats {
        for q in &mats {
            table.push(to_idx(&matmul(p, q)) as u32);
        }
    }
    let names = mats
        .iter()
        .map(|m| format!("M({},{},{})", m[0][1], m[1][2], m[0][2]))
        .collect();
    let x = to_idx(&[[1, 1 % n, 0], [0, 1, 0], [0, 0, 1]]);
    let y = to_idx(&[[1, 0, 0], [0, 1, 1 % n], [0, 0, 1]]);
    FiniteGroup::from_flat_unchecked(order, table)?
        .with_names(names)?
        .with_generators(vec![x, y])
}

use domkit::nil2::{collect, element_at, element_index, heisenberg_oracle, realize_finite};
use domkit::word::random_word;
use domkit::{GeneratorId, Nil2Element, Nil2Params, Word};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Upper unitriangular 3x3 integer matrix as `(m12, m23, m13)`.
type Mat = (i64, i64, i64);

fn mat_mul(p: Mat, q: Mat) -> Mat {
    (p.0 + q.0, p.1 + q.1, p.2 + q.2 + p.0 * q.1)
}

fn mat_pow(p: Mat, n: i64) -> Mat {
    let base = if n >= 0 { p } else { (-p.0, -p.1, -p.2 + p.0 * p.1) };
    (0..n.abs()).fold((0, 0, 0), |acc, _| mat_mul(acc, base))
}

/// Evaluates a word in the integer Heisenberg group.
fn mat_eval(w: &Word) -> Mat {
    w.syllables().iter().fold((0, 0, 0), |acc, (g, k)| {
        let base = match g.as_str() {
            "x" => (1, 0, 0),
            "y" => (0, 1, 0),
            _ => panic!("unexpected generator"),
        };
        mat_mul(acc, mat_pow(base, *k))
    })
}

/// `x^a y^b [x,y]^c` corresponds to the matrix `(a, b, ab + c)`.
fn triple_of(m: Mat) -> (i64, i64, i64) {
    (m.0, m.1, m.2 - m.0 * m.1)
}

fn big(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|b| i64::try_from(b).unwrap()).collect()
}

#[test]
fn collect_matches_integer_matrices() {
    let k = Nil2Params::k(0, 0, 0).unwrap();
    let gens = [GeneratorId::new("x").unwrap(), GeneratorId::new("y").unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let w = random_word(&mut rng, &gens, 12, 3);
        let e = collect(&w, &k).unwrap();
        let (a, b, c) = triple_of(mat_eval(&w));
        assert_eq!(big(e.gen_exps()), vec![a, b], "{w}");
        assert_eq!(big(e.comm_exps()), vec![c], "{w}");
    }
}

#[test]
fn collect_is_a_homomorphism_on_random_words() {
    let k = Nil2Params::k(4, 4, 4).unwrap();
    let gens = [GeneratorId::new("x").unwrap(), GeneratorId::new("y").unwrap()];
    let x = Nil2Element::generator(&k, 0);
    let y = Nil2Element::generator(&k, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let w = random_word(&mut rng, &gens, 12, 3);
        let by_ops = w.syllables().iter().fold(Nil2Element::identity(&k), |acc, (g, n)| {
            let base = if g.as_str() == "x" { &x } else { &y };
            acc.mul(&base.pow(*n)).unwrap()
        });
        assert_eq!(collect(&w, &k).unwrap(), by_ops, "{w}");
        let v = random_word(&mut rng, &gens, 12, 3);
        assert_eq!(
            collect(&w.mul(&v), &k).unwrap(),
            collect(&w, &k).unwrap().mul(&collect(&v, &k).unwrap()).unwrap()
        );
    }
}

#[test]
fn worked_collections() {
    let k = Nil2Params::k(0, 0, 0).unwrap();
    let t = |s: &str| {
        let e = collect(&Word::parse(s).unwrap(), &k).unwrap();
        let mut v = big(e.gen_exps());
        v.extend(big(e.comm_exps()));
        v
    };
    assert_eq!(t("x y"), vec![1, 1, 0]);
    assert_eq!(t("y x"), vec![1, 1, -1]);
    assert_eq!(t("[x,y]^3 x"), vec![1, 0, 3]);
}

#[test]
fn kill_subset_is_an_endomorphism_of_k444() {
    let k = Nil2Params::k(4, 4, 4).unwrap();
    let all: Vec<Nil2Element> = (0..64).map(|i| element_at(&k, i).unwrap()).collect();
    for keep in [vec![], vec![0], vec![1], vec![0, 1]] {
        for a in &all {
            let ka = a.kill_subset(&keep);
            assert_eq!(ka.kill_subset(&keep), ka);
            for b in &all {
                assert_eq!(
                    a.mul(b).unwrap().kill_subset(&keep),
                    ka.mul(&b.kill_subset(&keep)).unwrap()
                );
            }
        }
    }
    for a in &all {
        assert!(a.kill_subset(&[]).is_identity());
        assert_eq!(&a.kill_subset(&[0, 1]), a);
    }
}

#[test]
fn realization_is_isomorphic_to_the_matrix_group() {
    for n in [2u64, 3, 4] {
        let k = Nil2Params::k(n, n, n).unwrap();
        let g = realize_finite(&k).unwrap();
        let h = heisenberg_oracle(n).unwrap();
        let ni = n as i64;
        let to_h = |idx: usize| {
            let e = element_at(&k, idx).unwrap();
            let v = big(e.gen_exps());
            let c = big(e.comm_exps())[0];
            let (a, b) = (v[0], v[1]);
            let m13 = (a * b + c).rem_euclid(ni);
            (a * ni * ni + b * ni + m13) as usize
        };
        let image: Vec<usize> = (0..g.order()).map(to_h).collect();
        let mut seen = image.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), g.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(image[g.mul(a, b)], h.mul(image[a], image[b]));
            }
        }
    }
}

#[test]
fn element_index_roundtrip_k942() {
    let k = Nil2Params::k(4, 2, 2).unwrap();
    let g = realize_finite(&k).unwrap();
    assert_eq!(g.order(), 16);
    for i in 0..16 {
        assert_eq!(element_index(&element_at(&k, i).unwrap()).unwrap(), i);
    }
}

//! Values with no closed form to quote, each compared with an oracle computed here.

use std::collections::BTreeSet;

use iqgroth::dercat::knit_zq;
use iqgroth::groth::Groth;
use iqgroth::inks::{DimPair, Inks};
use iqgroth::oracle::Oracle;
use iqgroth::rootdata::{preset, standard_zoo, DynkinType, IQuiver};

/// `<x,y> = Σ x_i y_i − Σ_{i→j} x_i y_j`, evaluated term by term.
fn euler_by_sum(q: &IQuiver, x: &[i64], y: &[i64]) -> i64 {
    let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    diag - q.arrows().iter().map(|&(i, j)| x[i] * y[j]).sum::<i64>()
}

/// Positive roots by closing the simple roots under simple reflections.
fn roots_by_reflection(q: &IQuiver) -> BTreeSet<Vec<i64>> {
    let n = q.n();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in q.arrows() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut seen: BTreeSet<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    let mut todo: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(r) = todo.pop() {
        for i in 0..n {
            // s_i(r) = r − (α_i^∨, r) α_i
            let pair: i64 = 2 * r[i] - (0..n).filter(|&j| adj[i][j]).map(|j| r[j]).sum::<i64>();
            let mut s = r.clone();
            s[i] -= pair;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                todo.push(s);
            }
        }
    }
    seen
}

#[test]
fn euler_form_on_reflected_a3() {
    let q = preset("a3-flip").unwrap();
    let (x, y) = (vec![1, 1, 0], vec![0, 0, 1]);
    assert_eq!(euler_by_sum(&q, &x, &y), 0);
    assert_eq!(q.euler_form(&x, &y).unwrap(), 0);
    for (_, q) in standard_zoo() {
        for x in q.positive_roots() {
            for y in q.positive_roots() {
                assert_eq!(q.euler_form(&x, &y).unwrap(), euler_by_sum(&q, &x, &y));
            }
        }
    }
}

#[test]
fn root_systems_by_reflection_closure() {
    for (ty, n, count) in [(DynkinType::D, 4, 12), (DynkinType::E, 8, 120), (DynkinType::E, 6, 36), (DynkinType::E, 7, 63), (DynkinType::A, 5, 15), (DynkinType::D, 6, 30)] {
        let q = IQuiver::linear(ty, n).unwrap();
        let mine = roots_by_reflection(&q);
        assert_eq!(mine.len(), count);
        let theirs: BTreeSet<Vec<i64>> = q.positive_roots().into_iter().collect();
        assert_eq!(mine, theirs);
    }
}

#[test]
fn sigma_rho_squared_shifts_by_h() {
    for name in ["a3", "a3-flip", "d4-swap", "d5", "e6-flip", "e7"] {
        let q = preset(name).unwrap();
        let knit = knit_zq(&q);
        let h = q.coxeter_number() as i64;
        let (lo, hi) = knit.window();
        let band: Vec<_> = knit.vertices().into_iter().filter(|v| v.1 >= lo && v.1 + h <= hi).collect();
        assert!(!band.is_empty());
        for v in band {
            let once = knit.sigma_rho_vertex(v).unwrap();
            let twice = knit.sigma_rho_vertex(once).unwrap();
            assert_eq!(twice, (v.0, v.1 + h), "{name} at {v:?}");
        }
    }
}

#[test]
fn indecomposables_are_bricks() {
    for name in ["a4", "a4-alt", "d4", "d4-alt"] {
        let q = preset(name).unwrap();
        let o = Oracle::build(&q, 3).unwrap();
        for x in o.reps().values() {
            assert_eq!(o.hom_rank(x, x), 1);
        }
    }
}

#[test]
fn split_a1_values() {
    let q = preset("a1").unwrap();
    let k = Inks::new(&q).unwrap();
    let s = k.simple(0);
    assert_eq!(k.tau(s), s);
    assert_eq!(k.cq(&k.one_v(s)).unwrap()[s], 2);
    assert!(!k.is_l_dominant(&DimPair::new(k.one_v(s), k.one_w(0))).unwrap());
    assert_eq!(k.wi(0), vec![2]);
    assert!(k.slack(&k.canonical_v(0)).unwrap().iter().all(|&x| x == 0));
}

#[test]
fn canonical_vectors_on_injectives() {
    for (name, q) in standard_zoo().into_iter().filter(|(_, q)| q.n() <= 4) {
        let k = Inks::new(&q).unwrap();
        let o = Oracle::build(&q, 5).unwrap();
        let n = q.n();
        for i in 0..n {
            let s = o.rep(&k.modules()[k.simple(i)]).unwrap();
            for j in 0..n {
                let inj = o.rep(&k.modules()[k.injective(j)]).unwrap();
                let inj_r = o.rep(&k.modules()[k.injective(q.rho(j))]).unwrap();
                let by_oracle = o.hom_rank(s, inj) + o.ext1_rank(s, inj_r);
                assert_eq!(by_oracle, usize::from(i == j), "{name}");
                assert_eq!(k.vi(i)[k.injective(j)], i64::from(i == j), "{name}");
            }
        }
        for &(i, j) in q.arrows() {
            let vij = k.canonical_vij(i, j).unwrap();
            for l in 0..n {
                assert_eq!(vij.v[k.injective(l)], 0, "{name}");
            }
            assert_eq!(o.alpha_star_rank(i, j, &k.modules()[k.injective(i)]).unwrap(), 1, "{name}");
            assert_eq!(o.vij(&k, i, j).unwrap(), vij.v, "{name}");
        }
    }
}

#[test]
fn decomposition_of_canonical_pairs() {
    for (name, q) in standard_zoo() {
        let k = Inks::new(&q).unwrap();
        let z = DimPair::new(k.zero_v(), k.zero_w());
        for i in 0..q.n() {
            let c = k.canonical_v(i);
            assert_eq!(k.decompose_pair(&c).unwrap(), (z.clone(), c.clone()), "{name}");
        }
        for &(i, j) in q.arrows() {
            let p = k.canonical_vij(i, j).unwrap();
            assert_eq!(k.decompose_pair(&p).unwrap(), (p.clone(), z.clone()), "{name}");
        }
    }
}

#[test]
fn two_basis_products_at_arrow_grades() {
    for name in ["a2", "a3", "a3-flip", "d4"] {
        let q = preset(name).unwrap();
        let g = Groth::standard(&q).unwrap();
        for &(i, j) in q.arrows() {
            let w = g.inks().w_of(&[i, j]);
            assert_eq!(g.filtration_basis(&w).unwrap().len(), 2);
            assert_eq!(g.pairs(&w).unwrap().len(), 2);
        }
    }
}

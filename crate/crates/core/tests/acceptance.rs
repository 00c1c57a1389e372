//! The acceptance suite: one line per criterion with its wall time and budget.

use std::time::{Duration, Instant};

use iqgroth::cli::table1_expected;
use iqgroth::dercat::{knit_zq, TauPower};
use iqgroth::fixtures::{self, FixtureResult};
use iqgroth::groth::{GElement, Groth};
use iqgroth::inks::Inks;
use iqgroth::oracle::crosscheck;
use iqgroth::rootdata::{preset, standard_zoo, unit, DynkinType, IQuiver};

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_fixtures(res: &[FixtureResult]) -> Outcome {
    let bad: Vec<String> = res.iter().filter(|r| !r.pass).map(|r| format!("{} {}: {}", r.group, r.id, r.detail)).collect();
    Outcome {
        pass: bad.is_empty() && !res.is_empty(),
        detail: if bad.is_empty() { format!("{} checks", res.len()) } else { format!("{} failing, first: {}", bad.len(), bad[0]) },
    }
}

fn zoo() -> Vec<(String, IQuiver)> {
    standard_zoo()
}

fn presets(names: &[&str]) -> Vec<(String, IQuiver)> {
    names.iter().map(|n| (n.to_string(), preset(n).expect("preset"))).collect()
}

fn all_dynkin() -> Vec<IQuiver> {
    let mut out = Vec::new();
    for (ty, lo) in [(DynkinType::A, 1), (DynkinType::D, 4), (DynkinType::E, 6)] {
        for n in lo..=8 {
            out.push(IQuiver::linear(ty, n).unwrap());
            out.push(IQuiver::alternating(ty, n).unwrap());
        }
    }
    out
}

fn cartan_euler() -> Outcome {
    let mut checks = 0;
    for q in all_dynkin() {
        let n = q.n();
        // Cartan matrix straight from the underlying graph.
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        for &(a, b) in q.arrows() {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (unit(n, i), unit(n, j));
                let sym = q.euler_form(&ei, &ej).unwrap() + q.euler_form(&ej, &ei).unwrap();
                if sym != c[i][j] || q.cartan()[i][j] != c[i][j] {
                    return Outcome { pass: false, detail: format!("{} at ({},{})", q.label(), i + 1, j + 1) };
                }
                checks += 1;
            }
        }
    }
    Outcome { pass: true, detail: format!("{checks} entries") }
}

fn hom_part(slack: bool) -> Outcome {
    let mut res = Vec::new();
    for (_, q) in zoo() {
        let k = Inks::new(&q).unwrap();
        res.extend(fixtures::hom_calculus(&k).unwrap().into_iter().filter(|r| r.id.starts_with("slack") == slack));
    }
    from_fixtures(&res)
}

fn pairs() -> Outcome {
    let mut res = Vec::new();
    for (_, q) in zoo() {
        res.extend(fixtures::pair_classes(&Inks::new(&q).unwrap()).unwrap());
    }
    let covered = |a: &str| res.iter().filter(|r| r.anchor.starts_with(a)).count();
    let mut o = from_fixtures(&res);
    let cover = [
        covered("pairs at w^i:"),
        covered("pairs at w^{ij}:"),
        covered("σ*w^{ij}"),
        covered("pairs at w^{iϱ(i)j}"),
        covered("pairs at w^{ijj}, ϱj = j"),
        covered("pairs at w^{ijj}, ϱj != j"),
    ];
    if cover.iter().any(|&c| c == 0) {
        o.pass = false;
    }
    o.detail = format!("{} (per family {:?})", o.detail, cover);
    o
}

fn dform() -> Outcome {
    let mut res = Vec::new();
    for (_, q) in zoo() {
        res.extend(fixtures::dform_table(&Inks::new(&q).unwrap()).unwrap());
    }
    from_fixtures(&res)
}

/// Rank-two tables plus the grades they touch; returns the computed products.
fn products() -> (Outcome, Vec<GElement>) {
    let mut res = Vec::new();
    let mut prods = Vec::new();
    for (name, q) in presets(&["a2", "a2-alt", "a3-flip", "a3-flip-out"]) {
        let g = Groth::standard(&q).unwrap();
        let (r, p) = fixtures::product_tables(&g, false).unwrap();
        res.extend(r.into_iter().map(|mut x| {
            x.id = format!("{name}:{}", x.id);
            x
        }));
        prods.extend(p);
    }
    let count = |q: &str, pat: &str| res.iter().filter(|r| r.id.starts_with(q) && r.id.contains(pat)).count();
    // a2: ten split products; a3-flip: ten per arrow plus the two ϱ-pair products.
    let cover = [count("a2:", "1>2"), count("a3-flip:", ">2:"), count("a3-flip:", "L1L3") + count("a3-flip:", "L3L1"), count("a3-flip-out:", "L1L3")];
    let mut o = from_fixtures(&res);
    if cover != [10, 20, 2, 1] {
        o.pass = false;
    }
    o.detail = format!("{} (coverage {:?})", o.detail, cover);
    (o, prods)
}

fn relation_quivers() -> Vec<(String, IQuiver)> {
    presets(&["a1", "a2", "a2-alt", "a3", "a3-alt", "a3-flip", "a3-flip-out", "a4", "a4-alt", "d4"])
}

fn relations() -> (Outcome, Vec<GElement>) {
    let mut res = Vec::new();
    let mut prods = Vec::new();
    for (name, q) in relation_quivers() {
        let g = Groth::standard(&q).unwrap();
        res.extend(fixtures::relation_suite(&g).into_iter().map(|mut x| {
            x.id = format!("{name}:{}", x.id);
            x
        }));
        res.extend(fixtures::relation_controls(&g));
        prods.extend(fixtures::relation_products(&g).unwrap());
    }
    let kinds = ["iserre(", "BB-antisym(", "BB-comm(", "serre3(", "iserre-without-k("];
    let cover: Vec<usize> = kinds.iter().map(|k| res.iter().filter(|r| r.id.contains(k)).count()).collect();
    let mut o = from_fixtures(&res);
    if cover.iter().any(|&c| c == 0) {
        o.pass = false;
    }
    o.detail = format!("{} (iserre, BB-antisym, BB-comm, serre3, control: {:?})", o.detail, cover);
    (o, prods)
}

fn basis() -> Outcome {
    let mut res = Vec::new();
    for (_, q) in presets(&["a2", "a3-flip"]) {
        res.extend(fixtures::basis_checks(&Groth::standard(&q).unwrap(), 3).unwrap());
    }
    from_fixtures(&res)
}

fn positivity(prods: &[GElement]) -> Outcome {
    let bad = prods.iter().filter(|p| !p.is_positive()).count();
    let constants: usize = prods.iter().map(|p| p.len()).sum();
    Outcome { pass: bad == 0 && !prods.is_empty(), detail: format!("{} products, {} structure constants, {} not positive", prods.len(), constants, bad) }
}

fn table1() -> Outcome {
    let mut qs = all_dynkin();
    for n in ["a3-flip", "a5-flip", "a5-flip-alt", "a7-flip", "d4-swap", "d5-swap", "e6-flip"] {
        qs.push(preset(n).unwrap());
    }
    let mut matched = 0;
    let mut dn = Vec::new();
    for q in &qs {
        let knit = knit_zq(q);
        if !knit.sigma_rho_squared_is_tau_h().unwrap() {
            return Outcome { pass: false, detail: format!("(Σϱ̂)² != τ^-h on {}", q.label()) };
        }
        let order = knit.table1_order().unwrap();
        if let Some(m) = table1_expected(q) {
            if order != TauPower::Power(m) {
                return Outcome { pass: false, detail: format!("{}: {:?}, expected τ^-{m}", q.label(), order) };
            }
            matched += 1;
        }
        if q.ty() == DynkinType::D && q.is_split() && q.arrows().iter().all(|&(a, b)| a < b) {
            dn.push(match order {
                TauPower::Power(m) => format!("D{}: τ^-{m}", q.n()),
                TauPower::NotATauPower { .. } => format!("D{}: none", q.n()),
            });
        }
    }
    Outcome { pass: matched >= 5, detail: format!("{} iquivers, {matched} cyclic rows matched; {}", qs.len(), dn.join(", ")) }
}

fn oracle() -> Outcome {
    let mut checks = 0;
    for (name, q) in presets(&["a1", "a2", "a2-alt", "a3", "a3-alt", "a3-flip", "a3-flip-out", "a4", "a4-alt", "d4", "d4-alt", "d4-swap"]) {
        let r = crosscheck(&q, 1).unwrap();
        if !r.ok() {
            return Outcome { pass: false, detail: format!("{name}: {:?}", r.mismatches) };
        }
        checks += r.checks;
    }
    Outcome { pass: true, detail: format!("{checks} comparisons, seed 1") }
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut record = |n: usize, name: &str, budget: u64, t: Instant, o: Outcome| {
        let el = t.elapsed();
        let pass = o.pass && el <= Duration::from_secs(budget);
        let line = format!("[{}] {n:>2} {name:<24} {:>9.3}s / {budget}s  {}", if pass { "PASS" } else { "FAIL" }, el.as_secs_f64(), o.detail);
        println!("{line}");
        lines.push((pass, line));
    };
    let t = Instant::now();
    record(1, "cartan-euler", 1, t, cartan_euler());
    let t = Instant::now();
    record(2, "hom-calculus", 5, t, hom_part(false));
    let t = Instant::now();
    record(3, "canonical-slack", 5, t, hom_part(true));
    let t = Instant::now();
    record(4, "pair-classification", 30, t, pairs());
    let t = Instant::now();
    record(5, "d-form", 5, t, dform());
    let t = Instant::now();
    let (o, mut prods) = products();
    record(6, "product-tables", 60, t, o);
    let t = Instant::now();
    let (o, rp) = relations();
    record(7, "relations", 120, t, o);
    prods.extend(rp);
    let t = Instant::now();
    record(8, "filtration-basis", 30, t, basis());
    let t = Instant::now();
    record(9, "positivity", 5, t, positivity(&prods));
    let t = Instant::now();
    record(10, "functor-orders", 30, t, table1());
    let t = Instant::now();
    record(11, "oracle-crosscheck", 120, t, oracle());
    let failed: Vec<&String> = lines.iter().filter(|(p, _)| !p).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n"));
}

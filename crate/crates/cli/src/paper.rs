//! Reference fixtures run by `verify-paper`. Each fixture recomputes a known
//! value with the library and compares it against a small direct computation.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use msset::anodyne::{has_rlp, make_generator, to_terminal, Family, Generator, GeneratorSpec};
use msset::bisimplicial::{slice, table_to_marked, Axis};
use msset::catkit::{functor_category, nerve, FiniteCategory};
use msset::classification::{
    classify_nerve, i1_star, induced_map, marked_classification, p1_star, t_lower, tables_equal,
};
use msset::invariants::{column_verdict, contractibility_table, homology, homology_table, pi1_presentation, EquivalenceStatus, GroupVerdict, Status};
use msset::marked::{count_marked_maps, enumerate_marked_maps, MarkedSimplicialSet};
use msset::sset::{boundary, count_maps, find_isomorphism, horn, j_truncated, nondegenerate_counts, product, pushout, simplex};
use msset::{Presentation, Simplex, SimplicialMap, SimplicialSet, Surjection, Table};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: Json,
}

type Fixture = fn(u64) -> (bool, Json);

const FIXTURES: [(&str, Fixture); 9] = [
    ("classification counts of the sharp interval", classification_counts),
    ("flat interval classifies to a constant diagram", flat_collapse),
    ("columns of the sharp interval are contractible", localization_columns),
    ("columns of marked nerves are nerves of groupoid cores", groupoid_cores),
    ("lifting against generators of marked bisimplicial anodynes", rlp_fixtures),
    ("adjunction bijections over a random corpus", adjunctions),
    ("product engine and simplicial identities", product_engine),
    ("homology and fundamental groups", homology_engine),
    ("flat interval does not localize to a point", negative_control),
];

/// Runs every fixture on `threads` workers; results come back in order.
pub fn verify_paper(seed: u64, threads: usize) -> Vec<Criterion> {
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Criterion>> = vec![None; FIXTURES.len()];
    let done = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, FIXTURES.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some((name, f)) = FIXTURES.get(i) else { break };
                let (pass, details) = f(seed);
                done.lock().unwrap()[i] = Some(Criterion { id: i + 1, name, pass, details });
            });
        }
    });
    slots.into_iter().map(|c| c.expect("every fixture ran")).collect()
}

/// Number of monotone maps `[n] × [m] -> [1]`, by enumerating all functions.
pub fn monotone_grid_maps(n: usize, m: usize) -> usize {
    let cells = (n + 1) * (m + 1);
    (0u32..1 << cells)
        .filter(|f| {
            let at = |i: usize, j: usize| (f >> (i * (m + 1) + j)) & 1;
            (0..=n).all(|i| (0..=m).all(|j| (i == n || at(i, j) <= at(i + 1, j)) && (j == m || at(i, j) <= at(i, j + 1))))
        })
        .count()
}

fn sharp(x: SimplicialSet) -> MarkedSimplicialSet {
    MarkedSimplicialSet::sharp(Arc::new(x))
}

fn flat(x: SimplicialSet) -> MarkedSimplicialSet {
    MarkedSimplicialSet::flat(Arc::new(x))
}

fn classification_counts(_: u64) -> (bool, Json) {
    let d = marked_classification(&sharp(simplex(1)), [3, 3]).unwrap();
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 0..=3 {
        for m in 0..=3 {
            let got = d.table().count([n, m]).unwrap();
            let want = monotone_grid_maps(n, m);
            pass &= got == want;
            rows.push(json!({ "n": n, "m": m, "count": got, "oracle": want }));
        }
    }
    (pass, json!({ "bidegrees": rows }))
}

fn flat_collapse(_: u64) -> (bool, Json) {
    let d = marked_classification(&flat(simplex(1)), [3, 3]).unwrap();
    let mut pass = true;
    let mut rows = Vec::new();
    for n in 0..=3 {
        // monotone maps [n] -> [1]
        let want = (0u32..1 << (n + 1)).filter(|f| (0..n).all(|i| (f >> i) & 1 <= (f >> (i + 1)) & 1)).count();
        let counts: Vec<usize> = (0..=3).map(|m| d.table().count([n, m]).unwrap()).collect();
        pass &= counts.iter().all(|&c| c == want) && want == n + 2;
        rows.push(json!({ "n": n, "counts": counts, "oracle": want }));
    }
    (pass, json!({ "columns": rows }))
}

fn localization_columns(_: u64) -> (bool, Json) {
    // qbound 4 so that homology is trusted through degree 3
    let d = marked_classification(&sharp(simplex(1)), [3, 4]).unwrap().assume_nerve(7).unwrap();
    let mut pass = true;
    let mut rows = Vec::new();
    for n in 0..=3 {
        let col = slice(d.table(), Axis::Column, n).unwrap();
        let c = contractibility_table(&col);
        let h = homology_table(&col, 3);
        let chain = nerve(&FiniteCategory::chain(n + 1), 4).presentation;
        let iso = find_isomorphism(&Arc::new(table_to_marked(&col).underlying.as_ref().clone()), &chain, None).unwrap().is_some();
        let ok = c.status == Status::Holds && h.ranks() == [1, 0, 0, 0] && h.is_point() && iso;
        pass &= ok;
        rows.push(json!({ "n": n, "contractible": c.reason, "ranks": h.ranks(), "chain_isomorphism": iso }));
    }
    (pass, json!({ "columns": rows }))
}

fn commutative_square() -> FiniteCategory {
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    FiniteCategory::poset(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

fn isos(c: &FiniteCategory) -> Vec<bool> {
    (0..c.arrow_count() as u32).map(|f| c.is_isomorphism(f)).collect()
}

fn groupoid_cores(_: u64) -> (bool, Json) {
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, c, qb) in [("square", commutative_square(), 3), ("indiscrete(2)", FiniteCategory::indiscrete(2), 3)] {
        let (_, d) = classify_nerve(&c, &isos(&c), [3, qb]).unwrap();
        for n in 0..=3 {
            let col = table_to_marked(&slice(d.table(), Axis::Column, n).unwrap()).underlying;
            let core = functor_category(n, &c).category.core();
            let expected = nerve(&core, qb).presentation;
            let iso = find_isomorphism(&Arc::new(col.as_ref().clone()), &expected, None).unwrap().is_some();
            pass &= iso;
            rows.push(json!({ "category": name, "n": n, "qbound": qb, "objects": core.object_count(), "isomorphic": iso }));
        }
    }
    (pass, json!({ "columns": rows }))
}

fn lift_verdict(c: &FiniteCategory, weak: &[bool], spec: &GeneratorSpec) -> msset::anodyne::LiftVerdict {
    let Generator::Bisimplicial(i) = make_generator(spec).unwrap() else { unreachable!("bisimplicial family") };
    let (_, d) = classify_nerve(c, weak, i.target.max_degree()).unwrap();
    let (t, f) = to_terminal(d.table());
    has_rlp(d.table(), &t, &f, &i)
}

fn rlp_fixtures(_: u64) -> (bool, Json) {
    let c = FiniteCategory::indiscrete(2);
    let w = isos(&c);
    let mut specs = Vec::new();
    for n in 0..=3 {
        for m in 1..=4 - n {
            for k in 0..=m {
                specs.push(GeneratorSpec::new(Family::MbeA).n(n).m(m).k(k));
            }
        }
    }
    for n in 2..=4 {
        for m in 0..=4 - n {
            for k in 1..n {
                specs.push(GeneratorSpec::new(Family::MbeB).n(n).m(m).k(k));
            }
        }
    }
    for m in 0..=1 {
        specs.push(GeneratorSpec::new(Family::MbeD).m(m).d(3));
        specs.push(GeneratorSpec::new(Family::MbeE).m(m).d(3));
    }
    let mut pass = true;
    let mut squares = 0;
    for spec in &specs {
        let v = lift_verdict(&c, &w, spec);
        pass &= v.status == Status::Holds && v.exact;
        squares += v.squares;
    }
    let flat_marking = vec![false; c.arrow_count()];
    let neg = lift_verdict(&c, &flat_marking, &GeneratorSpec::new(Family::MbeD).m(0).d(3));
    pass &= neg.status == Status::Fails && neg.witness.is_some();
    (pass, json!({ "generators": specs.len(), "squares": squares, "flat_marking_mbe_D": neg.status }))
}

/// A random marked simplicial set with at most `limit` nondegenerate simplices:
/// disjoint unions of face-closed parts of simplices, sometimes with an edge
/// collapsed.
pub fn random_marked(rng: &mut ChaCha8Rng, limit: usize) -> MarkedSimplicialSet {
    let mut x = random_piece(rng, limit);
    while x.len() < limit && rng.gen_bool(0.4) {
        let y = random_piece(rng, limit - x.len());
        x = x.disjoint_union(&y);
    }
    let marked = (0..x.len() as u32).map(|g| x.degree(g) == [1] && rng.gen_bool(0.5)).collect();
    MarkedSimplicialSet::new(Arc::new(x), marked).unwrap()
}

fn random_piece(rng: &mut ChaCha8Rng, limit: usize) -> SimplicialSet {
    loop {
        let k = rng.gen_range(0..=3);
        let full = Arc::new(simplex(k));
        let seeds: Vec<u32> = (0..full.len() as u32).filter(|_| rng.gen_bool(0.5)).collect();
        let seeds = if seeds.is_empty() { vec![rng.gen_range(0..full.len() as u32)] } else { seeds };
        let keep = full.closure(seeds);
        let (mut x, _) = full.restrict(&keep).unwrap();
        let edges: Vec<u32> = (0..x.len() as u32).filter(|&g| x.degree(g) == [1]).collect();
        if !edges.is_empty() && rng.gen_bool(0.3) {
            x = collapse_edge(&x, *edges.choose(rng).unwrap());
        }
        if x.len() <= limit {
            return x;
        }
    }
}

fn collapse_edge(x: &SimplicialSet, edge: u32) -> SimplicialSet {
    let d1 = Arc::new(simplex(1));
    let point = Arc::new(simplex(0));
    let xa = Arc::new(x.clone());
    let e = Simplex::generator(edge, [1]);
    let v0 = Simplex::generator(0, [0]);
    let (into_x, to_point): (Vec<_>, Vec<_>) = d1
        .generators()
        .iter()
        .map(|g| match (g.degree[0], g.label.as_str()) {
            (1, _) => (e, Simplex::new(0, [Surjection::to_point(1)])),
            (_, "0") => (x.face(&e, 0, 1), v0),
            _ => (x.face(&e, 0, 0), v0),
        })
        .unzip();
    let f = SimplicialMap::new(d1.clone(), xa, into_x).unwrap();
    let g = SimplicialMap::new(d1, point, to_point).unwrap();
    pushout(&f, &g).unwrap().object.as_ref().clone()
}

fn adjunctions(seed: u64) -> (bool, Json) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus: Vec<MarkedSimplicialSet> = (0..50).map(|_| random_marked(&mut rng, 6)).collect();
    let mut pass = true;
    let mut hom_total = 0u64;
    for (i, x) in corpus.iter().enumerate() {
        let y = &corpus[(i + 1) % corpus.len()];
        let left = count_marked_maps(&MarkedSimplicialSet::flat(x.underlying.clone()), y);
        let right = count_maps(&x.underlying, &y.underlying);
        pass &= left == right;
        hom_total += left;
        let p = p1_star(x, [3, 3]);
        pass &= tables_equal(&i1_star(&p).unwrap(), &x.tabulate(3));
        pass &= tables_equal(&t_lower(&p), &x.tabulate(3));
    }
    let sizes: usize = corpus.iter().map(|x| x.underlying.len()).sum();
    (pass, json!({ "seed": seed, "instances": corpus.len(), "generators": sizes, "hom_total": hom_total }))
}

fn product_engine(_: u64) -> (bool, Json) {
    let sq = nondegenerate_counts(&product(&simplex(1), &simplex(1)));
    let prism = nondegenerate_counts(&product(&simplex(2), &simplex(1)));
    let mut fixtures: Vec<(String, SimplicialSet)> = Vec::new();
    for n in 0..=4 {
        fixtures.push((format!("simplex({n})"), simplex(n)));
        fixtures.push((format!("boundary({n})"), boundary(n)));
        for k in 0..=n {
            if n >= 1 {
                fixtures.push((format!("horn({n},{k})"), horn(n, k)));
            }
        }
    }
    fixtures.push(("jtrunc(4)".into(), j_truncated(4)));
    fixtures.push(("product(simplex(1),simplex(1))".into(), product(&simplex(1), &simplex(1))));
    fixtures.push(("product(simplex(2),simplex(1))".into(), product(&simplex(2), &simplex(1))));
    fixtures.push(("product(simplex(2),simplex(2))".into(), product(&simplex(2), &simplex(2))));
    let mut checked = 0;
    let mut pass = sq == [4, 5, 2] && prism.get(3) == Some(&3);
    for (_, x) in &fixtures {
        let ok = x.check_identities().is_ok() && Table::tabulate(x, [4], None).check_identities().is_ok();
        pass &= ok;
        checked += 1;
    }
    (pass, json!({ "square": sq, "prism": prism, "fixtures_checked": checked }))
}

fn homology_engine(_: u64) -> (bool, Json) {
    let show = |x: &Presentation<1>, top: usize| -> Vec<String> { homology(x, top).groups.iter().map(|g| g.to_string()).collect() };
    let s2 = show(&boundary(3), 2);
    let s0 = show(&boundary(1), 0);
    let points: Vec<bool> = (0..=4).map(|n| homology(&simplex(n), n).is_point()).collect();
    let circle = pi1_presentation(&boundary(2), 0).unwrap().verdict;
    let j2 = j_truncated(2);
    let j2_base = (0..j2.len() as u32).find(|&g| j2.degree(g) == [0]).unwrap();
    let jv = pi1_presentation(&j2, j2_base).unwrap().verdict;
    let pass = s2 == ["Z", "0", "Z"]
        && s0 == ["Z^2"]
        && points.iter().all(|&p| p)
        && circle == GroupVerdict::Nontrivial
        && jv == GroupVerdict::Trivial;
    (pass, json!({ "boundary3": s2, "boundary1": s0, "simplices_point_like": points, "pi1_boundary2": circle, "pi1_sk2_J": jv }))
}

fn negative_control(_: u64) -> (bool, Json) {
    let x = flat(simplex(1));
    let y = flat(simplex(0));
    let dx = marked_classification(&x, [3, 3]).unwrap();
    let dy = marked_classification(&y, [3, 3]).unwrap();
    let g = enumerate_marked_maps(&x, &y).pop().unwrap();
    let f = induced_map(&g, &dx, &dy).unwrap();
    let v = column_verdict(dx.table(), dy.table(), &f, 1).unwrap();
    let pass = v.status == EquivalenceStatus::NotEquivalent;
    (pass, json!({ "verdict": v }))
}

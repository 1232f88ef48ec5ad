use msset::anodyne::{has_rlp, make_generator, to_terminal, Family, Generator, GeneratorSpec};
use msset::catkit::FiniteCategory;
use msset::classification::classify_nerve;
use msset::invariants::Status;

fn verdict(c: &FiniteCategory, weak: &[bool], spec: &GeneratorSpec) -> msset::anodyne::LiftVerdict {
    let Generator::Bisimplicial(i) = make_generator(spec).unwrap() else { panic!("bisimplicial generator expected") };
    let bounds = i.target.max_degree();
    let (_, d) = classify_nerve(c, weak, bounds).unwrap();
    let (t, f) = to_terminal(d.table());
    has_rlp(d.table(), &t, &f, &i)
}

fn isos(c: &FiniteCategory) -> Vec<bool> {
    (0..c.arrow_count() as u32).map(|f| c.is_isomorphism(f)).collect()
}

#[test]
fn groupoid_lifts_against_a_and_b() {
    let c = FiniteCategory::indiscrete(2);
    let w = isos(&c);
    for n in 0..=3 {
        for m in 1..=4 - n {
            for k in 0..=m {
                let v = verdict(&c, &w, &GeneratorSpec::new(Family::MbeA).n(n).m(m).k(k));
                assert_eq!(v.status, Status::Holds, "A({n},{m},{k})");
                assert!(v.exact);
            }
        }
    }
    for n in 2..=4 {
        for m in 0..=4 - n {
            for k in 1..n {
                let v = verdict(&c, &w, &GeneratorSpec::new(Family::MbeB).n(n).m(m).k(k));
                assert_eq!(v.status, Status::Holds, "B({n},{m},{k})");
            }
        }
    }
}

#[test]
fn groupoid_lifts_against_d_and_e() {
    let c = FiniteCategory::indiscrete(2);
    let w = isos(&c);
    for m in 0..=1 {
        for fam in [Family::MbeD, Family::MbeE, Family::MbeC] {
            let v = verdict(&c, &w, &GeneratorSpec::new(fam).m(m).d(3));
            assert_eq!(v.status, Status::Holds, "{fam:?} m={m}");
            assert!(v.exact);
        }
    }
    let flat = vec![false; c.arrow_count()];
    let v = verdict(&c, &flat, &GeneratorSpec::new(Family::MbeD).m(0).d(3));
    assert_eq!(v.status, Status::Fails);
    assert!(v.witness.is_some());
}

#[test]
fn square_counts_match_vertex_assignments() {
    // maps into the nerve of the indiscrete groupoid on 2 objects are vertex assignments
    let c = FiniteCategory::indiscrete(2);
    let w = isos(&c);
    let v = verdict(&c, &w, &GeneratorSpec::new(Family::MbeA).n(3).m(1).k(0));
    assert_eq!((v.squares, v.min_lifts, v.max_lifts), (1 << 8, Some(1), Some(1)));
    let v = verdict(&c, &w, &GeneratorSpec::new(Family::MbeB).n(2).m(2).k(1));
    assert_eq!((v.squares, v.min_lifts, v.max_lifts), (1 << 9, Some(1), Some(1)));
    let v = verdict(&c, &w, &GeneratorSpec::new(Family::MbeE).m(1).d(3));
    assert_eq!((v.squares, v.truncation), (1 << 4, Some(3)));
}

use std::collections::{BTreeMap, BTreeSet};

use cayley_closure::{
    parse_term, Alphabet, ClosureBudget, ClosureOperator, Element, FTerm, Group, GroupElem, Letter,
    Mode, MonoidContext, RelationSystem, Subgraph, Word,
};
use proptest::prelude::*;

fn xy() -> Alphabet {
    Alphabet::new(["x", "y"]).unwrap()
}

fn letter() -> impl Strategy<Value = Letter> {
    (0..2u32, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word::new)
}

fn term(max_path: usize, max_jumps: usize) -> impl Strategy<Value = FTerm> {
    (
        word(max_path),
        prop::collection::vec((word(max_path), word(max_path)), 0..=max_jumps),
    )
        .prop_map(|(head, segments)| FTerm::new(head, segments))
}

fn s3() -> Group {
    Group::permutation_from_cycles(xy(), 3, &["(1 2)", "(1 2 3)"]).unwrap()
}

fn groups() -> Vec<Group> {
    vec![Group::free(xy()), Group::free_abelian(xy()), s3()]
}

fn one_span(group: &Group, t: &FTerm) -> Subgraph {
    Subgraph::span_journey(group, &group.identity(), t)
}

proptest! {
    #[test]
    fn inversion_is_an_involution(t in term(4, 2)) {
        prop_assert_eq!(t.inverse().inverse(), t.clone());
        prop_assert_eq!(t.erase_m().inverse().inverse(), t.erase_m());
    }

    #[test]
    fn free_reduction(w in word(10)) {
        let r = w.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn erasing_markers_commutes_with_inversion(t in term(4, 3)) {
        prop_assert_eq!(t.inverse().erase_m(), t.erase_m().inverse());
        prop_assert_eq!(t.len(), t.erase_m().len());
    }

    #[test]
    fn printing_round_trips(t in term(4, 3)) {
        let a = xy();
        let text = t.display(&a).to_string();
        let back = parse_term(&text, &a).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.display(&a).to_string(), text);
    }

    #[test]
    fn evaluation_is_a_morphism(u in word(6), v in word(6)) {
        for g in groups() {
            prop_assert_eq!(g.eval_word(&u.concat(&v)), g.mul(&g.eval_word(&u), &g.eval_word(&v)));
            prop_assert_eq!(g.eval_word(&u.inverse()), g.invert(&g.eval_word(&u)));
            prop_assert_eq!(g.eval_word(&u.free_reduce()), g.eval_word(&u));
        }
    }

    #[test]
    fn traces_are_equivariant(t in term(3, 2), probe in term(3, 1), shift in word(4)) {
        for g in groups() {
            let d = one_span(&g, &t);
            let s = g.eval_word(&shift);
            let moved = d.translate(&g, &s);
            for v in d.vertices() {
                let there = moved.trace_journey(&g, &g.mul(&s, v), &probe);
                let here = d.trace_journey(&g, v, &probe).map(|h| g.mul(&s, &h));
                prop_assert_eq!(there, here);
            }
            prop_assert_eq!(moved.translate(&g, &g.invert(&s)), d);
        }
    }

    #[test]
    fn traces_end_at_the_label_value(t in term(4, 2), probe in term(3, 1)) {
        for g in groups() {
            let d = one_span(&g, &t);
            for v in d.vertices() {
                if let Some(h) = d.trace_journey(&g, v, &probe) {
                    prop_assert_eq!(h, g.mul(v, &g.eval_term(&probe)));
                }
            }
        }
    }

    #[test]
    fn components_partition_the_graph(t in term(4, 3)) {
        for g in groups() {
            let d = one_span(&g, &t);
            let parts = d.components(&g);
            let mut union = Subgraph::new();
            let mut vertices = 0;
            for p in &parts {
                prop_assert!(p.is_connected(&g));
                vertices += p.vertex_count();
                union.extend(p);
            }
            prop_assert_eq!(vertices, d.vertex_count());
            prop_assert_eq!(union, d.clone());
            prop_assert_eq!(parts.len() == 1, d.is_connected(&g));
        }
    }

    #[test]
    fn edges_are_involutive(t in term(4, 2)) {
        for g in groups() {
            let d = one_span(&g, &t);
            for v in d.vertices() {
                for l in g.alphabet().letters() {
                    let w = Word::new(vec![l]);
                    if let Some(h) = d.trace_path(&g, v, &w) {
                        prop_assert_eq!(d.trace_path(&g, &h, &w.inverse()), Some(v.clone()));
                    }
                }
            }
        }
    }
}

fn s3_relations() -> Vec<ClosureOperator> {
    let g = s3();
    let a = g.alphabet().clone();
    let t = |s: &str| parse_term(s, &a).unwrap();
    vec![
        ClosureOperator::Relation(
            RelationSystem::new(
                &g,
                Mode::EUnitary,
                [(t("x x"), t("")), (t("x y"), t("y^-1 x"))],
            )
            .unwrap(),
        ),
        ClosureOperator::Relation(
            RelationSystem::new(
                &g,
                Mode::FInverse,
                [(t("(y)^m"), t("y")), (t("x x"), t("(y y y)^m"))],
            )
            .unwrap(),
        ),
    ]
}

fn close(op: &ClosureOperator, g: &Group, d: &Subgraph) -> Subgraph {
    let r = op.close(g, d, &ClosureBudget::default()).unwrap();
    assert!(r.is_stabilized());
    r.graph
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relation_closures_are_closure_operators(a in word(6), b in term(3, 2), shift in word(3)) {
        let g = s3();
        for op in s3_relations() {
            let b = if op.mode() == Mode::EUnitary { FTerm::from(b.erase_m()) } else { b.clone() };
            let small = one_span(&g, &a.clone().into());
            let large = small.union(&one_span(&g, &b));
            let cs = close(&op, &g, &small);
            let cl = close(&op, &g, &large);
            prop_assert!(cs.contains(&small));
            prop_assert!(cl.contains(&cs));
            prop_assert_eq!(close(&op, &g, &cs), cs.clone());
            prop_assert!(op.is_closed(&g, &cs));
            let s = g.eval_word(&shift);
            prop_assert_eq!(close(&op, &g, &small.translate(&g, &s)), cs.translate(&g, &s));
        }
    }

    #[test]
    fn tree_connect_is_a_truncated_schema_closure(t in term(2, 2)) {
        // a span of a term with total length ≤ 6 has diameter ≤ 6; pairs of
        // vertices in distinct components are at most that far apart
        let g = Group::free(Alphabet::new(["x"]).unwrap());
        let t = FTerm::new(
            t.head().letters().iter().map(|l| Letter::new(0, l.is_inverse())).collect(),
            t.segments()
                .iter()
                .map(|(v, u)| {
                    let rank1 = |w: &Word| w.letters().iter().map(|l| Letter::new(0, l.is_inverse())).collect();
                    (rank1(v), rank1(u))
                })
                .collect(),
        );
        let schema = ClosureOperator::Relation(RelationSystem::free_reduction_schema(&g, 6).unwrap());
        let d = one_span(&g, &t);
        prop_assert_eq!(close(&schema, &g, &d), close(&ClosureOperator::TreeConnect, &g, &d));
    }

    #[test]
    fn inverse_monoid_axioms(a in word(5), b in word(5), c in word(5)) {
        let ctx = MonoidContext::free_inverse(xy());
        let [a, b, c] = [a, b, c].map(|w| ctx.eval_word(&w).unwrap());
        let ab = ctx.multiply(&a, &b).unwrap();
        let bc = ctx.multiply(&b, &c).unwrap();
        prop_assert!(ctx.multiply(&ab, &c).unwrap().try_eq(&ctx.multiply(&a, &bc).unwrap()).unwrap());

        let a_inv = ctx.inverse(&a);
        let aia = ctx.multiply(&ctx.multiply(&a, &a_inv).unwrap(), &a).unwrap();
        prop_assert!(aia.try_eq(&a).unwrap());
        prop_assert!(ctx.inverse(&a_inv).try_eq(&a).unwrap());

        let e = ctx.multiply(&a, &a_inv).unwrap();
        let f = ctx.multiply(&ctx.inverse(&b), &b).unwrap();
        prop_assert!(ctx.is_idempotent(&e) && ctx.is_idempotent(&f));
        prop_assert!(ctx.multiply(&e, &f).unwrap().try_eq(&ctx.multiply(&f, &e).unwrap()).unwrap());
        prop_assert!(ctx.multiply(&e, &e).unwrap().try_eq(&e).unwrap());

        // E-unitary: e ≤ a with e idempotent forces a idempotent
        let ea = ctx.multiply(&e, &a).unwrap();
        prop_assert_eq!(ctx.is_idempotent(&ea), ctx.is_idempotent(&a));
        prop_assert_eq!(ctx.is_idempotent(&a), a.sigma() == &ctx.group().identity());
    }

    #[test]
    fn f_inverse_laws(t in term(3, 2), u in term(3, 2)) {
        let ctx = MonoidContext::free_f_inverse(xy());
        let a = ctx.eval_term(&t).unwrap();
        let b = ctx.eval_term(&u).unwrap();
        let m = ctx.max_m(&a).unwrap();
        prop_assert!(ctx.leq(&a, &m).unwrap());
        prop_assert!(ctx.max_m(&m).unwrap().try_eq(&m).unwrap());
        prop_assert!(ctx.max_m(&ctx.inverse(&a)).unwrap().try_eq(&ctx.inverse(&m)).unwrap());
        if a.sigma() == b.sigma() {
            prop_assert!(ctx.leq(&b, &m).unwrap());
        }
        let ab = ctx.multiply(&a, &b).unwrap();
        let mb = ctx.max_m(&b).unwrap();
        // (ab)^m ≥ a^m b^m
        prop_assert!(ctx.leq(&ctx.multiply(&m, &mb).unwrap(), &ctx.max_m(&ab).unwrap()).unwrap());
    }
}

fn z3() -> Group {
    Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 3, &["(1 2 3)"]).unwrap()
}

fn values(elements: &[Element]) -> BTreeSet<(Subgraph, GroupElem)> {
    elements
        .iter()
        .map(|e| {
            let (d, g) = e.value().unwrap();
            (d.clone(), g.clone())
        })
        .collect()
}

#[test]
fn finite_inverse_monoid_axioms() {
    let ctx = MonoidContext::margolis_meakin(z3());
    let all = ctx.elements().unwrap();
    for a in &all {
        let a_inv = ctx.inverse(a);
        let aa = ctx.multiply(a, &a_inv).unwrap();
        assert!(ctx.multiply(&aa, a).unwrap().try_eq(a).unwrap());
        assert_eq!(
            ctx.is_idempotent(a),
            a.try_eq(&ctx.multiply(a, a).unwrap()).unwrap()
        );
        for b in &all {
            let ab = ctx.multiply(a, b).unwrap();
            for c in &all {
                let lhs = ctx.multiply(&ab, c).unwrap();
                let rhs = ctx.multiply(a, &ctx.multiply(b, c).unwrap()).unwrap();
                assert!(lhs.try_eq(&rhs).unwrap());
            }
        }
    }
}

#[test]
fn max_m_is_the_top_of_its_sigma_class() {
    let g = Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 2, &["(1 2)"]).unwrap();
    let ctx =
        MonoidContext::new(g, ClosureOperator::IdentityAll, ClosureBudget::default()).unwrap();
    let all = ctx.elements().unwrap();
    for a in &all {
        let m = ctx.max_m(a).unwrap();
        for b in all.iter().filter(|b| b.sigma() == a.sigma()) {
            assert!(ctx.leq(b, &m).unwrap());
        }
    }
}

/// Words of length at most `max` over `alphabet`.
fn words_up_to(alphabet: &Alphabet, max: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max {
        frontier = frontier
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Relates every pair of labels with equal values in `ctx`.
fn kernel(ctx: &MonoidContext, labels: &[FTerm]) -> Vec<(FTerm, FTerm)> {
    let mut classes: BTreeMap<(Subgraph, GroupElem), Vec<&FTerm>> = BTreeMap::new();
    for t in labels {
        let e = ctx.eval_term(t).unwrap();
        let (d, g) = e.value().unwrap();
        classes.entry((d.clone(), g.clone())).or_default().push(t);
    }
    classes
        .values()
        .flat_map(|c| c.iter().skip(1).map(move |t| (c[0].clone(), (*t).clone())))
        .collect()
}

#[test]
fn kernel_closure_recovers_margolis_meakin() {
    let ctx = MonoidContext::margolis_meakin(z3());
    let labels: Vec<FTerm> = words_up_to(ctx.group().alphabet(), 5)
        .into_iter()
        .map(FTerm::from)
        .collect();
    let rel = RelationSystem::new(ctx.group(), Mode::EUnitary, kernel(&ctx, &labels)).unwrap();
    assert!(!rel.is_empty());
    let rebuilt = MonoidContext::new(
        ctx.group().clone(),
        ClosureOperator::Relation(rel),
        ClosureBudget::default(),
    )
    .unwrap();
    assert_eq!(
        values(&rebuilt.elements().unwrap()),
        values(&ctx.elements().unwrap())
    );
}

#[test]
fn kernel_closure_recovers_f_inverse_model() {
    let g = Group::permutation_from_cycles(Alphabet::new(["x"]).unwrap(), 2, &["(1 2)"]).unwrap();
    let ctx =
        MonoidContext::new(g, ClosureOperator::IdentityAll, ClosureBudget::default()).unwrap();
    let words = words_up_to(ctx.group().alphabet(), 3);
    let mut labels: Vec<FTerm> = Vec::new();
    for u in &words {
        labels.push(u.clone().into());
        labels.push(FTerm::jump(u.clone()));
        for v in words.iter().filter(|v| v.len() <= 2) {
            labels.push(FTerm::new(u.clone(), vec![(v.clone(), Word::empty())]));
            labels.push(FTerm::new(Word::empty(), vec![(v.clone(), u.clone())]));
        }
    }
    let rel = RelationSystem::new(ctx.group(), Mode::FInverse, kernel(&ctx, &labels)).unwrap();
    let rebuilt = MonoidContext::new(
        ctx.group().clone(),
        ClosureOperator::Relation(rel),
        ClosureBudget::default(),
    )
    .unwrap();
    assert_eq!(
        values(&rebuilt.elements().unwrap()),
        values(&ctx.elements().unwrap())
    );
}

//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! All arithmetic is exact over Z/2, so every comparison is equality. Run
//! with `cargo test -p legch --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::BTreeMap;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use legch::augment::{self, Augmentation, DEFAULT_AUG_CAP};
use legch::dga::{AlgebraElement, Dga, DSquaredReport, GenId, Generator, Word};
use legch::diagram::LagrangianDiagram;
use legch::discs;
use legch::front::FrontDiagram;
use legch::homology::{les_feasible, mapping_cone, ChainMap, Gf2Matrix, GradedComplex};
use legch::verify::{self, FillingData};

fn corpus_path(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn corpus_front(name: &str) -> FrontDiagram {
    let text = std::fs::read_to_string(corpus_path(name)).expect("corpus file");
    FrontDiagram::parse(&text).expect("corpus front parses")
}

const CORPUS: [&str; 5] = [
    "unknot.front",
    "trefoil.front",
    "stab_unknot_a.front",
    "stab_unknot_b.front",
    "split_link.front",
];

fn pipeline(name: &str, max_mult: u32) -> (LagrangianDiagram, Dga, bool) {
    let front = corpus_front(name);
    let diag = LagrangianDiagram::resolve(&front).expect("resolves");
    let out = discs::differential(&diag, max_mult).expect("d^2 = 0");
    (diag, out.dga, out.budget_hit)
}

#[test]
fn criterion_1_d_squared_zero_on_corpus() {
    for name in CORPUS {
        let start = Instant::now();
        let (_, dga, _) = pipeline(name, 4);
        assert_eq!(dga.verify_d_squared(), DSquaredReport::Ok, "{name}");
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 1.0,
            "{name} took {elapsed:?}, budget is 1 s"
        );
    }
    println!("ACCEPTANCE 1: PASS — d^2 = 0 for every corpus diagram in < 1 s each");
}

#[test]
fn criterion_2_unknot() {
    let (_, dga, _) = pipeline("unknot.front", 4);
    assert_eq!(dga.generators().len(), 1);
    assert_eq!(dga.generators()[0].name, "a1");
    assert_eq!(dga.generators()[0].grading, 1);
    assert!(dga.diff_of(0).is_zero());
    let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
    assert_eq!(augs.len(), 1);
    let lin = augment::linearize(&dga, &augs[0]).unwrap();
    let h = lin.homology();
    assert_eq!(h.0, [(1i64, 1usize)].into_iter().collect());
    println!("ACCEPTANCE 2: PASS — unknot: one grading-1 generator, d a1 = 0, 1 augmentation, HCL = {{1: 1}}");
}

#[test]
fn criterion_3_trefoil() {
    let start = Instant::now();
    let (_, dga, _) = pipeline("trefoil.front", 4);
    let mut gradings: Vec<(String, i64)> = dga
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.grading))
        .collect();
    gradings.sort();
    assert_eq!(
        gradings,
        vec![
            ("a1".to_string(), 1),
            ("a2".to_string(), 1),
            ("b1".to_string(), 0),
            ("b2".to_string(), 0),
            ("b3".to_string(), 0),
        ]
    );
    let render = |n: &str| dga.render(dga.diff_of(dga.id_of(n).unwrap()));
    assert_eq!(render("a1"), "1 + b1 + b3 + b1 b2 b3");
    assert_eq!(render("a2"), "1 + b1 + b3 + b3 b2 b1");
    for b in ["b1", "b2", "b3"] {
        assert!(dga.diff_of(dga.id_of(b).unwrap()).is_zero());
    }
    let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
    assert_eq!(augs.len(), 5);
    let bits: Vec<String> = augs.iter().map(|a| a.bits(&dga)).collect();
    assert_eq!(bits, vec!["100", "110", "001", "011", "111"]);
    for aug in &augs {
        let lin = augment::linearize(&dga, aug).unwrap();
        let h = lin.homology();
        assert_eq!(h.0, [(0i64, 2usize), (1, 1)].into_iter().collect());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget is 5 s");
    println!("ACCEPTANCE 3: PASS — trefoil: gradings (0,0,0,1,1), the two cusp differentials, 5 augmentations, HCL = {{0: 2, 1: 1}} for each");
}

fn filling(n: i64, betti_l: &[(i64, usize)], betti_lambda: &[(i64, usize)]) -> FillingData {
    FillingData {
        n,
        betti_l: betti_l.iter().copied().collect(),
        betti_lambda: betti_lambda.iter().copied().collect(),
        aug_index: 0,
    }
}

#[test]
fn criterion_4_seidel() {
    // Unknot with its disc filling.
    let (_, dga, _) = pipeline("unknot.front", 4);
    let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
    let lin = augment::linearize(&dga, &augs[0]).unwrap();
    let fd = filling(1, &[(0, 1)], &[(0, 1), (1, 1)]);
    assert!(verify::seidel_check(&lin.cohomology(), &fd).pass);

    // Trefoil with the once-punctured torus, for each augmentation.
    let (_, dga, _) = pipeline("trefoil.front", 4);
    let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
    assert_eq!(augs.len(), 5);
    let fd = filling(1, &[(0, 1), (1, 2)], &[(0, 1), (1, 1)]);
    for aug in &augs {
        let lin = augment::linearize(&dga, aug).unwrap();
        assert!(verify::seidel_check(&lin.cohomology(), &fd).pass);
    }

    // Deliberately wrong Betti numbers fail with per-degree deltas.
    let bad = filling(1, &[(0, 1), (1, 1)], &[(0, 1), (1, 1)]);
    let lin = augment::linearize(&dga, &augs[0]).unwrap();
    let report = verify::seidel_check(&lin.cohomology(), &bad);
    assert!(!report.pass);
    assert!(!report.deltas.is_empty());
    assert_eq!(report.deltas[0].degree, 0);
    assert_eq!(report.deltas[0].hcl_co, 2);
    assert_eq!(report.deltas[0].expected, 1);
    println!("ACCEPTANCE 4: PASS — Seidel check passes on both fillings, fails with deltas on wrong Betti input");
}

#[test]
fn criterion_5_duality() {
    let circle = &[(0i64, 1usize), (1, 1)][..];
    for name in ["unknot.front", "trefoil.front"] {
        let (_, dga, _) = pipeline(name, 4);
        let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
        for aug in &augs {
            let lin = augment::linearize(&dga, aug).unwrap();
            let fd = filling(1, &[], circle);
            let report = verify::duality_check(&lin.homology(), &lin.cohomology(), &fd);
            assert!(report.feasible, "{name}: {:?}", report.dims);
        }
    }
    // Fabricated Euler mismatch: HCL with chi = 1 against the circle.
    let fake = legch::homology::PoincarePolynomial::from_pairs(&[(0, 1)]);
    let fake_co = legch::homology::PoincarePolynomial::from_pairs(&[(1, 1)]);
    let fd = filling(1, &[], circle);
    assert!(!verify::duality_check(&fake, &fake_co, &fd).feasible);
    println!("ACCEPTANCE 5: PASS — duality sequence feasible for both knots, Euler-mismatched input infeasible");
}

#[test]
fn criterion_6_twocopy_circle() {
    let text = std::fs::read_to_string(corpus_path("fixtures/morse_circle.blocks")).unwrap();
    let fx = legch::fixtures::parse_twocopy(&text).unwrap();
    let out = verify::twocopy_assemble(&fx.blocks, fx.which).unwrap();
    let h = out.homology();
    assert_eq!(h.0, [(-1i64, 1usize), (0, 1)].into_iter().collect());
    println!("ACCEPTANCE 6: PASS — empty-chord two-copy with the circle Morse complex has homology {{-1: 1, 0: 1}}");
}

// ---- criterion 7: randomized property suite -------------------------------

const CASES: u32 = 1000;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Entropy-driven matrix with the given shape.
fn bits_matrix(rows: usize, cols: usize, bits: &mut impl Iterator<Item = bool>) -> Gf2Matrix {
    let mut m = Gf2Matrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if bits.next().unwrap_or(false) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Random chain complex on degrees `0..dims.len()`: each boundary's columns
/// are random combinations of the previous boundary's kernel basis.
fn build_complex(dims: &[usize], bits: &mut impl Iterator<Item = bool>) -> GradedComplex {
    let mut boundary = BTreeMap::new();
    let mut prev = Gf2Matrix::zero(0, dims[0]);
    for k in 1..dims.len() {
        let kernel = prev.kernel_basis();
        let mut m = Gf2Matrix::zero(dims[k - 1], dims[k]);
        for j in 0..dims[k] {
            for v in &kernel {
                if bits.next().unwrap_or(false) {
                    for (i, &b) in v.iter().enumerate() {
                        if b {
                            let cur = m.get(i, j);
                            m.set(i, j, !cur);
                        }
                    }
                }
            }
        }
        boundary.insert(k as i64, m.clone());
        prev = m;
    }
    GradedComplex::new(
        dims.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect(),
        boundary,
    )
    .expect("construction is a complex")
}

/// Random degree +1 maps `h_k : C_k -> C_{k+1}`.
fn build_homotopy(
    c: &GradedComplex,
    bits: &mut impl Iterator<Item = bool>,
) -> BTreeMap<i64, Gf2Matrix> {
    let mut h = BTreeMap::new();
    if let Some((lo, hi)) = c.degree_range() {
        for k in lo..hi {
            h.insert(k, bits_matrix(c.dim(k + 1), c.dim(k), bits));
        }
    }
    h
}

/// `f = id + h d + d h`, a chain self-map homotopic to the identity.
fn homotopic_identity(c: &GradedComplex, h: &BTreeMap<i64, Gf2Matrix>) -> ChainMap {
    let zero = |r: usize, cc: usize| Gf2Matrix::zero(r, cc);
    let mut blocks = BTreeMap::new();
    if let Some((lo, hi)) = c.degree_range() {
        for k in lo..=hi {
            let n = c.dim(k);
            let hk = h.get(&k).cloned().unwrap_or_else(|| zero(c.dim(k + 1), n));
            let hk1 = h
                .get(&(k - 1))
                .cloned()
                .unwrap_or_else(|| zero(n, c.dim(k - 1)));
            let a = hk1.mul(&c.boundary_at(k)).unwrap();
            let b = c.boundary_at(k + 1).mul(&hk).unwrap();
            let mut m = Gf2Matrix::identity(n);
            for i in 0..n {
                for j in 0..n {
                    let v = m.get(i, j) ^ a.get(i, j) ^ b.get(i, j);
                    m.set(i, j, v);
                }
            }
            blocks.insert(k, m);
        }
    }
    ChainMap {
        source: c.clone(),
        target: c.clone(),
        blocks,
    }
}

/// Small semi-free DGA with `d^2 = 0`: pairs `d x_i = y_i` plus closed
/// generators, conjugated by random elementary substitutions
/// `a -> a + w` (with `a` not occurring in `w`).
fn build_dga(
    pairs: usize,
    closed: usize,
    twists: &[(usize, Vec<usize>)],
) -> Dga {
    let mut gens = Vec::new();
    for i in 0..pairs {
        gens.push(Generator {
            name: format!("x{i}"),
            grading: 1,
            action: None,
        });
        gens.push(Generator {
            name: format!("y{i}"),
            grading: 0,
            action: None,
        });
    }
    for i in 0..closed {
        gens.push(Generator {
            name: format!("z{i}"),
            grading: 0,
            action: None,
        });
    }
    let mut dga = Dga::new(gens, 0).unwrap();
    for i in 0..pairs {
        let x = dga.id_of(&format!("x{i}")).unwrap();
        let y = dga.id_of(&format!("y{i}")).unwrap();
        dga.set_diff(x, AlgebraElement::from_word(vec![y]));
    }
    let n = dga.generators().len();
    for (pick, word_picks) in twists {
        let a: GenId = pick % n;
        let w: Word = word_picks
            .iter()
            .map(|&p| p % n)
            .filter(|&g| g != a)
            .take(3)
            .collect();
        if w.is_empty() {
            continue;
        }
        // phi: a -> a + w on every stored differential, then twist d(a).
        let subst = |el: &AlgebraElement| -> AlgebraElement {
            let mut out = AlgebraElement::zero();
            for word in el.words() {
                let mut terms: Vec<Word> = vec![Vec::new()];
                for &letter in word {
                    let mut next = Vec::new();
                    for t in &terms {
                        let mut keep = t.clone();
                        keep.push(letter);
                        next.push(keep);
                        if letter == a {
                            let mut rep = t.clone();
                            rep.extend_from_slice(&w);
                            next.push(rep);
                        }
                    }
                    terms = next;
                }
                for t in terms {
                    out.toggle(t);
                }
            }
            out
        };
        let mut new_diffs: Vec<AlgebraElement> = Vec::new();
        for g in 0..n {
            if g == a {
                let mut da = dga.diff_of(a).clone();
                let dw = dga.boundary(&AlgebraElement::from_word(w.clone())).unwrap();
                da = da.add(&dw);
                new_diffs.push(subst(&da));
            } else {
                new_diffs.push(subst(dga.diff_of(g)));
            }
        }
        for (g, el) in new_diffs.into_iter().enumerate() {
            dga.set_diff(g, el);
        }
    }
    assert_eq!(dga.verify_d_squared(), DSquaredReport::Ok);
    dga
}

fn element_from(dga: &Dga, picks: &[Vec<usize>]) -> AlgebraElement {
    let n = dga.generators().len().max(1);
    let mut el = AlgebraElement::zero();
    for word_picks in picks {
        let w: Word = word_picks.iter().map(|&p| p % n).collect();
        el.toggle(w);
    }
    el
}

/// (pair count, closed count, twists, element picks, element picks).
type DgaCase = (
    usize,
    usize,
    Vec<(usize, Vec<usize>)>,
    Vec<Vec<usize>>,
    Vec<Vec<usize>>,
);

fn dga_strategy() -> impl Strategy<Value = DgaCase> {
    (
        1usize..3,
        0usize..3,
        prop::collection::vec(
            (any::<usize>(), prop::collection::vec(any::<usize>(), 1..4)),
            0..4,
        ),
        prop::collection::vec(prop::collection::vec(any::<usize>(), 0..4), 1..4),
        prop::collection::vec(prop::collection::vec(any::<usize>(), 0..4), 1..4),
    )
}

#[test]
fn criterion_7_property_suite() {
    // 7a: Leibniz identity on random products.
    runner()
        .run(&dga_strategy(), |(p, c, twists, xs, ys)| {
            let dga = build_dga(p, c, &twists);
            let x = element_from(&dga, &xs);
            let y = element_from(&dga, &ys);
            let lhs = dga.boundary(&x.mul(&y)).unwrap();
            let rhs = dga
                .boundary(&x)
                .unwrap()
                .mul(&y)
                .add(&x.mul(&dga.boundary(&y).unwrap()));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();

    // 7b: boundary of boundary vanishes on random elements.
    runner()
        .run(&dga_strategy(), |(p, c, twists, xs, _)| {
            let dga = build_dga(p, c, &twists);
            let x = element_from(&dga, &xs);
            let ddx = dga.boundary(&dga.boundary(&x).unwrap()).unwrap();
            prop_assert!(ddx.is_zero());
            Ok(())
        })
        .unwrap();

    let complex_strategy = (
        prop::collection::vec(0usize..4, 2..5),
        prop::collection::vec(any::<bool>(), 256),
    );

    // 7c: Euler characteristic is preserved by homology.
    runner()
        .run(&complex_strategy, |(dims, bits)| {
            let c = build_complex(&dims, &mut bits.clone().into_iter());
            let chain_euler: i64 = dims
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            prop_assert_eq!(c.homology().euler_characteristic(), chain_euler);
            Ok(())
        })
        .unwrap();

    // 7d: the cone of the identity is acyclic, and more generally the cone
    // of any map homotopic to the identity.
    runner()
        .run(&complex_strategy, |(dims, bits)| {
            let mut it = bits.into_iter();
            let c = build_complex(&dims, &mut it);
            let idmap = ChainMap {
                source: c.clone(),
                target: c.clone(),
                blocks: c
                    .dims()
                    .iter()
                    .map(|(&k, &d)| (k, Gf2Matrix::identity(d)))
                    .collect(),
            };
            prop_assert!(mapping_cone(&idmap).unwrap().homology().is_zero());
            let h = build_homotopy(&c, &mut it);
            let f = homotopic_identity(&c, &h);
            let cone = mapping_cone(&f).unwrap();
            prop_assert!(cone.homology().is_zero());
            prop_assert!(f.is_quasi_iso());
            Ok(())
        })
        .unwrap();

    // 7e: les_feasible accepts the dimensions of the actual homology long
    // exact sequence of a mapping cone.
    runner()
        .run(&complex_strategy, |(dims, bits)| {
            let mut it = bits.into_iter();
            let c = build_complex(&dims, &mut it);
            let h = build_homotopy(&c, &mut it);
            // Null-homotopic chain map: f = h d + d h.
            let f = {
                let mut f = homotopic_identity(&c, &h);
                for (&k, m) in f.blocks.clone().iter() {
                    let mut m = m.clone();
                    for i in 0..m.rows() {
                        let cur = m.get(i, i);
                        m.set(i, i, !cur);
                    }
                    f.blocks.insert(k, m);
                }
                f
            };
            f.validate().unwrap();
            let cone = mapping_cone(&f).unwrap();
            let hc = c.homology();
            let hcone = cone.homology();
            // Acyclicity of the cone and quasi-isomorphism always agree.
            prop_assert_eq!(hcone.is_zero(), f.is_quasi_iso());
            // ... -> H_k(C) -> H_k(C) -> H_k(cone) -> H_{k-1}(C) -> ...
            let (lo, hi) = c.degree_range().unwrap_or((0, 0));
            let mut seq = Vec::new();
            for k in (lo - 1..=hi + 1).rev() {
                seq.push(hc.dim(k));
                seq.push(hc.dim(k));
                seq.push(hcone.dim(k));
            }
            prop_assert!(les_feasible(&seq).feasible);
            Ok(())
        })
        .unwrap();

    // 7f: rank is transpose-invariant.
    runner()
        .run(
            &(
                0usize..6,
                0usize..6,
                prop::collection::vec(any::<bool>(), 64),
            ),
            |(r, c, bits)| {
                let m = bits_matrix(r, c, &mut bits.into_iter());
                prop_assert_eq!(m.rank(), m.transpose().rank());
                Ok(())
            },
        )
        .unwrap();

    println!("ACCEPTANCE 7: PASS — property suite ({CASES} cases each): Leibniz, d^2 = 0, Euler, cone of identity, cone LES feasibility, rank transpose");
}

#[test]
fn criterion_8_determinism() {
    // Byte-identical reports on repeated runs.
    for name in CORPUS {
        let path = corpus_path(name);
        for args in [
            vec!["legch", "dga", path.as_str(), "--discs"],
            vec!["legch", "dga", path.as_str(), "--format", "json"],
            vec!["legch", "augs", path.as_str()],
        ] {
            let (a, fa) = legch::cli::execute(&args).unwrap();
            let (b, fb) = legch::cli::execute(&args).unwrap();
            assert_eq!(a.rendered(fa), b.rendered(fb), "{args:?}");
            assert_eq!(a.exit_code, b.exit_code);
        }
    }
    // Disc enumeration is invariant under randomized branch-visit order.
    for name in CORPUS {
        let front = corpus_front(name);
        let diag = LagrangianDiagram::resolve(&front).unwrap();
        for c in &diag.crossings {
            let base = discs::enumerate_discs(&diag, &c.name, 4).unwrap();
            for seed in [3u64, 17, 255, 99991, 0xdead_beef] {
                let shuffled =
                    discs::enumerate_discs_seeded(&diag, &c.name, 4, Some(seed)).unwrap();
                assert_eq!(base.discs, shuffled.discs, "{name}/{}", c.name);
            }
        }
    }
    println!("ACCEPTANCE 8: PASS — byte-identical reports, disc sets invariant under shuffled visit order");
}

#[test]
fn criterion_9_budget_stability() {
    for name in CORPUS {
        let front = corpus_front(name);
        let diag = LagrangianDiagram::resolve(&front).unwrap();
        let lo = discs::differential(&diag, 2).expect("max_mult 2");
        let hi = discs::differential(&diag, 8).expect("max_mult 8");
        assert!(!lo.budget_hit, "{name}: budget flagged at max_mult 2");
        assert!(!hi.budget_hit, "{name}: budget flagged at max_mult 8");
        assert_eq!(lo.dga.dump(), hi.dga.dump(), "{name}: differential changed");
    }
    println!("ACCEPTANCE 9: PASS — corpus differentials identical at max_mult 2 and 8, budget never raised");
}

// ---- additional end-to-end checks used by the criteria above --------------

#[test]
fn trefoil_twocopy_fixture_is_acyclic() {
    // The bundled trefoil two-copy fixture models a filling scenario, so its
    // assembled infinity complex must square to zero and be acyclic; the
    // split variant with zeroed geometric blocks is not.
    let text = std::fs::read_to_string(corpus_path("fixtures/trefoil_twocopy.blocks")).unwrap();
    let fx = legch::fixtures::parse_twocopy(&text).unwrap();
    assert_eq!(fx.blocks.sigma.values().map(|m| m.rank()).sum::<usize>(), 1);
    let out = verify::twocopy_assemble(&fx.blocks, fx.which).unwrap();
    assert_eq!(out.complex.total_dim(), 12);
    let h = out.homology();
    assert!(verify::vanishing_link_check(&h), "expected acyclic, got {h}");

    // With all geometric blocks zeroed the complex is block lower-triangular
    // with zero off-diagonal, so the homology is the direct sum of the dual
    // summand, the Morse summand, and the co-complex summand.
    let mut split = fx.blocks.clone();
    split.rho.clear();
    split.sigma.clear();
    split.eta.clear();
    let out = verify::twocopy_assemble(&split, fx.which).unwrap();
    let h = out.homology();
    assert!(!verify::vanishing_link_check(&h));
    assert_eq!(
        h.0,
        [(-2i64, 1usize), (-1, 3), (0, 3), (1, 1)].into_iter().collect(),
    );
}

#[test]
fn unknot_wrapped_fixture_is_acyclic() {
    let text = std::fs::read_to_string(corpus_path("fixtures/unknot_wrapped.blocks")).unwrap();
    let fx = legch::fixtures::parse_wrapped(&text).unwrap();
    let report = verify::wrapped_cone_check(&fx.cf0, &fx.cf_inf, &fx.delta).unwrap();
    assert!(report.acyclic);
    assert!(report.quasi_iso);
    assert_eq!(report.acyclic, report.quasi_iso);
}

#[test]
fn augmentation_count_invariant_under_event_reversal() {
    // Reversing the event order of the trefoil front (right-to-left mirror)
    // produces an isomorphic diagram; the augmentation count agrees.
    let mirrored = "lcusp 1\nlcusp 2\ncross 2\ncross 2\ncross 2\nrcusp 2\nrcusp 1\n";
    let reversed: String = {
        let front = FrontDiagram::parse(mirrored).unwrap();
        let mut events = front.events.clone();
        events.reverse();
        events
            .iter()
            .map(|e| {
                // Left-right mirror swaps cusp kinds.
                match e {
                    legch::front::Event::LCusp(k) => format!("rcusp {k}\n"),
                    legch::front::Event::RCusp(k) => format!("lcusp {k}\n"),
                    legch::front::Event::Cross(k) => format!("cross {k}\n"),
                }
            })
            .collect()
    };
    let count = |text: &str| {
        let front = FrontDiagram::parse(text).unwrap();
        let diag = LagrangianDiagram::resolve(&front).unwrap();
        let dga = discs::differential(&diag, 4).unwrap().dga;
        augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP)
            .unwrap()
            .len()
    };
    assert_eq!(count(mirrored), count(&reversed));
}

#[test]
fn conjugation_always_kills_constants() {
    // Every enumerated augmentation conjugates with vanishing constant part.
    for name in CORPUS {
        let (_, dga, _) = pipeline(name, 4);
        let Ok(augs) = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP) else {
            continue;
        };
        for aug in &augs {
            augment::conjugate(&dga, aug).expect("constant part vanishes");
        }
    }
}

#[test]
fn hcl_equals_hcl_co_dimensionwise() {
    let (_, dga, _) = pipeline("trefoil.front", 4);
    for aug in augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap() {
        let lin = augment::linearize(&dga, &aug).unwrap();
        let h = lin.homology();
        let hc = lin.cohomology();
        assert_eq!(h.0, hc.0);
    }
}

#[test]
fn actions_gate_energy_checks() {
    // A full, consistent action assignment passes; an inverted one fails.
    let good = "action b1 1/2\naction b2 1/2\naction b3 1/2\naction a1 3/1\naction a2 3/1\n";
    let text = std::fs::read_to_string(corpus_path("trefoil.front")).unwrap();
    let front = FrontDiagram::parse(&format!("{good}{text}")).unwrap();
    let diag = LagrangianDiagram::resolve(&front).unwrap();
    discs::differential(&diag, 4).expect("action-decreasing differential");

    let bad = "action b1 9/1\naction b2 1/2\naction b3 1/2\naction a1 3/1\naction a2 3/1\n";
    let front = FrontDiagram::parse(&format!("{bad}{text}")).unwrap();
    let diag = LagrangianDiagram::resolve(&front).unwrap();
    assert!(discs::differential(&diag, 4).is_err());
}

#[test]
fn zero_augmentation_is_checked_not_assumed() {
    // Stabilized fronts have no augmentations at all.
    for name in ["stab_unknot_a.front", "stab_unknot_b.front"] {
        let (_, dga, _) = pipeline(name, 4);
        let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
        assert!(augs.is_empty(), "{name}");
    }
}

#[test]
fn inconsistent_fixture_blocks_exit_with_dsquared_code() {
    // A d_f that fails to square to zero must be reported as a DSQUARED
    // condition (exit code 3), not silently assembled.
    let path = std::env::temp_dir().join("legch_bad_fixture.blocks");
    std::fs::write(
        &path,
        "n 1\nwhich infinity\nspace morse 0 1\nspace morse 1 1\nspace morse 2 1\nmap d_f 0\n1\nmap d_f 1\n1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (out, _) = legch::cli::execute(&["legch", "twocopy", "--blocks", p]).unwrap();
    assert_eq!(out.exit_code, legch::cli::EXIT_BUDGET, "{}", out.text);
    std::fs::remove_file(&path).ok();
}

#[test]
fn aug_index_addressing_is_stable() {
    let (_, dga, _) = pipeline("trefoil.front", 4);
    let augs = augment::enumerate_augmentations(&dga, DEFAULT_AUG_CAP).unwrap();
    // Index 4 is the all-ones augmentation used in the CLI examples.
    assert_eq!(augs[4].bits(&dga), "111");
    assert_eq!(
        augs[4],
        Augmentation::from_support(augment::degree_zero_ids(&dga))
    );
}

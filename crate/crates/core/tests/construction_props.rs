use hylag_core::constructions::{
    base_edge_count, build_base, build_layered, layered_edge_count, lift_to_r, n_of_ell,
    n_of_ell_q, part_of, weighted_blowup,
};
use hylag_core::hypergraph::blow_up_edge_count;
use hylag_core::rational::from_big;
use hylag_core::sparse::{build_sparse, verify_edge_count, verify_local_sparsity};
use hylag_core::verifier::verify_claim1;
use hylag_core::{hyg, ConstructionParams, FamilyChoice, Hypergraph, SparseParams, WeightVector};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = (FamilyChoice, usize)> {
    prop_oneof![
        (2usize..=4).prop_map(|l| (FamilyChoice::Alpha, l)),
        (2usize..=4).prop_map(|l| (FamilyChoice::Complement, l)),
        Just((FamilyChoice::N12_125, 5)),
        Just((FamilyChoice::N96_625, 5)),
        Just((FamilyChoice::N252_625, 5)),
    ]
}

fn multiplicity(e: &[u32], t: usize, parts: usize) -> Vec<u32> {
    let mut m = vec![0u32; parts];
    for &v in e {
        m[part_of(v as usize, t)] += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn layered_count_matches_closed_form((choice, ell) in family(), q in 1usize..=3, t in 1usize..=3) {
        prop_assume!(ell * q * t <= 24);
        let p = ConstructionParams::new(choice, ell, q, t, 5).unwrap();
        let g = build_layered(&p).unwrap();
        let want = layered_edge_count(choice, ell, q, t).unwrap();
        prop_assert_eq!(num_bigint::BigInt::from(g.edge_count()), want);
        prop_assert_eq!(g.n(), ell * q * t);
        if q == 1 {
            prop_assert_eq!(g, build_base(&p).unwrap());
        }
    }

    #[test]
    fn base_edges_have_listed_types((choice, ell) in family(), t in 1usize..=4) {
        let g = build_base(&ConstructionParams::base(choice, ell, t).unwrap()).unwrap();
        let types = choice.edge_types(ell).unwrap();
        for e in g.edges() {
            prop_assert!(types.contains(&multiplicity(e, t, ell)));
        }
        prop_assert_eq!(
            num_bigint::BigInt::from(g.edge_count()),
            base_edge_count(choice, ell, t).unwrap()
        );
    }

    #[test]
    fn lift_multiplies_edges(t in 1usize..=2, r in 6usize..=7) {
        let h5 = build_base(&ConstructionParams::base(FamilyChoice::N12_125, 5, t).unwrap()).unwrap();
        let lifted = lift_to_r(&h5, r, t).unwrap();
        prop_assert_eq!(lifted.edge_count(), h5.edge_count() * t.pow(r as u32 - 5));
        for e in lifted.edges() {
            prop_assert!(h5.contains(&e[..5]));
            for (j, &v) in e[5..].iter().enumerate() {
                prop_assert_eq!(part_of(v as usize, t), 5 + j);
            }
        }
    }

    #[test]
    fn hyg_round_trip((choice, ell) in family(), t in 1usize..=2) {
        let g = build_base(&ConstructionParams::base(choice, ell, t).unwrap()).unwrap();
        let text = hyg::to_string(&g);
        let back = hyg::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(hyg::to_string(&back), text);
    }

    #[test]
    fn weighted_blowup_edge_count(w in prop::collection::vec(1u32..20, 5), n in 5usize..40) {
        let g = Hypergraph::complete(3, 5).unwrap();
        let y = WeightVector::normalized(w.iter().map(|&v| v as f64).collect()).unwrap();
        let sizes: Vec<usize> = y
            .as_slice()
            .iter()
            .map(|&v| (n as f64 * v * (1.0 + 1e-9)).floor() as usize)
            .collect();
        match weighted_blowup(&g, &y, n) {
            Ok(b) => {
                prop_assert_eq!(from_big(b.edge_count().into()), blow_up_edge_count(&g, &sizes));
                prop_assert_eq!(b.n(), sizes.iter().sum::<usize>());
            }
            Err(_) => prop_assert!(sizes.iter().all(|&s| s == 0)),
        }
    }
}

#[test]
fn q_one_degenerates_to_base_value() {
    for (choice, ells) in [
        (FamilyChoice::Alpha, 2..=8),
        (FamilyChoice::Complement, 2..=8),
        (FamilyChoice::N12_125, 5..=5),
        (FamilyChoice::N96_625, 5..=5),
        (FamilyChoice::N252_625, 5..=5),
    ] {
        for ell in ells {
            assert_eq!(
                n_of_ell_q(choice, ell, 1).unwrap(),
                n_of_ell(choice, ell).unwrap()
            );
        }
    }
}

fn sparse_params() -> impl Strategy<Value = SparseParams> {
    (3usize..=4, 0u64..1000).prop_flat_map(|(r, seed)| {
        (Just(r), r + 3..=r + 5, Just(seed)).prop_map(|(r, t, seed)| {
            // at most t − r + 1 edges fit on all of V(A)
            let sigma = (t - r) as f64 / (t as f64).powi(r as i32 - 1);
            SparseParams::new(r, t, t, sigma, seed)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sparse_builds_are_deterministic(p in sparse_params()) {
        let a = build_sparse(&p);
        let b = build_sparse(&p);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a.graph, &b.graph);
                prop_assert!(verify_edge_count(&a.graph, p.sigma));
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "same seed gave different outcomes"),
        }
    }

    #[test]
    fn local_sparsity_is_downward_closed(p in sparse_params(), keep in prop::collection::vec(any::<bool>(), 16)) {
        let Ok(built) = build_sparse(&p) else { return Ok(()); };
        let a = built.graph;
        prop_assert!(verify_local_sparsity(&a, p.k).unwrap().ok);
        let verts: Vec<usize> = (0..a.n()).filter(|&v| keep[v]).collect();
        prop_assume!(verts.len() >= p.r);
        let sub = a.induced_subgraph(&verts).unwrap();
        prop_assert!(verify_local_sparsity(&sub, p.k).unwrap().ok);
        let fewer: Vec<Vec<usize>> = a.edges().skip(1).map(|e| e.iter().map(|&v| v as usize).collect()).collect();
        let thinner = Hypergraph::new(a.r(), a.n(), fewer).unwrap();
        prop_assert!(verify_local_sparsity(&thinner, p.k).unwrap().ok);
    }

    #[test]
    fn sparse_five_graphs_satisfy_claim1(t in 6usize..=8, seed in 0u64..500) {
        let sigma = (t - 5) as f64 / (t as f64).powi(4);
        let Ok(built) = build_sparse(&SparseParams::new(5, t, t, sigma, seed)) else {
            return Ok(());
        };
        let rep = verify_claim1(&built.graph, 200, seed).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.notes);
    }
}

//! Cross-module invariants and golden decompositions.

use scd::{
    check_good, check_orthogonal, check_scd, gks_scd, jordan_scd, standard_scd, to_orthogonal,
    try_unroll_family, unroll_scd, Chain, ChainDecomposition, FamilyUnroll, Kind, Subset,
    UnrollMode,
};

fn decomposition(n: u32, chains: &[&[&str]]) -> ChainDecomposition {
    ChainDecomposition::new(
        n,
        Kind::Cube,
        chains
            .iter()
            .map(|c| Chain::new(n, c.iter().map(|s| s.parse::<Subset>().unwrap()).collect()))
            .collect(),
    )
}

/// Three pairwise orthogonal decompositions of the 4-cube into six
/// chains each (not all symmetric: no three almost-orthogonal SCDs of
/// Q_4 exist).
#[test]
fn three_pairwise_orthogonal_decompositions_of_q4() {
    let d1 = decomposition(
        4,
        &[
            &["0000", "1000", "1001"],
            &["0100", "1100"],
            &["0010", "1010", "1110"],
            &["0001", "0101", "1101"],
            &["0110", "0111"],
            &["0011", "1011", "1111"],
        ],
    );
    let d2 = decomposition(
        4,
        &[
            &["0000", "0100", "0101"],
            &["0010", "0110"],
            &["1000", "1100", "1110"],
            &["0001", "0011", "0111"],
            &["1010", "1011"],
            &["1001", "1101", "1111"],
        ],
    );
    let d3 = decomposition(
        4,
        &[
            &["0000", "0010", "0011"],
            &["1000", "1010"],
            &["0100", "0110", "1110"],
            &["0001", "1001", "1011"],
            &["1100", "1101"],
            &["0101", "0111", "1111"],
        ],
    );
    let family = [d1, d2, d3];
    for d in &family {
        // six saturated chains partitioning the cube
        assert_eq!(d.chains.len(), 6);
        let mut words: Vec<u32> = d
            .chains
            .iter()
            .flat_map(|c| c.elements.iter().map(|x| x.word()))
            .collect();
        words.sort_unstable();
        assert_eq!(words, (0..16).collect::<Vec<u32>>());
        assert!(d.chains.iter().all(|c| c.is_saturated()));
    }
    for a in 0..3 {
        for b in a + 1..3 {
            let report = check_orthogonal(&family[a], &family[b]);
            assert!(report.pass, "{a} vs {b}: {report}");
        }
    }
}

#[test]
fn almost_orthogonal_families_are_edge_disjoint() {
    for n in [5u32, 7, 9] {
        let scd = jordan_scd(n).unwrap();
        let family = match try_unroll_family(
            &[scd.clone(), scd.complement()],
            UnrollMode::AlmostOrthogonal,
        )
        .unwrap()
        {
            FamilyUnroll::Unrolled(f) => f,
            FamilyUnroll::Conflict(c) => panic!("n={n}: {c:?}"),
        };
        let report = scd::check_edge_disjoint(&family);
        assert!(report.pass, "n={n}: {report}");
    }
}

#[test]
fn unrolled_families_cover_their_source_necklaces() {
    for n in [6u32, 9, 12] {
        let scd = jordan_scd(n).unwrap();
        let d = unroll_scd(&scd).unwrap();
        assert!(check_scd(&d).pass, "n={n}");
    }
}

#[test]
fn four_scd_family_of_q7_becomes_orthogonal() {
    // the searched four-family of Q_7 turns pairwise orthogonal once the
    // empty set moves out of all but one longest chain
    use scd::sat::{search_loop, SearchConfig, SearchMode, SearchOutcome};
    let cfg = SearchConfig::recommended(7, 4, SearchMode::AlmostOrthogonalGood).unwrap();
    let family = match search_loop(&cfg).unwrap() {
        SearchOutcome::Found(f) => f,
        other => panic!("{other:?}"),
    };
    let good = check_good(&family).unwrap();
    assert!(good.report.pass);
    let ortho = to_orthogonal(&family).unwrap();
    for a in 0..4 {
        for b in a + 1..4 {
            let report = check_orthogonal(&ortho[a], &ortho[b]);
            assert!(report.pass, "{a} vs {b}: {report}");
        }
        assert_eq!(ortho[a].chains.len(), 35);
    }
}

#[test]
fn mixed_constructions_exceed_capacities_at_n7() {
    // the block-code and trimmed constructions plus their complements
    // overload some necklace edge, so the four of them are rejected
    // before any unroll search; finding a fourth decomposition requires
    // the solver
    let v = gks_scd(7).unwrap();
    let w = jordan_scd(7).unwrap();
    let result = try_unroll_family(
        &[v.clone(), v.complement(), w.clone(), w.complement()],
        UnrollMode::AlmostOrthogonal,
    );
    assert!(matches!(result, Err(scd::Error::CapacityViolation(_))));
}

#[test]
fn standard_complement_pair_becomes_orthogonal_at_n5() {
    let d = standard_scd(5);
    let family = vec![d.complement(), d];
    let ortho = to_orthogonal(&family).unwrap();
    assert!(check_orthogonal(&ortho[0], &ortho[1]).pass);
}

use eulersig::euler::export::{parse_grid, parse_triplets, to_grid, to_triplets};
use eulersig::euler::{
    build_mapping_matrix, check_partial_geometry, connectivity, connectivity_from,
    construct_euler_square, count_cycles, extract_protograph, girth, prime_mapping,
    verify_properties, ConstructionMethod, EulerSquare, DEFAULT_CYCLE_BUDGET,
};
use eulersig::BinaryMatrix;

// Row shared by two columns of an RC-constrained matrix.
fn shared_row(m: &BinaryMatrix, a: usize, b: usize) -> Option<usize> {
    m.col(a).iter().copied().find(|r| m.col(b).contains(r))
}

fn neighbours(m: &BinaryMatrix) -> Vec<Vec<usize>> {
    (0..m.ncols())
        .map(|c| {
            (0..m.ncols())
                .filter(|&o| o != c && shared_row(m, c, o).is_some())
                .collect()
        })
        .collect()
}

// Six-cycles of an RC matrix are column triangles whose three shared rows differ.
fn six_cycles_oracle(m: &BinaryMatrix) -> u64 {
    let nb = neighbours(m);
    let mut count = 0;
    for a in 0..m.ncols() {
        for &b in nb[a].iter().filter(|&&b| b > a) {
            for &c in nb[b].iter().filter(|&&c| c > b) {
                if let (Some(x), Some(y), Some(z)) = (
                    shared_row(m, a, b),
                    shared_row(m, b, c),
                    shared_row(m, c, a),
                ) {
                    if x != y && y != z && x != z {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

// Eight-cycles are closed column walks of length four with distinct columns
// and distinct shared rows; each cycle appears as 4 rotations x 2 directions.
fn eight_cycles_oracle(m: &BinaryMatrix) -> u64 {
    let nb = neighbours(m);
    let mut count = 0;
    for a in 0..m.ncols() {
        for &b in &nb[a] {
            for &c in nb[b].iter().filter(|&&c| c != a) {
                for &d in nb[c].iter().filter(|&&d| d != a && d != b) {
                    let Some(w) = shared_row(m, d, a) else {
                        continue;
                    };
                    let rows = [
                        shared_row(m, a, b).unwrap(),
                        shared_row(m, b, c).unwrap(),
                        shared_row(m, c, d).unwrap(),
                        w,
                    ];
                    if (0..4).all(|i| (i + 1..4).all(|j| rows[i] != rows[j])) {
                        count += 1;
                    }
                }
            }
        }
    }
    count / 8
}

#[test]
fn enumeration_agrees_with_adjacency_oracle() {
    for (g, r) in [(3, 2), (5, 2), (5, 3), (5, 4), (7, 2)] {
        let f = prime_mapping(g, r).unwrap();
        let m = f.matrix();
        assert_eq!(
            count_cycles(m, 4, DEFAULT_CYCLE_BUDGET).unwrap(),
            0,
            "E({g},{r})"
        );
        assert_eq!(
            count_cycles(m, 6, DEFAULT_CYCLE_BUDGET).unwrap(),
            six_cycles_oracle(m),
            "E({g},{r})"
        );
        assert_eq!(
            count_cycles(m, 8, DEFAULT_CYCLE_BUDGET).unwrap(),
            eight_cycles_oracle(m),
            "E({g},{r})"
        );
    }
}

#[test]
fn eight_cycle_closed_form_for_two_layers() {
    for g in [3u64, 5, 7] {
        let f = prime_mapping(g as usize, 2).unwrap();
        let want = g * g * (g - 1) * (g - 1) / 4;
        assert_eq!(
            count_cycles(f.matrix(), 8, DEFAULT_CYCLE_BUDGET).unwrap(),
            want
        );
    }
}

#[test]
fn six_cycle_formula_is_only_a_cross_check() {
    // the closed form (1/6)γ³(γ−1)(ρ−2)(ρ−1) is not even an integer for E(5,3)
    let f = prime_mapping(5, 3).unwrap();
    let formula = 125.0 * 4.0 * 1.0 * 2.0 / 6.0;
    assert!((formula - 166.0f64).abs() > 0.5);
    let enumerated = count_cycles(f.matrix(), 6, DEFAULT_CYCLE_BUDGET).unwrap();
    assert_eq!(enumerated, six_cycles_oracle(f.matrix()));
    assert_eq!(enumerated, 100);
}

#[test]
fn girth_by_layer_count() {
    assert_eq!(girth(prime_mapping(3, 2).unwrap().matrix()), Some(8));
    assert_eq!(girth(prime_mapping(7, 2).unwrap().matrix()), Some(8));
    assert_eq!(girth(prime_mapping(5, 3).unwrap().matrix()), Some(6));
    assert_eq!(girth(prime_mapping(5, 4).unwrap().matrix()), Some(6));
}

#[test]
fn connectivity_is_rho_times_gamma_minus_one_at_every_node() {
    for (g, r) in [(3, 2), (5, 2), (5, 4), (7, 3), (11, 2)] {
        let f = prime_mapping(g, r).unwrap();
        assert_eq!(connectivity(f.matrix()), r * (g - 1));
        assert!((0..g * g).all(|v| connectivity_from(f.matrix(), v) == r * (g - 1)));
    }
}

fn e32_matrix() -> Vec<Vec<u8>> {
    vec![
        vec![1, 0, 0, 0, 0, 1, 0, 1, 0],
        vec![0, 1, 0, 1, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 1, 0, 1, 0, 0],
        vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
        vec![0, 1, 0, 0, 0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 0, 0, 0, 1, 0],
    ]
}

#[test]
fn reference_square_gives_expected_matrix() {
    let one_based = [
        [[1, 1], [2, 2], [3, 3]],
        [[2, 3], [3, 1], [1, 2]],
        [[3, 2], [1, 3], [2, 1]],
    ];
    let cells: Vec<Vec<Vec<usize>>> = one_based
        .iter()
        .map(|row| row.iter().map(|t| t.to_vec()).collect())
        .collect();
    let sq = EulerSquare::from_cells_one_based(&cells).unwrap();
    assert_eq!(build_mapping_matrix(&sq).matrix().to_dense(), e32_matrix());
    let built = construct_euler_square(3, 2, ConstructionMethod::PrimeModular).unwrap();
    assert_eq!(
        build_mapping_matrix(&built).matrix().to_dense(),
        e32_matrix()
    );
}

#[test]
fn exports_read_back_and_keep_properties() {
    for (g, r) in [(3, 2), (5, 4), (7, 2)] {
        let f = prime_mapping(g, r).unwrap();
        let a = parse_triplets(&to_triplets(&f)).unwrap();
        let b = parse_grid(&to_grid(&f)).unwrap();
        assert_eq!(a, f);
        assert_eq!(b, f);
        assert!(verify_properties(&a).all());
    }
}

#[test]
fn protograph_round_trip() {
    for (g, r) in [(3, 2), (5, 2), (7, 4)] {
        let f = prime_mapping(g, r).unwrap();
        let p = extract_protograph(&f).unwrap();
        assert_eq!(p.expand(), f.matrix().transpose());
    }
}

#[test]
fn partial_geometry_delta_is_rho_minus_one() {
    for (g, r) in [(3, 2), (5, 3), (5, 4), (7, 5)] {
        let pag = check_partial_geometry(&prime_mapping(g, r).unwrap());
        assert!(pag.holds(), "E({g},{r})");
        assert_eq!(pag.delta, r - 1);
    }
}

#[test]
fn field_and_product_orders() {
    for (g, r, m) in [
        (4, 3, ConstructionMethod::FiniteField),
        (9, 2, ConstructionMethod::FiniteField),
        (12, 2, ConstructionMethod::MacNeish),
    ] {
        let sq = construct_euler_square(g, r, m).unwrap();
        let f = build_mapping_matrix(&sq);
        let rep = verify_properties(&f);
        assert!(rep.biregular && rep.rc_constrained, "E({g},{r})");
    }
}

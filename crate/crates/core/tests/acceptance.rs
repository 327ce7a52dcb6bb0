//! End-to-end acceptance checks for the library. Each test covers one
//! numbered criterion and prints a single PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see all ten lines.

mod common;

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};

use common::{caste_of_partition, corpus, partitions};
use quasivalue::classify::{
    enumerate_subgroups, exotic_embedding, is_set_transitive, is_supertransitive, lcm_divides,
    standard_s5_in_s6, verify_classification,
};
use quasivalue::linalg::{affine_rank_of_points, rank_of_rows};
use quasivalue::marginal::{affine_rank, average, coset_constant, marginal_matrix, shapley_family};
use quasivalue::symspace::{
    burnside_count, dimension_cycle_index, dimension_orbit, orbit_structure, parametrize,
};
use quasivalue::{
    rat, Coalition, Game, MarginalDistribution, Parametrization, PermGroup, Permutation, Rat,
    ValueMatrix,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(number: usize, summary: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {:2}: PASS — {}", number, summary),
        Err(cause) => {
            println!("criterion {:2}: FAIL — {}", number, summary);
            resume_unwind(cause);
        }
    }
}

#[test]
fn c01_dimension_formulas_agree_across_the_corpus() {
    criterion(
        1,
        "orbit-count and cycle-index dimension formulas agree on every corpus group",
        || {
            for cg in corpus() {
                assert_eq!(
                    dimension_orbit(&cg.group),
                    dimension_cycle_index(&cg.group),
                    "group {}",
                    cg.name
                );
            }
        },
    );
}

/// `Σ_i s_i·Π_{j≠i}(1+s_j) − Π_i(1+s_i) + 1` for caste sizes `s`.
fn caste_closed_form(parts: &[usize]) -> usize {
    let product: i64 = parts.iter().map(|&s| (s + 1) as i64).product();
    let sum: i64 = (0..parts.len())
        .map(|i| parts[i] as i64 * product / (parts[i] + 1) as i64)
        .sum();
    (sum - product + 1) as usize
}

/// `2^{n−1} − (1/n)·Σ_{f|n} φ(f)·2^{n/f} + 1`.
fn cyclic_closed_form(n: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let phi = |m: usize| (1..=m).filter(|k| gcd(*k, m) == 1).count();
    let divisor_sum: usize = (1..=n)
        .filter(|f| n % f == 0)
        .map(|f| phi(f) << (n / f))
        .sum();
    assert_eq!(divisor_sum % n, 0, "Burnside sum must divide evenly");
    (1 << (n - 1)) + 1 - divisor_sum / n
}

#[test]
fn c02_dimensions_match_the_closed_forms() {
    criterion(
        2,
        "dimensions of the named families match their closed forms",
        || {
            for n in 1..=8 {
                assert_eq!(dimension_orbit(&PermGroup::symmetric(n)), 0, "S{}", n);
            }
            for n in 4..=8 {
                assert_eq!(dimension_orbit(&PermGroup::alternating(n)), 0, "A{}", n);
            }
            assert_eq!(dimension_orbit(&PermGroup::cyclic(3)), 1);
            for n in 1..=8 {
                let expected = n * (1 << (n - 1)) + 1 - (1 << n);
                assert_eq!(dimension_orbit(&PermGroup::trivial(n)), expected, "trivial {}", n);
            }
            for n in 1..=8 {
                for parts in partitions(n) {
                    let g = caste_of_partition(&parts);
                    assert_eq!(
                        dimension_orbit(&g),
                        caste_closed_form(&parts),
                        "caste {:?}",
                        parts
                    );
                    if parts.len() == 2 {
                        assert_eq!(caste_closed_form(&parts), parts[0] * parts[1]);
                    }
                }
            }
            for n in 2..=10 {
                assert_eq!(dimension_orbit(&PermGroup::cyclic(n)), cyclic_closed_form(n), "C{}", n);
                assert_eq!(dimension_cycle_index(&PermGroup::cyclic(n)), cyclic_closed_form(n));
            }
        },
    );
}

#[test]
fn c03_uniform_marginal_average_is_shapley() {
    criterion(
        3,
        "uniform average of all n! marginal operators equals the Shapley matrix for n = 1..7",
        || {
            for n in 1..=7 {
                assert_eq!(
                    average(&MarginalDistribution::<Rat>::uniform(n)),
                    ValueMatrix::shapley(n),
                    "n = {}",
                    n
                );
            }
        },
    );
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// One representative per right coset `G·π`, in lexicographic scan order.
fn transversal(group: &PermGroup) -> Vec<Permutation> {
    let n = group.degree();
    let mut covered = vec![false; factorial(n)];
    let mut reps = Vec::new();
    for p in Permutation::all(n) {
        if covered[p.lex_rank()] {
            continue;
        }
        for g in group.elements() {
            covered[g.compose(&p).lex_rank()] = true;
        }
        reps.push(p);
    }
    assert_eq!(reps.len() * group.order(), factorial(n));
    reps
}

fn random_coset_distribution(
    group: &PermGroup,
    reps: &[Permutation],
    rng: &mut ChaCha8Rng,
) -> MarginalDistribution {
    loop {
        let numerators: Vec<i64> = reps.iter().map(|_| rng.gen_range(0..=6)).collect();
        let total: i64 = numerators.iter().sum();
        if total == 0 {
            continue;
        }
        let weights: Vec<(Permutation, Rat)> = reps
            .iter()
            .zip(&numerators)
            .map(|(p, &a)| (p.clone(), rat(a, total * group.order() as i64)))
            .collect();
        return coset_constant(group, &weights).expect("transversal with unit total mass");
    }
}

#[test]
fn c04_coset_constant_averages_are_symmetric() {
    criterion(
        4,
        "random coset-constant averages are G-symmetric quasi-values; A_n forces Shapley",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(41);
            let cases: Vec<(&str, PermGroup)> = vec![
                ("C4", PermGroup::cyclic(4)),
                ("A4", PermGroup::alternating(4)),
                ("A5", PermGroup::alternating(5)),
                ("caste(2,3)", caste_of_partition(&[2, 3])),
                ("exotic image", exotic_embedding().image_group),
            ];
            for (name, g) in &cases {
                let reps = transversal(g);
                for round in 0..20 {
                    let d = random_coset_distribution(g, &reps, &mut rng);
                    let avg = average(&d);
                    assert!(avg.check_quasivalue().ok(), "{} round {}", name, round);
                    assert!(avg.check_symmetry(g).ok(), "{} round {}", name, round);
                    if name.starts_with('A') {
                        assert_eq!(avg, ValueMatrix::shapley(g.degree()), "{}", name);
                    }
                }
            }
        },
    );
}

/// Linear rank of the direction matrices. Small systems are eliminated
/// densely; for large ones the rank is taken per χ-orbit on the block
/// coordinates, which is faithful because each direction is constant on
/// every X-orbit and supported in a single χ-orbit, so ranks add over the
/// disjoint supports.
fn direction_rank(group: &PermGroup, p: &Parametrization) -> usize {
    let n = group.degree();
    let len = n * ((1usize << n) - 1);
    let dim = p.dimension();
    if dim == 0 {
        return 0;
    }
    if dim * dim * len <= 20_000_000 {
        let rows: Vec<Vec<Rat>> = p.directions().iter().map(|d| d.entries().to_vec()).collect();
        return rank_of_rows(rows);
    }
    let structure = orbit_structure(group);
    let mut total = 0;
    for orbit in structure.chi_orbits() {
        let rep = orbit.representative();
        let rows: Vec<Vec<Rat>> = p
            .infos()
            .iter()
            .zip(p.directions())
            .filter(|(info, _)| info.representative == rep)
            .map(|(_, d)| {
                orbit
                    .blocks()
                    .iter()
                    .map(|block| d.entry(block[0], rep).clone())
                    .collect()
            })
            .collect();
        if !rows.is_empty() {
            total += rank_of_rows(rows);
        }
    }
    total
}

fn random_coefficients(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    let mut coeffs = vec![rat(0, 1); dim];
    let mut indices: Vec<usize> = (0..dim).collect();
    indices.shuffle(rng);
    for &j in indices.iter().take(dim.min(8)) {
        coeffs[j] = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    }
    coeffs
}

#[test]
fn c05_parametrization_spans_the_space() {
    criterion(
        5,
        "directions are independent with rank = dimension and random samples pass both checkers",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(43);
            for cg in corpus() {
                let p: Parametrization = parametrize(&cg.group);
                assert_eq!(p.dimension(), dimension_orbit(&cg.group), "{}", cg.name);
                assert_eq!(direction_rank(&cg.group, &p), p.dimension(), "{}", cg.name);
                for round in 0..20 {
                    let m = p
                        .sample(&random_coefficients(&mut rng, p.dimension()))
                        .expect("coefficient count matches");
                    assert!(m.check_quasivalue().ok(), "{} round {}", cg.name, round);
                    assert!(m.check_symmetry(&cg.group).ok(), "{} round {}", cg.name, round);
                }
            }
            for n in 1..=8 {
                let p: Parametrization = parametrize(&PermGroup::symmetric(n));
                assert!(p.directions().is_empty(), "S{} must be rigid", n);
            }
        },
    );
}

#[test]
fn c06_classification_is_verified() {
    criterion(
        6,
        "supertransitive classification verified exhaustively to n = 5 and targeted at n = 6",
        || {
            for n in 1..=5 {
                let report = verify_classification(n);
                assert!(report.exhaustive);
                assert!(report.ok(), "n = {}: {:?}", n, report.failures);
            }
            let report = verify_classification(5);
            assert_eq!(report.supertransitive, vec!["A5".to_string(), "S5".to_string()]);
            let targeted = verify_classification(6);
            assert!(!targeted.exhaustive);
            assert!(targeted.ok(), "{:?}", targeted.failures);
            // arithmetic filter: lcm(1..5) = 60 rejects the exceptional
            // set-transitive orders at n = 5, lcm(1..9) = 2520 those at n = 9
            assert!(!lcm_divides(10, 5));
            assert!(!lcm_divides(20, 5));
            assert!(!lcm_divides(504, 9));
            assert!(!lcm_divides(1512, 9));
            assert!(lcm_divides(60, 5));
            assert!(lcm_divides(2520, 9));
        },
    );
}

#[test]
fn c07_exotic_embedding_is_rigid() {
    criterion(
        7,
        "the exotic S5-in-S6 image reproduces the reference tables and has dimension 0",
        || {
            let report = exotic_embedding();
            assert_eq!(report.image_group.order(), 120);
            assert_eq!(report.transposition_images.len(), 10);
            for ((a, b), image) in &report.transposition_images {
                assert!(a < b, "({} {})", a, b);
                assert_eq!(image.cycle_type().counts(), &[0, 3, 0, 0, 0, 0]);
            }
            let image_of_12 = &report
                .transposition_images
                .iter()
                .find(|((a, b), _)| (*a, *b) == (1, 2))
                .expect("(1 2) is a transposition")
                .1;
            assert_eq!(image_of_12.to_string(), "(1 6)(2 4)(3 5)");

            // cycle shapes of embedded 3-, 4- and 5-cycles
            let embed = |text: &str| report.embed(&Permutation::parse_cycles(text, 5).unwrap());
            assert_eq!(embed("(1 2 3)").cycle_type().counts(), &[0, 0, 2, 0, 0, 0]);
            assert_eq!(embed("(1 2 3 4)").cycle_type().counts(), &[2, 0, 0, 1, 0, 0]);
            assert_eq!(embed("(1 2 3 4 5)").cycle_type().counts(), &[1, 0, 0, 0, 1, 0]);

            assert!(is_supertransitive(&report.image_group).ok());
            assert_eq!(dimension_orbit(&report.image_group), 0);
            assert_eq!(dimension_cycle_index(&report.image_group), 0);

            let standard = standard_s5_in_s6();
            assert_eq!(standard.order(), 120);
            assert!(!is_supertransitive(&standard).ok());
            assert!(dimension_orbit(&standard) > 0);
        },
    );
}

#[test]
fn c08_marginal_operators_are_equivariant() {
    criterion(
        8,
        "relabeling equivariance of marginal operators holds for all (g, π, i, R) at n = 4",
        || {
            let n = 4;
            let all = Permutation::all(n);
            let matrices: Vec<ValueMatrix> = all.iter().map(marginal_matrix).collect();
            for g in &all {
                for (pi, m_pi) in all.iter().zip(&matrices) {
                    let m_gpi = &matrices[g.compose(pi).lex_rank()];
                    for i in 0..n {
                        for r in Coalition::nonempty(n) {
                            assert_eq!(
                                m_gpi.entry(g.apply(i), g.apply_coalition(r)),
                                m_pi.entry(i, r),
                                "g = {}, π = {}, i = {}, R = {}",
                                g,
                                pi,
                                i,
                                r
                            );
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn c09_marginal_operators_are_affinely_dependent() {
    criterion(
        9,
        "the 24 marginal operators at n = 4 are affinely dependent; the 5-member family is not",
        || {
            let all = Permutation::all(4);
            // as operators the 24 points collapse into the 17-dimensional
            // plane cut out by efficiency, hence well below rank 23 …
            let points: Vec<Vec<Rat>> = all
                .iter()
                .map(|p| marginal_matrix::<Rat>(p).entries().to_vec())
                .collect();
            let operator_rank = affine_rank_of_points(&points);
            assert!(operator_rank < 23, "rank {}", operator_rank);
            assert!(operator_rank <= 17, "rank {}", operator_rank);
            // … while as distributions the point masses are the vertices of
            // the full simplex
            let masses: Vec<MarginalDistribution> =
                all.iter().map(MarginalDistribution::point_mass).collect();
            assert_eq!(affine_rank(&masses), 23);

            // five-member family at n = 5, α = 1/2: independent offsets,
            // every average is Shapley
            let family: Vec<MarginalDistribution> = (0..5)
                .map(|i| shapley_family(Coalition::full(5).without(i), rat(1, 2)).unwrap())
                .collect();
            assert_eq!(affine_rank(&family), 5);
            for d in &family {
                assert_eq!(average(d), ValueMatrix::shapley(5));
            }
        },
    );
}

fn random_game(rng: &mut ChaCha8Rng, n: usize) -> Game {
    let mut v = Game::zeros(n);
    for c in Coalition::nonempty(n) {
        v.set_value(c, rat(rng.gen_range(-8..=8), rng.gen_range(1..=4)));
    }
    v
}

/// A random game in which the given player is null: dividends vanish on
/// every coalition containing them.
fn random_game_with_null(rng: &mut ChaCha8Rng, n: usize, null: usize) -> Game {
    let mut dividends = vec![rat(0, 1); 1 << n];
    for c in Coalition::nonempty(n) {
        if !c.contains(null) {
            dividends[c.mask() as usize] = rat(rng.gen_range(-8..=8), rng.gen_range(1..=4));
        }
    }
    Game::from_dividends(n, dividends).expect("empty dividend is zero")
}

#[test]
fn c10_structural_properties_hold_across_the_corpus() {
    criterion(
        10,
        "Möbius, orbit–stabilizer, Burnside, axiom, and monotonicity properties all hold",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(2718);

            // Möbius round-trip on random games
            for n in 1..=6 {
                for _ in 0..10 {
                    let v = random_game(&mut rng, n);
                    let d = v.harsanyi_dividends();
                    assert_eq!(Game::from_dividends(n, d).unwrap(), v);
                }
            }

            // null-player and efficiency for Shapley and for arbitrary
            // quasi-values sampled from the widest space
            for n in 2..=5 {
                let free: Parametrization = parametrize(&PermGroup::trivial(n));
                for _ in 0..10 {
                    let m = free
                        .sample(&random_coefficients(&mut rng, free.dimension()))
                        .unwrap();
                    let v = random_game(&mut rng, n);
                    assert_eq!(m.apply(&v).total(), v.value(Coalition::full(n)).clone());
                    let null = rng.gen_range(0..n);
                    let w = random_game_with_null(&mut rng, n, null);
                    assert_eq!(m.apply(&w).payoff()[null], rat(0, 1));
                    assert_eq!(ValueMatrix::shapley(n).apply(&w).payoff()[null], rat(0, 1));
                }
            }

            for cg in corpus() {
                let g = &cg.group;
                let n = g.degree();

                // orbit–stabilizer on points
                for orbit in g.orbits_of(0..n, |p, x| p.apply(*x)) {
                    let stab = g.stabilizer(Coalition::singleton(n, orbit[0]));
                    assert_eq!(stab.order() * orbit.len(), g.order(), "{}", cg.name);
                }

                // Burnside integrality on the coalition action
                let fix = |p: &Permutation| {
                    Coalition::all(n)
                        .filter(|c| p.apply_coalition(*c) == *c)
                        .count()
                };
                let counted = burnside_count(g, fix).expect("a genuine action");
                let enumerated = g
                    .orbits_of(Coalition::all(n), |p, c| p.apply_coalition(*c))
                    .len();
                assert_eq!(counted, enumerated, "{}", cg.name);

                // supertransitive ⇒ set-transitive; dimension 0 ⇔ supertransitive
                let st = is_supertransitive(g).ok();
                if st {
                    assert!(is_set_transitive(g), "{}", cg.name);
                }
                assert_eq!(st, dimension_orbit(g) == 0, "{}", cg.name);
            }

            // dimension shrinks as the group grows, over the full S₄ lattice
            let subgroups = enumerate_subgroups(4);
            let dims: Vec<usize> = subgroups.iter().map(dimension_orbit).collect();
            for (h, dim_h) in subgroups.iter().zip(&dims) {
                for (g, dim_g) in subgroups.iter().zip(&dims) {
                    if h.is_subgroup_of(g) {
                        assert!(dim_h >= dim_g);
                    }
                }
            }
        },
    );
}

use pearlhom::algebra::{smith_normal_form, EuclideanDomain, Ring};
use pearlhom::homology::{expanded_homology, homology_window};
use pearlhom::pearl::{assemble_boundary, builtin_fixture, CriticalPoint, DiskRecord, Model, QuantumDatum};
use pearlhom::specialize::{
    change_coefficients, identify_with_novikov, novikov_specialize, quotient_by_subsystem,
    Subsystem,
};
use pearlhom::spectral::{compute_pages, maslov_filtration, morse_part};
use pearlhom::{
    ClassGroup, ClassVector, Coefficients, GradedComplex, GroupRingElement, Integer, Matrix,
    Rational,
};
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = Matrix<Integer>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows = v
                .chunks(c)
                .map(|row| row.iter().map(|&x| Integer::from(x)).collect())
                .collect();
            Matrix::from_rows(rows, c)
        })
    })
}

fn element_strategy(rank: usize) -> impl Strategy<Value = GroupRingElement<Integer>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i64..=2, rank)), 0..4).prop_map(
        move |terms| {
            let mut e = GroupRingElement::zero(rank);
            for (c, class) in terms {
                e.add_term(Integer::from(c), ClassVector(class));
            }
            e
        },
    )
}

fn torus_strategy() -> impl Strategy<Value = QuantumDatum> {
    let disk = (prop::collection::vec(-2i64..=2, 2), -2i64..=2, -2i64..=2, 1i64..=2);
    (prop::collection::vec(disk, 0..5), -1i64..=2).prop_map(|(disks, m1)| {
        let maslov = vec![2, 2 * m1];
        QuantumDatum {
            name: "prop".into(),
            dimension: 2,
            model: Model::Torus2,
            rank: 2,
            generators: vec!["a".into(), "b".into()],
            critical_points: [("q2", 2), ("x", 1), ("y", 1), ("q0", 0)]
                .map(|(id, index)| CriticalPoint {
                    id: id.into(),
                    index,
                })
                .to_vec(),
            disks: disks
                .into_iter()
                .map(|(mut class, w0, w1, count)| {
                    class[0] = (2 - maslov[1] * class[1]) / 2;
                    DiskRecord {
                        class,
                        winding: [w0, w1],
                        count,
                    }
                })
                .collect(),
            maslov,
            boundary: Vec::new(),
        }
    })
}

proptest! {
    #[test]
    fn smith_form_is_diagonal_and_divisible(m in matrix_strategy()) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.diagonal());
        for w in s.factors.windows(2) {
            prop_assert!(w[1].div_rem_euclid(&w[0]).1 == Integer::from(0));
        }
        let q = m.map(|x| Rational::from_integer(x.clone()));
        prop_assert_eq!(s.rank(), q.rank());
    }

    #[test]
    fn group_ring_is_commutative_and_associative(
        a in element_strategy(2), b in element_strategy(2), c in element_strategy(2)
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let sum = a.clone() + b.clone();
        prop_assert_eq!(sum.mul(&c).unwrap(), a.mul(&c).unwrap() + b.mul(&c).unwrap());
    }

    #[test]
    fn torus_boundary_squares_to_zero(d in torus_strategy()) {
        let c = assemble_boundary(&d).unwrap();
        prop_assert!(c.check_grading().is_none());
        prop_assert!(c.check_d_squared().is_none());
    }

    #[test]
    fn novikov_equals_kernel_quotient(d in torus_strategy()) {
        let c = assemble_boundary(&d).unwrap();
        let direct = novikov_specialize(&c).unwrap();
        let g = Subsystem::maslov_kernel(c.group()).unwrap();
        let chi = pearlhom::specialize::SignCharacter::trivial(g.generators().len());
        let via = identify_with_novikov(&quotient_by_subsystem(&c, &g, &chi).unwrap()).unwrap();
        let a: Vec<_> = direct.entries().map(|(k, e)| (k, e.clone())).collect();
        let b: Vec<_> = via.entries().map(|(k, e)| (k, e.clone())).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rational_rank_is_integer_free_rank(d in torus_strategy()) {
        let c = novikov_specialize(&assemble_boundary(&d).unwrap()).unwrap();
        let q: GradedComplex<Rational> = c.map_entries(Coefficients::Q, c.group().clone(), |a| {
            Ok(a.map_coefficients(|x| Rational::from_integer(x.clone())))
        }).unwrap();
        let hz = homology_window(&c, 0..=1).unwrap();
        let hq = homology_window(&q, 0..=1).unwrap();
        for (ez, eq) in hz.entries.iter().zip(&hq.entries) {
            prop_assert_eq!(ez.group.free_rank, eq.group.free_rank);
        }
    }

    #[test]
    fn pages_shrink_and_start_at_morse_homology(d in torus_strategy()) {
        let z = assemble_boundary(&d).unwrap();
        let q: GradedComplex<Rational> = change_coefficients(&z, &Coefficients::Q).unwrap();
        let n = novikov_specialize(&q).unwrap();
        let f = maslov_filtration(&n).unwrap();
        let ss = compute_pages(&f, 3).unwrap();
        for w in ss.pages.windows(2) {
            for e in &w[1].entries {
                prop_assert!(e.dim <= w[0].dim(e.p, e.q));
            }
        }
        let morse = morse_part(&f).unwrap();
        let nl = f.min_maslov();
        for e in &ss.page(1).unwrap().entries {
            let h = expanded_homology(&morse, e.q + e.p - e.p * nl).unwrap();
            prop_assert_eq!(e.dim, h.free_rank);
        }
    }
}

#[test]
fn class_group_reduce_is_idempotent() {
    let g = ClassGroup::new(
        vec!["a".into(), "b".into()],
        vec![0, 4],
        vec![2, 0],
        None,
    );
    let x = ClassVector(vec![3, -9]);
    assert_eq!(g.reduce(&g.reduce(&x)), g.reduce(&x));
    assert!(Integer::from(-1).is_unit());
}

#[test]
fn fixtures_are_cycles_at_the_unit() {
    for name in pearlhom::pearl::standard_fixture_names() {
        let c = builtin_fixture(&name).unwrap();
        assert!(c.boundary(&c.unit().unwrap()).unwrap().is_empty(), "{name}");
    }
}

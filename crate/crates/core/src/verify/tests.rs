use super::*;
use crate::arith::{ParamPoly, Rat};
use crate::error::Error;
use crate::generation::{generate_family, GenSequence, GeneratedFamily};
use crate::miura::dmu_dc_at;

fn family(n: usize, js: &[usize]) -> GeneratedFamily {
    generate_family(&GenSequence::new(n, js).unwrap()).unwrap()
}

#[test]
fn empty_sequence_has_no_flow() {
    let fam = family(2, &[]);
    for r in [1, 3, 5] {
        assert!(mkdv_field(&fam, &[], r).unwrap().is_zero());
    }
}

#[test]
fn even_flow_index_rejected() {
    let fam = family(2, &[0]);
    assert!(matches!(mkdv_field(&fam, &[Rat::one()], 2), Err(Error::EvenPower(2))));
}

#[test]
fn single_step_closed_forms() {
    for n in 2..=3 {
        for j in 0..=n {
            let fam = family(n, &[j]);
            let c = [Rat::new(5, 3)];
            let f1 = mkdv_field(&fam, &c, 1).unwrap();
            let d = dmu_dc_at(&fam, 1, &c).unwrap();
            let minus_d: Vec<_> = d.iter().map(|e| -e).collect();
            assert_eq!(f1.entries, minus_d, "n={n} j={j}");
            assert!(f1.is_tangent());
            for r in [3, 5, 7] {
                assert!(mkdv_field(&fam, &c, r).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn degree_support_bound() {
    for js in [vec![0], vec![0, 1], vec![1, 0, 2], vec![0, 1, 2, 1]] {
        let seq = GenSequence::new(2, &js).unwrap();
        let m = js.len() as i64;
        assert!(zero_by_degree_support(&seq, 2 * m as u32 + 1));
        let (g, g_inv) = conjugator_degree_support(&seq);
        for s in [g, g_inv] {
            assert!(*s.iter().next().unwrap() >= -m);
            assert_eq!(s.iter().next_back(), Some(&0));
        }
    }
    assert!(!zero_by_degree_support(&GenSequence::new(2, &[0]).unwrap(), 1));
}

#[test]
fn difference_shapes() {
    let fam = family(2, &[0, 1]);
    let c = [Rat::new(1, 2), Rat::new(-7, 3)];
    let shape = field_difference_shape(&fam, &c, 1).unwrap();
    assert_eq!(shape.allowed, vec![1, 2, 3, 4]);
    assert_eq!(shape.u2.as_ref(), Some(&shape.u1));
    let shape = field_difference_shape(&family(2, &[0]), &[Rat::from_int(2)], 3).unwrap();
    assert!(shape.u1.is_zero());
    let shape = field_difference_shape(&family(2, &[0, 2]), &c, 1).unwrap();
    assert_eq!(shape.allowed, vec![2, 3]);
    let shape = field_difference_shape(&family(3, &[3, 2, 0]), &[Rat::one(), Rat::new(2, 5), Rat::new(-1, 4)], 3).unwrap();
    assert_eq!(shape.allowed, vec![1, 6]);
}

#[test]
fn gamma_single_step() {
    for j in 0..=2 {
        let fam = family(2, &[j]);
        let g = gamma_extract(&fam, 1, 1).unwrap();
        assert_eq!(g.gamma, vec![ParamPoly::int(-1)]);
        let g = gamma_extract(&fam, 3, 1).unwrap();
        assert!(g.gamma[0].is_zero());
    }
}

#[test]
fn gamma_two_steps_and_bracket() {
    let fam = family(2, &[0, 1]);
    let g1 = gamma_extract(&fam, 1, 2).unwrap();
    let g3 = gamma_extract(&fam, 3, 3).unwrap();
    // the prefix components agree with the prefix field
    assert_eq!(g1.gamma[0], ParamPoly::int(-1));
    assert!(g3.gamma[0].is_zero());
    assert!(bracket(&g1.gamma, &g3.gamma).iter().all(|p| p.is_zero()));
    let rep = verify_cell_flow(&fam, 5, 5, 4).unwrap();
    assert!(rep.verified && rep.zero_field && rep.zero_by_support);
}

#[test]
fn intertwining_single_step() {
    let fam = family(2, &[1]);
    for r in [1, 3] {
        for i in 0..4 {
            let rep = kdv_check(&fam, &[Rat::new(3, 7)], r, i).unwrap();
            assert!(rep.equal, "r={r} i={i}");
        }
    }
}

#[test]
fn intertwining_two_steps() {
    let fam = family(2, &[0, 1]);
    for i in 0..4 {
        let rep = kdv_check(&fam, &[Rat::new(3, 7), Rat::new(-2, 5)], 1, i).unwrap();
        assert!(rep.equal, "i={i}");
    }
}

#[test]
fn gauge_invariance_of_last_step() {
    for (n, js) in [(2, vec![0, 1]), (2, vec![1, 2]), (2, vec![2, 1, 0]), (3, vec![0, 1])] {
        let fam = family(n, &js);
        let prefix: Vec<Rat> = (0..js.len() - 1).map(|k| Rat::new(k as i64 + 2, 3)).collect();
        assert!(gauge_invariance_holds(&fam, &prefix).unwrap(), "{js:?}");
    }
}

#[test]
fn kernel_consistency_two_steps() {
    for js in [vec![0, 1], vec![1, 2], vec![1, 0]] {
        let fam = family(2, &js);
        let prefix = gamma_extract(&prefix_family(&fam).unwrap(), 1, 5).unwrap();
        let rep = kernel_consistency(&fam, &[Rat::new(2, 3), Rat::new(1, 4)], 1, &prefix).unwrap();
        assert!(rep.in_kernels && rep.relations_hold, "{js:?}");
        assert!(rep.proportionality.is_some());
    }
}

#[test]
fn three_routes_agree() {
    for (n, js) in [(2, vec![0]), (2, vec![0, 1]), (3, vec![3, 2, 1])] {
        let fam = family(n, &js);
        let c: Vec<Rat> = (0..js.len()).map(|k| Rat::new(2 * k as i64 - 3, k as i64 + 2)).collect();
        assert!(route_comparison(&fam, &c).unwrap().all_equal(), "{js:?}");
    }
}

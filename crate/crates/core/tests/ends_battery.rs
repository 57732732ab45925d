use dessinator::ends::{
    builtin_oracles, cayley_ball, ends_estimate, EndsClass, FreeAbelian, FreeGroup,
    DEFAULT_BALL_CAP,
};

#[test]
fn builtin_classifications_are_stable() {
    let expected = [
        ("Z", EndsClass::Two),
        ("Z^2", EndsClass::One),
        ("Z6", EndsClass::Zero),
        ("F2", EndsClass::InfinitelyMany),
        ("Z2*Z2", EndsClass::Two),
        ("Z2*Z3", EndsClass::InfinitelyMany),
    ];
    let oracles = builtin_oracles();
    assert_eq!(oracles.len(), expected.len());
    for (o, (name, class)) in oracles.iter().zip(expected) {
        assert_eq!(o.name(), name);
        for r_max in 4..=8 {
            let report = ends_estimate(o.as_ref(), r_max, DEFAULT_BALL_CAP);
            assert_eq!(report.classification, class, "{name} at r_max {r_max}");
        }
    }
}

#[test]
fn ball_sizes_match_closed_forms() {
    let z = cayley_ball(&FreeAbelian::standard(1), 8, DEFAULT_BALL_CAP).unwrap();
    let z2 = cayley_ball(&FreeAbelian::standard(2), 8, DEFAULT_BALL_CAP).unwrap();
    let f2 = cayley_ball(&FreeGroup::new(2), 8, DEFAULT_BALL_CAP).unwrap();
    for r in 0..=8usize {
        assert_eq!(z.ball_sizes()[r], 2 * r + 1);
        assert_eq!(z2.ball_sizes()[r], 2 * r * r + 2 * r + 1);
        assert_eq!(f2.ball_sizes()[r], 1 + 2 * (3usize.pow(r as u32) - 1));
    }
}

#[test]
fn free_group_annuli_split_into_subtrees() {
    for big_r in 2..=8 {
        let ball = cayley_ball(&FreeGroup::new(2), big_r, DEFAULT_BALL_CAP).unwrap();
        for r in 1..big_r {
            assert_eq!(ball.annulus_components(r), 4 * 3usize.pow(r as u32 - 1));
        }
    }
}

#[test]
fn generating_set_does_not_change_the_answer() {
    let z23 = FreeAbelian::with_generators(1, vec![vec![2], vec![3]]).unwrap();
    let standard = FreeAbelian::standard(1);
    // with steps 2 and 3 the inner ball must reach radius 3 before the
    // two sides separate, so the last three rungs agree from r_max = 6
    for r_max in 6..=8 {
        let a = ends_estimate(&z23, r_max, DEFAULT_BALL_CAP);
        let b = ends_estimate(&standard, r_max, DEFAULT_BALL_CAP);
        assert_eq!(a.classification, EndsClass::Two);
        assert_eq!(a.classification, b.classification);
    }
    let early = ends_estimate(&z23, 5, DEFAULT_BALL_CAP);
    assert_eq!(early.classification, EndsClass::Inconclusive);
}

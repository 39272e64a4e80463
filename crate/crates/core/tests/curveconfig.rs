use evenlat::curveconfig::data;
use evenlat::curveconfig::{
    double_cover_pullback, quotient_by_involution, reconstruct_24, reconstruct_xprime, BranchPoint,
    Constraints, CoverStep, CurveConfig, FixedPointData, InvolutionAction, TierPolicy,
};
use num_bigint::BigInt;

#[test]
fn census_reports_each_tier() {
    let r = reconstruct_24(&Constraints::triple_double(), TierPolicy::Auto).unwrap();
    assert_eq!(r.tier, 3);
    assert_eq!(r.census.candidates, 262_144);
    assert_eq!((r.census.tier1, r.census.tier2, r.census.tier3), (64, 2, 1));
    assert_eq!(r.census.over_cap, 0);
    let c = r.unique().unwrap();
    assert_eq!(c.len(), 24);
    for inv in [data::IOTA_001, data::IOTA_010, data::IOTA_011] {
        InvolutionAction::from_one_based(&inv)
            .unwrap()
            .check_isometry(c)
            .unwrap();
    }
}

#[test]
fn tier_two_survivors_share_the_q_gram() {
    let r = reconstruct_24(&Constraints::triple_double(), TierPolicy::Exact(2)).unwrap();
    assert_eq!(r.tier, 2);
    assert_eq!(r.solutions.len(), 2);
    let q: Vec<Vec<i64>> = data::Q_BASIS.iter().map(|t| data::dense(24, t)).collect();
    for s in &r.solutions {
        let g = s
            .config
            .gram()
            .congruence(&evenlat::exactlinalg::IntMat::from_rows(&q))
            .unwrap();
        assert_eq!(
            g.to_i64_rows().unwrap(),
            data::Q_GRAM.map(|r| r.to_vec()).to_vec()
        );
    }
    assert!(r.unique().is_err());
}

#[test]
fn quotient_configuration() {
    let r = reconstruct_24(&Constraints::triple_double(), TierPolicy::Auto).unwrap();
    let x = reconstruct_xprime(r.unique().unwrap()).unwrap();
    assert_eq!(x.config.len(), 20);
    assert!(x.relations.iter().all(|(_, ok)| *ok));
    assert_eq!(x.lattice.rank(), 16);
    assert_eq!(x.lattice.lattice().det(), &BigInt::from(-256));
    assert!(x.census.disjoint_consistent);
    assert!(x.census.per_column.iter().all(|&n| n > 1));
}

#[test]
fn quotient_halves_orbit_sums() {
    let g = vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]];
    let c = CurveConfig::from_gram(vec!["a".into(), "b".into(), "c".into()], &g).unwrap();
    let act = InvolutionAction::from_one_based(&[3, 2, 1]).unwrap();
    // b is fixed, so the quotient is refused.
    assert!(quotient_by_involution(&c, &act, &FixedPointData::default()).is_err());
    let g = vec![vec![-2, 0], vec![0, -2]];
    let c = CurveConfig::from_gram(vec!["a".into(), "b".into()], &g).unwrap();
    let act = InvolutionAction::from_one_based(&[2, 1]).unwrap();
    let q = quotient_by_involution(&c, &act, &FixedPointData::default()).unwrap();
    assert_eq!(q.config.gram_rows(), vec![vec![-2]]);
}

#[test]
fn hexagon_curve_through_two_branch_points() {
    let g = vec![vec![-1, 1], vec![1, -1]];
    let c = CurveConfig::from_gram(vec!["E".into(), "L".into()], &g).unwrap();
    let mut step = CoverStep::default();
    step.branch = vec!["B".into()];
    for id in ["p", "q"] {
        step.points.push(BranchPoint {
            id: id.into(),
            branch: "B".into(),
        });
    }
    step.incidence
        .insert("E".into(), vec!["p".into(), "q".into()]);
    let p = double_cover_pullback(&c, &step).unwrap();
    assert!(p.is_determined());
    let (_, e) = &p.label_map[0];
    let (_, l) = &p.label_map[1];
    assert_eq!((e.len(), l.len()), (1, 2));
    let cfg = &p.configs[0];
    let e = cfg.index(&e[0]).unwrap();
    assert_eq!(cfg.self_int(e), -2);
    let total: i64 = l.iter().map(|x| cfg.mult(e, cfg.index(x).unwrap())).sum();
    assert_eq!(total, 2);
}

mod common;

use proptest::prelude::*;
use qlink::overlay::CellComplex;
use qlink::planner::{plan, Plan};
use qlink::{q_visible_path, verify, Case, Location, Point, Polygon, Scalar};

fn cell_area_sum(complex: &CellComplex) -> Scalar {
    complex.cells.iter().fold(Scalar::zero(), |acc, c| acc + c.polygon.area())
}

fn check_plan(poly: &Polygon, q: &Point, plan: &Plan) -> Result<(), TestCaseError> {
    let r = &plan.result;
    prop_assert!(verify(poly, q, r));
    let d_st = plan.spm_s.link_distance(&r.t).unwrap();
    let d_sq = plan.spm_s.link_distance(q).unwrap();
    let d_qt = plan.spm_t().link_distance(q).unwrap();
    prop_assert!(d_st <= r.distance, "{} < {}", r.distance, d_st);
    prop_assert!(r.distance <= d_sq + d_qt, "{} > {} + {}", r.distance, d_sq, d_qt);
    if r.case != Case::SamePocket {
        prop_assert_eq!(r.distance, d_st);
    }

    if let Some(complex) = &plan.complex {
        prop_assert_eq!(cell_area_sum(complex), complex.p.area());
        let k = complex.k1 + complex.k2;
        prop_assert!(complex.crossing_count <= k);
        prop_assert!(complex.max_window_crossings <= 2);
        prop_assert!(complex.cells.len() <= complex.euler_bound());
        let best = complex.cells.iter().map(|c| c.value).min().unwrap();
        prop_assert_eq!(Some(best), r.cell_value);

        // Some bend strictly between the endpoints lies in the closed subpolygon.
        let inner = &r.path.vertices()[1..r.path.vertices().len() - 1];
        prop_assert!(inner.iter().any(|v| complex.p.locate(v) != Location::Exterior));

        for (k, cell) in complex.cells.iter().enumerate() {
            prop_assert_eq!(cell.value, cell.s_depth + cell.t_depth);
            let mut probes = vec![cell.representative.clone()];
            probes.extend(common::points(k as u64, &cell.polygon, 4));
            for p in probes {
                prop_assert_eq!(plan.spm_s.link_distance(&p).unwrap(), cell.s_depth, "cell {} at {}", k, p);
                prop_assert_eq!(plan.spm_t().link_distance(&p).unwrap(), cell.t_depth, "cell {} at {}", k, p);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planner_outputs_certify(seed in 0u64..10_000, n in 3usize..=30) {
        let (poly, pts) = common::instance(seed, n, 3);
        let (s, t, q) = (&pts[0], &pts[1], &pts[2]);
        let forward = plan(&poly, s, t, q).unwrap();
        check_plan(&poly, q, &forward)?;
        let backward = q_visible_path(&poly, t, s, q).unwrap();
        prop_assert_eq!(backward.case, forward.result.case);
        prop_assert_eq!(backward.distance, forward.result.distance);
    }
}

/// Seeds whose random triple lands in one pocket; the acceptance suite draws
/// from the same generator.
#[test]
fn same_pocket_instances_certify() {
    let mut found = 0;
    for seed in 0..400u64 {
        let (poly, pts) = common::instance(seed, 8 + seed as usize % 23, 3);
        let (s, t, q) = (&pts[0], &pts[1], &pts[2]);
        let p = plan(&poly, s, t, q).unwrap();
        if p.result.case == Case::SamePocket {
            found += 1;
            check_plan(&poly, q, &p).unwrap();
        }
    }
    assert!(found >= 10, "only {found} same-pocket instances");
}

#[test]
fn coincident_endpoints() {
    let u = qlink::fixtures::fix_u();
    let s = common::d("0.5", "3.5");
    let r = q_visible_path(&u, &s, &s, &common::d("5", "3.5")).unwrap();
    assert_eq!((r.case, r.distance), (Case::SamePocket, 2));
    assert!(verify(&u, &common::d("5", "3.5"), &r));
    let r = q_visible_path(&u, &s, &s, &common::d("1", "1")).unwrap();
    assert_eq!((r.case, r.distance), (Case::EndpointSeesQ, 0));
}

use proptest::prelude::*;

use wpl_core::lgroup::{LVec, WeightType};
use wpl_core::wpl::{class_of, euler_form, ext1_dim, hom_dim, tau, tau_k, Sheaf};

const TYPES: &[&[u32]] = &[&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6], &[2, 3, 7], &[2, 2, 5]];

fn weight_type() -> impl Strategy<Value = WeightType> {
    (0..TYPES.len()).prop_map(|i| WeightType::simple(TYPES[i]))
}

fn lvec(w: &WeightType, m: i64, c: &[i64]) -> LVec {
    w.lvec(m, &c[..w.t()]).unwrap()
}

/// A line bundle or exceptional simple, chosen from raw integers.
fn sheaf(w: &WeightType, kind: u8, m: i64, c: &[i64]) -> Sheaf {
    if kind % 3 == 0 {
        let tube = (c[0].unsigned_abs() as usize) % w.t();
        let r = (c[1].rem_euclid(w.weight(tube) as i64) + 1) as u32;
        Sheaf::simple(w, tube, r).unwrap()
    } else {
        Sheaf::Line(lvec(w, m, c))
    }
}

proptest! {
    #[test]
    fn normal_form_and_text(w in weight_type(), m in -20i64..20, c in prop::collection::vec(-30i64..30, 4)) {
        let a = lvec(&w, m, &c);
        for i in 0..w.t() {
            prop_assert!(0 <= a.coeff(i) && a.coeff(i) < w.weight(i) as i64);
        }
        prop_assert_eq!(LVec::parse(&w, &a.to_text()).unwrap(), a.clone());
        // delta is a homomorphism to Z
        let b = lvec(&w, c[0], &[m, c[1], c[2], c[3]]);
        prop_assert_eq!((&a + &b).delta(), a.delta() + b.delta());
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn euler_form_is_hom_minus_ext(
        w in weight_type(),
        k1 in any::<u8>(), m1 in -4i64..4, c1 in prop::collection::vec(-6i64..6, 4),
        k2 in any::<u8>(), m2 in -4i64..4, c2 in prop::collection::vec(-6i64..6, 4),
    ) {
        let x = sheaf(&w, k1, m1, &c1);
        let y = sheaf(&w, k2, m2, &c2);
        let e = euler_form(&w, &class_of(&x), &class_of(&y));
        prop_assert_eq!(e, hom_dim(&w, &x, &y) as i64 - ext1_dim(&w, &x, &y) as i64);
        // tau is an autoequivalence
        prop_assert_eq!(hom_dim(&w, &tau(&w, &x), &tau(&w, &y)), hom_dim(&w, &x, &y));
    }

    #[test]
    fn line_meets_each_tube_once(w in weight_type(), m in -5i64..5, c in prop::collection::vec(-8i64..8, 4)) {
        let l = Sheaf::Line(lvec(&w, m, &c));
        for i in 0..w.t() {
            let total: usize = (1..=w.weight(i)).map(|r| hom_dim(&w, &l, &Sheaf::simple(&w, i, r).unwrap())).sum();
            prop_assert_eq!(total, 1);
        }
    }

    #[test]
    fn tube_rank_is_tau_period(w in weight_type(), t in 0usize..4, r in 0u32..8) {
        let i = t % w.t();
        let s = Sheaf::simple(&w, i, r % w.weight(i) + 1).unwrap();
        prop_assert_eq!(tau_k(&w, &s, w.weight(i) as i64), s.clone());
        // the tube is standard: Ext^1 between neighbours only
        let n = (0..w.weight(i)).filter(|&m| ext1_dim(&w, &s, &Sheaf::simple(&w, i, m + 1).unwrap()) > 0).count();
        prop_assert_eq!(n, usize::from(w.weight(i) > 1));
    }
}

use g2ks::algebra::{gamma_ratio_int, linsolve, rat, smith_local_valuations, Poly, RFMatrix, RatFunc, Rational};
use g2ks::g2::{basis_v, basis_vp, has_parity, w_action, KType, ZetaVector};
use g2ks::su2::{rc_bracket, sl2_act, tensor_act, Generator, TensorElement};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(3), poly(3).prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |f| !f.is_zero())
}

/// `(s - s0)^k` for a small integer `k`.
fn local_power(s0: &Rational, k: i32) -> RatFunc {
    RatFunc::linear(rat(1, 1), -s0.clone()).pow(k).unwrap()
}

fn square(n: usize) -> impl Strategy<Value = RFMatrix> {
    prop::collection::vec(prop::collection::vec(ratfunc(), n), n).prop_map(RFMatrix::from_rows)
}

/// Unit upper times unit lower triangular, with polynomial off-diagonal
/// entries: invertible at every point.
fn unimodular(n: usize) -> impl Strategy<Value = RFMatrix> {
    (
        prop::collection::vec(poly(2), n * n),
        prop::collection::vec(poly(2), n * n),
    )
        .prop_map(move |(up, low)| {
            let mut u = RFMatrix::identity(n);
            let mut l = RFMatrix::identity(n);
            for i in 0..n {
                for j in 0..n {
                    if i < j {
                        u.set(i, j, RatFunc::from_poly(up[i * n + j].clone()));
                    } else if i > j {
                        l.set(i, j, RatFunc::from_poly(low[i * n + j].clone()));
                    }
                }
            }
            u.checked_mul(&l).unwrap()
        })
}

fn ktype(max_total: i64) -> impl Strategy<Value = KType> {
    (0..=max_total / 2, 0..=max_total).prop_filter_map("valid K-type", move |(half, n)| {
        let total = 2 * half;
        (n <= total).then(|| KType::new(n, total - n).ok()).flatten()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn reflection_is_an_involutive_ring_map(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!((&a * &b).reflect(), &a.reflect() * &b.reflect());
        prop_assert_eq!((&a + &b).reflect(), &a.reflect() + &b.reflect());
    }

    #[test]
    fn valuation_is_additive(
        f in nonzero_ratfunc(),
        g in nonzero_ratfunc(),
        s0 in rational(),
        kf in -2i32..=2,
        kg in -2i32..=2,
    ) {
        let f = &f * &local_power(&s0, kf);
        let g = &g * &local_power(&s0, kg);
        let vf = f.checked_valuation(&s0).unwrap();
        let vg = g.checked_valuation(&s0).unwrap();
        prop_assert_eq!((&f * &g).checked_valuation(&s0).unwrap(), vf + vg);
        prop_assert_eq!(f.inv().unwrap().checked_valuation(&s0).unwrap(), -vf);
        let sum = &f + &g;
        if !sum.is_zero() {
            prop_assert!(sum.checked_valuation(&s0).unwrap() >= vf.min(vg));
        }
    }

    #[test]
    fn gamma_ratio_inverts_when_swapped(
        slope in 1i64..=3,
        offset in -4i64..=4,
        pairs in prop::collection::vec((-4i64..=4, -4i64..=4), 0..4),
    ) {
        let base = Poly::from_ints(&[offset, slope]);
        let p: Vec<i64> = pairs.iter().map(|x| x.0).collect();
        let q: Vec<i64> = pairs.iter().map(|x| x.1).collect();
        let there = gamma_ratio_int(&base, &p, &q).unwrap();
        let back = gamma_ratio_int(&base, &q, &p).unwrap();
        prop_assert!((&there * &back).is_one());
    }

    #[test]
    fn linsolve_recovers_the_solution(m in square(3), x in prop::collection::vec(ratfunc(), 3)) {
        prop_assume!(m.rank() == 3);
        let b = m.checked_mul(&RFMatrix::column(x.clone())).unwrap().column_vec(0);
        prop_assert_eq!(linsolve(&m, &b).unwrap(), x);
    }

    #[test]
    fn smith_valuations_are_invariant_under_local_units(
        u in unimodular(3),
        v in unimodular(3),
        orders in prop::collection::vec(-1i32..=2, 3),
        s0 in rational(),
    ) {
        let diag: Vec<RatFunc> = orders.iter().map(|&k| local_power(&s0, k)).collect();
        let d = RFMatrix::diagonal(&diag);
        let m = u.checked_mul(&d).unwrap().checked_mul(&v).unwrap();
        let mut want: Vec<i64> = orders.iter().map(|&k| k as i64).collect();
        want.sort();
        prop_assert_eq!(smith_local_valuations(&d, &s0).unwrap().valuations, want.clone());
        prop_assert_eq!(smith_local_valuations(&m, &s0).unwrap().valuations, want);
    }

    #[test]
    fn ratfunc_json_round_trip(f in ratfunc()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: RatFunc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        let value = serde_json::to_value(&f).unwrap();
        prop_assert_eq!(RatFunc::from_json_value(&value).unwrap(), f);
    }

    #[test]
    fn brackets_are_equivariant(
        m in 0i64..=8,
        n in 0i64..=8,
        k_seed in 0i64..=8,
        raw in prop::collection::vec((0i64..=8, 0i64..=8, -5i64..=5), 1..5),
    ) {
        let k = k_seed % (m.min(n) + 1);
        let terms = raw.into_iter().map(|(i, j, c)| ((m - 2 * (i % (m + 1)), n - 2 * (j % (n + 1))), RatFunc::int(c)));
        let t = TensorElement::from_coeffs(m, n, terms).unwrap();
        for gen in Generator::ALL {
            let lhs = rc_bracket(m, n, k, &tensor_act(gen, &t)).unwrap();
            let rhs = sl2_act(gen, &rc_bracket(m, n, k, &t).unwrap());
            prop_assert_eq!(lhs, rhs, "{:?} on Gamma_{} (x) Gamma_{}, k = {}", gen, m, n, k);
        }
    }

    #[test]
    fn w_is_an_involution(kt in ktype(20), coeffs in prop::collection::vec(ratfunc(), 21)) {
        let weights = kt.zeta_weights();
        let v = ZetaVector::from_coeffs(kt, weights.into_iter().zip(coeffs)).unwrap();
        prop_assert_eq!(w_action(&w_action(&v)), v);
    }

    #[test]
    fn v_bases_have_their_parity(kt in ktype(20)) {
        for j in 0..kt.dim() {
            let k = (j / 2) as i64;
            let eps = kt.slot_parity(j);
            let v = if j % 2 == 0 { basis_v(kt, k).unwrap() } else { basis_vp(kt, k).unwrap() };
            prop_assert!(has_parity(&v, eps), "{} slot {}", kt, j);
        }
    }
}

mod common;

use common::*;
use gauss_css::css::star_product;
use gauss_css::{GaussInt, LinearCode, Metric, PrimeField, SearchOptions};
use proptest::prelude::*;
use std::sync::Arc;

const PIS: [(i64, i64); 6] = [(2, 1), (3, 2), (4, 1), (5, 2), (6, 1), (5, 4)];

fn any_field() -> impl Strategy<Value = Arc<PrimeField>> {
    prop::sample::select(PIS.to_vec()).prop_map(|(a, b)| field(a, b))
}

fn field_and_residues(count: usize) -> impl Strategy<Value = (Arc<PrimeField>, Vec<GaussInt>)> {
    any_field().prop_flat_map(move |f| {
        let r = f.residues().to_vec();
        (Just(f), prop::collection::vec(prop::sample::select(r), count))
    })
}

fn random_code() -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(vec![(2i64, 1i64), (3, 2), (4, 1)]), 1usize..=5, 1usize..=3).prop_flat_map(|((a, b), n, k)| {
        let f = field(a, b);
        let r = f.residues().to_vec();
        prop::collection::vec(prop::collection::vec(prop::sample::select(r), n), k)
            .prop_filter_map("zero code", move |rows| LinearCode::from_generator_matrix(&f, &rows).ok())
    })
}

#[test]
fn field_axioms_exhaustive() {
    for (a, b) in PIS.iter().filter(|(a, b)| a * a + b * b <= 29) {
        let f = field(*a, *b);
        let r = f.residues();
        assert_eq!(r.len(), f.p() as usize);
        for &x in r {
            for &y in r {
                for &z in r {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn reduce_matches_oracle(f in any_field(), re in -1_000_000_000i64..1_000_000_000, im in -1_000_000_000i64..1_000_000_000) {
        let z = g(re, im);
        let r = f.reduce(z);
        prop_assert_eq!(r, reduce_oracle(f.pi(), z));
        prop_assert_eq!(f.reduce(r), r);
        prop_assert!(f.is_canonical(r));
        // z - r is a multiple of π: its norm is divisible by p, and so is (z - r)·conj(π).
        let d = z - r;
        let q = d * f.pi().conj();
        prop_assert_eq!(q.re % f.p() as i64, 0);
        prop_assert_eq!(q.im % f.p() as i64, 0);
    }

    #[test]
    fn reduce_is_a_ring_map(f in any_field(), a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000) {
        let (x, y) = (g(a, b), g(c, d));
        prop_assert_eq!(f.reduce(x + y), f.add(f.reduce(x), f.reduce(y)));
        prop_assert_eq!(f.reduce(x * y), f.mul(f.reduce(x), f.reduce(y)));
    }

    #[test]
    fn lift_project_roundtrip((f, v) in field_and_residues(1)) {
        let k = f.project(v[0]).unwrap();
        prop_assert_eq!(f.lift(k as i64).unwrap(), v[0]);
        prop_assert_eq!(f.label(v[0]), k);
    }

    #[test]
    fn inverse_and_order((f, v) in field_and_residues(1)) {
        let a = v[0];
        prop_assume!(!a.is_zero());
        let inv = f.invert(a).unwrap();
        prop_assert_eq!(f.mul(a, inv), GaussInt::one());
        let ord = f.order(a).unwrap();
        prop_assert_eq!((f.p() as u64 - 1) % ord, 0);
        prop_assert_eq!(f.pow(a, ord), GaussInt::one());
    }

    #[test]
    fn star_product_bilinear_antisymmetric((f, v) in field_and_residues(9), n in 1usize..=3) {
        let (a, rest) = v.split_at(3);
        let (b, c) = rest.split_at(3);
        let (a, b, c) = (&a[..n], &b[..n], &c[..n]);
        let s = |x: &[GaussInt], y: &[GaussInt]| star_product(&f, x, y).unwrap();
        let a2: Vec<GaussInt> = a.iter().chain(a).copied().collect();
        let b2: Vec<GaussInt> = b.iter().chain(c).copied().collect();
        let c2: Vec<GaussInt> = c.iter().chain(b).copied().collect();
        prop_assert_eq!(s(&a2, &b2), f.neg(s(&b2, &a2)));
        prop_assert!(s(&a2, &a2).is_zero());
        let sum: Vec<GaussInt> = b2.iter().zip(&c2).map(|(&x, &y)| f.add(x, y)).collect();
        prop_assert_eq!(s(&a2, &sum), f.add(s(&a2, &b2), s(&a2, &c2)));
        let scaled: Vec<GaussInt> = b2.iter().map(|&x| f.mul(x, v[0])).collect();
        prop_assert_eq!(s(&a2, &scaled), f.mul(v[0], s(&a2, &b2)));
    }

    #[test]
    fn mannheim_dominates_hamming(c in random_code()) {
                let (dm, dh) = c.min_distances(&SearchOptions::serial(1_000_000)).unwrap();
        prop_assert!(dm >= dh);
        prop_assert!(dh as usize <= c.n() - c.k() + 1);
    }

    #[test]
    fn parallel_matches_serial(c in random_code(), workers in 2usize..=8) {
                let s = c.min_distances(&SearchOptions::serial(1_000_000)).unwrap();
        let fresh = LinearCode::from_generator_matrix(c.field(), &c.generator_matrix()).unwrap();
        prop_assert_eq!(fresh.min_distances(&SearchOptions::with_workers(1_000_000, workers)).unwrap(), s);
    }

    #[test]
    fn distances_match_brute_force(c in random_code()) {
        prop_assume!(c.n() <= 4);
        let opts = SearchOptions::serial(1_000_000);
        prop_assert_eq!(c.min_distances(&opts).unwrap(), brute_distances(&c));
    }

    #[test]
    fn low_weight_search_agrees(c in random_code()) {
                let opts = SearchOptions::serial(1_000_000);
        let exact = c.min_distance(Metric::Mannheim, &opts).unwrap();
        let found = c.low_weight_search(Metric::Mannheim, u64::MAX);
        prop_assert_eq!(found.value(), exact);
    }

}

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn decoding_within_radius(c in random_code(), msg_seed in any::<u64>(), pos in 0usize..5, unit in 0usize..4) {
        prop_assume!(pos < c.n());
        let f = c.field().clone();
        let d = c.min_distance(Metric::Mannheim, &SearchOptions::serial(1_000_000)).unwrap();
        prop_assume!(d >= 3);
        let p = f.p() as u64;
        let msg: Vec<GaussInt> = (0..c.k()).map(|j| f.residues()[((msg_seed >> (8 * j)) % p) as usize]).collect();
        let word = c.encode(&msg).unwrap();
        let u = [g(1, 0), g(-1, 0), g(0, 1), g(0, -1)][unit];
        let mut r = word.clone();
        r[pos] = f.add(r[pos], u);
        let out = c.decode_bounded(&r, Metric::Mannheim, 1).unwrap();
        prop_assert_eq!(out.codeword, word);
        prop_assert_eq!(out.weight, 1);
    }
}

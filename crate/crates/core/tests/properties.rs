use proptest::prelude::*;
use quadric_bounds::pair;
use quadric_bounds::proj::PointTable;
use quadric_bounds::syntax::parse_quadric;
use quadric_bounds::{classify, make_field, rank, FieldSpec, QuadraticForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2), (5, 1)])
        .prop_map(|(p, m)| make_field(p, m).unwrap())
}

fn setup() -> impl Strategy<Value = (FieldSpec, usize, u64)> {
    (fields(), 1usize..4, any::<u64>())
}

fn forms(f: &FieldSpec, n: usize, seed: u64) -> (QuadraticForm, QuadraticForm, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = pair::random_form(n, f, &mut rng);
    let b = pair::random_form(n, f, &mut rng);
    (a, b, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_counts_agree_with_enumeration((f, n, seed) in setup()) {
        let (a, _, _) = forms(&f, n, seed);
        let table = PointTable::new(n, &f).unwrap();
        let prof = classify(&a).unwrap();
        prop_assert_eq!(prof.point_count, a.count_points(&table).unwrap());
        prop_assert_eq!(prof.rank, rank(&a).unwrap());
        prop_assert_eq!(prof.vertex_dim, n as i64 - prof.rank as i64);
    }

    #[test]
    fn substitution_preserves_profile((f, n, seed) in setup()) {
        let (a, _, mut rng) = forms(&f, n, seed);
        let m = pair::random_invertible(&f, n + 1, &mut rng);
        let b = a.substitute(&m).unwrap();
        let (pa, pb) = (classify(&a).unwrap(), classify(&b).unwrap());
        prop_assert_eq!((pa.rank, pa.qtype, pa.point_count), (pb.rank, pb.qtype, pb.point_count));
    }

    #[test]
    fn pair_invariants((f, n, seed) in (fields(), 2usize..4, any::<u64>())) {
        let (a, b, _) = forms(&f, n, seed);
        let table = PointTable::new(n, &f).unwrap();
        let ab = pair::intersection_count(&a, &b, &table).unwrap();
        prop_assert_eq!(ab, pair::intersection_count(&b, &a, &table).unwrap());
        prop_assert!(ab <= a.count_points(&table).unwrap().min(b.count_points(&table).unwrap()));
        let w = pair::order(&a, &b).unwrap();
        prop_assert_eq!(w, pair::order(&b, &a).unwrap());
        prop_assert!(w >= rank(&a).unwrap().max(rank(&b).unwrap()) && w <= n + 1);
        let rep = pair::pair_report_with_table(&a, &b, &table).unwrap();
        prop_assert!(!rep.violates_theorem(), "{} / {}: {}", a, b, ab);
    }

    #[test]
    fn lifting_is_a_cone((f, seed) in (fields(), any::<u64>())) {
        let (a, b, _) = forms(&f, 2, seed);
        let t2 = PointTable::new(2, &f).unwrap();
        let t3 = PointTable::new(3, &f).unwrap();
        let base = pair::intersection_count(&a, &b, &t2).unwrap();
        let (la, lb) = pair::embed_and_lift(&a, &b, 3).unwrap();
        prop_assert_eq!(
            pair::intersection_count(&la, &lb, &t3).unwrap(),
            pair::cone_lift_bound(base, 1, f.q() as u64)
        );
    }

    #[test]
    fn printed_forms_reparse((f, n, seed) in setup()) {
        let (a, _, _) = forms(&f, n, seed);
        prop_assert_eq!(parse_quadric(&a.to_string(), n, &f).unwrap(), a);
    }
}

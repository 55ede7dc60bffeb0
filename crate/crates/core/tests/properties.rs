use holocount::algebra::*;
use holocount::forests::*;
use holocount::holant::*;
use holocount::planar::*;
use holocount::random::{
    self, random_nae_instance, sub_pfaffian_signature, with_random_realizable_signatures,
};
use holocount::rational::{frac, int, Rational};
use holocount::signature::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn skew(max_n: usize) -> impl Strategy<Value = SkewMatrix> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(rational(), n * n.saturating_sub(1) / 2).prop_map(move |v| {
            let mut it = v.into_iter();
            SkewMatrix::from_upper(n, |_, _| it.next().unwrap())
        })
    })
}

fn skew_pair(max_n: usize) -> impl Strategy<Value = (SkewMatrix, SkewMatrix)> {
    (0..=max_n).prop_flat_map(|n| {
        let len = n * n.saturating_sub(1) / 2;
        (
            proptest::collection::vec(rational(), len),
            proptest::collection::vec(rational(), len),
        )
            .prop_map(move |(a, b)| {
                let (mut ia, mut ib) = (a.into_iter(), b.into_iter());
                (
                    SkewMatrix::from_upper(n, |_, _| ia.next().unwrap()),
                    SkewMatrix::from_upper(n, |_, _| ib.next().unwrap()),
                )
            })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn even_masks(n: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0)
}

proptest! {
    #[test]
    fn pfaffian_squared_is_determinant(z in skew(8)) {
        let pf = pfaffian(&z);
        prop_assert_eq!(&pf * &pf, determinant(&z.to_matrix()).unwrap());
    }

    #[test]
    fn sum_expansion_matches_pfaffian_of_sum((z, y) in skew_pair(8)) {
        prop_assert_eq!(pfaffian_sum_expansion(&z, &y).unwrap(), pfaffian(&(&z + &y)));
    }

    #[test]
    fn tilde_flips_by_set_sign(z in skew(7)) {
        let t = tilde(&z);
        prop_assert_eq!(tilde(&t), z.clone());
        let (sz, st) = (spf_vector(&z).unwrap(), spf_vector(&t).unwrap());
        for m in even_masks(z.dim()) {
            let sign = sign_of_set(&IndexSet::from_mask(m)).unwrap();
            prop_assert_eq!(st.get_mask(m), &(sz.get_mask(m) * int(sign as i64)));
        }
    }

    #[test]
    fn complementary_pairing_is_tilde_pfaffian((z, y) in skew_pair(8)) {
        prop_assert_eq!(complementary_pairing(&z, &y).unwrap(), pfaffian(&(&tilde(&z) + &y)));
    }

    #[test]
    fn block_stack_is_outer_product(a in skew(4), b in skew(4)) {
        let stacked = SkewMatrix::block_diagonal(&[a.clone(), b.clone()]);
        let (sa, sb, s) = (spf_vector(&a).unwrap(), spf_vector(&b).unwrap(), spf_vector(&stacked).unwrap());
        let na = a.dim();
        for m in 0..1u64 << stacked.dim() {
            let low = m & ((1 << na) - 1);
            let high = m >> na;
            prop_assert_eq!(s.get_mask(m), &(sa.get_mask(low) * sb.get_mask(high)));
        }
    }

    #[test]
    fn conjugation_composes_and_signs(
        (z, p, q) in (0usize..=6).prop_flat_map(|n| (skew(0).prop_map(move |_| n), permutation(n), permutation(n)))
            .prop_flat_map(|(n, p, q)| (proptest::collection::vec(rational(), n * n.saturating_sub(1) / 2), Just(p), Just(q)))
            .prop_map(|(v, p, q)| {
                let n = p.len();
                let mut it = v.into_iter();
                (SkewMatrix::from_upper(n, |_, _| it.next().unwrap()), p, q)
            })
    ) {
        let once = conjugate_by_permutation(&conjugate_by_permutation(&z, &p).unwrap(), &q).unwrap();
        prop_assert_eq!(once, conjugate_by_permutation(&z, &q.compose(&p)).unwrap());
        let w = conjugate_by_permutation(&z, &p).unwrap();
        for m in even_masks(z.dim()) {
            let j = IndexSet::from_mask(m);
            let image = IndexSet::from_unsorted(j.as_slice().iter().map(|&i| p.apply(i)).collect());
            let lhs = sub_pfaffian(&w, &image).unwrap();
            let rhs = sub_pfaffian(&z, &j).unwrap() * int(p.restricted_sign(&j) as i64);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn transforms_preserve_pairing(
        d in 1usize..=4,
        seed in any::<u64>(),
        t in (rational(), rational(), rational(), rational()),
    ) {
        let basis = match BasisChange::from_columns(t.0, t.1, t.2, t.3) {
            Ok(b) => b,
            Err(_) => return Ok(()),
        };
        let mut rng = random::rng(seed);
        let mut sig = || Signature::new(d, (0..1 << d).map(|_| random::small_rational(&mut rng)).collect()).unwrap();
        let (g, r) = (sig(), sig());
        let pair = |a: &Signature, b: &Signature| -> Rational {
            a.coefficients().iter().zip(b.coefficients()).map(|(x, y)| x * y).sum()
        };
        let before = pair(&g, &r);
        prop_assert_eq!(pair(&transform_generator(&g, &basis), &transform_recognizer(&r, &basis)), before);
        prop_assert_eq!(transform_generator(&g, &BasisChange::identity()), g.clone());
        prop_assert_eq!(transform_recognizer(&r, &BasisChange::identity()), r);
    }

    #[test]
    fn realize_round_trip(m in skew(6), c in rational(), reversed in any::<bool>()) {
        prop_assume!(!c.is_zero());
        let sig = sub_pfaffian_signature(&m, &c, reversed);
        let id = if reversed { Identification::Reversed } else { Identification::Plain };
        let r = realize_as(&sig, id).unwrap();
        prop_assert_eq!(&r.matrix, &m);
        prop_assert_eq!(&r.scale, &c);
        prop_assert_eq!(r.to_signature(), sig.clone());
        let auto = realize(&sig).unwrap();
        let expected = if auto.identification == Identification::Plain || m.dim() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        prop_assert_eq!(sig.parity(), expected);
    }

    #[test]
    fn crossing_number_reversal_invariant(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let mut elems: Vec<usize> = (0..2 * n).collect();
        rand::seq::SliceRandom::shuffle(elems.as_mut_slice(), &mut rng);
        let pairing = Pairing::new(elems.chunks(2).map(|c| (c[0], c[1])).collect()).unwrap();
        let inst = random_nae_instance(&mut rng, 2, 0);
        let mut seq: Vec<usize> = (0..12).collect();
        rand::seq::SliceRandom::shuffle(seq.as_mut_slice(), &mut rng);
        let fwd = EdgeOrder::new(&inst, seq.clone(), OrderKind::User).unwrap();
        seq.reverse();
        let rev = EdgeOrder::new(&inst, seq, OrderKind::User).unwrap();
        prop_assert_eq!(crossing_number(&pairing, &fwd).unwrap(), crossing_number(&pairing, &rev).unwrap());
    }

    #[test]
    fn forest_forms_agree(seed in any::<u64>()) {
        let g = random::random_graph(&mut random::rng(seed), 7, 12);
        let (a, b) = forest_determinants(&g);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(count_rooted_spanning_forests(&g), brute_force_forests(&g).unwrap());
    }

    #[test]
    fn minor_pairing_with_itself(k in 1usize..=3, l in 1usize..=3, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..l).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let z = Matrix::from_i64(&refs).unwrap();
        let v = minor_pairing(&z, &z).unwrap();
        prop_assert!(v >= Rational::one());
        prop_assert_eq!(v, minor_pairing_expansion(&z, &z).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sub_pfaffians_are_crossing_sums(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let pairs = rng.gen_range(1..=2);
        let merges = rng.gen_range(0..=3);
        let inst = random_nae_instance(&mut rng, pairs, merges);
        let inst = with_random_realizable_signatures(&mut rng, &inst).unwrap();
        let order = curve_order(&inst, None, Orientation::Forward).unwrap();
        let asm = assemble(&inst, &BasisChange::identity(), &order).unwrap();
        let z = asm.z_in_order();
        let seq = order.sequence();
        let pos = order.positions();
        for m in even_masks(inst.edge_count()) {
            let positions = IndexSet::from_mask(m);
            let edges: Vec<usize> = positions.as_slice().iter().map(|&p| seq[p]).collect();
            let mut total = Rational::zero();
            for s in local_pairings(&inst, &edges, Side::Generator) {
                let mut term = int(if crossing_number(&s, &order).unwrap().is_multiple_of(2) { 1 } else { -1 });
                for &(a, b) in s.pairs() {
                    let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                    term *= z.get(pa, pb);
                }
                total += term;
            }
            prop_assert_eq!(sub_pfaffian(&z, &positions).unwrap(), total);
        }
    }

    #[test]
    fn curve_crossings_split_by_generator(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let pairs = rng.gen_range(1..=2);
        let merges = rng.gen_range(0..=3);
        let inst = random_nae_instance(&mut rng, pairs, merges);
        let order = curve_order(&inst, None, Orientation::Forward).unwrap();
        let (grouped, _) = generator_order(&inst, &order);
        let all: Vec<usize> = (0..inst.edge_count()).collect();
        for m in 0u64..1 << inst.edge_count() {
            if m.count_ones() % 2 == 1 {
                continue;
            }
            let set: Vec<usize> = all.iter().copied().filter(|&e| m >> e & 1 == 1).collect();
            for s in local_pairings(&inst, &set, Side::Generator) {
                let local: usize = (0..inst.generators().len())
                    .map(|x| crossing_number(&s.restrict(&inst, VertexId::Generator(x)), &grouped).unwrap())
                    .sum();
                prop_assert_eq!(crossing_number(&s, &order).unwrap(), local);
            }
        }
    }

    #[test]
    fn count_is_linear_in_each_signature(seed in any::<u64>(), lambda in rational()) {
        prop_assume!(!lambda.is_zero());
        let mut rng = random::rng(seed);
        let (pairs, merges) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let inst = random_nae_instance(&mut rng, pairs, merges);
        let base = count(&inst, &BasisChange::b2()).unwrap().count;
        let nv = inst.generators().len() + inst.recognizers().len();
        let pick = rng.gen_range(0..nv);
        let v = if pick < inst.generators().len() {
            VertexId::Generator(pick)
        } else {
            VertexId::Recognizer(pick - inst.generators().len())
        };
        let scaled = inst.vertex(v).signature.scaled(&lambda);
        let inst2 = inst.with_signature(v, "SCALED", scaled).unwrap();
        prop_assert_eq!(count(&inst2, &BasisChange::b2()).unwrap().count, base * lambda);
    }
}

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use repmult::characters::{character, kronecker, lr_via_characters};
use repmult::partitions::{dim_irrep, dominates, factorial, partitions_of};
use repmult::qsim::{
    hsp_distribution, induction_distribution, restriction_distribution,
    restriction_multiplicity_for, sample, GroupSpec, IrrepLabel,
};
use repmult::tableaux::{kostka, lr_coefficient};
use repmult::wreath::{embed, wreath_elements};
use repmult::yor::{build_rep, max_abs_diff, rep_of_permutation};
use repmult::{Composition, Partition, Permutation};

fn partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        let ps = partitions_of(n).unwrap();
        (0..ps.len()).prop_map(move |i| ps[i].clone())
    })
}

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let ps = partitions_of(n).unwrap();
    (0..ps.len()).prop_map(move |i| ps[i].clone())
}

fn composition(max_n: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..=3, 1..=4)
        .prop_filter("size", move |v| v.iter().sum::<usize>() <= max_n)
        .prop_map(|v| Composition::new(v).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_has_equal_dimension(l in partition(12)) {
        prop_assert_eq!(dim_irrep(&l), dim_irrep(&l.conjugate()));
        prop_assert_eq!(l.conjugate().conjugate(), l);
    }

    #[test]
    fn conjugation_reverses_dominance(a in partition_of(7), b in partition_of(7)) {
        prop_assert_eq!(dominates(&a, &b).unwrap(), dominates(&b.conjugate(), &a.conjugate()).unwrap());
    }

    #[test]
    fn kostka_ignores_content_order(l in partition(7), seed in any::<u64>()) {
        let parts: Vec<usize> = l.parts().to_vec();
        let mut shuffled = parts.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        let mu = Composition::new(shuffled).unwrap();
        for shape in partitions_of(l.n()).unwrap() {
            prop_assert_eq!(kostka(&shape, &mu).unwrap(), kostka(&shape, &Composition::from(&l)).unwrap());
        }
    }

    #[test]
    fn sign_twist_of_characters(l in partition(9), g in partition(9)) {
        prop_assume!(l.n() == g.n());
        let sign = if (g.n() - g.len()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(character(&l.conjugate(), &g).unwrap(), character(&l, &g).unwrap() * sign);
    }

    #[test]
    fn kronecker_symmetries(a in partition_of(6), b in partition_of(6), c in partition_of(6)) {
        let g = kronecker(&a, &b, &c).unwrap();
        prop_assert_eq!(g, kronecker(&b, &c, &a).unwrap());
        prop_assert_eq!(g, kronecker(&a.conjugate(), &b.conjugate(), &c).unwrap());
    }

    #[test]
    fn lr_backends_agree(nu in partition(8), a in 0usize..=8, seed in any::<u32>()) {
        let a = a.min(nu.n());
        let ls = partitions_of(a).unwrap();
        let ms = partitions_of(nu.n() - a).unwrap();
        let l = &ls[seed as usize % ls.len()];
        let m = &ms[(seed as usize / 7) % ms.len()];
        prop_assert_eq!(lr_coefficient(&nu, l, m).unwrap(), lr_via_characters(&nu, l, m).unwrap());
    }

    #[test]
    fn orthogonal_form_is_a_homomorphism(l in partition_of(6), s in permutation(6), t in permutation(6)) {
        let rep = build_rep(&l).unwrap();
        let lhs = rep_of_permutation(&rep, &s).unwrap() * rep_of_permutation(&rep, &t).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rep_of_permutation(&rep, &s.compose(&t)).unwrap()) < 1e-8);
    }

    #[test]
    fn wreath_embedding_is_a_homomorphism(i in 0usize..72, j in 0usize..72) {
        let all = wreath_elements(3, 2).unwrap();
        let (a, b) = (&all[i], &all[j]);
        prop_assert_eq!(embed(3, 2, &a.compose(b)).unwrap(), embed(3, 2, a).unwrap().compose(&embed(3, 2, b).unwrap()));
    }

    #[test]
    fn young_distributions_are_exact(mu in composition(6), pick in any::<u32>()) {
        let n = mu.n();
        let g = GroupSpec::symmetric(n);
        let h = GroupSpec::young(mu);
        let labels = g.labels().unwrap();
        let alpha = &labels[pick as usize % labels.len()];
        let res = restriction_distribution(&g, &h, alpha).unwrap();
        prop_assert!(res.is_normalized());
        prop_assert!(res.total().is_one());
        let hl = h.labels().unwrap();
        let beta = &hl[(pick as usize / 5) % hl.len()];
        let ind = induction_distribution(&h, beta, &g).unwrap();
        prop_assert!(ind.is_normalized());
        // Frobenius reciprocity, rescaled
        let scale = BigRational::new(
            (&g.order * h.label_dim(beta).unwrap()).into(),
            (&h.order * g.label_dim(alpha).unwrap()).into(),
        );
        let m = restriction_multiplicity_for(&g, &h, alpha, beta).unwrap();
        prop_assert_eq!(ind.get(alpha) * scale, BigRational::from_integer(m.into()));
        prop_assert_eq!(hsp_distribution(&g, &h).unwrap(), induction_distribution(&h, &h.trivial_label(), &g).unwrap());
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>(), shots in 0u64..5000) {
        let d = restriction_distribution(
            &GroupSpec::direct_square(3),
            &GroupSpec::symmetric(3),
            &IrrepLabel::Tuple(vec!["2,1".parse().unwrap(), "2,1".parse().unwrap()]),
        ).unwrap();
        let a = sample(&d, shots, seed).unwrap();
        prop_assert_eq!(a.counts.values().sum::<u64>(), shots);
        prop_assert_eq!(a, sample(&d, shots, seed).unwrap());
    }
}

#[test]
fn dimensions_square_sum_to_group_order() {
    for n in 0..=10 {
        let sum: BigUint = partitions_of(n).unwrap().iter().map(|l| dim_irrep(l).pow(2)).sum();
        assert_eq!(sum, factorial(n));
    }
    assert_eq!(dim_irrep(&"5,3,1".parse().unwrap()).to_u64(), Some(162));
}

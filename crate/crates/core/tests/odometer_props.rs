use proptest::prelude::*;
use quadrille::odometer::{
    compose_elements, coset_profile, embed_level, in_kernel, induced_permutation, invert, random_element,
    random_kernel_element, OdometerElement, OdometerParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(p: u32, n: u32, seed: u64) -> OdometerElement {
    random_element(OdometerParams::new(p, n).unwrap(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutations_compose(p in 2u32..4, n in 0u32..3, s1: u64, s2: u64) {
        let (a, b) = (element(p, n, s1), element(p, n, s2));
        let ab = compose_elements(&a, &b).unwrap();
        let expected = induced_permutation(&a).unwrap().compose(&induced_permutation(&b).unwrap());
        prop_assert_eq!(induced_permutation(&ab).unwrap(), expected);
    }

    #[test]
    fn mixed_depth_products_agree(s1: u64, s2: u64, s3: u64) {
        let (a, b, c) = (element(2, 0, s1), element(2, 1, s2), element(2, 2, s3));
        let left = compose_elements(&compose_elements(&a, &b).unwrap(), &c).unwrap();
        let right = compose_elements(&a, &compose_elements(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let inv = invert(&left).unwrap();
        prop_assert_eq!(compose_elements(&inv, &left).unwrap(), OdometerElement::identity(left.params()).unwrap());
    }

    #[test]
    fn kernel_is_normal_and_profiles_ignore_it(s1: u64, s2: u64, n in 1u32..3) {
        let params = OdometerParams::new(3, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s2);
        let g = element(3, n, s1);
        let k = random_kernel_element(params, &mut rng).unwrap();
        let conj = compose_elements(&compose_elements(&g, &k).unwrap(), &invert(&g).unwrap()).unwrap();
        prop_assert!(in_kernel(&conj));
        let gk = compose_elements(&g, &k).unwrap();
        prop_assert_eq!(coset_profile(&gk).unwrap(), coset_profile(&g).unwrap());
    }

    #[test]
    fn embedding_preserves_profiles_of_kernel(s: u64, extra in 1u32..3) {
        let e = element(2, 1, s);
        let deep = embed_level(&e, 1 + extra).unwrap();
        prop_assert_eq!(&deep, &e);
        if in_kernel(&deep) {
            prop_assert!(in_kernel(&e));
        }
    }
}

use proptest::prelude::*;

use repwild::complexes::is_isomorphic_complex;
use repwild::mackey::coh_mackey_cyclic;
use repwild::relhom::sing_cat_cyclic;
use repwild::repcat::{decompose, hom_basis, is_isomorphic};
use repwild::strings::{special_biserial_indecomposables, SbBounds};
use repwild::wildfam::{sigma_hom_dim, sigma_to_gamma, strict_apply};
use repwild::{Family, FpMatrix, GammaModule, PrimeField, Representation, SigmaModule, StrictFamilySpec};

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    proptest::collection::vec(0..p as u32, rows * cols)
        .prop_map(move |d| FpMatrix::from_vec(PrimeField::new(p).unwrap(), rows, cols, d))
}

fn invertible(p: u64, n: usize) -> impl Strategy<Value = FpMatrix> {
    matrix(p, n, n).prop_filter("invertible", |m| m.inverse().is_some())
}

fn sigma(v: usize) -> impl Strategy<Value = SigmaModule> {
    (matrix(2, v, v), matrix(2, v, v)).prop_map(|(x, y)| SigmaModule::new(x, y).unwrap())
}

fn gamma(dims: [usize; 3]) -> impl Strategy<Value = GammaModule> {
    let [r, s, t] = dims;
    (matrix(2, s, r), matrix(2, s, r), matrix(2, t, s)).prop_map(move |(a, b, w)| GammaModule::new(dims, a, b, w).unwrap())
}

fn sigma_sum(x: &SigmaModule, y: &SigmaModule) -> SigmaModule {
    let f = x.field;
    SigmaModule::new(FpMatrix::block_diag(f, &[&x.x, &y.x]), FpMatrix::block_diag(f, &[&x.y, &y.y])).unwrap()
}

/// Indecomposables of the cohomological Mackey algebra of C_3, a special biserial example.
fn c3_strings() -> Vec<Representation> {
    let alg = coh_mackey_cyclic(3, 1).unwrap().algebra;
    let reps: Vec<Representation> =
        special_biserial_indecomposables(&alg, SbBounds::default()).unwrap().into_iter().map(|i| i.module).collect();
    assert!(reps.iter().all(Representation::validate));
    reps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(3, 4, 6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), 6);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_roundtrip(m in invertible(5, 3)) {
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).is_identity());
        prop_assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn solve_recovers_a_preimage(m in matrix(2, 3, 4), x in matrix(2, 4, 2)) {
        let b = m.mul(&x);
        let y = m.solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul(&y), b);
    }

    #[test]
    fn base_change_preserves_isomorphism_class(
        idx in 0usize..9,
        t0 in invertible(3, 3),
        t1 in invertible(3, 3),
    ) {
        let reps = c3_strings();
        let m = &reps[idx % reps.len()];
        // pad the base change to the module's dimensions
        let pick = |t: &FpMatrix, d: usize| if d == 3 { t.clone() } else { FpMatrix::identity(m.field(), d) };
        let moved = m.transport(&[pick(&t0, m.dims()[0]), pick(&t1, m.dims()[1])]).unwrap();
        prop_assert!(moved.validate());
        prop_assert!(is_isomorphic(m, &moved).unwrap());
    }

    #[test]
    fn hom_is_additive(i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let reps = c3_strings();
        let (x, y, z) = (&reps[i % reps.len()], &reps[j % reps.len()], &reps[k % reps.len()]);
        let sum = Representation::direct_sum(&[x, y]).unwrap();
        let lhs = hom_basis(&sum, z).unwrap().dim();
        prop_assert_eq!(lhs, hom_basis(x, z).unwrap().dim() + hom_basis(y, z).unwrap().dim());
    }

    #[test]
    fn sums_of_strings_split(i in 0usize..9, j in 0usize..9) {
        let reps = c3_strings();
        let (x, y) = (&reps[i % reps.len()], &reps[j % reps.len()]);
        let d = decompose(&Representation::direct_sum(&[x, y]).unwrap()).unwrap();
        prop_assert_eq!(d.pieces.len(), 2);
        let same = i % reps.len() == j % reps.len();
        prop_assert_eq!(d.summands().len(), if same { 1 } else { 2 });
    }

    #[test]
    fn embedding_is_additive(v in sigma(1), u in sigma(2)) {
        let lhs = sigma_to_gamma(&sigma_sum(&v, &u)).to_representation();
        let rhs = Representation::direct_sum(&[&sigma_to_gamma(&v).to_representation(), &sigma_to_gamma(&u).to_representation()]).unwrap();
        prop_assert!(is_isomorphic(&lhs, &rhs).unwrap());
    }

    #[test]
    fn embedding_preserves_hom(v in sigma(2), u in sigma(2)) {
        let fv = sigma_to_gamma(&v).to_representation();
        let fu = sigma_to_gamma(&u).to_representation();
        prop_assert_eq!(hom_basis(&fv, &fu).unwrap().dim(), sigma_hom_dim(&v, &u));
    }

    #[test]
    fn strict_family_is_additive(x in gamma([1, 1, 1]), y in gamma([1, 2, 1])) {
        let spec = StrictFamilySpec::new(Family::TruncPoly(2), f2()).unwrap();
        let sum = GammaModule::from_representation(
            &Representation::direct_sum(&[&x.to_representation(), &y.to_representation()]).unwrap(),
        ).unwrap();
        let lhs = strict_apply(&spec, &sum).unwrap();
        let rhs = strict_apply(&spec, &x).unwrap().direct_sum(&strict_apply(&spec, &y).unwrap()).unwrap();
        prop_assert!(is_isomorphic_complex(&lhs, &rhs).unwrap());
    }
}

#[test]
fn singularity_components_fill_the_chain() {
    for (p, m) in [(2u64, 1u32), (2, 4), (3, 3), (5, 2), (7, 1)] {
        let sizes = sing_cat_cyclic(p, m).unwrap();
        assert_eq!(sizes.len(), m as usize);
        assert_eq!(sizes.iter().sum::<usize>(), (p as usize).pow(m) - (m as usize + 1));
    }
}

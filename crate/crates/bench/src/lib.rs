//! Shared inputs for the kernel benchmarks.

use repwild::mackey::coh_mackey_cyclic;
use repwild::{FpMatrix, PrimeField, Representation};

/// A dense `n × n` matrix over `F_p` with a fixed pseudo-random pattern.
pub fn dense_matrix(p: u64, n: usize) -> FpMatrix {
    let f = PrimeField::new(p).expect("prime");
    FpMatrix::from_fn(f, n, n, |i, j| ((i * 31 + j * 17 + i * j) % p as usize) as u32)
}

/// `M(a) ⊕ M(b)` over `μ^coh(C_2)`, repeated `copies` times.
pub fn c2_sum(copies: usize) -> Representation {
    let alg = coh_mackey_cyclic(2, 1).expect("algebra").algebra;
    let f = alg.field();
    let bq = alg.bound_quiver().clone();
    let one = FpMatrix::identity(f, 1);
    let zero = FpMatrix::zeros(f, 1, 1);
    let ma = Representation::new(bq.clone(), vec![1, 1], vec![one.clone(), zero.clone()]).expect("M(a)");
    let mb = Representation::new(bq, vec![1, 1], vec![zero, one]).expect("M(b)");
    let parts: Vec<&Representation> = (0..copies).flat_map(|_| [&ma, &mb]).collect();
    Representation::direct_sum(&parts).expect("sum")
}

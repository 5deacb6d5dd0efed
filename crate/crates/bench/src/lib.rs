//! Shared inputs for the `engine` benchmarks.

use centrex::casimir::{closed_form_casimirs, CasimirFamily, EnvelopingPoly};
use centrex::{catalog, LieAlgebra};

pub fn iha(n: usize) -> LieAlgebra {
    catalog::inhomogeneous_hamilton(n)
}

/// The degree-6 Hamilton invariant and its algebra.
pub fn hamilton_c5(n: usize) -> (LieAlgebra, EnvelopingPoly) {
    let alg = CasimirFamily::QuantumHamilton.algebra(n);
    let c5 = closed_form_casimirs(CasimirFamily::QuantumHamilton, n)
        .pop()
        .expect("five closed forms")
        .poly;
    (alg, c5)
}

/// A fixed word in reverse PBW order, the worst case for normal ordering.
pub fn reversed_word(alg: &LieAlgebra, len: usize) -> Vec<usize> {
    (0..len)
        .map(|k| alg.dim() - 1 - (k * 7) % alg.dim())
        .collect()
}

//! Expressions over heaps and trusses, exact normal forms in the free
//! abelian heap and free truss, an identity prover and a random refuter.

mod eval;
mod expr;
mod normal;
mod prove;

pub use eval::{
    eval, eval_normal_form, random_falsify, sample_pool, Counterexample, Interpretation,
    MAX_FALSIFY_VARS,
};
pub use expr::{parse, parse_identity, Expr};
pub use normal::{normalize, normalize_free_heap, normalize_free_truss, FreeElement, Theory, Word};
pub use prove::{
    commutator_bracket, expand_lie_macro, prove_identity, strengthened_bracket,
    strong_jacobi_sides, LieMacro, Verdict,
};

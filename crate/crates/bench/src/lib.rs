//! Benchmark inputs shared by the criterion targets.

use ndt_core::families::{gen_sharp_glued, gen_tree_family, SharpnessParams, TreeFamilyParams};
use ndt_core::Digraph;

/// Glued sharpness digraph for `(k, d, n)`.
pub fn sharp(k: usize, d: usize, n: usize) -> Digraph {
    let p = SharpnessParams::new(k, d, n).expect("valid parameters");
    gen_sharp_glued(&p).expect("generator succeeds").0
}

/// Tree family digraph `D_n(k)`.
pub fn tree(k: usize, n: usize) -> Digraph {
    gen_tree_family(&TreeFamilyParams { k, n }).expect("generator succeeds")
}

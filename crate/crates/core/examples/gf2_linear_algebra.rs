//! Rank, kernel and solving over F₂ with bit-packed matrices.
//!
//!     cargo run --example gf2_linear_algebra

use modcoh::gf2::{kernel_basis, rank, solve, BitMatrix, BitVec};

fn main() {
    let m = BitMatrix::from_strs(&["1101", "0111", "1010", "0000"]);
    println!("rank {}", rank(&m));
    let k = kernel_basis(&m);
    for v in k.row_vecs() {
        let image = m.mul_vec(&v);
        println!("kernel vector {:?}, image zero: {}", v.to_bools(), image.is_zero());
    }
    let rhs = BitVec::from_str01("1010");
    match solve(&m, &rhs) {
        Some(x) => println!("solution {:?}", x.to_bools()),
        None => println!("no solution"),
    }
}

// Exact rationals, rank and kernels.

use morikit::exact_math::{kernel_basis, rank, QMatrix, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let third: Rational = "1/3".parse()?;
    let sum = &third + &third + &third;
    println!("1/3 + 1/3 + 1/3 = {sum}");

    let huge: Rational = "340282366920938463463374607431768211457/3".parse()?;
    println!("(2^128 + 1)/3 squared = {}", &huge * &huge);

    // columns: 6 subsets of size 2 in {1,2,3,4}; one all-ones relation row
    let m = QMatrix::from_ints(&[vec![1, 1, 1, 1, 1, 1]])?;
    println!("rank = {}", rank(&m));
    for v in kernel_basis(&m) {
        println!("kernel vector {v}");
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// From divisor classes to Hassett weights and GIT polarizations.

use morikit::exact_math::Rational;
use morikit::picard_lattice::{BlowupModel, DivisorClass};
use morikit::weights_bridge::{
    phi, polarization_from_weights, reduction_admissible, weight_wall_sides_grouped, weights_from_polarization,
    Polarization, WeightVector,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = BlowupModel::mori(3)?;
    let minus_k = DivisorClass::from_ints(model, 4, &[-2; 5])?;
    let ample = DivisorClass::from_ints(model, 3, &[-1; 5])?;
    println!("phi(-K) = {}", phi(&minus_k)?);
    println!("phi(3H - sum E) = {}", phi(&ample)?);

    let b = Polarization::new(vec![2, 1, 1, 1, 1, 1, 1])?;
    let a = weights_from_polarization(&b);
    println!("b = {:?} -> a = {a} -> b = {:?}", b.entries(), polarization_from_weights(&a)?.entries());

    let democratic = weights_from_polarization(&Polarization::new(vec![1; 6])?);
    for side in weight_wall_sides_grouped(&democratic) {
        println!("  |I| = {}: {} subsets, sign {}", side.size, side.count, side.sign);
    }

    let mut kapranov = vec![Rational::new(1, 2)?; 5];
    kapranov.push(Rational::one());
    let kapranov = WeightVector::new(kapranov)?;
    println!("reduction to democratic weights: {}", reduction_admissible(&kapranov, &democratic)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

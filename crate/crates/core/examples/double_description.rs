// Converting cones between inequalities and generators.

use morikit::cone_engine::{dual_of_h, h_to_v, v_to_h, HCone, VCone};
use morikit::exact_math::QVector;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // a square pyramid: four facets through the origin
    let square = HCone::new(
        3,
        vec![
            QVector::from_ints([1, 1, 0]),
            QVector::from_ints([1, -1, 0]),
            QVector::from_ints([1, 0, 1]),
            QVector::from_ints([1, 0, -1]),
        ],
    )?;
    let v = h_to_v(&square)?;
    println!("{} extreme rays:", v.rays().len());
    for r in v.rays() {
        println!("  {r}");
    }

    let back = v_to_h(&v)?;
    println!("{} facets recovered", back.normals().len());

    let dual = dual_of_h(&square)?;
    println!("dual cone has {} rays", dual.rays().len());

    let redundant = VCone::from_generators(
        2,
        vec![QVector::from_ints([1, 0]), QVector::from_ints([1, 1]), QVector::from_ints([0, 1])],
        vec![],
    )?;
    println!("quadrant from 3 generators keeps {} rays", redundant.rays().len());

    let x = QVector::from_ints([2, 1, 1]);
    println!("{x} is {}", square.classify(&x)?.label());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// The standard Cremona transformation acting on divisor classes.

use morikit::picard_lattice::{
    anticanonical, contracted_rnc_classes, cremona_pushforward, default_cremona_base, pair, symmetric_polarization,
    BlowupModel, DivisorClass,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = BlowupModel::new(3, 5)?;
    let base = default_cremona_base(model);

    let h = DivisorClass::hyperplane(model);
    let image = cremona_pushforward(&h, &base)?;
    println!("H -> degree {} with multiplicities {:?}", image.degree(), display(&image.multiplicities()));
    let again = cremona_pushforward(&image, &base)?;
    println!("applied twice gives H back: {}", again == h);

    let k = anticanonical(model);
    println!("-K = {} is fixed: {}", k.coordinates(), cremona_pushforward(&k, &base)? == k);

    let pol = symmetric_polarization(2)?;
    let curves = contracted_rnc_classes(2)?;
    let zero = curves.iter().all(|c| pair(&pol, c).map(|v| v.is_zero()).unwrap_or(false));
    println!("{} lines through pairs of points, all contracted by {}: {zero}", curves.len(), pol.coordinates());
    Ok(())
}

fn display<T: std::fmt::Display>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

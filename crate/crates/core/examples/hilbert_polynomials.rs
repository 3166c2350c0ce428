// Hilbert polynomials of the quotients, by the general formula and by the
// closed forms.

use morikit::linear_systems::{
    hilbert, hilbert_sigma_even, hilbert_sigma_odd, linear_virtual_dim, section_space_dim_odd, sigma_system, LinearSystem,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let segre = LinearSystem::new(3, 2, vec![1; 5])?;
    let h = hilbert(&segre)?;
    println!("quadrics through 5 points of P^3: h(t) = {}", h.polynomial);
    println!("  degree {}, embedded in P^{}", h.degree, h.embedding_dim);
    println!("  virtual dimension {}", linear_virtual_dim(&segre));

    for g in 2..=4 {
        let closed = hilbert_sigma_odd(g)?;
        let general = hilbert(&sigma_system(g)?)?;
        println!(
            "odd g={g}: degree {} N {} paths agree {} section space {}",
            closed.degree,
            closed.embedding_dim,
            closed.polynomial == general.polynomial,
            section_space_dim_odd(g as usize)?
        );
    }
    for g in 1..=3 {
        let e = hilbert_sigma_even(g)?;
        println!("even g={g}: degree {} N {}", e.degree, e.embedding_dim);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

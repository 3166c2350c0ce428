use morikit::quotient_facts::facts;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in 2..=7 {
        let f = facts(m)?;
        println!(
            "Sigma_{m}: degree {} in P^{}, K = {}H, {} singular points, |Aut| = {}",
            f.degree, f.embedding_dim, f.canonical_multiple, f.singular_count, f.aut_order
        );
    }
    println!("{}", serde_json::to_string_pretty(&facts(3)?)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

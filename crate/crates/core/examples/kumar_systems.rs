use morikit::linear_systems::{hilbert, kumar_system};

// Linear systems whose images are the quotients of `n` weighted points.
pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for b in [vec![1; 6], vec![1; 5], vec![2; 5], vec![1, 1, 1, 1, 2, 2], vec![1, 1, 1, 1, 3, 3]] {
        let k = kumar_system(&b)?;
        let l = &k.system;
        print!("b = {b:?}: L_({},{})({:?})", l.n(), l.d(), l.mults());
        if k.clamped {
            print!(" [clamped]");
        }
        match hilbert(l) {
            Ok(h) => println!(" degree {}", h.degree),
            Err(e) => println!(" ({e})"),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// Driving the command line in-process.

use morikit::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["morikit", "cremona", "--m", "3", "--divisor", "1,0,0,0,0"], &mut out, &mut err);
    println!("exit {code}");
    print!("{}", String::from_utf8(out)?);

    let mut out = Vec::new();
    let code = run(["morikit", "walls", "--m", "3", "--format", "csv"], &mut out, &mut err);
    println!("exit {code}");
    print!("{}", String::from_utf8(out)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

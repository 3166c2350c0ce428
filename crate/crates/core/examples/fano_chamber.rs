// The chamber of `X^4_6` containing the anticanonical class, and the flips
// leading to it.

use morikit::cone_engine::h_to_v;
use morikit::mori_chambers::{fano_chamber, fano_locus, flip_sequence, flip_type, locate_divisor, walls};
use morikit::picard_lattice::{anticanonical, BlowupModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let minus_k = anticanonical(BlowupModel::mori(4)?);
    let chamber = fano_chamber(4)?;
    println!("Fano chamber: {} facets, {} rays", chamber.normals().len(), h_to_v(&chamber)?.rays().len());

    let report = locate_divisor(&minus_k)?;
    println!(
        "-K: eff {}, mov {}, nef {}, fano {}",
        report.in_eff.label(),
        report.in_mov.label(),
        report.in_nef.label(),
        report.in_fano.label()
    );

    let ws = walls(4)?;
    let flip_walls = ws.iter().filter(|w| flip_type(w, 4).is_ok()).count();
    println!("{} walls, {} of them flip walls", ws.len(), flip_walls);

    for g in 1..=3 {
        println!("g = {g}:");
        for s in flip_sequence(g)? {
            println!("  flip {} {}-planes into {}-planes", s.center_count, s.center_dim, s.inserted_dim);
        }
    }

    let odd = anticanonical(BlowupModel::mori(5)?);
    let on_all = fano_locus(5)?.iter().all(|w| w.evaluate(&odd).map(|v| v.is_zero()).unwrap_or(false));
    println!("-K of X^5_7 lies on every Fano-locus wall: {on_all}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

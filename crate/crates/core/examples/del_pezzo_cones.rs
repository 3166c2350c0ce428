// Cones of the quintic del Pezzo surface, the blow-up of the plane at four
// points.

use morikit::cone_engine::{dual_of_h, h_to_v};
use morikit::mori_chambers::{eff_generators, fano_chamber, mov_cone, ne_extremal_rays, nef_cone, walls};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gens = eff_generators(2)?;
    println!("negative curves generating Eff: {}", gens.rays().len());
    for r in gens.rays() {
        println!("  {r}");
    }

    let nef = nef_cone(2)?;
    println!("nef cone: {} inequalities, {} rays", nef.normals().len(), h_to_v(&nef)?.rays().len());
    println!("movable cone: {} inequalities", mov_cone(2)?.normals().len());
    println!("walls of the arrangement: {}", walls(2)?.len());

    let fano = fano_chamber(2)?;
    println!("Fano chamber equals nef cone: {}", sorted(fano.normals()) == sorted(nef.normals()));
    println!("curve cone rays: {}", dual_of_h(&nef)?.rays().len());

    let ne = ne_extremal_rays(1)?;
    for r in ne.rays.iter().flatten() {
        println!("  family {} from wall {}: {}", r.family, r.wall, r.curve.coordinates());
    }
    Ok(())
}

fn sorted<T: Clone + Ord>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

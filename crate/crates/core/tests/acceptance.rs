//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use morikit::cone_engine::{dual_of_h, h_to_v};
use morikit::exact_math::{binomial, factorial, BigInt, QVector, Rational};
use morikit::linear_systems::{
    hilbert, hilbert_sigma_even, hilbert_sigma_odd, kumar_system, mu_system, section_space_dim_odd, sigma_system,
    HilbertData, LinearSystem,
};
use morikit::mori_chambers::{eff_cone, eff_generators, fano_chamber, fano_locus, moving_curve_rays, nef_cone, walls};
use morikit::picard_lattice::{anticanonical, cremona_pushforward, BlowupModel, DivisorClass};
use morikit::quotient_facts::facts;
use morikit::weights_bridge::phi;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Checks {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            failed: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failed.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ray_set(rays: &[QVector]) -> BTreeSet<Vec<BigInt>> {
    rays.iter().map(|r| r.integer_direction()).collect()
}

fn hilbert_sound(c: &mut Checks, label: &str, h: &HilbertData, n: usize) {
    c.eq(&format!("{label} h(0)"), h.value_at(0), Rational::one());
    let lead = h.polynomial.coefficient(n) * Rational::from_integer(factorial(n));
    c.eq(&format!("{label} degree vs n! lc"), lead, Rational::from_integer(h.degree.clone()));
}

fn criterion_1(c: &mut Checks) {
    let h = hilbert_sigma_odd(2).unwrap();
    c.eq("N", h.embedding_dim.clone(), big(4));
    c.eq("degree", h.degree.clone(), big(3));
    c.eq("h(1)", h.value_at(1), Rational::from(5));
    let f = facts(3).unwrap();
    c.eq("singular_count", f.singular_count, big(10));
    c.eq("sing_multiplicity", f.sing_multiplicity, Some(big(2)));
    c.eq("aut_order", f.aut_order, big(720));
    c.eq("canonical_multiple", f.canonical_multiple, big(-2));
    c.eq("facts degree", f.degree, big(3));
    c.eq("facts N", f.embedding_dim, big(4));
}

fn criterion_2(c: &mut Checks) {
    let f = facts(2).unwrap();
    c.eq("N", f.embedding_dim, big(5));
    c.eq("degree", f.degree, big(5));
    c.eq("aut_order", f.aut_order, big(120));

    let eff_rays = h_to_v(&eff_cone(2).unwrap()).unwrap();
    let gens = eff_generators(2).unwrap();
    c.note(format!("h_to_v(eff_cone(2)) has {} rays", eff_rays.rays().len()));
    c.eq("eff_cone(2) extreme ray count", eff_rays.rays().len(), 10);
    c.check(
        "eff_cone(2) rays equal eff_generators(2) as a set",
        ray_set(eff_rays.rays()) == ray_set(gens.rays()),
    );

    let nef = nef_cone(2).unwrap();
    let fano = fano_chamber(2).unwrap();
    let nef_v = h_to_v(&nef).unwrap();
    let fano_v = h_to_v(&fano).unwrap();
    c.check(
        "nef_cone(2) = fano_chamber(2)",
        ray_set(nef_v.rays()) == ray_set(fano_v.rays()) && nef_v.lineality() == fano_v.lineality(),
    );
    let dual = dual_of_h(&nef).unwrap();
    c.eq("dual of nef_cone(2) ray count", BigInt::from(dual.rays().len()), binomial(5, 2));
}

fn criterion_3(c: &mut Checks) {
    let chamber = fano_chamber(4).unwrap();
    c.eq("facet count", chamber.normals().len(), 35);
    let mk = anticanonical(BlowupModel::mori(4).unwrap()).coordinates();
    c.check("-K INTERIOR", chamber.classify(&mk).unwrap().is_interior());
    let all_one = walls(4)
        .unwrap()
        .iter()
        .filter(|w| w.k == 3)
        .all(|w| w.normal.dot(&mk).unwrap() == Rational::one());
    c.check("every chamber wall value on -K is 1", all_one);
    let v = h_to_v(&chamber).unwrap();
    let dual = dual_of_h(&chamber).unwrap();
    c.note(format!(
        "h_to_v gives {} rays; the dual cone has {} rays",
        v.rays().len(),
        dual.rays().len()
    ));
    c.eq("h_to_v extreme ray count", v.rays().len(), 35);
}

fn criterion_4(c: &mut Checks) {
    for g in 2..=3usize {
        let m = 2 * g - 1;
        let mk = anticanonical(BlowupModel::mori(m).unwrap());
        let ws = fano_locus(m).unwrap();
        c.check(format!("g={g} fano_locus nonempty"), !ws.is_empty());
        for w in ws {
            c.check(
                format!("g={g} wall {} vanishes on -K", w.label()),
                w.evaluate(&mk).unwrap().is_zero(),
            );
        }
    }
}

fn criterion_5(c: &mut Checks) {
    for g in 2..=5u64 {
        let closed = hilbert_sigma_odd(g).unwrap();
        let general = hilbert(&sigma_system(g).unwrap()).unwrap();
        c.check(format!("odd g={g} polynomials agree"), closed.polynomial == general.polynomial);
        c.eq(&format!("odd g={g} degrees agree"), &closed.degree, &general.degree);
        let n = (2 * g - 1) as usize;
        hilbert_sound(c, &format!("odd g={g} closed"), &closed, n);
        hilbert_sound(c, &format!("odd g={g} general"), &general, n);
    }
    for g in 1..=5u64 {
        let closed = hilbert_sigma_even(g).unwrap();
        let general = hilbert(&mu_system(g).unwrap()).unwrap();
        c.check(format!("even g={g} polynomials agree"), closed.polynomial == general.polynomial);
        c.eq(&format!("even g={g} degrees agree"), &closed.degree, &general.degree);
        let n = (2 * g) as usize;
        hilbert_sound(c, &format!("even g={g} closed"), &closed, n);
        hilbert_sound(c, &format!("even g={g} general"), &general, n);
    }
}

fn criterion_6(c: &mut Checks) {
    for g in 2..=5usize {
        let kernel = section_space_dim_odd(g).unwrap();
        let formula = binomial(2 * g, g) - binomial(2 * g, g - 2);
        let h1 = hilbert_sigma_odd(g as u64).unwrap().value_at(1);
        c.eq(&format!("g={g} kernel vs binomials"), BigInt::from(kernel), formula.clone());
        c.eq(&format!("g={g} kernel vs h(1)"), Rational::from(kernel), h1);
        c.note(format!("g={g}: {kernel}"));
    }
}

fn random_class(rng: &mut ChaCha8Rng, model: BlowupModel) -> DivisorClass {
    let q = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=12)).unwrap();
    let y = q(rng);
    let x = (0..model.s()).map(|_| q(rng)).collect();
    DivisorClass::new(model, y, x).unwrap()
}

fn criterion_7(c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4E0);
    for (m, s) in [(2usize, 4usize), (3, 5), (4, 6), (5, 7)] {
        let model = BlowupModel::new(m, s).unwrap();
        let mut bad = 0;
        for _ in 0..200 {
            let d = random_class(&mut rng, model);
            let mut labels: Vec<usize> = (1..=s).collect();
            labels.shuffle(&mut rng);
            let base = &labels[..m + 1];
            let twice = cremona_pushforward(&cremona_pushforward(&d, base).unwrap(), base).unwrap();
            if twice != d {
                bad += 1;
            }
        }
        c.eq(&format!("({m},{s}) involution failures"), bad, 0);
    }
    for g in 2..=4usize {
        let s = 2 * g + 1;
        let model = BlowupModel::new(2 * g - 1, s).unwrap();
        let d = DivisorClass::from_ints(model, g as i64, &vec![-(g as i64 - 1); s]).unwrap();
        for skip in 1..=s {
            let base: Vec<usize> = (1..=s).filter(|&i| i != skip).collect();
            c.check(
                format!("g={g} fixed under base omitting {skip}"),
                cremona_pushforward(&d, &base).unwrap() == d,
            );
        }
    }
}

fn criterion_8(c: &mut Checks) {
    let r = |n: i64, d: i64| Rational::new(n, d).unwrap();
    let m3 = BlowupModel::mori(3).unwrap();
    let a = phi(&DivisorClass::from_ints(m3, 4, &[-2; 5]).unwrap()).unwrap();
    c.eq("phi(4,-2x5)", a.entries().to_vec(), vec![r(1, 3); 6]);
    let a = phi(&DivisorClass::from_ints(m3, 3, &[-1; 5]).unwrap()).unwrap();
    let mut want = vec![r(2, 7); 5];
    want.push(r(4, 7));
    c.eq("phi(3,-1x5)", a.entries().to_vec(), want);
    for m in 2..=4usize {
        let model = BlowupModel::mori(m).unwrap();
        for ray in eff_generators(m).unwrap().rays() {
            let a = phi(&DivisorClass::from_coordinates(model, ray).unwrap()).unwrap();
            let vertex = a.entries().iter().all(|x| x.is_zero() || *x == Rational::one());
            c.check(format!("m={m} phi{ray} = {a} is a cube vertex"), vertex);
        }
    }
}

fn criterion_9(c: &mut Checks) {
    for g in 1..=3usize {
        let rays = moving_curve_rays(g).unwrap();
        c.eq(&format!("g={g} ray count"), rays.len(), 2 * g + 3);
        let lines = rays.iter().filter(|r| r.label.starts_with("line through p_")).count();
        let rnc = rays
            .iter()
            .filter(|r| r.label == format!("degree-{} rational normal curve through all points", 2 * g))
            .count();
        c.eq(&format!("g={g} line classes"), lines, 2 * g + 2);
        c.eq(&format!("g={g} rational normal curve classes"), rnc, 1);
    }
}

fn criterion_10(c: &mut Checks) {
    // frozen after the first computation; both paths must keep agreeing
    let even2 = hilbert_sigma_even(2).unwrap();
    let even2_general = hilbert(&mu_system(2).unwrap()).unwrap();
    c.eq("deg Sigma_4 closed", even2.degree.clone(), big(154));
    c.eq("deg Sigma_4 general", even2_general.degree.clone(), big(154));
    let odd3 = hilbert_sigma_odd(3).unwrap();
    let odd3_general = hilbert(&sigma_system(3).unwrap()).unwrap();
    c.eq("deg Sigma_5 closed", odd3.degree.clone(), big(40));
    c.eq("deg Sigma_5 general", odd3_general.degree.clone(), big(40));
    let odd2 = hilbert_sigma_odd(2).unwrap();
    let odd2_general = hilbert(&sigma_system(2).unwrap()).unwrap();
    c.eq("h_Sigma_3(2) closed", odd2.value_at(2), Rational::from(15));
    c.eq("h_Sigma_3(2) general", odd2_general.value_at(2), Rational::from(15));
}

fn criterion_11(c: &mut Checks) {
    let l = |n: u64, d: u64, mults: Vec<u64>| LinearSystem::new(n, d, mults).unwrap();
    c.eq("kumar(1^6)", kumar_system(&[1; 6]).unwrap().system, l(3, 2, vec![1; 5]));
    c.eq("kumar(1^5)", kumar_system(&[1; 5]).unwrap().system, l(2, 3, vec![1; 4]));
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    let mut tested = 0;
    while tested < 50 {
        let n = rng.gen_range(5..=9);
        let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let total: u64 = b.iter().sum();
        if total % 2 == 0 || b.iter().any(|&bi| 2 * bi >= total) {
            continue;
        }
        let doubled: Vec<u64> = b.iter().map(|v| 2 * v).collect();
        c.check(
            format!("kumar({b:?}) = kumar(2b)"),
            kumar_system(&b).unwrap() == kumar_system(&doubled).unwrap(),
        );
        tested += 1;
    }
}

type Criterion = (usize, &'static str, fn(&mut Checks), Option<Duration>);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "Segre cubic suite", criterion_1, Some(Duration::from_secs(1))),
        (2, "quintic del Pezzo suite", criterion_2, Some(Duration::from_secs(1))),
        (3, "Fano chamber of X^4_6", criterion_3, Some(Duration::from_secs(60))),
        (4, "odd Fano locus", criterion_4, None),
        (5, "Hilbert cross-validation", criterion_5, Some(Duration::from_secs(10))),
        (6, "section-space identity", criterion_6, Some(Duration::from_secs(30))),
        (7, "Cremona properties", criterion_7, None),
        (8, "phi reproductions", criterion_8, None),
        (9, "moving-curve rays", criterion_9, None),
        (10, "derived-degree fixtures", criterion_10, None),
        (11, "Kumar examples", criterion_11, None),
    ];
    let mut failures = 0;
    for (id, name, run, limit) in criteria {
        let mut c = Checks::new();
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&mut c)));
        let elapsed = start.elapsed();
        if outcome.is_err() {
            c.failed.push("panicked".into());
        }
        if let Some(limit) = limit {
            c.check(format!("runtime {elapsed:.2?} within {limit:?}"), elapsed <= limit);
        }
        let status = if c.failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} criterion {id}: {name} ({elapsed:.2?})");
        if !c.notes.is_empty() {
            line.push_str(&format!("; {}", c.notes.join(", ")));
        }
        if !c.failed.is_empty() {
            failures += 1;
            line.push_str(&format!("; failed: {}", c.failed.join(" | ")));
        }
        println!("{line}");
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

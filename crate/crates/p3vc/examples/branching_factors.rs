//! Print the branching factor of every search step, then of a few textbook
//! recurrences.

use p3vc::recurrence::{branching_factor, DEFAULT_TOL, STEP_VECTORS, WORST_CASE_FACTOR};

fn main() {
    println!("{:18} {:24} factor", "step", "budget decrements");
    for (name, decs) in STEP_VECTORS {
        let f = branching_factor(decs, DEFAULT_TOL).unwrap();
        println!("{name:18} {:24} {f:.6}", format!("{decs:?}"));
    }
    println!("\nworst case bound: {WORST_CASE_FACTOR}");

    println!("\nclassics:");
    for (label, decs) in [
        ("single branch", &[3usize][..]),
        ("binary", &[1, 1]),
        ("fibonacci", &[1, 2]),
        ("vertex cover deg-3", &[1, 3]),
    ] {
        let f = branching_factor(decs, DEFAULT_TOL).unwrap();
        println!("  {label:20} {decs:?} -> {f:.6}");
    }
}

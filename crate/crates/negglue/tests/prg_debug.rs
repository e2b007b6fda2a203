// development probe for the prgTAS square pipeline
use negglue::squares::debug::diagnose_square;
use negglue::squares::prg::{generate_prg_square_with_plan, prg_n_min, prg_square_params};
use negglue::validate_class;

#[test]
fn prg_acceptance_sizes_all_neg_strengths() {
    println!("N_min = {}", prg_n_min());
    for n in [38u32, 41, 42, 46, 73, 100, 256] {
        let p = prg_square_params(n);
        if p.is_err() {
            println!("N={n}: below N_min");
            continue;
        }
        for s in [-1i32, -2, -3, -5] {
            let (sys, plan) = generate_prg_square_with_plan(n, s).unwrap();
            assert!(validate_class(&sys).is_empty(), "N={n} class violations");
            let report = diagnose_square(&sys, n, &plan, 8);
            for p in &report.problems {
                println!("N={n} s={s} PROBLEM: {p}");
            }
            assert!(report.ok, "N={n} s_neg={s}");
        }
        let (sys, _) = generate_prg_square_with_plan(n, -1).unwrap();
        let k = prg_square_params(n).unwrap().k;
        println!("N={n}: |T|={} k={k} ratio={:.1}", sys.tiles.len(), sys.tiles.len() as f64 / (n as f64).log2());
    }
}

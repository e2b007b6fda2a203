use negglue::squares::prg::generate_prg_square;
fn main() {
    let c64 = {
        let sys = generate_prg_square(64, -1).unwrap();
        sys.tiles.len() as f64 / 64f64.ln()
    };
    println!("C fitted at N=64: {c64:.1}");
    for n in [38u32, 64, 100, 128, 256, 512, 1024, 2048, 4096] {
        let sys = generate_prg_square(n, -1).unwrap();
        let bound = c64 * (n as f64).ln();
        println!("N={n}: |T|={} bound={:.0} {}", sys.tiles.len(), bound,
            if (sys.tiles.len() as f64) <= bound { "OK" } else { "FAIL" });
    }
}

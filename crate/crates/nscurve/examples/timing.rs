use nscurve::curve::CurveSpec;
use nscurve::sigma::{leading_layer_is_schur, parity_check, sigma_expansion, sigma_expansion_with};
use std::time::Instant;

fn main() {
    for (n, s, d) in [(2u32, 3u32, 13i64), (2, 5, 7), (3, 4, 9), (2, 7, 10)] {
        let spec = CurveSpec::symbolic(n, s).unwrap();
        let t = Instant::now();
        match sigma_expansion(&spec, d) {
            Ok(e) => println!(
                "({n},{s}) D={d}: {} coeffs, schur={}, parity={}, {:.1}s",
                e.coeffs.len(),
                leading_layer_is_schur(&e),
                parity_check(&e),
                t.elapsed().as_secs_f64()
            ),
            Err(err) => println!("({n},{s}) D={d}: ERROR {err} after {:.1}s", t.elapsed().as_secs_f64()),
        }
    }
    // N-independence: (2,5) with N=3 and N=4.
    let spec = CurveSpec::symbolic(2, 5).unwrap();
    let t = Instant::now();
    let e3 = sigma_expansion_with(&spec, 7, 3).unwrap();
    let e4 = sigma_expansion_with(&spec, 7, 4).unwrap();
    println!("(2,5) N=3 vs N=4: equal={}, {:.1}s", e3.coeffs == e4.coeffs, t.elapsed().as_secs_f64());
}

//! Conics: local-global decision by Hilbert symbols, with explicit witnesses.

use zcs::period::conic_has_rational_point;

fn main() -> zcs::Result<()> {
    for (a, b, c) in [(1, 1, 2), (1, 1, 3), (3, 5, 7), (-2, 7, 41), (1, 1, -1)] {
        let r = conic_has_rational_point(a, b, c)?;
        let symbols: Vec<String> = r.symbols.iter().map(|e| format!("{}:{}", e.place, e.symbol)).collect();
        match &r.witness {
            Some([x, y, z]) => println!("{a}X^2 + {b}Y^2 = {c}Z^2: point ({x}, {y}, {z}); symbols {}", symbols.join(" ")),
            None => println!(
                "{a}X^2 + {b}Y^2 = {c}Z^2: no point, obstructed at {:?}; product {}",
                r.obstructions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                r.symbol_product
            ),
        }
    }
    Ok(())
}

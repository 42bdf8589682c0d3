//! Gröbner basis, Hilbert series and Krull dimension of a graded quotient.
//!
//!     cargo run --example groebner_hilbert -- "x:1,y:1,w:2" "x*y" "w^2 + x^4"

use modcoh::grobner::GradedRing;
use modcoh::poly::PolyRing;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let vars = args.next().unwrap_or_else(|| "x:1,y:1,w:2".into());
    let vars: Vec<(String, u32)> = vars
        .split(',')
        .map(|v| {
            let (n, w) = v.split_once(':').unwrap_or((v, "1"));
            Ok((n.trim().to_string(), w.trim().parse()?))
        })
        .collect::<Result<_, std::num::ParseIntError>>()?;
    let ring = PolyRing::new(vars);
    let rels: Vec<_> = args.map(|r| ring.parse(&r)).collect::<Result<_, _>>()?;
    let rels = if rels.is_empty() { vec![ring.parse("x*y")?] } else { rels };

    let a = GradedRing::new(ring.clone(), rels)?;
    println!("Gröbner basis:");
    for g in a.groebner_basis() {
        println!("  {}", ring.format(&g));
    }
    let hs = a.hilbert_series();
    println!("Hilbert series coefficients: {:?}", hs.coefficients(10));
    println!("Krull dimension: {}", a.krull_dim());
    for d in 0..=3 {
        let ms: Vec<String> = a.standard_monomials(d).iter().map(|m| ring.format_monomial(m)).collect();
        println!("  standard monomials of degree {d}: {}", ms.join(" "));
    }
    Ok(())
}

//! Brackets on pairs of polynomials `u(lambda)`, `v(lambda)` built from a
//! bivariate `phi`; coordinates `u1..ud, v1..vd` are named `x1..x(2d)`.

use tetraflow::generators::{calibrate_vanhaecke, vanhaecke_bracket, GeneratorSpec, VanhaeckeSpec};
use tetraflow::multivector::is_poisson;

fn main() -> tetraflow::Result<()> {
    println!("convention: {:?}", calibrate_vanhaecke()?);
    for (d, phi) in [(1, "x^2*y^2"), (2, "x^2*y"), (2, "x^3*y^3"), (3, "x^2*y^2")] {
        let p = vanhaecke_bracket(&VanhaeckeSpec::parse(d, phi)?)?;
        let spec = GeneratorSpec::vanhaecke(d, phi)?;
        let aliases: Vec<String> = spec
            .aliases()
            .iter()
            .map(|(a, x)| format!("{a}={x}"))
            .collect();
        println!(
            "d={d} phi={phi} ({}) Poisson: {}",
            aliases.join(" "),
            is_poisson(&p)?
        );
        if d == 2 && phi == "x^2*y" {
            println!("{p}");
        }
    }
    Ok(())
}

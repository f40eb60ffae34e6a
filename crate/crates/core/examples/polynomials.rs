//! Exact polynomial arithmetic: parsing, products, partial derivatives.

use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(3)?;
    let f = Polynomial::parse("x1^2*x3 - 3/2*x2", ctx)?;
    let g = Polynomial::parse("x2 + x3^2", ctx)?;

    println!("f       = {f}");
    println!("g       = {g}");
    println!("f * g   = {}", &f * &g);
    println!("f^3     = {}", f.pow(3));
    for var in 0..3 {
        println!("d{} (fg) = {}", var + 1, (&f * &g).diff(var)?);
    }

    // with a formal parameter adjoined
    let ectx = Context::with_epsilon(3)?;
    let h = Polynomial::parse("x1 + eps*x2 + eps^2*x3", ectx)?;
    for (k, part) in h.pow(2).epsilon_orders()? {
        println!("eps^{k}: {part}");
    }
    Ok(())
}

//! Deforms a Poisson bracket on R^3 by `eps * D` and splits both brackets
//! by powers of `eps`.

use tetraflow::analysis::{perturb_probe, probe_instance};

fn main() -> tetraflow::Result<()> {
    let (p, delta) = probe_instance()?;
    println!("P =\n{p}D =\n{delta}");
    let r = perturb_probe(&p, &delta)?;
    for (k, (jac, flow)) in &r.orders {
        println!("eps^{k}");
        println!("  [[P~,P~]]      {}", jac.get(&[0, 1, 2]));
        println!("  [[P~,Q(P~)]]   {}", flow.get(&[0, 1, 2]));
    }
    Ok(())
}

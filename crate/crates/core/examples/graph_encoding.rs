//! Encodes graphs as text, evaluates them on a bi-vector and compares the
//! tetrahedra with their closed forms.

use tetraflow::graphflow::{evaluate_kgraph, gamma1, KGraph, SKEW_VANISHING};
use tetraflow::multivector::MultiVector;
use tetraflow::polyring::{Context, Polynomial};

fn main() -> tetraflow::Result<()> {
    let ctx = Context::new(3)?;
    let poly = |s: &str| Polynomial::parse(s, ctx);
    let p = MultiVector::bivector(
        ctx,
        [
            ((0, 1), poly("x1^2*x3 + x2^3")?),
            ((0, 2), poly("x2^2*x3")?),
            ((1, 2), poly("x1*x2*x3")?),
        ],
    )?;

    let wedge: KGraph = "1; (S1,S2)".parse()?;
    println!(
        "wedge graph returns P: {}",
        evaluate_kgraph(&wedge, &p)?.skew == p
    );

    let tetra = KGraph::gamma1_tetrahedron();
    println!("{tetra}");
    let by_graph = evaluate_kgraph(&tetra, &p)?;
    println!("graph = closed form: {}", by_graph == gamma1(&p)?);
    println!("{}", by_graph.skew);

    let loop_graph: KGraph = SKEW_VANISHING.parse()?;
    println!(
        "{loop_graph} vanishes: {}",
        evaluate_kgraph(&loop_graph, &p)?.raw.is_zero()
    );

    match "2; (S1,V1) (V1,S2)".parse::<KGraph>() {
        Ok(g) => println!("parsed {g}"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

//! Recomputes the eleven reference rows and prints the check-mark grid.

use tetraflow::analysis::reproduce_tables;

fn main() -> tetraflow::Result<()> {
    let report = reproduce_tables()?;
    print!("{}", report.render_text());
    if !report.all_match() {
        std::process::exit(1);
    }
    Ok(())
}

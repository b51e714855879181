//! Built-in reference comparison, the same one `qvfo --golden` runs.

fn main() -> qvfo::Result<()> {
    let lines = qvfo::golden::run_all()?;
    for l in &lines {
        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("{failed} of {} comparisons differ", lines.len());
    Ok(())
}

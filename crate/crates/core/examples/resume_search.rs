//! Interrupt a search, then resume it from the progress sidecar.

use planar2::report::Format;
use planar2::search::{emit_result, progress_path, run_search, Mode, SearchOptions};
use planar2::Result;

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("planar2-resume-example");
    std::fs::create_dir_all(&dir)?;
    let out = dir.join("r11.json");
    let _ = std::fs::remove_file(progress_path(&out));

    let first = SearchOptions { out: Some(out.clone()), stop_after: Some(500), ..Default::default() };
    assert!(run_search(11, Mode::AllDegrees, &first)?.is_none());
    println!("stopped early; progress in {}", progress_path(&out).display());

    let rest = SearchOptions { out: Some(out.clone()), resume: true, ..Default::default() };
    let result = run_search(11, Mode::AllDegrees, &rest)?.expect("runs to completion");
    emit_result(&result, &out, Format::Json)?;
    println!("{} findings over {} exponents written to {}", result.totals.findings, result.totals.units, out.display());
    Ok(())
}

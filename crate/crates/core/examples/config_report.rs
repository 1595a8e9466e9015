// Library route to what `multiwell --config run.json levels` prints.

use multiwell::report::{run_levels, CsvStyle, RunConfig};
use multiwell::Result;

const CONFIG: &str = r#"{ "v1": -1.35, "v2": -1.25, "n_cells": 2 }"#;

pub fn run_example() -> Result<()> {
    let config = RunConfig::from_json(CONFIG)?;
    let report = run_levels(&config, false)?;
    print!(
        "{}",
        report.to_csv(CsvStyle {
            four_decimals: true
        })
    );
    assert_eq!(report.levels.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

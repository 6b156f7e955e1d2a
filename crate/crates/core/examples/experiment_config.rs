//! Parse a JSON experiment config, run it and write the stats CSV to stdout.
//!
//! ```bash
//! cargo run --example experiment_config
//! ```

use efn_lab::experiment::{write_stats_csv, ExperimentConfig, Experiment};

const CONFIG: &str = r#"{
  "template": {"family": "power-law", "d": 128, "beta": 1.0, "phase_seed": 4},
  "m": 300,
  "trials": 30,
  "master_seed": 17,
  "frequencies": [1, 8, 32],
  "prediction_trials": 5000
}"#;

fn main() -> efn_lab::Result<()> {
    let config = match ExperimentConfig::from_json_str(CONFIG) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config:{e}");
            std::process::exit(2);
        }
    };
    let experiment = Experiment::new(config)?;
    let stats = experiment.run()?;
    write_stats_csv(&stats, std::io::stdout())?;

    let broken = CONFIG.replace("\"d\": 128", "\"d\": 127");
    if let Err(e) = ExperimentConfig::from_json_str(&broken) {
        println!("rejected: config:{e}");
    }
    Ok(())
}

//! Loading a JSON instance and driving the command-line front end in-process.
//!
//! `cargo run --example instance_file`

use ffperiodic::cli::{self, InstanceFile};
use ffperiodic::periodic::succ_minima_periodic;

const COSET: &str = r#"{
  "q": 3, "d": 2,
  "basis": [["x", "1"], ["0", "x^-1"]],
  "reps": [["x^-1", "2*x^-2"]],
  "frame": "reduced"
}"#;

fn main() -> ffperiodic::Result<()> {
    let inst = InstanceFile::from_json(COSET)?.load()?;
    println!("{:?} form, period q^{}", inst.kind, inst.periodic.period_size());
    println!("minima {:?}", succ_minima_periodic(&inst.periodic, &inst.body)?.exponents);

    let dir = std::env::temp_dir().join("ffperiodic-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("coset.json");
    std::fs::write(&path, COSET).expect("write instance");
    for args in [
        vec!["covrad", "--oracle"],
        vec!["count", "--radius", "1"],
        vec!["--format", "json", "packrad"],
        vec!["covrad"],
    ] {
        let mut argv = vec!["ffperiodic"];
        argv.extend(&args);
        argv.push(path.to_str().expect("utf-8 path"));
        let out = cli::run(&argv);
        println!("$ ffperiodic {} <file>  (exit {})", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
    Ok(())
}

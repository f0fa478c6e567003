use hybrid_ee::experiments::{map_points, run, write_outputs, write_table, RunOutput, ScenarioConfig};

const SMALL_CAPACITY: &str = r#"
[scenario]
sweep = "ee_vs_capacity"
seed = 3

[params]
horizon = 4.0

[arrivals]
amount = 500

[sweep]
start = 0
stop = 800
step = 400
"#;

fn csv_of(output: &RunOutput) -> String {
    let RunOutput::Table { table, .. } = output else {
        panic!("expected a table");
    };
    let mut buf = Vec::new();
    write_table(table, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn capacity_sweep_from_config() {
    let c = ScenarioConfig::parse(SMALL_CAPACITY).unwrap();
    let text = csv_of(&run(&c, 1).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "{text}");
    assert!(lines[0].starts_with("battery_capacity"));
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    let c = ScenarioConfig::parse(SMALL_CAPACITY).unwrap();
    let one = csv_of(&run(&c, 1).unwrap());
    assert_eq!(one, csv_of(&run(&c, 4).unwrap()));
    assert_eq!(one, csv_of(&run(&c, 0).unwrap()));
}

#[test]
fn map_points_keeps_input_order() {
    let out = map_points((0..100).collect(), 4, |x: i32| x * x);
    assert_eq!(out, (0..100).map(|x| x * x).collect::<Vec<_>>());
}

#[test]
fn unknown_keys_are_rejected() {
    let bad = SMALL_CAPACITY.replace("horizon = 4.0", "horizon = 4.0\nhorizn = 2");
    assert!(ScenarioConfig::parse(&bad).is_err());
}

#[test]
fn outputs_land_next_to_each_other() {
    let dir = tempfile::tempdir().unwrap();
    let c = ScenarioConfig::parse(SMALL_CAPACITY).unwrap();
    let path = dir.path().join("nested").join("cap.csv");
    let written = write_outputs(&run(&c, 1).unwrap(), &c, &path).unwrap();
    let names: Vec<String> = written.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["cap.csv", "cap.meta", "cap_timeline.csv"]);
    assert!(written.iter().all(|p| p.exists()));
}

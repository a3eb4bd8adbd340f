use std::fs;
use std::process::{Command, Output};

fn trispace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sample_then_betti() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k6.txt");
    let path = path.to_str().unwrap();
    let out = trispace(&["sample", "-n", "6", "-p", "1", "-o", path]);
    assert!(out.status.success());
    assert!(fs::read_to_string(path).unwrap().starts_with("6 15\n"));

    let out = trispace(&["betti", path]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dim_cycle 10"));
    assert!(text.contains("betti1 0"));
    assert!(text.contains("q true"));
}

#[test]
fn betti_prints_witness_for_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    fs::write(&path, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = trispace(&["betti", "--witness", path.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("betti1 1"), "{text}");
    assert!(text.contains("q false"));
    assert!(text.contains("witness "));
}

#[test]
fn oracle_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    fs::write(&path, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = trispace(&["oracle", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max triangle-free subgraph 4"));
    assert!(text.contains("min triangle hitting set 2"));
    assert!(text.contains("min bipartization 2"));
}

#[test]
fn sweep_writes_records_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.cfg");
    let out_dir = dir.path().join("out");
    fs::write(
        &config,
        format!(
            "# small sweep\nn_list = 20, 40\nc_list = 1.0, 1.5\ntrials = 3\nseed = 9\nout_dir = {}\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let out = trispace(&["sweep", config.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut names: Vec<String> = fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    let records = names.iter().find(|n| n.ends_with(".jsonl")).expect("records file");
    let lines = fs::read_to_string(out_dir.join(records)).unwrap();
    assert_eq!(lines.lines().count(), 12);
    assert!(stdout(&out).starts_with("n,c,p,trials,p_q,p_t_eq_c,p_q_and_neq,mean_betti1,mu_analytic,exp_neg_mu\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(trispace(&["verify", "oracles"]).status.code(), Some(0));
    assert_eq!(trispace(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(trispace(&["sample", "-n", "5"]).status.code(), Some(2));
    assert_eq!(trispace(&["sample", "-n", "5", "-p", "1.5"]).status.code(), Some(2));
    assert_eq!(trispace(&["betti", "/nonexistent/graph"]).status.code(), Some(2));
}

#[test]
fn spotcheck_runs() {
    let out = trispace(&["spotcheck", "-n", "100", "-p", "1", "--samples", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("passed               true"));
}

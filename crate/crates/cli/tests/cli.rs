use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env_remove("SRC_SOLVER_CMD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn coloring_json(entries: &[(&str, &str, usize)]) -> String {
    let assignment: Vec<_> = entries
        .iter()
        .map(|(u, v, c)| serde_json::json!({"u": u, "v": v, "color": c}))
        .collect();
    let colors = entries.iter().map(|e| e.2).max().unwrap();
    serde_json::json!({"colors": colors, "assignment": assignment}).to_string()
}

#[test]
fn solve_path_graph() {
    let dir = TempDir::new().unwrap();
    let p3 = write(dir.path(), "p3.txt", "a b\nb c\n");
    let out = dir.path().join("p3.coloring.json");
    let csv = dir.path().join("runs.csv");
    let o = rainbow(&[
        "solve",
        &p3,
        "--method",
        "naive",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("p3: src = 2"));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 2);
    assert!(rows.lines().nth(1).unwrap().starts_with("p3,3,2,naive,2,"));

    let v = rainbow(&["verify", &p3, out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn verify_reports_invalid_coloring() {
    let dir = TempDir::new().unwrap();
    let c4 = write(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let good = write(
        dir.path(),
        "good.json",
        &coloring_json(&[("0", "1", 1), ("1", "2", 2), ("2", "3", 1), ("3", "0", 2)]),
    );
    let bad = write(
        dir.path(),
        "bad.json",
        &coloring_json(&[("0", "1", 1), ("1", "2", 1), ("2", "3", 1), ("3", "0", 1)]),
    );
    assert_eq!(rainbow(&["verify", &c4, &good]).status.code(), Some(0));
    let o = rainbow(&["verify", &c4, &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn bound_and_stats() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let o = rainbow(&["bound", &star, "--chi-exact"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "diam 2\nomega' 4\nlb 4\nchi(H) 4\n");

    let c4 = write(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let o = rainbow(&["stats", &star, &c4]);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].starts_with("instance,n,m,omega_prime,diam,dens_h,paths,paths_rem,pct_rem"));
    assert!(lines[1].starts_with("star,5,4,4,2,100.00,10,6,60.00"));
    assert!(lines[2].starts_with("c4,4,4,"));
    assert!(lines[2].contains(",8,8,100.00"));
}

#[test]
fn gen_names_and_determinism() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = rainbow(&["gen", "--seed", "5", "--count", "2", "--out", d, "er", "12", "0.3"]);
    assert!(o.status.success());
    let first = fs::read_to_string(dir.path().join("ER_12_30_1.txt")).unwrap();
    assert!(dir.path().join("ER_12_30_0.txt").exists());
    rainbow(&["gen", "--seed", "5", "--count", "2", "--out", d, "er", "12", "0.3"]);
    assert_eq!(fs::read_to_string(dir.path().join("ER_12_30_1.txt")).unwrap(), first);
    let o = rainbow(&["gen", "--out", d, "ws", "10", "4", "0.1"]);
    assert!(o.status.success());
    assert!(dir.path().join("WS_10_4_10_0.txt").exists());
}

#[test]
fn heuristic_writes_a_valid_coloring() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k23.txt", "a x\na y\na z\nb x\nb y\nb z\n");
    let out = dir.path().join("h.json");
    let o = rainbow(&["heuristic", &g, "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("best "));
    assert_eq!(rainbow(&["verify", &g, out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn bad_input_fails() {
    let dir = TempDir::new().unwrap();
    let broken = write(dir.path(), "broken.txt", "a\n");
    let o = rainbow(&["solve", &broken]);
    assert_eq!(o.status.code(), Some(1));
}

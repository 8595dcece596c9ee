use std::path::Path;
use std::process::{Command, Output};

use nlasso::generators::GreyImage;
use nlasso::io::{parse_key_values, parse_signal_csv, read_pgm, write_pgm};

fn nlasso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlasso")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn report(dir: &Path, name: &str) -> Vec<(String, String)> {
    parse_key_values(&read(dir, name)).unwrap()
}

fn value<'a>(kv: &'a [(String, String)], key: &str) -> &'a str {
    &kv.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("missing {key}")).1
}

const CHAIN_MANIFEST: &str = "generator = chain\nchain.n = 100\nchain.weight = 5/4\nchain.overrides = 4:1\n\
                              seed_ids = 1\nalpha = 1/200\nlambda = 2/10\nmax_iters = 1000\nout = run\n";

#[test]
fn solve_chain_manifest_gives_first_four_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("chain.manifest");
    std::fs::write(&m, CHAIN_MANIFEST).unwrap();
    let o = nlasso(&["solve", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("run");
    assert_eq!(read(&out, "cluster.txt"), "1\n2\n3\n4\n");
    let signal = parse_signal_csv(&read(&out, "signal.csv")).unwrap();
    assert_eq!(signal.len(), 100);
    let kv = report(&out, "certificates.txt");
    assert_eq!(value(&kv, "kkt.capacity_ok"), "true");
    assert_eq!(value(&kv, "prop1.holds_20"), "true");
    assert_eq!(value(&kv, "iterations"), "1000");
}

#[test]
fn solve_from_edge_list_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let s = dir.path().join("s.txt");
    // two triangles joined by a weak edge
    std::fs::write(&g, "1 2 1\n1 3 1\n2 3 1\n3 4 0.01\n4 5 1\n4 6 1\n5 6 1\n").unwrap();
    std::fs::write(&s, "1\n").unwrap();
    let out = dir.path().join("o");
    let o = nlasso(&[
        "solve", "--graph", g.to_str().unwrap(), "--seeds", s.to_str().unwrap(), "--alpha", "0.05",
        "--lambda", "0.5", "--iters", "5000", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read(&out, "cluster.txt"), "1\n2\n3\n");
}

#[test]
fn flags_override_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("chain.manifest");
    std::fs::write(&m, CHAIN_MANIFEST).unwrap();
    let out = dir.path().join("other");
    let o = nlasso(&["solve", "--manifest", m.to_str().unwrap(), "--iters", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(value(&report(&out, "certificates.txt"), "iterations"), "3");
    assert!(!dir.path().join("run").exists());
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let missing = dir.path().join("nope.txt");
    let o = nlasso(&[
        "solve", "--graph", missing.to_str().unwrap(), "--seeds", missing.to_str().unwrap(), "--alpha", "1",
        "--lambda", "1", "--iters", "1", "--out", d,
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);

    let m = dir.path().join("bad.manifest");
    std::fs::write(&m, CHAIN_MANIFEST.replace("alpha = 1/200", "alpha = 0")).unwrap();
    assert_eq!(code(&nlasso(&["solve", "--manifest", m.to_str().unwrap()])), 2);

    std::fs::write(&m, "generator = chain\nseed_ids = 1\n").unwrap();
    assert_eq!(code(&nlasso(&["solve", "--manifest", m.to_str().unwrap()])), 2);

    assert_eq!(code(&nlasso(&["chain", "--out", d, "--workers", "0"])), 2);
    assert_eq!(code(&nlasso(&["chain", "--bogus"])), 2);
    assert_eq!(code(&nlasso(&["--help"])), 0);
}

#[test]
fn isolated_node_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), "1 2 1\n").unwrap();
    let m = dir.path().join("m");
    std::fs::write(&m, "graph = g.txt\nn = 3\nseed_ids = 1\nalpha = 1\nlambda = 1\nmax_iters = 10\nout = o\n").unwrap();
    let o = nlasso(&["solve", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn chain_command_writes_twenty_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlasso(&["chain", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    for f in ["nLassoChain.csv", "FiedlerChain.csv"] {
        let text = read(dir.path(), f);
        assert_eq!(text.lines().count(), 21, "{f}");
        let x = parse_signal_csv(&text).unwrap();
        assert_eq!(x.len(), 20);
    }
    let fiedler = parse_signal_csv(&read(dir.path(), "FiedlerChain.csv")).unwrap();
    assert!(fiedler.get(1) > 0.0);
    let kv = report(dir.path(), "certificates.txt");
    assert_eq!(value(&kv, "u_bound.U"), "80");
    assert_eq!(value(&kv, "u_bound.holds"), "true");
    assert_eq!(value(&kv, "cluster"), "1,2,3,4");
}

#[test]
fn sbm_accuracy_is_a_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlasso(&["sbm", "--rng-seed", "4", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let acc: f64 = value(&report(dir.path(), "report.txt"), "accuracy").parse().unwrap();
    assert!((0.0..=1.0).contains(&acc));
    assert_eq!(read(dir.path(), "seeds.txt").lines().count(), 20);
}

#[test]
fn sbm_without_cross_edges_recovers_block() {
    for seed in ["1", "2"] {
        let dir = tempfile::tempdir().unwrap();
        let o = nlasso(&["sbm", "--rng-seed", seed, "--p-out", "0", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(value(&report(dir.path(), "report.txt"), "accuracy"), "1");
    }
}

fn write_image(dir: &Path, img: &GreyImage) -> String {
    let p = dir.join("img.pgm");
    std::fs::write(&p, write_pgm(img)).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn uniform_image_with_large_lambda_fills_everything() {
    let dir = tempfile::tempdir().unwrap();
    // constant optimum |S| / (|S| + α(n − |S|)) = 200/263 lies above 1/2
    let img = GreyImage::new(8, 8, vec![90; 64]).unwrap();
    let image = write_image(dir.path(), &img);
    let seeds = dir.path().join("s.txt");
    std::fs::write(&seeds, "28\n").unwrap();
    let out = dir.path().join("o");
    let o = nlasso(&[
        "segment", "--image", &image, "--seeds", seeds.to_str().unwrap(), "--alpha", "1/200", "--lambda", "10",
        "--iters", "2000", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mask = read_pgm(&std::fs::read(out.join("mask.pgm")).unwrap()).unwrap();
    assert!(mask.pixels.iter().all(|&v| v == 255));
}

#[test]
fn malformed_image_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("bad.pgm");
    std::fs::write(&image, "P2\n8 8\n255\n1 2 3\n").unwrap();
    let seeds = dir.path().join("s.txt");
    std::fs::write(&seeds, "1\n").unwrap();
    let o = nlasso(&[
        "segment", "--image", image.to_str().unwrap(), "--seeds", seeds.to_str().unwrap(), "--alpha", "1",
        "--lambda", "1", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn csnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csnet"))
        .args(args)
        .output()
        .expect("run csnet")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/demo")
        .join(name)
}

fn taxonomy() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/acm_ccs2012_taxonomy.csv")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn staged_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let build = d.join("build");
    assert_ok(&csnet(&[
        "build",
        "--records",
        s(&fixture("fields.csv")),
        "--taxonomy",
        s(&taxonomy()),
        "--out",
        s(&build),
    ]));
    for f in [
        "edges.csv",
        "frequency.csv",
        "frequency_by_field.csv",
        "rejected_rows.csv",
        "build_summary.txt",
    ] {
        assert!(build.join(f).exists(), "{f}");
    }
    let summary = fs::read_to_string(build.join("build_summary.txt")).unwrap();
    assert!(summary.contains("nodes = 13\n"), "{summary}");
    assert!(summary.contains("rejected_rows = 1\n"), "{summary}");
    let edges = build.join("edges.csv");

    let filt = d.join("filter");
    assert_ok(&csnet(&[
        "filter",
        "--graph",
        s(&edges),
        "--sweep",
        "--alpha",
        "0.3",
        "--out",
        s(&filt),
    ]));
    let sweep = fs::read_to_string(filt.join("alpha_sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 20);
    assert!(fs::read_to_string(filt.join("filter_report.txt"))
        .unwrap()
        .contains("alpha = 0.3\n"));

    let cent = d.join("centrality");
    let out = csnet(&[
        "centrality",
        "--graph",
        s(&edges),
        "--mode",
        "inverse-weight",
        "--out",
        s(&cent),
    ]);
    assert_ok(&out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("top 5 by inverse-weight betweenness"));
    let table = fs::read_to_string(cent.join("centrality_inverse-weight.csv")).unwrap();
    assert_eq!(table.lines().count(), 14);

    let comm = d.join("communities");
    assert_ok(&csnet(&[
        "communities",
        "--graph",
        s(&edges),
        "--algorithm",
        "leiden",
        "--restarts",
        "5",
        "--seed",
        "3",
        "--out",
        s(&comm),
    ]));
    let partition = comm.join("partition_leiden.csv");
    assert!(fs::read_to_string(comm.join("communities_leiden.txt"))
        .unwrap()
        .contains("restarts = 5\n"));

    let rep = d.join("report");
    assert_ok(&csnet(&[
        "report",
        "--graph",
        s(&edges),
        "--partition",
        s(&partition),
        "--taxonomy",
        s(&taxonomy()),
        "--records",
        s(&fixture("fields.csv")),
        "--out",
        s(&rep),
    ]));
    for f in ["community_stats.csv", "node_attributes.csv", "network.dot"] {
        assert!(rep.join(f).exists(), "{f}");
    }

    let dot = d.join("export/graph.dot");
    assert_ok(&csnet(&[
        "export",
        "--graph",
        s(&edges),
        "--partition",
        s(&partition),
        "--output",
        s(&dot),
    ]));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph cooccurrence {"));
    assert!(text.contains("community="));

    let copy = d.join("export/edges.csv");
    assert_ok(&csnet(&[
        "export",
        "--graph",
        s(&edges),
        "--format",
        "edges",
        "--output",
        s(&copy),
    ]));
    assert_eq!(fs::read(&copy).unwrap(), fs::read(&edges).unwrap());
}

#[test]
fn empty_records_fail_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("empty.csv");
    fs::write(&records, "conference,labels,title\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = csnet(&["build", "--records", s(&records), "--out", s(&out_dir)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out_dir.exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        csnet(&["build", "--records", s(&missing), "--out", s(&out_dir)])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(csnet(&["build", "--bogus"]).status.code(), Some(2));
    assert_eq!(csnet(&[]).status.code(), Some(2));
    assert_eq!(csnet(&["--help"]).status.code(), Some(0));

    let graph = dir.path().join("g.csv");
    fs::write(&graph, "source,target,weight\nA,B,1\nB,C,2\n").unwrap();
    for alpha in ["0", "1.5"] {
        let out = csnet(&[
            "filter",
            "--graph",
            s(&graph),
            "--alpha",
            alpha,
            "--out",
            s(&out_dir),
        ]);
        assert_eq!(out.status.code(), Some(2), "alpha {alpha}");
    }
    let out = csnet(&[
        "filter",
        "--graph",
        s(&graph),
        "--sweep",
        "--grid",
        "0.2,2",
        "--out",
        s(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = csnet(&[
        "communities",
        "--graph",
        s(&graph),
        "--resolution",
        "-1",
        "--out",
        s(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.exists());

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "source,target,weight\nA,A,1\n").unwrap();
    assert_eq!(
        csnet(&["centrality", "--graph", s(&bad), "--out", s(&out_dir)])
            .status
            .code(),
        Some(4)
    );

    let config = dir.path().join("c.toml");
    fs::write(&config, "[inputs]\ntaxonomy = \"t.csv\"\n").unwrap();
    assert_eq!(
        csnet(&["reproduce", "--config", s(&config)]).status.code(),
        Some(2)
    );
}

#[test]
fn reproduce_demo_layout_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let config = fixture("reproduce.toml");
    assert_ok(&csnet(&[
        "reproduce",
        "--config",
        s(&config),
        "--restarts",
        "4",
        "--out",
        s(&a),
    ]));
    assert_ok(&csnet(&[
        "reproduce",
        "--config",
        s(&config),
        "--restarts",
        "4",
        "--seed",
        "99",
        "--out",
        s(&b),
    ]));
    for f in [
        "summary.txt",
        "fields/alpha_sweep.csv",
        "fields/backbone_edges.csv",
        "fields/filter_report.txt",
        "fields/centrality_unweighted.csv",
        "fields/centrality_inverse-weight.csv",
        "fields/network_louvain.dot",
        "subfields/community_stats_leiden.csv",
        "subfields/node_attributes_louvain.csv",
        "subfields/partition_leiden.csv",
    ] {
        assert!(a.join(f).exists(), "{f}");
    }
    assert!(!a.join("subfields/filter_report.txt").exists());
    let summary = fs::read_to_string(a.join("summary.txt")).unwrap();
    assert!(summary.contains("subfields.nodes = 84\n"), "{summary}");
    let seeds = fs::read_to_string(b.join("subfields/communities_louvain.txt")).unwrap();
    assert!(seeds.contains("first_seed = 99\n"), "{seeds}");
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn grammar(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/grammars").join(name);
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn redup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redup")).args(args).env_remove("REDUP_ENGINE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(String::from).collect()
}

#[test]
fn compile_matches_golden_dumps() {
    for (g, entry, file) in [
        ("bambara.g", None, "bambara_main.dump"),
        ("semai.g", None, "semai_main.dump"),
        ("koasati.g", Some("wordform_tahaspin"), "koasati_wordform_tahaspin.dump"),
    ] {
        let path = grammar(g);
        let mut args = vec!["compile", path.as_str()];
        args.extend(entry);
        let o = redup(&args);
        assert!(o.status.success(), "{g}");
        assert_eq!(stdout(&o), golden(file), "{g}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("states: "));
    }
}

#[test]
fn compile_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.dump");
    let o = redup(&["compile", &grammar("koasati.g"), "wordform_tahaspin", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap(), golden("koasati_wordform_tahaspin.dump"));
    assert!(o.stdout.is_empty());
}

#[test]
fn generate_goldens() {
    assert_eq!(stdout(&redup(&["generate", &grammar("koasati.g")])), golden("koasati_main.txt"));
    assert_eq!(stdout(&redup(&["generate", &grammar("bambara.g"), "--surface"])), golden("bambara_main.txt"));
    assert_eq!(lines(&redup(&["generate", &grammar("koasati.g"), "tahaspin", "--surface"])), ["tahastoopin"]);
    assert_eq!(lines(&redup(&["generate", &grammar("koasati.g"), "aklatlin"])), ["akholatlin", "akhoolatlin"]);
    assert_eq!(lines(&redup(&["generate", &grammar("semai.g"), "cqEt"])), ["ctcqEt"]);
}

#[test]
fn entry_expressions_and_as_is() {
    let k = grammar("koasati.g");
    assert_eq!(lines(&redup(&["generate", &k, "wordform(lapatkin)"])), ["lapatlookin"]);
    // closed bare stem: the citation form
    assert_eq!(lines(&redup(&["generate", &k, "closed_interpretation(aklatlin)"])), ["aklatlin"]);
    // the open stem keeps its consumer enrichment arcs
    let open = stdout(&redup(&["compile", &k, "tahaspin", "--as-is"]));
    assert!(open.lines().any(|l| l.split(' ').nth(2) == Some("C")));
    let resolved = stdout(&redup(&["compile", &k, "tahaspin"]));
    assert_eq!(resolved, golden("koasati_wordform_tahaspin.dump"));
}

#[test]
fn lazy_matches_eager() {
    for (g, entry) in [("bambara.g", "wulu"), ("koasati.g", "tahaspin"), ("koasati.g", "main"), ("semai.g", "main")] {
        let path = grammar(g);
        for format in ["--surface", "--raw"] {
            let lazy = redup(&["generate", &path, entry, "--lazy", format, "--max-len", "20"]);
            let eager = redup(&["generate", &path, entry, "--eager", format, "--max-len", "20"]);
            assert!(lazy.status.success());
            assert_eq!(stdout(&lazy), stdout(&eager), "{g} {entry} {format}");
        }
    }
}

#[test]
fn raw_paths_show_technical_symbols() {
    let o = redup(&["generate", &grammar("bambara.g"), "wulu", "--raw", "--max-len", "13"]);
    assert_eq!(
        lines(&o),
        ["w<:1> u<:0> l<:0> u<:1> o<:0> repeat repeat repeat repeat w<:1> u<:0> l<:0> u<:1>"]
    );
}

#[test]
fn parse_table() {
    for (g, s, verdict, code) in [
        ("bambara.g", "wuluowulu", "ACCEPT", 0),
        ("bambara.g", "wuluwulu", "REJECT", 1),
        ("koasati.g", "tahastoopin", "ACCEPT", 0),
        ("koasati.g", "tahastopin", "REJECT", 1),
        ("koasati.g", "akholatlin", "ACCEPT", 0),
    ] {
        let o = redup(&["parse", &grammar(g), s]);
        assert_eq!(lines(&o), [verdict], "{s}");
        assert_eq!(o.status.code(), Some(code), "{s}");
    }
    let o = redup(&["parse", &grammar("koasati.g"), "aklatlin", "akhoolatlin"]);
    assert_eq!((lines(&o), o.status.code()), (vec!["ACCEPT".to_string()], Some(0)));
}

#[test]
fn unknown_token_is_a_usage_error() {
    let o = redup(&["parse", &grammar("bambara.g"), "wuluxwulu"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown segment token"));
}

#[test]
fn malformed_grammar_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g");
    std::fs::write(&path, "inventory { vowel: a; }\nx := a.\ny := [a,\n  ].\n").unwrap();
    let o = redup(&["compile", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let o = redup(&["compile", "/nonexistent.g"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_result_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.g");
    std::fs::write(&path, "inventory { vowel: a; }\nmain := closed_interpretation(consumer(a)).\n").unwrap();
    let o = redup(&["generate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn cap_gives_partial_output_and_warning() {
    let o = redup(&["generate", &grammar("koasati.g"), "--max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o).len(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn dot_export() {
    let o = redup(&["dump-dot", &grammar("bambara.g"), "wulu"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn engine_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("redup.toml");
    std::fs::write(&cfg, "engine = \"eager\"\nformat = \"raw\"\nmax_len = 13\n").unwrap();
    let g = grammar("bambara.g");
    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_redup"));
        c.args(["generate", &g, "wulu"]).args(extra).env_remove("REDUP_ENGINE");
        if let Some(v) = env {
            c.env("REDUP_ENGINE", v);
        }
        c.output().unwrap()
    };
    // an invalid environment value surfaces only when nothing overrides it
    assert_eq!(run(&[], Some("bogus")).status.code(), Some(2));
    assert_eq!(run(&["--config", cfg.to_str().unwrap()], Some("bogus")).status.code(), Some(2));
    assert_eq!(run(&["--lazy"], Some("lazy")).status.code(), Some(0));
    let o = run(&["--config", cfg.to_str().unwrap()], Some("lazy"));
    assert_eq!(lines(&o).len(), 1);
    assert!(lines(&o)[0].contains("repeat"));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn twsda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twsda")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machines() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../machines")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twsda-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn run_reports_verdict_and_steps() {
    let o = twsda(&["run", "builtin:expo", "aaaaaaaa"]);
    assert_eq!(stdout(&o), "ACCEPT steps=9\n");
    assert_eq!(o.status.code(), Some(0));
    let o = twsda(&["run", "builtin:expo", "aaaaaaa"]);
    assert_eq!(stdout(&o), "REJECT steps=7\n");
    assert_eq!(o.status.code(), Some(1));
    let o = twsda(&["run", "builtin:cub", ""]);
    assert_eq!(stdout(&o), "ACCEPT steps=1\n");
}

#[test]
fn errors_exit_with_two() {
    let o = twsda(&["run", "builtin:nope", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown builtin"));
    assert_eq!(twsda(&["run", "builtin:expo", "ab"]).status.code(), Some(2));
    assert_eq!(twsda(&["check", "builtin:expo", "--oracle", "nope", "--max-len", "3"]).status.code(), Some(2));
    assert_eq!(twsda(&["run", "/nonexistent.tm", "a"]).status.code(), Some(2));
}

#[test]
fn trace_lines() {
    let o = twsda(&["trace", "builtin:expo", "--word", "aaaa"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "step=0 state=init_0 in=a act=stay ptr=λ nodes=1");
    assert_eq!(lines[4], "step=4 state=init_4 in=END act=stay ptr=λ nodes=1");
    assert_eq!(lines[5], "ACCEPT steps=5");
}

#[test]
fn trace_snapshots_show_growth() {
    let text = stdout(&twsda(&["trace", "builtin:fib", "--word", "aaaaaaaaaaaaaaaa", "--snapshots"]));
    assert!(text.lines().all(|l| l.starts_with("step=") || l.starts_with("ACCEPT")));
    assert!(text.contains("act=push dot l ptr=l nodes=2 tree=(ROOT (dot . .) .)"));
    assert!(text.ends_with("ACCEPT steps=17\n"));
}

#[test]
fn lambda_steps_are_printed_as_lambda() {
    let path = scratch(
        "lambda.tm",
        "alphabet: a\ntree-symbols: dot\nstart: q\naccept: done\n\
         trans q a (-,-,-) ROOT -> r push dot l\n\
         trans r lambda (l,-,-) dot -> s up\n\
         trans s END (-,+,-) ROOT -> done stay\n",
    );
    let p = path.to_str().unwrap();
    let o = twsda(&["run", p, "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-steps"));
    let text = stdout(&twsda(&["trace", p, "--word", "a", "--max-steps", "10"]));
    assert!(text.contains("step=1 state=r in=λ act=up ptr=λ nodes=2"));
    assert!(text.ends_with("ACCEPT steps=3\n"));
    let o = twsda(&["run", p, "a", "--max-steps", "2"]);
    assert_eq!(stdout(&o), "BUDGET steps=2\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&twsda(&["enum", p, "--max-len", "3", "--max-steps", "10"])), "a\n");
}

#[test]
fn enum_lists_in_order() {
    let text = stdout(&twsda(&["enum", "builtin:fib", "--max-len", "30"]));
    let lengths: Vec<usize> = text.lines().map(str::len).collect();
    assert_eq!(lengths, vec![2, 4, 6, 10, 16, 26]);
    let text = stdout(&twsda(&["enum", "builtin:mi-hat", "--max-len", "4"]));
    assert_eq!(text, "cent $ b2\na cent $ b2\nb cent $ b2\n$ cent $ b2\n");
}

#[test]
fn check_against_oracles() {
    let o = twsda(&["check", "builtin:fib", "--oracle", "fib", "--max-len", "200"]);
    assert_eq!(stdout(&o), "OK\n");
    assert_eq!(o.status.code(), Some(0));
    let o = twsda(&["check", "builtin:expo", "--oracle", "fib", "--max-len", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("a machine=Accepted oracle=non-member\naaaaaa machine=Rejected oracle=member\n"));
    assert!(text.ends_with("mismatches=4 of 11\n"));
}

#[test]
fn classes_and_bound() {
    let text = stdout(&twsda(&[
        "classes",
        "--oracle",
        "lh",
        "--sample",
        "subsets:1",
        "--ell",
        "1",
        "--ext",
        "alpha0,alpha1,alpha2,alpha3",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "classes=16");
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[1], "b0");

    let sample = scratch("sample.txt", "# unary\nλ\na\naaa\naaaaaaa\n");
    let text = stdout(&twsda(&["classes", "--oracle", "expo", "--sample", sample.to_str().unwrap(), "--ell", "1"]));
    assert_eq!(text, "classes=2\nλ | aaa | aaaaaaa\na\n");

    let o = twsda(&["bound", "--states", "4", "--tree-symbols", "1", "--ell", "1"]);
    assert_eq!(stdout(&o), "2^28\n268435456\n");
    let o = twsda(&["bound", "--states", "1", "--tree-symbols", "1", "--ell", "2"]);
    assert_eq!(stdout(&o), "2^48\n281474976710656\n");
}

#[test]
fn broken_corpus_is_diagnosed() {
    let mut checked = 0;
    for entry in fs::read_dir(machines().join("broken")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let header = text.lines().next().unwrap();
        let p = path.to_str().unwrap();
        if let Some(code) = header.strip_prefix("# expect: ") {
            let o = twsda(&["validate", p]);
            assert_eq!(o.status.code(), Some(1), "{p}");
            assert!(stdout(&o).contains(&format!(": {code}: ")), "{p}: {}", stdout(&o));
        } else {
            let (word, _) = header.strip_prefix("# expect-run: ").unwrap().rsplit_once(' ').unwrap();
            assert_eq!(stdout(&twsda(&["validate", p])), "OK\n");
            let o = twsda(&["run", p, word]);
            assert!(stdout(&o).starts_with("REJECT steps=0 violation: up at (-,-,-)"), "{}", stdout(&o));
        }
        checked += 1;
    }
    assert!(checked >= 6);
}

#[test]
fn shipped_files_match_builtins() {
    for name in ["expo", "fib", "cub", "trie-p", "trie-p-hat", "mi-hat"] {
        let file = machines().join(format!("{name}.tm"));
        let file = file.to_str().unwrap();
        assert_eq!(stdout(&twsda(&["validate", file])), "OK\n", "{name}");
        let max_len = if matches!(name, "expo" | "fib" | "cub") { "70" } else { "5" };
        let from_file = twsda(&["enum", file, "--max-len", max_len]);
        let builtin = twsda(&["enum", &format!("builtin:{name}"), "--max-len", max_len]);
        assert_eq!(stdout(&from_file), stdout(&builtin), "{name}");
    }
}

#[test]
fn export_round_trips_through_files() {
    let text = stdout(&twsda(&["export", "builtin:trie-p-hat"]));
    let path = scratch("trie.tm", &text);
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&twsda(&["export", p])), text);
    assert_eq!(stdout(&twsda(&["run", p, "a $ b $ cent b1 b"])), "ACCEPT steps=8\n");
    assert_eq!(stdout(&twsda(&["run", p, "a $ b $ cent b1 a b"])), "REJECT steps=7\n");
}

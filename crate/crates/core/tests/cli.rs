use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softupdate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn eval(file: &str, query: &str, extra: &[&str]) -> Output {
    let path = corpus(file);
    let mut args = vec!["eval", path.to_str().unwrap(), query];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn eval_goldens() {
    let cases = [
        ("disease.netspec", "prior", "1/100|d> + 99/100|~d>"),
        // 148/4702 and 4554/4702 in lowest terms.
        ("disease.netspec", "pearl_posterior", "74/2351|d> + 2277/2351|~d>"),
        ("disease.netspec", "jeffrey_posterior", "3018/24479|d> + 21461/24479|~d>"),
        ("halpern.netspec", "jeffrey_posterior", "1/10|r> + 7/20|b> + 7/20|g> + 1/5|y>"),
        ("dietrich.netspec", "final", "4/11|c> + 7/11|~c>"),
        ("disease_certainty.netspec", "certainty_validity", "2351/10000"),
    ];
    for (file, query, want) in cases {
        let o = eval(file, query, &[]);
        assert!(o.status.success(), "{file} {query}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim_end(), want, "{file} {query}");
    }
}

#[test]
fn eval_flags() {
    let o = eval("disease.netspec", "pearl_posterior", &["--decimal", "4"]);
    assert_eq!(stdout(&o), "74/2351|d> + 2277/2351|~d>\n0.0315|d> + 0.9685|~d>\n");

    let o = eval("disease.netspec", "pearl_posterior", &["--explain"]);
    let text = stdout(&o);
    assert!(text.starts_with("rule: pearl\nprior: 1/100|d> + 99/100|~d>\n"), "{text}");
    assert!(text.contains("transformed predicate (c << q): {d: 37/50, ~d: 23/100}"));
    assert!(text.contains("validity (prior |= c << q): 2351/10000"));
    assert!(text.trim_end().ends_with("posterior: 74/2351|d> + 2277/2351|~d>"));

    let o = eval("disease.netspec", "jeffrey_posterior", &["--explain"]);
    assert!(stdout(&o).contains("inverted row t: 2/13|d> + 11/13|~d>"));

    let o = eval("halpern.netspec", "pushed_back", &["--show-zeros"]);
    assert_eq!(stdout(&o).trim_end(), "7/10|gb> + 3/10|ry>");
    let o = eval("dietrich.netspec", "omega", &[]);
    assert!(o.status.success());
}

#[test]
fn error_exit_codes() {
    let o = eval("malformed_weights.netspec", "prior", &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("malformed_weights.netspec:2:7: error:"), "{err}");
    assert!(err.contains("weights sum to 5/6, expected 1"), "{err}");

    assert_eq!(eval("disease.netspec", "nope", &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "/nonexistent/file.netspec", "q"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("softupdate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("zero.netspec");
    std::fs::write(
        &file,
        "space a = {x, y}\nstate s : a = {x: 1}\npredicate z : a = {y: 1}\nquery q = condition(s, z)\n",
    )
    .unwrap();
    let o = run(&["eval", file.to_str().unwrap(), "q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("query `q`"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_csv() {
    let path = corpus("disease.netspec");
    let p = path.to_str().unwrap();
    let o = run(&["sweep", p, "--channel", "sens", "--prior", "prior", "--target", "d"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[0], "r,jeffrey,pearl");
    assert_eq!(lines[1], "0,2/1883,2/1883");
    assert_eq!(lines[81], "4/5,3018/24479,74/2351");
    assert_eq!(lines[101], "1,2/13,2/13");

    let again = run(&["sweep", p, "--channel", "sens", "--prior", "prior", "--target", "d"]);
    assert_eq!(again.stdout, o.stdout, "sweep output is deterministic");

    let o = run(&["sweep", p, "--channel", "sens", "--prior", "prior", "--target", "d", "--steps", "4", "--decimal", "3"]);
    assert_eq!(stdout(&o).lines().nth(4).unwrap(), "0.750,0.116,0.025");

    let o = run(&["sweep", p, "--channel", "id_channel", "--prior", "prior", "--target", "d", "--steps", "2"]);
    assert!(o.status.success());
    let h = corpus("halpern.netspec");
    let o = run(&["sweep", h.to_str().unwrap(), "--channel", "dark", "--prior", "prior", "--target", "r"]);
    assert!(o.status.success());
}

#[test]
fn sweep_rejects_non_binary_evidence() {
    let dir = std::env::temp_dir().join(format!("softupdate-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("wide.netspec");
    std::fs::write(
        &file,
        "space a = {x, y}\nspace b = {u, v, w}\nstate s : a = {x: 1/2, y: 1/2}\n\
         channel c : a -> b = {x: {u: 1}, y: {v: 1/2, w: 1/2}}\n",
    )
    .unwrap();
    let o = run(&["sweep", file.to_str().unwrap(), "--channel", "c", "--prior", "s", "--target", "x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("needs exactly 2"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn examples_and_check() {
    let o = run(&["examples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("actual   4/11|c> + 7/11|~c>"));
    assert!(text.contains("actual   1/10|c,e> + 1/40|c,~e> + 7/40|~c,e> + 7/10|~c,~e>"));
    assert!(text.contains("actual   4/5|c> + 1/5|~c>"));

    let o = run(&["check", "--seed", "42", "--instances", "60"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
    let again = run(&["check", "--seed", "42", "--instances", "60"]);
    assert_eq!(again.stdout, o.stdout);
}

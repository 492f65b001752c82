use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wreath-eq"))
}

fn equation(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../equations").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spherical_file_is_solved_and_verified() {
    let path = equation("spherical.eq");
    let o = run(&["solve", path.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("SAT"));
    assert!(lines.next().unwrap().starts_with("X1 = ("));
    assert!(lines.next().unwrap().starts_with("X2 = ("));
}

#[test]
fn genus_decides_the_rank_three_element() {
    let one = equation("genus1_z3.eq");
    let o = run(&["solve", one.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "UNSAT\n");
    let two = equation("genus2_z3.eq");
    let o = run(&["solve", two.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["solve", two.to_str().unwrap(), "--genus-cap", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn witness_lines_round_trip() {
    let path = equation("genus1_z2.eq");
    let o = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // feed the witness back in as constants and evaluate the word
    let src = std::fs::read_to_string(&path).unwrap();
    let mut text = src.replace("word:", "# word:");
    let mut word = src.lines().find(|l| l.starts_with("word:")).unwrap().to_string();
    for line in stdout(&o).lines().skip(1) {
        let (var, value) = line.split_once(" = ").unwrap();
        let name = format!("w{}", &var[1..]);
        text.push_str(&format!("const {name} = {value}\n"));
        word = word.replace(&format!("{var},"), &format!("{name},"));
        word = word.replace(&format!("{var}]"), &format!("{name}]"));
        word = word.replace(&format!("^{var}"), &format!("^{name}"));
    }
    // a closed word with no variables has the empty witness; SAT means it is 1
    text.push_str(&format!("{word}\n"));
    let f = temp_file(&text);
    let o = run(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{text}\n{o:?}");
}

#[test]
fn other_groups() {
    let o = run(&["solve", equation("baumslag.eq").to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["solve", equation("s3.eq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_two() {
    let f = temp_file("group wreath free=2\nconst c = (1 + ; (0,0))\nword: c^X1\n");
    let o = run(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    let f = temp_file("group wreath free=1\nconst c = (1 ; (0))\nword: X1 X1 c\n");
    let o = run(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["solve", "/nonexistent/file.eq"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_reported() {
    let f = temp_file(
        "group wreath free=2\nconst a = (1 - Z(3,0) ; (0,0))\nconst b = (1 - Z(0,3) ; (0,0))\n\
         const c = (1 - Z(2,2) ; (0,0))\nconst d = (1 - Z(1,3) ; (0,0))\nword: a^X1 b^X2 c^X3 d^X4\n",
    );
    let o = run(&["solve", f.path().to_str().unwrap(), "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));
}

#[test]
fn width_command() {
    for (args, want) in [
        (vec!["free=2"], "1\n"),
        (vec!["baumslag"], "1\n"),
        (vec!["free=0", "torsion="], "0\n"),
        (vec!["free=3", "torsion=2"], "2\n"),
    ] {
        let mut all = vec!["width"];
        all.extend(args);
        let o = run(&all);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), want);
    }
    assert_eq!(run(&["width", "free=x"]).status.code(), Some(2));
}

#[test]
fn oracle_commands() {
    let o = run(&["oracle", "translate-sum", equation("spherical.eq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let o = run(&["oracle", "varpi", equation("genus1_z2.eq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let o = run(&["oracle", "varpi", equation("genus1_z3.eq").to_str().unwrap(), "--gen-radius", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "UNSAT-within-box\n");
    let o = run(&["oracle", "baumslag", equation("baumslag.eq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["oracle", "finite", equation("s3.eq").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn isg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isg"))
        .args(args)
        .env_remove("ISG_COVER_CAP")
        .output()
        .expect("run isg")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&isg(&["validate", &fixture("szendrei.isg")])), 0);

    let o = isg(&["validate", &fixture("broken_assoc.isg")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("NotAssociative a="), "{}", stderr(&o));

    assert_eq!(code(&isg(&["validate", &fixture("z2_group.isg")])), 3);
    assert_eq!(code(&isg(&["validate", &fixture("left_zero.isg")])), 4);

    let o = isg(&["validate", &fixture("bad_token.isg")]);
    assert_eq!(code(&o), 6);
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));

    assert_eq!(code(&isg(&["validate", &fixture("missing.isg")])), 6);
    assert_eq!(code(&isg(&["frobnicate"])), 1);
    assert_eq!(code(&isg(&["analyze"])), 1);
    assert_eq!(code(&isg(&["--help"])), 0);
}

#[test]
fn szendrei_report() {
    let o = isg(&["analyze", &fixture("szendrei.isg"), "--format", "lines"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("continuity continuous=false witness_s=2 witness_t=3\n"), "{out}");
    assert!(out.contains("e_star_unitary value=false witness_s=3 witness_e=1\n"), "{out}");
    assert!(out.contains("kernel_pair s=2 t=3 cond_ii=true cond_iii=false cond_iv=false equivalent=true s_label=1 t_label=s\n"));
    assert!(out.contains("ultrafilters count=1\n"));

    let builtin = stdout(&isg(&["analyze", "--builtin", "szendrei", "--format", "lines"]));
    assert_eq!(builtin.lines().skip(1).collect::<Vec<_>>(), out.lines().skip(1).collect::<Vec<_>>());
}

#[test]
fn exel_z2_report() {
    let o = isg(&["analyze", "--builtin", "exel-z2", "--format", "lines"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("kernel_pair s=3 t=4 cond_ii=true cond_iii=false"), "{out}");
    assert!(out.contains("semigroup name=exel-z2 size=5 zero=0 valid=true boolean=true\n"));
    assert!(out.contains("continuity continuous=false"));
    assert!(out.contains("ultrafilter index=0 generator=[e1,1] members={[e1,1],[1,1],[1,n]}\n"), "{out}");
}

#[test]
fn boolean4_tight_characters() {
    let out = stdout(&isg(&[
        "analyze",
        "--builtin",
        "boolean4",
        "--format",
        "lines",
        "--sections",
        "tight-characters",
    ]));
    assert!(out.starts_with("tight_characters mode=exhaustive count=2 ultrafilter_characters=2 equal=true\n"), "{out}");
    let simplified = stdout(&isg(&[
        "analyze",
        "--builtin",
        "boolean4",
        "--format",
        "lines",
        "--sections",
        "tight-characters",
        "--tight-mode",
        "simplified",
    ]));
    assert!(simplified.starts_with("tight_characters mode=simplified count=2"), "{simplified}");
}

#[test]
fn cover_cap_flag_and_env_agree() {
    let args = ["analyze", "--builtin", "boolean8", "--format", "lines", "--sections", "tight-characters"];
    let flag = stdout(&isg(&[&args[..], &["--cover-cap", "1"]].concat()));
    let env = Command::new(env!("CARGO_BIN_EXE_isg"))
        .args(args)
        .env("ISG_COVER_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), flag);
    assert!(flag.contains("verdict=tight-up-to-cap"), "{flag}");
    let uncapped = stdout(&isg(&args));
    assert!(!uncapped.contains("tight-up-to-cap"));
}

#[test]
fn reports_are_deterministic() {
    for name in ["ix3", "exel-z2", "brandt2"] {
        let a = isg(&["analyze", "--builtin", name]);
        let b = isg(&["analyze", "--builtin", name]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn construct_recipes() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();

    let o = isg(&["construct", "symmetric", "2", "--out", &path("i2.isg")]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(path("i2.isg")).unwrap();
    assert!(text.starts_with("isg size=7 zero=0"));
    assert_eq!(code(&isg(&["validate", &path("i2.isg")])), 0);

    let o = isg(&["construct", "exel", "--group", "z2", "--n1", "full", "--n2", "full"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("isg size=5 zero=0\nlabels [0,1] [e1,1] [e2,1] [1,1] [1,n]\n"), "{}", stdout(&o));

    let o = isg(&["construct", "adjoin-absorbing", &fixture("szendrei.isg"), "--out", &path("sz.isg")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&isg(&["analyze", &path("sz.isg"), "--format", "lines", "--sections", "validation,continuity"]));
    assert!(out.contains("size=5"), "{out}");
    assert!(out.contains("continuity continuous=false"), "{out}");

    let o = isg(&["construct", "adjoin-zero", &fixture("z2_group.isg")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("isg size=3 zero=0\n"));

    let o = isg(&["construct", "quotient", &fixture("chain3.isg"), &fixture("rees.cong")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("isg size=2 zero=0\n"), "{}", stdout(&o));

    let o = isg(&["construct", "symmetric", "5"]);
    assert_eq!(code(&o), 7);
    assert!(stderr(&o).contains("SizeCap"));

    let o = isg(&["construct", "exel", "--group", "s3", "--n1", "0,1", "--n2", "full"]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("SpecViolation"));

    // 1*0 = 0 but 1*2 = 1
    std::fs::write(path("bad.cong"), "0 2\n").unwrap();
    let o = isg(&["construct", "quotient", &fixture("chain3.isg"), &path("bad.cong")]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("NotACongruence"));
}

#[test]
fn construct_then_read_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["szendrei", "exel-z2", "ix3", "brandt2", "boolean4"] {
        let file = dir.path().join(format!("{name}.isg"));
        let file = file.to_string_lossy();
        assert_eq!(code(&isg(&["construct", "builtin", name, "--out", &file])), 0);
        let first = std::fs::read_to_string(&*file).unwrap();
        // the trivial congruence gives back the same table and labels
        let o = isg(&["construct", "quotient", &file, "/dev/null"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).lines().skip(1).collect::<Vec<_>>(), first.lines().skip(1).collect::<Vec<_>>());
        let from_file = stdout(&isg(&["analyze", &file, "--format", "lines"]));
        let from_builtin = stdout(&isg(&["analyze", "--builtin", name, "--format", "lines"]));
        assert_eq!(from_file, from_builtin, "{name}");
        assert!(first.ends_with('\n'));
    }
}

#[test]
fn size_cap_on_large_idempotent_semilattice() {
    // the powerset of 5 points: 32 idempotents
    let n = 32;
    let mut text = format!("isg size={n} zero=0\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| (a & b).to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p5.isg");
    std::fs::write(&file, text).unwrap();
    let file = file.to_string_lossy();
    let o = isg(&["analyze", &file, "--sections", "tight-characters"]);
    assert_eq!(code(&o), 7, "{}", stderr(&o));
    assert!(stderr(&o).contains("SizeCap"));
    let o = isg(&["analyze", &file, "--sections", "tight-characters", "--tight-mode", "simplified", "--format", "lines"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("tight_characters mode=simplified count=5 ultrafilter_characters=5 equal=true"));
}

#[test]
fn corpus_mode_orders_by_filename() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["chain3.isg", "szendrei.isg", "broken_assoc.isg"] {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    let d = dir.path().to_string_lossy();
    let o = isg(&["analyze", "--corpus", &d, "--format", "lines", "--sections", "validation"]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    let files: Vec<&str> = out.lines().filter(|l| l.starts_with("file ")).collect();
    assert_eq!(
        files,
        vec![
            "file name=broken_assoc.isg status=error exit=2",
            "file name=chain3.isg status=ok",
            "file name=szendrei.isg status=ok",
        ]
    );
    let again = isg(&["analyze", "--corpus", &d, "--format", "lines", "--sections", "validation"]);
    assert_eq!(again.stdout, o.stdout);
}

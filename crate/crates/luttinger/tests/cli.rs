use luttinger::blocks::{make_block, BlockId};
use luttinger::cli::{cmd_run, cmd_scan, cmd_show_block, cmd_verify_all, scan_budget, Format, Options};
use luttinger::fpgroup::{AbelianGroup, Budget, Claim};
use luttinger::recipes::{find_builtin, scan_cell, Params, ScanChoice, ScanDirection};
use num_bigint::BigInt;

fn json() -> Options {
    Options { format: Format::Json, ..Options::default() }
}

#[test]
fn run_reads_recipe_files() {
    let text = find_builtin("cool").unwrap().text(&Params::new()).unwrap();
    let path = std::env::temp_dir().join(format!("cool-{}.recipe", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let out = cmd_run(path.to_str().unwrap(), &Options::default());
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("freedman: (1,3)"));
}

#[test]
fn failing_assertion_exits_one() {
    let text = "recipe wrong\nblock Z as X\nfill X.F\nassert e_sigma 7 -2\n";
    let path = std::env::temp_dir().join(format!("wrong-{}.recipe", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let out = cmd_run(path.to_str().unwrap(), &Options::default());
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
}

#[test]
fn json_report_is_stable() {
    let opts = Options { params: vec![("n".into(), BigInt::from(-2))], ..json() };
    let a = cmd_run("Yfamily", &opts);
    let b = cmd_run("Yfamily", &opts);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["params"]["n"], -2);
    assert_eq!(v["pi1"]["claim"], "trivial");
    assert_eq!(v["outcome"], "pass");
}

#[test]
fn out_of_range_parameter_is_an_error() {
    let opts = Options { params: vec![("n".into(), BigInt::from(9))], ..Options::default() };
    let out = cmd_run("free", &opts);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn verify_all_filters_by_glob() {
    let out = cmd_verify_all(Some("b[35]*"), &Options { jobs: 2, ..Options::default() });
    assert_eq!(out.code, 0, "{}", out.stdout);
    let names: Vec<&str> = out.stdout.lines().filter_map(|l| l.split_whitespace().next()).collect();
    assert!(names.contains(&"b31") && names.contains(&"b32") && names.contains(&"b51"));
    assert!(!names.contains(&"B1"));
    assert_eq!(cmd_verify_all(Some("nothing*"), &Options::default()).code, 1);
}

#[test]
fn show_block_json_lists_tori() {
    let out = cmd_show_block("Z", &json());
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v.to_string().contains("T2'"));
    assert!(cmd_show_block("sym2(4)", &Options::default()).stdout.contains("T"));
    assert_eq!(cmd_show_block("Q", &Options::default()).code, 1);
}

#[test]
fn scan_lines_are_json() {
    let opts = Options { budget: scan_budget(), ..json() };
    let out = cmd_scan("W2", &[0, 1], &[ScanDirection::M], &opts);
    assert_eq!(out.code, 0);
    let rows: Vec<serde_json::Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["e"] == 2 && r["sigma"] == -2));
}

#[test]
fn scan_cell_reaches_the_cool_manifold() {
    use ScanDirection::{L, M};
    let z = make_block(BlockId::Z);
    let pick = [("T1'", 1, M), ("T2'", 1, L), ("T1", -1, M), ("T2", -1, L), ("T3", -1, L), ("T4", -1, M)];
    let choices: Vec<(String, ScanChoice)> =
        pick.iter().map(|&(t, k, dir)| (t.to_string(), ScanChoice::Surgery { k, dir })).collect();
    let row = scan_cell(&z, &choices, &Budget::default()).unwrap();
    assert_eq!(row.claim, Claim::Trivial);
    assert_eq!((row.e, row.sigma), (6, -2));

    let fills: Vec<(String, ScanChoice)> = z.tori.iter().map(|t| (t.name.clone(), ScanChoice::Fill)).collect();
    let row = scan_cell(&z, &fills, &scan_budget()).unwrap();
    assert_eq!(row.h1, AbelianGroup::free(6));
}

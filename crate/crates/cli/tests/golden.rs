//! Byte-for-byte output checks for every subcommand on the bundled corpus.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const CASES: &[Case] = &[
    Case { name: "realize_cyclic", args: &["realize", "cyclic", "--coeffs", "1,-1,1", "--emit", "wirtinger"], exit: 0 },
    Case {
        name: "realize_cyclic_hnn",
        args: &["realize", "cyclic", "--poly", "poly 0 1 -1 1", "--emit", "hnn"],
        exit: 0,
    },
    Case { name: "realize_trotter2", args: &["realize", "trotter", "-m", "trotter2.mat"], exit: 0 },
    Case { name: "realize_trotter_companion", args: &["realize", "trotter", "-m", "trotter_companion.mat"], exit: 0 },
    Case {
        name: "realize_t_minus_one",
        args: &["realize", "tminus1", "-m", "tminus1_companion.mat", "--emit", "hnn"],
        exit: 0,
    },
    Case {
        name: "realize_t_minus_one_wirtinger",
        args: &["realize", "tminus1", "-m", "tminus1_companion.mat"],
        exit: 0,
    },
    Case { name: "realize_t_action", args: &["realize", "taction", "-m", "taction_companion.mat"], exit: 0 },
    Case { name: "realize_sum", args: &["realize", "sum", "--summands", "1,-1,1;2,-1"], exit: 0 },
    Case { name: "alex_spun", args: &["alex", "spun_trefoil.pres"], exit: 0 },
    Case { name: "alex_wirtinger_rewrite", args: &["alex", "wirtinger_rewrite.pres"], exit: 0 },
    Case {
        name: "covers_spun",
        args: &["covers", "spun_trefoil.pres", "-N", "2,3,6", "--module", "spun_trefoil.module"],
        exit: 0,
    },
    Case { name: "covers_trotter2", args: &["covers", "trotter2.pres", "-N", "2,3,4,5"], exit: 0 },
    Case {
        name: "covers_mismatch",
        args: &["covers", "trotter2.pres", "-N", "2,3", "--module", "spun_trefoil.module"],
        exit: 1,
    },
    Case { name: "tc_s3", args: &["tc", "s3.pres", "--subgroup", "a", "--max-cosets", "20", "--table"], exit: 0 },
    Case { name: "tc_overflow", args: &["tc", "spun_trefoil.pres", "--max-cosets", "30"], exit: 2 },
    Case {
        name: "ac_search_spun",
        args: &["ac-search", "spun_trefoil.pres", "--kill", "t", "--max-len", "32", "--max-depth", "12"],
        exit: 0,
    },
    Case { name: "lot_spun", args: &["lot", "spun_trefoil.pres"], exit: 0 },
    Case { name: "lot_t_minus_one_expanded", args: &["lot", "tminus1_companion.pres", "--expand"], exit: 0 },
    Case { name: "lot_not_wirtinger", args: &["lot", "wirtinger_rewrite.pres"], exit: 1 },
    Case {
        name: "tietze_wirtinger_rewrite",
        args: &["tietze", "wirtinger_rewrite.pres", "--script", "wirtinger_rewrite.tietze"],
        exit: 0,
    },
    Case {
        name: "verify_spun",
        args: &[
            "verify",
            "spun_trefoil.pres",
            "--module",
            "spun_trefoil.module",
            "-N",
            "2,3,6",
            "--meridian",
            "t",
            "--max-cosets",
            "100",
        ],
        exit: 0,
    },
    Case { name: "verify_trotter2", args: &["verify", "trotter2.pres", "--module", "trotter2.module"], exit: 0 },
    Case {
        name: "verify_t_minus_one",
        args: &["verify", "tminus1_companion.pres", "--module", "tminus1_companion.module"],
        exit: 0,
    },
    Case {
        name: "verify_t_action",
        args: &["verify", "taction_companion.pres", "--module", "taction_companion.module"],
        exit: 0,
    },
    Case { name: "verify_sum", args: &["verify", "trefoil_sum.pres", "--module", "trefoil_sum.module"], exit: 0 },
    Case { name: "verify_mismatch", args: &["verify", "trotter2.pres", "--module", "spun_trefoil.module"], exit: 1 },
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_knotmod"))
            .args(case.args)
            .current_dir(corpus())
            .output()
            .expect("run knotmod");
        let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
        let code = out.status.code().unwrap_or(-1);
        if code != case.exit {
            failures.push(format!(
                "{}: exit {code}, expected {}\n{}",
                case.name,
                case.exit,
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        let path = golden_dir().join(format!("{}.out", case.name));
        if update {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &stdout).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == stdout => {}
            Ok(expected) => {
                failures.push(format!("{}: output differs\n--- expected\n{expected}--- got\n{stdout}", case.name))
            }
            Err(_) => failures.push(format!("{}: missing golden file {}", case.name, path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn outputs_are_deterministic() {
    for case in CASES.iter().filter(|c| c.args[0] == "ac-search" || c.args[0] == "verify") {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_knotmod")).args(case.args).current_dir(corpus()).output().unwrap().stdout
        };
        assert_eq!(run(), run(), "{}", case.name);
    }
}

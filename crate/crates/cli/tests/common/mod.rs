//! Fixed command lines shared by the golden and acceptance targets.

use std::path::PathBuf;

use abelpoly_cli::run;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: &'static str,
    pub exit: i32,
}

pub const SQUARE_TABLE: &str = r#"{"group":{"free_rank":1},"table":[[[0],"0"],[[1],"1"],[[2],"4"],[[3],"9"],[[4],"16"]]}"#;
const MIXED: &str = r#"{"basis":"monomial","free_rank":2,"coeffs":[{"index":[1,1],"value":"1"},{"index":[1,0],"value":"1"},{"index":[0,1],"value":"1"}]}"#;
const CUBIC: &str = r#"{"basis":"monomial","free_rank":1,"coeffs":[{"index":[3],"value":"1/6"},{"index":[1],"value":"-2"},{"index":[0],"value":"5"}]}"#;
const Z6_IDENTITY: &str = r#"{"group":{"torsion_orders":[6]},"table":[[[0],"0"],[[1],"1"],[[2],"2"],[[3],"3"],[[4],"4"],[[5],"5"]]}"#;
const Z22_CONSTANT: &str = r#"{"group":{"torsion_orders":[2,2]},"table":[[[0,0],"7"],[[0,1],"7"],[[1,0],"7"],[[1,1],"7"]]}"#;
const HYPERBOLIC: &str = r#"[["0","1"],["1","0"]]"#;
const GRAM: &str = r#"[["2","1","0"],["1","-1","1/2"],["0","1/2","0"]]"#;
const QUADRATIC: &str = r#"{"basis":"monomial","free_rank":2,"coeffs":[{"index":[2,0],"value":"1"},{"index":[1,1],"value":"4"},{"index":[0,2],"value":"-3"}]}"#;
const SEMIGROUP: &str = r#"{"kind":"generator_list","generators":[[1,0],[1,1]]}"#;
const PLANE_TABLE: &str = r#"{"group":{"free_rank":2},"table":[[[0,0],"0"],[[1,0],"1"],[[2,0],"2"],[[1,1],"2"],[[2,1],"3"],[[2,2],"4"],[[3,0],"3"],[[3,1],"4"],[[3,2],"5"],[[3,3],"6"],[[4,0],"4"],[[4,1],"5"],[[4,2],"6"]]}"#;

pub const CASES: &[Case] = &[
    Case { name: "eval_monomial", args: &["eval", "--point", "[3]"], stdin: CUBIC, exit: 0 },
    Case { name: "eval_table", args: &["eval", "--degree", "2", "--point", "[-7]"], stdin: SQUARE_TABLE, exit: 0 },
    Case { name: "eval_table_wrong_degree", args: &["eval", "--degree", "1", "--point", "[0]"], stdin: SQUARE_TABLE, exit: 1 },
    Case { name: "extend_orthant", args: &["extend", "--semigroup", "orthant", "--degree", "2", "--point", "[-2]"], stdin: SQUARE_TABLE, exit: 0 },
    Case {
        name: "extend_generators",
        args: &["extend", "--semigroup", SEMIGROUP, "--degree", "1", "--point", "[-1,-2]", "--decomposition", "[[1,0],[2,2]]"],
        stdin: PLANE_TABLE,
        exit: 0,
    },
    Case { name: "extend_no_decomposition", args: &["extend", "--semigroup", SEMIGROUP, "--degree", "1", "--point", "[0,-1]"], stdin: PLANE_TABLE, exit: 1 },
    Case { name: "decompose", args: &["decompose", "--free-rank", "3", "--point", "[3,-2,0]"], stdin: "", exit: 0 },
    Case { name: "decompose_torsion", args: &["decompose", "--free-rank", "1", "--torsion", "4", "--point", "[-5,3]"], stdin: "", exit: 0 },
    Case { name: "homog", args: &["homog", "--direction", "[2]"], stdin: CUBIC, exit: 0 },
    Case { name: "homog_mixed", args: &["homog"], stdin: MIXED, exit: 0 },
    Case { name: "inertia_hyperbolic", args: &["inertia"], stdin: HYPERBOLIC, exit: 0 },
    Case { name: "inertia_gram", args: &["inertia"], stdin: GRAM, exit: 0 },
    Case { name: "inertia_not_symmetric", args: &["inertia"], stdin: r#"[["1","2"],["3","4"]]"#, exit: 1 },
    Case { name: "squares_matrix", args: &["squares"], stdin: GRAM, exit: 0 },
    Case { name: "squares_polynomial", args: &["squares"], stdin: QUADRATIC, exit: 0 },
    Case { name: "squares_not_quadratic", args: &["squares"], stdin: CUBIC, exit: 1 },
    Case { name: "dim", args: &["dim", "--free-rank", "2", "--real-rank", "0", "--degree", "2"], stdin: "", exit: 0 },
    Case { name: "dim_mixed", args: &["dim", "--free-rank", "1", "--torsion", "3,4", "--real-rank", "2", "--degree", "3"], stdin: "", exit: 0 },
    Case { name: "basis", args: &["basis", "--free-rank", "2", "--degree", "2"], stdin: "", exit: 0 },
    Case { name: "split", args: &["split", "--left-rank", "1", "--degree", "2"], stdin: MIXED, exit: 0 },
    Case { name: "split_degree_violation", args: &["split", "--left-rank", "1", "--degree", "1"], stdin: MIXED, exit: 1 },
    Case { name: "certify_infdim", args: &["certify-infdim", "--size", "3"], stdin: "", exit: 0 },
    Case { name: "verify_identities", args: &["verify-identities", "--max-m", "10"], stdin: "", exit: 0 },
    Case { name: "degree_test_polynomial", args: &["degree-test", "--degree", "2", "--radius", "2"], stdin: CUBIC, exit: 0 },
    Case { name: "degree_test_cyclic", args: &["degree-test", "--degree", "10"], stdin: Z6_IDENTITY, exit: 0 },
    Case { name: "degree_test_constant", args: &["degree-test", "--degree", "3"], stdin: Z22_CONSTANT, exit: 0 },
    Case { name: "malformed_json", args: &["eval", "--point", "[1]"], stdin: "{not json", exit: 2 },
    Case { name: "malformed_point", args: &["eval", "--point", "one"], stdin: CUBIC, exit: 2 },
    Case { name: "unknown_subcommand", args: &["integrate"], stdin: "", exit: 2 },
];

pub const SUBCOMMANDS: &[&str] = &[
    "eval", "extend", "decompose", "homog", "inertia", "squares", "dim", "basis", "split",
    "certify-infdim", "verify-identities", "degree-test",
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

pub fn run_case(case: &Case) -> (i32, String) {
    let args = std::iter::once("abelpoly").chain(case.args.iter().copied());
    run(args, &mut case.stdin.as_bytes())
}

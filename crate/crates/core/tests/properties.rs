//! Invariants exercised through the public API.

use floorforge::dsl::{check_statement, parse_statement, Binding, Expr, IdentityStatement};
use floorforge::radical::{check_root_pair, root_pair_candidate, ramanujan_sqrt_pair_sides};
use floorforge::search::{emit_report, partition_range, run_builtin, Coord, Format, SweepOptions};
use floorforge::{floor_radical_sum, normalize_radical, Precision};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..1000).prop_map(|v| Expr::Int(v.into())),
        prop::sample::select(vec!["n", "m", "x1"]).prop_map(|v| Expr::Var(v.to_string())),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            inner.clone().prop_map(move |x| Expr::Floor(b(x))),
            (1u32..7, inner).prop_map(move |(k, x)| Expr::Root(k, b(x))),
        ]
    })
}

fn statement() -> impl Strategy<Value = IdentityStatement> {
    (expr(), expr(), -5i64..5, 0i64..5).prop_map(|(lhs, rhs, lo, w)| IdentityStatement {
        bindings: ["n", "m", "x1"]
            .iter()
            .map(|v| Binding {
                var: v.to_string(),
                lo: lo.into(),
                hi: (lo + w).into(),
            })
            .collect(),
        lhs,
        rhs,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pretty_then_parse_is_identity(s in statement()) {
        let text = s.to_string();
        prop_assert_eq!(parse_statement(&text).unwrap(), s);
    }

    #[test]
    fn partition_covers(lo in -1_000_000i64..1_000_000, len in 0i64..5000, parts in 1usize..40) {
        let hi = lo + len;
        let ps = partition_range(lo, hi, parts);
        let sizes: Vec<i64> = ps.iter().map(|r| r.end() - r.start() + 1).collect();
        prop_assert_eq!(sizes.iter().sum::<i64>(), len + 1);
        prop_assert_eq!(*ps[0].start(), lo);
        prop_assert_eq!(*ps.last().unwrap().end(), hi);
        for w in ps.windows(2) {
            prop_assert_eq!(*w[0].end() + 1, *w[1].start());
        }
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn midpoint_normalization(n in 1i64..100_000, k in 2u32..12) {
        let shifted = BigRational::from_integer(n.into()) + BigRational::new(1.into(), 2.into());
        let term = normalize_radical(&BigRational::from_integer(2.into()), &shifted, k).unwrap();
        let via_sum = floor_radical_sum(&term.into(), Precision::default()).unwrap();
        let r = check_root_pair(&n.into(), k, Precision::default()).unwrap();
        prop_assert_eq!(via_sum, r.rhs_floor);
    }

    #[test]
    fn sqrt_pair_matches_square_case(n in 1i64..1_000_000) {
        let s = ramanujan_sqrt_pair_sides(&n.into(), Precision::default()).unwrap();
        let r = check_root_pair(&n.into(), 2, Precision::default()).unwrap();
        prop_assert_eq!(s.holds(), r.holds);
    }
}

#[test]
fn root_pair_failures_only_at_candidates() {
    for k in 2..=16u32 {
        for n in 1..=2000i64 {
            let r = check_root_pair(&n.into(), k, Precision::default()).unwrap();
            if !r.holds {
                assert_eq!(BigInt::from(n), root_pair_candidate(k));
                assert_eq!((r.lhs_floor, r.rhs_floor), (2.into(), 3.into()));
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let o = SweepOptions {
        timing: false,
        workers: 3,
        ..SweepOptions::default()
    };
    let stmt = parse_statement("forall n in 1..200 : floor(n/2) = floor((n+1)/2)").unwrap();
    let a = check_statement(&stmt, "halves", &o).unwrap();
    let b = check_statement(&stmt, "halves", &o).unwrap();
    for f in [Format::Text, Format::Json, Format::Csv] {
        assert_eq!(emit_report(&a, f), emit_report(&b, f));
    }
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&a, Format::Json)).unwrap();
    assert_eq!(json["status"], "counterexample");
    assert_eq!(json["counterexamples"][0]["bindings"]["n"], "1");
    let r = run_builtin("eq1", &[], &[Coord::new("n", 1, 100)], &o).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(json["status"], "all_hold");
    for field in ["identity", "params", "range", "checked_count", "counterexamples", "candidates", "margins", "duration_ms", "status"] {
        assert!(json.get(field).is_some(), "{field}");
    }
}

#[test]
fn single_counterexample_csv_row() {
    let o = SweepOptions {
        timing: false,
        ..SweepOptions::default()
    };
    let stmt = parse_statement("forall n in 1..3 : floor(n/3) = 0").unwrap();
    let r = check_statement(&stmt, "third", &o).unwrap();
    let csv = String::from_utf8(emit_report(&r, Format::Csv)).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines, ["identity,binding,lhs,rhs,holds", "third,n=3,1,0,false"]);
}

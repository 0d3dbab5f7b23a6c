mod common;

use common::*;
use proptest::prelude::*;
use redip::lang::{parse, parse_guard, parse_in, pretty, LangError};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pretty_then_parse_is_identity(seed in any::<u64>()) {
        let a = xy();
        let shape = ProgramShape { max_size: 12, iid: true, ..ProgramShape::default() };
        let p = random_program(&mut rng(seed), shape);
        let text = pretty(&p, &a);
        let back = parse_in(&text, &a).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, p, "{}", text);
    }

    #[test]
    fn guard_display_round_trips(seed in any::<u64>()) {
        let a = xy();
        let g = random_guard(&mut rng(seed), 2, 3, 5);
        let text = g.display(&a).to_string();
        prop_assert_eq!(parse_guard(&text, &a).unwrap(), g, "{}", text);
    }

    #[test]
    fn parser_never_panics(src in "[a-z0-9 (){};:=+<>!%/\\[\\].\n-]{0,40}") {
        let _ = parse(&src);
    }
}

#[test]
fn error_classes_and_positions() {
    let cases: [(&str, fn(&LangError) -> bool, (usize, usize)); 5] = [
        ("x += 1;\n{ x += 1 } [3/2] { skip }", |e| matches!(e, LangError::ProbabilityRangeError { .. }), (2, 13)),
        ("observe(x % 2 == 3)", |e| matches!(e, LangError::GuardConstraintError { .. }), (1, 9)),
        ("x += uniform(0)", |e| matches!(e, LangError::InvalidDistribution { .. }), (1, 6)),
        ("x += 1\ny += 2", |e| matches!(e, LangError::SyntaxError { .. }), (2, 1)),
        ("if (x < 1) { x += 1 } else", |e| matches!(e, LangError::SyntaxError { .. }), (1, 27)),
    ];
    for (src, class, pos) in cases {
        let e = parse(src).unwrap_err();
        assert!(class(&e), "{src}: {e:?}");
        assert_eq!(e.position(), pos, "{src}: {e}");
    }
}

#[test]
fn unknown_variable_in_fixed_alphabet() {
    let e = parse_in("z += 1", &xy()).unwrap_err();
    assert!(matches!(e, LangError::UnknownVariable { ref name, .. } if name == "z"), "{e:?}");
}

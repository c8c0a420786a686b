//! Round-trip and totality properties of the parser.

use norm_parser::{parse_model, serialize_model};
use proptest::prelude::*;

proptest! {
    /// parse . serialize is the identity on generated models.
    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        let model = norm_core::random::model_from_seed(seed);
        let text = serialize_model(&model);
        let (reparsed, _) = parse_model(&text)
            .unwrap_or_else(|d| panic!("canonical text failed to parse: {d:?}\n{text}"));
        prop_assert_eq!(reparsed, model);
    }

    /// The parser is total: no input panics it, and every diagnostic points
    /// into the input.
    #[test]
    fn parser_is_total_with_bounded_positions(input in "\\PC*") {
        let diags = match parse_model(&input) {
            Ok((_, warnings)) => warnings,
            Err(diags) => diags,
        };
        let lines: Vec<&str> = input.lines().collect();
        for d in diags {
            prop_assert!(d.line >= 1 && d.column >= 1);
            prop_assert!(d.line <= lines.len().max(1));
            let width = lines.get(d.line - 1).map_or(0, |l| l.chars().count());
            prop_assert!(d.column <= width.max(1) + 1, "column {} beyond line width {}", d.column, width);
        }
    }

    /// Mutilated versions of the bundled model neither panic nor loop.
    #[test]
    fn truncated_models_fail_gracefully(cut in 0usize..1200, flip in any::<u8>()) {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../assets/library.norm");
        let text = std::fs::read_to_string(path).unwrap();
        let mut mangled: String = text.chars().take(cut).collect();
        mangled.push(flip as char);
        let _ = parse_model(&mangled);
    }
}

//! Anything the parser accepts must render to text that parses back to
//! the same polynomial.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tamegamma::groebner::MonomialOrder;
use tamegamma::parse::{parse_polynomial, ParsedInput};
use tamegamma::poly::FamilyPolynomial;
use tamegamma::ring::Ring;

fuzz_target!(|text: &str| {
    let Ok(parsed) = parse_polynomial(text, None) else {
        return;
    };
    match &parsed {
        ParsedInput::Single(p) => {
            let rendered = p.to_string_ordered(&Ring::germ(p.n()), MonomialOrder::GrevLex);
            match parse_polynomial(&rendered, Some(p.n())) {
                Ok(ParsedInput::Single(q)) => assert_eq!(&q, p, "round-trip changed the germ"),
                other => panic!("rendered germ `{rendered}` failed to re-parse: {other:?}"),
            }
        }
        ParsedInput::Family(f) => {
            // A family whose surviving terms are t-free renders without t
            // and honestly re-parses as a single germ; compare joints.
            let rendered = f.to_string();
            match parse_polynomial(&rendered, Some(f.n())) {
                Ok(ParsedInput::Family(g)) => assert_eq!(&g, f, "round-trip changed the family"),
                Ok(ParsedInput::Single(q)) => assert_eq!(
                    FamilyPolynomial::from_single(&q).to_joint(),
                    f.to_joint(),
                    "round-trip changed the t-free family"
                ),
                Err(e) => panic!("rendered family `{rendered}` failed to re-parse: {e}"),
            }
        }
    }
});

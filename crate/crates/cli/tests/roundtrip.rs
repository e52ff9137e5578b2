use orc_cli::ast::{Expr, SeqSource, RULES};
use orc_cli::parse::parse;
use orc_core::Rational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..40).prop_map(|(n, d)| Rational::frac(n, d))
}

fn ascending() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(rational(), 1..5).prop_map(|s| s.into_iter().collect())
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        rational().prop_map(Expr::Rat),
        "[a-z_][a-z0-9_]{0,4}".prop_map(Expr::Var),
        rational().prop_map(Expr::Hat),
        (prop::collection::vec(rational(), 1..4), rational()).prop_map(|(vs, bound)| Expr::Bseq {
            source: SeqSource::List(vs),
            bound
        }),
        (prop::sample::select(RULES), rational()).prop_map(|(r, bound)| Expr::Bseq {
            source: SeqSource::Rule(r.to_string()),
            bound
        }),
        (prop::collection::vec(rational(), 1..4), rational()).prop_map(|(values, bound)| Expr::Sup { values, bound }),
        prop::collection::vec(rational(), 1..4).prop_map(Expr::Inf),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::MulPos(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Meet(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Embed(Box::new(a))),
            (inner.clone(), 0u32..=64).prop_map(|(a, n)| Expr::Approx(Box::new(a), n)),
            (ascending(), inner.clone()).prop_map(|(ds, a)| Expr::Phi(ds, Box::new(a))),
            (prop::collection::vec(inner.clone(), 1..3), rational()).prop_map(|(ts, b)| Expr::Limit(ts, b)),
            (inner, rational()).prop_map(|(a, s)| Expr::Shift(Box::new(a), s)),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_parses_back(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr()) {
        let text = e.to_string();
        let spaced = text.replace(',', " , ").replace('(', " ( ").replace('[', "[ ");
        prop_assert_eq!(parse(&spaced).unwrap(), parse(&text).unwrap());
    }
}

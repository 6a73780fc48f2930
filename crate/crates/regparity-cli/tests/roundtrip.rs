use proptest::prelude::*;

use regparity::parity_engine::{Evidence, Parity, ParityVerdict};
use regparity::regconst::{RegConstTable, SquareClass};
use regparity_cli::output::{Document, Structured};

fn text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_()+/^*-][A-Za-z0-9_()+/^* :-]{0,30}[A-Za-z0-9_()+/^*-]"
}

fn verdict() -> impl Strategy<Value = ParityVerdict> {
    (
        text(),
        prop_oneof![Just(Parity::Even), Just(Parity::Odd)],
        prop_oneof![Just(Evidence::TamagawaSide), Just(Evidence::RootNumberSide), Just(Evidence::Both)],
        prop::collection::vec(text(), 0..4),
    )
        .prop_map(|(combination, parity, evidence, assumptions)| ParityVerdict { combination, parity, evidence, assumptions })
}

fn table() -> impl Strategy<Value = RegConstTable> {
    (1usize..5, 0usize..4).prop_flat_map(|(n_irr, n_rel)| {
        (
            "[A-Z][A-Za-z0-9:]{0,6}",
            prop::collection::vec("[a-z][a-z0-9#]{0,5}", n_irr),
            prop::collection::vec(("[A-Z][a-z0-9]{0,5}", "[0-9A-Z+-]{1,20}"), n_rel),
            prop::collection::vec(prop::collection::vec(-40i64..40, n_irr), n_rel),
        )
            .prop_map(|(group, irreducibles, relations, values)| RegConstTable {
                group,
                relations,
                irreducibles,
                entries: values.iter().map(|row| row.iter().filter(|&&v| v != 0).map(|&v| SquareClass::from_int(v)).collect()).collect(),
            })
            .prop_filter("one entry per irreducible", |t| t.entries.iter().all(|row| row.len() == t.irreducibles.len()))
    })
}

proptest! {
    #[test]
    fn verdict_round_trips(v in verdict(), seed in any::<u64>()) {
        let mut doc = Document::new(seed, "parity");
        doc.records.push(v.to_record());
        let back = Document::parse(&doc.to_string()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(ParityVerdict::from_record(&back.records[0]).unwrap(), v);
    }

    #[test]
    fn table_round_trips(t in table(), seed in any::<u64>()) {
        let mut doc = Document::new(seed, "regconst");
        doc.records.push(t.to_record());
        let back = Document::parse(&doc.to_string()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(RegConstTable::from_record(&back.records[0]).unwrap(), t);
    }
}

#![no_main]

use charvar::word::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(w) = Word::parse(text) {
        let again = Word::parse(&w.to_string()).expect("printed words parse");
        assert_eq!(again, w);
        assert_eq!(w.inverse().inverse(), w);
        assert!(w.mul(&w.inverse()).is_empty());
    }
});

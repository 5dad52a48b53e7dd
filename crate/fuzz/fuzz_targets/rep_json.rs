#![no_main]

use charvar::bending::SplittingRep;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(rep) = SplittingRep::from_json(text) {
        let back = SplittingRep::from_json(&rep.to_json()).expect("encoded reps decode");
        assert_eq!(back, rep);
    }
});

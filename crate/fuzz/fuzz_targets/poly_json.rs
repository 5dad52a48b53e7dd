#![no_main]

use charvar::polyring::SparsePoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(p) = SparsePoly::from_json(text) {
        let s = p.to_json();
        let q = SparsePoly::from_json(&s).expect("encoded polynomials decode");
        assert_eq!(q, p);
        assert_eq!(q.to_json(), s);
    }
});

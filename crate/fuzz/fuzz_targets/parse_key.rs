#![no_main]
use f2xf2::GroupElement;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(element) = GroupElement::parse_key(text) {
        // the parser accepts canonical serializations only
        assert_eq!(element.canonical_key(), text);
        assert!(element.mul(&element.inv()).is_identity());
    }
});

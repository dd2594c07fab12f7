#![no_main]
use f2xf2::{GenSet, GenWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for gs in [GenSet::s1(), GenSet::s2()] {
        // parsing must never panic; accepted words must evaluate cleanly
        if let Ok(word) = GenWord::parse(&gs, text) {
            let element = gs.eval(&word).expect("validated words evaluate");
            let inverse = gs.eval(&word.inverse()).expect("inverses evaluate");
            assert!(element.mul(&inverse).is_identity());
            assert_eq!(word.inverse().inverse(), word);
        }
    }
});

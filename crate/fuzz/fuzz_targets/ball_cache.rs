#![no_main]
use f2xf2::BallIndex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // loading validates every ball invariant; a file that validates is a
    // byte-canonical serialization
    if let Ok(ball) = BallIndex::from_tsv(text) {
        assert_eq!(ball.to_tsv(), text);
        assert_eq!(ball.dist(&f2xf2::GroupElement::identity()), Some(0));
    }
});

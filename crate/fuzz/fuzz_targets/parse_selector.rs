#![no_main]
use f2xf2::GenSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // command-line selector syntax
    if let Ok(gs) = GenSet::parse_selector(text) {
        let key = gs.cache_key();
        let back = GenSet::from_cache_key(&key).expect("cache keys round-trip");
        assert_eq!(back, gs);
    }
    // cache-header syntax
    if let Ok(gs) = GenSet::from_cache_key(text) {
        assert_eq!(GenSet::from_cache_key(&gs.cache_key()).unwrap(), gs);
    }
});

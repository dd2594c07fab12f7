#![no_main]
use f2xf2::CheckReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = CheckReport::from_json_str(text) {
        let again = CheckReport::from_json_str(&report.to_json_string())
            .expect("serialized reports re-validate");
        assert_eq!(again, report);
    }
});

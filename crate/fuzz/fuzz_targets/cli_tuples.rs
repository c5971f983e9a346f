#![no_main]

use libfuzzer_sys::fuzz_target;
use su2frames_cli::{parse_axis, parse_kind, parse_tuple};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for v in parse_tuple::<6>(s).into_iter().flatten().chain(parse_tuple::<4>(s).into_iter().flatten()) {
        assert!(v.is_finite());
    }
    let _ = parse_tuple::<3>(s);
    let _ = parse_kind(s);
    let _ = parse_axis(s);
    // full command lines built from the input must never panic
    let argv: Vec<&str> = std::iter::once("su2frames").chain(s.split_whitespace()).collect();
    if argv.iter().any(|a| a.contains("out") || a.contains("trace") || a.contains("random") || a.contains("solve")) {
        return;
    }
    let _ = su2frames_cli::run(argv, &mut std::io::sink(), &mut std::io::sink());
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use su2frames_mesh::{parse_msh, write_msh};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mesh) = parse_msh(text) {
        // anything accepted must survive a write/parse round trip
        let again = parse_msh(&write_msh(&mesh)).expect("round trip");
        assert_eq!(again.tets, mesh.tets);
        assert_eq!(again.vertices.len(), mesh.vertices.len());
    }
});

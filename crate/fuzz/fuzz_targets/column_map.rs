//! Fuzz the key-value column-map parser.
//!
//! Run with: `cargo +nightly fuzz run column_map`

#![no_main]

use libfuzzer_sys::fuzz_target;
use reprostat::ingest::ColumnMap;

fuzz_target!(|data: &str| {
    if let Ok(map) = ColumnMap::parse(data) {
        // a successfully parsed map answers lookups without panicking
        for field in reprostat::ingest::FIELD_NAMES {
            let _ = map.header_for(field);
        }
    }
});

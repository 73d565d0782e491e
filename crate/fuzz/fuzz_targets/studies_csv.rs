//! Fuzz the delimited-table loader under both built-in column maps.
//!
//! Run with: `cargo +nightly fuzz run studies_csv`

#![no_main]

use libfuzzer_sys::fuzz_target;
use reprostat::ingest::{load_studies_from_reader, ColumnMap};

fuzz_target!(|data: &[u8]| {
    let _ = load_studies_from_reader(data, &ColumnMap::eco_default());
    let _ = load_studies_from_reader(data, &ColumnMap::osc_default());
    let _ = load_studies_from_reader(data, &ColumnMap::empty());
});

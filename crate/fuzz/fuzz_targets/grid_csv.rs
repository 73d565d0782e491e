//! Fuzz the grid-CSV reader and, when parsing succeeds, its write/read
//! round trip.
//!
//! Run with: `cargo +nightly fuzz run grid_csv`

#![no_main]

use libfuzzer_sys::fuzz_target;
use reprostat::power::SurfaceMetric;
use reprostat::report::{parse_surface_csv, surface_csv};

fuzz_target!(|data: &str| {
    if let Ok(surface) = parse_surface_csv(data, SurfaceMetric::BetaC, 1.96, 3.24) {
        let text = surface_csv(&surface);
        let back = parse_surface_csv(&text, surface.metric, surface.marker_t, surface.marker_eta)
            .expect("a freshly written grid parses");
        assert_eq!(surface, back);
    }
});

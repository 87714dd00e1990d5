//! Bundled example inputs, addressable by name from the CLI.

pub const TABLE1_CXT: &str = include_str!("../fixtures/table1.cxt");
pub const RESTAURANT_POSET: &str = include_str!("../fixtures/restaurant.poset");
pub const WISHES_PROG: &str = include_str!("../fixtures/wishes.prog");
pub const DIAMOND_POSET: &str = include_str!("../fixtures/diamond.poset");
pub const DIAMOND_PROG: &str = include_str!("../fixtures/diamond.prog");
pub const VEE_POSET: &str = include_str!("../fixtures/vee.poset");
pub const VEE_PROG: &str = include_str!("../fixtures/vee.prog");

/// Bundled domain by name, with or without its `.poset` extension.
pub fn domain(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".poset").unwrap_or(name) {
        "restaurant" => Some(RESTAURANT_POSET),
        "diamond" => Some(DIAMOND_POSET),
        "vee" => Some(VEE_POSET),
        _ => None,
    }
}

pub fn program(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".prog").unwrap_or(name) {
        "wishes" => Some(WISHES_PROG),
        "diamond" => Some(DIAMOND_PROG),
        "vee" => Some(VEE_PROG),
        _ => None,
    }
}

pub fn context(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".cxt").unwrap_or(name) {
        "table1" => Some(TABLE1_CXT),
        _ => None,
    }
}

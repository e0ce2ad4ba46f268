//! Built-in example documents, one map per entry, sorted by name.

pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(Entry { name: $name, text: include_str!(concat!("../corpus/", $name, ".map")) }),*]
    };
}

pub const ENTRIES: &[Entry] = entries![
    "example2_f",
    "example2_g",
    "identity",
    "linear_eps",
    "nagata_v1",
    "nagata_v2",
    "scale_z",
    "shear4",
    "triangular_r1",
    "triangular_r2",
];

pub fn get(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_document;

    #[test]
    fn entries_are_sorted_and_parse() {
        let names: Vec<_> = names().collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
        for e in ENTRIES {
            let doc = parse_document(e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(doc.map_names(), [e.name]);
        }
        assert!(get("nagata_v1").is_some() && get("nope").is_none());
    }
}

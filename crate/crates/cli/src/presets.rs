//! Named permutation-group presets that expand to explicit specs before
//! parsing.

/// Preset name -> explicit spec text.
pub const PRESETS: &[(&str, &str)] = &[
    ("S4", "perm(4; (1 2 3 4), (1 2))"),
    ("S5", "perm(5; (1 2 3 4 5), (1 2))"),
    ("A4", "perm(4; (1 2 3), (1 2)(3 4))"),
    ("A5", "perm(5; (1 2 3 4 5), (1 2 3))"),
    ("A6", "perm(6; (1 2 3 4 5), (2 3 4 5 6))"),
    ("PSL32", "perm(7; (1 2 4 3 6 7 5), (4 5)(6 7))"),
    ("SL23", "perm(8; (1 4 7)(2 8 5), (3 4 5)(6 8 7))"),
    ("Q8", "perm(8; (1 6 2 3)(4 7 8 5), (1 5 2 7)(3 4 6 8))"),
    ("D8", "perm(4; (1 2 3 4), (1 3))"),
];

/// Replace every whole-identifier occurrence of a preset name with its
/// permutation spec. The aliases `PSL3(2)` and `SL2(3)` are also accepted.
pub fn substitute(spec: &str) -> String {
    let spec = spec.replace("PSL3(2)", "PSL32").replace("SL2(3)", "SL23");
    let mut out = String::with_capacity(spec.len());
    let bytes = spec.as_bytes();
    let is_word = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    let mut i = 0;
    while i < bytes.len() {
        if is_word(bytes[i]) {
            let start = i;
            while i < bytes.len() && is_word(bytes[i]) {
                i += 1;
            }
            let word = &spec[start..i];
            match PRESETS.iter().find(|(name, _)| *name == word) {
                Some((_, expansion)) => out.push_str(expansion),
                None => out.push_str(word),
            }
        } else {
            out.push(bytes[i] as char);
            i += 1;
        }
    }
    out
}

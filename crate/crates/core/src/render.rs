//! Readable element names: short words in the designated generators found
//! by breadth-first search, with raw indices as the fallback.

use crate::group::GroupTable;

/// A name for every element: the BFS-shortest positive word in the
/// generators when it has at most `max_len` letters, otherwise `#index`.
/// The identity is rendered as `e`.
pub fn element_words(g: &GroupTable, max_len: usize) -> Vec<String> {
    let dec = g.bfs_decomposition();
    let names = g.gen_names();
    let mut letters: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for e in 0..g.order() {
        if let Some((parent, gi)) = dec[e] {
            let mut w = letters[parent as usize].clone();
            w.push(gi);
            letters[e] = w;
        }
    }
    letters
        .iter()
        .enumerate()
        .map(|(e, w)| {
            if w.is_empty() {
                "e".to_string()
            } else if w.len() > max_len {
                format!("#{e}")
            } else {
                render_letters(w, names)
            }
        })
        .collect()
}

fn render_letters(letters: &[usize], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let gi = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == gi {
            run += 1;
        }
        if run == 1 {
            parts.push(names[gi].clone());
        } else {
            parts.push(format!("{}^{run}", names[gi]));
        }
        i += run;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{build, parse_spec, BuildOptions};

    #[test]
    fn cyclic_words() {
        let g = build(&parse_spec("C(5)").unwrap(), &BuildOptions::default()).unwrap();
        let w = element_words(&g, 12);
        assert_eq!(w[0], "e");
        assert_eq!(w[1], "a");
        assert_eq!(w[2], "a^2");
        assert_eq!(w[4], "a^4");
    }

    #[test]
    fn long_words_fall_back_to_indices() {
        let g = build(&parse_spec("C(40)").unwrap(), &BuildOptions::default()).unwrap();
        let w = element_words(&g, 12);
        assert_eq!(w[12], "a^12");
        assert_eq!(w[13], "#13");
    }

    #[test]
    fn fp_keeps_declared_names() {
        let g = build(
            &parse_spec("fp(x,y; x^3, y^3, (x*y)^3, [x,y]^3)").unwrap(),
            &BuildOptions::default(),
        )
        .unwrap();
        let w = element_words(&g, 12);
        assert_eq!(w[0], "e");
        assert!(w.iter().skip(1).all(|s| s.contains('x') || s.contains('y')));
    }
}

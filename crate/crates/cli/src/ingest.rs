//! Edge lists: one `src dst [label]` line per piece of information, so
//! repeated lines give parallel arrows.

use gmpath::quiver::Quiver;

#[derive(Clone, Debug)]
pub struct Ingested {
    pub quiver: Quiver,
    /// `line N: reason`, in file order.
    pub malformed: Vec<String>,
}

fn vertex(q: &mut Quiver, name: &str) -> usize {
    q.vertex(name)
        .or_else(|_| q.add_vertex(name))
        .expect("fresh vertex names are accepted")
}

/// Vertices appear in order of first mention. Arrows are named by their
/// label, or `e<line>` without one; a repeated label gets `_<line>` appended.
pub fn parse_edges(text: &str) -> Ingested {
    let mut quiver = Quiver::new();
    let mut malformed = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let (src, dst, label) = match words.as_slice() {
            [s, t] => (*s, *t, None),
            [s, t, l] => (*s, *t, Some(*l)),
            _ => {
                malformed.push(format!(
                    "line {line}: expected `src dst [label]`, found {} fields",
                    words.len()
                ));
                continue;
            }
        };
        let base = label.map_or_else(|| format!("e{line}"), str::to_string);
        let name = if quiver.arrow(&base).is_some() {
            format!("{base}_{line}")
        } else {
            base
        };
        if quiver.arrow(&name).is_some() {
            malformed.push(format!("line {line}: arrow name `{name}` is already taken"));
            continue;
        }
        let s = vertex(&mut quiver, src);
        let t = vertex(&mut quiver, dst);
        quiver
            .add_arrow_by_index(&name, s, t)
            .expect("name checked and endpoints exist");
    }
    Ingested { quiver, malformed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_arrows_and_labels() {
        let e = parse_edges("a b\na b call\nb a call\n# note\n\nb c\n");
        assert!(e.malformed.is_empty());
        let q = &e.quiver;
        assert_eq!(q.vertices(), ["a", "b", "c"]);
        let names: Vec<&str> = q.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["e1", "call", "call_3", "e6"]);
    }

    #[test]
    fn malformed_lines_are_skipped() {
        let e = parse_edges("a\na b\na b c d\n");
        assert_eq!(e.quiver.arrow_count(), 1);
        assert_eq!(
            e.malformed,
            [
                "line 1: expected `src dst [label]`, found 1 fields",
                "line 3: expected `src dst [label]`, found 4 fields"
            ]
        );
    }

    #[test]
    fn empty_input() {
        let e = parse_edges("");
        assert_eq!(e.quiver.vertex_count(), 0);
        assert!(e.malformed.is_empty());
    }
}

use std::path::PathBuf;

use holocount::format::{parse, serialize};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// The fenced block following the `### name` heading.
fn golden_block(doc: &str, name: &str) -> String {
    let heading = format!("### {name}\n");
    let after = &doc[doc.find(&heading).expect("heading present") + heading.len()..];
    let start = after.find("```text\n").expect("fenced block") + "```text\n".len();
    let end = after[start..].find("```").expect("closing fence");
    after[start..start + end].to_string()
}

#[test]
fn golden_files_match_documentation() {
    let doc = std::fs::read_to_string(root().join("docs/format.md")).unwrap();
    for name in ["example1.holo", "example2.holo"] {
        let file = std::fs::read_to_string(root().join("instances").join(name)).unwrap();
        assert_eq!(golden_block(&doc, name), file, "{name}");
    }
}

#[test]
fn shipped_instances_round_trip() {
    for name in ["example1.holo", "example2.holo"] {
        let text = std::fs::read_to_string(root().join("instances").join(name)).unwrap();
        let parsed = parse(&text).unwrap().into_instance().unwrap();
        let again = parse(&serialize(&parsed)).unwrap().into_instance().unwrap();
        assert_eq!(again, parsed);
    }
    let first = parse(&std::fs::read_to_string(root().join("instances/example1.holo")).unwrap())
        .unwrap()
        .into_instance()
        .unwrap();
    assert_eq!(first.instance.generators().len(), 6);
    assert_eq!(first.instance.recognizers().len(), 4);
    assert_eq!(first.instance.edge_count(), 12);
}

//! Classfile extraction checked against field dumps produced by the JVM's own
//! reflection API (fixtures/archives/oracle) and against the source mirrors the
//! archives were assembled from.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ccci_core::model::simple_name;
use ccci_core::retriever::archive::Archive;
use ccci_core::retriever::{extract_class_from_archive, parse_source_class, SourceUnit};

const ARCHIVES: &[&str] = &["basics-api", "crm-api", "goods-api", "user-api", "warehouse-api"];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/archives")
}

#[derive(Debug, Default, PartialEq)]
struct Dump {
    fields: Vec<(String, String, Vec<String>)>,
    superclass: String,
}

fn read_oracle(name: &str) -> BTreeMap<String, Dump> {
    let text = std::fs::read_to_string(fixtures().join("oracle").join(format!("{name}.tsv"))).unwrap();
    let mut out: BTreeMap<String, Dump> = BTreeMap::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        let d = out.entry(cols[0].to_string()).or_default();
        if cols[1] == "@super" {
            d.superclass = cols[2].to_string();
        } else {
            let ann = cols.get(3).filter(|a| !a.is_empty()).map(|a| a.split(',').map(str::to_string).collect()).unwrap_or_default();
            d.fields.push((cols[1].to_string(), cols[2].to_string(), ann));
        }
    }
    out
}

#[test]
fn archives_match_reflection_dump() {
    let mut classes = 0;
    for name in ARCHIVES {
        let archive = Archive::open(&fixtures().join(format!("{name}.jar"))).unwrap();
        let oracle = read_oracle(name);
        assert!(!oracle.is_empty());
        for (class, want) in &oracle {
            let info = extract_class_from_archive(&archive.read(class).unwrap()).unwrap();
            assert_eq!(&info.qualified_name, class);
            assert!(info.comment.is_none());
            let got = Dump {
                fields: info.fields.iter().map(|f| (f.name.clone(), f.declared_type.to_string(), f.annotations.clone())).collect(),
                superclass: info.superclass.clone().unwrap_or_else(|| "java.lang.Object".into()),
            };
            assert_eq!(&got, want, "{class} in {name}");
            classes += 1;
        }
    }
    assert!(classes >= 10);
}

#[test]
fn source_and_compiled_agree() {
    for name in ARCHIVES {
        let archive = Archive::open(&fixtures().join(format!("{name}.jar"))).unwrap();
        for class in read_oracle(name).keys() {
            let rel = format!("{}.java", class.replace('.', "/"));
            let unit = SourceUnit::load(&fixtures().join("src").join(name).join(rel)).unwrap();
            let src = parse_source_class(&unit, class).unwrap();
            let bin = extract_class_from_archive(&archive.read(class).unwrap()).unwrap();
            let ids = |c: &ccci_core::model::ClassInfo| c.fields.iter().map(|f| (f.name.clone(), f.declared_type.clone())).collect::<Vec<_>>();
            assert_eq!(ids(&src), ids(&bin), "{class}");
            assert_eq!(src.superclass, bin.superclass, "{class}");
            for (s, b) in src.fields.iter().zip(&bin.fields) {
                let simple = |v: &Vec<String>| v.iter().map(|a| simple_name(a).to_string()).collect::<Vec<_>>();
                assert_eq!(simple(&s.annotations), simple(&b.annotations), "{class}.{}", s.name);
            }
        }
    }
}

#[test]
fn user_dto_fields() {
    let archive = Archive::open(&fixtures().join("user-api.jar")).unwrap();
    let info = extract_class_from_archive(&archive.read("com.wms.user.UserDTO").unwrap()).unwrap();
    let fields: Vec<_> = info.fields.iter().map(|f| (f.name.as_str(), f.declared_type.short_display())).collect();
    assert_eq!(fields, [("name", "String".to_string()), ("contactInfo", "String".to_string())]);
    assert!(info.fields.iter().all(|f| f.comment.is_none()));
}

use std::fs;
use std::path::{Path, PathBuf};

use ccci_core::classifier::{classify, ClassifyError, ProjectIndex, ClassifierConfig};
use ccci_core::model::{parse_task_definition, Origin, TaskDefinition};
use ccci_core::retriever::{resolve_hierarchy, HierarchyConfig};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_task(rel: &str) -> TaskDefinition {
    let path = fixtures().join(rel);
    let task = parse_task_definition(&fs::read_to_string(&path).unwrap()).unwrap();
    task.resolve_paths(path.parent().unwrap())
}

#[test]
fn wms_classification() {
    let task = load_task("wms/wms.ccci-task");
    let map = classify(&task).unwrap();
    assert_eq!(
        map.to_string(),
        "InventoryInfoDTO: Local\nInventoryResponseDTO: Local\nSKUInfoDTO: External (goods-api.jar)\nUserDTO: External (user-api.jar)\nWarehouseDTO: External (warehouse-api.jar)\n"
    );
    assert_eq!(map.entries.len(), task.input_class_names.len() + 1);
    assert_eq!(classify(&task).unwrap(), map);
}

fn scratch_project(files: &[(&str, &str)]) -> (tempfile::TempDir, TaskDefinition) {
    let dir = tempfile::tempdir().unwrap();
    for (rel, text) in files {
        let p = dir.path().join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(p, text).unwrap();
    }
    let task = TaskDefinition {
        project_root: dir.path().to_path_buf(),
        dependency_archives: vec![fixtures().join("archives/user-api.jar")],
        input_class_names: vec!["UserDTO".into()],
        output_class_name: "Out".into(),
        additional_rules: vec![],
        subject_language: Default::default(),
    };
    (dir, task)
}

#[test]
fn local_wins_and_build_dirs_ignored() {
    let (_dir, task) = scratch_project(&[
        ("src/com/wms/user/UserDTO.java", "package com.wms.user; class UserDTO { String name; }"),
        ("src/Out.java", "class Out { String name; }"),
        ("target/classes/Out.java", "class Out { int stale; }"),
        ("build/Out.java", "class Out { int stale; }"),
        (".hidden/Out.java", "class Out { int stale; }"),
    ]);
    let map = classify(&task).unwrap();
    assert!(matches!(map.get("com.wms.user.UserDTO"), Some(Origin::Local(_))));
    assert!(map.get("Out").unwrap().path().ends_with("src/Out.java"));
}

#[test]
fn unresolved_and_ambiguous() {
    let (_dir, mut task) = scratch_project(&[("a/Out.java", "class Out {}")]);
    task.input_class_names = vec!["Missing".into()];
    assert_eq!(classify(&task).unwrap_err(), ClassifyError::Unresolved("Missing".into()));

    let (_dir, task) = scratch_project(&[("a/Out.java", "package a; class Out {}"), ("b/Out.java", "package b; class Out {}")]);
    assert!(matches!(classify(&task).unwrap_err(), ClassifyError::AmbiguousLocal { name, files } if name == "Out" && files.len() == 2));
    // qualified names disambiguate
    let mut task = task;
    task.output_class_name = "b.Out".into();
    assert!(classify(&task).is_ok());
}

#[test]
fn nested_structure() {
    let task = load_task("nested/nested.ccci-task");
    let index = ProjectIndex::build(&task, &ClassifierConfig::default()).unwrap();
    let cmap = ccci_core::classifier::classify_in(&task, &index).unwrap();
    let roots: Vec<String> = task.all_class_names().map(str::to_string).collect();
    let graph = resolve_hierarchy(&roots, &cmap, &index, &HierarchyConfig::default()).unwrap();
    graph.validate().unwrap();
    assert_eq!(graph.nodes.len(), 6);
    assert_eq!(graph.edges.len(), 5);
    assert_eq!(graph.incoming("com.wms.crm.OwnerUser"), 2);
    assert!(graph.cycle_marks.is_empty());
    // inherited fields follow the declared ones
    let owner = graph.node("com.wms.crm.OwnerUser").unwrap();
    let names: Vec<_> = owner.fields.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names, ["userName", "phone", "crmLevel", "vip", "id", "createdAt"]);
    assert_eq!(owner.declared_field_count, 4);
    let again = resolve_hierarchy(&roots, &cmap, &index, &HierarchyConfig::default()).unwrap();
    assert_eq!(graph, again);
}

#[test]
fn cycles_leaves_and_depth() {
    let (_dir, mut task) = scratch_project(&[
        ("p/A.java", "package p; class A { B b; int n; }"),
        ("p/B.java", "package p; class B { A a; java.util.List<C> cs; }"),
        ("p/C.java", "package p; class C { D d; }"),
        ("p/D.java", "package p; class D { String s; }"),
        ("p/Flat.java", "package p; class Flat { int a; String b; java.math.BigDecimal c; java.util.Map<String, A> m; }"),
        ("p/Out.java", "package p; class Out { }"),
    ]);
    task.input_class_names = vec!["p.A".into()];
    task.output_class_name = "p.Out".into();
    let index = ProjectIndex::build(&task, &ClassifierConfig::default()).unwrap();
    let cmap = ccci_core::classifier::classify_in(&task, &index).unwrap();
    let g = resolve_hierarchy(&["p.A".to_string()], &cmap, &index, &HierarchyConfig::default()).unwrap();
    g.validate().unwrap();
    assert_eq!(g.nodes.len(), 4);
    assert_eq!(g.cycle_marks.len(), 1);
    assert!(g.cycle_marks.contains(&("p.B".to_string(), "a".to_string())));

    let g = resolve_hierarchy(&["p.Flat".to_string()], &cmap, &index, &HierarchyConfig::default()).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));

    let shallow = HierarchyConfig { max_depth: 2, ..Default::default() };
    let g = resolve_hierarchy(&["p.A".to_string()], &cmap, &index, &shallow).unwrap();
    assert_eq!(g.nodes.len(), 2);
}

#[test]
fn unresolved_field_type() {
    let (_dir, mut task) = scratch_project(&[("p/A.java", "package p; import q.Gone; class A { Gone g; }"), ("p/Out.java", "class Out {}")]);
    task.input_class_names = vec!["p.A".into()];
    let index = ProjectIndex::build(&task, &ClassifierConfig::default()).unwrap();
    let cmap = ccci_core::classifier::classify_in(&task, &index).unwrap();
    assert!(resolve_hierarchy(&["p.A".to_string()], &cmap, &index, &HierarchyConfig::default()).is_err());
    let lenient = HierarchyConfig { unresolved_as_warning: true, ..Default::default() };
    assert_eq!(resolve_hierarchy(&["p.A".to_string()], &cmap, &index, &lenient).unwrap().nodes.len(), 1);
}

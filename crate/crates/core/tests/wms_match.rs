use std::fs;
use std::path::{Path, PathBuf};

use ccci_core::classifier::{classify_in, ClassifierConfig, ProjectIndex};
use ccci_core::matcher::{generate_definitions, match_fields, select_concepts, MatchKind, MatcherConfig, TrigramEmbedder};
use ccci_core::model::{parse_task_definition, ClassGraph};
use ccci_core::retriever::{resolve_hierarchy, HierarchyConfig};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn wms() -> (ClassGraph, Vec<String>, String) {
    let path = fixtures().join("wms/wms.ccci-task");
    let task = parse_task_definition(&fs::read_to_string(&path).unwrap()).unwrap().resolve_paths(path.parent().unwrap());
    let index = ProjectIndex::build(&task, &ClassifierConfig::default()).unwrap();
    let cmap = classify_in(&task, &index).unwrap();
    let mut roots: Vec<String> = task.all_class_names().map(|n| cmap.qualified_for(n).unwrap().to_string()).collect();
    let graph = resolve_hierarchy(&roots, &cmap, &index, &HierarchyConfig::default()).unwrap();
    let output = roots.pop().unwrap();
    (graph, roots, output)
}

const MERGED_TABLE: &str = "\
Input Field                        → Output Field
InventoryInfoDTO.warehouseName     → InventoryResponseDTO.warehouseName
InventoryInfoDTO.inventoryName     → InventoryResponseDTO.name
InventoryInfoDTO.availableQuantity → InventoryResponseDTO.availableQuantity
SKUInfoDTO.skuName                 → InventoryResponseDTO.sku.skuName
SKUInfoDTO.user.name               → InventoryResponseDTO.sku.ownName
";

#[test]
fn merged_table_rows() {
    let (graph, inputs, output) = wms();
    let table = match_fields(&graph, &inputs, &output, &TrigramEmbedder::default(), &MatcherConfig::default()).unwrap();
    assert_eq!(table.to_string(), MERGED_TABLE);
    assert!(table.unmatched_outputs.is_empty());
    let kinds: Vec<MatchKind> = table.entries.iter().map(|e| e.kind).collect();
    assert_eq!(kinds, [MatchKind::Exact, MatchKind::Semantic, MatchKind::Exact, MatchKind::Exact, MatchKind::Semantic]);
    for e in &table.entries {
        assert!(e.score >= 0.5 && e.score <= 1.0);
    }
}

#[test]
fn definitions_and_concepts() {
    let (graph, _, _) = wms();
    let concepts = select_concepts(&graph);
    // UserDTO reached as a root and through SKUInfoDTO.user appears once
    assert_eq!(concepts.iter().filter(|c| c.ends_with(".UserDTO")).count(), 1);
    assert_eq!(concepts.len(), graph.nodes.len());
    let defs = generate_definitions(&concepts, &graph);
    let info = defs.iter().find(|d| d.concept.ends_with("InventoryInfoDTO")).unwrap();
    assert!(info.definition_text.contains("inventoryName : String : Name of the inventory"));
    let user = defs.iter().find(|d| d.concept.ends_with("UserDTO")).unwrap();
    assert_eq!(user.definition_text, "UserDTO\nname : String\ncontactInfo : String");
    assert_eq!(generate_definitions(&concepts, &graph), defs);
}

#[test]
fn prompt_carries_every_mapping() {
    use ccci_core::constructor::{build_prompt, PromptConfig};
    use ccci_core::model::parse_db_relations;
    let path = fixtures().join("wms/wms.ccci-task");
    let task = parse_task_definition(&fs::read_to_string(&path).unwrap()).unwrap().resolve_paths(path.parent().unwrap());
    let (graph, inputs, output) = wms();
    let table = match_fields(&graph, &inputs, &output, &TrigramEmbedder::default(), &MatcherConfig::default()).unwrap();
    let rel = parse_db_relations(&fs::read_to_string(fixtures().join("wms/relations.ccci-relations")).unwrap()).unwrap();
    let doc = build_prompt(&task, &table, &graph, Some(&rel), &PromptConfig::default()).unwrap();
    let output_section = "\
Output DTO:
  - InventoryResponseDTO:
      - warehouseName → InventoryInfoDTO.warehouseName
      - name → InventoryInfoDTO.inventoryName
      - availableQuantity → InventoryInfoDTO.availableQuantity
      - sku.skuName → SKUInfoDTO.skuName
      - sku.ownName → SKUInfoDTO.user.name
";
    assert!(doc.user_text.contains(output_section), "{}", doc.user_text);
    assert!(doc.user_text.starts_with(
        "Input DTOs:\n  - InventoryInfoDTO: [warehouseName, inventoryName, availableQuantity]\n  - SKUInfoDTO: [skuName]\n  - UserDTO: [name]\n"
    ));
    for e in &table.entries {
        let arrow = format!("- {} → {}\n", e.output.relative(), e.input);
        assert_eq!(doc.user_text.matches(&arrow).count(), 1);
    }
    assert!(doc.system_text.contains("1. Use BeanUtils.copyProperties for fields with identical names."));
    assert!(doc.system_text.contains("2. Manually map fields with different names but similar semantics."));
    assert!(doc.user_text.contains("  inventoryName:Name of the inventory:String\n"));
    assert!(doc.user_text.contains("Database Relations:\nWarehouse Domain:\n"));
}

//! Prompt documents for the completion model.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::matcher::{MappingTable, MatchKind};
use crate::model::{format_db_relations, simple_name, ClassGraph, FieldPath, RelationGraph, SubjectLanguage, TaskDefinition};

pub const TASK_LINE: &str = "Task: Map input DTOs to the output DTO.";
pub const UNMAPPED_HEADER: &str = "Unmapped (decide or leave null):";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("prompt needs about {estimate} tokens, budget is {budget}")]
    TokenBudgetExceeded { estimate: usize, budget: usize },
    #[error("cannot write prompt dump {path}: {message}")]
    Io { path: PathBuf, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptDocument {
    pub system_text: String,
    pub user_text: String,
    pub token_estimate: usize,
    pub rules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptConfig {
    /// Library call named in the bulk-copy rule.
    pub bulk_copy_helper: String,
    pub input_budget: usize,
    /// Tokens held back from the input budget.
    pub reserve: usize,
}

impl Default for PromptConfig {
    fn default() -> Self {
        PromptConfig { bulk_copy_helper: "BeanUtils.copyProperties".into(), input_budget: 4096, reserve: 256 }
    }
}

impl PromptConfig {
    pub fn budget(&self) -> usize {
        self.input_budget.saturating_sub(self.reserve)
    }
}

/// ceil(chars / 4)
pub fn estimate_tokens(text: &str) -> usize {
    text.chars().count().div_ceil(4)
}

/// The parameter name a generated script uses for an input: the leading
/// capital run is lowercased, keeping the capital that starts the next word
/// (`SKUInfoDTO` gives `skuInfoDTO`).
pub fn variable_name(class_name: &str) -> String {
    let chars: Vec<char> = simple_name(class_name).chars().collect();
    let run = chars.iter().take_while(|c| c.is_uppercase()).count();
    let lower = if run > 1 && chars.get(run).is_some_and(|c| c.is_lowercase()) { run - 1 } else { run.max(1) };
    chars.iter().enumerate().flat_map(|(i, c)| if i < lower { c.to_lowercase().collect::<Vec<_>>() } else { vec![*c] }).collect()
}

/// One block per class in breadth-first order:
///
/// ```text
/// - Entity:Name of the inventory:com.x.Inventory
///   Fields:
///   id:primary key:long
/// ```
pub fn render_entity_context(graph: &ClassGraph) -> String {
    let mut out = String::new();
    for name in graph.bfs_order() {
        let node = &graph.nodes[name];
        match &node.comment {
            Some(c) => {
                let _ = writeln!(out, "- Entity:{c}:{}", node.qualified_name);
            }
            None => {
                let _ = writeln!(out, "- Entity: {}", node.qualified_name);
            }
        }
        out.push_str("  Fields:\n");
        for f in &node.fields {
            let _ = writeln!(out, "  {}:{}:{}", f.name, f.comment.as_deref().unwrap_or(""), f.declared_type.short_display());
        }
    }
    out
}

fn system_text(task: &TaskDefinition, rules: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{TASK_LINE}");
    let _ = writeln!(
        s,
        "Write {} statements that build the output DTO from the input DTOs. Each input is available as a variable named after its class in lowerCamelCase. Finish by returning the output object. Answer with a single fenced code block.",
        match task.subject_language {
            SubjectLanguage::Java => "Java",
        }
    );
    s.push_str("Rules:\n");
    for (i, r) in rules.iter().enumerate() {
        let _ = writeln!(s, "  {}. {r}", i + 1);
    }
    s
}

fn finish(system_text: String, user_text: String, rules: Vec<String>, cfg: &PromptConfig) -> Result<PromptDocument, ConstructError> {
    let token_estimate = estimate_tokens(&system_text) + estimate_tokens(&user_text);
    let budget = cfg.budget();
    if token_estimate > budget {
        return Err(ConstructError::TokenBudgetExceeded { estimate: token_estimate, budget });
    }
    Ok(PromptDocument { system_text, user_text, token_estimate, rules })
}

/// Input-side path minus its terminal field, rendered from the root's simple name.
fn parent_of(path: &FieldPath) -> String {
    let mut p = simple_name(&path.class_name).to_string();
    for s in &path.segments[..path.segments.len().saturating_sub(1)] {
        p.push('.');
        p.push_str(s);
    }
    p
}

pub fn build_prompt(task: &TaskDefinition, table: &MappingTable, graph: &ClassGraph, relations: Option<&RelationGraph>, cfg: &PromptConfig) -> Result<PromptDocument, ConstructError> {
    let mut rules = vec![
        format!("Use {} for fields with identical names.", cfg.bulk_copy_helper),
        "Manually map fields with different names but similar semantics.".to_string(),
        "Avoid redundant operations and unnecessary class declarations.".to_string(),
    ];
    rules.extend(task.additional_rules.iter().cloned());
    let system = system_text(task, &rules);

    let mut user = String::new();

    // input fields grouped by the class that declares them
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    for e in &table.entries {
        let owner = e.input.resolve(graph).map(|c| c.simple_name.clone()).unwrap_or_else(|| simple_name(&e.input.class_name).to_string());
        let field = e.input.terminal().to_string();
        match groups.iter_mut().find(|(o, _)| *o == owner) {
            Some((_, fs)) if !fs.contains(&field) => fs.push(field),
            Some(_) => {}
            None => groups.push((owner, vec![field])),
        }
    }
    for input in &task.input_class_names {
        let s = simple_name(input).to_string();
        if !groups.iter().any(|(o, _)| *o == s) {
            groups.push((s, Vec::new()));
        }
    }
    user.push_str("Input DTOs:\n");
    for (owner, fields) in &groups {
        let _ = writeln!(user, "  - {owner}: [{}]", fields.join(", "));
    }

    user.push_str("Output DTO:\n");
    let _ = writeln!(user, "  - {}:", simple_name(&task.output_class_name));
    for e in &table.entries {
        let _ = writeln!(user, "      - {} → {}", e.output.relative(), e.input);
    }

    let mut bulk: Vec<((String, String), Vec<String>)> = Vec::new();
    for e in table.entries.iter().filter(|e| e.kind == MatchKind::Exact) {
        let key = (parent_of(&e.input), parent_of(&e.output));
        let field = e.output.terminal().to_string();
        match bulk.iter_mut().find(|(k, _)| *k == key) {
            Some((_, fs)) => fs.push(field),
            None => bulk.push((key, vec![field])),
        }
    }
    if !bulk.is_empty() {
        let _ = writeln!(user, "Bulk copy ({}):", cfg.bulk_copy_helper);
        for ((from, to), fields) in &bulk {
            let _ = writeln!(user, "  - {from} → {to}: [{}]", fields.join(", "));
        }
    }

    if !table.unmatched_outputs.is_empty() {
        let _ = writeln!(user, "{UNMAPPED_HEADER}");
        for u in &table.unmatched_outputs {
            let _ = writeln!(user, "  - {}", u.relative());
        }
    }

    user.push_str("Entity Details:\n");
    user.push_str(&render_entity_context(graph));

    if let Some(r) = relations {
        user.push_str("Database Relations:\n");
        user.push_str(&format_db_relations(r));
    }

    finish(system, user, rules, cfg)
}

/// The task as a developer would state it without any retrieved context:
/// class names and the user's own rules only.
pub fn build_original_prompt(task: &TaskDefinition, cfg: &PromptConfig) -> Result<PromptDocument, ConstructError> {
    let rules = task.additional_rules.clone();
    let system = system_text(task, &rules);
    let mut user = String::from("Input DTOs:\n");
    for i in &task.input_class_names {
        let _ = writeln!(user, "  - {}", simple_name(i));
    }
    user.push_str("Output DTO:\n");
    let _ = writeln!(user, "  - {}", simple_name(&task.output_class_name));
    finish(system, user, rules, cfg)
}

/// Writes `<out>.system.txt` and `<out>.user.txt`.
pub fn write_prompt_dump(doc: &PromptDocument, out: &Path) -> Result<(PathBuf, PathBuf), ConstructError> {
    let with_suffix = |s: &str| {
        let mut p = out.as_os_str().to_owned();
        p.push(s);
        PathBuf::from(p)
    };
    let (sys, usr) = (with_suffix(".system.txt"), with_suffix(".user.txt"));
    for (p, text) in [(&sys, &doc.system_text), (&usr, &doc.user_text)] {
        std::fs::write(p, text).map_err(|e| ConstructError::Io { path: p.clone(), message: e.to_string() })?;
    }
    Ok((sys, usr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::MappingEntry;
    use crate::model::{ClassInfo, Edge, FieldInfo, Origin, TypeRef};

    fn local() -> Origin {
        Origin::Local("X.java".into())
    }

    fn graph() -> ClassGraph {
        let mut inv = ClassInfo::new("com.xx.Inventory", local()).with_fields(vec![
            FieldInfo::new("id", TypeRef::named("long")).with_comment("primary key"),
            FieldInfo::new("inventoryName", TypeRef::named("java.lang.String")).with_comment("name of inventory"),
            FieldInfo::new("sku", TypeRef::named("com.xx.SkuDTO")),
        ]);
        inv.comment = Some("Inventory Info DTO".into());
        let sku = ClassInfo::new("com.xx.SkuDTO", local()).with_fields(vec![FieldInfo::new("ownName", TypeRef::named("java.lang.String"))]);
        let out = ClassInfo::new("com.xx.Resp", local()).with_fields(vec![FieldInfo::new("name", TypeRef::named("java.lang.String")), FieldInfo::new("note", TypeRef::named("java.lang.String"))]);
        let mut g = ClassGraph::default();
        for c in [inv, sku, out] {
            g.nodes.insert(c.qualified_name.clone(), c);
        }
        g.roots = vec!["com.xx.Inventory".into(), "com.xx.Resp".into()];
        g.edges.push(Edge { owner: "com.xx.Inventory".into(), field: "sku".into(), child: "com.xx.SkuDTO".into() });
        g
    }

    fn task() -> TaskDefinition {
        TaskDefinition {
            project_root: ".".into(),
            dependency_archives: vec![],
            input_class_names: vec!["com.xx.Inventory".into()],
            output_class_name: "com.xx.Resp".into(),
            additional_rules: vec!["Keep null checks.".into()],
            subject_language: Default::default(),
        }
    }

    fn table() -> MappingTable {
        MappingTable {
            entries: vec![MappingEntry {
                input: FieldPath::new("com.xx.Inventory", vec!["inventoryName".into()]),
                output: FieldPath::new("com.xx.Resp", vec!["name".into()]),
                kind: MatchKind::Semantic,
                score: 0.7,
            }],
            unmatched_outputs: vec![FieldPath::new("com.xx.Resp", vec!["note".into()])],
        }
    }

    #[test]
    fn entity_context_blocks() {
        let text = render_entity_context(&graph());
        assert!(text.contains("- Entity:Inventory Info DTO:com.xx.Inventory\n  Fields:\n  id:primary key:long\n"));
        assert!(text.contains("  inventoryName:name of inventory:String\n"));
        assert!(text.contains("  sku::com.xx.SkuDTO\n"));
        assert!(text.contains("- Entity: com.xx.SkuDTO\n"));
        // roots first, then the next layer
        let pos = |s: &str| text.find(s).unwrap();
        assert!(pos("com.xx.Inventory") < pos("Entity: com.xx.Resp") && pos("Entity: com.xx.Resp") < pos("Entity: com.xx.SkuDTO"));
        assert_eq!(text, render_entity_context(&graph()));
    }

    #[test]
    fn entity_context_single_empty_node() {
        let mut g = ClassGraph::default();
        g.nodes.insert("a.B".into(), ClassInfo::new("a.B", local()));
        g.roots = vec!["a.B".into()];
        assert_eq!(render_entity_context(&g), "- Entity: a.B\n  Fields:\n");
    }

    #[test]
    fn prompt_sections() {
        let doc = build_prompt(&task(), &table(), &graph(), None, &PromptConfig::default()).unwrap();
        assert!(doc.system_text.starts_with(TASK_LINE));
        assert!(doc.system_text.contains("  1. Use BeanUtils.copyProperties for fields with identical names.\n"));
        assert!(doc.system_text.contains("  2. Manually map fields with different names but similar semantics.\n"));
        assert_eq!(doc.rules.last().unwrap(), "Keep null checks.");
        assert!(doc.user_text.contains("  - Inventory: [inventoryName]\n"));
        assert!(doc.user_text.contains("  - Resp:\n      - name → Inventory.inventoryName\n"));
        assert!(doc.user_text.contains(&format!("{UNMAPPED_HEADER}\n  - note\n")));
        assert!(!doc.user_text.contains("Bulk copy"));
        assert!(!doc.user_text.contains("Database Relations"));
        assert_eq!(doc.token_estimate, doc.system_text.chars().count().div_ceil(4) + doc.user_text.chars().count().div_ceil(4));
        assert_eq!(doc, build_prompt(&task(), &table(), &graph(), None, &PromptConfig::default()).unwrap());
    }

    #[test]
    fn relations_only_add_a_section() {
        let rel = crate::model::parse_db_relations("Warehouse Domain:\n- warehouse (Warehouse)\n  |-> warehouse_area (Area): 1:N relationship\n").unwrap();
        let without = build_prompt(&task(), &table(), &graph(), None, &PromptConfig::default()).unwrap();
        let with = build_prompt(&task(), &table(), &graph(), Some(&rel), &PromptConfig::default()).unwrap();
        assert_eq!(with.system_text, without.system_text);
        assert_eq!(with.user_text, format!("{}Database Relations:\n{}", without.user_text, format_db_relations(&rel)));
    }

    #[test]
    fn budget_enforced() {
        let mut g = graph();
        // each field line is 3 + 30 + 1 + 0 + 1 + 6 + 1 = 42 chars, so 400 lines exceed 3840 tokens
        let fields = (0..400).map(|i| FieldInfo::new(format!("f{i:029}"), TypeRef::named("java.lang.String"))).collect();
        g.nodes.get_mut("com.xx.SkuDTO").unwrap().fields = fields;
        let err = build_prompt(&task(), &table(), &g, None, &PromptConfig::default()).unwrap_err();
        match err {
            ConstructError::TokenBudgetExceeded { estimate, budget } => {
                assert_eq!(budget, 3840);
                assert!(estimate > 400 * 42 / 4);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn original_prompt_has_no_context() {
        let doc = build_original_prompt(&task(), &PromptConfig::default()).unwrap();
        assert_eq!(doc.user_text, "Input DTOs:\n  - Inventory\nOutput DTO:\n  - Resp\n");
        assert_eq!(doc.rules, ["Keep null checks."]);
        assert!(!doc.system_text.contains("copyProperties"));
    }

    #[test]
    fn dump_files() {
        let dir = tempfile::tempdir().unwrap();
        let doc = build_original_prompt(&task(), &PromptConfig::default()).unwrap();
        let (s, u) = write_prompt_dump(&doc, &dir.path().join("p")).unwrap();
        assert!(s.ends_with("p.system.txt") && u.ends_with("p.user.txt"));
        assert_eq!(std::fs::read_to_string(u).unwrap(), doc.user_text);
    }

    #[test]
    fn variable_names() {
        assert_eq!(variable_name("com.x.SKUInfoDTO"), "skuInfoDTO");
        assert_eq!(variable_name("UserDTO"), "userDTO");
        assert_eq!(variable_name("DTO"), "dto");
        assert_eq!(variable_name("x"), "x");
        assert_eq!(variable_name("InventoryInfoDTO"), "inventoryInfoDTO");
    }
}

//! The `.ccci-task` file: a sectioned plain-text task definition.
//!
//! ```text
//! Task Overview:
//! Given the following project ./project
//! Generate Java code to transform Input DTOs into Output DTO.
//! - Dependency: libs/user-api.jar
//!
//! Input/Output Description:
//! - Input: com.wms.inventory.InventoryInfoDTO
//! - Output: InventoryResponseDTO
//!
//! Additional Context:
//! Use BeanUtils.copyProperties for identical fields
//! ```
//!
//! Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::PathBuf;

use super::types::{SubjectLanguage, TaskDefinition};
use super::ModelError;

const OVERVIEW: &str = "Task Overview";
const IO: &str = "Input/Output Description";
const CONTEXT: &str = "Additional Context";

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Overview,
    Io,
    Context,
}

fn section_header(line: &str) -> Option<&str> {
    if line.starts_with(char::is_whitespace) || line.starts_with('-') {
        return None;
    }
    let head = line.trim_end().strip_suffix(':')?;
    (!head.contains(':')).then_some(head.trim())
}

fn is_class_name(s: &str) -> bool {
    !s.is_empty()
        && s.split('.').all(|part| {
            let mut chars = part.chars();
            chars.next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
                && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
        })
}

fn strip_link(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap_or(s)
}

pub fn parse_task_definition(text: &str) -> Result<TaskDefinition, ModelError> {
    let mut section = None;
    let mut project_root = None;
    let mut archives = Vec::new();
    let mut inputs = Vec::new();
    let mut output: Option<String> = None;
    let mut rules = Vec::new();
    let mut language = SubjectLanguage::Java;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(header) = section_header(raw) {
            section = Some(match header {
                OVERVIEW => Section::Overview,
                IO => Section::Io,
                CONTEXT => Section::Context,
                other => return Err(ModelError::MalformedSection { line: line_no, header: other.to_string() }),
            });
            continue;
        }
        let Some(current) = section else {
            return Err(ModelError::MalformedSection { line: line_no, header: String::new() });
        };
        match current {
            Section::Overview => {
                if let Some(rest) = trimmed.strip_prefix("Given the following project") {
                    project_root = Some(PathBuf::from(strip_link(rest)));
                } else if let Some(rest) = trimmed.strip_prefix("Project:") {
                    project_root = Some(PathBuf::from(strip_link(rest)));
                } else if let Some(rest) = trimmed.strip_prefix("- Dependency:") {
                    archives.push(PathBuf::from(rest.trim()));
                } else if let Some(rest) = trimmed.strip_prefix("Language:") {
                    language = match rest.trim().to_ascii_lowercase().as_str() {
                        "java" => SubjectLanguage::Java,
                        other => return Err(ModelError::UnsupportedLanguage { line: line_no, language: other.to_string() }),
                    };
                }
                // anything else is task prose
            }
            Section::Io => {
                let entry = trimmed.strip_prefix("- ").unwrap_or(trimmed);
                let (target, name) = if let Some(n) = entry.strip_prefix("Input:") {
                    (false, n.trim())
                } else if let Some(n) = entry.strip_prefix("Output:") {
                    (true, n.trim())
                } else {
                    continue;
                };
                if !is_class_name(name) {
                    return Err(ModelError::InvalidClassName { line: line_no, text: name.to_string() });
                }
                if target {
                    if output.is_some() {
                        return Err(ModelError::MultipleOutputs { line: line_no });
                    }
                    output = Some(name.to_string());
                } else {
                    inputs.push(name.to_string());
                }
            }
            Section::Context => rules.push(trimmed.to_string()),
        }
    }

    let output_class_name = output.ok_or(ModelError::MissingOutput)?;
    if inputs.is_empty() {
        return Err(ModelError::MissingInputs);
    }
    Ok(TaskDefinition {
        project_root: project_root.unwrap_or_else(|| PathBuf::from(".")),
        dependency_archives: archives,
        input_class_names: inputs,
        output_class_name,
        additional_rules: rules,
        subject_language: language,
    })
}

/// Canonical text form; `parse_task_definition` of the result yields an equal value.
pub fn format_task_definition(task: &TaskDefinition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{OVERVIEW}:");
    let _ = writeln!(out, "Given the following project {}", task.project_root.display());
    let _ = writeln!(out, "Language: {}", task.subject_language.name());
    let _ = writeln!(out, "Generate code to transform Input DTOs into Output DTO.");
    for a in &task.dependency_archives {
        let _ = writeln!(out, "- Dependency: {}", a.display());
    }
    let _ = writeln!(out, "\n{IO}:");
    for i in &task.input_class_names {
        let _ = writeln!(out, "- Input: {i}");
    }
    let _ = writeln!(out, "- Output: {}", task.output_class_name);
    let _ = writeln!(out, "\n{CONTEXT}:");
    for r in &task.additional_rules {
        let _ = writeln!(out, "{r}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LISTING_3: &str = "\
# inventory response mapping
Task Overview:
Given the following project <project>
Generate Java code to transform Input DTOs into Output DTO.
- Dependency: ../archives/goods-api.jar
- Dependency: ../archives/user-api.jar

Input/Output Description:
- Input: InventoryInfoDTO
- Input: SKUInfoDTO
- Input: UserDTO
- Input: WarehouseDTO
- Output: InventoryResponseDTO

Additional Context:
Use BeanUtils.copyProperties for identical fields
# ignored
Keep null checks for nested objects
";

    #[test]
    fn listing_three_shape() {
        let t = parse_task_definition(LISTING_3).unwrap();
        assert_eq!(t.input_class_names, vec!["InventoryInfoDTO", "SKUInfoDTO", "UserDTO", "WarehouseDTO"]);
        assert_eq!(t.output_class_name, "InventoryResponseDTO");
        assert_eq!(t.project_root, PathBuf::from("project"));
        assert_eq!(t.dependency_archives.len(), 2);
        assert_eq!(
            t.additional_rules,
            vec!["Use BeanUtils.copyProperties for identical fields", "Keep null checks for nested objects"]
        );
    }

    #[test]
    fn empty_additional_context() {
        let t = parse_task_definition("Input/Output Description:\n- Input: A\n- Output: B\nAdditional Context:\n").unwrap();
        assert!(t.additional_rules.is_empty());
    }

    #[test]
    fn missing_output() {
        assert_eq!(parse_task_definition("Input/Output Description:\n- Input: A\n"), Err(ModelError::MissingOutput));
    }

    #[test]
    fn missing_inputs() {
        assert_eq!(parse_task_definition("Input/Output Description:\n- Output: A\n"), Err(ModelError::MissingInputs));
    }

    #[test]
    fn unknown_header() {
        let err = parse_task_definition("Task Overview:\nOutputs:\n").unwrap_err();
        assert_eq!(err, ModelError::MalformedSection { line: 2, header: "Outputs".into() });
    }

    #[test]
    fn prose_input_is_rejected() {
        let err = parse_task_definition("Input/Output Description:\n- Input: Multiple DTO objects\n- Output: B\n").unwrap_err();
        assert!(matches!(err, ModelError::InvalidClassName { line: 2, .. }));
    }

    #[test]
    fn roundtrip() {
        let t = parse_task_definition(LISTING_3).unwrap();
        assert_eq!(parse_task_definition(&format_task_definition(&t)).unwrap(), t);
    }
}

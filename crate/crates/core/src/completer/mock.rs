use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{ChatProvider, ChatRequest, CompleteError};
use crate::constructor::variable_name;
use crate::model::{simple_name, TypeRef};

/// Offline stand-in for a model. Reads the mapping lines back out of the
/// prompt and expands them into a constructor call, bulk copies, one setter
/// per remaining entry and a return.
#[derive(Debug, Clone)]
pub struct MockProvider {
    pub bulk_copy_helper: String,
}

impl Default for MockProvider {
    fn default() -> Self {
        MockProvider { bulk_copy_helper: "BeanUtils.copyProperties".into() }
    }
}

#[derive(Debug, Default)]
struct ParsedPrompt {
    inputs: Vec<String>,
    output: String,
    arrows: Vec<(Vec<String>, Vec<String>)>,
    bulk: Vec<(Vec<String>, Vec<String>)>,
    /// simple class name → field → type
    entities: BTreeMap<String, BTreeMap<String, String>>,
}

fn path(text: &str) -> Vec<String> {
    text.trim().split('.').map(str::to_string).collect()
}

fn item(line: &str) -> Option<&str> {
    line.trim_start().strip_prefix("- ")
}

fn parse(user: &str) -> ParsedPrompt {
    let mut p = ParsedPrompt::default();
    let mut section = "";
    let mut entity: Option<String> = None;
    for line in user.lines() {
        if !line.starts_with(' ') && !line.starts_with('-') && line.ends_with(':') {
            section = line;
            continue;
        }
        match section {
            "Input DTOs:" => {
                if let Some(it) = item(line) {
                    p.inputs.push(it.split(':').next().unwrap_or(it).trim().to_string());
                }
            }
            "Output DTO:" => {
                let Some(it) = item(line) else { continue };
                if let Some((out, inp)) = it.split_once(" → ") {
                    p.arrows.push((path(out), path(inp)));
                } else {
                    p.output = it.trim_end_matches(':').trim().to_string();
                }
            }
            s if s.starts_with("Bulk copy") => {
                if let Some((pair, _)) = item(line).and_then(|it| it.split_once(": [")) {
                    if let Some((from, to)) = pair.split_once(" → ") {
                        p.bulk.push((path(from), path(to)));
                    }
                }
            }
            "Entity Details:" => {
                if let Some(rest) = line.strip_prefix("- Entity:") {
                    let qualified = rest.rsplit(':').next().unwrap_or(rest).trim();
                    entity = Some(simple_name(qualified).to_string());
                } else if let (Some(e), Some(f)) = (&entity, line.strip_prefix("  ")) {
                    if f == "Fields:" {
                        continue;
                    }
                    let mut parts = f.splitn(2, ':');
                    if let (Some(name), Some(rest)) = (parts.next(), parts.next()) {
                        let ty = rest.rsplit(':').next().unwrap_or("").to_string();
                        p.entities.entry(e.clone()).or_default().insert(name.to_string(), ty);
                    }
                }
            }
            _ => {}
        }
    }
    p
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

struct Expander<'p> {
    p: &'p ParsedPrompt,
    /// output sub-path → (variable, simple type)
    objects: Vec<(Vec<String>, String, String)>,
    used: Vec<String>,
}

impl<'p> Expander<'p> {
    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut n = 2;
        while self.used.contains(&name) {
            name = format!("{base}{n}");
            n += 1;
        }
        self.used.push(name.clone());
        name
    }

    /// Type of field `seg` on class `owner`, as a plain class name. Containers
    /// and unknown fields give `None`.
    fn field_class(&self, owner: &str, seg: &str) -> Option<String> {
        let ty = TypeRef::parse(self.p.entities.get(owner)?.get(seg)?)?;
        (ty.args.is_empty() && ty.array_dims == 0 && !ty.is_primitive()).then(|| ty.simple_name().to_string())
    }

    /// The variable holding the object at an output sub-path, creating the
    /// chain of objects down to it on first use.
    fn object(&mut self, sub: &[String], code: &mut String) -> Option<String> {
        if let Some((_, var, _)) = self.objects.iter().find(|(p, _, _)| p == sub) {
            return Some(var.clone());
        }
        let (last, parent) = sub.split_last()?;
        self.object(parent, code)?;
        let owner = self.objects.iter().find(|(p, _, _)| p == parent)?.2.clone();
        let ty = self.field_class(&owner, last)?;
        let var = self.fresh(last);
        let _ = writeln!(code, "{ty} {var} = new {ty}();");
        self.objects.push((sub.to_vec(), var.clone(), ty));
        Some(var)
    }

    /// `skuInfoDTO.getUser().getName()` for `SKUInfoDTO.user.name`.
    fn read(&self, input: &[String]) -> String {
        let mut expr = variable_name(&input[0]);
        let mut owner = input[0].clone();
        for seg in &input[1..] {
            let ty = self.p.entities.get(&owner).and_then(|f| f.get(seg)).map(String::as_str);
            let getter = if ty == Some("boolean") { "is" } else { "get" };
            let _ = write!(expr, ".{getter}{}()", capitalize(seg));
            owner = ty.map(|t| simple_name(t).to_string()).unwrap_or_default();
        }
        expr
    }

    fn expand(mut self, helper: &str) -> String {
        let mut code = String::new();
        let out_ty = self.p.output.clone();
        let resp = self.fresh("response");
        let _ = writeln!(code, "{out_ty} {resp} = new {out_ty}();");
        self.objects.push((Vec::new(), resp.clone(), out_ty));

        let mut copied: Vec<(Vec<String>, Vec<String>)> = Vec::new();
        for (from, to) in &self.p.bulk {
            let Some(dst) = self.object(&to[1..], &mut code) else { continue };
            let _ = writeln!(code, "{helper}({}, {dst});", self.read(from));
            copied.push((from.clone(), to[1..].to_vec()));
        }
        for (out, inp) in &self.p.arrows {
            let (field, parent) = out.split_last().expect("non-empty path");
            let (_, in_parent) = inp.split_last().expect("non-empty path");
            let in_parent = in_parent.to_vec();
            let bulk_done = inp.last() == Some(field) && copied.iter().any(|(f, t)| *f == in_parent && t == parent);
            if bulk_done {
                continue;
            }
            let Some(dst) = self.object(parent, &mut code) else { continue };
            let _ = writeln!(code, "{dst}.set{}({});", capitalize(field), self.read(inp));
        }
        // attach nested objects, innermost first
        let mut nested: Vec<&(Vec<String>, String, String)> = self.objects.iter().filter(|(p, _, _)| !p.is_empty()).collect();
        nested.sort_by_key(|(p, _, _)| std::cmp::Reverse(p.len()));
        for (p, var, _) in nested {
            let (last, parent) = p.split_last().expect("nested path");
            let owner = &self.objects.iter().find(|(q, _, _)| q == parent).expect("parent created first").1;
            let _ = writeln!(code, "{owner}.set{}({var});", capitalize(last));
        }
        let _ = writeln!(code, "return {resp};");
        code
    }
}

impl MockProvider {
    pub fn generate(&self, user_text: &str) -> String {
        let p = parse(user_text);
        if p.output.is_empty() {
            return String::new();
        }
        let used = p.inputs.iter().map(|i| variable_name(i)).collect();
        let mut code = if p.arrows.is_empty() && p.bulk.is_empty() {
            // nothing but class names: copy every input wholesale
            let mut c = String::new();
            let _ = writeln!(c, "{0} response = new {0}();", p.output);
            for i in &p.inputs {
                let _ = writeln!(c, "{}({}, response);", self.bulk_copy_helper, variable_name(i));
            }
            c.push_str("return response;\n");
            c
        } else {
            Expander { p: &p, objects: Vec::new(), used }.expand(&self.bulk_copy_helper)
        };
        code.insert_str(0, "```java\n");
        code.push_str("```\n");
        code
    }
}

impl ChatProvider for MockProvider {
    fn name(&self) -> &str {
        "mock"
    }

    fn send(&self, request: &ChatRequest, _: &str) -> Result<String, CompleteError> {
        Ok(self.generate(request.message("user").unwrap_or("")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completer::extract_code;

    const USER: &str = "\
Input DTOs:
  - InventoryInfoDTO: [warehouseName, inventoryName]
  - SKUInfoDTO: [skuName]
  - UserDTO: [name]
Output DTO:
  - InventoryResponseDTO:
      - warehouseName → InventoryInfoDTO.warehouseName
      - name → InventoryInfoDTO.inventoryName
      - sku.skuName → SKUInfoDTO.skuName
      - sku.ownName → SKUInfoDTO.user.name
Bulk copy (BeanUtils.copyProperties):
  - InventoryInfoDTO → InventoryResponseDTO: [warehouseName]
  - SKUInfoDTO → InventoryResponseDTO.sku: [skuName]
Entity Details:
- Entity: com.g.SKUInfoDTO
  Fields:
  skuName::String
  user::com.u.UserDTO
- Entity:view:com.i.InventoryResponseDTO
  Fields:
  name:Inventory name:String
  sku:SKU details:com.i.SKUInfo
- Entity: com.i.SKUInfo
  Fields:
  skuName::String
  ownName::String
";

    #[test]
    fn expands_mappings() {
        let code = extract_code(&MockProvider::default().generate(USER));
        assert_eq!(
            code,
            "\
InventoryResponseDTO response = new InventoryResponseDTO();
BeanUtils.copyProperties(inventoryInfoDTO, response);
SKUInfo sku = new SKUInfo();
BeanUtils.copyProperties(skuInfoDTO, sku);
response.setName(inventoryInfoDTO.getInventoryName());
sku.setOwnName(skuInfoDTO.getUser().getName());
response.setSku(sku);
return response;"
        );
    }

    #[test]
    fn bare_prompt_copies_inputs() {
        let code = extract_code(&MockProvider::default().generate("Input DTOs:\n  - A\n  - B\nOutput DTO:\n  - Out\n"));
        assert_eq!(code, "Out response = new Out();\nBeanUtils.copyProperties(a, response);\nBeanUtils.copyProperties(b, response);\nreturn response;");
    }
}

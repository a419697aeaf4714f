//! ClassInfo from project source files.

use std::path::{Path, PathBuf};

use super::{RetrieveError, SourceUnit};
use crate::model::{ClassInfo, FieldInfo, Origin, TypeRef, PRIMITIVES};
use crate::syntax::decl::{parse_compilation_unit, CompilationUnit, TypeDecl};

/// `java.lang` types that are commonly referenced without an import.
const JAVA_LANG: &[&str] = &[
    "Boolean", "Byte", "Character", "CharSequence", "Class", "Double", "Enum", "Exception", "Float",
    "Integer", "Iterable", "Long", "Number", "Object", "Record", "RuntimeException", "Short", "String",
    "StringBuilder", "Throwable", "Void", "Deprecated", "Override", "SuppressWarnings", "FunctionalInterface",
];

impl SourceUnit {
    pub fn load(path: &Path) -> Result<Self, RetrieveError> {
        let text = std::fs::read_to_string(path).map_err(|e| RetrieveError::io(path, e))?;
        Self::from_text(path.to_path_buf(), text)
    }

    pub fn from_text(path: PathBuf, text: String) -> Result<Self, RetrieveError> {
        let unit = parse_compilation_unit(&text).map_err(|error| RetrieveError::Syntax { path: path.clone(), error })?;
        let declared_classes = unit.all_types().into_iter().map(|(p, _)| p).collect();
        Ok(SourceUnit { path, text, declared_classes })
    }

    /// Package declared by the unit, or the empty string.
    pub fn package(&self) -> String {
        parse_compilation_unit(&self.text).ok().and_then(|u| u.package).unwrap_or_default()
    }
}

/// Qualified binary names of every type the compilation unit declares.
pub fn declared_qualified_names(unit: &CompilationUnit) -> Vec<String> {
    let pkg = unit.package.clone().unwrap_or_default();
    unit.all_types().into_iter().map(|(path, _)| qualify_local(&pkg, &path)).collect()
}

fn qualify_local(pkg: &str, dotted: &str) -> String {
    let binary = dotted.replace('.', "$");
    if pkg.is_empty() { binary } else { format!("{pkg}.{binary}") }
}

pub fn parse_source_class(unit: &SourceUnit, class_name: &str) -> Result<ClassInfo, RetrieveError> {
    parse_source_class_with(unit, class_name, &|_| false)
}

/// As [`parse_source_class`]; `exists` answers whether a qualified name is a
/// known class, used to resolve wildcard imports.
pub fn parse_source_class_with(unit: &SourceUnit, class_name: &str, exists: &dyn Fn(&str) -> bool) -> Result<ClassInfo, RetrieveError> {
    let cu = parse_compilation_unit(&unit.text).map_err(|error| RetrieveError::Syntax { path: unit.path.clone(), error })?;
    let pkg = cu.package.clone().unwrap_or_default();
    // Accept simple, dotted-nested, binary or fully qualified names.
    let mut local = class_name.to_string();
    if !pkg.is_empty() {
        if let Some(rest) = local.strip_prefix(&format!("{pkg}.")) {
            local = rest.to_string();
        }
    }
    let local = local.replace('$', ".");
    let decl = cu
        .find(&local)
        .or_else(|| cu.all_types().into_iter().find(|(_, t)| t.name == local).map(|(_, t)| t))
        .ok_or_else(|| RetrieveError::ClassNotFound { class: class_name.to_string(), path: unit.path.clone() })?;
    let path = cu.all_types().into_iter().find(|(_, t)| std::ptr::eq(*t, decl)).map(|(p, _)| p).unwrap();

    let q = Qualifier { cu: &cu, pkg: &pkg, type_params: &decl.type_params, exists };
    let mut info = ClassInfo::new(qualify_local(&pkg, &path), Origin::Local(unit.path.clone()));
    info.comment = decl.comment.clone();
    info.superclass = decl.superclass.as_ref().map(|s| q.qualify(s).name).filter(|s| s != "java.lang.Object");
    let fields = decl
        .fields
        .iter()
        .filter(|f| !f.is_static)
        .map(|f| {
            let mut fi = FieldInfo::new(f.name.clone(), q.qualify(&f.ty));
            fi.comment = f.comment.clone();
            fi.annotations = f.annotations.iter().map(|a| q.qualify_name(a)).collect();
            fi
        })
        .collect();
    Ok(info.with_fields(fields))
}

struct Qualifier<'a> {
    cu: &'a CompilationUnit,
    pkg: &'a str,
    type_params: &'a [String],
    exists: &'a dyn Fn(&str) -> bool,
}

impl Qualifier<'_> {
    fn qualify(&self, t: &TypeRef) -> TypeRef {
        let name = if t.wildcard.is_some() && t.name == "?" { t.name.clone() } else { self.qualify_name(&t.name) };
        TypeRef { name, args: t.args.iter().map(|a| self.qualify(a)).collect(), array_dims: t.array_dims, wildcard: t.wildcard }
    }

    fn qualify_name(&self, name: &str) -> String {
        if PRIMITIVES.contains(&name) || self.type_params.iter().any(|p| p == name) {
            return name.to_string();
        }
        let (head, tail) = match name.split_once('.') {
            Some((h, t)) => (h, Some(t)),
            None => (name, None),
        };
        let with_tail = |base: String| match tail {
            Some(t) => format!("{base}${}", t.replace('.', "$")),
            None => base,
        };
        if let Some(imp) = self.cu.imports.iter().find(|i| !i.wildcard && !i.is_static && crate::model::simple_name(&i.path) == head) {
            return with_tail(imp.path.clone());
        }
        // a type declared in this unit, possibly nested
        if let Some((path, _)) = self.cu.all_types().into_iter().find(|(p, t): &(String, &TypeDecl)| t.name == head && (p == head || p.ends_with(&format!(".{head}")))) {
            return with_tail(qualify_local(self.pkg, &path));
        }
        if tail.is_some() && head.starts_with(|c: char| c.is_ascii_lowercase()) {
            // already a qualified name
            return name.to_string();
        }
        if tail.is_none() && JAVA_LANG.contains(&head) {
            return format!("java.lang.{head}");
        }
        for imp in self.cu.imports.iter().filter(|i| i.wildcard && !i.is_static) {
            let candidate = format!("{}.{head}", imp.path);
            if (self.exists)(&candidate) {
                return with_tail(candidate);
            }
        }
        with_tail(if self.pkg.is_empty() { head.to_string() } else { format!("{}.{head}", self.pkg) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ContainerKind;

    fn unit(text: &str) -> SourceUnit {
        SourceUnit::from_text(PathBuf::from("Test.java"), text.to_string()).unwrap()
    }

    #[test]
    fn inventory_info_dto() {
        let u = unit(
            "//The inventory information\nclass InventoryInfoDTO {\n    // Name of the inventory\n    String inventoryName;\n    // Stock available\n    int availableQuantity;\n}\n",
        );
        let c = parse_source_class(&u, "InventoryInfoDTO").unwrap();
        assert_eq!(c.comment.as_deref(), Some("The inventory information"));
        let got: Vec<_> = c.fields.iter().map(|f| (f.name.as_str(), f.declared_type.to_string(), f.comment.clone().unwrap())).collect();
        assert_eq!(
            got,
            vec![
                ("inventoryName", "java.lang.String".to_string(), "Name of the inventory".to_string()),
                ("availableQuantity", "int".to_string(), "Stock available".to_string()),
            ]
        );
    }

    #[test]
    fn qualification_rules() {
        let u = unit(
            r#"package com.xx.inv;
import java.util.List;
import java.util.*;
import com.xx.basics.WarehouseArea;
import com.xx.crm.*;

public class Holder<T> extends BaseHolder {
    private static final long serialVersionUID = 1L;
    @NotNull private List<WarehouseArea> areas;
    private Map<String, Integer> counts;
    private OwnerUser owner;
    private Inner inner;
    private Inner.Deep deep;
    private T payload;
    private com.yy.Thing thing;
    private Local local;
    public static class Inner { static class Deep {} }
}
"#,
        );
        let exists = |q: &str| matches!(q, "java.util.Map" | "com.xx.crm.OwnerUser" | "com.xx.crm.NotNull");
        let c = parse_source_class_with(&u, "com.xx.inv.Holder", &exists).unwrap();
        assert_eq!(c.qualified_name, "com.xx.inv.Holder");
        assert_eq!(c.superclass.as_deref(), Some("com.xx.inv.BaseHolder"));
        let types: Vec<_> = c.fields.iter().map(|f| f.declared_type.to_string()).collect();
        assert_eq!(
            types,
            [
                "java.util.List<com.xx.basics.WarehouseArea>",
                "java.util.Map<java.lang.String, java.lang.Integer>",
                "com.xx.crm.OwnerUser",
                "com.xx.inv.Holder$Inner",
                "com.xx.inv.Holder$Inner$Deep",
                "T",
                "com.yy.Thing",
                "com.xx.inv.Local",
            ]
        );
        assert_eq!(c.fields[0].annotations, ["com.xx.crm.NotNull"]);
        assert_eq!(c.fields[0].container_kind, ContainerKind::List);
        assert_eq!(c.fields[0].element_type.as_ref().unwrap().to_string(), "com.xx.basics.WarehouseArea");

        let inner = parse_source_class(&u, "Holder.Inner").unwrap();
        assert_eq!(inner.qualified_name, "com.xx.inv.Holder$Inner");
    }

    #[test]
    fn empty_class_and_missing_class() {
        let u = unit("class Empty {}");
        assert!(parse_source_class(&u, "Empty").unwrap().fields.is_empty());
        assert!(matches!(parse_source_class(&u, "Other"), Err(RetrieveError::ClassNotFound { .. })));
    }

    #[test]
    fn syntax_error_position() {
        let e = SourceUnit::from_text(PathBuf::from("Bad.java"), "class A {\n  int ;\n}".into()).unwrap_err();
        match e {
            RetrieveError::Syntax { error, .. } => assert_eq!((error.line, error.column), (2, 7)),
            other => panic!("{other:?}"),
        }
    }
}

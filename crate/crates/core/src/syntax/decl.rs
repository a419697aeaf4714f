//! Declaration-level parser: package, imports, type declarations and their
//! fields. Method and initializer bodies are skipped as balanced groups.

use super::cursor::Cursor;
use super::lexer::{Token, TokenKind};
use super::SyntaxError;
use crate::model::{TypeRef, Wildcard};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    pub path: String,
    pub wildcard: bool,
    pub is_static: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    /// As written in the source; not yet qualified.
    pub ty: TypeRef,
    pub annotations: Vec<String>,
    pub comment: Option<String>,
    pub is_static: bool,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    pub kind: TypeKind,
    pub type_params: Vec<String>,
    pub superclass: Option<TypeRef>,
    pub comment: Option<String>,
    pub annotations: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub nested: Vec<TypeDecl>,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompilationUnit {
    pub package: Option<String>,
    pub imports: Vec<Import>,
    pub types: Vec<TypeDecl>,
}

impl CompilationUnit {
    /// Find a declared type by simple name or dotted nested path (`Outer.Inner`).
    pub fn find(&self, name: &str) -> Option<&TypeDecl> {
        let mut parts = name.split('.');
        let first = parts.next()?;
        let mut cur = self.types.iter().find(|t| t.name == first)?;
        for p in parts {
            cur = cur.nested.iter().find(|t| t.name == p)?;
        }
        Some(cur)
    }

    /// Every declared type as (dotted nested path, declaration), outer first.
    pub fn all_types(&self) -> Vec<(String, &TypeDecl)> {
        fn walk<'a>(prefix: &str, t: &'a TypeDecl, out: &mut Vec<(String, &'a TypeDecl)>) {
            let path = if prefix.is_empty() { t.name.clone() } else { format!("{prefix}.{}", t.name) };
            out.push((path.clone(), t));
            for n in &t.nested {
                walk(&path, n, out);
            }
        }
        let mut out = Vec::new();
        for t in &self.types {
            walk("", t, &mut out);
        }
        out
    }
}

const MODIFIERS: &[&str] = &[
    "public", "private", "protected", "static", "final", "transient", "volatile", "abstract",
    "synchronized", "native", "strictfp", "default", "sealed", "non-sealed",
];

/// Normalise a comment token to its text: markers and leading `*` removed,
/// javadoc block tags dropped, lines joined with single spaces.
pub fn comment_text(tok: &Token) -> String {
    let raw = tok.text.as_str();
    let body = if let Some(b) = raw.strip_prefix("//") {
        b.to_string()
    } else {
        raw.trim_start_matches("/*").trim_start_matches('*').trim_end_matches("*/").to_string()
    };
    let mut words = Vec::new();
    for line in body.lines() {
        let line = line.trim().trim_start_matches('*').trim();
        if line.starts_with('@') {
            break;
        }
        if !line.is_empty() {
            words.push(line.to_string());
        }
    }
    words.join(" ")
}

/// Comments that sit immediately above `first_line`: the trailing run of
/// `comments` with no blank line between them and the declaration.
fn attached_comment(comments: &[Token], first_line: usize, skip_line: Option<usize>) -> Option<String> {
    let mut next_line = first_line;
    let mut picked = Vec::new();
    for c in comments.iter().rev() {
        if Some(c.line) == skip_line || c.end_line + 1 < next_line {
            break;
        }
        picked.push(c);
        next_line = c.line;
    }
    picked.reverse();
    let text = picked.iter().map(|c| comment_text(c)).filter(|t| !t.is_empty()).collect::<Vec<_>>().join(" ");
    (!text.is_empty()).then_some(text)
}

pub fn parse_compilation_unit(text: &str) -> Result<CompilationUnit, SyntaxError> {
    let mut cur = Cursor::new(text);
    let mut unit = CompilationUnit::default();

    // annotations on the package declaration
    while cur.is("@") && !cur.is_at(1, "interface") {
        skip_annotation(&mut cur)?;
    }
    if cur.eat("package") {
        unit.package = Some(qualified_name(&mut cur)?);
        cur.expect(";")?;
    }
    while cur.eat("import") {
        let is_static = cur.eat("static");
        let mut path = cur.expect_ident()?.text;
        let mut wildcard = false;
        while cur.eat(".") {
            if cur.eat("*") {
                wildcard = true;
                break;
            }
            path.push('.');
            path.push_str(&cur.expect_ident()?.text);
        }
        cur.expect(";")?;
        unit.imports.push(Import { path, wildcard, is_static });
    }
    while !cur.at_end() {
        if cur.eat(";") {
            continue;
        }
        unit.types.push(type_declaration(&mut cur, None)?);
    }
    Ok(unit)
}

fn qualified_name(cur: &mut Cursor) -> Result<String, SyntaxError> {
    let mut name = cur.expect_ident()?.text;
    while cur.is(".") && cur.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier) {
        cur.bump();
        name.push('.');
        name.push_str(&cur.bump().unwrap().text);
    }
    Ok(name)
}

fn skip_annotation(cur: &mut Cursor) -> Result<String, SyntaxError> {
    cur.expect("@")?;
    let name = qualified_name(cur)?;
    if cur.is("(") {
        cur.skip_balanced("(", ")")?;
    }
    Ok(name)
}

/// Annotations and modifiers in any order. Returns (annotations, is_static).
fn modifiers(cur: &mut Cursor) -> Result<(Vec<String>, bool), SyntaxError> {
    let mut annotations = Vec::new();
    let mut is_static = false;
    loop {
        if cur.is("@") && !cur.is_at(1, "interface") {
            annotations.push(skip_annotation(cur)?);
        } else if cur.peek().is_some_and(|t| MODIFIERS.contains(&t.text.as_str()) && t.kind != TokenKind::Literal) {
            // `non-sealed` lexes as three tokens; treat `non` specially
            is_static |= cur.is("static");
            cur.bump();
        } else if cur.is("non") && cur.is_at(1, "-") && cur.is_at(2, "sealed") {
            cur.bump();
            cur.bump();
            cur.bump();
        } else {
            return Ok((annotations, is_static));
        }
    }
}

/// Parse a type as written: qualified name, type arguments, array dims.
pub fn parse_type(cur: &mut Cursor) -> Result<TypeRef, SyntaxError> {
    while cur.is("@") {
        skip_annotation(cur)?;
    }
    if cur.eat("?") {
        let mut bound = None;
        if cur.eat("extends") {
            bound = Some(Wildcard::Extends);
        } else if cur.eat("super") {
            bound = Some(Wildcard::Super);
        }
        return match bound {
            Some(w) => {
                let mut t = parse_type(cur)?;
                t.wildcard = Some(w);
                Ok(t)
            }
            None => Ok(TypeRef::unbounded_wildcard()),
        };
    }
    let head = match cur.peek() {
        Some(t) if t.kind == TokenKind::Identifier || (t.kind == TokenKind::Keyword && crate::model::PRIMITIVES.contains(&t.text.as_str())) => {
            cur.bump().unwrap().text
        }
        _ => return Err(cur.error("expected a type")),
    };
    let mut t = TypeRef::named(head);
    loop {
        if cur.is("<") {
            t.args = type_arguments(cur)?;
        }
        if cur.is(".") && cur.peek_at(1).is_some_and(|n| n.kind == TokenKind::Identifier) {
            cur.bump();
            t.name.push('.');
            t.name.push_str(&cur.bump().unwrap().text);
            t.args.clear();
        } else {
            break;
        }
    }
    while cur.is("[") && cur.is_at(1, "]") {
        cur.bump();
        cur.bump();
        t.array_dims += 1;
    }
    Ok(t)
}

pub fn type_arguments(cur: &mut Cursor) -> Result<Vec<TypeRef>, SyntaxError> {
    cur.expect("<")?;
    let mut args = Vec::new();
    if cur.eat_close_angle() {
        return Ok(args); // diamond
    }
    loop {
        args.push(parse_type(cur)?);
        if cur.eat(",") {
            continue;
        }
        if cur.eat_close_angle() {
            return Ok(args);
        }
        return Err(cur.error("expected `,` or `>` in type arguments"));
    }
}

fn type_parameters(cur: &mut Cursor) -> Result<Vec<String>, SyntaxError> {
    let mut names = Vec::new();
    cur.expect("<")?;
    loop {
        while cur.is("@") {
            skip_annotation(cur)?;
        }
        names.push(cur.expect_ident()?.text);
        if cur.eat("extends") {
            parse_type(cur)?;
            while cur.eat("&") {
                parse_type(cur)?;
            }
        }
        if cur.eat(",") {
            continue;
        }
        if cur.eat_close_angle() {
            return Ok(names);
        }
        return Err(cur.error("expected `,` or `>` in type parameters"));
    }
}

fn type_declaration(cur: &mut Cursor, prev_line: Option<usize>) -> Result<TypeDecl, SyntaxError> {
    let first = cur.peek_code().cloned().ok_or_else(|| cur.error("expected a type declaration"))?;
    let comment = attached_comment(&first.leading_comments, first.token.line, prev_line);
    let (annotations, _) = modifiers(cur)?;
    let kind = if cur.eat("class") {
        TypeKind::Class
    } else if cur.eat("interface") {
        TypeKind::Interface
    } else if cur.eat("enum") {
        TypeKind::Enum
    } else if cur.is("record") && cur.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier) {
        cur.bump();
        TypeKind::Record
    } else if cur.is("@") && cur.is_at(1, "interface") {
        cur.bump();
        cur.bump();
        TypeKind::Annotation
    } else {
        let found = cur.peek().map(|t| t.text.clone()).unwrap_or_default();
        return Err(cur.error(format!("expected class, interface, enum or record, found `{found}`")));
    };
    let name_tok = cur.expect_ident()?;
    let mut decl = TypeDecl {
        name: name_tok.text,
        kind,
        type_params: Vec::new(),
        superclass: None,
        comment,
        annotations,
        fields: Vec::new(),
        nested: Vec::new(),
        line: name_tok.line,
    };
    if cur.is("<") {
        decl.type_params = type_parameters(cur)?;
    }
    if kind == TypeKind::Record {
        record_components(cur, &mut decl)?;
    }
    while !cur.is("{") {
        if cur.eat("extends") {
            let t = parse_type(cur)?;
            if kind == TypeKind::Class {
                decl.superclass = Some(t);
            }
            while cur.eat(",") {
                parse_type(cur)?;
            }
        } else if cur.eat("implements") || cur.eat("permits") {
            parse_type(cur)?;
            while cur.eat(",") {
                parse_type(cur)?;
            }
        } else {
            let found = cur.peek().map(|t| t.text.clone()).unwrap_or_else(|| "end of input".into());
            return Err(cur.error(format!("unexpected `{found}` in type header")));
        }
    }
    class_body(cur, &mut decl)?;
    Ok(decl)
}

fn record_components(cur: &mut Cursor, decl: &mut TypeDecl) -> Result<(), SyntaxError> {
    cur.expect("(")?;
    while !cur.eat(")") {
        let first = cur.peek_code().cloned().ok_or_else(|| cur.error("unterminated record header"))?;
        let (annotations, _) = modifiers(cur)?;
        let ty = parse_type(cur)?;
        let name = cur.expect_ident()?;
        decl.fields.push(FieldDecl {
            name: name.text,
            ty,
            annotations,
            comment: attached_comment(&first.leading_comments, first.token.line, None),
            is_static: false,
            line: name.line,
        });
        if !cur.is(")") {
            cur.expect(",")?;
        }
    }
    Ok(())
}

fn class_body(cur: &mut Cursor, decl: &mut TypeDecl) -> Result<(), SyntaxError> {
    cur.expect("{")?;
    if decl.kind == TypeKind::Enum {
        enum_constants(cur)?;
    }
    loop {
        if cur.eat("}") {
            return Ok(());
        }
        if cur.at_end() {
            return Err(cur.error(format!("unterminated body of `{}`", decl.name)));
        }
        member(cur, decl)?;
    }
}

fn enum_constants(cur: &mut Cursor) -> Result<(), SyntaxError> {
    loop {
        if cur.is("}") {
            return Ok(());
        }
        if cur.eat(";") {
            return Ok(());
        }
        if cur.is("(") {
            cur.skip_balanced("(", ")")?;
        } else if cur.is("{") {
            cur.skip_balanced("{", "}")?;
        } else if cur.is("@") {
            skip_annotation(cur)?;
        } else if cur.bump().is_none() {
            return Err(cur.error("unterminated enum body"));
        }
    }
}

fn member(cur: &mut Cursor, decl: &mut TypeDecl) -> Result<(), SyntaxError> {
    let prev_line = cur.previous().map(|t| t.end_line);
    if cur.eat(";") {
        return Ok(());
    }
    if cur.is("{") {
        return cur.skip_balanced("{", "}");
    }
    if cur.is("static") && cur.is_at(1, "{") {
        cur.bump();
        return cur.skip_balanced("{", "}");
    }
    let start = cur.position();
    let first = cur.peek_code().cloned().ok_or_else(|| cur.error("expected a member"))?;

    // trailing same-line comment of the previous field
    if let (Some(pl), Some(last)) = (prev_line, decl.fields.last_mut()) {
        if last.comment.is_none() && last.line == pl {
            if let Some(c) = first.leading_comments.iter().find(|c| c.line == pl) {
                let text = comment_text(c);
                if !text.is_empty() {
                    last.comment = Some(text);
                }
            }
        }
    }

    let (annotations, is_static) = modifiers(cur)?;
    if cur.is("class") || cur.is("interface") || cur.is("enum") || (cur.is("@") && cur.is_at(1, "interface"))
        || (cur.is("record") && cur.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier) && (cur.is_at(2, "(") || cur.is_at(2, "<")))
    {
        cur.reset(start);
        let nested = type_declaration(cur, prev_line)?;
        decl.nested.push(nested);
        return Ok(());
    }
    if cur.is("<") {
        type_parameters(cur)?; // generic method
    }
    // constructor
    if cur.peek().is_some_and(|t| t.kind == TokenKind::Identifier && t.text == decl.name) && cur.is_at(1, "(") {
        cur.bump();
        return method_rest(cur);
    }
    // compact record constructor
    if decl.kind == TypeKind::Record && cur.peek().is_some_and(|t| t.text == decl.name) && cur.is_at(1, "{") {
        cur.bump();
        return cur.skip_balanced("{", "}");
    }
    let ty = if cur.eat("void") { TypeRef::named("void") } else { parse_type(cur)? };
    let name = cur.expect_ident()?;
    if cur.is("(") {
        return method_rest(cur);
    }
    let comment = attached_comment(&first.leading_comments, first.token.line, prev_line);
    let mut field_name = name;
    loop {
        let mut fty = ty.clone();
        while cur.is("[") && cur.is_at(1, "]") {
            cur.bump();
            cur.bump();
            fty.array_dims += 1;
        }
        decl.fields.push(FieldDecl {
            name: field_name.text.clone(),
            ty: fty,
            annotations: annotations.clone(),
            comment: comment.clone(),
            is_static: is_static || decl.kind == TypeKind::Interface,
            line: field_name.line,
        });
        if cur.eat("=") {
            skip_initializer(cur)?;
        }
        if cur.eat(";") {
            return Ok(());
        }
        cur.expect(",")?;
        field_name = cur.expect_ident()?;
    }
}

fn method_rest(cur: &mut Cursor) -> Result<(), SyntaxError> {
    cur.skip_balanced("(", ")")?;
    loop {
        if cur.is("{") {
            return cur.skip_balanced("{", "}");
        }
        if cur.eat(";") {
            return Ok(());
        }
        if cur.is("@") {
            skip_annotation(cur)?;
            continue;
        }
        if cur.bump().is_none() {
            return Err(cur.error("unterminated method declaration"));
        }
    }
}

fn skip_initializer(cur: &mut Cursor) -> Result<(), SyntaxError> {
    loop {
        match cur.peek() {
            None => return Err(cur.error("unterminated field initializer")),
            Some(t) if t.kind != TokenKind::Literal && (t.text == "," || t.text == ";") => return Ok(()),
            Some(t) if t.kind != TokenKind::Literal && t.text == "(" => cur.skip_balanced("(", ")")?,
            Some(t) if t.kind != TokenKind::Literal && t.text == "{" => cur.skip_balanced("{", "}")?,
            Some(t) if t.kind != TokenKind::Literal && t.text == "[" => cur.skip_balanced("[", "]")?,
            Some(_) => {
                cur.bump();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INVENTORY: &str = "\
package com.wms.inventory;

//The inventory information
class InventoryInfoDTO {
    // Name of the inventory
    String inventoryName;
    // Stock available
    int availableQuantity;
}
";

    #[test]
    fn inventory_dto_example() {
        let unit = parse_compilation_unit(INVENTORY).unwrap();
        assert_eq!(unit.package.as_deref(), Some("com.wms.inventory"));
        let t = unit.find("InventoryInfoDTO").unwrap();
        assert_eq!(t.comment.as_deref(), Some("The inventory information"));
        let f: Vec<_> = t.fields.iter().map(|f| (f.name.as_str(), f.ty.to_string(), f.comment.as_deref())).collect();
        assert_eq!(
            f,
            vec![
                ("inventoryName", "String".to_string(), Some("Name of the inventory")),
                ("availableQuantity", "int".to_string(), Some("Stock available")),
            ]
        );
    }

    #[test]
    fn generics_annotations_and_methods() {
        let src = r#"
import java.util.List;
import java.util.Map;
import com.xx.*;

/**
 * Warehouse view.
 * @author someone
 */
@Data
public class WarehouseVO<T> extends BaseVO<T> implements Serializable {
    private static final long serialVersionUID = 1L;
    @NotNull @Size(max = 10)
    private List<WarehouseArea> areas; // all areas
    private Map<String, List<Map<String, Integer>>> nested;
    private int a, b[] = {1, 2};
    public WarehouseVO() { this.a = 1; }
    public <R> R convert(Function<T, R> f) { return f.apply(null); }
    static { System.out.println("x"); }
    public static class Inner { String x; }
    enum Kind { A, B("x") { void f() {} }; private int code; }
}
"#;
        let unit = parse_compilation_unit(src).unwrap();
        assert_eq!(unit.imports.len(), 3);
        assert!(unit.imports[2].wildcard);
        let t = unit.find("WarehouseVO").unwrap();
        assert_eq!(t.comment.as_deref(), Some("Warehouse view."));
        assert_eq!(t.annotations, vec!["Data"]);
        assert_eq!(t.type_params, vec!["T"]);
        assert_eq!(t.superclass.as_ref().unwrap().to_string(), "BaseVO<T>");
        let names: Vec<_> = t.fields.iter().map(|f| (f.name.as_str(), f.ty.to_string(), f.is_static)).collect();
        assert_eq!(
            names,
            vec![
                ("serialVersionUID", "long".into(), true),
                ("areas", "List<WarehouseArea>".into(), false),
                ("nested", "Map<String, List<Map<String, Integer>>>".into(), false),
                ("a", "int".into(), false),
                ("b", "int[]".into(), false),
            ]
        );
        assert_eq!(t.fields[1].annotations, vec!["NotNull", "Size"]);
        assert_eq!(t.fields[1].comment.as_deref(), Some("all areas"));
        assert_eq!(unit.find("WarehouseVO.Inner").unwrap().fields[0].name, "x");
        assert_eq!(unit.find("WarehouseVO.Kind").unwrap().fields[0].name, "code");
    }

    #[test]
    fn comment_separated_by_blank_line_does_not_attach() {
        let src = "class A {\n    // stray\n\n    int x;\n    int y; // why\n    int z;\n}\n";
        let unit = parse_compilation_unit(src).unwrap();
        let f = &unit.types[0].fields;
        assert_eq!(f[0].comment, None);
        assert_eq!(f[1].comment.as_deref(), Some("why"));
        assert_eq!(f[2].comment, None);
    }

    #[test]
    fn records() {
        let unit = parse_compilation_unit("record Point(int x, /* y axis */ int y) { Point { } }").unwrap();
        let f = &unit.types[0].fields;
        assert_eq!(f.len(), 2);
        assert_eq!(f[1].comment.as_deref(), Some("y axis"));
    }

    #[test]
    fn empty_class() {
        let unit = parse_compilation_unit("class Empty {}").unwrap();
        assert!(unit.types[0].fields.is_empty());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_compilation_unit("class A {\n  int ;\n}").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        let err = parse_compilation_unit("class A {\n  int x;\n").unwrap_err();
        assert!(err.message.contains("unterminated"));
    }
}

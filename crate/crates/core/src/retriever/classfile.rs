//! Binary classfile reader: constant pool, fields table, and the
//! `Signature` / `RuntimeVisibleAnnotations` attributes on each field.

use super::RetrieveError;
use crate::model::{TypeRef, Wildcard};

pub const MAGIC: u32 = 0xCAFE_BABE;
/// Java 21.
pub const DEFAULT_MAX_MAJOR: u16 = 65;

const ACC_STATIC: u16 = 0x0008;
const ACC_SYNTHETIC: u16 = 0x1000;

#[derive(Debug, Clone, PartialEq)]
enum Constant {
    Utf8(String),
    Class(u16),
    Other,
    /// Second slot of a long/double.
    Unusable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawField {
    pub access: u16,
    pub name: String,
    pub descriptor: String,
    pub signature: Option<String>,
    /// Qualified names of runtime-visible annotations, in attribute order.
    pub annotations: Vec<String>,
}

impl RawField {
    pub fn is_static(&self) -> bool {
        self.access & ACC_STATIC != 0
    }

    pub fn is_synthetic(&self) -> bool {
        self.access & ACC_SYNTHETIC != 0
    }

    /// The generic type when a signature is present, else the erased descriptor type.
    pub fn field_type(&self) -> Result<TypeRef, RetrieveError> {
        match &self.signature {
            Some(sig) => parse_field_signature(sig),
            None => parse_field_signature(&self.descriptor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawClass {
    pub major_version: u16,
    pub this_class: String,
    pub super_class: Option<String>,
    pub fields: Vec<RawField>,
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], RetrieveError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or(RetrieveError::TruncatedClassfile { offset: self.pos })?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, RetrieveError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, RetrieveError> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, RetrieveError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }
}

struct Pool(Vec<Constant>);

impl Pool {
    fn utf8(&self, idx: u16) -> Result<&str, RetrieveError> {
        match self.0.get(idx as usize) {
            Some(Constant::Utf8(s)) => Ok(s),
            _ => Err(RetrieveError::MalformedClassfile(format!("constant #{idx} is not a Utf8 entry"))),
        }
    }

    fn class_name(&self, idx: u16) -> Result<String, RetrieveError> {
        match self.0.get(idx as usize) {
            Some(Constant::Class(name)) => Ok(self.utf8(*name)?.replace('/', ".")),
            _ => Err(RetrieveError::MalformedClassfile(format!("constant #{idx} is not a Class entry"))),
        }
    }
}

/// Decode modified UTF-8 (the classfile string encoding).
fn modified_utf8(bytes: &[u8]) -> String {
    let mut units = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i] as u16;
        if b & 0x80 == 0 {
            units.push(b);
            i += 1;
        } else if b & 0xE0 == 0xC0 && i + 1 < bytes.len() {
            units.push(((b & 0x1F) << 6) | (bytes[i + 1] as u16 & 0x3F));
            i += 2;
        } else if i + 2 < bytes.len() {
            units.push(((b & 0x0F) << 12) | ((bytes[i + 1] as u16 & 0x3F) << 6) | (bytes[i + 2] as u16 & 0x3F));
            i += 3;
        } else {
            units.push(0xFFFD);
            i += 1;
        }
    }
    String::from_utf16_lossy(&units)
}

fn read_pool(r: &mut Reader) -> Result<Pool, RetrieveError> {
    let count = r.u16()?;
    let mut pool = vec![Constant::Unusable];
    let mut i = 1;
    while i < count {
        let tag = r.u8()?;
        let c = match tag {
            1 => {
                let len = r.u16()? as usize;
                Constant::Utf8(modified_utf8(r.take(len)?))
            }
            3 | 4 => {
                r.take(4)?;
                Constant::Other
            }
            5 | 6 => {
                r.take(8)?;
                pool.push(Constant::Other);
                i += 1;
                Constant::Unusable
            }
            7 => Constant::Class(r.u16()?),
            8 | 16 | 19 | 20 => {
                r.take(2)?;
                Constant::Other
            }
            9..=12 | 17 | 18 => {
                r.take(4)?;
                Constant::Other
            }
            15 => {
                r.take(3)?;
                Constant::Other
            }
            _ => return Err(RetrieveError::MalformedClassfile(format!("unknown constant tag {tag} at #{i}"))),
        };
        pool.push(c);
        i += 1;
    }
    Ok(Pool(pool))
}

fn skip_element_value(r: &mut Reader) -> Result<(), RetrieveError> {
    match r.u8()? {
        b'B' | b'C' | b'D' | b'F' | b'I' | b'J' | b'S' | b'Z' | b's' | b'c' => {
            r.take(2)?;
        }
        b'e' => {
            r.take(4)?;
        }
        b'@' => {
            skip_annotation(r)?;
        }
        b'[' => {
            for _ in 0..r.u16()? {
                skip_element_value(r)?;
            }
        }
        t => return Err(RetrieveError::MalformedClassfile(format!("unknown element_value tag {:?}", t as char))),
    }
    Ok(())
}

fn skip_annotation(r: &mut Reader) -> Result<u16, RetrieveError> {
    let type_idx = r.u16()?;
    for _ in 0..r.u16()? {
        r.take(2)?;
        skip_element_value(r)?;
    }
    Ok(type_idx)
}

/// Parse the parts of a classfile needed for field extraction.
pub fn parse_classfile(bytes: &[u8], max_major: u16) -> Result<RawClass, RetrieveError> {
    let mut r = Reader { bytes, pos: 0 };
    if bytes.len() < 4 {
        return Err(RetrieveError::BadMagic);
    }
    if r.u32()? != MAGIC {
        return Err(RetrieveError::BadMagic);
    }
    let _minor = r.u16()?;
    let major = r.u16()?;
    if major > max_major {
        return Err(RetrieveError::UnsupportedMajorVersion { found: major, max: max_major });
    }
    let pool = read_pool(&mut r)?;
    let _access = r.u16()?;
    let this_class = pool.class_name(r.u16()?)?;
    let super_idx = r.u16()?;
    let super_class = if super_idx == 0 { None } else { Some(pool.class_name(super_idx)?) };
    let n_interfaces = r.u16()? as usize;
    r.take(2 * n_interfaces)?;

    let mut fields = Vec::new();
    for _ in 0..r.u16()? {
        let access = r.u16()?;
        let name = pool.utf8(r.u16()?)?.to_string();
        let descriptor = pool.utf8(r.u16()?)?.to_string();
        let mut signature = None;
        let mut annotations = Vec::new();
        for _ in 0..r.u16()? {
            let attr_name = pool.utf8(r.u16()?)?;
            let len = r.u32()? as usize;
            let body = r.take(len)?;
            match attr_name {
                "Signature" if len == 2 => {
                    signature = Some(pool.utf8(u16::from_be_bytes([body[0], body[1]]))?.to_string());
                }
                "RuntimeVisibleAnnotations" => {
                    let mut ar = Reader { bytes: body, pos: 0 };
                    for _ in 0..ar.u16()? {
                        let desc = pool.utf8(skip_annotation(&mut ar)?)?;
                        annotations.push(parse_field_signature(desc)?.name);
                    }
                }
                _ => {}
            }
        }
        fields.push(RawField { access, name, descriptor, signature, annotations });
    }
    Ok(RawClass { major_version: major, this_class, super_class, fields })
}

/// Parse a field descriptor or field generic signature into a type reference
/// in reflection text form.
pub fn parse_field_signature(sig: &str) -> Result<TypeRef, RetrieveError> {
    let mut p = SigParser { s: sig.as_bytes(), pos: 0 };
    let t = p.field_type()?;
    if p.pos != p.s.len() {
        return Err(p.err());
    }
    Ok(t)
}

struct SigParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl SigParser<'_> {
    fn err(&self) -> RetrieveError {
        RetrieveError::MalformedClassfile(format!("bad type signature {:?} at {}", String::from_utf8_lossy(self.s), self.pos))
    }

    fn next(&mut self) -> Result<u8, RetrieveError> {
        let c = *self.s.get(self.pos).ok_or_else(|| self.err())?;
        self.pos += 1;
        Ok(c)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn field_type(&mut self) -> Result<TypeRef, RetrieveError> {
        let c = self.next()?;
        let prim = match c {
            b'B' => "byte",
            b'C' => "char",
            b'D' => "double",
            b'F' => "float",
            b'I' => "int",
            b'J' => "long",
            b'S' => "short",
            b'Z' => "boolean",
            b'V' => "void",
            b'[' => {
                let mut inner = self.field_type()?;
                inner.array_dims += 1;
                return Ok(inner);
            }
            b'T' => {
                let start = self.pos;
                while self.next()? != b';' {}
                let name = String::from_utf8_lossy(&self.s[start..self.pos - 1]).into_owned();
                return Ok(TypeRef::named(name));
            }
            b'L' => return self.class_type(),
            _ => return Err(self.err()),
        };
        Ok(TypeRef::named(prim))
    }

    /// After the `L`: `pkg/Outer<args>.Inner<args>;`
    fn class_type(&mut self) -> Result<TypeRef, RetrieveError> {
        let mut name = String::new();
        let mut args = Vec::new();
        loop {
            match self.next()? {
                b'/' => name.push('.'),
                b';' => break,
                b'<' => {
                    args = self.type_args()?;
                }
                b'.' => {
                    // inner class of a parameterized outer: reflection reports `Outer$Inner`
                    name.push('$');
                    args.clear();
                }
                c => {
                    let start = self.pos - 1;
                    let mut end = self.pos;
                    while let Some(n) = self.peek() {
                        if matches!(n, b'/' | b';' | b'<' | b'.') {
                            break;
                        }
                        end += 1;
                        self.pos += 1;
                    }
                    let _ = c;
                    name.push_str(&String::from_utf8_lossy(&self.s[start..end]));
                }
            }
        }
        Ok(TypeRef::generic(name, args))
    }

    fn type_args(&mut self) -> Result<Vec<TypeRef>, RetrieveError> {
        let mut args = Vec::new();
        loop {
            match self.peek().ok_or_else(|| self.err())? {
                b'>' => {
                    self.pos += 1;
                    return Ok(args);
                }
                b'*' => {
                    self.pos += 1;
                    args.push(TypeRef::unbounded_wildcard());
                }
                b'+' | b'-' => {
                    let wc = if self.next()? == b'+' { Wildcard::Extends } else { Wildcard::Super };
                    let mut t = self.field_type()?;
                    t.wildcard = Some(wc);
                    args.push(t);
                }
                _ => args.push(self.field_type()?),
            }
        }
    }
}

"""Minimal JVM classfile writer used to produce the binary test fixtures.

Only what the fixtures need: constant pool, fields with Signature and
RuntimeVisibleAnnotations attributes, annotation interfaces, and plain
methods with hand-assembled Code attributes (no StackMapTable, so any
class carrying code is emitted at major version 49).
"""

import struct

ACC_PUBLIC = 0x0001
ACC_PRIVATE = 0x0002
ACC_STATIC = 0x0008
ACC_FINAL = 0x0010
ACC_SUPER = 0x0020
ACC_INTERFACE = 0x0200
ACC_ABSTRACT = 0x0400
ACC_ANNOTATION = 0x2000


def u1(v):
    return struct.pack(">B", v)


def u2(v):
    return struct.pack(">H", v)


def u4(v):
    return struct.pack(">I", v)


class ConstantPool:
    def __init__(self):
        self.entries = []
        self.index = {}

    def _add(self, key, payload):
        if key in self.index:
            return self.index[key]
        self.entries.append(payload)
        idx = len(self.entries)
        self.index[key] = idx
        return idx

    def utf8(self, s):
        data = s.encode("utf-8")
        return self._add(("utf8", s), u1(1) + u2(len(data)) + data)

    def integer(self, v):
        return self._add(("int", v), u1(3) + struct.pack(">i", v))

    def cls(self, internal_name):
        n = self.utf8(internal_name)
        return self._add(("class", internal_name), u1(7) + u2(n))

    def string(self, s):
        n = self.utf8(s)
        return self._add(("string", s), u1(8) + u2(n))

    def name_and_type(self, name, desc):
        a, b = self.utf8(name), self.utf8(desc)
        return self._add(("nat", name, desc), u1(12) + u2(a) + u2(b))

    def fieldref(self, owner, name, desc):
        c, nt = self.cls(owner), self.name_and_type(name, desc)
        return self._add(("fieldref", owner, name, desc), u1(9) + u2(c) + u2(nt))

    def methodref(self, owner, name, desc):
        c, nt = self.cls(owner), self.name_and_type(name, desc)
        return self._add(("methodref", owner, name, desc), u1(10) + u2(c) + u2(nt))

    def imethodref(self, owner, name, desc):
        c, nt = self.cls(owner), self.name_and_type(name, desc)
        return self._add(("imethodref", owner, name, desc), u1(11) + u2(c) + u2(nt))

    def encode(self):
        return u2(len(self.entries) + 1) + b"".join(self.entries)


def element_value(cp, value):
    """value: ('s', str) | ('I', int) | ('e', type_desc, const) | ('[', [values])"""
    tag = value[0]
    if tag == "s":
        return u1(ord("s")) + u2(cp.utf8(value[1]))
    if tag == "I":
        return u1(ord("I")) + u2(cp.integer(value[1]))
    if tag == "e":
        return u1(ord("e")) + u2(cp.utf8(value[1])) + u2(cp.utf8(value[2]))
    if tag == "[":
        items = value[1]
        return u1(ord("[")) + u2(len(items)) + b"".join(element_value(cp, v) for v in items)
    raise ValueError(tag)


def annotation(cp, type_desc, pairs):
    out = u2(cp.utf8(type_desc)) + u2(len(pairs))
    for name, value in pairs:
        out += u2(cp.utf8(name)) + element_value(cp, value)
    return out


def attribute(cp, name, payload):
    return u2(cp.utf8(name)) + u4(len(payload)) + payload


def annotations_attr(cp, annotations):
    body = u2(len(annotations)) + b"".join(annotation(cp, d, p) for d, p in annotations)
    return attribute(cp, "RuntimeVisibleAnnotations", body)


class Field:
    def __init__(self, name, descriptor, signature=None, annotations=(), access=ACC_PRIVATE):
        self.name = name
        self.descriptor = descriptor
        self.signature = signature
        self.annotations = list(annotations)
        self.access = access


class Method:
    def __init__(self, name, descriptor, access, code=None, max_stack=0, max_locals=0):
        self.name = name
        self.descriptor = descriptor
        self.access = access
        self.code = code
        self.max_stack = max_stack
        self.max_locals = max_locals


class ClassFile:
    def __init__(self, name, super_name="java/lang/Object", access=ACC_PUBLIC | ACC_SUPER,
                 major=52, interfaces=(), signature=None, annotations=()):
        self.name = name
        self.super_name = super_name
        self.access = access
        self.major = major
        self.interfaces = list(interfaces)
        self.signature = signature
        self.annotations = list(annotations)
        self.fields = []
        self.methods = []
        self.cp = ConstantPool()

    def encode(self):
        cp = self.cp
        this_idx = cp.cls(self.name)
        super_idx = cp.cls(self.super_name) if self.super_name else 0
        iface_idx = [cp.cls(i) for i in self.interfaces]

        body = b""
        body += u2(len(self.fields))
        for f in self.fields:
            attrs = []
            if f.signature:
                attrs.append(attribute(cp, "Signature", u2(cp.utf8(f.signature))))
            if f.annotations:
                attrs.append(annotations_attr(cp, f.annotations))
            body += u2(f.access) + u2(cp.utf8(f.name)) + u2(cp.utf8(f.descriptor))
            body += u2(len(attrs)) + b"".join(attrs)

        body += u2(len(self.methods))
        for m in self.methods:
            attrs = []
            if m.code is not None:
                code = u2(m.max_stack) + u2(m.max_locals) + u4(len(m.code)) + m.code
                code += u2(0) + u2(0)
                attrs.append(attribute(cp, "Code", code))
            body += u2(m.access) + u2(cp.utf8(m.name)) + u2(cp.utf8(m.descriptor))
            body += u2(len(attrs)) + b"".join(attrs)

        class_attrs = [attribute(cp, "SourceFile", u2(cp.utf8(self.name.split("/")[-1] + ".java")))]
        if self.signature:
            class_attrs.append(attribute(cp, "Signature", u2(cp.utf8(self.signature))))
        if self.annotations:
            class_attrs.append(annotations_attr(cp, self.annotations))
        body += u2(len(class_attrs)) + b"".join(class_attrs)

        head = u4(0xCAFEBABE) + u2(0) + u2(self.major)
        mid = u2(self.access) + u2(this_idx) + u2(super_idx)
        mid += u2(len(iface_idx)) + b"".join(u2(i) for i in iface_idx)
        return head + cp.encode() + mid + body


class Assembler:
    """Tiny bytecode assembler with label fixups for 16-bit branches."""

    def __init__(self, cp):
        self.cp = cp
        self.buf = bytearray()
        self.labels = {}
        self.fixups = []

    def op(self, *bs):
        self.buf.extend(bs)

    def u2(self, v):
        self.buf.extend(struct.pack(">H", v))

    def label(self, name):
        self.labels[name] = len(self.buf)

    def branch(self, opcode, target):
        at = len(self.buf)
        self.buf.append(opcode)
        self.fixups.append((at, len(self.buf), target))
        self.buf.extend(b"\x00\x00")

    def ldc(self, s):
        idx = self.cp.string(s)
        if idx < 256:
            self.op(0x12, idx)
        else:
            self.op(0x13)
            self.u2(idx)

    def invoke(self, kind, owner, name, desc, nargs=0):
        if kind == "static":
            self.op(0xB8)
            self.u2(self.cp.methodref(owner, name, desc))
        elif kind == "virtual":
            self.op(0xB6)
            self.u2(self.cp.methodref(owner, name, desc))
        elif kind == "interface":
            self.op(0xB9)
            self.u2(self.cp.imethodref(owner, name, desc))
            self.op(nargs + 1, 0)
        else:
            raise ValueError(kind)

    def getstatic(self, owner, name, desc):
        self.op(0xB2)
        self.u2(self.cp.fieldref(owner, name, desc))

    def finish(self):
        for at, patch, target in self.fixups:
            off = self.labels[target] - at
            self.buf[patch:patch + 2] = struct.pack(">h", off)
        return bytes(self.buf)

"""Java type text <-> descriptor/signature helpers for the fixture generator."""

PRIMITIVES = {
    "byte": "B", "char": "C", "double": "D", "float": "F",
    "int": "I", "long": "J", "short": "S", "boolean": "Z", "void": "V",
}


class JType:
    def __init__(self, name, args=(), dims=0, wildcard=None):
        self.name = name          # fqn, primitive, type variable, or "?"
        self.args = list(args)
        self.dims = dims
        self.wildcard = wildcard  # None | "extends" | "super" (name holds bound)

    def is_type_var(self, type_vars):
        return self.name in type_vars


def parse(text):
    pos = 0
    text = text.replace(" ", "")

    def ty():
        nonlocal pos
        if text.startswith("?", pos):
            pos += 1
            for kw in ("extends", "super"):
                if text.startswith(kw, pos):
                    pos += len(kw)
                    inner = ty()
                    return JType(inner.name, inner.args, inner.dims, wildcard=kw)
            return JType("?")
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] in "._$"):
            pos += 1
        name = text[start:pos]
        args = []
        if pos < len(text) and text[pos] == "<":
            pos += 1
            while True:
                args.append(ty())
                if text[pos] == ",":
                    pos += 1
                    continue
                assert text[pos] == ">", text
                pos += 1
                break
        dims = 0
        while text.startswith("[]", pos):
            dims += 1
            pos += 2
        return JType(name, args, dims)

    t = ty()
    assert pos == len(text), text
    return t


def descriptor(t, type_vars=()):
    base = ""
    if t.name in PRIMITIVES:
        base = PRIMITIVES[t.name]
    elif t.name in type_vars:
        base = "Ljava/lang/Object;"
    else:
        base = "L" + t.name.replace(".", "/") + ";"
    return "[" * t.dims + base


def needs_signature(t, type_vars=()):
    return bool(t.args) or t.name in type_vars


def signature(t, type_vars=()):
    if t.name == "?" and t.wildcard is None:
        return "*"
    prefix = {"extends": "+", "super": "-"}.get(t.wildcard, "")
    if t.name in PRIMITIVES:
        body = PRIMITIVES[t.name]
    elif t.name in type_vars:
        body = "T" + t.name + ";"
    else:
        body = "L" + t.name.replace(".", "/")
        if t.args:
            body += "<" + "".join(signature(a, type_vars) for a in t.args) + ">"
        body += ";"
    return prefix + "[" * t.dims + body


def simple(name):
    return name.rsplit(".", 1)[-1]


def source_text(t):
    """Render with simple names, as written in a source file with imports."""
    if t.name == "?" and t.wildcard is None:
        return "?"
    out = simple(t.name)
    if t.args:
        out += "<" + ", ".join(source_text(a) for a in t.args) + ">"
    out += "[]" * t.dims
    if t.wildcard:
        out = "? " + t.wildcard + " " + out
    return out


def referenced_names(t):
    names = []
    if t.name not in PRIMITIVES and "." in t.name:
        names.append(t.name)
    for a in t.args:
        names.extend(referenced_names(a))
    return names

"""Writes fixtures/scripts: 50 mapping scripts built from the corpus references."""
import os
import re

ROOT = os.path.join(os.path.dirname(__file__), "..")
CORPUS = os.path.join(ROOT, "corpus")
OUT = os.path.join(ROOT, "scripts")


def plain(ref):
    return ref


def null_guard(ref):
    first = ref.split("\n", 1)[0]
    var = first.split("=")[0].split()[-1]
    body = ref.split("\n", 1)[1]
    m = re.search(r"\b([a-z]\w*DTO)\.get", body)
    src = m.group(1) if m else var
    lines = [first, f"if ({src} == null) {{", f"    return {var};", "}"]
    return "\n".join(lines) + "\n" + body


def listed(ref):
    first = ref.split("\n", 1)[0]
    ty = first.split()[0]
    var = first.split("=")[0].split()[-1]
    body = "\n".join("    " + l for l in ref.rstrip("\n").split("\n")[:-1])
    return (
        f"List<{ty}> results = new ArrayList<>();\n"
        f"for (int i = 0; i < 3; i++) {{\n{body}\n    results.add({var});\n}}\n"
        "return results;\n"
    )


def ternary(ref):
    def sub(m):
        return f"{m.group(1)}{m.group(2)} != null ? {m.group(2)} : null);"
    return re.sub(r"(\.set\w+\()([^;]*\.get\w+\(\))\);", sub, ref)


def streamed(ref):
    first = ref.split("\n", 1)[0]
    var = first.split("=")[0].split()[-1]
    rest = ref.split("\n", 1)[1].rstrip("\n").split("\n")[:-1]
    body = "\n".join("    " + l for l in rest)
    return (
        f"{first}\n"
        f"try {{\n{body}\n}} catch (RuntimeException e) {{\n    throw new IllegalStateException(\"mapping failed\", e);\n}}\n"
        f"List<String> tags = Stream.of(\"a\", \"b\").map(s -> s.toUpperCase()).collect(Collectors.toList());\n"
        f"switch (tags.size()) {{\n    case 0:\n        break;\n    default:\n        tags.forEach(t -> System.out.println(t));\n}}\n"
        f"return {var};\n"
    )


def main():
    os.makedirs(OUT, exist_ok=True)
    transforms = [plain, null_guard, listed, ternary, streamed]
    n = 0
    for entry in sorted(os.listdir(CORPUS)):
        ref_path = os.path.join(CORPUS, entry, "reference.txt")
        if not os.path.isfile(ref_path):
            continue
        ref = open(ref_path).read()
        for t in transforms:
            n += 1
            with open(os.path.join(OUT, f"{n:02d}-{entry[3:]}-{t.__name__}.java"), "w") as f:
                f.write(t(ref))
    assert n == 50, n


if __name__ == "__main__":
    main()

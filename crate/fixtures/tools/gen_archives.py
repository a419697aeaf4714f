#!/usr/bin/env python3
"""Generate the dependency-archive fixtures and their reflection oracle.

Outputs (relative to fixtures/archives):
  <name>.jar            compiled DTO classes
  src/<name>/...java    source mirror of the same classes (for source-vs-compiled checks)
  oracle/<name>.tsv     field dump produced by the real JVM via reflection

The oracle step needs a Java runtime: pass --java /path/to/bin/java.
The dumper class is assembled here, so no Java compiler is required.
"""

import argparse
import os
import re
import subprocess
import sys
import zipfile

sys.path.insert(0, os.path.dirname(__file__))

import classwriter as cw  # noqa: E402
import javatypes as jt  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
ARCHIVE_DIR = os.path.join(HERE, "..", "archives")

# (type text, field name, comment, [(annotation fqn, [(elem, value)])])
ARCHIVES = {
    "goods-api": [
        dict(fqn="com.wms.goods.SKUInfoDTO", comment="SKU information for goods", fields=[
            ("int", "inventoryId", "Inventory identifier", []),
            ("java.lang.String", "skuName", "Name of the SKU", [("com.wms.goods.annotation.ApiField", [("value", ("s", "sku name"))])]),
            ("int", "ownerUserId", "Owner user identifier", []),
            ("com.wms.user.UserDTO", "user", "Owner user of the SKU", []),
        ]),
        dict(fqn="com.wms.goods.SkuDTO", comment="SKU for goods", fields=[
            ("java.lang.String", "inventoryName", "name of inventory", []),
            ("java.lang.String", "ownName", "owner name", []),
            ("java.math.BigDecimal", "price", "unit price", []),
            ("java.util.List<java.lang.String>", "barcodes", "barcodes printed on the package", []),
        ]),
        dict(fqn="com.wms.goods.annotation.ApiField", annotation=True, elements=["value"]),
    ],
    "user-api": [
        dict(fqn="com.wms.user.UserDTO", comment="User account", fields=[
            ("java.lang.String", "name", "username", []),
            ("java.lang.String", "contactInfo", "phone or email", []),
        ]),
    ],
    "warehouse-api": [
        dict(fqn="com.wms.warehouse.WarehouseDTO", comment="Warehouse summary", fields=[
            ("int", "inventoryId", "Inventory identifier", []),
            ("java.lang.String", "warehouseLocation", "Location of the warehouse", [("com.wms.warehouse.annotation.NotNull", [])]),
            ("java.lang.String", "managerName", "Name of the warehouse manager", []),
        ]),
        dict(fqn="com.wms.warehouse.Warehouse", comment="Warehouse", fields=[
            ("long", "id", "primary key", []),
            ("java.lang.String", "warehouseName", "warehouse name", [("com.wms.warehouse.annotation.NotNull", [])]),
            ("com.wms.crm.OwnerUser", "owner", "owner of the warehouse", []),
            ("java.util.List<com.wms.basics.WarehouseArea>", "areas", "areas in the warehouse", []),
        ]),
        dict(fqn="com.wms.warehouse.annotation.NotNull", annotation=True, elements=[]),
    ],
    "crm-api": [
        dict(fqn="com.wms.crm.BaseEntity", comment="Common entity columns", fields=[
            ("long", "id", "primary key", []),
            ("java.time.LocalDateTime", "createdAt", "creation time", []),
        ]),
        dict(fqn="com.wms.crm.OwnerUser", super="com.wms.crm.BaseEntity", comment="Owner user with CRM details", fields=[
            ("java.lang.String", "userName", "owner name", []),
            ("java.lang.String", "phone", "contact phone", [("com.wms.crm.Sensitive", []), ("com.wms.crm.ApiField", [("value", ("s", "phone")), ("order", ("I", 2))])]),
            ("java.lang.String", "crmLevel", "CRM customer level", []),
            ("java.lang.Boolean", "vip", "VIP customer flag", []),
        ]),
        dict(fqn="com.wms.crm.Sensitive", annotation=True, elements=[]),
        dict(fqn="com.wms.crm.ApiField", annotation=True, elements=["value", ("order", "I")]),
    ],
    "basics-api": [
        dict(fqn="com.wms.basics.Area", comment="Area Info", fields=[
            ("java.lang.String", "areaCode", "area code", []),
            ("java.lang.String", "areaName", "area name", []),
        ]),
        dict(fqn="com.wms.basics.WarehouseArea", comment="Area Info", fields=[
            ("java.lang.String", "areaName", "area name", []),
            ("java.util.List<com.wms.basics.WarehouseLocation>", "locations", "locations inside the area", []),
            ("java.util.Optional<java.lang.String>", "remark", "free remark", []),
        ]),
        dict(fqn="com.wms.basics.WarehouseLocation", comment="Storage location", fields=[
            ("java.lang.String", "locationCode", "location code", []),
            ("int", "capacity", "capacity in pallets", []),
            ("double[]", "dimensions", "width, depth and height", []),
        ]),
        dict(fqn="com.wms.basics.ResponseList", type_params=["T"], comment="Paged response wrapper", fields=[
            ("int", "total", "total count", []),
            ("java.util.List<T>", "items", "items of the page", []),
        ]),
        dict(fqn="com.wms.basics.Dock", comment="Dock", fields=[
            ("java.lang.String", "dockCode", "dock code", []),
            ("java.util.Map<java.lang.String, java.lang.Integer>", "slots", "slot occupancy", []),
            ("java.util.List<? extends com.wms.basics.Area>", "nearby", "nearby areas", []),
            ("long[][]", "grid", "grid cells", []),
        ]),
    ],
}


def internal(fqn):
    return fqn.replace(".", "/")


def annotation_class(spec):
    cf = cw.ClassFile(
        internal(spec["fqn"]),
        access=cw.ACC_PUBLIC | cw.ACC_INTERFACE | cw.ACC_ABSTRACT | cw.ACC_ANNOTATION,
        interfaces=["java/lang/annotation/Annotation"],
        annotations=[("Ljava/lang/annotation/Retention;",
                      [("value", ("e", "Ljava/lang/annotation/RetentionPolicy;", "RUNTIME"))])],
    )
    for el in spec.get("elements", []):
        name, kind = (el, "Ljava/lang/String;") if isinstance(el, str) else (el[0], el[1])
        cf.methods.append(cw.Method(name, "()" + kind, cw.ACC_PUBLIC | cw.ACC_ABSTRACT))
    return cf


def dto_class(spec):
    tvars = spec.get("type_params", [])
    sig = None
    if tvars:
        sig = "".join("<%s:Ljava/lang/Object;>" % v for v in tvars)
        sig += "L" + internal(spec.get("super", "java.lang.Object")) + ";"
    cf = cw.ClassFile(internal(spec["fqn"]), super_name=internal(spec.get("super", "java.lang.Object")),
                      signature=sig)
    for type_text, name, _comment, annots in spec["fields"]:
        t = jt.parse(type_text)
        fsig = jt.signature(t, tvars) if jt.needs_signature(t, tvars) else None
        anns = [("L" + internal(a) + ";", pairs) for a, pairs in annots]
        cf.fields.append(cw.Field(name, jt.descriptor(t, tvars), fsig, anns))
    # a static constant that extraction must skip
    cf.fields.append(cw.Field("serialVersionUID", "J", access=cw.ACC_PRIVATE | cw.ACC_STATIC | cw.ACC_FINAL))
    return cf


def java_source(spec):
    pkg, simple = spec["fqn"].rsplit(".", 1)
    lines = ["package %s;" % pkg, ""]
    if spec.get("annotation"):
        lines += ["import java.lang.annotation.Retention;",
                  "import java.lang.annotation.RetentionPolicy;", "",
                  "@Retention(RetentionPolicy.RUNTIME)",
                  "public @interface %s {" % simple]
        for el in spec.get("elements", []):
            name, kind = (el, "String") if isinstance(el, str) else (el[0], "int")
            lines.append("    %s %s();" % (kind, name))
        lines.append("}")
        return "\n".join(lines) + "\n"
    tvars = spec.get("type_params", [])
    imports = set()
    for type_text, _n, _c, annots in spec["fields"]:
        for ref in jt.referenced_names(jt.parse(type_text)):
            if not ref.startswith("java.lang.") and ref.rsplit(".", 1)[0] != pkg:
                imports.add(ref)
        for a, _p in annots:
            if a.rsplit(".", 1)[0] != pkg:
                imports.add(a)
    sup = spec.get("super")
    if sup and sup.rsplit(".", 1)[0] != pkg:
        imports.add(sup)
    lines += ["import %s;" % i for i in sorted(imports)]
    if imports:
        lines.append("")
    lines.append("/** %s */" % spec["comment"])
    header = "public class %s" % simple
    if tvars:
        header += "<%s>" % ", ".join(tvars)
    if sup:
        header += " extends %s" % jt.simple(sup)
    lines.append(header + " {")
    lines.append("    private static final long serialVersionUID = 1L;")
    for type_text, name, comment, annots in spec["fields"]:
        lines.append("")
        lines.append("    // %s" % comment)
        for a, pairs in annots:
            if pairs:
                rendered = ", ".join(
                    "%s = %s" % (k, '"%s"' % v[1] if v[0] == "s" else v[1]) for k, v in pairs)
                lines.append("    @%s(%s)" % (jt.simple(a), rendered))
            else:
                lines.append("    @%s" % jt.simple(a))
        lines.append("    private %s %s;" % (jt.source_text(jt.parse(type_text)), name))
    lines.append("}")
    return "\n".join(lines) + "\n"


def field_dump_class():
    """public class FieldDump { main(args): dump declared fields of Class.forName(args[0]) }"""
    cf = cw.ClassFile("FieldDump", major=49)
    asm = cw.Assembler(cf.cp)
    concat = ("virtual", "java/lang/String", "concat", "(Ljava/lang/String;)Ljava/lang/String;")
    asm.op(0x2A, 0x03, 0x32)                           # aload_0 iconst_0 aaload
    asm.invoke("static", "java/lang/Class", "forName", "(Ljava/lang/String;)Ljava/lang/Class;")
    asm.op(0x4C)                                       # astore_1
    asm.op(0x2B)
    asm.invoke("virtual", "java/lang/Class", "getDeclaredFields", "()[Ljava/lang/reflect/Field;")
    asm.op(0x4D, 0x03, 0x3E)                           # astore_2 iconst_0 istore_3
    asm.label("loop")
    asm.op(0x1D, 0x2C, 0xBE)                           # iload_3 aload_2 arraylength
    asm.branch(0xA2, "end")                            # if_icmpge
    asm.op(0x2C, 0x1D, 0x32, 0x3A, 4)                  # aload_2 iload_3 aaload astore 4
    asm.getstatic("java/lang/System", "out", "Ljava/io/PrintStream;")
    asm.op(0x19, 4)
    asm.invoke("virtual", "java/lang/reflect/Field", "getModifiers", "()I")
    asm.invoke("static", "java/lang/Integer", "toString", "(I)Ljava/lang/String;")
    for getter in ("name", "type", "annotations"):
        asm.ldc("\t")
        asm.invoke(*concat)
        asm.op(0x19, 4)
        if getter == "name":
            asm.invoke("virtual", "java/lang/reflect/Field", "getName", "()Ljava/lang/String;")
        elif getter == "type":
            asm.invoke("virtual", "java/lang/reflect/Field", "getGenericType", "()Ljava/lang/reflect/Type;")
            asm.invoke("interface", "java/lang/reflect/Type", "getTypeName", "()Ljava/lang/String;")
        else:
            asm.invoke("virtual", "java/lang/reflect/Field", "getDeclaredAnnotations",
                       "()[Ljava/lang/annotation/Annotation;")
            asm.invoke("static", "java/util/Arrays", "toString", "([Ljava/lang/Object;)Ljava/lang/String;")
        asm.invoke(*concat)
    asm.invoke("virtual", "java/io/PrintStream", "println", "(Ljava/lang/String;)V")
    asm.op(0x84, 3, 1)                                 # iinc 3 1
    asm.branch(0xA7, "loop")                           # goto
    asm.label("end")
    asm.getstatic("java/lang/System", "out", "Ljava/io/PrintStream;")
    asm.ldc("super\t")
    asm.op(0x2B)
    asm.invoke("virtual", "java/lang/Class", "getSuperclass", "()Ljava/lang/Class;")
    asm.invoke("virtual", "java/lang/Class", "getName", "()Ljava/lang/String;")
    asm.invoke(*concat)
    asm.invoke("virtual", "java/io/PrintStream", "println", "(Ljava/lang/String;)V")
    asm.op(0xB1)
    cf.methods.append(cw.Method("main", "([Ljava/lang/String;)V", cw.ACC_PUBLIC | cw.ACC_STATIC,
                                code=asm.finish(), max_stack=6, max_locals=5))
    return cf


def write_jar(path, classes):
    with zipfile.ZipFile(path, "w", zipfile.ZIP_DEFLATED) as zf:
        def add(name, data):
            info = zipfile.ZipInfo(name, date_time=(2024, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, data)
        add("META-INF/MANIFEST.MF", b"Manifest-Version: 1.0\r\nCreated-By: ccci fixtures\r\n\r\n")
        for cf in sorted(classes, key=lambda c: c.name):
            add(cf.name + ".class", cf.encode())


ANNOT_RE = re.compile(r"@([\w.$]+)\(")


def run_oracle(java, tools_jar, jars, fqn):
    cp = os.pathsep.join([tools_jar] + jars)
    out = subprocess.run([java, "-cp", cp, "FieldDump", fqn], check=True, capture_output=True, text=True)
    rows = []
    for line in out.stdout.splitlines():
        parts = line.split("\t")
        if parts[0] == "super":
            rows.append((fqn, "@super", parts[1]))
            continue
        mods, name, type_name, annots = parts
        if int(mods) & cw.ACC_STATIC:
            continue
        names = ",".join(ANNOT_RE.findall(annots))
        rows.append((fqn, name, type_name, names))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--java", help="java launcher used to produce the reflection oracle")
    args = ap.parse_args()

    os.makedirs(os.path.join(ARCHIVE_DIR, "oracle"), exist_ok=True)
    tools_jar = os.path.join(HERE, "fielddump.jar")
    write_jar(tools_jar, [field_dump_class()])

    jar_paths = []
    for name, specs in ARCHIVES.items():
        classes = [annotation_class(s) if s.get("annotation") else dto_class(s) for s in specs]
        path = os.path.join(ARCHIVE_DIR, name + ".jar")
        write_jar(path, classes)
        jar_paths.append(path)
        for s in specs:
            src = os.path.join(ARCHIVE_DIR, "src", name, internal(s["fqn"]) + ".java")
            os.makedirs(os.path.dirname(src), exist_ok=True)
            with open(src, "w") as fh:
                fh.write(java_source(s))

    if not args.java:
        return
    for name, specs in ARCHIVES.items():
        rows = []
        for s in specs:
            if s.get("annotation"):
                continue
            rows.extend(run_oracle(args.java, tools_jar, jar_paths, s["fqn"]))
        with open(os.path.join(ARCHIVE_DIR, "oracle", name + ".tsv"), "w") as fh:
            fh.write("# class\tfield\ttype\tannotations  (java.lang.reflect dump, static fields dropped)\n")
            for row in rows:
                fh.write("\t".join(row) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Independent span annotator for Java fixtures.

Computes class/field/method character spans with a standalone masking and
brace-balancing pass, and prints them as JSON. Used to freeze expected-span
fixtures; deliberately shares no code with the Rust implementation.
"""
import json
import sys

KEYWORDS = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while", "record", "var",
}

CONTROL = {"if", "while", "for", "switch", "catch", "new", "return", "synchronized"}


def mask(src):
    out = list(src)
    i, n = 0, len(src)
    state = "code"
    while i < n:
        c = src[i]
        nxt = src[i + 1] if i + 1 < n else ""
        if state == "code":
            if c == "/" and nxt == "/":
                state = "line"
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if c == "/" and nxt == "*":
                state = "block"
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if c == '"':
                state = "str"
                out[i] = " "
                i += 1
                continue
            if c == "'":
                state = "char"
                out[i] = " "
                i += 1
                continue
            i += 1
        elif state == "line":
            if c == "\n":
                state = "code"
            else:
                out[i] = " "
            i += 1
        elif state == "block":
            if c == "*" and nxt == "/":
                out[i] = out[i + 1] = " "
                state = "code"
                i += 2
                continue
            if c != "\n":
                out[i] = " "
            i += 1
        else:  # str or char
            if c == "\\":
                out[i] = " "
                if i + 1 < n and src[i + 1] != "\n":
                    out[i + 1] = " "
                i += 2
                continue
            if (state == "str" and c == '"') or (state == "char" and c == "'"):
                state = "code"
            if c != "\n":
                out[i] = " "
            i += 1
    return "".join(out)


def annotate(src):
    m = mask(src)
    # Class body: first top-level '{' after the first 'class' keyword.
    depth = 0
    body_open = None
    k = m.find("class ")
    for i in range(k, len(m)):
        if m[i] == "{":
            body_open = i
            break
    depth = 0
    body_close = None
    for i in range(body_open, len(m)):
        if m[i] == "{":
            depth += 1
        elif m[i] == "}":
            depth -= 1
            if depth == 0:
                body_close = i
                break

    methods, fields = [], []
    i = body_open + 1
    stmt_start = None
    while i < body_close:
        c = m[i]
        if stmt_start is None and not c.isspace():
            stmt_start = i
        if c == ";":
            stmt = m[stmt_start:i]
            name = None
            if "=" in stmt:
                name = stmt.split("=")[0].split()[-1].strip()
            else:
                parts = stmt.replace(";", " ").split()
                if parts:
                    name = parts[-1]
            fields.append({"name": name, "start": stmt_start, "end": i + 1})
            stmt_start = None
            i += 1
            continue
        if c == "{":
            stmt = m[stmt_start:i]
            # Method iff an identifier directly precedes '(' in the statement.
            paren = stmt.find("(")
            is_method = False
            mname = None
            if paren != -1 and "=" not in stmt[:paren]:
                j = paren - 1
                while j >= 0 and stmt[j].isspace():
                    j -= 1
                e = j
                while j >= 0 and (stmt[j].isalnum() or stmt[j] in "_$."):
                    j -= 1
                word = stmt[j + 1 : e + 1]
                if word and word not in CONTROL:
                    is_method = True
                    mname = word
            depth = 0
            close = None
            for j in range(i, body_close + 1):
                if m[j] == "{":
                    depth += 1
                elif m[j] == "}":
                    depth -= 1
                    if depth == 0:
                        close = j
                        break
            if is_method:
                methods.append({"name": mname, "start": stmt_start, "end": close + 1})
            i = close + 1
            stmt_start = None
            continue
        i += 1

    return {
        "char_count": len(src),
        "class_body": {"start": body_open, "end": body_close + 1},
        "fields": fields,
        "methods": methods,
        "method_count": len(methods),
    }


if __name__ == "__main__":
    with open(sys.argv[1], encoding="utf-8") as f:
        source = f.read()
    print(json.dumps(annotate(source), indent=2))

"""Named group constructions, group documents, and reports.

A recipe is a colon-separated constructor like "dihedral:4" or
"extraspecial:3:plus", plus the functional form "product(a,b)" for direct
products. Recipe text doubles as the group's id in reports. Every builder
re-checks facts the construction is supposed to guarantee (order, exponent,
involution counts) and raises InternalMismatch when a table is wrong, so a
typo in a multiplication rule cannot silently poison downstream checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import GroupParseError, InternalMismatch, UnsupportedParameters
from .group import PermutationGroup
from .perm import Permutation, identity
from .series import exponent, require_prime

TOOL_VERSION = "0.1.0"
REPORT_SCHEMA = "psolv-report/1"


def _cycle_images(n):
    return tuple((i + 1) % n for i in range(n))


def _cyclic(n: int) -> PermutationGroup:
    if n < 1:
        raise UnsupportedParameters("cyclic order must be at least 1")
    if n == 1:
        return PermutationGroup(1, [])
    return PermutationGroup(n, [Permutation(_cycle_images(n))])


def _elementary_abelian(p: int, k: int) -> PermutationGroup:
    require_prime(p)
    if k < 1:
        raise UnsupportedParameters("the rank must be at least 1")
    degree = p * k
    gens = []
    for b in range(k):
        images = list(range(degree))
        for i in range(p):
            images[b * p + i] = b * p + (i + 1) % p
        gens.append(Permutation(tuple(images)))
    return PermutationGroup(degree, gens)


def _dihedral(n: int) -> PermutationGroup:
    if n < 3:
        raise UnsupportedParameters("dihedral groups need at least 3 vertices")
    rot = Permutation(_cycle_images(n))
    ref = Permutation(tuple((n - i) % n for i in range(n)))
    return PermutationGroup(n, [rot, ref])


def _symmetric(n: int) -> PermutationGroup:
    if n < 2:
        raise UnsupportedParameters("symmetric groups need at least 2 points")
    swap = Permutation((1, 0) + tuple(range(2, n)))
    return PermutationGroup(n, [swap, Permutation(_cycle_images(n))])


def _alternating(n: int) -> PermutationGroup:
    if n < 3:
        raise UnsupportedParameters("alternating groups need at least 3 points")
    gens = []
    for i in range(n - 2):
        images = list(range(n))
        images[i], images[i + 1], images[i + 2] = i + 1, i + 2, i
        gens.append(Permutation(tuple(images)))
    return PermutationGroup(n, gens)


def _matrix_perm(q, m, vecs, index):
    def image(v):
        return ((v[0] * m[0][0] + v[1] * m[1][0]) % q,
                (v[0] * m[0][1] + v[1] * m[1][1]) % q)
    return Permutation(tuple(index[image(v)] for v in vecs))


def _linear_group(q: int, extra_gen) -> PermutationGroup:
    # natural action on the q^2 - 1 nonzero row vectors, right multiplication
    vecs = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    if extra_gen is not None:
        mats.append(extra_gen)
    return PermutationGroup(len(vecs),
                            [_matrix_perm(q, m, vecs, index) for m in mats])


def _sl2(q: int) -> PermutationGroup:
    if q not in (2, 3):
        raise UnsupportedParameters("only the fields with 2 and 3 elements "
                                    "are built in")
    return _linear_group(q, None)


def _gl2(q: int) -> PermutationGroup:
    if q != 3:
        raise UnsupportedParameters("only the field with 3 elements is "
                                    "built in")
    return _linear_group(q, ((2, 0), (0, 1)))


def _affine(p: int) -> PermutationGroup:
    require_prime(p)
    root = None
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            root = g
            break
    if root is None:
        raise UnsupportedParameters("the prime has no primitive root in "
                                    "range, which cannot happen for p >= 3")
    shift = Permutation(tuple((i + 1) % p for i in range(p)))
    scale = Permutation(tuple(i * root % p for i in range(p)))
    return PermutationGroup(p, [shift, scale])


def _extraspecial_table(p: int, sign: str):
    """Element list, multiplication rule, and two generators for the
    extraspecial group of order p^3 of the given isomorphism type."""
    if p == 2:
        els = [(i, j) for i in range(4) for j in range(2)]
        if sign == "plus":
            def mul(x, y):
                return ((x[0] + (-1) ** x[1] * y[0]) % 4, x[1] ^ y[1])
        else:
            def mul(x, y):
                return ((x[0] + (-1) ** x[1] * y[0] + 2 * (x[1] & y[1])) % 4,
                        x[1] ^ y[1])
        return els, mul, [(1, 0), (0, 1)]
    if sign == "plus":
        els = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

        def mul(x, y):
            return ((x[0] + y[0]) % p, (x[1] + y[1]) % p,
                    (x[2] + y[2] + x[0] * y[1]) % p)
        return els, mul, [(1, 0, 0), (0, 1, 0)]
    els = [(i, j) for i in range(p * p) for j in range(p)]

    def mul(x, y):
        return ((x[0] + y[0] * (1 + p) ** x[1]) % (p * p), (x[1] + y[1]) % p)
    return els, mul, [(1, 0), (0, 1)]


def _extraspecial(p: int, sign: str) -> PermutationGroup:
    require_prime(p)
    if sign not in ("plus", "minus"):
        raise UnsupportedParameters("the type must be plus or minus")
    els, mul, gens = _extraspecial_table(p, sign)
    els = sorted(els)
    index = {x: i for i, x in enumerate(els)}
    e = els[0]
    if any(mul(e, x) != x or mul(x, e) != x for x in els):
        raise InternalMismatch("the identity row of the multiplication "
                               "table is wrong")

    def right_mul_perm(g):
        return Permutation(tuple(index[mul(x, g)] for x in els))

    G = PermutationGroup(len(els), [right_mul_perm(g) for g in gens])
    if G.order() != p ** 3:
        raise InternalMismatch(
            f"extraspecial table generated order {G.order()}, not {p ** 3}")
    want_exp = 4 if p == 2 else (p if sign == "plus" else p * p)
    if exponent(G) != want_exp:
        raise InternalMismatch("extraspecial group has the wrong exponent")
    if p == 2:
        involutions = sum(1 for x in els if x != e and mul(x, x) == e)
        want = 5 if sign == "plus" else 1
        if involutions != want:
            raise InternalMismatch("extraspecial table has the wrong number "
                                   "of involutions")
    return G


def _wreath_cyclic(p: int, q: int) -> PermutationGroup:
    """Cyclic group of order p wreathed by a cyclic top of order q, acting
    on p*q points in q blocks of p."""
    require_prime(p)
    if q < 2:
        raise UnsupportedParameters("the top cycle must have length at "
                                    "least 2")
    degree = p * q
    if degree > 64:
        raise UnsupportedParameters("wreath degree is capped at 64 points")
    base = list(range(degree))
    for i in range(p):
        base[i] = (i + 1) % p
    top = tuple((i + p) % degree for i in range(degree))
    G = PermutationGroup(degree, [Permutation(tuple(base)), Permutation(top)])
    if G.order() != p ** q * q:
        raise InternalMismatch("wreath product has the wrong order")
    return G


def _shift_perm(g: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, x in enumerate(g.images):
        images[offset + i] = offset + x
    return Permutation(tuple(images))


def _product(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    degree = A.degree + B.degree
    gens = [_shift_perm(g, 0, degree) for g in A.generators]
    gens += [_shift_perm(g, A.degree, degree) for g in B.generators]
    G = PermutationGroup(degree, gens)
    if G.order() != A.order() * B.order():
        raise InternalMismatch("direct product has the wrong order")
    return G


_ORDER_CHECKS = {
    "cyclic": lambda n: n,
    "elementary_abelian": lambda p, k: p ** k,
    "dihedral": lambda n: 2 * n,
    "symmetric": lambda n: math.factorial(n),
    "alternating": lambda n: math.factorial(n) // 2,
    "sl2": lambda q: {2: 6, 3: 24}[q],
    "gl2": lambda q: 48,
    "affine": lambda p: p * (p - 1),
}

_BUILDERS = {
    "cyclic": (_cyclic, (int,)),
    "elementary_abelian": (_elementary_abelian, (int, int)),
    "dihedral": (_dihedral, (int,)),
    "symmetric": (_symmetric, (int,)),
    "alternating": (_alternating, (int,)),
    "sl2": (_sl2, (int,)),
    "gl2": (_gl2, (int,)),
    "affine": (_affine, (int,)),
    "extraspecial": (_extraspecial, (int, str)),
    "wreath_cyclic": (_wreath_cyclic, (int, int)),
}


def _split_top_level(text: str):
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupParseError("unbalanced parentheses in recipe",
                                      line=1, column=i + 1)
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise GroupParseError("unbalanced parentheses in recipe", line=1,
                              column=len(text))
    parts.append(text[start:])
    return parts


def parse_recipe(text: str):
    """Parse recipe text into a tree: ("product", [left, right]) or
    (kind, [typed args])."""
    t = text.strip()
    if not t:
        raise GroupParseError("empty recipe", line=1, column=1)
    if t.startswith("product(") and t.endswith(")"):
        inner = t[len("product("):-1]
        parts = _split_top_level(inner)
        if len(parts) != 2:
            raise GroupParseError("product takes exactly two factors",
                                  line=1, column=len("product(") + 1)
        return ("product", [parse_recipe(x) for x in parts])
    if "(" in t or ")" in t or "," in t:
        raise GroupParseError(f"malformed recipe {t!r}", line=1, column=1)
    parts = [x.strip() for x in t.split(":")]
    kind, raw_args = parts[0], parts[1:]
    if kind not in _BUILDERS:
        raise GroupParseError(f"unknown recipe kind {kind!r}", line=1,
                              column=1)
    _, arg_types = _BUILDERS[kind]
    if len(raw_args) != len(arg_types):
        raise GroupParseError(
            f"{kind} takes {len(arg_types)} argument(s), got {len(raw_args)}",
            line=1, column=1)
    args = []
    for raw, typ in zip(raw_args, arg_types):
        if typ is int:
            try:
                args.append(int(raw))
            except ValueError:
                raise GroupParseError(
                    f"expected an integer argument, got {raw!r}",
                    line=1, column=1) from None
        else:
            args.append(raw)
    return (kind, args)


def canonical_recipe(text: str) -> str:
    def render(node):
        kind, args = node
        if kind == "product":
            return f"product({render(args[0])},{render(args[1])})"
        return ":".join([kind] + [str(a) for a in args])
    return render(parse_recipe(text))


def build_group(text: str) -> PermutationGroup:
    """Build the group a recipe names, running its construction checks."""
    def build(node):
        kind, args = node
        if kind == "product":
            return _product(build(args[0]), build(args[1]))
        builder, _ = _BUILDERS[kind]
        try:
            G = builder(*args)
        except UnsupportedParameters as e:
            raise GroupParseError(str(e), location=kind) from e
        check = _ORDER_CHECKS.get(kind)
        if check is not None and G.order() != check(*args):
            raise InternalMismatch(f"{kind} construction has the wrong order")
        return G
    return build(parse_recipe(text))


DEFAULT_CATALOG = (
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:8",
    "cyclic:9",
    "cyclic:15",
    "cyclic:16",
    "cyclic:27",
    "elementary_abelian:2:2",
    "elementary_abelian:2:3",
    "elementary_abelian:2:4",
    "elementary_abelian:3:2",
    "elementary_abelian:3:3",
    "dihedral:3",
    "dihedral:4",
    "dihedral:6",
    "dihedral:8",
    "symmetric:3",
    "symmetric:4",
    "symmetric:5",
    "symmetric:6",
    "alternating:4",
    "alternating:5",
    "sl2:2",
    "sl2:3",
    "gl2:3",
    "affine:5",
    "affine:7",
    "extraspecial:2:plus",
    "extraspecial:2:minus",
    "extraspecial:3:plus",
    "extraspecial:3:minus",
    "extraspecial:5:plus",
    "wreath_cyclic:2:3",
    "wreath_cyclic:2:4",
    "wreath_cyclic:2:5",
    "wreath_cyclic:3:3",
    "product(cyclic:9,cyclic:3)",
    "product(symmetric:3,cyclic:3)",
    "product(extraspecial:3:plus,cyclic:2)",
)


def parse_group(text: str) -> PermutationGroup:
    """Read a group document: {"degree": n, "generators": [[images...]]}
    with 0-based image lists."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupParseError(f"invalid JSON: {e.msg}", line=e.lineno,
                              column=e.colno) from None
    if not isinstance(doc, dict):
        raise GroupParseError("the document must be a JSON object",
                              location="$")
    degree = doc.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise GroupParseError("degree must be a positive integer",
                              location="degree")
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, list):
        raise GroupParseError("generators must be a list", location="generators")
    gens = []
    for idx, images in enumerate(gens_doc):
        loc = f"generators[{idx}]"
        if (not isinstance(images, list)
                or any(not isinstance(x, int) or isinstance(x, bool)
                       for x in images)):
            raise GroupParseError("a generator must be a list of integers",
                                  location=loc)
        if len(images) != degree or sorted(images) != list(range(degree)):
            raise GroupParseError(
                "a generator must list each point 0..degree-1 exactly once",
                location=loc)
        gens.append(Permutation(tuple(images)))
    return PermutationGroup(degree, gens)


def emit_group(G: PermutationGroup) -> str:
    doc = {"degree": G.degree,
           "generators": [list(g.images) for g in G.generators]}
    return json.dumps(doc, sort_keys=True)


@dataclass(frozen=True)
class Report:
    """One verdict about one group, tagged for emission.

    timing stays None so that emitted reports are byte-for-byte
    reproducible; the field exists so readers of the schema have a stable
    place for it.
    """

    tool_version: str
    group_id: str
    statement_id: str
    verdict: dict
    timing: float | None = None

    def to_payload(self):
        return {
            "tool_version": self.tool_version,
            "group_id": self.group_id,
            "statement_id": self.statement_id,
            "verdict": self.verdict,
            "timing": self.timing,
        }


def _verdict_status(v: dict) -> str:
    if v.get("is_finding"):
        return "FINDING"
    if v.get("report_only"):
        return "report"
    if not v.get("hypothesis_holds"):
        return "hypothesis not met"
    if v.get("conclusion_holds") is None:
        return "checked"
    return "consistent"


def _render_value(x):
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}={_render_value(v)}"
                               for k, v in sorted(x.items())) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_render_value(v) for v in x) + "]"
    return str(x)


def emit_report(reports, fmt: str = "text") -> str:
    """Render reports. "structured" is canonical JSON (sorted keys, stable
    layout); "text" is a deterministic human summary of the same content."""
    if fmt == "structured":
        doc = {"schema": REPORT_SCHEMA,
               "reports": [r.to_payload() for r in reports]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise UnsupportedParameters(f"unknown report format {fmt!r}")
    lines = []
    for r in reports:
        v = r.verdict
        lines.append(f"{r.group_id} | {r.statement_id}: {_verdict_status(v)}")
        params = v.get("parameters") or {}
        if params:
            lines.append("  " + _render_value(params))
        for w in v.get("witnesses") or ():
            lines.append(f"  witness: {_render_value(w)}")
        for n in v.get("notes") or ():
            lines.append(f"  note: {n}")
    findings = sum(1 for r in reports if r.verdict.get("is_finding"))
    lines.append(f"{len(reports)} report(s), {findings} finding(s)")
    return "\n".join(lines) + "\n"


def parse_report(text: str):
    """Read back a structured report document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupParseError(f"invalid JSON: {e.msg}", line=e.lineno,
                              column=e.colno) from None
    if not isinstance(doc, dict) or doc.get("schema") != REPORT_SCHEMA:
        raise GroupParseError(f"expected a {REPORT_SCHEMA} document",
                              location="schema")
    out = []
    for idx, r in enumerate(doc.get("reports", ())):
        loc = f"reports[{idx}]"
        if not isinstance(r, dict):
            raise GroupParseError("each report must be an object",
                                  location=loc)
        try:
            out.append(Report(tool_version=r["tool_version"],
                              group_id=r["group_id"],
                              statement_id=r["statement_id"],
                              verdict=r["verdict"],
                              timing=r.get("timing")))
        except KeyError as e:
            raise GroupParseError(f"report is missing field {e.args[0]!r}",
                                  location=loc) from None
    return out

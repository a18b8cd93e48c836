"""A small statement language for rings, modules and computations.

Grammar (one statement per ``;``, ``#`` starts a comment)::

    script    := { statement ";" }
    statement := "ring" NAME "=" ringexpr
               | "ideal" NAME "=" "ideal" "(" [poly {"," poly}] ")"
               | "module" NAME "=" modexpr
               | "artinian" NAME "=" "dual" "(" modexpr ")"
               | "compute" OP "(" args ")"
               | "verify" "suite" [ "(" kwargs ")" ]
               | "preset" PRESET
    ringexpr  := "quotient" "(" [field ","] "[" vars "]" ["," ideal] ")"
               | "polyring" "(" [field ","] "[" vars "]" ")"
    modexpr   := NAME | "free" "(" ring "," (int | "[" ints "]") ")"
               | "cyclic" "(" ring {"," poly} ")"
               | "module" "(" ring "," "[" ints "]" "," "[" {"[" polys "]"} "]" ")"
    OP        := hom | tensor | ext | tor | depth | width | betti | bass
               | ass | att | stages

Every ``compute``/``verify``/``preset`` statement emits one JSON object.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field as dc_field

from .duality import (ArtinianModule, ext_artinian_pair, hard_direction_stages,
                      hom_artinian_to_fg, mixed_ext_tor, tensor_with_artinian)
from .field import QQ, parse_field
from .flm import FiniteLengthModule
from .groebner import InhomogeneousError
from .homology import betti_bass_numbers, ext_tor_fg, hom_tensor_fg, min_resolution
from .invariants import ass_fg, att_artinian, depth_width
from .modules import INFINITE, GradedModule, ScopeError
from .rings import Ideal, QuotientRing, RingMismatchError

E_PARSE = "E_PARSE"
E_UNKNOWN_NAME = "E_UNKNOWN_NAME"
E_RING_MISMATCH = "E_RING_MISMATCH"
E_SCOPE = "E_SCOPE"
E_POLY = "E_POLY"
E_USAGE = "E_USAGE"

OPS = ("hom", "tensor", "ext", "tor", "depth", "width", "betti", "bass", "ass", "att", "stages")
KEYWORDS = ("ring", "ideal", "module", "artinian", "compute", "verify", "preset")


class DSLError(Exception):
    def __init__(self, code, message, line=None, col=None):
        super().__init__(message)
        self.code, self.message, self.line, self.col = code, message, line, col

    def to_json(self):
        return {"error": self.code, "message": self.message, "line": self.line, "col": self.col}

    def __str__(self):
        where = f" at line {self.line}, col {self.col}" if self.line is not None else ""
        return f"{self.code}{where}: {self.message}"


# ------------------------------------------------------------------- syntax

@dataclass
class Node:
    kind: str  # call | list | word | num | text | kw
    value: object
    pos: int
    args: list = dc_field(default_factory=list)


@dataclass
class Statement:
    keyword: str
    name: str | None
    body: object
    pos: int
    text: str


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\(")
_INT = re.compile(r"-?\d+")


class Parser:
    def __init__(self, src: str):
        self.src = src

    def linecol(self, pos):
        line = self.src.count("\n", 0, pos) + 1
        col = pos - (self.src.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos, code=E_PARSE):
        line, col = self.linecol(pos)
        return DSLError(code, msg, line, col)

    # -- statement splitting --------------------------------------------
    def statements(self):
        src = self.src
        out, start, depth, i = [], 0, 0, 0
        while i < len(src):
            ch = src[i]
            if ch == "#":
                j = src.find("\n", i)
                i = len(src) if j < 0 else j
                continue
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
                if depth < 0:
                    raise self.error(f"unbalanced {ch!r}", i)
            elif ch == ";" and depth == 0:
                out.append((start, i))
                start = i + 1
            i += 1
        if depth:
            raise self.error("unbalanced brackets", len(src))
        tail = self._strip_comments(start, len(src))
        if tail.strip():
            raise self.error("missing ';' after statement", self._skip_ws(start))
        return [self.statement(a, b) for a, b in out if self._strip_comments(a, b).strip()]

    def _strip_comments(self, a, b):
        return re.sub(r"#[^\n]*", "", self.src[a:b])

    def _skip_ws(self, i, end=None):
        end = len(self.src) if end is None else end
        while i < end:
            if self.src[i].isspace():
                i += 1
            elif self.src[i] == "#":
                j = self.src.find("\n", i)
                i = end if j < 0 else j
            else:
                break
        return i

    def statement(self, a, b):
        i = self._skip_ws(a, b)
        m = _IDENT.match(self.src, i, b)
        if not m or m.group() not in KEYWORDS:
            raise self.error("expected one of " + ", ".join(KEYWORDS), i)
        kw = m.group()
        i = self._skip_ws(m.end(), b)
        text = self._strip_comments(a, b).strip()
        if kw in ("ring", "ideal", "module", "artinian"):
            n = _IDENT.match(self.src, i, b)
            if not n:
                raise self.error("expected a name", i)
            name = n.group()
            i = self._skip_ws(n.end(), b)
            if i >= b or self.src[i] != "=":
                raise self.error("expected '='", i)
            body = self.expr(self._skip_ws(i + 1, b), b)
            return Statement(kw, name, body, a, text)
        if kw == "compute":
            body = self.expr(i, b)
            if body.kind != "call" or body.value not in OPS:
                raise self.error("expected " + " | ".join(OPS), i)
            return Statement(kw, None, body, a, text)
        if kw == "verify":
            body = self.expr(i, b)
            if body.value != "suite" or body.kind not in ("call", "word"):
                raise self.error("expected 'suite'", i)
            return Statement(kw, None, body, a, text)
        raw = self._strip_comments(i, b).strip()
        if not raw:
            raise self.error("expected a preset name", i)
        return Statement(kw, None, raw, a, text)

    # -- expressions ----------------------------------------------------
    def _split(self, a, b):
        """Top-level comma-separated spans of ``src[a:b]``."""
        parts, depth, start = [], 0, a
        for i in range(a, b):
            ch = self.src[i]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 0:
                parts.append((start, i))
                start = i + 1
        parts.append((start, b))
        if len(parts) == 1 and not self._strip_comments(a, b).strip():
            return []
        return parts

    def _close(self, i, b, opening):
        closing = ")" if opening == "(" else "]"
        depth = 0
        for j in range(i, b):
            ch = self.src[j]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
                if depth == 0:
                    if ch != closing:
                        raise self.error(f"expected {closing!r}", j)
                    return j
        raise self.error(f"unclosed {opening!r}", i)

    def expr(self, a, b):
        i = self._skip_ws(a, b)
        end = b
        while end > i and (self.src[end - 1].isspace()):
            end -= 1
        raw = self._strip_comments(i, end).strip()
        if not raw:
            raise self.error("expected an expression", i)
        m = _CALL.match(self.src, i, end)
        if m:
            j = self._close(m.end() - 1, end, "(")
            if not self._strip_comments(j + 1, end).strip():
                args = [self.expr(x, y) for x, y in self._split(m.end(), j)]
                return Node("call", m.group(1), i, args)
        if self.src[i] == "[":
            j = self._close(i, end, "[")
            if not self._strip_comments(j + 1, end).strip():
                return Node("list", None, i, [self.expr(x, y) for x, y in self._split(i + 1, j)])
        kw = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)", raw, re.S)
        if kw:
            eq = self.src.index("=", i)
            return Node("kw", kw.group(1), i, [self.expr(eq + 1, end)])
        if _IDENT.fullmatch(raw):
            return Node("word", raw, i)
        if _INT.fullmatch(raw):
            return Node("num", int(raw), i)
        return Node("text", raw, i)


def parse(script: str):
    return Parser(script).statements()


# --------------------------------------------------------------- evaluation

def default_field():
    env = os.environ.get("MATLIS_DEFAULT_FIELD")
    return parse_field(env) if env else QQ


def module_summary(M):
    """JSON for a computed module of any representation."""
    if isinstance(M, FiniteLengthModule):
        G = M.to_graded()
        return {"kind": "finite-length", "length": M.dim,
                "hilbert": {str(d): v for d, v in sorted(M.hilbert_table().items())},
                "module": G.to_json()}
    if isinstance(M, ArtinianModule):
        W = M.dual_of
        L = W.length()
        return {"kind": "artinian", "length": L,
                "witness_hilbert": _hilb(W), "dual_of": W.to_json()}
    L = M.length()
    return {"kind": "finitely-generated", "length": L, "hilbert": _hilb(M),
            "module": M.to_json()}


def _hilb(M: GradedModule, span: int = 6):
    if M.is_finite_length():
        return {str(d): v for d, v in sorted(M.hilbert_table().items())}
    lo = min(M.degrees) if M.degrees else 0
    return {str(d): M.hilbert(d) for d in range(lo, lo + span)}


def load_module(obj):
    """Rebuild a module from :func:`module_summary` output."""
    if obj["kind"] == "artinian":
        return ArtinianModule(GradedModule.from_json(obj["dual_of"]))
    return GradedModule.from_json(obj["module"])


class Session:
    """Name bindings plus the active ring; ``execute`` runs a script."""

    def __init__(self, field=None, seed: int = 0, cases: int = 5, s_max: int = 5,
                 i_max: int = 3):
        self.field = field or default_field()
        self.seed, self.cases, self.s_max, self.i_max = seed, cases, s_max, i_max
        self.bindings = {}
        self.active_ring = None
        self.outputs = []
        self.failed = False
        self._parser = None

    # -- helpers ----------------------------------------------------------
    def _err(self, code, msg, node):
        pos = node.pos if isinstance(node, (Node, Statement)) else 0
        return self._parser.error(msg, pos, code)

    def lookup(self, node: Node, kinds=None):
        if node.kind != "word":
            raise self._err(E_PARSE, "expected a name", node)
        if node.value not in self.bindings:
            raise self._err(E_UNKNOWN_NAME, f"unknown name {node.value!r}", node)
        val = self.bindings[node.value]
        if kinds and not isinstance(val, kinds):
            raise self._err(E_PARSE, f"{node.value!r} has the wrong type", node)
        return val

    def field_of(self, node: Node):
        text = node.value if node.kind in ("word", "text", "num") else \
            f"{node.value}({','.join(str(a.value) for a in node.args)})"
        try:
            return parse_field(str(text))
        except ValueError as exc:
            raise self._err(E_PARSE, str(exc), node)

    def poly(self, R: QuotientRing, node: Node):
        if node.kind not in ("word", "num", "text"):
            raise self._err(E_POLY, "expected a polynomial", node)
        try:
            f = R.S(str(node.value))
        except ValueError as exc:
            raise self._err(E_POLY, str(exc), node)
        return f

    def ring_arg(self, node: Node) -> QuotientRing:
        return self.lookup(node, (QuotientRing,))

    # -- builders -----------------------------------------------------------
    def build_ring(self, node: Node) -> QuotientRing:
        if node.kind != "call" or node.value not in ("quotient", "polyring"):
            raise self._err(E_PARSE, "expected quotient(...) or polyring(...)", node)
        args = list(node.args)
        F = self.field
        if args and args[0].kind != "list":
            F = self.field_of(args.pop(0))
        if not args or args[0].kind != "list":
            raise self._err(E_PARSE, "expected a variable list", node)
        names = []
        for a in args[0].args:
            if a.kind != "word":
                raise self._err(E_PARSE, "variables must be identifiers", a)
            names.append(a.value)
        if not names:
            raise self._err(E_PARSE, "need at least one variable", args[0])
        gens = []
        S = QuotientRing(F, names, []).S
        if len(args) > 1:
            idl = args[1]
            if node.value == "polyring" or idl.kind != "call" or idl.value != "ideal":
                raise self._err(E_PARSE, "expected ideal(...)", idl)
            gens = [self._poly_in(S, a) for a in idl.args]
        if len(args) > 2:
            raise self._err(E_PARSE, "too many arguments", args[2])
        try:
            return QuotientRing(F, names, gens)
        except InhomogeneousError as exc:
            raise self._err(E_POLY, str(exc), node)
        except ValueError as exc:
            raise self._err(E_POLY, str(exc), node)

    def _poly_in(self, S, node):
        if node.kind not in ("word", "num", "text"):
            raise self._err(E_POLY, "expected a polynomial", node)
        try:
            return S(str(node.value))
        except ValueError as exc:
            raise self._err(E_POLY, str(exc), node)

    def build_module(self, node: Node):
        if node.kind == "word":
            return self.lookup(node, (GradedModule, ArtinianModule))
        if node.kind != "call":
            raise self._err(E_PARSE, "expected a module expression", node)
        name, args = node.value, node.args
        try:
            if name == "free":
                R = self.ring_arg(args[0])
                if len(args) != 2:
                    raise self._err(E_PARSE, "free(R, n)", node)
                d = args[1]
                degs = [0] * d.value if d.kind == "num" else [self._int(a) for a in d.args]
                return GradedModule.free(R, degs)
            if name == "cyclic":
                R = self.ring_arg(args[0])
                return GradedModule.cyclic(R, *[self.poly(R, a) for a in args[1:]])
            if name == "module":
                R = self.ring_arg(args[0])
                if len(args) != 3 or args[1].kind != "list" or args[2].kind != "list":
                    raise self._err(E_PARSE, "module(R, [degrees], [[column], ...])", node)
                degs = [self._int(a) for a in args[1].args]
                cols = []
                for c in args[2].args:
                    if c.kind != "list" or len(c.args) != len(degs):
                        raise self._err(E_PARSE, "each relation column needs one entry per "
                                        "generator", c)
                    cols.append([self.poly(R, a) for a in c.args])
                return GradedModule(R, degs, cols)
            if name == "dual":
                if len(args) != 1:
                    raise self._err(E_PARSE, "dual(module)", node)
                inner = self.build_module(args[0])
                if isinstance(inner, ArtinianModule):
                    return inner.dual_of
                return ArtinianModule(inner)
        except IndexError:
            raise self._err(E_PARSE, f"missing arguments to {name}", node)
        except InhomogeneousError as exc:
            raise self._err(E_POLY, str(exc), node)
        raise self._err(E_PARSE, f"unknown constructor {name!r}", node)

    def _int(self, node):
        if node.kind != "num":
            raise self._err(E_PARSE, "expected an integer", node)
        return node.value

    # -- execution ------------------------------------------------------------
    def execute(self, script: str):
        self._parser = Parser(script)
        for st in self._parser.statements():
            self.run_statement(st)
        return self.outputs

    def emit(self, obj):
        self.outputs.append(obj)
        return obj

    def run_statement(self, st: Statement):
        try:
            self._run(st)
        except DSLError:
            raise
        except RingMismatchError as exc:
            raise self._err(E_RING_MISMATCH, str(exc), st)
        except ScopeError as exc:
            raise self._err(E_SCOPE, str(exc), st)
        except InhomogeneousError as exc:
            raise self._err(E_POLY, str(exc), st)

    def _bind(self, st, value):
        if st.name in self.bindings:
            raise self._err(E_PARSE, f"name {st.name!r} already bound", st)
        self.bindings[st.name] = value

    def _run(self, st: Statement):
        kw = st.keyword
        if kw == "ring":
            R = self.build_ring(st.body)
            self._bind(st, R)
            self.active_ring = R
        elif kw == "ideal":
            if self.active_ring is None:
                raise self._err(E_UNKNOWN_NAME, "no active ring", st)
            if st.body.kind != "call" or st.body.value != "ideal":
                raise self._err(E_PARSE, "expected ideal(...)", st.body)
            S = self.active_ring.S
            self._bind(st, Ideal(S, [self._poly_in(S, a) for a in st.body.args]))
        elif kw == "module":
            M = self.build_module(st.body)
            if not isinstance(M, GradedModule):
                raise self._err(E_PARSE, "module statement needs a finitely generated module",
                                st.body)
            self._bind(st, M)
        elif kw == "artinian":
            b = st.body
            if b.kind != "call" or b.value != "dual":
                raise self._err(E_PARSE, "expected dual(...)", b)
            A = self.build_module(b)
            if not isinstance(A, ArtinianModule):
                raise self._err(E_PARSE, "artinian statement needs dual(module)", b)
            self._bind(st, A)
        elif kw == "compute":
            self.emit({"statement": st.text, **self.compute(st.body)})
        elif kw == "verify":
            self.emit({"statement": st.text, **self.verify(st.body)})
        elif kw == "preset":
            self.emit({"statement": st.text, **self.preset(st.body, st)})

    # -- compute ----------------------------------------------------------
    def _module_args(self, nodes):
        out = []
        for n in nodes:
            out.append(self.build_module(n))
        if len(out) > 1 and len({_ring(m).key() for m in out}) > 1:
            raise self._err(E_RING_MISMATCH, "arguments live over different rings", nodes[1])
        return out

    def compute(self, node: Node):
        op, args = node.value, node.args
        if op in ("ext", "tor"):
            if len(args) != 3:
                raise self._err(E_PARSE, f"{op}(i, X, Y)", node)
            i = self._int(args[0])
            X, Y = self._module_args(args[1:])
            return {"op": op, "i": i, "result": self._ext_tor(op, i, X, Y)}
        if op in ("hom", "tensor"):
            if len(args) != 2:
                raise self._err(E_PARSE, f"{op}(X, Y)", node)
            X, Y = self._module_args(args)
            return {"op": op, "result": self._hom_tensor(op, X, Y)}
        if op in ("depth", "width"):
            if len(args) not in (1, 2):
                raise self._err(E_PARSE, f"{op}([ideal,] X)", node)
            a = None
            if len(args) == 2:
                a = self.lookup(args[0], (Ideal,))
            (X,) = self._module_args(args[-1:])
            val = depth_width(a, X, None, op)
            return {"op": op, "result": val}
        if op in ("betti", "bass"):
            if len(args) not in (1, 2):
                raise self._err(E_PARSE, f"{op}(X [, i_max])", node)
            (X,) = self._module_args(args[:1])
            i_max = self._int(args[1]) if len(args) == 2 else self.i_max
            return {"op": op, "result": self._betti_bass(op, X, i_max)}
        if op in ("ass", "att"):
            if len(args) != 1:
                raise self._err(E_PARSE, f"{op}(X)", node)
            (X,) = self._module_args(args)
            if op == "att":
                if not isinstance(X, ArtinianModule):
                    raise self._err(E_PARSE, "att needs an artinian module", args[0])
                P = att_artinian(X)
            else:
                if isinstance(X, ArtinianModule):
                    raise self._err(E_PARSE, "ass needs a finitely generated module", args[0])
                P = ass_fg(X)
            return {"op": op, "result": sorted(str(p) for p in P)}
        if op == "stages":
            if len(args) != 4 or args[0].kind != "word" or args[0].value not in ("ext", "tor"):
                raise self._err(E_PARSE, "stages(ext|tor, i, A, X)", node)
            i = self._int(args[1])
            A, X = self._module_args(args[2:])
            if not isinstance(A, ArtinianModule):
                raise self._err(E_PARSE, "stages need an artinian first argument", args[2])
            kind = "ext_artinian_to_fg" if args[0].value == "ext" else "tor_artinian_pair"
            seq = hard_direction_stages(i, A, X, kind, self.s_max)
            return {"op": op, "i": i, "result": seq.to_json()}
        raise self._err(E_PARSE, f"unknown operation {op!r}", node)

    def _hom_tensor(self, op, X, Y):
        art = (isinstance(X, ArtinianModule), isinstance(Y, ArtinianModule))
        if op == "hom":
            if art == (False, False):
                return module_summary(hom_tensor_fg(X, Y, "hom"))
            if art == (True, False):
                return module_summary(hom_artinian_to_fg(X, Y))
            if art == (True, True):
                return module_summary(hom_tensor_fg(Y.dual_of, X.dual_of, "hom"))
            return module_summary(ArtinianModule(hom_tensor_fg(X, Y.dual_of, "tensor")))
        if art == (False, False):
            return module_summary(hom_tensor_fg(X, Y, "tensor"))
        if art == (False, True):
            X, Y = Y, X
        if isinstance(Y, GradedModule) and not Y.is_finite_length():
            return module_summary(mixed_ext_tor(0, Y, X, "tor_fg_with_artinian"))
        return module_summary(tensor_with_artinian(X, Y))

    def _ext_tor(self, op, i, X, Y):
        art = (isinstance(X, ArtinianModule), isinstance(Y, ArtinianModule))
        if op == "ext":
            if art == (False, False):
                return module_summary(ext_tor_fg(i, X, Y, "ext"))
            if art == (True, True):
                return module_summary(ext_artinian_pair(i, X, Y))
            if art == (False, True):
                return module_summary(mixed_ext_tor(i, X, Y, "ext_fg_to_artinian"))
            if Y.is_finite_length():
                return module_summary(ext_artinian_pair(i, X, ArtinianModule(
                    Y.to_flm().dual().to_graded())))
            seq = hard_direction_stages(i, X, Y, "ext_artinian_to_fg", self.s_max)
            return {"kind": "stages", **seq.to_json()}
        if art == (False, False):
            return module_summary(ext_tor_fg(i, X, Y, "tor"))
        if art == (True, False):
            X, Y = Y, X
            art = (False, True)
        if art == (False, True):
            return module_summary(mixed_ext_tor(i, X, Y, "tor_fg_with_artinian"))
        for P, Q in ((X, Y), (Y, X)):
            if Q.dual_of.is_finite_length():
                fg = Q.dual_of.to_flm().dual().to_graded()
                return module_summary(mixed_ext_tor(i, fg, P, "tor_fg_with_artinian"))
        if i == 0:
            return module_summary(tensor_with_artinian(X, Y))
        seq = hard_direction_stages(i, X, Y, "tor_artinian_pair", self.s_max)
        return {"kind": "stages", **seq.to_json()}

    def _betti_bass(self, op, X, i_max):
        if isinstance(X, ArtinianModule):
            # beta_i(D N) = mu^i(N) and mu^i(D N) = beta_i(N)
            W = X.dual_of
            if op == "betti":
                return betti_bass_numbers(W, i_max)[1]
            res = min_resolution(W, i_max)
            ranks = res.ranks + [0] * (i_max + 1 - len(res.ranks))
            return ranks[: i_max + 1]
        if op == "betti":
            res = min_resolution(X, i_max)
            ranks = res.ranks + [0] * (i_max + 1 - len(res.ranks))
            return ranks[: i_max + 1]
        return betti_bass_numbers(X, i_max)[1]

    # -- verify / preset ----------------------------------------------------
    def verify(self, node: Node):
        from .suite import run_suite
        seed, cases = self.seed, self.cases
        for a in (node.args if node.kind == "call" else []):
            if a.kind != "kw" or a.value not in ("seed", "cases"):
                raise self._err(E_PARSE, "verify suite(seed=..., cases=...)", a)
            v = self._int(a.args[0])
            if a.value == "seed":
                seed = v
            else:
                cases = v
        if cases < 1:
            raise self._err(E_USAGE, "cases must be at least 1", node)
        rep = run_suite(seed, cases, field_char=self.field.characteristic or 0)
        if not rep.ok:
            self.failed = True
        return {"op": "verify", "result": rep.to_json(), "pass": rep.ok}

    def preset(self, name: str, st):
        from .presets import run_preset
        try:
            lines = run_preset(name, self.field)
        except ValueError as exc:
            raise self._err(E_USAGE, str(exc), st)
        ok = all(ln["pass"] for ln in lines)
        if not ok:
            self.failed = True
        return {"op": "preset", "preset": name, "lines": lines, "pass": ok}


def _ring(M):
    return M.dual_of.ring if isinstance(M, ArtinianModule) else M.ring


def run_script(script: str, **kw):
    """Parse and execute; returns the session (outputs in ``session.outputs``)."""
    s = Session(**kw)
    s.execute(script)
    return s


__all__ = ["DSLError", "Session", "parse", "run_script", "module_summary", "load_module",
           "E_PARSE", "E_UNKNOWN_NAME", "E_RING_MISMATCH", "E_SCOPE", "E_POLY", "E_USAGE",
           "INFINITE"]

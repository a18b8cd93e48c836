"""Closed-form example batteries over small graded rings.

Each preset returns a list of result lines ``{"line", "tag", "expected",
"observed", "pass"}``.  Infinite artinian answers are compared stage by stage.
"""

from __future__ import annotations

import re

from .duality import (artinian_dual, ext_artinian_pair, hard_direction_stages, injective_hull,
                      iso_up_to_shift, stabilization_exponent, tensor_with_artinian, top_quotient)
from .field import QQ
from .modules import GradedModule
from .rings import QuotientRing

PRESETS = ("example-6-2", "example-6-3", "example-6-4", "example-6-5", "example-6-5-general")


def _line(line, tag, expected, observed, ok=None):
    return {"line": line, "tag": tag, "expected": expected, "observed": observed,
            "pass": bool(expected == observed if ok is None else ok)}


def _k(R):
    return GradedModule.residue_field(R).to_flm()


def _cyc(R, *polys):
    return GradedModule.cyclic(R, *polys)


def _len(M):
    return M.length() if isinstance(M, GradedModule) else M.dim


def _iso_fg(M, target):
    """``M`` has finite length and is isomorphic (up to shift) to ``target``."""
    if not M.is_finite_length():
        return False
    return iso_up_to_shift(M.to_flm(), target.to_flm())


def _rings(field, n):
    return QuotientRing(field, ["x", "y"][:n] if n <= 2 else ["x", "y", "z"], [])


def example_6_2(field=QQ, i_max: int = 3):
    """Ext of artinian pairs with a regular element (graded model, ``d = 1`` and ``d = 2``)."""
    tag = "ex100419a"
    out = []
    R = _rings(field, 1)
    Ax = artinian_dual(_cyc(R, "x"))
    Rx = _cyc(R, "x")
    for i in range(i_max + 1):
        M = ext_artinian_pair(i, Ax, Ax)
        if i <= 1:
            out.append(_line(f"k[x]: Ext^{i}(D(R/x), D(R/x)) = R/xR", tag, 1, _len(M),
                             _iso_fg(M, Rx)))
        else:
            out.append(_line(f"k[x]: Ext^{i}(D(R/x), D(R/x)) = 0", tag, 0, _len(M)))
    E = injective_hull(R)
    out.append(_line("k[x]: Ext^0(E, D(R/x)) = (0 :_R x) = 0", tag, 0,
                     _len(ext_artinian_pair(0, E, Ax))))
    M1 = ext_artinian_pair(1, E, Ax)
    out.append(_line("k[x]: Ext^1(E, D(R/x)) = R/xR", tag, 1, _len(M1), _iso_fg(M1, Rx)))
    S = _rings(field, 2)
    Ay, Ax2 = artinian_dual(_cyc(S, "y")), artinian_dual(_cyc(S, "x"))
    kxy = _cyc(S, "x", "y")
    for i in range(i_max + 1):
        M = ext_artinian_pair(i, Ay, Ax2)
        if i == 1:
            out.append(_line("k[x,y]: Ext^1(D(R/y), D(R/x)) = R/(x,y)", tag, 1, _len(M),
                             _iso_fg(M, kxy)))
        else:
            out.append(_line(f"k[x,y]: Ext^{i}(D(R/y), D(R/x)) = 0", tag, 0, _len(M)))
    return out


def _stage_line(seq, line, tag, expect_len, model=None, transition="injective"):
    lens = seq.lengths
    ok = lens == expect_len
    if ok and model is not None:
        ok = all(iso_up_to_shift(_flm(st), model(s + 1)) for s, st in enumerate(seq.stages)
                 if lens[s])
    if ok and transition == "injective":
        ok = all(seq.injective())
    if ok and transition == "surjective":
        ok = all(r == seq.lengths[k] for k, r in enumerate(seq.transition_ranks()))
    return _line(line, tag, expect_len, lens, ok)


def _zero_limit_line(seq, line, tag):
    """The limit vanishes: all stages are zero or every transition is zero."""
    ok = not any(seq.lengths) or seq.zero_transitions()
    return _line(line, tag, 0, 0 if ok else seq.lengths, ok)


def _flm(M):
    return M if not isinstance(M, GradedModule) else M.to_flm()


def example_6_3(field=QQ, s_max: int = 4):
    """``Ext^i(A, D)`` and ``Ext^i(A, D/xD)`` for Gorenstein ``k[x]`` and ``k[x,y]``."""
    tag = "ex14"
    out = []
    R = _rings(field, 1)
    E = injective_hull(R)
    Rfree = GradedModule.free(R, [0])

    def trunc(s):
        return _cyc(R, f"x^{s}").to_flm()

    seq0 = hard_direction_stages(0, E, Rfree, "ext_artinian_to_fg", s_max)
    out.append(_stage_line(seq0, "k[x]: Ext^0(E, R) stages vanish", tag, [0] * s_max,
                           transition=None))
    seq1 = hard_direction_stages(1, E, Rfree, "ext_artinian_to_fg", s_max)
    out.append(_stage_line(seq1, "k[x]: Ext^1(E, R) stages are R/x^s (limit D(E))", tag,
                           list(range(1, s_max + 1)), trunc, transition="surjective"))
    Ax = artinian_dual(_cyc(R, "x"))
    Rx = _cyc(R, "x")
    kx = Rx.to_flm()
    for i in (0, 1):
        seq = hard_direction_stages(i, Ax, Rx, "ext_artinian_to_fg", s_max)
        lim = seq.detected_limit
        ok = lim is not None and iso_up_to_shift(lim, kx)
        out.append(_line(f"k[x]: Ext^{i}(D(R/x), R/xR) = R/xR", tag, 1,
                         lim.dim if lim is not None else None, ok))
    seq2 = hard_direction_stages(2, Ax, Rx, "ext_artinian_to_fg", s_max)
    out.append(_zero_limit_line(seq2, "k[x]: Ext^2(D(R/x), R/xR) = 0", tag))
    S = _rings(field, 2)
    Ay = artinian_dual(_cyc(S, "y"))
    Sx = _cyc(S, "x")
    kxy = _cyc(S, "x", "y").to_flm()
    s2 = min(s_max, 3)
    for i in range(3):
        seq = hard_direction_stages(i, Ay, Sx, "ext_artinian_to_fg", s2)
        if i == 2:
            lim = seq.detected_limit
            ok = lim is not None and iso_up_to_shift(lim, kxy)
            out.append(_line("k[x,y]: Ext^2(D(R/y), R/xR) = R/(x,y)", tag, 1,
                             lim.dim if lim is not None else None, ok))
        else:
            out.append(_zero_limit_line(seq, f"k[x,y]: Ext^{i}(D(R/y), R/xR) = 0", tag))
    return out


def example_6_4(field=QQ, s_max: int = 5):
    """``Tor_i`` of artinian pairs over Gorenstein ``k[x]`` and ``k[x,y]``."""
    tag = "ex100420a"
    out = []
    R = _rings(field, 1)
    E = injective_hull(R)

    def trunc(s):
        return _cyc(R, f"x^{s}").to_flm()

    seq1 = hard_direction_stages(1, E, E, "tor_artinian_pair", s_max)
    out.append(_stage_line(seq1, "k[x]: Tor_1(E, E) stages are R/x^s (limit E)", tag,
                           list(range(1, s_max + 1)), trunc, transition="injective"))
    seq0 = hard_direction_stages(0, E, E, "tor_artinian_pair", s_max)
    out.append(_stage_line(seq0, "k[x]: Tor_0(E, E) stages vanish", tag, [0] * s_max,
                           transition=None))
    out.append(_line("k[x]: E (x) E = 0", tag, 0, tensor_with_artinian(E, E).dim))
    Ax = artinian_dual(_cyc(R, "x"))
    kx = _cyc(R, "x").to_flm()
    T0 = tensor_with_artinian(Ax, Ax)
    out.append(_line("k[x]: Tor_0(D(R/x), D(R/x)) = D(R/x)", tag, 1, T0.dim,
                     iso_up_to_shift(T0, kx)))
    seq = hard_direction_stages(1, Ax, Ax, "tor_artinian_pair", min(s_max, 4))
    lim = seq.detected_limit
    out.append(_line("k[x]: Tor_1(D(R/x), D(R/x)) = D(R/x)", tag, 1,
                     lim.dim if lim is not None else None,
                     lim is not None and iso_up_to_shift(lim, kx)))
    out.append(_line("k[x]: Tor_0(E, D(R/x)) = E/xE = 0", tag, 0,
                     tensor_with_artinian(E, Ax).dim))
    seq = hard_direction_stages(1, E, Ax, "tor_artinian_pair", min(s_max, 4))
    lim = seq.detected_limit
    out.append(_line("k[x]: Tor_1(E, D(R/x)) = (0 :_E x)", tag, 1,
                     lim.dim if lim is not None else None,
                     lim is not None and iso_up_to_shift(lim, kx)))
    S = _rings(field, 2)
    Ay, Ax2 = artinian_dual(_cyc(S, "y")), artinian_dual(_cyc(S, "x"))
    kxy = _cyc(S, "x", "y").to_flm()
    s2 = min(s_max, 3)
    out.append(_line("k[x,y]: Tor_0(D(R/y), D(R/x)) = 0", tag, 0,
                     tensor_with_artinian(Ay, Ax2).dim))
    for i in (1, 2):
        seq = hard_direction_stages(i, Ay, Ax2, "tor_artinian_pair", s2)
        if i == 2:
            lim = seq.detected_limit
            out.append(_line("k[x,y]: Tor_2(D(R/y), D(R/x)) = D(R/(x,y))", tag, 1,
                             lim.dim if lim is not None else None,
                             lim is not None and iso_up_to_shift(lim, kxy)))
        else:
            out.append(_zero_limit_line(seq, "k[x,y]: Tor_1(D(R/y), D(R/x)) = 0", tag))
    return out


def example_6_5(field=QQ):
    """``E (x) E = k`` over ``k[x,y]/(xy, y^2)``."""
    tag = "ex100420b"
    R = QuotientRing(field, ["x", "y"], ["x*y", "y^2"])
    E = injective_hull(R)
    T = tensor_with_artinian(E, E)
    k = _k(R)
    return [
        _line("E/mE = k", tag, 1, top_quotient(E, 1).dim),
        _line("m E = m^2 E", tag, 1, stabilization_exponent(E)),
        _line("E (x) E = k", tag, 1, T.dim, T.dim == 1 and iso_up_to_shift(T, k)),
    ]


def example_6_5_general(a: int, b: int, c: int, field=QQ):
    """``E_S (x) E_S = S/(x^a, y^(c-b))`` for ``S = k[x,y]/(x^a y^b, y^c)``."""
    if not (a >= 1 and b >= 1 and c > b):
        raise ValueError("need a >= 1 and c > b >= 1")
    tag = "ex100420b"
    S = QuotientRing(field, ["x", "y"], [f"x^{a}*y^{b}", f"y^{c}"])
    E = injective_hull(S)
    T = tensor_with_artinian(E, E)
    Q = _cyc(S, f"x^{a}", f"y^{c - b}")
    hq = Q.hilbert_table()
    ht = T.hilbert_table()
    shift = min(hq) - min(ht) if ht else 0
    aligned = {d + shift: v for d, v in ht.items()}
    return [
        _line(f"len E_S (x) E_S = a(c-b) = {a * (c - b)}", tag, a * (c - b), T.dim),
        _line("Hilbert function of E_S (x) E_S matches S/(x^a, y^(c-b)) up to shift", tag,
              {str(d): v for d, v in sorted(hq.items())},
              {str(d): v for d, v in sorted(aligned.items())}),
        _line("E_S (x) E_S is isomorphic to S/(x^a, y^(c-b)) up to shift", tag, True,
              iso_up_to_shift(T, Q.to_flm())),
    ]


_GENERAL = re.compile(r"^example-6-5-general\((\d+),\s*(\d+),\s*(\d+)\)$")


def run_preset(name: str, field=QQ):
    """Dispatch on a preset name; raises ``ValueError`` on bad names or parameters."""
    name = name.strip()
    table = {"example-6-2": example_6_2, "example-6-3": example_6_3,
             "example-6-4": example_6_4, "example-6-5": example_6_5}
    if name in table:
        return table[name](field)
    m = _GENERAL.match(name)
    if m:
        return example_6_5_general(*map(int, m.groups()), field=field)
    raise ValueError(f"unknown preset {name!r}")

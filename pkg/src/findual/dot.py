"""Hasse diagrams in Graphviz DOT syntax."""
from __future__ import annotations

from .io import label
from .order import FinitePoset, hasse_covers
from .spaces import Space


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _covers(P: FinitePoset) -> list:
    return sorted(hasse_covers(P), key=lambda c: (P.idx(c[0]), P.idx(c[1])))


def _body(P: FinitePoset, prefix: str, names: dict, attrs: dict, indent: str) -> list:
    ids = {x: f"{prefix}{i}" for i, x in enumerate(P.elements)}
    lines = []
    for x in P.elements:
        extra = "".join(f", {k}={_q(v)}" for k, v in sorted(attrs.get(x, {}).items()))
        lines.append(f"{indent}{ids[x]} [label={_q(names[x])}{extra}];")
    for a, b in _covers(P):
        lines.append(f"{indent}{ids[a]} -> {ids[b]};")
    return lines


def _space_attrs(X: Space) -> dict:
    attrs = {}
    for x in X.carrier.elements:
        if x == X.point:
            attrs[x] = {"shape": "doublecircle"}
        elif x in X.x0:
            attrs[x] = {"style": "filled", "fillcolor": "lightgrey"}
    return attrs


def export_dot(obj, target: str = "order") -> str:
    """``order``: the Hasse diagram (covers drawn bottom to top).

    ``dual-pair``: M beside its space X(M); points named ↑a or M,
    elements annotated with φ(a).
    """
    if target == "dual-pair":
        return _dual_pair(obj)
    if target != "order":
        raise ValueError(f"unknown target {target!r}")
    if isinstance(obj, Space):
        P, attrs = obj.carrier, _space_attrs(obj)
    else:
        P, attrs = obj, {}
    lines = ["digraph order {", "  rankdir=BT;", "  node [shape=circle];"]
    lines += _body(P, "n", {x: label(x) for x in P.elements}, attrs, "  ")
    lines.append("}")
    return "\n".join(lines) + "\n"


def point_names(M: FinitePoset, X: Space) -> dict:
    """↑a for principal filters, M for the whole carrier, the member list otherwise."""
    principal = {M.subset(M.up[i]): "↑" + label(M.elements[i]) for i in range(M.n)}
    full = frozenset(M.elements)
    out = {}
    for x in X.carrier.elements:
        # the whole carrier is also ↑(bottom); the point name wins
        out[x] = "M" if x == full else principal.get(x, label(x))
    return out


def _dual_pair(M: FinitePoset) -> str:
    from .functors import phi, spectrum

    X = spectrum(M)
    names = point_names(M, X)
    f = phi(M)
    m_names = {a: f"{label(a)}\nφ = {{{', '.join(names[x] for x in X.carrier.elements if x in f(a))}}}" for a in M.elements}
    lines = ["digraph dual_pair {", "  rankdir=BT;", "  node [shape=circle];"]
    lines += ["  subgraph cluster_algebra {", '    label="M";']
    lines += _body(M, "a", m_names, {}, "    ")
    lines += ["  }", "  subgraph cluster_space {", '    label="X(M)";']
    lines += _body(X.carrier, "x", names, _space_attrs(X), "    ")
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"

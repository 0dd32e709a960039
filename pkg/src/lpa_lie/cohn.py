"""Exact symbolic arithmetic in the Cohn path algebra of a graph.

Elements are finite linear combinations of basis terms ``p q*`` where p and q
are paths with a common range vertex.  Multiplication only ever uses the
path-composition and ghost-cancellation relations, under which the stated
terms really are a basis, so equality of elements is just equality of
coefficient maps.  The quotient relation at a regular vertex v is represented
explicitly by the generator ``y_v = v - sum of e e*`` over the edges leaving
v; identities in the path algebra itself are certified by exhibiting the
exact combination of such generators that accounts for the difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import EdgeId, Graph, VertexId, b_vectors
from .linalg import FieldSpec, GFElement

__all__ = [
    "PreconditionError",
    "PathWord",
    "CohnTerm",
    "CohnElement",
    "commutator",
    "trace_vector",
    "n_generator",
    "verify_witness",
    "CommutatorIdentity",
    "CommutatorWitnessReport",
    "path_bracket_witness",
]


class PreconditionError(ValueError):
    """An operation was called outside its stated hypotheses."""


@dataclass(frozen=True)
class PathWord:
    """A path: a start vertex followed by zero or more composable edges."""

    start: VertexId
    edges: tuple[EdgeId, ...] = ()

    def __post_init__(self):
        prev = self.start
        for e in self.edges:
            if e.source != prev:
                raise ValueError(
                    f"edges do not compose: {e.label!r} starts at {e.source.label!r}, "
                    f"expected {prev.label!r}"
                )
            prev = e.target

    @classmethod
    def vertex_word(cls, v: VertexId) -> "PathWord":
        return cls(v, ())

    @classmethod
    def from_edges(cls, edges) -> "PathWord":
        edges = tuple(edges)
        if not edges:
            raise ValueError("from_edges needs at least one edge; use vertex_word")
        return cls(edges[0].source, edges)

    @property
    def source(self) -> VertexId:
        return self.start

    @property
    def range(self) -> VertexId:
        return self.edges[-1].target if self.edges else self.start

    @property
    def length(self) -> int:
        return len(self.edges)

    def concat(self, other: "PathWord") -> "PathWord":
        if self.range != other.source:
            raise ValueError("paths do not compose")
        return PathWord(self.start, self.edges + other.edges)

    def strip_prefix(self, prefix: "PathWord") -> "PathWord | None":
        """The path h with ``self == prefix . h``, or None."""
        if prefix.length == 0:
            return self if self.source == prefix.start else None
        if prefix.length > self.length or self.edges[: prefix.length] != prefix.edges:
            return None
        rest = self.edges[prefix.length:]
        return PathWord(prefix.range, rest)

    def sort_key(self):
        if self.edges:
            return (self.length, tuple(e.label for e in self.edges))
        return (0, (self.start.label,))

    def __str__(self) -> str:
        if not self.edges:
            return self.start.label
        return " ".join(e.label for e in self.edges)


@dataclass(frozen=True)
class CohnTerm:
    """A basis term ``p q*``; p and q must share their range vertex."""

    p: PathWord
    q: PathWord

    def __post_init__(self):
        if self.p.range != self.q.range:
            raise ValueError(
                f"ranges differ: {self.p.range.label!r} vs {self.q.range.label!r}"
            )

    def sort_key(self):
        return (self.p.length + self.q.length, self.p.sort_key(), self.q.sort_key())

    def __str__(self) -> str:
        parts = [e.label for e in self.p.edges]
        parts += [f"{e.label}^*" for e in reversed(self.q.edges)]
        if not parts:
            return self.p.range.label
        return " ".join(parts)


def _mult_terms(a: CohnTerm, b: CohnTerm) -> CohnTerm | None:
    """Product of basis terms: ``(p q*)(t z*)`` collapses or dies.

    Nonzero only when one of q, t extends the other; the leftover path h is
    absorbed into p (if t = q.h) or into z (if q = t.h).
    """
    h = b.p.strip_prefix(a.q)
    if h is not None:
        return CohnTerm(a.p.concat(h), b.q)
    h = a.q.strip_prefix(b.p)
    if h is not None:
        return CohnTerm(a.p, b.q.concat(h))
    return None


class CohnElement:
    """A formal linear combination of basis terms over a prime subfield."""

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Graph, field: FieldSpec, terms: dict | None = None):
        self.graph = graph
        self.field = field
        self.terms = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, graph: Graph, field: FieldSpec) -> "CohnElement":
        return cls(graph, field)

    @classmethod
    def term(cls, graph: Graph, field: FieldSpec, p: PathWord, q: PathWord, coeff=1) -> "CohnElement":
        c = field.coerce(coeff)
        if not c:
            return cls.zero(graph, field)
        return cls(graph, field, {CohnTerm(p, q): c})

    @classmethod
    def vertex(cls, graph: Graph, field: FieldSpec, v: VertexId) -> "CohnElement":
        w = PathWord.vertex_word(v)
        return cls.term(graph, field, w, w)

    @classmethod
    def path(cls, graph: Graph, field: FieldSpec, p: PathWord) -> "CohnElement":
        return cls.term(graph, field, p, PathWord.vertex_word(p.range))

    @classmethod
    def ghost(cls, graph: Graph, field: FieldSpec, q: PathWord) -> "CohnElement":
        return cls.term(graph, field, PathWord.vertex_word(q.range), q)

    @classmethod
    def edge(cls, graph: Graph, field: FieldSpec, e: EdgeId) -> "CohnElement":
        return cls.path(graph, field, PathWord.from_edges([e]))

    @classmethod
    def ghost_edge(cls, graph: Graph, field: FieldSpec, e: EdgeId) -> "CohnElement":
        return cls.ghost(graph, field, PathWord.from_edges([e]))

    # -- ring operations ----------------------------------------------------

    def _check_compatible(self, other: "CohnElement"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field.name} vs {other.field.name}")
        if self.graph is not other.graph and self.graph != other.graph:
            raise ValueError("elements live over different graphs")

    def __add__(self, other):
        if not isinstance(other, CohnElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            acc = out.get(t)
            total = c if acc is None else acc + c
            if total:
                out[t] = total
            elif acc is not None:
                del out[t]
        return CohnElement(self.graph, self.field, out)

    def __neg__(self):
        return CohnElement(self.graph, self.field, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CohnElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff) -> "CohnElement":
        c = self.field.coerce(coeff)
        if not c:
            return CohnElement.zero(self.graph, self.field)
        return CohnElement(self.graph, self.field, {t: c * v for t, v in self.terms.items()})

    def __rmul__(self, coeff):
        if isinstance(coeff, (int, Fraction, GFElement)):
            return self.scale(coeff)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GFElement)):
            return self.scale(other)
        if not isinstance(other, CohnElement):
            return NotImplemented
        self._check_compatible(other)
        out: dict[CohnTerm, object] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = _mult_terms(t1, t2)
                if t is None:
                    continue
                c = c1 * c2
                acc = out.get(t)
                total = c if acc is None else acc + c
                if total:
                    out[t] = total
                elif acc is not None:
                    del out[t]
        return CohnElement(self.graph, self.field, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CohnElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t in sorted(self.terms, key=CohnTerm.sort_key):
            bits.append(f"{self.terms[t]} * {t}")
        return " + ".join(bits)

    __repr__ = __str__


def commutator(x: CohnElement, y: CohnElement) -> CohnElement:
    """The bracket ``x y - y x``."""
    return x * y - y * x


def trace_vector(x: CohnElement) -> list:
    """Coefficient vector of the diagonal trace map.

    A basis term ``p q*`` contributes its coefficient at the index of the
    common range vertex when p equals q, and nothing otherwise.  The trace of
    any product is symmetric in its factors, so commutators trace to zero.
    """
    out = [x.field.zero()] * x.graph.num_vertices
    for t, c in x.terms.items():
        if t.p == t.q:
            i = t.p.range.index
            out[i] = out[i] + c
    return out


def n_generator(g: Graph, field: FieldSpec, v: VertexId) -> CohnElement:
    """The quotient-ideal generator ``v - sum of e e*`` at a regular vertex."""
    if g.is_sink(v):
        raise PreconditionError(f"vertex {v.label!r} is a sink; no generator there")
    acc = CohnElement.vertex(g, field, v)
    for e in g.out_edges(v):
        w = PathWord.from_edges([e])
        acc = acc - CohnElement.term(g, field, w, w)
    return acc


def verify_witness(g: Graph, k_coeffs, t_coeffs, field: FieldSpec) -> bool:
    """Certify symbolically that a vertex combination is a sum of brackets.

    Given k with ``k = sum_i t_i B_i`` (t vanishing at non-regular vertices),
    the element ``W = -sum_i t_i sum_{s(e)=v_i} [e, e*]`` must equal
    ``sum_i k_i v_i + sum_i t_i y_i`` exactly, where the y_i absorb the
    difference between the Cohn algebra and its quotient.  Returns the result
    of that exact basis-level comparison; hypothesis violations raise
    ``PreconditionError`` instead.
    """
    m = g.num_vertices
    k = [field.coerce(c) for c in k_coeffs]
    t = [field.coerce(c) for c in t_coeffs]
    if len(k) != m or len(t) != m:
        raise PreconditionError(f"coefficient vectors must have length {m}")
    for i, v in enumerate(g.vertices):
        if not g.is_regular(v) and t[i]:
            raise PreconditionError(
                f"t must vanish at non-regular vertex {v.label!r}"
            )
    bvecs = b_vectors(g)
    for j in range(m):
        total = field.zero()
        for i in range(m):
            if t[i]:
                total = total + t[i] * field.coerce(bvecs[i][j])
        if total != k[j]:
            raise PreconditionError("k is not the claimed combination of the B-vectors")

    w = CohnElement.zero(g, field)
    for i, v in enumerate(g.vertices):
        if not t[i]:
            continue
        for e in g.out_edges(v):
            bracket = commutator(
                CohnElement.edge(g, field, e), CohnElement.ghost_edge(g, field, e)
            )
            w = w + bracket.scale(-t[i])

    rhs = CohnElement.zero(g, field)
    for i, v in enumerate(g.vertices):
        if k[i]:
            rhs = rhs + CohnElement.vertex(g, field, v).scale(k[i])
        if t[i]:
            rhs = rhs + n_generator(g, field, v).scale(t[i])
    return w == rhs


@dataclass(frozen=True)
class CommutatorIdentity:
    """One certified identity: ``target`` equals the sum of the brackets."""

    target: CohnElement
    brackets: tuple[tuple[CohnElement, CohnElement], ...]
    verified: bool

    def describe(self) -> str:
        lhs = " + ".join(f"[{x}, {y}]" for x, y in self.brackets)
        status = "verified" if self.verified else "FAILED"
        return f"{self.target} = {lhs}   ({status})"


@dataclass(frozen=True)
class CommutatorWitnessReport:
    identities: tuple[CommutatorIdentity, ...]

    @property
    def verified(self) -> bool:
        return all(ident.verified for ident in self.identities)


def _certify(target: CohnElement, brackets) -> CommutatorIdentity:
    total = CohnElement.zero(target.graph, target.field)
    for x, y in brackets:
        total = total + commutator(x, y)
    return CommutatorIdentity(target, tuple(brackets), total == target)


def path_bracket_witness(
    g: Graph,
    p: PathWord,
    q: PathWord | None = None,
    field: FieldSpec | None = None,
) -> CommutatorWitnessReport:
    """Exhibit explicit brackets for a path, ghost path, or ``p q*`` term.

    With q omitted: requires the source and range of p to differ, and
    certifies ``p = [p, r(p)]`` and ``p* = [r(p), p*]``.  With q given:
    requires that neither path extends the other by a closed path, and
    certifies ``p q*`` as ``[p, q*]`` plus (when p and q overlap) the
    single-path correction for the leftover piece.
    """
    if field is None:
        field = FieldSpec(0)
    if p.length == 0:
        raise PreconditionError("p must have length at least one")

    if q is None:
        if p.source == p.range:
            raise PreconditionError("p must have distinct source and range")
        r_el = CohnElement.vertex(g, field, p.range)
        p_el = CohnElement.path(g, field, p)
        pstar = CohnElement.ghost(g, field, p)
        return CommutatorWitnessReport(
            (
                _certify(p_el, [(p_el, r_el)]),
                _certify(pstar, [(r_el, pstar)]),
            )
        )

    if q.length == 0:
        raise PreconditionError("q must have length at least one")

    p_el = CohnElement.path(g, field, p)
    qstar = CohnElement.ghost(g, field, q)
    # the product is the basis term p q* when the ranges agree and zero
    # otherwise; the bracket identity is certified either way
    target = p_el * qstar

    tail = p.strip_prefix(q)
    if tail is not None:
        if tail.source == tail.range:
            raise PreconditionError(
                "excluded case: p extends q by a closed path (or p equals q)"
            )
        correction = CohnElement.path(g, field, tail)
        r_el = CohnElement.vertex(g, field, tail.range)
        brackets = [(p_el, qstar), (correction, r_el)]
        return CommutatorWitnessReport((_certify(target, brackets),))

    tail = q.strip_prefix(p)
    if tail is not None:
        if tail.source == tail.range:
            raise PreconditionError("excluded case: q extends p by a closed path")
        correction = CohnElement.ghost(g, field, tail)
        r_el = CohnElement.vertex(g, field, tail.range)
        brackets = [(p_el, qstar), (r_el, correction)]
        return CommutatorWitnessReport((_certify(target, brackets),))

    return CommutatorWitnessReport((_certify(target, [(p_el, qstar)]),))

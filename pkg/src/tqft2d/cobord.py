"""Cobordisms into k circles, their gluing, and Gram matrices of state spaces.

A cobordism without closed components is recorded by the set partition of
its boundary circles into connected components plus a genus per component.
Gluing two of them along all circles gives a closed surface whose
components are read off a bipartite graph: vertices are the blocks of both
sides, edges are the shared circles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import MismatchedK, ParseError, PreconditionViolation, SizeLimit
from .exact import MultiPoly, PolyMatrix, rank_and_kernel, rank_at
from .theory import FreeSequence, TheorySpec, alpha_coeffs

SPANNING_LIMIT = 2000

Block = Tuple[int, ...]


@dataclass(frozen=True)
class Cobordism:
    """Blocks of circles ``1..k`` with a genus per block, kept in canonical order."""

    k: int
    blocks: Tuple[Block, ...]
    genus: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        blocks = [tuple(sorted(b)) for b in self.blocks]
        genus = list(self.genus) if self.genus else [0] * len(blocks)
        if len(genus) != len(blocks):
            raise PreconditionViolation("one genus per block is required")
        if any(g < 0 for g in genus):
            raise PreconditionViolation("genus must be nonnegative")
        if any(not b for b in blocks):
            raise PreconditionViolation("blocks must be nonempty")
        circles = sorted(c for b in blocks for c in b)
        if circles != list(range(1, self.k + 1)):
            raise PreconditionViolation(f"blocks must partition 1..{self.k}")
        pairs = sorted(zip(blocks, genus))
        object.__setattr__(self, "blocks", tuple(b for b, _ in pairs))
        object.__setattr__(self, "genus", tuple(g for _, g in pairs))

    # constructors --------------------------------------------------------

    @classmethod
    def identity(cls, k: int) -> "Cobordism":
        """k disks."""
        return cls(k, tuple((i,) for i in range(1, k + 1)))

    @classmethod
    def handle(cls, i: int, k: int, power: int = 1) -> "Cobordism":
        """``x_i^power``: a handle-decorated disk on circle i."""
        c = cls.identity(k)
        return cls(k, c.blocks, tuple(power if b == (i,) else 0 for b in c.blocks))

    @classmethod
    def tube(cls, circles: Sequence[int], k: int) -> "Cobordism":
        """``y_I``: one genus-0 component bounding the circles in I."""
        inside = set(circles)
        rest = tuple((i,) for i in range(1, k + 1) if i not in inside)
        return cls(k, (tuple(sorted(inside)),) + rest)

    @classmethod
    def from_text(cls, text: str, k: Optional[int] = None) -> "Cobordism":
        """Parse ``"1,2(1)|3"``; the empty string is the empty cobordism."""
        text = text.strip()
        blocks: List[Block] = []
        genus: List[int] = []
        if text:
            for chunk in text.split("|"):
                chunk = chunk.strip()
                g = 0
                if chunk.endswith(")"):
                    open_at = chunk.find("(")
                    if open_at < 0:
                        raise ParseError("unbalanced parenthesis", chunk)
                    try:
                        g = int(chunk[open_at + 1:-1])
                    except ValueError:
                        raise ParseError("genus must be an integer", chunk) from None
                    chunk = chunk[:open_at]
                try:
                    blocks.append(tuple(int(c) for c in chunk.split(",")))
                except ValueError:
                    raise ParseError("circle labels must be integers", chunk) from None
                genus.append(g)
        kk = max((c for b in blocks for c in b), default=0) if k is None else k
        try:
            return cls(kk, tuple(blocks), tuple(genus))
        except PreconditionViolation as exc:
            raise ParseError(str(exc), text) from None

    # views ---------------------------------------------------------------

    def __str__(self):
        return "|".join(
            ",".join(map(str, b)) + (f"({g})" if g else "") for b, g in zip(self.blocks, self.genus)
        )

    def label(self) -> str:
        """Monomial in the generators, e.g. ``y12*x1`` or ``x1^2*x2``."""
        parts = []
        for b, g in zip(self.blocks, self.genus):
            if len(b) > 1:
                parts.append("y" + "".join(map(str, b)) if self.k < 10 else "y" + "_".join(map(str, b)))
            if g:
                parts.append(f"x{b[0]}" + (f"^{g}" if g > 1 else ""))
        return "*".join(parts) or "1"

    def degree(self) -> int:
        return degree(self)

    def sort_key(self):
        big = tuple(b for b in self.blocks if len(b) > 1)
        # handles on lower circles first
        return (degree(self), big, self.blocks, tuple(-g for g in self.genus))


def degree(c: Cobordism) -> int:
    """``k - chi``: every block contributes ``2 - 2g - |B|`` to chi."""
    return c.k - sum(2 - 2 * g - len(b) for b, g in zip(c.blocks, c.genus))


# ---------------------------------------------------------------------------
# gluing


def _components(a: Cobordism, b: Cobordism) -> List[Tuple[List[int], List[int], List[int]]]:
    """Connected components of the gluing graph.

    Each entry is ``(circles, block indices of a, block indices of b)``.
    """
    if a.k != b.k:
        raise MismatchedK(f"k = {a.k} against k = {b.k}")
    parent = list(range(a.k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blk in a.blocks + b.blocks:
        r = find(blk[0])
        for c in blk[1:]:
            parent[find(c)] = r
    groups: Dict[int, Tuple[List[int], List[int], List[int]]] = {}
    for c in range(1, a.k + 1):
        groups.setdefault(find(c), ([], [], []))[0].append(c)
    for side, cob in ((1, a), (2, b)):
        for i, blk in enumerate(cob.blocks):
            groups[find(blk[0])][side].append(i)
    return sorted(groups.values())


def monoid_mul(a: Cobordism, b: Cobordism) -> Cobordism:
    """Merge boundary circles pairwise; genus grows by the cycle rank of the gluing graph."""
    blocks, genus = [], []
    for circles, ia, ib in _components(a, b):
        edges = len(circles)
        verts = len(ia) + len(ib)
        g = sum(a.genus[i] for i in ia) + sum(b.genus[j] for j in ib)
        blocks.append(tuple(circles))
        genus.append(g + edges - verts + 1)
    return Cobordism(a.k, tuple(blocks), tuple(genus))


def glued_genera(a: Cobordism, b: Cobordism) -> List[int]:
    """Genera of the closed components of ``a`` glued to ``b``, via Euler characteristic."""
    out = []
    for _, ia, ib in _components(a, b):
        chi = sum(2 - 2 * a.genus[i] - len(a.blocks[i]) for i in ia)
        chi += sum(2 - 2 * b.genus[j] - len(b.blocks[j]) for j in ib)
        out.append(1 - chi // 2)
    return sorted(out)


def _evaluate_genera(genera: Sequence[int], alphas: Sequence[MultiPoly]) -> MultiPoly:
    out = MultiPoly.const(1)
    for g in genera:
        out = out * alphas[g]
        if not out:
            break
    return out


def glue_pairing(a: Cobordism, b: Cobordism, theory: TheorySpec) -> MultiPoly:
    """Evaluate the closed surface obtained by gluing along all circles."""
    genera = glued_genera(a, b)
    if not genera:
        return MultiPoly.const(1)
    return _evaluate_genera(genera, alpha_coeffs(theory, max(genera)))


# ---------------------------------------------------------------------------
# spanning sets and Gram matrices


def set_partitions(k: int) -> Iterator[Tuple[Block, ...]]:
    """All set partitions of ``1..k`` via restricted growth strings."""
    if k == 0:
        yield ()
        return
    labels = [0] * k

    def rec(i, top):
        if i == k:
            blocks: List[List[int]] = [[] for _ in range(top + 1)]
            for c, lab in enumerate(labels, 1):
                blocks[lab].append(c)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)


def _resolve_cap(theory: Optional[TheorySpec], genus_cap: Optional[int]) -> int:
    if genus_cap is None:
        if theory is None:
            raise PreconditionViolation("a genus cap or a theory is required")
        genus_cap = theory.default_genus_cap()
    if genus_cap < 0:
        raise PreconditionViolation("genus cap must be nonnegative")
    return genus_cap


def spanning_set(k: int, theory: Optional[TheorySpec] = None, genus_cap: Optional[int] = None,
                 limit: int = SPANNING_LIMIT) -> List[Cobordism]:
    """Every cobordism with per-block genus at most the cap, sorted by degree."""
    if k < 0:
        raise PreconditionViolation("k must be nonnegative")
    cap = _resolve_cap(theory, genus_cap)
    out: List[Cobordism] = []
    for blocks in set_partitions(k):
        for genus in product(range(cap + 1), repeat=len(blocks)):
            out.append(Cobordism(k, blocks, genus))
            if len(out) > limit:
                raise SizeLimit(f"spanning set exceeds {limit} elements")
    out.sort(key=Cobordism.sort_key)
    return out


def gram_matrix_of(elements: Sequence[Cobordism], theory: TheorySpec) -> PolyMatrix:
    """Pairing matrix of an arbitrary list of cobordisms with a common k."""
    genera = [[glued_genera(a, b) for b in elements] for a in elements]
    top = max((g for row in genera for gs in row for g in gs), default=0)
    alphas = alpha_coeffs(theory, top)
    cache: Dict[Tuple[int, ...], MultiPoly] = {}
    rows = []
    for row in genera:
        out = []
        for gs in row:
            key = tuple(gs)
            if key not in cache:
                cache[key] = _evaluate_genera(gs, alphas)
            out.append(cache[key])
        rows.append(out)
    return PolyMatrix(rows, theory.ring)


def gram_matrix(k: int, theory: TheorySpec, genus_cap: Optional[int] = None,
                limit: int = SPANNING_LIMIT) -> PolyMatrix:
    return gram_matrix_of(spanning_set(k, theory, genus_cap, limit), theory)


# ---------------------------------------------------------------------------
# reports

Relation = List[Tuple[MultiPoly, Cobordism]]


def render_relation(rel: Relation, labels: bool = False) -> str:
    """``c1*[e1] + c2*[e2] ...`` with canonical coefficients."""
    parts = []
    for coeff, c in rel:
        name = c.label() if labels else f"[{c}]"
        s = str(coeff)
        if s == "1":
            term = name
        elif s == "-1":
            term = "-" + name
        elif s.startswith("-1*"):
            term = f"-{s[3:]}*{name}"
        elif coeff.is_monomial():
            term = f"{s}*{name}"
        else:
            term = f"({s})*{name}"
        parts.append(term)
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def graded_text(graded: Dict[int, int]) -> str:
    """``{0: 1, 2: 6}`` renders as ``1+6q^2``."""
    parts = []
    for d in sorted(graded):
        n = graded[d]
        if d == 0:
            parts.append(str(n))
        else:
            mono = "q" if d == 1 else f"q^{d}"
            parts.append(mono if n == 1 else f"{n}{mono}")
    return "+".join(parts) or "0"


@dataclass(frozen=True)
class GramReport:
    k: int
    spanning_size: int
    rank: int
    graded_rank: Dict[int, int]
    pivot_elements: List[Cobordism]
    kernel_relations: List[Relation]
    generic_basis: bool = True

    @property
    def graded_text(self) -> str:
        return graded_text(self.graded_rank)

    def graded_poly(self) -> MultiPoly:
        out = MultiPoly.const(0, ("q",))
        for d, n in self.graded_rank.items():
            out = out + MultiPoly.monomial({"q": d}, n, ("q",))
        return out


def _descending_degree_order(elements: Sequence[Cobordism]) -> List[int]:
    # top degree first; ties keep spanning order
    return sorted(range(len(elements)), key=lambda i: (-degree(elements[i]), i))


def state_space_report(k: int, theory: TheorySpec, genus_cap: Optional[int] = None,
                       at: Optional[Dict[str, object]] = None, kernel: bool = True,
                       limit: int = SPANNING_LIMIT) -> GramReport:
    """Rank, graded rank and relations of A(k) over the parameter fraction field.

    Pivots are chosen greedily from the highest degree down, so graded ranks
    count the top-degree elements first.  With ``at`` the parameters are
    specialized before elimination and the report is flagged as possibly
    non-generic.
    """
    elements = spanning_set(k, theory, genus_cap, limit)
    g = gram_matrix_of(elements, theory)
    order = _descending_degree_order(elements)
    if at:
        res = rank_at(g, at, kernel=kernel, pivot_order=order)
    else:
        res = rank_and_kernel(g, kernel=kernel, pivot_order=order)
    graded: Dict[int, int] = {}
    for j in res.pivot_cols:
        d = degree(elements[j])
        graded[d] = graded.get(d, 0) + 1
    relations = [[(c, elements[i]) for i, c in enumerate(v) if c] for v in res.kernel]
    return GramReport(
        k=k,
        spanning_size=len(elements),
        rank=res.rank,
        graded_rank=graded,
        pivot_elements=[elements[j] for j in sorted(res.pivot_cols)],
        kernel_relations=relations,
        generic_basis=not at,
    )


def free_theory_independent(k: int, genus_cap: int, seed: int = 0, limit: int = SPANNING_LIMIT) -> bool:
    """Full rank of the capped Gram matrix with every alpha_g independent.

    Full rank at one rational point already proves generic full rank; the
    symbolic elimination only runs when the random point is unlucky.
    """
    theory = FreeSequence()
    elements = spanning_set(k, genus_cap=genus_cap, limit=limit)
    g = gram_matrix_of(elements, theory)
    n = len(elements)
    rng = random.Random(seed)
    point = {v: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for v in g.vars}
    if rank_at(g, point).rank == n:
        return True
    return rank_and_kernel(g, kernel=False).rank == n

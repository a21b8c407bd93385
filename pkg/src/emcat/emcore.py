"""The ambient-category interface and the generic factorization calculus.

An EmInstance packages a finitely complete category together with a
factorization system (E, M): it knows how to enumerate maps, compose
them, form pullbacks, decide membership in M, and factor any map as an
E-map followed by an M-map.  Everything else in the package is computed
against this interface, so the calculus code is shared across all
concrete settings.

Membership in E is always derived, never trusted: a map is in E exactly
when the M-part of its factorization is invertible.  This keeps every
instance honest about its own factorizations.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .budget import Budget, as_budget
from .errors import SizeBudgetExceeded, TargetMismatch, UnsupportedOperation


@dataclass(frozen=True)
class Factorization:
    """A map split as an E-part followed by an M-part (diagrammatic)."""

    e: Any
    m: Any


@dataclass(frozen=True)
class Pullback:
    """A chosen pullback of f: A -> X and m: B -> X.

    ``to_left: P -> A`` and ``to_right: P -> B`` satisfy
    ``to_left ; f == to_right ; m``; ``mediate(u, v)`` produces the unique
    map into P from a commuting pair u: Z -> A, v: Z -> B.
    """

    space: Any
    to_left: Any
    to_right: Any
    mediate: Callable[[Any, Any], Any] = field(compare=False)


@dataclass(frozen=True)
class Product:
    """A chosen binary product with its pairing operation."""

    space: Any
    proj_left: Any
    proj_right: Any
    pair: Callable[[Any, Any], Any] = field(compare=False)


class EmInstance(ABC):
    """A finite ambient category equipped with a factorization system."""

    name: str = "abstract"

    # -- plumbing ----------------------------------------------------------

    def dom(self, f: Any) -> Any:
        return f.dom

    def cod(self, f: Any) -> Any:
        return f.cod

    def map_eq(self, f: Any, g: Any) -> bool:
        return f == g

    def space_eq(self, X: Any, Y: Any) -> bool:
        return X == Y

    @abstractmethod
    def identity(self, X: Any) -> Any: ...

    @abstractmethod
    def compose(self, f: Any, g: Any) -> Any:
        """Diagrammatic composite: f then g."""

    @abstractmethod
    def terminal(self) -> Any: ...

    @abstractmethod
    def bang(self, X: Any) -> Any:
        """The unique map X -> 1."""

    @abstractmethod
    def points(self, X: Any) -> list[Any]:
        """All maps 1 -> X, in a fixed enumeration order."""

    @abstractmethod
    def maps(self, A: Any, B: Any, budget: "int | Budget | None" = None) -> list[Any]:
        """All maps A -> B, duplicate-free, deterministic order."""

    def maps_over(self, p: Any, q: Any, budget: "int | Budget | None" = None) -> list[Any]:
        """All u with u ; q == p (maps over the common target of p and q).

        The default filters the full hom-set; instances override this with
        a constrained search when they can do better.
        """
        if not self.space_eq(self.cod(p), self.cod(q)):
            raise TargetMismatch("maps_over: p and q must share a target")
        return [u for u in self.maps(self.dom(p), self.dom(q), budget)
                if self.map_eq(self.compose(u, q), p)]

    @abstractmethod
    def pullback(self, f: Any, m: Any) -> Pullback:
        """Pullback of f: A -> X and m: B -> X along their common target."""

    @abstractmethod
    def is_invertible(self, f: Any) -> bool: ...

    def inverse(self, f: Any) -> Any:
        """The two-sided inverse of an invertible map (search fallback)."""
        A, B = self.dom(f), self.cod(f)
        for g in self.maps(B, A):
            if self.map_eq(self.compose(f, g), self.identity(A)) and \
               self.map_eq(self.compose(g, f), self.identity(B)):
                return g
        raise TargetMismatch("inverse: map is not invertible")

    # -- the factorization system -----------------------------------------

    @abstractmethod
    def in_M(self, f: Any) -> bool:
        """Native membership test for the right class M."""

    @abstractmethod
    def factorize(self, p: Any) -> Factorization:
        """Factor p as an E-part followed by an M-part."""

    # -- optional capabilities ----------------------------------------------

    def product(self, A: Any, B: Any) -> Product:
        raise UnsupportedOperation(f"{self.name}: products not provided")

    def opposite_space(self, X: Any) -> Any:
        raise UnsupportedOperation(f"{self.name}: no opposite")

    def opposite_map(self, f: Any) -> Any:
        raise UnsupportedOperation(f"{self.name}: no opposite")

    def has_opposite(self) -> bool:
        return False

    def discrete_spaces_over(self, X: Any, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[Any]:
        """Enumerate M-maps into X with all fibers of size <= size_bound.

        Complete for the stated bound, deterministic order.
        """
        raise UnsupportedOperation(f"{self.name}: discrete space enumeration not provided")


# ---------------------------------------------------------------------------
# reports

@dataclass
class OrthogonalityReport:
    """Outcome of an orthogonality check e ⊥ m.

    ``counterexample`` names the square and its diagonal count when the
    check fails; field names are stable for JSON output.
    """

    holds: bool
    squares_checked: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "squares_checked": self.squares_checked,
            "counterexample": self.counterexample,
        }


@dataclass
class UniversalityReport:
    """Outcome of a reflection universality check."""

    holds: bool
    cases_checked: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "cases_checked": self.cases_checked,
            "counterexample": self.counterexample,
        }


@dataclass
class AdjunctionReport:
    """Outcome of checking the direct-image / pullback adjunction."""

    holds: bool
    pairs_checked: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
        }


# ---------------------------------------------------------------------------
# generic operations

def describe_map(inst: EmInstance, f: Any) -> str:
    return repr(f)


def check_orthogonal(inst: EmInstance, e: Any, m: Any,
                     budget: "int | Budget | None" = None) -> OrthogonalityReport:
    """Decide e ⊥ m by enumerating every commuting square and counting its
    diagonal fillers; orthogonality demands exactly one for each square.

    A square from e: A -> B to m: S -> T is a pair (f: A -> S, g: B -> T)
    with e ; g == f ; m; a diagonal is u: B -> S with e ; u == f and
    u ; m == g.
    """
    bud = as_budget(budget, "orthogonality square enumeration")
    A, B = inst.dom(e), inst.cod(e)
    S, T = inst.dom(m), inst.cod(m)
    squares = 0
    for g in inst.maps(B, T, bud):
        bud.tick()
        eg = inst.compose(e, g)
        for f in inst.maps_over(eg, m, bud):
            squares += 1
            diagonals = 0
            for u in inst.maps_over(g, m, bud):
                bud.tick()
                if inst.map_eq(inst.compose(e, u), f):
                    diagonals += 1
            if diagonals != 1:
                return OrthogonalityReport(
                    holds=False,
                    squares_checked=squares,
                    counterexample={
                        "square": {"f": repr(f), "g": repr(g)},
                        "diagonals": diagonals,
                    },
                )
    return OrthogonalityReport(holds=True, squares_checked=squares)


def in_E(inst: EmInstance, f: Any) -> bool:
    """Left-class membership, derived: the M-part of f's factorization is
    invertible exactly when f itself already does all the E-work."""
    return inst.is_invertible(inst.factorize(f).m)


def direct_image(inst: EmInstance, f: Any, m: Any) -> Any:
    """The image of a discrete space m over X along f: X -> Y: the M-part
    of the factorization of m ; f."""
    return inst.factorize(inst.compose(m, f)).m


def direct_image_data(inst: EmInstance, f: Any, m: Any) -> Factorization:
    """Direct image together with its unit (the E-part)."""
    return inst.factorize(inst.compose(m, f))


def delta(inst: EmInstance, f: Any, n: Any) -> Pullback:
    """Base change of n along f: the pullback projection over the domain
    of f is the pulled-back discrete space."""
    return inst.pullback(f, n)


def reflect_map(inst: EmInstance, f: Any, alpha: Any, m1: Any, m2: Any) -> Any:
    """Functorial action of the direct image on a map alpha: m1 -> m2 over X.

    The unique w over Y making the unit square commute:
    unit1 ; w == alpha ; unit2.  Existence and uniqueness are guaranteed by
    the reflection property of factorizations; both are asserted here.
    """
    f1 = inst.factorize(inst.compose(m1, f))
    f2 = inst.factorize(inst.compose(m2, f))
    want = inst.compose(alpha, f2.e)
    found = [w for w in inst.maps_over(f1.m, f2.m)
             if inst.map_eq(inst.compose(f1.e, w), want)]
    if len(found) != 1:
        raise TargetMismatch(
            f"direct image action: expected a unique factoring, found {len(found)}")
    return found[0]


def iso_over_base(inst: EmInstance, p: Any, q: Any,
                  budget: "int | Budget | None" = None) -> Optional[tuple[Any, Any]]:
    """Search for a mutually inverse pair of maps over the common base.

    Returns (u: dom p -> dom q, v: dom q -> dom p) with u ; q == p,
    v ; p == q, u ; v == id, v ; u == id, or None.
    """
    bud = as_budget(budget, "isomorphism over base")
    ups = inst.maps_over(p, q, bud)
    if not ups:
        return None
    downs = inst.maps_over(q, p, bud)
    id_p = inst.identity(inst.dom(p))
    id_q = inst.identity(inst.dom(q))
    for u in ups:
        for v in downs:
            bud.tick()
            if inst.map_eq(inst.compose(u, v), id_p) and inst.map_eq(inst.compose(v, u), id_q):
                return u, v
    return None


def reflection_universality_check(
    inst: EmInstance,
    p: Any,
    e: Any,
    m: Any,
    size_bound: int = 3,
    budget: "int | Budget | None" = None,
    competitors: Optional[Sequence[Any]] = None,
) -> UniversalityReport:
    """Verify that e: p -> m exhibits m as the reflection of p among
    discrete spaces over the base.

    For every enumerated M-map n over the base (fibers bounded by
    ``size_bound``) and every map u: p -> n over the base, exactly one
    w: m -> n over the base satisfies e ; w == u.  A precomputed competitor
    list can be passed in to share enumerations across many checks.
    """
    bud = as_budget(budget, "reflection universality")
    X = inst.cod(p)
    if not inst.map_eq(inst.compose(e, m), p):
        return UniversalityReport(False, 0, {"reason": "e ; m != p"})
    if not inst.in_M(m):
        return UniversalityReport(False, 0, {"reason": "m not in M"})
    if competitors is None:
        competitors = inst.discrete_spaces_over(X, size_bound, bud)
    cases = 0
    for n in competitors:
        for u in inst.maps_over(p, n, bud):
            cases += 1
            hits = 0
            for w in inst.maps_over(m, n, bud):
                bud.tick()
                if inst.map_eq(inst.compose(e, w), u):
                    hits += 1
            if hits != 1:
                return UniversalityReport(
                    False, cases,
                    {"competitor": repr(n), "map": repr(u), "factorizations": hits},
                )
    return UniversalityReport(True, cases)


def factorization_unique_up_to_iso(inst: EmInstance, p: Any,
                                   e2: Any, m2: Any,
                                   budget: "int | Budget | None" = None) -> bool:
    """Given a second factorization (e2, m2) of p with m2 in M and e2 in E,
    check there is a unique invertible link from the canonical one."""
    bud = as_budget(budget, "factorization comparison")
    fac = inst.factorize(p)
    links = [w for w in inst.maps_over(fac.m, m2, bud)
             if inst.map_eq(inst.compose(fac.e, w), e2)]
    if len(links) != 1:
        return False
    return inst.is_invertible(links[0])


def check_adjunction_ex_delta(
    inst: EmInstance,
    f: Any,
    size_bound: int = 2,
    budget: "int | Budget | None" = None,
    naturality_samples: int = 60,
) -> AdjunctionReport:
    """Check that direct image along f is left adjoint to base change.

    For discrete m over X and n over Y the transpose sends
    v: image(m) -> n (over Y) to the pairing of m with unit ; v (over X);
    this must be a bijection of the two finite hom-sets, natural in both
    slots.  Naturality is verified on enumerated pre- and post-composition
    triangles, capped at ``naturality_samples`` per slot.
    """
    bud = as_budget(budget, "image/base-change adjunction")
    X, Y = inst.dom(f), inst.cod(f)
    ms = inst.discrete_spaces_over(X, size_bound, bud)
    ns = inst.discrete_spaces_over(Y, size_bound, bud)
    units = {m: inst.factorize(inst.compose(m, f)) for m in ms}
    pulled = {n: inst.pullback(f, n) for n in ns}

    def transpose(m: Any, n: Any, v: Any) -> Any:
        fac, pb = units[m], pulled[n]
        return pb.mediate(m, inst.compose(fac.e, v))

    pairs = 0
    for m in ms:
        for n in ns:
            pairs += 1
            bud.tick()
            upstairs = inst.maps_over(units[m].m, n, bud)
            downstairs = inst.maps_over(m, pulled[n].to_left, bud)
            transposed = [transpose(m, n, v) for v in upstairs]
            if len(set(transposed)) != len(upstairs) or len(upstairs) != len(downstairs):
                return AdjunctionReport(
                    False, pairs,
                    {"m": repr(m), "n": repr(n),
                     "upstairs": len(upstairs), "downstairs": len(downstairs)},
                )
            for w in transposed:
                if not any(inst.map_eq(w, d) for d in downstairs):
                    return AdjunctionReport(
                        False, pairs,
                        {"m": repr(m), "n": repr(n), "reason": "transpose escapes hom-set"},
                    )

    from itertools import islice

    def post_cases():
        for n in ns:
            for n2 in ns:
                for beta in inst.maps_over(n, n2, bud):
                    delta_beta = pulled[n2].mediate(
                        pulled[n].to_left, inst.compose(pulled[n].to_right, beta))
                    for m in ms:
                        for v in inst.maps_over(units[m].m, n, bud):
                            yield n, n2, beta, delta_beta, m, v

    for n, n2, beta, delta_beta, m, v in islice(post_cases(), naturality_samples):
        bud.tick()
        lhs = transpose(m, n2, inst.compose(v, beta))
        rhs = inst.compose(transpose(m, n, v), delta_beta)
        if not inst.map_eq(lhs, rhs):
            return AdjunctionReport(
                False, pairs, {"n": repr(n), "reason": "naturality (post) fails"})

    def pre_cases():
        for m2 in ms:
            for m in ms:
                for alpha in inst.maps_over(m2, m, bud):
                    image_alpha = reflect_map(inst, f, alpha, m2, m)
                    for n in ns:
                        for v in inst.maps_over(units[m].m, n, bud):
                            yield m2, m, alpha, image_alpha, n, v

    for m2, m, alpha, image_alpha, n, v in islice(pre_cases(), naturality_samples):
        bud.tick()
        lhs = transpose(m2, n, inst.compose(image_alpha, v))
        rhs = inst.compose(alpha, transpose(m, n, v))
        if not inst.map_eq(lhs, rhs):
            return AdjunctionReport(
                False, pairs, {"m": repr(m), "reason": "naturality (pre) fails"})
    return AdjunctionReport(True, pairs)

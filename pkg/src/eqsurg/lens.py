"""Lens-space factorization pipeline and the example catalogs.

Factors the two gluing involutions +-[[-q, p'], [p, q]] of L(p,q) (for
q^2 = 1 mod p) into mirrored twist words over the standard base, verifies
them against the target matrix, emits surgery and contact diagrams, and
provides the S^1 x S^2, RP^3 and chain-of-unknots catalogs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .contact import ContactDiagram, TightnessHint, legalize
from .contfrac import ContFrac, Flavor, expand, honda_count, is_palindrome
from .matrices import CurveClass, IntMatrix
from .surgery import SurgeryDiagram, word_to_diagram
from .words import (
    CST,
    CURVE_A,
    CURVE_AMB,
    CURVE_APB,
    CURVE_B,
    ShapeError,
    TwistWord,
    apply_fix_rule,
    eval_word,
    find_fix_rule,
    format_word,
    validate_equivariant_shape,
)


class InadmissiblePair(ValueError):
    pass


class Variant(enum.Enum):
    C = "C"
    C_PRIME = "C'"

    @staticmethod
    def parse(text: str) -> "Variant":
        if text in ("C", "c"):
            return Variant.C
        if text in ("C'", "c'", "Cprime", "cprime", "C_prime"):
            return Variant.C_PRIME
        raise InadmissiblePair(f"unknown variant {text!r}")


@dataclass(frozen=True)
class LensTarget:
    """Gluing involution of L(p,q): +-[[-q, p'], [p, q]] with q^2 + p*p' = 1."""

    p: int
    q: int
    variant: Variant

    def __post_init__(self):
        p, q = self.p, self.q
        if not (p > q > 0):
            raise InadmissiblePair(f"need p > q > 0, got ({p}, {q})")
        from math import gcd

        if gcd(p, q) != 1:
            raise InadmissiblePair(f"({p}, {q}) are not coprime")
        if (q * q) % p != 1 % p:
            raise InadmissiblePair(
                f"q^2 = {q * q % p} mod {p}; the gluing map is an involution "
                "only when q^2 = 1 mod p"
            )

    @property
    def p_prime(self) -> int:
        return (1 - self.q * self.q) // self.p

    @property
    def matrix(self) -> IntMatrix:
        m = IntMatrix.from_rows([[-self.q, self.p_prime], [self.p, self.q]])
        return m if self.variant is Variant.C else -m


def admissible_pairs(max_p: int) -> list[tuple[int, int]]:
    """All (p, q) with 2 <= p <= max_p, 0 < q < p, gcd 1, q^2 = 1 mod p."""
    from math import gcd

    return [
        (p, q)
        for p in range(2, max_p + 1)
        for q in range(1, p)
        if gcd(p, q) == 1 and (q * q) % p == 1 % p
    ]


def _swap(curve: CurveClass) -> CurveClass:
    return curve.image_under(CST)


def _half(count: int, terms: tuple[int, ...]) -> list[tuple[CurveClass, int]]:
    # Factor i (1-based) twists along b for odd i and a for even i.
    return [
        (CURVE_B if i % 2 == 1 else CURVE_A, terms[i - 1]) for i in range(1, count + 1)
    ]


def _mirrored(half: list[tuple[CurveClass, int]]) -> list[tuple[CurveClass, int]]:
    return [(_swap(c), e) for c, e in reversed(half)]


_SIX_BA = [(CURVE_B, -1), (CURVE_A, -1)] * 3  # b^-1 a^-1 repeated, = A^2 = -I
_SIX_AB = [(CURVE_A, -1), (CURVE_B, -1)] * 3


def _factor(terms: tuple[int, ...], prime: bool) -> TwistWord:
    n = len(terms)
    k, case = divmod(n, 4)
    if not prime:
        if case == 0:
            left = _half(2 * k, terms)
            middle: list[tuple[CurveClass, int]] = []
        elif case == 1:
            left = _half(2 * k, terms)
            middle = [(CURVE_A, -1), (CURVE_APB, terms[2 * k] - 1), (CURVE_B, -1)]
        elif case == 2:
            left = _half(2 * k + 1, terms)
            middle = list(_SIX_BA)
        else:
            left = _half(2 * k + 1, terms)
            middle = [(CURVE_B, 1), (CURVE_APB, terms[2 * k + 1] + 1), (CURVE_A, 1)]
    else:
        if case == 0:
            left = _half(2 * k, terms)
            middle = list(_SIX_AB)
        elif case == 1:
            left = _half(2 * k, terms)
            middle = [(CURVE_A, 1), (CURVE_AMB, terms[2 * k] + 1), (CURVE_B, 1)]
        elif case == 2:
            left = _half(2 * k + 1, terms)
            middle = []
        else:
            left = _half(2 * k + 1, terms)
            middle = [(CURVE_B, -1), (CURVE_AMB, terms[2 * k + 1] - 1), (CURVE_A, -1)]
    factors = left + middle + _mirrored(left)
    return TwistWord.of(factors, base=CST)


def factor_C(p: int, q: int) -> TwistWord:
    """Mirrored twist word for the + gluing involution of L(p,q)."""
    target = LensTarget(p, q, Variant.C)
    cf = expand(p, q, Flavor.POSITIVE)
    return _factor(cf.terms, prime=False)


def factor_Cprime(p: int, q: int) -> TwistWord:
    """Mirrored twist word for the - gluing involution of L(p,q)."""
    target = LensTarget(p, q, Variant.C_PRIME)
    cf = expand(p, q, Flavor.POSITIVE)
    return _factor(cf.terms, prime=True)


def case_label(p: int, q: int) -> str:
    n = len(expand(p, q, Flavor.POSITIVE))
    return f"n={n} (4k+{n % 4})"


@dataclass(frozen=True)
class BuildReport:
    target: LensTarget
    cf: ContFrac
    palindrome: bool
    word: TwistWord
    matrix_ok: bool
    shape_ok: bool
    fix_rule_applied: bool
    diagram: Optional[SurgeryDiagram]
    contact: Optional[ContactDiagram]

    @property
    def legal(self) -> bool:
        return self.contact is not None and self.contact.overall_legal

    @property
    def flags(self) -> list[str]:
        return [] if self.contact is None else self.contact.flags()

    def to_json_dict(self) -> dict:
        return {
            "p": self.target.p,
            "q": self.target.q,
            "variant": self.target.variant.value,
            "cf": list(self.cf.terms),
            "palindrome": self.palindrome,
            "word": format_word(self.word),
            "matrix_ok": self.matrix_ok,
            "shape_ok": self.shape_ok,
            "fix_rule_applied": self.fix_rule_applied,
            "flags": self.flags,
            "legal": self.legal,
            "diagram": None if self.diagram is None else self.diagram.to_json_dict(),
            "contact": None if self.contact is None else self.contact.to_json_dict(),
        }


def build(p: int, q: int, variant: Variant) -> BuildReport:
    """Factor, verify, and legalize the (p, q) gluing of the given variant.

    The matrix verdict is recomputed from scratch; when the emitted word
    contains the rewrite pattern a^-1 (a+b)^1 b^-1 and the raw contact
    diagram is illegal, the rewrite is applied and the diagram rebuilt.
    """
    target = LensTarget(p, q, variant)
    cf = expand(p, q, Flavor.POSITIVE)
    palindrome = is_palindrome(cf)
    word = _factor(cf.terms, prime=variant is Variant.C_PRIME)
    matrix_ok = eval_word(word) == target.matrix
    fix_applied = False

    def assemble(w: TwistWord):
        shape = validate_equivariant_shape(w)
        diagram = word_to_diagram(shape)
        contact = legalize(diagram, fix_rule_available=find_fix_rule(w) is not None)
        return diagram, contact

    try:
        diagram, contact = assemble(word)
        shape_ok = True
    except ShapeError:
        return BuildReport(target, cf, palindrome, word, matrix_ok, False, False, None, None)

    if not contact.overall_legal and find_fix_rule(word) is not None:
        fixed = apply_fix_rule(word)
        if eval_word(fixed) == target.matrix:
            word = fixed
            matrix_ok = True
            fix_applied = True
            diagram, contact = assemble(word)
    return BuildReport(
        target, cf, palindrome, word, matrix_ok, shape_ok, fix_applied, diagram, contact
    )


# ---------------------------------------------------------------------------
# Catalogs


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    word: TwistWord
    expected_matrix: IntMatrix
    summary: str
    tightness_hint: TightnessHint

    @property
    def matrix_ok(self) -> bool:
        return eval_word(self.word) == self.expected_matrix

    def diagrams(self) -> tuple[SurgeryDiagram, ContactDiagram]:
        shape = validate_equivariant_shape(self.word)
        d = word_to_diagram(shape)
        return d, legalize(d)

    def to_json_dict(self) -> dict:
        d, c = self.diagrams()
        return {
            "name": self.name,
            "word": format_word(self.word),
            "expected_matrix": self.expected_matrix.to_lists(),
            "matrix_ok": self.matrix_ok,
            "summary": self.summary,
            "tightness_hint": self.tightness_hint.value,
            "diagram": d.to_json_dict(),
            "contact": c.to_json_dict(),
        }


def catalog_s1xs2() -> list[CatalogEntry]:
    """The four real structures on S^1 x S^2 with their surgery diagrams."""
    return [
        CatalogEntry(
            "s1",
            TwistWord.of([(CURVE_APB, -1)], base=CST),
            IntMatrix.from_rows([[-1, 2], [0, 1]]),
            "equivariant (-1)-surgery of type 4_2 on the unknot a+b",
            TightnessHint.TIGHT,
        ),
        CatalogEntry(
            "s2",
            TwistWord.of([(CURVE_AMB, 1)], base=CST),
            IntMatrix.from_rows([[1, 2], [0, -1]]),
            "equivariant (+1)-surgery of type 1_1 on the unknot a-b",
            TightnessHint.TIGHT,
        ),
        CatalogEntry(
            "s3",
            TwistWord.of([(CURVE_B, -1), (CURVE_A, -1)], base=CST),
            IntMatrix.from_rows([[-1, 1], [0, 1]]),
            "equivariant (+1)-surgery of type 5 on the Hopf pair (a, b)",
            TightnessHint.TIGHT,
        ),
        CatalogEntry(
            "s4",
            TwistWord.of([(CURVE_B, 1), (CURVE_A, 1)], base=CST),
            IntMatrix.from_rows([[1, 1], [0, -1]]),
            "equivariant (-1)-surgery of type 5 on the Hopf pair (a, b)",
            TightnessHint.OVERTWISTED,
        ),
    ]


def catalog_rp3() -> CatalogEntry:
    return CatalogEntry(
        "rp3",
        TwistWord.of([(CURVE_AMB, -1)], base=CST),
        IntMatrix.from_rows([[-1, 0], [2, 1]]),
        "RP^3: a single equivariant (-1)-surgery of type 1_1 on the unknot a-b",
        TightnessHint.TIGHT,
    )


# ---------------------------------------------------------------------------
# Chains of unknots


@dataclass(frozen=True)
class ChainReport:
    p: int
    q: int
    coefficients: tuple[int, ...]
    count: int  # number of stabilization assignments

    def rotation_choices(self) -> list[tuple[int, ...]]:
        """Per knot, the rotation numbers reachable by stabilizing
        tb from -1 down to r_i + 1 (|r_i + 1| choices)."""
        return [tuple(range(r + 2, -r - 1, 2)) for r in self.coefficients]

    def assignments(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*self.rotation_choices())

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "coefficients": list(self.coefficients),
            "rotation_choices": [list(c) for c in self.rotation_choices()],
            "count": self.count,
        }


def type_A_chain(p: int, q: int) -> ChainReport:
    """Chain of unknots presenting L(p,q): one c1-knot per term of the
    negative expansion of p/q, each a contact (-1)-surgery of type 1_1.

    The number of stabilization assignments equals |prod(r_i + 1)|.
    """
    cf = expand(p, q, Flavor.NEGATIVE)
    count = honda_count(cf)
    report = ChainReport(p, q, cf.terms, count)
    return report

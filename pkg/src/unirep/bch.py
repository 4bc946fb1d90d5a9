"""Baker-Campbell-Hausdorff machinery in the free algebra on two generators.

Elements are rational linear combinations of words in the alphabet {x, y}.
The homogeneous components P_m of log(e^x e^y) are computed by direct tuple
enumeration; the Dynkin projection sends a length-n word to 1/n times its
left-nested commutator and fixes every P_m.  Coefficients stay rational until
a matrix evaluation, which first audits denominators against p.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .arith import Residue, coerce_scalar
from .errors import SeriesTerminationError

GENERATORS = ("x", "y")

__all__ = [
    "FreeElement",
    "word",
    "log_product_series",
    "bch_components",
    "homogeneous_component",
    "left_nested_expand",
    "dynkin_projection",
    "bracket_normalize",
    "bracket_expand",
    "denominator_audit",
    "bch_evaluate",
]


def word(letters):
    w = tuple(letters)
    if any(l not in GENERATORS for l in w):
        raise ValueError(f"letters must be from {GENERATORS}")
    return w


class FreeElement:
    """Finite rational linear combination of words in x and y."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[word(w)] = c
        self.terms = clean

    @classmethod
    def generator(cls, letter):
        return cls({(letter,): 1})

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FreeElement(terms)

    def __neg__(self):
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FreeElement):
            c = Fraction(other)
            return FreeElement({w: v * c for w, v in self.terms.items()})
        terms = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                terms[w] = terms.get(w, 0) + ca * cb
        return FreeElement(terms)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def max_degree(self):
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{''.join(w)}" if w else str(c) for w, c in sorted(self.terms.items()))

    __repr__ = __str__


def commutator(a: FreeElement, b: FreeElement) -> FreeElement:
    return a * b - b * a


def _pair_tuples(remaining):
    """All nonempty (p, q) with p + q >= 1 and p + q <= remaining."""
    for total in range(1, remaining + 1):
        for p in range(total + 1):
            yield p, total - p


def log_product_series(max_degree: int) -> FreeElement:
    """All terms of log(e^x e^y) of total degree <= max_degree.

    Sums ((-1)^(k-1)/k) / (p_1! q_1! ... p_k! q_k!) x^{p_1} y^{q_1} ... over
    tuples with every p_i + q_i >= 1.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    out = {}

    def extend(k, degree, w, denom):
        if k > 0:
            coeff = Fraction((-1) ** (k - 1), k * denom)
            out[w] = out.get(w, 0) + coeff
        for p, q in _pair_tuples(max_degree - degree):
            extend(
                k + 1,
                degree + p + q,
                w + ("x",) * p + ("y",) * q,
                denom * factorial(p) * factorial(q),
            )

    extend(0, 0, (), 1)
    return FreeElement(out)


_component_cache = {}


def bch_components(max_degree: int):
    """[P_1, ..., P_max_degree], the homogeneous slices of log(e^x e^y)."""
    if max_degree not in _component_cache:
        series = log_product_series(max_degree)
        _component_cache[max_degree] = [
            homogeneous_component(series, m) for m in range(1, max_degree + 1)
        ]
    return _component_cache[max_degree]


def homogeneous_component(e: FreeElement, m: int) -> FreeElement:
    return FreeElement({w: c for w, c in e.terms.items() if len(w) == m})


def left_nested_expand(letters, coeff=1) -> FreeElement:
    """Expand the left-nested bracket l_1 o l_2 o ... o l_k into the word basis."""
    letters = word(letters)
    if not letters:
        raise ValueError("empty bracket sequence")
    acc = FreeElement.generator(letters[0])
    for l in letters[1:]:
        acc = commutator(acc, FreeElement.generator(l))
    return acc * coeff


def dynkin_projection(e: FreeElement) -> FreeElement:
    """Word-by-word: c * w  ->  (c/len(w)) * (left-nested bracket of w), expanded."""
    out = FreeElement.zero()
    for w, c in e.terms.items():
        if len(w) == 0:
            raise ValueError("the projection is undefined on degree-0 terms")
        out = out + left_nested_expand(w, Fraction(c, len(w)))
    return out


def _combine_left_nested(p, q, coeff):
    """Left-nested rewriting of P o Q for left-nested sequences P and Q,
    via P o (Q o x) = -(P o x) o Q + (P o Q) o x."""
    if len(q) == 1:
        return [(p + q, coeff)]
    head, last = q[:-1], q[-1]
    out = _combine_left_nested(p + (last,), head, -coeff)
    out.extend((s + (last,), c) for s, c in _combine_left_nested(p, head, coeff))
    return out


def bracket_normalize(tree, coeff=Fraction(1)):
    """Rewrite an arbitrary bracket tree into a combination of left-nested ones.

    A tree is either a generator letter or a pair (left, right) meaning
    left o right.  Returns [(letter sequence, coefficient)], each coefficient
    +-coeff.
    """
    coeff = Fraction(coeff)
    if isinstance(tree, str):
        return [(word((tree,)), coeff)]
    left, right = tree
    out = []
    for pl, cl in bracket_normalize(left, 1):
        for pr, cr in bracket_normalize(right, 1):
            out.extend(_combine_left_nested(pl, pr, coeff * cl * cr))
    return out


def bracket_expand(tree) -> FreeElement:
    """Direct word-basis expansion of a bracket tree (independent of the
    left-nested rewriting)."""
    if isinstance(tree, str):
        return FreeElement.generator(tree)
    left, right = tree
    return commutator(bracket_expand(left), bracket_expand(right))


def denominator_audit(e: FreeElement, p: int) -> bool:
    """True iff no reduced coefficient denominator is divisible by p."""
    return all(c.denominator % p != 0 for c in e.terms.values())


def bch_evaluate(components, X, Y):
    """Substitute matrices X, Y for the generators in each component and sum.

    In characteristic p each component must pass the denominator audit first.
    """
    sample = X.entries[0][0]
    p = sample.p if isinstance(sample, Residue) else 0
    if p:
        for i, comp in enumerate(components):
            if not denominator_audit(comp, p):
                raise SeriesTerminationError(
                    f"component {i + 1} has a denominator divisible by {p}"
                )
    gens = {"x": X, "y": Y}
    result = X.zero_like()
    for comp in components:
        for w, c in comp.terms.items():
            m = gens[w[0]]
            for l in w[1:]:
                m = m @ gens[l]
            result = result + m.scale(coerce_scalar(c, p))
    return result

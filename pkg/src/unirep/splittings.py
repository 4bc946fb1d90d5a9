"""Splitting combinatorics for the closed-form coproduct.

A splitting of an exponent matrix M is a family of variable matrices
S_1 ... S_n (S_k being (k-1)-fold strictly upper triangular) with
S_1 + ... + S_n = M.  The linear expressions

    L_ij = sum_{k=j}^n s_ik^{j-i+1}      R_ij = sum_{k=1}^i s_kj^{i-k+1}

give the exponents of x_ij in the left and right tensor slots of the
closed-form coproduct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arith import matrix_multinomial, multinomial
from .errors import ShapeError
from .hopf import ExponentMatrix, TensorElement, variable_pairs

__all__ = [
    "SplitVarId",
    "LinearExpr",
    "Splitting",
    "l_expression",
    "r_expression",
    "shared_variable",
    "all_split_vars",
    "enumerate_splittings",
    "split_coproduct",
    "solve_yz",
    "brute_solve_yz",
    "occurrence_report",
]


@dataclass(frozen=True, order=True)
class SplitVarId:
    """The variable s_ij^k: position (i, j) of the layer matrix S_k."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ShapeError(f"need 1 <= i < j, got ({self.i}, {self.j})")
        if not (1 <= self.k <= self.j - self.i + 1):
            raise ShapeError(f"layer {self.k} out of range for position ({self.i}, {self.j})")

    def __str__(self):
        return f"s_{self.i}{self.j}^{self.k}"


@dataclass(frozen=True)
class LinearExpr:
    """A duplicate-free sum of splitting variables."""

    summands: tuple

    def __post_init__(self):
        if len(set(self.summands)) != len(self.summands):
            raise ShapeError("duplicate variable in a linear expression")

    def evaluate(self, assignment) -> int:
        return sum(assignment.get(v, 0) for v in self.summands)


def _check_pair(i, j, n):
    if not (1 <= i < j <= n):
        raise ShapeError(f"need 1 <= i < j <= n, got ({i}, {j}) with n = {n}")


def l_expression(i, j, n) -> LinearExpr:
    """L_ij = sum_{k=j}^n s_ik^{j-i+1}, in increasing k."""
    _check_pair(i, j, n)
    return LinearExpr(tuple(SplitVarId(i, k, j - i + 1) for k in range(j, n + 1)))


def r_expression(i, j, n) -> LinearExpr:
    """R_ij = sum_{k=1}^i s_kj^{i-k+1}, in increasing k."""
    _check_pair(i, j, n)
    return LinearExpr(tuple(SplitVarId(k, j, i - k + 1) for k in range(1, i + 1)))


def shared_variable(l_pair, r_pair, n):
    """The unique variable common to L_ij and R_uv: s_iv^{j-i+1} when j = u."""
    (i, j), (u, v) = l_pair, r_pair
    _check_pair(i, j, n)
    _check_pair(u, v, n)
    if j != u:
        return None
    return SplitVarId(i, v, j - i + 1)


def all_split_vars(n):
    """Every s_ij^k for size n, lexicographic in (i, j, k)."""
    out = []
    for i, j in variable_pairs(n):
        out.extend(SplitVarId(i, j, k) for k in range(1, j - i + 2))
    return out


class Splitting:
    """An assignment of non-negative integers to the splitting variables."""

    __slots__ = ("n", "assignment")

    def __init__(self, n, assignment):
        self.n = n
        clean = {}
        for v, m in assignment.items():
            if m < 0:
                raise ShapeError("splitting entries must be non-negative")
            if v.j > n:
                raise ShapeError(f"variable {v} out of range for n = {n}")
            if m:
                clean[v] = m
        self.assignment = clean

    def layer_matrix(self, k) -> ExponentMatrix:
        """The matrix S_k."""
        rows = [[0] * self.n for _ in range(self.n)]
        for v, m in self.assignment.items():
            if v.k == k:
                rows[v.i - 1][v.j - 1] = m
        return ExponentMatrix(self.n, rows)

    def layer_matrices(self):
        return [self.layer_matrix(k) for k in range(1, self.n + 1)]

    def sum_matrix(self) -> ExponentMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for v, m in self.assignment.items():
            rows[v.i - 1][v.j - 1] += m
        return ExponentMatrix(self.n, rows)

    def left_matrix(self) -> ExponentMatrix:
        """Exponent matrix with (i, j) entry L_ij evaluated at this splitting."""
        rows = [[0] * self.n for _ in range(self.n)]
        for i, j in variable_pairs(self.n):
            rows[i - 1][j - 1] = l_expression(i, j, self.n).evaluate(self.assignment)
        return ExponentMatrix(self.n, rows)

    def right_matrix(self) -> ExponentMatrix:
        rows = [[0] * self.n for _ in range(self.n)]
        for i, j in variable_pairs(self.n):
            rows[i - 1][j - 1] = r_expression(i, j, self.n).evaluate(self.assignment)
        return ExponentMatrix(self.n, rows)

    def weight(self) -> int:
        """The matrix multinomial (S_1 + ... + S_n choose S_1, ..., S_n)."""
        return matrix_multinomial(self.sum_matrix(), self.layer_matrices())

    def sort_key(self):
        return tuple(self.assignment.get(v, 0) for v in all_split_vars(self.n))

    def __eq__(self, other):
        return (
            isinstance(other, Splitting)
            and self.n == other.n
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.assignment.items())))

    def __str__(self):
        if not self.assignment:
            return "0"
        return ", ".join(f"{v}={m}" for v, m in sorted(self.assignment.items()))

    __repr__ = __str__


def _compositions(total, parts):
    """Ordered non-negative integer tuples of length ``parts`` summing to
    ``total``, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_splittings(M: ExponentMatrix):
    """Every decomposition S_1 + ... + S_n = M respecting the layer shapes.

    Each entry m_ij splits independently into its j-i+1 slots, so the result
    is the per-entry product; the order is lexicographic in (i, j, k).
    """
    n = M.n
    pairs = variable_pairs(n)
    per_entry = [list(_compositions(M.entry(i, j), j - i + 1)) for i, j in pairs]
    out = []
    for combo in itertools.product(*per_entry):
        assignment = {}
        for (i, j), parts in zip(pairs, combo):
            for k, m in enumerate(parts, start=1):
                if m:
                    assignment[SplitVarId(i, j, k)] = m
        out.append(Splitting(n, assignment))
    return out


def split_coproduct(chi):
    """The d x d grid of Delta(a_ij) computed by the closed formula.

    ``chi`` provides n, p, d and a finite support mapping exponent matrices to
    d x d scalar matrices.  For each supported M and each splitting, the term
    is weighted by the matrix multinomial and placed at the exponents given by
    the L/R evaluations.
    """
    n, p, d = chi.n, chi.p, chi.d
    grid = [[{} for _ in range(d)] for _ in range(d)]
    for M, mat in chi.items():
        for s in enumerate_splittings(M):
            key = (s.left_matrix(), s.right_matrix())
            w = s.weight()
            for a in range(d):
                for b in range(d):
                    c = mat.entries[a][b]
                    if c:
                        cell = grid[a][b]
                        cell[key] = cell.get(key, 0) + c * w
    return [[TensorElement(n, p, cell) for cell in row] for row in grid]


def solve_yz(Y: ExponentMatrix, Z: ExponentMatrix) -> Splitting:
    """Closed-form unique solution of L = Y, R = Z for Y with zero top row and
    Z supported on the top row only: s_1j^1 = z_1j, s_ij^{j-i+1} = y_ij."""
    n = Y.n
    if Z.n != n:
        raise ShapeError("size mismatch")
    if any(Y.entry(1, j) for j in range(2, n + 1)):
        raise ShapeError("Y must have a zero top row")
    if any(Z.entry(i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)):
        raise ShapeError("Z must be zero outside the top row")
    assignment = {}
    for j in range(2, n + 1):
        if Z.entry(1, j):
            assignment[SplitVarId(1, j, 1)] = Z.entry(1, j)
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            if Y.entry(i, j):
                assignment[SplitVarId(i, j, j - i + 1)] = Y.entry(i, j)
    return Splitting(n, assignment)


def brute_solve_yz(Y: ExponentMatrix, Z: ExponentMatrix, bound=None):
    """Exhaustive search for all splittings with entries <= bound satisfying
    L-evaluation = Y and R-evaluation = Z.

    The default bound is the largest entry of Y + Z (every variable appears in
    some L or R with coefficient 1, so larger values cannot occur).  The
    search walks the variables in lexicographic order with partial-sum
    pruning; it enumerates the same set as the naive full product.
    """
    n = Y.n
    if Z.n != n:
        raise ShapeError("size mismatch")
    if bound is None:
        bound = (Y + Z).max_entry()
    pairs = variable_pairs(n)
    targets = {}
    for i, j in pairs:
        targets[("L", i, j)] = (l_expression(i, j, n), Y.entry(i, j))
        targets[("R", i, j)] = (r_expression(i, j, n), Z.entry(i, j))
    variables = all_split_vars(n)
    # For each variable, the target sums it feeds; for each target, its last variable.
    feeds = {v: [] for v in variables}
    last_var = {}
    for name, (expr, _) in targets.items():
        for v in expr.summands:
            feeds[v].append(name)
            last_var[name] = max(last_var.get(name, v), v)

    solutions = []
    running = {name: 0 for name in targets}
    assignment = {}

    def search(idx):
        if idx == len(variables):
            solutions.append(Splitting(n, dict(assignment)))
            return
        v = variables[idx]
        for m in range(bound + 1):
            ok = True
            for name in feeds[v]:
                total = running[name] + m
                goal = targets[name][1]
                if total > goal or (last_var[name] == v and total != goal):
                    ok = False
                    break
            if not ok:
                continue
            for name in feeds[v]:
                running[name] += m
            if m:
                assignment[v] = m
            search(idx + 1)
            for name in feeds[v]:
                running[name] -= m
            assignment.pop(v, None)

    search(0)
    return solutions


def occurrence_report(n: int):
    """Scan every L_ij and R_ij for size n against the occurrence claims.

    Checks: (a) no variable repeats within or across the L family; (b) the
    variables missing from all L's are exactly those of S_1; (c) the variables
    missing from all R's are exactly the superdiagonal-of-S_k ones
    (j - i = k - 1); (d) L_ij and R_uv share a variable iff j = u, and then
    exactly s_iv^{j-i+1}.  Returns a list of findings (empty = all claims hold).
    """
    findings = []
    pairs = variable_pairs(n)
    l_exprs = {(i, j): l_expression(i, j, n) for i, j in pairs}
    r_exprs = {(i, j): r_expression(i, j, n) for i, j in pairs}

    seen_l = {}
    for pos, expr in l_exprs.items():
        for v in expr.summands:
            if v in seen_l:
                findings.append(
                    {"check": "L-occurrence", "location": str(v),
                     "expected": "at most once among all L", "actual": f"in L{seen_l[v]} and L{pos}"}
                )
            seen_l[v] = pos
    seen_r = {}
    for pos, expr in r_exprs.items():
        for v in expr.summands:
            if v in seen_r:
                findings.append(
                    {"check": "R-occurrence", "location": str(v),
                     "expected": "at most once among all R", "actual": f"in R{seen_r[v]} and R{pos}"}
                )
            seen_r[v] = pos

    for v in all_split_vars(n):
        in_l, in_r = v in seen_l, v in seen_r
        if in_l == (v.k == 1):
            findings.append(
                {"check": "L-absence", "location": str(v),
                 "expected": "absent from all L iff k = 1", "actual": f"k={v.k}, in L: {in_l}"}
            )
        if in_r == (v.j - v.i == v.k - 1):
            findings.append(
                {"check": "R-absence", "location": str(v),
                 "expected": "absent from all R iff on the superdiagonal of S_k",
                 "actual": f"(i,j,k)=({v.i},{v.j},{v.k}), in R: {in_r}"}
            )

    for lp, rp in itertools.product(pairs, pairs):
        common = set(l_exprs[lp].summands) & set(r_exprs[rp].summands)
        predicted = shared_variable(lp, rp, n)
        expected = {predicted} if predicted is not None else set()
        if common != expected:
            findings.append(
                {"check": "shared-variable", "location": f"L{lp} vs R{rp}",
                 "expected": sorted(map(str, expected)), "actual": sorted(map(str, common))}
            )
    return findings
